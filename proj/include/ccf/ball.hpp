#pragma once

#include <mpfr.h>

#include <algorithm>
#include <map>
#include <optional>
#include <tuple>
#include <string>
#include <utility>

#include "ccf/kfield.hpp"

namespace ccf {

// Thin RAII wrapper over mpfr_t. Rounding is explicit at each operation.
class Real {
public:
    explicit Real(mpfr_prec_t prec = 64) { mpfr_init2(x_, prec); mpfr_set_zero(x_, 1); }
    Real(const Real& o) {
        mpfr_init2(x_, mpfr_get_prec(o.x_));
        mpfr_set(x_, o.x_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        mpfr_init2(x_, mpfr_get_prec(o.x_));
        mpfr_swap(x_, o.x_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(x_, mpfr_get_prec(o.x_));
            mpfr_set(x_, o.x_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        if (this != &o) mpfr_swap(x_, o.x_);
        return *this;
    }
    ~Real() { mpfr_clear(x_); }

    mpfr_ptr get() { return x_; }
    mpfr_srcptr get() const { return x_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(x_); }

    static Real from_int(const Int& v, mpfr_prec_t prec, mpfr_rnd_t rnd) {
        Real r(prec);
        mpfr_set_z(r.x_, v.backend().data(), rnd);
        return r;
    }
    static Real from_rat(const Rat& v, mpfr_prec_t prec, mpfr_rnd_t rnd) {
        Real r(prec);
        mpfr_set_q(r.x_, v.backend().data(), rnd);
        return r;
    }
    static Real from_double(double v, mpfr_prec_t prec = 64) {
        Real r(prec);
        mpfr_set_d(r.x_, v, MPFR_RNDN);
        return r;
    }

    bool is_zero() const { return mpfr_zero_p(x_); }
    int sgn() const { return mpfr_sgn(x_); }
    int cmp(const Real& o) const { return mpfr_cmp(x_, o.x_); }
    int cmp_rat(const Rat& q) const { return mpfr_cmp_q(x_, q.backend().data()); }

    double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }
    std::string str(size_t digits = 20) const {
        char* s = nullptr;
        mpfr_asprintf(&s, "%.*Rg", static_cast<int>(digits), x_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }
    std::string hex() const {
        char* s = nullptr;
        mpfr_asprintf(&s, "%Ra", x_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

    // magnitude bound of the rounding error of the last RNDN operation that
    // produced this value: one ulp
    Real ulp() const {
        Real r(64);
        if (mpfr_zero_p(x_)) return r;
        mpfr_set_ui_2exp(r.x_, 1, mpfr_get_exp(x_) - prec(), MPFR_RNDU);
        return r;
    }

private:
    mpfr_t x_;
};

inline Real r_add(const Real& a, const Real& b, mpfr_prec_t p, mpfr_rnd_t r) {
    Real out(p);
    mpfr_add(out.get(), a.get(), b.get(), r);
    return out;
}
inline Real r_sub(const Real& a, const Real& b, mpfr_prec_t p, mpfr_rnd_t r) {
    Real out(p);
    mpfr_sub(out.get(), a.get(), b.get(), r);
    return out;
}
inline Real r_mul(const Real& a, const Real& b, mpfr_prec_t p, mpfr_rnd_t r) {
    Real out(p);
    mpfr_mul(out.get(), a.get(), b.get(), r);
    return out;
}
inline Real r_div(const Real& a, const Real& b, mpfr_prec_t p, mpfr_rnd_t r) {
    Real out(p);
    mpfr_div(out.get(), a.get(), b.get(), r);
    return out;
}
inline Real r_sqrt(const Real& a, mpfr_prec_t p, mpfr_rnd_t r) {
    Real out(p);
    mpfr_sqrt(out.get(), a.get(), r);
    return out;
}
inline Real r_neg(const Real& a, mpfr_prec_t p) {
    Real out(p);
    mpfr_neg(out.get(), a.get(), MPFR_RNDN);
    return out;
}
inline Real r_abs(const Real& a, mpfr_prec_t p) {
    Real out(p);
    mpfr_abs(out.get(), a.get(), MPFR_RNDN);
    return out;
}

// Closed interval [lo, hi] with directed rounding; the scaffolding for every
// rigorous real-valued bound in the library.
class RealInterval {
public:
    RealInterval() : lo_(64), hi_(64) {}
    RealInterval(Real lo, Real hi) : lo_(std::move(lo)), hi_(std::move(hi)) {}

    static RealInterval point_int(const Int& v, mpfr_prec_t p) {
        return {Real::from_int(v, p, MPFR_RNDD), Real::from_int(v, p, MPFR_RNDU)};
    }
    static RealInterval point_rat(const Rat& v, mpfr_prec_t p) {
        return {Real::from_rat(v, p, MPFR_RNDD), Real::from_rat(v, p, MPFR_RNDU)};
    }
    static RealInterval sqrt_int(const Int& v, mpfr_prec_t p) {
        RealInterval t = point_int(v, p);
        return {r_sqrt(t.lo_, p, MPFR_RNDD), r_sqrt(t.hi_, p, MPFR_RNDU)};
    }
    static RealInterval sqrt_rat(const Rat& v, mpfr_prec_t p) {
        RealInterval t = point_rat(v, p);
        return {r_sqrt(t.lo_, p, MPFR_RNDD), r_sqrt(t.hi_, p, MPFR_RNDU)};
    }

    const Real& lo() const { return lo_; }
    const Real& hi() const { return hi_; }
    mpfr_prec_t prec() const { return std::max(lo_.prec(), hi_.prec()); }

    RealInterval add(const RealInterval& o, mpfr_prec_t p) const {
        return {r_add(lo_, o.lo_, p, MPFR_RNDD), r_add(hi_, o.hi_, p, MPFR_RNDU)};
    }
    RealInterval sub(const RealInterval& o, mpfr_prec_t p) const {
        return {r_sub(lo_, o.hi_, p, MPFR_RNDD), r_sub(hi_, o.lo_, p, MPFR_RNDU)};
    }
    RealInterval neg(mpfr_prec_t p) const { return {r_neg(hi_, p), r_neg(lo_, p)}; }
    RealInterval mul(const RealInterval& o, mpfr_prec_t p) const {
        // all four corner products, directed both ways
        Real cands_lo[4] = {r_mul(lo_, o.lo_, p, MPFR_RNDD), r_mul(lo_, o.hi_, p, MPFR_RNDD),
                            r_mul(hi_, o.lo_, p, MPFR_RNDD), r_mul(hi_, o.hi_, p, MPFR_RNDD)};
        Real cands_hi[4] = {r_mul(lo_, o.lo_, p, MPFR_RNDU), r_mul(lo_, o.hi_, p, MPFR_RNDU),
                            r_mul(hi_, o.lo_, p, MPFR_RNDU), r_mul(hi_, o.hi_, p, MPFR_RNDU)};
        Real lo = cands_lo[0], hi = cands_hi[0];
        for (int i = 1; i < 4; ++i) {
            if (cands_lo[i].cmp(lo) < 0) lo = cands_lo[i];
            if (cands_hi[i].cmp(hi) > 0) hi = cands_hi[i];
        }
        return {lo, hi};
    }
    RealInterval sqr(mpfr_prec_t p) const {
        RealInterval m = mul(*this, p);
        if (m.lo_.sgn() < 0) m.lo_ = Real(p); // square is nonnegative
        return m;
    }
    // sqrt of a nonnegative interval (lo clamped at 0)
    RealInterval sqrt(mpfr_prec_t p) const {
        Real lo = lo_.sgn() < 0 ? Real(p) : lo_;
        return {r_sqrt(lo, p, MPFR_RNDD), r_sqrt(hi_, p, MPFR_RNDU)};
    }
    // reciprocal; interval must not contain 0
    RealInterval recip(mpfr_prec_t p) const {
        if (contains_zero()) fail(errc::contains_zero, "interval reciprocal across zero");
        Real one = Real::from_int(1, p, MPFR_RNDN);
        return {r_div(one, hi_, p, MPFR_RNDD), r_div(one, lo_, p, MPFR_RNDU)};
    }
    RealInterval scale_rat(const Rat& q, mpfr_prec_t p) const {
        return mul(point_rat(q, p), p);
    }

    bool contains_zero() const { return lo_.sgn() <= 0 && hi_.sgn() >= 0; }
    // sign if determined, 0 if the interval straddles zero (possible zero)
    std::optional<int> known_sign() const {
        if (lo_.sgn() > 0) return 1;
        if (hi_.sgn() < 0) return -1;
        if (lo_.sgn() == 0 && hi_.sgn() == 0) return 0;
        return std::nullopt;
    }
    // tri-state compare with exact rational: <0, >0 when determined
    std::optional<int> cmp_rat(const Rat& q) const {
        if (lo_.cmp_rat(q) > 0) return 1;
        if (hi_.cmp_rat(q) < 0) return -1;
        return std::nullopt;
    }

    double mid_double() const { return (lo_.to_double() + hi_.to_double()) / 2; }

private:
    Real lo_, hi_;
};

// Rectangular complex interval; helper for enclosures of exact values.
struct CInterval {
    RealInterval re, im;

    CInterval add(const CInterval& o, mpfr_prec_t p) const {
        return {re.add(o.re, p), im.add(o.im, p)};
    }
    CInterval sub(const CInterval& o, mpfr_prec_t p) const {
        return {re.sub(o.re, p), im.sub(o.im, p)};
    }
    CInterval mul(const CInterval& o, mpfr_prec_t p) const {
        return {re.mul(o.re, p).sub(im.mul(o.im, p), p),
                re.mul(o.im, p).add(im.mul(o.re, p), p)};
    }
    RealInterval abs2(mpfr_prec_t p) const { return re.sqr(p).add(im.sqr(p), p); }
};

// Enclosure of an exact ring element / K element as a complex interval.
inline CInterval cinterval_of(const RingElement& x, mpfr_prec_t p) {
    const auto& rd = x.desc();
    RealInterval re = RealInterval::point_rat(x.re(), p);
    RealInterval im = RealInterval::point_rat(x.im_coeff(), p)
                          .mul(RealInterval::sqrt_int(Int(rd.d), p), p);
    return {re, im};
}
inline CInterval cinterval_of(const KElement& x, mpfr_prec_t p) {
    const auto& rd = ring_data(x.ring());
    RealInterval re = RealInterval::point_rat(x.re(), p);
    RealInterval im = RealInterval::point_rat(x.im_coeff(), p)
                          .mul(RealInterval::sqrt_int(Int(rd.d), p), p);
    return {re, im};
}

// Principal square root of a nonzero ring element: the root with positive
// imaginary part; for positive real arguments, positive real part.
inline CInterval principal_sqrt_uncached(const RingElement& delta, mpfr_prec_t p) {
    if (delta.is_zero()) fail(errc::invalid_argument, "sqrt of zero");
    Rat re = delta.re();
    Rat imc = delta.im_coeff(); // Im = imc * sqrt(d)
    if (imc == 0) {
        if (re > 0)
            return {RealInterval::sqrt_rat(re, p), RealInterval::point_int(0, p)};
        return {RealInterval::point_int(0, p), RealInterval::sqrt_rat(-re, p)};
    }
    CInterval z = cinterval_of(delta, p);
    RealInterval r = z.abs2(p).sqrt(p);
    RealInterval zre = RealInterval::point_rat(re, p);
    RealInterval half = RealInterval::point_rat(Rat(1, 2), p);
    RealInterval wre = r.add(zre, p).mul(half, p).sqrt(p);
    RealInterval wim = r.sub(zre, p).mul(half, p).sqrt(p);
    // sign(Im delta) decides: principal (Im > 0) root is (wre, wim) when
    // Im delta > 0, (-wre, wim) when Im delta < 0
    if (imc > 0) return {wre, wim};
    return {wre.neg(p), wim};
}

// the same discriminant is enclosed millions of times along a trace
inline CInterval principal_sqrt(const RingElement& delta, mpfr_prec_t p) {
    struct Key {
        int ring;
        std::string a, b;
        long prec;
        bool operator<(const Key& o) const {
            return std::tie(ring, prec, a, b) < std::tie(o.ring, o.prec, o.a, o.b);
        }
    };
    thread_local std::map<Key, CInterval> cache;
    Key k{static_cast<int>(delta.ring()), delta.a().str(), delta.b().str(),
          static_cast<long>(p)};
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    CInterval v = principal_sqrt_uncached(delta, p);
    if (cache.size() > 256) cache.clear();
    cache.emplace(std::move(k), v);
    return v;
}

// A rigorous complex enclosure: dyadic center plus radius, with outward
// rounding on every operation.
class BallComplex {
public:
    BallComplex() : re_(64), im_(64), rad_(64), prec_(64) {}
    BallComplex(Real re, Real im, Real rad, mpfr_prec_t prec)
        : re_(std::move(re)), im_(std::move(im)), rad_(std::move(rad)), prec_(prec) {}

    static BallComplex from_cinterval(const CInterval& c, mpfr_prec_t p) {
        Real re(p), im(p);
        mpfr_add(re.get(), c.re.lo().get(), c.re.hi().get(), MPFR_RNDN);
        mpfr_div_2ui(re.get(), re.get(), 1, MPFR_RNDN);
        mpfr_add(im.get(), c.im.lo().get(), c.im.hi().get(), MPFR_RNDN);
        mpfr_div_2ui(im.get(), im.get(), 1, MPFR_RNDN);
        // radius: max deviation of box corners from the midpoint, plus slack
        Real rad(64);
        Real dr1 = r_sub(c.re.hi(), re, 64, MPFR_RNDU);
        Real dr2 = r_sub(re, c.re.lo(), 64, MPFR_RNDU);
        Real di1 = r_sub(c.im.hi(), im, 64, MPFR_RNDU);
        Real di2 = r_sub(im, c.im.lo(), 64, MPFR_RNDU);
        Real dr = dr1.cmp(dr2) > 0 ? dr1 : dr2;
        Real di = di1.cmp(di2) > 0 ? di1 : di2;
        mpfr_add(rad.get(), dr.get(), di.get(), MPFR_RNDU);
        return {re, im, rad, p};
    }

    static BallComplex from_exact(const KElement& x, mpfr_prec_t p) {
        return from_cinterval(cinterval_of(x, p), p);
    }
    static BallComplex from_exact(const RingElement& x, mpfr_prec_t p) {
        return from_cinterval(cinterval_of(x, p), p);
    }
    static BallComplex from_doubles(double re, double im, double rad, mpfr_prec_t p = 64) {
        Real r(p), i(p), rr(64);
        mpfr_set_d(r.get(), re, MPFR_RNDN);
        mpfr_set_d(i.get(), im, MPFR_RNDN);
        mpfr_set_d(rr.get(), rad, MPFR_RNDU);
        return {r, i, rr, p};
    }

    const Real& re() const { return re_; }
    const Real& im() const { return im_; }
    const Real& rad() const { return rad_; }
    mpfr_prec_t prec() const { return prec_; }

    CInterval to_cinterval() const {
        mpfr_prec_t p = prec_;
        Real relo = r_sub(re_, rad_, p, MPFR_RNDD), rehi = r_add(re_, rad_, p, MPFR_RNDU);
        Real imlo = r_sub(im_, rad_, p, MPFR_RNDD), imhi = r_add(im_, rad_, p, MPFR_RNDU);
        return {RealInterval(relo, rehi), RealInterval(imlo, imhi)};
    }

    // upper/lower bounds for |center|
    Real center_abs_up() const {
        Real t(64), s(64);
        mpfr_mul(t.get(), re_.get(), re_.get(), MPFR_RNDU);
        mpfr_mul(s.get(), im_.get(), im_.get(), MPFR_RNDU);
        mpfr_add(t.get(), t.get(), s.get(), MPFR_RNDU);
        mpfr_sqrt(t.get(), t.get(), MPFR_RNDU);
        return t;
    }
    Real center_abs_down() const {
        Real t(64), s(64);
        mpfr_mul(t.get(), re_.get(), re_.get(), MPFR_RNDD);
        mpfr_mul(s.get(), im_.get(), im_.get(), MPFR_RNDD);
        mpfr_add(t.get(), t.get(), s.get(), MPFR_RNDD);
        mpfr_sqrt(t.get(), t.get(), MPFR_RNDD);
        return t;
    }
    // rigorous bounds for |z| over the ball
    Real abs_up() const {
        Real t = center_abs_up();
        mpfr_add(t.get(), t.get(), rad_.get(), MPFR_RNDU);
        return t;
    }
    Real abs_down() const {
        Real t = center_abs_down();
        mpfr_sub(t.get(), t.get(), rad_.get(), MPFR_RNDD);
        if (t.sgn() < 0) mpfr_set_zero(t.get(), 1);
        return t;
    }
    // interval enclosure of |z|^2 over the ball
    RealInterval abs2_interval() const {
        Real up = abs_up(), down = abs_down();
        Real lo(64), hi(64);
        mpfr_mul(lo.get(), down.get(), down.get(), MPFR_RNDD);
        mpfr_mul(hi.get(), up.get(), up.get(), MPFR_RNDU);
        return {lo, hi};
    }

    bool contains_zero() const { return center_abs_down().cmp(rad_) <= 0; }

    BallComplex neg() const {
        return {r_neg(re_, prec_), r_neg(im_, prec_), rad_, prec_};
    }
    BallComplex conj() const {
        return {re_, r_neg(im_, prec_), rad_, prec_};
    }

    BallComplex add(const BallComplex& o) const {
        mpfr_prec_t p = std::min(prec_, o.prec_);
        Real re(p), im(p);
        int tr = mpfr_add(re.get(), re_.get(), o.re_.get(), MPFR_RNDN);
        int ti = mpfr_add(im.get(), im_.get(), o.im_.get(), MPFR_RNDN);
        Real rad(64);
        mpfr_add(rad.get(), rad_.get(), o.rad_.get(), MPFR_RNDU);
        if (tr != 0) mpfr_add(rad.get(), rad.get(), re.ulp().get(), MPFR_RNDU);
        if (ti != 0) mpfr_add(rad.get(), rad.get(), im.ulp().get(), MPFR_RNDU);
        return {re, im, rad, p};
    }
    BallComplex sub(const BallComplex& o) const { return add(o.neg()); }

    BallComplex mul(const BallComplex& o) const {
        mpfr_prec_t p = std::min(prec_, o.prec_);
        // center product with accumulated rounding error (exact operations,
        // detected via the mpfr ternary value, contribute none)
        Real t1(p), t2(p), t3(p), t4(p), re(p), im(p);
        int x1 = mpfr_mul(t1.get(), re_.get(), o.re_.get(), MPFR_RNDN);
        int x2 = mpfr_mul(t2.get(), im_.get(), o.im_.get(), MPFR_RNDN);
        int x3 = mpfr_mul(t3.get(), re_.get(), o.im_.get(), MPFR_RNDN);
        int x4 = mpfr_mul(t4.get(), im_.get(), o.re_.get(), MPFR_RNDN);
        int x5 = mpfr_sub(re.get(), t1.get(), t2.get(), MPFR_RNDN);
        int x6 = mpfr_add(im.get(), t3.get(), t4.get(), MPFR_RNDN);
        Real err(64);
        mpfr_set_zero(err.get(), 1);
        const Real* terms[6] = {&t1, &t2, &t3, &t4, &re, &im};
        const int flags[6] = {x1, x2, x3, x4, x5, x6};
        for (int k = 0; k < 6; ++k)
            if (flags[k] != 0) mpfr_add(err.get(), err.get(), terms[k]->ulp().get(), MPFR_RNDU);
        // |x y - a b| <= |a| rb + |b| ra + ra rb for x in B(a,ra), y in B(b,rb)
        Real rad(64);
        Real aa = center_abs_up(), bb = o.center_abs_up();
        Real u1(64), u2(64), u3(64);
        mpfr_mul(u1.get(), aa.get(), o.rad_.get(), MPFR_RNDU);
        mpfr_mul(u2.get(), bb.get(), rad_.get(), MPFR_RNDU);
        mpfr_mul(u3.get(), rad_.get(), o.rad_.get(), MPFR_RNDU);
        mpfr_add(rad.get(), u1.get(), u2.get(), MPFR_RNDU);
        mpfr_add(rad.get(), rad.get(), u3.get(), MPFR_RNDU);
        mpfr_add(rad.get(), rad.get(), err.get(), MPFR_RNDU);
        return {re, im, rad, p};
    }

    // 1/z; the exact image of a ball not containing zero is again a ball
    // B(conj(c)/(|c|^2 - r^2), r/(|c|^2 - r^2)); computed via intervals
    BallComplex inv() const {
        mpfr_prec_t p = prec_;
        RealInterval re_i(re_, re_), im_i(im_, im_), rad_i(rad_, rad_);
        RealInterval m2 = re_i.sqr(p).add(im_i.sqr(p), p);
        RealInterval d = m2.sub(rad_i.sqr(p), p);
        if (d.lo().sgn() <= 0) fail(errc::contains_zero, "ball inversion across zero");
        RealInterval dinv = d.recip(p);
        RealInterval nre = re_i.mul(dinv, p);
        RealInterval nim = im_i.neg(p).mul(dinv, p);
        RealInterval nrad = rad_i.mul(dinv, p);
        BallComplex box = from_cinterval({nre, nim}, p);
        Real rad(64);
        mpfr_add(rad.get(), box.rad_.get(), nrad.hi().get(), MPFR_RNDU);
        return {box.re_, box.im_, rad, p};
    }

    BallComplex div(const BallComplex& o) const { return mul(o.inv()); }

    BallComplex add_exact(const RingElement& x) const {
        return add(from_exact(x, prec_));
    }
    BallComplex sub_exact(const RingElement& x) const {
        return add(from_exact(-x, prec_));
    }

    // true iff the exact point re + im*sqrt(d_im) provably lies in the ball
    bool contains_exact(const KElement& p) const {
        CInterval pt = cinterval_of(p, prec_);
        CInterval diff = pt.sub(center_cinterval(), prec_);
        RealInterval d2 = diff.abs2(prec_);
        Real r2(64);
        mpfr_mul(r2.get(), rad_.get(), rad_.get(), MPFR_RNDD);
        return d2.hi().cmp(r2) <= 0;
    }

    CInterval center_cinterval() const {
        return {RealInterval(re_, re_), RealInterval(im_, im_)};
    }

    std::string str() const {
        return "(" + re_.str(17) + (im_.sgn() < 0 ? "" : "+") + im_.str(17) +
               "i) +- " + rad_.str(5);
    }

private:
    Real re_, im_, rad_;
    mpfr_prec_t prec_;
};

// Ring elements gamma with |gamma - center| <= r (r^2 rational), the center a
// rigorous enclosure. A gamma whose membership straddles the boundary at the
// ball's own precision cannot be resolved and raises PrecisionExhausted;
// callers owning an exact source re-embed at higher precision and retry.
inline std::vector<RingElement> elements_in_disc(RingId ring, const BallComplex& center,
                                                 const Rat& r2) {
    if (r2 < 0) return {};
    std::vector<RingElement> out;
    mpfr_prec_t p = center.prec();
    double R = std::sqrt(r2.convert_to<double>());
    const auto& rd = ring_data(ring);
    double img = rd.ims.convert_to<double>() * std::sqrt(static_cast<double>(rd.d));
    CInterval ci = center.to_cinterval();
    double ylo = ci.im.lo().to_double() - R - 0.01, yhi = ci.im.hi().to_double() + R + 0.01;
    double xlo = ci.re.lo().to_double() - R - 0.01, xhi = ci.re.hi().to_double() + R + 0.01;
    for (long b = static_cast<long>(std::floor(ylo / img)) - 1;
         b <= static_cast<long>(std::ceil(yhi / img)) + 1; ++b) {
        double tr2 = rd.tr / 2.0;
        for (long a = static_cast<long>(std::floor(xlo - b * tr2)) - 1;
             a <= static_cast<long>(std::ceil(xhi - b * tr2)) + 1; ++a) {
            RingElement g{ring, Int(a), Int(b)};
            RealInterval d2 = center.sub(BallComplex::from_exact(g, p)).abs2_interval();
            if (d2.lo().cmp_rat(r2) == 0 && d2.hi().cmp_rat(r2) == 0) {
                out.push_back(g); // exactly on the closed boundary
                continue;
            }
            auto c = d2.cmp_rat(r2);
            if (!c)
                fail(errc::precision_exhausted,
                     "disc membership of " + g.str() + " undecided at this precision");
            if (*c < 0) out.push_back(g);
        }
    }
    return out;
}

// Precision escalation driver: calls f at doubling precision until it
// returns a value, up to the given ceiling.
template <typename F>
auto escalate(mpfr_prec_t start, mpfr_prec_t ceiling, F&& f)
    -> typename std::invoke_result_t<F, mpfr_prec_t>::value_type {
    for (mpfr_prec_t p = start; p <= ceiling; p *= 2) {
        auto r = f(p);
        if (r) return *r;
    }
    fail(errc::precision_exhausted,
         "predicate undecided at ceiling precision " + std::to_string(ceiling));
}

inline constexpr mpfr_prec_t kDefaultPrecCeiling = 4096;

} // namespace ccf
