#pragma once

#include <optional>
#include <string>
#include <utility>

#include "ccf/ball.hpp"

namespace ccf {

// ----------------------------------------------------------------------------
// K(theta) arithmetic: values u + v*theta with u, v in K and theta^2 = Delta.
// The ambient Delta is carried by the caller (it is constant along a trace).
// ----------------------------------------------------------------------------

struct KTheta {
    KElement u, v;

    bool is_zero() const { return u.is_zero() && v.is_zero(); }
    bool in_K() const { return v.is_zero(); }
    bool operator==(const KTheta& o) const { return u == o.u && v == o.v; }
    bool operator<(const KTheta& o) const {
        if (!(u == o.u)) return u < o.u;
        return v < o.v;
    }
};

inline KTheta kt_add(const KTheta& a, const KTheta& b) { return {a.u + b.u, a.v + b.v}; }
inline KTheta kt_sub(const KTheta& a, const KTheta& b) { return {a.u - b.u, a.v - b.v}; }
inline KTheta kt_neg(const KTheta& a) { return {-a.u, -a.v}; }
inline KTheta kt_mul(const KTheta& a, const KTheta& b, const RingElement& delta) {
    KElement d{delta};
    return {a.u * b.u + a.v * b.v * d, a.u * b.v + a.v * b.u};
}
inline KTheta kt_scale(const KElement& c, const KTheta& a) { return {c * a.u, c * a.v}; }
inline KTheta kt_inv(const KTheta& a, const RingElement& delta) {
    KElement d{delta};
    KElement nrm = a.u * a.u - a.v * a.v * d;
    if (nrm.is_zero()) fail(errc::invalid_argument, "K(theta) inverse of zero-norm element");
    return {a.u / nrm, -(a.v / nrm)};
}

inline CInterval kt_enclose(const KTheta& x, const RingElement& delta, mpfr_prec_t p) {
    CInterval th = principal_sqrt(delta, p);
    return cinterval_of(x.u, p).add(cinterval_of(x.v, p).mul(th, p), p);
}

// ----------------------------------------------------------------------------
// QReal: exact reals of the form  p0 + p1*sqrt(N) + Re(v*theta)  with
// p0, p1 in Q, v in K, theta the principal root of Delta, N = norm(Delta).
// Closed under ring operations; sign is decidable. Every cell membership,
// tie-break, and inequality check on surds reduces to signs of these.
// ----------------------------------------------------------------------------

class QReal {
public:
    QReal(Rat p0, Rat p1, KElement v, RingElement delta)
        : p0_(std::move(p0)), p1_(std::move(p1)), v_(std::move(v)), delta_(std::move(delta)) {}

    static QReal of_rat(const Rat& r, const RingElement& delta) {
        return {r, Rat(0), KElement::zero(delta.ring()), delta};
    }
    // Re(c*z) for z = x + y*theta: Re(c x) + Re((c y) theta)
    static QReal re_of(const KElement& c, const KTheta& z, const RingElement& delta) {
        return {(c * z.u).re(), Rat(0), c * z.v, delta};
    }
    // |z|^2 = |x|^2 + |y|^2 sqrt(N) + Re(2 conj(x) y theta)
    static QReal abs2(const KTheta& z, const RingElement& delta) {
        KElement two{RingElement(delta.ring(), 2, 0)};
        return {z.u.norm_rat(), z.v.norm_rat(), two * z.u.conj() * z.v, delta};
    }

    const RingElement& delta() const { return delta_; }
    Int normN() const { return delta_.norm(); }

    QReal operator+(const QReal& o) const { return {p0_ + o.p0_, p1_ + o.p1_, v_ + o.v_, delta_}; }
    QReal operator-(const QReal& o) const { return {p0_ - o.p0_, p1_ - o.p1_, v_ - o.v_, delta_}; }
    QReal operator-() const { return {-p0_, -p1_, -v_, delta_}; }
    QReal add_rat(const Rat& r) const { return {p0_ + r, p1_, v_, delta_}; }
    QReal scale(const Rat& r) const {
        return {p0_ * r, p1_ * r, KElement(v_.ring(), r) * v_, delta_};
    }

    // product stays in the class:
    //   sqrt(N) * Re(w theta) = Re(conj(w) conj(Delta) theta)
    //   Re(v theta) Re(w theta) = Re(v w Delta)/2 + (Re(v conj(w))/2) sqrt(N)
    QReal operator*(const QReal& o) const {
        RingId rg = v_.ring();
        KElement d{delta_};
        KElement dbar{delta_.conj()};
        Rat N{normN()};
        Rat q0 = p0_ * o.p0_ + p1_ * o.p1_ * N + (v_ * o.v_ * d).re() / 2;
        Rat q1 = p0_ * o.p1_ + p1_ * o.p0_ + (v_ * o.v_.conj()).re() / 2;
        KElement nv = KElement(rg, p0_) * o.v_ + KElement(rg, o.p0_) * v_ +
                      KElement(rg, p1_) * o.v_.conj() * dbar +
                      KElement(rg, o.p1_) * v_.conj() * dbar;
        return {q0, q1, nv, delta_};
    }

    bool struct_zero() const { return p0_ == 0 && p1_ == 0 && v_.is_zero(); }

    RealInterval enclose(mpfr_prec_t p) const {
        RealInterval acc = RealInterval::point_rat(p0_, p);
        acc = acc.add(RealInterval::point_rat(p1_, p).mul(RealInterval::sqrt_int(normN(), p), p), p);
        if (!v_.is_zero()) {
            CInterval vt = cinterval_of(v_, p).mul(principal_sqrt(delta_, p), p);
            acc = acc.add(vt.re, p);
        }
        return acc;
    }

    // exact zero decision
    bool is_zero() const {
        if (v_.is_zero()) return sign_quad(p0_, p1_, normN()) == 0;
        // x := Re(v theta); x^2 = A + B sqrt(N), A = Re(v^2 Delta)/2, B = |v|^2/2 > 0
        Rat A = (v_ * v_ * KElement(delta_)).re() / 2;
        Rat B = v_.norm_rat() / 2;
        Int N = normN();
        Int root;
        if (is_square(N, &root)) {
            Rat R = p0_ + p1_ * Rat(root); // rational part
            Rat X2 = A + B * Rat(root);    // x^2, rational
            if (R == 0) return X2 == 0;
            if (X2 != R * R) return false;
            return sign_re_vtheta() == -ccf::sign(R);
        }
        // N irrational: x = -(p0 + p1 sqrt(N)) requires matching components
        int sR = sign_quad(p0_, p1_, N);
        if (sR == 0) {
            // value = x; x = 0 would force sqrt(N) rational
            return false;
        }
        if (A != p0_ * p0_ + p1_ * p1_ * Rat(N)) return false;
        if (B != 2 * p0_ * p1_) return false;
        return sign_re_vtheta() == -sR;
    }

    // exact sign: -1, 0, +1; a cheap enclosure first, the algebraic zero test
    // only when the enclosure straddles zero
    int sign() const {
        if (struct_zero()) return 0;
        if (v_.is_zero()) return sign_quad(p0_, p1_, normN());
        {
            auto s = enclose(96).known_sign();
            if (s) return *s;
        }
        if (is_zero()) return 0;
        return escalate(192, 1 << 20, [&](mpfr_prec_t p) -> std::optional<int> {
            auto s = enclose(p).known_sign();
            if (s && *s != 0) return *s;
            return std::nullopt;
        });
    }

    bool operator<(const QReal& o) const { return (*this - o).sign() < 0; }
    bool operator<=(const QReal& o) const { return (*this - o).sign() <= 0; }
    bool operator==(const QReal& o) const { return (*this - o).sign() == 0; }

    int cmp_rat(const Rat& r) const { return add_rat(-r).sign(); }

    std::string str() const {
        return to_string(p0_) + " + " + to_string(p1_) + "*sqrt(" + to_string(normN()) +
               ") + Re((" + v_.str() + ")*theta)";
    }

private:
    // sign of Re(v theta), known nonzero by the caller's case analysis
    int sign_re_vtheta() const {
        return escalate(96, 1 << 20, [&](mpfr_prec_t p) -> std::optional<int> {
            CInterval vt = cinterval_of(v_, p).mul(principal_sqrt(delta_, p), p);
            auto s = vt.re.known_sign();
            if (s && *s != 0) return *s;
            return std::nullopt;
        });
    }

    Rat p0_, p1_;
    KElement v_;
    RingElement delta_;
};

// ----------------------------------------------------------------------------
// QuadraticSurd: an exact element of a degree-2 extension of K, z = x + y*theta
// with theta the principal square root of Delta (positive imaginary part;
// positive real part when Delta is a positive real). Guaranteed z not in K.
// ----------------------------------------------------------------------------

enum class Branch { plus, minus };

inline const char* branch_name(Branch b) { return b == Branch::plus ? "plus" : "minus"; }
inline Branch branch_from_name(const std::string& s) {
    if (s == "plus" || s == "+" || s == "positive") return Branch::plus;
    if (s == "minus" || s == "-" || s == "negative") return Branch::minus;
    fail(errc::invalid_argument, "unknown branch '" + s + "'");
}

// K-square test: is s a square in K?
inline bool is_square_in_K(const KElement& s) {
    if (s.is_zero()) return true;
    // write s = p + q*mu with mu = i sqrt(d') for the ring's pure-imaginary
    // generator; t = c + e*mu, t^2 = s  =>  c^2 - D e^2 = p, 2ce = q, where
    // mu^2 = -D (D = d * ims_denominator_square adjustments folded exactly).
    // Work with Re/Im: Re(s) = p, Im(s) = q' sqrt(d); mu := i sqrt(d), so
    // s = p + (q') mu with mu^2 = -d.
    Rat p = s.re();
    Rat q = s.im_coeff();
    Rat D(ring_data(s.ring()).d);
    if (q == 0) {
        // either e = 0, c^2 = p or c = 0, -D e^2 = p
        if (p >= 0 && rat_sqrt(p)) {
            // c rational; c must lie in K: K contains Q, fine — but t = c must
            // additionally be an element of K with t real rational: yes.
            return true;
        }
        if (p <= 0 && rat_sqrt(-p / D)) {
            // t = e*mu; t in K iff e*sqrt(d) times i in K: mu generates K over Q
            // with half-integer rings included (e rational => t = e*mu in K).
            return true;
        }
        return false;
    }
    // q != 0: c^2 = (p ± sqrt(p^2 + D q^2))/2 must be a rational square and
    // e = q/(2c) then automatic.
    Rat disc = p * p + D * q * q;
    auto m = rat_sqrt(disc);
    if (!m) return false;
    for (int sgn : {1, -1}) {
        Rat c2 = (p + Rat(sgn) * *m) / 2;
        if (c2 >= 0 && rat_sqrt(c2)) return true;
    }
    return false;
}

class QuadraticSurd {
public:
    QuadraticSurd(KElement x, KElement y, RingElement delta)
        : x_(std::move(x)), y_(std::move(y)), delta_(std::move(delta)) {
        if (y_.is_zero()) fail(errc::invalid_argument, "surd with zero irrational part");
    }

    RingId ring() const { return delta_.ring(); }
    const KElement& x() const { return x_; }
    const KElement& y() const { return y_; }
    const RingElement& delta() const { return delta_; }
    KTheta kt() const { return {x_, y_}; }

    bool operator==(const QuadraticSurd& o) const {
        return delta_ == o.delta_ && x_ == o.x_ && y_ == o.y_;
    }
    bool operator<(const QuadraticSurd& o) const {
        if (!(x_ == o.x_)) return x_ < o.x_;
        if (!(y_ == o.y_)) return y_ < o.y_;
        return delta_ < o.delta_;
    }

    // z -> (z - a)^{-1}, exact, same Delta and branch
    QuadraticSurd step(const RingElement& a) const {
        KElement xa = x_ - KElement(a);
        KElement D = xa * xa - y_ * y_ * KElement(delta_);
        if (D.is_zero()) fail(errc::invalid_argument, "surd step through K point (bug)");
        return {xa / D, -(y_ / D), delta_};
    }

    BallComplex embed(mpfr_prec_t precision) const {
        if (precision < 32) fail(errc::invalid_argument, "embed precision < 32");
        mpfr_prec_t work = precision + 16;
        for (int tries = 0; tries < 8; ++tries, work *= 2) {
            BallComplex b = BallComplex::from_cinterval(kt_enclose(kt(), delta_, work), work);
            // required: radius <= 2^(4-precision)
            Real bound(64);
            mpfr_set_ui_2exp(bound.get(), 1, 4 - static_cast<long>(precision), MPFR_RNDN);
            if (b.rad().cmp(bound) <= 0) return b;
        }
        fail(errc::precision_exhausted, "embed could not reach target radius");
    }

    QReal abs2() const { return QReal::abs2(kt(), delta_); }
    QReal abs2_minus(const RingElement& a) const {
        return QReal::abs2({x_ - KElement(a), y_}, delta_);
    }

    std::string str() const {
        return "(" + x_.str() + ") + (" + y_.str() + ")*sqrt(" + delta_.str() + ")";
    }

private:
    KElement x_, y_;
    RingElement delta_;
};

// The chosen root (-b + s*sqrt(b^2-4ac)) / 2a, s = +-1 per branch; theta is
// always the principal root of Delta = b^2 - 4ac.
inline QuadraticSurd surd_from_poly(const RingElement& a, const RingElement& b,
                                    const RingElement& c, Branch branch = Branch::plus) {
    if (a.is_zero()) fail(errc::zero_leading_coefficient, "leading coefficient is zero");
    RingElement delta = b * b - a * c * Int(4);
    if (delta.is_zero() || is_square_in_K(KElement(delta)))
        fail(errc::reducible_polynomial, "discriminant is a square in K");
    KElement twoa{a * Int(2)};
    KElement x = -(KElement(b) / twoa);
    KElement y = KElement::one(a.ring()) / twoa;
    if (branch == Branch::minus) y = -y;
    return {x, y, delta};
}

// Minimal polynomial over Gamma: content-reduced, leading coefficient
// canonical; plus the branch selecting this root. Round-trips exactly.
struct SurdPoly {
    RingElement a, b, c;
    Branch branch;
};

inline SurdPoly surd_minimal_poly(const QuadraticSurd& z) {
    // z^2 - 2x z + (x^2 - y^2 Delta) = 0 over K; clear denominators
    KElement s = z.x() * KElement(RingElement(z.ring(), 2, 0));
    KElement t = z.x() * z.x() - z.y() * z.y() * KElement(z.delta());
    RingElement den = s.den() * t.den();
    RingElement a = den;
    RingElement num_s = s.num() * t.den();
    RingElement num_t = t.num() * s.den();
    RingElement b = -num_s, c = num_t;
    RingElement g = gcd(gcd(a, b), c);
    a = exact_div(a, g);
    b = exact_div(b, g);
    c = exact_div(c, g);
    RingElement u;
    RingElement ca = canonical_associate(a, &u);
    a = ca;
    b = b * u;
    c = c * u;
    // branch: does the plus root reproduce z?
    QuadraticSurd plus = surd_from_poly(a, b, c, Branch::plus);
    // same Delta up to the square factor (2a y)^2; compare via normalized y
    // signs using an exact check: plus.x == z.x always; decide by comparing
    // Re/Im enclosures of the two y*theta values, with exact fallback.
    // (2 a y)^2 Delta = Delta'; principal roots differ by a sign eps.
    // eps = +1 iff (2 a y) theta is principal.
    KElement w = KElement(a * Int(2)) * z.y();
    // sign of Im(w * theta): QReal machinery on the pure Re form of -i*w*theta
    // Im(u) = Re(-i u). For rings without i in K, decide via enclosure with
    // exact zero test: Im(w theta) = 0 iff w theta real iff (w theta)^2 real
    // nonneg... use dedicated decision below.
    int im_sign = [&]() -> int {
        // (w theta)^2 = w^2 Delta: if Im(w theta) = 0 then w^2 Delta is a
        // nonnegative real; detect exactly, else enclosure decides.
        KElement w2d = w * w * KElement(z.delta());
        bool maybe_real_axis = w2d.is_real() && w2d.re() >= 0;
        return escalate(96, 1 << 20, [&](mpfr_prec_t p) -> std::optional<int> {
            CInterval wt = cinterval_of(w, p).mul(principal_sqrt(z.delta(), p), p);
            auto s2 = wt.im.known_sign();
            if (s2 && *s2 != 0) return *s2;
            if (maybe_real_axis) {
                // w theta is real; its sign irrelevant here, Im = 0
                return 0;
            }
            return std::nullopt;
        });
    }();
    int eps;
    if (im_sign > 0)
        eps = 1;
    else if (im_sign < 0)
        eps = -1;
    else {
        // w*theta real: tie on real part sign
        eps = escalate(96, 1 << 20, [&](mpfr_prec_t p) -> std::optional<int> {
            CInterval wt = cinterval_of(w, p).mul(principal_sqrt(z.delta(), p), p);
            auto s2 = wt.re.known_sign();
            if (s2 && *s2 != 0) return *s2;
            return std::nullopt;
        });
    }
    return {a, b, c, eps > 0 ? Branch::plus : Branch::minus};
}

// Exact equality of two surds over the same ring, normalizing discriminants
// that differ by a K-square factor.
inline bool surd_equals(const QuadraticSurd& u, const QuadraticSurd& v) {
    if (u.ring() != v.ring()) fail(errc::wrong_ring, "surds over different rings");
    if (u.delta() == v.delta()) return u.x() == v.x() && u.y() == v.y();
    // theta_u = eps * t * theta_v when Delta_u = t^2 Delta_v
    SurdPoly pu = surd_minimal_poly(u);
    SurdPoly pv = surd_minimal_poly(v);
    if (!(pu.a == pv.a && pu.b == pv.b && pu.c == pv.c)) {
        // different minimal polynomials: equal surds are impossible; unequal
        // discriminant ratio being a non-square is reported distinctly
        KElement ratio = KElement(u.delta()) / KElement(v.delta());
        if (!is_square_in_K(ratio))
            fail(errc::incomparable_discriminants,
                 "discriminants differ by a non-square factor");
        return false;
    }
    return pu.branch == pv.branch;
}

} // namespace ccf
