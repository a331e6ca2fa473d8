#pragma once

#include <array>
#include <ostream>
#include <string>
#include <vector>

#include "ccf/numeric.hpp"

namespace ccf {

// The five Euclidean imaginary-quadratic rings, as Z-modules Z + Z*g.
enum class RingId { G, E, Z2, Z7, Z11 };

// Static data for a ring: g satisfies g^2 = tr*g - nm (tr = g + conj g,
// nm = g * conj g), conj(g) = cx + cy*g, Im(g) = ims * sqrt(d).
struct RingDescriptor {
    RingId id;
    const char* name;
    int tr;       // trace of g
    int nm;       // norm of g
    int cx, cy;   // conj(g) in basis {1, g}
    unsigned d;   // squarefree part under Im(g)
    Rat ims;      // Im(g) = ims * sqrt(d)
    int nu2;      // nu(Gamma)^2, the smallest norm > 1
    int unit_count;

    Rat re_g() const { return Rat(tr, 2); }
};

inline const RingDescriptor& ring_data(RingId id) {
    static const std::array<RingDescriptor, 5> table = {{
        {RingId::G, "G", 0, 1, 0, -1, 1, Rat(1), 2, 4},
        {RingId::E, "E", -1, 1, -1, -1, 3, Rat(1, 2), 3, 6},
        {RingId::Z2, "Z2", 0, 2, 0, -1, 2, Rat(1), 2, 2},
        {RingId::Z7, "Z7", 1, 2, 1, -1, 7, Rat(1, 2), 2, 2},
        {RingId::Z11, "Z11", 1, 3, 1, -1, 11, Rat(1, 2), 3, 2},
    }};
    return table[static_cast<size_t>(id)];
}

inline RingId ring_from_name(const std::string& s) {
    if (s == "G" || s == "g" || s == "gauss") return RingId::G;
    if (s == "E" || s == "e" || s == "eisenstein") return RingId::E;
    if (s == "Z2" || s == "z2") return RingId::Z2;
    if (s == "Z7" || s == "z7") return RingId::Z7;
    if (s == "Z11" || s == "z11") return RingId::Z11;
    fail(errc::invalid_argument, "unknown ring '" + s + "'");
}

class RingElement {
public:
    RingElement() : ring_(RingId::G), a_(0), b_(0) {}
    RingElement(RingId ring, Int a, Int b) : ring_(ring), a_(std::move(a)), b_(std::move(b)) {}

    RingId ring() const { return ring_; }
    const Int& a() const { return a_; }
    const Int& b() const { return b_; }
    const RingDescriptor& desc() const { return ring_data(ring_); }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool operator==(const RingElement& o) const {
        return ring_ == o.ring_ && a_ == o.a_ && b_ == o.b_;
    }
    bool operator!=(const RingElement& o) const { return !(*this == o); }
    // arbitrary total order (used for map keys and tie-break scans)
    bool operator<(const RingElement& o) const {
        if (a_ != o.a_) return a_ < o.a_;
        return b_ < o.b_;
    }

    RingElement operator+(const RingElement& o) const { return {ring_, a_ + o.a_, b_ + o.b_}; }
    RingElement operator-(const RingElement& o) const { return {ring_, a_ - o.a_, b_ - o.b_}; }
    RingElement operator-() const { return {ring_, -a_, -b_}; }
    RingElement operator*(const RingElement& o) const {
        const auto& rd = desc();
        // (a + b g)(c + d g) with g^2 = tr g - nm
        Int bd = b_ * o.b_;
        return {ring_, a_ * o.a_ - rd.nm * bd, a_ * o.b_ + b_ * o.a_ + rd.tr * bd};
    }
    RingElement operator*(const Int& k) const { return {ring_, a_ * k, b_ * k}; }

    RingElement conj() const {
        const auto& rd = desc();
        return {ring_, a_ + b_ * rd.cx, b_ * rd.cy};
    }

    Int norm() const {
        const auto& rd = desc();
        return a_ * a_ + rd.tr * a_ * b_ + rd.nm * b_ * b_;
    }

    // exact real/imaginary parts: Re = a + b*tr/2, Im = b*ims*sqrt(d)
    Rat re() const { return Rat(a_) + Rat(b_) * desc().re_g(); }
    Rat im_coeff() const { return Rat(b_) * desc().ims; }

    std::string str() const {
        return to_string(a_) + (b_ >= 0 ? "+" : "") + to_string(b_) + "g";
    }

private:
    RingId ring_;
    Int a_, b_;
};

inline std::ostream& operator<<(std::ostream& os, const RingElement& x) { return os << x.str(); }

inline Int norm(const RingElement& x) { return x.norm(); }

inline RingElement ring_zero(RingId r) { return {r, 0, 0}; }
inline RingElement ring_one(RingId r) { return {r, 1, 0}; }
inline RingElement ring_gen(RingId r) { return {r, 0, 1}; }

// All units of the ring.
inline std::vector<RingElement> units_of(RingId r) {
    std::vector<RingElement> u = {ring_one(r), -ring_one(r)};
    if (r == RingId::G) {
        u.push_back(ring_gen(r));   // i
        u.push_back(-ring_gen(r));
    } else if (r == RingId::E) {
        RingElement w = ring_gen(r);            // omega
        RingElement rho{r, 1, 1};               // 1 + omega, primitive 6th root
        u.insert(u.end(), {w, -w, rho, -rho});
    }
    return u;
}

inline bool is_even_gaussian(const RingElement& x) {
    if (x.ring() != RingId::G) fail(errc::wrong_ring, "is_even_gaussian needs ring G");
    return (x.a() + x.b()) % 2 == 0;
}

// Four-element symmetry group generated by z -> -z and z -> conj(z).
struct SymmetryElement {
    bool negate = false;
    bool conjugate = false;

    SymmetryElement compose(const SymmetryElement& o) const {
        return {static_cast<bool>(negate ^ o.negate), static_cast<bool>(conjugate ^ o.conjugate)};
    }
    bool operator==(const SymmetryElement& o) const {
        return negate == o.negate && conjugate == o.conjugate;
    }
};

inline constexpr SymmetryElement sym_identity{false, false};
inline constexpr SymmetryElement sym_negate{true, false};
inline constexpr SymmetryElement sym_conj{false, true};
inline constexpr SymmetryElement sym_y{true, true}; // z -> -conj(z)

inline const std::array<SymmetryElement, 4>& all_symmetries() {
    static const std::array<SymmetryElement, 4> s = {sym_identity, sym_negate, sym_conj, sym_y};
    return s;
}

inline RingElement apply_symmetry(const SymmetryElement& s, const RingElement& x) {
    RingElement r = s.conjugate ? x.conj() : x;
    return s.negate ? -r : r;
}

// sigma_y^k on a ring element
inline RingElement sigma_y_pow(const RingElement& x, long k) {
    return (k % 2 == 0) ? x : apply_symmetry(sym_y, x);
}

// Canonical associate: the unique unit multiple whose argument lies in the
// ring's fundamental sector ((-pi/4, pi/4] for G, (-pi/6, pi/6] for E,
// right half plane otherwise). Returns the canonical element; `unit_out`, if
// given, receives u with canonical = u * x.
inline RingElement canonical_associate(const RingElement& x, RingElement* unit_out = nullptr) {
    if (x.is_zero()) {
        if (unit_out) *unit_out = ring_one(x.ring());
        return x;
    }
    auto in_sector = [&](const RingElement& w) -> bool {
        const Int& a = w.a();
        const Int& b = w.b();
        switch (w.ring()) {
        case RingId::G:
            return a > 0 && -a < b && b <= a;
        case RingId::E:
            return 2 * a - b > 0 && 2 * b <= a && b > -a;
        default: {
            // units are only +-1: pick "positive" representative
            Rat re = w.re();
            if (re != 0) return re > 0;
            return w.im_coeff() > 0;
        }
        }
    };
    for (const auto& u : units_of(x.ring())) {
        RingElement w = u * x;
        if (in_sector(w)) {
            if (unit_out) *unit_out = u;
            return w;
        }
    }
    fail(errc::invalid_argument, "no canonical associate found (bug)");
}

// Euclidean division: q minimizing norm(x - q*y) over the four rounding
// corners of the exact quotient; norm(rem) < norm(y) holds in all five rings.
inline std::pair<RingElement, RingElement> divmod(const RingElement& x, const RingElement& y) {
    if (y.is_zero()) fail(errc::invalid_argument, "division by zero ring element");
    if (y.norm() == 1) return {x * y.conj(), ring_zero(x.ring())};
    RingElement xc = x * y.conj();
    Int d = y.norm();
    // exact quotient coordinates xc.a/d, xc.b/d
    Int fa = floor_div(xc.a(), d), fb = floor_div(xc.b(), d);
    RingElement best_q = ring_zero(x.ring());
    Int best_norm(-1);
    for (int da = 0; da <= 1; ++da) {
        for (int db = 0; db <= 1; ++db) {
            RingElement q{x.ring(), fa + da, fb + db};
            RingElement r = x - q * y;
            Int n = r.norm();
            if (best_norm < 0 || n < best_norm) {
                best_norm = n;
                best_q = q;
            }
        }
    }
    RingElement rem = x - best_q * y;
    if (rem.norm() >= y.norm())
        fail(errc::invalid_argument, "euclidean division failed (bug)");
    return {best_q, rem};
}

inline RingElement gcd(RingElement a, RingElement b) {
    while (!b.is_zero()) {
        auto [q, r] = divmod(a, b);
        (void)q;
        a = b;
        b = r;
    }
    return canonical_associate(a);
}

// Exact division (throws if not divisible).
inline RingElement exact_div(const RingElement& x, const RingElement& y) {
    auto [q, r] = divmod(x, y);
    if (!r.is_zero()) fail(errc::invalid_argument, "exact_div: not divisible");
    return q;
}

// All ring elements gamma with |gamma - c|^2 <= r2, c given by exact rational
// coordinates (re, im_coeff * sqrt(d)) in the ring's frame.
inline std::vector<RingElement> elements_in_disc_exact(RingId ring, const Rat& c_re,
                                                       const Rat& c_imc, const Rat& r2) {
    std::vector<RingElement> out;
    if (r2 < 0) return out;
    const auto& rd = ring_data(ring);
    // gamma = a + b g: Im gamma = b*ims*sqrt(d); |Im(gamma - c)| <= r
    // => (b*ims - c_imc)^2 d <= r2
    // b range: b in [ (c_imc - sqrt(r2/d))/ims , (c_imc + sqrt(r2/d))/ims ]
    // use integer-safe bounds via ceil/floor of rational arithmetic with sqrt bound
    // sqrt(r2/d) <= (1 + r2/d)/2 is too lossy; compute integer sqrt bounds instead.
    // Bound: need (b*ims - c_imc)^2 <= r2/d. Let t = r2/d.
    Rat t = r2 / Rat(rd.d);
    // |b*ims - c_imc| <= sqrt(t)  =>  b*ims in [c_imc - s, c_imc + s]
    // integer bound for s: s <= isqrt(ceil(t)) + 1
    Int s_up = isqrt(ceil_rat(t)) + 1;
    Rat blo_r = (c_imc - Rat(s_up)) / rd.ims;
    Rat bhi_r = (c_imc + Rat(s_up)) / rd.ims;
    Int blo = floor_rat(blo_r) - 1, bhi = ceil_rat(bhi_r) + 1;
    for (Int b = blo; b <= bhi; ++b) {
        // Re gamma = a + b*tr/2 ; |Re(gamma - c)| <= r
        Rat re_off = Rat(b) * rd.re_g() - c_re;
        // (a + re_off)^2 <= r2
        Int s2 = isqrt(ceil_rat(r2)) + 1;
        Int alo = floor_rat(-re_off - Rat(s2)) - 1, ahi = ceil_rat(-re_off + Rat(s2)) + 1;
        for (Int a = alo; a <= ahi; ++a) {
            RingElement g{ring, a, b};
            Rat dre = g.re() - c_re;
            Rat dim = g.im_coeff() - c_imc;
            if (dre * dre + dim * dim * Rat(rd.d) <= r2) out.push_back(g);
        }
    }
    return out;
}

} // namespace ccf
