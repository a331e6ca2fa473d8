#pragma once

#include <ostream>
#include <string>

#include "ccf/ring.hpp"

namespace ccf {

// An element of K = Frac(Gamma), stored as a reduced fraction of ring
// elements with the denominator normalized to its canonical associate.
// Structural equality of canonical forms is field equality.
class KElement {
public:
    KElement() : num_(), den_(ring_one(RingId::G)) {}
    explicit KElement(const RingElement& n) : num_(n), den_(ring_one(n.ring())) {}
    KElement(const RingElement& n, const RingElement& d) : num_(n), den_(d) { reduce(); }
    KElement(RingId ring, const Rat& re_rational)
        : num_(ring, ccf::num(re_rational), 0), den_(ring, ccf::den(re_rational), 0) {
        reduce();
    }

    static KElement zero(RingId r) { return KElement(ring_zero(r)); }
    static KElement one(RingId r) { return KElement(ring_one(r)); }

    // value-correct but not canonical: skips reduction entirely; for bulk
    // storage of derived quantities that are consumed by value (never by
    // structural equality)
    static KElement from_raw(const RingElement& n, const RingElement& d) {
        if (d.is_zero()) fail(errc::invalid_argument, "zero denominator in K");
        KElement r;
        r.num_ = n;
        r.den_ = d;
        return r;
    }

    // fraction known to be in lowest terms (e.g. consecutive convergents,
    // whose determinant identity forces coprimality); skips the gcd
    static KElement from_coprime(const RingElement& n, const RingElement& d) {
        KElement r;
        r.num_ = n;
        r.den_ = d;
        if (d.is_zero()) fail(errc::invalid_argument, "zero denominator in K");
        if (n.is_zero()) {
            r.den_ = ring_one(n.ring());
            return r;
        }
        r.normalize_den();
        return r;
    }

    RingId ring() const { return num_.ring(); }
    const RingElement& num() const { return num_; }
    const RingElement& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    bool operator==(const KElement& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const KElement& o) const { return !(*this == o); }
    bool operator<(const KElement& o) const {
        if (!(num_ == o.num_)) return num_ < o.num_;
        return den_ < o.den_;
    }

    KElement operator+(const KElement& o) const {
        return KElement(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    KElement operator-(const KElement& o) const {
        return KElement(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }
    KElement operator-() const {
        KElement r = *this;
        r.num_ = -r.num_;
        return r;
    }
    KElement operator*(const KElement& o) const {
        return KElement(num_ * o.num_, den_ * o.den_);
    }
    KElement operator/(const KElement& o) const {
        if (o.is_zero()) fail(errc::invalid_argument, "division by zero in K");
        return KElement(num_ * o.den_, den_ * o.num_);
    }
    KElement inv() const {
        if (is_zero()) fail(errc::invalid_argument, "inverse of zero in K");
        return KElement(den_, num_);
    }
    KElement conj() const {
        KElement r;
        r.num_ = num_.conj();
        r.den_ = den_.conj();
        r.normalize_den();
        return r;
    }

    // |x|^2 as an exact rational
    Rat norm_rat() const { return Rat(num_.norm()) / Rat(den_.norm()); }

    // exact Re(x); Im(x) = im_coeff(x) * sqrt(d)
    Rat re() const {
        RingElement t = num_ * den_.conj();
        Rat d(den_.norm());
        return t.re() / d;
    }
    Rat im_coeff() const {
        RingElement t = num_ * den_.conj();
        Rat d(den_.norm());
        return t.im_coeff() / d;
    }

    bool is_real() const { return im_coeff() == 0; }
    // true iff x is a rational number (lies in Q)
    bool is_rational(Rat* value = nullptr) const {
        if (!is_real()) return false;
        if (value) *value = re();
        return true;
    }

    // true iff x lies in Gamma
    bool is_integral(RingElement* value = nullptr) const {
        if (!(den_ == ring_one(ring()))) return false;
        if (value) *value = num_;
        return true;
    }

    std::string str() const {
        if (den_ == ring_one(ring())) return num_.str();
        return "(" + num_.str() + ")/(" + den_.str() + ")";
    }

private:
    void reduce() {
        if (den_.is_zero()) fail(errc::invalid_argument, "zero denominator in K");
        if (num_.is_zero()) {
            den_ = ring_one(ring());
            return;
        }
        if (den_.norm() == 1) { // unit denominator: no gcd needed
            normalize_den();
            return;
        }
        RingElement g = gcd(num_, den_);
        num_ = exact_div(num_, g);
        den_ = exact_div(den_, g);
        normalize_den();
    }
    void normalize_den() {
        RingElement u;
        RingElement cd = canonical_associate(den_, &u);
        den_ = cd;
        num_ = num_ * u;
        if (den_.norm() == 1) {
            // canonical unit denominator is 1 by the sector convention
            num_ = exact_div(num_, den_);
            den_ = ring_one(ring());
        }
    }

    RingElement num_, den_;
};

inline std::ostream& operator<<(std::ostream& os, const KElement& x) { return os << x.str(); }

inline KElement operator*(const RingElement& a, const KElement& x) { return KElement(a) * x; }
inline KElement operator+(const RingElement& a, const KElement& x) { return KElement(a) + x; }

inline KElement apply_symmetry(const SymmetryElement& s, const KElement& x) {
    KElement r = s.conjugate ? x.conj() : x;
    return s.negate ? -r : r;
}

} // namespace ccf
