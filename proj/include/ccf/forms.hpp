#pragma once

#include <array>
#include <set>

#include "ccf/expansion.hpp"

namespace ccf {

enum class Sigma { identity, conjugation };

inline KElement sigma_apply(Sigma s, const KElement& x) {
    return s == Sigma::identity ? x : x.conj();
}

// 2x2 matrix over K with the sigma-form semantics
// f(xi, eta) = A xi^s xi + B xi^s eta + C eta^s xi + D eta^s eta.
class SigmaForm {
public:
    SigmaForm(Sigma s, KElement A, KElement B, KElement C, KElement D)
        : sigma_(s), A_(std::move(A)), B_(std::move(B)), C_(std::move(C)), D_(std::move(D)) {}

    // sigma-symmetric constructor: enforces C = B^sigma (and real diagonal
    // for Hermitian forms)
    static SigmaForm symmetric(Sigma s, const KElement& A, const KElement& B, const KElement& D) {
        if (s == Sigma::conjugation && (!A.is_real() || !D.is_real()))
            fail(errc::invalid_argument, "Hermitian form needs a real diagonal");
        return {s, A, B, sigma_apply(s, B), D};
    }

    Sigma sigma() const { return sigma_; }
    RingId ring() const { return A_.ring(); }
    const KElement& A() const { return A_; }
    const KElement& B() const { return B_; }
    const KElement& C() const { return C_; }
    const KElement& D() const { return D_; }

    bool is_sigma_symmetric() const { return C_ == sigma_apply(sigma_, B_); }

    KElement det() const { return A_ * D_ - B_ * C_; }

    // all entries in k^{-1} Gamma?
    bool entries_in(const Int& k) const {
        KElement kk(ring(), Rat(k));
        for (const KElement* e : {&A_, &B_, &C_, &D_})
            if (!((*e) * kk).is_integral()) return false;
        return true;
    }

    bool operator==(const SigmaForm& o) const {
        return sigma_ == o.sigma_ && A_ == o.A_ && B_ == o.B_ && C_ == o.C_ && D_ == o.D_;
    }
    bool operator<(const SigmaForm& o) const {
        if (!(A_ == o.A_)) return A_ < o.A_;
        if (!(B_ == o.B_)) return B_ < o.B_;
        if (!(C_ == o.C_)) return C_ < o.C_;
        return D_ < o.D_;
    }

    std::string str() const {
        return "[[" + A_.str() + ", " + B_.str() + "], [" + C_.str() + ", " + D_.str() + "]]";
    }

private:
    Sigma sigma_;
    KElement A_, B_, C_, D_;
};

// convergent matrix g_n = [[p_n, p_{n-1}], [q_n, q_{n-1}]]
struct GMatrix {
    RingElement p_n, p_nm1, q_n, q_nm1;

    RingElement det() const { return p_n * q_nm1 - p_nm1 * q_n; }
    static GMatrix at(const ExpansionTrace& t, long n) {
        if (n < 0 || n >= t.size()) fail(errc::invalid_argument, "GMatrix index out of range");
        RingElement pm = (n == 0) ? ring_one(t.ring) : t.steps[n - 1].p;
        RingElement qm = (n == 0) ? ring_zero(t.ring) : t.steps[n - 1].q;
        return {t.steps[n].p, pm, t.steps[n].q, qm};
    }
};

// integral action: entries of k*X in Gamma; returns the four entries of
// (g^t)^sigma (kX) g as ring elements (k times the true entries)
inline std::array<RingElement, 4> act_integral(const std::array<RingElement, 4>& kX, Sigma s,
                                               const GMatrix& g) {
    auto tw = [&](const RingElement& x) { return s == Sigma::conjugation ? x.conj() : x; };
    const RingElement &a = kX[0], &b = kX[1], &c = kX[2], &d = kX[3];
    RingElement m00 = a * g.p_n + b * g.q_n, m01 = a * g.p_nm1 + b * g.q_nm1;
    RingElement m10 = c * g.p_n + d * g.q_n, m11 = c * g.p_nm1 + d * g.q_nm1;
    RingElement ps = tw(g.p_n), qs = tw(g.q_n), pms = tw(g.p_nm1), qms = tw(g.q_nm1);
    return {ps * m00 + qs * m10, ps * m01 + qs * m11, pms * m00 + qms * m10,
            pms * m01 + qms * m11};
}

// smallest k <= 64 with X in M(2, k^{-1} Gamma), with the scaled entries
inline std::optional<std::pair<Int, std::array<RingElement, 4>>> integral_scale(
    const SigmaForm& X) {
    for (long k = 1; k <= 64; ++k) {
        KElement kk(X.ring(), Rat(k));
        std::array<RingElement, 4> e;
        bool ok = true;
        int i = 0;
        for (const KElement* p : {&X.A(), &X.B(), &X.C(), &X.D()}) {
            if (!((*p) * kk).is_integral(&e[i])) {
                ok = false;
                break;
            }
            ++i;
        }
        if (ok) return std::make_pair(Int(k), e);
    }
    return std::nullopt;
}

// X_{g,sigma} = (g^t)^sigma X g
inline SigmaForm act(const SigmaForm& X, const GMatrix& g) {
    Sigma s = X.sigma();
    KElement a = sigma_apply(s, KElement(g.p_n)), b = sigma_apply(s, KElement(g.q_n));
    KElement c = sigma_apply(s, KElement(g.p_nm1)), d = sigma_apply(s, KElement(g.q_nm1));
    // (g^t)^sigma = [[a, b], [c, d]] with the entries above
    KElement XA = X.A(), XB = X.B(), XC = X.C(), XD = X.D();
    KElement p{g.p_n}, pm{g.p_nm1}, q{g.q_n}, qm{g.q_nm1};
    // first X*g
    KElement m00 = XA * p + XB * q, m01 = XA * pm + XB * qm;
    KElement m10 = XC * p + XD * q, m11 = XC * pm + XD * qm;
    return SigmaForm(s, a * m00 + b * m10, a * m01 + b * m11, c * m00 + d * m10,
                     c * m01 + d * m11);
}

// f(xi, eta) for exact K arguments
inline KElement eval_form(const SigmaForm& X, const KElement& xi, const KElement& eta) {
    KElement xs = sigma_apply(X.sigma(), xi), es = sigma_apply(X.sigma(), eta);
    return X.A() * xs * xi + X.B() * xs * eta + X.C() * es * xi + X.D() * es * eta;
}

// f(z, 1) at a surd point; exact zero test.
// identity sigma: A z^2 + (B + C) z + D lives in K(theta).
// conjugation:    A|z|^2 + B conj(z) + C z + D is a QReal (A, D real).
inline bool form_vanishes_at(const SigmaForm& X, const QuadraticSurd& z) {
    if (X.sigma() == Sigma::identity) {
        KTheta zz = kt_mul(z.kt(), z.kt(), z.delta());
        KTheta val = kt_add(kt_add(kt_scale(X.A(), zz), kt_scale(X.B() + X.C(), z.kt())),
                            {X.D(), KElement::zero(z.ring())});
        return val.is_zero();
    }
    Rat Ar, Dr;
    if (!X.A().is_rational(&Ar) || !X.D().is_rational(&Dr))
        fail(errc::invalid_argument, "Hermitian evaluation needs a real rational diagonal");
    const RingElement& D = z.delta();
    QReal val = QReal::abs2(z.kt(), D).scale(Ar).add_rat(Dr);
    // B conj(z) + C z with C = conj(B): 2 Re(B conj(z)) = 2 Re(conj(B) z)... use
    // Re(B conj z) + Re(C z) = Re((C) z) + Re(conj(conj(B) z)) -> both as re_of
    // terms: B conj(z) + conj(B) z = 2 Re(conj(B) z)? No: B conj(z) + C z with
    // C = B^sigma = conj(B): B conj(z) + conj(B) z = 2 Re(conj(B) z).
    QReal cross = QReal::re_of(X.B().conj(), z.kt(), D).scale(Rat(2));
    return (val + cross).is_zero();
}

// ---------------------------------------------------------------------------
// orbit along a trace
// ---------------------------------------------------------------------------

struct OrbitReport {
    std::vector<SigmaForm> orbit; // distinct transformed forms, first-seen order
    long stabilized_at = -1;      // last index that introduced a new form
    bool det_preserved = true;
    bool diag_identity = true; // A_n = f(p_n,q_n), D_n = f(p_{n-1},q_{n-1})
    bool bounded_by_constant = true;
    double entry_bound = 0.0; // the computable bound from sup |delta_n|
    double max_entry_abs = 0.0;
    bool pass = true;
    std::string note;
};

// |x| upper bound as double (rigorous direction: >= |x|)
inline double kelem_abs_upper(const KElement& x) {
    RealInterval a2 = cinterval_of(x, 96).abs2(96);
    Real hi = a2.hi();
    Real s = r_sqrt(hi, 96, MPFR_RNDU);
    return s.to_double() * (1 + 1e-12);
}

inline OrbitReport orbit_along(const ExpansionTrace& t, const SigmaForm& X,
                               const std::vector<long>* subset = nullptr) {
    if (!t.exact()) fail(errc::unsupported, "orbit_along needs an exact trace");
    if (!X.is_sigma_symmetric()) fail(errc::invalid_argument, "form is not sigma-symmetric");
    QuadraticSurd z0{t.steps[0].z->u, t.steps[0].z->v, *t.disc};
    if (!form_vanishes_at(X, z0)) fail(errc::not_a_zero, "(z,1) is not a zero of the form");
    OrbitReport rep;
    std::vector<long> idx;
    if (subset) idx = *subset;
    else
        for (long n = 0; n < t.size(); ++n) idx.push_back(n);
    std::set<SigmaForm> seen;
    KElement det0 = X.det();
    // sup |delta_n| over used indices and their predecessors, as upper bound
    double Msup = 0.0;
    for (long n : idx) {
        for (long k : {n, n - 1}) {
            if (k < 0) continue;
            double ub = delta_abs_interval(t, k).hi().to_double() * (1 + 1e-12);
            Msup = std::max(Msup, ub);
        }
    }
    // computable bound (|2Az| + |B| + |C|) M + |Az| M^2 for the diagonal,
    // and |B_n|^2 <= |A_n D_n| + |det X - ...| route for the rest; evaluated
    // with rigorous upper bounds
    double zabs = std::sqrt(std::max(0.0, z0.abs2().enclose(96).hi().to_double())) * (1 + 1e-12);
    double Aabs = kelem_abs_upper(X.A());
    double Babs = kelem_abs_upper(X.B());
    double Cabs = kelem_abs_upper(X.C());
    double diag_bound = (2 * Aabs * zabs + Babs + Cabs) * (Msup + 1) +
                        Aabs * zabs * (Msup + 1) * (Msup + 1);
    double det_shift = kelem_abs_upper(X.det()) + Babs * Cabs;
    double offdiag_bound = std::sqrt(diag_bound * diag_bound + det_shift);
    rep.entry_bound = std::max(diag_bound, offdiag_bound);
    auto scaled = integral_scale(X);
    Sigma sg = X.sigma();
    for (long n : idx) {
        GMatrix g = GMatrix::at(t, n);
        SigmaForm Xn = [&]() {
            if (!scaled) return act(X, g);
            auto e = act_integral(scaled->second, sg, g);
            KElement k(RingElement(t.ring, scaled->first, 0));
            return SigmaForm(sg, KElement(e[0]) / k, KElement(e[1]) / k, KElement(e[2]) / k,
                             KElement(e[3]) / k);
        }();
        if (!(Xn.det() == det0)) rep.det_preserved = false;
        // direct evaluation of the diagonal entries, in a different
        // association order than the matrix product
        auto tw = [&](const RingElement& x) {
            return sg == Sigma::conjugation ? x.conj() : x;
        };
        if (scaled) {
            const auto& kX = scaled->second;
            RingElement An = tw(g.p_n) * (kX[0] * g.p_n) + tw(g.p_n) * (kX[1] * g.q_n) +
                             tw(g.q_n) * (kX[2] * g.p_n) + tw(g.q_n) * (kX[3] * g.q_n);
            RingElement Dn = tw(g.p_nm1) * (kX[0] * g.p_nm1) + tw(g.p_nm1) * (kX[1] * g.q_nm1) +
                             tw(g.q_nm1) * (kX[2] * g.p_nm1) + tw(g.q_nm1) * (kX[3] * g.q_nm1);
            KElement k(RingElement(t.ring, scaled->first, 0));
            if (!(Xn.A() == KElement(An) / k && Xn.D() == KElement(Dn) / k))
                rep.diag_identity = false;
        } else {
            KElement An = eval_form(X, KElement(g.p_n), KElement(g.q_n));
            KElement Dn = eval_form(X, KElement(g.p_nm1), KElement(g.q_nm1));
            if (!(Xn.A() == An && Xn.D() == Dn)) rep.diag_identity = false;
        }
        for (const KElement* e : {&Xn.A(), &Xn.B(), &Xn.C(), &Xn.D()}) {
            double ub = kelem_abs_upper(*e);
            rep.max_entry_abs = std::max(rep.max_entry_abs, ub);
        }
        if (seen.insert(Xn).second) {
            rep.orbit.push_back(Xn);
            rep.stabilized_at = n;
        }
    }
    rep.bounded_by_constant = rep.max_entry_abs <= rep.entry_bound;
    rep.pass = rep.det_preserved && rep.diag_identity && rep.bounded_by_constant;
    return rep;
}

// Lemma: f(z,1) = 0 iff f_n(z_{n+1},1) = 0, exactly.
inline bool zero_correspondence(const ExpansionTrace& t, const SigmaForm& X, long n) {
    if (!t.exact()) fail(errc::unsupported, "zero_correspondence needs an exact trace");
    if (n < 0 || n >= t.size()) fail(errc::invalid_argument, "step out of range");
    QuadraticSurd z0{t.steps[0].z->u, t.steps[0].z->v, *t.disc};
    KTheta znext_kt = (n + 1 < t.size()) ? t.steps[n + 1].z.value() : iterate_after(t, n);
    QuadraticSurd znext{znext_kt.u, znext_kt.v, *t.disc};
    SigmaForm Xn = act(X, GMatrix::at(t, n));
    return form_vanishes_at(X, z0) == form_vanishes_at(Xn, znext);
}

// ---------------------------------------------------------------------------
// Hermitian root loci
// ---------------------------------------------------------------------------

struct HermitianLocus {
    enum class Kind { circle, line, empty, point } kind;
    KElement center;  // circle/point
    Rat radius2 = 0;  // circle
    KElement line_normal; // line: Re(conj(n) z) = line_offset
    Rat line_offset = 0;

    std::string str() const {
        switch (kind) {
        case Kind::circle:
            return "circle |z - (" + center.str() + ")|^2 = " + to_string(radius2);
        case Kind::point: return "point " + center.str();
        case Kind::line:
            return "line Re(conj(" + line_normal.str() + ") z) = " + to_string(line_offset);
        case Kind::empty: return "empty";
        }
        return "?";
    }
};

// roots of P(z) = a z conj(z) + b conj(z) + conj(b) z + c, a, c real
inline HermitianLocus hermitian_roots(const RingElement& a, const RingElement& b,
                                      const RingElement& c) {
    if (a.im_coeff() != 0 || c.im_coeff() != 0)
        fail(errc::invalid_argument, "hermitian polynomial needs real a, c");
    RingId rg = a.ring();
    HermitianLocus out{HermitianLocus::Kind::empty, KElement::zero(rg), Rat(0),
                       KElement::zero(rg), Rat(0)};
    Rat ar = a.re(), cr = c.re();
    if (ar != 0) {
        // |z + b/a|^2 = (|b|^2 - a c)/a^2
        Rat disc = (Rat(b.norm()) - ar * cr) / (ar * ar);
        out.center = -(KElement(b) / KElement(rg, ar));
        if (disc > 0) {
            out.kind = HermitianLocus::Kind::circle;
            out.radius2 = disc;
        } else if (disc == 0) {
            out.kind = HermitianLocus::Kind::point;
        } else {
            out.kind = HermitianLocus::Kind::empty;
        }
        return out;
    }
    if (!b.is_zero()) {
        // b conj(z) + conj(b) z + c = 0 <=> 2 Re(conj(conj(b)) z)... i.e.
        // 2 Re(b conj z) = -c <=> Re(conj(conj(b)) z): write n = conj(b):
        // b conj(z) + conj(b) z = 2 Re(conj(b) z)
        out.kind = HermitianLocus::Kind::line;
        out.line_normal = KElement(b.conj());
        out.line_offset = -cr / 2;
        return out;
    }
    // a = 0, b = 0: constant c
    out.kind = (cr == 0) ? HermitianLocus::Kind::line : HermitianLocus::Kind::empty;
    if (cr == 0) {
        // identically zero: whole plane; represent as a degenerate line flag
        out.line_normal = KElement::zero(rg);
    }
    return out;
}

// ---------------------------------------------------------------------------
// explicit partial-quotient bound from the orbit (Hermitian route)
// ---------------------------------------------------------------------------

struct QuotientBoundReport {
    bool root_hit = false; // branch (i): some convergent lies on the locus
    long root_index = -1;
    double bound = 0.0;        // bound on sup |a_n|
    double observed_sup = 0.0; // observed sup |a_n| (upper bound)
    bool observed_within = true;
    long orbit_size = 0;
    std::string note;
};

inline QuotientBoundReport quotient_bound_from_orbit(const ExpansionTrace& t, const RingElement& a,
                                                     const RingElement& b, const RingElement& c) {
    // monotonicity precondition
    for (long n = 0; n + 1 < t.size(); ++n)
        if (!(t.steps[n].q.norm() <= t.steps[n + 1].q.norm()))
            fail(errc::monotonicity_required, "|q_n| must be nondecreasing");
    QuotientBoundReport rep;
    RingId rg = a.ring();
    SigmaForm X = SigmaForm::symmetric(Sigma::conjugation, KElement(a), KElement(b), KElement(c));
    // branch (i): P(p_n/q_n) = 0 <=> f(p_n, q_n) = 0, an exact Gamma statement
    for (long n = 0; n < t.size(); ++n) {
        RingElement pn = t.steps[n].p, qn = t.steps[n].q;
        RingElement val = a * (pn * pn.conj()) + b * (pn.conj() * qn) +
                          b.conj() * (pn * qn.conj()) + c * (qn * qn.conj());
        if (val.is_zero()) {
            rep.root_hit = true;
            rep.root_index = n;
            return rep;
        }
    }
    // orbit circles bound |z_{n+1}| on the neat part; lambda = 2 covers the rest
    const double lambda = 2.0;
    std::set<SigmaForm> seen;
    double circle_sup = 0.0;
    auto scaled = integral_scale(X);
    for (long n = 0; n < t.size(); ++n) {
        GMatrix g = GMatrix::at(t, n);
        SigmaForm Xn = [&]() {
            if (!scaled) return act(X, g);
            auto e = act_integral(scaled->second, X.sigma(), g);
            KElement k(RingElement(t.ring, scaled->first, 0));
            return SigmaForm(X.sigma(), KElement(e[0]) / k, KElement(e[1]) / k,
                             KElement(e[2]) / k, KElement(e[3]) / k);
        }();
        if (!seen.insert(Xn).second) continue;
        Rat Ar;
        if (!Xn.A().is_rational(&Ar) || Ar == 0) continue;
        // roots of phi_n: circle with center -B_n/A_n, radius^2 (|B_n|^2 - A_n D_n)/A_n^2
        KElement center = -(Xn.B() / Xn.A());
        Rat Dr;
        Xn.D().is_rational(&Dr);
        Rat r2 = (Xn.B().norm_rat() - Ar * Dr) / (Ar * Ar);
        if (r2 < 0) continue;
        double cu = kelem_abs_upper(center);
        double ru = std::sqrt(r2.convert_to<double>()) * (1 + 1e-12);
        circle_sup = std::max(circle_sup, cu + ru);
    }
    rep.orbit_size = static_cast<long>(seen.size());
    rep.bound = std::max(lambda, circle_sup) + 2.0;
    for (long n = 0; n < t.size(); ++n) {
        double au = std::sqrt(t.steps[n].a.norm().convert_to<double>()) * (1 + 1e-12);
        rep.observed_sup = std::max(rep.observed_sup, au);
    }
    rep.observed_within = rep.observed_sup <= rep.bound;
    return rep;
}

} // namespace ccf
