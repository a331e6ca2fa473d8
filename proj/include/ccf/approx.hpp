#pragma once

#include <map>

#include "ccf/forms.hpp"

namespace ccf {

// ---------------------------------------------------------------------------
// brute-force best-approximation oracle
// ---------------------------------------------------------------------------

struct OracleRow {
    RingElement q;
    RingElement p;           // minimizing p
    RealInterval dist;       // |q z - p| enclosure
    QReal dist2;             // exact |q z - p|^2
};

struct OracleTable {
    std::vector<OracleRow> rows; // sorted by |q|^2, then lexicographically
};

// all q with 1 <= |q|^2 <= qmax_norm and, for each, the nearest p to q*z
inline OracleTable best_approx_oracle(const QuadraticSurd& z, const Int& qmax_norm,
                                      const Int& enumeration_limit = Int(2000000)) {
    RingId rg = z.ring();
    // rough area bound on the number of lattice points
    if (qmax_norm > enumeration_limit)
        fail(errc::enumeration_limit, "oracle enumeration beyond the configured limit");
    double R = std::sqrt(qmax_norm.convert_to<double>());
    CInterval org{RealInterval::point_int(0, 64), RealInterval::point_int(0, 64)};
    OracleTable table;
    for (const auto& q : lattice_candidates(rg, org, R + 0.1)) {
        Int n = q.norm();
        if (n < 1 || n > qmax_norm) continue;
        // nearest p to q*z
        KTheta qz = kt_scale(KElement(q), z.kt());
        CInterval qzi = kt_enclose(qz, z.delta(), 96);
        RingElement best_p = ring_zero(rg);
        bool have = false;
        QReal best_d2 = QReal::of_rat(Rat(0), z.delta());
        for (const auto& p : lattice_candidates(rg, qzi, 1.1)) {
            KTheta diff = kt_sub(qz, {KElement(p), KElement::zero(rg)});
            QReal d2 = QReal::abs2(diff, z.delta());
            if (!have || (d2 - best_d2).sign() < 0) {
                have = true;
                best_d2 = d2;
                best_p = p;
            }
        }
        if (!have) fail(errc::invalid_argument, "oracle: empty p candidates (bug)");
        OracleRow row{q, best_p, best_d2.enclose(96).sqrt(96), best_d2};
        table.rows.push_back(std::move(row));
    }
    std::sort(table.rows.begin(), table.rows.end(), [](const OracleRow& a, const OracleRow& b) {
        Int na = a.q.norm(), nb = b.q.norm();
        if (na != nb) return na < nb;
        return a.q < b.q;
    });
    return table;
}

// ---------------------------------------------------------------------------
// best-approximation inequality |q z - p| >= (1 - theta_n) |q_n z - p_n|
// ---------------------------------------------------------------------------

struct AppPrReport {
    bool pass = true;
    long n = -1;
    int theta_branch = -1;
    long q_count = 0;
    double min_margin = 1e300; // lower bound of |qz-p|/|q_n z - p_n| - (1 - theta)
    std::string witness;
};

// decide L >= G * (1 - theta)^2-style inequalities exactly; see compute_theta
// for the branch payloads. All quantities are QReal squares.
inline bool app_pr_holds(const QReal& L2, const QReal& G2, const ThetaResult& th, RingId ring) {
    Rat nu2(ring_data(ring).nu2);
    if (th.branch == 0) {
        // theta = |delta|/nu: nu^2 L - G (nu^2 + s) >= -2 G sqrt(s) nu
        QReal u = L2.scale(nu2) - G2 * (th.delta2.add_rat(nu2));
        if (u.sign() >= 0) return true;
        QReal rhs2 = G2 * G2 * th.delta2.scale(4 * nu2);
        return ((u * u) - rhs2).sign() <= 0;
    }
    // theta = 1/|z|: L t - G(t + 1) >= -2 G sqrt(t)
    QReal u = L2 * th.znext2 - G2 * (th.znext2.add_rat(Rat(1)));
    if (u.sign() >= 0) return true;
    QReal rhs2 = G2 * G2 * th.znext2.scale(Rat(4));
    return ((u * u) - rhs2).sign() <= 0;
}

inline AppPrReport verify_app_pr(const ExpansionTrace& t, long n,
                                 const Int& enumeration_limit = Int(2000000)) {
    if (!t.exact()) fail(errc::unsupported, "verify_app_pr needs an exact trace");
    if (n < 0 || n >= t.size()) fail(errc::invalid_argument, "step out of range");
    AppPrReport rep;
    rep.n = n;
    ThetaResult th = compute_theta(t, n); // throws HypothesisFailed if |delta_n| >= nu
    rep.theta_branch = th.branch;
    const RingElement& D = *t.disc;
    QuadraticSurd z0{t.steps[0].z->u, t.steps[0].z->v, D};
    RingId rg = t.ring;
    Int lo = (n == 0) ? Int(0) : t.steps[n - 1].q.norm();
    Int hi = t.steps[n].q.norm();
    if (hi > enumeration_limit)
        fail(errc::enumeration_limit, "annulus |q| <= |q_n| too large to enumerate");
    // G2 = |q_n z - p_n|^2
    KTheta gn = kt_sub(kt_scale(KElement(t.steps[n].q), z0.kt()),
                       {KElement(t.steps[n].p), KElement::zero(rg)});
    QReal G2 = QReal::abs2(gn, D);
    double R = std::sqrt(hi.convert_to<double>());
    CInterval org{RealInterval::point_int(0, 64), RealInterval::point_int(0, 64)};
    mpfr_prec_t P = 96;
    RealInterval g_int = G2.enclose(P).sqrt(P);
    // rigorous upper bound of the threshold (1 - theta_n) |q_n z - p_n|
    Real thr_up(64);
    {
        Real one = Real::from_int(1, 64, MPFR_RNDU);
        Real omt = r_sub(one, th.value.lo(), 64, MPFR_RNDU);
        mpfr_mul(thr_up.get(), omt.get(), g_int.hi().get(), MPFR_RNDU);
    }
    CInterval zi = kt_enclose(z0.kt(), D, P);
    for (const auto& q : lattice_candidates(rg, org, R + 0.1)) {
        Int nq = q.norm();
        if (nq <= lo || nq > hi) continue;
        // unit classes: |uq z - up| = |qz - p|, so one associate suffices
        if (!(canonical_associate(q) == q)) continue;
        CInterval qzi = cinterval_of(KElement(q), P).mul(zi, P);
        ++rep.q_count;
        // the inequality must hold for every p; enclosures settle all but the
        // genuinely close pairs, which are decided exactly
        for (const auto& p : lattice_candidates(rg, qzi, 1.1)) {
            CInterval diff = qzi.sub(cinterval_of(KElement(p), P), P);
            RealInterval dist = diff.abs2(P).sqrt(P);
            if (dist.lo().cmp(thr_up) >= 0) {
                double m = dist.lo().to_double() / std::max(1e-300, g_int.hi().to_double()) -
                           (1 - th.value.lo().to_double());
                rep.min_margin = std::min(rep.min_margin, m);
                continue;
            }
            KTheta qz = kt_scale(KElement(q), z0.kt());
            KTheta d = kt_sub(qz, {KElement(p), KElement::zero(rg)});
            QReal d2 = QReal::abs2(d, D);
            if (!app_pr_holds(d2, G2, th, rg)) {
                rep.pass = false;
                rep.witness = "q = " + q.str() + ", p = " + p.str();
                return rep;
            }
            RealInterval lhs = d2.enclose(P).sqrt(P);
            double ratio_lo = lhs.lo().to_double() / std::max(1e-300, g_int.hi().to_double());
            rep.min_margin = std::min(rep.min_margin, ratio_lo - (1 - th.value.lo().to_double()));
        }
    }
    if (rep.q_count == 0) rep.min_margin = 0;
    return rep;
}

// ---------------------------------------------------------------------------
// badly-approximable assessment on a prefix
// ---------------------------------------------------------------------------

struct BadApproxReport {
    enum class Verdict { consistent_with_bad, k_approach_witness, inconclusive } verdict =
        Verdict::inconclusive;
    bool hyp_inf_z = false;        // inf |z_n| > 1 on the prefix (n >= 1)
    bool hyp_delta = false;        // max |delta_n| < nu on the prefix
    double sup_a_abs = 0.0;        // observed sup |a_n| (upper bound)
    Rat delta_hat = Rat(0);        // certified prefix constant
    bool prefix_inequality = true; // |z - p_n/q_n| >= delta_hat / |q_n|^2 on the prefix
    std::string note;
};

inline BadApproxReport badly_approximable_assess(const ExpansionTrace& t) {
    if (!t.exact()) fail(errc::unsupported, "badly_approximable_assess needs an exact trace");
    for (long n = 0; n + 1 < t.size(); ++n)
        if (!(t.steps[n].q.norm() <= t.steps[n + 1].q.norm()))
            fail(errc::monotonicity_required, "|q_n| must be nondecreasing");
    BadApproxReport rep;
    const RingElement& D = *t.disc;
    Rat nu2(ring_data(t.ring).nu2);
    rep.hyp_inf_z = true;
    rep.hyp_delta = true;
    for (long n = 1; n < t.size(); ++n) {
        QReal z2 = QReal::abs2(*t.steps[n].z, D);
        if (z2.cmp_rat(1) <= 0) rep.hyp_inf_z = false;
    }
    Int max_a_norm(0);
    for (long n = 0; n < t.size(); ++n) {
        QReal d2 = QReal::abs2(*t.steps[n].delta_n, D);
        if (d2.cmp_rat(nu2) >= 0) rep.hyp_delta = false;
        max_a_norm = std::max(max_a_norm, t.steps[n].a.norm());
    }
    rep.sup_a_abs = std::sqrt(max_a_norm.convert_to<double>());
    if (!rep.hyp_inf_z || !rep.hyp_delta) {
        rep.note = "characterization hypotheses fail on the prefix; assessment withheld";
        return rep;
    }
    // delta' = 1/(sup|a_n| + 2): |z - p_n/q_n| = |q_n|^{-2} |z_{n+1} + q_{n-1}/q_n|^{-1}
    // and |z_{n+1} + q_{n-1}/q_n| <= |a_{n+1}| + 2
    // use a rational upper bound for sup |a| via ceil
    Int sup_ceil = isqrt(max_a_norm) + 1;
    rep.delta_hat = Rat(1) / (Rat(sup_ceil) + 2);
    QuadraticSurd z0{t.steps[0].z->u, t.steps[0].z->v, D};
    for (long n = 0; n < t.size(); ++n) {
        // |q_n|^2 |z - p_n/q_n| = |delta_n| / |q_n| ... check
        // |delta_n| >= delta_hat * |q_n| is wrong; the statement is
        // |z - p_n/q_n| >= delta_hat/|q_n|^2 <=> |delta_n| >= delta_hat
        QReal d2 = QReal::abs2(*t.steps[n].delta_n, D);
        if (d2.cmp_rat(rep.delta_hat * rep.delta_hat) < 0) rep.prefix_inequality = false;
    }
    rep.verdict = rep.prefix_inequality ? BadApproxReport::Verdict::consistent_with_bad
                                        : BadApproxReport::Verdict::inconclusive;
    return rep;
}

// unbounded-quotient report for external/synthetic sequences
inline bool quotients_bounded_by(const ExpansionTrace& t, const Int& norm_cap) {
    for (const auto& st : t.steps)
        if (st.a.norm() > norm_cap) return false;
    return true;
}

// ---------------------------------------------------------------------------
// norm representability and badly approximable circles
// ---------------------------------------------------------------------------

struct Factorization {
    std::vector<std::pair<Int, int>> primes; // (p, exponent)
};

inline Factorization factorize(Int n, const Int& trial_limit = Int(10000000)) {
    if (n <= 0) fail(errc::invalid_argument, "factorize needs n >= 1");
    Factorization f;
    for (Int p = 2; p * p <= n && p <= trial_limit; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            f.primes.emplace_back(p, e);
        }
    }
    if (n > 1) {
        // remainder has no factor <= trial_limit; prime iff below its square
        if (n > trial_limit * trial_limit)
            fail(errc::factorization_budget,
                 "unfactored part exceeds the trial-division budget");
        f.primes.emplace_back(n, 1);
    }
    return f;
}

// inert rational primes stay prime in the ring; a norm requires even exponents
inline bool prime_is_inert(const Int& p, RingId ring) {
    auto legendre = [](Int a, const Int& p) -> int {
        a %= p;
        if (a < 0) a += p;
        if (a == 0) return 0;
        Int r = boost::multiprecision::powm(a, (p - 1) / 2, p);
        return r == 1 ? 1 : -1;
    };
    switch (ring) {
    case RingId::G: return p % 4 == 3;
    case RingId::E: return p != 3 && p % 3 == 2;
    case RingId::Z2: {
        if (p == 2) return false; // ramified
        Int m = p % 8;
        return m == 5 || m == 7;
    }
    case RingId::Z7: {
        if (p == 7) return false;
        if (p == 2) return false; // 2 splits, norm((1+i sqrt7)/2) = 2
        return legendre(Int(-7), p) == -1;
    }
    case RingId::Z11: {
        if (p == 11) return false;
        if (p == 2) return true; // 2 is inert
        return legendre(Int(-11), p) == -1;
    }
    }
    return false;
}

struct NormWitness {
    bool is_norm = false;
    std::optional<RingElement> witness;
};

// lattice search for x with norm(x) = n (n modest)
inline std::optional<RingElement> norm_witness_search(const Int& n, RingId ring) {
    const auto& rd = ring_data(ring);
    // norm(a + b g) = a^2 + tr ab + nm b^2 = (a + tr b/2)^2 + (nm - tr^2/4) b^2
    Rat lead = Rat(rd.nm) - Rat(rd.tr * rd.tr, 4);
    Int bmax = isqrt(Int(ceil_rat(Rat(n) / lead))) + 1;
    for (Int b = 0; b <= bmax; ++b) {
        // a^2 + tr a b + (nm b^2 - n) = 0 => a = (-tr b +- sqrt(disc))/2
        Int disc = rd.tr * rd.tr * b * b - 4 * (rd.nm * b * b - n);
        Int root;
        if (disc < 0 || !is_square(disc, &root)) continue;
        for (int s : {1, -1}) {
            Int num = -rd.tr * b + s * root;
            if (num % 2 != 0) continue;
            RingElement x{ring, num / 2, b};
            if (x.norm() == n) return x;
        }
    }
    return std::nullopt;
}

inline NormWitness is_norm(const Int& n, RingId ring, const Int& trial_limit = Int(10000000),
                           const Int& search_limit = Int(100000000)) {
    if (n < 1) fail(errc::invalid_argument, "is_norm needs n >= 1");
    NormWitness out;
    Factorization f = factorize(n, trial_limit);
    for (const auto& [p, e] : f.primes) {
        if (prime_is_inert(p, ring) && e % 2 == 1) return out; // not a norm
    }
    out.is_norm = true;
    if (n <= search_limit) {
        out.witness = norm_witness_search(n, ring);
        if (!out.witness)
            fail(errc::invalid_argument, "local conditions hold but no witness found (bug)");
    }
    return out;
}

struct CircleCertificate {
    bool certified_bad = false;
    std::optional<KElement> k_point; // witness on the circle when not bad
    Int s = 0, t = 0;                // r^2 = s/t in lowest terms
    std::string note;
};

// C(center, r), r^2 = s/t in lowest terms: badly approximable everywhere iff
// NOT both s and t are norms of ring elements.
inline CircleCertificate certify_bad_circle(const KElement& center, const Rat& r2, RingId ring,
                                            const Int& trial_limit = Int(10000000)) {
    if (!(r2 > 0)) fail(errc::invalid_argument, "radius^2 must be positive");
    CircleCertificate out;
    out.s = num(r2);
    out.t = den(r2);
    NormWitness ws = is_norm(out.s, ring, trial_limit);
    if (!ws.is_norm) {
        out.certified_bad = true;
        return out;
    }
    NormWitness wt = is_norm(out.t, ring, trial_limit);
    if (!wt.is_norm) {
        out.certified_bad = true;
        return out;
    }
    if (!ws.witness || !wt.witness)
        fail(errc::factorization_budget, "norm witnesses unavailable at this size");
    KElement pt = KElement(*ws.witness) / KElement(*wt.witness);
    out.k_point = center + pt;
    // verify the witness lies on C(0, r) exactly
    if (pt.norm_rat() != r2) fail(errc::invalid_argument, "witness off the circle (bug)");
    return out;
}

} // namespace ccf
