#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <sstream>
#include <vector>

#include "ccf/algorithm.hpp"

namespace ccf {

struct ExpansionStep {
    long n = 0;
    RingElement a;
    RingElement p, q; // p_n, q_n
    // exact backend
    std::optional<KTheta> z;       // z_n over the trace discriminant
    std::optional<KTheta> delta_n; // q_n (q_n z - p_n)
    // ball backend
    std::optional<BallComplex> z_ball, delta_ball;
    std::optional<KElement> ratio; // r_n = q_n / q_{n-1}, n >= 1 and q_{n-1} != 0
};

enum class Termination { budget_reached, period_found, precision_exhausted, external_sequence };

inline const char* termination_name(Termination t) {
    switch (t) {
    case Termination::budget_reached: return "budget_reached";
    case Termination::period_found: return "period_found";
    case Termination::precision_exhausted: return "precision_exhausted";
    case Termination::external_sequence: return "external_sequence";
    }
    return "?";
}

struct ExpansionTrace {
    RingId ring = RingId::G;
    std::optional<AlgorithmSpec> alg;
    std::optional<RingElement> disc; // exact backend: discriminant of the surd states
    std::string input_desc;
    std::vector<ExpansionStep> steps;
    Termination termination = Termination::budget_reached;
    long period_start = -1;
    long period_len = 0;

    bool exact() const { return disc.has_value(); }
    long size() const { return static_cast<long>(steps.size()); }
};

// ---------------------------------------------------------------------------
// run: exact surd backend (with period detection), ball backend, external
// ---------------------------------------------------------------------------

inline ExpansionTrace run(const QuadraticSurd& z0, const AlgorithmSpec& alg, long budget) {
    ExpansionTrace t;
    t.ring = z0.ring();
    t.alg = alg;
    t.disc = z0.delta();
    t.input_desc = z0.str();
    RingElement p_prev = ring_one(t.ring), q_prev = ring_zero(t.ring); // index -1
    RingElement p_cur, q_cur;
    QuadraticSurd z = z0;
    // z = (X + Y theta)/W with integral entries; delta_n is assembled from
    // these without per-step reduction
    RingElement X = z0.x().num() * z0.y().den();
    RingElement Y = z0.y().num() * z0.x().den();
    RingElement W = z0.x().den() * z0.y().den();
    // visited exact states with the (deterministic) choice, its verified
    // contract, and the successor state
    struct Visit {
        long n;
        RingElement a;
        KTheta next;
    };
    std::map<KTheta, Visit> seen;
    for (long n = 0; n < budget; ++n) {
        RingElement a;
        KTheta next;
        auto it = seen.find(z.kt());
        if (it != seen.end()) {
            if (t.period_start < 0) {
                t.period_start = it->second.n;
                t.period_len = n - it->second.n;
                t.termination = Termination::period_found;
            }
            a = it->second.a;
            next = it->second.next;
        } else {
            a = choose(alg, z);
            QReal d2 = z.abs2_minus(a);
            if (!(d2.sign() > 0 && d2.cmp_rat(1) < 0))
                fail(errc::invalid_argument,
                     "algorithm contract 0 < |z_n - a_n| < 1 violated at step " +
                         std::to_string(n));
            next = z.step(a).kt();
            seen.emplace(z.kt(), Visit{n, a, next});
        }
        ExpansionStep st;
        st.n = n;
        st.a = a;
        st.z = z.kt();
        if (n == 0) {
            p_cur = a;
            q_cur = ring_one(t.ring);
        } else {
            RingElement p_new = a * p_cur + p_prev;
            RingElement q_new = a * q_cur + q_prev;
            p_prev = p_cur;
            q_prev = q_cur;
            p_cur = p_new;
            q_cur = q_new;
        }
        st.p = p_cur;
        st.q = q_cur;
        // delta_n = q_n (q_n z - p_n) = (q (qX - pW) + q^2 Y theta)/W
        st.delta_n = KTheta{KElement::from_raw(q_cur * (q_cur * X - p_cur * W), W),
                            KElement::from_raw(q_cur * (q_cur * Y), W)};
        if (n >= 1 && !q_prev.is_zero()) st.ratio = KElement::from_coprime(q_cur, q_prev);
        t.steps.push_back(std::move(st));
        z = QuadraticSurd(next.u, next.v, z0.delta());
    }
    return t;
}

inline ExpansionTrace run_ball(const BallComplex& z0, const AlgorithmSpec& alg, long budget) {
    ExpansionTrace t;
    t.ring = alg.ring;
    t.alg = alg;
    t.input_desc = z0.str();
    mpfr_prec_t p = z0.prec();
    RingElement p_prev = ring_one(t.ring), q_prev = ring_zero(t.ring);
    RingElement p_cur, q_cur;
    BallComplex z = z0;
    for (long n = 0; n < budget; ++n) {
        auto a_opt = choose_ball(alg, z);
        if (!a_opt) {
            t.termination = Termination::precision_exhausted;
            return t;
        }
        RingElement a = *a_opt;
        BallComplex za = z.sub(BallComplex::from_exact(a, p));
        RealInterval d2 = za.abs2_interval();
        if (!(d2.lo().sgn() > 0 && d2.hi().cmp_rat(Rat(1)) < 0)) {
            t.termination = Termination::precision_exhausted;
            return t;
        }
        ExpansionStep st;
        st.n = n;
        st.a = a;
        st.z_ball = z;
        if (n == 0) {
            p_cur = a;
            q_cur = ring_one(t.ring);
        } else {
            RingElement p_new = a * p_cur + p_prev;
            RingElement q_new = a * q_cur + q_prev;
            p_prev = p_cur;
            q_prev = q_cur;
            p_cur = p_new;
            q_cur = q_new;
        }
        st.p = p_cur;
        st.q = q_cur;
        BallComplex qb = BallComplex::from_exact(q_cur, p);
        st.delta_ball = qb.mul(qb.mul(z0).sub(BallComplex::from_exact(p_cur, p)));
        if (n >= 1 && !q_prev.is_zero()) st.ratio = KElement::from_coprime(q_cur, q_prev);
        t.steps.push_back(std::move(st));
        z = za.inv();
    }
    t.termination = Termination::budget_reached;
    return t;
}

// Q-pair of an arbitrary partial-quotient sequence (no z); q_n = 0 is legal.
inline ExpansionTrace run_external(const std::vector<RingElement>& seq) {
    if (seq.empty()) fail(errc::invalid_argument, "empty external sequence");
    ExpansionTrace t;
    t.ring = seq[0].ring();
    t.termination = Termination::external_sequence;
    t.input_desc = "external";
    RingElement p_prev = ring_one(t.ring), q_prev = ring_zero(t.ring);
    RingElement p_cur, q_cur;
    for (size_t n = 0; n < seq.size(); ++n) {
        if (n >= 1 && seq[n].is_zero())
            fail(errc::invalid_argument, "external sequence with a_n = 0, n >= 1");
        ExpansionStep st;
        st.n = static_cast<long>(n);
        st.a = seq[n];
        if (n == 0) {
            p_cur = seq[0];
            q_cur = ring_one(t.ring);
        } else {
            RingElement p_new = seq[n] * p_cur + p_prev;
            RingElement q_new = seq[n] * q_cur + q_prev;
            p_prev = p_cur;
            q_prev = q_cur;
            p_cur = p_new;
            q_cur = q_new;
        }
        st.p = p_cur;
        st.q = q_cur;
        if (n >= 1 && !q_prev.is_zero()) st.ratio = KElement::from_coprime(q_cur, q_prev);
        t.steps.push_back(std::move(st));
    }
    return t;
}

// ---------------------------------------------------------------------------
// identity suite
// ---------------------------------------------------------------------------

struct IdentityReport {
    bool pass = true;
    long steps_checked = 0;
    std::string first_failure;
    bool q_growth_trend = true;

    void record_failure(long n, const std::string& what) {
        if (pass) first_failure = "step " + std::to_string(n) + ": " + what;
        pass = false;
    }
};

// the exact iterate z_{n+1} for step n (recomputed from the stored state)
inline KTheta iterate_after(const ExpansionTrace& t, long n) {
    const ExpansionStep& st = t.steps[n];
    QuadraticSurd z{st.z->u, st.z->v, *t.disc};
    return z.step(st.a).kt();
}

// |delta_n| enclosure via the exact identity |delta_n| = |z_{n+1} +
// q_{n-1}/q_n|^{-1}; numerically stable for any step (the direct expression
// cancels catastrophically once |q_n| grows)
inline RealInterval delta_abs_interval(const ExpansionTrace& t, long n, mpfr_prec_t p = 96) {
    if (!t.exact()) {
        Real up = t.steps[n].delta_ball->abs_up();
        Real down = t.steps[n].delta_ball->abs_down();
        return {down, up};
    }
    KTheta znext = (n + 1 < t.size()) ? t.steps[n + 1].z.value() : iterate_after(t, n);
    KElement ratio = (n == 0) ? KElement::zero(t.ring)
                              : KElement::from_coprime(t.steps[n - 1].q, t.steps[n].q);
    CInterval s = kt_enclose(znext, *t.disc, p).add(cinterval_of(ratio, p), p);
    return s.abs2(p).recip(p).sqrt(p);
}

inline IdentityReport verify_identities(const ExpansionTrace& t) {
    IdentityReport rep;
    if (t.steps.empty()) return rep;
    RingId rg = t.ring;
    if (t.exact()) {
        const RingElement& D = *t.disc;
        KTheta z0 = t.steps[0].z.value();
        // common-denominator integral forms: z_n = (A_n + B_n theta)/C_n with
        // small ring entries, z = (X + Y theta)/W; every identity below is an
        // exact integral statement after clearing denominators
        auto triple = [](const KTheta& v) {
            RingElement A = v.u.num() * v.v.den();
            RingElement B = v.v.num() * v.u.den();
            RingElement C = v.u.den() * v.v.den();
            return std::array<RingElement, 3>{A, B, C};
        };
        auto [X, Y, W] = triple(z0);
        RingElement Vu_prev = -W, Vv_prev = ring_zero(rg); // V_{-1} = -1, over W
        KTheta Wprod{KElement::one(rg), KElement::zero(rg)}; // z_1 ... z_{n+1}
        for (long n = 0; n < t.size(); ++n) {
            const ExpansionStep& st = t.steps[n];
            KTheta znext = (n + 1 < t.size()) ? t.steps[n + 1].z.value() : iterate_after(t, n);
            auto [A1, B1, C1] = triple(znext);
            const RingElement& pn = st.p;
            const RingElement& qn = st.q;
            RingElement pm = (n == 0) ? ring_one(rg) : t.steps[n - 1].p;
            RingElement qm = (n == 0) ? ring_zero(rg) : t.steps[n - 1].q;
            // determinant p_n q_{n-1} - p_{n-1} q_n = (-1)^{n+1}
            RingElement det = pn * qm - pm * qn;
            RingElement want = (n % 2 == 0) ? -ring_one(rg) : ring_one(rg);
            if (!(det == want)) rep.record_failure(n, "determinant");
            if (qn.is_zero()) rep.record_failure(n, "q_n = 0");
            // V_n = q_n z - p_n over W
            RingElement Vu = qn * X - pn * W, Vv = qn * Y;
            // (i) q_n z - p_n = (-1)^n (z_1...z_{n+1})^{-1}, in the telescoped
            // form V_n z_{n+1} = -V_{n-1} (base V_{-1} = -1 gives
            // (z - a_0) z_1 = 1); the direct product form is also checked
            // while the entries are small
            bool i_ok = (Vu * A1 + Vv * B1 * D == -(Vu_prev * C1)) &&
                        (Vu * B1 + Vv * A1 == -(Vv_prev * C1));
            if (!i_ok) rep.record_failure(n, "identity (i)");
            if (n < 24) {
                Wprod = kt_mul(Wprod, znext, D);
                KTheta V{KElement(Vu, W), KElement(Vv, W)};
                KTheta prod = kt_mul(V, Wprod, D);
                KTheta one{KElement(rg, Rat((n % 2 == 0) ? 1 : -1)), KElement::zero(rg)};
                if (!(prod == one)) rep.record_failure(n, "identity (i) product form");
            }
            // U_n = q_n z_{n+1} + q_{n-1} over C1
            RingElement Uu = A1 * qn + C1 * qm, Uv = B1 * qn;
            // (ii) U_n z = z_{n+1} p_n + p_{n-1}: cleared by W C1
            RingElement Ru = A1 * pn + C1 * pm, Rv = B1 * pn;
            bool ii_ok = (Uu * X + Uv * Y * D == W * Ru) && (Uu * Y + Uv * X == W * Rv);
            if (!ii_ok) rep.record_failure(n, "identity (ii)");
            // (iii) |q_n z - p_n| |q_n z_{n+1} + q_{n-1}| = 1, via the exact
            // product V_n U_n = (-1)^n, cleared by W C1
            RingElement wc = W * C1;
            if (n % 2 == 0) wc = -wc;
            bool iii_ok = (Vu * Uu + Vv * Uv * D == -wc) && (Vu * Uv + Vv * Uu).is_zero();
            if (!iii_ok) rep.record_failure(n, "identity (iii)");
            Vu_prev = Vu;
            Vv_prev = Vv;
            ++rep.steps_checked;
        }
    } else {
        // ball backend: determinant and q_n exact; (i)-(iii) as enclosure
        // consistency (the two sides must intersect)
        mpfr_prec_t p = t.steps[0].z_ball->prec();
        BallComplex z0 = *t.steps[0].z_ball;
        BallComplex W = BallComplex::from_exact(ring_one(rg), p);
        for (long n = 0; n < t.size(); ++n) {
            const ExpansionStep& st = t.steps[n];
            RingElement pm = (n == 0) ? ring_one(rg) : t.steps[n - 1].p;
            RingElement qm = (n == 0) ? ring_zero(rg) : t.steps[n - 1].q;
            RingElement det = st.p * qm - pm * st.q;
            RingElement want = (n % 2 == 0) ? -ring_one(rg) : ring_one(rg);
            if (!(det == want)) rep.record_failure(n, "determinant");
            if (st.q.is_zero()) rep.record_failure(n, "q_n = 0");
            BallComplex znext = (n + 1 < t.size())
                                    ? *t.steps[n + 1].z_ball
                                    : st.z_ball->sub(BallComplex::from_exact(st.a, p)).inv();
            W = W.mul(znext);
            BallComplex lhs = BallComplex::from_exact(st.q, p).mul(z0).sub(
                BallComplex::from_exact(st.p, p));
            BallComplex prod = lhs.mul(W);
            // must contain (-1)^n
            KElement target = KElement(rg, Rat((n % 2 == 0) ? 1 : -1));
            if (!prod.contains_exact(target)) rep.record_failure(n, "identity (i) enclosure");
            ++rep.steps_checked;
        }
    }
    // |q_n| -> infinity trend on the recorded prefix
    if (t.size() > 20) {
        Int early(0), late;
        for (long n = 0; n < 5; ++n) early = std::max(early, t.steps[n].q.norm());
        late = t.steps[t.size() - 1].q.norm();
        for (long n = t.size() - 5; n < t.size(); ++n)
            late = std::min(late, t.steps[n].q.norm());
        rep.q_growth_trend = late > early;
        if (!rep.q_growth_trend) rep.record_failure(t.size() - 1, "|q_n| growth trend");
    }
    return rep;
}

// ---------------------------------------------------------------------------
// neat subsets
// ---------------------------------------------------------------------------

struct NeatReport {
    std::vector<long> indices;
    bool all_of_prefix = false;
    // sup |delta_n| over N as a rigorous upper bound
    double sup_delta_upper = 0.0;
    long sup_delta_index = -1;
    bool bound_alpha_ok = true;     // |delta_n| <= (alpha-1)^{-1} on N
    bool prop_bound_i_ok = true;    // |delta_n| <= (|z_{n+1}|-1)^{-1}
    bool prop_bound_ii_ok = true;   // |delta_{n-1}| <= |delta_n| + 1
    bool flag_monotone_q = true;
    bool flag_liminf_z = true;      // |z_{n+1}| > 1 at every recorded step
    bool flag_uniform_contraction = false;
    std::string note;
};

// |delta| * (|z|-1) <= 1 given |z| > 1, via squares: with s = |delta|^2,
// t = |z|^2: s*t - s - 1 <= 2|delta|  <=>  LHS <= 0 or LHS^2 <= 4 s
inline bool delta_z_bound_holds(const QReal& s, const QReal& t) {
    QReal lhs = s * t - s - QReal::of_rat(Rat(1), s.delta());
    if (lhs.sign() <= 0) return true;
    return (lhs * lhs - s.scale(Rat(4))).sign() <= 0;
}

inline NeatReport neat_subset(const ExpansionTrace& t, const Rat& alpha) {
    if (!t.exact()) fail(errc::unsupported, "neat_subset needs an exact trace");
    if (!(alpha > 1)) fail(errc::parameter_out_of_range, "alpha must exceed 1");
    NeatReport rep;
    const RingElement& D = *t.disc;
    Rat alpha2 = alpha * alpha;
    std::vector<QReal> abs_delta2;
    std::vector<QReal> abs_znext2;
    for (long n = 0; n < t.size(); ++n) {
        abs_delta2.push_back(QReal::abs2(*t.steps[n].delta_n, D));
        KTheta znext = (n + 1 < t.size()) ? t.steps[n + 1].z.value() : iterate_after(t, n);
        abs_znext2.push_back(QReal::abs2(znext, D));
    }
    for (long n = 0; n < t.size(); ++n) {
        Int qprev = (n == 0) ? Int(0) : t.steps[n - 1].q.norm();
        bool qmono = qprev <= t.steps[n].q.norm();
        if (!qmono) rep.flag_monotone_q = false;
        bool zbig = abs_znext2[n].cmp_rat(alpha2) > 0;
        if (qmono && zbig) rep.indices.push_back(n);
    }
    rep.all_of_prefix = rep.indices.size() == static_cast<size_t>(t.size());
    // liminf flag: every |z_{n+1}| > 1 on the prefix
    for (long n = 0; n < t.size(); ++n)
        if (abs_znext2[n].cmp_rat(1) <= 0) rep.flag_liminf_z = false;
    if (t.alg) {
        AlgKind k = t.alg->kind;
        rep.flag_uniform_contraction =
            k == AlgKind::hurwitz_nearest || k == AlgKind::eisenstein_nearest ||
            k == AlgKind::eisenstein_chi || k == AlgKind::perturbed_hurwitz;
    }
    Rat ainv = Rat(1) / ((alpha - 1) * (alpha - 1));
    for (long n : rep.indices) {
        double ub = delta_abs_interval(t, n).hi().to_double();
        if (ub > rep.sup_delta_upper) {
            rep.sup_delta_upper = ub;
            rep.sup_delta_index = n;
        }
        if (abs_delta2[n].cmp_rat(ainv) > 0) rep.bound_alpha_ok = false;
        if (n >= 1) {
            if (!delta_z_bound_holds(abs_delta2[n], abs_znext2[n])) rep.prop_bound_i_ok = false;
            // |delta_{n-1}| <= |delta_n| + 1: s_{n-1} - s_n - 1 <= 2|delta_n|
            QReal lhs = abs_delta2[n - 1] - abs_delta2[n] - QReal::of_rat(Rat(1), D);
            bool ok = lhs.sign() <= 0 || (lhs * lhs - abs_delta2[n].scale(Rat(4))).sign() <= 0;
            if (!ok) rep.prop_bound_ii_ok = false;
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// monotonicity of |q_n| with the violation diagnostics
// ---------------------------------------------------------------------------

enum class MonotoneVerdict { strict, nonstrict_violation, strict_violation };

struct MonotoneReport {
    MonotoneVerdict verdict = MonotoneVerdict::strict;
    long m = -1; // first index with |q_{m+1}| <= |q_m|
    // exact disc-membership diagnostics of the violation branch
    bool diagnostics_apply = false; // |a_n| > 1 for 1 <= n <= m+1
    std::optional<KElement> r_m;
    std::optional<RingElement> a_m, a_m1;
    bool a_m1_small = false;        // |a_{m+1}| < 2
    bool r_in_closed_ball = false;  // r_m in closed B(-conj(a)/( |a|^2-1 ), 1/(|a|^2-1))
    bool a_in_open_ball = false;    // a_m in open B(center, |a|^2/(|a|^2-1))
    bool a_on_ball_boundary = false;
    // triple lemma on (r_{m-1}, r_m, r_{m+1}), m >= 2
    bool triple_evaluated = false;
    bool triple_hypotheses = false;
    bool triple_conclusions = false;
    std::string note;
};

inline MonotoneReport check_monotone(const ExpansionTrace& t) {
    MonotoneReport rep;
    long m = -1;
    bool equal = false;
    for (long n = 0; n + 1 < t.size(); ++n) {
        Int a = t.steps[n].q.norm(), b = t.steps[n + 1].q.norm();
        if (b <= a) {
            m = n;
            equal = (b == a);
            break;
        }
    }
    if (m < 0) return rep;
    rep.verdict = equal ? MonotoneVerdict::nonstrict_violation : MonotoneVerdict::strict_violation;
    rep.m = m;
    rep.a_m = t.steps[m].a;
    if (m + 1 < t.size()) rep.a_m1 = t.steps[m + 1].a;
    if (m >= 1) rep.r_m = t.steps[m].ratio;
    rep.diagnostics_apply = true;
    for (long n = 1; n <= m + 1 && n < t.size(); ++n)
        if (t.steps[n].a.norm() <= 1) rep.diagnostics_apply = false;
    if (!rep.diagnostics_apply || !rep.a_m1) {
        rep.note = "diagnostics withheld (|a_n| > 1 precondition fails or truncated trace)";
        return rep;
    }
    const RingElement& am1 = *rep.a_m1;
    Int n2 = am1.norm();
    rep.a_m1_small = n2 < 4;
    if (rep.a_m1_small && n2 > 1) {
        RingId rg = t.ring;
        Rat denom(n2 - 1);
        KElement center = -(KElement(am1.conj()) / KElement(rg, denom));
        if (m >= 1 && t.steps[m].ratio) {
            KElement rm = *t.steps[m].ratio;
            Rat rad = Rat(1) / denom;
            rep.r_in_closed_ball = (rm - center).norm_rat() <= rad * rad;
        } else if (m == 0) {
            // r_0 = q_0/q_{-1} undefined; the m = 0 case cannot occur for
            // genuine expansions (|q_1| = |a_1| > 1 = |q_0|)
            rep.note = "m = 0: no ratio diagnostics";
        }
        Rat rad2 = Rat(n2) / denom;
        Rat d2 = (KElement(t.steps[m].a) - center).norm_rat();
        rep.a_in_open_ball = d2 < rad2 * rad2;
        rep.a_on_ball_boundary = d2 == rad2 * rad2;
    }
    // triple lemma witnesses
    if (m >= 2 && t.steps[m - 1].ratio && t.steps[m].ratio && m + 1 < t.size() &&
        t.steps[m + 1].ratio) {
        rep.triple_evaluated = true;
        KElement g0 = *t.steps[m - 1].ratio, g1 = *t.steps[m].ratio, g2 = *t.steps[m + 1].ratio;
        KElement al1 = g1 - g0.inv();
        KElement al2 = g2 - g1.inv();
        RingElement al1r, al2r;
        bool integral = al1.is_integral(&al1r) && al2.is_integral(&al2r);
        rep.triple_hypotheses = integral && g0.norm_rat() > 1 && g1.norm_rat() > 1 &&
                                !g2.is_zero() && g2.norm_rat() <= 1 && al2.norm_rat() > 1;
        if (rep.triple_hypotheses) {
            Rat n22 = al2.norm_rat();
            Rat denom = n22 - 1;
            KElement center = -(al2.conj() / KElement(t.ring, denom));
            bool c1 = n22 < 4;
            bool c2 = (g1 - center).norm_rat() <= Rat(1) / (denom * denom);
            bool c3 = (al1 - center).norm_rat() < (n22 * n22) / (denom * denom);
            rep.triple_conclusions = c1 && c2 && c3;
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Condition (H) on Gaussian partial-quotient sequences
// ---------------------------------------------------------------------------

struct ConditionHReport {
    bool holds = true;
    long k = -1, l = -1;
    std::string reason;
};

inline ConditionHReport check_condition_H(const std::vector<RingElement>& seq) {
    ConditionHReport rep;
    if (!seq.empty() && seq[0].ring() != RingId::G)
        fail(errc::wrong_ring, "Condition (H) is defined over the Gaussian integers");
    for (size_t n = 1; n < seq.size(); ++n) {
        if (seq[n].norm() <= 1) {
            rep.holds = false;
            rep.l = static_cast<long>(n);
            rep.reason = "|a_n| <= 1 at n = " + std::to_string(n);
            return rep;
        }
    }
    for (size_t l = 1; l < seq.size(); ++l) {
        if (seq[l].norm() != 2) continue;
        // walk the matched middle run a_{l-s} = 2 sigma_y^s(a_l)
        size_t s = 1;
        while (l >= s + 1 && seq[l - s] == sigma_y_pow(seq[l], s) * Int(2)) ++s;
        if (l < s + 1) continue; // run reached the start; all quantified k hold
        size_t k = l - s;
        if (k < 1) continue;
        RingElement target = sigma_y_pow(seq[l], static_cast<long>(s));
        // first alternative a_k = 2 target is false by run maximality
        if ((seq[k] - target).norm() < 4) {
            rep.holds = false;
            rep.k = static_cast<long>(k);
            rep.l = static_cast<long>(l);
            rep.reason = "block anchored at l with |a_k - sigma_y^{l-k}(a_l)| < 2";
            return rep;
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// theta_n of the best-approximation bound
// ---------------------------------------------------------------------------

// Empirical measurement of inf |z_n| (n >= 1) against the two candidate
// constants 1 + sqrt(3) and 1 + 1/sqrt(3) for the Eisenstein algorithms.
struct InfZReport {
    double inf_z_lower = 1e300;   // rigorous lower bound of the observed inf
    long argmin = -1;
    bool above_1_plus_sqrt3 = true;      // inf |z_n| > 1 + sqrt(3)
    bool above_1_plus_inv_sqrt3 = true;  // inf |z_n| > 1 + 1/sqrt(3)
};

inline InfZReport measure_inf_z(const ExpansionTrace& t) {
    if (!t.exact()) fail(errc::unsupported, "measure_inf_z needs an exact trace");
    InfZReport rep;
    // (1 + sqrt3)^2 = 4 + 2 sqrt3, (1 + 1/sqrt3)^2 = (4 + 2 sqrt3)/3
    QuadVal big{Rat(4), Rat(2), Int(3)};
    QuadVal small{Rat(4, 3), Rat(2, 3), Int(3)};
    for (long n = 1; n < t.size(); ++n) {
        QReal z2 = QReal::abs2(*t.steps[n].z, *t.disc);
        for (mpfr_prec_t p = 96; p <= 2048; p *= 2) {
            RealInterval zi = z2.enclose(p);
            RealInterval d_big = zi.sub(big.enclose(p), p);
            RealInterval d_small = zi.sub(small.enclose(p), p);
            auto sb = d_big.known_sign();
            auto ss = d_small.known_sign();
            if (sb && ss) {
                if (*sb <= 0) rep.above_1_plus_sqrt3 = false;
                if (*ss <= 0) rep.above_1_plus_inv_sqrt3 = false;
                break;
            }
            if (p == 2048) {
                rep.above_1_plus_sqrt3 = false; // undecided: report conservatively
            }
        }
        double lo = z2.enclose(96).sqrt(96).lo().to_double();
        if (lo < rep.inf_z_lower) {
            rep.inf_z_lower = lo;
            rep.argmin = n;
        }
    }
    return rep;
}

struct ThetaResult {
    int branch; // 0: |delta_n|/nu, 1: |z_{n+1}|^{-1} (either on exact tie)
    RealInterval value;
    QReal delta2;  // |delta_n|^2
    QReal znext2;  // |z_{n+1}|^2
};

inline ThetaResult compute_theta(const ExpansionTrace& t, long n) {
    if (!t.exact()) fail(errc::unsupported, "compute_theta needs an exact trace");
    if (n < 0 || n >= t.size()) fail(errc::invalid_argument, "step out of range");
    const RingElement& D = *t.disc;
    Rat nu2(ring_data(t.ring).nu2);
    QReal s = QReal::abs2(*t.steps[n].delta_n, D);
    if (s.cmp_rat(nu2) >= 0)
        fail(errc::hypothesis_failed, "|delta_n| >= nu(Gamma)");
    KTheta znext = (n + 1 < t.size()) ? t.steps[n + 1].z.value() : iterate_after(t, n);
    QReal tt = QReal::abs2(znext, D);
    // branch: |delta| |z| vs nu  <=>  s*t vs nu^2
    int c = (s * tt).cmp_rat(nu2);
    ThetaResult res{c >= 0 ? 0 : 1, RealInterval(), s, tt};
    mpfr_prec_t p = 128;
    if (res.branch == 0) {
        RealInterval sd = s.enclose(p).sqrt(p);
        res.value = sd.mul(RealInterval::sqrt_rat(nu2, p).recip(p), p);
    } else {
        res.value = tt.enclose(p).sqrt(p).recip(p);
    }
    return res;
}

} // namespace ccf
