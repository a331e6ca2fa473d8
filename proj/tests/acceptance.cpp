// Acceptance suite: runs every gate criterion and prints one line per
// criterion. Exit status is nonzero when any criterion fails.

#include <chrono>
#include <iomanip>
#include <iostream>
#include <random>
#include <vector>

#include "ccf/checks.hpp"
#include "ccf/corpus.hpp"
#include "ccf/io.hpp"

using namespace ccf;
using Clock = std::chrono::steady_clock;

namespace {

struct Gate {
    int id;
    std::string title;
    bool pass = true;
    double seconds = 0;
    std::string detail;
};

std::vector<Gate> gates;

double elapsed(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

RingElement g_int(long a, long b = 0) { return RingElement(RingId::G, a, b); }

QuadraticSurd isqrt2() { return surd_from_poly(g_int(1), g_int(0), g_int(2)); }

void report(Gate g) {
    std::cout << (g.pass ? "[PASS] " : "[FAIL] ") << "criterion " << g.id << ": " << g.title
              << "  (" << std::fixed << std::setprecision(2) << g.seconds << "s)"
              << (g.detail.empty() ? "" : "  -- " + g.detail) << "\n"
              << std::flush;
    gates.push_back(std::move(g));
}

// ---------------------------------------------------------------------------

void criterion_1_golden_traces() {
    Gate g{1, "golden traces of i*sqrt(2) under hurwitz and even-gaussian"};
    auto t0 = Clock::now();
    try {
        auto hurwitz = AlgorithmSpec::make(RingId::G, AlgKind::hurwitz_nearest);
        auto even = AlgorithmSpec::make(RingId::G, AlgKind::even_gaussian);
        auto th = run(isqrt2(), hurwitz, 10);
        auto te = run(isqrt2(), even, 10);
        std::vector<RingElement> ah = {g_int(0, 1), g_int(0, -2), g_int(0, 2), g_int(0, -2)};
        std::vector<Int> qh = {Int(1), Int(4), Int(25), Int(144), Int(841)};
        std::vector<RingElement> ae = {g_int(0, 2), g_int(0, 2), g_int(0, 4), g_int(0, 2)};
        std::vector<Int> qe = {Int(1), Int(4), Int(49), Int(144), Int(1681)};
        for (size_t i = 0; i < ah.size(); ++i) g.pass &= th.steps[i].a == ah[i];
        for (size_t i = 0; i < qh.size(); ++i) g.pass &= th.steps[i].q.norm() == qh[i];
        for (size_t i = 0; i < ae.size(); ++i) g.pass &= te.steps[i].a == ae[i];
        for (size_t i = 0; i < qe.size(); ++i) g.pass &= te.steps[i].q.norm() == qe[i];
        g.pass &= th.period_start == 1 && th.period_len == 2;
        g.pass &= te.period_start == 1 && te.period_len == 2;
        g.seconds = elapsed(t0);
        g.pass &= g.seconds < 1.0;
        g.detail = "q-norm sequences exact (oracle-frozen); periods (1,2)";
    } catch (const std::exception& e) {
        g.pass = false;
        g.detail = e.what();
        g.seconds = elapsed(t0);
    }
    report(g);
}

// criteria 2-6 share one pass over the seeded corpus
void criteria_2_to_6_corpus() {
    Gate g2{2, "expansion identities (i)-(iii) + determinant, 600 traces x 500 steps"};
    Gate g3{3, "periodicity reached within the step budget on every trace"};
    Gate g4{4, "strict |q| growth for even/lambda/chi; Condition (H) on even traces"};
    Gate g5{5, "form orbits finite, stabilized, entries within the computable bound"};
    Gate g6{6, "zero correspondence exact at every step of 20 traces"};
    double t_ident = 0, t_orbit = 0, t_other = 0;
    long ident_steps = 0, orbit_count = 0, zc_traces = 0;
    long period_max = 0;
    long h_even_fail = 0, h_even_total = 0;
    std::string h_first;
    bool mono_ok = true;
    try {
        const uint64_t seed = 2026;
        std::vector<AlgorithmSpec> galgs = {
            AlgorithmSpec::make(RingId::G, AlgKind::hurwitz_nearest),
            AlgorithmSpec::make(RingId::G, AlgKind::even_gaussian),
            AlgorithmSpec::make(RingId::G, AlgKind::lambda_gaussian),
            AlgorithmSpec::make(RingId::G, AlgKind::perturbed_hurwitz, Rat(3, 20))};
        std::vector<AlgorithmSpec> ealgs = {
            AlgorithmSpec::make(RingId::E, AlgKind::eisenstein_nearest),
            AlgorithmSpec::make(RingId::E, AlgKind::eisenstein_chi, Rat(5, 4))};
        for (RingId ring : {RingId::G, RingId::E}) {
            auto corpus = surd_corpus(ring, 100, seed);
            const auto& algs = ring == RingId::G ? galgs : ealgs;
            for (const auto& alg : algs) {
                for (size_t zi = 0; zi < corpus.size(); ++zi) {
                    const auto& z = corpus[zi];
                    auto t0 = Clock::now();
                    ExpansionTrace t = run(z, alg, 500);
                    auto rep = verify_identities(t);
                    t_ident += elapsed(t0);
                    ident_steps += rep.steps_checked;
                    if (!rep.pass) {
                        g2.pass = false;
                        if (g2.detail.empty())
                            g2.detail = alg.str() + " " + z.str() + ": " + rep.first_failure;
                    }
                    // criterion 3: periodicity
                    auto t1 = Clock::now();
                    if (t.period_start < 0) {
                        g3.pass = false;
                        if (g3.detail.empty())
                            g3.detail = "no period within 500: " + alg.str() + " " + z.str();
                    } else {
                        period_max = std::max(period_max, t.period_start + t.period_len);
                    }
                    // criterion 4: monotonicity + condition H
                    if (alg.kind == AlgKind::even_gaussian ||
                        alg.kind == AlgKind::lambda_gaussian ||
                        alg.kind == AlgKind::eisenstein_chi) {
                        auto mono = check_monotone(t);
                        if (mono.verdict != MonotoneVerdict::strict) {
                            g4.pass = false;
                            mono_ok = false;
                            if (g4.detail.empty())
                                g4.detail = "|q| violation at " + std::to_string(mono.m) + " " +
                                            alg.str() + " " + z.str();
                        }
                    }
                    if (alg.kind == AlgKind::even_gaussian) {
                        std::vector<RingElement> as;
                        for (const auto& st : t.steps) as.push_back(st.a);
                        auto h = check_condition_H(as);
                        ++h_even_total;
                        if (!h.holds) {
                            g4.pass = false;
                            ++h_even_fail;
                            if (h_first.empty())
                                h_first = "first witness (k,l)=(" + std::to_string(h.k) + "," +
                                          std::to_string(h.l) + ") on " + z.str();
                        }
                    }
                    t_other += elapsed(t1);
                    // criterion 5: orbit of the defining form
                    auto t2 = Clock::now();
                    SurdPoly mp = surd_minimal_poly(z);
                    KElement half(ring_one(ring), RingElement(ring, 2, 0));
                    SigmaForm X = SigmaForm::symmetric(Sigma::identity, KElement(mp.a),
                                                       KElement(mp.b) * half, KElement(mp.c));
                    auto orb = orbit_along(t, X);
                    ++orbit_count;
                    if (!orb.pass || orb.stabilized_at >= t.size() - 1) {
                        g5.pass = false;
                        if (g5.detail.empty())
                            g5.detail = alg.str() + " " + z.str() + ": orbit " +
                                        std::to_string(orb.orbit.size()) + " stab@" +
                                        std::to_string(orb.stabilized_at) +
                                        (orb.bounded_by_constant ? "" : " bound exceeded");
                    }
                    t_orbit += elapsed(t2);
                    // criterion 6: zero correspondence on the first 20 G traces
                    if (ring == RingId::G && alg.kind == AlgKind::hurwitz_nearest && zi < 20) {
                        auto t3 = Clock::now();
                        ++zc_traces;
                        for (long n = 0; n < t.size(); ++n) {
                            if (!zero_correspondence(t, X, n)) {
                                g6.pass = false;
                                if (g6.detail.empty())
                                    g6.detail = z.str() + " step " + std::to_string(n);
                                break;
                            }
                        }
                        t_other += elapsed(t3);
                    }
                }
            }
        }
    } catch (const std::exception& e) {
        g2.pass = g3.pass = g4.pass = g5.pass = g6.pass = false;
        g2.detail = e.what();
    }
    g2.seconds = t_ident;
    g2.pass &= t_ident < 60.0;
    if (g2.detail.empty())
        g2.detail = std::to_string(ident_steps) + " steps checked, zero violations";
    g3.seconds = 0;
    if (g3.detail.empty())
        g3.detail = "longest preperiod+period " + std::to_string(period_max);
    if (g4.detail.empty() || (mono_ok && h_even_fail > 0)) {
        g4.detail = "monotonicity clause: zero violations; Condition (H) clause: " +
                    std::to_string(h_even_fail) + "/" + std::to_string(h_even_total) +
                    " even traces violate (H)";
        if (h_even_fail > 0)
            g4.detail +=
                " (" + h_first +
                "; the even algorithm admits quotient pairs the condition forbids, while |q| "
                "still grows strictly -- see the notes ledger)";
    }
    g5.seconds = t_orbit;
    if (g5.detail.empty()) g5.detail = std::to_string(orbit_count) + " orbits";
    g6.seconds = t_other;
    if (g6.detail.empty()) g6.detail = std::to_string(zc_traces) + " traces";
    report(g2);
    report(g3);
    report(g4);
    report(g5);
    report(g6);
}

void criterion_7_best_approx() {
    Gate g{7, "best-approximation inequality by brute-force annulus enumeration"};
    auto t0 = Clock::now();
    try {
        long surds_used = 0, checks = 0;
        double worst_margin = 1e300;
        for (RingId ring : {RingId::G, RingId::E}) {
            auto alg = ring == RingId::G
                           ? AlgorithmSpec::make(RingId::G, AlgKind::hurwitz_nearest)
                           : AlgorithmSpec::make(RingId::E, AlgKind::eisenstein_nearest);
            auto corpus = surd_corpus(ring, 300, 4321, 8);
            long used = 0;
            for (const auto& z : corpus) {
                if (used >= 10) break;
                ExpansionTrace t = run(z, alg, 8);
                if (t.size() < 7 || t.steps[6].q.norm() > 30000) continue;
                ++used;
                ++surds_used;
                for (long n = 0; n <= 6 && n < t.size(); ++n) {
                    try {
                        auto rep = verify_app_pr(t, n);
                        ++checks;
                        if (!rep.pass) {
                            g.pass = false;
                            if (g.detail.empty())
                                g.detail = z.str() + " n=" + std::to_string(n) + " " + rep.witness;
                        }
                        worst_margin = std::min(worst_margin, rep.min_margin);
                    } catch (const error& e) {
                        if (e.code() != errc::hypothesis_failed) throw;
                    }
                }
            }
        }
        g.pass &= surds_used == 20;
        g.seconds = elapsed(t0);
        g.pass &= g.seconds < 120.0;
        if (g.detail.empty())
            g.detail = std::to_string(checks) + " (surd, n) pairs, min margin >= " +
                       std::to_string(worst_margin);
    } catch (const std::exception& e) {
        g.pass = false;
        g.detail = e.what();
        g.seconds = elapsed(t0);
    }
    report(g);
}

BallComplex circle_point_sqrt3(int k, mpfr_prec_t prec) {
    // sqrt(3) * exp(i * phi_k), phi_k spread around the circle
    Real phi(prec), s(prec), c(prec), r3(prec);
    mpfr_const_pi(phi.get(), MPFR_RNDN);
    mpfr_mul_si(phi.get(), phi.get(), 2 * k + 1, MPFR_RNDN);
    mpfr_div_ui(phi.get(), phi.get(), 23, MPFR_RNDN);
    mpfr_sin_cos(s.get(), c.get(), phi.get(), MPFR_RNDN);
    mpfr_sqrt_ui(r3.get(), 3, MPFR_RNDN);
    Real re(prec), im(prec), rad(64);
    mpfr_mul(re.get(), r3.get(), c.get(), MPFR_RNDN);
    mpfr_mul(im.get(), r3.get(), s.get(), MPFR_RNDN);
    mpfr_set_ui_2exp(rad.get(), 1, 8 - static_cast<long>(prec), MPFR_RNDU);
    return BallComplex(re, im, rad, prec);
}

void criterion_8_bad_circles() {
    Gate g{8, "badly approximable circles certified; circle points have bounded quotients"};
    auto t0 = Clock::now();
    try {
        for (long r2 : {3L, 7L, 1847L}) {
            auto c = certify_bad_circle(KElement::zero(RingId::G), Rat(r2), RingId::G);
            g.pass &= c.certified_bad;
        }
        g.pass &= certify_bad_circle(KElement::zero(RingId::E), Rat(1847), RingId::E).certified_bad;
        auto c52 = certify_bad_circle(KElement::zero(RingId::G), Rat(5, 2), RingId::G);
        g.pass &= !c52.certified_bad && c52.k_point.has_value() &&
                  c52.k_point->norm_rat() == Rat(5, 2);
        // cross check: points on |z|^2 = 3 expanded 200 steps, quotients within
        // the bound computed from the orbit of [[1,0],[0,-3]]
        auto alg = AlgorithmSpec::make(RingId::G, AlgKind::hurwitz_nearest);
        long finished = 0;
        double worst_gap = 1e300;
        for (int k = 0; k < 10; ++k) {
            ExpansionTrace t;
            bool ok = false;
            for (mpfr_prec_t prec : {1024, 2048, 4096}) {
                t = run_ball(circle_point_sqrt3(k, prec), alg, 200);
                if (t.termination == Termination::budget_reached && t.size() == 200) {
                    ok = true;
                    break;
                }
            }
            if (!ok) {
                g.pass = false;
                if (g.detail.empty()) g.detail = "ball expansion stalled at point " + std::to_string(k);
                continue;
            }
            ++finished;
            auto rep = quotient_bound_from_orbit(t, g_int(1), g_int(0), g_int(-3));
            g.pass &= !rep.root_hit && rep.observed_within;
            worst_gap = std::min(worst_gap, rep.bound - rep.observed_sup);
        }
        g.pass &= finished == 10;
        g.seconds = elapsed(t0);
        g.pass &= g.seconds < 30.0;
        if (g.detail.empty())
            g.detail = "10 circle points, 200 steps each; bound slack >= " +
                       std::to_string(worst_gap);
    } catch (const std::exception& e) {
        g.pass = false;
        g.detail = e.what();
        g.seconds = elapsed(t0);
    }
    report(g);
}

void criterion_9_geometry() {
    Gate g{9, "disc inversion, diamond inverse identity, corner-condition checker"};
    auto t0 = Clock::now();
    try {
        // (a) 10^4 random discs with |c| > r; reciprocal membership at 10 points each
        std::mt19937_64 rng(555);
        auto rnd = [&](long s, long d) {
            return Rat(static_cast<long>(rng() % (2 * s * d + 1)) - s * d, d);
        };
        long discs = 0, decided = 0, mismatches = 0;
        while (discs < 10000) {
            Rat cx = rnd(4, 53), cy = rnd(4, 59);
            Rat r2 = Rat(1 + static_cast<long>(rng() % 400), 100);
            if (cx * cx + cy * cy <= r2) continue;
            ++discs;
            auto inv = invert_disc(k_gauss(cx, cy), QuadVal::of(r2), false);
            RegionPtr inv_region = Region::disc(inv.center, inv.r2, inv.closed);
            if (inv.is_complement)
                inv_region = Region::complement(Region::disc(inv.center, inv.r2, !inv.closed));
            RegionPtr orig = Region::disc_rat(k_gauss(cx, cy), r2, false);
            for (int j = 0; j < 10; ++j) {
                Rat wx = rnd(5, 61), wy = rnd(5, 67);
                if (wx == 0 && wy == 0) continue;
                KPoint w = KPoint::of(k_gauss(wx, wy));
                MemResult a = member(inv_region, w);
                MemResult b = member(orig, KPoint::of(w.z.inv()));
                if (a.boundary || b.boundary) continue;
                ++decided;
                if (a.m != b.m) ++mismatches;
            }
        }
        g.pass &= mismatches == 0 && decided > 90000;
        // (b) diamond inverse identity at 10^4 sample points
        RegionPtr Hinv = Region::inverse(diamond_H());
        std::vector<RegionPtr> parts;
        for (const auto& s : all_symmetries())
            parts.push_back(Region::complement(
                Region::disc_rat(apply_symmetry(s, k_gauss(Rat(1, 2), Rat(1, 2))), Rat(1, 2), false)));
        RegionPtr four = Region::intersect(parts);
        long hch = 0, hmis = 0;
        for (int k = 0; k < 10000; ++k) {
            Rat wx = rnd(3, 71), wy = rnd(3, 73);
            if (wx == 0 && wy == 0) continue;
            KPoint w = KPoint::of(k_gauss(wx, wy));
            MemResult a = member(Hinv, w);
            MemResult b = member(four, w);
            if (a.boundary || b.boundary) continue;
            ++hch;
            if (a.m != b.m) ++hmis;
        }
        g.pass &= hmis == 0 && hch > 9000;
        // (c) corner-condition checker: pass, pass, fail-with-witness
        auto rep_h = verify_geom_hurwitz({AlgKind::hurwitz_nearest, Rat(0), 48}, region_Qh());
        auto rep_p15 =
            verify_geom_hurwitz({AlgKind::perturbed_hurwitz, Rat(3, 20), 48}, region_Qr(Rat(3, 20)));
        auto rep_p35 =
            verify_geom_hurwitz({AlgKind::perturbed_hurwitz, Rat(7, 20), 48}, region_Qr(Rat(7, 20)));
        g.pass &= rep_h.pass;
        g.pass &= rep_p15.pass;
        g.pass &= !rep_p35.pass && !rep_p35.witnesses.empty();
        g.seconds = elapsed(t0);
        g.detail = std::to_string(decided) + " reciprocal checks, " + std::to_string(hch) +
                   " diamond checks; r=0.35 witness " +
                   (rep_p35.witnesses.empty() ? "missing" : rep_p35.witnesses[0].condition);
    } catch (const std::exception& e) {
        g.pass = false;
        g.detail = e.what();
        g.seconds = elapsed(t0);
    }
    report(g);
}

void criterion_10_negative_controls() {
    Gate g{10, "negative controls: monotonicity violation diagnostics; reducible rejection"};
    auto t0 = Clock::now();
    try {
        auto t = run_external({g_int(0), g_int(1, 1), g_int(-1, 1)});
        auto rep = check_monotone(t);
        g.pass &= rep.verdict != MonotoneVerdict::strict && rep.m == 1;
        g.pass &= rep.diagnostics_apply && rep.a_m1_small;
        g.pass &= rep.r_in_closed_ball && rep.a_in_open_ball;
        bool threw = false;
        try {
            surd_from_poly(g_int(1), g_int(0), g_int(1));
        } catch (const error& e) {
            threw = e.code() == errc::reducible_polynomial;
        }
        g.pass &= threw;
        g.seconds = elapsed(t0);
        g.detail = "violation at m=1 with ball diagnostics; ReduciblePolynomial raised";
    } catch (const std::exception& e) {
        g.pass = false;
        g.detail = e.what();
        g.seconds = elapsed(t0);
    }
    report(g);
}

} // namespace

int main() {
    auto t0 = Clock::now();
    std::cout << "acceptance suite\n================\n";
    criterion_1_golden_traces();
    criteria_2_to_6_corpus();
    criterion_7_best_approx();
    criterion_8_bad_circles();
    criterion_9_geometry();
    criterion_10_negative_controls();
    bool all = true;
    for (const auto& g : gates) all &= g.pass;
    std::cout << "================\n"
              << (all ? "ALL CRITERIA PASS" : "CRITERIA FAILED") << "  (total "
              << std::fixed << std::setprecision(1) << elapsed(t0) << "s)\n";
    return all ? 0 : 1;
}
