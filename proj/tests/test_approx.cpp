#include <catch2/catch_amalgamated.hpp>

#include "ccf/approx.hpp"
#include "ccf/corpus.hpp"

using namespace ccf;

namespace {

RingElement g_int(long a, long b = 0) { return RingElement(RingId::G, a, b); }

QuadraticSurd isqrt2() { return surd_from_poly(g_int(1), g_int(0), g_int(2)); }

} // namespace

TEST_CASE("oracle table for i sqrt2 up to norm 4") {
    auto table = best_approx_oracle(isqrt2(), Int(4));
    REQUIRE(!table.rows.empty());
    // global minimum is 3 - 2 sqrt2 at (p, q) = (3, -2i) and unit associates
    QReal best = table.rows[0].dist2;
    const OracleRow* argmin = &table.rows[0];
    for (const auto& row : table.rows) {
        if ((row.dist2 - best).sign() < 0) {
            best = row.dist2;
            argmin = &row;
        }
    }
    // |3 - 2 sqrt2|^2 = 17 - 12 sqrt2
    QReal shifted = best.add_rat(-17);
    CHECK((shifted * shifted).cmp_rat(288) == 0); // (12 sqrt2)^2
    CHECK(argmin->q.norm() == 4);
    CHECK(argmin->p.norm() == 9);
    // row q = 1: best p = i with distance sqrt2 - 1
    for (const auto& row : table.rows) {
        if (row.q == g_int(1)) {
            CHECK(row.p == g_int(0, 1));
            QReal s = row.dist2.add_rat(-3); // -2 sqrt2
            CHECK((s * s).cmp_rat(8) == 0);
            CHECK(s.sign() < 0);
        }
    }
    // unit invariance: distances agree across associate rows
    for (const auto& row : table.rows) {
        for (const auto& u : units_of(RingId::G)) {
            RingElement uq = u * row.q;
            for (const auto& other : table.rows)
                if (other.q == uq) CHECK((other.dist2 - row.dist2).sign() == 0);
        }
    }
}

TEST_CASE("oracle consistency with convergents") {
    auto alg = AlgorithmSpec::make(RingId::G, AlgKind::hurwitz_nearest);
    auto t = run(isqrt2(), alg, 6);
    auto table = best_approx_oracle(isqrt2(), Int(30));
    for (long n = 0; n < 3; ++n) {
        const auto& st = t.steps[n];
        bool found = false;
        for (const auto& row : table.rows) {
            if (row.q == st.q) {
                found = true;
                CHECK(row.p == st.p);
                // |q_n z - p_n|^2 * |q_n|^2 = |delta_n|^2
                QReal lhs = row.dist2.scale(Rat(st.q.norm()));
                QReal rhs = QReal::abs2(*st.delta_n, *t.disc);
                CHECK((lhs - rhs).sign() == 0);
            }
        }
        REQUIRE(found);
    }
}

TEST_CASE("best approximation inequality on golden steps") {
    auto alg = AlgorithmSpec::make(RingId::G, AlgKind::hurwitz_nearest);
    auto t = run(isqrt2(), alg, 10);
    for (long n : {1L, 2L}) {
        auto rep = verify_app_pr(t, n);
        INFO("n = " << n);
        CHECK(rep.pass);
        CHECK(rep.q_count > 0);
        CHECK(rep.min_margin > -1e-9);
    }
}

TEST_CASE("badly approximable prefix assessment") {
    auto alg = AlgorithmSpec::make(RingId::G, AlgKind::hurwitz_nearest);
    auto t = run(isqrt2(), alg, 60);
    auto rep = badly_approximable_assess(t);
    CHECK(rep.verdict == BadApproxReport::Verdict::consistent_with_bad);
    CHECK(rep.hyp_inf_z);
    CHECK(rep.hyp_delta);
    CHECK(rep.delta_hat == Rat(1, 5)); // sup|a| = 2 sqrt2, ceil = 3, 1/(3+2)
    CHECK(rep.prefix_inequality);
    // withheld when a hypothesis fails: inject a small |z_n|
    ExpansionTrace bad = t;
    bad.steps[3].z = KTheta{KElement(RingId::G, Rat(1, 2)), KElement(RingId::G, Rat(1, 100))};
    auto rep2 = badly_approximable_assess(bad);
    CHECK(rep2.verdict == BadApproxReport::Verdict::inconclusive);
    // synthetic huge-quotient sequence is flagged by the bound monitor
    auto ext = run_external({g_int(0), g_int(2), g_int(0, 40), g_int(-1600)});
    CHECK_FALSE(quotients_bounded_by(ext, Int(100)));
}

TEST_CASE("norm representability") {
    CHECK(is_norm(5, RingId::G).is_norm);
    CHECK(is_norm(5, RingId::G).witness.value() == g_int(2, 1));
    CHECK_FALSE(is_norm(3, RingId::G).is_norm);
    auto e3 = is_norm(3, RingId::E);
    CHECK(e3.is_norm);
    CHECK(e3.witness.value().norm() == 3);
    for (RingId r : {RingId::G, RingId::E, RingId::Z2, RingId::Z7, RingId::Z11})
        CHECK_FALSE(is_norm(1847, r).is_norm);
    CHECK(is_norm(2, RingId::Z7).is_norm); // (1 + i sqrt7)/2 has norm 2
    CHECK_FALSE(is_norm(2, RingId::Z11).is_norm);
    CHECK_THROWS_AS(is_norm(0, RingId::G), error);
}

TEST_CASE("is_norm agrees with exhaustive search") {
    for (RingId r : {RingId::G, RingId::E}) {
        for (long n = 1; n <= 10000; ++n) {
            bool local = is_norm(n, r).is_norm;
            bool search = norm_witness_search(Int(n), r).has_value();
            if (local != search) {
                INFO("ring " << ring_data(r).name << " n = " << n);
                REQUIRE(local == search);
            }
        }
    }
    SUCCEED();
}

TEST_CASE("circle certification") {
    CHECK(certify_bad_circle(KElement::zero(RingId::G), Rat(3), RingId::G).certified_bad);
    CHECK(certify_bad_circle(KElement::zero(RingId::G), Rat(7), RingId::G).certified_bad);
    auto c = certify_bad_circle(KElement::zero(RingId::G), Rat(5, 2), RingId::G);
    CHECK_FALSE(c.certified_bad);
    REQUIRE(c.k_point);
    CHECK(c.k_point->norm_rat() == Rat(5, 2));
    // verdict is center independent
    KElement kappa(RingElement(RingId::G, 3, -2), RingElement(RingId::G, 1, 2));
    auto c2 = certify_bad_circle(kappa, Rat(5, 2), RingId::G);
    CHECK(c2.certified_bad == c.certified_bad);
    REQUIRE(c2.k_point);
    CHECK((*c2.k_point - kappa).norm_rat() == Rat(5, 2));
    auto c3 = certify_bad_circle(kappa, Rat(3), RingId::G);
    CHECK(c3.certified_bad);
    for (RingId r : {RingId::G, RingId::E, RingId::Z2, RingId::Z7, RingId::Z11})
        CHECK(certify_bad_circle(KElement::zero(r), Rat(1847), r).certified_bad);
    CHECK_THROWS_AS(certify_bad_circle(KElement::zero(RingId::G), Rat(0), RingId::G), error);
}

TEST_CASE("factorization budget") {
    // product of two primes just above the trial-division limit squared
    Int big = Int("10000000019") * Int("10000000033");
    CHECK_THROWS_MATCHES(factorize(big * big), error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("FactorizationBudget")));
    // a single large prime below the squared limit is recognized
    auto f = factorize(Int("10000000019"));
    REQUIRE(f.primes.size() == 1);
    CHECK(f.primes[0].second == 1);
}
