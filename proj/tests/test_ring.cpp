#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ccf/ball.hpp"

using namespace ccf;

static const RingId kAllRings[] = {RingId::G, RingId::E, RingId::Z2, RingId::Z7, RingId::Z11};

TEST_CASE("norm values") {
    CHECK(RingElement(RingId::G, 1, 1).norm() == 2);  // 1+i
    CHECK(RingElement(RingId::E, 2, 1).norm() == 3);  // 2+omega
    CHECK(RingElement(RingId::G, 0, 0).norm() == 0);
    CHECK(RingElement(RingId::Z2, 0, 1).norm() == 2);
    CHECK(RingElement(RingId::Z7, 0, 1).norm() == 2);
    CHECK(RingElement(RingId::Z11, 0, 1).norm() == 3);
}

TEST_CASE("norm is multiplicative") {
    std::mt19937_64 rng(42);
    for (RingId r : kAllRings) {
        for (int k = 0; k < 10000; ++k) {
            RingElement x{r, Int(static_cast<long>(rng() % 41) - 20),
                          Int(static_cast<long>(rng() % 41) - 20)};
            RingElement y{r, Int(static_cast<long>(rng() % 41) - 20),
                          Int(static_cast<long>(rng() % 41) - 20)};
            REQUIRE((x * y).norm() == x.norm() * y.norm());
        }
    }
}

TEST_CASE("nu(Gamma) recomputed by enumeration") {
    for (RingId r : kAllRings) {
        Int best(-1);
        for (const auto& g : elements_in_disc_exact(r, Rat(0), Rat(0), Rat(3))) {
            Int n = g.norm();
            if (n > 1 && (best < 0 || n < best)) best = n;
        }
        CHECK(best == ring_data(r).nu2);
    }
}

TEST_CASE("euclidean covering of a fundamental cell") {
    // every point of the basis cell is within distance < 1 of a corner
    for (RingId r : kAllRings) {
        const auto& rd = ring_data(r);
        for (int i = 0; i <= 20; ++i) {
            for (int j = 0; j <= 20; ++j) {
                Rat s(i, 20), t(j, 20);
                // point s + t g; squared distance to corner (a, b)
                auto d2 = [&](int a, int b) {
                    Rat ds = s - a, dt = t - b;
                    // |ds + dt g|^2 = ds^2 + tr ds dt + nm dt^2
                    return ds * ds + Rat(rd.tr) * ds * dt + Rat(rd.nm) * dt * dt;
                };
                Rat best = d2(0, 0);
                for (auto [a, b] : {std::pair{0, 1}, {1, 0}, {1, 1}})
                    best = std::min(best, d2(a, b));
                REQUIRE(best < 1);
            }
        }
    }
}

TEST_CASE("elements_in_disc examples") {
    auto g0 = elements_in_disc_exact(RingId::G, Rat(0), Rat(0), Rat(1));
    CHECK(g0.size() == 5); // 0, +-1, +-i
    auto g1 = elements_in_disc_exact(RingId::G, Rat(0), Rat(0), Rat(2));
    CHECK(g1.size() == 9); // plus +-1 +- i
    auto e0 = elements_in_disc_exact(RingId::E, Rat(0), Rat(0), Rat(1));
    CHECK(e0.size() == 7); // 0 and the six units
}

TEST_CASE("elements_in_disc with a ball center") {
    BallComplex c = BallComplex::from_exact(ring_zero(RingId::G), 96);
    auto pts = elements_in_disc(RingId::G, c, Rat(1));
    CHECK(pts.size() == 5);
    // a dyadic-center boundary is decided exactly: |0 - 1/2| = |1 - 1/2| = r
    BallComplex half = BallComplex::from_exact(
        KElement(ring_one(RingId::G), RingElement(RingId::G, 2, 0)), 96);
    CHECK(elements_in_disc(RingId::G, half, Rat(1, 4)).size() == 2);
    // a non-dyadic center with a lattice point exactly on the circle straddles
    BallComplex third = BallComplex::from_exact(
        KElement(ring_one(RingId::G), RingElement(RingId::G, 3, 0)), 96);
    CHECK_THROWS_MATCHES(elements_in_disc(RingId::G, third, Rat(1, 9)), error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("PrecisionExhausted")));
}

TEST_CASE("even gaussian predicate") {
    CHECK(is_even_gaussian(RingElement(RingId::G, 1, 1)));
    CHECK(is_even_gaussian(RingElement(RingId::G, 0, 2)));
    CHECK_FALSE(is_even_gaussian(RingElement(RingId::G, 1, 0)));
    CHECK_THROWS_AS(is_even_gaussian(RingElement(RingId::E, 1, 1)), error);
}

TEST_CASE("symmetry group") {
    RingElement z{RingId::G, 1, 1}; // 1+i
    CHECK(apply_symmetry(sym_y, z) == RingElement(RingId::G, -1, 1));
    CHECK(apply_symmetry(sym_identity, z) == z);
    CHECK(apply_symmetry(sym_y, apply_symmetry(sym_y, z)) == z);
    // Klein four group: composing any two gives the third or identity
    for (const auto& a : all_symmetries())
        for (const auto& b : all_symmetries()) {
            SymmetryElement c = a.compose(b);
            CHECK((c.negate == (a.negate != b.negate)));
            CHECK((c.conjugate == (a.conjugate != b.conjugate)));
        }
}

TEST_CASE("symmetries stabilize the ring") {
    for (RingId r : {RingId::G, RingId::E}) {
        for (const auto& g : elements_in_disc_exact(r, Rat(0), Rat(0), Rat(100))) {
            for (const auto& s : all_symmetries()) {
                RingElement im = apply_symmetry(s, g);
                REQUIRE(im.norm() == g.norm()); // in particular stays in Gamma
            }
        }
    }
}

TEST_CASE("euclidean division and gcd") {
    std::mt19937_64 rng(7);
    for (RingId r : kAllRings) {
        for (int k = 0; k < 2000; ++k) {
            RingElement x{r, Int(static_cast<long>(rng() % 81) - 40),
                          Int(static_cast<long>(rng() % 81) - 40)};
            RingElement y{r, Int(static_cast<long>(rng() % 21) - 10),
                          Int(static_cast<long>(rng() % 21) - 10)};
            if (y.is_zero()) continue;
            auto [q, rem] = divmod(x, y);
            REQUIRE(x == q * y + rem);
            REQUIRE(rem.norm() < y.norm());
            RingElement g = gcd(x, y);
            if (!g.is_zero()) {
                CHECK(divmod(x, g).second.is_zero());
                CHECK(divmod(y, g).second.is_zero());
            }
        }
    }
}

TEST_CASE("canonical associate is unique") {
    std::mt19937_64 rng(11);
    for (RingId r : kAllRings) {
        for (int k = 0; k < 500; ++k) {
            RingElement x{r, Int(static_cast<long>(rng() % 21) - 10),
                          Int(static_cast<long>(rng() % 21) - 10)};
            if (x.is_zero()) continue;
            RingElement c = canonical_associate(x);
            int hits = 0;
            for (const auto& u : units_of(r))
                if (canonical_associate(u * x) == c) ++hits;
            REQUIRE(hits == static_cast<int>(units_of(r).size()));
        }
    }
}
