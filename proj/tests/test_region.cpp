#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ccf/region.hpp"

using namespace ccf;

namespace {

KPoint gp(const Rat& x, const Rat& y) { return KPoint::of(k_gauss(x, y)); }

Rat rnd_rat(std::mt19937_64& rng, long scale, long den = 97) {
    return Rat(static_cast<long>(rng() % (2 * scale * den + 1)) - scale * den, den);
}

} // namespace

TEST_CASE("disc inversion formula") {
    // B(2,1)^{-1} = B(2/3, 1/3)
    auto d = invert_disc(k_gauss(Rat(2), Rat(0)), QuadVal::of(Rat(1)), false);
    CHECK_FALSE(d.is_complement);
    CHECK(d.center == k_gauss(Rat(2, 3), Rat(0)));
    CHECK(d.r2.u == Rat(1, 9));
    // boundary points map to the boundary: 1 -> 1, 3 -> 1/3, 2+i -> (2-i)/5
    for (auto [x, y] : {std::pair{Rat(1), Rat(0)}, {Rat(1, 3), Rat(0)}, {Rat(2, 5), Rat(-1, 5)}}) {
        Rat dx = x - Rat(2, 3), dy = y;
        CHECK(dx * dx + dy * dy == Rat(1, 9));
    }
    // B(3,1)^{-1} = B(3/8, 1/8)
    auto d2 = invert_disc(k_gauss(Rat(3), Rat(0)), QuadVal::of(Rat(1)), false);
    CHECK(d2.center == k_gauss(Rat(3, 8), Rat(0)));
    CHECK(d2.r2.u == Rat(1, 64));
    // B(1,2)^{-1} = complement of closed B(-1/3, 2/3)
    auto d3 = invert_disc(k_gauss(Rat(1), Rat(0)), QuadVal::of(Rat(4)), false);
    CHECK(d3.is_complement);
    CHECK(d3.center == k_gauss(Rat(-1, 3), Rat(0)));
    CHECK(d3.r2.u == Rat(4, 9));
    // zero on the boundary circle
    CHECK_THROWS_AS(invert_disc(k_gauss(Rat(1), Rat(0)), QuadVal::of(Rat(1)), false), error);
}

TEST_CASE("reciprocal membership of inverted discs") {
    std::mt19937_64 rng(5);
    long decided = 0;
    for (int k = 0; k < 400; ++k) {
        Rat cx = rnd_rat(rng, 4), cy = rnd_rat(rng, 4);
        Rat r2 = Rat(1 + static_cast<long>(rng() % 300), 100);
        if (cx * cx + cy * cy <= r2) continue; // need |c| > r
        RegionPtr disc = Region::disc_rat(k_gauss(cx, cy), r2, false);
        RegionPtr inv = invert_region(disc);
        for (int j = 0; j < 60; ++j) {
            Rat wx = rnd_rat(rng, 5), wy = rnd_rat(rng, 5);
            if (wx == 0 && wy == 0) continue;
            KPoint w = gp(wx, wy);
            MemResult a = member(inv, w);
            MemResult b = member(disc, KPoint::of(w.z.inv()));
            if (a.boundary || b.boundary) continue;
            REQUIRE(a.m == b.m);
            ++decided;
        }
    }
    CHECK(decided > 10000);
}

TEST_CASE("diamond inverse equals the four-disc complement intersection") {
    RegionPtr H = diamond_H();
    RegionPtr Hinv = Region::inverse(H);
    std::vector<RegionPtr> discs;
    for (const auto& s : all_symmetries()) {
        KElement c = apply_symmetry(s, k_gauss(Rat(1, 2), Rat(1, 2)));
        discs.push_back(Region::complement(Region::disc_rat(c, Rat(1, 2), false)));
    }
    RegionPtr disc_form = Region::intersect(discs);
    std::mt19937_64 rng(12);
    long decided = 0, mismatches = 0;
    for (int k = 0; k < 20000; ++k) {
        Rat wx = rnd_rat(rng, 3, 101), wy = rnd_rat(rng, 3, 103);
        if (wx == 0 && wy == 0) continue;
        KPoint w = gp(wx, wy);
        MemResult a = member(Hinv, w);
        MemResult b = member(disc_form, w);
        if (a.boundary || b.boundary) continue;
        ++decided;
        if (a.m != b.m) ++mismatches;
    }
    CHECK(decided > 15000);
    CHECK(mismatches == 0);
}

TEST_CASE("square inverse is the complement of the four unit discs") {
    RegionPtr S = square_S();
    RegionPtr Sinv = Region::inverse(S);
    std::vector<RegionPtr> discs;
    for (auto [x, y] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}})
        discs.push_back(Region::complement(Region::disc_rat(k_gauss(Rat(x), Rat(y)), Rat(1), false)));
    RegionPtr rhs = Region::intersect(discs);
    std::mt19937_64 rng(13);
    for (int k = 0; k < 10000; ++k) {
        Rat wx = rnd_rat(rng, 3, 89), wy = rnd_rat(rng, 3, 91);
        if (wx == 0 && wy == 0) continue;
        KPoint w = gp(wx, wy);
        MemResult a = member(Sinv, w);
        MemResult b = member(rhs, w);
        if (a.boundary || b.boundary) continue;
        REQUIRE(a.m == b.m);
    }
}

TEST_CASE("inversion is an involution on sample points") {
    RegionPtr r = Region::unite(
        {Region::disc_rat(k_gauss(Rat(2), Rat(1)), Rat(2), true),
         Region::halfplane(k_gauss(Rat(1), Rat(1)), Rat(-3), false)});
    RegionPtr rr = Region::inverse(Region::inverse(r));
    std::mt19937_64 rng(77);
    for (int k = 0; k < 10000; ++k) {
        Rat wx = rnd_rat(rng, 4, 83), wy = rnd_rat(rng, 4, 87);
        if (wx == 0 && wy == 0) continue;
        KPoint w = gp(wx, wy);
        MemResult a = member(r, w);
        MemResult b = member(rr, w);
        if (a.boundary || b.boundary) continue;
        REQUIRE(a.m == b.m);
    }
}

TEST_CASE("membership is three-valued on balls") {
    RegionPtr disc = Region::disc_rat(k_gauss(Rat(0), Rat(0)), Rat(1), true);
    BallComplex inside = BallComplex::from_doubles(0.2, 0.1, 1e-6, 96);
    BallComplex outside = BallComplex::from_doubles(2.0, 0.0, 1e-6, 96);
    BallComplex straddling = BallComplex::from_doubles(1.0, 0.0, 1e-3, 96);
    CHECK(member(disc, inside).m == Mem::in);
    CHECK(member(disc, outside).m == Mem::out);
    CHECK(member(disc, straddling).m == Mem::unknown);
}

TEST_CASE("surd membership in the canonical sets") {
    // z1 = -i(1 + sqrt2) lies outside H and inside B(0, 3)
    QuadraticSurd z = surd_from_poly(RingElement(RingId::G, 1, 0), RingElement(RingId::G, 0, 0),
                                     RingElement(RingId::G, 2, 0));
    QuadraticSurd z1 = z.step(RingElement(RingId::G, 0, 1));
    CHECK(member(diamond_H(), z1).m == Mem::out);
    CHECK(member(Region::disc_rat(KElement::zero(RingId::G), Rat(9), false), z1).m == Mem::in);
    // z - a0 inside the closed square S
    KTheta rel{z.x(), z.y()};
    QuadraticSurd zr{rel.u - KElement(RingElement(RingId::G, 0, 1)), rel.v, z.delta()};
    CHECK(member(square_S(), zr).m == Mem::in);
    // irrational radius unsupported for surds
    RegionPtr odd = Region::disc(KElement::zero(RingId::G), QuadVal{Rat(1), Rat(1), Int(2)}, true);
    CHECK_THROWS_AS(member(odd, z1), error);
}

TEST_CASE("quadval arithmetic and signs") {
    QuadVal a{Rat(1), Rat(-1), Int(2)}; // 1 - sqrt2 < 0
    CHECK(a.sgn() == -1);
    QuadVal b{Rat(3), Rat(2), Int(2)}; // 3 + 2 sqrt2
    CHECK(b.sgn() == 1);
    QuadVal p = a.mul(b); // (1 - sqrt2)(3 + 2 sqrt2) = -1 - sqrt2
    CHECK(p.u == Rat(-1));
    CHECK(p.v == Rat(-1));
    QuadVal q = b.div(b);
    CHECK(q.u == Rat(1));
    CHECK(q.v == Rat(0));
}
