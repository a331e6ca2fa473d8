#pragma once

#include <random>
#include <set>

#include "ccf/surd.hpp"

namespace ccf {

struct Config {
    mpfr_prec_t precision_ceiling = kDefaultPrecCeiling;
    long exact_budget = 500;
    long ball_budget = 200;
    Int enumeration_limit = Int(2000000);
    Int factor_limit = Int(10000000);
    uint64_t seed = 1;
    std::string format = "json";
};

// Seeded corpus of irreducible quadratics with coefficient norms <= max_norm.
// Deterministic across platforms (mt19937_64 with fixed sampling).
inline std::vector<QuadraticSurd> surd_corpus(RingId ring, size_t count, uint64_t seed,
                                              long max_norm = 20) {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    auto draw = [&](long lo, long hi) {
        return static_cast<long>(rng() % static_cast<uint64_t>(hi - lo + 1)) + lo;
    };
    std::vector<QuadraticSurd> out;
    std::set<std::pair<std::pair<std::string, std::string>, std::string>> seen;
    int guard = 0;
    while (out.size() < count && guard < 100000) {
        ++guard;
        RingElement a{ring, Int(draw(-4, 4)), Int(draw(-4, 4))};
        RingElement b{ring, Int(draw(-4, 4)), Int(draw(-4, 4))};
        RingElement c{ring, Int(draw(-4, 4)), Int(draw(-4, 4))};
        if (a.is_zero()) continue;
        if (a.norm() > max_norm || b.norm() > max_norm || c.norm() > max_norm) continue;
        RingElement delta = b * b - a * c * Int(4);
        if (delta.is_zero() || is_square_in_K(KElement(delta))) continue;
        Branch br = (rng() & 1) ? Branch::plus : Branch::minus;
        QuadraticSurd z = surd_from_poly(a, b, c, br);
        auto key = std::make_pair(std::make_pair(z.x().str(), z.y().str()), z.delta().str());
        if (!seen.insert(key).second) continue;
        out.push_back(z);
    }
    if (out.size() < count) fail(errc::invalid_argument, "corpus generation starved");
    return out;
}

} // namespace ccf
