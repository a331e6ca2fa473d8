#pragma once

#include <functional>
#include <optional>

#include "ccf/region.hpp"

namespace ccf {

enum class AlgKind {
    hurwitz_nearest,
    eisenstein_nearest,
    even_gaussian,
    lambda_gaussian,
    perturbed_hurwitz,
    eisenstein_chi,
};

inline const char* alg_kind_name(AlgKind k) {
    switch (k) {
    case AlgKind::hurwitz_nearest: return "hurwitz";
    case AlgKind::eisenstein_nearest: return "eisenstein";
    case AlgKind::even_gaussian: return "even";
    case AlgKind::lambda_gaussian: return "lambda";
    case AlgKind::perturbed_hurwitz: return "perturbed";
    case AlgKind::eisenstein_chi: return "chi";
    }
    return "?";
}

// Lambda = { x+iy : |x+y| in {0,2,4} or odd >= 5 }
inline bool in_lambda_set(const RingElement& a) {
    if (a.ring() != RingId::G) fail(errc::wrong_ring, "lambda set needs ring G");
    Int s = a.a() + a.b();
    if (s < 0) s = -s;
    if (s == 0 || s == 2 || s == 4) return true;
    return s % 2 == 1 && s >= 5;
}

// r < sqrt(2) - sqrt(3/2), exactly
inline bool perturbed_r_in_range(const Rat& r) {
    if (r <= 0) return false;
    Rat h = Rat(1, 2) - r * r;
    if (h <= 0) return false;
    return 6 * r * r < h * h; // (1/2 - r^2)^2 > 6 r^2
}

struct AlgorithmSpec {
    RingId ring;
    AlgKind kind;
    Rat param; // r for perturbed, chi for eisenstein_chi

    static AlgorithmSpec make(RingId ring, AlgKind kind, const Rat& param = Rat(0)) {
        AlgorithmSpec s{ring, kind, param};
        switch (kind) {
        case AlgKind::hurwitz_nearest:
        case AlgKind::even_gaussian:
        case AlgKind::lambda_gaussian:
            if (ring != RingId::G) fail(errc::wrong_ring, "algorithm requires ring G");
            break;
        case AlgKind::perturbed_hurwitz:
            if (ring != RingId::G) fail(errc::wrong_ring, "algorithm requires ring G");
            if (!perturbed_r_in_range(param))
                fail(errc::parameter_out_of_range,
                     "perturbed radius must satisfy 0 < r < sqrt(2)-sqrt(3/2)");
            break;
        case AlgKind::eisenstein_nearest:
            if (ring != RingId::E) fail(errc::wrong_ring, "algorithm requires ring E");
            break;
        case AlgKind::eisenstein_chi:
            if (ring != RingId::E) fail(errc::wrong_ring, "algorithm requires ring E");
            if (!(param > 1 && param <= Rat(5, 4)))
                fail(errc::parameter_out_of_range, "chi must lie in (1, 5/4]");
            break;
        }
        return s;
    }

    bool in_target_set(const RingElement& a) const {
        switch (kind) {
        case AlgKind::even_gaussian: return is_even_gaussian(a);
        case AlgKind::lambda_gaussian: return in_lambda_set(a);
        default: return true;
        }
    }

    std::string str() const {
        std::string s = alg_kind_name(kind);
        if (kind == AlgKind::perturbed_hurwitz) s += ":r=" + to_string(param);
        if (kind == AlgKind::eisenstein_chi) s += ":x=" + to_string(param);
        return s;
    }
};

// parse "hurwitz|eisenstein|even|lambda|perturbed:r=0.15|chi:x=5/4"
inline AlgorithmSpec parse_algorithm(const std::string& text, std::optional<RingId> ring_hint = {}) {
    auto colon = text.find(':');
    std::string name = text.substr(0, colon);
    Rat param(0);
    if (colon != std::string::npos) {
        std::string p = text.substr(colon + 1);
        auto eq = p.find('=');
        if (eq != std::string::npos) p = p.substr(eq + 1);
        param = parse_rat(p);
    }
    AlgKind k;
    RingId rg;
    if (name == "hurwitz") { k = AlgKind::hurwitz_nearest; rg = RingId::G; }
    else if (name == "eisenstein") { k = AlgKind::eisenstein_nearest; rg = RingId::E; }
    else if (name == "even") { k = AlgKind::even_gaussian; rg = RingId::G; }
    else if (name == "lambda") { k = AlgKind::lambda_gaussian; rg = RingId::G; }
    else if (name == "perturbed") {
        k = AlgKind::perturbed_hurwitz; rg = RingId::G;
        if (param == 0) param = Rat(3, 20);
    }
    else if (name == "chi") {
        k = AlgKind::eisenstein_chi; rg = RingId::E;
        if (param == 0) param = Rat(5, 4);
    }
    else fail(errc::invalid_argument, "unknown algorithm '" + name + "'");
    if (ring_hint && *ring_hint != rg) fail(errc::wrong_ring, "algorithm/ring mismatch");
    return AlgorithmSpec::make(rg, k, param);
}

// ---------------------------------------------------------------------------
// candidate enumeration around an enclosure
// ---------------------------------------------------------------------------

inline std::vector<RingElement> lattice_candidates(RingId ring, const CInterval& z,
                                                   double search_radius) {
    const auto& rd = ring_data(ring);
    double img = boost::multiprecision::numerator(rd.ims).convert_to<double>() /
                 boost::multiprecision::denominator(rd.ims).convert_to<double>() *
                 std::sqrt(static_cast<double>(rd.d));
    double ylo = z.im.lo().to_double() - search_radius, yhi = z.im.hi().to_double() + search_radius;
    double xlo = z.re.lo().to_double() - search_radius, xhi = z.re.hi().to_double() + search_radius;
    long blo = static_cast<long>(std::floor(ylo / img)) - 1;
    long bhi = static_cast<long>(std::ceil(yhi / img)) + 1;
    double tr2 = rd.tr / 2.0;
    std::vector<RingElement> out;
    for (long b = blo; b <= bhi; ++b) {
        long alo = static_cast<long>(std::floor(xlo - b * tr2)) - 1;
        long ahi = static_cast<long>(std::ceil(xhi - b * tr2)) + 1;
        for (long a = alo; a <= ahi; ++a) out.emplace_back(ring, Int(a), Int(b));
    }
    return out;
}

// lexicographic (Re, Im) comparison of ring elements; total within one ring
inline bool lex_less(const RingElement& a, const RingElement& b) {
    Rat ra = a.re(), rb = b.re();
    if (ra != rb) return ra < rb;
    return a.im_coeff() < b.im_coeff();
}

// ---------------------------------------------------------------------------
// choose: exact backend
// ---------------------------------------------------------------------------

namespace detail {

// minimal-distance candidates, then lexicographically greatest; intervals
// prune everything except genuine contenders, which are compared exactly
inline RingElement nearest_filtered(const QuadraticSurd& z, const CInterval& zi,
                                    const std::vector<RingElement>& cands) {
    if (cands.empty()) fail(errc::invalid_argument, "empty candidate set");
    mpfr_prec_t p = 96;
    std::vector<RealInterval> d2;
    d2.reserve(cands.size());
    for (const auto& c : cands) d2.push_back(zi.sub(cinterval_of(KElement(c), p), p).abs2(p));
    size_t lead = 0;
    for (size_t i = 1; i < d2.size(); ++i)
        if (d2[i].hi().cmp(d2[lead].hi()) < 0) lead = i;
    std::vector<size_t> contenders;
    for (size_t i = 0; i < d2.size(); ++i)
        if (!(d2[lead].hi().cmp(d2[i].lo()) < 0) || i == lead) contenders.push_back(i);
    if (contenders.size() == 1) return cands[lead];
    // exact comparison among the contenders
    std::vector<size_t> best = {contenders[0]};
    QReal bestd = z.abs2_minus(cands[contenders[0]]);
    for (size_t k = 1; k < contenders.size(); ++k) {
        QReal d = z.abs2_minus(cands[contenders[k]]);
        int c = (d - bestd).sign();
        if (c < 0) {
            best = {contenders[k]};
            bestd = d;
        } else if (c == 0) {
            best.push_back(contenders[k]);
        }
    }
    RingElement a = cands[best[0]];
    for (size_t i = 1; i < best.size(); ++i)
        if (lex_less(a, cands[best[i]])) a = cands[best[i]];
    return a;
}

} // namespace detail

inline RingElement choose(const AlgorithmSpec& alg, const QuadraticSurd& z) {
    if (z.ring() != alg.ring) fail(errc::wrong_ring, "surd ring differs from algorithm ring");
    CInterval zi = kt_enclose(z.kt(), z.delta(), 96);
    std::vector<RingElement> cands;
    for (const auto& c : lattice_candidates(alg.ring, zi, 1.25))
        if (alg.in_target_set(c)) cands.push_back(c);
    RingElement a = detail::nearest_filtered(z, zi, cands);

    if (alg.kind == AlgKind::perturbed_hurwitz) {
        // points in the corner disc of the nearest cell flip to the diagonal
        // neighbour across that corner
        QReal rex = QReal::re_of(KElement::one(RingId::G), {z.x() - KElement(a), z.y()}, z.delta());
        QReal imx = QReal::re_of(-KElement(ring_gen(RingId::G)),
                                 {z.x() - KElement(a), z.y()}, z.delta());
        int sx = rex.sign(), sy = imx.sign();
        if (sx != 0 && sy != 0) {
            RingElement corner_off{RingId::G, Int(sx), Int(sy)}; // sigma(1+i)
            KElement corner = KElement(a) + KElement(corner_off) / KElement(RingId::G, Rat(2));
            KTheta diff{z.x() - corner, z.y()};
            QReal d2 = QReal::abs2(diff, z.delta());
            if (d2.cmp_rat(alg.param * alg.param) < 0) a = a + corner_off;
        }
        return a;
    }
    if (alg.kind == AlgKind::eisenstein_chi) {
        // nearest always lands in a + H; the chi slack is never needed by this
        // concrete member of the family
        return a;
    }
    return a;
}

// ball backend: tri-state (nullopt when the enclosure straddles a boundary)
inline std::optional<RingElement> choose_ball(const AlgorithmSpec& alg, const BallComplex& z) {
    CInterval zi = z.to_cinterval();
    std::vector<RingElement> cands;
    for (const auto& c : lattice_candidates(alg.ring, zi, 1.25))
        if (alg.in_target_set(c)) cands.push_back(c);
    if (cands.empty()) return std::nullopt;
    mpfr_prec_t p = z.prec();
    std::vector<RealInterval> d2;
    d2.reserve(cands.size());
    for (const auto& c : cands)
        d2.push_back(z.sub(BallComplex::from_exact(c, p)).abs2_interval());
    size_t best = 0;
    for (size_t i = 1; i < d2.size(); ++i)
        if (d2[i].hi().cmp(d2[best].hi()) < 0) best = i;
    for (size_t i = 0; i < d2.size(); ++i) {
        if (i == best) continue;
        if (!(d2[best].hi().cmp(d2[i].lo()) < 0)) return std::nullopt; // not separated
    }
    RingElement a = cands[best];
    if (alg.kind == AlgKind::perturbed_hurwitz) {
        BallComplex rel = z.sub(BallComplex::from_exact(a, p));
        int sx = rel.re().sgn(), sy = rel.im().sgn();
        // the enclosure must stay within one quadrant to resolve the corner
        Real rad = rel.rad();
        Real absre = r_abs(rel.re(), 64), absim = r_abs(rel.im(), 64);
        if (absre.cmp(rad) <= 0 || absim.cmp(rad) <= 0) {
            // straddles an axis: corner discs are at distance >= 1/2 - r from
            // the axes, so the point is provably outside every corner disc
            // only if |rel| stays clear; check against all four corners
            for (const auto& s : all_symmetries()) {
                KElement corner = KElement(apply_symmetry(s, RingElement(RingId::G, 1, 1))) /
                                  KElement(RingId::G, Rat(2));
                BallComplex d = rel.sub(BallComplex::from_exact(corner, p));
                auto cm = d.abs2_interval().cmp_rat(alg.param * alg.param);
                if (!cm) return std::nullopt;
                if (*cm < 0) return std::nullopt; // inside a corner disc but axis-straddling
            }
            return a;
        }
        RingElement corner_off{RingId::G, Int(sx), Int(sy)};
        KElement corner = (KElement(a * Int(2)) + KElement(corner_off)) / KElement(RingId::G, Rat(2));
        BallComplex d = z.sub(BallComplex::from_exact(corner, p));
        auto cm = d.abs2_interval().cmp_rat(alg.param * alg.param);
        if (!cm) return std::nullopt;
        if (*cm < 0) a = a + corner_off;
    }
    return a;
}

// ---------------------------------------------------------------------------
// cells and fundamental sets
// ---------------------------------------------------------------------------

// half-open square cell of the nearest-integer rule (ties to the
// lexicographically greater neighbour)
inline RegionPtr halfopen_square_G() {
    RingId g = RingId::G;
    KElement one = KElement::one(g), i{ring_gen(g)};
    return Region::intersect({
        Region::halfplane(one, Rat(1, 2), false),  // Re <  1/2
        Region::halfplane(-one, Rat(1, 2), true),  // Re >= -1/2
        Region::halfplane(i, Rat(1, 2), false),    // Im <  1/2
        Region::halfplane(-i, Rat(1, 2), true),    // Im >= -1/2
    });
}

inline RegionPtr halfopen_diamond_G() {
    KElement n1 = k_gauss(Rat(1), Rat(1)), n2 = k_gauss(Rat(1), Rat(-1));
    return Region::intersect({
        Region::halfplane(n1, Rat(1), false), // x+y < 1   (tie -> 1+i)
        Region::halfplane(n2, Rat(1), false), // x-y < 1   (tie -> 1-i)
        Region::halfplane(-n1, Rat(1), true), // -(x+y) <= 1
        Region::halfplane(-n2, Rat(1), true), // -(x-y) <= 1
    });
}

inline RegionPtr halfopen_hexagon_E() {
    std::vector<RegionPtr> hp;
    for (const auto& u : units_of(RingId::E)) {
        bool u_wins = u.re() > 0 || (u.re() == 0 && u.im_coeff() > 0);
        hp.push_back(Region::halfplane(KElement(u), Rat(1, 2), !u_wins));
    }
    return Region::intersect(std::move(hp));
}

inline RegionPtr cell(const AlgorithmSpec& alg, const RingElement& a) {
    if (a.ring() != alg.ring) fail(errc::wrong_ring, "cell: ring mismatch");
    if (!alg.in_target_set(a)) fail(errc::not_in_target_set, "cell of excluded element");
    KElement sh{a};
    switch (alg.kind) {
    case AlgKind::hurwitz_nearest:
        return Region::translate(halfopen_square_G(), sh);
    case AlgKind::even_gaussian:
        return Region::translate(halfopen_diamond_G(), sh);
    case AlgKind::eisenstein_nearest:
    case AlgKind::eisenstein_chi:
        return Region::translate(halfopen_hexagon_E(), sh);
    case AlgKind::lambda_gaussian: {
        std::vector<RegionPtr> hp;
        for (const auto& b : lattice_candidates(RingId::G,
                                                cinterval_of(KElement(a), 96), 3.0)) {
            if (b == a || !in_lambda_set(b)) continue;
            RingElement d = b - a;
            if (d.norm() > 9) continue;
            bool b_wins = lex_less(a, b);
            hp.push_back(Region::halfplane(KElement(d), Rat(d.norm(), 2), !b_wins));
        }
        return Region::translate(Region::intersect(std::move(hp)), sh);
    }
    case AlgKind::perturbed_hurwitz: {
        RegionPtr base = Region::translate(halfopen_square_G(), sh);
        Rat r2 = alg.param * alg.param;
        std::vector<RegionPtr> own_discs;
        std::vector<RegionPtr> pieces = {};
        for (const auto& s : all_symmetries()) {
            RingElement off = apply_symmetry(s, RingElement(RingId::G, 1, 1)); // sigma(1+i)
            KElement corner = sh + KElement(off) / KElement(RingId::G, Rat(2));
            own_discs.push_back(Region::disc_rat(corner, r2, false));
            // pieces flowing in across the corner from the diagonal cell
            RegionPtr diag_cell = Region::translate(halfopen_square_G(), sh + KElement(off));
            pieces.push_back(Region::intersect({Region::disc_rat(corner, r2, false), diag_cell}));
        }
        RegionPtr trimmed =
            Region::intersect({base, Region::complement(Region::unite(own_discs))});
        pieces.push_back(trimmed);
        return Region::unite(std::move(pieces));
    }
    }
    fail(errc::invalid_argument, "cell: bad kind");
}

// declared fundamental superset {z - f(z)} used by the geometric checkers
inline RegionPtr fundamental_set(const AlgorithmSpec& alg) {
    switch (alg.kind) {
    case AlgKind::hurwitz_nearest: return square_S();
    case AlgKind::even_gaussian:
    case AlgKind::lambda_gaussian: return diamond_H();
    case AlgKind::eisenstein_nearest: return hexagon_E(Rat(1));
    case AlgKind::eisenstein_chi: return hexagon_E(alg.param);
    case AlgKind::perturbed_hurwitz: return region_Sr(alg.param);
    }
    fail(errc::invalid_argument, "fundamental_set: bad kind");
}

} // namespace ccf
