#pragma once

#include <memory>
#include <vector>

#include "ccf/surd.hpp"

namespace ccf {

// Value u + v*sqrt(m), m a nonnegative integer; radii-squared of discs.
struct QuadVal {
    Rat u{0};
    Rat v{0};
    Int m{0};

    static QuadVal of(const Rat& r) { return {r, Rat(0), Int(0)}; }
    int sgn() const { return sign_quad(u, v, m); }
    QuadVal add(const QuadVal& o) const {
        if (v == 0) return {u + o.u, o.v, o.m};
        if (o.v == 0) return {u + o.u, v, m};
        if (m != o.m) fail(errc::unsupported, "mixed radicals in QuadVal");
        return {u + o.u, v + o.v, m};
    }
    QuadVal sub_rat(const Rat& r) const { return {u - r, v, m}; }
    QuadVal mul_rat(const Rat& r) const { return {u * r, v * r, m}; }
    QuadVal mul(const QuadVal& o) const {
        if (v == 0) return {u * o.u, u * o.v, o.m};
        if (o.v == 0) return {u * o.u, v * o.u, m};
        if (m != o.m) fail(errc::unsupported, "mixed radicals in QuadVal");
        return {u * o.u + v * o.v * Rat(m), u * o.v + v * o.u, m};
    }
    QuadVal div(const QuadVal& o) const {
        // multiply by conjugate
        QuadVal conj{o.u, -o.v, o.m};
        QuadVal num = mul(conj);
        Rat den = o.u * o.u - o.v * o.v * Rat(o.m);
        if (den == 0) fail(errc::invalid_argument, "QuadVal division by zero");
        return {num.u / den, num.v / den, num.m};
    }
    RealInterval enclose(mpfr_prec_t p) const {
        RealInterval a = RealInterval::point_rat(u, p);
        if (v == 0) return a;
        return a.add(RealInterval::point_rat(v, p).mul(RealInterval::sqrt_int(m, p), p), p);
    }
    std::string str() const {
        if (v == 0) return to_string(u);
        return to_string(u) + "+" + to_string(v) + "*sqrt(" + to_string(m) + ")";
    }
};

enum class Mem { in, out, unknown };

struct MemResult {
    Mem m;
    bool boundary; // some primitive was met exactly on its boundary

    static MemResult of(Mem v, bool b = false) { return {v, b}; }
};

// Exact K-point in the plane.
struct KPoint {
    KElement z;

    RingId ring() const { return z.ring(); }
    static KPoint of(const KElement& z) { return {z}; }
    KPoint recip() const { return {z.inv()}; }
};

// Exact point in ring coordinates s + t*g with rational s, t; the fast
// representation for grid sampling (all primitive tests are a handful of
// rational multiplications, no fraction reduction)
struct RatPoint {
    RingId ring;
    Rat s, t;

    bool is_zero() const { return s == 0 && t == 0; }
    KElement to_k() const {
        return KElement(ring, s) + KElement(ring_gen(ring)) * KElement(ring, t);
    }
    Rat re() const { return s + t * ring_data(ring).re_g(); }
    Rat im_c() const { return t * ring_data(ring).ims; }
    // coordinates of the complex product with an exact coordinate pair
    static std::pair<Rat, Rat> mul_coords(RingId rg, const Rat& x1, const Rat& x2, const Rat& y1,
                                          const Rat& y2) {
        const auto& rd = ring_data(rg);
        Rat cross = x2 * y2;
        return {x1 * y1 - Rat(rd.nm) * cross, x1 * y2 + x2 * y1 + Rat(rd.tr) * cross};
    }
    RatPoint conj() const {
        const auto& rd = ring_data(ring);
        return {ring, s + t * Rat(rd.cx), t * Rat(rd.cy)};
    }
    RatPoint neg() const { return {ring, -s, -t}; }
    Rat norm2() const {
        const auto& rd = ring_data(ring);
        return s * s + Rat(rd.tr) * s * t + Rat(rd.nm) * t * t;
    }
    RatPoint recip() const {
        Rat n = norm2();
        RatPoint c = conj();
        return {ring, c.s / n, c.t / n};
    }
};

// rational ring coordinates of a K element (num * conj(den) / norm(den))
inline std::pair<Rat, Rat> k_coords(const KElement& x) {
    RingElement u = x.num() * x.den().conj();
    Rat d(x.den().norm());
    return {Rat(u.a()) / d, Rat(u.b()) / d};
}

class Region;
using RegionPtr = std::shared_ptr<const Region>;

// Region expression tree over discs and half-planes with boolean operators,
// affine images, and semantic inversion E -> E^{-1}.
class Region {
public:
    enum class Kind { disc, halfplane, uni, inter, cmpl, affine, inverse, whole, empty };

    Kind kind;
    // disc
    KElement center;
    QuadVal r2;
    bool closed = true;
    // halfplane { z : Re(conj(n) z) <= k } (or < if open)
    KElement normal;
    Rat offset;
    // children
    std::vector<RegionPtr> kids;
    // affine: { sigma(z)*scale + shift : z in child } ; member(w) =
    // member(child, sigma((w - shift)/scale))
    SymmetryElement sym;
    KElement scale;
    KElement shift;

    // lazily cached rational coordinates for the RatPoint evaluator
    struct RatCache {
        bool ready = false;
        Rat a1, a2, b1, b2;
    };
    mutable RatCache rcache;

    const RatCache& rat_cache() const {
        if (!rcache.ready) {
            switch (kind) {
            case Kind::disc:
                std::tie(rcache.a1, rcache.a2) = k_coords(center);
                break;
            case Kind::halfplane:
                std::tie(rcache.a1, rcache.a2) = k_coords(normal.conj());
                break;
            case Kind::affine: {
                std::tie(rcache.a1, rcache.a2) = k_coords(shift);
                std::tie(rcache.b1, rcache.b2) = k_coords(scale.inv());
                break;
            }
            default:
                break;
            }
            rcache.ready = true;
        }
        return rcache;
    }

    static RegionPtr whole(RingId) {
        auto r = std::make_shared<Region>();
        r->kind = Kind::whole;
        return r;
    }
    static RegionPtr empty(RingId) {
        auto r = std::make_shared<Region>();
        r->kind = Kind::empty;
        return r;
    }
    static RegionPtr disc(const KElement& c, const QuadVal& radius2, bool closed_) {
        auto r = std::make_shared<Region>();
        r->kind = Kind::disc;
        r->center = c;
        r->r2 = radius2;
        r->closed = closed_;
        return r;
    }
    static RegionPtr disc_rat(const KElement& c, const Rat& radius2, bool closed_) {
        return disc(c, QuadVal::of(radius2), closed_);
    }
    static RegionPtr halfplane(const KElement& n, const Rat& k, bool closed_) {
        auto r = std::make_shared<Region>();
        r->kind = Kind::halfplane;
        r->normal = n;
        r->offset = k;
        r->closed = closed_;
        return r;
    }
    static RegionPtr unite(std::vector<RegionPtr> ks) {
        auto r = std::make_shared<Region>();
        r->kind = Kind::uni;
        r->kids = std::move(ks);
        return r;
    }
    static RegionPtr intersect(std::vector<RegionPtr> ks) {
        auto r = std::make_shared<Region>();
        r->kind = Kind::inter;
        r->kids = std::move(ks);
        return r;
    }
    static RegionPtr complement(RegionPtr k) {
        auto r = std::make_shared<Region>();
        r->kind = Kind::cmpl;
        r->kids = {std::move(k)};
        return r;
    }
    static RegionPtr affine(RegionPtr k, SymmetryElement s, KElement sc, KElement sh) {
        if (sc.is_zero()) fail(errc::invalid_argument, "affine region with zero scale");
        auto r = std::make_shared<Region>();
        r->kind = Kind::affine;
        r->kids = {std::move(k)};
        r->sym = s;
        r->scale = std::move(sc);
        r->shift = std::move(sh);
        return r;
    }
    static RegionPtr translate(RegionPtr k, const KElement& sh) {
        return affine(std::move(k), sym_identity, KElement::one(sh.ring()), sh);
    }
    static RegionPtr symmetry(RegionPtr k, SymmetryElement s, RingId ring) {
        return affine(std::move(k), s, KElement::one(ring), KElement::zero(ring));
    }
    static RegionPtr scaled(RegionPtr k, const KElement& sc) {
        return affine(std::move(k), sym_identity, sc, KElement::zero(sc.ring()));
    }
    static RegionPtr inverse(RegionPtr k) {
        auto r = std::make_shared<Region>();
        r->kind = Kind::inverse;
        r->kids = {std::move(k)};
        return r;
    }
};

// ---------------------------------------------------------------------------
// membership: exact K-points
// ---------------------------------------------------------------------------

inline MemResult member(const RegionPtr& r, const KPoint& w);

inline MemResult combine_union(const RegionPtr& r, const auto& w) {
    bool any_boundary = false;
    bool any_unknown = false;
    for (const auto& k : r->kids) {
        MemResult m = member(k, w);
        if (m.m == Mem::in) return MemResult::of(Mem::in, m.boundary);
        any_boundary |= m.boundary;
        any_unknown |= (m.m == Mem::unknown);
    }
    return MemResult::of(any_unknown ? Mem::unknown : Mem::out, any_boundary);
}

inline MemResult combine_inter(const RegionPtr& r, const auto& w) {
    bool any_boundary = false;
    bool any_unknown = false;
    for (const auto& k : r->kids) {
        MemResult m = member(k, w);
        if (m.m == Mem::out) return MemResult::of(Mem::out, m.boundary);
        any_boundary |= m.boundary;
        any_unknown |= (m.m == Mem::unknown);
    }
    return MemResult::of(any_unknown ? Mem::unknown : Mem::in, any_boundary);
}

inline MemResult member(const RegionPtr& r, const KPoint& w) {
    switch (r->kind) {
    case Region::Kind::whole:
        return MemResult::of(Mem::in);
    case Region::Kind::empty:
        return MemResult::of(Mem::out);
    case Region::Kind::disc: {
        Rat d2 = (w.z - r->center).norm_rat();
        int s = r->r2.sub_rat(d2).sgn(); // sign of r2 - dist2
        if (s > 0) return MemResult::of(Mem::in);
        if (s < 0) return MemResult::of(Mem::out);
        return MemResult::of(r->closed ? Mem::in : Mem::out, true);
    }
    case Region::Kind::halfplane: {
        Rat s = (r->normal.conj() * w.z).re();
        if (s < r->offset) return MemResult::of(Mem::in);
        if (s > r->offset) return MemResult::of(Mem::out);
        return MemResult::of(r->closed ? Mem::in : Mem::out, true);
    }
    case Region::Kind::uni:
        return combine_union(r, w);
    case Region::Kind::inter:
        return combine_inter(r, w);
    case Region::Kind::cmpl: {
        MemResult m = member(r->kids[0], w);
        if (m.m == Mem::in) return MemResult::of(Mem::out, m.boundary);
        if (m.m == Mem::out) return MemResult::of(Mem::in, m.boundary);
        return m;
    }
    case Region::Kind::affine: {
        KElement pre = (w.z - r->shift) / r->scale;
        return member(r->kids[0], KPoint::of(apply_symmetry(r->sym, pre)));
    }
    case Region::Kind::inverse: {
        if (w.z.is_zero()) return MemResult::of(Mem::out, false);
        return member(r->kids[0], w.recip());
    }
    }
    fail(errc::invalid_argument, "corrupt region node");
}

// ---------------------------------------------------------------------------
// membership: rational ring-coordinate points (the grid samplers' fast path)
// ---------------------------------------------------------------------------

inline MemResult member(const RegionPtr& r, const RatPoint& w) {
    switch (r->kind) {
    case Region::Kind::whole:
        return MemResult::of(Mem::in);
    case Region::Kind::empty:
        return MemResult::of(Mem::out);
    case Region::Kind::disc: {
        const auto& rc = r->rat_cache();
        RatPoint d{w.ring, w.s - rc.a1, w.t - rc.a2};
        int sgn = r->r2.sub_rat(d.norm2()).sgn();
        if (sgn > 0) return MemResult::of(Mem::in);
        if (sgn < 0) return MemResult::of(Mem::out);
        return MemResult::of(r->closed ? Mem::in : Mem::out, true);
    }
    case Region::Kind::halfplane: {
        const auto& rc = r->rat_cache();
        auto [u1, u2] = RatPoint::mul_coords(w.ring, rc.a1, rc.a2, w.s, w.t);
        Rat re = u1 + u2 * ring_data(w.ring).re_g();
        if (re < r->offset) return MemResult::of(Mem::in);
        if (re > r->offset) return MemResult::of(Mem::out);
        return MemResult::of(r->closed ? Mem::in : Mem::out, true);
    }
    case Region::Kind::uni:
        return combine_union(r, w);
    case Region::Kind::inter:
        return combine_inter(r, w);
    case Region::Kind::cmpl: {
        MemResult m = member(r->kids[0], w);
        if (m.m == Mem::in) return MemResult::of(Mem::out, m.boundary);
        if (m.m == Mem::out) return MemResult::of(Mem::in, m.boundary);
        return m;
    }
    case Region::Kind::affine: {
        const auto& rc = r->rat_cache();
        auto [d1, d2] = std::pair<Rat, Rat>{w.s - rc.a1, w.t - rc.a2};
        auto [p1, p2] = RatPoint::mul_coords(w.ring, d1, d2, rc.b1, rc.b2);
        RatPoint pre{w.ring, p1, p2};
        if (r->sym.conjugate) pre = pre.conj();
        if (r->sym.negate) pre = pre.neg();
        return member(r->kids[0], pre);
    }
    case Region::Kind::inverse: {
        if (w.is_zero()) return MemResult::of(Mem::out, false);
        return member(r->kids[0], w.recip());
    }
    }
    fail(errc::invalid_argument, "corrupt region node");
}

// ---------------------------------------------------------------------------
// membership: exact quadratic surds (rational-radius discs and half-planes)
// ---------------------------------------------------------------------------

inline MemResult member(const RegionPtr& r, const QuadraticSurd& w) {
    switch (r->kind) {
    case Region::Kind::whole:
        return MemResult::of(Mem::in);
    case Region::Kind::empty:
        return MemResult::of(Mem::out);
    case Region::Kind::disc: {
        if (r->r2.v != 0)
            fail(errc::unsupported, "surd membership in disc with irrational radius^2");
        KTheta diff{w.x() - r->center, w.y()};
        QReal d2 = QReal::abs2(diff, w.delta());
        int s = -d2.cmp_rat(r->r2.u); // sign of r2 - d2
        if (s > 0) return MemResult::of(Mem::in);
        if (s < 0) return MemResult::of(Mem::out);
        return MemResult::of(r->closed ? Mem::in : Mem::out, true);
    }
    case Region::Kind::halfplane: {
        QReal s = QReal::re_of(r->normal.conj(), w.kt(), w.delta());
        int c = s.cmp_rat(r->offset);
        if (c < 0) return MemResult::of(Mem::in);
        if (c > 0) return MemResult::of(Mem::out);
        return MemResult::of(r->closed ? Mem::in : Mem::out, true);
    }
    case Region::Kind::uni:
        return combine_union(r, w);
    case Region::Kind::inter:
        return combine_inter(r, w);
    case Region::Kind::cmpl: {
        MemResult m = member(r->kids[0], w);
        if (m.m == Mem::in) return MemResult::of(Mem::out, m.boundary);
        if (m.m == Mem::out) return MemResult::of(Mem::in, m.boundary);
        return m;
    }
    case Region::Kind::affine: {
        KTheta pre{(w.x() - r->shift) / r->scale, w.y() / r->scale};
        QuadraticSurd z{pre.u, pre.v, w.delta()};
        // apply symmetry to a surd
        QuadraticSurd t = [&]() -> QuadraticSurd {
            QuadraticSurd s1 = z;
            if (r->sym.conjugate) {
                // conj(x + y theta) = conj(x) + conj(y) conj(theta);
                // conj(theta) = principal(conj Delta) when Delta is a positive
                // real, else -principal(conj Delta)
                RingElement dbar = s1.delta().conj();
                bool real_pos = s1.delta().im_coeff() == 0 && s1.delta().re() > 0;
                KElement ny = s1.y().conj();
                if (!real_pos) ny = -ny;
                s1 = QuadraticSurd(s1.x().conj(), ny, dbar);
            }
            if (r->sym.negate) s1 = QuadraticSurd(-s1.x(), -s1.y(), s1.delta());
            return s1;
        }();
        return member(r->kids[0], t);
    }
    case Region::Kind::inverse: {
        KTheta iv = kt_inv(w.kt(), w.delta());
        return member(r->kids[0], QuadraticSurd(iv.u, iv.v, w.delta()));
    }
    }
    fail(errc::invalid_argument, "corrupt region node");
}

// ---------------------------------------------------------------------------
// membership: balls (three-valued)
// ---------------------------------------------------------------------------

inline MemResult member(const RegionPtr& r, const BallComplex& w) {
    mpfr_prec_t p = w.prec();
    switch (r->kind) {
    case Region::Kind::whole:
        return MemResult::of(Mem::in);
    case Region::Kind::empty:
        return MemResult::of(Mem::out);
    case Region::Kind::disc: {
        BallComplex diff = w.sub(BallComplex::from_exact(r->center, p));
        RealInterval d2 = diff.abs2_interval();
        RealInterval rr = r->r2.enclose(p);
        if (d2.hi().cmp(rr.lo()) < 0) return MemResult::of(Mem::in);
        if (d2.lo().cmp(rr.hi()) > 0) return MemResult::of(Mem::out);
        return MemResult::of(Mem::unknown, true);
    }
    case Region::Kind::halfplane: {
        CInterval prod = cinterval_of(r->normal.conj(), p).mul(w.to_cinterval(), p);
        auto c = prod.re.cmp_rat(r->offset);
        if (c && *c < 0) return MemResult::of(Mem::in);
        if (c && *c > 0) return MemResult::of(Mem::out);
        return MemResult::of(Mem::unknown, true);
    }
    case Region::Kind::uni:
        return combine_union(r, w);
    case Region::Kind::inter:
        return combine_inter(r, w);
    case Region::Kind::cmpl: {
        MemResult m = member(r->kids[0], w);
        if (m.m == Mem::in) return MemResult::of(Mem::out, m.boundary);
        if (m.m == Mem::out) return MemResult::of(Mem::in, m.boundary);
        return m;
    }
    case Region::Kind::affine: {
        BallComplex pre = w.sub(BallComplex::from_exact(r->shift, p))
                              .div(BallComplex::from_exact(r->scale, p));
        if (r->sym.conjugate) pre = pre.conj();
        if (r->sym.negate) pre = pre.neg();
        return member(r->kids[0], pre);
    }
    case Region::Kind::inverse: {
        if (w.contains_zero()) return MemResult::of(Mem::unknown, true);
        return member(r->kids[0], w.inv());
    }
    }
    fail(errc::invalid_argument, "corrupt region node");
}

// ---------------------------------------------------------------------------
// structural disc inversion
// ---------------------------------------------------------------------------

struct DiscOrComplement {
    KElement center;
    QuadVal r2;
    bool is_complement; // complement of the closed disc
    bool closed;
};

inline DiscOrComplement invert_disc(const KElement& c, const QuadVal& r2, bool closed) {
    Rat c2 = c.norm_rat();
    QuadVal diff = r2.sub_rat(c2); // r^2 - |c|^2
    int s = diff.sgn();
    if (s == 0) fail(errc::zero_on_boundary, "zero lies on the disc boundary");
    if (s < 0) {
        // |c| > r: B(c,r)^{-1} = B(conj c / (|c|^2-r^2), r/(|c|^2-r^2))
        QuadVal d = QuadVal::of(c2).add(QuadVal{-r2.u, -r2.v, r2.m}); // |c|^2 - r^2 > 0
        // center: conj(c)/d -- d may be irrational; keep center in K only if
        // d rational, else unsupported (not needed by the artifact)
        if (d.v != 0) fail(errc::unsupported, "disc inversion with irrational denominator");
        KElement nc = c.conj() / KElement(c.ring(), d.u);
        QuadVal nr2 = r2.div(d.mul(d));
        return {nc, nr2, false, closed};
    }
    // 0 interior: complement of the closed disc through inverted boundary
    QuadVal d = QuadVal{r2.u - c2, r2.v, r2.m}; // r^2 - |c|^2 > 0
    if (d.v != 0) fail(errc::unsupported, "disc inversion with irrational denominator");
    KElement nc = -(c.conj() / KElement(c.ring(), d.u));
    QuadVal nr2 = r2.div(d.mul(d));
    // open disc containing 0 inverts to complement of closed disc; closed to
    // complement of open; the flag below is the closedness of the REMOVED disc
    return {nc, nr2, true, closed};
}

// Structural inversion for disc nodes, semantic wrapper otherwise.
inline RegionPtr invert_region(const RegionPtr& r) {
    if (r->kind == Region::Kind::disc) {
        DiscOrComplement d = invert_disc(r->center, r->r2, r->closed);
        RegionPtr base = Region::disc(d.center, d.r2, d.is_complement ? !d.closed : d.closed);
        return d.is_complement ? Region::complement(base) : base;
    }
    return Region::inverse(r);
}

// ---------------------------------------------------------------------------
// canonical sets of the Gaussian / Eisenstein geometry
// ---------------------------------------------------------------------------

inline KElement k_of(RingId r, const Rat& re_num) { return KElement(r, re_num); }
inline KElement k_gauss(const Rat& x, const Rat& y) {
    // x + y i over G
    KElement re(RingId::G, x);
    KElement im = KElement(ring_gen(RingId::G)) * KElement(RingId::G, y);
    return re + im;
}

// closed square |x|,|y| <= 1/2
inline RegionPtr square_S() {
    RingId g = RingId::G;
    KElement one = KElement::one(g), i{ring_gen(g)};
    return Region::intersect({
        Region::halfplane(one, Rat(1, 2), true),
        Region::halfplane(-one, Rat(1, 2), true),
        Region::halfplane(i, Rat(1, 2), true),
        Region::halfplane(-i, Rat(1, 2), true),
    });
}

// closed diamond |x|+|y| <= 1 (vertices at +-1, +-i)
inline RegionPtr diamond_H() {
    RingId g = RingId::G;
    KElement n1 = k_gauss(Rat(1), Rat(1)), n2 = k_gauss(Rat(1), Rat(-1));
    return Region::intersect({
        Region::halfplane(n1, Rat(1), true),
        Region::halfplane(-n1, Rat(1), true),
        Region::halfplane(n2, Rat(1), true),
        Region::halfplane(-n2, Rat(1), true),
    });
}

// closed hexagon scale*H over E: Voronoi cell of 0 scaled by `scale`
inline RegionPtr hexagon_E(const Rat& scale) {
    std::vector<RegionPtr> hp;
    for (const auto& u : units_of(RingId::E))
        hp.push_back(Region::halfplane(KElement(u), scale / 2, true));
    return Region::intersect(std::move(hp));
}

// Q_h = {x in [0,1/2], y in [-1/2,0], (1-x)^2 + (1+y)^2 < 1}
inline RegionPtr region_Qh() {
    RingId g = RingId::G;
    KElement one = KElement::one(g), i{ring_gen(g)};
    return Region::intersect({
        Region::halfplane(-one, Rat(0), true),   // x >= 0
        Region::halfplane(one, Rat(1, 2), true), // x <= 1/2
        Region::halfplane(i, Rat(0), true),      // y <= 0
        Region::halfplane(-i, Rat(1, 2), true),  // y >= -1/2
        Region::disc_rat(k_gauss(Rat(1), Rat(-1)), Rat(1), false),
    });
}

// S_r = S union corner discs B(sigma((1+i)/2), r)
inline RegionPtr region_Sr(const Rat& r) {
    std::vector<RegionPtr> parts = {square_S()};
    if (r > 0) {
        for (const auto& s : all_symmetries()) {
            KElement c = apply_symmetry(s, k_gauss(Rat(1, 2), Rat(1, 2)));
            parts.push_back(Region::disc_rat(c, r * r, false));
        }
    }
    return Region::unite(std::move(parts));
}

// Q_r = Q_h union B((1-i)/2, r)
inline RegionPtr region_Qr(const Rat& r) {
    return Region::unite({region_Qh(), Region::disc_rat(k_gauss(Rat(1, 2), Rat(-1, 2)), r * r, false)});
}

// half plane L = {y <= x + 1}
inline RegionPtr region_L() {
    return Region::halfplane(k_gauss(Rat(-1), Rat(1)), Rat(1), true);
}

} // namespace ccf
