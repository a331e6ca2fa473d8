#pragma once

#include "ccf/approx.hpp"

namespace ccf {

// ---------------------------------------------------------------------------
// rational grid sampling in ring coordinates (s, t) -> s + t*g
// ---------------------------------------------------------------------------

struct GridSpec {
    Rat s_lo, s_hi, t_lo, t_hi;
    long mesh = 48; // points per unit length

    // offsets dodge exact boundary coincidences on the sample set
    template <typename F>
    void for_each(RingId ring, F&& f) const {
        Rat h = Rat(1, mesh);
        Rat off_s = Rat(1, 5 * mesh), off_t = Rat(1, 11 * mesh);
        for (Rat s = s_lo + off_s; s < s_hi; s += h) {
            for (Rat t = t_lo + off_t; t < t_hi; t += h) {
                f(RatPoint{ring, s, t});
            }
        }
    }
};

struct Witness {
    std::string condition;
    KElement point;
};

struct CheckReport {
    std::string name;
    bool pass = true;
    std::string mode = "sampled";
    long points = 0;
    long undecided = 0;
    long mesh = 0;
    std::vector<Witness> witnesses; // one per distinct failing condition
    long failure_count = 0;
    std::vector<std::string> notes;

    void fail_at(const std::string& cond, const KElement& w) {
        pass = false;
        ++failure_count;
        for (const auto& x : witnesses)
            if (x.condition == cond) return;
        if (witnesses.size() < 64) witnesses.push_back({cond, w});
    }
};

// sampled emptiness of A ∩ B over a window
inline void check_empty_sampled(CheckReport& rep, const std::string& cond, const RegionPtr& A,
                                const RegionPtr& B, const GridSpec& grid, RingId ring) {
    grid.for_each(ring, [&](const RatPoint& w) {
        ++rep.points;
        MemResult ma = member(A, w);
        if (ma.boundary) { ++rep.undecided; return; }
        if (ma.m != Mem::in) return;
        MemResult mb = member(B, w);
        if (mb.boundary) { ++rep.undecided; return; }
        if (mb.m == Mem::in) rep.fail_at(cond, w.to_k());
    });
}

// sampled containment A ⊆ B over a window
inline void check_subset_sampled(CheckReport& rep, const std::string& cond, const RegionPtr& A,
                                 const RegionPtr& B, const GridSpec& grid, RingId ring) {
    grid.for_each(ring, [&](const RatPoint& w) {
        ++rep.points;
        MemResult ma = member(A, w);
        if (ma.boundary) { ++rep.undecided; return; }
        if (ma.m != Mem::in) return;
        MemResult mb = member(B, w);
        if (mb.boundary) { ++rep.undecided; return; }
        if (mb.m != Mem::in) rep.fail_at(cond, w.to_k());
    });
}

// ---------------------------------------------------------------------------
// geometric sufficient conditions for monotonicity over the Gaussian ring
// (the three conditions on Q at the corner quotients a = sigma(1+i))
// ---------------------------------------------------------------------------

struct GeomHurwitzParams {
    AlgKind kind = AlgKind::hurwitz_nearest; // hurwitz or perturbed
    Rat r = Rat(0);                          // corner radius for perturbed
    long mesh = 48;
};

inline RegionPtr geom_base_set(const GeomHurwitzParams& par) {
    if (par.kind == AlgKind::hurwitz_nearest) return square_S();
    if (par.kind == AlgKind::perturbed_hurwitz) return region_Sr(par.r);
    fail(errc::unsupported, "geometry checker supports hurwitz and perturbed kinds");
}

inline SymmetryElement sym_compose_y(const SymmetryElement& s) { return sym_y.compose(s); }

// sample w in src; require 1/w in tgt
inline void grid_inverse_subset(CheckReport& rep, const std::string& cond, const RegionPtr& src,
                                const RegionPtr& tgt, const GridSpec& grid, RingId ring) {
    grid.for_each(ring, [&](const RatPoint& w) {
        ++rep.points;
        MemResult ms = member(src, w);
        if (ms.boundary) { ++rep.undecided; return; }
        if (ms.m != Mem::in) return;
        if (w.is_zero()) return;
        MemResult mt = member(tgt, w.recip());
        if (mt.boundary) { ++rep.undecided; return; }
        if (mt.m != Mem::in) rep.fail_at(cond, w.to_k());
    });
}

// verify conditions (i)-(iii) plus the unit-cell emptiness, sampled
inline CheckReport verify_geom_hurwitz(const GeomHurwitzParams& par, const RegionPtr& Q) {
    RingId rg = RingId::G;
    CheckReport rep;
    rep.name = "geom-hurwitz(" + std::string(alg_kind_name(par.kind)) +
               (par.kind == AlgKind::perturbed_hurwitz ? ",r=" + to_string(par.r) : "") + ")";
    rep.mesh = par.mesh;
    RegionPtr F = geom_base_set(par);
    RegionPtr Finv = Region::inverse(F);

    // emptiness of C(a) for |a| = 1: (a + F) ∩ F^{-1} = ∅
    for (const auto& u : units_of(rg)) {
        GridSpec g{u.re() - 1, u.re() + 1, Rat(u.b()) - 1, Rat(u.b()) + 1, par.mesh};
        check_empty_sampled(rep, "C(" + u.str() + ") = empty",
                            Region::translate(F, KElement(u)), Finv, g, rg);
    }

    RingElement onepi{rg, 1, 1};
    for (const auto& s : all_symmetries()) {
        RingElement a = apply_symmetry(s, onepi);
        RegionPtr sQ = Region::symmetry(Q, s, rg);
        RingElement sya = apply_symmetry(sym_y, a);
        RingElement m2abar = -(a.conj() * Int(2));
        // (i) C(a)^{-1} ⊆ sigma(Q), with C(a) = (a + F) ∩ F^{-1}
        RegionPtr Ca = Region::intersect({Region::translate(F, KElement(a)), Finv});
        {
            GridSpec g{a.re() - 2, a.re() + 2, Rat(a.b()) - 2, Rat(a.b()) + 2, par.mesh};
            grid_inverse_subset(rep, "(i) C(" + a.str() + ")^{-1} in sigma(Q)", Ca, sQ, g, rg);
        }
        // (ii) for b in B(sigma_y(a), 2) ∩ Gamma, b != -2 conj(a):
        //      (b + sigma(Q)) ∩ F^{-1} = ∅
        for (const auto& b : elements_in_disc_exact(rg, sya.re(), sya.im_coeff(), Rat(4))) {
            if ((b - sya).norm() >= 4) continue; // open ball
            if (b == m2abar) continue;
            RegionPtr shifted = Region::translate(sQ, KElement(b));
            GridSpec g{b.re() - 2, b.re() + 2, Rat(b.b()) - 2, Rat(b.b()) + 2, par.mesh};
            check_empty_sampled(rep, "(ii) (" + b.str() + " + sigma(Q)) meets F^{-1}", shifted,
                                Finv, g, rg);
        }
        // (iii) (-2 conj(a) + sigma(Q))^{-1} ⊆ (sigma_y sigma)(Q)
        RegionPtr tgt = Region::symmetry(Q, sym_compose_y(s), rg);
        RegionPtr src = Region::translate(sQ, KElement(m2abar));
        GridSpec g{m2abar.re() - 2, m2abar.re() + 2, Rat(m2abar.b()) - 2, Rat(m2abar.b()) + 2,
                   par.mesh};
        grid_inverse_subset(rep, "(iii) (-2conj(a) + sigma(Q))^{-1} in sigma_y sigma(Q)", src,
                            tgt, g, rg);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// family conditions for monotonicity (general rings)
// ---------------------------------------------------------------------------

struct FamilySpec {
    RingId ring = RingId::E;
    RegionPtr common; // F_gamma = common for every gamma (the artifact's family)

    RegionPtr F_of(const RingElement&) const { return common; }
};

struct CorGenParams {
    long mesh = 32;
};

inline CheckReport verify_cor_gen(const FamilySpec& fam, const CorGenParams& par = {}) {
    CheckReport rep;
    rep.name = "cor-gen-family";
    rep.mesh = par.mesh;
    RingId rg = fam.ring;

    // (i) covering: every point of a fundamental cell lies in some gamma + F_gamma
    {
        GridSpec g{Rat(0), Rat(1), Rat(0), Rat(1), par.mesh};
        g.for_each(rg, [&](const RatPoint& w) {
            ++rep.points;
            bool covered = false, boundary = false;
            for (const auto& gamma : elements_in_disc_exact(rg, w.re(), w.im_c(), Rat(4))) {
                RatPoint rel{rg, w.s - Rat(gamma.a()), w.t - Rat(gamma.b())};
                MemResult m = member(fam.F_of(gamma), rel);
                if (m.m == Mem::in) { covered = true; break; }
                if (m.boundary) boundary = true;
            }
            if (covered) return;
            if (boundary) { ++rep.undecided; return; }
            rep.fail_at("(i) covering", w.to_k());
        });
    }
    // (ii) unit-norm exclusion: (theta + F_theta) ∩ (∪_gamma F_gamma^{-1}) = ∅
    for (const auto& u : units_of(rg)) {
        RegionPtr shifted = Region::translate(fam.F_of(u), KElement(u));
        RegionPtr inv = Region::inverse(fam.common);
        GridSpec g{u.re() - 1, u.re() + 1, Rat(u.b()) - 1, Rat(u.b()) + 1, par.mesh};
        check_empty_sampled(rep, "(ii) unit " + u.str(), shifted, inv, g, rg);
    }
    // (iii) for theta with 1 < |theta| < 2 and phi in the open ball
    // B(-conj(theta)/(|theta|^2-1), |theta|^2/(|theta|^2-1)):
    // F_phi^{-1} ∩ (theta + F_theta) = ∅   [as stated in the source]
    {
        std::vector<RingElement> thetas;
        for (const auto& th : elements_in_disc_exact(rg, Rat(0), Rat(0), Rat(4))) {
            Int n = th.norm();
            if (n > 1 && n < 4) thetas.push_back(th);
        }
        for (const auto& th : thetas) {
            Rat denom(th.norm() - 1);
            KElement center = -(KElement(th.conj()) / KElement(rg, denom));
            Rat rad = Rat(th.norm()) / denom;
            bool any_phi = false;
            for (const auto& phi :
                 elements_in_disc_exact(rg, center.re(), center.im_coeff(), rad * rad)) {
                if ((KElement(phi) - center).norm_rat() == rad * rad) continue; // open ball
                any_phi = true;
                RegionPtr inv = Region::inverse(fam.F_of(phi));
                RegionPtr shifted = Region::translate(fam.F_of(th), KElement(th));
                GridSpec g{th.re() - 2, th.re() + 2, Rat(th.b()) - 2, Rat(th.b()) + 2, par.mesh};
                check_empty_sampled(rep, "(iii) theta=" + th.str() + " phi=" + phi.str(), inv,
                                    shifted, g, rg);
                break; // with a common family the phi choice is immaterial
            }
            (void)any_phi;
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// no-unit-quotient validation for an algorithm
// ---------------------------------------------------------------------------

inline CheckReport validate_no_unit_quotients(const AlgorithmSpec& alg, long mesh = 48) {
    CheckReport rep;
    rep.name = "no-unit-quotients(" + alg.str() + ")";
    rep.mesh = mesh;
    if (alg.kind == AlgKind::even_gaussian || alg.kind == AlgKind::lambda_gaussian) {
        rep.mode = "vacuous";
        rep.notes.push_back("unit elements are excluded from the target set");
        return rep;
    }
    RegionPtr F = fundamental_set(alg);
    RegionPtr Finv = Region::inverse(F);
    for (const auto& u : units_of(alg.ring)) {
        RegionPtr shifted = Region::translate(
            alg.kind == AlgKind::eisenstein_chi ? hexagon_E(Rat(1)) : F, KElement(u));
        GridSpec g{u.re() - 1, u.re() + 1, Rat(u.b()) - 1, Rat(u.b()) + 1, mesh};
        check_empty_sampled(rep, "(" + u.str() + " + F) meets F^{-1}", shifted, Finv, g,
                            alg.ring);
    }
    if (alg.kind == AlgKind::eisenstein_chi && alg.param == Rat(5, 4)) {
        // the hexagon argument: 1 + H inside B(4/5, 4/5)
        RegionPtr H1 = Region::translate(hexagon_E(Rat(1)), KElement::one(RingId::E));
        RegionPtr disc = Region::disc_rat(KElement(RingId::E, Rat(4, 5)), Rat(16, 25), false);
        GridSpec g{Rat(-1), Rat(3), Rat(-2), Rat(2), mesh};
        check_subset_sampled(rep, "1 + H in B(4/5,4/5)", H1, disc, g, RingId::E);
    }
    return rep;
}

} // namespace ccf
