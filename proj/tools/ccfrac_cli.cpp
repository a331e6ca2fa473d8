// ccfrac: continued fraction expansions of complex numbers over the Euclidean
// imaginary-quadratic rings, with exact verification suites.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "ccf/corpus.hpp"
#include "ccf/io.hpp"

using namespace ccf;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitPrecision = 3;
constexpr int kExitLimit = 4;

RingElement parse_coeff(const std::string& s, RingId ring) {
    auto colon = s.find(':');
    if (colon == std::string::npos) return RingElement(ring, Int(s), 0);
    return RingElement(ring, Int(s.substr(0, colon)), Int(s.substr(colon + 1)));
}

std::vector<RingElement> parse_coeff_list(const std::string& text, RingId ring) {
    std::vector<RingElement> out;
    std::string cur;
    for (char c : text) {
        if (c == ',') {
            out.push_back(parse_coeff(cur, ring));
            cur.clear();
        } else if (!isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(parse_coeff(cur, ring));
    return out;
}

// "1.0+1.732050808i@1e-9" -> ball
BallComplex parse_ball(const std::string& text) {
    auto at = text.find('@');
    std::string z = at == std::string::npos ? text : text.substr(0, at);
    std::string rad = at == std::string::npos ? "0" : text.substr(at + 1);
    if (!z.empty() && z.back() == 'i') z.pop_back();
    // split into re and im at the last +/- not in an exponent
    size_t split = std::string::npos;
    for (size_t i = 1; i < z.size(); ++i) {
        if ((z[i] == '+' || z[i] == '-') && z[i - 1] != 'e' && z[i - 1] != 'E') split = i;
    }
    std::string re = split == std::string::npos ? z : z.substr(0, split);
    std::string im = split == std::string::npos ? "0" : z.substr(split);
    if (im == "+" ) im = "1";
    if (im == "-") im = "-1";
    mpfr_prec_t prec = 192;
    Real r(prec), i(prec), rr(64);
    if (mpfr_set_str(r.get(), re.c_str(), 10, MPFR_RNDN) != 0 && re.empty())
        fail(errc::invalid_argument, "bad ball literal");
    mpfr_set_str(i.get(), im.c_str(), 10, MPFR_RNDN);
    mpfr_set_str(rr.get(), rad.c_str(), 10, MPFR_RNDU);
    return BallComplex(r, i, rr, prec);
}

json config_json(const Config& cfg) {
    return json{{"precision_ceiling", static_cast<long>(cfg.precision_ceiling)},
                {"exact_budget", cfg.exact_budget},
                {"ball_budget", cfg.ball_budget},
                {"enumeration_limit", int_to_json(cfg.enumeration_limit)},
                {"factor_limit", int_to_json(cfg.factor_limit)},
                {"seed", cfg.seed},
                {"format", cfg.format}};
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream f(out_path);
        f << j.dump(2) << "\n";
    }
}

struct CorpusSpec {
    size_t count = 20;
    uint64_t seed = 1;
};

CorpusSpec parse_corpus(const std::string& s) {
    // surds:100:seed=7
    CorpusSpec spec;
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == ':') {
            parts.push_back(cur);
            cur.clear();
        } else
            cur += c;
    }
    parts.push_back(cur);
    if (parts.empty() || parts[0] != "surds")
        fail(errc::invalid_argument, "corpus spec must look like surds:100:seed=7");
    if (parts.size() > 1) spec.count = std::stoul(parts[1]);
    for (size_t i = 2; i < parts.size(); ++i) {
        if (parts[i].rfind("seed=", 0) == 0) spec.seed = std::stoull(parts[i].substr(5));
    }
    return spec;
}

std::vector<RingElement> trace_quotients(const ExpansionTrace& t) {
    std::vector<RingElement> a;
    for (const auto& st : t.steps) a.push_back(st.a);
    return a;
}

int cmd_expand(const std::string& poly, const std::string& ball, const std::string& ring_name,
               const std::string& alg_name, long steps, const std::string& branch,
               const std::string& out, bool csv, const Config& cfg) {
    RingId ring = ring_from_name(ring_name);
    AlgorithmSpec alg = parse_algorithm(alg_name, ring);
    ExpansionTrace t;
    if (!poly.empty()) {
        auto cs = parse_coeff_list(poly, ring);
        if (cs.size() != 3) fail(errc::invalid_argument, "--poly needs three coefficients");
        QuadraticSurd z = surd_from_poly(cs[0], cs[1], cs[2], branch_from_name(branch));
        t = run(z, alg, steps > 0 ? steps : cfg.exact_budget);
    } else if (!ball.empty()) {
        t = run_ball(parse_ball(ball), alg, steps > 0 ? steps : cfg.ball_budget);
    } else {
        fail(errc::invalid_argument, "expand needs --poly or --ball");
    }
    std::string body = csv ? trace_to_csv(t) : trace_to_jsonl(t);
    if (out.empty())
        std::cout << body;
    else {
        std::ofstream f(out);
        f << body;
    }
    if (t.termination == Termination::precision_exhausted) return kExitPrecision;
    return kExitOk;
}

int cmd_certify(const std::string& ring_name, const std::string& r2_text,
                const std::string& center_text, const std::string& out, const Config& cfg) {
    RingId ring = ring_from_name(ring_name);
    Rat r2 = parse_rat(r2_text);
    KElement center = KElement::zero(ring);
    if (!center_text.empty()) {
        auto cs = parse_coeff_list(center_text, ring);
        if (cs.size() == 1) center = KElement(cs[0]);
        else if (cs.size() == 2) center = KElement(cs[0], cs[1]);
        else fail(errc::invalid_argument, "--center is 'p' or 'p,q' in ring coordinates");
    }
    CircleCertificate cert = certify_bad_circle(center, r2, ring, cfg.factor_limit);
    json j{{"ring", ring_data(ring).name},
           {"r2", to_string(r2)},
           {"center", to_json(center)},
           {"verdict", cert.certified_bad ? "certified-bad" : "contains-K-point"},
           {"s", int_to_json(cert.s)},
           {"t", int_to_json(cert.t)},
           {"config", config_json(cfg)}};
    if (cert.k_point) j["witness"] = to_json(*cert.k_point);
    emit(j, out);
    return kExitOk;
}

int cmd_oracle(const std::string& z_path, const std::string& qmax, const std::string& out,
               const Config& cfg) {
    std::ifstream f(z_path);
    if (!f) fail(errc::invalid_argument, "cannot open " + z_path);
    json zj = json::parse(f);
    QuadraticSurd z = surd_from_json(zj);
    OracleTable table = best_approx_oracle(z, Int(qmax), cfg.enumeration_limit);
    json rows = json::array();
    for (const auto& row : table.rows) {
        rows.push_back(json{{"q", coord_str(row.q)},
                            {"p", coord_str(row.p)},
                            {"q_norm", to_string(row.q.norm())},
                            {"dist", decimal_of(row.dist)}});
    }
    emit(json{{"z", zj}, {"qmax", qmax}, {"rows", rows}, {"config", config_json(cfg)}}, out);
    return kExitOk;
}

struct SuiteResult {
    bool pass = true;
    json details = json::array();

    void add(const std::string& name, bool ok, const json& extra = {}) {
        pass = pass && ok;
        json j{{"name", name}, {"pass", ok}};
        if (!extra.is_null() && !extra.empty()) j["info"] = extra;
        details.push_back(j);
    }
};

std::vector<AlgorithmSpec> default_algorithms(RingId ring) {
    if (ring == RingId::G)
        return {AlgorithmSpec::make(RingId::G, AlgKind::hurwitz_nearest),
                AlgorithmSpec::make(RingId::G, AlgKind::even_gaussian),
                AlgorithmSpec::make(RingId::G, AlgKind::lambda_gaussian),
                AlgorithmSpec::make(RingId::G, AlgKind::perturbed_hurwitz, Rat(3, 20))};
    return {AlgorithmSpec::make(RingId::E, AlgKind::eisenstein_nearest),
            AlgorithmSpec::make(RingId::E, AlgKind::eisenstein_chi, Rat(5, 4))};
}

int cmd_verify(const std::string& suite, const std::string& alg_name,
               const std::string& corpus_text, const std::string& check_name, const std::string& r,
               long mesh, const std::string& out, const Config& cfg) {
    SuiteResult res;
    CorpusSpec cs = parse_corpus(corpus_text);
    auto algorithms = [&]() -> std::vector<AlgorithmSpec> {
        if (!alg_name.empty()) return {parse_algorithm(alg_name)};
        auto g = default_algorithms(RingId::G);
        auto e = default_algorithms(RingId::E);
        g.insert(g.end(), e.begin(), e.end());
        return g;
    }();

    if (suite == "identities" || suite == "monotone" || suite == "conditionH" ||
        suite == "neat" || suite == "appr" || suite == "forms") {
        for (const auto& alg : algorithms) {
            auto corpus = surd_corpus(alg.ring, cs.count, cs.seed);
            long idx = 0;
            for (const auto& z : corpus) {
                ExpansionTrace t = run(z, alg, cfg.exact_budget);
                std::string tag = alg.str() + "#" + std::to_string(idx++);
                if (suite == "identities") {
                    auto rep = verify_identities(t);
                    res.add(tag, rep.pass, json{{"first_failure", rep.first_failure}});
                } else if (suite == "monotone") {
                    auto rep = check_monotone(t);
                    res.add(tag, rep.verdict == MonotoneVerdict::strict,
                            json{{"m", rep.m}});
                } else if (suite == "conditionH") {
                    if (alg.ring != RingId::G) continue;
                    auto rep = check_condition_H(trace_quotients(t));
                    res.add(tag, rep.holds, json{{"reason", rep.reason}});
                } else if (suite == "neat") {
                    auto rep = neat_subset(t, Rat(21, 20));
                    res.add(tag,
                            rep.bound_alpha_ok && rep.prop_bound_i_ok && rep.prop_bound_ii_ok,
                            json{{"N_size", rep.indices.size()},
                                 {"sup_delta", rep.sup_delta_upper}});
                } else if (suite == "appr") {
                    bool ok = true;
                    json info = json::array();
                    for (long n = 0; n <= std::min<long>(3, t.size() - 1); ++n) {
                        try {
                            auto rep = verify_app_pr(t, n, cfg.enumeration_limit);
                            ok = ok && rep.pass;
                        } catch (const error& e) {
                            if (e.code() == errc::hypothesis_failed) continue;
                            if (e.code() == errc::enumeration_limit) continue;
                            throw;
                        }
                    }
                    res.add(tag, ok, info);
                } else if (suite == "forms") {
                    SurdPoly mp = surd_minimal_poly(z);
                    KElement half{RingElement(alg.ring, 1, 0), RingElement(alg.ring, 2, 0)};
                    SigmaForm X = SigmaForm::symmetric(Sigma::identity, KElement(mp.a),
                                                       KElement(mp.b) * half, KElement(mp.c));
                    auto rep = orbit_along(t, X);
                    res.add(tag, rep.pass,
                            json{{"orbit", rep.orbit.size()},
                                 {"stabilized_at", rep.stabilized_at},
                                 {"bound", rep.entry_bound},
                                 {"max_entry", rep.max_entry_abs}});
                }
            }
        }
    } else if (suite == "geometry") {
        long m = mesh > 0 ? mesh : 48;
        if (check_name == "h-perturb" || check_name.empty()) {
            Rat rr = r.empty() ? Rat(3, 20) : parse_rat(r);
            GeomHurwitzParams par{rr == 0 ? AlgKind::hurwitz_nearest : AlgKind::perturbed_hurwitz,
                                  rr, m};
            RegionPtr Q = rr == 0 ? region_Qh() : region_Qr(rr);
            auto rep = verify_geom_hurwitz(par, Q);
            res.add(rep.name, rep.pass, to_json(rep));
        }
        if (check_name == "hurwitz") {
            GeomHurwitzParams par{AlgKind::hurwitz_nearest, Rat(0), m};
            auto rep = verify_geom_hurwitz(par, region_Qh());
            res.add(rep.name, rep.pass, to_json(rep));
        }
        if (check_name == "units") {
            for (const auto& alg : algorithms) {
                auto rep = validate_no_unit_quotients(alg, m);
                res.add(rep.name, rep.pass, to_json(rep));
            }
        }
        if (check_name == "cor-gen") {
            Rat rr = r.empty() ? Rat(117, 200) : parse_rat(r);
            FamilySpec fam;
            fam.ring = RingId::E;
            fam.common = Region::disc_rat(KElement::zero(RingId::E), rr * rr, false);
            auto rep = verify_cor_gen(fam, {m});
            res.add(rep.name + " r=" + to_string(rr), rep.pass, to_json(rep));
        }
    } else {
        fail(errc::invalid_argument, "unknown suite '" + suite + "'");
    }

    json j{{"suite", suite}, {"pass", res.pass}, {"results", res.details},
           {"config", config_json(cfg)}};
    emit(j, out);
    return res.pass ? kExitOk : kExitFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact continued fraction expansions over Euclidean imaginary-quadratic rings"};
    app.require_subcommand(1);

    Config cfg;
    std::string config_path;
    app.add_option("--config", config_path, "JSON config file");

    // expand
    auto* expand = app.add_subcommand("expand", "expand a surd or a ball input");
    std::string poly, ball, ring_name = "G", alg_name = "hurwitz", branch = "plus", out;
    long steps = 0;
    bool csv = false;
    expand->add_option("--poly", poly, "a,b,c coefficients (x or x:y per coefficient)");
    expand->add_option("--ball", ball, "decimal ball literal re+imi@rad");
    expand->add_option("--ring", ring_name, "G|E|Z2|Z7|Z11");
    expand->add_option("--alg", alg_name, "hurwitz|eisenstein|even|lambda|perturbed:r=|chi:x=");
    expand->add_option("--steps", steps, "step budget");
    expand->add_option("--branch", branch, "plus|minus");
    expand->add_option("--out", out, "output path (default stdout)");
    expand->add_flag("--csv", csv, "CSV projection instead of JSON lines");

    // verify
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::string suite, v_alg, corpus = "surds:20:seed=1", check, vr;
    long mesh = 0;
    std::string v_out;
    verify->add_option("suite", suite, "identities|monotone|conditionH|neat|appr|forms|geometry")
        ->required();
    verify->add_option("--alg", v_alg, "restrict to one algorithm");
    verify->add_option("--corpus", corpus, "surds:<count>:seed=<seed>");
    verify->add_option("--check", check, "geometry: hurwitz|h-perturb|units");
    verify->add_option("--r", vr, "geometry: perturbation radius");
    verify->add_option("--mesh", mesh, "geometry: grid mesh per unit");
    verify->add_option("--out", v_out, "output path");

    // certify / bad-circle
    std::string c_ring = "G", c_r2, c_center, c_out;
    auto add_certify = [&](CLI::App* sub) {
        sub->add_option("--ring", c_ring, "G|E|Z2|Z7|Z11");
        sub->add_option("--r2", c_r2, "radius squared, rational s/t")->required();
        sub->add_option("--center", c_center, "center in ring coordinates p or p,q");
        sub->add_option("--out", c_out, "output path");
    };
    auto* certify = app.add_subcommand("certify", "certify a badly approximable circle");
    add_certify(certify);
    auto* badcircle = app.add_subcommand("bad-circle", "alias of certify");
    add_certify(badcircle);

    // oracle
    auto* oracle = app.add_subcommand("oracle", "brute-force best approximation table");
    std::string o_z, o_qmax = "50", o_out;
    oracle->add_option("--z", o_z, "surd JSON file")->required();
    oracle->add_option("--qmax", o_qmax, "norm bound for q");
    oracle->add_option("--out", o_out, "output path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!config_path.empty()) {
            std::ifstream f(config_path);
            if (!f) fail(errc::invalid_argument, "cannot open config " + config_path);
            json j = json::parse(f);
            if (j.contains("precision_ceiling")) cfg.precision_ceiling = j["precision_ceiling"];
            if (j.contains("exact_budget")) cfg.exact_budget = j["exact_budget"];
            if (j.contains("ball_budget")) cfg.ball_budget = j["ball_budget"];
            if (j.contains("seed")) cfg.seed = j["seed"];
            if (j.contains("format")) cfg.format = j["format"];
        }
        if (expand->parsed())
            return cmd_expand(poly, ball, ring_name, alg_name, steps, branch, out, csv, cfg);
        if (verify->parsed())
            return cmd_verify(suite, v_alg, corpus, check, vr, mesh, v_out, cfg);
        if (certify->parsed() || badcircle->parsed())
            return cmd_certify(c_ring, c_r2, c_center, c_out, cfg);
        if (oracle->parsed()) return cmd_oracle(o_z, o_qmax, o_out, cfg);
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.code()) {
        case errc::precision_exhausted: return kExitPrecision;
        case errc::enumeration_limit:
        case errc::factorization_budget: return kExitLimit;
        default: return kExitUsage;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
