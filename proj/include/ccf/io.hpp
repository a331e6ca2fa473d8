#pragma once

#include <json.hpp>

#include "ccf/checks.hpp"

namespace ccf {

using json = nlohmann::json;

// integers that fit in 64 bits are emitted as JSON numbers, larger ones as
// decimal strings; the parser accepts both
inline json int_to_json(const Int& v) {
    if (v >= std::numeric_limits<int64_t>::min() && v <= std::numeric_limits<int64_t>::max())
        return v.convert_to<int64_t>();
    return v.str();
}
inline Int int_from_json(const json& j) {
    if (j.is_number_integer()) return Int(j.get<int64_t>());
    if (j.is_string()) return Int(j.get<std::string>());
    fail(errc::invalid_argument, "expected integer");
}

inline json to_json(const RingElement& x) {
    return json{{"ring", x.desc().name}, {"a", int_to_json(x.a())}, {"b", int_to_json(x.b())}};
}
inline RingElement ring_element_from_json(const json& j) {
    return RingElement(ring_from_name(j.at("ring").get<std::string>()),
                       int_from_json(j.at("a")), int_from_json(j.at("b")));
}

inline json to_json(const KElement& x) {
    return json{{"num", to_json(x.num())}, {"den", to_json(x.den())}};
}
inline KElement kelement_from_json(const json& j) {
    return KElement(ring_element_from_json(j.at("num")), ring_element_from_json(j.at("den")));
}

inline json to_json(const BallComplex& b) {
    return json{{"re", b.re().hex()},
                {"im", b.im().hex()},
                {"rad", b.rad().hex()},
                {"precision", static_cast<long>(b.prec())}};
}

// surd serialization re-derives x, y, Delta from the minimal polynomial
inline json to_json_surd(const QuadraticSurd& z) {
    SurdPoly p = surd_minimal_poly(z);
    return json{{"ring", ring_data(z.ring()).name},
                {"poly", json::array({to_json(p.a), to_json(p.b), to_json(p.c)})},
                {"branch", branch_name(p.branch)}};
}
inline QuadraticSurd surd_from_json(const json& j) {
    auto poly = j.at("poly");
    RingElement a = ring_element_from_json(poly.at(0));
    RingElement b = ring_element_from_json(poly.at(1));
    RingElement c = ring_element_from_json(poly.at(2));
    return surd_from_poly(a, b, c, branch_from_name(j.at("branch").get<std::string>()));
}

inline std::string decimal_of(const RealInterval& iv, int digits = 12) {
    return iv.hi().str(digits);
}

inline json to_json(const CheckReport& r) {
    json w = json::array();
    for (const auto& x : r.witnesses)
        w.push_back(json{{"condition", x.condition}, {"point", to_json(x.point)}});
    return json{{"name", r.name},       {"pass", r.pass},           {"mode", r.mode},
                {"points", r.points},   {"undecided", r.undecided}, {"mesh", r.mesh},
                {"witnesses", w},       {"notes", r.notes}};
}

// ---------------------------------------------------------------------------
// trace serialization: JSON lines (exact fields as strings) and CSV
// ---------------------------------------------------------------------------

inline std::string coord_str(const RingElement& x) {
    return to_string(x.a()) + "," + to_string(x.b());
}

inline json step_to_json(const ExpansionTrace& t, const ExpansionStep& st) {
    json j{{"n", st.n},
           {"a", coord_str(st.a)},
           {"p", coord_str(st.p)},
           {"q", coord_str(st.q)},
           {"q_norm", to_string(st.q.norm())}};
    if (st.z) {
        j["z_x"] = st.z->u.str();
        j["z_y"] = st.z->v.str();
    }
    if (st.delta_n) {
        // delta is stored unreduced; canonicalize for output
        KElement du(st.delta_n->u.num(), st.delta_n->u.den());
        KElement dv(st.delta_n->v.num(), st.delta_n->v.den());
        j["delta_x"] = du.str();
        j["delta_y"] = dv.str();
        j["delta_abs"] = decimal_of(delta_abs_interval(t, st.n));
    }
    if (st.z_ball) j["z_ball"] = to_json(*st.z_ball);
    if (st.delta_ball) j["delta_abs"] = st.delta_ball->abs_up().str(12);
    if (st.ratio) j["r"] = st.ratio->str();
    return j;
}

inline std::string trace_to_jsonl(const ExpansionTrace& t) {
    std::ostringstream out;
    json head{{"ring", ring_data(t.ring).name},
              {"input", t.input_desc},
              {"termination", termination_name(t.termination)}};
    if (t.alg) head["algorithm"] = t.alg->str();
    if (t.period_start >= 0) {
        head["period_start"] = t.period_start;
        head["period_length"] = t.period_len;
    }
    out << head.dump() << "\n";
    for (const auto& st : t.steps) out << step_to_json(t, st).dump() << "\n";
    return out.str();
}

inline std::string trace_to_csv(const ExpansionTrace& t) {
    std::ostringstream out;
    out << "n,a,q_norm,delta_abs,flags\n";
    for (const auto& st : t.steps) {
        out << st.n << ",\"" << coord_str(st.a) << "\"," << to_string(st.q.norm()) << ",";
        if (st.delta_n)
            out << decimal_of(delta_abs_interval(t, st.n));
        else if (st.delta_ball)
            out << st.delta_ball->abs_up().str(12);
        out << ",";
        if (t.period_start >= 0 && st.n >= t.period_start) out << "periodic";
        out << "\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// forms serialization
// ---------------------------------------------------------------------------

inline json to_json(const SigmaForm& X) {
    return json{{"sigma", X.sigma() == Sigma::identity ? "id" : "conj"},
                {"entries", json::array({to_json(X.A()), to_json(X.B()), to_json(X.C()),
                                         to_json(X.D())})}};
}

} // namespace ccf
