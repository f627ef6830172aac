#pragma once

#include "minimal.hpp"
#include "stropicalize.hpp"

#include <json.hpp>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace stqf {

using Json = nlohmann::ordered_json;

inline Json to_json(const Element& a) { return to_string(a); }

inline Json to_json(const std::optional<Element>& a) { return a ? to_json(*a) : Json(nullptr); }

inline Json to_json(const Vector& x) {
    Json j = Json::array();
    for (const Element& e : x) j.push_back(to_string(e));
    return j;
}

// {"rank": n, "diag": [...], "upper": {"i,j": elem}} with 1-based keys; zero cross terms are omitted.
inline Json to_json(const QuadraticForm& q) {
    Json j;
    j["rank"] = q.rank();
    j["diag"] = Json::array();
    for (int i = 0; i < q.rank(); ++i) j["diag"].push_back(to_string(q.diag(i)));
    j["upper"] = Json::object();
    for (int i = 0; i < q.rank(); ++i)
        for (int k = i + 1; k < q.rank(); ++k)
            if (!q.upper(i, k).is_zero()) j["upper"][std::to_string(i + 1) + "," + std::to_string(k + 1)] = to_string(q.upper(i, k));
    return j;
}

// {"rank": n, "entries": [[...], ...]}, the full symmetric matrix.
inline Json to_json(const Companion& b) {
    Json j;
    j["rank"] = b.rank();
    j["entries"] = Json::array();
    for (int i = 0; i < b.rank(); ++i) {
        Json row = Json::array();
        for (int k = 0; k < b.rank(); ++k) row.push_back(to_string(b.at(std::min(i, k), std::max(i, k))));
        j["entries"].push_back(row);
    }
    return j;
}

inline Json index_json(const IndexSet& s) {
    Json j = Json::array();
    for (int i : s) j.push_back(i + 1);
    return j;
}

namespace detail {

inline Element element_at(const Json& j, const std::string& path) {
    if (!j.is_string()) throw ParseError(path + ": expected an element string");
    try {
        return parse_element(j.get<std::string>());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

inline std::vector<std::vector<Element>> triangle(const Json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) throw ParseError(path + ": expected a non-empty array of rows");
    std::size_t n = j.size();
    std::vector<std::vector<Element>> rows;
    for (std::size_t i = 0; i < n; ++i) {
        const Json& r = j[i];
        std::string rp = path + "[" + std::to_string(i) + "]";
        if (!r.is_array() || r.size() != n - i)
            throw ParseError(rp + ": expected " + std::to_string(n - i) + " entries");
        std::vector<Element> row;
        for (std::size_t k = 0; k < r.size(); ++k) row.push_back(element_at(r[k], rp + "[" + std::to_string(k) + "]"));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace detail

inline Vector vector_from_json(const Json& j, const std::string& path = "vector") {
    if (j.is_string()) {
        try {
            return parse_vector(j.get<std::string>());
        } catch (const ParseError& e) {
            throw ParseError(path + ": " + e.what());
        }
    }
    if (!j.is_array() || j.empty()) throw ParseError(path + ": expected a non-empty array");
    Vector x(static_cast<int>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) x[static_cast<int>(i)] = detail::element_at(j[i], path + "[" + std::to_string(i) + "]");
    return x;
}

namespace detail {

inline int rank_at(const Json& j, const std::string& path) {
    if (!j.contains("rank") || !j["rank"].is_number_integer() || j["rank"].get<int>() < 1)
        throw ParseError(path + ".rank: expected a positive integer");
    return j["rank"].get<int>();
}

inline std::pair<int, int> index_pair(const std::string& key, int n, const std::string& path) {
    int i = 0, k = 0;
    char comma = 0;
    std::istringstream in(key);
    if (!(in >> i >> comma >> k) || comma != ',' || !in.eof() || i < 1 || k <= i || k > n)
        throw ParseError(path + ": bad index pair '" + key + "'");
    return {i - 1, k - 1};
}

}  // namespace detail

// Also accepts the compact upper-triangle rows [[a11, b12, ...], [a22, ...], ...].
inline QuadraticForm form_from_json(const Json& j, const std::string& path = "form") {
    if (j.is_array()) {
        auto rows = detail::triangle(j, path);
        int n = static_cast<int>(rows.size());
        QuadraticForm q(n);
        for (int i = 0; i < n; ++i) {
            q.set_diag(i, rows[i][0]);
            for (int k = 1; k < n - i; ++k) q.set_upper(i, i + k, rows[i][k]);
        }
        return q;
    }
    if (!j.is_object()) throw ParseError(path + ": expected an object");
    int n = detail::rank_at(j, path);
    QuadraticForm q(n);
    if (j.contains("diag")) {
        const Json& d = j["diag"];
        if (!d.is_array() || static_cast<int>(d.size()) != n) throw ParseError(path + ".diag: expected " + std::to_string(n) + " entries");
        for (int i = 0; i < n; ++i) q.set_diag(i, detail::element_at(d[i], path + ".diag[" + std::to_string(i) + "]"));
    }
    if (j.contains("upper")) {
        const Json& u = j["upper"];
        if (!u.is_object()) throw ParseError(path + ".upper: expected an object");
        for (const auto& [key, val] : u.items()) {
            auto [i, k] = detail::index_pair(key, n, path + ".upper");
            q.set_upper(i, k, detail::element_at(val, path + ".upper[" + key + "]"));
        }
    }
    return q;
}

inline Companion companion_from_json(const Json& j, const std::string& path = "companion") {
    if (j.is_array()) {
        auto rows = detail::triangle(j, path);
        int n = static_cast<int>(rows.size());
        Companion b(n);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n - i; ++k) b.set(i, i + k, rows[i][k]);
        return b;
    }
    if (!j.is_object()) throw ParseError(path + ": expected an object");
    int n = detail::rank_at(j, path);
    const Json& e = j.contains("entries") ? j["entries"] : Json();
    if (!e.is_array() || static_cast<int>(e.size()) != n) throw ParseError(path + ".entries: expected " + std::to_string(n) + " rows");
    Companion b(n);
    for (int i = 0; i < n; ++i) {
        std::string rp = path + ".entries[" + std::to_string(i) + "]";
        if (!e[i].is_array() || static_cast<int>(e[i].size()) != n) throw ParseError(rp + ": expected " + std::to_string(n) + " entries");
        for (int k = 0; k < n; ++k) {
            Element v = detail::element_at(e[i][k], rp + "[" + std::to_string(k) + "]");
            if (k < i && v != b.at(k, i)) throw ParseError(rp + "[" + std::to_string(k) + "]: matrix is not symmetric");
            if (k >= i) b.set(i, k, v);
        }
    }
    return b;
}

struct Instance {
    Group group = Group::Int;
    std::optional<QuadraticForm> form;
    std::optional<Companion> companion;
    std::optional<Vector> x, y;
    std::vector<Vector> vectors;

    QuadraticPair pair() const {
        if (!form) throw PreconditionError("instance has no form");
        return {*form, companion ? *companion : default_companion(*form)};
    }
    friend bool operator==(const Instance&, const Instance&) = default;
};

inline Json to_json(const Instance& in) {
    Json j;
    j["group"] = Json{{"kind", to_string(in.group)}};
    if (in.form) j["form"] = to_json(*in.form);
    if (in.companion) j["companion"] = to_json(*in.companion);
    if (in.x) j["x"] = to_json(*in.x);
    if (in.y) j["y"] = to_json(*in.y);
    if (!in.vectors.empty()) {
        j["vectors"] = Json::array();
        for (const Vector& v : in.vectors) j["vectors"].push_back(to_json(v));
    }
    return j;
}

inline Instance instance_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("instance: expected a JSON object");
    Instance in;
    if (j.contains("group")) {
        const Json& gj = j["group"];
        if (gj.is_string())
            in.group = parse_group(gj.get<std::string>());
        else if (gj.is_object() && gj.contains("kind") && gj["kind"].is_string())
            in.group = parse_group(gj["kind"].get<std::string>());
        else
            throw ParseError("group: expected {\"kind\": \"int\"|\"rat\"}");
    }
    if (j.contains("form")) in.form = form_from_json(j["form"]);
    if (j.contains("companion")) in.companion = companion_from_json(j["companion"]);
    if (j.contains("x")) in.x = vector_from_json(j["x"], "x");
    if (j.contains("y")) in.y = vector_from_json(j["y"], "y");
    if (j.contains("vectors")) {
        if (!j["vectors"].is_array()) throw ParseError("vectors: expected an array");
        for (std::size_t i = 0; i < j["vectors"].size(); ++i)
            in.vectors.push_back(vector_from_json(j["vectors"][i], "vectors[" + std::to_string(i) + "]"));
    }
    int n = in.form ? in.form->rank() : 0;
    auto check = [&](const Vector& v, const char* what) {
        if (n && v.rank() != n) throw PreconditionError(std::string(what) + ": rank differs from the form");
    };
    if (in.companion && n && in.companion->rank() != n) throw PreconditionError("companion: rank differs from the form");
    if (in.x) check(*in.x, "x");
    if (in.y) check(*in.y, "y");
    for (const Vector& v : in.vectors) check(v, "vectors");
    auto member = [&](const Element& e, const char* what) {
        if (!in_group(e, in.group)) throw PreconditionError(std::string(what) + ": value " + to_string(e) + " outside the group");
    };
    if (in.form)
        for (int i = 0; i < n; ++i)
            for (int k = i; k < n; ++k) member(i == k ? in.form->diag(i) : in.form->upper(i, k), "form");
    if (in.companion)
        for (int i = 0; i < in.companion->rank(); ++i)
            for (int k = i; k < in.companion->rank(); ++k) member(in.companion->at(i, k), "companion");
    for (const auto* v : {in.x ? &*in.x : nullptr, in.y ? &*in.y : nullptr})
        if (v)
            for (const Element& e : *v) member(e, "x/y");
    for (const Vector& v : in.vectors)
        for (const Element& e : v) member(e, "vectors");
    return in;
}

inline Json parse_json_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("JSON: ") + e.what());
    }
}

inline Instance parse_instance(const std::string& text) { return instance_from_json(parse_json_text(text)); }

inline std::string print_instance(const Instance& in) { return to_json(in).dump(2); }

// ---------------------------------------------------------------------------------------------------------------
// Reports

inline Json params_json(const CaseParameters& p) {
    Json j;
    j["zeta"] = to_json(p.zeta);
    j["eta"] = to_json(p.eta);
    j["xi"] = p.xi ? Json(value_to_string(*p.xi)) : Json(nullptr);
    j["sigma"] = to_json(p.sigma);
    j["tau"] = to_json(p.tau);
    return j;
}

inline Json classification_report(const QuadraticPair& p, const Vector& x, const Vector& y, Group g) {
    Element a1 = eval_q(p.form, x), a2 = eval_q(p.form, y), a = eval_b(p.companion, x, y);
    PairClass c = classify_values(a1, a2, a, g);
    CaseParameters cp = case_parameters(a1, a2, a, g);
    Json j;
    j["case"] = to_string(cp.label);
    j["quasilinear"] = c.quasilinear;
    j["refinement"] = to_string(c.refinement);
    j["rigidity"] = c.quasilinear ? Json(nullptr) : Json(to_string(c.rigidity));
    j["cs_ratio"] = (a1.is_zero() || a2.is_zero()) ? Json(nullptr) : to_json(cs_ratio_values(a1, a2, a));
    j["params"] = params_json(cp);
    return j;
}

inline Json verdict_json(const QuadraticForm& q, const Vector& x, const MinimalityVerdict& v) {
    Json j;
    j["x"] = to_json(x);
    j["q_of_x"] = to_json(eval_q(q, x));
    j["minimal"] = v.minimal;
    j["rule"] = v.rule;
    j["witness"] = v.witness ? to_json(*v.witness) : Json(nullptr);
    return j;
}

inline Json structure_json(const BigSupportStructure& s) {
    Json j;
    j["case"] = to_string(s.kind);
    j["J"] = index_json(s.J);
    j["K"] = index_json(s.K);
    j["holds"] = s.holds();
    Json c;
    c["cross_below"] = s.checks.cross_below;
    c["cross_equal"] = s.checks.cross_equal;
    c["outer_below"] = s.checks.outer_below;
    c["outer_tangible_tie"] = s.checks.outer_tangible_tie;
    c["all_pairs_equal"] = s.checks.all_pairs_equal;
    c["all_pairs_outer_tangible_tie"] = s.checks.all_pairs_outer_tangible_tie;
    c["join_recovers_x"] = s.checks.join_recovers_x;
    c["parts_ok"] = s.checks.parts_ok;
    j["checks"] = c;
    return j;
}

// ---------------------------------------------------------------------------------------------------------------
// Stropicalization input: {"form": {"shape": .., "alpha1": .., "alpha": .., "alpha2": ..}, "base_change": [[..]], "prime": p}

struct StropicalInstance {
    RationalForm form;
    std::string shape = "general";
    BaseChange base;
    std::int64_t prime = 2;
};

inline Rational rational_at(const Json& j, const std::string& path) {
    try {
        if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
        if (j.is_string()) return parse_rational(j.get<std::string>());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
    throw ParseError(path + ": expected an integer or a rational string");
}

inline StropicalInstance stropical_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("form") || !j.contains("base_change"))
        throw ParseError("stropicalize: expected form and base_change");
    StropicalInstance s;
    const Json& f = j["form"];
    if (f.contains("shape")) s.shape = f["shape"].get<std::string>();
    s.form = {f.contains("alpha1") ? rational_at(f["alpha1"], "form.alpha1") : Rational(0),
              f.contains("alpha") ? rational_at(f["alpha"], "form.alpha") : Rational(0),
              f.contains("alpha2") ? rational_at(f["alpha2"], "form.alpha2") : Rational(0)};
    if (s.shape == "A" && f.size() == 1) s.form = {0, 1, 0};
    const Json& m = j["base_change"];
    if (!m.is_array() || m.size() != 2 || !m[0].is_array() || m[0].size() != 2 || !m[1].is_array() || m[1].size() != 2)
        throw ParseError("base_change: expected a 2x2 array");
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            s.base[r][c] = rational_at(m[r][c], "base_change[" + std::to_string(r) + "][" + std::to_string(c) + "]");
    if (j.contains("prime")) s.prime = j["prime"].get<std::int64_t>();
    if (s.shape != "A" && s.shape != "B" && s.shape != "general") throw ParseError("form.shape: expected A, B or general");
    return s;
}

}  // namespace stqf
