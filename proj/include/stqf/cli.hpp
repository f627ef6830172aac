#pragma once

// Command implementations behind tools/stqf. Each returns the text to print and an exit code, so
// tests can drive them without spawning a process.

#include "io.hpp"
#include "selftest.hpp"

#include <future>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace stqf::cli {

enum Exit : int { kOk = 0, kViolation = 1, kParse = 2, kPrecondition = 3 };

struct Options {
    std::optional<Group> group;  // overrides the instance file
    bool pretty = false;
    int jobs = 1;
    std::uint64_t seed = 42;
};

struct Result {
    int code = kOk;
    std::string out;
};

namespace detail {

inline std::string emit(const Json& j, const Options& o) { return o.pretty ? j.dump(2) + "\n" : j.dump() + "\n"; }

inline Group group_of(const Instance& in, const Options& o) { return o.group ? *o.group : in.group; }

inline void check_member(const Vector& v, Group g, const char* what) {
    for (const Element& e : v)
        if (!in_group(e, g)) throw PreconditionError(std::string(what) + ": value " + to_string(e) + " outside the group");
}

// x and y from the flags, the instance, the first two listed vectors, or the unit vectors at rank 2.
inline std::pair<Vector, Vector> two_vectors(const Instance& in, const std::optional<Vector>& x, const std::optional<Vector>& y) {
    if (!in.form) throw PreconditionError("instance has no form");
    int n = in.form->rank();
    std::optional<Vector> u = x ? x : in.x, w = y ? y : in.y;
    if (!u && in.vectors.size() >= 1) u = in.vectors[0];
    if (!w && in.vectors.size() >= 2) w = in.vectors[1];
    if (!u && !w && n == 2) return {Vector::unit(2, 0), Vector::unit(2, 1)};
    if (!u || !w) throw PreconditionError("two vectors x and y are required");
    if (u->rank() != n || w->rank() != n) throw PreconditionError("vector rank differs from the form");
    return {*u, *w};
}

inline std::vector<Vector> listed_vectors(const Instance& in, const std::optional<Vector>& x) {
    if (x) return {*x};
    std::vector<Vector> out;
    if (in.x) out.push_back(*in.x);
    for (const Vector& v : in.vectors) out.push_back(v);
    if (out.empty()) throw PreconditionError("no vector given");
    for (const Vector& v : out)
        if (v.rank() != in.form->rank()) throw PreconditionError("vector rank differs from the form");
    return out;
}

inline std::string pad(const std::string& s, std::size_t w) { return s + std::string(w > s.size() ? w - s.size() : 0, ' '); }

// Left-aligned columns separated by two spaces.
inline std::string table(const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> w;
    for (const auto& r : rows)
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (w.size() <= i) w.push_back(0);
            w[i] = std::max(w[i], r[i].size());
        }
    std::string out;
    for (const auto& r : rows) {
        std::string line;
        for (std::size_t i = 0; i < r.size(); ++i) line += (i ? "  " : "") + (i + 1 < r.size() ? pad(r[i], w[i]) : r[i]);
        out += line + "\n";
    }
    return out;
}

}  // namespace detail

inline Result classify(const Instance& in, const Options& o, const std::optional<Vector>& x = {},
                       const std::optional<Vector>& y = {}) {
    Group g = detail::group_of(in, o);
    auto [u, w] = detail::two_vectors(in, x, y);
    detail::check_member(u, g, "x");
    detail::check_member(w, g, "y");
    QuadraticPair p = in.pair();
    Json j = classification_report(p, u, w, g);
    j["q_x"] = to_json(eval_q(p.form, u));
    j["q_y"] = to_json(eval_q(p.form, w));
    j["b_xy"] = to_json(eval_b(p.companion, u, w));
    bool oracle = oracle_quasilinear(p, u, w, g);
    j["oracle_agrees"] = oracle == j["quasilinear"].get<bool>();
    return {j["oracle_agrees"].get<bool>() ? kOk : kViolation, detail::emit(j, o)};
}

// Table values of q(l x + m y) against direct evaluation over a grid holding every breakpoint.
inline Result qtable(const Instance& in, const Options& o, const std::optional<Vector>& x = {}, const std::optional<Vector>& y = {}) {
    Group g = detail::group_of(in, o);
    auto [u, w] = detail::two_vectors(in, x, y);
    QuadraticPair p = in.pair();
    Element a1 = eval_q(p.form, u), a2 = eval_q(p.form, w), a = eval_b(p.companion, u, w);
    CaseParameters cp = case_parameters(a1, a2, a, g);
    QuadraticForm base = QuadraticForm::binary(a1, a, a2);
    Json rows = Json::array();
    bool all = true;
    auto row = [&](const Element& l, const Element& m) {
        Element t = q_value_table(cp, a1, a2, a, l, m), d = eval_q(p.form, l * u + m * w);
        bool agree = t == d;
        all &= agree;
        rows.push_back(Json{{"lambda", to_string(l)}, {"mu", to_string(m)}, {"table", to_string(t)}, {"direct", to_string(d)}, {"agree", agree}});
    };
    // q is homogeneous of degree 2, so mu in {1, e} and lambda over the breakpoints cover every branch.
    row(kOne, kZero);
    row(kE, kZero);
    for (const Element& m : {kOne, kE}) {
        row(kZero, m);
        for (const Element& l : span_lambda_grid(base, Vector::unit(2, 0), m * Vector::unit(2, 1), g)) row(l, m);
    }
    Json j;
    j["case"] = to_string(cp.label);
    j["params"] = params_json(cp);
    j["alpha1"] = to_string(a1);
    j["alpha2"] = to_string(a2);
    j["alpha"] = to_string(a);
    j["all_agree"] = all;
    j["rows"] = rows;
    Result r{all ? kOk : kViolation, ""};
    if (!o.pretty) {
        r.out = j.dump() + "\n";
        return r;
    }
    std::vector<std::vector<std::string>> t{{"lambda", "mu", "table", "direct", "agree"}};
    for (const Json& e : rows)
        t.push_back({e["lambda"], e["mu"], e["table"], e["direct"], e["agree"].get<bool>() ? "yes" : "NO"});
    r.out = "case " + j["case"].get<std::string>() + "  alpha1=" + to_string(a1) + "  alpha2=" + to_string(a2) + "  alpha=" +
            to_string(a) + "\n" + detail::table(t);
    return r;
}

struct Coefficients {
    Element l1, m1, l2, m2;
};

inline Coefficients parse_coefficients(const std::string& s) {
    Vector v = parse_vector("[" + s + "]");
    if (v.rank() != 4) throw ParseError("derived coefficients: expected l1,m1,l2,m2");
    return {v[0], v[1], v[2], v[3]};
}

// CS-ratio of (x, y); with derived coefficients, the closed forms for x' = l1 x + m1 y, y' = l2 x + m2 y
// against the pair classifier on x', y'.
inline Result cs(const Instance& in, const Options& o, const std::optional<Coefficients>& c = {},
                 const std::optional<Vector>& x = {}, const std::optional<Vector>& y = {}) {
    Group g = detail::group_of(in, o);
    auto [u, w] = detail::two_vectors(in, x, y);
    QuadraticPair p = in.pair();
    Element a1 = eval_q(p.form, u), a2 = eval_q(p.form, w), a = eval_b(p.companion, u, w);
    if (a1.is_zero() || a2.is_zero()) throw PreconditionError("CS-ratio needs q(x) and q(y) nonzero");
    PairClass pc = classify_values(a1, a2, a, g);
    Json j;
    j["case"] = to_string(case_parameters(a1, a2, a, g).label);
    j["cs_ratio"] = to_json(cs_ratio_values(a1, a2, a));
    j["refinement"] = to_string(pc.refinement);
    j["quasilinear"] = pc.quasilinear;
    if (!c) return {kOk, detail::emit(j, o)};
    for (const Element& e : {c->l1, c->m1, c->l2, c->m2})
        if (!in_group(e, g)) throw PreconditionError("derived coefficient " + to_string(e) + " outside the group");
    if (pc.quasilinear) throw PreconditionError("derived pairs need an excessive base pair");
    Vector xp = c->l1 * u + c->m1 * w, yp = c->l2 * u + c->m2 * w;
    if (xp.is_zero() || yp.is_zero()) throw PreconditionError("derived vector is zero");
    bool closed_q = derived_pair_classify(a1, a2, a, c->l1, c->m1, c->l2, c->m2, g);
    bool direct_q = classify_pair(p, xp, yp, g).quasilinear;
    Json d;
    d["x_prime"] = to_json(xp);
    d["y_prime"] = to_json(yp);
    d["quasilinear"] = closed_q;
    d["quasilinear_direct"] = direct_q;
    bool agree = closed_q == direct_q;
    Element qx = eval_q(p.form, xp), qy = eval_q(p.form, yp);
    if (derived_orientation(c->l1, c->m1, c->l2, c->m2) && !qx.is_zero() && !qy.is_zero()) {
        DerivedCs dc = derived_cs_oriented(a1, a2, a, c->l1, c->m1, c->l2, c->m2, g);
        Element direct = cs_ratio(p, xp, yp);
        d["region"] = to_string(dc.region);
        d["cs_ratio"] = to_json(dc.value);
        d["cs_ratio_direct"] = to_json(direct);
        d["within_base_bound"] = nu_leq(direct, cs_ratio_values(a1, a2, a));
        agree &= dc.value == direct && d["within_base_bound"].get<bool>();
    } else {
        d["cs_ratio"] = nullptr;
    }
    d["agree"] = agree;
    j["derived"] = d;
    return {agree ? kOk : kViolation, detail::emit(j, o)};
}

enum class MinimalMode { Decide, Enumerate, Structure };

inline std::vector<Value> parse_window(const std::string& s) {
    std::vector<Value> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(parse_value(tok));
    if (out.empty()) throw ParseError("window: expected comma-separated values");
    return out;
}

inline Result minimal(const Instance& in, const Options& o, MinimalMode mode, const std::optional<Vector>& x = {},
                      const std::string& window = "-1,0,1") {
    Group g = detail::group_of(in, o);
    QuadraticPair p = in.pair();
    const QuadraticForm& q = p.form;
    Result r;
    if (mode == MinimalMode::Decide) {
        for (const Vector& v : detail::listed_vectors(in, x)) {
            detail::check_member(v, g, "x");
            MinimalityVerdict fast = is_q_minimal(q, v, g);
            bool oracle = oracle_minimal(q, v, g).minimal;
            Json j = verdict_json(q, v, fast);
            j["oracle_agrees"] = oracle == fast.minimal;
            if (oracle != fast.minimal) r.code = kViolation;
            r.out += detail::emit(j, o);
        }
        return r;
    }
    if (mode == MinimalMode::Structure) {
        auto vs = detail::listed_vectors(in, x);
        const Vector& v = vs.front();
        detail::check_member(v, g, "x");
        MinimalityVerdict verdict = is_q_minimal(q, v, g);
        if (!verdict.minimal) {
            Json j = verdict_json(q, v, verdict);
            j["error"] = "not q-minimal";
            return {kPrecondition, detail::emit(j, o)};
        }
        BigSupportStructure s = big_support_structure(p, v, g);
        Json j = structure_json(s);
        j["x"] = to_json(v);
        return {s.holds() ? kOk : kViolation, detail::emit(j, o)};
    }
    std::vector<std::vector<std::string>> t{{"x", "q(x)", "rule", "case"}};
    for (const Vector& v : enumerate_minimal(q, parse_window(window), g)) {
        Json j;
        j["x"] = to_json(v);
        j["q_of_x"] = to_json(eval_q(q, v));
        j["rule"] = is_q_minimal(q, v, g).rule;
        j["structure"] = nullptr;
        std::size_t n = support(v).size();
        if (n >= 3 && n <= 4) {
            BigSupportStructure s = big_support_structure(p, v, g);
            j["structure"] = structure_json(s);
            if (!s.holds()) r.code = kViolation;
        }
        if (o.pretty)
            t.push_back({to_string(v), to_string(eval_q(q, v)), j["rule"], j["structure"].is_null() ? "-" : j["structure"]["case"].get<std::string>()});
        else
            r.out += j.dump() + "\n";
    }
    if (o.pretty) r.out = detail::table(t);
    return r;
}

inline Json rational_form_json(const RationalForm& f) {
    return Json{{"alpha1", to_string(f.a1)}, {"alpha", to_string(f.a)}, {"alpha2", to_string(f.a2)}};
}

inline Result stropicalize(const Json& input, const Options& o) {
    StropicalInstance s = stropical_from_json(input);
    Supervaluation sv(s.prime);
    Stropicalization st = stropicalize_form(s.form, s.base, sv);
    Json j;
    j["prime"] = s.prime;
    j["transformed"] = rational_form_json(st.transformed);
    j["form"] = to_json(st.pair.form);
    j["companion"] = to_json(st.pair.companion);
    j["classification"] = classification_report(st.pair, Vector::unit(2, 0), Vector::unit(2, 1), Group::Int);
    int code = kOk;
    if (s.shape != "general") {
        ExampleShape want = s.shape == "A" ? ExampleShape::Hyperbolic : ExampleShape::Diagonal;
        if (detect_shape(s.form) != want) throw PreconditionError("form does not have shape " + s.shape);
        ExampleCase c = example_case_label(s.form, s.base, sv);
        Json e;
        e["label"] = c.label;
        e["swapped_old"] = c.swapped_old;
        e["swapped_new"] = c.swapped_new;
        e["predicted"] = c.predicted ? to_json(*c.predicted) : Json(nullptr);
        e["quasilinear"] = c.quasilinear ? Json(*c.quasilinear) : Json(nullptr);
        e["cs_ratio"] = to_json(c.cs);
        e["cancellation"] = c.cancellation ? Json(value_to_string(*c.cancellation)) : Json(nullptr);
        bool ok = example_consistent(s.form, s.base, sv);
        e["consistent"] = ok;
        if (!ok) code = kViolation;
        j["example"] = e;
    }
    return {code, detail::emit(j, o)};
}

// One line per criterion; criteria run on up to o.jobs threads and print in id order.
inline Result selftest(const Options& o, const std::string& only, const std::string& sizes) {
    selftest::Options so;
    so.seed = o.seed;
    if (sizes == "small")
        so.sizes = selftest::Sizes::Small;
    else if (sizes != "full")
        throw ParseError("sizes: expected full or small");
    std::set<int> sel = selftest::parse_selection(only);
    std::vector<std::future<selftest::Report>> pending;
    std::vector<selftest::Report> done;
    std::size_t jobs = static_cast<std::size_t>(std::max(1, o.jobs));
    for (const auto& c : selftest::criteria()) {
        if (!sel.count(c.id)) continue;
        pending.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred, [c, so] {
            selftest::Report rep = c.run(so);
            rep.id = c.id;
            return rep;
        }));
        if (pending.size() >= jobs) {
            for (auto& f : pending) done.push_back(f.get());
            pending.clear();
        }
    }
    for (auto& f : pending) done.push_back(f.get());
    Result r;
    for (const auto& rep : done) {
        r.out += selftest::format(rep) + "\n";
        if (!rep.passed()) r.code = kViolation;
    }
    return r;
}

}  // namespace stqf::cli
