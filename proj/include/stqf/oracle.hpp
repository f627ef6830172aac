#pragma once

#include "quadratic.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace stqf {

struct MinimalityVerdict {
    bool minimal = true;
    std::optional<Vector> witness;
    std::string rule;
};

// A term c + d*l of a piecewise-monomial function of one group variable l.
struct Monomial {
    Value c;
    int d;
};

// Values of l where two monomials tie.
inline std::vector<Value> tie_points(const std::vector<Monomial>& ms) {
    std::vector<Value> r;
    for (std::size_t i = 0; i < ms.size(); ++i)
        for (std::size_t j = i + 1; j < ms.size(); ++j)
            if (ms[i].d != ms[j].d) r.push_back((ms[j].c - ms[i].c) / (ms[i].d - ms[j].d));
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    return r;
}

// A group value strictly between a < b; only for dense groups.
inline Value interior_point(const Value& a, const Value& b, Group g) {
    if (g == Group::Rat) return (a + b) / 2;
    std::int64_t scale = 1;
    for (int k = 0; k < 30; ++k, scale *= 3) {
        Value n = floor_value(a * scale) + 1;
        Value c = n / scale;
        if (c < b) return c;
    }
    throw PreconditionError("interior_point: interval too narrow");
}

// Group values meeting every region cut out by the breakpoints: each breakpoint lying in the group,
// one point inside each open interval, and one beyond either end.
inline std::vector<Value> witness_values(std::vector<Value> bps, Group g) {
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
    std::vector<Value> r;
    if (bps.empty()) return {Value(0)};
    if (is_discrete(g)) {
        for (const Value& b : bps) {
            Value f = floor_value(b), c = ceil_value(b);
            r.insert(r.end(), {f - 1, f, c, c + 1});
        }
    } else {
        r.push_back(floor_value(bps.front()) - 1);
        r.push_back(ceil_value(bps.back()) + 1);
        for (std::size_t i = 0; i < bps.size(); ++i) {
            if (in_group(bps[i], g)) r.push_back(bps[i]);
            if (i + 1 < bps.size()) r.push_back(interior_point(bps[i], bps[i + 1], g));
        }
    }
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    return r;
}

inline std::vector<Element> witness_elements(const std::vector<Value>& vals, bool with_zero = true) {
    std::vector<Element> r;
    if (with_zero) r.push_back(kZero);
    for (const Value& v : vals) {
        r.push_back(T(v));
        r.push_back(G(v));
    }
    return r;
}

namespace detail {

inline void push_mono(std::vector<Monomial>& ms, const Element& coef, const Element& a, int da, const Element& b, int db) {
    if (coef.is_zero() || a.is_zero() || b.is_zero()) return;
    ms.push_back({coef.value() + a.value() + b.value(), da + db});
}

// Monomials of l -> q(l x + y), l standing for the value of lambda.
inline std::vector<Monomial> span_monomials(const QuadraticForm& q, const Vector& x, const Vector& y) {
    std::vector<Monomial> ms;
    for (int i = 0; i < q.rank(); ++i) {
        push_mono(ms, q.diag(i), x[i], 1, x[i], 1);
        push_mono(ms, q.diag(i), y[i], 0, y[i], 0);
        for (int j = i + 1; j < q.rank(); ++j) {
            push_mono(ms, q.upper(i, j), x[i], 1, x[j], 1);
            push_mono(ms, q.upper(i, j), x[i], 1, y[j], 0);
            push_mono(ms, q.upper(i, j), y[i], 0, x[j], 1);
            push_mono(ms, q.upper(i, j), y[i], 0, y[j], 0);
        }
    }
    return ms;
}

}  // namespace detail

// lambda samples for the span of x and y; mu is pinned to the unit or e by homogeneity.
inline std::vector<Element> span_lambda_grid(const QuadraticForm& q, const Vector& x, const Vector& y, Group g) {
    std::vector<Value> bps = tie_points(detail::span_monomials(q, x, y));
    // coordinates of l x + y turn ghost where l x_i and y_i tie
    for (int i = 0; i < q.rank(); ++i)
        if (!x[i].is_zero() && !y[i].is_zero()) bps.push_back(y[i].value() - x[i].value());
    return witness_elements(witness_values(bps, g));
}

inline bool quasilinear_at(const QuadraticForm& q, const Vector& x, const Vector& y, const Element& l, const Element& m) {
    Vector lx = l * x, my = m * y;
    return eval_q(q, lx + my) == eval_q(q, lx) + eval_q(q, my);
}

// q(l x + m y) = q(l x) + q(m y) for all l, m, decided on a breakpoint-complete grid.
inline bool oracle_quasilinear(const QuadraticPair& p, const Vector& x, const Vector& y, Group g) {
    for (const Element& l : span_lambda_grid(p.form, x, y, g))
        for (const Element& m : {kOne, kE})
            if (!quasilinear_at(p.form, x, y, l, m)) return false;
    return true;
}

inline bool oracle_quasilinear_values(const Element& a1, const Element& a2, const Element& a, Group g) {
    QuadraticPair p = make_pair(QuadraticForm::binary(a1, a, a2));
    return oracle_quasilinear(p, Vector::unit(2, 0), Vector::unit(2, 1), g);
}

// Candidates c < x_i for coordinate i that could keep q(x) unchanged.
inline std::vector<Element> lowering_candidates(const QuadraticForm& q, const Vector& x, int i, const Element& target, Group g) {
    const Element& xi = x[i];
    std::vector<Element> r{kZero};
    if (xi.is_ghost()) r.push_back(xi.tangible_partner());
    std::vector<Monomial> ms;
    if (!q.diag(i).is_zero()) ms.push_back({q.diag(i).value(), 2});
    for (int j = 0; j < q.rank(); ++j)
        if (j != i && !x[j].is_zero() && !q.upper(i, j).is_zero()) ms.push_back({q.upper(i, j).value() + x[j].value(), 1});
    if (!target.is_zero()) ms.push_back({target.value(), 0});
    Vector rest = x;
    rest[i] = kZero;
    Element other = eval_q(q, rest);
    if (!other.is_zero()) ms.push_back({other.value(), 0});
    std::vector<Value> bps = tie_points(ms);
    bps.push_back(xi.value());
    for (const Value& v : witness_values(bps, g)) {
        if (!(v < xi.value())) continue;
        r.push_back(T(v));
        r.push_back(G(v));
    }
    return r;
}

// Exact q-minimality: some x' < x with q(x') = q(x) exists iff a one-coordinate lowering does.
inline MinimalityVerdict oracle_minimal(const QuadraticForm& q, const Vector& x, Group g) {
    if (x.rank() != q.rank()) throw PreconditionError("rank mismatch between form and vector");
    if (x.rank() > 8) throw PreconditionError("oracle_minimal: rank above 8");
    if (x.is_zero()) return {true, std::nullopt, "vacuous"};
    Element target = eval_q(q, x);
    for (int i = 0; i < x.rank(); ++i) {
        if (x[i].is_zero()) continue;
        for (const Element& c : lowering_candidates(q, x, i, target, g)) {
            Vector w = x;
            w[i] = c;
            if (eval_q(q, w) == target) {
                if (!vec_less(w, x)) throw std::logic_error("oracle_minimal: witness not below x");
                return {false, w, "oracle"};
            }
        }
    }
    return {true, std::nullopt, "oracle"};
}

// Companion law q(x+y) = q(x) + q(y) + b(x,y) over a coordinate grid built from coefficient thresholds.
// Exhaustive when the grid has at most `budget` pairs; otherwise an evenly strided subset of that size.
inline bool oracle_companion_valid(const QuadraticPair& p, Group g, std::size_t budget = 200000) {
    const QuadraticForm& q = p.form;
    int n = q.rank();
    if (p.companion.rank() != n) return false;
    std::vector<Value> cs;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Element& e = i == j ? q.diag(i) : q.upper(i, j);
            if (!e.is_zero()) cs.push_back(e.value());
            if (!p.companion.at(i, j).is_zero()) cs.push_back(p.companion.at(i, j).value());
        }
    std::vector<Value> bps{Value(0)};
    for (const Value& a : cs)
        for (const Value& b : cs) {
            bps.push_back(a - b);
            bps.push_back((a - b) / 2);
        }
    std::vector<Element> alpha = witness_elements(witness_values(bps, g));
    std::size_t k = alpha.size(), total = 1;
    bool overflow = false;
    for (int i = 0; i < 2 * n; ++i) {
        if (total > budget * 64) overflow = true;
        total *= k;
    }
    std::size_t count = overflow ? budget : std::min(total, budget);
    std::size_t stride = overflow || total <= budget ? 1 : total / budget;
    if (overflow) stride = 1000003;  // prime stride through the index space
    Vector x(n), y(n);
    std::size_t idx = 0;
    for (std::size_t t = 0; t < count; ++t, idx += stride) {
        std::size_t r = idx;
        for (int i = 0; i < n; ++i, r /= k) x[i] = alpha[r % k];
        for (int i = 0; i < n; ++i, r /= k) y[i] = alpha[r % k];
        if (eval_q(q, x + y) != eval_q(q, x) + eval_q(q, y) + eval_b(p.companion, x, y)) return false;
    }
    return true;
}

}  // namespace stqf
