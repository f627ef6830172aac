#pragma once

#include "oracle.hpp"
#include "trig.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <vector>

namespace stqf {

// q(x) = q(x_1) + ... with zero companion, decided pairwise on coordinate planes.
inline bool form_is_quasilinear(const QuadraticForm& q, Group g) {
    for (int i = 0; i < q.rank(); ++i)
        for (int j = i + 1; j < q.rank(); ++j)
            if (!classify_values(q.diag(i), q.diag(j), q.upper(i, j), g).quasilinear) return false;
    return true;
}

inline MinimalityVerdict is_q_minimal_rank1(const Element& a1, const Element& l) {
    if (l.is_zero()) throw PreconditionError("rank-1 minimality: zero coordinate");
    if (a1.is_zero()) return {false, Vector(1), "isotropic"};
    if (a1.is_tangible()) return {true, std::nullopt, "rank1/tangible-coefficient"};
    if (l.is_tangible()) return {true, std::nullopt, "rank1/ghost-coefficient-tangible-coordinate"};
    return {false, Vector{l.tangible_partner()}, "rank1/ghost-coefficient-ghost-coordinate"};
}

enum class BinaryShape { DiagonalTie, FirstDiagonalCrossTie, SecondDiagonalCrossTie, CrossDominant, SingleDiagonal, Isotropic };

inline const char* to_string(BinaryShape s) {
    switch (s) {
        case BinaryShape::DiagonalTie: return "binary/diagonal-tie";
        case BinaryShape::FirstDiagonalCrossTie: return "binary/first-diagonal-cross-tie";
        case BinaryShape::SecondDiagonalCrossTie: return "binary/second-diagonal-cross-tie";
        case BinaryShape::CrossDominant: return "binary/cross-dominant";
        case BinaryShape::SingleDiagonal: return "binary/single-diagonal";
        default: return "isotropic";
    }
}

// Which of the three terms of a1 x1^2 + b x1 x2 + a2 x2^2 are nu-dominant.
inline BinaryShape binary_shape(const Element& t1, const Element& tc, const Element& t2) {
    Element m = t1 + tc + t2;
    if (m.is_zero()) return BinaryShape::Isotropic;
    bool d1 = nu_eq(t1, m), dc = nu_eq(tc, m), d2 = nu_eq(t2, m);
    if (d1 && d2) return BinaryShape::DiagonalTie;
    if (d1 && dc) return BinaryShape::FirstDiagonalCrossTie;
    if (d2 && dc) return BinaryShape::SecondDiagonalCrossTie;
    if (dc) return BinaryShape::CrossDominant;
    return BinaryShape::SingleDiagonal;
}

// Verdict for x = (x1, x2) with full support from the dominant terms alone; no witness.
inline MinimalityVerdict binary_minimal_rule(const Element& a1, const Element& b, const Element& a2, const Element& x1,
                                             const Element& x2) {
    if (x1.is_zero() || x2.is_zero()) throw PreconditionError("binary minimality: vector without full support");
    BinaryShape s = binary_shape(a1 * square(x1), b * x1 * x2, a2 * square(x2));
    bool ok = false;
    switch (s) {
        case BinaryShape::DiagonalTie:
            ok = a1.is_tangible() && a2.is_tangible() && x1.is_tangible() && x2.is_tangible();
            break;
        // A ghost x2 can be lowered to its tangible partner without changing the ghost tie, whatever b is.
        case BinaryShape::FirstDiagonalCrossTie: ok = a1.is_tangible() && x1.is_tangible() && x2.is_tangible(); break;
        case BinaryShape::SecondDiagonalCrossTie: ok = a2.is_tangible() && x2.is_tangible() && x1.is_tangible(); break;
        case BinaryShape::CrossDominant: ok = int(b.is_ghost()) + int(x1.is_ghost()) + int(x2.is_ghost()) <= 1; break;
        default: ok = false;
    }
    return {ok, std::nullopt, to_string(s)};
}

inline MinimalityVerdict is_q_minimal_binary(const QuadraticForm& q, const Vector& x, Group g) {
    if (q.rank() != 2 || x.rank() != 2) throw PreconditionError("binary minimality: rank must be 2");
    MinimalityVerdict v = binary_minimal_rule(q.diag(0), q.upper(0, 1), q.diag(1), x[0], x[1]);
    if (!v.minimal) {
        MinimalityVerdict o = oracle_minimal(q, x, g);
        if (o.minimal) throw std::logic_error("binary minimality: no witness for a non-minimal verdict");
        v.witness = o.witness;
    }
    return v;
}

// Minimal and g-anisotropic at once, for full-support binary x.
inline bool binary_minimal_g_anisotropic(const Element& a1, const Element& b, const Element& a2, const Element& x1,
                                         const Element& x2) {
    return b.is_tangible() && x1.is_tangible() && x2.is_tangible() &&
           nu_less(a1 * square(x1) + a2 * square(x2), b * x1 * x2);
}

// Minimality of l e1 + m e2 for an excessive binary form, read off from the case parameters.
// Returns nullopt when the base pair is quasilinear (the diagonal criterion then applies).
inline std::optional<bool> excessive_binary_minimal(const Element& a1, const Element& a2, const Element& a,
                                                    const Element& l, const Element& m, Group g) {
    if (l.is_zero() || m.is_zero()) throw PreconditionError("excessive binary minimality: zero coordinate");
    if (!nu_less(a1 * a2, square(a))) return std::nullopt;
    auto ghosts = [](std::initializer_list<Element> es) {
        int n = 0;
        for (const Element& e : es) n += e.is_ghost();
        return n;
    };
    if (a1.is_zero() && a2.is_zero()) return ghosts({a, l, m}) <= 1;
    if (!a1.is_zero() && !a2.is_zero()) {
        CaseParameters p = case_parameters(a1, a2, a, g);
        if (nu_eq(l, *p.zeta * m)) return a1.is_tangible() && l.is_tangible() && m.is_tangible();
        if (nu_eq(l, *p.eta * m)) return a2.is_tangible() && m.is_tangible() && l.is_tangible();
        if (nu_less(*p.eta * m, l) && nu_less(l, *p.zeta * m)) return ghosts({a, l, m}) <= 1;
        return false;
    }
    // One diagonal coefficient vanishes; orient so that it is the second.
    const Element &b1 = a1.is_zero() ? a2 : a1, &u = a1.is_zero() ? m : l, &w = a1.is_zero() ? l : m;
    Element zeta = T(a.value() - b1.value());
    if (nu_eq(u, zeta * w)) return b1.is_tangible() && u.is_tangible() && w.is_tangible();
    if (nu_less(u, zeta * w)) return ghosts({a, u, w}) <= 1;
    return false;
}

// Exact decision: closed-form rules on supports of size one and two, the lowering oracle beyond.
inline MinimalityVerdict is_q_minimal(const QuadraticForm& q, const Vector& x, Group g) {
    if (x.rank() != q.rank()) throw PreconditionError("rank mismatch between form and vector");
    if (x.is_zero()) return {true, std::nullopt, "vacuous"};
    if (eval_q(q, x).is_zero()) return {false, Vector(x.rank()), "isotropic"};
    IndexSet s = support(x);
    if (s.size() == 1) {
        int i = s[0];
        MinimalityVerdict v = is_q_minimal_rank1(q.diag(i), x[i]);
        if (v.witness) v.witness = Vector::unit(x.rank(), i, (*v.witness)[0]);
        return v;
    }
    if (s.size() == 2) {
        int i = s[0], j = s[1];
        MinimalityVerdict v = binary_minimal_rule(q.diag(i), q.upper(i, j), q.diag(j), x[i], x[j]);
        if (!v.minimal) {
            MinimalityVerdict o = oracle_minimal(q, x, g);
            if (o.minimal) throw std::logic_error("is_q_minimal: no witness for a non-minimal verdict");
            v.witness = o.witness;
        }
        return v;
    }
    return oracle_minimal(q, x, g);
}

// Prop-style support bound for a q-minimal x.
inline bool support_bound_check(const QuadraticForm& q, const Vector& x, Group g) {
    std::size_t n = support(x).size();
    if (n == 0) return true;
    Element v = eval_q(q, x);
    bool ql = form_is_quasilinear(q, g);
    if (v.is_tangible()) return ql ? n == 1 : n <= 2;
    return ql ? n <= 2 : n <= 4;
}

// ---------------------------------------------------------------------------------------------------------------
// Big support

enum class BigCase { A, B, C, D };

inline const char* to_string(BigCase c) {
    static const char* names[] = {"A", "B", "C", "D"};
    return names[static_cast<int>(c)];
}

struct BigSupportChecks {
    bool cross_below = false;      // b(x(J), x(K)) <_nu q(x)
    bool cross_equal = false;      // b(x(J), x(K)) = q(x)
    bool outer_below = false;      // b(x(J\K), x(K\J)) <_nu q(x)
    bool outer_tangible_tie = false;  // b(x(J\K), x(K\J)) tangible and ~_nu q(x)
    bool all_pairs_equal = false;  // every pair of 2-subsets gives b(x(J), x(K)) = q(x)
    bool all_pairs_outer_tangible_tie = false;
    bool join_recovers_x = false;  // x = x(J) v x(K)
    bool parts_ok = false;         // x(J), x(K) q-minimal, g-anisotropic, q-values ~_nu q(x)
};

struct BigSupportStructure {
    BigCase kind = BigCase::A;
    IndexSet J, K;  // zero-based
    BigSupportChecks checks;
    int cases_matched = 0;  // how many of A-D hold; exactly one expected
    bool holds() const {
        if (cases_matched != 1 || !checks.join_recovers_x || !checks.parts_ok) return false;
        switch (kind) {
            case BigCase::A:
            case BigCase::D: return checks.cross_below;
            case BigCase::B: return checks.cross_equal && checks.outer_below;
            default: return checks.all_pairs_equal && checks.all_pairs_outer_tangible_tie;
        }
    }
};

namespace detail {

inline std::vector<IndexSet> subsets_of_size(const IndexSet& s, std::size_t k) {
    std::vector<IndexSet> r;
    std::size_t n = s.size();
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcount(mask)) != k) continue;
        IndexSet t;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) t.push_back(s[i]);
        r.push_back(t);
    }
    return r;
}

}  // namespace detail

// Piece x(J) must be q-minimal and g-anisotropic with q(x(J)) ~_nu q(x).
inline bool good_piece(const QuadraticForm& q, const Vector& x, const IndexSet& J, Group g) {
    Vector y = restrict(x, J);
    Element v = eval_q(q, y);
    return v.is_tangible() && nu_eq(v, eval_q(q, x)) && oracle_minimal(q, y, g).minimal;
}

inline BigSupportStructure big_support_structure(const QuadraticPair& p, const Vector& x, Group g) {
    const QuadraticForm& q = p.form;
    IndexSet s = support(x);
    if (s.size() < 3 || s.size() > 4) throw PreconditionError("big support: support size must be 3 or 4");
    MinimalityVerdict mv = oracle_minimal(q, x, g);
    if (!mv.minimal) throw PreconditionError("big support: x is not q-minimal");
    Element qx = eval_q(q, x);
    auto pairs = detail::subsets_of_size(s, 2);
    std::vector<IndexSet> good_pairs;
    for (const IndexSet& J : pairs)
        if (good_piece(q, x, J, g)) good_pairs.push_back(J);

    BigSupportStructure r;
    bool caseA = false, caseB = false, caseC = false, caseD = false;
    IndexSet aJ, aK;
    if (s.size() == 3) {
        int partitions = 0;
        for (int i : s) {
            IndexSet J{i}, K = set_difference(s, J);
            if (good_piece(q, x, J, g) && good_piece(q, x, K, g)) {
                ++partitions;
                aJ = J;
                aK = K;
            }
        }
        caseA = partitions == 1;
        caseB = good_pairs.size() == 2;
        caseC = good_pairs.size() == 3;
    } else {
        caseD = good_pairs.size() == 2 && set_intersection(good_pairs[0], good_pairs[1]).empty();
    }
    r.cases_matched = int(caseA) + int(caseB) + int(caseC) + int(caseD);
    if (caseA) {
        r.kind = BigCase::A;
        r.J = aJ;
        r.K = aK;
    } else if (caseB || caseC || caseD) {
        r.kind = caseB ? BigCase::B : caseC ? BigCase::C : BigCase::D;
        r.J = good_pairs[0];
        r.K = good_pairs[1];
    } else {
        return r;
    }
    auto cross = [&](const IndexSet& J, const IndexSet& K) { return eval_b(p.companion, restrict(x, J), restrict(x, K)); };
    Element c = cross(r.J, r.K);
    r.checks.cross_below = nu_less(c, qx);
    r.checks.cross_equal = c == qx;
    Element o = cross(set_difference(r.J, r.K), set_difference(r.K, r.J));
    r.checks.outer_below = nu_less(o, qx);
    r.checks.outer_tangible_tie = o.is_tangible() && nu_eq(o, qx);
    r.checks.join_recovers_x = vec_sup(restrict(x, r.J), restrict(x, r.K)) == x;
    r.checks.parts_ok = good_piece(q, x, r.J, g) && good_piece(q, x, r.K, g);
    if (r.kind == BigCase::C) {
        r.checks.all_pairs_equal = r.checks.all_pairs_outer_tangible_tie = true;
        for (std::size_t a = 0; a < pairs.size(); ++a)
            for (std::size_t b = a + 1; b < pairs.size(); ++b) {
                const IndexSet &J = pairs[a], &K = pairs[b];
                r.checks.all_pairs_equal &= cross(J, K) == qx;
                Element w = cross(set_difference(J, K), set_difference(K, J));
                r.checks.all_pairs_outer_tangible_tie &= w.is_tangible() && nu_eq(w, qx);
            }
    }
    return r;
}

// ---------------------------------------------------------------------------------------------------------------
// Joins of two small minimal vectors

enum class JoinPrediction { MinimalByDisjointJoin, MinimalByOverlapJoin, NoPrediction };

inline const char* to_string(JoinPrediction j) {
    switch (j) {
        case JoinPrediction::MinimalByDisjointJoin: return "MinimalByDisjointJoin";
        case JoinPrediction::MinimalByOverlapJoin: return "MinimalByOverlapJoin";
        default: return "NoPrediction";
    }
}

inline JoinPrediction join_minimality_predict(const QuadraticPair& p, const Vector& y, const Vector& z, Group g) {
    const QuadraticForm& q = p.form;
    IndexSet J = support(y), K = support(z);
    Element qy = eval_q(q, y), qz = eval_q(q, z);
    if (J.empty() || K.empty() || J.size() > 2 || K.size() > 2) throw PreconditionError("join: supports must have size 1 or 2");
    if (!qy.is_tangible() || !qz.is_tangible()) throw PreconditionError("join: y and z must be g-anisotropic");
    if (!oracle_minimal(q, y, g).minimal || !oracle_minimal(q, z, g).minimal) throw PreconditionError("join: y and z must be q-minimal");
    IndexSet I = set_union(J, K);
    bool tie = nu_eq(qy, qz);
    if (tie && nu_less(eval_b(p.companion, y, z), qy)) {
        bool shape3 = I.size() == 3 && ((J.size() == 1 && K.size() == 2) || (J.size() == 2 && K.size() == 1));
        bool shape4 = I.size() == 4 && J.size() == 2 && K.size() == 2;
        if (shape3 || shape4) return JoinPrediction::MinimalByDisjointJoin;
    }
    if (I.size() == 3 && J.size() == 2 && K.size() == 2) {
        IndexSet common = set_intersection(J, K);
        if (restrict(y, common) == restrict(z, common) && tie) {
            Element o = eval_b(p.companion, restrict(y, set_difference(J, K)), restrict(z, set_difference(K, J)));
            if (nu_less(o, qy) || (o.is_tangible() && nu_eq(o, qy))) return JoinPrediction::MinimalByOverlapJoin;
        }
    }
    return JoinPrediction::NoPrediction;
}

// ---------------------------------------------------------------------------------------------------------------
// Pairs y < x of minimal vectors with q(y) ~_nu q(x)

enum class PairRelation { SameSingleton, SamePairGhosted, SingletonRestriction, PairRestriction };

inline const char* to_string(PairRelation r) {
    switch (r) {
        case PairRelation::SameSingleton: return "Case1";
        case PairRelation::SamePairGhosted: return "Case2";
        case PairRelation::SingletonRestriction: return "Case3";
        default: return "Case4";
    }
}

struct PairRelationReport {
    PairRelation relation = PairRelation::SameSingleton;
    bool layers_ok = false;       // q(y) tangible, q(x) ghost
    bool conclusion_ok = false;   // the shape-specific conclusion
    bool holds() const { return layers_ok && conclusion_ok; }
};

inline PairRelationReport minimal_pair_relation(const QuadraticForm& q, const Vector& x, const Vector& y, Group g) {
    if (!vec_less(y, x)) throw PreconditionError("pair relation: y < x required");
    Element qx = eval_q(q, x), qy = eval_q(q, y);
    if (!nu_eq(qx, qy)) throw PreconditionError("pair relation: q(y) ~_nu q(x) required");
    if (!oracle_minimal(q, x, g).minimal || !oracle_minimal(q, y, g).minimal)
        throw PreconditionError("pair relation: x and y must be q-minimal");
    IndexSet sx = support(x), sy = support(y);
    PairRelationReport r;
    r.layers_ok = qy.is_tangible() && qx.is_ghost();
    if (sy.size() == 1 && sx.size() == 1) {
        r.relation = PairRelation::SameSingleton;
        r.conclusion_ok = x == kE * y;
    } else if (sy.size() == 2 && sx.size() == 2) {
        r.relation = PairRelation::SamePairGhosted;
        r.conclusion_ok = vec_less(y, x) && vec_less(x, kE * y);
    } else if (sy.size() == 1 && sx.size() >= 2) {
        r.relation = PairRelation::SingletonRestriction;
        r.conclusion_ok = y == restrict(x, sy);
    } else if (sy.size() == 2 && sx.size() >= 3) {
        r.relation = PairRelation::PairRestriction;
        r.conclusion_ok = y == restrict(x, sy);
    } else {
        throw std::logic_error("pair relation: support shape outside every case");
    }
    return r;
}

// ---------------------------------------------------------------------------------------------------------------
// Enumeration

inline bool canonical_less(const Vector& a, const Vector& b) {
    for (int i = 0; i < a.rank(); ++i) {
        const Element &x = a[i], &y = b[i];
        if (x == y) continue;
        if (x.kind() != y.kind()) return x.kind() < y.kind();
        return x.value() < y.value();
    }
    return false;
}

inline std::vector<Element> window_alphabet(const std::vector<Value>& window) {
    if (window.empty()) throw PreconditionError("enumerate: empty window");
    return witness_elements(window);
}

// All vectors over {0} and {T(v), G(v) : v in window} that are q-minimal, canonically sorted.
inline std::vector<Vector> enumerate_minimal(const QuadraticForm& q, const std::vector<Value>& window, Group g,
                                             bool include_zero = false) {
    if (q.rank() > 4) throw PreconditionError("enumerate: rank above 4");
    std::vector<Element> alpha = window_alphabet(window);
    std::size_t k = alpha.size(), total = 1;
    for (int i = 0; i < q.rank(); ++i) total *= k;
    std::vector<Vector> out;
    Vector x(q.rank());
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t r = idx;
        for (int i = 0; i < q.rank(); ++i, r /= k) x[i] = alpha[r % k];
        if (x.is_zero() && !include_zero) continue;
        if (is_q_minimal(q, x, g).minimal) out.push_back(x);
    }
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
}

}  // namespace stqf
