#pragma once

#include "quadratic.hpp"

#include <array>
#include <optional>
#include <string>

namespace stqf {

enum class Refinement { CS, WeaklyCS, AlmostCSOnly, Excessive };
enum class Rigidity { Rigid, NuRigid, Unknown };

struct PairClass {
    bool quasilinear = true;
    Refinement refinement = Refinement::WeaklyCS;
    Rigidity rigidity = Rigidity::Unknown;
};

enum class CaseLabel { IA, IB, IIA, IIB, IIIA, IIIB, IIIC, IV, V, VI, VII };

inline constexpr CaseLabel kAllCases[] = {CaseLabel::IA,   CaseLabel::IB,   CaseLabel::IIA, CaseLabel::IIB,
                                          CaseLabel::IIIA, CaseLabel::IIIB, CaseLabel::IIIC, CaseLabel::IV,
                                          CaseLabel::V,    CaseLabel::VI,   CaseLabel::VII};

struct CaseParameters {
    CaseLabel label = CaseLabel::VII;
    // Case IV with alpha1 = 0 and alpha2 != 0: the roles of x and y are exchanged.
    bool swapped = false;
    std::optional<Element> zeta, eta;
    std::optional<Value> xi;  // half-value; a group value iff alpha1*alpha2 is a nu-square
    std::optional<Element> sigma, tau;
};

inline const char* to_string(Refinement r) {
    switch (r) {
        case Refinement::CS: return "CS";
        case Refinement::WeaklyCS: return "WeaklyCS";
        case Refinement::AlmostCSOnly: return "AlmostCSOnly";
        default: return "Excessive";
    }
}

inline const char* to_string(Rigidity r) {
    switch (r) {
        case Rigidity::Rigid: return "Rigid";
        case Rigidity::NuRigid: return "NuRigid";
        default: return "Unknown";
    }
}

inline const char* to_string(CaseLabel c) {
    static const char* names[] = {"IA", "IB", "IIA", "IIB", "IIIA", "IIIB", "IIIC", "IV", "V", "VI", "VII"};
    return names[static_cast<int>(c)];
}

inline CaseLabel parse_case_label(std::string_view s) {
    for (CaseLabel c : kAllCases)
        if (s == to_string(c)) return c;
    throw ParseError("unknown case label '" + std::string(s) + "'");
}

inline Element nu_ratio(const Element& l, const Element& m) {
    if (m.is_zero()) throw PreconditionError("nu_ratio: zero denominator");
    if (l.is_zero()) return kZero;
    return G(l.value() - m.value());
}

// Classification of the pair (x, y) from a1 = q(x), a2 = q(y), a = b(x, y).
inline PairClass classify_values(const Element& a1, const Element& a2, const Element& a, Group g) {
    PairClass r;
    Element b2 = square(a), prod = a1 * a2;
    if (a.is_zero()) {
        r.refinement = prod.is_zero() ? Refinement::WeaklyCS : Refinement::CS;
        return r;
    }
    if (!is_discrete(g)) {
        r.quasilinear = nu_leq(b2, prod);
        if (!r.quasilinear) r.rigidity = Rigidity::Rigid;
    } else {
        Element shifted = shift(prod, Value(1));  // pi^{-1} q(x) q(y)
        Ordering c = nu_compare(b2, shifted);
        r.quasilinear = c == Ordering::Less || (c == Ordering::Equal && a1.is_ghost() && a2.is_ghost());
        if (!r.quasilinear) r.rigidity = c == Ordering::Greater ? Rigidity::Rigid : Rigidity::NuRigid;
    }
    if (!r.quasilinear)
        r.refinement = Refinement::Excessive;
    else if (nu_less(b2, prod))
        r.refinement = Refinement::CS;
    else if (nu_leq(b2, prod))
        r.refinement = Refinement::WeaklyCS;
    else
        r.refinement = Refinement::AlmostCSOnly;
    return r;
}

inline PairClass classify_pair(const QuadraticPair& p, const Vector& x, const Vector& y, Group g) {
    return classify_values(eval_q(p.form, x), eval_q(p.form, y), eval_b(p.companion, x, y), g);
}

inline Element cs_ratio_values(const Element& a1, const Element& a2, const Element& a) {
    if (a1.is_zero() || a2.is_zero()) throw PreconditionError("cs_ratio: isotropic vector");
    if (a.is_zero()) return kZero;
    return G(2 * a.value() - a1.value() - a2.value());
}

inline Element cs_ratio(const QuadraticPair& p, const Vector& x, const Vector& y) {
    return cs_ratio_values(eval_q(p.form, x), eval_q(p.form, y), eval_b(p.companion, x, y));
}

inline CaseParameters case_parameters(const Element& a1, const Element& a2, const Element& a, Group g) {
    CaseParameters p;
    auto set_xi = [&] {
        p.xi = (a2.value() - a1.value()) / 2;
        if (is_discrete(g) && !is_integral(*p.xi)) {
            p.sigma = T(ceil_value(*p.xi));
            p.tau = T(floor_value(*p.xi));
        }
    };
    if (!a1.is_zero() && !a2.is_zero() && !a.is_zero()) {
        p.zeta = T(a.value() - a1.value());
        p.eta = T(a2.value() - a.value());
        set_xi();
        Value twice = 2 * a.value(), sum = a1.value() + a2.value();
        if (is_nu_square(sum, g))
            p.label = twice > sum ? CaseLabel::IA : CaseLabel::IB;
        else if (!is_discrete(g))
            p.label = twice > sum ? CaseLabel::IIA : CaseLabel::IIB;
        else if (twice > sum + 1)
            p.label = CaseLabel::IIIA;
        else if (twice == sum + 1)
            p.label = CaseLabel::IIIB;
        else
            p.label = CaseLabel::IIIC;
        return p;
    }
    if (!a.is_zero()) {
        if (a1.is_zero() && a2.is_zero()) {
            p.label = CaseLabel::V;
        } else {
            p.label = CaseLabel::IV;
            p.swapped = a1.is_zero();
            p.zeta = T(a.value() - (p.swapped ? a2 : a1).value());
        }
        return p;
    }
    if (a1.is_zero() && a2.is_zero()) {
        p.label = CaseLabel::VII;
        return p;
    }
    p.label = CaseLabel::VI;
    if (!a1.is_zero() && !a2.is_zero()) set_xi();
    return p;
}

namespace detail {

// Compares l against the half-value xi shifted by the value of m; m nonzero or l nonzero.
inline Ordering compare_half(const Element& l, const Value& xi, const Element& m) {
    if (m.is_zero()) return Ordering::Greater;
    if (l.is_zero()) return Ordering::Less;
    Value rhs = xi + m.value();
    if (l.value() < rhs) return Ordering::Less;
    if (rhs < l.value()) return Ordering::Greater;
    return Ordering::Equal;
}

inline Element three_row(const Element& l, const Element& m, const Element& a1, const Element&, const Element& a,
                         const Element& z) {
    switch (nu_compare(l, z * m)) {
        case Ordering::Greater: return square(l) * a1;
        case Ordering::Equal: return (square(l) * a1).nu();
        default: return l * m * a;
    }
}

}  // namespace detail

// Piecewise value of q(l x + m y) from the case tables.
inline Element q_value_table(const CaseParameters& p, const Element& a1, const Element& a2, const Element& a,
                             const Element& l, const Element& m) {
    if (l.is_zero() && m.is_zero()) throw PreconditionError("q_value_table: lambda and mu both zero");
    switch (p.label) {
        case CaseLabel::IA:
        case CaseLabel::IIA:
        case CaseLabel::IIIA: {
            Ordering upper = nu_compare(l, *p.zeta * m);
            if (upper == Ordering::Greater) return square(l) * a1;
            if (upper == Ordering::Equal) return (square(l) * a1).nu();
            Ordering lower = nu_compare(l, *p.eta * m);
            if (lower == Ordering::Greater) return l * m * a;
            if (lower == Ordering::Equal) return (square(m) * a2).nu();
            return square(m) * a2;
        }
        case CaseLabel::IIIB: {
            Ordering upper = nu_compare(l, *p.sigma * m);
            if (upper == Ordering::Greater) return square(l) * a1;
            if (upper == Ordering::Equal) return (square(l) * a1).nu();
            Ordering lower = nu_compare(l, *p.tau * m);
            if (lower == Ordering::Equal) return (square(m) * a2).nu();
            if (lower == Ordering::Less) return square(m) * a2;
            throw PreconditionError("q_value_table: lambda outside the discrete group");
        }
        case CaseLabel::IB:
        case CaseLabel::IIB:
        case CaseLabel::IIIC:
        case CaseLabel::VI: {
            if (!p.xi) return square(l) * a1 + square(m) * a2;
            switch (detail::compare_half(l, *p.xi, m)) {
                case Ordering::Greater: return square(l) * a1;
                case Ordering::Equal: return (square(l) * a1).nu();
                default: return square(m) * a2;
            }
        }
        case CaseLabel::IV:
            if (p.swapped) return detail::three_row(m, l, a2, a1, a, *p.zeta);
            return detail::three_row(l, m, a1, a2, a, *p.zeta);
        case CaseLabel::V: return l * m * a;
        default: return kZero;
    }
}

namespace detail {

struct DerivedSetup {
    Element a1, a2, a, l1, m1, l2, m2;
    CaseParameters p;
};

// Brings alpha1 = 0 != alpha2 into the alpha1 != 0 shape and checks the shared preconditions.
inline DerivedSetup derived_setup(Element a1, Element a2, Element a, Element l1, Element m1, Element l2, Element m2,
                                  Group g) {
    if (a1.is_zero() && !a2.is_zero()) {
        std::swap(a1, a2);
        std::swap(l1, m1);
        std::swap(l2, m2);
        std::swap(l1, l2);
        std::swap(m1, m2);
    }
    if (classify_values(a1, a2, a, g).quasilinear) throw PreconditionError("derived pair: base pair is not excessive");
    if ((l1.is_zero() && m1.is_zero()) || (l2.is_zero() && m2.is_zero()))
        throw PreconditionError("derived pair: zero vector");
    if (!nu_greater(l1 * m2, l2 * m1)) throw PreconditionError("derived pair: orientation l1*m2 >_nu l2*m1 fails");
    return {a1, a2, a, l1, m1, l2, m2, case_parameters(a1, a2, a, g)};
}

}  // namespace detail

// Quasilinearity of (x', y') = (l1 x + m1 y, l2 x + m2 y) for an excessive base pair (x, y).
inline bool derived_pair_quasilinear(const Element& a1_, const Element& a2_, const Element& a_, const Element& l1_,
                                     const Element& m1_, const Element& l2_, const Element& m2_, Group g) {
    auto s = detail::derived_setup(a1_, a2_, a_, l1_, m1_, l2_, m2_, g);
    bool n1 = !s.a1.is_zero(), n2 = !s.a2.is_zero();
    if (n1 && nu_geq(s.l2, *s.p.zeta * s.m2)) return true;
    if (n1 && n2 && nu_leq(s.l1, *s.p.eta * s.m1)) return true;
    // Ties of both coefficients only help when no nu-value lies strictly between eta and zeta.
    if (n1 && n2 && s.p.label == CaseLabel::IIIB && nu_leq(s.l1, *s.p.zeta * s.m1) && nu_geq(s.l2, *s.p.eta * s.m2))
        return true;
    if (is_discrete(g)) {
        // Boundary b(x',y')^2 ~ pi^{-1} q(x') q(y') with both q-values ghost.
        Element q1 = q_value_table(s.p, s.a1, s.a2, s.a, s.l1, s.m1), q2 = q_value_table(s.p, s.a1, s.a2, s.a, s.l2, s.m2);
        Element b = s.l1 * s.m2 * s.a;
        if (q1.is_ghost() && q2.is_ghost() && nu_eq(square(b), shift(q1 * q2, Value(1)))) return true;
    }
    return false;
}

// (l1, m1, l2, m2) with l1 m2 >_nu l2 m1, swapping x' and y' when needed; nullopt on a nu-tie.
inline std::optional<std::array<Element, 4>> derived_orientation(const Element& l1, const Element& m1, const Element& l2,
                                                                 const Element& m2) {
    switch (nu_compare(l1 * m2, l2 * m1)) {
        case Ordering::Greater: return std::array<Element, 4>{l1, m1, l2, m2};
        case Ordering::Less: return std::array<Element, 4>{l2, m2, l1, m1};
        default: return std::nullopt;
    }
}

// Quasilinearity of (x', y') in either orientation; nu-ties go straight to the pair classifier.
inline bool derived_pair_classify(const Element& a1, const Element& a2, const Element& a, const Element& l1,
                                  const Element& m1, const Element& l2, const Element& m2, Group g) {
    auto o = derived_orientation(l1, m1, l2, m2);
    if (!o) {
        QuadraticForm q = QuadraticForm::binary(a1, a, a2);
        return classify_pair(make_pair(q), Vector{l1, m1}, Vector{l2, m2}, g).quasilinear;
    }
    auto [u1, v1, u2, v2] = *o;
    return derived_pair_quasilinear(a1, a2, a, u1, v1, u2, v2, g);
}

enum class DerivedRegion { A, B, C, D, E, Base, F1, F2, F3, G };

inline const char* to_string(DerivedRegion r) {
    static const char* names[] = {"a", "b", "c", "d", "e", "base", "f1", "f2", "f3", "g"};
    return names[static_cast<int>(r)];
}

struct DerivedCs {
    Element value;
    DerivedRegion region;
};

// Closed-form CS(x', y') for an excessive base pair.
inline DerivedCs derived_cs(const Element& a1_, const Element& a2_, const Element& a_, const Element& l1_,
                            const Element& m1_, const Element& l2_, const Element& m2_, Group g) {
    auto s = detail::derived_setup(a1_, a2_, a_, l1_, m1_, l2_, m2_, g);
    const CaseParameters& p = s.p;
    if (q_value_table(p, s.a1, s.a2, s.a, s.l1, s.m1).is_zero() || q_value_table(p, s.a1, s.a2, s.a, s.l2, s.m2).is_zero())
        throw PreconditionError("derived_cs: isotropic vector");
    auto v = [](const Element& e) { return e.value(); };
    const Element &l1 = s.l1, &m1 = s.m1, &l2 = s.l2, &m2 = s.m2;
    if (p.label == CaseLabel::V) return {G(v(l1) + v(m2) - v(m1) - v(l2)), DerivedRegion::G};
    const Element& z = *p.zeta;
    if (p.label == CaseLabel::IV) {
        if (nu_geq(l2, z * m2)) return {G(2 * (v(m2) + v(z) - v(l2))), DerivedRegion::F1};
        if (nu_geq(l1, z * m1)) return {G(v(z) + v(m2) - v(l2)), DerivedRegion::F2};
        return {G(v(l1) + v(m2) - v(m1) - v(l2)), DerivedRegion::F3};
    }
    const Element& h = *p.eta;
    if (nu_geq(l2, z * m2)) return {G(2 * (v(m2) + v(z) - v(l2))), DerivedRegion::A};
    if (nu_leq(l1, h * m1)) return {G(2 * (v(l1) - v(m1) - v(h))), DerivedRegion::B};
    bool l1_low = nu_leq(l1, z * m1), l2_high = nu_geq(l2, h * m2);
    if (l1_low && l2_high) return {G(v(l1) - v(m1) - v(l2) + v(m2)), DerivedRegion::C};
    if (l2_high) return {G(v(z) + v(m2) - v(l2)), DerivedRegion::D};
    if (l1_low) return {G(v(l1) - v(m1) - v(h)), DerivedRegion::E};
    return {G(v(z) - v(h)), DerivedRegion::Base};
}

inline DerivedCs derived_cs_oriented(const Element& a1, const Element& a2, const Element& a, const Element& l1,
                                     const Element& m1, const Element& l2, const Element& m2, Group g) {
    auto o = derived_orientation(l1, m1, l2, m2);
    if (!o) throw PreconditionError("derived_cs: x' and y' have nu-equivalent orientation products");
    auto [u1, v1, u2, v2] = *o;
    return derived_cs(a1, a2, a, u1, v1, u2, v2, g);
}

}  // namespace stqf
