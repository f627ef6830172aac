#pragma once

#include "trig.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <optional>
#include <string>

namespace stqf {

using Rational = boost::multiprecision::cpp_rational;
using BaseChange = std::array<std::array<Rational, 2>, 2>;

// q(x1, x2) = a1 x1^2 + a x1 x2 + a2 x2^2 over Q.
struct RationalForm {
    Rational a1, a, a2;
    friend bool operator==(const RationalForm&, const RationalForm&) = default;
};

inline Rational determinant(const BaseChange& m) { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

// Negated p-adic valuation composed with the tangible embedding.
struct Supervaluation {
    std::int64_t p = 2;

    explicit Supervaluation(std::int64_t prime = 2) : p(prime) {
        if (prime < 2) throw PreconditionError("supervaluation: prime must be at least 2");
        for (std::int64_t d = 2; d * d <= prime; ++d)
            if (prime % d == 0) throw PreconditionError("supervaluation: " + std::to_string(prime) + " is not prime");
    }

    std::int64_t padic(const Rational& a) const {
        if (a == 0) throw PreconditionError("p-adic valuation of zero");
        auto count = [this](boost::multiprecision::cpp_int n) {
            std::int64_t k = 0;
            if (n < 0) n = -n;
            while (n % p == 0) {
                n /= p;
                ++k;
            }
            return k;
        };
        return count(numerator(a)) - count(denominator(a));
    }

    Element operator()(const Rational& a) const { return a == 0 ? kZero : T(Value(-padic(a))); }
};

// Presentation of the same form in the base v1' = m00 v1 + m01 v2, v2' = m10 v1 + m11 v2.
inline RationalForm change_base(const RationalForm& f, const BaseChange& m) {
    if (determinant(m) == 0) throw PreconditionError("singular base change");
    const Rational &a11 = m[0][0], &a12 = m[0][1], &a21 = m[1][0], &a22 = m[1][1];
    return {a11 * a11 * f.a1 + a11 * a12 * f.a + a12 * a12 * f.a2,
            2 * a11 * a21 * f.a1 + (a11 * a22 + a12 * a21) * f.a + 2 * a12 * a22 * f.a2,
            a21 * a21 * f.a1 + a21 * a22 * f.a + a22 * a22 * f.a2};
}

struct Stropicalization {
    RationalForm transformed;
    QuadraticPair pair;
};

inline QuadraticPair stropicalize_presentation(const RationalForm& f, const Supervaluation& sv) {
    QuadraticForm q = QuadraticForm::binary(sv(f.a1), sv(f.a), sv(f.a2));
    Companion b(2);
    Element two = sv(Rational(2));
    b.set(0, 0, two * q.diag(0));
    b.set(1, 1, two * q.diag(1));
    b.set(0, 1, q.upper(0, 1));
    return {q, b};
}

inline Stropicalization stropicalize_form(const RationalForm& f, const BaseChange& m, const Supervaluation& sv) {
    RationalForm t = change_base(f, m);
    return {t, stropicalize_presentation(t, sv)};
}

inline bool square_equivalent(const Value& u, const Value& w, Group g) { return square_class_equal(u, w, g); }

enum class ExampleShape { Hyperbolic, Diagonal };

struct ExampleCase {
    std::string label;           // "I".."IV"
    bool swapped_old = false;    // v1, v2 interchanged
    bool swapped_new = false;    // v1', v2' interchanged
    std::optional<QuadraticForm> predicted;  // closed form, absent where nothing is claimed
    std::optional<bool> quasilinear;         // claimed nature of (e1, e2)
    std::optional<Element> cs;               // claimed CS-ratio
    std::optional<Value> cancellation;       // drop of the cross value below its summands, hyperbolic case III
};

inline ExampleShape detect_shape(const RationalForm& f) {
    if (f.a1 == 0 && f.a2 == 0 && f.a != 0) return ExampleShape::Hyperbolic;
    if (f.a == 0 && f.a1 != 0 && f.a2 != 0) return ExampleShape::Diagonal;
    throw PreconditionError("form matches neither [0, a; 0] nor [a1, 0; a2]");
}

namespace detail {

inline ExampleCase hyperbolic_case(const RationalForm& f, const BaseChange& m, const Supervaluation& sv) {
    const Rational &a11 = m[0][0], &a12 = m[0][1], &a21 = m[1][0], &a22 = m[1][1];
    Element scale = sv(f.a);
    Element c1 = sv(a11 * a22), c2 = sv(a12 * a21);
    Element d1 = scale * sv(a11 * a12), d2 = scale * sv(a21 * a22);
    ExampleCase r;
    // CS-ratio 1 / (b1 b2), where b1 b2 is the smaller of the two products over the larger
    auto set_cs = [&](const Element& small, const Element& large) {
        if (!small.is_zero()) r.cs = kE * large * inverse(small);
    };
    switch (nu_compare(c1, c2)) {
        case Ordering::Greater:
            r.label = "I";
            r.predicted = QuadraticForm::binary(d1, scale * c1, d2);
            r.quasilinear = false;
            set_cs(c2, c1);
            break;
        case Ordering::Less:
            r.label = "II";
            r.predicted = QuadraticForm::binary(d1, scale * c2, d2);
            r.quasilinear = false;
            set_cs(c1, c2);
            break;
        default: {
            r.label = "III";
            r.quasilinear = true;
            Rational cross = a11 * a22 + a12 * a21;
            r.predicted = QuadraticForm::binary(d1, scale * sv(cross), d2);
            if (cross != 0) r.cancellation = Value(-sv.padic(a11 * a22)) - Value(-sv.padic(cross));
        }
    }
    return r;
}

inline ExampleCase diagonal_case(RationalForm f, BaseChange m, const Supervaluation& sv) {
    ExampleCase r;
    auto val = [&](const Rational& a) { return sv(a); };
    auto cmp_row = [&](int i) { return nu_compare(val(m[i][0] * m[i][0] * f.a1), val(m[i][1] * m[i][1] * f.a2)); };
    auto flip_old = [&] {
        std::swap(f.a1, f.a2);
        std::swap(m[0][0], m[0][1]);
        std::swap(m[1][0], m[1][1]);
        r.swapped_old = !r.swapped_old;
    };
    auto flip_new = [&] {
        std::swap(m[0], m[1]);
        r.swapped_new = !r.swapped_new;
    };
    Ordering c1 = cmp_row(0), c2 = cmp_row(1);
    using O = Ordering;
    if (c1 == O::Less || (c1 == O::Equal && c2 == O::Less)) flip_old();
    c1 = cmp_row(0);
    c2 = cmp_row(1);
    if (c1 == O::Greater && c2 == O::Equal) flip_new();
    c1 = cmp_row(0);
    c2 = cmp_row(1);
    const Rational &a11 = m[0][0], &a12 = m[0][1], &a21 = m[1][0], &a22 = m[1][1];
    const Rational &al = f.a1, &be = f.a2;
    if (c1 == O::Greater && c2 == O::Greater) {
        r.label = "I";
        r.predicted = QuadraticForm::binary(val(a11 * a11 * al), val(2 * a11 * a21 * al), val(a21 * a21 * al));
        r.quasilinear = true;
    } else if (c1 == O::Equal && c2 == O::Greater) {
        r.label = "II";
        r.predicted = QuadraticForm::binary(val(a11 * a11 * al + a12 * a12 * be), val(2 * a11 * a21 * al), val(a21 * a21 * al));
    } else if (c1 == O::Equal && c2 == O::Equal) {
        r.label = "III";
    } else if (c1 == O::Greater && c2 == O::Less) {
        r.label = "IV";
        r.predicted = QuadraticForm::binary(val(a11 * a11 * al), val(2 * (a11 * a21 * al + a12 * a22 * be)), val(a22 * a22 * be));
        r.quasilinear = true;
    } else {
        throw std::logic_error("diagonal example: comparison pattern left unnormalized");
    }
    if (r.predicted && r.swapped_new) {
        QuadraticForm& q = *r.predicted;
        q = QuadraticForm::binary(q.diag(1), q.upper(0, 1), q.diag(0));
    }
    return r;
}

}  // namespace detail

inline ExampleCase example_case_label(const RationalForm& f, const BaseChange& m, const Supervaluation& sv) {
    if (determinant(m) == 0) throw PreconditionError("singular base change");
    return detect_shape(f) == ExampleShape::Hyperbolic ? detail::hyperbolic_case(f, m, sv) : detail::diagonal_case(f, m, sv);
}

// Agreement of the case analysis with the direct computation.
inline bool example_consistent(const RationalForm& f, const BaseChange& m, const Supervaluation& sv, Group g = Group::Int) {
    ExampleCase c = example_case_label(f, m, sv);
    Stropicalization s = stropicalize_form(f, m, sv);
    const QuadraticForm& q = s.pair.form;
    if (c.predicted && !(*c.predicted == q)) return false;
    if (c.quasilinear && classify_values(q.diag(0), q.diag(1), q.upper(0, 1), g).quasilinear != *c.quasilinear) return false;
    if (c.cs && !(cs_ratio_values(q.diag(0), q.diag(1), q.upper(0, 1)) == *c.cs)) return false;
    return true;
}

// Diagonal [a1, a2] with square-inequivalent values: every stropicalization is quasilinear.
inline bool diagonal_stropicalization_quasilinear(const RationalForm& f, const BaseChange& m, const Supervaluation& sv) {
    Stropicalization s = stropicalize_form(f, m, sv);
    const QuadraticForm& q = s.pair.form;
    return classify_values(q.diag(0), q.diag(1), q.upper(0, 1), Group::Int).quasilinear;
}

inline std::string to_string(const Rational& r) { return r.str(); }

inline Rational parse_rational(std::string_view s) {
    Value v = parse_value(s);
    return Rational(v.numerator()) / Rational(v.denominator());
}

}  // namespace stqf
