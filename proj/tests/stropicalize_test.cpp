#include "stqf/stropicalize.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace stqf;

namespace {

BaseChange base(int a11, int a12, int a21, int a22) { return {{{Rational(a11), Rational(a12)}, {Rational(a21), Rational(a22)}}}; }

}  // namespace

TEST(Stropicalize, Supervaluation) {
    Supervaluation two(2);
    EXPECT_EQ(two(Rational(3)), T(0));
    EXPECT_EQ(two(Rational(4)), T(-2));
    EXPECT_EQ(two(Rational(0)), kZero);
    EXPECT_EQ(two(Rational(3) / 8), T(3));
    EXPECT_EQ(two(Rational(2)), T(-1));
    EXPECT_EQ(Supervaluation(5)(Rational(2)), T(0));
    EXPECT_THROW(Supervaluation(6), PreconditionError);
}

TEST(Stropicalize, SupervaluationLaws) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> d(-40, 40);
    for (std::int64_t p : {2, 3, 5}) {
        Supervaluation sv(p);
        for (int i = 0; i < 2000; ++i) {
            Rational a = Rational(d(rng)) / (1 + std::abs(d(rng))), b = Rational(d(rng)) / (1 + std::abs(d(rng)));
            EXPECT_EQ(sv(a * b), sv(a) * sv(b));
            if (a == 0 || b == 0 || a + b == 0) continue;
            if (nu_less(sv(a), sv(b))) EXPECT_EQ(sv(a + b), sv(b));
            EXPECT_TRUE(nu_leq(sv(a + b), sv(a) + sv(b)));
        }
    }
}

TEST(Stropicalize, HyperbolicExamples) {
    RationalForm hyper{0, 1, 0};
    Supervaluation two(2);
    Stropicalization s = stropicalize_form(hyper, base(1, 0, 1, 1), two);
    EXPECT_EQ(s.pair.form, QuadraticForm::binary(kZero, T(0), T(0)));
    EXPECT_FALSE(classify_values(kZero, T(0), T(0), Group::Int).quasilinear);
    ExampleCase c = example_case_label(hyper, base(1, 0, 1, 1), two);
    EXPECT_EQ(c.label, "I");
    EXPECT_TRUE(example_consistent(hyper, base(1, 0, 1, 1), two));

    Stropicalization t = stropicalize_form(hyper, base(1, 1, 1, -1), two);
    EXPECT_EQ(t.transformed, (RationalForm{1, 0, -1}));
    EXPECT_EQ(t.pair.form, QuadraticForm::binary(T(0), kZero, T(0)));
    EXPECT_EQ(example_case_label(hyper, base(1, 1, 1, -1), two).label, "III");
    EXPECT_TRUE(example_consistent(hyper, base(1, 1, 1, -1), two));
}

TEST(Stropicalize, DiagonalExample) {
    RationalForm diag{1, 0, 2};
    Supervaluation two(2);
    Stropicalization s = stropicalize_form(diag, base(1, 1, 1, -1), two);
    // Cross coefficient 2*1*1*1 + 2*1*(-1)*2 = -2.
    EXPECT_EQ(s.transformed, (RationalForm{3, -2, 3}));
    EXPECT_EQ(s.pair.form, QuadraticForm::binary(T(0), T(-1), T(0)));
    EXPECT_EQ(s.pair.companion.at(0, 0), T(-1));
    EXPECT_EQ(s.pair.companion.at(0, 1), T(-1));
    EXPECT_TRUE(classify_values(T(0), T(0), T(-1), Group::Int).quasilinear);
    ExampleCase c = example_case_label(diag, base(1, 1, 1, -1), two);
    EXPECT_EQ(c.label, "I");
    EXPECT_TRUE(example_consistent(diag, base(1, 1, 1, -1), two));
    EXPECT_TRUE(diagonal_stropicalization_quasilinear(diag, base(1, 1, 1, -1), two));
}

TEST(Stropicalize, ChangeBaseIsAnIsometry) {
    RationalForm f{3, -5, Rational(7) / 2};
    BaseChange m = base(2, -1, 3, 4);
    RationalForm t = change_base(f, m);
    for (int u = -3; u <= 3; ++u)
        for (int w = -3; w <= 3; ++w) {
            Rational x1 = m[0][0] * u + m[1][0] * w, x2 = m[0][1] * u + m[1][1] * w;
            EXPECT_EQ(t.a1 * u * u + t.a * u * w + t.a2 * w * w, f.a1 * x1 * x1 + f.a * x1 * x2 + f.a2 * x2 * x2);
        }
    EXPECT_THROW(change_base(f, base(1, 2, 2, 4)), PreconditionError);
}

TEST(Stropicalize, SquareEquivalence) {
    EXPECT_TRUE(square_equivalent(Value(0), Value(-2), Group::Int));
    EXPECT_FALSE(square_equivalent(Value(0), Value(-1), Group::Int));
    EXPECT_TRUE(square_equivalent(Value(0), Value(-1), Group::Rat));
}

TEST(Stropicalize, ShapeDetection) {
    EXPECT_EQ(detect_shape(RationalForm{0, 3, 0}), ExampleShape::Hyperbolic);
    EXPECT_EQ(detect_shape(RationalForm{1, 0, 5}), ExampleShape::Diagonal);
    EXPECT_THROW(detect_shape(RationalForm{1, 1, 1}), PreconditionError);
}
