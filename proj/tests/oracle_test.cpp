#include "stqf/oracle.hpp"

#include <gtest/gtest.h>

using namespace stqf;

namespace {

void expect_valid_witness(const QuadraticForm& q, const Vector& x, const MinimalityVerdict& v) {
    ASSERT_FALSE(v.minimal);
    ASSERT_TRUE(v.witness);
    EXPECT_TRUE(vec_less(*v.witness, x));
    EXPECT_EQ(eval_q(q, *v.witness), eval_q(q, x));
}

}  // namespace

TEST(Oracle, QuasilinearityOnTheSpan) {
    QuadraticPair ex = make_pair(QuadraticForm::binary(T(0), T(1), T(0)));
    EXPECT_FALSE(oracle_quasilinear(ex, Vector::unit(2, 0), Vector::unit(2, 1), Group::Rat));
    QuadraticPair diag = make_pair(QuadraticForm::binary(T(0), kZero, T(5)));
    EXPECT_TRUE(oracle_quasilinear(diag, Vector::unit(2, 0), Vector::unit(2, 1), Group::Int));
    QuadraticPair boundary = make_pair(QuadraticForm::binary(G(0), T(1), G(1)));
    EXPECT_TRUE(oracle_quasilinear(boundary, Vector::unit(2, 0), Vector::unit(2, 1), Group::Int));
    EXPECT_FALSE(oracle_quasilinear(boundary, Vector::unit(2, 0), Vector::unit(2, 1), Group::Rat));
}

TEST(Oracle, QuasilinearityIsScalingInvariant) {
    QuadraticPair p = make_pair(QuadraticForm::binary(T(0), T(1), T(1)));
    Vector x = Vector::unit(2, 0), y = Vector::unit(2, 1);
    bool base = oracle_quasilinear(p, x, y, Group::Int);
    for (const Element& l : {T(-3), T(2)})
        for (const Element& m : {T(1), T(-4)}) EXPECT_EQ(oracle_quasilinear(p, l * x, m * y, Group::Int), base);
}

TEST(Oracle, Minimality) {
    QuadraticForm q = QuadraticForm::binary(T(0), T(3), T(0));
    EXPECT_TRUE(oracle_minimal(q, Vector{T(0), T(0)}, Group::Int).minimal);
    Vector gg{G(0), G(0)};
    expect_valid_witness(q, gg, oracle_minimal(q, gg, Group::Int));

    QuadraticForm r(1);
    r.set_diag(0, G(0));
    MinimalityVerdict v = oracle_minimal(r, Vector{G(1)}, Group::Int);
    expect_valid_witness(r, Vector{G(1)}, v);
    EXPECT_EQ(*v.witness, Vector{T(1)});
    EXPECT_TRUE(oracle_minimal(q, Vector(2), Group::Int).minimal);
}

TEST(Oracle, WitnessesAreGenuine) {
    std::vector<Element> al{kZero, T(-1), G(-1), T(0), G(0), T(1), G(1)};
    for (const Element& a1 : al)
        for (const Element& b : al)
            for (const Element& a2 : al) {
                QuadraticForm q = QuadraticForm::binary(a1, b, a2);
                for (const Element& x1 : al)
                    for (const Element& x2 : al) {
                        Vector x{x1, x2};
                        MinimalityVerdict v = oracle_minimal(q, x, Group::Int);
                        if (!v.minimal) expect_valid_witness(q, x, v);
                    }
            }
}

TEST(Oracle, CompanionValidity) {
    QuadraticForm q = QuadraticForm::binary(T(0), T(2), T(0));
    EXPECT_TRUE(oracle_companion_valid(make_pair(q), Group::Int));
    Companion big(2);
    big.set(0, 1, T(3));
    EXPECT_FALSE(oracle_companion_valid({q, big}, Group::Int));
    QuadraticForm d = QuadraticForm::binary(T(1), kZero, G(-2));
    EXPECT_TRUE(oracle_companion_valid({d, Companion(2)}, Group::Rat));
}
