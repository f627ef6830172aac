#include "stqf/semiring.hpp"

#include <gtest/gtest.h>

#include <vector>

using namespace stqf;

namespace {

std::vector<Element> small_alphabet(bool halves = false) {
    std::vector<Element> out{kZero};
    for (int v = -3; v <= 3; ++v) {
        Value x = halves ? Value(v, 2) : Value(v);
        out.push_back(T(x));
        out.push_back(G(x));
    }
    return out;
}

}  // namespace

TEST(Semiring, AddPicksTheNuLargerOperand) {
    EXPECT_EQ(T(1) + T(3), T(3));
    EXPECT_EQ(T(2) + T(2), G(2));
    EXPECT_EQ(kZero + G(5), G(5));
    EXPECT_EQ(G(4) + T(4), G(4));
}

TEST(Semiring, MulAddsValuesAndGhostsAbsorb) {
    EXPECT_EQ(T(1) * T(2), T(3));
    EXPECT_EQ(T(1) * G(2), G(3));
    EXPECT_EQ(kZero * G(7), kZero);
    EXPECT_EQ(kE * kE, kE);
}

TEST(Semiring, NuCompare) {
    EXPECT_EQ(nu_compare(T(2), G(2)), Ordering::Equal);
    EXPECT_EQ(nu_compare(G(1), T(4)), Ordering::Less);
    EXPECT_EQ(nu_compare(kZero, T(-9)), Ordering::Less);
}

TEST(Semiring, MinimalOrdering) {
    EXPECT_EQ(min_order_compare(T(0), G(0)), Ordering::Less);
    EXPECT_EQ(min_order_compare(G(0), T(1)), Ordering::Less);
    EXPECT_EQ(min_order_compare(T(3), T(3)), Ordering::Equal);
    EXPECT_EQ(min_order_compare(G(2), T(2)), Ordering::Greater);
    EXPECT_EQ(min_order_compare(kZero, G(-5)), Ordering::Less);
}

TEST(Semiring, Sup) {
    EXPECT_EQ(sup(T(1), T(3)), T(3));
    EXPECT_EQ(sup(T(2), G(2)), G(2));
    EXPECT_EQ(sup(T(2), T(2)), T(2));
    EXPECT_EQ(sup(kZero, T(-1)), T(-1));
}

TEST(Semiring, TextForm) {
    EXPECT_EQ(parse_element("0"), kZero);
    EXPECT_EQ(parse_element("t:3"), T(3));
    EXPECT_EQ(parse_element("g:-1/2"), G(Value(-1, 2)));
    EXPECT_EQ(to_string(G(Value(-1, 2))), "g:-1/2");
    EXPECT_EQ(to_string(T(3)), "t:3");
    EXPECT_EQ(parse_element(" t:0.25 "), T(Value(1, 4)));
    for (const Element& a : small_alphabet(true)) EXPECT_EQ(parse_element(to_string(a)), a);
}

TEST(Semiring, MalformedTokensNameThemselves) {
    try {
        parse_element("t:x");
        FAIL() << "no exception";
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("t:x"), std::string::npos);
    }
    EXPECT_THROW(parse_element("q:1"), ParseError);
    EXPECT_THROW(parse_element("t:"), ParseError);
    EXPECT_THROW(parse_element("t:1/0"), ParseError);
}

TEST(Semiring, GroupMembershipAndSquares) {
    EXPECT_TRUE(in_group(T(3), Group::Int));
    EXPECT_FALSE(in_group(T(Value(1, 2)), Group::Int));
    EXPECT_TRUE(in_group(T(Value(1, 2)), Group::Rat));
    EXPECT_TRUE(in_group(T(Value(1, 3)), Group::Tri));
    EXPECT_FALSE(in_group(T(Value(1, 2)), Group::Tri));
    EXPECT_TRUE(is_nu_square(Value(-2), Group::Int));
    EXPECT_FALSE(is_nu_square(Value(-1), Group::Int));
    EXPECT_TRUE(is_nu_square(Value(-1), Group::Rat));
    EXPECT_FALSE(is_nu_square(Value(1), Group::Tri));
    EXPECT_TRUE(is_discrete(Group::Int));
    EXPECT_FALSE(is_discrete(Group::Tri));
}

TEST(Semiring, AxiomsOnSmallWindow) {
    for (bool halves : {false, true}) {
        auto al = small_alphabet(halves);
        for (const Element& a : al)
            for (const Element& b : al) {
                if (!nu_eq(a, b) && !a.is_zero() && !b.is_zero()) EXPECT_TRUE(a + b == a || a + b == b);
                if (nu_eq(a, b)) EXPECT_EQ(a + b, b.nu());
                EXPECT_EQ(a + b, b + a);
                EXPECT_EQ(a * b, b * a);
                EXPECT_EQ(square(a + b), square(a) + square(b));
                EXPECT_EQ(min_leq(a, b), a == b || a + b == b);
                Element s = sup(a, b);
                EXPECT_TRUE(min_leq(a, s) && min_leq(b, s));
                for (const Element& c : al) {
                    EXPECT_EQ((a + b) + c, a + (b + c));
                    EXPECT_EQ((a * b) * c, a * (b * c));
                    EXPECT_EQ(a * (b + c), a * b + a * c);
                    if (min_leq(a, c) && min_leq(b, c)) EXPECT_TRUE(min_leq(s, c));
                }
            }
    }
}
