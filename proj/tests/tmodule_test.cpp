#include "stqf/tmodule.hpp"

#include <gtest/gtest.h>

using namespace stqf;

TEST(Vectors, Add) {
    EXPECT_EQ(vec_add(Vector{T(0), T(1)}, Vector{T(2), T(1)}), (Vector{T(2), G(1)}));
    Vector x{T(4), G(-1)};
    EXPECT_EQ(vec_add(x, Vector(2)), x);
    EXPECT_EQ(vec_add(Vector{G(0), kZero}, Vector{kZero, T(3)}), (Vector{G(0), T(3)}));
    EXPECT_THROW(vec_add(Vector(2), Vector(3)), PreconditionError);
}

TEST(Vectors, ScalarMul) {
    EXPECT_EQ(scalar_mul(T(1), Vector{T(0), G(2)}), (Vector{T(1), G(3)}));
    EXPECT_TRUE(scalar_mul(kZero, Vector{T(1), T(2)}).is_zero());
    EXPECT_EQ(scalar_mul(G(0), Vector{T(5), T(0)}), (Vector{G(5), G(0)}));
}

TEST(Vectors, MinimalOrdering) {
    EXPECT_TRUE(vec_leq(Vector{T(0), T(0)}, Vector{G(0), T(0)}));
    EXPECT_FALSE(vec_leq(Vector{T(1), kZero}, Vector{T(0), T(5)}));
    EXPECT_TRUE(vec_leq(Vector(2), Vector{T(-3), G(4)}));
    EXPECT_TRUE(vec_less(Vector{T(0), kZero}, Vector{T(0), T(0)}));
    EXPECT_FALSE(vec_less(Vector{T(0), T(0)}, Vector{T(0), T(0)}));
}

TEST(Vectors, Sup) {
    EXPECT_EQ(vec_sup(Vector{T(0), kZero}, Vector{kZero, T(2)}), (Vector{T(0), T(2)}));
    EXPECT_EQ(vec_sup(Vector{T(1), T(0)}, Vector{G(1), T(0)}), (Vector{G(1), T(0)}));
    Vector x{T(1), G(-2), kZero};
    EXPECT_EQ(vec_sup(x, x), x);
}

TEST(Vectors, SupportAndRestriction) {
    Vector x{T(0), T(1), T(2)};
    EXPECT_EQ(restrict(x, IndexSet{0, 2}), (Vector{T(0), kZero, T(2)}));
    EXPECT_EQ(restrict(x, IndexSet{0, 1, 2}), x);
    EXPECT_TRUE(restrict(x, IndexSet{}).is_zero());
    EXPECT_THROW(restrict(x, IndexSet{3}), PreconditionError);
    EXPECT_EQ(support(Vector{kZero, G(1), kZero, T(0)}), (IndexSet{1, 3}));
}

TEST(Vectors, TextForm) {
    Vector x{T(0), G(2), kZero};
    EXPECT_EQ(to_string(x), "[t:0, g:2, 0]");
    EXPECT_EQ(parse_vector("[t:0, g:2, 0]"), x);
    EXPECT_EQ(parse_vector("[t:0,g:2,0]"), x);
    EXPECT_THROW(parse_vector("t:0, g:2"), ParseError);
    EXPECT_THROW(parse_vector("[t:0, h:2]"), ParseError);
}

TEST(Vectors, OrderingPropertiesOnSmallGrid) {
    std::vector<Element> al{kZero, T(0), G(0), T(1), G(1)};
    std::vector<Vector> vs;
    for (const Element& a : al)
        for (const Element& b : al) vs.push_back(Vector{a, b});
    for (const Vector& x : vs)
        for (const Vector& y : vs) {
            if (vec_leq(x, y) && vec_leq(y, x)) EXPECT_EQ(x, y);
            if (vec_leq(y, x)) {
                IndexSet sy = support(y), sx = support(x);
                EXPECT_TRUE(std::includes(sx.begin(), sx.end(), sy.begin(), sy.end()));
            }
            Vector s = vec_sup(x, y);
            EXPECT_TRUE(vec_leq(x, s) && vec_leq(y, s));
            EXPECT_EQ(support(s), set_union(support(x), support(y)));
            for (const Vector& z : vs) {
                if (vec_leq(x, y) && vec_leq(y, z)) EXPECT_TRUE(vec_leq(x, z));
                if (vec_leq(x, z) && vec_leq(y, z)) EXPECT_TRUE(vec_leq(s, z));
            }
        }
}
