#include "stqf/minimal.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace stqf;

namespace {

QuadraticForm rank3(const Element& a, const Element& b12, const Element& b13, const Element& b23) {
    QuadraticForm q(3);
    for (int i = 0; i < 3; ++i) q.set_diag(i, a);
    q.set_upper(0, 1, b12);
    q.set_upper(0, 2, b13);
    q.set_upper(1, 2, b23);
    return q;
}

}  // namespace

TEST(Minimal, RankOne) {
    EXPECT_TRUE(is_q_minimal_rank1(T(2), G(5)).minimal);
    MinimalityVerdict g = is_q_minimal_rank1(G(2), G(5));
    EXPECT_FALSE(g.minimal);
    EXPECT_EQ(*g.witness, Vector{T(5)});
    MinimalityVerdict z = is_q_minimal_rank1(kZero, T(0));
    EXPECT_FALSE(z.minimal);
    EXPECT_TRUE(z.witness->is_zero());
    EXPECT_THROW(is_q_minimal_rank1(T(0), kZero), PreconditionError);
}

TEST(Minimal, Binary) {
    QuadraticForm h = QuadraticForm::binary(T(0), T(3), T(0));
    EXPECT_TRUE(is_q_minimal_binary(h, Vector{T(0), T(0)}, Group::Int).minimal);
    MinimalityVerdict gg = is_q_minimal_binary(h, Vector{G(0), G(0)}, Group::Int);
    EXPECT_FALSE(gg.minimal);
    EXPECT_EQ(eval_q(h, *gg.witness), G(3));
    EXPECT_TRUE(is_q_minimal_binary(QuadraticForm::binary(T(0), kZero, T(0)), Vector{T(0), T(0)}, Group::Int).minimal);
}

// Diagonal-cross tie: the tangible partner of a ghost x2 keeps q, whatever beta is.
TEST(Minimal, DiagonalCrossTieNeedsBothCoordinatesTangible) {
    QuadraticForm tangible_cross = QuadraticForm::binary(T(0), T(0), kZero);
    MinimalityVerdict v = is_q_minimal(tangible_cross, Vector{T(0), G(0)}, Group::Int);
    EXPECT_FALSE(v.minimal);
    EXPECT_EQ(*v.witness, (Vector{T(0), T(0)}));
    EXPECT_FALSE(oracle_minimal(tangible_cross, Vector{T(0), G(0)}, Group::Int).minimal);

    QuadraticForm ghost_cross = QuadraticForm::binary(T(0), G(0), kZero);
    EXPECT_TRUE(is_q_minimal(ghost_cross, Vector{T(0), T(0)}, Group::Int).minimal);
    EXPECT_TRUE(oracle_minimal(ghost_cross, Vector{T(0), T(0)}, Group::Int).minimal);
}

TEST(Minimal, General) {
    QuadraticForm q = rank3(kZero, T(0), T(0), T(0));
    MinimalityVerdict zero = is_q_minimal(q, Vector(3), Group::Int);
    EXPECT_TRUE(zero.minimal);
    EXPECT_EQ(zero.rule, "vacuous");
    MinimalityVerdict iso = is_q_minimal(q, Vector::unit(3, 0), Group::Int);
    EXPECT_FALSE(iso.minimal);
    EXPECT_TRUE(iso.witness->is_zero());
    Vector x{T(0), T(0), T(0)};
    EXPECT_TRUE(is_q_minimal(q, x, Group::Int).minimal);
    EXPECT_EQ(big_support_structure(make_pair(q), x, Group::Int).kind, BigCase::C);
}

TEST(Minimal, ExhaustiveBinaryAgreement) {
    std::vector<Element> al{kZero, T(-1), G(-1), T(0), G(0), T(1), G(1)};
    for (Group g : {Group::Int, Group::Rat})
        for (const Element& a1 : al)
            for (const Element& b : al)
                for (const Element& a2 : al) {
                    QuadraticForm q = QuadraticForm::binary(a1, b, a2);
                    for (const Element& x1 : al)
                        for (const Element& x2 : al) {
                            Vector x{x1, x2};
                            ASSERT_EQ(is_q_minimal(q, x, g).minimal, oracle_minimal(q, x, g).minimal)
                                << a1 << " " << b << " " << a2 << " x=" << x;
                        }
                }
}

TEST(Minimal, SupportBounds) {
    QuadraticForm h = QuadraticForm::binary(T(0), T(3), T(0));
    EXPECT_TRUE(support_bound_check(h, Vector{T(0), T(0)}, Group::Int));
    QuadraticForm d = QuadraticForm::binary(T(0), kZero, T(1));
    EXPECT_TRUE(support_bound_check(d, Vector{T(0), kZero}, Group::Int));
    EXPECT_TRUE(support_bound_check(rank3(kZero, T(0), T(0), T(0)), Vector{T(0), T(0), T(0)}, Group::Int));
}

TEST(Minimal, BigSupportCases) {
    QuadraticForm a(3);
    a.set_diag(0, T(0));
    a.set_upper(1, 2, T(0));
    Vector x{T(0), T(0), T(0)};
    ASSERT_TRUE(oracle_minimal(a, x, Group::Int).minimal);
    BigSupportStructure sa = big_support_structure(make_pair(a), x, Group::Int);
    EXPECT_EQ(sa.kind, BigCase::A);
    EXPECT_EQ(sa.J, IndexSet{0});
    EXPECT_EQ(sa.K, (IndexSet{1, 2}));
    EXPECT_TRUE(sa.holds());

    QuadraticForm d(4);
    d.set_upper(0, 1, T(0));
    d.set_upper(2, 3, T(0));
    Vector y{T(0), T(0), T(0), T(0)};
    ASSERT_TRUE(oracle_minimal(d, y, Group::Int).minimal);
    BigSupportStructure sd = big_support_structure(make_pair(d), y, Group::Int);
    EXPECT_EQ(sd.kind, BigCase::D);
    EXPECT_EQ(sd.J, (IndexSet{0, 1}));
    EXPECT_EQ(sd.K, (IndexSet{2, 3}));
    EXPECT_TRUE(sd.holds());

    EXPECT_THROW(big_support_structure(make_pair(a), Vector{T(0), T(0), kZero}, Group::Int), PreconditionError);
}

TEST(Minimal, Joins) {
    QuadraticForm a(3);
    a.set_diag(0, T(0));
    a.set_upper(1, 2, T(0));
    QuadraticPair p = make_pair(a);
    Vector y{T(0), kZero, kZero}, z{kZero, T(0), T(0)};
    EXPECT_EQ(join_minimality_predict(p, y, z, Group::Int), JoinPrediction::MinimalByDisjointJoin);
    EXPECT_TRUE(oracle_minimal(a, vec_sup(y, z), Group::Int).minimal);

    QuadraticForm o = rank3(T(-1), T(0), T(0), T(-1));
    QuadraticPair po = make_pair(o);
    Vector u{T(0), T(0), kZero}, w{T(0), kZero, T(0)};
    EXPECT_EQ(join_minimality_predict(po, u, w, Group::Int), JoinPrediction::MinimalByOverlapJoin);
    EXPECT_TRUE(oracle_minimal(o, vec_sup(u, w), Group::Int).minimal);
}

TEST(Minimal, GhostTieJoinIsNotMinimal) {
    QuadraticForm q = rank3(T(-1), T(0), T(0), G(0));
    QuadraticPair p = make_pair(q);
    Vector y{T(0), T(0), kZero}, z{T(0), kZero, T(0)};
    EXPECT_EQ(join_minimality_predict(p, y, z, Group::Int), JoinPrediction::NoPrediction);
    Vector x{G(0), T(0), T(0)}, witness{T(0), T(0), T(0)};
    EXPECT_FALSE(is_q_minimal(q, x, Group::Int).minimal);
    EXPECT_TRUE(vec_less(witness, x));
    EXPECT_EQ(eval_q(q, witness), eval_q(q, x));
}

TEST(Minimal, PairRelations) {
    QuadraticForm one(1);
    one.set_diag(0, T(0));
    PairRelationReport c1 = minimal_pair_relation(one, Vector{G(0)}, Vector{T(0)}, Group::Int);
    EXPECT_EQ(c1.relation, PairRelation::SameSingleton);
    EXPECT_TRUE(c1.holds());

    QuadraticForm d = QuadraticForm::binary(T(0), kZero, T(0));
    PairRelationReport c3 = minimal_pair_relation(d, Vector{T(0), T(0)}, Vector{T(0), kZero}, Group::Int);
    EXPECT_EQ(c3.relation, PairRelation::SingletonRestriction);
    EXPECT_TRUE(c3.holds());

    QuadraticForm h = QuadraticForm::binary(T(0), T(3), T(0));
    PairRelationReport c2 = minimal_pair_relation(h, Vector{G(0), T(0)}, Vector{T(0), T(0)}, Group::Int);
    EXPECT_EQ(c2.relation, PairRelation::SamePairGhosted);
    EXPECT_TRUE(c2.holds());

    EXPECT_THROW(minimal_pair_relation(h, Vector{T(0), T(0)}, Vector{T(0), T(0)}, Group::Int), PreconditionError);
}

TEST(Minimal, Enumeration) {
    QuadraticForm g1(1);
    g1.set_diag(0, G(0));
    EXPECT_EQ(enumerate_minimal(g1, {Value(-1), Value(0), Value(1)}, Group::Int),
              (std::vector<Vector>{Vector{T(-1)}, Vector{T(0)}, Vector{T(1)}}));

    auto found = enumerate_minimal(QuadraticForm::binary(T(0), kZero, T(0)), {Value(0)}, Group::Int);
    // Ghost singletons stay minimal when the diagonal coefficient is tangible.
    std::vector<Vector> want{Vector{T(0), kZero}, Vector{kZero, T(0)}, Vector{T(0), T(0)}, Vector{G(0), kZero},
                             Vector{kZero, G(0)}};
    EXPECT_EQ(found.size(), want.size());
    for (const Vector& v : want) EXPECT_NE(std::find(found.begin(), found.end(), v), found.end()) << v;

    EXPECT_TRUE(enumerate_minimal(QuadraticForm(2), {Value(0)}, Group::Int).empty());
    EXPECT_THROW(enumerate_minimal(QuadraticForm(5), {Value(0)}, Group::Int), PreconditionError);
}
