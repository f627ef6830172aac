#include "stqf/oracle.hpp"
#include "stqf/trig.hpp"

#include <gtest/gtest.h>

using namespace stqf;

namespace {

PairClass classify(const Element& a1, const Element& a2, const Element& a, Group g) {
    return classify_pair(make_pair(QuadraticForm::binary(a1, a, a2)), Vector::unit(2, 0), Vector::unit(2, 1), g);
}

std::vector<Element> coefficient_alphabet() {
    std::vector<Element> out{kZero};
    for (int v = -2; v <= 2; ++v) {
        out.push_back(T(v));
        out.push_back(G(v));
    }
    return out;
}

}  // namespace

TEST(Trig, NuRatio) {
    EXPECT_EQ(nu_ratio(T(5), T(2)), G(3));
    EXPECT_EQ(nu_ratio(G(1), T(1)), kE);
    EXPECT_EQ(nu_ratio(kZero, T(4)), kZero);
    EXPECT_THROW(nu_ratio(T(1), kZero), PreconditionError);
}

TEST(Trig, CsRatio) {
    QuadraticPair p = make_pair(QuadraticForm::binary(T(0), T(2), T(0)));
    Vector x = Vector::unit(2, 0), y = Vector::unit(2, 1);
    EXPECT_EQ(cs_ratio(p, x, y), G(4));
    EXPECT_EQ(cs_ratio(p, T(7) * x, T(-2) * y), cs_ratio(p, x, y));
    EXPECT_EQ(cs_ratio(p, y, x), cs_ratio(p, x, y));
    EXPECT_THROW(cs_ratio(make_pair(QuadraticForm::binary(kZero, T(1), T(0))), x, y), PreconditionError);
}

TEST(Trig, DenseClassification) {
    PairClass ex = classify(T(0), T(0), T(1), Group::Rat);
    EXPECT_FALSE(ex.quasilinear);
    EXPECT_EQ(ex.refinement, Refinement::Excessive);
    EXPECT_EQ(ex.rigidity, Rigidity::Rigid);
    PairClass ql = classify(T(0), T(0), G(0), Group::Rat);
    EXPECT_TRUE(ql.quasilinear);
    EXPECT_EQ(ql.refinement, Refinement::WeaklyCS);
    EXPECT_EQ(classify(T(0), T(0), T(-1), Group::Rat).refinement, Refinement::CS);
}

TEST(Trig, DiscreteBoundary) {
    EXPECT_TRUE(classify(G(0), G(1), T(1), Group::Int).quasilinear);
    PairClass c = classify(T(0), T(1), T(1), Group::Int);
    EXPECT_FALSE(c.quasilinear);
    EXPECT_EQ(c.rigidity, Rigidity::NuRigid);
    EXPECT_EQ(classify(T(0), T(1), T(2), Group::Int).rigidity, Rigidity::Rigid);
    // The same values over a dense group are already excessive.
    EXPECT_FALSE(classify(G(0), G(1), T(1), Group::Rat).quasilinear);
}

TEST(Trig, CaseParameters) {
    CaseParameters ia = case_parameters(T(0), T(2), T(3), Group::Int);
    EXPECT_EQ(ia.label, CaseLabel::IA);
    EXPECT_EQ(*ia.zeta, T(3));
    EXPECT_EQ(*ia.eta, T(-1));
    EXPECT_EQ(*ia.xi, Value(1));

    CaseParameters iiib = case_parameters(T(0), T(1), T(1), Group::Int);
    EXPECT_EQ(iiib.label, CaseLabel::IIIB);
    EXPECT_EQ(*iiib.zeta, T(1));
    EXPECT_EQ(*iiib.sigma, T(1));
    EXPECT_EQ(*iiib.eta, T(0));
    EXPECT_EQ(*iiib.tau, T(0));

    EXPECT_EQ(case_parameters(kZero, kZero, T(5), Group::Int).label, CaseLabel::V);
    EXPECT_EQ(case_parameters(T(0), kZero, T(1), Group::Int).label, CaseLabel::IV);
    EXPECT_EQ(case_parameters(T(0), T(1), T(1), Group::Rat).label, CaseLabel::IA);
}

TEST(Trig, XiSquaresToTheCoefficientRatio) {
    for (const Element& a1 : coefficient_alphabet())
        for (const Element& a2 : coefficient_alphabet())
            for (const Element& a : coefficient_alphabet()) {
                CaseParameters p = case_parameters(a1, a2, a, Group::Int);
                if (p.xi) EXPECT_EQ(2 * *p.xi, a2.value() - a1.value());
                if (p.zeta && p.eta && !a1.is_zero() && !a2.is_zero()) EXPECT_EQ(p.zeta->value() + p.eta->value(), 2 * *p.xi);
            }
}

TEST(Trig, TableValues) {
    CaseParameters p = case_parameters(T(0), T(2), T(3), Group::Int);
    EXPECT_EQ(q_value_table(p, T(0), T(2), T(3), T(4), T(0)), T(8));
    EXPECT_EQ(q_value_table(p, T(0), T(2), T(3), T(3), T(0)), G(6));
    EXPECT_EQ(q_value_table(p, T(0), T(2), T(3), T(0), T(0)), T(3));
    CaseParameters v = case_parameters(kZero, kZero, T(3), Group::Int);
    EXPECT_EQ(q_value_table(v, kZero, kZero, T(3), G(1), T(0)), G(4));
    EXPECT_THROW(q_value_table(p, T(0), T(2), T(3), kZero, kZero), PreconditionError);
}

TEST(Trig, TableMatchesEvaluationOnSmallWindow) {
    auto al = coefficient_alphabet();
    for (Group g : {Group::Int, Group::Rat})
        for (const Element& a1 : al)
            for (const Element& a2 : al)
                for (const Element& a : al) {
                    CaseParameters p = case_parameters(a1, a2, a, g);
                    QuadraticForm q = QuadraticForm::binary(a1, a, a2);
                    for (const Element& l : al)
                        for (const Element& m : {kZero, T(0), G(0)}) {
                            if (l.is_zero() && m.is_zero()) continue;
                            EXPECT_EQ(q_value_table(p, a1, a2, a, l, m), eval_q(q, Vector{l, m}))
                                << to_string(p.label) << " " << a1 << " " << a2 << " " << a << " l=" << l << " m=" << m;
                        }
                }
}

TEST(Trig, ClassifierMatchesOracleOnSmallWindow) {
    auto al = coefficient_alphabet();
    for (Group g : {Group::Int, Group::Rat})
        for (const Element& a1 : al)
            for (const Element& a2 : al)
                for (const Element& a : al)
                    EXPECT_EQ(classify_values(a1, a2, a, g).quasilinear, oracle_quasilinear_values(a1, a2, a, g))
                        << a1 << " " << a2 << " " << a;
}

TEST(Trig, DerivedPairs) {
    Element a1 = T(0), a2 = T(2), a = T(3);
    EXPECT_TRUE(derived_pair_classify(a1, a2, a, T(0), kZero, T(3), T(0), Group::Int));
    EXPECT_FALSE(derived_pair_classify(a1, a2, a, T(0), kZero, kZero, T(0), Group::Int));
    for (const Element& l1 : {T(0), G(1)})
        for (const Element& m2 : {T(0), T(-1)})
            EXPECT_FALSE(derived_pair_classify(kZero, kZero, T(3), l1, T(-3), T(-2), m2, Group::Int));
    EXPECT_THROW(derived_pair_quasilinear(a1, a2, a, kZero, T(0), T(0), kZero, Group::Int), PreconditionError);
}

TEST(Trig, DerivedCsRatios) {
    Element a1 = T(0), a2 = T(2), a = T(3), z = T(3), h = T(-1);
    // z = zeta x + y and w = eta x + y reach the base ratio zeta / eta.
    EXPECT_EQ(derived_cs(a1, a2, a, z, T(0), h, T(0), Group::Int).value, G(4));
    EXPECT_EQ(cs_ratio_values(a1, a2, a), G(4));
    // x and z are a weakly CS pair.
    EXPECT_EQ(derived_cs(a1, a2, a, T(0), kZero, z, T(0), Group::Int).value, kE);
    DerivedCs c = derived_cs(a1, a2, a, T(1), T(0), T(0), T(0), Group::Int);
    EXPECT_EQ(c.region, DerivedRegion::C);
    EXPECT_EQ(c.value, G(1));
}

TEST(Trig, DerivedClosedFormsMatchThePullback) {
    std::vector<Element> coef{kZero, T(-2), G(-1), T(0), G(0), T(1), T(3), G(3)};
    std::vector<std::array<Element, 3>> bases{
        {T(0), T(2), T(3)}, {T(0), T(1), T(1)}, {G(-1), T(2), T(2)}, {T(0), kZero, T(1)}, {kZero, kZero, T(0)}, {kZero, T(1), G(2)}};
    for (const auto& [a1, a2, a] : bases) {
        QuadraticPair base = make_pair(QuadraticForm::binary(a1, a, a2));
        for (const Element& l1 : coef)
            for (const Element& m1 : coef)
                for (const Element& l2 : coef)
                    for (const Element& m2 : coef) {
                        if ((l1.is_zero() && m1.is_zero()) || (l2.is_zero() && m2.is_zero())) continue;
                        Vector xp{l1, m1}, yp{l2, m2};
                        bool truth = classify_pair(base, xp, yp, Group::Int).quasilinear;
                        ASSERT_EQ(derived_pair_classify(a1, a2, a, l1, m1, l2, m2, Group::Int), truth)
                            << a1 << " " << a2 << " " << a << " x'=" << xp << " y'=" << yp;
                    }
    }
}
