#include <gtest/gtest.h>

#include "iazf/zfmodel.hpp"

using namespace iazf;

namespace {

ChannelPoint random_point(const AssignmentTable& t, std::uint64_t seed, PrimeField f = PrimeField{}) {
    Rng rng(seed);
    return ChannelPoint::random(t, f, rng);
}

}  // namespace

TEST(ZfVector, PairwiseForm) {
    const auto t = build_assignment_table(SystemParams(5), NodeSet{5});
    const auto pt = random_point(t, 1);
    const PrimeField& f = pt.field();
    const auto v = zf_vector(NodeSet{1, 2}, NodeSet{3}, pt);
    ASSERT_EQ(v.size(), 2u);
    EXPECT_EQ(v[0], f.neg(pt.h(3, 2)));
    EXPECT_EQ(v[1], pt.h(3, 1));
}

TEST(ZfVector, NullsEveryZeroForcedRow) {
    for (int K : {5, 6, 7, 9, 11}) {
        const SystemParams p(K);
        for (const auto& label : k_subsets(p.nodes(), p.label_size())) {
            const auto t = build_assignment_table(p, label);
            const auto rep = verify_zero_forcing(t, 5, 17);
            EXPECT_TRUE(rep.pass()) << K;
            EXPECT_EQ(rep.checks, 5 * static_cast<std::int64_t>(t.entries.size()) * (p.r() - 1));
        }
    }
}

TEST(ZfVector, ThreeTransmitters) {
    // K = 7: r = 3, two zero-forced rows
    const auto t = build_assignment_table(SystemParams(7), NodeSet{7});
    const auto pt = random_point(t, 2);
    const PrimeField& f = pt.field();
    const auto& e = t.entries.front();
    ASSERT_EQ(e.zf_set.size(), 2);
    const auto v = zf_vector(e.transmit_set, e.zf_set, pt);
    bool nonzero = false;
    for (auto x : v) nonzero = nonzero || !x.is_zero();
    EXPECT_TRUE(nonzero);
    for (NodeId i : e.zf_set) {
        FieldElement acc = f.zero();
        int j = 0;
        for (NodeId q : e.transmit_set) acc = f.add(acc, f.mul(pt.h(i, q), v[j++]));
        EXPECT_TRUE(acc.is_zero());
    }
    EXPECT_THROW(zf_vector(e.transmit_set, NodeSet{e.zf_set.min().value}, pt), DomainError);
    EXPECT_THROW(zf_vector(NodeSet{1, 2, 3}, NodeSet{3, 4}, pt), DomainError);
}

TEST(EffectiveCoefficient, DirectTwoByTwoFormula) {
    const auto t = build_assignment_table(SystemParams(5), NodeSet{5});
    const auto pt = random_point(t, 3);
    const PrimeField& f = pt.field();
    for (const auto& g : enumerate_effective_coeffs(t)) {
        const int i = g.zf_set.min().value;
        const int a = g.transmit_set.min().value;
        const int b = g.transmit_set.max().value;
        const int o = g.observer.value;
        const FieldElement mu = f.sub(f.mul(pt.h(i, a), pt.h(o, b)), f.mul(pt.h(i, b), pt.h(o, a)));
        EXPECT_EQ(eval_effective_coeff(g, pt), f.mul(pt.s(g.receiver, g.transmit_set), mu)) << g.to_string();
    }
}

TEST(EffectiveCoefficient, TwoRoutesAgree) {
    for (int K = 5; K <= 10; ++K) {
        const SystemParams p(K);
        const auto t = build_assignment_table(p, k_subsets(p.nodes(), p.label_size()).front());
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            const auto pt = random_point(t, seed);
            for (const auto& g : enumerate_effective_coeffs(t)) {
                EXPECT_EQ(eval_effective_coeff(g, pt), eval_effective_coeff_inner(g, pt)) << g.to_string();
            }
        }
    }
}

TEST(EffectiveCoefficient, EnumerationShape) {
    const auto t = build_assignment_table(SystemParams(6), NodeSet{5, 6});
    const auto gs = enumerate_effective_coeffs(t);
    ASSERT_EQ(gs.size(), t.entries.size() * 3);
    EXPECT_TRUE(gs[0].useful());
    EXPECT_EQ(gs[1].observer.value, 5);
    EXPECT_EQ(gs[2].observer.value, 6);
    EXPECT_EQ(gs[1].to_string(), "g^{(5)}_{" + std::to_string(gs[1].receiver.value) + "," +
                                     gs[1].transmit_set.to_string() + "}");
}

TEST(Alignment, StructureHolds) {
    for (int K = 5; K <= 10; ++K) {
        const auto rep = verify_alignment_structure(SystemParams(K));
        EXPECT_TRUE(rep.pass) << K;
        EXPECT_GT(rep.coefficients, 0);
    }
    auto tables = build_all_tables(SystemParams(5));
    tables.begin()->second.entries[0].zf_set = NodeSet{};
    EXPECT_FALSE(verify_alignment_structure(tables).pass);
}

TEST(ChannelPoint, BindingsAndErrors) {
    const PrimeField f(101);
    const auto t = build_assignment_table(SystemParams(5), NodeSet{5});
    ChannelPoint pt(f, 5);
    EXPECT_FALSE(pt.binds(t));
    EXPECT_THROW(pt.h(1, 2), DomainError);
    EXPECT_THROW(VariableId::channel(3, 3), DomainError);
    EXPECT_THROW(pt.set_h(1, 6, f.one()), DomainError);
    EXPECT_THROW(pt.set_h(1, 2, FieldElement{101}), DomainError);
    pt.set_h(1, 2, FieldElement{7});
    EXPECT_EQ(pt.h(1, 2).value, 7u);
    EXPECT_TRUE(random_point(t, 9, f).binds(t));
    EXPECT_EQ(VariableId::scale(NodeId{3}, NodeSet{1, 2}).to_string(), "s_{3,{1,2}}");
    EXPECT_EQ(VariableId::channel(1, 2).to_string(), "h_{1,2}");
}
