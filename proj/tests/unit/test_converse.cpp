#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "iazf/converse.hpp"

using namespace iazf;

TEST(Converse, TotalCounts) {
    EXPECT_EQ(enumerate_total(SystemParams(5)).size(), 60u);
    EXPECT_EQ(enumerate_total(SystemParams(6)).size(), 120u);
    EXPECT_EQ(enumerate_total(SystemParams(7)).size(), 420u);
    for (int K = 5; K <= 12; ++K) {
        const SystemParams p(K);
        EXPECT_EQ(count_total(p), p.r() * binomial(K, p.r()) * (K - p.r()));
    }
    const auto all = enumerate_total(SystemParams(6));
    EXPECT_EQ(std::set<SubIva>(all.begin(), all.end()).size(), all.size());
    for (const auto& a : all) {
        EXPECT_TRUE(a.transmit_set.contains(a.carrier));
        EXPECT_FALSE(a.transmit_set.contains(a.dest));
    }
}

TEST(Converse, LemmaSetsK5) {
    const SystemParams p(5);
    const auto s = lemma_sets(p, NodeId{2}, NodeId{1});
    EXPECT_EQ(s.v_rx.size(), 12u);
    ASSERT_EQ(s.order.size(), 3u);
    EXPECT_EQ(s.order[0].value, 3);
    EXPECT_EQ(s.order[2].value, 5);
    EXPECT_EQ(s.v_tx_by_i.at(3).size(), 2u);
    EXPECT_EQ(s.v_tx_by_i.at(4).size(), 1u);
    EXPECT_EQ(s.v_tx_by_i.at(5).size(), 0u);
    // i = 3: T contains 1 and avoids the segment {2,3}
    for (const auto& a : s.v_tx_by_i.at(3)) {
        EXPECT_EQ(a.carrier.value, 1);
        EXPECT_TRUE(a.transmit_set.disjoint(NodeSet{2, 3}));
    }
    for (const auto& a : s.v_rx) EXPECT_FALSE(a.transmit_set.contains(NodeId{2}));
    EXPECT_EQ(s.size(), 15);
    EXPECT_THROW(lemma_sets(p, NodeId{2}, NodeId{2}), DomainError);
    EXPECT_THROW(lemma_sets(p, NodeId{2}, NodeId{6}), DomainError);
}

TEST(Converse, SegmentWrapsAroundGround) {
    // j = 6 on [7] \ {2}: order 7, 1, 3, 4, 5
    const auto s = lemma_sets(SystemParams(7), NodeId{6}, NodeId{2});
    std::vector<int> order;
    for (NodeId i : s.order) order.push_back(i.value);
    EXPECT_EQ(order, (std::vector<int>{7, 1, 3, 4, 5}));
    for (const auto& a : s.v_tx_by_i.at(1)) EXPECT_TRUE(a.transmit_set.disjoint(NodeSet{6, 7, 1}));
}

TEST(Converse, VerifyCounts) {
    const std::vector<std::pair<int, std::int64_t>> expected_v{{5, 15}, {6, 26}, {7, 70}};
    for (auto [K, v] : expected_v) {
        const auto rep = verify_counts(SystemParams(K));
        EXPECT_TRUE(rep.pass()) << K;
        EXPECT_EQ(rep.v, v);
        EXPECT_EQ(rep.pairs_checked, K * (K - 1));
    }
    const auto k5 = verify_counts(SystemParams(5));
    EXPECT_EQ(k5.sdof_upper, Rational(4));
    EXPECT_EQ(k5.last_nonempty_position, 2);
    EXPECT_EQ(k5.last_nonempty_label, 4);
    EXPECT_EQ(verify_counts(SystemParams(6)).sdof_upper, Rational(60, 13));
    EXPECT_EQ(verify_counts(SystemParams(7)).sdof_upper, Rational(6));
    const auto k11 = verify_counts(SystemParams(11));
    EXPECT_TRUE(k11.pass());
    EXPECT_GE(k11.pairs_checked, 10);
}

TEST(Converse, SampledPairsDeterministic) {
    const SystemParams p(12);
    const auto a = converse_pairs(p);
    EXPECT_EQ(a, converse_pairs(p));
    EXPECT_GE(a.size(), 10u);
    EXPECT_NE(std::find(a.begin(), a.end(), std::make_pair(NodeId{2}, NodeId{1})), a.end());
    EXPECT_EQ(converse_pairs(SystemParams(9)).size(), 72u);
}

TEST(Converse, ClosedForm) {
    EXPECT_EQ(sdof_upper_closed_form(SystemParams(5)), Rational(4));
    EXPECT_EQ(sdof_upper_closed_form(SystemParams(6)), Rational(60, 13));
    EXPECT_EQ(sdof_upper_closed_form(SystemParams(7)), Rational(6));
    EXPECT_EQ(to_json(verify_counts(SystemParams(5))),
              "{\n  \"K\": 5,\n  \"r\": 2,\n  \"V_total\": 60,\n  \"V\": 15,\n  \"sdof_upper\": \"4/1\",\n"
              "  \"pairs_checked\": 20,\n  \"all_pairs_equal\": true\n}\n");
}
