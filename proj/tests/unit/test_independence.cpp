#include <gtest/gtest.h>

#include <set>

#include "iazf/independence.hpp"

using namespace iazf;

namespace {

ChannelPoint random_point(const AssignmentTable& t, std::uint64_t seed, PrimeField f = PrimeField{}) {
    Rng rng(seed);
    return ChannelPoint::random(t, f, rng);
}

void shift(ChannelPoint& pt, const VariableId& v, FieldElement delta) {
    pt.set(v, pt.field().add(pt.get(v), delta));
}

}  // namespace

TEST(Jacobian, CensusShapes) {
    struct Case { int K; NodeSet L; int rows; int cols; };
    for (const auto& c : {Case{5, {5}, 24, 32}, Case{6, {5, 6}, 24, 38}, Case{7, {7}, 60, 72}, Case{15, {15}, 364, 392}}) {
        const auto t = build_assignment_table(SystemParams(c.K), c.L);
        const auto j = jacobian_at(t, random_point(t, 1));
        EXPECT_EQ(j.matrix.rows(), c.rows) << c.K;
        EXPECT_EQ(j.matrix.cols(), c.cols) << c.K;
        EXPECT_EQ(j.cols.size(), static_cast<std::size_t>(c.cols));
    }
}

TEST(Jacobian, ColumnLayout) {
    const auto t = build_assignment_table(SystemParams(5), NodeSet{5});
    const auto cols = jacobian_columns(t);
    EXPECT_EQ(cols[0], VariableId::scale(t.entries[0].receiver, t.entries[0].transmit_set));
    EXPECT_EQ(cols[12], VariableId::channel(1, 2));
    EXPECT_EQ(cols[15], VariableId::channel(1, 5));
    EXPECT_EQ(cols[16], VariableId::channel(2, 1));
    EXPECT_EQ(cols.back(), VariableId::channel(5, 4));
    const auto j = jacobian_at(t, random_point(t, 2));
    EXPECT_EQ(j.column_of(VariableId::channel(2, 1)), 16);
    EXPECT_THROW(j.column_of(VariableId::channel(1, 6)), DomainError);
}

// Every coefficient is affine in each single variable, so the central
// difference (g(x+d) - g(x-d)) / 2d is the exact partial derivative.
TEST(Jacobian, CentralDifferenceOracle) {
    for (int K : {5, 6, 7}) {
        const SystemParams p(K);
        const auto t = build_assignment_table(p, k_subsets(p.nodes(), p.label_size()).back());
        const auto coeffs = enumerate_effective_coeffs(t);
        Rng rng(mix_seed(1234, static_cast<std::uint64_t>(K)));
        for (int sample = 0; sample < 20; ++sample) {
            const PrimeField f;
            const ChannelPoint pt = ChannelPoint::random(t, f, rng);
            const Jacobian j = jacobian_at(t, pt);
            const int col = static_cast<int>(rng.next() % j.cols.size());
            const FieldElement d = f.random_nonzero(rng);
            ChannelPoint plus = pt;
            ChannelPoint minus = pt;
            shift(plus, j.cols[col], d);
            shift(minus, j.cols[col], f.neg(d));
            const FieldElement inv2d = f.inv(f.add(d, d));
            for (std::size_t row = 0; row < coeffs.size(); ++row) {
                const FieldElement diff = f.sub(eval_effective_coeff(coeffs[row], plus), eval_effective_coeff(coeffs[row], minus));
                EXPECT_EQ(j.matrix.at(static_cast<int>(row), col), f.mul(diff, inv2d))
                    << "K=" << K << " " << coeffs[row].to_string() << " d/d" << j.cols[col].to_string();
            }
        }
    }
}

TEST(Independence, FullRankAndDeterministic) {
    const SystemParams p(7);
    const auto a = verify_all_independence(p, 2, 42);
    const auto b = verify_all_independence(p, 2, 42);
    ASSERT_EQ(a.size(), 7u);
    EXPECT_EQ(to_json(a), to_json(b));
    for (const auto& r : a) {
        EXPECT_TRUE(r.full_rank);
        EXPECT_EQ(r.rank, 60);
        EXPECT_EQ(r.trial_ranks, (std::vector<int>{60, 60}));
        EXPECT_EQ(r.degree_bound, 60 * 4);
    }
}

TEST(Independence, LabelSymmetryOfRank) {
    const SystemParams p(8);
    for (const auto& r : verify_all_independence(p, 1, 5)) {
        EXPECT_EQ(r.rank, r.rows) << r.label.to_string();
        EXPECT_EQ(r.rows, 54);
    }
}

TEST(Independence, FailureBound) {
    const auto r = verify_independence(SystemParams(15), NodeSet{15}, 1, 42);
    EXPECT_TRUE(r.full_rank);
    EXPECT_EQ(r.degree_bound, 364 * 8);
    EXPECT_LT(r.log2_failure_bound_per_trial, -49.0);
    EXPECT_EQ(r.failure_probability_bound, Rational(BigInt(2912), BigInt(PrimeField::kMersenne61)));
    const auto three = verify_independence(SystemParams(5), NodeSet{5}, 3, 42);
    EXPECT_NEAR(three.log2_failure_bound, 3 * three.log2_failure_bound_per_trial, 1e-9);
    EXPECT_THROW(verify_independence(SystemParams(5), NodeSet{5}, 0, 42), DomainError);
}

TEST(Independence, TinyFieldStillReports) {
    // over GF(3) the uniform points are far from generic; the report must
    // still be well formed
    const auto r = verify_independence(SystemParams(5), NodeSet{5}, 3, 1, PrimeField(3));
    EXPECT_EQ(r.trial_ranks.size(), 3u);
    EXPECT_LE(r.rank, r.rows);
    EXPECT_EQ(r.full_rank, r.rank == r.rows);
    EXPECT_GT(r.log2_failure_bound_per_trial, 0.0);
}

TEST(K5Blocks, StructureAtRandomPoints) {
    const auto rep = k5_block_structure_check(7, 25);
    EXPECT_TRUE(rep.pass()) << to_json(rep);
    EXPECT_EQ(rep.zero_blocks_ok, 25);
    EXPECT_EQ(rep.j22_matches_display, 25);
    EXPECT_EQ(rep.factorization_ok, 25);
    // the displayed J33 variables give an identically singular block
    EXPECT_EQ(rep.j33_displayed_nonzero, 0);
    EXPECT_GT(rep.special_points, 0);
    EXPECT_EQ(rep.special_full_rank, rep.special_points);
}

TEST(K5Blocks, EliminationNeedsSingleLabel) {
    const auto t = build_assignment_table(SystemParams(6), NodeSet{5, 6});
    EXPECT_THROW(eliminate_scale_columns(t, random_point(t, 1)), DomainError);
}

TEST(K5Blocks, GroupingPartitionsRowsAndVariables) {
    const auto& g = k5_grouping();
    std::set<std::pair<int, NodeSet>> rows;
    std::set<std::pair<int, int>> vars;
    for (const auto& grp : g.g) rows.insert(grp.begin(), grp.end());
    for (const auto& grp : g.h) vars.insert(grp.begin(), grp.end());
    EXPECT_EQ(rows.size(), 12u);
    EXPECT_EQ(vars.size(), 12u);
    const auto t = build_assignment_table(SystemParams(5), NodeSet{5});
    for (const auto& [k, T] : rows) EXPECT_NE(t.find(T, NodeId{k}), nullptr);
    for (const auto& [a, b] : vars) EXPECT_TRUE(a <= 4 && b <= 4 && a != b);
}

TEST(SpecialRealization, SolvedValues) {
    const PrimeField f;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const ChannelPoint pt = solve_special_realization({}, seed, f);
        for (int b = 1; b <= 4; ++b) EXPECT_EQ(pt.h(5, b), f.one());
        // the four conditions reduce to these equalities
        EXPECT_EQ(pt.h(1, 4), pt.h(1, 3));
        EXPECT_EQ(pt.h(2, 1), pt.h(2, 4));
        EXPECT_EQ(pt.h(3, 2), pt.h(3, 1));
        EXPECT_EQ(pt.h(4, 3), pt.h(4, 2));
        const auto t = build_assignment_table(SystemParams(5), NodeSet{5});
        EXPECT_TRUE(pt.binds(t));
        EXPECT_EQ(field_rank(jacobian_at(t, pt).matrix), 24);
    }
}

TEST(SpecialRealization, FreeValuesAndResample) {
    const PrimeField f;
    std::map<VariableId, FieldElement> free{{VariableId::channel(1, 3), FieldElement{5}}};
    EXPECT_EQ(solve_special_realization(free, 1, f).h(1, 3).value, 5u);
    free[VariableId::channel(2, 3)] = FieldElement{9};
    free[VariableId::channel(2, 4)] = FieldElement{9};
    EXPECT_THROW(solve_special_realization(free, 1, f), ResampleError);
    EXPECT_THROW(solve_special_realization({{VariableId::channel(1, 4), f.one()}}, 1, f), DomainError);
    EXPECT_THROW(solve_special_realization({{VariableId::scale(NodeId{1}, NodeSet{2, 3}), f.one()}}, 1, f), DomainError);
}
