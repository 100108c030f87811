#include "iazf/independence.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

namespace iazf {

int Jacobian::column_of(const VariableId& var) const {
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j] == var) return static_cast<int>(j);
    }
    throw DomainError("variable " + var.to_string() + " is not a Jacobian column");
}

std::vector<VariableId> jacobian_columns(const AssignmentTable& table) {
    const int K = table.params.K();
    std::vector<VariableId> cols;
    cols.reserve(table.entries.size() + static_cast<std::size_t>(K * (K - 1)));
    for (const auto& e : table.entries) cols.push_back(VariableId::scale(e.receiver, e.transmit_set));
    for (int p = 1; p <= K; ++p) {
        for (int q = 1; q <= K; ++q) {
            if (p != q) cols.push_back(VariableId::channel(p, q));
        }
    }
    return cols;
}

namespace {

/// Cofactor matrix C with C[a][b] = (-1)^{a+b} det(M without row a, col b).
FieldMatrix cofactors(const FieldMatrix& m, FieldElement det) {
    const PrimeField& f = m.field();
    const int n = m.rows();
    FieldMatrix c(f, n, n);
    if (!det.is_zero()) {
        // adj(M) = det(M) M^{-1} and C = adj(M)^T
        const FieldMatrix inv = solve(m, FieldMatrix::identity(f, n));
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) c.at(a, b) = f.mul(det, inv.at(b, a));
        }
        return c;
    }
    if (n == 1) {
        c.at(0, 0) = f.one();
        return c;
    }
    FieldMatrix minor(f, n - 1, n - 1);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            for (int i = 0, ii = 0; i < n; ++i) {
                if (i == a) continue;
                for (int j = 0, jj = 0; j < n; ++j) {
                    if (j == b) continue;
                    minor.at(ii, jj++) = m.at(i, j);
                }
                ++ii;
            }
            const FieldElement d = determinant(minor);
            c.at(a, b) = (a + b) % 2 == 0 ? d : f.neg(d);
        }
    }
    return c;
}

}  // namespace

Jacobian jacobian_at(const AssignmentTable& table, const ChannelPoint& point) {
    const PrimeField& f = point.field();
    const int K = table.params.K();
    if (point.K() != K) throw DomainError("channel point and table disagree on K");

    auto rows = enumerate_effective_coeffs(table);
    auto cols = jacobian_columns(table);
    const int n_scale = static_cast<int>(table.entries.size());
    const int per_entry = 1 + table.label.size();
    auto channel_col = [&](NodeId p, NodeId q) {
        return n_scale + (p.value - 1) * (K - 1) + (q.value < p.value ? q.value - 1 : q.value - 2);
    };

    FieldMatrix m(f, static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& g = rows[i];
        const int row = static_cast<int>(i);
        const int entry = row / per_entry;
        const FieldMatrix stack = coefficient_stack(g, point);
        const FieldElement det = determinant(stack);
        const FieldElement s = point.s(g.receiver, g.transmit_set);
        m.at(row, entry) = det;

        const FieldMatrix cof = cofactors(stack, det);
        const auto stack_rows = g.stack_rows();
        const auto tx = g.transmit_set.members();
        const int r = stack.rows();
        for (int a = 0; a < r; ++a) {
            for (int b = 0; b < r; ++b) {
                m.at(row, channel_col(stack_rows[static_cast<std::size_t>(a)], tx[static_cast<std::size_t>(b)])) =
                    f.mul(s, cof.at(a, b));
            }
        }
    }
    return Jacobian{std::move(m), std::move(rows), std::move(cols)};
}

IndependenceReport verify_independence(const SystemParams& params, const NodeSet& label, int trials,
                                       std::uint64_t seed, PrimeField field) {
    if (trials < 1) throw DomainError("trials must be at least 1");
    const AssignmentTable table = build_assignment_table(params, label);

    IndependenceReport report;
    report.K = params.K();
    report.r = params.r();
    report.label = label;
    report.trials = trials;
    report.seed = seed;
    report.modulus = field.modulus();

    for (int trial = 0; trial < trials; ++trial) {
        Rng rng(mix_seed(seed, label.mask(), static_cast<std::uint64_t>(trial)));
        const ChannelPoint point = ChannelPoint::random(table, field, rng);
        const Jacobian j = jacobian_at(table, point);
        report.rows = j.matrix.rows();
        report.cols = j.matrix.cols();
        const int rank = field_rank(j.matrix);
        report.trial_ranks.push_back(rank);
        report.rank = std::max(report.rank, rank);
    }
    report.full_rank = report.rank == report.rows;

    report.degree_bound = static_cast<std::int64_t>(report.rows) * (params.r() + 1);
    const Rational per_trial(BigInt(report.degree_bound), BigInt(field.modulus()));
    Rational bound(1);
    for (int t = 0; t < trials; ++t) bound *= per_trial;
    report.failure_probability_bound = bound;
    report.log2_failure_bound_per_trial = std::log2(static_cast<double>(report.degree_bound)) - field.log2_modulus();
    report.log2_failure_bound = trials * report.log2_failure_bound_per_trial;
    return report;
}

std::vector<IndependenceReport> verify_all_independence(const SystemParams& params, int trials, std::uint64_t seed,
                                                        PrimeField field) {
    std::vector<IndependenceReport> out;
    for (const auto& label : k_subsets(params.nodes(), params.label_size())) {
        out.push_back(verify_independence(params, label, trials, seed, field));
    }
    return out;
}

namespace {

nlohmann::ordered_json report_json(const IndependenceReport& r) {
    nlohmann::ordered_json j;
    j["K"] = r.K;
    j["label"] = r.label.values();
    j["rows"] = r.rows;
    j["cols"] = r.cols;
    j["rank"] = r.rank;
    j["full_rank"] = r.full_rank;
    j["trials"] = r.trials;
    j["log2_failure_bound"] = r.log2_failure_bound;
    j["seed"] = r.seed;
    return j;
}

}  // namespace

std::string to_json(const IndependenceReport& report) { return report_json(report).dump(2) + "\n"; }

std::string to_json(const std::vector<IndependenceReport>& reports) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : reports) arr.push_back(report_json(r));
    return arr.dump(2) + "\n";
}

}  // namespace iazf
