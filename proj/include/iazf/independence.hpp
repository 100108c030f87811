#pragma once

#include <map>
#include <string>
#include <vector>

#include "iazf/rational.hpp"
#include "iazf/zfmodel.hpp"

namespace iazf {

/// Jacobian of the effective coefficients of one table with respect to all
/// scalars (entry order) followed by all channel gains h_{p,q} (p, q
/// lexicographic, p != q).
struct Jacobian {
    FieldMatrix matrix;
    std::vector<EffectiveCoefficient> rows;
    std::vector<VariableId> cols;

    /// Column of `var`; throws DomainError when absent.
    int column_of(const VariableId& var) const;
};

/// Column layout used by jacobian_at.
std::vector<VariableId> jacobian_columns(const AssignmentTable& table);

/// Entries are exact analytic derivatives: the s-column of a coefficient's
/// own message holds mu, and h_{a,b} (a in S or the observer, b in T) holds
/// s times the signed cofactor of that position in the stack.
Jacobian jacobian_at(const AssignmentTable& table, const ChannelPoint& point);

struct IndependenceReport {
    int K = 0;
    int r = 0;
    NodeSet label;
    int rows = 0;
    int cols = 0;
    /// Largest rank over the trials.
    int rank = 0;
    std::vector<int> trial_ranks;
    bool full_rank = false;
    int trials = 0;
    std::uint64_t seed = 0;
    std::uint64_t modulus = 0;
    /// d in the per-trial Schwartz-Zippel bound d / p; d = rows * (r + 1).
    std::int64_t degree_bound = 0;
    /// (d / p)^trials.
    Rational failure_probability_bound;
    double log2_failure_bound = 0.0;
    double log2_failure_bound_per_trial = 0.0;
};

/// Rank of the Jacobian at `trials` uniform nonzero points. One full-rank
/// evaluation certifies generic full row rank, hence algebraic independence.
IndependenceReport verify_independence(const SystemParams& params, const NodeSet& label, int trials,
                                       std::uint64_t seed, PrimeField field = PrimeField{});

/// One report per label, in label order.
std::vector<IndependenceReport> verify_all_independence(const SystemParams& params, int trials, std::uint64_t seed,
                                                        PrimeField field = PrimeField{});

std::string to_json(const IndependenceReport& report);
std::string to_json(const std::vector<IndependenceReport>& reports);

// ---------------------------------------------------------------------------
// K = 5, L = {5}: the block structure behind the analytic independence proof.
// ---------------------------------------------------------------------------

/// Jacobian after subtracting mu_use / mu_intf times the interference row from
/// each useful row, which clears every useful row's s-columns.
struct EliminatedJacobian {
    Jacobian jacobian;
    /// Row index of the useful (observer k) and interference (observer 5)
    /// coefficient for entry e.
    std::vector<int> useful_row;
    std::vector<int> interference_row;
};

/// Throws DomainError when an interference pivot mu vanishes, or when the
/// table is not a single-observer-label table.
EliminatedJacobian eliminate_scale_columns(const AssignmentTable& table, const ChannelPoint& point);

/// Grouping of the 12 useful coefficients (G1..G4) and the 12 channel gains
/// among nodes 1..4 (h1..h4). `h3_displayed` is the variable pair the J33
/// display differentiates against, which differs from the h3 grouping.
struct K5Grouping {
    std::vector<std::vector<std::pair<int, NodeSet>>> g;  // (receiver, T)
    std::vector<std::vector<std::pair<int, int>>> h;      // (rx, tx)
    std::vector<std::pair<int, int>> h3_displayed;
};
const K5Grouping& k5_grouping();

/// Block J_{ij} = dG_i / dh_j (1-based groups) of the eliminated Jacobian.
FieldMatrix k5_block(const EliminatedJacobian& ej, int gi, int hj);
/// J33 against the displayed variables (h21, h41). h41 sits in the h1 group,
/// so this is not a diagonal block of the partition; after elimination its
/// determinant is h23 h43 - h23 h43 = 0 identically. Reported for the record.
FieldMatrix k5_block_j33_displayed(const EliminatedJacobian& ej);
/// J22 as printed: entries built from the closed-form expressions with the
/// row factor s and per-row sign of the stack orientation.
FieldMatrix k5_j22_expected(const ChannelPoint& point);

struct K5BlockReport {
    int points = 0;
    std::uint64_t seed = 0;
    int elimination_ok = 0;       // useful rows clear of s, interference rows single s
    int zero_blocks_ok = 0;       // J32, J34, J42, J43 all zero
    int j22_pattern_ok = 0;       // only diagonal + cyclic superdiagonal nonzero
    int j22_matches_display = 0;  // entries equal the closed form
    int j22_det_formula_ok = 0;   // det = prod(diag) - prod(superdiag)
    int j22_nonzero = 0;
    int j33_nonzero = 0;          // grouping variant (h21, h43)
    int j33_displayed_nonzero = 0;  // displayed variant (h21, h41), expected 0
    int j44_nonzero = 0;
    int factorization_ok = 0;     // det(J) == det(D) det(J'11) det(J22) det(J33) det(J44)
    int factorization_nonzero = 0;
    int full_rank = 0;            // rank 24
    int special_j22_diagonal = 0;
    int special_j22_det_ok = 0;
    int special_full_rank = 0;
    int special_points = 0;
    std::vector<std::string> failures;

    bool pass() const;
};

/// Runs every structural check at `points` random points, plus the special
/// realization at a few seeded free-value draws.
K5BlockReport k5_block_structure_check(std::uint64_t seed, int points = 100, PrimeField field = PrimeField{});
std::string to_json(const K5BlockReport& report);

/// Raised when a sampled configuration hits a vanishing denominator.
class ResampleError : public DomainError {
  public:
    using DomainError::DomainError;
};

/// Channel realization with all s = 1, h_{5,b} = 1, and h14, h21, h32, h43
/// solved so that every superdiagonal entry of J22 vanishes. Free channel
/// gains come from `free_values` and, when absent there, from a seeded draw.
ChannelPoint solve_special_realization(const std::map<VariableId, FieldElement>& free_values, std::uint64_t seed,
                                       PrimeField field = PrimeField{});

}  // namespace iazf
