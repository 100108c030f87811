#pragma once

#include <map>
#include <string>
#include <vector>

#include "iazf/core.hpp"

namespace iazf {

/// One cell of a precoding table: the message from `transmit_set` to
/// `receiver` is precoded with U_L (L = `interference_set`) and zero-forced
/// at every node of `zf_set`.
struct Assignment {
    NodeSet transmit_set;
    NodeId receiver;
    NodeSet interference_set;
    NodeSet zf_set;

    friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// All cells that share the precoding label L. Entries are kept sorted by
/// (receiver, transmit_set).
struct AssignmentTable {
    SystemParams params;
    NodeSet label;
    std::vector<Assignment> entries;

    /// Entries whose receiver is `k`.
    std::vector<const Assignment*> column(NodeId k) const;
    /// The entry for (T, k), if any.
    const Assignment* find(const NodeSet& transmit_set, NodeId receiver) const;
};

/// Runs the cyclic assignment for one label L with |L| = K - 2r.
///
/// For each receiver k outside L the r-1 cyclic predecessors of k (in
/// [K] \ L) are completed by every admissible t to a transmit set T; for odd
/// K the same T is additionally assigned to the cyclic successor of k when
/// that successor is not in T.
AssignmentTable build_assignment_table(const SystemParams& params, const NodeSet& label);

/// One table per label L in [[K]]^{K-2r}.
std::map<NodeSet, AssignmentTable> build_all_tables(const SystemParams& params);

struct Violation {
    std::string kind;
    NodeSet transmit_set;
    NodeId receiver;
    std::string detail;
};

struct ValidationReport {
    bool valid = true;
    /// Entries per receiver column k outside the label.
    std::map<int, int> column_counts;
    std::vector<Violation> violations;
};

/// Entries per column the construction must produce: r for even K, K-2 for
/// odd K.
int expected_entries_per_column(const SystemParams& params);

ValidationReport validate_table(const AssignmentTable& table);

struct MatrixCount {
    std::int64_t desired = 0;
    std::int64_t interfering = 0;
    /// Codewords across all tables addressed to the node.
    std::int64_t desired_codewords = 0;

    friend bool operator==(const MatrixCount&, const MatrixCount&) = default;
};

/// Brute-force count over `tables` of the labels that carry a message to `k`
/// and of the labels whose interference lands on `k`.
MatrixCount count_matrices_at_node(const std::map<NodeSet, AssignmentTable>& tables, NodeId k);
MatrixCount count_matrices_at_node(const SystemParams& params, NodeId k);

enum class TableFormat { markdown, csv, json };

/// Parses "markdown" / "md", "csv", "json"; throws DomainError otherwise.
TableFormat parse_table_format(const std::string& name);

/// "U_{5}", "U_{5,6}".
std::string label_symbol(const NodeSet& label);

/// Grid rendering with rows T in [[K]]^r and columns k in [K]: "x" when
/// k is in T, the label symbol when assigned, "o" otherwise. The json format
/// emits the entry list instead of the grid.
std::string render_table(const AssignmentTable& table, TableFormat format);

/// Reads the json entry-list form back; S is recomputed when absent.
AssignmentTable table_from_json(const std::string& text);

}  // namespace iazf
