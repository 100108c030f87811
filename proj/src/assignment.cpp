#include "iazf/assignment.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace iazf {

std::vector<const Assignment*> AssignmentTable::column(NodeId k) const {
    std::vector<const Assignment*> out;
    for (const auto& e : entries) {
        if (e.receiver == k) out.push_back(&e);
    }
    return out;
}

const Assignment* AssignmentTable::find(const NodeSet& transmit_set, NodeId receiver) const {
    for (const auto& e : entries) {
        if (e.receiver == receiver && e.transmit_set == transmit_set) return &e;
    }
    return nullptr;
}

namespace {

Assignment make_entry(const SystemParams& params, const NodeSet& label, const NodeSet& T, NodeId k) {
    Assignment a;
    a.transmit_set = T;
    a.receiver = k;
    a.interference_set = label;
    a.zf_set = params.nodes() - (T.with(k) | label);
    return a;
}

bool entry_less(const Assignment& a, const Assignment& b) {
    if (a.receiver != b.receiver) return a.receiver < b.receiver;
    return a.transmit_set < b.transmit_set;
}

}  // namespace

AssignmentTable build_assignment_table(const SystemParams& params, const NodeSet& label) {
    if (label.size() != params.label_size()) {
        throw DomainError("label " + label.to_string() + " must have size K-2r = " + std::to_string(params.label_size()));
    }
    if (!label.is_subset_of(params.nodes())) {
        throw DomainError("label " + label.to_string() + " is not a subset of [K]");
    }

    const NodeSet ground = params.nodes() - label;
    const int r = params.r();

    // (receiver, T) pairs; a set so the direct and spill rules cannot emit
    // the same cell twice.
    std::set<std::pair<int, NodeSet>> cells;
    for (NodeId k : ground) {
        const NodeSet pred = consecutive_predecessors(k, r - 1, ground);
        const NodeSet candidates = ground - pred.with(k);
        const NodeId next = cyclic_successor(k, ground);
        for (NodeId t : candidates) {
            const NodeSet T = pred.with(t);
            cells.emplace(k.value, T);
            if (params.odd() && !T.contains(next)) cells.emplace(next.value, T);
        }
    }

    AssignmentTable table{params, label, {}};
    table.entries.reserve(cells.size());
    for (const auto& [k, T] : cells) table.entries.push_back(make_entry(params, label, T, NodeId{k}));
    std::sort(table.entries.begin(), table.entries.end(), entry_less);
    return table;
}

std::map<NodeSet, AssignmentTable> build_all_tables(const SystemParams& params) {
    std::map<NodeSet, AssignmentTable> out;
    for (const auto& label : k_subsets(params.nodes(), params.label_size())) {
        out.emplace(label, build_assignment_table(params, label));
    }
    return out;
}

int expected_entries_per_column(const SystemParams& params) {
    return params.odd() ? params.K() - 2 : params.r();
}

ValidationReport validate_table(const AssignmentTable& table) {
    ValidationReport report;
    const SystemParams& params = table.params;
    const NodeSet all = params.nodes();
    const int r = params.r();

    auto fail = [&](std::string kind, const Assignment* e, std::string detail) {
        report.valid = false;
        Violation v;
        v.kind = std::move(kind);
        if (e) {
            v.transmit_set = e->transmit_set;
            v.receiver = e->receiver;
        }
        v.detail = std::move(detail);
        report.violations.push_back(std::move(v));
    };

    if (table.label.size() != params.label_size() || !table.label.is_subset_of(all)) {
        fail("label", nullptr, "label " + table.label.to_string() + " must be a size-" +
                                   std::to_string(params.label_size()) + " subset of [K]");
    }

    std::set<std::pair<int, NodeSet>> seen;
    for (const auto& e : table.entries) {
        const std::string cell = "(T=" + e.transmit_set.to_string() + ", k=" + std::to_string(e.receiver.value) + ")";
        if (!seen.emplace(e.receiver.value, e.transmit_set).second) {
            fail("duplicate", &e, cell + " appears more than once");
        }
        if (e.transmit_set.size() != r || !e.transmit_set.is_subset_of(all)) {
            fail("transmit_set", &e, cell + " transmit set must be a size-r subset of [K]");
        }
        if (!all.contains(e.receiver)) {
            fail("receiver", &e, cell + " receiver outside [K]");
        }
        if (e.transmit_set.contains(e.receiver)) {
            fail("receiver_in_T", &e, cell + " receiver belongs to its transmit set");
        }
        if (e.interference_set.contains(e.receiver)) {
            fail("receiver_in_L", &e, cell + " receiver belongs to the interference set");
        }
        if (!e.transmit_set.disjoint(e.interference_set)) {
            fail("T_meets_L", &e, cell + " transmit set meets the interference set");
        }
        if (e.interference_set != table.label) {
            fail("label_mismatch", &e, cell + " interference set " + e.interference_set.to_string() +
                                           " differs from label " + table.label.to_string());
        }
        const NodeSet expected_zf = all - (e.transmit_set.with(e.receiver) | e.interference_set);
        if (e.zf_set != expected_zf) {
            fail("zf_set", &e, cell + " zero-forcing set " + e.zf_set.to_string() + " should be " + expected_zf.to_string());
        }
        if (e.zf_set.size() != r - 1) {
            fail("zf_size", &e, cell + " zero-forcing set must have r-1 nodes");
        }
        // Alignment: the nodes that hear this codeword as interference are
        // exactly the label.
        const NodeSet hears = all - (e.transmit_set.with(e.receiver) | e.zf_set);
        if (hears != table.label) {
            fail("alignment", &e, cell + " interference lands on " + hears.to_string() + " instead of " +
                                      table.label.to_string());
        }
    }

    const int expected = expected_entries_per_column(params);
    for (NodeId k : all) {
        int count = 0;
        for (const auto& e : table.entries) count += e.receiver == k ? 1 : 0;
        if (table.label.contains(k)) {
            if (count != 0) fail("column_count", nullptr, "label column " + std::to_string(k.value) + " holds entries");
            continue;
        }
        report.column_counts[k.value] = count;
        if (count != expected) {
            Violation v;
            v.kind = "column_count";
            v.receiver = k;
            v.detail = "column " + std::to_string(k.value) + " holds " + std::to_string(count) + " entries, expected " +
                       std::to_string(expected);
            report.valid = false;
            report.violations.push_back(std::move(v));
        }
    }
    return report;
}

MatrixCount count_matrices_at_node(const std::map<NodeSet, AssignmentTable>& tables, NodeId k) {
    MatrixCount count;
    for (const auto& [label, table] : tables) {
        if (label.contains(k)) {
            ++count.interfering;
            continue;
        }
        std::int64_t addressed = 0;
        for (const auto& e : table.entries) addressed += e.receiver == k ? 1 : 0;
        if (addressed > 0) ++count.desired;
        count.desired_codewords += addressed;
    }
    return count;
}

MatrixCount count_matrices_at_node(const SystemParams& params, NodeId k) {
    if (!params.nodes().contains(k)) throw DomainError("node outside [K]");
    return count_matrices_at_node(build_all_tables(params), k);
}

TableFormat parse_table_format(const std::string& name) {
    if (name == "markdown" || name == "md") return TableFormat::markdown;
    if (name == "csv") return TableFormat::csv;
    if (name == "json") return TableFormat::json;
    throw DomainError("unsupported format '" + name + "' (expected markdown, csv or json)");
}

std::string label_symbol(const NodeSet& label) { return "U_{" + label.to_csv() + "}"; }

namespace {

std::string csv_field(const std::string& s) {
    if (s.find(',') == std::string::npos && s.find('"') == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string cell_text(const AssignmentTable& table, const NodeSet& T, NodeId k) {
    if (T.contains(k)) return "x";
    if (table.find(T, k)) return label_symbol(table.label);
    return "o";
}

nlohmann::ordered_json table_json(const AssignmentTable& table) {
    nlohmann::ordered_json j;
    j["K"] = table.params.K();
    j["r"] = table.params.r();
    j["label"] = table.label.values();
    auto entries = nlohmann::ordered_json::array();
    for (const auto& e : table.entries) {
        nlohmann::ordered_json item;
        item["T"] = e.transmit_set.values();
        item["k"] = e.receiver.value;
        item["S"] = e.zf_set.values();
        entries.push_back(std::move(item));
    }
    j["entries"] = std::move(entries);
    return j;
}

}  // namespace

std::string render_table(const AssignmentTable& table, TableFormat format) {
    const SystemParams& params = table.params;
    const NodeSet all = params.nodes();
    std::ostringstream out;
    switch (format) {
        case TableFormat::markdown: {
            out << "| T \\ k |";
            for (NodeId k : all) out << ' ' << k.value << " |";
            out << "\n|---|";
            for (int i = 0; i < params.K(); ++i) out << "---|";
            out << '\n';
            for (const auto& T : k_subsets(all, params.r())) {
                out << "| " << T.to_string() << " |";
                for (NodeId k : all) out << ' ' << cell_text(table, T, k) << " |";
                out << '\n';
            }
            break;
        }
        case TableFormat::csv: {
            out << "T";
            for (NodeId k : all) out << ',' << k.value;
            out << '\n';
            for (const auto& T : k_subsets(all, params.r())) {
                out << csv_field(T.to_string());
                for (NodeId k : all) out << ',' << csv_field(cell_text(table, T, k));
                out << '\n';
            }
            break;
        }
        case TableFormat::json:
            out << table_json(table).dump(2) << '\n';
            break;
    }
    return out.str();
}

AssignmentTable table_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("table json: ") + e.what());
    }
    try {
        const SystemParams params(j.at("K").get<int>(), j.at("r").get<int>());
        auto to_set = [](const nlohmann::json& arr) {
            std::vector<NodeId> ids;
            for (const auto& v : arr) ids.emplace_back(v.get<int>());
            return NodeSet(ids);
        };
        AssignmentTable table{params, to_set(j.at("label")), {}};
        for (const auto& item : j.at("entries")) {
            Assignment a;
            a.transmit_set = to_set(item.at("T"));
            a.receiver = NodeId{item.at("k").get<int>()};
            a.interference_set = table.label;
            a.zf_set = item.contains("S") ? to_set(item.at("S"))
                                          : params.nodes() - (a.transmit_set.with(a.receiver) | table.label);
            table.entries.push_back(a);
        }
        return table;
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("table json: ") + e.what());
    }
}

}  // namespace iazf
