#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "iazf/assignment.hpp"
#include "iazf/cli.hpp"
#include "iazf/converse.hpp"
#include "iazf/independence.hpp"
#include "iazf/tradeoff.hpp"
#include "iazf/zfmodel.hpp"

namespace py = pybind11;
using namespace iazf;

namespace {

NodeSet to_set(const std::vector<int>& ids) {
    NodeSet s;
    for (int v : ids) s = s.with(NodeId{v});
    return s;
}

PrimeField field_of(std::uint64_t modulus) { return modulus == 0 ? PrimeField{} : PrimeField(modulus); }

// rationals cross as "num/den" strings; the python package turns them into Fractions
py::dict point_dict(const TradeoffPoint& p) {
    py::dict d;
    d["K"] = p.K;
    d["r"] = p.r;
    d["dof_per_node"] = p.dof_per_node.to_fraction();
    d["sdof_achievable"] = p.sdof_achievable.to_fraction();
    d["sdof_upper"] = p.sdof_upper.to_fraction();
    d["delta_achievable"] = p.delta_achievable.to_fraction();
    d["delta_noncoop_lb"] = p.delta_noncoop_lb.to_fraction();
    d["gap"] = p.gap.to_fraction();
    d["certified"] = p.certified;
    return d;
}

}  // namespace

PYBIND11_MODULE(_iazf, m) {
    m.doc() = "Interference alignment / zero-forcing verification core";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

    m.def("assignment_entries", [](int K, const std::vector<int>& label) {
        const AssignmentTable t = build_assignment_table(SystemParams(K), to_set(label));
        std::vector<std::tuple<std::vector<int>, int, std::vector<int>>> out;
        for (const auto& e : t.entries) out.emplace_back(e.transmit_set.values(), e.receiver.value, e.zf_set.values());
        return out;
    }, py::arg("K"), py::arg("label"), "(T, k, S) for every assigned cell, sorted by (k, T).");

    m.def("render_table", [](int K, const std::vector<int>& label, const std::string& format) {
        return render_table(build_assignment_table(SystemParams(K), to_set(label)), parse_table_format(format));
    }, py::arg("K"), py::arg("label"), py::arg("format") = "markdown");

    m.def("validate_table_json", [](const std::string& text) {
        const ValidationReport rep = validate_table(table_from_json(text));
        std::vector<std::string> kinds;
        for (const auto& v : rep.violations) kinds.push_back(v.kind);
        return py::make_tuple(rep.valid, kinds);
    }, py::arg("text"), "(valid, violation kinds) for a table in the json entry-list form.");

    m.def("count_matrices_at_node", [](int K, int k) {
        const MatrixCount c = count_matrices_at_node(SystemParams(K), NodeId{k});
        return py::make_tuple(c.desired, c.interfering);
    }, py::arg("K"), py::arg("k"));

    m.def("zero_forcing_failures", [](int K, const std::vector<int>& label, int trials, std::uint64_t seed,
                                      std::uint64_t modulus) {
        const auto rep = verify_zero_forcing(build_assignment_table(SystemParams(K), to_set(label)), trials, seed,
                                             field_of(modulus));
        return py::make_tuple(rep.checks, rep.failures);
    }, py::arg("K"), py::arg("label"), py::arg("trials") = 3, py::arg("seed") = 42, py::arg("modulus") = 0);

    m.def("verify_independence", [](int K, const std::vector<int>& label, int trials, std::uint64_t seed,
                                    std::uint64_t modulus) {
        const auto r = verify_independence(SystemParams(K), to_set(label), trials, seed, field_of(modulus));
        py::dict d;
        d["K"] = r.K;
        d["label"] = r.label.values();
        d["rows"] = r.rows;
        d["cols"] = r.cols;
        d["rank"] = r.rank;
        d["trial_ranks"] = r.trial_ranks;
        d["full_rank"] = r.full_rank;
        d["trials"] = r.trials;
        d["seed"] = r.seed;
        d["log2_failure_bound"] = r.log2_failure_bound;
        d["log2_failure_bound_per_trial"] = r.log2_failure_bound_per_trial;
        return d;
    }, py::arg("K"), py::arg("label"), py::arg("trials") = 3, py::arg("seed") = 42, py::arg("modulus") = 0);

    m.def("k5_block_report_json", [](std::uint64_t seed, int points) {
        return to_json(k5_block_structure_check(seed, points));
    }, py::arg("seed") = 42, py::arg("points") = 100);

    m.def("dof_per_node", [](int K) { return dof_per_node(SystemParams(K)).to_fraction(); });
    m.def("ndt_achievable", [](int K) { return ndt_achievable(SystemParams(K)).value.to_fraction(); });
    m.def("ndt_noncoop_lb", [](int K) { return ndt_noncoop_lb(SystemParams(K)).to_fraction(); });
    m.def("corollary_gap", [](int K) { return corollary_gap(SystemParams(K)).to_fraction(); });
    m.def("consistency_check", [](int K) { return consistency_check(SystemParams(K)); });
    m.def("tradeoff_curve", [](int kmin, int kmax) {
        py::list out;
        for (const auto& p : tradeoff_curve(kmin, kmax)) out.append(point_dict(p));
        return out;
    }, py::arg("kmin"), py::arg("kmax"));

    m.def("converse_report_json", [](int K) { return to_json(verify_counts(SystemParams(K))); }, py::arg("K"));
    m.def("sdof_upper", [](int K) { return sdof_upper(SystemParams(K)).to_fraction(); });

    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out;
        std::ostringstream err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    }, py::arg("args"), "Runs the command-line dispatcher; returns (exit code, stdout, stderr).");
}
