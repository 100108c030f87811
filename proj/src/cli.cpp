#include "iazf/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "iazf/assignment.hpp"
#include "iazf/converse.hpp"
#include "iazf/independence.hpp"
#include "iazf/tradeoff.hpp"
#include "iazf/zfmodel.hpp"

namespace iazf::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    int K = 0;
    std::string label;
    int trials = 3;
    std::uint64_t seed = 42;
    std::string modulus;
    std::string format;
    std::string output;
    std::string input;
    int k_min = 5;
    int k_max = 15;
    int points = 100;
    bool plot_data = false;
};

struct Outcome {
    std::string document;
    bool pass = true;
};

using json = nlohmann::ordered_json;

PrimeField field_from(const Options& o) {
    std::string text = o.modulus;
    if (text.empty()) {
        if (const char* env = std::getenv("IAZF_FIELD_MODULUS"); env && *env) text = env;
    }
    if (text.empty()) return PrimeField{};
    std::uint64_t p = 0;
    try {
        std::size_t used = 0;
        p = std::stoull(text, &used, 0);
        if (used != text.size()) throw std::invalid_argument(text);
    } catch (const std::logic_error&) {
        throw UsageError("field modulus '" + text + "' is not an integer");
    }
    try {
        return PrimeField(p);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
}

std::vector<NodeSet> labels_for(const SystemParams& params, const Options& o) {
    if (o.label.empty()) return k_subsets(params.nodes(), params.label_size());
    NodeSet label;
    try {
        label = NodeSet::parse(o.label);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    if (!label.is_subset_of(params.nodes()) || label.size() != params.label_size()) {
        throw UsageError("label " + label.to_string() + " must be a subset of [" + std::to_string(params.K()) +
                         "] of size " + std::to_string(params.label_size()));
    }
    return {label};
}

SystemParams params_for(const Options& o) {
    if (o.K == 0) throw UsageError("--k is required");
    try {
        return SystemParams(o.K);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
}

TableFormat format_for(const Options& o, TableFormat fallback) {
    if (o.format.empty()) return fallback;
    try {
        return parse_table_format(o.format);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome cmd_assign(const Options& o) {
    const SystemParams params = params_for(o);
    const TableFormat fmt = format_for(o, TableFormat::markdown);
    const auto labels = labels_for(params, o);
    Outcome res;
    if (fmt == TableFormat::json && labels.size() > 1) {
        auto arr = json::array();
        for (const auto& l : labels) arr.push_back(json::parse(render_table(build_assignment_table(params, l), fmt)));
        res.document = arr.dump(2) + "\n";
        return res;
    }
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i > 0) res.document += "\n";
        res.document += render_table(build_assignment_table(params, labels[i]), fmt);
    }
    return res;
}

json validation_json(const AssignmentTable& table, const ValidationReport& rep) {
    json j;
    j["K"] = table.params.K();
    j["label"] = table.label.values();
    j["valid"] = rep.valid;
    json counts = json::object();
    for (auto [k, n] : rep.column_counts) counts[std::to_string(k)] = n;
    j["column_counts"] = counts;
    j["expected_per_column"] = expected_entries_per_column(table.params);
    auto vs = json::array();
    for (const auto& v : rep.violations) {
        vs.push_back({{"kind", v.kind}, {"T", v.transmit_set.values()}, {"k", v.receiver.value}, {"detail", v.detail}});
    }
    j["violations"] = vs;
    return j;
}

Outcome cmd_validate(const Options& o) {
    std::vector<AssignmentTable> tables;
    if (!o.input.empty()) {
        try {
            tables.push_back(table_from_json(read_file(o.input)));
        } catch (const DomainError& e) {
            throw UsageError(o.input + ": " + e.what());
        } catch (const nlohmann::json::exception& e) {
            throw UsageError(o.input + ": " + e.what());
        }
    } else {
        const SystemParams params = params_for(o);
        for (const auto& l : labels_for(params, o)) tables.push_back(build_assignment_table(params, l));
    }
    const TableFormat fmt = format_for(o, TableFormat::json);
    Outcome res;
    auto arr = json::array();
    std::ostringstream text;
    for (const auto& t : tables) {
        const ValidationReport rep = validate_table(t);
        res.pass = res.pass && rep.valid;
        arr.push_back(validation_json(t, rep));
        if (fmt == TableFormat::csv) {
            if (text.tellp() == 0) text << "K,label,valid,violations\n";
            text << t.params.K() << ",\"" << t.label.to_csv() << "\"," << (rep.valid ? "true" : "false") << ','
                 << rep.violations.size() << '\n';
        } else {
            text << "K=" << t.params.K() << " " << label_symbol(t.label) << ": " << (rep.valid ? "valid" : "INVALID")
                 << '\n';
            for (const auto& v : rep.violations) {
                text << "  " << v.kind << " T=" << v.transmit_set.to_string() << " k=" << v.receiver.value << ": "
                     << v.detail << '\n';
            }
        }
    }
    res.document = fmt == TableFormat::json ? (tables.size() == 1 ? arr[0] : arr).dump(2) + "\n" : text.str();
    return res;
}

Outcome cmd_zf_check(const Options& o) {
    const SystemParams params = params_for(o);
    const PrimeField field = field_from(o);
    const TableFormat fmt = format_for(o, TableFormat::json);
    std::map<NodeSet, AssignmentTable> tables;
    for (const auto& l : labels_for(params, o)) tables.emplace(l, build_assignment_table(params, l));

    Outcome res;
    auto arr = json::array();
    std::ostringstream text;
    if (fmt == TableFormat::csv) text << "K,label,trials,checks,failures,pass\n";
    for (const auto& [label, table] : tables) {
        const ZeroForcingReport rep = verify_zero_forcing(table, o.trials, o.seed, field);
        res.pass = res.pass && rep.pass();
        arr.push_back({{"K", params.K()}, {"label", label.values()}, {"trials", rep.trials}, {"checks", rep.checks},
                       {"failures", rep.failures}, {"pass", rep.pass()}});
        if (fmt == TableFormat::csv) {
            text << params.K() << ",\"" << label.to_csv() << "\"," << rep.trials << ',' << rep.checks << ','
                 << rep.failures << ',' << (rep.pass() ? "true" : "false") << '\n';
        } else {
            text << label_symbol(label) << ": " << rep.checks << " null-space checks, " << rep.failures
                 << " failures\n";
        }
    }
    const AlignmentReport align = verify_alignment_structure(tables);
    res.pass = res.pass && align.pass;
    if (fmt == TableFormat::json) {
        json j;
        j["zero_forcing"] = arr;
        j["alignment"] = {{"pass", align.pass}, {"tables", align.tables}, {"coefficients", align.coefficients},
                          {"violations", align.violations}};
        res.document = j.dump(2) + "\n";
    } else {
        if (fmt == TableFormat::markdown) {
            text << "alignment: " << (align.pass ? "pass" : "FAIL") << " (" << align.coefficients
                 << " coefficients)\n";
        }
        res.document = text.str();
    }
    return res;
}

Outcome cmd_verify_independence(const Options& o) {
    const SystemParams params = params_for(o);
    const PrimeField field = field_from(o);
    const TableFormat fmt = format_for(o, TableFormat::json);
    if (o.trials < 1) throw UsageError("--trials must be at least 1");
    std::vector<IndependenceReport> reports;
    for (const auto& l : labels_for(params, o)) reports.push_back(verify_independence(params, l, o.trials, o.seed, field));

    Outcome res;
    for (const auto& r : reports) res.pass = res.pass && r.full_rank;
    std::ostringstream text;
    switch (fmt) {
        case TableFormat::json:
            res.document = reports.size() == 1 ? to_json(reports[0]) : to_json(reports);
            return res;
        case TableFormat::csv:
            text << "K,label,rows,cols,rank,full_rank,trials,log2_failure_bound,seed\n";
            for (const auto& r : reports) {
                text << r.K << ",\"" << r.label.to_csv() << "\"," << r.rows << ',' << r.cols << ',' << r.rank << ','
                     << (r.full_rank ? "true" : "false") << ',' << r.trials << ',' << r.log2_failure_bound << ','
                     << r.seed << '\n';
            }
            break;
        case TableFormat::markdown:
            text << "| label | rows | cols | rank | full rank | log2 bound |\n|---|---|---|---|---|---|\n";
            for (const auto& r : reports) {
                text << "| " << label_symbol(r.label) << " | " << r.rows << " | " << r.cols << " | " << r.rank
                     << " | " << (r.full_rank ? "yes" : "no") << " | " << r.log2_failure_bound << " |\n";
            }
            break;
    }
    res.document = text.str();
    return res;
}

Outcome cmd_k5_blocks(const Options& o) {
    if (o.K != 0 && o.K != 5) throw UsageError("k5-blocks only applies to K = 5");
    if (o.points < 1) throw UsageError("--points must be at least 1");
    const PrimeField field = field_from(o);
    const K5BlockReport rep = k5_block_structure_check(o.seed, o.points, field);
    Outcome res;
    res.pass = rep.pass();
    const TableFormat fmt = format_for(o, TableFormat::json);
    if (fmt == TableFormat::json) {
        res.document = to_json(rep);
        return res;
    }
    // flat key,value view of the json report
    const json j = json::parse(to_json(rep));
    std::ostringstream text;
    if (fmt == TableFormat::csv) text << "check,value\n";
    for (const auto& [key, value] : j.items()) {
        if (key == "failures") continue;
        if (fmt == TableFormat::csv) {
            text << key << ',' << (value.is_array() ? "\"" + value.dump() + "\"" : value.dump()) << '\n';
        } else {
            text << key << ": " << value.dump() << '\n';
        }
    }
    for (const auto& f : rep.failures) text << (fmt == TableFormat::csv ? "failure,\"" + f + "\"\n" : "failure: " + f + "\n");
    res.document = text.str();
    return res;
}

Outcome cmd_tradeoff(const Options& o) {
    int lo = o.k_min;
    int hi = o.k_max;
    if (o.K != 0) lo = hi = o.K;
    if (lo < kCertifiedKMin || lo > hi || hi > kMaxNodes) {
        throw UsageError("need 5 <= k-min <= k-max <= " + std::to_string(kMaxNodes));
    }
    const auto points = tradeoff_curve(lo, hi);
    Outcome res;
    for (const auto& p : points) {
        if (p.certified) res.pass = res.pass && p.gap.sign() > 0 && consistency_check(SystemParams(p.K));
    }
    if (o.plot_data) {
        res.document = tradeoff_plot_csv(points);
        return res;
    }
    switch (format_for(o, TableFormat::csv)) {
        case TableFormat::csv: res.document = tradeoff_csv(points); break;
        case TableFormat::json: res.document = tradeoff_json(points); break;
        case TableFormat::markdown: res.document = tradeoff_markdown(points); break;
    }
    return res;
}

Outcome cmd_converse(const Options& o) {
    std::vector<int> ks;
    if (o.K != 0) {
        ks.push_back(params_for(o).K());
    } else {
        if (o.k_min < kCertifiedKMin || o.k_min > o.k_max || o.k_max > kConverseEnumerationKMax) {
            throw UsageError("need 5 <= k-min <= k-max <= " + std::to_string(kConverseEnumerationKMax));
        }
        for (int K = o.k_min; K <= o.k_max; ++K) ks.push_back(K);
    }
    if (ks.front() > kConverseEnumerationKMax) {
        throw UsageError("converse enumeration is limited to K <= " + std::to_string(kConverseEnumerationKMax));
    }
    std::vector<ConverseReport> reports;
    for (int K : ks) reports.push_back(verify_counts(SystemParams(K)));

    Outcome res;
    for (const auto& r : reports) res.pass = res.pass && r.pass();
    const TableFormat fmt = format_for(o, TableFormat::json);
    std::ostringstream text;
    if (fmt == TableFormat::json) {
        if (reports.size() == 1) {
            res.document = to_json(reports[0]);
        } else {
            auto arr = json::array();
            for (const auto& r : reports) arr.push_back(json::parse(to_json(r)));
            res.document = arr.dump(2) + "\n";
        }
        return res;
    }
    if (fmt == TableFormat::csv) text << "K,r,V_total,V,sdof_upper,pairs_checked,all_pairs_equal,pass\n";
    else text << "| K | r | V_total | V | SDoF upper | pairs | equal | pass |\n|---|---|---|---|---|---|---|---|\n";
    for (const auto& r : reports) {
        const char* sep = fmt == TableFormat::csv ? "," : " | ";
        if (fmt == TableFormat::markdown) text << "| ";
        text << r.K << sep << r.r << sep << r.v_total << sep << r.v << sep << r.sdof_upper.to_fraction() << sep
             << r.pairs_checked << sep << (r.all_pairs_equal ? "true" : "false") << sep
             << (r.pass() ? "true" : "false");
        text << (fmt == TableFormat::markdown ? " |\n" : "\n");
    }
    res.document = text.str();
    return res;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Interference alignment with zero-forcing: assignment tables, independence and tradeoff checks",
                 "iazf"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub, bool label, bool random) {
        sub->add_option("--format", o.format, "markdown, csv or json");
        sub->add_option("--output", o.output, "write the document here instead of standard output");
        if (label) {
            sub->add_option("--k", o.K, "number of nodes K (>= 5)");
            sub->add_option("--l", o.label, "label as comma-separated node ids; omit for every label");
        }
        if (random) {
            sub->add_option("--trials", o.trials, "random evaluation points per table")->capture_default_str();
            sub->add_option("--seed", o.seed, "base seed")->capture_default_str();
            sub->add_option("--modulus", o.modulus, "prime field modulus (default 2^61-1, env IAZF_FIELD_MODULUS)");
        }
    };

    auto* assign = app.add_subcommand("assign", "render assignment tables");
    add_common(assign, true, false);
    auto* validate = app.add_subcommand("validate", "validate a constructed or stored table");
    add_common(validate, true, false);
    validate->add_option("--input", o.input, "table in the json entry-list form");
    auto* zf = app.add_subcommand("zf-check", "check zero-forcing and alignment");
    add_common(zf, true, true);
    auto* indep = app.add_subcommand("verify-independence", "Jacobian rank certificate per label");
    add_common(indep, true, true);
    auto* k5 = app.add_subcommand("k5-blocks", "block-structure checks for K = 5, L = {5}");
    add_common(k5, false, true);
    k5->add_option("--k", o.K, "must be 5 if given");
    k5->add_option("--points", o.points, "random points")->capture_default_str();
    auto* trade = app.add_subcommand("tradeoff", "exact NDT tradeoff values");
    add_common(trade, false, false);
    trade->add_option("--k", o.K, "single K");
    trade->add_option("--k-min", o.k_min)->capture_default_str();
    trade->add_option("--k-max", o.k_max)->capture_default_str();
    trade->add_flag("--plot-data", o.plot_data, "emit K,delta_ach,delta_lb for plotting");
    auto* conv = app.add_subcommand("converse-count", "enumerate the converse message sets");
    add_common(conv, false, false);
    conv->add_option("--k", o.K, "single K");
    conv->add_option("--k-min", o.k_min)->capture_default_str();
    conv->add_option("--k-max", o.k_max)->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitPass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    Outcome res;
    CLI::App* chosen = app.get_subcommands().front();
    const std::string name = chosen->get_name();
    try {
        if (name == "assign") res = cmd_assign(o);
        else if (name == "validate") res = cmd_validate(o);
        else if (name == "zf-check") res = cmd_zf_check(o);
        else if (name == "verify-independence") res = cmd_verify_independence(o);
        else if (name == "k5-blocks") res = cmd_k5_blocks(o);
        else if (name == "tradeoff") res = cmd_tradeoff(o);
        else res = cmd_converse(o);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n\n" << chosen->help();
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    if (o.output.empty()) {
        out << res.document;
    } else {
        std::ofstream f(o.output, std::ios::binary);
        if (!f || !(f << res.document)) {
            err << "error: cannot write " << o.output << '\n';
            return kExitUsage;
        }
    }
    if (!res.pass) err << name << ": verification failed\n";
    return res.pass ? kExitPass : kExitFail;
}

}  // namespace iazf::cli
