#include "iazf/tradeoff.hpp"

#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "iazf/assignment.hpp"
#include "iazf/converse.hpp"

namespace iazf {

namespace {

Rational load_factor(const SystemParams& p) { return Rational(1) - Rational(p.r(), p.K()); }

}  // namespace

Rational dof_per_node(const SystemParams& params) {
    const std::int64_t K = params.K();
    if (params.odd()) {
        const std::int64_t m = (K - 1) * (K - 2);
        return Rational(m, m + 1);
    }
    const std::int64_t m = (K - 2) * (K - 2);
    return Rational(m, m + 4);
}

Rational sdof_achievable(const SystemParams& params) { return Rational(params.K()) * dof_per_node(params); }

Rational ndt_from_sdof(const SystemParams& params, const Rational& sdof) {
    if (sdof.sign() <= 0) throw DomainError("SDoF must be positive, got " + sdof.to_string());
    return load_factor(params) / sdof;
}

NdtValue ndt_achievable(const SystemParams& params) {
    const std::int64_t K = params.K();
    const Rational extra = params.odd() ? Rational(1, (K - 1) * (K - 2)) : Rational(4, (K - 2) * (K - 2));
    return {Rational(1, K) * load_factor(params) * (Rational(1) + extra), certified(params)};
}

Rational ndt_noncoop_lb(const SystemParams& params) {
    const std::int64_t K = params.K();
    const std::int64_t r = params.r();
    return Rational(1, K) * load_factor(params) * Rational((K - 2) * r + K - 1, r * (K - 1));
}

Rational corollary_gap(const SystemParams& params) {
    return ndt_noncoop_lb(params) - ndt_achievable(params).value;
}

Rational corollary_displayed_lb(const SystemParams& params) {
    const std::int64_t K = params.K();
    if (params.odd()) return Rational(1, K * (K - 1)) * load_factor(params);
    return Rational(1, K) * load_factor(params) * Rational((K - 2) * (K - 2) + 2 * (K - 1), (K - 2) * (K - 1));
}

ConsistencyReport consistency_report(const SystemParams& params) {
    ConsistencyReport rep;
    rep.ndt_routes_agree = ndt_achievable(params).value == ndt_from_sdof(params, sdof_achievable(params));

    // every receiver must see the same census, and its ratio must be the DoF
    const auto tables = build_all_tables(params);
    const std::int64_t per_matrix = expected_entries_per_column(params);
    bool uniform = true;
    std::optional<MatrixCount> first;
    for (NodeId k : params.nodes()) {
        const MatrixCount c = count_matrices_at_node(tables, k);
        if (!first) first = c;
        uniform = uniform && c == *first && c.desired_codewords == c.desired * per_matrix;
    }
    const std::int64_t desired = first->desired_codewords;
    rep.census_dof = Rational(desired, desired + first->interfering);
    rep.census_agrees = uniform && rep.census_dof == dof_per_node(params);
    return rep;
}

bool consistency_check(const SystemParams& params) { return consistency_report(params).pass(); }

TradeoffPoint tradeoff_point(const SystemParams& params) {
    TradeoffPoint p;
    p.K = params.K();
    p.r = params.r();
    p.dof_per_node = dof_per_node(params);
    p.sdof_achievable = sdof_achievable(params);
    p.sdof_upper = sdof_upper(params);
    const NdtValue ach = ndt_achievable(params);
    p.delta_achievable = ach.value;
    p.certified = ach.certified;
    p.delta_noncoop_lb = ndt_noncoop_lb(params);
    p.gap = p.delta_noncoop_lb - p.delta_achievable;
    return p;
}

std::vector<TradeoffPoint> tradeoff_curve(int kmin, int kmax) {
    if (kmin < kCertifiedKMin || kmin > kmax) {
        throw DomainError("need 5 <= k-min <= k-max, got " + std::to_string(kmin) + ".." + std::to_string(kmax));
    }
    std::vector<TradeoffPoint> out;
    for (int K = kmin; K <= kmax; ++K) out.push_back(tradeoff_point(SystemParams(K)));
    return out;
}

std::string tradeoff_csv(const std::vector<TradeoffPoint>& points) {
    std::ostringstream os;
    os << "K,r,delta_ach_num,delta_ach_den,delta_ach,delta_lb_num,delta_lb_den,delta_lb,gap,certified\n";
    for (const auto& p : points) {
        os << p.K << ',' << p.r << ',' << p.delta_achievable.numerator() << ',' << p.delta_achievable.denominator()
           << ',' << p.delta_achievable.to_decimal() << ',' << p.delta_noncoop_lb.numerator() << ','
           << p.delta_noncoop_lb.denominator() << ',' << p.delta_noncoop_lb.to_decimal() << ','
           << p.gap.to_fraction() << ',' << (p.certified ? "true" : "false") << '\n';
    }
    return os.str();
}

std::string tradeoff_plot_csv(const std::vector<TradeoffPoint>& points) {
    std::ostringstream os;
    os << "K,delta_ach,delta_lb\n";
    for (const auto& p : points) {
        os << p.K << ',' << p.delta_achievable.to_decimal() << ',' << p.delta_noncoop_lb.to_decimal() << '\n';
    }
    return os.str();
}

std::string tradeoff_json(const std::vector<TradeoffPoint>& points) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& p : points) {
        nlohmann::ordered_json j;
        j["K"] = p.K;
        j["r"] = p.r;
        j["dof_per_node"] = p.dof_per_node.to_fraction();
        j["sdof_achievable"] = p.sdof_achievable.to_fraction();
        j["sdof_upper"] = p.sdof_upper.to_fraction();
        j["delta_achievable"] = p.delta_achievable.to_fraction();
        j["delta_noncoop_lb"] = p.delta_noncoop_lb.to_fraction();
        j["gap"] = p.gap.to_fraction();
        j["certified"] = p.certified;
        const SystemParams params(p.K);
        const Rational shown = corollary_displayed_lb(params);
        j["displayed_lb"] = shown.to_fraction();
        j["displayed_lb_matches"] = shown == p.delta_noncoop_lb;
        arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
}

std::string tradeoff_markdown(const std::vector<TradeoffPoint>& points) {
    std::ostringstream os;
    os << "| K | r | DoF | SDoF (ach) | SDoF (upper) | Delta (ach) | Delta (lb) | gap | certified |\n";
    os << "|---|---|---|---|---|---|---|---|---|\n";
    for (const auto& p : points) {
        os << "| " << p.K << " | " << p.r << " | " << p.dof_per_node << " | " << p.sdof_achievable << " | "
           << p.sdof_upper << " | " << p.delta_achievable << " | " << p.delta_noncoop_lb << " | " << p.gap << " | "
           << (p.certified ? "yes" : "no") << " |\n";
    }
    return os.str();
}

}  // namespace iazf
