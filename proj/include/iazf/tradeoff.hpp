#pragma once

#include <string>
#include <vector>

#include "iazf/core.hpp"
#include "iazf/rational.hpp"

namespace iazf {

/// Certified node-count range of the achievable scheme.
constexpr int kCertifiedKMin = 5;
constexpr int kCertifiedKMax = 15;

inline bool certified(const SystemParams& params) {
    return params.K() >= kCertifiedKMin && params.K() <= kCertifiedKMax;
}

/// Achievable DoF per receiving node.
Rational dof_per_node(const SystemParams& params);
/// K * dof_per_node.
Rational sdof_achievable(const SystemParams& params);
/// (1 - r/K) / sdof; throws DomainError for sdof <= 0.
Rational ndt_from_sdof(const SystemParams& params, const Rational& sdof);

struct NdtValue {
    Rational value;
    /// False outside the certified K range; the value is still computed.
    bool certified = true;
};

/// Closed-form achievable NDT.
NdtValue ndt_achievable(const SystemParams& params);
/// Lower bound on the NDT of any non-cooperative scheme.
Rational ndt_noncoop_lb(const SystemParams& params);
/// ndt_noncoop_lb - ndt_achievable.
Rational corollary_gap(const SystemParams& params);

/// The simplified lower-bound expression shown alongside the gap statement:
/// (1/K)(1 - r/K)((K-2)^2 + 2(K-1))/((K-2)(K-1)) for even K and
/// (1/(K(K-1)))(1 - r/K) for odd K.
/// Kept only for comparison against the direct evaluation.
Rational corollary_displayed_lb(const SystemParams& params);

struct ConsistencyReport {
    bool ndt_routes_agree = false;   // closed form == (1 - r/K) / (K * dof)
    bool census_agrees = false;      // dof == census ratio from the tables
    Rational census_dof;
    bool pass() const { return ndt_routes_agree && census_agrees; }
};

ConsistencyReport consistency_report(const SystemParams& params);
bool consistency_check(const SystemParams& params);

struct TradeoffPoint {
    int K = 0;
    int r = 0;
    Rational dof_per_node;
    Rational sdof_achievable;
    Rational sdof_upper;
    Rational delta_achievable;
    Rational delta_noncoop_lb;
    Rational gap;
    bool certified = true;
};

TradeoffPoint tradeoff_point(const SystemParams& params);
/// One point per K in [kmin, kmax]; requires 5 <= kmin <= kmax.
std::vector<TradeoffPoint> tradeoff_curve(int kmin, int kmax);

std::string tradeoff_csv(const std::vector<TradeoffPoint>& points);
/// Columns K, delta_ach, delta_lb (decimal).
std::string tradeoff_plot_csv(const std::vector<TradeoffPoint>& points);
std::string tradeoff_json(const std::vector<TradeoffPoint>& points);
std::string tradeoff_markdown(const std::vector<TradeoffPoint>& points);

}  // namespace iazf
