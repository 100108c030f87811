#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "iazf/core.hpp"
#include "iazf/rational.hpp"

namespace iazf {

/// Sub-message a^{dest}_{carrier,T}: the part of an intermediate value for
/// `dest`, computed by every node of T and sent by `carrier` alone.
struct SubIva {
    NodeId dest;
    NodeId carrier;
    NodeSet transmit_set;

    friend auto operator<=>(const SubIva&, const SubIva&) = default;
    friend bool operator==(const SubIva&, const SubIva&) = default;
};

/// Calls `visit` on every sub-message a^q_{t,T} (|T| = r, t in T, q not in
/// T) without materializing them.
void for_each_sub_iva(const SystemParams& params, const std::function<void(const SubIva&)>& visit);
std::int64_t count_total(const SystemParams& params);
/// Sorted.
std::vector<SubIva> enumerate_total(const SystemParams& params);

struct LemmaSets {
    NodeId j;
    NodeId t;
    /// Sorted.
    std::vector<SubIva> v_rx;
    /// Keyed by destination i; `order` lists the i in the cyclic order of
    /// [K]\{t} after j.
    std::map<int, std::vector<SubIva>> v_tx_by_i;
    std::vector<NodeId> order;

    std::int64_t size() const;
};

/// Throws DomainError when j == t or either lies outside [K].
LemmaSets lemma_sets(const SystemParams& params, NodeId j, NodeId t);

struct ConverseReport {
    int K = 0;
    int r = 0;
    std::int64_t v_total = 0;
    std::int64_t v = 0;  // common |V|, when all pairs agree
    Rational sdof_upper;
    int pairs_checked = 0;
    bool all_pairs_equal = false;
    bool total_ok = false;         // |V_total| == r C(K,r) (K-r)
    bool rx_ok = false;            // |V^Rx| == r C(K-1,r) for every pair
    bool tx_sizes_ok = false;      // |V^Tx,i| at cyclic position p == C(K-2-p, r-1)
    bool hockey_stick_ok = false;  // sum_p C(K-2-p, r-1) == C(K-2, r), by direct summation
    bool tx_total_ok = false;      // enumerated sum of |V^Tx,i| == C(K-2, r)
    bool disjoint_ok = false;
    bool membership_ok = false;
    bool sdof_closed_form_ok = false;
    /// For (j,t) = (2,1): last cyclic position (1-based) and node label with a
    /// nonempty V^Tx,i; every later set is empty.
    int last_nonempty_position = 0;
    int last_nonempty_label = 0;
    bool tails_empty = false;
    std::vector<std::string> failures;

    bool pass() const;
};

/// All ordered pairs for K <= 9, otherwise a fixed sample of at least 10.
std::vector<std::pair<NodeId, NodeId>> converse_pairs(const SystemParams& params);
ConverseReport verify_counts(const SystemParams& params);

/// K(K-1)r / ((K-2)r + K-1).
Rational sdof_upper_closed_form(const SystemParams& params);
/// Largest K for which sdof_upper enumerates the sets.
constexpr int kConverseEnumerationKMax = 20;
/// |V_total| / |V| from enumeration (K <= kConverseEnumerationKMax; the
/// closed form above that). Throws std::logic_error if the two disagree.
Rational sdof_upper(const SystemParams& params);

std::string to_json(const ConverseReport& report);

}  // namespace iazf
