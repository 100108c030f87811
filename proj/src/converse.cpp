#include "iazf/converse.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "iazf/field.hpp"

namespace iazf {

void for_each_sub_iva(const SystemParams& params, const std::function<void(const SubIva&)>& visit) {
    const NodeSet all = params.nodes();
    for (const NodeSet& T : k_subsets(all, params.r())) {
        for (NodeId t : T) {
            for (NodeId q : all - T) visit(SubIva{q, t, T});
        }
    }
}

std::int64_t count_total(const SystemParams& params) {
    std::int64_t n = 0;
    for_each_sub_iva(params, [&](const SubIva&) { ++n; });
    return n;
}

std::vector<SubIva> enumerate_total(const SystemParams& params) {
    std::vector<SubIva> out;
    for_each_sub_iva(params, [&](const SubIva& a) { out.push_back(a); });
    std::sort(out.begin(), out.end());
    return out;
}

std::int64_t LemmaSets::size() const {
    std::int64_t n = static_cast<std::int64_t>(v_rx.size());
    for (const auto& [i, set] : v_tx_by_i) n += static_cast<std::int64_t>(set.size());
    return n;
}

LemmaSets lemma_sets(const SystemParams& params, NodeId j, NodeId t) {
    const NodeSet all = params.nodes();
    if (!all.contains(j) || !all.contains(t)) throw DomainError("lemma_sets: j and t must lie in [K]");
    if (j == t) throw DomainError("lemma_sets: j and t must differ");
    const int r = params.r();

    LemmaSets sets{j, t, {}, {}, {}};
    for (const NodeSet& T : k_subsets(all.without(j), r)) {
        for (NodeId u : T) sets.v_rx.push_back(SubIva{j, u, T});
    }
    std::sort(sets.v_rx.begin(), sets.v_rx.end());

    const NodeSet ground = all.without(t);
    NodeSet segment{j.value};
    for (NodeId i = cyclic_successor(j, ground); i != j; i = cyclic_successor(i, ground)) {
        segment = segment.with(i);
        sets.order.push_back(i);
        auto& bucket = sets.v_tx_by_i[i.value];
        // t is never in the segment, so T = {t} plus r-1 others outside it
        const NodeSet free = all - segment - NodeSet{t.value};
        if (free.size() < r - 1) continue;
        for (const NodeSet& rest : k_subsets(free, r - 1)) {
            bucket.push_back(SubIva{i, t, rest.with(t)});
        }
        std::sort(bucket.begin(), bucket.end());
    }
    return sets;
}

std::vector<std::pair<NodeId, NodeId>> converse_pairs(const SystemParams& params) {
    const int K = params.K();
    std::vector<std::pair<NodeId, NodeId>> all;
    for (int j = 1; j <= K; ++j) {
        for (int t = 1; t <= K; ++t) {
            if (j != t) all.emplace_back(NodeId{j}, NodeId{t});
        }
    }
    if (K <= 9) return all;
    // (2,1) is the labeling the tail statement refers to; the rest is a
    // seeded sample.
    std::set<std::pair<NodeId, NodeId>> picked{{NodeId{2}, NodeId{1}}};
    Rng rng(mix_seed(0xc0, static_cast<std::uint64_t>(K)));
    while (picked.size() < 12) picked.insert(all[rng.next() % all.size()]);
    return {picked.begin(), picked.end()};
}

bool ConverseReport::pass() const {
    return failures.empty() && total_ok && rx_ok && tx_sizes_ok && hockey_stick_ok && tx_total_ok && disjoint_ok &&
           membership_ok && all_pairs_equal && sdof_closed_form_ok && tails_empty;
}

namespace {

bool sorted_disjoint(const std::vector<SubIva>& a, const std::vector<SubIva>& b) {
    auto i = a.begin();
    auto k = b.begin();
    while (i != a.end() && k != b.end()) {
        if (*i == *k) return false;
        if (*i < *k) ++i; else ++k;
    }
    return true;
}

}  // namespace

Rational sdof_upper_closed_form(const SystemParams& params) {
    const std::int64_t K = params.K();
    const std::int64_t r = params.r();
    return Rational(K * (K - 1) * r, (K - 2) * r + K - 1);
}

ConverseReport verify_counts(const SystemParams& params) {
    const int K = params.K();
    const int r = params.r();
    ConverseReport rep;
    rep.K = K;
    rep.r = r;

    const std::vector<SubIva> total = enumerate_total(params);
    rep.v_total = static_cast<std::int64_t>(total.size());
    rep.total_ok = rep.v_total == static_cast<std::int64_t>(r) * binomial(K, r) * (K - r);

    std::int64_t hockey = 0;
    for (int p = 1; p <= K - 2; ++p) hockey += binomial(K - 2 - p, r - 1);
    rep.hockey_stick_ok = hockey == binomial(K - 2, r);

    rep.rx_ok = rep.tx_sizes_ok = rep.tx_total_ok = rep.disjoint_ok = rep.membership_ok = true;
    rep.all_pairs_equal = true;
    std::optional<std::int64_t> common;
    auto member = [&](const SubIva& a) { return std::binary_search(total.begin(), total.end(), a); };

    for (const auto& [j, t] : converse_pairs(params)) {
        const LemmaSets sets = lemma_sets(params, j, t);
        ++rep.pairs_checked;
        const std::string tag = "(j,t)=(" + std::to_string(j.value) + "," + std::to_string(t.value) + ")";

        if (static_cast<std::int64_t>(sets.v_rx.size()) != r * binomial(K - 1, r)) {
            rep.rx_ok = false;
            rep.failures.push_back(tag + ": |V^Rx| = " + std::to_string(sets.v_rx.size()));
        }
        std::int64_t tx_sum = 0;
        int position = 0;
        std::vector<const std::vector<SubIva>*> parts{&sets.v_rx};
        for (NodeId i : sets.order) {
            ++position;
            const auto& bucket = sets.v_tx_by_i.at(i.value);
            tx_sum += static_cast<std::int64_t>(bucket.size());
            if (static_cast<std::int64_t>(bucket.size()) != binomial(K - 2 - position, r - 1)) {
                rep.tx_sizes_ok = false;
                rep.failures.push_back(tag + ": |V^Tx," + std::to_string(i.value) + "| = " + std::to_string(bucket.size()));
            }
            parts.push_back(&bucket);
            if (j.value == 2 && t.value == 1 && !bucket.empty()) {
                rep.last_nonempty_position = position;
                rep.last_nonempty_label = i.value;
            }
        }
        if (j.value == 2 && t.value == 1) {
            rep.tails_empty = rep.last_nonempty_position == K - r - 1;
            for (std::size_t p = static_cast<std::size_t>(rep.last_nonempty_position); p < sets.order.size(); ++p) {
                rep.tails_empty = rep.tails_empty && sets.v_tx_by_i.at(sets.order[p].value).empty();
            }
        }
        if (tx_sum != binomial(K - 2, r)) {
            rep.tx_total_ok = false;
            rep.failures.push_back(tag + ": sum |V^Tx,i| = " + std::to_string(tx_sum));
        }
        for (std::size_t a = 0; a < parts.size(); ++a) {
            for (const SubIva& x : *parts[a]) {
                if (!member(x)) {
                    rep.membership_ok = false;
                    rep.failures.push_back(tag + ": element outside V_total");
                    break;
                }
            }
            for (std::size_t b = a + 1; b < parts.size(); ++b) {
                if (!sorted_disjoint(*parts[a], *parts[b])) {
                    rep.disjoint_ok = false;
                    rep.failures.push_back(tag + ": overlapping sets");
                }
            }
        }
        const std::int64_t v = sets.size();
        if (!common) common = v;
        if (v != *common) rep.all_pairs_equal = false;
    }
    // (2,1) is not in the sampled list only if K < 3, which params forbids
    rep.v = *common;
    if (rep.all_pairs_equal && rep.v > 0) {
        rep.sdof_upper = Rational(rep.v_total, rep.v);
        rep.sdof_closed_form_ok = rep.sdof_upper == sdof_upper_closed_form(params) &&
                                  rep.v == binomial(K - 2, r) + r * binomial(K - 1, r);
    }
    return rep;
}

Rational sdof_upper(const SystemParams& params) {
    const Rational closed = sdof_upper_closed_form(params);
    if (params.K() > kConverseEnumerationKMax) return closed;
    const std::int64_t v = lemma_sets(params, NodeId{2}, NodeId{1}).size();
    const Rational enumerated(count_total(params), v);
    if (enumerated != closed) {
        throw std::logic_error("converse enumeration gives " + enumerated.to_string() + ", closed form " +
                               closed.to_string());
    }
    return enumerated;
}

std::string to_json(const ConverseReport& r) {
    nlohmann::ordered_json j;
    j["K"] = r.K;
    j["r"] = r.r;
    j["V_total"] = r.v_total;
    j["V"] = r.v;
    j["sdof_upper"] = r.sdof_upper.to_fraction();
    j["pairs_checked"] = r.pairs_checked;
    j["all_pairs_equal"] = r.all_pairs_equal;
    return j.dump(2) + "\n";
}

}  // namespace iazf
