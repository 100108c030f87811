#include "iazf/core.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>

namespace iazf {

namespace {

void check_id(int v) {
    if (v < 1 || v > kMaxNodes) {
        throw DomainError("node id " + std::to_string(v) + " outside 1.." + std::to_string(kMaxNodes));
    }
}

std::uint64_t bit(int v) { return std::uint64_t{1} << v; }

}  // namespace

NodeSet::NodeSet(std::initializer_list<int> ids) {
    for (int v : ids) {
        check_id(v);
        mask_ |= bit(v);
    }
}

NodeSet::NodeSet(const std::vector<NodeId>& ids) {
    for (NodeId id : ids) {
        check_id(id.value);
        mask_ |= bit(id.value);
    }
}

NodeSet NodeSet::range(int n) {
    if (n < 0 || n > kMaxNodes) throw DomainError("range size out of bounds: " + std::to_string(n));
    NodeSet s;
    for (int v = 1; v <= n; ++v) s.mask_ |= bit(v);
    return s;
}

NodeSet NodeSet::from_mask(std::uint64_t mask) {
    if (mask & 1) throw DomainError("node id 0 is not valid");
    NodeSet s;
    s.mask_ = mask;
    return s;
}

bool NodeSet::contains(NodeId id) const {
    if (id.value < 1 || id.value > kMaxNodes) return false;
    return (mask_ & bit(id.value)) != 0;
}

NodeId NodeSet::min() const {
    if (empty()) throw DomainError("min of empty node set");
    return NodeId{std::countr_zero(mask_)};
}

NodeId NodeSet::max() const {
    if (empty()) throw DomainError("max of empty node set");
    return NodeId{63 - std::countl_zero(mask_)};
}

int NodeSet::index_of(NodeId id) const {
    if (!contains(id)) throw DomainError("node " + std::to_string(id.value) + " not in " + to_string());
    return std::popcount(mask_ & (bit(id.value) - 1));
}

NodeId NodeSet::at(int index) const {
    if (index < 0 || index >= size()) throw DomainError("node set index out of range");
    std::uint64_t rest = mask_;
    for (int i = 0; i < index; ++i) rest &= rest - 1;
    return NodeId{std::countr_zero(rest)};
}

std::vector<NodeId> NodeSet::members() const { return {begin(), end()}; }

std::vector<int> NodeSet::values() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (NodeId id : *this) out.push_back(id.value);
    return out;
}

NodeSet NodeSet::with(NodeId id) const {
    check_id(id.value);
    return from_mask(mask_ | bit(id.value));
}

NodeSet NodeSet::without(NodeId id) const {
    if (id.value < 1 || id.value > kMaxNodes) return *this;
    return from_mask(mask_ & ~bit(id.value));
}

std::string NodeSet::to_string() const { return "{" + to_csv() + "}"; }

std::string NodeSet::to_csv() const {
    std::string out;
    for (NodeId id : *this) {
        if (!out.empty()) out += ',';
        out += std::to_string(id.value);
    }
    return out;
}

NodeSet NodeSet::parse(const std::string& text) {
    std::string body;
    for (char c : text) {
        if (c == '{' || c == '}' || std::isspace(static_cast<unsigned char>(c))) continue;
        body += c;
    }
    NodeSet out;
    if (body.empty()) return out;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty() || !std::all_of(item.begin(), item.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
            throw DomainError("cannot parse node set '" + text + "'");
        }
        int v = std::stoi(item);
        check_id(v);
        if (out.contains(NodeId{v})) throw DomainError("duplicate node " + item + " in '" + text + "'");
        out = out.with(NodeId{v});
    }
    return out;
}

std::strong_ordering operator<=>(const NodeSet& a, const NodeSet& b) {
    auto ia = a.begin();
    auto ib = b.begin();
    for (; ia != a.end() && ib != b.end(); ++ia, ++ib) {
        if (auto c = (*ia).value <=> (*ib).value; c != 0) return c;
    }
    if (ia == a.end() && ib == b.end()) return std::strong_ordering::equal;
    return ia == a.end() ? std::strong_ordering::less : std::strong_ordering::greater;
}

SystemParams::SystemParams(int K) : K_(K), r_((K - 1) / 2) {
    if (K < 5) throw DomainError("K must be at least 5, got " + std::to_string(K));
    if (K > kMaxNodes) throw DomainError("K must be at most " + std::to_string(kMaxNodes));
}

SystemParams::SystemParams(int K, int r) : SystemParams(K) {
    if (r != r_) {
        throw DomainError("r must equal floor((K-1)/2) = " + std::to_string(r_) + ", got " + std::to_string(r));
    }
}

std::int64_t binomial(int n, int k) {
    if (n < 0) throw DomainError("binomial: n must be non-negative");
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    // exact at every step: result * (n-k+i) is divisible by i; the product
    // needs 128 bits near n = 63
    unsigned __int128 result = 1;
    for (int i = 1; i <= k; ++i) result = result * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (result > static_cast<unsigned __int128>(std::numeric_limits<std::int64_t>::max())) {
        throw DomainError("binomial(" + std::to_string(n) + ", " + std::to_string(k) + ") overflows 64 bits");
    }
    return static_cast<std::int64_t>(result);
}

NodeId cyclic_successor(NodeId x, const NodeSet& ground) {
    if (!ground.contains(x)) {
        throw DomainError("node " + std::to_string(x.value) + " not in ground set " + ground.to_string());
    }
    const std::uint64_t above = ground.mask() & ~((std::uint64_t{2} << x.value) - 1);
    return above ? NodeId{std::countr_zero(above)} : ground.min();
}

NodeId cyclic_predecessor(NodeId x, const NodeSet& ground) {
    if (!ground.contains(x)) {
        throw DomainError("node " + std::to_string(x.value) + " not in ground set " + ground.to_string());
    }
    const std::uint64_t below = ground.mask() & ((std::uint64_t{1} << x.value) - 1);
    return below ? NodeId{63 - std::countl_zero(below)} : ground.max();
}

NodeSet consecutive_predecessors(NodeId k, int count, const NodeSet& ground) {
    if (!ground.contains(k)) {
        throw DomainError("node " + std::to_string(k.value) + " not in ground set " + ground.to_string());
    }
    if (count < 0 || count >= ground.size()) {
        throw DomainError("predecessor count must lie in [0, |ground|)");
    }
    NodeSet out;
    NodeId cur = k;
    for (int i = 0; i < count; ++i) {
        cur = cyclic_predecessor(cur, ground);
        out = out.with(cur);
    }
    return out;
}

std::vector<NodeSet> k_subsets(const NodeSet& ground, int t) {
    const int n = ground.size();
    if (t < 0 || t > n) throw DomainError("k_subsets: t must lie in [0, |ground|]");
    const auto elems = ground.members();
    std::vector<NodeSet> out;
    out.reserve(static_cast<std::size_t>(binomial(n, t)));
    std::vector<int> idx(static_cast<std::size_t>(t));
    for (int i = 0; i < t; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
        std::uint64_t mask = 0;
        for (int i : idx) mask |= std::uint64_t{1} << elems[static_cast<std::size_t>(i)].value;
        out.push_back(NodeSet::from_mask(mask));
        int pos = t - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - t + pos) --pos;
        if (pos < 0) break;
        ++idx[static_cast<std::size_t>(pos)];
        for (int j = pos + 1; j < t; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}

}  // namespace iazf
