#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace iazf {

/// Raised when an operation is called outside its domain (bad sizes, ids
/// outside the ground set, invalid parameters).
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// A node label, 1-based like the tables it is compared against.
struct NodeId {
    int value = 0;

    constexpr NodeId() = default;
    constexpr explicit NodeId(int v) : value(v) {}

    friend constexpr auto operator<=>(NodeId, NodeId) = default;
};

/// Largest node id a NodeSet can hold.
inline constexpr int kMaxNodes = 63;

/// A set of node ids in canonical ascending order.
///
/// Backed by a bitmask, so membership and set algebra are constant time and
/// two sets compare equal iff they hold the same members. Iteration yields
/// members in ascending order.
class NodeSet {
  public:
    class iterator {
      public:
        using value_type = NodeId;
        using difference_type = std::ptrdiff_t;

        iterator() = default;
        explicit iterator(std::uint64_t rest) : rest_(rest) {}

        NodeId operator*() const { return NodeId{std::countr_zero(rest_)}; }
        iterator& operator++() {
            rest_ &= rest_ - 1;
            return *this;
        }
        iterator operator++(int) {
            auto copy = *this;
            ++*this;
            return copy;
        }
        bool operator==(const iterator&) const = default;

      private:
        std::uint64_t rest_ = 0;
    };

    NodeSet() = default;
    NodeSet(std::initializer_list<int> ids);
    explicit NodeSet(const std::vector<NodeId>& ids);

    /// [n] = {1, ..., n}.
    static NodeSet range(int n);
    static NodeSet from_mask(std::uint64_t mask);

    std::uint64_t mask() const { return mask_; }
    int size() const { return std::popcount(mask_); }
    bool empty() const { return mask_ == 0; }
    bool contains(NodeId id) const;
    NodeId min() const;
    NodeId max() const;

    /// Position of `id` among the members (0-based); `id` must be a member.
    int index_of(NodeId id) const;
    /// The member at position `index` (0-based).
    NodeId at(int index) const;

    std::vector<NodeId> members() const;
    std::vector<int> values() const;

    NodeSet with(NodeId id) const;
    NodeSet without(NodeId id) const;
    NodeSet operator|(const NodeSet& other) const { return from_mask(mask_ | other.mask_); }
    NodeSet operator&(const NodeSet& other) const { return from_mask(mask_ & other.mask_); }
    NodeSet operator-(const NodeSet& other) const { return from_mask(mask_ & ~other.mask_); }
    bool is_subset_of(const NodeSet& other) const { return (mask_ & ~other.mask_) == 0; }
    bool disjoint(const NodeSet& other) const { return (mask_ & other.mask_) == 0; }

    iterator begin() const { return iterator{mask_}; }
    iterator end() const { return iterator{0}; }

    /// "{1,3}" style rendering.
    std::string to_string() const;
    /// "1,3" (the CLI label syntax).
    std::string to_csv() const;
    /// Parses "1,3" or "{1,3}".
    static NodeSet parse(const std::string& text);

    /// Lexicographic order on the ascending member lists, the order used
    /// everywhere a list of sets is emitted.
    friend std::strong_ordering operator<=>(const NodeSet& a, const NodeSet& b);
    friend bool operator==(const NodeSet& a, const NodeSet& b) { return a.mask_ == b.mask_; }

  private:
    std::uint64_t mask_ = 0;
};

/// Node count K and computation load r = floor((K-1)/2).
class SystemParams {
  public:
    /// Throws DomainError unless K >= 5 and K <= kMaxNodes.
    explicit SystemParams(int K);
    /// As above, and additionally requires r == floor((K-1)/2).
    SystemParams(int K, int r);

    int K() const { return K_; }
    int r() const { return r_; }
    bool odd() const { return K_ % 2 == 1; }
    /// |L| = K - 2r, which is 1 for odd K and 2 for even K.
    int label_size() const { return K_ - 2 * r_; }
    NodeSet nodes() const { return NodeSet::range(K_); }

    friend bool operator==(const SystemParams&, const SystemParams&) = default;

  private:
    int K_;
    int r_;
};

/// C(n, k); zero when k < 0 or k > n. Throws DomainError for n < 0.
std::int64_t binomial(int n, int k);

/// Next member of `ground` after `x` in ascending order, wrapping max -> min.
NodeId cyclic_successor(NodeId x, const NodeSet& ground);
NodeId cyclic_predecessor(NodeId x, const NodeSet& ground);

/// The `count` members immediately preceding `k` in the cyclic order of
/// `ground`, i.e. {k-count, ..., k-1} cyclically.
NodeSet consecutive_predecessors(NodeId k, int count, const NodeSet& ground);

/// All size-t subsets of `ground` in lexicographic order.
std::vector<NodeSet> k_subsets(const NodeSet& ground, int t);

}  // namespace iazf
