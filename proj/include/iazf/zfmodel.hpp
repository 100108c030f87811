#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "iazf/assignment.hpp"
#include "iazf/field.hpp"

namespace iazf {

/// A variable of the post-ZF coefficient polynomials: a channel gain
/// h_{row,col} (receiver row, transmitter col) or a per-message scalar
/// s_{k,T}.
struct VariableId {
    enum class Kind { scale, channel };

    Kind kind = Kind::channel;
    NodeId row;
    NodeId col;
    NodeId receiver;
    NodeSet transmit_set;

    static VariableId channel(NodeId rx, NodeId tx);
    static VariableId channel(int rx, int tx) { return channel(NodeId{rx}, NodeId{tx}); }
    static VariableId scale(NodeId receiver, const NodeSet& transmit_set);

    /// "h_{1,2}" or "s_{3,{1,2}}".
    std::string to_string() const;

    friend auto operator<=>(const VariableId&, const VariableId&) = default;
    friend bool operator==(const VariableId&, const VariableId&) = default;
};

/// One evaluation point: values for channel gains and message scalars over a
/// prime field.
class ChannelPoint {
  public:
    ChannelPoint(PrimeField field, int K);

    const PrimeField& field() const { return field_; }
    int K() const { return K_; }

    void set(const VariableId& var, FieldElement value);
    void set_h(int rx, int tx, FieldElement value) { set(VariableId::channel(rx, tx), value); }
    bool bound(const VariableId& var) const;
    /// Throws DomainError when `var` has no value.
    FieldElement get(const VariableId& var) const;
    FieldElement h(NodeId rx, NodeId tx) const;
    FieldElement h(int rx, int tx) const { return h(NodeId{rx}, NodeId{tx}); }
    FieldElement s(NodeId receiver, const NodeSet& transmit_set) const;

    /// True when every channel pair and every scalar of `table` is bound.
    bool binds(const AssignmentTable& table) const;

    /// Uniform nonzero values for all K(K-1) channel gains and the scalars of
    /// `table`.
    static ChannelPoint random(const AssignmentTable& table, PrimeField field, Rng& rng);

  private:
    std::size_t channel_index(NodeId rx, NodeId tx) const;

    PrimeField field_;
    int K_;
    std::vector<std::optional<FieldElement>> channel_;
    std::map<std::pair<int, NodeSet>, FieldElement> scale_;
};

/// Null-space beamformer for transmit set T against the rows h_{i,T},
/// i in S (|S| = |T| - 1): the cofactors of the last row of the r x r stack
/// [h_{S,T}; *]. For r = 2 and S = {i} this is (-h_{i,p2}, h_{i,p1}).
std::vector<FieldElement> zf_vector(const NodeSet& transmit_set, const NodeSet& zf_set, const ChannelPoint& point);

/// g^{(p')}_{k,T} = s_{k,T} * det(stack), stack rows h_{i,T} for i in S
/// ascending followed by h_{p',T}.
struct EffectiveCoefficient {
    NodeId receiver;
    NodeSet transmit_set;
    NodeSet label;
    NodeId observer;
    NodeSet zf_set;

    bool useful() const { return observer == receiver; }
    /// Row nodes of the determinant, ZF rows first and the observer last.
    std::vector<NodeId> stack_rows() const;
    VariableId scale_variable() const { return VariableId::scale(receiver, transmit_set); }
    /// "g^{(5)}_{3,{1,2}}".
    std::string to_string() const;

    friend bool operator==(const EffectiveCoefficient&, const EffectiveCoefficient&) = default;
};

/// One coefficient per (entry, observer), observers being the receiver then
/// the label nodes in ascending order.
std::vector<EffectiveCoefficient> enumerate_effective_coeffs(const AssignmentTable& table);

/// The r x r matrix whose determinant is mu for `coeff`.
FieldMatrix coefficient_stack(const EffectiveCoefficient& coeff, const ChannelPoint& point);

/// s * det(stack).
FieldElement eval_effective_coeff(const EffectiveCoefficient& coeff, const ChannelPoint& point);
/// <h_{p',T}, s * zf_vector(T, S)>; must agree with eval_effective_coeff.
FieldElement eval_effective_coeff_inner(const EffectiveCoefficient& coeff, const ChannelPoint& point);

struct ZeroForcingReport {
    int trials = 0;
    std::int64_t checks = 0;
    std::int64_t failures = 0;
    bool pass() const { return failures == 0; }
};

/// Checks <h_{i,T}, zf_vector> == 0 for every entry and i in its ZF set at
/// `trials` random points.
ZeroForcingReport verify_zero_forcing(const AssignmentTable& table, int trials, std::uint64_t seed,
                                      PrimeField field = PrimeField{});

struct AlignmentReport {
    bool pass = true;
    int tables = 0;
    std::int64_t coefficients = 0;
    std::vector<std::string> violations;
};

/// Every interference observer of a coefficient lies in its label, and the
/// non-receiver non-ZF nodes outside T are exactly the label.
AlignmentReport verify_alignment_structure(const std::map<NodeSet, AssignmentTable>& tables);
AlignmentReport verify_alignment_structure(const SystemParams& params);

}  // namespace iazf
