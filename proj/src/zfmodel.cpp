#include "iazf/zfmodel.hpp"

namespace iazf {

VariableId VariableId::channel(NodeId rx, NodeId tx) {
    if (rx == tx) throw DomainError("no channel variable h_{p,p}");
    VariableId v;
    v.kind = Kind::channel;
    v.row = rx;
    v.col = tx;
    return v;
}

VariableId VariableId::scale(NodeId receiver, const NodeSet& transmit_set) {
    VariableId v;
    v.kind = Kind::scale;
    v.receiver = receiver;
    v.transmit_set = transmit_set;
    return v;
}

std::string VariableId::to_string() const {
    if (kind == Kind::channel) return "h_{" + std::to_string(row.value) + "," + std::to_string(col.value) + "}";
    return "s_{" + std::to_string(receiver.value) + "," + transmit_set.to_string() + "}";
}

ChannelPoint::ChannelPoint(PrimeField field, int K)
    : field_(field), K_(K), channel_(static_cast<std::size_t>((K + 1) * (K + 1))) {
    if (K < 1 || K > kMaxNodes) throw DomainError("channel point node count out of range");
}

std::size_t ChannelPoint::channel_index(NodeId rx, NodeId tx) const {
    if (rx.value < 1 || rx.value > K_ || tx.value < 1 || tx.value > K_ || rx == tx) {
        throw DomainError("channel variable h_{" + std::to_string(rx.value) + "," + std::to_string(tx.value) +
                          "} does not exist for K=" + std::to_string(K_));
    }
    return static_cast<std::size_t>(rx.value * (K_ + 1) + tx.value);
}

void ChannelPoint::set(const VariableId& var, FieldElement value) {
    if (value.value >= field_.modulus()) throw DomainError("value not reduced modulo the field");
    if (var.kind == VariableId::Kind::channel) {
        channel_[channel_index(var.row, var.col)] = value;
    } else {
        scale_[{var.receiver.value, var.transmit_set}] = value;
    }
}

bool ChannelPoint::bound(const VariableId& var) const {
    if (var.kind == VariableId::Kind::channel) {
        return channel_[channel_index(var.row, var.col)].has_value();
    }
    return scale_.count({var.receiver.value, var.transmit_set}) > 0;
}

FieldElement ChannelPoint::get(const VariableId& var) const {
    if (var.kind == VariableId::Kind::channel) return h(var.row, var.col);
    return s(var.receiver, var.transmit_set);
}

FieldElement ChannelPoint::h(NodeId rx, NodeId tx) const {
    const auto& v = channel_[channel_index(rx, tx)];
    if (!v) throw DomainError("unbound variable " + VariableId::channel(rx, tx).to_string());
    return *v;
}

FieldElement ChannelPoint::s(NodeId receiver, const NodeSet& transmit_set) const {
    auto it = scale_.find({receiver.value, transmit_set});
    if (it == scale_.end()) throw DomainError("unbound variable " + VariableId::scale(receiver, transmit_set).to_string());
    return it->second;
}

bool ChannelPoint::binds(const AssignmentTable& table) const {
    if (table.params.K() != K_) return false;
    for (int p = 1; p <= K_; ++p) {
        for (int q = 1; q <= K_; ++q) {
            if (p != q && !channel_[channel_index(NodeId{p}, NodeId{q})]) return false;
        }
    }
    for (const auto& e : table.entries) {
        if (!scale_.count({e.receiver.value, e.transmit_set})) return false;
    }
    return true;
}

ChannelPoint ChannelPoint::random(const AssignmentTable& table, PrimeField field, Rng& rng) {
    const int K = table.params.K();
    ChannelPoint point(field, K);
    for (int p = 1; p <= K; ++p) {
        for (int q = 1; q <= K; ++q) {
            if (p != q) point.set_h(p, q, field.random_nonzero(rng));
        }
    }
    for (const auto& e : table.entries) {
        point.set(VariableId::scale(e.receiver, e.transmit_set), field.random_nonzero(rng));
    }
    return point;
}

std::vector<FieldElement> zf_vector(const NodeSet& transmit_set, const NodeSet& zf_set, const ChannelPoint& point) {
    const int r = transmit_set.size();
    if (r < 1 || zf_set.size() != r - 1) throw DomainError("zf_vector: need |S| = |T| - 1");
    if (!transmit_set.disjoint(zf_set)) throw DomainError("zf_vector: T and S must be disjoint");

    const PrimeField& f = point.field();
    const auto cols = transmit_set.members();
    const auto rows = zf_set.members();
    std::vector<FieldElement> v(static_cast<std::size_t>(r));
    for (int c = 0; c < r; ++c) {
        FieldMatrix minor(f, r - 1, r - 1);
        for (int i = 0; i < r - 1; ++i) {
            int jj = 0;
            for (int j = 0; j < r; ++j) {
                if (j == c) continue;
                minor.at(i, jj++) = point.h(rows[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(j)]);
            }
        }
        const FieldElement d = determinant(minor);
        // cofactor sign of position (last row, c)
        v[static_cast<std::size_t>(c)] = (r - 1 + c) % 2 == 0 ? d : f.neg(d);
    }
    return v;
}

std::vector<NodeId> EffectiveCoefficient::stack_rows() const {
    auto rows = zf_set.members();
    rows.push_back(observer);
    return rows;
}

std::string EffectiveCoefficient::to_string() const {
    return "g^{(" + std::to_string(observer.value) + ")}_{" + std::to_string(receiver.value) + "," +
           transmit_set.to_string() + "}";
}

std::vector<EffectiveCoefficient> enumerate_effective_coeffs(const AssignmentTable& table) {
    std::vector<EffectiveCoefficient> out;
    out.reserve(table.entries.size() * static_cast<std::size_t>(1 + table.label.size()));
    for (const auto& e : table.entries) {
        auto add = [&](NodeId observer) {
            out.push_back(EffectiveCoefficient{e.receiver, e.transmit_set, table.label, observer, e.zf_set});
        };
        add(e.receiver);
        for (NodeId l : table.label) add(l);
    }
    return out;
}

FieldMatrix coefficient_stack(const EffectiveCoefficient& coeff, const ChannelPoint& point) {
    const int r = coeff.transmit_set.size();
    if (coeff.zf_set.size() != r - 1) throw DomainError("coefficient needs |S| = |T| - 1");
    if (coeff.transmit_set.contains(coeff.observer)) throw DomainError("observer belongs to the transmit set");
    const auto rows = coeff.stack_rows();
    const auto cols = coeff.transmit_set.members();
    FieldMatrix m(point.field(), r, r);
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) {
            m.at(i, j) = point.h(rows[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(j)]);
        }
    }
    return m;
}

FieldElement eval_effective_coeff(const EffectiveCoefficient& coeff, const ChannelPoint& point) {
    const FieldElement det = determinant(coefficient_stack(coeff, point));
    return point.field().mul(point.s(coeff.receiver, coeff.transmit_set), det);
}

FieldElement eval_effective_coeff_inner(const EffectiveCoefficient& coeff, const ChannelPoint& point) {
    const PrimeField& f = point.field();
    const auto v = zf_vector(coeff.transmit_set, coeff.zf_set, point);
    const FieldElement s = point.s(coeff.receiver, coeff.transmit_set);
    FieldElement acc = f.zero();
    int j = 0;
    for (NodeId q : coeff.transmit_set) {
        acc = f.add(acc, f.mul(point.h(coeff.observer, q), f.mul(s, v[static_cast<std::size_t>(j++)])));
    }
    return acc;
}

ZeroForcingReport verify_zero_forcing(const AssignmentTable& table, int trials, std::uint64_t seed, PrimeField field) {
    if (trials < 1) throw DomainError("trials must be at least 1");
    ZeroForcingReport report;
    report.trials = trials;
    const PrimeField& f = field;
    for (int trial = 0; trial < trials; ++trial) {
        Rng rng(mix_seed(seed, table.label.mask(), static_cast<std::uint64_t>(trial)));
        const ChannelPoint point = ChannelPoint::random(table, field, rng);
        for (const auto& e : table.entries) {
            const auto v = zf_vector(e.transmit_set, e.zf_set, point);
            for (NodeId i : e.zf_set) {
                FieldElement acc = f.zero();
                int j = 0;
                for (NodeId q : e.transmit_set) acc = f.add(acc, f.mul(point.h(i, q), v[static_cast<std::size_t>(j++)]));
                ++report.checks;
                if (!acc.is_zero()) ++report.failures;
            }
        }
    }
    return report;
}

AlignmentReport verify_alignment_structure(const std::map<NodeSet, AssignmentTable>& tables) {
    AlignmentReport report;
    auto fail = [&](std::string msg) {
        report.pass = false;
        report.violations.push_back(std::move(msg));
    };
    for (const auto& [label, table] : tables) {
        ++report.tables;
        const NodeSet all = table.params.nodes();
        for (const auto& e : table.entries) {
            const std::string cell = "U" + label.to_string() + " (T=" + e.transmit_set.to_string() +
                                     ", k=" + std::to_string(e.receiver.value) + ")";
            const NodeSet leftover = all - (e.transmit_set.with(e.receiver) | e.zf_set);
            if (leftover != label) {
                fail(cell + ": nodes outside T, k, S are " + leftover.to_string() + ", not the label");
            }
            if (!e.zf_set.disjoint(e.transmit_set) || e.zf_set.contains(e.receiver) || !e.zf_set.disjoint(label)) {
                fail(cell + ": zero-forcing set " + e.zf_set.to_string() + " overlaps T, k or the label");
            }
        }
        NodeSet observers_seen;
        for (const auto& g : enumerate_effective_coeffs(table)) {
            ++report.coefficients;
            if (g.transmit_set.contains(g.observer) || g.zf_set.contains(g.observer)) {
                fail(g.to_string() + ": observer is a transmitter or zero-forced node");
            }
            if (!g.useful()) {
                observers_seen = observers_seen.with(g.observer);
                if (!g.label.contains(g.observer)) {
                    fail(g.to_string() + ": interference observer outside label " + g.label.to_string());
                }
            }
        }
        if (!table.entries.empty() && observers_seen != label) {
            fail("U" + label.to_string() + ": interference observers " + observers_seen.to_string() + " differ from label");
        }
    }
    return report;
}

AlignmentReport verify_alignment_structure(const SystemParams& params) {
    return verify_alignment_structure(build_all_tables(params));
}

}  // namespace iazf
