#include "iazf/field.hpp"

#include <bit>
#include <cmath>
#include <utility>

namespace iazf {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) result = mulmod(result, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return result;
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t small : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % small == 0) return n == small;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // These bases are a deterministic witness set for n < 3.3e24.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
    auto step = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    };
    return step(step(step(base) ^ a) ^ b);
}

PrimeField::PrimeField(std::uint64_t modulus) : p_(modulus) {
    if (modulus < 3 || modulus >= (std::uint64_t{1} << 63)) {
        throw DomainError("field modulus must lie in [3, 2^63)");
    }
    if (!is_prime(modulus)) throw DomainError("field modulus " + std::to_string(modulus) + " is not prime");
    mersenne_ = modulus == kMersenne61;
    sample_mask_ = std::bit_ceil(modulus) - 1;
}

double PrimeField::log2_modulus() const { return std::log2(static_cast<double>(p_)); }

FieldElement PrimeField::from_int(std::int64_t v) const {
    const auto p = static_cast<std::int64_t>(p_);
    std::int64_t r = v % p;
    if (r < 0) r += p;
    return FieldElement{static_cast<std::uint64_t>(r)};
}

FieldElement PrimeField::pow(FieldElement a, std::uint64_t e) const {
    FieldElement result = one();
    while (e) {
        if (e & 1) result = mul(result, a);
        a = mul(a, a);
        e >>= 1;
    }
    return result;
}

FieldElement PrimeField::inv(FieldElement a) const {
    if (a.is_zero()) throw DomainError("inverse of zero");
    return pow(a, p_ - 2);
}

FieldElement PrimeField::random(Rng& rng) const {
    while (true) {
        const std::uint64_t x = rng.next() & sample_mask_;
        if (x < p_) return FieldElement{x};
    }
}

FieldElement PrimeField::random_nonzero(Rng& rng) const {
    while (true) {
        const FieldElement x = random(rng);
        if (!x.is_zero()) return x;
    }
}

FieldMatrix::FieldMatrix(PrimeField field, int rows, int cols)
    : field_(field), rows_(rows), cols_(cols),
      data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
    if (rows < 0 || cols < 0) throw DomainError("matrix dimensions must be non-negative");
}

FieldMatrix FieldMatrix::identity(PrimeField field, int n) {
    FieldMatrix m(field, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = field.one();
    return m;
}

FieldMatrix FieldMatrix::submatrix(std::span<const int> row_idx, std::span<const int> col_idx) const {
    FieldMatrix out(field_, static_cast<int>(row_idx.size()), static_cast<int>(col_idx.size()));
    for (std::size_t i = 0; i < row_idx.size(); ++i) {
        for (std::size_t j = 0; j < col_idx.size(); ++j) {
            out.at(static_cast<int>(i), static_cast<int>(j)) = at(row_idx[i], col_idx[j]);
        }
    }
    return out;
}

bool FieldMatrix::is_zero() const {
    for (auto v : data_) {
        if (!v.is_zero()) return false;
    }
    return true;
}

namespace {

/// In-place forward elimination. Returns the rank; `det` accumulates the
/// product of pivots and row-swap signs (meaningful for square input).
int eliminate(FieldMatrix& m, FieldElement* det) {
    const PrimeField& f = m.field();
    const int rows = m.rows();
    const int cols = m.cols();
    int rank = 0;
    FieldElement acc = f.one();
    std::vector<int> support;
    support.reserve(static_cast<std::size_t>(cols));

    for (int c = 0; c < cols && rank < rows; ++c) {
        int pivot = -1;
        for (int i = rank; i < rows; ++i) {
            if (!m.at(i, c).is_zero()) {
                pivot = i;
                break;
            }
        }
        if (pivot < 0) continue;
        if (pivot != rank) {
            auto a = m.row(pivot);
            auto b = m.row(rank);
            for (int j = c; j < cols; ++j) std::swap(a[static_cast<std::size_t>(j)], b[static_cast<std::size_t>(j)]);
            acc = f.neg(acc);
        }
        auto prow = m.row(rank);
        const FieldElement pv = prow[static_cast<std::size_t>(c)];
        acc = f.mul(acc, pv);
        const FieldElement scale = f.inv(pv);
        support.clear();
        for (int j = c + 1; j < cols; ++j) {
            auto& x = prow[static_cast<std::size_t>(j)];
            if (x.is_zero()) continue;
            x = f.mul(x, scale);
            support.push_back(j);
        }
        prow[static_cast<std::size_t>(c)] = f.one();
        for (int i = rank + 1; i < rows; ++i) {
            auto row = m.row(i);
            const FieldElement factor = row[static_cast<std::size_t>(c)];
            if (factor.is_zero()) continue;
            for (int j : support) {
                auto& x = row[static_cast<std::size_t>(j)];
                x = f.sub(x, f.mul(factor, prow[static_cast<std::size_t>(j)]));
            }
            row[static_cast<std::size_t>(c)] = f.zero();
        }
        ++rank;
    }
    if (det) *det = rank == rows && rows == cols ? acc : f.zero();
    return rank;
}

}  // namespace

int field_rank(const FieldMatrix& m) {
    FieldMatrix work = m;
    return eliminate(work, nullptr);
}

FieldElement determinant(const FieldMatrix& m) {
    if (m.rows() != m.cols()) throw DomainError("determinant of a non-square matrix");
    if (m.rows() == 0) return m.field().one();
    FieldMatrix work = m;
    FieldElement det;
    eliminate(work, &det);
    return det;
}

FieldMatrix solve(const FieldMatrix& a, const FieldMatrix& b) {
    if (a.rows() != a.cols() || a.rows() != b.rows()) throw DomainError("solve: dimension mismatch");
    const PrimeField& f = a.field();
    const int n = a.rows();
    const int m = b.cols();
    FieldMatrix aug(f, n, n + m);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
        for (int j = 0; j < m; ++j) aug.at(i, n + j) = b.at(i, j);
    }
    // Gauss-Jordan on the augmented matrix.
    for (int c = 0; c < n; ++c) {
        int pivot = -1;
        for (int i = c; i < n; ++i) {
            if (!aug.at(i, c).is_zero()) {
                pivot = i;
                break;
            }
        }
        if (pivot < 0) throw DomainError("solve: singular matrix");
        if (pivot != c) {
            for (int j = 0; j < n + m; ++j) std::swap(aug.at(pivot, j), aug.at(c, j));
        }
        const FieldElement scale = f.inv(aug.at(c, c));
        for (int j = 0; j < n + m; ++j) aug.at(c, j) = f.mul(aug.at(c, j), scale);
        for (int i = 0; i < n; ++i) {
            if (i == c) continue;
            const FieldElement factor = aug.at(i, c);
            if (factor.is_zero()) continue;
            for (int j = 0; j < n + m; ++j) aug.at(i, j) = f.sub(aug.at(i, j), f.mul(factor, aug.at(c, j)));
        }
    }
    FieldMatrix x(f, n, m);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) x.at(i, j) = aug.at(i, n + j);
    }
    return x;
}

FieldMatrix multiply(const FieldMatrix& a, const FieldMatrix& b) {
    if (a.cols() != b.rows()) throw DomainError("multiply: dimension mismatch");
    const PrimeField& f = a.field();
    FieldMatrix out(f, a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int k = 0; k < a.cols(); ++k) {
            const FieldElement x = a.at(i, k);
            if (x.is_zero()) continue;
            for (int j = 0; j < b.cols(); ++j) out.at(i, j) = f.add(out.at(i, j), f.mul(x, b.at(k, j)));
        }
    }
    return out;
}

FieldMatrix subtract(const FieldMatrix& a, const FieldMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DomainError("subtract: dimension mismatch");
    const PrimeField& f = a.field();
    FieldMatrix out(f, a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) out.at(i, j) = f.sub(a.at(i, j), b.at(i, j));
    }
    return out;
}

}  // namespace iazf
