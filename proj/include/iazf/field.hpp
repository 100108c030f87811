#pragma once

#include <compare>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "iazf/core.hpp"

namespace iazf {

struct FieldElement {
    std::uint64_t value = 0;

    constexpr FieldElement() = default;
    constexpr explicit FieldElement(std::uint64_t v) : value(v) {}

    bool is_zero() const { return value == 0; }
    friend constexpr auto operator<=>(FieldElement, FieldElement) = default;
};

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t n);

/// Seeded 64-bit generator. Wraps mt19937_64 (whose output sequence is fixed
/// by the standard) and never goes through a distribution object, so a seed
/// gives the same stream on every platform.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    std::uint64_t next() { return engine_(); }

  private:
    std::mt19937_64 engine_;
};

/// splitmix64 finalizer; used to derive independent per-trial seeds.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0);

/// Z/pZ for a prime p with 3 <= p < 2^63. Elements are kept reduced.
class PrimeField {
  public:
    static constexpr std::uint64_t kMersenne61 = (std::uint64_t{1} << 61) - 1;

    explicit PrimeField(std::uint64_t modulus = kMersenne61);

    std::uint64_t modulus() const { return p_; }
    /// log2 of the modulus.
    double log2_modulus() const;

    FieldElement zero() const { return FieldElement{0}; }
    FieldElement one() const { return FieldElement{1}; }
    FieldElement from_int(std::int64_t v) const;

    FieldElement add(FieldElement a, FieldElement b) const {
        std::uint64_t s = a.value + b.value;
        return FieldElement{s >= p_ ? s - p_ : s};
    }
    FieldElement sub(FieldElement a, FieldElement b) const {
        return FieldElement{a.value >= b.value ? a.value - b.value : a.value + p_ - b.value};
    }
    FieldElement neg(FieldElement a) const { return FieldElement{a.value == 0 ? 0 : p_ - a.value}; }
    FieldElement mul(FieldElement a, FieldElement b) const {
        const unsigned __int128 prod = static_cast<unsigned __int128>(a.value) * b.value;
        if (mersenne_) {
            std::uint64_t lo = static_cast<std::uint64_t>(prod) & kMersenne61;
            std::uint64_t hi = static_cast<std::uint64_t>(prod >> 61);
            std::uint64_t s = lo + hi;
            s = (s & kMersenne61) + (s >> 61);
            return FieldElement{s >= kMersenne61 ? s - kMersenne61 : s};
        }
        return FieldElement{static_cast<std::uint64_t>(prod % p_)};
    }
    FieldElement pow(FieldElement a, std::uint64_t e) const;
    /// Throws DomainError on zero.
    FieldElement inv(FieldElement a) const;
    FieldElement div(FieldElement a, FieldElement b) const { return mul(a, inv(b)); }

    /// Uniform over [0, p).
    FieldElement random(Rng& rng) const;
    /// Uniform over [1, p).
    FieldElement random_nonzero(Rng& rng) const;

    friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

  private:
    std::uint64_t p_;
    std::uint64_t sample_mask_;
    bool mersenne_;
};

/// Dense row-major matrix over a prime field.
class FieldMatrix {
  public:
    FieldMatrix(PrimeField field, int rows, int cols);

    const PrimeField& field() const { return field_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    FieldElement& at(int i, int j) { return data_[index(i, j)]; }
    FieldElement at(int i, int j) const { return data_[index(i, j)]; }
    std::span<FieldElement> row(int i) { return {data_.data() + index(i, 0), static_cast<std::size_t>(cols_)}; }
    std::span<const FieldElement> row(int i) const {
        return {data_.data() + index(i, 0), static_cast<std::size_t>(cols_)};
    }

    static FieldMatrix identity(PrimeField field, int n);
    FieldMatrix submatrix(std::span<const int> row_idx, std::span<const int> col_idx) const;
    bool is_zero() const;

    friend bool operator==(const FieldMatrix& a, const FieldMatrix& b) {
        return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

  private:
    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(j);
    }

    PrimeField field_;
    int rows_;
    int cols_;
    std::vector<FieldElement> data_;
};

/// Rank by Gaussian elimination, pivoting on the first nonzero entry of each
/// column. Works on a copy.
int field_rank(const FieldMatrix& m);

/// Determinant of a square matrix; throws DomainError otherwise.
FieldElement determinant(const FieldMatrix& m);

/// X with A X = B for square nonsingular A; throws DomainError when A is
/// singular.
FieldMatrix solve(const FieldMatrix& a, const FieldMatrix& b);

FieldMatrix multiply(const FieldMatrix& a, const FieldMatrix& b);
FieldMatrix subtract(const FieldMatrix& a, const FieldMatrix& b);

}  // namespace iazf
