#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "iazf/field.hpp"

using namespace iazf;

namespace {

std::uint64_t mulmod_ref(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

FieldMatrix random_matrix(const PrimeField& f, int rows, int cols, Rng& rng) {
    FieldMatrix m(f, rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) m.at(i, j) = f.random(rng);
    }
    return m;
}

// rank via the size of the row space: |span| = p^rank
int rank_by_span(const FieldMatrix& m) {
    const PrimeField& f = m.field();
    const std::uint64_t p = f.modulus();
    std::set<std::vector<std::uint64_t>> span;
    std::vector<std::uint64_t> coef(static_cast<std::size_t>(m.rows()), 0);
    while (true) {
        std::vector<std::uint64_t> v(static_cast<std::size_t>(m.cols()), 0);
        for (int i = 0; i < m.rows(); ++i) {
            for (int j = 0; j < m.cols(); ++j) {
                v[j] = f.add(FieldElement{v[j]}, f.mul(FieldElement{coef[i]}, m.at(i, j))).value;
            }
        }
        span.insert(v);
        int i = 0;
        while (i < m.rows() && ++coef[i] == p) coef[i++] = 0;
        if (i == m.rows()) break;
    }
    int rank = 0;
    for (std::size_t size = 1; size < span.size(); size *= p) ++rank;
    return rank;
}

// Leibniz expansion
FieldElement det_by_permutations(const FieldMatrix& m) {
    const PrimeField& f = m.field();
    std::vector<int> perm(static_cast<std::size_t>(m.rows()));
    std::iota(perm.begin(), perm.end(), 0);
    FieldElement total = f.zero();
    do {
        int inversions = 0;
        for (std::size_t a = 0; a < perm.size(); ++a) {
            for (std::size_t b = a + 1; b < perm.size(); ++b) inversions += perm[a] > perm[b];
        }
        FieldElement term = f.one();
        for (int i = 0; i < m.rows(); ++i) term = f.mul(term, m.at(i, perm[i]));
        total = inversions % 2 ? f.sub(total, term) : f.add(total, term);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

}  // namespace

TEST(PrimeField, Primality) {
    EXPECT_TRUE(is_prime(2));
    EXPECT_TRUE(is_prime(PrimeField::kMersenne61));
    EXPECT_FALSE(is_prime((std::uint64_t{1} << 61) + 1));
    EXPECT_FALSE(is_prime(561));  // Carmichael
    EXPECT_TRUE(is_prime(1000000007));
    for (std::uint64_t n = 0; n < 2000; ++n) {
        bool trial = n >= 2;
        for (std::uint64_t d = 2; d * d <= n && trial; ++d) trial = n % d != 0;
        EXPECT_EQ(is_prime(n), trial) << n;
    }
    EXPECT_THROW(PrimeField(15), DomainError);
    EXPECT_THROW(PrimeField(2), DomainError);
}

TEST(PrimeField, ArithmeticMatchesWideReference) {
    Rng rng(7);
    for (std::uint64_t p : {PrimeField::kMersenne61, std::uint64_t{1000000007}, std::uint64_t{4611686018427387847}}) {
        const PrimeField f(p);
        for (int i = 0; i < 2000; ++i) {
            const FieldElement a = f.random(rng);
            const FieldElement b = f.random(rng);
            ASSERT_LT(a.value, p);
            EXPECT_EQ(f.mul(a, b).value, mulmod_ref(a.value, b.value, p));
            EXPECT_EQ(f.add(a, b).value, static_cast<std::uint64_t>((static_cast<unsigned __int128>(a.value) + b.value) % p));
            EXPECT_EQ(f.add(f.sub(a, b), b), a);
            EXPECT_TRUE(f.add(a, f.neg(a)).is_zero());
            if (!b.is_zero()) EXPECT_EQ(f.mul(f.div(a, b), b), a);
        }
        EXPECT_THROW(f.inv(f.zero()), DomainError);
        EXPECT_EQ(f.from_int(-1), f.neg(f.one()));
    }
}

TEST(PrimeField, SeededStreamsRepeat) {
    const PrimeField f;
    Rng a(99);
    Rng b(99);
    for (int i = 0; i < 100; ++i) EXPECT_EQ(f.random_nonzero(a), f.random_nonzero(b));
    EXPECT_NE(mix_seed(42, 1, 0), mix_seed(42, 1, 1));
    EXPECT_NE(mix_seed(42, 1, 0), mix_seed(42, 2, 0));
}

TEST(FieldRank, SmallCases) {
    const PrimeField f(7);
    EXPECT_EQ(field_rank(FieldMatrix::identity(f, 5)), 5);
    EXPECT_EQ(field_rank(FieldMatrix(f, 3, 4)), 0);
    FieldMatrix dup(f, 3, 3);
    for (int j = 0; j < 3; ++j) {
        dup.at(0, j) = FieldElement{static_cast<std::uint64_t>(j + 1)};
        dup.at(1, j) = f.mul(FieldElement{3}, dup.at(0, j));
        dup.at(2, j) = FieldElement{static_cast<std::uint64_t>(j == 1)};
    }
    EXPECT_EQ(field_rank(dup), 2);
    EXPECT_EQ(field_rank(FieldMatrix(f, 0, 4)), 0);
}

TEST(FieldRank, AgreesWithSpanCount) {
    const PrimeField f(3);
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const int rows = 1 + static_cast<int>(rng.next() % 4);
        const int cols = 1 + static_cast<int>(rng.next() % 5);
        const FieldMatrix m = random_matrix(f, rows, cols, rng);
        EXPECT_EQ(field_rank(m), rank_by_span(m));
    }
}

TEST(Determinant, AgreesWithLeibniz) {
    Rng rng(5);
    for (std::uint64_t p : {std::uint64_t{5}, std::uint64_t{101}, PrimeField::kMersenne61}) {
        const PrimeField f(p);
        for (int n = 1; n <= 5; ++n) {
            for (int trial = 0; trial < 20; ++trial) {
                const FieldMatrix m = random_matrix(f, n, n, rng);
                EXPECT_EQ(determinant(m), det_by_permutations(m));
            }
        }
    }
    EXPECT_THROW(determinant(FieldMatrix(PrimeField(5), 2, 3)), DomainError);
}

TEST(Solve, InverseAndSingular) {
    const PrimeField f;
    Rng rng(3);
    const FieldMatrix a = random_matrix(f, 6, 6, rng);
    const FieldMatrix b = random_matrix(f, 6, 2, rng);
    EXPECT_EQ(multiply(a, solve(a, b)), b);
    EXPECT_TRUE(subtract(a, a).is_zero());
    FieldMatrix s(f, 2, 2);
    s.at(0, 0) = s.at(0, 1) = s.at(1, 0) = s.at(1, 1) = f.one();
    EXPECT_THROW(solve(s, FieldMatrix::identity(f, 2)), DomainError);
}

TEST(FieldMatrix, Submatrix) {
    const PrimeField f(101);
    FieldMatrix m(f, 3, 3);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) m.at(i, j) = FieldElement{static_cast<std::uint64_t>(10 * i + j)};
    }
    const std::vector<int> rows{2, 0};
    const std::vector<int> cols{1};
    const FieldMatrix s = m.submatrix(rows, cols);
    EXPECT_EQ(s.rows(), 2);
    EXPECT_EQ(s.at(0, 0).value, 21u);
    EXPECT_EQ(s.at(1, 0).value, 1u);
}
