#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace lincat;

namespace {

const FieldSpec Q = FieldSpec::rationals();
const FieldSpec F2 = FieldSpec::prime(2);
const FieldSpec F5 = FieldSpec::prime(5);

Matrix random_matrix(std::mt19937& rng, FieldSpec f, std::size_t r, std::size_t c, int lo = -3, int hi = 3) {
  std::uniform_int_distribution<int> d(lo, hi);
  Matrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) m(i, j) = Scalar(f, static_cast<long long>(d(rng)));
  }
  return m;
}

std::vector<std::vector<Rational>> to_q(const Matrix& m) {
  std::vector<std::vector<Rational>> a(m.rows(), std::vector<Rational>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m(i, j).rational();
  }
  return a;
}

std::vector<std::vector<std::int64_t>> to_p(const Matrix& m) {
  std::vector<std::vector<std::int64_t>> a(m.rows(), std::vector<std::int64_t>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = static_cast<std::int64_t>(m(i, j).residue());
  }
  return a;
}

}  // namespace

TEST(Scalar, RationalArithmeticAndFormatting) {
  Scalar a = Scalar::parse("3/4", Q);
  Scalar b = Scalar::parse("-1/4", Q);
  EXPECT_EQ((a + b).to_string(), "1/2");
  EXPECT_EQ((a * b).to_string(), "-3/16");
  EXPECT_EQ((a / a).to_string(), "1");
  EXPECT_EQ(Scalar::parse("6/8", Q).to_string(), "3/4");
  EXPECT_EQ(Scalar(Q, -1LL).to_string(), "-1");
}

TEST(Scalar, PrimeFieldArithmetic) {
  Scalar a(F5, 3LL);
  EXPECT_EQ((a + a).to_string(), "1 mod 5");
  EXPECT_EQ(a.inverse().to_string(), "2 mod 5");
  EXPECT_EQ(Scalar(F5, -1LL).to_string(), "4 mod 5");
  EXPECT_EQ(Scalar::parse("2 mod 5", F5), Scalar(F5, 2LL));
  EXPECT_EQ(Scalar::parse("1/2", F5), Scalar(F5, 3LL));
}

TEST(Scalar, Errors) {
  EXPECT_THROW(FieldSpec::prime(4), InputError);
  EXPECT_THROW(Scalar(Q, 1LL) + Scalar(F5, 1LL), FieldMismatch);
  EXPECT_THROW(Scalar(Q, 0LL).inverse(), Error);
  EXPECT_THROW(Scalar::parse("1 mod 7", F5), FieldMismatch);
  EXPECT_THROW(Scalar::parse("x", Q), InputError);
  EXPECT_THROW(Scalar::parse("1/0", Q), InputError);
  EXPECT_THROW(Scalar::parse("1/5", F5), InputError);
}

TEST(Matrix, MixedFieldsRejected) {
  std::vector<Vector> cols{{Scalar(Q, 1LL)}, {Scalar(F5, 1LL)}};
  EXPECT_THROW(Matrix::from_columns(Q, 1, cols), FieldMismatch);
}

TEST(Matrix, RrefIsDeterministic) {
  Matrix m = Matrix::from_ints(Q, 3, 3, {1, 2, 3, 2, 4, 6, 1, 0, 1});
  RrefResult a = rref(m);
  RrefResult b = rref(m);
  EXPECT_EQ(a.reduced, b.reduced);
  EXPECT_EQ(a.pivots, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(a.rank, 2u);
}

TEST(Matrix, RankMatchesIndependentEliminationOverQ) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
    Matrix m = random_matrix(rng, Q, r, c);
    // force some rank deficiency
    if (r > 1 && trial % 3 == 0) {
      for (std::size_t j = 0; j < c; ++j) m(r - 1, j) = m(0, j) * Scalar(Q, 2LL);
    }
    EXPECT_EQ(rank(m), oracle::rank_q(to_q(m)));
  }
}

TEST(Matrix, RankMatchesIndependentEliminationOverFp) {
  std::mt19937 rng(12);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
    Matrix m = random_matrix(rng, F5, r, c, 0, 4);
    EXPECT_EQ(rank(m), oracle::rank_p(to_p(m), 5));
  }
}

TEST(Matrix, KernelHasTheRightSizeOverF2) {
  // |ker| counted by brute force equals 2^(cols - rank).
  std::mt19937 rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 5;
    Matrix m = random_matrix(rng, F2, r, c, 0, 1);
    std::size_t count = 0;
    for (const auto& v : oracle::all_vectors(F2, c)) count += is_zero(m.apply(v)) ? 1 : 0;
    const auto basis = kernel_basis(m);
    EXPECT_EQ(count, std::size_t{1} << basis.size());
    for (const auto& v : basis) EXPECT_TRUE(is_zero(m.apply(v)));
  }
}

TEST(Matrix, SolveAndInverse) {
  std::mt19937 rng(14);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + rng() % 4;
    Matrix m = random_matrix(rng, Q, n, n);
    auto inv = inverse(m);
    EXPECT_EQ(inv.has_value(), oracle::rank_q(to_q(m)) == n);
    if (inv) {
      EXPECT_EQ(m * *inv, Matrix::identity(Q, n));
      EXPECT_EQ(*inv * m, Matrix::identity(Q, n));
    }
    Vector b = random_matrix(rng, Q, n, 1).column(0);
    auto x = solve(m, b);
    if (x) {
      EXPECT_EQ(m.apply(*x), b);
    }
  }
  Matrix singular = Matrix::from_ints(Q, 2, 2, {1, 1, 1, 1});
  EXPECT_FALSE(solve(singular, {Scalar(Q, 1LL), Scalar(Q, 0LL)}).has_value());
}

TEST(Matrix, QuotientBasisProjects) {
  // Ambient Q^3 modulo span{(1,1,0)}.
  QuotientBasis q = quotient_basis(Q, 3, {{Scalar(Q, 1LL), Scalar(Q, 1LL), Scalar(Q, 0LL)}});
  ASSERT_EQ(q.representatives.size(), 2u);
  // Representatives together with the subspace span everything.
  std::vector<Vector> all = q.representatives;
  all.push_back({Scalar(Q, 1LL), Scalar(Q, 1LL), Scalar(Q, 0LL)});
  EXPECT_EQ(span_dimension(Q, 3, all), 3u);
  // The subspace generator projects to zero.
  for (std::size_t k = 0; k < 2; ++k) {
    Scalar s = q.project(k, 0) + q.project(k, 1);
    EXPECT_TRUE(s.is_zero());
  }
}

TEST(Smith, Examples) {
  EXPECT_EQ(smith_normal_form({{1, -1}, {1, 1}}, 2), (std::vector<BigInt>{1, 2}));
  EXPECT_EQ(smith_normal_form({}, 1), (std::vector<BigInt>{0}));
  EXPECT_EQ(smith_normal_form({{1}}, 1), (std::vector<BigInt>{1}));
  EXPECT_EQ(smith_normal_form({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}, 3), (std::vector<BigInt>{2, 6, 12}));
}

TEST(Smith, ProductEqualsDeterminantAndDivisibility) {
  std::mt19937 rng(15);
  std::uniform_int_distribution<int> d(-6, 6);
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t n = 1 + rng() % 4;
    IntMatrix a(n, std::vector<BigInt>(n));
    for (auto& row : a) {
      for (auto& x : row) x = d(rng);
    }
    auto f = smith_normal_form(a, n);
    ASSERT_EQ(f.size(), n);
    BigInt prod = 1;
    for (const auto& x : f) prod *= x;
    BigInt det = oracle::det_z(a);
    EXPECT_EQ(prod, det < 0 ? BigInt(-det) : det);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      EXPECT_GE(f[i], 0);
      if (f[i] != 0) {
        EXPECT_EQ(f[i + 1] % f[i], 0);
      } else {
        EXPECT_EQ(f[i + 1], 0);
      }
    }
  }
}
