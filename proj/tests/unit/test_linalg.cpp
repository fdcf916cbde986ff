#include <gtest/gtest.h>

#include <numeric>

#include "chabauty/cli/rng.hpp"
#include "chabauty/linalg.hpp"
#include "oracles.hpp"

using namespace chabauty;

namespace {

Rational q(const char* s) { return parse_rational(s); }

bool z_span_contains(const QMatrix& basis, const QVector& x) { return oracle::brute_in_span(basis, x, 6); }

std::int64_t maximal_minor_gcd(const QMatrix& m, long scale) {
  std::vector<std::vector<std::int64_t>> rows(m.rows(), std::vector<std::int64_t>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Rational v = m(i, j) * scale;
      EXPECT_TRUE(is_integer(v));
      rows[i][j] = v.get_num().get_si();
    }
  std::int64_t g = 1;
  for (auto d : oracle::determinantal_invariants(rows)) {
    if (d != 0) g *= d;
  }
  return g;
}

// Same Z-span: m inside span(h) and equal gcd of maximal minors after
// clearing denominators (the index of one lattice in the other is 1).
void expect_same_z_span(const QMatrix& m, const QMatrix& h) {
  for (const auto& col : m.columns()) {
    auto c = solve_full_column_rank(h, col);
    ASSERT_TRUE(c.has_value());
    for (const auto& v : *c) EXPECT_TRUE(is_integer(v));
  }
  long scale = 1;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) scale = std::lcm(scale, m(i, j).get_den().get_si());
  EXPECT_EQ(maximal_minor_gcd(m, scale), maximal_minor_gcd(h, scale));
}

}  // namespace

TEST(Rational, ParseAcceptsIntegersAndFractions) {
  EXPECT_EQ(parse_rational("3"), Rational(3));
  EXPECT_EQ(parse_rational(" -6/4 "), Rational(-3, 2));
  EXPECT_THROW(parse_rational("1/0"), std::exception);
  EXPECT_THROW(parse_rational("1.5"), std::exception);
  EXPECT_THROW(parse_rational(""), std::exception);
}

TEST(Rational, FloorCeilRound) {
  EXPECT_EQ(chabauty::floor(q("-1/2")), -1);
  EXPECT_EQ(chabauty::ceil(q("-1/2")), 0);
  EXPECT_EQ(round_nearest(q("1/2")), 1);
  EXPECT_EQ(round_nearest(q("-1/2")), 0);
  EXPECT_EQ(round_nearest(q("-7/3")), -2);
}

TEST(Rational, SqrtBracket) {
  EXPECT_EQ(sqrt_lower(q("9/4")), q("3/2"));
  EXPECT_EQ(sqrt_upper(q("9/4")), q("3/2"));
  Rational lo = sqrt_lower(2), hi = sqrt_upper(2);
  EXPECT_LE(lo * lo, 2);
  EXPECT_GE(hi * hi, 2);
  EXPECT_LT(hi - lo, q("1/1000000000"));
  EXPECT_EQ(ceil_sqrt(q("17/4")), 3);
  EXPECT_EQ(ceil_sqrt(4), 2);
}

TEST(Hnf, GcdOfTwoColumns) {
  QMatrix m = QMatrix::from_columns(2, {{2, 0}, {3, 0}});
  EXPECT_EQ(hnf(m), QMatrix::from_columns(2, {{1, 0}}));
  // Oracle: (1,0) is an integer combination of the inputs and vice versa.
  EXPECT_TRUE(z_span_contains(m, {1, 0}));
}

TEST(Hnf, IdentityIsFixed) { EXPECT_EQ(hnf(QMatrix::identity(3)), QMatrix::identity(3)); }

TEST(Hnf, RationalColumns) {
  QMatrix m = QMatrix::from_columns(2, {{1, 0}, {q("1/2"), 0}});
  QMatrix h = hnf(m);
  EXPECT_EQ(h, QMatrix::from_columns(2, {{q("1/2"), 0}}));
  for (const auto& col : m.columns()) EXPECT_TRUE(z_span_contains(h, col));
  for (const auto& col : h.columns()) EXPECT_TRUE(z_span_contains(m, col));
}

TEST(Hnf, RandomSpanPreservedAndCanonical) {
  for (std::uint64_t t = 0; t < 60; ++t) {
    cli::TrialRng rng(7, "hnf", t);
    std::size_t rows = 2 + static_cast<std::size_t>(rng.uniform(0, 1));
    std::size_t cols = 1 + static_cast<std::size_t>(rng.uniform(0, 2));
    QMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = rng.rational(4, 2);
    QMatrix h = hnf(m);
    expect_same_z_span(m, h);
    EXPECT_EQ(hnf(h), h);
    // A unimodular column change does not move the canonical form.
    QMatrix u = QMatrix::identity(cols);
    if (cols >= 2) u(0, 1) = 3;
    EXPECT_EQ(hnf(m * u), h);
  }
}

TEST(Snf, DiagTwoThree) {
  QMatrix m = QMatrix::diagonal({2, 3});
  SmithForm s = snf(m);
  EXPECT_EQ(s.diagonal, (std::vector<Rational>{1, 6}));
  EXPECT_EQ(s.left * m * s.right, QMatrix::diagonal({1, 6}));
  auto oracle_d = oracle::determinantal_invariants({{2, 0}, {0, 3}});
  EXPECT_EQ(oracle_d, (std::vector<std::int64_t>{1, 6}));
}

TEST(Snf, ZeroMatrix) {
  SmithForm s = snf(QMatrix(2, 2));
  EXPECT_EQ(s.diagonal, (std::vector<Rational>{0, 0}));
}

TEST(Snf, EqualDivisors) {
  SmithForm s = snf(QMatrix::diagonal({2, 2}));
  EXPECT_EQ(s.diagonal, (std::vector<Rational>{2, 2}));
}

TEST(Snf, RandomAgainstDeterminantalDivisors) {
  for (std::uint64_t t = 0; t < 80; ++t) {
    cli::TrialRng rng(11, "snf", t);
    std::size_t rows = 1 + static_cast<std::size_t>(rng.uniform(0, 2));
    std::size_t cols = 1 + static_cast<std::size_t>(rng.uniform(0, 2));
    std::vector<std::vector<std::int64_t>> raw(rows, std::vector<std::int64_t>(cols));
    QMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) {
        raw[r][c] = rng.uniform(-6, 6);
        m(r, c) = raw[r][c];
      }
    }
    SmithForm s = snf(m);
    auto expected = oracle::determinantal_invariants(raw);
    ASSERT_EQ(s.diagonal.size(), expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_EQ(s.diagonal[i], Rational(expected[i])) << t;
    QMatrix d(rows, cols);
    for (std::size_t i = 0; i < expected.size(); ++i) d(i, i) = s.diagonal[i];
    EXPECT_EQ(s.left * m * s.right, d);
    EXPECT_EQ(chabauty::abs(determinant(s.left)), 1);
    EXPECT_EQ(chabauty::abs(determinant(s.right)), 1);
  }
}

TEST(Linalg, KernelAndRank) {
  QMatrix m{{1, 2, 3}, {2, 4, 6}};
  EXPECT_EQ(rank(m), 1u);
  QMatrix k = kernel_basis(m);
  EXPECT_EQ(k.cols(), 2u);
  for (const auto& col : k.columns()) EXPECT_TRUE(is_zero(m * col));
}

TEST(Linalg, InverseAndSolve) {
  QMatrix m{{2, 1}, {1, 1}};
  auto inv = inverse(m);
  ASSERT_TRUE(inv.has_value());
  EXPECT_EQ(m * *inv, QMatrix::identity(2));
  EXPECT_FALSE(inverse(QMatrix{{1, 2}, {2, 4}}).has_value());
  auto x = solve_full_column_rank(QMatrix::from_columns(3, {{1, 0, 0}, {0, 1, 0}}), {3, 4, 0});
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(*x, (QVector{3, 4}));
  EXPECT_FALSE(solve_full_column_rank(QMatrix::from_columns(3, {{1, 0, 0}}), {0, 0, 1}).has_value());
  EXPECT_EQ(determinant(m), 1);
}
