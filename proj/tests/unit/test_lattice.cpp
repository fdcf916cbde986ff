#include <gtest/gtest.h>

#include <cmath>

#include "chabauty/cli/generators.hpp"
#include "chabauty/error.hpp"
#include "chabauty/lattice.hpp"
#include "chabauty/linalg.hpp"
#include "oracles.hpp"

using namespace chabauty;

namespace {

Rational q(const char* s) { return parse_rational(s); }

LatticeBasis cols(std::size_t d, std::vector<QVector> c) { return LatticeBasis(QMatrix::from_columns(d, c)); }

void expect_integral_pairings(const LatticeBasis& b, const LatticeBasis& dual) {
  QMatrix p = dual.basis().transpose() * b.basis();
  for (std::size_t i = 0; i < p.rows(); ++i)
    for (std::size_t j = 0; j < p.cols(); ++j) EXPECT_TRUE(is_integer(p(i, j)));
}

}  // namespace

TEST(LatticeBasis, RejectsDependentColumns) {
  EXPECT_THROW(cols(2, {{1, 2}, {2, 4}}), PreconditionError);
  EXPECT_EQ(LatticeBasis::from_generators(QMatrix::from_columns(2, {{1, 2}, {2, 4}})).rank(), 1u);
}

TEST(DualLattice, IntegerLatticeSelfDual) {
  EXPECT_TRUE(same_lattice(dual_lattice(LatticeBasis(QMatrix::identity(2))), LatticeBasis(QMatrix::identity(2))));
}

TEST(DualLattice, DiagTwoThree) {
  LatticeBasis b(QMatrix::diagonal({2, 3}));
  LatticeBasis d = dual_lattice(b);
  EXPECT_TRUE(same_lattice(d, LatticeBasis(QMatrix::diagonal({q("1/2"), q("1/3")}))));
  expect_integral_pairings(b, d);
  EXPECT_EQ(chabauty::abs(determinant(b.basis()) * determinant(d.basis())), 1);
}

TEST(DualLattice, SkewBasis) {
  LatticeBasis b = cols(2, {{1, 1}, {0, 2}});
  LatticeBasis d = dual_lattice(b);
  EXPECT_EQ(d.basis(), QMatrix::from_columns(2, {{1, 0}, {q("-1/2"), q("1/2")}}));
  expect_integral_pairings(b, d);
}

TEST(DualLattice, InsideSpanOfLowerRank) {
  LatticeBasis b = cols(3, {{1, 1, 0}});
  LatticeBasis d = dual_lattice(b);
  EXPECT_EQ(d.basis(), QMatrix::from_columns(3, {{q("1/2"), q("1/2"), 0}}));
}

TEST(DualLattice, InvolutionAndEquivariance) {
  for (std::uint64_t t = 0; t < 40; ++t) {
    cli::TrialRng rng(3, "dual", t);
    std::size_t d = 2 + static_cast<std::size_t>(rng.uniform(0, 1));
    LatticeBasis b = cli::random_integer_lattice(rng, d, -4, 4);
    LatticeBasis dd = dual_lattice(dual_lattice(b));
    EXPECT_TRUE(same_lattice(dd, b)) << t;
    EXPECT_EQ(chabauty::abs(determinant(b.basis()) * determinant(dual_lattice(b).basis())), 1);
    QMatrix a = QMatrix::identity(d) + cli::random_direction(rng, d);
    auto inv = inverse(a);
    if (!inv) continue;
    LatticeBasis lhs = dual_lattice(LatticeBasis(a * b.basis()));
    LatticeBasis rhs(inv->transpose() * dual_lattice(b).basis());
    EXPECT_TRUE(same_lattice(lhs, rhs)) << t;
  }
}

TEST(ShortestVector, Examples) {
  EXPECT_EQ(shortest_vector(LatticeBasis(QMatrix::identity(2))).norm2, 1);
  LatticeBasis d23(QMatrix::diagonal({2, 3}));
  EXPECT_EQ(shortest_vector(d23).norm2, 4);
  EXPECT_EQ(oracle::brute_shortest(d23.basis(), 3), 4);
  LatticeBasis skew = cols(2, {{1, 0}, {q("1/2"), q("1/2")}});
  EXPECT_EQ(shortest_vector(skew).norm2, q("1/2"));
  EXPECT_EQ(oracle::brute_shortest(skew.basis(), 4), q("1/2"));
}

TEST(ShortestVector, TrivialLatticeThrows) {
  try {
    shortest_vector(LatticeBasis(QMatrix(2, 0)));
    FAIL();
  } catch (const PreconditionError& e) {
    EXPECT_STREQ(e.what(), "trivial lattice has no shortest vector");
  }
}

TEST(ShortestVector, TieBreakIsLexicographic) {
  LatticeVector v = shortest_vector(LatticeBasis(QMatrix::identity(2)));
  EXPECT_EQ(v.coefficients, (QVector{-1, 0}));
}

TEST(ShortestVector, RandomAgainstBruteForceAndScaling) {
  for (std::uint64_t t = 0; t < 40; ++t) {
    cli::TrialRng rng(5, "svp", t);
    std::size_t d = 2 + static_cast<std::size_t>(rng.uniform(0, 1));
    LatticeBasis b = cli::random_integer_lattice(rng, d, -3, 3);
    Rational s = shortest_vector(b).norm2;
    EXPECT_EQ(s, oracle::brute_shortest(b.basis(), d == 2 ? 12 : 6)) << t;
    Rational c = rng.rational(5, 3);
    if (c == 0) c = 1;
    c = chabauty::abs(c);
    EXPECT_EQ(shortest_vector(LatticeBasis(c * b.basis())).norm2, c * c * s);
  }
}

TEST(ClosestVector, Examples) {
  LatticeBasis z2(QMatrix::identity(2));
  EXPECT_EQ(closest_vector(z2, {q("1/2"), q("1/2")}).norm2, q("1/2"));
  EXPECT_EQ(closest_vector(z2, {3, -2}).norm2, 0);
  LatticeBasis d23(QMatrix::diagonal({2, 3}));
  EXPECT_EQ(closest_vector(d23, {1, q("3/2")}).norm2, 1 + q("9/4"));
  EXPECT_EQ(oracle::brute_closest(d23.basis(), {1, q("3/2")}, 3), 1 + q("9/4"));
  // Ties: (1/2,1/2) has four nearest points; the smallest coefficients win.
  EXPECT_EQ(closest_vector(z2, {q("1/2"), q("1/2")}).coefficients, (QVector{0, 0}));
}

TEST(ClosestVector, OrthogonalPartIncluded) {
  LatticeBasis line = cols(2, {{1, 0}});
  EXPECT_EQ(closest_vector(line, {q("1/4"), 2}).norm2, q("1/16") + 4);
}

TEST(ClosestVector, RandomAgainstBruteForce) {
  for (std::uint64_t t = 0; t < 40; ++t) {
    cli::TrialRng rng(9, "cvp", t);
    LatticeBasis b = cli::random_integer_lattice(rng, 2, -3, 3);
    QVector x{rng.rational(6, 4), rng.rational(6, 4)};
    EXPECT_EQ(closest_vector(b, x).norm2, oracle::brute_closest(b.basis(), x, 14)) << t;
  }
}

TEST(Ball, CountsIntegerPoints) {
  LatticeEnumerator en{LatticeBasis(QMatrix::identity(2))};
  EXPECT_EQ(en.ball({0, 0}, 1).size(), 5u);
  EXPECT_EQ(en.ball({0, 0}, 2).size(), 9u);
}

TEST(CoveringRadius, Examples) {
  Rational step = q("1/10");
  Rational z1 = covering_radius_upper(LatticeBasis(QMatrix::identity(1)), step);
  EXPECT_GE(z1, q("1/2"));
  EXPECT_LE(z1, q("1/2") + q("1/20"));
  Rational z2 = covering_radius_upper(LatticeBasis(QMatrix::identity(2)), step);
  // Squared comparisons keep the bracket rational: [sqrt2/2, sqrt2/2 + sqrt2/20].
  EXPECT_GE(z2 * z2, q("1/2"));
  EXPECT_LE(z2 * z2, q("121/200") + q("1/1000000"));
  Rational d22 = covering_radius_upper(LatticeBasis(QMatrix::diagonal({2, 2})), step);
  EXPECT_GE(d22 * d22, 2);
  EXPECT_LE(d22, 2 * z2 + step);
}

TEST(CoveringRadius, RequiresFullRank) {
  try {
    covering_radius_upper(cols(2, {{1, 0}}), q("1/10"));
    FAIL();
  } catch (const PreconditionError& e) {
    EXPECT_STREQ(e.what(), "covering radius requires full rank in span");
  }
}

TEST(Lll, SkewBasisBecomesShort) {
  LatticeBasis b = cols(2, {{q("1/224"), q("16799/224")}, {0, q("50173/224")}});
  LatticeBasis r = lll_reduce(b);
  EXPECT_TRUE(same_lattice(b, r));
  EXPECT_LE(norm2(r.basis().column(0)), 2);
  EXPECT_LE(norm2(r.basis().column(1)), 2);
}

TEST(Lll, RandomBasesAreReducedWithSameSpan) {
  cli::TrialRng rng(7);
  for (int t = 0; t < 100; ++t) {
    const std::size_t d = static_cast<std::size_t>(rng.uniform(2, 4));
    LatticeBasis b = cli::random_integer_lattice(rng, d, -9, 9);
    QMatrix skew = QMatrix::identity(d);
    skew(0, d - 1) = rng.uniform(-40, 40);
    b = LatticeBasis(b.basis() * skew);
    LatticeBasis r = lll_reduce(b);
    ASSERT_TRUE(same_lattice(b, r));
    // Independent Gram-Schmidt for the size and Lovasz conditions.
    std::vector<QVector> star;
    for (std::size_t i = 0; i < d; ++i) {
      QVector w = r.basis().column(i);
      for (std::size_t j = 0; j < i; ++j) {
        Rational m = dot(r.basis().column(i), star[j]) / norm2(star[j]);
        EXPECT_LE(abs(m), q("1/2"));
        w = w - m * star[j];
      }
      star.push_back(w);
      if (i > 0) {
        Rational m = dot(r.basis().column(i), star[i - 1]) / norm2(star[i - 1]);
        EXPECT_GE(norm2(star[i]), (q("3/4") - m * m) * norm2(star[i - 1]));
      }
    }
    EXPECT_EQ(shortest_vector(b).norm2, shortest_vector(r).norm2);
  }
}
