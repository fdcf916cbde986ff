#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "chabauty/report.hpp"
#include "chabauty/subgroup.hpp"

namespace chabauty {

struct MetricParams {
  Rational r_cut;
  Rational delta;

  // Throws PreconditionError unless r_cut >= 1 and 0 < delta <= 1.
  MetricParams(Rational r_cut_, Rational delta_);

  Rational slack() const { return delta + 2 / (1 + r_cut); }
  // Every point beyond r_cut is within this distance of infinity.
  Rational tail() const { return 1 / (1 + r_cut); }
};

inline constexpr std::size_t kDefaultNetCap = 250000;

struct Bounds {
  Rational lower;
  Rational upper;
};

struct DistanceEstimate {
  Rational lower;
  Rational upper;
  MetricParams params;
  std::size_t samples = 0;

  Rational width() const { return upper - lower; }
};

// Squared product-metric distance between two points given in external
// covering coordinates: Euclidean on R and Z, nearest-integer on T, and a
// single 0/1 term for the finite factor.
Rational group_distance2(const AmbientGroup& g, const QVector& x, const QVector& y);

// nullopt stands for the point at infinity.
Bounds compactified_dist(const AmbientGroup& g, const std::optional<QVector>& x, const std::optional<QVector>& y);

// Points of h (external covering coordinates) forming a delta-net of the
// part of h within r_cut of the origin.
std::vector<QVector> sample_points(const ElementarySubgroup& h, const MetricParams& params,
                                   std::size_t cap = kDefaultNetCap);

// Certified bracket for the Hausdorff distance of h u {inf} and k u {inf}
// under the compactified metric.
DistanceEstimate chabauty_distance(const ElementarySubgroup& h, const ElementarySubgroup& k,
                                   const MetricParams& params, std::size_t cap = kDefaultNetCap);

VerificationReport converges_to(const std::vector<ElementarySubgroup>& seq, const ElementarySubgroup& limit,
                                const MetricParams& params, const Rational& eps, bool check_dual = false,
                                std::size_t cap = kDefaultNetCap);

}  // namespace chabauty
