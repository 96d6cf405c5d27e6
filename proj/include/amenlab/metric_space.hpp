#pragma once

#include <memory>
#include <string>
#include <vector>

#include "amenlab/types.hpp"

namespace amenlab {

/// Finite metric model of a compact space X.
///
/// Points are addressed by index; labels are only carried for reporting.
/// The constructor validates symmetry, zero diagonal, positivity off the
/// diagonal and the triangle inequality on every triple.
class CompactSpaceModel {
 public:
  CompactSpaceModel(std::vector<std::string> labels, RealMatrix dist);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const RealMatrix& metric() const noexcept { return dist_; }
  double distance(std::size_t x, std::size_t y) const { return dist_(x, y); }

  double diameter() const;
  /// Smallest nonzero distance; 0 for a one-point space.
  double min_positive_distance() const;

  bool operator==(const CompactSpaceModel& other) const;

 private:
  std::vector<std::string> labels_;
  RealMatrix dist_;
};

using SpaceHandle = std::shared_ptr<const CompactSpaceModel>;

/// n equally spaced points on a line, d(p_i, p_j) = |i - j| * spacing.
SpaceHandle make_grid_space(std::size_t n, double spacing);

SpaceHandle make_metric_space(std::vector<std::string> labels, RealMatrix dist);

}  // namespace amenlab
