#include "amenlab/metric_space.hpp"

#include <cmath>
#include <sstream>

namespace amenlab {

namespace {

constexpr double kMetricTolerance = 1e-12;

}  // namespace

std::string_view to_string(ScalarField field) {
  return field == ScalarField::kReal ? "real" : "complex";
}

ScalarField parse_scalar_field(std::string_view text) {
  if (text == "real") return ScalarField::kReal;
  if (text == "complex") return ScalarField::kComplex;
  throw InvalidArgument("unknown scalar field '" + std::string(text) + "'");
}

CompactSpaceModel::CompactSpaceModel(std::vector<std::string> labels, RealMatrix dist)
    : labels_(std::move(labels)), dist_(std::move(dist)) {
  const auto n = labels_.size();
  if (n == 0) throw InvalidArgument("space needs at least one point");
  if (static_cast<std::size_t>(dist_.rows()) != n || static_cast<std::size_t>(dist_.cols()) != n)
    throw InvalidArgument("distance matrix shape does not match the number of labels");
  for (std::size_t x = 0; x < n; ++x) {
    if (dist_(x, x) != 0.0) throw InvalidArgument("distance matrix needs a zero diagonal");
    for (std::size_t y = 0; y < n; ++y) {
      const double d = dist_(x, y);
      if (!std::isfinite(d) || d < 0.0) throw InvalidArgument("distances must be finite and nonnegative");
      if (d != dist_(y, x)) throw InvalidArgument("distance matrix must be symmetric");
      if (x != y && d == 0.0) {
        std::ostringstream msg;
        msg << "distinct points " << labels_[x] << " and " << labels_[y] << " are at distance 0";
        throw InvalidArgument(msg.str());
      }
    }
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (dist_(x, z) > dist_(x, y) + dist_(y, z) + kMetricTolerance * (1.0 + dist_(x, z))) {
          std::ostringstream msg;
          msg << "triangle inequality fails on (" << labels_[x] << ", " << labels_[y] << ", "
              << labels_[z] << ")";
          throw InvalidArgument(msg.str());
        }
}

double CompactSpaceModel::diameter() const { return dist_.maxCoeff(); }

double CompactSpaceModel::min_positive_distance() const {
  double best = 0.0;
  for (Eigen::Index x = 0; x < dist_.rows(); ++x)
    for (Eigen::Index y = x + 1; y < dist_.cols(); ++y)
      if (best == 0.0 || dist_(x, y) < best) best = dist_(x, y);
  return best;
}

bool CompactSpaceModel::operator==(const CompactSpaceModel& other) const {
  return labels_ == other.labels_ && dist_ == other.dist_;
}

SpaceHandle make_grid_space(std::size_t n, double spacing) {
  if (n == 0) throw InvalidArgument("grid needs at least one point");
  if (!(spacing > 0.0) || !std::isfinite(spacing)) throw InvalidArgument("grid spacing must be positive");
  std::vector<std::string> labels;
  labels.reserve(n);
  RealMatrix dist(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back("p" + std::to_string(i));
    for (std::size_t j = 0; j < n; ++j)
      dist(i, j) = static_cast<double>(i > j ? i - j : j - i) * spacing;
  }
  return std::make_shared<const CompactSpaceModel>(std::move(labels), std::move(dist));
}

SpaceHandle make_metric_space(std::vector<std::string> labels, RealMatrix dist) {
  return std::make_shared<const CompactSpaceModel>(std::move(labels), std::move(dist));
}

}  // namespace amenlab
