#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "erdiff/features.hpp"

namespace erdiff {

struct LinearSvmOptions {
  double c = 1.0;
  std::size_t max_iterations = 10000;
  /// Stop once the gradient norm falls below this value.
  double tolerance = 1e-10;
};

/// L2-regularized squared-hinge linear SVM with the bias folded in as an
/// extra constant feature (so it is regularized too). Solved in the primal by
/// generalized Newton steps from w = 0, which is fully deterministic.
struct LinearSvm {
  std::vector<double> weights;
  double bias = 0;
  std::size_t iterations = 0;

  double decision(std::span<const double> x) const;
  /// 1 when decision(x) > 0.
  std::uint8_t predict(std::span<const double> x) const;
};

/// labels are 0/1; class 1 is the positive side.
LinearSvm train_linear_svm(const FeatureMatrix& x, std::span<const std::uint8_t> labels,
                           const LinearSvmOptions& options = {});

}  // namespace erdiff
