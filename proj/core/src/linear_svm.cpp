#include "erdiff/linear_svm.hpp"

#include <Eigen/Dense>

#include "erdiff/errors.hpp"

namespace erdiff {

double LinearSvm::decision(std::span<const double> x) const {
  double s = bias;
  for (std::size_t f = 0; f < weights.size(); ++f) s += weights[f] * x[f];
  return s;
}

std::uint8_t LinearSvm::predict(std::span<const double> x) const { return decision(x) > 0 ? 1 : 0; }

LinearSvm train_linear_svm(const FeatureMatrix& x, std::span<const std::uint8_t> labels,
                           const LinearSvmOptions& options) {
  if (x.rows != labels.size()) fail(ErrorCode::DimensionMismatch, "feature rows and labels differ in length");
  const std::size_t n = x.rows;
  const std::size_t d = x.cols + 1;

  Eigen::MatrixXd a(n, d);
  Eigen::VectorXd y(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t f = 0; f < x.cols; ++f) a(i, f) = x(i, f);
    a(i, x.cols) = 1.0;
    y(i) = labels[i] ? 1.0 : -1.0;
  }

  const double c = options.c;
  auto objective = [&](const Eigen::VectorXd& w) {
    Eigen::ArrayXd slack = (1.0 - y.array() * (a * w).array()).max(0.0);
    return 0.5 * w.squaredNorm() + c * slack.square().sum();
  };

  Eigen::VectorXd w = Eigen::VectorXd::Zero(d);
  double fw = objective(w);
  std::size_t it = 0;
  for (; it < options.max_iterations; ++it) {
    Eigen::ArrayXd margin = y.array() * (a * w).array();
    Eigen::ArrayXd active = (margin < 1.0).cast<double>();
    // gradient: w + 2C sum_active (w.x_i - y_i) x_i
    Eigen::VectorXd residual = (active * ((a * w).array() - y.array())).matrix();
    Eigen::VectorXd grad = w + 2.0 * c * (a.transpose() * residual);
    if (grad.norm() < options.tolerance) break;

    Eigen::MatrixXd h = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    Eigen::MatrixXd aa = a.array().colwise() * active.sqrt();
    h.noalias() += 2.0 * c * (aa.transpose() * aa);
    Eigen::VectorXd step = -h.ldlt().solve(grad);

    double slope = grad.dot(step);
    double t = 1.0;
    double next = objective(w + step);
    while (next > fw + 1e-4 * t * slope && t > 1e-12) {
      t *= 0.5;
      next = objective(w + t * step);
    }
    Eigen::VectorXd moved = w + t * step;
    if ((moved - w).norm() == 0.0) break;
    w = moved;
    fw = next;
  }

  LinearSvm model;
  model.weights.assign(w.data(), w.data() + x.cols);
  model.bias = w(static_cast<Eigen::Index>(x.cols));
  model.iterations = it;
  return model;
}

}  // namespace erdiff
