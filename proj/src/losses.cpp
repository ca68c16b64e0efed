#include "depthseg/losses.hpp"

#include <cmath>
#include <stdexcept>

namespace depthseg {
namespace {

void check_focal_args(double p, int y, const FocalParams& params) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("focal_loss: p must lie in (0, 1)");
  }
  if (y != 0 && y != 1) {
    throw std::invalid_argument("focal_loss: label must be 0 or 1");
  }
  if (!(params.gamma >= 0.0)) {
    throw std::invalid_argument("focal_loss: gamma must be >= 0");
  }
  // alpha = 1 is allowed so gamma = 0 degrades cleanly to plain cross-entropy.
  if (!(params.alpha > 0.0 && params.alpha <= 1.0)) {
    throw std::invalid_argument("focal_loss: alpha must lie in (0, 1]");
  }
}

double sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

}  // namespace

double focal_loss(double p, int y, const FocalParams& params) {
  check_focal_args(p, y, params);
  const double pt = y == 1 ? p : 1.0 - p;
  return -params.alpha * std::pow(1.0 - pt, params.gamma) * std::log(pt);
}

double focal_loss_dp(double p, int y, const FocalParams& params) {
  check_focal_args(p, y, params);
  const double pt = y == 1 ? p : 1.0 - p;
  // dL/dpt, then dpt/dp = +1 for y=1 and -1 for y=0.
  const double dpt = params.alpha * (params.gamma * std::pow(1.0 - pt, params.gamma - 1.0) * std::log(pt)
                                     - std::pow(1.0 - pt, params.gamma) / pt);
  return y == 1 ? dpt : -dpt;
}

double loss_2d(double l_cls, double l_box, const LossWeights& w) {
  if (!(w.w1 >= 0.0) || !(w.w2 >= 0.0)) {
    throw std::invalid_argument("loss_2d: weights must be nonnegative");
  }
  return w.w1 * l_cls + w.w2 * l_box;
}

double instance_depth_loss(const std::vector<double>& pred,
                           const std::vector<double>& gt,
                           bool normalize) {
  if (pred.size() != gt.size()) {
    throw std::invalid_argument("instance_depth_loss: length mismatch");
  }
  double sum = 0.0;
  for (size_t i = 0; i < pred.size(); ++i) sum += std::fabs(pred[i] - gt[i]);
  if (normalize && !pred.empty()) sum /= static_cast<double>(pred.size());
  return sum;
}

double pixel_depth_loss(const std::vector<double>& pred,
                        const PixelDepthMap& label,
                        bool normalize) {
  if (pred.size() != label.values.size()) {
    throw std::invalid_argument("pixel_depth_loss: dimension mismatch");
  }
  double sum = 0.0;
  for (size_t i = 0; i < pred.size(); ++i) {
    sum += std::fabs(pred[i] - static_cast<double>(label.values[i]));
  }
  if (normalize && !pred.empty()) sum /= static_cast<double>(pred.size());
  return sum;
}

L1Gradient instance_depth_loss_grad(const std::vector<double>& pred,
                                    const std::vector<double>& gt,
                                    bool normalize) {
  if (pred.size() != gt.size()) {
    throw std::invalid_argument("instance_depth_loss_grad: length mismatch");
  }
  L1Gradient grad;
  grad.d_pred.resize(pred.size());
  const double scale = normalize && !pred.empty() ? 1.0 / static_cast<double>(pred.size()) : 1.0;
  for (size_t i = 0; i < pred.size(); ++i) {
    const double diff = pred[i] - gt[i];
    if (std::fabs(diff) <= kKinkTolerance) grad.at_kink = true;
    grad.d_pred[i] = scale * sign(diff);
  }
  return grad;
}

L1Gradient pixel_depth_loss_grad(const std::vector<double>& pred,
                                 const PixelDepthMap& label,
                                 bool normalize) {
  if (pred.size() != label.values.size()) {
    throw std::invalid_argument("pixel_depth_loss_grad: dimension mismatch");
  }
  L1Gradient grad;
  grad.d_pred.resize(pred.size());
  const double scale = normalize && !pred.empty() ? 1.0 / static_cast<double>(pred.size()) : 1.0;
  for (size_t i = 0; i < pred.size(); ++i) {
    const double diff = pred[i] - static_cast<double>(label.values[i]);
    if (std::fabs(diff) <= kKinkTolerance) grad.at_kink = true;
    grad.d_pred[i] = scale * sign(diff);
  }
  return grad;
}

}  // namespace depthseg
