#pragma once

#include <vector>

#include "depthseg/mask_assembly.hpp"

namespace depthseg {

struct LossWeights {
  double w1 = 1.0;
  double w2 = 1.0;
};

struct FocalParams {
  double gamma = 2.0;
  double alpha = 0.25;
};

// -alpha * (1 - p_t)^gamma * log(p_t), p_t = p for y=1 and 1-p for y=0.
// p must lie strictly inside (0, 1); y must be 0 or 1.
double focal_loss(double p, int y, const FocalParams& params = {});

// d(focal_loss)/dp at the same point.
double focal_loss_dp(double p, int y, const FocalParams& params = {});

// w1 * l_cls + w2 * l_box.
double loss_2d(double l_cls, double l_box, const LossWeights& w = {});

// Unreduced L1 sum over per-instance depths; normalize divides by n.
double instance_depth_loss(const std::vector<double>& pred,
                           const std::vector<double>& gt,
                           bool normalize = false);

// Unreduced L1 sum over all pixels against integer class targets
// (background pixels contribute with target 0); normalize divides by n.
double pixel_depth_loss(const std::vector<double>& pred,
                        const PixelDepthMap& label,
                        bool normalize = false);

// Per-input subgradients of the L1 losses: sign(pred - target), scaled by
// 1/n when normalized. at_kink marks evaluation points where some
// |pred - target| <= 1e-6, where the derivative is set-valued.
struct L1Gradient {
  std::vector<double> d_pred;
  bool at_kink = false;
};

L1Gradient instance_depth_loss_grad(const std::vector<double>& pred,
                                    const std::vector<double>& gt,
                                    bool normalize = false);

L1Gradient pixel_depth_loss_grad(const std::vector<double>& pred,
                                 const PixelDepthMap& label,
                                 bool normalize = false);

inline constexpr double kKinkTolerance = 1e-6;

}  // namespace depthseg
