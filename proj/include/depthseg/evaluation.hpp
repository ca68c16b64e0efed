#pragma once

#include <array>
#include <vector>

#include "depthseg/mask_assembly.hpp"
#include "depthseg/types.hpp"

namespace depthseg {

// |a AND b| / |a OR b|; 0 when both masks are empty.
double mask_iou(const Bitmap& a, const Bitmap& b);

// Predictions and ground truths for one image; masks share one resolution.
struct ImageMasks {
  std::vector<InstanceMask> preds;
  std::vector<InstanceMask> gts;
};

// Greedy matching, highest score first (ties broken by ascending id), each
// ground truth used at most once, a match requires IoU >= iou_threshold.
// Area under the precision-recall curve with all-point interpolation.
// Returns 0 when there are no ground truths.
double average_precision(const std::vector<InstanceMask>& preds,
                         const std::vector<InstanceMask>& gts,
                         double iou_threshold);
double average_precision(const std::vector<ImageMasks>& images,
                         double iou_threshold);

// The 0.50:0.05:0.95 ladder (10 thresholds).
const std::vector<double>& coco_iou_thresholds();

struct CategoryResult {
  double ap = 0.0;    // mean over the threshold ladder
  double ap50 = 0.0;  // at IoU 0.50
  bool present = false;  // category has at least one ground truth
};

// Per-category AP/AP50 plus means over the categories that are present.
struct EvalResult {
  std::array<CategoryResult, kNumCategories> per_category;
  double mean_ap = 0.0;
  double mean_ap50 = 0.0;
};

EvalResult evaluate(const std::vector<ImageMasks>& images,
                    const std::vector<double>& thresholds = coco_iou_thresholds());

inline EvalResult evaluate(const std::vector<InstanceMask>& preds,
                           const std::vector<InstanceMask>& gts) {
  return evaluate(std::vector<ImageMasks>{ImageMasks{preds, gts}});
}

}  // namespace depthseg
