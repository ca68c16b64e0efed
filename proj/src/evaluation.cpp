#include "depthseg/evaluation.hpp"

#include <algorithm>
#include <stdexcept>

namespace depthseg {

double mask_iou(const Bitmap& a, const Bitmap& b) {
  if (!a.same_shape(b)) {
    throw std::invalid_argument("mask_iou: dimension mismatch");
  }
  size_t inter = 0, uni = 0;
  for (size_t i = 0; i < a.data.size(); ++i) {
    const bool pa = a.data[i] != 0, pb = b.data[i] != 0;
    inter += pa && pb;
    uni += pa || pb;
  }
  return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

namespace {

struct PredRef {
  size_t image;
  size_t index;
  double score;
  int id;
};

std::vector<PredRef> rank_predictions(const std::vector<ImageMasks>& images) {
  std::vector<PredRef> refs;
  for (size_t im = 0; im < images.size(); ++im) {
    const auto& preds = images[im].preds;
    for (size_t i = 0; i < preds.size(); ++i) {
      refs.push_back(PredRef{im, i, preds[i].score, preds[i].id});
    }
  }
  std::sort(refs.begin(), refs.end(), [](const PredRef& a, const PredRef& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.id != b.id) return a.id < b.id;
    if (a.image != b.image) return a.image < b.image;
    return a.index < b.index;
  });
  return refs;
}

}  // namespace

double average_precision(const std::vector<ImageMasks>& images, double iou_threshold) {
  size_t n_gt = 0;
  for (const auto& im : images) n_gt += im.gts.size();
  if (n_gt == 0) return 0.0;

  const std::vector<PredRef> order = rank_predictions(images);
  std::vector<std::vector<char>> used(images.size());
  for (size_t im = 0; im < images.size(); ++im) used[im].assign(images[im].gts.size(), 0);

  std::vector<double> precision;
  std::vector<char> is_tp;
  precision.reserve(order.size());
  is_tp.reserve(order.size());
  size_t tp = 0, fp = 0;
  for (const PredRef& ref : order) {
    const auto& gts = images[ref.image].gts;
    const Bitmap& pred = images[ref.image].preds[ref.index].bitmap;
    double best_iou = -1.0;
    size_t best_gt = gts.size();
    for (size_t g = 0; g < gts.size(); ++g) {
      if (used[ref.image][g]) continue;
      const double iou = mask_iou(pred, gts[g].bitmap);
      if (iou >= iou_threshold && iou > best_iou) {
        best_iou = iou;
        best_gt = g;
      }
    }
    if (best_gt < gts.size()) {
      used[ref.image][best_gt] = 1;
      ++tp;
    } else {
      ++fp;
    }
    precision.push_back(static_cast<double>(tp) / static_cast<double>(tp + fp));
    is_tp.push_back(best_gt < gts.size());
  }

  // Every true positive advances recall by exactly 1/n_gt, so summing the
  // precision envelope at the true positives and dividing once keeps a
  // perfect run at exactly 1.0.
  double ap = 0.0;
  double envelope = 0.0;
  for (size_t i = precision.size(); i-- > 0;) {
    envelope = std::max(envelope, precision[i]);
    if (is_tp[i]) ap += envelope;
  }
  return ap / static_cast<double>(n_gt);
}

double average_precision(const std::vector<InstanceMask>& preds,
                         const std::vector<InstanceMask>& gts,
                         double iou_threshold) {
  return average_precision(std::vector<ImageMasks>{ImageMasks{preds, gts}}, iou_threshold);
}

const std::vector<double>& coco_iou_thresholds() {
  static const std::vector<double> ladder = [] {
    std::vector<double> t;
    for (int i = 0; i < 10; ++i) t.push_back((50 + 5 * i) / 100.0);
    return t;
  }();
  return ladder;
}

EvalResult evaluate(const std::vector<ImageMasks>& images,
                    const std::vector<double>& thresholds) {
  if (thresholds.empty()) {
    throw std::invalid_argument("evaluate: empty threshold list");
  }
  EvalResult result;
  int n_present = 0;
  for (int c = 0; c < kNumCategories; ++c) {
    const auto cat = static_cast<Category>(c);
    std::vector<ImageMasks> filtered(images.size());
    bool any_gt = false;
    for (size_t im = 0; im < images.size(); ++im) {
      for (const InstanceMask& m : images[im].preds) {
        if (m.category == cat) filtered[im].preds.push_back(m);
      }
      for (const InstanceMask& m : images[im].gts) {
        if (m.category == cat) filtered[im].gts.push_back(m);
      }
      any_gt = any_gt || !filtered[im].gts.empty();
    }
    CategoryResult& cr = result.per_category[c];
    cr.present = any_gt;
    if (!any_gt) continue;
    ++n_present;
    double sum = 0.0;
    for (double t : thresholds) sum += average_precision(filtered, t);
    cr.ap = sum / static_cast<double>(thresholds.size());
    cr.ap50 = average_precision(filtered, 0.5);
    result.mean_ap += cr.ap;
    result.mean_ap50 += cr.ap50;
  }
  if (n_present > 0) {
    result.mean_ap /= n_present;
    result.mean_ap50 /= n_present;
  }
  return result;
}

}  // namespace depthseg
