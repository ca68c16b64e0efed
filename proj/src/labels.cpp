#include "depthseg/labels.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace depthseg {
namespace {

std::runtime_error line_error(int line, const std::string& what) {
  return std::runtime_error("labels line " + std::to_string(line) + ": " + what);
}

}  // namespace

std::vector<KittiObject> parse_kitti_labels(const std::string& text) {
  std::vector<KittiObject> objects;
  std::istringstream stream(text);
  std::string line;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string type;
    if (!(fields >> type)) continue;  // blank line

    KittiObject obj;
    obj.type = type;
    double h = 0.0, w = 0.0, l = 0.0;
    if (!(fields >> obj.truncated >> obj.occluded >> obj.alpha
                 >> obj.bbox.left >> obj.bbox.top >> obj.bbox.right >> obj.bbox.bottom
                 >> h >> w >> l
                 >> obj.location.x >> obj.location.y >> obj.location.z
                 >> obj.rotation_y)) {
      throw line_error(line_no, "expected 15 whitespace-separated fields");
    }
    std::string extra;
    if (fields >> extra) {
      throw line_error(line_no, "trailing junk after the 15 fields");
    }
    obj.dims = ObjectDims{w, l, h};
    if (!obj.is_dont_care() && !obj.dims.valid()) {
      throw line_error(line_no, "non-positive dimensions for type " + type);
    }
    objects.push_back(std::move(obj));
  }
  return objects;
}

std::string serialize_kitti_labels(const std::vector<KittiObject>& objects) {
  std::string out;
  char buf[320];
  for (const KittiObject& o : objects) {
    std::snprintf(buf, sizeof(buf),
                  "%s %.2f %d %.2f %.2f %.2f %.2f %.2f %.2f %.2f %.2f %.2f %.2f %.2f %.2f\n",
                  o.type.c_str(), o.truncated, o.occluded, o.alpha,
                  o.bbox.left, o.bbox.top, o.bbox.right, o.bbox.bottom,
                  o.dims.h, o.dims.w, o.dims.l,
                  o.location.x, o.location.y, o.location.z, o.rotation_y);
    out += buf;
  }
  return out;
}

CameraIntrinsics parse_kitti_calib(const std::string& text) {
  std::istringstream stream(text);
  std::string line;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string name;
    if (!(fields >> name)) continue;
    if (name != "P2:" && name != "P2") continue;

    std::vector<double> p;
    double v = 0.0;
    while (fields >> v) p.push_back(v);
    if (p.size() != 12) {
      throw std::runtime_error("calib line " + std::to_string(line_no) +
                               ": P2 expects 12 numbers, got " + std::to_string(p.size()));
    }
    CameraIntrinsics cam{p[0], p[5], p[2], p[6]};
    if (!cam.valid()) {
      throw std::runtime_error("calib line " + std::to_string(line_no) +
                               ": P2 has non-positive focal length");
    }
    return cam;
  }
  throw std::runtime_error("calib: missing P2 row");
}

std::vector<KittiObject> filter_categories(const std::vector<KittiObject>& objects) {
  std::vector<KittiObject> kept;
  for (const KittiObject& o : objects) {
    if (o.type == "Car" || o.type == "Pedestrian" || o.type == "Cyclist") {
      kept.push_back(o);
    }
  }
  return kept;
}

PixelDepthMap synthesize_pixel_labels(
    const std::vector<std::pair<CoarseMask, double>>& masks,
    const DepthBins& bins, int width, int height, int scale) {
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("synthesize_pixel_labels: non-positive map size");
  }
  PixelDepthMap map = PixelDepthMap::background(width, height, bins.k(), scale);

  for (const auto& [mask, depth] : masks) {
    if (mask.bitmap.width != width || mask.bitmap.height != height) {
      throw std::invalid_argument("synthesize_pixel_labels: mask " + std::to_string(mask.id) +
                                  " resolution mismatch");
    }
    (void)depth;
  }

  // Farther instances first so nearer ones overwrite at overlaps.
  std::vector<size_t> order(masks.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (masks[a].second != masks[b].second) return masks[a].second > masks[b].second;
    return masks[a].first.id > masks[b].first.id;
  });

  for (size_t idx : order) {
    const CoarseMask& mask = masks[idx].first;
    const auto cls = static_cast<uint16_t>(class_of_depth(bins, masks[idx].second));
    for (size_t p = 0; p < map.values.size(); ++p) {
      if (mask.bitmap.data[p]) map.values[p] = cls;
    }
  }
  return map;
}

}  // namespace depthseg
