#include "depthseg/synth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "depthseg/rng.hpp"

namespace depthseg {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kPlacementAttempts = 200;

// Fraction of the image the sampled center pixel may occupy.
constexpr double kUMin = 0.10, kUMax = 0.90;
constexpr double kVMin = 0.35, kVMax = 0.90;

struct Placed {
  InstanceDetection det;
  double index = 0.0;      // continuous class index of the center depth
  double threshold = 0.0;  // delta in class units
  double cos_t = 0.0, sin_t = 0.0;
  Point3D center;
};

void validate(const SceneSpec& spec) {
  if (spec.image_width <= 0 || spec.image_height <= 0) {
    throw std::invalid_argument("generate: zero-area image");
  }
  if (spec.scale < 1) throw std::invalid_argument("generate: scale must be >= 1");
  if (spec.n_instances < 0) throw std::invalid_argument("generate: negative instance count");
  if (!(spec.depth_min > 0.0) || !(spec.depth_max >= spec.depth_min)) {
    throw std::invalid_argument("generate: invalid depth range");
  }
  if (!spec.intrinsics.valid()) throw std::invalid_argument("generate: invalid intrinsics");
  for (const DimsRange& r : spec.dims_ranges) {
    if (!r.lo.valid() || r.hi.w < r.lo.w || r.hi.l < r.lo.l || r.hi.h < r.lo.h) {
      throw std::invalid_argument("generate: invalid dims range");
    }
  }
}

// Ray through the center of scaled pixel (xs, ys), parameterized so the
// ray parameter equals metric depth (dir.z = 1).
Point3D pixel_ray(const CameraIntrinsics& cam, int xs, int ys, int scale) {
  const double u = (xs + 0.5) * scale;
  const double v = (ys + 0.5) * scale;
  return Point3D{(u - cam.cx) / cam.fx, (v - cam.cy) / cam.fy, 1.0};
}

// Nearest intersection depth of the ray t*dir with the instance's cuboid,
// or a negative value when the ray misses.
double hit_depth(const Placed& inst, const Point3D& dir) {
  // Into the box frame: rotate by -theta about y around the box center.
  const double c = inst.cos_t, s = inst.sin_t;
  const double ox = -(c * inst.center.x - s * inst.center.z);
  const double oy = -inst.center.y;
  const double oz = -(s * inst.center.x + c * inst.center.z);
  const double dx = c * dir.x - s * dir.z;
  const double dy = dir.y;
  const double dz = s * dir.x + c * dir.z;

  const double half[3] = {inst.det.dims.l * 0.5, inst.det.dims.h * 0.5, inst.det.dims.w * 0.5};
  const double o[3] = {ox, oy, oz};
  const double d[3] = {dx, dy, dz};

  double tmin = 0.0, tmax = std::numeric_limits<double>::infinity();
  for (int a = 0; a < 3; ++a) {
    if (std::fabs(d[a]) < 1e-12) {
      if (std::fabs(o[a]) > half[a]) return -1.0;
      continue;
    }
    double t1 = (-half[a] - o[a]) / d[a];
    double t2 = (half[a] - o[a]) / d[a];
    if (t1 > t2) std::swap(t1, t2);
    tmin = std::max(tmin, t1);
    tmax = std::min(tmax, t2);
    if (tmin > tmax) return -1.0;
  }
  return tmin > 0.0 ? tmin : -1.0;
}

}  // namespace

std::array<DimsRange, kNumCategories> default_dims_ranges() {
  return {
      DimsRange{{1.5, 3.2, 1.3}, {1.9, 4.5, 1.8}},  // Car
      DimsRange{{0.4, 0.4, 1.5}, {0.8, 0.9, 1.9}},  // Pedestrian
      DimsRange{{0.4, 1.5, 1.4}, {0.8, 2.0, 1.9}},  // Cyclist
  };
}

Scene generate(const SceneSpec& spec) {
  validate(spec);
  Xoshiro256pp rng(spec.rng_seed);

  const double w = spec.image_width, h = spec.image_height;
  std::vector<Placed> placed;
  placed.reserve(spec.n_instances);

  for (int i = 0; i < spec.n_instances; ++i) {
    const int cat = rng.uniform_int(0, kNumCategories - 1);
    const DimsRange& range = spec.dims_ranges[cat];
    ObjectDims dims;
    dims.w = rng.uniform(range.lo.w, range.hi.w);
    dims.l = rng.uniform(range.lo.l, range.hi.l);
    dims.h = rng.uniform(range.lo.h, range.hi.h);
    const double theta = rng.uniform(-kPi / 2.0, kPi / 2.0);
    const double margin = depth_margin(dims, theta);

    double depth = 0.0, index = 0.0, threshold = 0.0;
    bool ok = false;
    for (int attempt = 0; attempt < kPlacementAttempts; ++attempt) {
      depth = rng.uniform(spec.depth_min, spec.depth_max);
      if (depth - margin <= 0.01) continue;  // front face would reach the camera
      index = continuous_index(spec.bins, depth);
      threshold = depth_threshold(spec.bins, depth, margin);
      if (spec.min_index_separation >= 0.0) {
        bool separated = true;
        for (const Placed& p : placed) {
          if (std::fabs(index - p.index) <=
              threshold + p.threshold + spec.min_index_separation) {
            separated = false;
            break;
          }
        }
        if (!separated) continue;
      }
      ok = true;
      break;
    }
    const double u = rng.uniform(kUMin * w, kUMax * w);
    const double v = rng.uniform(kVMin * h, kVMax * h);
    if (!ok) continue;  // unplaceable under the separation constraint

    Placed inst;
    inst.det.id = static_cast<int>(placed.size()) + 1;
    inst.det.category = static_cast<Category>(cat);
    inst.det.score = 1.0;
    inst.det.center_depth = depth;
    inst.det.dims = dims;
    inst.det.theta = theta;
    inst.index = index;
    inst.threshold = threshold;
    inst.cos_t = std::cos(theta);
    inst.sin_t = std::sin(theta);
    inst.center = locate_3d(spec.intrinsics, u, v, depth);

    // Image-space bbox: hull of the projected corners, clamped to the image.
    const CornerSet corners = corners_from_dims(dims, theta);
    Box2D bbox{1e30, 1e30, -1e30, -1e30};
    for (const Point3D& local : corners.points) {
      const Point3D world{inst.center.x + local.x, inst.center.y + local.y,
                          inst.center.z + local.z};
      const PixelPoint px = project(spec.intrinsics, world);
      bbox.left = std::min(bbox.left, px.u);
      bbox.top = std::min(bbox.top, px.v);
      bbox.right = std::max(bbox.right, px.u);
      bbox.bottom = std::max(bbox.bottom, px.v);
    }
    bbox.left = std::max(bbox.left, 0.0);
    bbox.top = std::max(bbox.top, 0.0);
    bbox.right = std::min(bbox.right, w);
    bbox.bottom = std::min(bbox.bottom, h);
    if (!bbox.valid()) continue;  // fully outside the image
    inst.det.bbox = bbox;
    placed.push_back(inst);
  }

  const int map_w = (spec.image_width + spec.scale - 1) / spec.scale;
  const int map_h = (spec.image_height + spec.scale - 1) / spec.scale;
  Scene scene;
  scene.map = PixelDepthMap::background(map_w, map_h, spec.bins.k(),
                                        static_cast<double>(spec.scale));

  std::vector<int> winner(static_cast<size_t>(map_w) * map_h, -1);
  for (int ys = 0; ys < map_h; ++ys) {
    for (int xs = 0; xs < map_w; ++xs) {
      const Point3D dir = pixel_ray(spec.intrinsics, xs, ys, spec.scale);
      double best = std::numeric_limits<double>::infinity();
      int best_i = -1;
      for (size_t p = 0; p < placed.size(); ++p) {
        const double t = hit_depth(placed[p], dir);
        if (t > 0.0 && t < best) {
          best = t;
          best_i = static_cast<int>(p);
        }
      }
      if (best_i >= 0) {
        const size_t px = static_cast<size_t>(ys) * map_w + xs;
        winner[px] = best_i;
        scene.map.values[px] = static_cast<uint16_t>(class_of_depth(spec.bins, best));
      }
    }
  }

  // Ground-truth masks: visible pixels that also match their own instance.
  for (size_t p = 0; p < placed.size(); ++p) {
    const Placed& inst = placed[p];
    Bitmap mask = Bitmap::zeros(map_w, map_h);
    const BoxI box = scale_bbox(inst.det.bbox, scene.map.scale);
    int pixels = 0;
    for (int ys = std::max(box.top, 0); ys < std::min(box.bottom, map_h); ++ys) {
      for (int xs = std::max(box.left, 0); xs < std::min(box.right, map_w); ++xs) {
        const size_t px = static_cast<size_t>(ys) * map_w + xs;
        if (winner[px] != static_cast<int>(p)) continue;
        const double value = scene.map.values[px];
        if (std::fabs(value - inst.index) < inst.threshold) {
          mask.data[px] = 1;
          ++pixels;
        }
      }
    }
    if (pixels == 0) continue;
    scene.detections.push_back(inst.det);
    scene.masks.push_back(InstanceMask{inst.det.id, inst.det.category, inst.det.score, mask});
  }

  std::vector<size_t> order(scene.detections.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    const auto& da = scene.detections[a];
    const auto& db = scene.detections[b];
    if (da.center_depth != db.center_depth) return da.center_depth < db.center_depth;
    return da.id < db.id;
  });
  for (size_t idx : order) scene.occlusion_order.push_back(scene.detections[idx].id);
  return scene;
}

PerturbedInputs perturb(const Scene& scene, double depth_noise_sigma,
                        double bbox_noise, std::uint64_t seed) {
  if (depth_noise_sigma < 0.0 || bbox_noise < 0.0) {
    throw std::invalid_argument("perturb: noise magnitudes must be nonnegative");
  }
  Xoshiro256pp rng(seed);
  PerturbedInputs out{scene.map, scene.detections};

  if (depth_noise_sigma > 0.0) {
    const auto k = static_cast<long>(out.map.k);
    for (uint16_t& value : out.map.values) {
      if (value == 0) continue;
      const long noise = std::lround(rng.gaussian(0.0, depth_noise_sigma));
      value = static_cast<uint16_t>(std::clamp(static_cast<long>(value) + noise, 0L, k));
    }
  }
  if (bbox_noise > 0.0) {
    for (InstanceDetection& det : out.detections) {
      Box2D& b = det.bbox;
      b.left += rng.uniform(-bbox_noise, bbox_noise);
      b.top += rng.uniform(-bbox_noise, bbox_noise);
      b.right += rng.uniform(-bbox_noise, bbox_noise);
      b.bottom += rng.uniform(-bbox_noise, bbox_noise);
      if (b.left > b.right) std::swap(b.left, b.right);
      if (b.top > b.bottom) std::swap(b.top, b.bottom);
    }
  }
  return out;
}

}  // namespace depthseg
