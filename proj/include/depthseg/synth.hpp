#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "depthseg/depth_bins.hpp"
#include "depthseg/geometry.hpp"
#include "depthseg/mask_assembly.hpp"
#include "depthseg/types.hpp"

namespace depthseg {

struct DimsRange {
  ObjectDims lo;
  ObjectDims hi;
};

/// Per-category sampling ranges loosely matching KITTI object statistics.
std::array<DimsRange, kNumCategories> default_dims_ranges();

/// Everything that determines a synthetic scene. The seed fixes the scene
/// bit for bit; the sampling order is documented in README.md.
struct SceneSpec {
  std::uint64_t rng_seed = 0;
  int n_instances = 0;
  double depth_min = 4.0;   // sampled center depths, meters
  double depth_max = 70.0;
  std::array<DimsRange, kNumCategories> dims_ranges = default_dims_ranges();
  int image_width = 1248;
  int image_height = 384;
  int scale = 4;
  CameraIntrinsics intrinsics{721.5377, 721.5377, 624.0, 192.0};
  DepthBins bins{64, 2.0, 80.0, Scheme::Exponential};
  /// When >= 0, accepted instances are pairwise separated in class-index
  /// space: |s_i - s_j| > delta_i + delta_j + min_index_separation.
  /// Instances that cannot be placed after repeated draws are dropped.
  double min_index_separation = -1.0;
};

/// A rendered scene. `map` holds the depth class of the nearest cuboid
/// surface at every covered pixel. `masks` are the per-instance ground
/// truths: the pixels an instance wins in the z-buffer whose class also
/// matches the instance under its own depth threshold (quantization can
/// push boundary pixels outside the strict match window, so the mask is
/// the matchable subset of the visible surface). Instances whose mask
/// comes out empty are dropped from `detections` and `masks`; their
/// surface pixels stay in the map as unannotated clutter.
struct Scene {
  std::vector<InstanceDetection> detections;
  PixelDepthMap map;
  std::vector<InstanceMask> masks;     // same order as detections, disjoint
  std::vector<int> occlusion_order;    // surviving ids, nearest first
};

Scene generate(const SceneSpec& spec);

/// Noisy copies of a scene's pipeline inputs.
struct PerturbedInputs {
  PixelDepthMap map;
  std::vector<InstanceDetection> detections;
};

/// Adds rounded Gaussian noise (class units) to foreground map pixels,
/// clamping to [0, k], and uniform jitter in [-bbox_noise, bbox_noise]
/// pixels to each bbox edge. Zero-sigma stages draw nothing, so the two
/// noise sources consume independent, documented parts of the stream.
PerturbedInputs perturb(const Scene& scene, double depth_noise_sigma,
                        double bbox_noise, std::uint64_t seed);

}  // namespace depthseg
