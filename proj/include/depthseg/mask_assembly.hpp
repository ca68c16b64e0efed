#pragma once

#include <cstdint>
#include <vector>

#include "depthseg/depth_bins.hpp"
#include "depthseg/geometry.hpp"
#include "depthseg/types.hpp"

namespace depthseg {

/// Grid of depth-class indices at map resolution. Values lie in [0, k],
/// 0 meaning background. `scale` is full-image resolution over map
/// resolution (4 for a 1248x384 image with a 312x96 map).
struct PixelDepthMap {
    int width = 0;
    int height = 0;
    int k = 0;
    double scale = 1.0;
    std::vector<std::uint16_t> values;

    static PixelDepthMap background(int w, int h, int k, double scale);

    std::uint16_t at(int x, int y) const {
        return values[static_cast<std::size_t>(y) * width + x];
    }
    std::uint16_t& at(int x, int y) { return values[static_cast<std::size_t>(y) * width + x]; }
    bool in_bounds(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }

    /// True when dimensions, scale and stored values satisfy the type invariants.
    bool consistent() const;
};

/// One detected object as produced by a 3D detection stage.
struct InstanceDetection {
    int id = 0;
    Category category = Category::Car;
    double score = 1.0;
    Box2D bbox;           // full-image pixels
    double center_depth = 0.0;  // meters
    ObjectDims dims;
    double theta = 0.0;   // yaw used by the depth margin, radians
};

/// Binary mask assembled for one detection, at map resolution.
struct InstanceMask {
    int id = 0;
    Category category = Category::Car;
    double score = 1.0;
    Bitmap bitmap;
};

/// Downscales a full-image box to map resolution with inclusive-cover
/// rounding: left/top floored, right/bottom ceiled. The result is half-open.
BoxI scale_bbox(const Box2D& bbox, double scale);

/// Marks every foreground pixel inside the detection's scaled box whose
/// depth class lies within the instance's depth threshold of the instance's
/// continuous depth index. Throws if the map and bins disagree on k.
InstanceMask match_pixels(const PixelDepthMap& map, const InstanceDetection& det,
                          const DepthBins& bins);

/// Runs match_pixels for every detection (optionally across `jobs` threads),
/// then assigns each multiply-claimed pixel to the instance whose continuous
/// depth index is nearest to the pixel class; ties go to the nearer instance,
/// then to the smaller id. Output masks are pairwise disjoint.
std::vector<InstanceMask> assemble(const PixelDepthMap& map,
                                   const std::vector<InstanceDetection>& detections,
                                   const DepthBins& bins, int jobs = 1);

}  // namespace depthseg
