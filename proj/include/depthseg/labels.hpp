#pragma once

#include <string>
#include <utility>
#include <vector>

#include "depthseg/depth_bins.hpp"
#include "depthseg/geometry.hpp"
#include "depthseg/mask_assembly.hpp"
#include "depthseg/types.hpp"

namespace depthseg {

// One line of a KITTI 3D label file. Field order in the file is
// type truncated occluded alpha bbox(l,t,r,b) h w l x y z rotation_y.
struct KittiObject {
  std::string type;
  double truncated = 0.0;
  int occluded = 0;
  double alpha = 0.0;
  Box2D bbox;
  ObjectDims dims;      // stored as (w, l, h); the file writes h w l
  Point3D location;     // camera frame, meters
  double rotation_y = 0.0;

  bool is_dont_care() const { return type == "DontCare"; }
};

// Throws std::runtime_error naming the 1-based line on any malformed line.
std::vector<KittiObject> parse_kitti_labels(const std::string& text);

// Fixed-point output, two decimals per numeric field (KITTI devkit layout).
std::string serialize_kitti_labels(const std::vector<KittiObject>& objects);

// Extracts fx, fy, cx, cy from the P2 row of a KITTI calib file.
CameraIntrinsics parse_kitti_calib(const std::string& text);

// Keeps Car, Pedestrian and Cyclist entries, preserving order.
std::vector<KittiObject> filter_categories(const std::vector<KittiObject>& objects);

struct CoarseMask {
  int id = 0;
  Bitmap bitmap;
};

// Stamps each instance's depth class wherever its coarse mask is set.
// Overlaps resolve nearer-instance-wins; untouched pixels stay background.
PixelDepthMap synthesize_pixel_labels(
    const std::vector<std::pair<CoarseMask, double>>& masks,
    const DepthBins& bins, int width, int height, int scale = 1);

}  // namespace depthseg
