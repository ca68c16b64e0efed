#pragma once

#include <array>
#include <utility>

#include "depthseg/depth_bins.hpp"

namespace depthseg {

/// Pinhole parameters from a calibrated camera (KITTI P2 layout).
struct CameraIntrinsics {
    double fx = 0.0;
    double fy = 0.0;
    double cx = 0.0;
    double cy = 0.0;

    bool valid() const { return fx > 0.0 && fy > 0.0; }
};

/// Camera-frame point, z forward, y down (KITTI convention).
struct Point3D {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

/// Object extents in meters: width across the depth axis at yaw 0,
/// length along the image x axis at yaw 0, height vertical.
struct ObjectDims {
    double w = 0.0;
    double l = 0.0;
    double h = 0.0;

    bool valid() const { return w > 0.0 && l > 0.0 && h > 0.0; }
};

/// Eight cuboid corners in the object-centered frame (axes parallel to the
/// camera axes, centroid at the origin).
struct CornerSet {
    std::array<Point3D, 8> points;
};

struct PixelPoint {
    double u = 0.0;
    double v = 0.0;
    double d = 0.0;
};

/// Back-projects pixel (u, v) at metric depth d. Requires d > 0.
Point3D locate_3d(const CameraIntrinsics& cam, double u, double v, double d);

/// Pinhole projection, exact inverse of locate_3d. Requires p.z > 0.
PixelPoint project(const CameraIntrinsics& cam, const Point3D& p);

/// Corners at (+-l/2, +-h/2, +-w/2) rotated by theta about the vertical (y)
/// axis. Corner i carries sign bits: bit0 -> x, bit1 -> y, bit2 -> z.
CornerSet corners_from_dims(const ObjectDims& dims, double theta);

/// Recovers edge lengths and yaw from a cuboid corner set. By convention
/// l >= w and theta lies in (-pi/2, pi/2]; a cuboid determines yaw only up
/// to pi. Corner-set invariants are checked within 1e-3 m; edges shorter
/// than 1e-6 m raise a degenerate-geometry error.
std::pair<ObjectDims, double> dims_from_corners(const CornerSet& corners);

/// Half-extent of the object footprint along the camera depth axis:
/// 0.5*w*|cos(theta)| + 0.5*l*|sin(theta)|.
double depth_margin(const ObjectDims& dims, double theta);

/// Converts a metric depth margin at a given center depth into class-index
/// units: (k-1) * log_{d_max/d_min}(c / (c - delta_d)) for exponential bins,
/// delta_d * (k-1) / (d_max - d_min) for linear bins. When the object front
/// reaches the camera plane (c - delta_d <= d_min * 1e-9) the threshold
/// saturates at k-1 and a warning diagnostic is emitted.
double depth_threshold(const DepthBins& bins, double center_depth, double delta_d);

}  // namespace depthseg
