#include "depthseg/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "depthseg/diag.hpp"

namespace depthseg {

namespace {

constexpr double kCornerTol = 1e-3;   // invariant tolerance, meters
constexpr double kDegenerate = 1e-6;  // minimal edge length, meters

double norm3(const Point3D& p) { return std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z); }

}  // namespace

Point3D locate_3d(const CameraIntrinsics& cam, double u, double v, double d) {
    if (!cam.valid()) throw std::invalid_argument("locate_3d: focal lengths must be positive");
    if (!(d > 0.0))
        throw std::domain_error("locate_3d: depth must be positive, got " + std::to_string(d));
    return {(u - cam.cx) * d / cam.fx, (v - cam.cy) * d / cam.fy, d};
}

PixelPoint project(const CameraIntrinsics& cam, const Point3D& p) {
    if (!cam.valid()) throw std::invalid_argument("project: focal lengths must be positive");
    if (!(p.z > 0.0))
        throw std::domain_error("project: point behind camera plane, z = " + std::to_string(p.z));
    return {p.x / p.z * cam.fx + cam.cx, p.y / p.z * cam.fy + cam.cy, p.z};
}

CornerSet corners_from_dims(const ObjectDims& dims, double theta) {
    if (!dims.valid()) throw std::invalid_argument("corners_from_dims: dimensions must be positive");
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    CornerSet out;
    for (int i = 0; i < 8; ++i) {
        const double lx = (i & 1) ? -0.5 * dims.l : 0.5 * dims.l;
        const double hy = (i & 2) ? -0.5 * dims.h : 0.5 * dims.h;
        const double wz = (i & 4) ? -0.5 * dims.w : 0.5 * dims.w;
        // R_y(theta): x' = c*x + s*z, z' = -s*x + c*z
        out.points[i] = {c * lx + s * wz, hy, -s * lx + c * wz};
    }
    return out;
}

std::pair<ObjectDims, double> dims_from_corners(const CornerSet& corners) {
    // Centroid at origin.
    Point3D centroid{};
    for (const auto& p : corners.points) {
        centroid.x += p.x;
        centroid.y += p.y;
        centroid.z += p.z;
    }
    centroid = {centroid.x / 8.0, centroid.y / 8.0, centroid.z / 8.0};
    if (norm3(centroid) > kCornerTol)
        throw std::invalid_argument("dims_from_corners: centroid off origin by " +
                                    std::to_string(norm3(centroid)) + " m");

    // Every corner must have its point reflection present.
    for (const auto& p : corners.points) {
        bool paired = false;
        for (const auto& q : corners.points) {
            if (std::abs(p.x + q.x) <= kCornerTol && std::abs(p.y + q.y) <= kCornerTol &&
                std::abs(p.z + q.z) <= kCornerTol) {
                paired = true;
                break;
            }
        }
        if (!paired)
            throw std::invalid_argument("dims_from_corners: corners do not form a centered cuboid");
    }

    // Vertical axis is y: |y| identical on all corners, h is the full span.
    double ymag = 0.0;
    for (const auto& p : corners.points) ymag += std::abs(p.y);
    ymag /= 8.0;
    for (const auto& p : corners.points)
        if (std::abs(std::abs(p.y) - ymag) > kCornerTol)
            throw std::invalid_argument("dims_from_corners: top/bottom faces are not level");
    const double h = 2.0 * ymag;

    // Top face rectangle in the xz plane.
    std::array<Point3D, 4> top;
    int n_top = 0;
    for (const auto& p : corners.points)
        if (p.y > 0.0) {
            if (n_top == 4)
                throw std::invalid_argument("dims_from_corners: more than four top corners");
            top[n_top++] = p;
        }
    if (n_top != 4) throw std::invalid_argument("dims_from_corners: expected four top corners");

    const Point3D& r0 = top[0];
    double ex[2] = {0, 0}, ez[2] = {0, 0};
    int n_edges = 0;
    for (int i = 1; i < 4; ++i) {
        if (std::abs(top[i].x + r0.x) <= kCornerTol && std::abs(top[i].z + r0.z) <= kCornerTol)
            continue;  // diagonal partner
        if (n_edges == 2)
            throw std::invalid_argument("dims_from_corners: top face is not a rectangle");
        ex[n_edges] = top[i].x - r0.x;
        ez[n_edges] = top[i].z - r0.z;
        ++n_edges;
    }
    if (n_edges != 2) throw std::invalid_argument("dims_from_corners: top face is not a rectangle");

    const double len0 = std::hypot(ex[0], ez[0]);
    const double len1 = std::hypot(ex[1], ez[1]);
    if (len0 < kDegenerate || len1 < kDegenerate || h < kDegenerate)
        throw std::domain_error("dims_from_corners: degenerate cuboid edge");
    if (std::abs(ex[0] * ex[1] + ez[0] * ez[1]) > kCornerTol * (len0 + len1))
        throw std::invalid_argument("dims_from_corners: top face edges are not orthogonal");

    const int li = len0 >= len1 ? 0 : 1;  // l >= w convention
    const double l = li == 0 ? len0 : len1;
    const double w = li == 0 ? len1 : len0;

    // Yaw of the length axis; the rotated local x axis maps to (cos t, -sin t).
    double theta = std::atan2(-ez[li] / l, ex[li] / l);
    if (theta <= -1.5707963267948966) theta += 3.14159265358979323846;
    if (theta > 1.5707963267948966) theta -= 3.14159265358979323846;

    return {ObjectDims{w, l, h}, theta};
}

double depth_margin(const ObjectDims& dims, double theta) {
    if (!dims.valid()) throw std::invalid_argument("depth_margin: dimensions must be positive");
    return 0.5 * dims.w * std::abs(std::cos(theta)) + 0.5 * dims.l * std::abs(std::sin(theta));
}

double depth_threshold(const DepthBins& bins, double center_depth, double delta_d) {
    if (!(center_depth > 0.0))
        throw std::domain_error("depth_threshold: center depth must be positive, got " +
                                std::to_string(center_depth));
    if (delta_d < 0.0)
        throw std::domain_error("depth_threshold: depth margin must be nonnegative, got " +
                                std::to_string(delta_d));
    const double front = center_depth - delta_d;
    if (front <= bins.d_min() * 1e-9) {
        warn("depth_threshold saturated: object front reaches the camera plane (center " +
             std::to_string(center_depth) + " m, margin " + std::to_string(delta_d) + " m)");
        return static_cast<double>(bins.k() - 1);
    }
    if (bins.scheme() == Scheme::Linear)
        return delta_d * (bins.k() - 1) / (bins.d_max() - bins.d_min());
    return (bins.k() - 1) * std::log(center_depth / front) / std::log(bins.d_max() / bins.d_min());
}

}  // namespace depthseg
