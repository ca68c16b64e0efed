#include <doctest.h>

#include <depthseg/diag.hpp>
#include <depthseg/geometry.hpp>
#include <depthseg/rng.hpp>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

using namespace depthseg;

namespace {

const double kPi = 3.14159265358979323846;

// The warn handler is a plain function pointer, so captured state lives here.
std::vector<std::string> g_warnings;

bool corner_sets_close(const CornerSet& a, const CornerSet& b, double tol) {
    // Corner order may legitimately differ after a yaw flip, so compare as sets.
    for (const auto& pa : a.points) {
        bool found = false;
        for (const auto& pb : b.points) {
            if (std::fabs(pa.x - pb.x) < tol && std::fabs(pa.y - pb.y) < tol &&
                std::fabs(pa.z - pb.z) < tol) {
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("locate_3d back-projects the principal point onto the optical axis") {
    CameraIntrinsics cam{721.5377, 721.5377, 609.5593, 172.854};
    Point3D p = locate_3d(cam, cam.cx, cam.cy, 25.0);
    CHECK(p.x == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(p.y == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(p.z == 25.0);
}

TEST_CASE("locate_3d worked example") {
    CameraIntrinsics cam{700.0, 700.0, 600.0, 180.0};
    Point3D p = locate_3d(cam, 1300.0, 180.0, 7.0);
    CHECK(p.x == 7.0);
    CHECK(p.y == 0.0);
    CHECK(p.z == 7.0);
}

TEST_CASE("project is the exact inverse of locate_3d") {
    CameraIntrinsics cam{721.5377, 721.5377, 609.5593, 172.854};
    Xoshiro256pp rng(11);
    for (int i = 0; i < 100; ++i) {
        double u = rng.uniform(0.0, 1248.0);
        double v = rng.uniform(0.0, 384.0);
        double d = rng.uniform(0.5, 90.0);
        PixelPoint q = project(cam, locate_3d(cam, u, v, d));
        CHECK(q.u == doctest::Approx(u).epsilon(1e-9));
        CHECK(q.v == doctest::Approx(v).epsilon(1e-9));
        CHECK(q.d == doctest::Approx(d).epsilon(1e-9));
    }
}

TEST_CASE("projection rejects non-positive depth and bad intrinsics") {
    CameraIntrinsics cam{700.0, 700.0, 600.0, 180.0};
    CHECK_THROWS_AS(locate_3d(cam, 10.0, 10.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(locate_3d(cam, 10.0, 10.0, -2.0), std::domain_error);
    CHECK_THROWS_AS(project(cam, Point3D{1.0, 1.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(project(cam, Point3D{1.0, 1.0, -3.0}), std::domain_error);

    CameraIntrinsics bad{0.0, 700.0, 600.0, 180.0};
    CHECK_THROWS_AS(locate_3d(bad, 10.0, 10.0, 5.0), std::invalid_argument);
    CHECK_THROWS_AS(project(bad, Point3D{0.0, 0.0, 5.0}), std::invalid_argument);
}

TEST_CASE("corners of an axis-aligned cuboid sit at the half extents") {
    CornerSet c = corners_from_dims(ObjectDims{1.0, 1.0, 1.0}, 0.0);
    double cx = 0.0, cy = 0.0, cz = 0.0;
    for (const auto& p : c.points) {
        CHECK(std::fabs(std::fabs(p.x) - 0.5) < 1e-12);
        CHECK(std::fabs(std::fabs(p.y) - 0.5) < 1e-12);
        CHECK(std::fabs(std::fabs(p.z) - 0.5) < 1e-12);
        cx += p.x;
        cy += p.y;
        cz += p.z;
    }
    CHECK(std::fabs(cx) < 1e-12);
    CHECK(std::fabs(cy) < 1e-12);
    CHECK(std::fabs(cz) < 1e-12);
}

TEST_CASE("corner round trip recovers dims and yaw inside (-pi/2, pi/2]") {
    ObjectDims dims{1.6, 3.9, 1.5};
    for (double theta : {0.0, kPi / 4.0, 0.3, -0.7, kPi / 2.0}) {
        CornerSet c = corners_from_dims(dims, theta);
        auto [rd, rt] = dims_from_corners(c);
        CHECK(rd.w == doctest::Approx(dims.w).epsilon(1e-6));
        CHECK(rd.l == doctest::Approx(dims.l).epsilon(1e-6));
        CHECK(rd.h == doctest::Approx(dims.h).epsilon(1e-6));
        CHECK(std::fabs(rt - theta) < 1e-6);
    }
}

TEST_CASE("yaw outside the principal range is recovered modulo pi") {
    ObjectDims dims{1.6, 3.9, 1.5};
    for (double theta : {-kPi / 2.0, 2.4, -3.0}) {
        CornerSet c = corners_from_dims(dims, theta);
        auto [rd, rt] = dims_from_corners(c);
        CHECK(rd.w == doctest::Approx(dims.w).epsilon(1e-6));
        CHECK(rd.l == doctest::Approx(dims.l).epsilon(1e-6));
        CHECK(rd.h == doctest::Approx(dims.h).epsilon(1e-6));
        CHECK(rt > -kPi / 2.0);
        CHECK(rt <= kPi / 2.0 + 1e-12);
        // Same physical cuboid even though the yaw label differs.
        CHECK(corner_sets_close(corners_from_dims(rd, rt), c, 1e-9));
    }
}

TEST_CASE("unit cube round trips with zero yaw") {
    auto [rd, rt] = dims_from_corners(corners_from_dims(ObjectDims{1.0, 1.0, 1.0}, 0.0));
    CHECK(rd.w == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(rd.l == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(rd.h == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::fabs(rt) < 1e-9);
}

TEST_CASE("dims_from_corners rejects degenerate and mangled corner sets") {
    // A paper-thin cuboid has well-separated footprint corners but no height.
    CHECK_THROWS_AS(dims_from_corners(corners_from_dims(ObjectDims{1.0, 1.0, 1e-9}, 0.0)),
                    std::domain_error);

    CornerSet c = corners_from_dims(ObjectDims{1.6, 3.9, 1.5}, 0.4);
    c.points[3].x += 0.25;  // break the parallelepiped structure
    CHECK_THROWS_AS(dims_from_corners(c), std::invalid_argument);
}

TEST_CASE("corners_from_dims validates dims") {
    CHECK_THROWS_AS(corners_from_dims(ObjectDims{0.0, 1.0, 1.0}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(corners_from_dims(ObjectDims{1.0, -2.0, 1.0}, 0.0), std::invalid_argument);
}

TEST_CASE("depth margin anchors") {
    ObjectDims car{1.6, 3.9, 1.5};
    CHECK(depth_margin(car, 0.0) == 0.8);            // w/2 exactly
    CHECK(depth_margin(car, kPi / 2.0) == 1.95);     // l/2 exactly
    CHECK(depth_margin(car, kPi / 4.0) == doctest::Approx(1.9445436482630057).epsilon(1e-12));
}

TEST_CASE("depth margin is symmetric and pi-periodic in yaw") {
    ObjectDims dims{1.1, 4.2, 1.7};
    Xoshiro256pp rng(21);
    for (int i = 0; i < 1000; ++i) {
        double theta = rng.uniform(-kPi, kPi);
        double m = depth_margin(dims, theta);
        CHECK(std::fabs(m - depth_margin(dims, -theta)) < 1e-12);
        CHECK(std::fabs(m - depth_margin(dims, theta + kPi)) < 1e-9);
        CHECK(m >= 0.5 * dims.w * std::fabs(std::cos(theta)) - 1e-12);
        CHECK(m <= 0.5 * (dims.w + dims.l) + 1e-12);
    }
}

TEST_CASE("depth margin validates dims") {
    CHECK_THROWS_AS(depth_margin(ObjectDims{0.0, 1.0, 1.0}, 0.0), std::invalid_argument);
}

TEST_CASE("depth threshold worked example") {
    DepthBins bins(80, 2.0, 80.0, Scheme::Exponential);
    CHECK(depth_threshold(bins, 8.0, 4.0) == doctest::Approx(14.844244152019499).epsilon(1e-12));
}

TEST_CASE("depth threshold equals the continuous-index difference") {
    DepthBins bins(64, 2.0, 80.0, Scheme::Exponential);
    Xoshiro256pp rng(31);
    for (int i = 0; i < 2000; ++i) {
        double c = rng.uniform(3.0, 80.0);
        double dd = rng.uniform(0.0, c - 2.5);
        double direct = depth_threshold(bins, c, dd);
        double via_index = continuous_index(bins, c) - continuous_index(bins, c - dd);
        CHECK(std::fabs(direct - via_index) < 1e-9);
    }
}

TEST_CASE("linear depth threshold is depth-independent") {
    DepthBins bins(80, 2.0, 80.0, Scheme::Linear);
    double expect = 4.0 * 79.0 / 78.0;
    CHECK(depth_threshold(bins, 8.0, 4.0) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(depth_threshold(bins, 60.0, 4.0) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("zero margin gives a zero threshold") {
    DepthBins bins(64, 2.0, 80.0, Scheme::Exponential);
    CHECK(depth_threshold(bins, 10.0, 0.0) == 0.0);
}

TEST_CASE("threshold grows with margin and shrinks with center depth") {
    DepthBins bins(64, 2.0, 80.0, Scheme::Exponential);
    double prev = 0.0;
    for (double dd : {0.5, 1.0, 2.0, 3.0}) {
        double t = depth_threshold(bins, 20.0, dd);
        CHECK(t > prev);
        prev = t;
    }
    prev = 1e300;
    for (double c : {6.0, 10.0, 20.0, 50.0}) {
        double t = depth_threshold(bins, c, 1.5);
        CHECK(t < prev);
        prev = t;
    }
}

TEST_CASE("threshold saturates with a warning when the footprint reaches the camera") {
    DepthBins bins(64, 2.0, 80.0, Scheme::Exponential);
    g_warnings.clear();
    set_warn_handler([](const std::string& msg) { g_warnings.push_back(msg); });
    double t = depth_threshold(bins, 5.0, 5.0);
    set_warn_handler(nullptr);
    CHECK(t == 63.0);
    REQUIRE(g_warnings.size() == 1);
    CHECK(g_warnings[0].find("saturat") != std::string::npos);

    // Negative inputs are still hard errors, not warnings.
    CHECK_THROWS_AS(depth_threshold(bins, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(depth_threshold(bins, 10.0, -1.0), std::domain_error);
}

}  // TEST_SUITE
