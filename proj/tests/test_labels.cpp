#include <doctest.h>

#include <depthseg/labels.hpp>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

using namespace depthseg;

namespace {

const char* kCarLine =
    "Car 0.00 0 -1.58 587.01 173.33 614.12 200.12 1.65 1.67 3.64 -0.65 1.71 46.70 -1.59\n";

const char* kMixedLabels =
    "Car 0.00 0 -1.58 587.01 173.33 614.12 200.12 1.65 1.67 3.64 -0.65 1.71 46.70 -1.59\n"
    "Pedestrian 0.80 3 -2.31 102.50 158.70 134.20 220.10 1.78 0.62 0.88 -8.33 1.90 22.40 -2.65\n"
    "Truck 0.00 0 1.55 400.00 150.00 500.00 210.00 3.20 2.50 8.10 5.00 1.60 30.00 1.50\n"
    "Cyclist 0.00 1 0.42 700.10 160.00 740.70 215.30 1.72 0.58 1.80 9.11 1.75 18.20 0.35\n"
    "DontCare -1 -1 -10 590.00 170.00 610.00 190.00 -1 -1 -1 -1000 -1000 -1000 -10\n";

}  // namespace

TEST_SUITE("labels") {

TEST_CASE("a single KITTI line parses field by field") {
    auto objs = parse_kitti_labels(kCarLine);
    REQUIRE(objs.size() == 1);
    const KittiObject& o = objs[0];
    CHECK(o.type == "Car");
    CHECK(o.truncated == 0.0);
    CHECK(o.occluded == 0);
    CHECK(o.alpha == -1.58);
    CHECK(o.bbox.left == 587.01);
    CHECK(o.bbox.top == 173.33);
    CHECK(o.bbox.right == 614.12);
    CHECK(o.bbox.bottom == 200.12);
    // File order is h w l; the struct stores (w, l, h).
    CHECK(o.dims.h == 1.65);
    CHECK(o.dims.w == 1.67);
    CHECK(o.dims.l == 3.64);
    CHECK(o.location.x == -0.65);
    CHECK(o.location.y == 1.71);
    CHECK(o.location.z == 46.70);
    CHECK(o.rotation_y == -1.59);
    CHECK_FALSE(o.is_dont_care());
}

TEST_CASE("blank lines are skipped and empty input parses to nothing") {
    CHECK(parse_kitti_labels("").empty());
    CHECK(parse_kitti_labels("\n\n  \n").empty());
    auto objs = parse_kitti_labels(std::string("\n") + kCarLine + "\n");
    CHECK(objs.size() == 1);
}

TEST_CASE("malformed lines are rejected with their line number") {
    // 14 fields: rotation_y missing.
    CHECK_THROWS_WITH_AS(
        parse_kitti_labels("Car 0.00 0 -1.58 587.01 173.33 614.12 200.12 1.65 1.67 3.64 -0.65 "
                           "1.71 46.70\n"),
        doctest::Contains("line 1"), std::runtime_error);
    // 16 fields: trailing extra token.
    CHECK_THROWS_WITH_AS(parse_kitti_labels(std::string(kCarLine) +
                                            "Car 0.00 0 -1.58 587.01 173.33 614.12 200.12 1.65 "
                                            "1.67 3.64 -0.65 1.71 46.70 -1.59 0.99\n"),
                         doctest::Contains("line 2"), std::runtime_error);
    // Non-numeric field.
    CHECK_THROWS_AS(parse_kitti_labels("Car zero 0 -1.58 587.01 173.33 614.12 200.12 1.65 1.67 "
                                       "3.64 -0.65 1.71 46.70 -1.59\n"),
                    std::runtime_error);
    // Negative dims on a real object.
    CHECK_THROWS_AS(parse_kitti_labels("Car 0.00 0 -1.58 587.01 173.33 614.12 200.12 -1.65 1.67 "
                                       "3.64 -0.65 1.71 46.70 -1.59\n"),
                    std::runtime_error);
}

TEST_CASE("DontCare rows skip the dimension checks") {
    auto objs = parse_kitti_labels(kMixedLabels);
    REQUIRE(objs.size() == 5);
    CHECK(objs[4].is_dont_care());
    CHECK(objs[4].dims.w == -1.0);
}

TEST_CASE("serialization round trips through the parser") {
    auto objs = parse_kitti_labels(kMixedLabels);
    std::string text = serialize_kitti_labels(objs);
    auto again = parse_kitti_labels(text);
    REQUIRE(again.size() == objs.size());
    for (std::size_t i = 0; i < objs.size(); ++i) {
        CHECK(again[i].type == objs[i].type);
        CHECK(again[i].occluded == objs[i].occluded);
        CHECK(again[i].alpha == doctest::Approx(objs[i].alpha).epsilon(1e-12));
        CHECK(again[i].bbox.left == doctest::Approx(objs[i].bbox.left).epsilon(1e-12));
        CHECK(again[i].dims.w == doctest::Approx(objs[i].dims.w).epsilon(1e-12));
        CHECK(again[i].location.z == doctest::Approx(objs[i].location.z).epsilon(1e-12));
        CHECK(again[i].rotation_y == doctest::Approx(objs[i].rotation_y).epsilon(1e-12));
    }
    // Serializing twice is a fixed point (all inputs already have two decimals).
    CHECK(serialize_kitti_labels(again) == text);
}

TEST_CASE("calib parsing extracts the P2 intrinsics") {
    std::string calib =
        "P0: 7.215377000000e+02 0.000000000000e+00 6.095593000000e+02 0.000000000000e+00 "
        "0.000000000000e+00 7.215377000000e+02 1.728540000000e+02 0.000000000000e+00 "
        "0.000000000000e+00 0.000000000000e+00 1.000000000000e+00 0.000000000000e+00\n"
        "P1: 7.215377000000e+02 0.000000000000e+00 6.095593000000e+02 -3.875744000000e+02 "
        "0.000000000000e+00 7.215377000000e+02 1.728540000000e+02 0.000000000000e+00 "
        "0.000000000000e+00 0.000000000000e+00 1.000000000000e+00 0.000000000000e+00\n"
        "P2: 7.215377000000e+02 0.000000000000e+00 6.095593000000e+02 4.485728000000e+01 "
        "0.000000000000e+00 7.215377000000e+02 1.728540000000e+02 2.163791000000e-01 "
        "0.000000000000e+00 0.000000000000e+00 1.000000000000e+00 2.745884000000e-03\n"
        "R0_rect: 9.999239000000e-01 9.837760000000e-03 -7.445048000000e-03 -9.869795000000e-03 "
        "9.999421000000e-01 -4.278459000000e-03 7.402527000000e-03 4.351614000000e-03 "
        "9.999631000000e-01\n";
    CameraIntrinsics cam = parse_kitti_calib(calib);
    CHECK(cam.fx == 721.5377);
    CHECK(cam.fy == 721.5377);
    CHECK(cam.cx == 609.5593);
    CHECK(cam.cy == 172.854);
    CHECK(cam.valid());
}

TEST_CASE("calib parsing rejects missing or short P2 rows") {
    CHECK_THROWS_WITH_AS(parse_kitti_calib("P0: 1 0 0 0 0 1 0 0 0 0 1 0\n"),
                         doctest::Contains("P2"), std::runtime_error);
    // Only 11 numbers after P2.
    CHECK_THROWS_AS(parse_kitti_calib("P2: 721.5 0 609.6 44.9 0 721.5 172.9 0.2 0 0 1\n"),
                    std::runtime_error);
    // Non-numeric entry inside the row.
    CHECK_THROWS_AS(parse_kitti_calib("P2: 721.5 0 609.6 44.9 0 seven 172.9 0.2 0 0 1 0\n"),
                    std::runtime_error);
}

TEST_CASE("category filtering keeps only the evaluated types in order") {
    auto objs = parse_kitti_labels(kMixedLabels);
    auto kept = filter_categories(objs);
    REQUIRE(kept.size() == 3);
    CHECK(kept[0].type == "Car");
    CHECK(kept[1].type == "Pedestrian");
    CHECK(kept[2].type == "Cyclist");
}

TEST_CASE("label synthesis stamps each instance's depth class") {
    DepthBins bins(64, 2.0, 80.0, Scheme::Exponential);
    CoarseMask m;
    m.id = 1;
    m.bitmap = Bitmap::zeros(8, 4);
    for (int x = 2; x < 6; ++x) m.bitmap.set(x, 1);

    PixelDepthMap map = synthesize_pixel_labels({{m, 12.0}}, bins, 8, 4);
    int expect = class_of_depth(bins, 12.0);
    for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 8; ++x) {
            int want = (y == 1 && x >= 2 && x < 6) ? expect : 0;
            CHECK(map.at(x, y) == want);
        }
    CHECK(map.consistent());
    CHECK(map.k == 64);
}

TEST_CASE("overlapping instances resolve to the nearer depth") {
    DepthBins bins(64, 2.0, 80.0, Scheme::Exponential);
    CoarseMask near, far;
    near.id = 1;
    near.bitmap = Bitmap::zeros(6, 1);
    far.id = 2;
    far.bitmap = Bitmap::zeros(6, 1);
    for (int x = 0; x < 4; ++x) near.bitmap.set(x, 0);  // x in [0,4)
    for (int x = 2; x < 6; ++x) far.bitmap.set(x, 0);   // x in [2,6)

    PixelDepthMap map = synthesize_pixel_labels({{far, 20.0}, {near, 8.0}}, bins, 6, 1);
    int c_near = class_of_depth(bins, 8.0);
    int c_far = class_of_depth(bins, 20.0);
    CHECK(c_near == 25);
    CHECK(c_far == 40);
    CHECK(map.at(0, 0) == c_near);
    CHECK(map.at(2, 0) == c_near);  // overlap goes to the 8 m instance
    CHECK(map.at(3, 0) == c_near);
    CHECK(map.at(4, 0) == c_far);
    CHECK(map.at(5, 0) == c_far);
}

TEST_CASE("non-overlapping synthesis is an exact per-instance stamp") {
    DepthBins bins(32, 2.0, 80.0, Scheme::Exponential);
    std::vector<std::pair<CoarseMask, double>> inst;
    for (int i = 0; i < 3; ++i) {
        CoarseMask m;
        m.id = i + 1;
        m.bitmap = Bitmap::zeros(12, 3);
        for (int x = i * 4; x < i * 4 + 4; ++x) m.bitmap.set(x, i);
        inst.push_back({m, 5.0 + 10.0 * i});
    }
    PixelDepthMap map = synthesize_pixel_labels(inst, bins, 12, 3);
    for (int y = 0; y < 3; ++y)
        for (int x = 0; x < 12; ++x) {
            int want = 0;
            for (int i = 0; i < 3; ++i)
                if (inst[i].first.bitmap.test(x, y))
                    want = class_of_depth(bins, inst[i].second);
            CHECK(map.at(x, y) == want);
        }
}

TEST_CASE("synthesis validates resolution and depths") {
    DepthBins bins(64, 2.0, 80.0, Scheme::Exponential);
    CoarseMask m;
    m.id = 1;
    m.bitmap = Bitmap::zeros(8, 4);
    CHECK_THROWS_AS(synthesize_pixel_labels({{m, 12.0}}, bins, 9, 4), std::invalid_argument);
    CHECK_THROWS_AS(synthesize_pixel_labels({{m, 12.0}}, bins, 8, 3), std::invalid_argument);
    CHECK_THROWS_AS(synthesize_pixel_labels({{m, 0.0}}, bins, 8, 4), std::domain_error);

    PixelDepthMap empty = synthesize_pixel_labels({}, bins, 8, 4);
    for (auto v : empty.values) CHECK(v == 0);
}

}  // TEST_SUITE
