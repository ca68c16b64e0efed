#include <doctest.h>

#include <depthseg/depth_bins.hpp>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

using namespace depthseg;

TEST_SUITE("depth_bins") {

TEST_CASE("constructor validates its arguments") {
    CHECK_NOTHROW(DepthBins(2, 2.0, 80.0, Scheme::Exponential));
    CHECK_THROWS_AS(DepthBins(1, 2.0, 80.0, Scheme::Exponential), std::invalid_argument);
    CHECK_THROWS_AS(DepthBins(0, 2.0, 80.0, Scheme::Linear), std::invalid_argument);
    CHECK_THROWS_AS(DepthBins(64, 0.0, 80.0, Scheme::Exponential), std::invalid_argument);
    CHECK_THROWS_AS(DepthBins(64, -1.0, 80.0, Scheme::Exponential), std::invalid_argument);
    CHECK_THROWS_AS(DepthBins(64, 2.0, 2.0, Scheme::Exponential), std::invalid_argument);
    CHECK_THROWS_AS(DepthBins(64, 5.0, 2.0, Scheme::Linear), std::invalid_argument);
}

TEST_CASE("center depths hit the range endpoints exactly") {
    for (Scheme s : {Scheme::Exponential, Scheme::Linear}) {
        DepthBins bins(80, 2.0, 80.0, s);
        CHECK(depth_of_class(bins, 1) == 2.0);
        CHECK(depth_of_class(bins, 80) == 80.0);
    }
}

TEST_CASE("exponential centers match high-precision references") {
    DepthBins b80(80, 2.0, 80.0, Scheme::Exponential);
    CHECK(depth_of_class(b80, 41) == doctest::Approx(12.947908197323403).epsilon(1e-12));

    DepthBins b64(64, 2.0, 80.0, Scheme::Exponential);
    CHECK(depth_of_class(b64, 32) == doctest::Approx(12.284153354093126).epsilon(1e-12));
}

TEST_CASE("linear centers are evenly spaced") {
    DepthBins bins(80, 2.0, 80.0, Scheme::Linear);
    const double step = 78.0 / 79.0;
    for (int i = 1; i < 80; ++i) {
        double diff = depth_of_class(bins, i + 1) - depth_of_class(bins, i);
        CHECK(diff == doctest::Approx(step).epsilon(1e-12));
    }
}

TEST_CASE("exponential bins are denser near than linear, sparser far") {
    DepthBins e(80, 2.0, 80.0, Scheme::Exponential);
    DepthBins l(80, 2.0, 80.0, Scheme::Linear);
    double e_first = depth_of_class(e, 2) - depth_of_class(e, 1);
    double e_last = depth_of_class(e, 80) - depth_of_class(e, 79);
    double l_step = depth_of_class(l, 2) - depth_of_class(l, 1);
    CHECK(e_first == doctest::Approx(0.09560408357893208).epsilon(1e-12));
    CHECK(e_last == doctest::Approx(3.6497002206888895).epsilon(1e-12));
    CHECK(l_step == doctest::Approx(0.9873417721518987).epsilon(1e-12));
    CHECK(e_first < l_step);
    CHECK(e_last > l_step);
}

TEST_CASE("centers increase strictly with class index") {
    for (Scheme s : {Scheme::Exponential, Scheme::Linear}) {
        for (int k : {2, 7, 64, 80, 256}) {
            DepthBins bins(k, 2.0, 80.0, s);
            for (int i = 1; i < k; ++i)
                CHECK(depth_of_class(bins, i) < depth_of_class(bins, i + 1));
        }
    }
}

TEST_CASE("class index 0 is reserved for background") {
    DepthBins bins(64, 2.0, 80.0, Scheme::Exponential);
    CHECK_THROWS_AS(depth_of_class(bins, 0), std::domain_error);
    CHECK_THROWS_AS(depth_of_class(bins, -3), std::domain_error);
    CHECK_THROWS_AS(depth_of_class(bins, 65), std::domain_error);
}

TEST_CASE("continuous index matches references") {
    DepthBins b80(80, 2.0, 80.0, Scheme::Exponential);
    CHECK(continuous_index(b80, 12.95) == doctest::Approx(41.003459542352578).epsilon(1e-12));
    CHECK(continuous_index(b80, 2.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(continuous_index(b80, 80.0) == doctest::Approx(80.0).epsilon(1e-15));

    DepthBins b64(64, 2.0, 80.0, Scheme::Exponential);
    CHECK(continuous_index(b64, 30.0) == doctest::Approx(47.24904792678264).epsilon(1e-12));
    CHECK(continuous_index(b64, 46.70) == doctest::Approx(54.807019846604216).epsilon(1e-12));
}

TEST_CASE("continuous index requires a positive depth") {
    DepthBins bins(64, 2.0, 80.0, Scheme::Exponential);
    CHECK_THROWS_AS(continuous_index(bins, 0.0), std::domain_error);
    CHECK_THROWS_AS(continuous_index(bins, -4.2), std::domain_error);
}

TEST_CASE("exponential index clamps outside the range, linear extrapolates") {
    DepthBins e(80, 2.0, 80.0, Scheme::Exponential);
    CHECK(continuous_index(e, 0.5) == 1.0);
    CHECK(continuous_index(e, 500.0) == 80.0);

    DepthBins l(80, 2.0, 80.0, Scheme::Linear);
    CHECK(continuous_index(l, 1.0) < 1.0);
    CHECK(continuous_index(l, 90.0) > 80.0);
    // class_of_depth still clamps to valid classes
    CHECK(class_of_depth(l, 1.0) == 1);
    CHECK(class_of_depth(l, 500.0) == 80);
}

TEST_CASE("class assignment rounds to the nearest center index") {
    DepthBins b80(80, 2.0, 80.0, Scheme::Exponential);
    int c = class_of_depth(b80, 12.0);
    CHECK(c == 39);
    CHECK(std::fabs(continuous_index(b80, 12.0) - c) <= 0.5);

    DepthBins b64(64, 2.0, 80.0, Scheme::Exponential);
    CHECK(class_of_depth(b64, 8.0) == 25);
    CHECK(class_of_depth(b64, 20.0) == 40);
    CHECK(class_of_depth(b64, 2.0) == 1);
    CHECK(class_of_depth(b64, 80.0) == 64);
    CHECK(class_of_depth(b64, 0.5) == 1);
    CHECK(class_of_depth(b64, 200.0) == 64);
}

TEST_CASE("half-way points round up") {
    DepthBins lin(5, 1.0, 9.0, Scheme::Linear);  // centers 1,3,5,7,9
    CHECK(class_of_depth(lin, 4.0) == 3);  // index 2.5 rounds up
    CHECK(class_of_depth(lin, 3.9999) == 2);
}

TEST_CASE("depth-to-class round trip is exact for every center") {
    for (Scheme s : {Scheme::Exponential, Scheme::Linear}) {
        for (int k : {2, 32, 64, 80, 96}) {
            DepthBins bins(k, 2.0, 80.0, s);
            for (int i = 1; i <= k; ++i) {
                double d = depth_of_class(bins, i);
                CHECK(class_of_depth(bins, d) == i);
                CHECK(std::fabs(continuous_index(bins, d) - i) < 1e-9);
            }
        }
    }
}

TEST_CASE("scheme names round trip") {
    CHECK(to_string(Scheme::Exponential) == std::string("exponential"));
    CHECK(to_string(Scheme::Linear) == std::string("linear"));
    Scheme s = Scheme::Linear;
    CHECK(scheme_from_string("exponential", s));
    CHECK(s == Scheme::Exponential);
    CHECK(scheme_from_string("linear", s));
    CHECK(s == Scheme::Linear);
    CHECK_FALSE(scheme_from_string("log", s));
}

}  // TEST_SUITE
