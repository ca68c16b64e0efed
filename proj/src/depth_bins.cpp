#include "depthseg/depth_bins.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace depthseg {

const char* to_string(Scheme s) {
    return s == Scheme::Linear ? "linear" : "exponential";
}

bool scheme_from_string(std::string_view name, Scheme& out) {
    if (name == "linear") {
        out = Scheme::Linear;
        return true;
    }
    if (name == "exponential") {
        out = Scheme::Exponential;
        return true;
    }
    return false;
}

DepthBins::DepthBins(int k, double d_min, double d_max, Scheme scheme)
    : k_(k), d_min_(d_min), d_max_(d_max), scheme_(scheme) {
    if (k < 2) throw std::invalid_argument("DepthBins: k must be >= 2, got " + std::to_string(k));
    if (!(d_min > 0.0) || !(d_max > d_min))
        throw std::invalid_argument("DepthBins: require 0 < d_min < d_max, got [" +
                                    std::to_string(d_min) + ", " + std::to_string(d_max) + "]");
}

double depth_of_class(const DepthBins& bins, int i) {
    if (i < 1 || i > bins.k())
        throw std::domain_error("depth class index " + std::to_string(i) + " outside [1, " +
                                std::to_string(bins.k()) + "]");
    const double t = static_cast<double>(i - 1) / static_cast<double>(bins.k() - 1);
    if (bins.scheme() == Scheme::Linear) return bins.d_min() + t * (bins.d_max() - bins.d_min());
    return bins.d_min() * std::pow(bins.d_max() / bins.d_min(), t);
}

double continuous_index(const DepthBins& bins, double d) {
    if (!(d > 0.0)) throw std::domain_error("continuous_index: depth must be positive, got " +
                                            std::to_string(d));
    if (bins.scheme() == Scheme::Linear)
        return 1.0 + (d - bins.d_min()) * (bins.k() - 1) / (bins.d_max() - bins.d_min());
    const double clamped = std::clamp(d, bins.d_min(), bins.d_max());
    return 1.0 + (bins.k() - 1) * std::log(clamped / bins.d_min()) /
                     std::log(bins.d_max() / bins.d_min());
}

int class_of_depth(const DepthBins& bins, double d) {
    const double idx = continuous_index(bins, d);  // validates d
    const int rounded = static_cast<int>(std::floor(idx + 0.5));
    return std::clamp(rounded, 1, bins.k());
}

}  // namespace depthseg
