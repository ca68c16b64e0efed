#pragma once

#include <string_view>

namespace depthseg {

enum class Scheme { Linear, Exponential };

const char* to_string(Scheme s);
bool scheme_from_string(std::string_view name, Scheme& out);

/// Discretization of metric depth [d_min, d_max] into k classes 1..k.
/// Class 0 is reserved for background throughout the library.
///
/// Exponential class centers: c_i = d_min * (d_max/d_min)^((i-1)/(k-1)).
/// Linear class centers:      c_i = d_min + (i-1) * (d_max-d_min)/(k-1).
/// Both schemes pin c_1 = d_min and c_k = d_max.
class DepthBins {
public:
    DepthBins(int k, double d_min, double d_max, Scheme scheme);

    int k() const { return k_; }
    double d_min() const { return d_min_; }
    double d_max() const { return d_max_; }
    Scheme scheme() const { return scheme_; }

private:
    int k_;
    double d_min_;
    double d_max_;
    Scheme scheme_;
};

/// Depth of class i, i in [1, k]. Out-of-range i raises a domain error naming the index.
double depth_of_class(const DepthBins& bins, int i);

/// Real-valued inverse of depth_of_class. Requires d > 0. For the exponential
/// scheme d is clamped to [d_min, d_max] before evaluation; the linear scheme
/// extrapolates (callers that need a class use class_of_depth, which clamps).
double continuous_index(const DepthBins& bins, double d);

/// Nearest class for a metric depth: round-half-up of continuous_index,
/// clamped to [1, k]. Requires d > 0.
int class_of_depth(const DepthBins& bins, double d);

}  // namespace depthseg
