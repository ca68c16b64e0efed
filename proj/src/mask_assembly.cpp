#include "depthseg/mask_assembly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_set>

namespace depthseg {

PixelDepthMap PixelDepthMap::background(int w, int h, int k, double scale) {
    if (w <= 0 || h <= 0)
        throw std::invalid_argument("PixelDepthMap: non-positive dimensions");
    if (k < 1) throw std::invalid_argument("PixelDepthMap: k must be >= 1");
    if (!(scale > 0.0)) throw std::invalid_argument("PixelDepthMap: scale must be positive");
    PixelDepthMap m;
    m.width = w;
    m.height = h;
    m.k = k;
    m.scale = scale;
    m.values.assign(static_cast<std::size_t>(w) * h, 0);
    return m;
}

bool PixelDepthMap::consistent() const {
    if (width <= 0 || height <= 0 || k < 1 || !(scale > 0.0)) return false;
    if (values.size() != static_cast<std::size_t>(width) * height) return false;
    for (std::uint16_t v : values)
        if (v > k) return false;
    return true;
}

BoxI scale_bbox(const Box2D& bbox, double scale) {
    if (!(scale > 0.0)) throw std::invalid_argument("scale_bbox: scale must be positive");
    return {static_cast<int>(std::floor(bbox.left / scale)),
            static_cast<int>(std::floor(bbox.top / scale)),
            static_cast<int>(std::ceil(bbox.right / scale)),
            static_cast<int>(std::ceil(bbox.bottom / scale))};
}

namespace {

void check_detection(const InstanceDetection& det) {
    if (!det.bbox.valid())
        throw std::invalid_argument("detection " + std::to_string(det.id) +
                                    ": bbox must have positive area");
    if (!(det.center_depth > 0.0))
        throw std::invalid_argument("detection " + std::to_string(det.id) +
                                    ": center depth must be positive");
}

InstanceMask match_one(const PixelDepthMap& map, const InstanceDetection& det,
                       double instance_index, double threshold) {
    BoxI box = scale_bbox(det.bbox, map.scale);
    box.left = std::max(box.left, 0);
    box.top = std::max(box.top, 0);
    box.right = std::min(box.right, map.width);
    box.bottom = std::min(box.bottom, map.height);

    InstanceMask mask{det.id, det.category, det.score, Bitmap::zeros(map.width, map.height)};
    for (int y = box.top; y < box.bottom; ++y) {
        for (int x = box.left; x < box.right; ++x) {
            const std::uint16_t v = map.at(x, y);
            if (v >= 1 && std::abs(static_cast<double>(v) - instance_index) < threshold)
                mask.bitmap.set(x, y);
        }
    }
    return mask;
}

}  // namespace

InstanceMask match_pixels(const PixelDepthMap& map, const InstanceDetection& det,
                          const DepthBins& bins) {
    if (map.k != bins.k())
        throw std::invalid_argument("depth-class count mismatch: map has k=" +
                                    std::to_string(map.k) + ", bins have k=" +
                                    std::to_string(bins.k()));
    check_detection(det);
    const double s = continuous_index(bins, det.center_depth);
    const double delta =
        depth_threshold(bins, det.center_depth, depth_margin(det.dims, det.theta));
    return match_one(map, det, s, delta);
}

std::vector<InstanceMask> assemble(const PixelDepthMap& map,
                                   const std::vector<InstanceDetection>& detections,
                                   const DepthBins& bins, int jobs) {
    if (map.k != bins.k())
        throw std::invalid_argument("depth-class count mismatch: map has k=" +
                                    std::to_string(map.k) + ", bins have k=" +
                                    std::to_string(bins.k()));
    std::unordered_set<int> ids;
    for (const auto& det : detections) {
        check_detection(det);
        if (!ids.insert(det.id).second)
            throw std::invalid_argument("duplicate detection id " + std::to_string(det.id));
    }

    const std::size_t n = detections.size();
    std::vector<double> index(n), threshold(n);
    for (std::size_t i = 0; i < n; ++i) {
        index[i] = continuous_index(bins, detections[i].center_depth);
        threshold[i] = depth_threshold(bins, detections[i].center_depth,
                                       depth_margin(detections[i].dims, detections[i].theta));
    }

    std::vector<InstanceMask> masks(n);
    const auto run = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i)
            masks[i] = match_one(map, detections[i], index[i], threshold[i]);
    };
    if (jobs <= 1 || n <= 1) {
        run(0, n);
    } else {
        const std::size_t workers = std::min<std::size_t>(jobs, n);
        std::vector<std::thread> pool;
        pool.reserve(workers);
        const std::size_t chunk = (n + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t begin = w * chunk;
            const std::size_t end = std::min(n, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(run, begin, end);
        }
        for (auto& t : pool) t.join();
    }

    // Deterministic single reduction: nearest index wins, then nearer
    // instance, then smaller id.
    std::vector<std::int32_t> owner(map.values.size(), -1);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& bm = masks[i].bitmap;
        for (std::size_t p = 0; p < bm.data.size(); ++p) {
            if (!bm.data[p]) continue;
            if (owner[p] < 0) {
                owner[p] = static_cast<std::int32_t>(i);
                continue;
            }
            const std::size_t j = static_cast<std::size_t>(owner[p]);
            const double v = static_cast<double>(map.values[p]);
            const double di = std::abs(v - index[i]);
            const double dj = std::abs(v - index[j]);
            bool take = di < dj;
            if (di == dj) {
                if (detections[i].center_depth != detections[j].center_depth)
                    take = detections[i].center_depth < detections[j].center_depth;
                else
                    take = detections[i].id < detections[j].id;
            }
            if (take) owner[p] = static_cast<std::int32_t>(i);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        auto& data = masks[i].bitmap.data;
        for (std::size_t p = 0; p < data.size(); ++p)
            if (data[p] && owner[p] != static_cast<std::int32_t>(i)) data[p] = 0;
    }
    return masks;
}

}  // namespace depthseg
