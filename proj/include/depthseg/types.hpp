#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace depthseg {

enum class Category { Car = 0, Pedestrian = 1, Cyclist = 2 };

inline constexpr int kNumCategories = 3;

const char* to_string(Category c);

/// Returns false if `name` is not one of the evaluated categories.
bool category_from_string(std::string_view name, Category& out);

/// Axis-aligned 2D box in full-image pixel coordinates.
struct Box2D {
    double left = 0.0;
    double top = 0.0;
    double right = 0.0;
    double bottom = 0.0;

    double width() const { return right - left; }
    double height() const { return bottom - top; }
    bool valid() const { return right > left && bottom > top; }
};

/// Integer pixel box at map resolution, half-open: x in [left,right), y in [top,bottom).
struct BoxI {
    int left = 0;
    int top = 0;
    int right = 0;
    int bottom = 0;
};

/// Dense binary mask, row-major.
struct Bitmap {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;

    static Bitmap zeros(int w, int h) {
        if (w <= 0 || h <= 0) throw std::invalid_argument("Bitmap: non-positive dimensions");
        Bitmap b;
        b.width = w;
        b.height = h;
        b.data.assign(static_cast<std::size_t>(w) * h, 0);
        return b;
    }

    bool test(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x] != 0; }
    void set(int x, int y, bool v = true) {
        data[static_cast<std::size_t>(y) * width + x] = v ? 1 : 0;
    }

    int count() const {
        int n = 0;
        for (std::uint8_t v : data) n += v != 0;
        return n;
    }

    bool same_shape(const Bitmap& o) const { return width == o.width && height == o.height; }

    friend bool operator==(const Bitmap& a, const Bitmap& b) {
        return a.width == b.width && a.height == b.height && a.data == b.data;
    }
};

}  // namespace depthseg
