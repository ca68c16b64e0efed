#include "depthseg/types.hpp"

namespace depthseg {

const char* to_string(Category c) {
    switch (c) {
        case Category::Car: return "Car";
        case Category::Pedestrian: return "Pedestrian";
        case Category::Cyclist: return "Cyclist";
    }
    return "Car";
}

bool category_from_string(std::string_view name, Category& out) {
    if (name == "Car") {
        out = Category::Car;
        return true;
    }
    if (name == "Pedestrian") {
        out = Category::Pedestrian;
        return true;
    }
    if (name == "Cyclist") {
        out = Category::Cyclist;
        return true;
    }
    return false;
}

}  // namespace depthseg
