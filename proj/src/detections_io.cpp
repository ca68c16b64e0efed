#include "depthseg/detections_io.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "depthseg/pgm_io.hpp"

namespace depthseg {

std::vector<InstanceDetection> parse_detections(const std::string& text) {
  std::vector<InstanceDetection> out;
  std::istringstream stream(text);
  std::string line;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string first;
    if (!(fields >> first) || first[0] == '#') continue;

    const auto fail = [line_no](const std::string& what) {
      return std::runtime_error("detections line " + std::to_string(line_no) + ": " + what);
    };

    InstanceDetection det;
    try {
      size_t used = 0;
      det.id = std::stoi(first, &used);
      if (used != first.size()) throw std::invalid_argument(first);
    } catch (const std::exception&) {
      throw fail("bad id '" + first + "'");
    }

    std::string category;
    if (!(fields >> category)) throw fail("missing category");
    if (!category_from_string(category, det.category)) {
      throw fail("unknown category '" + category + "'");
    }
    if (!(fields >> det.score
                 >> det.bbox.left >> det.bbox.top >> det.bbox.right >> det.bbox.bottom
                 >> det.center_depth
                 >> det.dims.w >> det.dims.l >> det.dims.h
                 >> det.theta)) {
      throw fail("expected 12 whitespace-separated fields");
    }
    std::string extra;
    if (fields >> extra) throw fail("trailing junk '" + extra + "'");
    if (det.center_depth <= 0.0) throw fail("non-positive depth");
    if (!det.dims.valid()) throw fail("non-positive dimensions");
    out.push_back(det);
  }
  return out;
}

std::string serialize_detections(const std::vector<InstanceDetection>& detections) {
  std::string out = "# id category score left top right bottom depth_m w l h theta\n";
  char buf[512];
  for (const InstanceDetection& d : detections) {
    std::snprintf(buf, sizeof(buf),
                  "%d %s %.17g %.17g %.17g %.17g %.17g %.17g %.17g %.17g %.17g %.17g\n",
                  d.id, to_string(d.category), d.score,
                  d.bbox.left, d.bbox.top, d.bbox.right, d.bbox.bottom,
                  d.center_depth, d.dims.w, d.dims.l, d.dims.h, d.theta);
    out += buf;
  }
  return out;
}

std::vector<InstanceDetection> read_detections(const std::string& path) {
  try {
    return parse_detections(read_text_file(path));
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void write_detections(const std::string& path, const std::vector<InstanceDetection>& detections) {
  write_text_file(path, serialize_detections(detections));
}

}  // namespace depthseg
