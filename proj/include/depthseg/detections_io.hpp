#pragma once

#include <string>
#include <vector>

#include "depthseg/mask_assembly.hpp"

namespace depthseg {

/// Flat text format, one detection per line, 12 whitespace-separated fields:
///   id category score left top right bottom depth_m w l h theta
/// Blank lines and lines starting with '#' are skipped.
std::vector<InstanceDetection> parse_detections(const std::string& text);

std::string serialize_detections(const std::vector<InstanceDetection>& detections);

std::vector<InstanceDetection> read_detections(const std::string& path);
void write_detections(const std::string& path, const std::vector<InstanceDetection>& detections);

}  // namespace depthseg
