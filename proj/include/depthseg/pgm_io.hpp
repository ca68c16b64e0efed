#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace depthseg {

/// 16-bit grayscale image. On disk this is a binary PGM (P5) whose samples
/// are always two bytes, big-endian, regardless of maxval. (Stock netpbm
/// would switch to one byte for maxval <= 255; keeping a fixed sample width
/// makes every map in this project bit-identical to read and write.)
struct Pgm16 {
  int width = 0;
  int height = 0;
  std::uint16_t maxval = 0;
  std::vector<std::uint16_t> samples;  // row-major
};

std::string encode_pgm16(const Pgm16& img);
Pgm16 decode_pgm16(const std::string& bytes);

void write_pgm16(const std::string& path, const Pgm16& img);
Pgm16 read_pgm16(const std::string& path);

/// Binary PPM (P6, 8-bit) holding one fixed color per distinct sample value
/// of `img` (value 0 stays black). For eyeballing instance-id maps.
std::string encode_colorized_ppm(const Pgm16& img);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace depthseg
