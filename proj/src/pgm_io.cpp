#include "depthseg/pgm_io.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace depthseg {
namespace {

void check_image(const Pgm16& img, const char* where) {
  if (img.width <= 0 || img.height <= 0) {
    throw std::invalid_argument(std::string(where) + ": non-positive dimensions");
  }
  if (img.maxval == 0) {
    throw std::invalid_argument(std::string(where) + ": maxval must be >= 1");
  }
  if (img.samples.size() != static_cast<size_t>(img.width) * img.height) {
    throw std::invalid_argument(std::string(where) + ": sample count does not match dimensions");
  }
  for (std::uint16_t s : img.samples) {
    if (s > img.maxval) {
      throw std::invalid_argument(std::string(where) + ": sample exceeds maxval");
    }
  }
}

// Reads one whitespace-delimited token, skipping '#' comments to end of line.
std::string next_token(const std::string& bytes, size_t& pos) {
  while (pos < bytes.size()) {
    const char c = bytes[pos];
    if (c == '#') {
      while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
    } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      ++pos;
    } else {
      break;
    }
  }
  const size_t start = pos;
  while (pos < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
  if (start == pos) throw std::runtime_error("pgm: truncated header");
  return bytes.substr(start, pos - start);
}

int parse_header_int(const std::string& token, const char* field) {
  size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(token, &used);
  } catch (const std::exception&) {
    throw std::runtime_error(std::string("pgm: bad ") + field + " '" + token + "'");
  }
  if (used != token.size() || value <= 0) {
    throw std::runtime_error(std::string("pgm: bad ") + field + " '" + token + "'");
  }
  return value;
}

}  // namespace

std::string encode_pgm16(const Pgm16& img) {
  check_image(img, "encode_pgm16");
  std::string out = "P5\n" + std::to_string(img.width) + " " + std::to_string(img.height) +
                    "\n" + std::to_string(img.maxval) + "\n";
  out.reserve(out.size() + img.samples.size() * 2);
  for (std::uint16_t s : img.samples) {
    out.push_back(static_cast<char>(s >> 8));
    out.push_back(static_cast<char>(s & 0xff));
  }
  return out;
}

Pgm16 decode_pgm16(const std::string& bytes) {
  size_t pos = 0;
  if (next_token(bytes, pos) != "P5") throw std::runtime_error("pgm: not a P5 file");
  Pgm16 img;
  img.width = parse_header_int(next_token(bytes, pos), "width");
  img.height = parse_header_int(next_token(bytes, pos), "height");
  const int maxval = parse_header_int(next_token(bytes, pos), "maxval");
  if (maxval > 65535) throw std::runtime_error("pgm: maxval exceeds 65535");
  img.maxval = static_cast<std::uint16_t>(maxval);
  if (pos >= bytes.size()) throw std::runtime_error("pgm: truncated header");
  ++pos;  // the single whitespace byte after maxval

  const size_t count = static_cast<size_t>(img.width) * img.height;
  if (bytes.size() - pos != count * 2) {
    throw std::runtime_error("pgm: expected " + std::to_string(count * 2) +
                             " sample bytes, found " + std::to_string(bytes.size() - pos));
  }
  img.samples.resize(count);
  for (size_t i = 0; i < count; ++i) {
    const auto hi = static_cast<unsigned char>(bytes[pos + 2 * i]);
    const auto lo = static_cast<unsigned char>(bytes[pos + 2 * i + 1]);
    img.samples[i] = static_cast<std::uint16_t>((hi << 8) | lo);
    if (img.samples[i] > img.maxval) {
      throw std::runtime_error("pgm: sample " + std::to_string(i) + " exceeds maxval");
    }
  }
  return img;
}

void write_pgm16(const std::string& path, const Pgm16& img) {
  write_text_file(path, encode_pgm16(img));
}

Pgm16 read_pgm16(const std::string& path) {
  return decode_pgm16(read_text_file(path));
}

std::string encode_colorized_ppm(const Pgm16& img) {
  check_image(img, "encode_colorized_ppm");
  std::string out = "P6\n" + std::to_string(img.width) + " " + std::to_string(img.height) +
                    "\n255\n";
  out.reserve(out.size() + img.samples.size() * 3);
  for (std::uint16_t s : img.samples) {
    if (s == 0) {
      out.append(3, '\0');
      continue;
    }
    // Golden-angle hue walk gives well-separated colors for small ids.
    const double hue = std::fmod(0.61803398875 * s, 1.0) * 6.0;
    const int sector = static_cast<int>(hue);
    const double f = hue - sector;
    const auto q = static_cast<unsigned char>(255 * (1.0 - f));
    const auto t = static_cast<unsigned char>(255 * f);
    unsigned char rgb[3] = {0, 0, 0};
    switch (sector % 6) {
      case 0: rgb[0] = 255; rgb[1] = t; break;
      case 1: rgb[0] = q; rgb[1] = 255; break;
      case 2: rgb[1] = 255; rgb[2] = t; break;
      case 3: rgb[1] = q; rgb[2] = 255; break;
      case 4: rgb[0] = t; rgb[2] = 255; break;
      default: rgb[0] = 255; rgb[2] = q; break;
    }
    out.append(reinterpret_cast<const char*>(rgb), 3);
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (!in.good() && !in.eof()) throw std::runtime_error("read failed for " + path);
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out.good()) throw std::runtime_error("write failed for " + path);
}

}  // namespace depthseg
