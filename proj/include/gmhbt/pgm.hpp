#pragma once

#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "gmhbt/error.hpp"
#include "gmhbt/image.hpp"

namespace gmhbt {

namespace pgm_detail {

// Skips whitespace and '#' comments up to the next header token.
inline void skip_separators(std::istream& in) {
  for (;;) {
    const int c = in.peek();
    if (c == '#') {
      std::string ignored;
      std::getline(in, ignored);
    } else if (c != EOF && std::isspace(c)) {
      in.get();
    } else {
      return;
    }
  }
}

inline long read_header_int(std::istream& in, const char* field) {
  skip_separators(in);
  std::string digits;
  while (std::isdigit(in.peek())) digits.push_back(static_cast<char>(in.get()));
  if (digits.empty() || digits.size() > 9) {
    throw MalformedHeader(std::string("bad ") + field);
  }
  return std::stol(digits);
}

}  // namespace pgm_detail

/// Reads a binary (P5) PGM with maxval 255.
inline GrayImage read_pgm(std::istream& in) {
  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (!in || magic[0] != 'P' || magic[1] != '5') {
    throw MalformedHeader("expected magic P5");
  }
  const long width = pgm_detail::read_header_int(in, "width");
  const long height = pgm_detail::read_header_int(in, "height");
  const long maxval = pgm_detail::read_header_int(in, "maxval");
  if (width <= 0 || height <= 0) {
    throw MalformedHeader("nonpositive dimensions");
  }
  if (maxval != 255) {
    throw MalformedHeader("maxval must be 255, got " + std::to_string(maxval));
  }
  // Exactly one whitespace byte separates the header from the raster.
  if (!std::isspace(in.get())) {
    throw MalformedHeader("missing separator after maxval");
  }

  const auto count = static_cast<std::size_t>(width) * height;
  std::vector<std::uint8_t> data(count);
  in.read(reinterpret_cast<char*>(data.data()),
          static_cast<std::streamsize>(count));
  if (static_cast<std::size_t>(in.gcount()) != count) {
    throw TruncatedData("expected " + std::to_string(count) + " bytes, got " +
                        std::to_string(in.gcount()));
  }
  return GrayImage(static_cast<int>(width), static_cast<int>(height),
                   std::move(data));
}

inline GrayImage load_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open " + path.string());
  return read_pgm(in);
}

inline void write_pgm(const GrayImage& img, std::ostream& out) {
  out << "P5\n" << img.width() << ' ' << img.height() << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.pixels().data()),
            static_cast<std::streamsize>(img.size()));
}

inline std::string encode_pgm(const GrayImage& img) {
  std::ostringstream out(std::ios::binary);
  write_pgm(img, out);
  return std::move(out).str();
}

inline void save_pgm(const GrayImage& img, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoFailure("cannot open " + path.string() + " for writing");
  write_pgm(img, out);
  out.flush();
  if (!out) throw IoFailure("write failed: " + path.string());
}

}  // namespace gmhbt
