#pragma once

// Little-endian fixed-width I/O for the cache formats.

#include <array>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>

#include "fcl/types.hpp"

namespace fcl::detail {

template <typename T>
void write_le(std::ostream& out, T value) {
  std::array<char, sizeof(T)> buf{};
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    buf[i] = static_cast<char>((value >> (8 * i)) & 0xff);
  }
  out.write(buf.data(), buf.size());
}

template <typename T>
bool read_le(std::istream& in, T& value) {
  std::array<unsigned char, sizeof(T)> buf{};
  if (!in.read(reinterpret_cast<char*>(buf.data()), buf.size())) return false;
  value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    value |= static_cast<T>(buf[i]) << (8 * i);
  }
  return true;
}

inline bool read_magic(std::istream& in, const char (&magic)[5]) {
  char buf[4];
  if (!in.read(buf, 4)) return false;
  return std::memcmp(buf, magic, 4) == 0;
}

}  // namespace fcl::detail
