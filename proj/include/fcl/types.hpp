#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace fcl {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

/// Exact count held in vectors and histograms. Every producer certifies an
/// a-priori bound below 2^128 before filling one.
using Count = unsigned __int128;

/// Arbitrary-precision count for scalar reductions whose bound exceeds Count.
using BigCount = boost::multiprecision::cpp_int;

enum class Errc {
  composite_modulus,
  invalid_argument,
  window_out_of_range,
  table_too_large,
  missing_dlog,
  certification_failed,
  guard_exceeded,
  corrupt_cache,
  hypothesis_violated,
  engine_mismatch,
  io_error,
};

std::string_view to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

std::string to_string(Count value);
BigCount to_big(Count value);
/// Throws certification_failed if the value does not fit in 128 bits.
Count to_count(const BigCount& value);
bool fits_count(const BigCount& value);

/// Half-open index interval (start, start+length] of n for n! windows.
struct WindowSpec {
  u64 start = 0;
  u64 length = 1;

  friend bool operator==(const WindowSpec&, const WindowSpec&) = default;
};

}  // namespace fcl
