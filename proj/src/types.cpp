#include "fcl/types.hpp"

#include <algorithm>

namespace fcl {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::composite_modulus: return "composite-modulus";
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::window_out_of_range: return "window-out-of-range";
    case Errc::table_too_large: return "table-too-large";
    case Errc::missing_dlog: return "missing-dlog";
    case Errc::certification_failed: return "certification-failed";
    case Errc::guard_exceeded: return "oracle-too-expensive";
    case Errc::corrupt_cache: return "corrupt-cache";
    case Errc::hypothesis_violated: return "hypothesis-violated";
    case Errc::engine_mismatch: return "engine-mismatch";
    case Errc::io_error: return "io-error";
  }
  return "unknown";
}

std::string to_string(Count value) {
  if (value == 0) return "0";
  std::string s;
  while (value > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

BigCount to_big(Count value) {
  BigCount hi = static_cast<u64>(value >> 64);
  return (hi << 64) | BigCount(static_cast<u64>(value));
}

bool fits_count(const BigCount& value) { return value >= 0 && boost::multiprecision::msb(value | 1) < 128; }

Count to_count(const BigCount& value) {
  if (!fits_count(value)) {
    throw Error(Errc::certification_failed, "value does not fit in 128 bits");
  }
  const u64 lo = static_cast<u64>(value & BigCount(~u64{0}));
  const u64 hi = static_cast<u64>(value >> 64);
  return (static_cast<Count>(hi) << 64) | lo;
}

}  // namespace fcl
