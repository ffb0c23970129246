#pragma once

// On-disk cache of dlog tables and factorial windows, keyed by prime and
// window. Entries are written on first use and verified on every load.

#include <filesystem>
#include <optional>

#include "fcl/factorial.hpp"

namespace fcl {

/// Environment variable naming the default cache directory.
inline constexpr const char* kCacheDirEnv = "FCL_CACHE_DIR";

class Cache {
 public:
  /// A disabled cache builds everything in memory.
  Cache() = default;
  explicit Cache(std::filesystem::path dir);

  /// Directory from --cache-dir, else $FCL_CACHE_DIR, else disabled.
  static Cache from_options(const std::optional<std::string>& dir);

  bool enabled() const { return dir_.has_value(); }
  const std::optional<std::filesystem::path>& dir() const { return dir_; }

  std::filesystem::path dlog_path(u64 p) const;
  std::filesystem::path window_path(u64 p, WindowSpec w) const;

  /// Context with a dlog table; loaded from disk when present, written otherwise.
  ContextPtr context(u64 p) const;
  /// Context without a dlog table (never cached).
  ContextPtr plain_context(u64 p) const;
  FactorialWindow window(const ContextPtr& ctx, WindowSpec w) const;

 private:
  std::optional<std::filesystem::path> dir_;
};

}  // namespace fcl
