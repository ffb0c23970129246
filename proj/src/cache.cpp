#include "fcl/cache.hpp"

#include <cstdlib>
#include <system_error>

namespace fcl {

Cache::Cache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(*dir_, ec);
  if (ec) throw Error(Errc::io_error, "cannot create cache directory " + dir_->string() + ": " + ec.message());
}

Cache Cache::from_options(const std::optional<std::string>& dir) {
  if (dir && !dir->empty()) return Cache(*dir);
  if (const char* env = std::getenv(kCacheDirEnv); env != nullptr && *env != '\0') return Cache(env);
  return Cache();
}

std::filesystem::path Cache::dlog_path(u64 p) const {
  return *dir_ / ("dlog-" + std::to_string(p) + ".fcl");
}

std::filesystem::path Cache::window_path(u64 p, WindowSpec w) const {
  return *dir_ / ("window-" + std::to_string(p) + "-" + std::to_string(w.start) + "-" + std::to_string(w.length) +
                  ".fcw");
}

ContextPtr Cache::context(u64 p) const {
  if (!enabled()) return PrimeContext::make_with_dlog(p);
  const auto path = dlog_path(p);
  if (std::filesystem::exists(path)) {
    auto ctx = load_dlog_cache(path);
    if (ctx->p() != p) throw Error(Errc::corrupt_cache, path.string() + " holds a table for another prime");
    return ctx;
  }
  auto ctx = PrimeContext::make_with_dlog(p);
  save_dlog_cache(path, *ctx);
  return ctx;
}

ContextPtr Cache::plain_context(u64 p) const { return PrimeContext::make(p); }

FactorialWindow Cache::window(const ContextPtr& ctx, WindowSpec w) const {
  require_window(ctx->p(), w);
  if (!enabled()) return FactorialWindow::build(ctx, w);
  const auto path = window_path(ctx->p(), w);
  if (std::filesystem::exists(path)) {
    auto loaded = load_window_cache(path, ctx);
    if (loaded.spec() != w) throw Error(Errc::corrupt_cache, path.string() + " holds another window");
    return loaded;
  }
  auto built = FactorialWindow::build(ctx, w);
  save_window_cache(path, built);
  return built;
}

}  // namespace fcl
