#include <gtest/gtest.h>

#include <fstream>

#include "fcl/cache.hpp"

namespace fcl {
namespace {

namespace fs = std::filesystem;

class CacheTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() / ("fcl-cache-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                       "-" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir);
  }
  void TearDown() override { fs::remove_all(dir); }

  Errc load_error(const fs::path& path) {
    try {
      load_dlog_cache(path);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::io_error;
  }

  fs::path dir;
};

void truncate_file(const fs::path& path, std::uintmax_t size) { fs::resize_file(path, size); }

TEST_F(CacheTest, DlogRoundTrip10007) {
  fs::create_directories(dir);
  const auto ctx = PrimeContext::make_with_dlog(10007);
  const auto path = dir / "t.fcl";
  save_dlog_cache(path, *ctx);
  EXPECT_EQ(fs::file_size(path), 4 + 8 + 8 + 4u * 10006);
  const auto back = load_dlog_cache(path);
  EXPECT_EQ(back->p(), 10007u);
  EXPECT_EQ(back->generator(), ctx->generator());
  const auto a = ctx->dlog().indices(), b = back->dlog().indices();
  EXPECT_TRUE(std::equal(a.begin(), a.end(), b.begin(), b.end()));
}

TEST_F(CacheTest, TruncatedDlogRejected) {
  fs::create_directories(dir);
  const auto path = dir / "t.fcl";
  save_dlog_cache(path, *PrimeContext::make_with_dlog(10007));
  truncate_file(path, fs::file_size(path) - 3);
  EXPECT_EQ(load_error(path), Errc::corrupt_cache);
  truncate_file(path, 10);
  EXPECT_EQ(load_error(path), Errc::corrupt_cache);
}

TEST_F(CacheTest, BadMagicAndCorruptEntries) {
  fs::create_directories(dir);
  const auto path = dir / "t.fcl";
  save_dlog_cache(path, *PrimeContext::make_with_dlog(101));
  {
    std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(0);
    f.write("XXXX", 4);
  }
  EXPECT_EQ(load_error(path), Errc::corrupt_cache);
  save_dlog_cache(path, *PrimeContext::make_with_dlog(101));
  {
    // swap two entries: still a permutation but no longer a dlog table
    std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
    u32 x = 0, y = 0;
    f.seekg(20);
    f.read(reinterpret_cast<char*>(&x), 4);
    f.read(reinterpret_cast<char*>(&y), 4);
    f.seekp(20);
    f.write(reinterpret_cast<char*>(&y), 4);
    f.write(reinterpret_cast<char*>(&x), 4);
  }
  EXPECT_EQ(load_error(path), Errc::corrupt_cache);
}

TEST_F(CacheTest, WindowRoundTrip) {
  fs::create_directories(dir);
  const auto ctx = PrimeContext::make(7);
  const auto path = dir / "w.fcw";
  save_window_cache(path, FactorialWindow::build(ctx, 0, 6));
  const auto back = load_window_cache(path, ctx);
  EXPECT_EQ(std::vector<u64>(back.values().begin(), back.values().end()), (std::vector<u64>{1, 2, 6, 3, 1, 6}));
  truncate_file(path, fs::file_size(path) - 8);
  EXPECT_THROW(load_window_cache(path, ctx), Error);
}

TEST_F(CacheTest, CacheWritesThenReuses) {
  const Cache cache(dir);
  const auto ctx = cache.context(1009);
  EXPECT_TRUE(fs::exists(cache.dlog_path(1009)));
  const auto again = cache.context(1009);
  EXPECT_EQ(again->dlog().index(5), ctx->dlog().index(5));
  const auto w = cache.window(ctx, {10, 50});
  EXPECT_TRUE(fs::exists(cache.window_path(1009, {10, 50})));
  const auto w2 = cache.window(ctx, {10, 50});
  EXPECT_TRUE(std::equal(w.values().begin(), w.values().end(), w2.values().begin()));
}

TEST_F(CacheTest, DisabledCacheBuildsInMemory) {
  const Cache cache;
  EXPECT_FALSE(cache.enabled());
  EXPECT_TRUE(cache.context(101)->has_dlog());
}

}  // namespace
}  // namespace fcl
