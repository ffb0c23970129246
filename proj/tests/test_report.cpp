#include <gtest/gtest.h>

#include <sstream>

#include "fcl/report.hpp"

namespace fcl {
namespace {

TEST(Report, ComplexFormatting) {
  EXPECT_EQ(format_complex({6, 0}), "6+0i");
  EXPECT_EQ(format_complex({6, -0.0}), "6+0i");
  EXPECT_EQ(format_complex({-1.5, -2}), "-1.5-2i");
  EXPECT_EQ(format_double(0.1), "0.1");
}

TEST(Report, CountJsonWidth) {
  EXPECT_TRUE(count_json(BigCount(10)).is_number_unsigned());
  const BigCount big = BigCount(1) << 70;
  EXPECT_EQ(count_json(big), Json(big.str()));
}

TEST(Report, CountRecordFields) {
  CountQuery q;
  q.family = Family::J;
  q.ctx = PrimeContext::make(7);
  q.n_window = {0, 6};
  CountResult r;
  r.count = 10;
  const auto j = count_record(q, r);
  for (const char* key : {"family", "p", "params", "lambda", "count", "engine", "seconds"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["count"], 10);
  EXPECT_EQ(j["family"], "J");
}

TEST(Report, BoundTable) {
  BoundReport r;
  r.theorem = Theorem::T2_1;
  r.params.p = 7;
  r.params.n_window = {0, 6};
  r.lhs = 10;
  r.lhs_exact = "10";
  r.rhs = 4;
  r.ratio = 2.5;
  std::ostringstream out;
  write_bound_header(out, ',');
  write_bound_row(out, r, ',');
  EXPECT_EQ(out.str(), "theorem,p,K,M,L,N,S,T,ell,k,r,s,lhs,rhs,ratio\nT2.1,7,0,1,0,6,0,1,1,1,1,1,10,4,2.5\n");
  const std::vector<BoundReport> rs{r, r};
  const auto series = ratio_series(rs);
  EXPECT_EQ(series["T2.1"].size(), 2u);
  EXPECT_EQ(bound_json(r)["lhs"], 10);
}

}  // namespace
}  // namespace fcl
