// Enumeration oracle for every counting family. Factorials are recomputed
// here from scratch and no transform or dlog table is used.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "fcl/counting.hpp"
#include "fcl/kernels.hpp"

namespace fcl {

namespace {

using kernels::ChainOp;
using Stages = std::vector<std::vector<u64>>;

std::vector<u64> naive_factorials(u64 p, WindowSpec w) {
  std::vector<u64> out;
  out.reserve(w.length);
  u64 f = 1;
  for (u64 n = 1; n <= w.start + w.length; ++n) {
    f = mul_mod(f, n, p);
    if (n > w.start) out.push_back(f);
  }
  return out;
}

std::vector<u64> negated(const std::vector<u64>& xs, u64 p) {
  std::vector<u64> out(xs.size());
  std::transform(xs.begin(), xs.end(), out.begin(), [p](u64 x) { return x == 0 ? 0 : p - x; });
  return out;
}

std::vector<u64> inverted(const std::vector<u64>& xs, u64 p) {
  std::vector<u64> out(xs.size());
  std::transform(xs.begin(), xs.end(), out.begin(), [p](u64 x) { return inv_mod(x, p); });
  return out;
}

std::vector<u64> pair_products(const std::vector<u64>& ms, const std::vector<u64>& ns, u64 p) {
  std::vector<u64> out;
  out.reserve(ms.size() * ns.size());
  for (u64 m : ms) {
    for (u64 n : ns) out.push_back(mul_mod(m, n, p));
  }
  return out;
}

// Every ordered k-tuple sum, listed with multiplicity.
std::vector<u64> tuple_sums(const std::vector<u64>& xs, unsigned k, u64 p) {
  std::vector<u64> sums{0};
  for (unsigned i = 0; i < k; ++i) {
    std::vector<u64> next;
    next.reserve(sums.size() * xs.size());
    for (u64 s : sums) {
      for (u64 x : xs) next.push_back(add_mod(s, x, p));
    }
    sums = std::move(next);
  }
  return sums;
}

struct Chain {
  Stages stages;
  ChainOp op = ChainOp::add;
};

// Sizes only, so the guard can be checked before anything is listed.
std::vector<double> stage_sizes(const CountQuery& q) {
  const double M = static_cast<double>(q.m_window.length);
  const double N = static_cast<double>(q.n_window.length);
  const double T = static_cast<double>(q.t_window.length);
  std::vector<double> s;
  switch (q.family) {
    case Family::J:
    case Family::I:
      s.assign(2 * q.ell, N);
      break;
    case Family::SIGNED:
      s.assign(q.signs.size(), N);
      break;
    case Family::F:
      s.assign(2 * q.ell, M * N);
      break;
    case Family::T:
      s.assign(q.r, M * N);
      break;
    case Family::Q:
      s.push_back(M * N);
      s.insert(s.end(), q.r, N);
      break;
    case Family::R:
      if (q.k > 0) s.push_back(std::pow(M, q.k));
      s.push_back(std::pow(N, q.ell));
      s.insert(s.end(), q.r, T);
      break;
  }
  return s;
}

Chain build_chain(const CountQuery& q) {
  const u64 p = q.ctx->p();
  const auto ns = naive_factorials(p, q.n_window);
  Chain c;
  switch (q.family) {
    case Family::J:
      c.stages.assign(q.ell, ns);
      c.stages.insert(c.stages.end(), q.ell, negated(ns, p));
      break;
    case Family::SIGNED: {
      const auto neg = negated(ns, p);
      for (int s : q.signs) c.stages.push_back(s > 0 ? ns : neg);
      break;
    }
    case Family::F: {
      const auto prods = pair_products(naive_factorials(p, q.m_window), ns, p);
      c.stages.assign(q.ell, prods);
      c.stages.insert(c.stages.end(), q.ell, negated(prods, p));
      break;
    }
    case Family::I:
      c.op = ChainOp::multiply;
      c.stages.assign(q.ell, ns);
      c.stages.insert(c.stages.end(), q.ell, inverted(ns, p));
      break;
    case Family::T:
      c.stages.assign(q.r, pair_products(naive_factorials(p, q.m_window), ns, p));
      break;
    case Family::Q:
      c.stages.push_back(pair_products(naive_factorials(p, q.m_window), ns, p));
      c.stages.insert(c.stages.end(), q.r, ns);
      break;
    case Family::R:
      c.op = ChainOp::multiply;
      if (q.k > 0) c.stages.push_back(tuple_sums(naive_factorials(p, q.m_window), q.k, p));
      c.stages.push_back(tuple_sums(ns, q.ell, p));
      c.stages.insert(c.stages.end(), q.r, naive_factorials(p, q.t_window));
      break;
  }
  return c;
}

struct Plan {
  bool exhaustive = true;
  std::size_t split = 0;
  double work = 0.0;
};

Plan plan_for(const std::vector<double>& sizes, u64 p) {
  double setup = 0.0;
  for (double s : sizes) setup += s;
  double total = 1.0;
  for (double s : sizes) total *= s;
  Plan plan;
  if (total <= kExhaustiveLimit || sizes.size() < 2) {
    plan.work = total + setup;
    return plan;
  }
  plan.exhaustive = false;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t split = 1; split < sizes.size(); ++split) {
    double left = 1.0, right = 1.0;
    for (std::size_t i = 0; i < split; ++i) left *= sizes[i];
    for (std::size_t i = split; i < sizes.size(); ++i) right *= sizes[i];
    if (left + right < best) {
      best = left + right;
      plan.split = split;
    }
  }
  plan.work = best + setup + static_cast<double>(p) * static_cast<double>(p);
  return plan;
}

// dist[x op y] += left[x] * right[y] over all residue pairs.
ExactVector combine(const ExactVector& left, const ExactVector& right, ChainOp op, u64 p) {
  ExactVector out(p, 0);
  for (u64 x = 0; x < p; ++x) {
    if (left[x] == 0) continue;
    for (u64 y = 0; y < p; ++y) {
      if (right[y] == 0) continue;
      const u64 z = op == ChainOp::add ? add_mod(x, y, p) : mul_mod(x, y, p);
      out[z] += left[x] * right[y];
    }
  }
  return out;
}

ExactVector enumerate(const CountQuery& q, double guard) {
  q.validate();
  const u64 p = q.ctx->p();
  const auto plan = plan_for(stage_sizes(q), p);
  if (plan.work > guard) {
    throw Error(Errc::guard_exceeded, "brute-force work estimate " + std::to_string(plan.work) +
                                          " exceeds the oracle guard " + std::to_string(guard));
  }
  const auto chain = build_chain(q);
  std::span<const std::vector<u64>> all(chain.stages);
  if (plan.exhaustive) return kernels::tally_chain_parallel(all, chain.op, p);
  const auto left = kernels::tally_chain_parallel(all.subspan(0, plan.split), chain.op, p);
  const auto right = kernels::tally_chain_parallel(all.subspan(plan.split), chain.op, p);
  return combine(left, right, chain.op, p);
}

}  // namespace

double brute_force_work(const CountQuery& q) {
  q.validate();
  return plan_for(stage_sizes(q), q.ctx->p()).work;
}

CountDistribution brute_force_distribution(const CountQuery& q, double guard) {
  const auto tally = enumerate(q, guard);
  CountDistribution out;
  out.engine = CountEngine::brute_force;
  switch (q.family) {
    case Family::F:
      out.counts = {tally[0]};
      break;
    case Family::I:
      out.counts = {tally[1]};
      break;
    case Family::R:
      out.counts = tally;
      out.dropped_zero_mass = to_big(tally[0]);
      out.counts[0] = 0;
      break;
    default:
      out.counts = tally;
      break;
  }
  return out;
}

CountResult brute_force_count(const CountQuery& q, double guard) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto dist = brute_force_distribution(q, guard);
  CountResult out;
  out.engine = CountEngine::brute_force;
  out.count = to_big(q.has_target() ? dist.counts[q.lambda] : dist.counts[0]);
  out.dropped_zero_mass = dist.dropped_zero_mass;
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace fcl
