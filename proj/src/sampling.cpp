#include "approx/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace approx {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

std::uint64_t Rng::next_u64() { return engine_(); }

Index Rng::uniform_index(Index bound) {
  if (bound < 1) throw std::invalid_argument("Rng::uniform_index: bound must be positive");
  const auto b = static_cast<std::uint64_t>(bound);
  // bitmask rejection: unbiased and stdlib-independent
  std::uint64_t mask = b - 1;
  mask |= mask >> 1;
  mask |= mask >> 2;
  mask |= mask >> 4;
  mask |= mask >> 8;
  mask |= mask >> 16;
  mask |= mask >> 32;
  std::uint64_t v;
  do {
    v = next_u64() & mask;
  } while (v >= b);
  return static_cast<Index>(v);
}

double Rng::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, w, s;
  do {
    u = 2.0 * uniform01() - 1.0;
    w = 2.0 * uniform01() - 1.0;
    s = u * u + w * w;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = w * f;
  has_spare_ = true;
  return u * f;
}

Rng Rng::stream(std::uint64_t worker) const {
  return Rng(splitmix64(seed_ ^ splitmix64(worker + 1)));
}

const char* name(SamplingKind k) {
  return k == SamplingKind::TauNice ? "tau-nice" : "tau-independent";
}

BlockSampler::BlockSampler(SamplingScheme scheme, Index n) : scheme_(scheme), n_(n) {
  if (n < 1) throw std::invalid_argument("BlockSampler: n must be positive");
  if (scheme.tau < 1 || scheme.tau > n)
    throw std::invalid_argument("BlockSampler: tau must lie in [1, n], got tau=" +
                                std::to_string(scheme.tau) + ", n=" + std::to_string(n));
  if (scheme.kind == SamplingKind::TauNice) {
    pool_.resize(static_cast<std::size_t>(n));
    std::iota(pool_.begin(), pool_.end(), Index{0});
  }
  out_.reserve(static_cast<std::size_t>(scheme.tau));
}

const std::vector<Index>& BlockSampler::draw(Rng& rng) {
  const Index tau = scheme_.tau;
  out_.clear();
  if (scheme_.kind == SamplingKind::TauNice && tau == n_) {
    // only one subset exists; skip the generator entirely
    out_.resize(static_cast<std::size_t>(n_));
    std::iota(out_.begin(), out_.end(), Index{0});
    return out_;
  }
  if (scheme_.kind == SamplingKind::TauNice) {
    // partial Fisher-Yates: the first tau entries of the pool are a uniform
    // subset regardless of the pool's previous order
    for (Index t = 0; t < tau; ++t) {
      const Index j = t + rng.uniform_index(n_ - t);
      std::swap(pool_[static_cast<std::size_t>(t)], pool_[static_cast<std::size_t>(j)]);
      out_.push_back(pool_[static_cast<std::size_t>(t)]);
    }
    std::sort(out_.begin(), out_.end());
  } else {
    for (Index t = 0; t < tau; ++t) out_.push_back(rng.uniform_index(n_));
    std::sort(out_.begin(), out_.end());
    out_.erase(std::unique(out_.begin(), out_.end()), out_.end());
  }
  return out_;
}

double inclusion_probability(SamplingScheme scheme, Index n) {
  if (n < 1 || scheme.tau < 1 || scheme.tau > n)
    throw std::invalid_argument("inclusion_probability: invalid scheme");
  const double nd = static_cast<double>(n);
  if (scheme.kind == SamplingKind::TauNice) return static_cast<double>(scheme.tau) / nd;
  return 1.0 - std::pow(1.0 - 1.0 / nd, static_cast<double>(scheme.tau));
}

std::vector<std::vector<Index>> enumerate_tau_nice(Index n, Index tau, std::size_t cap) {
  if (n < 1 || tau < 1 || tau > n)
    throw std::invalid_argument("enumerate_tau_nice: need 1 <= tau <= n");

  // C(n,tau), bailing out as soon as the cap is crossed
  std::size_t count = 1;
  for (Index i = 1; i <= tau; ++i) {
    count = count * static_cast<std::size_t>(n - tau + i) / static_cast<std::size_t>(i);
    if (count > cap)
      throw std::runtime_error("enumerate_tau_nice: C(n,tau) exceeds cap of " + std::to_string(cap));
  }

  std::vector<std::vector<Index>> subsets;
  subsets.reserve(count);
  std::vector<Index> cur(static_cast<std::size_t>(tau));
  std::iota(cur.begin(), cur.end(), Index{0});
  while (true) {
    subsets.push_back(cur);
    // advance to the lexicographic successor
    Index i = tau - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - tau + i) --i;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
    for (Index j = i + 1; j < tau; ++j)
      cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
  }
  return subsets;
}

Vector restrict_to_blocks(const Eigen::Ref<const Vector>& h,
                          const std::vector<Index>& S, const BlockPartition& p) {
  if (h.size() != p.dim()) throw std::invalid_argument("restrict_to_blocks: length mismatch");
  Vector out = Vector::Zero(h.size());
  for (Index i : S) out.segment(p.offset(i), p.size(i)) = h.segment(p.offset(i), p.size(i));
  return out;
}

}  // namespace approx
