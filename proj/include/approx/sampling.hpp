#ifndef APPROX_SAMPLING_HPP_
#define APPROX_SAMPLING_HPP_

#include <cstdint>
#include <random>
#include <vector>

#include "approx/blocks.hpp"
#include "approx/types.hpp"

namespace approx {

// Seeded generator with a reproducibility contract: equal seeds give equal
// draw sequences. Bounded and real-valued draws are derived from the raw
// 64-bit output by hand instead of std::*_distribution, whose sequences are
// implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  // uniform over {0, 1, ..., bound-1}
  Index uniform_index(Index bound);

  // uniform on [0,1) with 53-bit resolution
  double uniform01();

  // standard normal (Marsaglia polar)
  double normal();

  // independently seeded substream, e.g. one per parallel worker
  Rng stream(std::uint64_t worker) const;

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

enum class SamplingKind { TauNice, TauIndependent };

struct SamplingScheme {
  SamplingKind kind = SamplingKind::TauNice;
  Index tau = 1;
};

const char* name(SamplingKind k);

// Random block subsets of {0,...,n-1}.
//
// TauNice draws uniformly over all C(n,tau) subsets of cardinality tau
// (partial Fisher-Yates over a persistent pool). TauIndependent is the union
// of tau independent uniform picks with replacement, so 1 <= |S| <= tau.
class BlockSampler {
 public:
  BlockSampler(SamplingScheme scheme, Index n);

  // one subset, sorted ascending; the reference stays valid until next draw
  const std::vector<Index>& draw(Rng& rng);

  const SamplingScheme& scheme() const { return scheme_; }
  Index n() const { return n_; }

 private:
  SamplingScheme scheme_;
  Index n_;
  std::vector<Index> pool_;
  std::vector<Index> out_;
};

// P(i in S): tau/n for TauNice, 1-(1-1/n)^tau for TauIndependent
double inclusion_probability(SamplingScheme scheme, Index n);

// all C(n,tau) subsets in lexicographic order; throws if their number
// exceeds cap
std::vector<std::vector<Index>> enumerate_tau_nice(Index n, Index tau,
                                                   std::size_t cap = 1000000);

// h_[S]: zero out the blocks not in S
Vector restrict_to_blocks(const Eigen::Ref<const Vector>& h,
                          const std::vector<Index>& S, const BlockPartition& p);

}  // namespace approx

#endif  // APPROX_SAMPLING_HPP_
