#ifndef APPROX_BLOCKS_HPP_
#define APPROX_BLOCKS_HPP_

#include <vector>

#include "approx/types.hpp"

namespace approx {

// Partition of the N coordinates into n contiguous blocks.
class BlockPartition {
 public:
  explicit BlockPartition(std::vector<Index> sizes);

  // n blocks of size one
  static BlockPartition unit(Index n);

  Index blocks() const { return static_cast<Index>(sizes_.size()); }
  Index dim() const { return offsets_.back(); }
  Index size(Index i) const { return sizes_[static_cast<std::size_t>(i)]; }
  Index offset(Index i) const { return offsets_[static_cast<std::size_t>(i)]; }
  bool all_unit() const { return all_unit_; }

  // index of the block containing coordinate c
  Index block_of(Index c) const;

 private:
  std::vector<Index> sizes_;
  std::vector<Index> offsets_;  // length n+1, offsets_[n] == N
  bool all_unit_;
};

// ||x||_v^2 = sum_i v_i ||x^(i)||^2 with Euclidean block norms
double weighted_norm_sq(const Eigen::Ref<const Vector>& x,
                        const Eigen::Ref<const Vector>& v,
                        const BlockPartition& p);

// <a,h>_v = sum_i v_i <a^(i), h^(i)>
double weighted_inner(const Eigen::Ref<const Vector>& a,
                      const Eigen::Ref<const Vector>& h,
                      const Eigen::Ref<const Vector>& v,
                      const BlockPartition& p);

// v rescaled so its entries sum to the number of blocks
Vector normalized_weights(const Eigen::Ref<const Vector>& v);

}  // namespace approx

#endif  // APPROX_BLOCKS_HPP_
