#include "approx/blocks.hpp"

#include <algorithm>
#include <stdexcept>

namespace approx {

BlockPartition::BlockPartition(std::vector<Index> sizes) : sizes_(std::move(sizes)) {
  if (sizes_.empty()) throw std::invalid_argument("BlockPartition: empty size list");
  offsets_.reserve(sizes_.size() + 1);
  offsets_.push_back(0);
  all_unit_ = true;
  for (Index s : sizes_) {
    if (s < 1) throw std::invalid_argument("BlockPartition: block sizes must be positive");
    if (s != 1) all_unit_ = false;
    offsets_.push_back(offsets_.back() + s);
  }
}

BlockPartition BlockPartition::unit(Index n) {
  if (n < 1) throw std::invalid_argument("BlockPartition::unit: need at least one block");
  return BlockPartition(std::vector<Index>(static_cast<std::size_t>(n), 1));
}

Index BlockPartition::block_of(Index c) const {
  if (c < 0 || c >= dim()) throw std::out_of_range("BlockPartition::block_of: coordinate out of range");
  if (all_unit_) return c;
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), c);
  return static_cast<Index>(it - offsets_.begin()) - 1;
}

double weighted_norm_sq(const Eigen::Ref<const Vector>& x,
                        const Eigen::Ref<const Vector>& v,
                        const BlockPartition& p) {
  if (x.size() != p.dim()) throw std::invalid_argument("weighted_norm_sq: vector length != partition dim");
  if (v.size() != p.blocks()) throw std::invalid_argument("weighted_norm_sq: weight length != block count");
  double acc = 0.0;
  for (Index i = 0; i < p.blocks(); ++i)
    acc += v[i] * x.segment(p.offset(i), p.size(i)).squaredNorm();
  return acc;
}

double weighted_inner(const Eigen::Ref<const Vector>& a,
                      const Eigen::Ref<const Vector>& h,
                      const Eigen::Ref<const Vector>& v,
                      const BlockPartition& p) {
  if (a.size() != p.dim() || h.size() != p.dim())
    throw std::invalid_argument("weighted_inner: vector length != partition dim");
  if (v.size() != p.blocks()) throw std::invalid_argument("weighted_inner: weight length != block count");
  double acc = 0.0;
  for (Index i = 0; i < p.blocks(); ++i)
    acc += v[i] * a.segment(p.offset(i), p.size(i)).dot(h.segment(p.offset(i), p.size(i)));
  return acc;
}

Vector normalized_weights(const Eigen::Ref<const Vector>& v) {
  const double l1 = v.cwiseAbs().sum();
  if (l1 <= 0.0) throw std::invalid_argument("normalized_weights: weights sum to zero");
  return v * (static_cast<double>(v.size()) / l1);
}

}  // namespace approx
