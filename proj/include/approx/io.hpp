#ifndef APPROX_IO_HPP_
#define APPROX_IO_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "approx/runlog.hpp"
#include "approx/types.hpp"

namespace approx {

struct Dataset {
  SpMat A;   // m x N, compressed, no explicit zeros
  Vector b;  // per-row target or label
};

// LibSVM text format: "label idx:val idx:val ...", indices 1-based.
// Duplicate indices within a line and malformed tokens are errors (reported
// with their line number); explicit zero values are dropped.
Dataset read_libsvm(const std::string& path);

void write_libsvm(const std::string& path, const SpMat& A, const Eigen::Ref<const Vector>& b);

enum class SparsityRegime { Uniform, Intermediate, Extreme };

const char* name(SparsityRegime r);
SparsityRegime parse_regime(const std::string& s);

// Random m x n matrix with prescribed per-row support sizes:
//   Uniform       30 nonzeros in every row
//   Intermediate  1 + floor(30 j^2 / m^2) for row j (1-based)
//   Extreme       500 in the first row, 3 in every other
// Support positions are uniform without replacement, values iid standard
// normal (resampled on the off chance a draw is exactly zero).
SpMat gen_synthetic(SparsityRegime regime, Index m, Index n, std::uint64_t seed);

Vector row_squared_norms(const SpMat& A);
std::vector<Index> row_nonzero_counts(const SpMat& A);

}  // namespace approx

#endif  // APPROX_IO_HPP_
