#ifndef APPROX_TYPES_HPP_
#define APPROX_TYPES_HPP_

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace approx {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;

// column-major so the columns of one block are contiguous
using SpMat = Eigen::SparseMatrix<double>;

}  // namespace approx

#endif  // APPROX_TYPES_HPP_
