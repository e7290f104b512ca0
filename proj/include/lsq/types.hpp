#pragma once

#include <Eigen/Core>

#include <cstdint>

namespace lsq {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;  // column-major
using Vector = Eigen::VectorXd;

}  // namespace lsq
