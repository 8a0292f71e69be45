#pragma once

#include <Eigen/Dense>

namespace sectlab {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

}  // namespace sectlab
