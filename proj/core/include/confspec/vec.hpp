#pragma once

#include <Eigen/Core>

namespace confspec {

// Ambient vectors in R^{n+1}. The storage is bounded so hot loops never touch
// the heap; spheres up to S^15 are supported.
inline constexpr int kMaxAmbientDim = 16;

using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxAmbientDim, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor,
                          kMaxAmbientDim, kMaxAmbientDim>;

}  // namespace confspec
