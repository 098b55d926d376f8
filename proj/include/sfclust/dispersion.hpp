#ifndef SFCLUST_DISPERSION_HPP
#define SFCLUST_DISPERSION_HPP

#include <Eigen/Core>

#include "sfclust/types.hpp"
#include "sfclust/weights.hpp"

namespace sfclust {

/**
 * Between-cluster dispersion of each feature in ordered-pair form,
 *
 *   b_j = (1/N) sum_{i,i'} (x_ij - x_i'j)^2 - sum_k (1/N_k) sum_{i,i' in C_k} (x_ij - x_i'j)^2,
 *
 * which is twice the classical between-cluster sum of squares.
 * Evaluated in O(N) per feature through centred sums of squares.
 */
Eigen::VectorXd bcss_per_feature(const Dataset& data, const Partition& part);

/**
 * Pointwise between-cluster dispersion of a functional dataset,
 *
 *   g(x) = 1/(2N) sum_{i,j} (f_i(x) - f_j(x))^2 - sum_h 1/(2|C_h|) sum_{i,j in C_h} (f_i(x) - f_j(x))^2,
 *
 * i.e. the classical between-cluster sum of squares at every grid point.
 * Round-off negatives are clamped to zero and flagged.
 */
DispersionFunction bcss_pointwise(const FunctionalDataset& data, const Partition& part);

/// sum_j w_j (x_j - y_j)^2. Throws DimensionMismatch on length mismatch.
double weighted_sq_distance_mv(const Eigen::Ref<const Eigen::VectorXd>& x,
                               const Eigen::Ref<const Eigen::VectorXd>& y,
                               const Eigen::VectorXd& w);

/// sum_g quad_g w_g (f_g - h_g)^2, the quadrature form of the weighted L2
/// distance. Throws GridMismatch on length mismatch.
double weighted_sq_distance(const Eigen::Ref<const Eigen::VectorXd>& f,
                            const Eigen::Ref<const Eigen::VectorXd>& h, const Eigen::VectorXd& w,
                            const Eigen::VectorXd& quad);

}  // namespace sfclust

#endif
