#ifndef SFCLUST_WEIGHTS_HPP
#define SFCLUST_WEIGHTS_HPP

#include <Eigen/Core>

#include "sfclust/types.hpp"

/**
 * @file weights.hpp
 *
 * @brief Closed-form optimal feature weights for a fixed partition.
 *
 * Given per-feature separation scores b, these maximise w'b over
 * nonnegative w in the unit ball, subject to a sparsity constraint:
 *
 *  - hard thresholding: exactly m components of w vanish. The optimum keeps
 *    the p - m largest scores and normalises them.
 *  - soft thresholding: ||w||_1 <= s. The optimum is a normalised
 *    soft-threshold S(b+, delta) with delta found by bisection.
 *  - functional hard thresholding: w vanishes on a set of measure >= m.
 *    The optimum is b restricted to the level set {b > k}, normalised
 *    in the quadrature L2 norm.
 */

namespace sfclust {

/// Per-grid-point separation scores. `clamped` records whether tiny
/// negative values from round-off were set to zero.
struct DispersionFunction {
    Eigen::VectorXd b;
    bool clamped = false;
};

/**
 * Hard-thresholded weights for scores `b`, keeping the p - m largest.
 * Ties are broken towards the lower index. Non-positive scores never enter
 * the support; if fewer than p - m scores are positive the support shrinks
 * and `support_shrunk` is set.
 *
 * Throws SparsityOutOfRange unless 0 <= m < p, NonPositiveDispersion if no
 * score is positive, NonFinite on NaN/inf input.
 */
WeightVector hard_threshold_weights(const Eigen::VectorXd& b, int m);

/// Bisection stopping tolerance on | ||w||_1 - s |.
inline constexpr double kSoftTolerance = 1e-10;
inline constexpr int kSoftMaxIter = 200;

/**
 * Soft-thresholded weights w = S(a+, delta) / ||S(a+, delta)||_2 with the
 * smallest delta >= 0 giving ||w||_1 <= s.
 *
 * Throws SOutOfRange unless 1 <= s <= sqrt(p), AllZeroAfterThreshold if no
 * entry of `a` is positive.
 */
SoftWeights soft_threshold_weights(const Eigen::VectorXd& a, double s);

/**
 * Smallest level k >= 0 with quadrature measure of {g : b_g > k} at most
 * mu(D) - m, where mu(D) is the total quadrature mass. Each grid point
 * contributes its full mass to the side of the threshold its value falls on.
 */
double functional_threshold_level(const Eigen::VectorXd& b, double m, const Eigen::VectorXd& quad);

/**
 * w = b / ||b||_{L2(B)} on B = {b > k}, zero elsewhere, with k from
 * functional_threshold_level(). Throws DegenerateDispersion if b vanishes
 * on the retained set.
 */
WeightFunction functional_threshold_weights(const Eigen::VectorXd& b, double m,
                                            const Eigen::VectorXd& quad);

}  // namespace sfclust

#endif
