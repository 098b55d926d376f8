#ifndef SFCLUST_SIMGEN_HPP
#define SFCLUST_SIMGEN_HPP

#include <cstdint>

#include "sfclust/types.hpp"

/**
 * @file simgen.hpp
 *
 * @brief Seeded generators for the two benchmark scenarios.
 *
 * Multivariate: K = 3 classes of `per_class` Gaussian observations with
 * sd sigma; feature j has mean j/p, shifted by +1.5 sigma in class 2 and
 * -1.5 sigma in class 3 on the first q features only.
 *
 * Functional: K = 2 classes of noise-free curves on [0, 1],
 *
 *   f1(x) = (b sin(b pi x) + a)(a - 4x) + c
 *   f2(x) = f1(x)                                 for x <= 1/2
 *         = (b sin(b pi x) + a)(a - 4(1 - x)) - 2c(x - 1)   for x > 1/2
 *
 * with a ~ N(3, 0.5^2), b ~ N(2, 0.25^2) per curve, c ~ N(0, 0.5^2) in the
 * first class and c ~ N(0.5, 0.5^2) in the second.
 *
 * Labels are 0-based and observations are ordered by class.
 */

namespace sfclust {

struct MvScenario {
    int p = 50;
    int q = 10;
    int per_class = 20;
    double sigma = 0.2;
    std::uint64_t seed = 1;
};

struct FdScenario {
    int grid_size = 200;
    int per_class = 100;
    double a_mean = 3.0, a_sd = 0.5;
    double b_mean = 2.0, b_sd = 0.25;
    double c1_mean = 0.0, c2_mean = 0.5, c_sd = 0.5;
    std::uint64_t seed = 1;
};

struct MvSample {
    Dataset data;
    Partition truth;
};

struct FdSample {
    FunctionalDataset data;
    Partition truth;
};

/// Mean of feature j (0-based) for an observation of class `cls` (0-based).
double mv_mean(const MvScenario& s, int cls, int j);

MvSample gen_mv(const MvScenario& s);

double fd_curve1(double x, double a, double b, double c);
double fd_curve2(double x, double a, double b, double c);

/// Uniform grid of `n` points on [0, 1].
Eigen::VectorXd unit_grid(int n);

FdSample gen_fd(const FdScenario& s);

}  // namespace sfclust

#endif
