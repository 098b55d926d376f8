#include "sfclust/simgen.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sfclust/rng.hpp"

namespace sfclust {

namespace {

constexpr int kMvClasses = 3;

}  // namespace

double mv_mean(const MvScenario& s, int cls, int j) {
    const double base = static_cast<double>(j + 1) / s.p;
    if (j >= s.q) return base;
    const double shift = (cls == 1 ? 1.0 : 0.0) - (cls == 2 ? 1.0 : 0.0);
    return base + 1.5 * s.sigma * shift;
}

MvSample gen_mv(const MvScenario& s) {
    if (s.p < 1 || s.q < 0 || s.q > s.p || s.per_class < 1 || !(s.sigma >= 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "invalid multivariate scenario (p = " +
                                                    std::to_string(s.p) + ", q = " +
                                                    std::to_string(s.q) + ")");
    }
    const int n = kMvClasses * s.per_class;
    Rng rng(s.seed);
    Eigen::MatrixXd x(n, s.p);
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const int cls = i / s.per_class;
        labels[static_cast<std::size_t>(i)] = cls;
        for (int j = 0; j < s.p; ++j) x(i, j) = mv_mean(s, cls, j) + s.sigma * rng.normal();
    }
    return {Dataset(std::move(x)), Partition(std::move(labels), kMvClasses)};
}

double fd_curve1(double x, double a, double b, double c) {
    return (b * std::sin(b * std::numbers::pi * x) + a) * (a - 4.0 * x) + c;
}

double fd_curve2(double x, double a, double b, double c) {
    if (x <= 0.5) return fd_curve1(x, a, b, c);
    return (b * std::sin(b * std::numbers::pi * x) + a) * (a - 4.0 * (1.0 - x)) - 2.0 * c * (x - 1.0);
}

Eigen::VectorXd unit_grid(int n) {
    if (n < 2) throw Error(ErrorCode::InvalidArgument, "grid needs at least 2 points");
    Eigen::VectorXd g(n);
    for (int i = 0; i < n; ++i) g(i) = static_cast<double>(i) / (n - 1);
    return g;
}

FdSample gen_fd(const FdScenario& s) {
    if (s.grid_size < 2 || s.per_class < 1) {
        throw Error(ErrorCode::InvalidArgument, "invalid functional scenario");
    }
    Eigen::VectorXd grid = unit_grid(s.grid_size);
    const int n = 2 * s.per_class;
    Rng rng(s.seed);
    Eigen::MatrixXd values(n, s.grid_size);
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const int cls = i / s.per_class;
        labels[static_cast<std::size_t>(i)] = cls;
        const double a = rng.normal(s.a_mean, s.a_sd);
        const double b = rng.normal(s.b_mean, s.b_sd);
        const double c = rng.normal(cls == 0 ? s.c1_mean : s.c2_mean, s.c_sd);
        for (int g = 0; g < s.grid_size; ++g) {
            values(i, g) = cls == 0 ? fd_curve1(grid(g), a, b, c) : fd_curve2(grid(g), a, b, c);
        }
    }
    return {FunctionalDataset(std::move(grid), std::move(values)), Partition(std::move(labels), 2)};
}

}  // namespace sfclust
