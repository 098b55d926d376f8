#include "sfclust/weights.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace sfclust {

namespace {

void require_finite(const Eigen::VectorXd& v, const char* what) {
    for (Eigen::Index j = 0; j < v.size(); ++j) {
        if (!std::isfinite(v(j))) {
            throw Error(ErrorCode::NonFinite, std::string(what) + " index " + std::to_string(j));
        }
    }
}

}  // namespace

WeightVector hard_threshold_weights(const Eigen::VectorXd& b, int m) {
    const auto p = static_cast<int>(b.size());
    if (p < 1 || m < 0 || m >= p) {
        throw Error(ErrorCode::SparsityOutOfRange,
                    "m = " + std::to_string(m) + " with p = " + std::to_string(p));
    }
    require_finite(b, "dispersion");

    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(p));
    for (int j = 0; j < p; ++j) {
        if (b(j) > 0.0) order.push_back(j);
    }
    if (order.empty()) {
        throw Error(ErrorCode::NonPositiveDispersion, "no feature has positive dispersion");
    }
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return b(x) > b(y); });

    const std::size_t keep = static_cast<std::size_t>(p - m);
    WeightVector out;
    out.m = m;
    out.support_shrunk = order.size() < keep;
    order.resize(std::min(keep, order.size()));

    double ss = 0.0;
    for (int j : order) ss += b(j) * b(j);
    const double norm = std::sqrt(ss);

    out.w = Eigen::VectorXd::Zero(p);
    for (int j : order) out.w(j) = b(j) / norm;
    return out;
}

SoftWeights soft_threshold_weights(const Eigen::VectorXd& a, double s) {
    const auto p = a.size();
    const double s_max = std::sqrt(static_cast<double>(p));
    if (p < 1 || !(s >= 1.0) || s > s_max * (1.0 + 1e-12)) {
        throw Error(ErrorCode::SOutOfRange,
                    "s = " + std::to_string(s) + " outside [1, sqrt(" + std::to_string(p) + ")]");
    }
    require_finite(a, "dispersion");

    const Eigen::ArrayXd pos = a.array().max(0.0);
    const double top = pos.maxCoeff();
    if (top <= 0.0) {
        throw Error(ErrorCode::AllZeroAfterThreshold, "no positive entry to threshold");
    }

    // l1 norm of the normalised soft threshold; 0 when everything is cut.
    auto l1_at = [&](double delta) {
        const Eigen::ArrayXd st = (pos - delta).max(0.0);
        const double n2 = std::sqrt(st.square().sum());
        return n2 > 0.0 ? st.sum() / n2 : 0.0;
    };

    double delta = 0.0;
    if (l1_at(0.0) > s) {
        double lo = 0.0;
        double hi = top;
        bool hit = false;
        for (int it = 0; it < kSoftMaxIter; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double v = l1_at(mid);
            if (std::abs(v - s) <= kSoftTolerance && v > 0.0) {
                delta = mid;
                hit = true;
                break;
            }
            if (v > s) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        if (!hit) {
            // hi is feasible unless it thresholds everything away, which only
            // happens when tied maxima make ||w||_1 = s unreachable.
            delta = l1_at(hi) > 0.0 ? hi : lo;
        }
    }

    SoftWeights out;
    out.s = s;
    out.delta = delta;
    const Eigen::ArrayXd st = (pos - delta).max(0.0);
    out.w = (st / std::sqrt(st.square().sum())).matrix();
    return out;
}

namespace {

void check_functional_args(const Eigen::VectorXd& b, double m, const Eigen::VectorXd& quad) {
    if (b.size() != quad.size()) {
        throw Error(ErrorCode::GridMismatch, "dispersion has " + std::to_string(b.size()) +
                                                 " points, quadrature " +
                                                 std::to_string(quad.size()));
    }
    require_finite(b, "dispersion");
    for (Eigen::Index g = 0; g < b.size(); ++g) {
        if (b(g) < 0.0) {
            throw Error(ErrorCode::InvalidArgument,
                        "negative dispersion at grid index " + std::to_string(g));
        }
    }
    const double total = quad.sum();
    if (!(m > 0.0) || !(m < total)) {
        throw Error(ErrorCode::SparsityOutOfRange,
                    "m = " + std::to_string(m) + " outside (0, " + std::to_string(total) + ")");
    }
}

}  // namespace

double functional_threshold_level(const Eigen::VectorXd& b, double m, const Eigen::VectorXd& quad) {
    check_functional_args(b, m, quad);
    const double total = quad.sum();
    const double target = total - m + 1e-12 * total;

    std::vector<Eigen::Index> order(static_cast<std::size_t>(b.size()));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index x, Eigen::Index y) { return b(x) > b(y); });

    // Walk distinct values from the top. For a group with value v the mass
    // strictly above v is everything accumulated before it; the last v for
    // which that mass fits is the smallest admissible level.
    double level = b(order.front());
    double above = 0.0;
    std::size_t i = 0;
    while (i < order.size()) {
        const double v = b(order[i]);
        if (above > target) break;
        level = v;
        while (i < order.size() && b(order[i]) == v) {
            above += quad(order[i]);
            ++i;
        }
    }
    return level;
}

WeightFunction functional_threshold_weights(const Eigen::VectorXd& b, double m,
                                            const Eigen::VectorXd& quad) {
    const double level = functional_threshold_level(b, m, quad);

    double ss = 0.0;
    for (Eigen::Index g = 0; g < b.size(); ++g) {
        if (b(g) > level) ss += quad(g) * b(g) * b(g);
    }
    if (!(ss > 0.0)) {
        throw Error(ErrorCode::DegenerateDispersion,
                    "dispersion vanishes on the retained set (level " + std::to_string(level) + ")");
    }
    const double norm = std::sqrt(ss);

    WeightFunction out;
    out.m = m;
    out.level = level;
    out.w = Eigen::VectorXd::Zero(b.size());
    for (Eigen::Index g = 0; g < b.size(); ++g) {
        if (b(g) > level) out.w(g) = b(g) / norm;
    }
    return out;
}

}  // namespace sfclust
