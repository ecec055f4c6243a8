#pragma once

#include "coopliable/objective.hpp"
#include "coopliable/types.hpp"

namespace coopliable {

/// Proximal operator of step * (c||(b,t)||_2 + c||t||_2 + a||t||_1).
/// The three norms nest (each theta coordinate, the theta group, the joint
/// block), so the prox is the leaf-to-root composition of the individual
/// shrinkage operators.
inline std::pair<double, Vector> prox_block(double b, const Vector& t, double step, double c,
                                            double a) {
    const Vector t1 = soft_threshold(t, step * a);
    const Vector t2 = group_shrink(t1, step * c);
    const double joint = std::sqrt(b * b + t2.squaredNorm());
    const double thr = step * c;
    if (joint <= thr) return {0.0, Vector::Zero(t.size())};
    const double scale = 1.0 - thr / joint;
    return {scale * b, scale * t2};
}

struct OracleOptions {
    double tol = 1e-9;      // gradient-mapping norm, relative to problem scale
    int max_iter = 500000;
};

/// Slow reference minimizer: full proximal gradient on the stacked
/// coefficient vector with backtracking. Intended for small instances only;
/// kept deliberately independent of the coordinate-descent path.
PliableCoefs oracle_solve(const PliableProblem& problem, double lambda,
                          const OracleOptions& opts = {}, bool* converged = nullptr);

}  // namespace coopliable
