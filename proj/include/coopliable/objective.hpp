#pragma once

#include <algorithm>
#include <cmath>

#include "coopliable/types.hpp"

namespace coopliable {

/// sign(x) * max(|x| - t, 0)
inline double soft_threshold(double x, double t) {
    if (x > t) return x - t;
    if (x < -t) return x + t;
    return 0.0;
}

/// Elementwise soft threshold.
template <typename Derived>
Vector soft_threshold(const Eigen::MatrixBase<Derived>& x, double t) {
    return x.unaryExpr([t](double v) { return soft_threshold(v, t); });
}

/// (1 - t/||v||)_+ v, the proximal operator of t*||.||_2.
template <typename Derived>
Vector group_shrink(const Eigen::MatrixBase<Derived>& v, double t) {
    const double norm = v.norm();
    if (norm <= t) return Vector::Zero(v.size());
    return (1.0 - t / norm) * v;
}

/// Penalty of one coefficient block: c(||(b,t)||_2 + ||t||_2) + a||t||_1,
/// with c = (1-alpha)*lambda*pf and a = alpha*lambda*pf.
double block_penalty(double beta_j, const Vector& theta_j, double c, double a);

/// Full penalty term of the objective across blocks.
double penalty_value(const PliableProblem& problem, const PliableCoefs& coefs, double lambda);

/// (1/(2 n_obs)) ||y - yhat||^2 + penalty.
double pliable_objective(const PliableProblem& problem, const PliableCoefs& coefs,
                         double lambda);

/// Cooperative objective on prepared data: squared-error term, the agreement
/// penalty on main-effect predictions, and both sources' pliable penalties.
/// Shares the 1/(2n) loss normalization with pliable_objective so that the
/// augmented-problem reduction is an exact identity.
double coop_objective(const MultiViewData& data, const PliableCoefs& coefs1,
                      const PliableCoefs& coefs2, double rho, double lambda, double alpha,
                      const Vector& pf1 = Vector(), const Vector& pf2 = Vector());

}  // namespace coopliable
