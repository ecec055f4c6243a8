#pragma once

#include "coopliable/types.hpp"

namespace coopliable {

struct KktViolation {
    Index block;
    double magnitude;
};

/// Decreasing log-spaced path from lambda_max (smallest lambda whose
/// all-zero solution is stationary for every block) down to
/// lambda_max * lambda_min_ratio. Throws SolverError when the path is
/// degenerate (no signal, or alpha leaves beta unpenalized).
Vector lambda_path(const PliableProblem& problem, const SolverConfig& config);

/// Blockwise cyclical coordinate descent with warm starts along the path.
/// Per block: (a) zero-stationarity screen, (b) closed-form beta with
/// theta = 0, (c) proximal gradient on the full (beta_j, theta_j) block.
/// Every returned point is certified against kkt_check; points that fail
/// to converge within max_iter sweeps carry converged = false.
PliableFit fit_path(const PliableProblem& problem, const Vector& lambdas,
                    const SolverConfig& config);

/// Stationarity audit. For zero blocks checks the exact subgradient
/// feasibility inequalities; for active blocks the gradient-plus-subgradient
/// residual in max norm. Empty result means certified stationary at kkt_tol.
std::vector<KktViolation> kkt_check(const PliableProblem& problem, const PliableCoefs& coefs,
                                    double lambda, const SolverConfig& config);

/// Margin by which (g_beta, g_theta) = (X_j'r/N, W_j'r/N) fails the
/// zero-block stationarity conditions
///   |g_beta| <= c   and   ||S(g_theta, a)||_2 <= c + sqrt(c^2 - g_beta^2)
/// with c = (1-alpha)*lambda*pf and a = alpha*lambda*pf. Zero means the
/// all-zero block is stationary (ties resolve toward exclusion).
double zero_block_gap(double g_beta, const Vector& g_theta, double c, double a);

/// Max-norm stationarity residual of one block at (beta, theta) given the
/// smooth-loss gradients there. Shared by the solver, kkt_check and tests.
double block_kkt_violation(double beta, const Vector& theta, double grad_beta,
                           const Vector& grad_theta, double c, double a);

}  // namespace coopliable
