#include "coopliable/solver.hpp"

#include <cmath>

#include "coopliable/objective.hpp"
#include "coopliable/oracle.hpp"

namespace coopliable {

double zero_block_gap(double g_beta, const Vector& g_theta, double c, double a) {
    const double beta_gap = std::abs(g_beta) - c;
    const double st = soft_threshold(g_theta, a).norm();
    const double slack = c * c - g_beta * g_beta;
    const double theta_bound = c + std::sqrt(std::max(slack, 0.0));
    return std::max({0.0, beta_gap, st - theta_bound});
}

double block_kkt_violation(double beta, const Vector& theta, double grad_beta,
                           const Vector& grad_theta, double c, double a) {
    const double joint = std::sqrt(beta * beta + theta.squaredNorm());
    if (joint == 0.0) return zero_block_gap(-grad_beta, -grad_theta, c, a);

    double viol = std::abs(grad_beta + c * beta / joint);
    const double tnorm = theta.norm();
    if (tnorm == 0.0) {
        // theta stationary at zero: -grad must lie in c*B2 + a*Binf
        viol = std::max(viol, std::max(0.0, soft_threshold(grad_theta, a).norm() - c));
        return viol;
    }
    for (Index k = 0; k < theta.size(); ++k) {
        const double tk = theta[k];
        if (tk != 0.0) {
            const double g = grad_theta[k] + c * tk / joint + c * tk / tnorm +
                             a * (tk > 0 ? 1.0 : -1.0);
            viol = std::max(viol, std::abs(g));
        } else {
            viol = std::max(viol, std::max(0.0, std::abs(grad_theta[k]) - a));
        }
    }
    return viol;
}

namespace {

void validate_problem(const PliableProblem& prob) {
    const Index n = prob.rows();
    if (n < 2 || prob.p() < 1 || prob.k() < 1) throw DataError("problem dimensions too small");
    if (prob.z.rows() != n || prob.y.size() != n) throw DataError("problem row counts differ");
    if (prob.penalty_factors.size() != prob.p())
        throw DataError("penalty factor length does not match feature count");
    if ((prob.penalty_factors.array() <= 0.0).any() || !prob.penalty_factors.allFinite())
        throw ConfigError("penalty factors must be strictly positive");
    if (prob.n_obs < 1 || prob.n_top < 1 || prob.n_top > n)
        throw DataError("invalid n_obs/n_top bookkeeping");
    if (prob.alpha < 0.0 || prob.alpha > 1.0) throw ConfigError("alpha must be in [0,1]");
}

// Gradients of the smooth loss at zero coefficients, per block.
struct ZeroGradients {
    Vector g_beta;   // X_j' y / n
    Matrix g_theta;  // rows: W_j' y / n
};

ZeroGradients gradients_at_zero(const PliableProblem& prob) {
    const double inv_n = 1.0 / static_cast<double>(prob.n_obs);
    ZeroGradients g;
    g.g_beta = prob.x.transpose() * prob.y * inv_n;
    g.g_theta.resize(prob.p(), prob.k());
    for (Index j = 0; j < prob.p(); ++j) {
        g.g_theta.row(j) = (prob.z.transpose() * prob.x.col(j).cwiseProduct(prob.y)) * inv_n;
    }
    return g;
}

bool zero_feasible_at(double lambda, double alpha, double pf, double g_beta,
                      const Vector& g_theta) {
    const double c = (1.0 - alpha) * lambda * pf;
    const double a = alpha * lambda * pf;
    return zero_block_gap(g_beta, g_theta, c, a) <= 0.0;
}

// Smallest lambda at which block j is zero-stationary; feasibility is
// monotone in lambda so a bracketed bisection suffices.
double block_lambda_max(double alpha, double pf, double g_beta, const Vector& g_theta) {
    if (g_beta == 0.0 && g_theta.isZero(0.0)) return 0.0;
    double hi = 1e-8;
    int doublings = 0;
    while (!zero_feasible_at(hi, alpha, pf, g_beta, g_theta)) {
        hi *= 2.0;
        if (++doublings > 1200)
            throw SolverError("lambda_max does not exist (is alpha = 1 with signal present?)");
    }
    double lo = 0.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (zero_feasible_at(mid, alpha, pf, g_beta, g_theta)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

struct Workspace {
    const PliableProblem& prob;
    const SolverConfig& cfg;
    double lambda = 0.0;
    double inv_n;
    Vector x_sq;  // squared column norms of X
    PliableCoefs coefs;
    Vector r;   // y - yhat
    Matrix w;   // N x K scratch for the current block

    explicit Workspace(const PliableProblem& p, const SolverConfig& c)
        : prob(p),
          cfg(c),
          inv_n(1.0 / static_cast<double>(p.n_obs)),
          x_sq(p.x.colwise().squaredNorm()),
          coefs(PliableCoefs::zero(p.p(), p.k())),
          r(p.y) {}

    void materialize_w(Index j) { w = prob.z.array().colwise() * prob.x.col(j).array(); }

    void refresh_residual() {
        r = prob.y - prob.x * coefs.beta;
        for (Index j = 0; j < prob.p(); ++j) {
            if (!coefs.theta.row(j).isZero(0.0)) {
                r.noalias() -=
                    (prob.z * coefs.theta.row(j).transpose()).cwiseProduct(prob.x.col(j));
            }
        }
    }

    double objective() const {
        double pen = 0.0;
        for (Index j = 0; j < prob.p(); ++j) {
            const double b = coefs.beta[j];
            if (b == 0.0 && coefs.theta.row(j).isZero(0.0)) continue;
            const double pf = prob.penalty_factors[j];
            pen += block_penalty(b, coefs.theta.row(j).transpose(),
                                 (1.0 - prob.alpha) * lambda * pf, prob.alpha * lambda * pf);
        }
        return 0.5 * r.squaredNorm() * inv_n + pen;
    }
};

// Proximal gradient with backtracking on one (beta_j, theta_j) block,
// holding the rest fixed. r_partial excludes this block's contribution.
void solve_block_full(Workspace& ws, Index j, const Vector& r_partial, double c, double a,
                      double& b, Vector& t) {
    const auto x = ws.prob.x.col(j);
    const double inv_n = ws.inv_n;
    const double lip = (ws.x_sq[j] + ws.w.squaredNorm()) * inv_n;
    double step = lip > 0.0 ? 1.0 / lip : 1.0;

    Vector res = r_partial - x * b;
    if (!t.isZero(0.0)) res.noalias() -= ws.w * t;
    double f = 0.5 * res.squaredNorm() * inv_n;

    for (int it = 0; it < ws.cfg.inner_max_iter; ++it) {
        const double gb = -x.dot(res) * inv_n;
        Vector gt = -(ws.w.transpose() * res) * inv_n;
        if (block_kkt_violation(b, t, gb, gt, c, a) <= 0.25 * ws.cfg.kkt_tol) break;

        bool accepted = false;
        double b_new = b;
        Vector t_new = t;
        while (step > 1e-18) {
            std::tie(b_new, t_new) = prox_block(b - step * gb, t - step * gt, step, c, a);
            Vector res_new = r_partial - x * b_new;
            if (!t_new.isZero(0.0)) res_new.noalias() -= ws.w * t_new;
            const double f_new = 0.5 * res_new.squaredNorm() * inv_n;
            const double db = b_new - b;
            const double dt_sq = (t_new - t).squaredNorm();
            const double majorant = f + gb * db + gt.dot(t_new - t) +
                                    0.5 * (db * db + dt_sq) / step +
                                    1e-12 * (1.0 + std::abs(f));
            if (f_new <= majorant) {
                res.swap(res_new);
                f = f_new;
                accepted = true;
                break;
            }
            step *= ws.cfg.bt_shrink;
        }
        if (!accepted) break;
        b = b_new;
        t.swap(t_new);
        step = std::min(step * ws.cfg.bt_grow, 1e12);
    }
}

// One visit of block j; returns true if its coefficients changed.
bool update_block(Workspace& ws, Index j) {
    const auto x = ws.prob.x.col(j);
    const double inv_n = ws.inv_n;
    const double pf = ws.prob.penalty_factors[j];
    const double c = (1.0 - ws.prob.alpha) * ws.lambda * pf;
    const double a = ws.prob.alpha * ws.lambda * pf;

    double b = ws.coefs.beta[j];
    Vector t = ws.coefs.theta.row(j).transpose();
    const bool was_zero = (b == 0.0 && t.isZero(0.0));
    bool have_w = false;

    // (a) zero screen against the partial residual
    if (was_zero) {
        const double g_b = x.dot(ws.r) * inv_n;
        if (std::abs(g_b) <= c) {
            const Vector g_t = (ws.prob.z.transpose() * x.cwiseProduct(ws.r)) * inv_n;
            if (zero_block_gap(g_b, g_t, c, a) <= 0.0) return false;
        }
    }

    Vector r_partial = ws.r;
    if (!was_zero) {
        r_partial.noalias() += x * b;
        if (!t.isZero(0.0)) {
            ws.materialize_w(j);
            have_w = true;
            r_partial.noalias() += ws.w * t;
        }
        const double g_b = x.dot(r_partial) * inv_n;
        if (std::abs(g_b) <= c) {
            const Vector g_t = (ws.prob.z.transpose() * x.cwiseProduct(r_partial)) * inv_n;
            if (zero_block_gap(g_b, g_t, c, a) <= 0.0) {
                ws.coefs.beta[j] = 0.0;
                ws.coefs.theta.row(j).setZero();
                ws.r.swap(r_partial);
                return true;
            }
        }
    }

    // (b) closed-form beta with theta pinned at zero
    const double g_part = x.dot(r_partial) * inv_n;
    double b_new = ws.x_sq[j] > 0.0 ? soft_threshold(g_part, c) / (ws.x_sq[j] * inv_n) : 0.0;
    Vector t_new = Vector::Zero(ws.prob.k());
    bool settled = false;
    if (b_new != 0.0) {
        const Vector res_b = r_partial - x * b_new;
        const Vector g_t = (ws.prob.z.transpose() * x.cwiseProduct(res_b)) * inv_n;
        settled = soft_threshold(g_t, a).norm() <= c;
    }

    // (c) joint proximal-gradient solve
    if (!settled) {
        if (!have_w) ws.materialize_w(j);
        double b_c = was_zero ? b_new : b;
        Vector t_c = was_zero ? Vector(Vector::Zero(ws.prob.k())) : t;
        solve_block_full(ws, j, r_partial, c, a, b_c, t_c);
        if (b_c == 0.0 && !t_c.isZero(0.0)) {
            // numerically degenerate corner; keep the hierarchy exact
            t_c.setZero();
            b_c = ws.x_sq[j] > 0.0 ? soft_threshold(g_part, c) / (ws.x_sq[j] * inv_n) : 0.0;
        }
        b_new = b_c;
        t_new.swap(t_c);
    }

    if (b_new == b && t_new == t) return false;
    ws.r.swap(r_partial);
    if (b_new != 0.0) ws.r.noalias() -= x * b_new;
    if (!t_new.isZero(0.0)) ws.r.noalias() -= ws.w * t_new;
    ws.coefs.beta[j] = b_new;
    ws.coefs.theta.row(j) = t_new.transpose();
    return true;
}

void full_sweep(Workspace& ws) {
    for (Index j = 0; j < ws.prob.p(); ++j) update_block(ws, j);
}

void active_sweep(Workspace& ws) {
    for (Index j = 0; j < ws.prob.p(); ++j) {
        if (ws.coefs.beta[j] != 0.0 || !ws.coefs.theta.row(j).isZero(0.0)) update_block(ws, j);
    }
}

std::vector<KktViolation> kkt_violations(const PliableProblem& prob, const PliableCoefs& coefs,
                                         double lambda, double tol) {
    const double inv_n = 1.0 / static_cast<double>(prob.n_obs);
    Vector r = prob.y - prob.x * coefs.beta;
    for (Index j = 0; j < prob.p(); ++j) {
        if (!coefs.theta.row(j).isZero(0.0)) {
            r.noalias() -= (prob.z * coefs.theta.row(j).transpose()).cwiseProduct(prob.x.col(j));
        }
    }
    std::vector<KktViolation> out;
    for (Index j = 0; j < prob.p(); ++j) {
        const double pf = prob.penalty_factors[j];
        const double c = (1.0 - prob.alpha) * lambda * pf;
        const double a = prob.alpha * lambda * pf;
        const double grad_b = -prob.x.col(j).dot(r) * inv_n;
        const Vector grad_t = -(prob.z.transpose() * prob.x.col(j).cwiseProduct(r)) * inv_n;
        const double viol = block_kkt_violation(coefs.beta[j], coefs.theta.row(j).transpose(),
                                                grad_b, grad_t, c, a);
        if (viol > tol) out.push_back({j, viol});
    }
    return out;
}

}  // namespace

Vector lambda_path(const PliableProblem& problem, const SolverConfig& config) {
    validate_problem(problem);
    config.validate();
    const ZeroGradients g = gradients_at_zero(problem);
    double lmax = 0.0;
    for (Index j = 0; j < problem.p(); ++j) {
        lmax = std::max(lmax, block_lambda_max(problem.alpha, problem.penalty_factors[j],
                                               g.g_beta[j], g.g_theta.row(j).transpose()));
    }
    if (!(lmax > 0.0))
        throw SolverError("degenerate lambda path: zero solution is optimal at lambda = 0 "
                          "(is y identically zero?)");
    // guard against last-ulp infeasibility at the max over blocks
    for (int bump = 0; bump < 32; ++bump) {
        bool ok = true;
        for (Index j = 0; j < problem.p() && ok; ++j) {
            ok = zero_feasible_at(lmax, problem.alpha, problem.penalty_factors[j], g.g_beta[j],
                                  g.g_theta.row(j).transpose());
        }
        if (ok) break;
        lmax *= 1.0 + 1e-12;
    }

    const double ratio = config.resolve_lambda_min_ratio(problem.n_obs, problem.p());
    const int m = config.n_lambda;
    Vector path(m);
    if (m == 1) {
        path[0] = lmax;
        return path;
    }
    const double log_max = std::log(lmax);
    const double log_min = std::log(lmax * ratio);
    for (int i = 0; i < m; ++i) {
        path[i] = std::exp(log_max + (log_min - log_max) * i / (m - 1));
    }
    path[0] = lmax;
    return path;
}

PliableFit fit_path(const PliableProblem& problem, const Vector& lambdas,
                    const SolverConfig& config) {
    validate_problem(problem);
    config.validate();
    if (lambdas.size() == 0) throw ConfigError("empty lambda path");
    for (Index i = 0; i < lambdas.size(); ++i) {
        if (!(lambdas[i] > 0.0)) throw ConfigError("lambda values must be positive");
        if (i > 0 && !(lambdas[i] < lambdas[i - 1]))
            throw ConfigError("lambda path must be strictly decreasing");
    }

    Workspace ws(problem, config);
    PliableFit fit;
    fit.alpha = problem.alpha;
    fit.prep.y_center = 0.0;
    fit.path.reserve(static_cast<size_t>(lambdas.size()));

    for (Index li = 0; li < lambdas.size(); ++li) {
        ws.lambda = lambdas[li];
        int sweeps = 0;
        bool converged = false;
        double obj = ws.objective();
        while (sweeps < config.max_iter) {
            full_sweep(ws);
            ++sweeps;
            double new_obj = ws.objective();
            if (config.check_monotone && new_obj > obj + 1e-9 * (1.0 + std::abs(obj)))
                throw SolverError("objective increased across a sweep");
            // cheap refinement on the currently-active blocks
            while (sweeps < config.max_iter &&
                   std::abs(new_obj - obj) > config.conv_tol * (std::abs(new_obj) + 1e-12)) {
                obj = new_obj;
                active_sweep(ws);
                ++sweeps;
                new_obj = ws.objective();
                if (config.check_monotone && new_obj > obj + 1e-9 * (1.0 + std::abs(obj)))
                    throw SolverError("objective increased across a sweep");
            }
            obj = new_obj;
            ws.refresh_residual();
            if (kkt_violations(problem, ws.coefs, ws.lambda, 0.5 * config.kkt_tol).empty()) {
                converged = true;
                break;
            }
        }
        fit.path.push_back({ws.lambda, ws.coefs, ws.objective(), sweeps, converged});
    }
    return fit;
}

std::vector<KktViolation> kkt_check(const PliableProblem& problem, const PliableCoefs& coefs,
                                    double lambda, const SolverConfig& config) {
    validate_problem(problem);
    if (coefs.p() != problem.p() || coefs.k() != problem.k())
        throw DataError("kkt_check: coefficient dimensions do not match problem");
    return kkt_violations(problem, coefs, lambda, config.kkt_tol);
}

}  // namespace coopliable
