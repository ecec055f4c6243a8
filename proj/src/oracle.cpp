#include "coopliable/oracle.hpp"

#include <cmath>

#include "coopliable/predict.hpp"

namespace coopliable {

namespace {

struct Gradients {
    Vector g_beta;   // p
    Matrix g_theta;  // p x K
};

Gradients smooth_gradient(const PliableProblem& prob, const Vector& r) {
    const double inv_n = 1.0 / static_cast<double>(prob.n_obs);
    Gradients g;
    g.g_beta = -(prob.x.transpose() * r) * inv_n;
    g.g_theta.resize(prob.p(), prob.k());
    for (Index j = 0; j < prob.p(); ++j) {
        g.g_theta.row(j) = -(prob.z.transpose() * prob.x.col(j).cwiseProduct(r)) * inv_n;
    }
    return g;
}

PliableCoefs prox_all(const PliableProblem& prob, const PliableCoefs& point, double step,
                      double lambda) {
    PliableCoefs out = PliableCoefs::zero(prob.p(), prob.k());
    for (Index j = 0; j < prob.p(); ++j) {
        const double pf = prob.penalty_factors[j];
        const double c = (1.0 - prob.alpha) * lambda * pf;
        const double a = prob.alpha * lambda * pf;
        auto [b, t] = prox_block(point.beta[j], point.theta.row(j).transpose(), step, c, a);
        out.beta[j] = b;
        out.theta.row(j) = t.transpose();
    }
    return out;
}

}  // namespace

PliableCoefs oracle_solve(const PliableProblem& problem, double lambda,
                          const OracleOptions& opts, bool* converged) {
    const double inv_n = 1.0 / static_cast<double>(problem.n_obs);
    const Index p = problem.p(), k = problem.k();

    // crude global Lipschitz bound: ||[X W]||_F^2 / n
    double lip = problem.x.squaredNorm();
    for (Index j = 0; j < p; ++j) {
        lip += (problem.z.array().colwise() * problem.x.col(j).array()).matrix().squaredNorm();
    }
    lip *= inv_n;
    double step = lip > 0.0 ? 1.0 / lip : 1.0;

    PliableCoefs coefs = PliableCoefs::zero(p, k);
    Vector r = problem.y;
    double f = 0.5 * r.squaredNorm() * inv_n;
    const double scale = 1.0 + problem.y.cwiseAbs().maxCoeff();
    bool ok = false;

    for (int it = 0; it < opts.max_iter; ++it) {
        const Gradients g = smooth_gradient(problem, r);
        PliableCoefs next;
        Vector r_next;
        double f_next = 0.0;
        while (true) {
            PliableCoefs moved{coefs.beta - step * g.g_beta, coefs.theta - step * g.g_theta};
            next = prox_all(problem, moved, step, lambda);
            r_next = problem.y - predict_centered(next, problem.x, problem.z);
            f_next = 0.5 * r_next.squaredNorm() * inv_n;
            const Vector db = next.beta - coefs.beta;
            const Matrix dt = next.theta - coefs.theta;
            const double lin = g.g_beta.dot(db) + (g.g_theta.array() * dt.array()).sum();
            const double quad = 0.5 * (db.squaredNorm() + dt.squaredNorm()) / step;
            if (f_next <= f + lin + quad + 1e-14 * (1.0 + std::abs(f))) break;
            step *= 0.5;
            if (step < 1e-18) break;
        }
        const double move = std::sqrt((next.beta - coefs.beta).squaredNorm() +
                                      (next.theta - coefs.theta).squaredNorm());
        coefs = std::move(next);
        r.swap(r_next);
        f = f_next;
        if (move / step <= opts.tol * scale) {  // gradient-mapping norm
            ok = true;
            break;
        }
        step = std::min(step * 1.1, lip > 0.0 ? 10.0 / lip : 1e6);
    }
    if (converged) *converged = ok;
    return coefs;
}

}  // namespace coopliable
