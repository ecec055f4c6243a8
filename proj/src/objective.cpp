#include "coopliable/objective.hpp"

#include "coopliable/predict.hpp"

namespace coopliable {

double block_penalty(double beta_j, const Vector& theta_j, double c, double a) {
    const double joint = std::sqrt(beta_j * beta_j + theta_j.squaredNorm());
    return c * (joint + theta_j.norm()) + a * theta_j.template lpNorm<1>();
}

double penalty_value(const PliableProblem& problem, const PliableCoefs& coefs, double lambda) {
    double total = 0.0;
    for (Index j = 0; j < problem.p(); ++j) {
        const double pf = problem.penalty_factors[j];
        const double c = (1.0 - problem.alpha) * lambda * pf;
        const double a = problem.alpha * lambda * pf;
        total += block_penalty(coefs.beta[j], coefs.theta.row(j).transpose(), c, a);
    }
    return total;
}

double pliable_objective(const PliableProblem& problem, const PliableCoefs& coefs,
                         double lambda) {
    if (coefs.p() != problem.p() || coefs.k() != problem.k())
        throw DataError("objective: coefficient dimensions do not match problem");
    const Vector r = problem.y - predict_centered(coefs, problem.x, problem.z);
    return r.squaredNorm() / (2.0 * static_cast<double>(problem.n_obs)) +
           penalty_value(problem, coefs, lambda);
}

double coop_objective(const MultiViewData& data, const PliableCoefs& coefs1,
                      const PliableCoefs& coefs2, double rho, double lambda, double alpha,
                      const Vector& pf1, const Vector& pf2) {
    if (rho < 0.0) throw ConfigError("rho must be nonnegative");
    if (coefs1.p() != data.p1() || coefs2.p() != data.p2() || coefs1.k() != data.k() ||
        coefs2.k() != data.k())
        throw DataError("coop objective: coefficient dimensions do not match data");
    const double n = static_cast<double>(data.n());

    const Vector f1 = predict_centered(coefs1, data.x1, data.z);
    const Vector f2 = predict_centered(coefs2, data.x2, data.z);
    const double fit_term = (data.y - f1 - f2).squaredNorm() / (2.0 * n);
    // agreement on main effects only, interactions excluded
    const double agree = rho * (data.x1 * coefs1.beta - data.x2 * coefs2.beta).squaredNorm() /
                         (2.0 * n);

    auto source_penalty = [&](const PliableCoefs& coefs, const Vector& pf) {
        double total = 0.0;
        for (Index j = 0; j < coefs.p(); ++j) {
            const double f = pf.size() ? pf[j] : 1.0;
            total += block_penalty(coefs.beta[j], coefs.theta.row(j).transpose(),
                                   (1.0 - alpha) * lambda * f, alpha * lambda * f);
        }
        return total;
    };
    return fit_term + agree + source_penalty(coefs1, pf1) + source_penalty(coefs2, pf2);
}

}  // namespace coopliable
