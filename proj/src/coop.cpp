#include "coopliable/coop.hpp"

#include <cmath>

#include "coopliable/augment.hpp"
#include "coopliable/cv.hpp"
#include "coopliable/parallel.hpp"
#include "coopliable/solver.hpp"

namespace coopliable {

void require_prepared(const MultiViewData& data) {
    const double scale = std::max(1.0, data.y.cwiseAbs().maxCoeff());
    if (std::abs(data.y.mean()) > 1e-8 * scale)
        throw DataError("y is not centered; run prepare() first");
}

namespace {

CoopFit fit_coop_impl(const MultiViewData& data, const RhoGrid& rho_grid,
                      const SolverConfig& config, const std::vector<int>& folds,
                      const Vector& penalty_factors, int workers) {
    rho_grid.validate();
    const Index n_rho = static_cast<Index>(rho_grid.values.size());

    // rho = 0 makes the agreement rows vacuous, so it is solved on the plain
    // concatenated design; the zero-padded form is the same problem.
    auto problem_for = [&](double rho) {
        return rho == 0.0 ? concat_problem(data, config.alpha, penalty_factors)
                          : build_augmented(data, rho, config.alpha, penalty_factors);
    };

    // The screen quantities at zero coefficients do not touch the agreement
    // rows, so one path computed on the concatenated problem serves the
    // whole grid and keeps the CV surface on a common lambda axis.
    const Vector lambdas =
        lambda_path(concat_problem(data, config.alpha, penalty_factors), config);

    std::vector<CvResult> cv_per_rho(static_cast<size_t>(n_rho));
    parallel_for(n_rho, workers, [&](Index ri) {
        const double rho = rho_grid.values[static_cast<size_t>(ri)];
        try {
            cv_per_rho[static_cast<size_t>(ri)] = cv_fit(problem_for(rho), folds, config, lambdas);
        } catch (const SolverError& e) {
            throw SolverError(std::string(e.what()) + " (rho " + std::to_string(rho) + ")");
        }
    });

    // minimum CV error over the grid; ties keep the smaller rho
    Index best = 0;
    for (Index ri = 1; ri < n_rho; ++ri) {
        if (cv_per_rho[static_cast<size_t>(ri)].cv_min() <
            cv_per_rho[static_cast<size_t>(best)].cv_min())
            best = ri;
    }
    const double rho_star = rho_grid.values[static_cast<size_t>(best)];
    const Index li = cv_per_rho[static_cast<size_t>(best)].lambda_min_index;

    PliableFit full = fit_path(problem_for(rho_star), lambdas, config);
    for (const auto& pt : full.path) {
        if (!pt.converged)
            throw SolverError("solver did not converge (rho " + std::to_string(rho_star) +
                              ", lambda " + std::to_string(pt.lambda) + ")");
    }

    CoopFit fit;
    auto [c1, c2] = split_coefs(full.path[static_cast<size_t>(li)].coefs, data.p1());
    fit.beta1 = std::move(c1.beta);
    fit.theta1 = std::move(c1.theta);
    fit.beta2 = std::move(c2.beta);
    fit.theta2 = std::move(c2.theta);
    fit.rho = rho_star;
    fit.lambda = lambdas[li];
    fit.alpha = config.alpha;
    fit.rho_values = rho_grid.values;
    fit.lambda_values = lambdas;
    fit.cv_surface.resize(n_rho, lambdas.size());
    fit.cv_se.resize(n_rho, lambdas.size());
    for (Index ri = 0; ri < n_rho; ++ri) {
        fit.cv_surface.row(ri) = cv_per_rho[static_cast<size_t>(ri)].mean_error;
        fit.cv_se.row(ri) = cv_per_rho[static_cast<size_t>(ri)].se_error;
    }
    fit.folds = folds;
    fit.rho_index = best;
    fit.lambda_index = li;
    fit.penalty_factors =
        penalty_factors.size() ? penalty_factors : Vector::Ones(data.p1() + data.p2());
    fit.full_fit = std::move(full);
    return fit;
}

}  // namespace

CoopFit fit_coop(const MultiViewData& data, const RhoGrid& rho_grid, const SolverConfig& config,
                 const FoldSpec& fold_spec, int workers) {
    require_prepared(data);
    const std::vector<int> folds = make_folds(data.n(), fold_spec);
    return fit_coop_impl(data, rho_grid, config, folds, Vector(), workers);
}

CoopFit fit_adaptive_coop(const MultiViewData& data, const RhoGrid& rho_grid,
                          const SolverConfig& config, const FoldSpec& fold_spec, int workers) {
    require_prepared(data);
    const std::vector<int> folds = make_folds(data.n(), fold_spec);

    // The single-source selections do not depend on rho, so they run once
    // up front with the shared folds.
    const CvResult cv1 = cv_fit(single_problem(data, 1, config.alpha), folds, config);
    const CvResult cv2 = cv_fit(single_problem(data, 2, config.alpha), folds, config);
    const double lambda1 = cv1.lambda_min();
    const double lambda2 = cv2.lambda_min();
    if (!(lambda1 > 0.0))
        throw SolverError("adaptive fit: degenerate penalty ratio (lambda_1 = 0)");

    Vector pf(data.p1() + data.p2());
    pf.head(data.p1()).setOnes();
    pf.tail(data.p2()).setConstant(lambda2 / lambda1);
    return fit_coop_impl(data, rho_grid, config, folds, pf, workers);
}

}  // namespace coopliable
