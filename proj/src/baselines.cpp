#include "coopliable/baselines.hpp"

#include <cmath>

#include "coopliable/augment.hpp"
#include "coopliable/coop.hpp"
#include "coopliable/cv.hpp"
#include "coopliable/predict.hpp"
#include "coopliable/solver.hpp"

namespace coopliable {

namespace {

SingleFit cv_and_refit(const PliableProblem& problem, const SolverConfig& config,
                       const std::vector<int>& folds, int source) {
    SingleFit out;
    out.source = source;
    out.cv = cv_fit(problem, folds, config);
    out.fit = fit_path(problem, out.cv.lambdas, config);
    for (const auto& pt : out.fit.path) {
        if (!pt.converged)
            throw SolverError("solver did not converge (lambda " + std::to_string(pt.lambda) +
                              ")");
    }
    return out;
}

}  // namespace

SingleFit fit_single(const MultiViewData& data, int source, const SolverConfig& config,
                     const std::vector<int>& folds) {
    require_prepared(data);
    return cv_and_refit(single_problem(data, source, config.alpha), config, folds, source);
}

SingleFit fit_single(const MultiViewData& data, int source, const SolverConfig& config,
                     const FoldSpec& fold_spec) {
    return fit_single(data, source, config, make_folds(data.n(), fold_spec));
}

SingleFit fit_early_fusion(const MultiViewData& data, const SolverConfig& config,
                           const std::vector<int>& folds) {
    require_prepared(data);
    return cv_and_refit(concat_problem(data, config.alpha), config, folds, 0);
}

SingleFit fit_early_fusion(const MultiViewData& data, const SolverConfig& config,
                           const FoldSpec& fold_spec) {
    return fit_early_fusion(data, config, make_folds(data.n(), fold_spec));
}

std::tuple<double, double, bool> combine_predictions(const Vector& f1, const Vector& f2,
                                                     const Vector& y) {
    if (f1.size() != y.size() || f2.size() != y.size())
        throw DataError("combiner inputs must share the training length");
    const double n1 = f1.squaredNorm();
    const double n2 = f2.squaredNorm();
    if (n1 == 0.0 && n2 == 0.0) return {0.5, 0.5, true};
    if (n2 == 0.0) return {f1.dot(y) / n1, 0.0, false};
    if (n1 == 0.0) return {0.0, f2.dot(y) / n2, false};
    const double cross = f1.dot(f2);
    const double det = n1 * n2 - cross * cross;
    if (det <= 1e-12 * n1 * n2) return {0.5, 0.5, true};
    const double b1 = f1.dot(y);
    const double b2 = f2.dot(y);
    return {(n2 * b1 - cross * b2) / det, (n1 * b2 - cross * b1) / det, false};
}

LateFusionFit fit_late_fusion(const MultiViewData& data, const SolverConfig& config,
                              const std::vector<int>& folds) {
    require_prepared(data);
    LateFusionFit out;
    out.fit1 = fit_single(data, 1, config, folds);
    out.fit2 = fit_single(data, 2, config, folds);
    out.oof1 = out.fit1.cv.oof.col(out.fit1.cv.lambda_min_index);
    out.oof2 = out.fit2.cv.oof.col(out.fit2.cv.lambda_min_index);
    std::tie(out.w1, out.w2, out.fallback) = combine_predictions(out.oof1, out.oof2, data.y);
    out.combiner_from_oof = true;
    return out;
}

LateFusionFit fit_late_fusion(const MultiViewData& data, const SolverConfig& config,
                              const FoldSpec& fold_spec) {
    return fit_late_fusion(data, config, make_folds(data.n(), fold_spec));
}

Vector predict_centered(const LateFusionFit& fit, const Matrix& x1, const Matrix& x2,
                        const Matrix& z) {
    return fit.w1 * predict_centered(fit.fit1.selected(), x1, z) +
           fit.w2 * predict_centered(fit.fit2.selected(), x2, z);
}

}  // namespace coopliable
