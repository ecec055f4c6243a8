#pragma once

#include "coopliable/types.hpp"

namespace coopliable {

/// A cross-validated pliable fit plus the path it was selected from.
/// source is 1 or 2 for the single-view fits, 0 for early fusion.
struct SingleFit {
    PliableFit fit;
    CvResult cv;
    int source = 0;

    const PliableCoefs& selected() const {
        return fit.path[static_cast<size_t>(cv.lambda_min_index)].coefs;
    }
    double lambda() const { return cv.lambda_min(); }
};

/// Per-source models combined through a least-squares blend of their
/// out-of-fold training predictions.
struct LateFusionFit {
    SingleFit fit1;
    SingleFit fit2;
    double w1 = 0.5;
    double w2 = 0.5;
    bool fallback = false;          // collinear combiner; equal weights used
    bool combiner_from_oof = true;  // weights come from out-of-fold predictions
    Vector oof1;
    Vector oof2;
};

SingleFit fit_single(const MultiViewData& data, int source, const SolverConfig& config,
                     const std::vector<int>& folds);
SingleFit fit_single(const MultiViewData& data, int source, const SolverConfig& config,
                     const FoldSpec& fold_spec);

SingleFit fit_early_fusion(const MultiViewData& data, const SolverConfig& config,
                           const std::vector<int>& folds);
SingleFit fit_early_fusion(const MultiViewData& data, const SolverConfig& config,
                           const FoldSpec& fold_spec);

LateFusionFit fit_late_fusion(const MultiViewData& data, const SolverConfig& config,
                              const std::vector<int>& folds);
LateFusionFit fit_late_fusion(const MultiViewData& data, const SolverConfig& config,
                              const FoldSpec& fold_spec);

/// Normal-equation solve for the two combiner weights; exposed for tests.
/// Returns {w1, w2, fallback}.
std::tuple<double, double, bool> combine_predictions(const Vector& f1, const Vector& f2,
                                                     const Vector& y);

/// Centered-scale prediction of a late-fusion model on prepared inputs.
Vector predict_centered(const LateFusionFit& fit, const Matrix& x1, const Matrix& x2,
                        const Matrix& z);

}  // namespace coopliable
