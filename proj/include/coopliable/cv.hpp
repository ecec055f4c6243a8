#pragma once

#include "coopliable/types.hpp"

namespace coopliable {

/// Deterministic fold assignment over n rows. Balanced sizes (differ by at
/// most one) without grouping; with grouping, all rows sharing a group id
/// land in the same fold.
std::vector<int> make_folds(Index n, const FoldSpec& spec);

/// Index of the minimum mean error; ties resolve toward the earlier index,
/// i.e. the larger lambda on a decreasing path.
Index select_lambda(const Vector& mean_error);

/// Cross-validated path fit. The lambda path is computed on the full
/// problem (or taken from `lambdas` when nonempty) and held fixed across
/// folds. For augmented problems, folds are defined on the original rows,
/// each row's agreement twin joins its fold, and held-out error is
/// evaluated on the top block only.
CvResult cv_fit(const PliableProblem& problem, const std::vector<int>& folds,
                const SolverConfig& config, const Vector& lambdas = Vector());

/// Row subset of a problem, keyed by original (top-block) rows; agreement
/// twins follow automatically. Exposed for tests.
PliableProblem subset_problem(const PliableProblem& problem, const std::vector<Index>& top_rows);

}  // namespace coopliable
