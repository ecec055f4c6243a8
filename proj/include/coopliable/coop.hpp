#pragma once

#include "coopliable/types.hpp"

namespace coopliable {

/// Cooperative fit: per rho, cross-validate the (rho = 0: concatenated,
/// rho > 0: augmented) pliable problem over a lambda path shared across the
/// grid, reusing one fold assignment throughout; select (rho, lambda) at the
/// minimum CV error (ties toward smaller rho / larger lambda) and refit on
/// the full data. Requires prepared (centered-y) data.
CoopFit fit_coop(const MultiViewData& data, const RhoGrid& rho_grid, const SolverConfig& config,
                 const FoldSpec& fold_spec, int workers = 1);

/// Adaptive variant: single-source cross-validations pick lambda_1 and
/// lambda_2 first; the stacked problem then carries penalty factor 1 on the
/// first p1 features and lambda_2/lambda_1 on the rest.
CoopFit fit_adaptive_coop(const MultiViewData& data, const RhoGrid& rho_grid,
                          const SolverConfig& config, const FoldSpec& fold_spec,
                          int workers = 1);

/// Throws unless y was centered by prepare().
void require_prepared(const MultiViewData& data);

}  // namespace coopliable
