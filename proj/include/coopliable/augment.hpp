#pragma once

#include "coopliable/types.hpp"

namespace coopliable {

/// The 2n-row stacked problem whose pliable objective equals the
/// cooperative objective at matching split coefficients:
///   X~ = [[X1, X2], [-sqrt(rho) X1, sqrt(rho) X2]],  Z~ = [Z; 0],  y~ = [y; 0].
/// Loss normalization stays at the original n so the identity is exact.
PliableProblem build_augmented(const MultiViewData& data, double rho, double alpha = 0.5,
                               Vector penalty_factors = Vector());

/// Plain early-fusion problem on [X1 X2] (the rho = 0 case without the
/// vacuous zero rows).
PliableProblem concat_problem(const MultiViewData& data, double alpha = 0.5,
                              Vector penalty_factors = Vector());

/// Single-source problem on (X_source, Z, y); source is 1 or 2.
PliableProblem single_problem(const MultiViewData& data, int source, double alpha = 0.5);

/// Split stacked coefficients into the (p1, p2) source blocks.
std::pair<PliableCoefs, PliableCoefs> split_coefs(const PliableCoefs& stacked, Index p1);

PliableCoefs merge_coefs(const PliableCoefs& c1, const PliableCoefs& c2);

}  // namespace coopliable
