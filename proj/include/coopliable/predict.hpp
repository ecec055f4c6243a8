#pragma once

#include "coopliable/types.hpp"

namespace coopliable {

/// sum_j X_j (beta_j + Z theta_j) on already-transformed inputs, no shift.
Vector predict_centered(const PliableCoefs& coefs, const Matrix& x, const Matrix& z);

/// Prediction on raw inputs: applies the stored transforms, then shifts by
/// y_center. `xt` selects which transform block of the record applies to x.
Vector predict(const PliableCoefs& coefs, const Matrix& x, const Matrix& z,
               const ColumnTransform& xt, const ColumnTransform& zt, double y_center);

/// Two-source prediction for a cooperative fit (y_center added once).
Vector predict(const CoopFit& fit, const Matrix& x1, const Matrix& x2, const Matrix& z,
               const PreprocessRecord& rec);

}  // namespace coopliable
