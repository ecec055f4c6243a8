#pragma once

#include "coopliable/types.hpp"

namespace coopliable {

struct PrepareOptions {
    bool standardize_x = true;
    bool standardize_z = false;
};

/// Throws DataError naming the offending matrix/column on non-finite input
/// or inconsistent dimensions.
void validate(const MultiViewData& data);

/// Centers y to mean zero and (optionally) centers/scales feature columns.
/// Zero-variance columns keep scale 1 and are flagged in the record.
std::pair<MultiViewData, PreprocessRecord> prepare(const MultiViewData& data,
                                                   const PrepareOptions& opts = {});

/// Inverse of ColumnTransform::apply, used by tests and exports.
Matrix destandardize(const Matrix& x, const ColumnTransform& t);

}  // namespace coopliable
