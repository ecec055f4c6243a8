#include "coopliable/prepare.hpp"

#include <cmath>

namespace coopliable {

Matrix ColumnTransform::apply(const Matrix& x) const {
    if (x.cols() != center.size()) {
        throw DataError("column transform: expected " + std::to_string(center.size()) +
                        " columns, got " + std::to_string(x.cols()));
    }
    Matrix out = x.rowwise() - center.transpose();
    out.array().rowwise() /= scale.transpose().array();
    return out;
}

Matrix destandardize(const Matrix& x, const ColumnTransform& t) {
    Matrix out = x.array().rowwise() * t.scale.transpose().array();
    out.rowwise() += t.center.transpose();
    return out;
}

bool hierarchy_holds(const PliableCoefs& coefs) {
    for (Index j = 0; j < coefs.p(); ++j) {
        if (coefs.beta[j] == 0.0 && (coefs.theta.row(j).array() != 0.0).any()) return false;
    }
    return true;
}

void SolverConfig::validate() const {
    if (n_lambda < 1) throw ConfigError("n_lambda must be >= 1");
    if (lambda_min_ratio && (*lambda_min_ratio <= 0.0 || *lambda_min_ratio >= 1.0))
        throw ConfigError("lambda_min_ratio must be in (0,1)");
    if (alpha < 0.0 || alpha > 1.0) throw ConfigError("alpha must be in [0,1]");
    if (max_iter < 1) throw ConfigError("max_iter must be positive");
    if (conv_tol <= 0.0 || kkt_tol <= 0.0) throw ConfigError("tolerances must be positive");
    if (inner_max_iter < 1) throw ConfigError("inner_max_iter must be positive");
    if (bt_shrink <= 0.0 || bt_shrink >= 1.0) throw ConfigError("bt_shrink must be in (0,1)");
    if (bt_grow < 1.0) throw ConfigError("bt_grow must be >= 1");
}

void RhoGrid::validate() const {
    if (values.empty()) throw ConfigError("rho grid is empty");
    double prev = -1.0;
    for (double v : values) {
        if (!std::isfinite(v) || v < 0.0) throw ConfigError("rho values must be finite and nonnegative");
        if (v < prev) throw ConfigError("rho grid must be nondecreasing");
        prev = v;
    }
}

namespace {

void check_finite(const Matrix& m, const char* name) {
    for (Index j = 0; j < m.cols(); ++j) {
        if (!m.col(j).allFinite()) {
            throw DataError(std::string(name) + ": non-finite value in column " +
                            std::to_string(j));
        }
    }
}

// Sample SD (ddof 1); zero-variance columns get scale 1 and a flag.
ColumnTransform fit_transform(const Matrix& x, bool standardize) {
    const Index n = x.rows(), p = x.cols();
    ColumnTransform t;
    t.center = x.colwise().mean();
    t.scale = Vector::Ones(p);
    t.zero_variance.assign(static_cast<size_t>(p), false);
    t.standardized = standardize;
    if (!standardize) {
        t.center.setZero();
        return t;
    }
    for (Index j = 0; j < p; ++j) {
        const double ss = (x.col(j).array() - t.center[j]).square().sum();
        const double sd = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
        if (sd > 0.0) {
            t.scale[j] = sd;
        } else {
            t.zero_variance[static_cast<size_t>(j)] = true;
        }
    }
    return t;
}

}  // namespace

void validate(const MultiViewData& data) {
    const Index n = data.y.size();
    if (n < 2) throw DataError("need at least 2 observations");
    if (data.x1.cols() < 1 || data.x2.cols() < 1 || data.z.cols() < 1)
        throw DataError("x1, x2 and z each need at least one column");
    if (data.x1.rows() != n || data.x2.rows() != n || data.z.rows() != n)
        throw DataError("row counts of x1, x2, z and y must agree");
    check_finite(data.x1, "x1");
    check_finite(data.x2, "x2");
    check_finite(data.z, "z");
    if (!data.y.allFinite()) throw DataError("y: non-finite value");
}

std::pair<MultiViewData, PreprocessRecord> prepare(const MultiViewData& data,
                                                   const PrepareOptions& opts) {
    validate(data);
    PreprocessRecord rec;
    rec.x1 = fit_transform(data.x1, opts.standardize_x);
    rec.x2 = fit_transform(data.x2, opts.standardize_x);
    rec.z = fit_transform(data.z, opts.standardize_z);
    rec.y_center = data.y.mean();

    MultiViewData out;
    out.x1 = rec.x1.apply(data.x1);
    out.x2 = rec.x2.apply(data.x2);
    out.z = rec.z.apply(data.z);
    out.y = data.y.array() - rec.y_center;
    return {std::move(out), std::move(rec)};
}

}  // namespace coopliable
