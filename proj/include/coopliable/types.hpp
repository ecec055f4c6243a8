#pragma once

#include <Eigen/Dense>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace coopliable {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

struct DataError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Two feature views, shared modifiers and response.
struct MultiViewData {
    Matrix x1;  // n x p1
    Matrix x2;  // n x p2
    Matrix z;   // n x K
    Vector y;   // n

    Index n() const { return y.size(); }
    Index p1() const { return x1.cols(); }
    Index p2() const { return x2.cols(); }
    Index k() const { return z.cols(); }
};

/// Centering/scaling applied to one matrix; scale == 1 for untouched or
/// zero-variance columns.
struct ColumnTransform {
    Vector center;
    Vector scale;
    std::vector<bool> zero_variance;
    bool standardized = false;

    Matrix apply(const Matrix& x) const;
};

/// Everything needed to map raw inputs onto the fitted (centered) scale
/// and predictions back.
struct PreprocessRecord {
    ColumnTransform x1;
    ColumnTransform x2;
    ColumnTransform z;
    double y_center = 0.0;
};

/// One pliable-lasso instance on the fitted scale. The cooperative
/// reduction produces one of these with 2*n_top rows; rows [n_top, rows)
/// are the agreement rows and row n_top + i is the twin of row i.
struct PliableProblem {
    Matrix x;                // N x p
    Matrix z;                // N x K
    Vector y;                // N, centered (zero on agreement rows)
    Vector penalty_factors;  // p, strictly positive
    double alpha = 0.5;
    Index n_obs = 0;  // loss normalization count; original n for augmented problems
    Index n_top = 0;  // rows carrying real responses; == rows() unless augmented

    Index rows() const { return x.rows(); }
    Index p() const { return x.cols(); }
    Index k() const { return z.cols(); }
    bool augmented() const { return n_top != rows(); }
};

/// Main effects and their modifier interactions for one problem.
struct PliableCoefs {
    Vector beta;   // p
    Matrix theta;  // p x K

    static PliableCoefs zero(Index p, Index k) {
        return {Vector::Zero(p), Matrix::Zero(p, k)};
    }
    Index p() const { return beta.size(); }
    Index k() const { return theta.cols(); }
};

/// theta_j may be nonzero only where beta_j is nonzero.
bool hierarchy_holds(const PliableCoefs& coefs);

struct SolverConfig {
    int n_lambda = 50;
    // resolved to 0.01 when N > p, else 0.05
    std::optional<double> lambda_min_ratio;
    double alpha = 0.5;
    int max_iter = 10000;       // total block sweeps per lambda
    double conv_tol = 1e-5;     // relative objective change
    double kkt_tol = 1e-4;      // max-norm stationarity residual
    int inner_max_iter = 200;   // proximal-gradient steps per block visit
    double bt_shrink = 0.5;     // backtracking step shrink factor
    double bt_grow = 2.0;       // step growth between accepted inner steps
    bool check_monotone = false; // assert objective decrease every sweep

    double resolve_lambda_min_ratio(Index n, Index p) const {
        if (lambda_min_ratio) return *lambda_min_ratio;
        return n > p ? 0.01 : 0.05;
    }
    void validate() const;
};

struct PathPoint {
    double lambda = 0.0;
    PliableCoefs coefs;
    double objective = 0.0;
    int sweeps = 0;
    bool converged = true;
};

/// Warm-started fit along a decreasing lambda path.
struct PliableFit {
    std::vector<PathPoint> path;
    double alpha = 0.5;
    PreprocessRecord prep;  // identity unless attached by the caller
};

struct FoldSpec {
    int n_folds = 5;
    unsigned long long seed = 0;
    std::optional<std::vector<long long>> groups;  // length n when present
};

struct CvResult {
    Vector lambdas;        // the fixed path, decreasing
    Vector mean_error;     // per lambda, mean of fold MSEs
    Vector se_error;       // per lambda, SE across folds
    Matrix fold_errors;    // n_folds x n_lambda
    Matrix oof;            // n_top x n_lambda out-of-fold predictions
    Index lambda_min_index = 0;

    double lambda_min() const { return lambdas[lambda_min_index]; }
    double cv_min() const { return mean_error[lambda_min_index]; }
};

/// Nondecreasing nonnegative grid of agreement weights.
struct RhoGrid {
    std::vector<double> values{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    void validate() const;
};

/// Selected cooperative model plus the CV surface it was selected from.
struct CoopFit {
    Vector beta1;
    Matrix theta1;
    Vector beta2;
    Matrix theta2;
    double rho = 0.0;
    double lambda = 0.0;
    double alpha = 0.5;
    std::vector<double> rho_values;
    Vector lambda_values;
    Matrix cv_surface;  // n_rho x n_lambda mean CV error
    Matrix cv_se;       // matching standard errors
    std::vector<int> folds;   // the shared fold assignment
    Index rho_index = 0;
    Index lambda_index = 0;
    Vector penalty_factors;   // on the augmented problem (adaptive != 1)
    PliableFit full_fit;      // full-data path fit at the selected rho
};

}  // namespace coopliable
