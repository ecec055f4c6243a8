#pragma once

#include <string>
#include <tuple>

#include "coopliable/types.hpp"

namespace coopliable {

/// Sparsity pattern of the true coefficients: alternating-sign main effects
/// on the leading features, interactions on the leading modifiers under the
/// leading main effects.
struct TruthSpec {
    int n_main = 10;
    double beta_value = 2.0;
    int n_theta_rows = 4;
    int n_theta_cols = 2;
    double theta_value = 2.0;
};

/// Latent-factor generator settings. The first p_u feature columns of each
/// source share latent factors u_i (weights t1, t2); modifiers z_i with
/// i < K (1-based) are shifted by u_i as well.
struct SimScenario {
    std::string name;
    Index n = 500;
    Index n_test = 9800;
    Index p1 = 100;
    Index p2 = 100;
    Index k = 4;
    Index p_u = 20;
    double t1 = 2.0;
    double t2 = 2.0;
    double sigma = 0.0;      // > 0: fixed noise SD; else derived from target_snr
    double target_snr = 5.0;
    bool source2_signal = true;
    bool literal_step2 = false;  // x2_i := x1_i + t2*u_i instead of x2_i += t2*u_i
    unsigned long long seed = 1;
    TruthSpec truth;

    void validate() const;
};

struct SimTruth {
    Vector beta1;
    Matrix theta1;
    Vector beta2;
    Matrix theta2;
    std::vector<Index> main_support;         // pooled indices in [0, p1+p2)
    std::vector<Index> interaction_support;  // pooled flattened (j, k) pairs
    double sigma = 0.0;
    double realized_snr = 0.0;
};

/// Draws train and test jointly from one sample of size n + n_test and
/// splits without overlap. Deterministic given the seed. When sigma is not
/// fixed it is set to sqrt(Var(signal) / target_snr) on the joint sample,
/// so the realized SNR hits the target.
std::tuple<MultiViewData, MultiViewData, SimTruth> generate(const SimScenario& scenario);

/// Var(signal)/sigma^2 with the signal rebuilt from the truth on `data`.
double compute_snr(const MultiViewData& data, const SimTruth& truth, double sigma);

/// Benchmark scenarios: lowdim-1..4 and highdim-1..4.
SimScenario preset(const std::string& name);
const std::vector<std::string>& preset_names();

}  // namespace coopliable
