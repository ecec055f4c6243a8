#include "coopliable/augment.hpp"

#include <cmath>

namespace coopliable {

namespace {
Vector default_pf(Vector pf, Index p) {
    if (pf.size() == 0) return Vector::Ones(p);
    if (pf.size() != p) throw ConfigError("penalty factor length does not match feature count");
    if ((pf.array() <= 0.0).any()) throw ConfigError("penalty factors must be strictly positive");
    return pf;
}
}  // namespace

PliableProblem build_augmented(const MultiViewData& data, double rho, double alpha,
                               Vector penalty_factors) {
    if (rho < 0.0) throw ConfigError("rho must be nonnegative");
    const Index n = data.n(), p1 = data.p1(), p2 = data.p2(), k = data.k();
    const double sr = std::sqrt(rho);

    PliableProblem prob;
    prob.x.resize(2 * n, p1 + p2);
    prob.x.topLeftCorner(n, p1) = data.x1;
    prob.x.topRightCorner(n, p2) = data.x2;
    prob.x.bottomLeftCorner(n, p1) = -sr * data.x1;
    prob.x.bottomRightCorner(n, p2) = sr * data.x2;

    prob.z = Matrix::Zero(2 * n, k);
    prob.z.topRows(n) = data.z;

    prob.y = Vector::Zero(2 * n);
    prob.y.head(n) = data.y;

    prob.penalty_factors = default_pf(std::move(penalty_factors), p1 + p2);
    prob.alpha = alpha;
    prob.n_obs = n;
    prob.n_top = n;
    return prob;
}

PliableProblem concat_problem(const MultiViewData& data, double alpha, Vector penalty_factors) {
    PliableProblem prob;
    prob.x.resize(data.n(), data.p1() + data.p2());
    prob.x.leftCols(data.p1()) = data.x1;
    prob.x.rightCols(data.p2()) = data.x2;
    prob.z = data.z;
    prob.y = data.y;
    prob.penalty_factors = default_pf(std::move(penalty_factors), prob.p());
    prob.alpha = alpha;
    prob.n_obs = data.n();
    prob.n_top = data.n();
    return prob;
}

PliableProblem single_problem(const MultiViewData& data, int source, double alpha) {
    if (source != 1 && source != 2) throw ConfigError("source must be 1 or 2");
    PliableProblem prob;
    prob.x = source == 1 ? data.x1 : data.x2;
    prob.z = data.z;
    prob.y = data.y;
    prob.penalty_factors = Vector::Ones(prob.p());
    prob.alpha = alpha;
    prob.n_obs = data.n();
    prob.n_top = data.n();
    return prob;
}

std::pair<PliableCoefs, PliableCoefs> split_coefs(const PliableCoefs& stacked, Index p1) {
    if (p1 < 0 || p1 > stacked.p()) throw DataError("split point out of range");
    const Index p2 = stacked.p() - p1;
    PliableCoefs c1{stacked.beta.head(p1), stacked.theta.topRows(p1)};
    PliableCoefs c2{stacked.beta.tail(p2), stacked.theta.bottomRows(p2)};
    return {std::move(c1), std::move(c2)};
}

PliableCoefs merge_coefs(const PliableCoefs& c1, const PliableCoefs& c2) {
    if (c1.k() != c2.k()) throw DataError("merge: modifier counts differ");
    PliableCoefs out = PliableCoefs::zero(c1.p() + c2.p(), c1.k());
    out.beta << c1.beta, c2.beta;
    out.theta.topRows(c1.p()) = c1.theta;
    out.theta.bottomRows(c2.p()) = c2.theta;
    return out;
}

}  // namespace coopliable
