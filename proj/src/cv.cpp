#include "coopliable/cv.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_map>

#include "coopliable/predict.hpp"
#include "coopliable/solver.hpp"

namespace coopliable {

namespace {

template <typename T>
void fisher_yates(std::vector<T>& items, std::mt19937_64& rng) {
    for (size_t i = items.size(); i > 1; --i) {
        std::uniform_int_distribution<size_t> pick(0, i - 1);
        std::swap(items[i - 1], items[pick(rng)]);
    }
}

}  // namespace

std::vector<int> make_folds(Index n, const FoldSpec& spec) {
    if (spec.n_folds < 2) throw ConfigError("need at least 2 folds");
    std::mt19937_64 rng(spec.seed);
    std::vector<int> fold(static_cast<size_t>(n), -1);

    if (spec.groups) {
        if (static_cast<Index>(spec.groups->size()) != n)
            throw DataError("group vector length does not match n");
        std::vector<long long> ids;
        std::unordered_map<long long, int> seen;
        for (long long g : *spec.groups) {
            if (seen.emplace(g, static_cast<int>(ids.size())).second) ids.push_back(g);
        }
        if (static_cast<int>(ids.size()) < spec.n_folds)
            throw DataError("more folds than groups");
        fisher_yates(ids, rng);
        std::unordered_map<long long, int> group_fold;
        for (size_t i = 0; i < ids.size(); ++i)
            group_fold[ids[i]] = static_cast<int>(i % spec.n_folds);
        for (Index i = 0; i < n; ++i) fold[i] = group_fold[(*spec.groups)[i]];
        return fold;
    }

    if (n < spec.n_folds) throw DataError("more folds than rows");
    std::vector<Index> order(static_cast<size_t>(n));
    for (Index i = 0; i < n; ++i) order[i] = i;
    fisher_yates(order, rng);
    for (Index i = 0; i < n; ++i) fold[order[i]] = static_cast<int>(i % spec.n_folds);
    return fold;
}

Index select_lambda(const Vector& mean_error) {
    Index best = 0;
    for (Index i = 1; i < mean_error.size(); ++i) {
        if (mean_error[i] < mean_error[best]) best = i;
    }
    return best;
}

PliableProblem subset_problem(const PliableProblem& problem, const std::vector<Index>& top_rows) {
    const Index m = static_cast<Index>(top_rows.size());
    const bool aug = problem.augmented();
    PliableProblem out;
    out.x.resize(aug ? 2 * m : m, problem.p());
    out.z.resize(out.x.rows(), problem.k());
    out.y.resize(out.x.rows());
    for (Index i = 0; i < m; ++i) {
        const Index row = top_rows[static_cast<size_t>(i)];
        out.x.row(i) = problem.x.row(row);
        out.z.row(i) = problem.z.row(row);
        out.y[i] = problem.y[row];
        if (aug) {
            const Index twin = problem.n_top + row;
            out.x.row(m + i) = problem.x.row(twin);
            out.z.row(m + i) = problem.z.row(twin);
            out.y[m + i] = problem.y[twin];
        }
    }
    out.penalty_factors = problem.penalty_factors;
    out.alpha = problem.alpha;
    out.n_obs = m;
    out.n_top = m;  // for augmented problems rows [m, 2m) are the twins
    return out;
}

CvResult cv_fit(const PliableProblem& problem, const std::vector<int>& folds,
                const SolverConfig& config, const Vector& lambdas) {
    if (static_cast<Index>(folds.size()) != problem.n_top)
        throw DataError("fold assignment length must equal the original row count");
    const int n_folds = folds.empty() ? 0 : *std::max_element(folds.begin(), folds.end()) + 1;
    if (n_folds < 2) throw DataError("need at least 2 folds");

    CvResult result;
    result.lambdas = lambdas.size() ? lambdas : lambda_path(problem, config);
    const Index n_lambda = result.lambdas.size();
    result.fold_errors.setZero(n_folds, n_lambda);
    result.oof.setConstant(problem.n_top, n_lambda, 0.0);

    for (int f = 0; f < n_folds; ++f) {
        std::vector<Index> held_in, held_out;
        for (Index i = 0; i < problem.n_top; ++i) {
            (folds[static_cast<size_t>(i)] == f ? held_out : held_in).push_back(i);
        }
        if (held_out.empty()) throw DataError("fold " + std::to_string(f) + " is empty");
        if (held_in.empty())
            throw DataError("fold " + std::to_string(f) + " holds out every row");

        const PliableProblem sub = subset_problem(problem, held_in);
        PliableFit fit;
        try {
            fit = fit_path(sub, result.lambdas, config);
        } catch (const SolverError& e) {
            throw SolverError(std::string(e.what()) + " (fold " + std::to_string(f) + ")");
        }

        // held-out rows are original rows only; agreement twins never score
        Matrix x_out(static_cast<Index>(held_out.size()), problem.p());
        Matrix z_out(static_cast<Index>(held_out.size()), problem.k());
        Vector y_out(static_cast<Index>(held_out.size()));
        for (size_t i = 0; i < held_out.size(); ++i) {
            x_out.row(static_cast<Index>(i)) = problem.x.row(held_out[i]);
            z_out.row(static_cast<Index>(i)) = problem.z.row(held_out[i]);
            y_out[static_cast<Index>(i)] = problem.y[held_out[i]];
        }
        for (Index li = 0; li < n_lambda; ++li) {
            if (!fit.path[static_cast<size_t>(li)].converged) {
                throw SolverError("solver did not converge (fold " + std::to_string(f) +
                                  ", lambda " + std::to_string(result.lambdas[li]) + ")");
            }
            const Vector pred =
                predict_centered(fit.path[static_cast<size_t>(li)].coefs, x_out, z_out);
            result.fold_errors(f, li) =
                (y_out - pred).squaredNorm() / static_cast<double>(y_out.size());
            for (size_t i = 0; i < held_out.size(); ++i) {
                result.oof(held_out[i], li) = pred[static_cast<Index>(i)];
            }
        }
    }

    result.mean_error = result.fold_errors.colwise().mean();
    result.se_error.resize(n_lambda);
    for (Index li = 0; li < n_lambda; ++li) {
        const double m = result.mean_error[li];
        const double ss = (result.fold_errors.col(li).array() - m).square().sum();
        const double var = n_folds > 1 ? ss / (n_folds - 1) : 0.0;
        result.se_error[li] = std::sqrt(var / n_folds);
    }
    result.lambda_min_index = select_lambda(result.mean_error);
    return result;
}

}  // namespace coopliable
