#include "memloop/gmm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace memloop {

namespace {

constexpr double kLog2Pi = 1.8378770664093453;

// Squared euclidean distance between a data row and a center.
double sq_dist(std::span<const double> data, size_t d, size_t row,
               std::span<const double> center) {
    double sum = 0.0;
    for (size_t j = 0; j < d; ++j) {
        double diff = data[row * d + j] - center[j];
        sum += diff * diff;
    }
    return sum;
}

// k-means++ seeding: first center uniform, the rest proportional to the
// squared distance from the nearest chosen center.
std::vector<double> kmeanspp_centers(std::span<const double> data, size_t n, size_t d, int k,
                                     std::mt19937_64& rng) {
    std::vector<double> centers;
    centers.reserve(size_t(k) * d);

    std::uniform_int_distribution<size_t> uniform(0, n - 1);
    size_t first = uniform(rng);
    centers.insert(centers.end(), data.begin() + first * d, data.begin() + (first + 1) * d);

    std::vector<double> min_sq(n, std::numeric_limits<double>::max());
    for (int c = 1; c < k; ++c) {
        std::span<const double> latest(centers.data() + size_t(c - 1) * d, d);
        double total = 0.0;
        for (size_t i = 0; i < n; ++i) {
            min_sq[i] = std::min(min_sq[i], sq_dist(data, d, i, latest));
            total += min_sq[i];
        }
        size_t pick = 0;
        if (total > 0.0) {
            std::uniform_real_distribution<double> spin(0.0, total);
            double target = spin(rng);
            double acc = 0.0;
            for (size_t i = 0; i < n; ++i) {
                acc += min_sq[i];
                if (acc >= target) {
                    pick = i;
                    break;
                }
            }
        } else {
            pick = uniform(rng); // all points coincide with existing centers
        }
        centers.insert(centers.end(), data.begin() + pick * d, data.begin() + (pick + 1) * d);
    }
    return centers;
}

std::vector<double> per_dim_variance(std::span<const double> data, size_t n, size_t d,
                                     double floor_value) {
    std::vector<double> mean(d, 0.0), var(d, 0.0);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < d; ++j) mean[j] += data[i * d + j];
    }
    for (size_t j = 0; j < d; ++j) mean[j] /= double(n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < d; ++j) {
            double diff = data[i * d + j] - mean[j];
            var[j] += diff * diff;
        }
    }
    for (size_t j = 0; j < d; ++j) {
        var[j] = std::max(var[j] / double(n), floor_value);
    }
    return var;
}

// One EM run from a k-means++ start. Parallel loops are over points in the
// E-step and over components in the M-step; each iteration space carries its
// own serial accumulation, so Serial and Parallel agree bitwise.
GmmFit em_run(std::span<const double> data, size_t n, size_t d, int k,
              const GmmOptions& options, uint64_t run_seed) {
    std::mt19937_64 rng(run_seed);

    GmmFit fit;
    fit.n_components = k;
    fit.n_points = n;
    fit.dims = d;
    fit.weights.assign(size_t(k), 1.0 / k);
    fit.means = kmeanspp_centers(data, n, d, k, rng);
    auto base_var = per_dim_variance(data, n, d, options.variance_floor);
    fit.variances.resize(size_t(k) * d);
    for (int c = 0; c < k; ++c) {
        std::copy(base_var.begin(), base_var.end(), fit.variances.begin() + size_t(c) * d);
    }
    fit.responsibilities.assign(n * size_t(k), 0.0);

    std::vector<double> log_weight(k), log_norm(k), point_ll(n);
    double prev_ll = -std::numeric_limits<double>::max();
    const bool parallel = options.exec == Execution::Parallel;

    for (int iter = 0; iter < options.max_iterations; ++iter) {
        for (int c = 0; c < k; ++c) {
            log_weight[c] = std::log(std::max(fit.weights[c], 1e-300));
            double sum_log_var = 0.0;
            for (size_t j = 0; j < d; ++j) {
                sum_log_var += std::log(fit.variances[size_t(c) * d + j]);
            }
            log_norm[c] = -0.5 * (double(d) * kLog2Pi + sum_log_var);
        }

        // E-step
#pragma omp parallel for schedule(static) if (parallel)
        for (long long ii = 0; ii < static_cast<long long>(n); ++ii) {
            size_t i = static_cast<size_t>(ii);
            double* resp = &fit.responsibilities[i * size_t(k)];
            double max_log = -std::numeric_limits<double>::max();
            for (int c = 0; c < k; ++c) {
                double quad = 0.0;
                for (size_t j = 0; j < d; ++j) {
                    double diff = data[i * d + j] - fit.means[size_t(c) * d + j];
                    quad += diff * diff / fit.variances[size_t(c) * d + j];
                }
                resp[c] = log_weight[c] + log_norm[c] - 0.5 * quad;
                max_log = std::max(max_log, resp[c]);
            }
            double sum_exp = 0.0;
            for (int c = 0; c < k; ++c) sum_exp += std::exp(resp[c] - max_log);
            double lse = max_log + std::log(sum_exp);
            for (int c = 0; c < k; ++c) resp[c] = std::exp(resp[c] - lse);
            point_ll[i] = lse;
        }

        double ll = 0.0;
        for (size_t i = 0; i < n; ++i) ll += point_ll[i];
        fit.log_likelihood = ll;
        fit.iterations = iter + 1;
        if (std::abs(ll - prev_ll) < options.tolerance * std::max(1.0, std::abs(ll))) {
            break;
        }
        prev_ll = ll;

        // M-step
#pragma omp parallel for schedule(static) if (parallel)
        for (int c = 0; c < k; ++c) {
            double nk = 0.0;
            for (size_t i = 0; i < n; ++i) nk += fit.responsibilities[i * size_t(k) + c];
            double safe_nk = std::max(nk, 1e-12);
            for (size_t j = 0; j < d; ++j) {
                double sum = 0.0;
                for (size_t i = 0; i < n; ++i) {
                    sum += fit.responsibilities[i * size_t(k) + c] * data[i * d + j];
                }
                fit.means[size_t(c) * d + j] = sum / safe_nk;
            }
            for (size_t j = 0; j < d; ++j) {
                double sum = 0.0;
                double mu = fit.means[size_t(c) * d + j];
                for (size_t i = 0; i < n; ++i) {
                    double diff = data[i * d + j] - mu;
                    sum += fit.responsibilities[i * size_t(k) + c] * diff * diff;
                }
                fit.variances[size_t(c) * d + j] =
                    std::max(sum / safe_nk, options.variance_floor);
            }
            fit.weights[c] = nk / double(n);
        }
    }

    // Free parameters of a diagonal GMM: k-1 weights, k*d means, k*d variances.
    double p = double(k - 1) + 2.0 * double(k) * double(d);
    fit.bic = p * std::log(double(n)) - 2.0 * fit.log_likelihood;
    return fit;
}

} // namespace

GmmFit fit_gmm(std::span<const double> data, size_t n, size_t d, int k,
               const GmmOptions& options) {
    if (n == 0 || d == 0 || data.size() != n * d) {
        throw std::invalid_argument("fit_gmm: bad data shape");
    }
    if (k < 1 || size_t(k) > n) {
        throw std::invalid_argument("fit_gmm: k out of range");
    }
    GmmFit best;
    bool have = false;
    int restarts = std::max(1, options.n_init);
    for (int r = 0; r < restarts; ++r) {
        uint64_t run_seed = options.seed * 1000003ull + uint64_t(k) * 101ull + uint64_t(r);
        GmmFit fit = em_run(data, n, d, k, options, run_seed);
        if (!have || fit.log_likelihood > best.log_likelihood) {
            best = std::move(fit);
            have = true;
        }
    }
    return best;
}

GmmFit fit_gmm_bic(std::span<const double> data, size_t n, size_t d,
                   const GmmOptions& options) {
    int k_max = n == 1 ? 1 : int(std::min<size_t>(size_t(options.max_clusters), n - 1));
    k_max = std::max(k_max, 1);
    GmmFit best;
    bool have = false;
    for (int k = 1; k <= k_max; ++k) {
        GmmFit fit = fit_gmm(data, n, d, k, options);
        if (!have || fit.bic < best.bic) {
            best = std::move(fit);
            have = true;
        }
    }
    return best;
}

std::vector<int> hard_labels(const GmmFit& fit) {
    std::vector<int> labels(fit.n_points, 0);
    for (size_t i = 0; i < fit.n_points; ++i) {
        const double* resp = &fit.responsibilities[i * size_t(fit.n_components)];
        int arg = 0;
        for (int c = 1; c < fit.n_components; ++c) {
            if (resp[c] > resp[arg]) arg = c;
        }
        labels[i] = arg;
    }
    return labels;
}

std::vector<std::vector<size_t>> soft_members(const GmmFit& fit, double threshold) {
    std::vector<std::vector<size_t>> members(fit.n_components);
    for (size_t i = 0; i < fit.n_points; ++i) {
        for (int c = 0; c < fit.n_components; ++c) {
            if (fit.responsibilities[i * size_t(fit.n_components) + c] >= threshold) {
                members[c].push_back(i);
            }
        }
    }
    return members;
}

} // namespace memloop
