#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "memloop/kernels.hpp"

namespace memloop {

struct GmmOptions {
    int max_clusters = 10;
    int max_iterations = 200;
    int n_init = 3;             // k-means++ restarts per k, best log-likelihood wins
    double tolerance = 1e-7;
    double variance_floor = 1e-6;
    double membership_threshold = 0.1;
    uint64_t seed = 0;
    Execution exec = default_execution();
};

// Diagonal-covariance Gaussian mixture fitted by EM.
struct GmmFit {
    int n_components = 0;
    size_t n_points = 0;
    size_t dims = 0;
    std::vector<double> weights;          // k
    std::vector<double> means;            // k x d
    std::vector<double> variances;        // k x d
    std::vector<double> responsibilities; // n x k
    double log_likelihood = 0.0;
    double bic = 0.0;
    int iterations = 0;
};

// EM for a fixed component count, k-means++ initialization. data is row major n x d.
GmmFit fit_gmm(std::span<const double> data, size_t n, size_t d, int k,
               const GmmOptions& options);

// Sweeps k in [1, min(max_clusters, n-1)] and returns the fit with the lowest
// BIC (ties go to the smaller k).
GmmFit fit_gmm_bic(std::span<const double> data, size_t n, size_t d,
                   const GmmOptions& options);

// Argmax-responsibility assignment, ties to the lower component index.
std::vector<int> hard_labels(const GmmFit& fit);

// Soft membership: every point joins each component whose responsibility is at
// least the threshold. With k <= 10 and threshold 0.1 no point is left out.
std::vector<std::vector<size_t>> soft_members(const GmmFit& fit, double threshold);

} // namespace memloop
