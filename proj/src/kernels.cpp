#include "memloop/kernels.hpp"

#include <cassert>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace memloop {

Execution default_execution() {
#ifdef _OPENMP
    return Execution::Parallel;
#else
    return Execution::Serial;
#endif
}

int execution_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

float dot(std::span<const float> a, std::span<const float> b) {
    assert(a.size() == b.size());
    float sum = 0.0f;
    for (size_t i = 0; i < a.size(); ++i) {
        sum += a[i] * b[i];
    }
    return sum;
}

float l2_norm(std::span<const float> v) {
    double sum = 0.0;
    for (float x : v) {
        sum += double(x) * double(x);
    }
    return static_cast<float>(std::sqrt(sum));
}

void normalize(std::span<float> v) {
    float norm = l2_norm(v);
    if (norm == 0.0f) return;
    for (float& x : v) {
        x /= norm;
    }
}

void dot_scores_serial(std::span<const float> matrix, size_t n, size_t d,
                       std::span<const float> query, std::span<float> out) {
    assert(matrix.size() == n * d && query.size() == d && out.size() == n);
    for (size_t i = 0; i < n; ++i) {
        out[i] = dot(matrix.subspan(i * d, d), query);
    }
}

void dot_scores_parallel(std::span<const float> matrix, size_t n, size_t d,
                         std::span<const float> query, std::span<float> out) {
    assert(matrix.size() == n * d && query.size() == d && out.size() == n);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
        out[i] = dot(matrix.subspan(size_t(i) * d, d), query);
    }
#else
    dot_scores_serial(matrix, n, d, query, out);
#endif
}

void dot_scores(std::span<const float> matrix, size_t n, size_t d,
                std::span<const float> query, std::span<float> out, Execution exec) {
    if (exec == Execution::Parallel) {
        dot_scores_parallel(matrix, n, d, query, out);
    } else {
        dot_scores_serial(matrix, n, d, query, out);
    }
}

} // namespace memloop
