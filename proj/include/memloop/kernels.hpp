#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace memloop {

enum class Execution { Serial, Parallel };

// Library-wide default: Parallel when built with OpenMP, Serial otherwise.
Execution default_execution();
int execution_threads();

// scores[i] = dot(matrix row i, query). matrix is row-major n x d.
// Serial is the reference; the parallel variant computes each row with the same
// serial inner loop, so results are bitwise identical.
void dot_scores_serial(std::span<const float> matrix, size_t n, size_t d,
                       std::span<const float> query, std::span<float> out);
void dot_scores_parallel(std::span<const float> matrix, size_t n, size_t d,
                         std::span<const float> query, std::span<float> out);
void dot_scores(std::span<const float> matrix, size_t n, size_t d,
                std::span<const float> query, std::span<float> out, Execution exec);

float dot(std::span<const float> a, std::span<const float> b);
float l2_norm(std::span<const float> v);

// Scales v to unit L2 norm in place. Zero vectors are left unchanged.
void normalize(std::span<float> v);

} // namespace memloop
