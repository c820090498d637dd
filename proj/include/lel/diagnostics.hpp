#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "lel/problem.hpp"

namespace lel {

// The six synthetic diagnostic functions. All use bounds [-5, 5]^d and have
// global optimum value 0.
enum class Fn {
  S1Sphere,
  S2BlockRosen,
  S3PermRosen,
  S4OverlapRosen,
  S5BandedQuad,
  S6RotEllipsoid,
};

const char* fn_id(Fn f);
std::optional<Fn> fn_from_id(std::string_view id);
std::vector<Fn> all_functions();

// Chained Rosenbrock over z: sum_i 100*(z[i+1]-z[i]^2)^2 + (1-z[i])^2.
// Throws DimensionTooSmall for fewer than 2 entries.
double rosenbrock_block(const double* z, int n);
double rosenbrock_block(const Vec& z);

// Fixed structural randomness, identical across all trials and seeds.
// The permutation comes from a Fisher-Yates shuffle on the structure stream
// seeded 123; the rotation from Householder QR of a Gaussian matrix on the
// structure stream seeded 456, with the sign convention diag(R) > 0.
std::vector<int> structure_permutation(int d);
Mat structure_rotation(int d);

// Per-coordinate quadratic weights a_i = 10^(-1 + 2(i-1)/(d-1)).
Vec banded_weights(int d);
// Ellipsoid diagonal D_ii = 10^(4(i-1)/(d-1)), condition number 1e4.
Vec ellipsoid_diagonal(int d);

// Builds the budgeted problem for one diagnostic. S2/S3 require d divisible
// by 8; S4 requires (d-8) divisible by 4. All per-function structure (the
// permutation, the rotation, weight vectors) is precomputed here so that
// evaluations allocate nothing.
Problem make_problem(Fn f, int d, long budget, long trace_stride = 0);

}  // namespace lel
