#include "lel/diagnostics.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <memory>
#include <string>

#include "lel/rng.hpp"

namespace lel {

namespace {

constexpr std::uint64_t kPermutationSeed = 123;
constexpr std::uint64_t kRotationSeed = 456;

Bounds default_bounds(int d) { return Bounds::uniform(d, -5.0, 5.0); }

}  // namespace

const char* fn_id(Fn f) {
  switch (f) {
    case Fn::S1Sphere: return "s1_sphere";
    case Fn::S2BlockRosen: return "s2_block_rosen";
    case Fn::S3PermRosen: return "s3_perm_rosen";
    case Fn::S4OverlapRosen: return "s4_overlap_rosen";
    case Fn::S5BandedQuad: return "s5_banded_quad";
    case Fn::S6RotEllipsoid: return "s6_rot_ellipsoid";
  }
  return "?";
}

std::optional<Fn> fn_from_id(std::string_view id) {
  for (Fn f : all_functions())
    if (id == fn_id(f)) return f;
  return std::nullopt;
}

std::vector<Fn> all_functions() {
  return {Fn::S1Sphere,      Fn::S2BlockRosen, Fn::S3PermRosen,
          Fn::S4OverlapRosen, Fn::S5BandedQuad, Fn::S6RotEllipsoid};
}

double rosenbrock_block(const double* z, int n) {
  if (n < 2)
    throw DimensionTooSmall("rosenbrock block needs at least 2 variables");
  double sum = 0.0;
  for (int i = 0; i + 1 < n; ++i) {
    const double a = z[i + 1] - z[i] * z[i];
    const double b = 1.0 - z[i];
    sum += 100.0 * a * a + b * b;
  }
  return sum;
}

double rosenbrock_block(const Vec& z) {
  return rosenbrock_block(z.data(), static_cast<int>(z.size()));
}

std::vector<int> structure_permutation(int d) {
  Rng rng = rng_stream({"structure", "permutation"}, kPermutationSeed);
  return random_permutation(d, rng);
}

Mat structure_rotation(int d) {
  Rng rng = rng_stream({"structure", "rotation"}, kRotationSeed);
  Mat g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = rng.normal();
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  const Mat& packed = qr.matrixQR();
  for (int i = 0; i < d; ++i)
    if (packed(i, i) < 0.0) q.col(i) = -q.col(i);
  return q;
}

Vec banded_weights(int d) {
  Vec a(d);
  for (int i = 0; i < d; ++i)
    a[i] = std::pow(10.0, -1.0 + 2.0 * i / (d - 1));
  return a;
}

Vec ellipsoid_diagonal(int d) {
  Vec diag(d);
  for (int i = 0; i < d; ++i)
    diag[i] = std::pow(10.0, 4.0 * i / (d - 1));
  return diag;
}

Problem make_problem(Fn f, int d, long budget, long trace_stride) {
  if (d < 2) throw IncompatibleDimension("dimension must be at least 2");
  Bounds bounds = default_bounds(d);

  switch (f) {
    case Fn::S1Sphere: {
      auto obj = [](const Vec& x) { return x.squaredNorm(); };
      return Problem(fn_id(f), std::move(bounds), 0.0, budget, obj,
                     trace_stride);
    }
    case Fn::S2BlockRosen: {
      if (d % 8 != 0)
        throw IncompatibleDimension(
            "s2_block_rosen needs d divisible by 8 (got " + std::to_string(d) +
            ")");
      auto obj = [d](const Vec& x) {
        double sum = 0.0;
        for (int k = 0; k < d / 8; ++k)
          sum += rosenbrock_block(x.data() + 8 * k, 8);
        return sum;
      };
      return Problem(fn_id(f), std::move(bounds), 0.0, budget, obj,
                     trace_stride);
    }
    case Fn::S3PermRosen: {
      if (d % 8 != 0)
        throw IncompatibleDimension(
            "s3_perm_rosen needs d divisible by 8 (got " + std::to_string(d) +
            ")");
      struct S3Data {
        std::vector<int> perm;
        Vec gathered;
      };
      auto data = std::make_shared<S3Data>();
      data->perm = structure_permutation(d);
      data->gathered.resize(d);
      auto obj = [d, data](const Vec& x) {
        for (int i = 0; i < d; ++i) data->gathered[i] = x[data->perm[i]];
        double sum = 0.0;
        for (int k = 0; k < d / 8; ++k)
          sum += rosenbrock_block(data->gathered.data() + 8 * k, 8);
        return sum;
      };
      return Problem(fn_id(f), std::move(bounds), 0.0, budget, obj,
                     trace_stride);
    }
    case Fn::S4OverlapRosen: {
      if (d < 8 || (d - 8) % 4 != 0)
        throw IncompatibleDimension(
            "s4_overlap_rosen needs d >= 8 with (d - 8) divisible by 4 (got " +
            std::to_string(d) + ")");
      const int windows = (d - 8) / 4 + 1;
      auto obj = [windows](const Vec& x) {
        double sum = 0.0;
        for (int j = 0; j < windows; ++j)
          sum += rosenbrock_block(x.data() + 4 * j, 8);
        return sum;
      };
      return Problem(fn_id(f), std::move(bounds), 0.0, budget, obj,
                     trace_stride);
    }
    case Fn::S5BandedQuad: {
      struct S5Data {
        Vec a;
      };
      auto data = std::make_shared<S5Data>();
      data->a = banded_weights(d);
      auto obj = [d, data](const Vec& x) {
        double sum = 0.0;
        for (int i = 0; i < d; ++i) sum += data->a[i] * x[i] * x[i];
        for (int i = 0; i + 1 < d; ++i) {
          const double diff = x[i] - x[i + 1];
          sum += 10.0 * diff * diff;
        }
        return sum;
      };
      return Problem(fn_id(f), std::move(bounds), 0.0, budget, obj,
                     trace_stride);
    }
    case Fn::S6RotEllipsoid: {
      struct S6Data {
        Mat q;
        Vec diag;
        Vec rotated;
      };
      auto data = std::make_shared<S6Data>();
      data->q = structure_rotation(d);
      data->diag = ellipsoid_diagonal(d);
      data->rotated.resize(d);
      auto obj = [d, data](const Vec& x) {
        data->rotated.noalias() = data->q * x;
        double sum = 0.0;
        for (int i = 0; i < d; ++i)
          sum += data->diag[i] * data->rotated[i] * data->rotated[i];
        return sum;
      };
      return Problem(fn_id(f), std::move(bounds), 0.0, budget, obj,
                     trace_stride);
    }
  }
  throw IncompatibleDimension("unknown function");
}

}  // namespace lel
