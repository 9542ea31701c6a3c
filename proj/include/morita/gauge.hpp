#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <functional>
#include <vector>

#include "morita/error.hpp"

namespace morita {

/// Uniform grid: point p has coordinates origin + spacing * index(p), where
/// indices are stored row-major with the last axis fastest.
struct GridSpec {
  int dimension = 0;
  std::vector<double> origin;
  double spacing = 1.0;
  std::vector<int> shape;

  std::size_t point_count() const;
  std::vector<int> index_of(std::size_t point) const;
  Eigen::VectorXd coordinates(std::size_t point) const;
  /// Flat offset between neighbours along `axis`.
  std::size_t stride(int axis) const;
  /// Throws Error(parse) on inconsistent sizes or nonpositive spacing.
  void check() const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

struct BivectorTag {};
struct TwoFormTag {};

/// A d x d matrix per grid point, stored as full column-major blocks. The tag
/// keeps bivectors and 2-forms from being swapped by accident.
template <class Tag>
class SampledField {
 public:
  using Matrix = Eigen::MatrixXd;

  SampledField() = default;
  explicit SampledField(GridSpec grid)
      : grid_(std::move(grid)), values_(grid_.point_count() * block(), 0.0) {}

  static SampledField sample(const GridSpec& grid, const std::function<Matrix(const Eigen::VectorXd&)>& f) {
    SampledField out(grid);
    for (std::size_t p = 0; p < grid.point_count(); ++p) out.set(p, f(grid.coordinates(p)));
    return out;
  }

  const GridSpec& grid() const { return grid_; }
  int dimension() const { return grid_.dimension; }
  std::size_t point_count() const { return grid_.point_count(); }

  Eigen::Map<const Matrix> at(std::size_t p) const {
    return {values_.data() + p * block(), grid_.dimension, grid_.dimension};
  }
  void set(std::size_t p, const Matrix& m) { Eigen::Map<Matrix>(values_.data() + p * block(), grid_.dimension, grid_.dimension) = m; }

 private:
  std::size_t block() const { return static_cast<std::size_t>(grid_.dimension) * static_cast<std::size_t>(grid_.dimension); }

  GridSpec grid_;
  std::vector<double> values_;
};

using BivectorField = SampledField<BivectorTag>;
using TwoFormField = SampledField<TwoFormTag>;

/// Antisymmetric matrix field whose entries (i < j) are polynomials of
/// degree at most two: constant + linear . x + x^T quadratic x.
struct PolynomialEntry {
  int i = 0;
  int j = 1;
  double constant = 0.0;
  std::vector<double> linear;
  std::vector<std::vector<double>> quadratic;
};

struct PolynomialField {
  int dimension = 0;
  std::vector<PolynomialEntry> entries;

  Eigen::MatrixXd operator()(const Eigen::VectorXd& x) const;
};

struct InvertibilityReport {
  bool ok = true;
  double min_abs_det = 0.0;
  std::size_t worst_point = 0;
  Eigen::VectorXd worst_coordinates;
};

inline constexpr double default_singularity_threshold = 1e-10;
inline constexpr double default_rank_threshold = 1e-8;

/// det(I + B pi) at every point; ok iff its absolute value exceeds
/// `threshold` everywhere. Throws Error(grid_mismatch).
InvertibilityReport invertibility_check(const BivectorField& pi, const TwoFormField& b,
                                        double threshold = default_singularity_threshold);

struct GaugeResult {
  BivectorField field;
  /// Largest |X + X^T| entry before antisymmetrization.
  double max_asymmetry = 0.0;
};

/// pi (I + B pi)^-1, antisymmetrized. Throws Error(grid_mismatch) or
/// Error(singular_endomorphism).
GaugeResult apply_gauge(const BivectorField& pi, const TwoFormField& b,
                        double threshold = default_singularity_threshold);

struct Residual {
  double value = 0.0;
  std::size_t worst_point = 0;
};

/// max |d_i B_jk + d_j B_ki + d_k B_ij| over points and i < j < k, with
/// second-order differences. Zero in dimension < 3. Throws
/// Error(grid_too_small) when an axis has fewer than 3 points.
Residual closedness_residual(const TwoFormField& b);

/// max |pi^il d_l pi^jk + pi^jl d_l pi^ki + pi^kl d_l pi^ij| over points and
/// i < j < k. Same differencing and errors as closedness_residual.
Residual jacobi_residual(const BivectorField& pi);

/// Numerical rank per point: singular values above `threshold`.
std::vector<int> rank_map(const BivectorField& pi, double threshold = default_rank_threshold);

/// max-norm distance between tau_{B'}(tau_B(pi)) and tau_{B+B'}(pi).
double verify_composition(const BivectorField& pi, const TwoFormField& b, const TwoFormField& b2,
                          double threshold = default_singularity_threshold);

/// Largest |M + M^T| entry over the field.
template <class Tag>
double max_asymmetry(const SampledField<Tag>& f) {
  double worst = 0.0;
  for (std::size_t p = 0; p < f.point_count(); ++p)
    worst = std::max(worst, (f.at(p) + f.at(p).transpose()).cwiseAbs().maxCoeff());
  return worst;
}

}  // namespace morita
