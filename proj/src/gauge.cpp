#include "morita/gauge.hpp"

#include <cmath>
#include <string>

namespace morita {

std::size_t GridSpec::point_count() const {
  std::size_t n = 1;
  for (int s : shape) n *= static_cast<std::size_t>(s);
  return n;
}

std::vector<int> GridSpec::index_of(std::size_t point) const {
  std::vector<int> idx(shape.size());
  for (std::size_t a = shape.size(); a-- > 0;) {
    idx[a] = static_cast<int>(point % static_cast<std::size_t>(shape[a]));
    point /= static_cast<std::size_t>(shape[a]);
  }
  return idx;
}

Eigen::VectorXd GridSpec::coordinates(std::size_t point) const {
  const auto idx = index_of(point);
  Eigen::VectorXd x(dimension);
  for (int a = 0; a < dimension; ++a) x[a] = origin[static_cast<std::size_t>(a)] + spacing * idx[static_cast<std::size_t>(a)];
  return x;
}

std::size_t GridSpec::stride(int axis) const {
  std::size_t s = 1;
  for (int a = dimension - 1; a > axis; --a) s *= static_cast<std::size_t>(shape[static_cast<std::size_t>(a)]);
  return s;
}

void GridSpec::check() const {
  if (dimension < 1) throw Error(ErrorCode::parse, "grid dimension must be positive");
  if (origin.size() != static_cast<std::size_t>(dimension) || shape.size() != static_cast<std::size_t>(dimension))
    throw Error(ErrorCode::parse, "grid origin and shape need " + std::to_string(dimension) + " entries");
  if (!(spacing > 0) || !std::isfinite(spacing)) throw Error(ErrorCode::parse, "grid spacing must be positive");
  for (int s : shape)
    if (s < 1) throw Error(ErrorCode::parse, "grid shape entries must be positive");
}

Eigen::MatrixXd PolynomialField::operator()(const Eigen::VectorXd& x) const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dimension, dimension);
  for (const auto& e : entries) {
    double v = e.constant;
    for (std::size_t a = 0; a < e.linear.size(); ++a) v += e.linear[a] * x[static_cast<Eigen::Index>(a)];
    for (std::size_t a = 0; a < e.quadratic.size(); ++a)
      for (std::size_t b = 0; b < e.quadratic[a].size(); ++b)
        v += e.quadratic[a][b] * x[static_cast<Eigen::Index>(a)] * x[static_cast<Eigen::Index>(b)];
    m(e.i, e.j) += v;
    m(e.j, e.i) -= v;
  }
  return m;
}

namespace {

void require_same_grid(const GridSpec& a, const GridSpec& b) {
  if (!(a == b)) throw Error(ErrorCode::grid_mismatch, "fields are sampled on different grids");
}

void require_differencing(const GridSpec& g) {
  for (int a = 0; a < g.dimension; ++a)
    if (g.shape[static_cast<std::size_t>(a)] < 3)
      throw Error(ErrorCode::grid_too_small, "axis " + std::to_string(a) + " has fewer than 3 points");
}

// Second-order derivative along `axis` at point p: central inside,
// one-sided three-point stencils on the boundary.
template <class Tag>
Eigen::MatrixXd derivative(const SampledField<Tag>& f, std::size_t p, int axis) {
  const GridSpec& g = f.grid();
  const std::size_t s = g.stride(axis);
  const int n = g.shape[static_cast<std::size_t>(axis)];
  const int i = static_cast<int>((p / s) % static_cast<std::size_t>(n));
  const double h2 = 2.0 * g.spacing;
  if (i == 0) return (-3.0 * f.at(p) + 4.0 * f.at(p + s) - f.at(p + 2 * s)) / h2;
  if (i == n - 1) return (3.0 * f.at(p) - 4.0 * f.at(p - s) + f.at(p - 2 * s)) / h2;
  return (f.at(p + s) - f.at(p - s)) / h2;
}

Eigen::MatrixXd gauge_point(const Eigen::MatrixXd& pi, const Eigen::MatrixXd& b) {
  const Eigen::Index d = pi.rows();
  const Eigen::MatrixXd m = Eigen::MatrixXd::Identity(d, d) + b * pi;
  // X = pi M^-1, i.e. M^T X^T = pi^T.
  return m.transpose().partialPivLu().solve(pi.transpose()).transpose();
}

}  // namespace

InvertibilityReport invertibility_check(const BivectorField& pi, const TwoFormField& b, double threshold) {
  require_same_grid(pi.grid(), b.grid());
  InvertibilityReport r;
  const int d = pi.dimension();
  r.min_abs_det = INFINITY;
  for (std::size_t p = 0; p < pi.point_count(); ++p) {
    const double det = std::abs((Eigen::MatrixXd::Identity(d, d) + b.at(p) * pi.at(p)).determinant());
    if (det < r.min_abs_det) {
      r.min_abs_det = det;
      r.worst_point = p;
    }
  }
  r.ok = r.min_abs_det > threshold;
  r.worst_coordinates = pi.grid().coordinates(r.worst_point);
  return r;
}

GaugeResult apply_gauge(const BivectorField& pi, const TwoFormField& b, double threshold) {
  const InvertibilityReport inv = invertibility_check(pi, b, threshold);
  if (!inv.ok) {
    std::string where;
    for (Eigen::Index a = 0; a < inv.worst_coordinates.size(); ++a)
      where += (a ? "," : "") + std::to_string(inv.worst_coordinates[a]);
    throw Error(ErrorCode::singular_endomorphism,
                "|det(I + B pi)| = " + std::to_string(inv.min_abs_det) + " at (" + where + ")");
  }
  GaugeResult out{BivectorField(pi.grid()), 0.0};
  for (std::size_t p = 0; p < pi.point_count(); ++p) {
    const Eigen::MatrixXd x = gauge_point(pi.at(p), b.at(p));
    out.max_asymmetry = std::max(out.max_asymmetry, (x + x.transpose()).cwiseAbs().maxCoeff());
    out.field.set(p, 0.5 * (x - x.transpose()));
  }
  return out;
}

Residual closedness_residual(const TwoFormField& b) {
  Residual r;
  const int d = b.dimension();
  if (d < 3) return r;
  require_differencing(b.grid());
  std::vector<Eigen::MatrixXd> db(static_cast<std::size_t>(d));
  for (std::size_t p = 0; p < b.point_count(); ++p) {
    for (int l = 0; l < d; ++l) db[static_cast<std::size_t>(l)] = derivative(b, p, l);
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j)
        for (int k = j + 1; k < d; ++k) {
          const double v = std::abs(db[static_cast<std::size_t>(i)](j, k) + db[static_cast<std::size_t>(j)](k, i) +
                                    db[static_cast<std::size_t>(k)](i, j));
          if (v > r.value) {
            r.value = v;
            r.worst_point = p;
          }
        }
  }
  return r;
}

Residual jacobi_residual(const BivectorField& pi) {
  Residual r;
  const int d = pi.dimension();
  if (d < 3) return r;
  require_differencing(pi.grid());
  std::vector<Eigen::MatrixXd> dp(static_cast<std::size_t>(d));
  for (std::size_t p = 0; p < pi.point_count(); ++p) {
    for (int l = 0; l < d; ++l) dp[static_cast<std::size_t>(l)] = derivative(pi, p, l);
    const auto m = pi.at(p);
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j)
        for (int k = j + 1; k < d; ++k) {
          double v = 0.0;
          for (int l = 0; l < d; ++l) {
            const auto& dl = dp[static_cast<std::size_t>(l)];
            v += m(i, l) * dl(j, k) + m(j, l) * dl(k, i) + m(k, l) * dl(i, j);
          }
          if (std::abs(v) > r.value) {
            r.value = std::abs(v);
            r.worst_point = p;
          }
        }
  }
  return r;
}

std::vector<int> rank_map(const BivectorField& pi, double threshold) {
  std::vector<int> out;
  out.reserve(pi.point_count());
  for (std::size_t p = 0; p < pi.point_count(); ++p) {
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(pi.at(p));
    out.push_back(static_cast<int>((svd.singularValues().array() > threshold).count()));
  }
  return out;
}

double verify_composition(const BivectorField& pi, const TwoFormField& b, const TwoFormField& b2, double threshold) {
  require_same_grid(b.grid(), b2.grid());
  TwoFormField sum(b.grid());
  for (std::size_t p = 0; p < b.point_count(); ++p) sum.set(p, b.at(p) + b2.at(p));
  const BivectorField stepwise = apply_gauge(apply_gauge(pi, b, threshold).field, b2, threshold).field;
  const BivectorField direct = apply_gauge(pi, sum, threshold).field;
  double worst = 0.0;
  for (std::size_t p = 0; p < pi.point_count(); ++p)
    worst = std::max(worst, (stepwise.at(p) - direct.at(p)).cwiseAbs().maxCoeff());
  return worst;
}

}  // namespace morita
