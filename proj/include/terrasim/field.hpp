#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "terrasim/error.hpp"
#include "terrasim/grid.hpp"

namespace terrasim {

/// One value per interior cell of a DiskGrid, in the grid's cell order.
template <typename Scalar = double>
class ScalarField {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  ScalarField() = default;
  ScalarField(GridKey<Scalar> key, Vector values) : key_(key), values_(std::move(values)) {}
  explicit ScalarField(const DiskGrid<Scalar>& grid, Scalar fill = Scalar(0))
      : key_(grid.key()), values_(Vector::Constant(grid.size(), fill)) {}

  const GridKey<Scalar>& key() const { return key_; }
  Index size() const { return values_.size(); }

  const Vector& values() const { return values_; }
  Vector& values() { return values_; }

  Scalar operator[](Index k) const { return values_[k]; }
  Scalar& operator[](Index k) { return values_[k]; }

  bool on(const DiskGrid<Scalar>& grid) const {
    return key_ == grid.key() && values_.size() == grid.size();
  }

  Scalar min() const { return values_.minCoeff(); }
  Scalar max() const { return values_.maxCoeff(); }

  ScalarField& operator+=(const ScalarField& o) {
    require_same(o);
    values_ += o.values_;
    return *this;
  }
  ScalarField& operator-=(const ScalarField& o) {
    require_same(o);
    values_ -= o.values_;
    return *this;
  }
  ScalarField& operator*=(Scalar s) {
    values_ *= s;
    return *this;
  }

  friend ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
  friend ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
  friend ScalarField operator*(ScalarField a, Scalar s) { return a *= s; }
  friend ScalarField operator*(Scalar s, ScalarField a) { return a *= s; }

  /// Cellwise product.
  friend ScalarField hadamard(const ScalarField& a, const ScalarField& b) {
    a.require_same(b);
    return ScalarField(a.key_, a.values_.cwiseProduct(b.values_));
  }

  void require_same(const ScalarField& o) const {
    if (!(key_ == o.key_) || values_.size() != o.values_.size()) throw GridMismatch();
  }

 private:
  GridKey<Scalar> key_{};
  Vector values_;
};

template <typename Scalar>
void require_on(const DiskGrid<Scalar>& grid, const ScalarField<Scalar>& f) {
  if (!f.on(grid)) throw GridMismatch();
}

template <typename Scalar>
ScalarField<Scalar> constant_field(const DiskGrid<Scalar>& grid, Scalar c) {
  if (!std::isfinite(static_cast<double>(c))) throw ValidationError("constant must be finite");
  return ScalarField<Scalar>(grid, c);
}

template <typename Scalar>
struct GaussianBump {
  Eigen::Matrix<Scalar, 2, 1> center;
  Scalar amplitude;
  Scalar width;
};

/// Sum of isotropic Gaussians a * exp(-|x - c|^2 / w^2) sampled at cell centers.
template <typename Scalar>
ScalarField<Scalar> gaussian_mixture(const DiskGrid<Scalar>& grid,
                                     const std::vector<GaussianBump<Scalar>>& bumps) {
  for (const auto& b : bumps) {
    if (!(b.width > Scalar(0))) throw ValidationError("bump width must be > 0");
    if (!(b.amplitude >= Scalar(0))) throw ValidationError("bump amplitude must be >= 0");
  }
  ScalarField<Scalar> f(grid);
  for (Index k = 0; k < grid.size(); ++k) {
    Scalar v(0);
    for (const auto& b : bumps) {
      v += b.amplitude * std::exp(-(grid.center(k) - b.center).squaredNorm() / (b.width * b.width));
    }
    f[k] = v;
  }
  return f;
}

/// Midpoint quadrature: sum of values in cell order times h^2.
template <typename Scalar>
Scalar integrate(const DiskGrid<Scalar>& grid, const ScalarField<Scalar>& f) {
  require_on(grid, f);
  Scalar sum(0);
  for (Index k = 0; k < f.size(); ++k) sum += f[k];
  return sum * grid.cell_area();
}

/**
 * Sum over cell pairs of |x - y| f(x) g(y) h^4.
 *
 * Pairs are visited once (x < y in cell order) and accumulate
 * |x - y| (f(x) g(y) + f(y) g(x)), which makes the result bitwise symmetric in
 * (f, g). Diagonal pairs have zero distance and are skipped.
 */
template <typename Scalar>
Scalar distance_weighted_double_integral(const DiskGrid<Scalar>& grid,
                                         const ScalarField<Scalar>& f,
                                         const ScalarField<Scalar>& g) {
  require_on(grid, f);
  require_on(grid, g);
  if (f.min() < Scalar(0) || g.min() < Scalar(0)) {
    throw ValidationError("distance-weighted integral requires non-negative fields");
  }

  // Cells where both fields vanish contribute nothing.
  std::vector<Index> support;
  support.reserve(static_cast<std::size_t>(grid.size()));
  for (Index k = 0; k < grid.size(); ++k) {
    if (f[k] != Scalar(0) || g[k] != Scalar(0)) support.push_back(k);
  }

  Scalar total(0);
  for (std::size_t a = 0; a < support.size(); ++a) {
    const Index x = support[a];
    const auto& cx = grid.center(x);
    const Scalar fx = f[x];
    const Scalar gx = g[x];
    Scalar row(0);
    for (std::size_t b = a + 1; b < support.size(); ++b) {
      const Index y = support[b];
      row += (cx - grid.center(y)).norm() * (fx * g[y] + f[y] * gx);
    }
    total += row;
  }
  const Scalar area = grid.cell_area();
  return total * area * area;
}

using Field = ScalarField<double>;

}  // namespace terrasim
