#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "terrasim/error.hpp"

namespace terrasim {

using Index = std::int64_t;

/// Structural identity of a grid. Two grids with equal keys have identical
/// cell lists, so fields built on one can be combined with fields on the other.
template <typename Scalar>
struct GridKey {
  Scalar radius{1};
  int nx{0};

  friend bool operator==(const GridKey&, const GridKey&) = default;
};

/**
 * Cell-centered uniform Cartesian lattice over [-r, r]^2, restricted to the
 * cells whose centers lie strictly inside the disk of radius r.
 *
 * Cells are stored row-major by (j, i): j is the lattice row (y), i the
 * column (x). Exposed faces of the staircase mask form the boundary, each
 * carrying an axis-aligned outward normal.
 */
template <typename Scalar = double>
class DiskGrid {
 public:
  using Point = Eigen::Matrix<Scalar, 2, 1>;

  static constexpr Index kNoNeighbor = -1;

  enum Direction : int { kEast = 0, kWest = 1, kNorth = 2, kSouth = 3 };

  struct Cell {
    int i;
    int j;
    Point center;
  };

  struct BoundaryFace {
    Index cell;
    Point normal;
    Scalar length;
  };

  DiskGrid(Scalar radius, int nx) : radius_(radius), nx_(nx) {
    if (!(radius > Scalar(0)) || !std::isfinite(static_cast<double>(radius))) {
      throw ValidationError("grid radius must be > 0");
    }
    if (nx < 4) {
      throw ValidationError("nx must be >= 4");
    }
    h_ = Scalar(2) * radius / Scalar(nx);
    lattice_.assign(static_cast<std::size_t>(nx) * nx, kNoNeighbor);

    const Scalar r2 = radius * radius;
    for (int j = 0; j < nx; ++j) {
      for (int i = 0; i < nx; ++i) {
        Point c = lattice_center(i, j);
        if (c.squaredNorm() < r2) {
          lattice_[lattice_slot(i, j)] = static_cast<Index>(cells_.size());
          cells_.push_back(Cell{i, j, c});
        }
      }
    }

    static constexpr std::array<std::array<int, 2>, 4> kOffsets{
        {{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
    neighbors_.resize(cells_.size());
    for (std::size_t k = 0; k < cells_.size(); ++k) {
      const Cell& cell = cells_[k];
      for (int d = 0; d < 4; ++d) {
        const Index n = lattice_index(cell.i + kOffsets[d][0], cell.j + kOffsets[d][1]);
        neighbors_[k][d] = n;
        if (n == kNoNeighbor) {
          faces_.push_back(BoundaryFace{static_cast<Index>(k),
                                        Point(Scalar(kOffsets[d][0]), Scalar(kOffsets[d][1])),
                                        h_});
        }
      }
    }
  }

  Scalar radius() const { return radius_; }
  int nx() const { return nx_; }
  Scalar h() const { return h_; }
  Scalar cell_area() const { return h_ * h_; }
  Index size() const { return static_cast<Index>(cells_.size()); }
  GridKey<Scalar> key() const { return {radius_, nx_}; }

  std::span<const Cell> cells() const { return cells_; }
  const Cell& cell(Index k) const { return cells_[static_cast<std::size_t>(k)]; }
  const Point& center(Index k) const { return cell(k).center; }

  /// Neighbor indices in {east, west, north, south} order; kNoNeighbor where
  /// the face is on the boundary.
  const std::array<Index, 4>& neighbors(Index k) const {
    return neighbors_[static_cast<std::size_t>(k)];
  }

  int degree(Index k) const {
    int n = 0;
    for (Index nb : neighbors(k)) n += nb != kNoNeighbor;
    return n;
  }

  std::span<const BoundaryFace> boundary_faces() const { return faces_; }

  /// Staircase boundary length: number of exposed faces times h.
  Scalar boundary_length() const { return Scalar(faces_.size()) * h_; }

  Scalar total_area() const { return Scalar(cells_.size()) * cell_area(); }

  /// Cell index for lattice position (i, j), or kNoNeighbor if masked or out
  /// of range.
  Index lattice_index(int i, int j) const {
    if (i < 0 || j < 0 || i >= nx_ || j >= nx_) return kNoNeighbor;
    return lattice_[lattice_slot(i, j)];
  }

  Point lattice_center(int i, int j) const {
    return Point(-radius_ + (Scalar(i) + Scalar(0.5)) * h_,
                 -radius_ + (Scalar(j) + Scalar(0.5)) * h_);
  }

  /// Index of the interior cell whose center is nearest to p.
  Index nearest_cell(const Point& p) const {
    Index best = 0;
    Scalar best_d = (cells_.front().center - p).squaredNorm();
    for (Index k = 1; k < size(); ++k) {
      Scalar d = (center(k) - p).squaredNorm();
      if (d < best_d) {
        best_d = d;
        best = k;
      }
    }
    return best;
  }

 private:
  std::size_t lattice_slot(int i, int j) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx_) + static_cast<std::size_t>(i);
  }

  Scalar radius_;
  int nx_;
  Scalar h_{};
  std::vector<Cell> cells_;
  std::vector<std::array<Index, 4>> neighbors_;
  std::vector<BoundaryFace> faces_;
  std::vector<Index> lattice_;
};

template <typename Scalar>
DiskGrid<Scalar> build_disk_grid(Scalar radius, int nx) {
  return DiskGrid<Scalar>(radius, nx);
}

using Grid = DiskGrid<double>;

}  // namespace terrasim
