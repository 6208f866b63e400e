#pragma once

#include <cstddef>
#include <vector>

namespace gardner {

/// Square matrix stored by diagonals: entry (i, j) with -kl <= j - i <= ku.
class BandedMatrix {
 public:
  BandedMatrix() = default;
  BandedMatrix(std::size_t n, std::size_t kl, std::size_t ku);

  std::size_t size() const noexcept { return n_; }
  std::size_t lower() const noexcept { return kl_; }
  std::size_t upper() const noexcept { return ku_; }

  bool in_band(std::size_t i, std::size_t j) const noexcept;
  /// Entry (i, j); zero outside the band.
  double get(std::size_t i, std::size_t j) const noexcept;
  /// Reference to an in-band entry. Throws DomainError outside the band.
  double& at(std::size_t i, std::size_t j);
  void add(std::size_t i, std::size_t j, double v) { at(i, j) += v; }

  void fill(double v);
  std::vector<double> multiply(const std::vector<double>& x) const;
  /// Dense row-major copy; test helper.
  std::vector<double> to_dense() const;

 private:
  std::size_t n_ = 0;
  std::size_t kl_ = 0;
  std::size_t ku_ = 0;
  std::size_t width_ = 0;
  std::vector<double> data_;  // row-major, width kl+ku+1, column offset j - i + kl
};

/// Outcome of a failed factorization.
struct PivotFailure {
  std::size_t row = 0;
  double pivot = 0.0;
};

/// In-place LU factorization without pivoting. Fill-in stays inside the
/// band. Returns false and sets `failure` when |pivot| < rel_tol * row_scale,
/// where row_scale is the largest entry magnitude of that row before
/// elimination.
bool banded_lu_factor(BandedMatrix& a, PivotFailure& failure, double rel_tol = 1e-14);

/// Solves (LU) x = b in place, using the factors from banded_lu_factor.
void banded_lu_solve(const BandedMatrix& lu, std::vector<double>& b);

/// Dense Gaussian elimination with partial pivoting, row-major n x n.
/// Throws DomainError for a singular matrix. Used as an independent oracle.
std::vector<double> dense_solve(std::vector<double> a, std::vector<double> b);

}  // namespace gardner
