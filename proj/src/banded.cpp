#include "banded.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "errors.hpp"

namespace gardner {

BandedMatrix::BandedMatrix(std::size_t n, std::size_t kl, std::size_t ku)
    : n_(n), kl_(kl), ku_(ku), width_(kl + ku + 1), data_(n * (kl + ku + 1), 0.0) {}

bool BandedMatrix::in_band(std::size_t i, std::size_t j) const noexcept {
  return i < n_ && j < n_ && j + kl_ >= i && j <= i + ku_;
}

double BandedMatrix::get(std::size_t i, std::size_t j) const noexcept {
  return in_band(i, j) ? data_[i * width_ + (j + kl_ - i)] : 0.0;
}

double& BandedMatrix::at(std::size_t i, std::size_t j) {
  if (!in_band(i, j)) {
    throw DomainError("banded entry (" + std::to_string(i) + ", " + std::to_string(j) +
                      ") outside band");
  }
  return data_[i * width_ + (j + kl_ - i)];
}

void BandedMatrix::fill(double v) { std::fill(data_.begin(), data_.end(), v); }

std::vector<double> BandedMatrix::multiply(const std::vector<double>& x) const {
  std::vector<double> y(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t j0 = i > kl_ ? i - kl_ : 0;
    const std::size_t j1 = std::min(n_ - 1, i + ku_);
    double acc = 0.0;
    for (std::size_t j = j0; j <= j1; ++j) acc += data_[i * width_ + (j + kl_ - i)] * x[j];
    y[i] = acc;
  }
  return y;
}

std::vector<double> BandedMatrix::to_dense() const {
  std::vector<double> d(n_ * n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) d[i * n_ + j] = get(i, j);
  }
  return d;
}

bool banded_lu_factor(BandedMatrix& a, PivotFailure& failure, double rel_tol) {
  const std::size_t n = a.size();
  const std::size_t kl = a.lower();
  const std::size_t ku = a.upper();

  std::vector<double> scale(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j0 = i > kl ? i - kl : 0;
    const std::size_t j1 = std::min(n - 1, i + ku);
    for (std::size_t j = j0; j <= j1; ++j) scale[i] = std::max(scale[i], std::abs(a.get(i, j)));
  }

  for (std::size_t k = 0; k < n; ++k) {
    const double pivot = a.get(k, k);
    if (!(std::abs(pivot) >= rel_tol * scale[k]) || scale[k] == 0.0) {
      failure.row = k;
      failure.pivot = pivot;
      return false;
    }
    const std::size_t i1 = std::min(n - 1, k + kl);
    const std::size_t j1 = std::min(n - 1, k + ku);
    for (std::size_t i = k + 1; i <= i1; ++i) {
      double& lik = a.at(i, k);
      if (lik == 0.0) continue;
      lik /= pivot;
      for (std::size_t j = k + 1; j <= j1; ++j) a.at(i, j) -= lik * a.get(k, j);
    }
  }
  return true;
}

void banded_lu_solve(const BandedMatrix& lu, std::vector<double>& b) {
  const std::size_t n = lu.size();
  const std::size_t kl = lu.lower();
  const std::size_t ku = lu.upper();
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t j0 = i > kl ? i - kl : 0;
    double acc = b[i];
    for (std::size_t j = j0; j < i; ++j) acc -= lu.get(i, j) * b[j];
    b[i] = acc;
  }
  for (std::size_t i = n; i-- > 0;) {
    const std::size_t j1 = std::min(n - 1, i + ku);
    double acc = b[i];
    for (std::size_t j = i + 1; j <= j1; ++j) acc -= lu.get(i, j) * b[j];
    b[i] = acc / lu.get(i, i);
  }
}

std::vector<double> dense_solve(std::vector<double> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(a[i * n + k]) > std::abs(a[p * n + k])) p = i;
    }
    if (a[p * n + k] == 0.0) throw DomainError("singular matrix in dense solve");
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[p * n + j]);
      std::swap(b[k], b[p]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a[i * n + k] / a[k * n + k];
      if (f == 0.0) continue;
      for (std::size_t j = k; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
      b[i] -= f * b[k];
    }
  }
  for (std::size_t i = n; i-- > 0;) {
    double acc = b[i];
    for (std::size_t j = i + 1; j < n; ++j) acc -= a[i * n + j] * b[j];
    b[i] = acc / a[i * n + i];
  }
  return b;
}

}  // namespace gardner
