#include "espline_basis.hpp"

#include <cmath>

#include "errors.hpp"

namespace gardner {
namespace {

void check_args(double zeta, double h) {
  if (!(zeta > 0.0) || !std::isfinite(zeta)) {
    throw DomainError("spline parameter zeta must be positive, got " + std::to_string(zeta));
  }
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw DomainError("grid spacing h must be positive, got " + std::to_string(h));
  }
}

// Horner evaluation of sum_k c[k] y^k.
template <std::size_t K>
double poly(const std::array<double, K>& c, double y) {
  double acc = 0.0;
  for (std::size_t k = K; k-- > 0;) acc = acc * y + c[k];
  return acc;
}

// Series in y = (zeta h)^2, all exact reciprocals of factorial combinations.
// (sinh x - x) / x^3
constexpr std::array<double, 5> kSinhMinusLin{1.0 / 6, 1.0 / 120, 1.0 / 5040, 1.0 / 362880,
                                              1.0 / 39916800};
// (x cosh x - sinh x) / x^3 = sum_k 2k / (2k+1)! x^{2k-2}
constexpr std::array<double, 5> kDenominator{1.0 / 3, 1.0 / 30, 1.0 / 840, 1.0 / 45360,
                                             1.0 / 3991680};
// (cosh x - 1) / x^2
constexpr std::array<double, 5> kCoshMinusOne{1.0 / 2, 1.0 / 24, 1.0 / 720, 1.0 / 40320,
                                              1.0 / 3628800};
// sinh x / x
constexpr std::array<double, 5> kSinhOverX{1.0, 1.0 / 6, 1.0 / 120, 1.0 / 5040, 1.0 / 362880};

// (zeta h cosh(zeta h) - sinh(zeta h)) / zeta^3, stable for all zeta h.
double scaled_denominator(double zeta, double h) {
  const double x = zeta * h;
  if (x < kSeriesSwitch) return h * h * h * poly(kDenominator, x * x);
  return (x * std::cosh(x) - std::sinh(x)) / (zeta * zeta * zeta);
}

}  // namespace

BasisConstants basis_constants_closed_form(double zeta, double h) {
  check_args(zeta, h);
  const double x = zeta * h;
  const double s = std::sinh(x);
  const double c = std::cosh(x);
  const double d = x * c - s;

  BasisConstants k;
  k.zeta = zeta;
  k.h = h;
  k.alpha1 = (s - x) / (2.0 * d);
  k.alpha2 = 1.0;
  k.beta1 = zeta * (1.0 - c) / (2.0 * d);
  k.beta2 = -k.beta1;
  k.gamma1 = zeta * zeta * s / (2.0 * d);
  k.gamma2 = -2.0 * k.gamma1;
  return k;
}

BasisConstants basis_constants_series(double zeta, double h) {
  check_args(zeta, h);
  const double x = zeta * h;
  const double y = x * x;
  // Common factor x^3 cancels between numerators and the denominator.
  const double den = 2.0 * poly(kDenominator, y);

  BasisConstants k;
  k.zeta = zeta;
  k.h = h;
  k.alpha1 = poly(kSinhMinusLin, y) / den;
  k.alpha2 = 1.0;
  k.beta1 = -poly(kCoshMinusOne, y) / (h * den);
  k.beta2 = -k.beta1;
  k.gamma1 = poly(kSinhOverX, y) / (h * h * den);
  k.gamma2 = -2.0 * k.gamma1;
  return k;
}

BasisConstants compute_basis_constants(double zeta, double h) {
  check_args(zeta, h);
  return zeta * h < kSeriesSwitch ? basis_constants_series(zeta, h)
                                  : basis_constants_closed_form(zeta, h);
}

namespace detail {

double cosh_m1_over_z2(double z, double t) {
  const double half = 0.5 * z * t;
  if (std::abs(half) < 1e-8) return 0.5 * t * t;
  const double sh = std::sinh(half);
  return 2.0 * sh * sh / (z * z);
}

double sinh_over_z(double z, double t) {
  const double x = z * t;
  if (std::abs(x) < kSeriesSwitch) return t * poly(kSinhOverX, x * x);
  return std::sinh(x) / z;
}

double sinh_m_lin_over_z3(double z, double t) {
  const double x = z * t;
  if (std::abs(x) < 0.5) {
    // Eight terms: truncation below 1e-17 relative at |x| = 0.5.
    constexpr std::array<double, 8> c{1.0 / 6,          1.0 / 120,           1.0 / 5040,
                                      1.0 / 362880,     1.0 / 39916800,      1.0 / 6227020800,
                                      1.0 / 1307674368000, 1.0 / 355687428096000};
    return t * t * t * poly(c, x * x);
  }
  return (std::sinh(x) - x) / (z * z * z);
}

}  // namespace detail

SplinePieceCoefficients compute_piece_coefficients(double zeta, double h) {
  check_args(zeta, h);
  const double x = zeta * h;
  const double s = std::sinh(x);
  const double c = std::cosh(x);
  const double z3 = zeta * zeta * zeta;
  const double D = scaled_denominator(zeta, h);
  const double d = D * z3;                       // zeta h cosh - sinh, accurate
  const double cm1 = zeta * zeta * detail::cosh_m1_over_z2(zeta, h);  // cosh - 1

  SplinePieceCoefficients p;
  p.zeta = zeta;
  p.h = h;
  p.a1 = x * c / d;
  p.b1 = 0.5 * zeta * (c * cm1 + s * s) / (d * -cm1);
  p.b2 = zeta / (2.0 * d);
  p.c1 = 0.25 * (std::exp(-x) * -cm1 + s * std::expm1(-x)) / (d * -cm1);
  p.d1 = 0.25 * (std::exp(x) * cm1 + s * std::expm1(x)) / (d * -cm1);

  p.scaled_denominator = D;
  p.inner_curvature = -detail::sinh_over_z(zeta, h) / D;
  p.inner_cubic = (1.0 + 2.0 * c) / (2.0 * D);
  return p;
}

BasisValue evaluate_bspline(double center, double x, const SplinePieceCoefficients& p) {
  const double t = x - center;
  const double r = std::abs(t);
  const double sign = t < 0.0 ? -1.0 : 1.0;
  const double z = p.zeta;
  const double h = p.h;

  BasisValue out;
  if (r >= 2.0 * h) return out;

  if (r <= h) {
    out.value = 1.0 + p.inner_curvature * detail::cosh_m1_over_z2(z, r) +
                p.inner_cubic * detail::sinh_m_lin_over_z3(z, r);
    out.d1 = sign * (p.inner_curvature * detail::sinh_over_z(z, r) +
                     p.inner_cubic * detail::cosh_m1_over_z2(z, r));
    out.d2 = p.inner_curvature * std::cosh(z * r) + p.inner_cubic * detail::sinh_over_z(z, r);
  } else {
    const double y = r - 2.0 * h;  // in (-h, 0)
    const double scale = -0.5 / p.scaled_denominator;
    out.value = scale * detail::sinh_m_lin_over_z3(z, y);
    out.d1 = sign * scale * detail::cosh_m1_over_z2(z, y);
    out.d2 = scale * detail::sinh_over_z(z, y);
  }
  return out;
}

BasisValue evaluate_bspline_piecewise(double center, double x, const SplinePieceCoefficients& p) {
  const double t = x - center;
  const double r = std::abs(t);
  const double sign = t < 0.0 ? -1.0 : 1.0;
  const double z = p.zeta;
  const double h = p.h;

  BasisValue out;
  if (r >= 2.0 * h) return out;
  if (r <= h) {
    const double ep = std::exp(z * r);
    const double em = std::exp(-z * r);
    out.value = p.a1 + p.b1 * r + p.c1 * ep + p.d1 * em;
    out.d1 = sign * (p.b1 + z * (p.c1 * ep - p.d1 * em));
    out.d2 = z * z * (p.c1 * ep + p.d1 * em);
  } else {
    const double y = r - 2.0 * h;
    out.value = p.b2 * (y - std::sinh(z * y) / z);
    out.d1 = sign * p.b2 * (1.0 - std::cosh(z * y));
    out.d2 = -p.b2 * z * std::sinh(z * y);
  }
  return out;
}

}  // namespace gardner
