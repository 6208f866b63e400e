#pragma once

#include <array>

namespace gardner {

/// Nodal values of the exponential cubic B-spline B_m and its first two
/// derivatives at the knots x_{m-1}, x_m, x_{m+1}.
///
/// The derivative constants follow the collocation stencil convention:
/// U'(x_m) = beta1 * delta_{m-1} + beta2 * delta_{m+1}, i.e. beta1 is the
/// slope of B_{m-1} at x_m (negative) and beta2 = -beta1.
struct BasisConstants {
  double zeta = 0.0;
  double h = 0.0;
  double alpha1 = 0.0;  // B_m(x_{m+-1})
  double alpha2 = 1.0;  // B_m(x_m), fixed by normalization
  double beta1 = 0.0;
  double beta2 = 0.0;
  double gamma1 = 0.0;  // B''_m(x_{m+-1})
  double gamma2 = 0.0;  // B''_m(x_m)
};

/// Below this value of zeta*h the hyperbolic ratios are evaluated by their
/// Taylor series instead of the closed forms.
inline constexpr double kSeriesSwitch = 0.02;

/// Throws DomainError unless zeta > 0 and h > 0.
BasisConstants compute_basis_constants(double zeta, double h);

/// Closed-form branch only; exposed so the two branches can be compared.
BasisConstants basis_constants_closed_form(double zeta, double h);
/// Series branch only.
BasisConstants basis_constants_series(double zeta, double h);

/// Piece coefficients of a single exponential B-spline.
///
/// a1, b1, b2, c1 and d1 are the coefficients of the piecewise definition
///   [x_{m-2}, x_{m-1}]: b2 ((x_{m-2}-x) - sinh(zeta (x_{m-2}-x)) / zeta)
///   [x_{m-1}, x_m]    : a1 + b1 (x_m-x) + c1 e^{zeta (x_m-x)} + d1 e^{-zeta (x_m-x)}
///   (mirrored on the right).
/// They are ill-conditioned for small zeta*h (a1 grows like 3/(zeta h)^2), so
/// evaluation uses the equivalent form
///   inner: 1 + inner_curvature * C2(r) + inner_cubic * S3(r)
///   outer: -S3(r - 2h) / (2 * scaled_denominator)
/// with C2(r) = (cosh(zeta r) - 1)/zeta^2 and S3(r) = (sinh(zeta r) - zeta r)/zeta^3.
struct SplinePieceCoefficients {
  double zeta = 0.0;
  double h = 0.0;
  double a1 = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
  double c1 = 0.0;
  double d1 = 0.0;
  double inner_curvature = 0.0;     // equals gamma2
  double inner_cubic = 0.0;         // (1 + 2 cosh(zeta h)) / (2 D)
  double scaled_denominator = 0.0;  // D = (zeta h cosh(zeta h) - sinh(zeta h)) / zeta^3
};

SplinePieceCoefficients compute_piece_coefficients(double zeta, double h);

/// B, B' and B'' of one basis function.
struct BasisValue {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

/// Evaluates the basis function centred at `center` at point x. Returns zeros
/// outside the support (center - 2h, center + 2h).
BasisValue evaluate_bspline(double center, double x, const SplinePieceCoefficients& coeffs);

/// Same, evaluated directly from the a1..d1 piece formulas. Only accurate for
/// moderate zeta*h; used to cross-check the stable form.
BasisValue evaluate_bspline_piecewise(double center, double x,
                                      const SplinePieceCoefficients& coeffs);

namespace detail {
// (cosh(z t) - 1) / z^2, sinh(z t) / z and (sinh(z t) - z t) / z^3 without
// cancellation for small z t.
double cosh_m1_over_z2(double z, double t);
double sinh_over_z(double z, double t);
double sinh_m_lin_over_z3(double z, double t);
}  // namespace detail

}  // namespace gardner
