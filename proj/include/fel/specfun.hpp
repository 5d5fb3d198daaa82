#pragma once

#include <span>
#include <utility>

namespace fel::specfun {

// Dawson integral F(y) = exp(-y^2) * int_0^y exp(t^2) dt.
// Absolute error below 1e-12 for |y| <= 50. Power series for small |y|,
// Rybicki's sampling expansion (h = 0.2) otherwise.
double dawson(double y);

// Principal-value Hilbert transform (1/pi) PV int dw' im(w')/(w' - w_eval)
// of a function sampled on a uniform grid, midpoint rule with the singular
// cell excluded symmetrically. Throws std::range_error when w_eval is within
// one grid cell of the boundary.
double hilbert_transform_check(std::span<const std::pair<double, double>> im_values,
                               double omega_eval);

}  // namespace fel::specfun
