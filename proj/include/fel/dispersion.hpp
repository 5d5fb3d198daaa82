#pragma once

#include <array>
#include <complex>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "fel/beam.hpp"
#include "fel/selfenergy.hpp"

namespace fel::dispersion {

using complexd = std::complex<double>;

struct ThresholdSolution {
    double omega_res;
    double y_res;
    double im_gamma_at_res;
    bool growing;
    double residual;
    int iterations;
    bool multiple_roots;  // more than one sign change seen inside the bracket
};

struct PierceCubic {
    std::array<complexd, 3> roots;
    std::optional<complexd> unstable_root;  // largest positive imaginary part
    double rho_eff;
};

// Gamma^R(w) = (N/2pi)(w - w_eta) - Sigma^R(w); the free-part i0+ is carried
// by the broadening in the discrete method and dropped for the closed form.
complexd gamma_r_discrete(const beam::OccupationProfile& profile,
                          const beam::BeamParameters& params, double omega,
                          const selfenergy::Broadening& broadening);

complexd gamma_r_gaussian(const beam::GaussianScales& scales,
                          const beam::BeamParameters& params, double omega);

// Root of Re Gamma^R(w) = 0 inside the bracket: bisection to 1e-3 of the
// bracket width, then secant polish to |Re Gamma| <= 1e-10 N.
ThresholdSolution solve_threshold(const beam::GaussianScales& scales,
                                  const beam::BeamParameters& params,
                                  std::pair<double, double> bracket);

std::vector<std::pair<double, bool>> gain_sign_map(const beam::GaussianScales& scales,
                                                   const beam::BeamParameters& params,
                                                   std::span<const double> omega_grid);

// Roots of (w - c1)(w - c2)(w - c3) = rhs by shifted Cardano plus Newton
// polish in factored form.
std::array<complexd, 3> cubic_roots(double c1, double c2, double c3, double rhs);

// Cold-beam dispersion cubic (w - w_eta)(w - Omega_m0)(w - Omega_m0+1) = 2 pi.
PierceCubic pierce_cubic(int m0, const beam::BeamParameters& params);

// Degenerate surrogate with all three centers equal (analytic limit object).
PierceCubic pierce_cubic_degenerate(double omega_bar, int m0,
                                    const beam::BeamParameters& params);

// (w - w_eta)/2pi + eta^{3/2} PV int dp (df/dp)/(w - p/sqrt(eta)) on a uniform
// p-grid (central differences, symmetric-cell PV).
complexd continuum_dispersion_residual(std::span<const std::pair<double, double>> f_samples,
                                       const beam::BeamParameters& params, double omega);

}  // namespace fel::dispersion
