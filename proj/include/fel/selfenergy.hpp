#pragma once

#include <complex>

#include "fel/beam.hpp"

namespace fel::selfenergy {

using complexd = std::complex<double>;

// Finite replacement of the i0+ prescription in spectral denominators.
struct Broadening {
    double epsilon;
    explicit Broadening(double epsilon_);
};

struct SelfEnergySample {
    double omega;
    complexd sigma_r;
    complexd sigma_a;
    complexd sigma_k;
};

// Regularized resolvent kernel K_eps(x) with lim_{eps->0+} K_eps = PV(1/x) - i pi delta(x):
//   K_eps(x) = (2/eps) F(x/eps) - i (sqrt(pi)/eps) exp(-(x/eps)^2).
// Real and imaginary parts are an exact Hilbert-transform pair at any eps, and the
// smoothing is symmetric, so the broadening bias is O((eps/width)^2) rather than the
// O(eps/width) of the shifted-pole form 1/(x + i eps).
complexd spectral_kernel(double x, double eps);

// Exact discrete spectral sums over the occupation window.
// Sigma^R = N eta sum_m (n_m - n_{m+1}) K_eps(w - Omega_m), summed over the
// in-window transitions m_min <= m < m_max (the profile is continued by its
// edge values, so a uniform window is exactly gain-free).
complexd sigma_r_discrete(const beam::OccupationProfile& profile,
                          const beam::BeamParameters& params, double omega,
                          const Broadening& broadening);

complexd sigma_a_discrete(const beam::OccupationProfile& profile,
                          const beam::BeamParameters& params, double omega,
                          const Broadening& broadening);

// Sigma^K = -i N eta sum_m S_m 2 pi delta_eps(w - Omega_m),
// S_m = n_m + n_{m+1} - 2 n_m n_{m+1}, pi delta_eps(x) = -Im K_eps(x).
complexd sigma_k_discrete(const beam::OccupationProfile& profile,
                          const beam::BeamParameters& params, double omega,
                          const Broadening& broadening);

// Dilute-beam variant with S_m -> 2 n_m.
complexd sigma_k_discrete_dilute(const beam::OccupationProfile& profile,
                                 const beam::BeamParameters& params, double omega,
                                 const Broadening& broadening);

// Gaussian-beam continuum closed forms, y = (w - Omega_0)/(sqrt(2) sigma_Omega):
//   Sigma^R = (N/s^2)[2 y F(y) - 1] - i N sqrt(pi) (y/s^2) exp(-y^2)
//   Sigma^K = -i 4 sqrt(2 pi) N eta / s * exp(-y^2)
complexd sigma_r_gaussian(const beam::BeamParameters& params,
                          const beam::GaussianScales& scales, double omega);

complexd sigma_k_gaussian(const beam::BeamParameters& params,
                          const beam::GaussianScales& scales, double omega);

// Sigma^K / (2 i Im Sigma^R) = 2 sqrt(2) eta sigma_Omega / y; diverges at y = 0.
double effective_occupation(const beam::BeamParameters& params,
                            const beam::GaussianScales& scales, double omega);

double detuning_y(const beam::GaussianScales& scales, double omega);

SelfEnergySample sample_discrete(const beam::OccupationProfile& profile,
                                 const beam::BeamParameters& params, double omega,
                                 const Broadening& broadening);

SelfEnergySample sample_gaussian(const beam::BeamParameters& params,
                                 const beam::GaussianScales& scales, double omega);

}  // namespace fel::selfenergy
