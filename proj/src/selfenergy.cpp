#include "fel/selfenergy.hpp"

#include <cmath>
#include <stdexcept>

#include "fel/specfun.hpp"

namespace fel::selfenergy {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrtPi = 1.77245385090551602730;
constexpr double kSqrt2 = 1.41421356237309504880;
}  // namespace

Broadening::Broadening(double epsilon_) : epsilon(epsilon_) {
    if (!(epsilon > 0.0)) throw std::domain_error("Broadening: epsilon must be > 0");
}

// Broadened spectral kernel: PV 1/x -> (2/eps) F(x/eps), pi delta(x) ->
// (sqrt(pi)/eps) exp(-(x/eps)^2). The two parts are a Hilbert pair, so
// Kramers-Kronig holds exactly at finite eps, and the kernel is even in its
// smoothing, so the broadening bias is O((eps/sigma)^2) instead of O(eps).
complexd spectral_kernel(double x, double eps) {
    const double u = x / eps;
    return complexd(2.0 / eps * specfun::dawson(u), -kSqrtPi / eps * std::exp(-u * u));
}

complexd sigma_r_discrete(const beam::OccupationProfile& profile,
                          const beam::BeamParameters& params, double omega,
                          const Broadening& broadening) {
    complexd sum = 0.0;
    // Only in-window differences enter: the profile is continued by its edge
    // values, so a uniform window is exactly gain-free. Valid profiles decay
    // to ~0 at the window edges, where this agrees with zero-continuation.
    for (int m = profile.m_min(); m < profile.m_max(); ++m) {
        const double diff = profile.n(m) - profile.n(m + 1);
        if (diff == 0.0) continue;
        sum += diff * spectral_kernel(omega - beam::transition_frequency(m, params),
                                      broadening.epsilon);
    }
    return params.n_electrons * params.eta * sum;
}

complexd sigma_a_discrete(const beam::OccupationProfile& profile,
                          const beam::BeamParameters& params, double omega,
                          const Broadening& broadening) {
    return std::conj(sigma_r_discrete(profile, params, omega, broadening));
}

complexd sigma_k_discrete(const beam::OccupationProfile& profile,
                          const beam::BeamParameters& params, double omega,
                          const Broadening& broadening) {
    const double eps = broadening.epsilon;
    double sum = 0.0;
    for (int m = profile.m_min(); m < profile.m_max(); ++m) {
        const double nm = profile.n(m);
        const double nm1 = profile.n(m + 1);
        const double s = nm + nm1 - 2.0 * nm * nm1;
        if (s == 0.0) continue;
        const double x = omega - beam::transition_frequency(m, params);
        sum -= 2.0 * s * spectral_kernel(x, eps).imag();
    }
    return complexd(0.0, -params.n_electrons * params.eta * sum);
}

complexd sigma_k_discrete_dilute(const beam::OccupationProfile& profile,
                                 const beam::BeamParameters& params, double omega,
                                 const Broadening& broadening) {
    const double eps = broadening.epsilon;
    double sum = 0.0;
    for (int m = profile.m_min(); m <= profile.m_max(); ++m) {
        const double nm = profile.n(m);
        if (nm == 0.0) continue;
        const double x = omega - beam::transition_frequency(m, params);
        sum -= 4.0 * nm * spectral_kernel(x, eps).imag();
    }
    return complexd(0.0, -params.n_electrons * params.eta * sum);
}

double detuning_y(const beam::GaussianScales& scales, double omega) {
    return (omega - scales.omega_0) / (kSqrt2 * scales.sigma_omega);
}

complexd sigma_r_gaussian(const beam::BeamParameters& params,
                          const beam::GaussianScales& scales, double omega) {
    const double y = detuning_y(scales, omega);
    const double s2 = scales.sigma_omega * scales.sigma_omega;
    const double n = params.n_electrons;
    const double re = n / s2 * (2.0 * y * specfun::dawson(y) - 1.0);
    const double im = -n * kSqrtPi * y / s2 * std::exp(-y * y);
    return complexd(re, im);
}

complexd sigma_k_gaussian(const beam::BeamParameters& params,
                          const beam::GaussianScales& scales, double omega) {
    const double y = detuning_y(scales, omega);
    const double amp = 4.0 * std::sqrt(2.0 * kPi) * params.n_electrons * params.eta /
                       scales.sigma_omega;
    return complexd(0.0, -amp * std::exp(-y * y));
}

double effective_occupation(const beam::BeamParameters& params,
                            const beam::GaussianScales& scales, double omega) {
    const double y = detuning_y(scales, omega);
    if (std::fabs(y) <= 1e-8)
        throw std::domain_error("effective_occupation: singular at the distribution center (y ~ 0)");
    return 2.0 * kSqrt2 * params.eta * scales.sigma_omega / y;
}

SelfEnergySample sample_discrete(const beam::OccupationProfile& profile,
                                 const beam::BeamParameters& params, double omega,
                                 const Broadening& broadening) {
    const complexd sr = sigma_r_discrete(profile, params, omega, broadening);
    return {omega, sr, std::conj(sr), sigma_k_discrete(profile, params, omega, broadening)};
}

SelfEnergySample sample_gaussian(const beam::BeamParameters& params,
                                 const beam::GaussianScales& scales, double omega) {
    const complexd sr = sigma_r_gaussian(params, scales, omega);
    return {omega, sr, std::conj(sr), sigma_k_gaussian(params, scales, omega)};
}

}  // namespace fel::selfenergy
