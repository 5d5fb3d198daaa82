#include "fel/beam.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "fel/errors.hpp"

namespace fel::beam {

BeamParameters::BeamParameters(double eta_, double n_electrons_, double omega_eta_)
    : eta(eta_), n_electrons(n_electrons_), omega_eta(omega_eta_) {
    if (!(eta > 0.0)) throw std::domain_error("BeamParameters: eta must be > 0");
    if (!(n_electrons > 0.0)) throw std::domain_error("BeamParameters: n_electrons must be > 0");
}

GaussianScales::GaussianScales(double omega_0_, double sigma_omega_)
    : omega_0(omega_0_), sigma_omega(sigma_omega_) {
    if (!(sigma_omega > 0.0)) throw std::domain_error("GaussianScales: sigma_omega must be > 0");
}

OccupationProfile::OccupationProfile(int m_min, std::vector<double> values, ProfileKind kind)
    : m_min_(m_min), values_(std::move(values)), kind_(kind) {
    if (values_.size() < 2) throw std::domain_error("OccupationProfile: window must contain m_min < m_max");
    double sum = 0.0;
    for (double v : values_) {
        if (v < 0.0 || v > 1.0) throw std::domain_error("OccupationProfile: occupations must lie in [0, 1]");
        sum += v;
    }
    if (std::fabs(sum - 1.0) > 1e-10)
        throw std::domain_error("OccupationProfile: occupations must sum to 1");
}

void OccupationProfile::write_csv(std::ostream& out) const {
    out << "m,n_m\n";
    char buf[64];
    for (std::size_t i = 0; i < values_.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%d,%.17g\n", m_min_ + static_cast<int>(i), values_[i]);
        out << buf;
    }
}

double mode_energy(int m, const BeamParameters& params) {
    return static_cast<double>(m) * static_cast<double>(m) / (2.0 * params.eta);
}

double transition_frequency(int m, const BeamParameters& params) {
    return (2.0 * m + 1.0) / (2.0 * params.eta);
}

OccupationProfile gaussian_profile(int m0, double sigma_m, int window_halfwidth) {
    if (!(sigma_m > 0.0)) throw config_error("gaussian_profile: sigma_m must be > 0");
    if (window_halfwidth < 8.0 * sigma_m)
        throw config_error("gaussian_profile: window_halfwidth must be >= 8 sigma_m");
    std::vector<double> values(2 * static_cast<std::size_t>(window_halfwidth) + 1);
    double sum = 0.0;
    for (int k = -window_halfwidth; k <= window_halfwidth; ++k) {
        const double v = std::exp(-0.5 * (static_cast<double>(k) / sigma_m) * (static_cast<double>(k) / sigma_m));
        values[static_cast<std::size_t>(k + window_halfwidth)] = v;
        sum += v;
    }
    for (double& v : values) v /= sum;
    return OccupationProfile(m0 - window_halfwidth, std::move(values), ProfileKind::gaussian);
}

OccupationProfile cold_profile(int m0) {
    std::vector<double> values(5, 0.0);
    values[2] = 1.0;
    return OccupationProfile(m0 - 2, std::move(values), ProfileKind::cold);
}

GaussianScales gaussian_scales(int m0, double sigma_m, const BeamParameters& params) {
    return GaussianScales(transition_frequency(m0, params), sigma_m / params.eta);
}

double rho_from_physical(const PhysicalBeamInputs& inputs) {
    if (!(inputs.current_ampere > 0.0) || !(inputs.undulator_wavelength_m > 0.0) ||
        !(inputs.lorentz_factor > 0.0) || !(inputs.radiation_frequency_rad_s > 0.0))
        throw std::domain_error("rho_from_physical: all inputs must be strictly positive");

    // CODATA 2018, 10 significant digits
    constexpr double e = 1.602176634e-19;         // C
    constexpr double eps0 = 8.854187813e-12;      // F/m
    constexpr double me_c2 = 8.187105777e-14;     // J
    constexpr double two_pi = 6.283185307179586;

    return e * inputs.current_ampere * inputs.undulator_wavelength_m /
           (two_pi * eps0 * me_c2 * inputs.lorentz_factor * inputs.radiation_frequency_rad_s);
}

}  // namespace fel::beam
