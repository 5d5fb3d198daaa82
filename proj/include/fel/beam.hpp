#pragma once

#include <ostream>
#include <vector>

namespace fel::beam {

// Dimensionless beam constants of the rescaled theory.
struct BeamParameters {
    double eta;          // mass parameter of the particle on the circle
    double n_electrons;  // overall scale N
    double omega_eta;    // free-mode frequency (detuning / coupling)

    BeamParameters(double eta_, double n_electrons_, double omega_eta_);
};

// Physical undulator/beam inputs, used only by the rho converter.
struct PhysicalBeamInputs {
    double current_ampere;
    double undulator_wavelength_m;
    double lorentz_factor;
    double radiation_frequency_rad_s;
};

struct GaussianScales {
    double omega_0;      // center transition frequency
    double sigma_omega;  // frequency-space width sigma_m / eta

    GaussianScales(double omega_0_, double sigma_omega_);
};

enum class ProfileKind { gaussian, cold, custom };

// Diagonal mode occupations n_m on an integer window [m_min, m_max].
class OccupationProfile {
public:
    OccupationProfile(int m_min, std::vector<double> values, ProfileKind kind);

    int m_min() const { return m_min_; }
    int m_max() const { return m_min_ + static_cast<int>(values_.size()) - 1; }
    ProfileKind kind() const { return kind_; }

    // 0 outside the window
    double n(int m) const {
        const int i = m - m_min_;
        if (i < 0 || i >= static_cast<int>(values_.size())) return 0.0;
        return values_[static_cast<std::size_t>(i)];
    }

    const std::vector<double>& values() const { return values_; }

    // columns: m, n_m
    void write_csv(std::ostream& out) const;

private:
    int m_min_;
    std::vector<double> values_;
    ProfileKind kind_;
};

double mode_energy(int m, const BeamParameters& params);           // m^2 / (2 eta)
double transition_frequency(int m, const BeamParameters& params);  // (2m+1) / (2 eta)

// Normalized Gaussian occupations on [m0 - W, m0 + W]; requires W >= 8 sigma_m
// so the discarded tail mass is negligible.
OccupationProfile gaussian_profile(int m0, double sigma_m, int window_halfwidth);

// Single occupied mode on [m0 - 2, m0 + 2].
OccupationProfile cold_profile(int m0);

// Frequency-space scales of a Gaussian profile.
GaussianScales gaussian_scales(int m0, double sigma_m, const BeamParameters& params);

// Pierce parameter rho = e I lambda_u / (2 pi eps0 m_e c^2 gamma0 omega0).
double rho_from_physical(const PhysicalBeamInputs& inputs);

}  // namespace fel::beam
