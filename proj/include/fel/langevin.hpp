#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "fel/lgk.hpp"

namespace fel::langevin {

using complexd = std::complex<double>;

enum class Scheme { euler_maruyama, heun };

struct LangevinConfig {
    double dt = 1e-3;
    std::size_t n_steps = 10000;
    std::size_t n_traj = 1;
    std::uint64_t seed = 0;
    complexd initial_amplitude = complexd(0.0, 0.0);
    double burn_in_fraction = 0.2;
    Scheme scheme = Scheme::heun;
    unsigned n_workers = 1;
};

struct TrajectorySet {
    double dt;
    std::vector<std::vector<complexd>> trajectories;  // [traj][step], length n_steps + 1
};

struct EnsembleStats {
    double mean_mod2;
    double stderr_mod2;
    double autocorr_time;
    complexd mean_field;
    bool autocorr_degenerate;
};

struct ScalingFit {
    double slope;
    double intercept;
    std::vector<std::pair<double, double>> points;  // (alpha, mean |a|)
};

// da/dt = (alpha - beta |a|^2) a + zeta, <zeta* zeta'> = 2 D_las delta.
// Per step the noise increment has independent real/imag Gaussian parts of
// variance D_las dt. Deterministic given (seed, trajectory index); the worker
// count never changes the result.
TrajectorySet simulate(const lgk::CanonicalLaserParams& p, const LangevinConfig& cfg);

// Same integrator with caller-supplied per-step complex noise increments.
std::vector<complexd> integrate_with_noise(const lgk::CanonicalLaserParams& p,
                                           complexd initial_amplitude, double dt,
                                           Scheme scheme,
                                           std::span<const complexd> increments);

EnsembleStats stationary_stats(const TrajectorySet& trajectories, double burn_in_fraction);

// Fit log <|a|> vs log alpha; returns the scaling exponent (1/2 at mean-field).
// With cfg.initial_amplitude == 0 each run starts at the deterministic fixed
// point sqrt(alpha/beta).
ScalingFit scaling_sweep(double beta, double d_las, std::span<const double> alphas,
                         const LangevinConfig& cfg);

}  // namespace fel::langevin
