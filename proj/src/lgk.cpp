#include "fel/lgk.hpp"

#include <cmath>
#include <stdexcept>

#include "fel/dispersion.hpp"
#include "fel/errors.hpp"
#include "fel/selfenergy.hpp"

namespace fel::lgk {

LGKParameters extract_lgk(const std::optional<beam::GaussianScales>& scales,
                          const beam::BeamParameters& params, double expansion_point,
                          double fd_step, complexd lambda_c) {
    if (!(fd_step > 0.0)) throw config_error("extract_lgk: fd_step must be > 0");
    if (scales && fd_step > 0.01 * scales->sigma_omega)
        throw config_error("extract_lgk: fd_step must be <= 0.01 sigma_omega");

    const auto gamma = [&](double w) -> complexd {
        if (scales) return dispersion::gamma_r_gaussian(*scales, params, w);
        return params.n_electrons / 6.28318530717958647692 * (w - params.omega_eta);
    };

    const auto central = [&](double h) {
        return (gamma(expansion_point + h) - gamma(expansion_point - h)) / (2.0 * h);
    };
    const complexd d_h = central(fd_step);
    const complexd d_h2 = central(0.5 * fd_step);
    const complexd z_inv = (4.0 * d_h2 - d_h) / 3.0;  // Richardson

    if (std::abs(z_inv) < 1e-12 * params.n_electrons)
        throw numerical_error("extract_lgk: degenerate expansion, |dGamma/dw| ~ 0");

    const complexd z = 1.0 / z_inv;
    const complexd q = gamma(expansion_point) / z_inv;
    // the dressed pole sits at omega = expansion_point - q, so the damping
    // rate is kappa = -Im(omega) = +Im(q); gain regions give kappa < 0
    const double delta_omega = q.real();
    const double kappa = q.imag();
    const double r = z.real() * delta_omega;
    const double d_noise =
        scales ? 0.5 * std::abs(selfenergy::sigma_k_gaussian(params, *scales, expansion_point))
               : 0.0;

    return {z_inv, z, delta_omega, kappa, r, d_noise, lambda_c, expansion_point, fd_step};
}

double stationary_amplitude(const LGKParameters& p) {
    const double re_lambda = p.lambda_c.real();
    if (re_lambda == 0.0)
        throw numerical_error("stationary_amplitude: Re lambda = 0, saturation undefined");
    return std::sqrt(std::max(0.0, -p.r / re_lambda));
}

CanonicalLaserParams to_canonical(const LGKParameters& p) {
    // time-domain form: db/dt = (-i r/Z - kappa/Z) b - (i lambda/Z) |b|^2 b + noise
    const double alpha = -std::real(p.kappa / p.z);
    const double frame_shift = std::real(p.r / p.z);
    const double beta = -std::imag(p.lambda_c / p.z);
    const double d_las = p.d_noise / std::norm(p.z);
    if (beta <= 0.0)
        throw numerical_error("to_canonical: cubic vertex does not saturate (beta <= 0)");
    return {alpha, beta, d_las, frame_shift};
}

}  // namespace fel::lgk
