#pragma once

#include <complex>
#include <optional>

#include "fel/beam.hpp"

namespace fel::lgk {

using complexd = std::complex<double>;

// Low-frequency expansion Gamma^R(w0 + d) ~ Z^{-1} [d - dw + i kappa].
struct LGKParameters {
    complexd z_inv;      // slope of Gamma^R at the expansion point
    complexd z;          // 1 / z_inv
    double delta_omega;  // frequency pulling, Re(Gamma^R / z_inv)
    double kappa;        // linear growth (<0) / damping (>0) rate
    double r;            // mass parameter Re(z) * delta_omega
    double d_noise;      // |Sigma^K|/2 at the expansion point
    complexd lambda_c;   // cubic saturation vertex (user supplied)
    // provenance
    double expansion_point;
    double fd_step;
};

struct CanonicalLaserParams {
    double alpha;        // net linear rate
    double beta;         // saturation
    double d_las;        // noise strength
    double frame_shift;  // rotation absorbed into the frame
};

// Finite-difference extraction (central difference with one Richardson step)
// of the LGK parameters from the Gaussian closed forms. Pass nullopt for the
// scales to extract from the free (beamless) propagator.
LGKParameters extract_lgk(const std::optional<beam::GaussianScales>& scales,
                          const beam::BeamParameters& params, double expansion_point,
                          double fd_step, complexd lambda_c = complexd(0.0, -1.0));

// |b_c| = sqrt(max(0, -r / Re lambda)); 0 in the trivial phase.
double stationary_amplitude(const LGKParameters& p);

// Map to da/dt = (alpha - beta |a|^2) a + noise in the rotating frame.
CanonicalLaserParams to_canonical(const LGKParameters& p);

}  // namespace fel::lgk
