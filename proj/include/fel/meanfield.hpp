#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "fel/beam.hpp"

namespace fel::meanfield {

using complexd = std::complex<double>;

// Classical saddle-point state in mode space.
struct MeanFieldState {
    double time = 0.0;
    int m_min = 0;
    std::vector<complexd> coeffs;  // c_m over [m_min, m_min + size - 1]
    complexd field = 0.0;          // b

    int m_max() const { return m_min + static_cast<int>(coeffs.size()) - 1; }
    double norm() const;
    complexd bunching() const;  // J = sum_m c_m^* c_{m+1}
};

struct MeanFieldConfig {
    double dt = 1e-3;
    std::size_t n_steps = 1000;
    std::size_t record_stride = 1;
    bool coupling_enabled = true;
};

struct Derivative {
    std::vector<complexd> coeffs;
    complexd field;
};

struct Record {
    double t;
    complexd b;
    complexd bunching;
    double norm;
};

// Cold state at m0 on [m0 - halfwidth, m0 + halfwidth] with an optional
// coherence seed on c_{m0+1} and an optional field seed.
MeanFieldState make_cold_state(int m0, int window_halfwidth, complexd seed_bunching,
                               complexd seed_field);

// Saddle-point equations in mode space:
//   dc_m/dt = -i eps_m c_m + eta^{1/2} (b^* c_{m+1} - b c_{m-1})
//   db/dt   = i w_eta b + 2 pi eta^{1/2} J
// with out-of-window neighbors treated as zero.
Derivative derivative(const MeanFieldState& state, const beam::BeamParameters& params,
                      bool coupling_enabled = true);

// Fixed-step RK4. Aborts when the norm drifts by more than 1e-6 or a boundary
// coefficient exceeds 1e-8 in modulus (window leak).
std::vector<Record> integrate(const MeanFieldState& initial, const MeanFieldConfig& cfg,
                              const beam::BeamParameters& params);

// Least-squares slope of ln|b| vs t over the fit window.
double measure_growth(std::span<const std::pair<double, double>> abs_b_series,
                      std::pair<double, double> fit_window);

}  // namespace fel::meanfield
