#include "fel/meanfield.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "fel/errors.hpp"

namespace fel::meanfield {

namespace {
constexpr double kTwoPi = 6.28318530717958647692;
}

double MeanFieldState::norm() const {
    double s = 0.0;
    for (const auto& c : coeffs) s += std::norm(c);
    return s;
}

complexd MeanFieldState::bunching() const {
    complexd j = 0.0;
    for (std::size_t i = 0; i + 1 < coeffs.size(); ++i) j += std::conj(coeffs[i]) * coeffs[i + 1];
    return j;
}

MeanFieldState make_cold_state(int m0, int window_halfwidth, complexd seed_bunching,
                               complexd seed_field) {
    if (window_halfwidth < 2) throw config_error("make_cold_state: window_halfwidth must be >= 2");
    MeanFieldState state;
    state.m_min = m0 - window_halfwidth;
    state.coeffs.assign(2 * static_cast<std::size_t>(window_halfwidth) + 1, complexd(0.0));
    auto& c0 = state.coeffs[static_cast<std::size_t>(window_halfwidth)];
    auto& c1 = state.coeffs[static_cast<std::size_t>(window_halfwidth) + 1];
    c1 = seed_bunching;
    c0 = std::sqrt(1.0 - std::norm(c1));
    state.field = seed_field;
    return state;
}

Derivative derivative(const MeanFieldState& state, const beam::BeamParameters& params,
                      bool coupling_enabled) {
    const std::size_t n = state.coeffs.size();
    Derivative d;
    d.coeffs.resize(n);
    const double g = coupling_enabled ? std::sqrt(params.eta) : 0.0;
    const complexd b = state.field;
    const complexd bc = std::conj(b);
    for (std::size_t i = 0; i < n; ++i) {
        const int m = state.m_min + static_cast<int>(i);
        const complexd up = (i + 1 < n) ? state.coeffs[i + 1] : complexd(0.0);
        const complexd down = (i > 0) ? state.coeffs[i - 1] : complexd(0.0);
        d.coeffs[i] = complexd(0.0, -beam::mode_energy(m, params)) * state.coeffs[i] +
                      g * (bc * up - b * down);
    }
    d.field = complexd(0.0, params.omega_eta) * b + kTwoPi * g * state.bunching();
    return d;
}

std::vector<Record> integrate(const MeanFieldState& initial, const MeanFieldConfig& cfg,
                              const beam::BeamParameters& params) {
    if (!(cfg.dt > 0.0)) throw config_error("meanfield: dt must be > 0");
    if (cfg.record_stride < 1) throw config_error("meanfield: record_stride must be >= 1");

    MeanFieldState state = initial;
    const double norm0 = state.norm();
    const std::size_t n = state.coeffs.size();

    std::vector<Record> records;
    records.reserve(cfg.n_steps / cfg.record_stride + 2);
    records.push_back({state.time, state.field, state.bunching(), norm0});

    MeanFieldState tmp = state;
    const auto advance = [&](const MeanFieldState& from, const Derivative& d, double h,
                             MeanFieldState& to) {
        for (std::size_t i = 0; i < n; ++i) to.coeffs[i] = from.coeffs[i] + h * d.coeffs[i];
        to.field = from.field + h * d.field;
    };

    for (std::size_t step = 1; step <= cfg.n_steps; ++step) {
        const Derivative k1 = derivative(state, params, cfg.coupling_enabled);
        advance(state, k1, 0.5 * cfg.dt, tmp);
        const Derivative k2 = derivative(tmp, params, cfg.coupling_enabled);
        advance(state, k2, 0.5 * cfg.dt, tmp);
        const Derivative k3 = derivative(tmp, params, cfg.coupling_enabled);
        advance(state, k3, cfg.dt, tmp);
        const Derivative k4 = derivative(tmp, params, cfg.coupling_enabled);

        const double h6 = cfg.dt / 6.0;
        for (std::size_t i = 0; i < n; ++i)
            state.coeffs[i] += h6 * (k1.coeffs[i] + 2.0 * k2.coeffs[i] + 2.0 * k3.coeffs[i] +
                                     k4.coeffs[i]);
        state.field += h6 * (k1.field + 2.0 * k2.field + 2.0 * k3.field + k4.field);
        state.time = initial.time + static_cast<double>(step) * cfg.dt;

        const double norm = state.norm();
        if (std::fabs(norm - norm0) > 1e-6)
            throw divergence_error("meanfield: norm drift exceeded 1e-6 at step " +
                                   std::to_string(step));
        if (std::abs(state.coeffs.front()) > 1e-8 || std::abs(state.coeffs.back()) > 1e-8)
            throw divergence_error("meanfield: window leak (boundary coefficient > 1e-8) at step " +
                                   std::to_string(step));

        if (step % cfg.record_stride == 0)
            records.push_back({state.time, state.field, state.bunching(), norm});
    }
    return records;
}

double measure_growth(std::span<const std::pair<double, double>> abs_b_series,
                      std::pair<double, double> fit_window) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t n = 0;
    for (const auto& [t, ab] : abs_b_series) {
        if (t < fit_window.first || t > fit_window.second) continue;
        if (!(ab > 0.0))
            throw numerical_error("measure_growth: |b| must be > 0 throughout the fit window");
        const double y = std::log(ab);
        sx += t;
        sy += y;
        sxx += t * t;
        sxy += t * y;
        ++n;
    }
    if (n < 2) throw numerical_error("measure_growth: fewer than 2 samples in the fit window");
    const auto nn = static_cast<double>(n);
    const double denom = nn * sxx - sx * sx;
    if (denom == 0.0) throw numerical_error("measure_growth: degenerate fit window");
    return (nn * sxy - sx * sy) / denom;
}

}  // namespace fel::meanfield
