#include "fel/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fel/errors.hpp"

namespace fel::dispersion {

namespace {
constexpr double kTwoPi = 6.28318530717958647692;
}

complexd gamma_r_discrete(const beam::OccupationProfile& profile,
                          const beam::BeamParameters& params, double omega,
                          const selfenergy::Broadening& broadening) {
    return params.n_electrons / kTwoPi * (omega - params.omega_eta) -
           selfenergy::sigma_r_discrete(profile, params, omega, broadening);
}

complexd gamma_r_gaussian(const beam::GaussianScales& scales,
                          const beam::BeamParameters& params, double omega) {
    return params.n_electrons / kTwoPi * (omega - params.omega_eta) -
           selfenergy::sigma_r_gaussian(params, scales, omega);
}

ThresholdSolution solve_threshold(const beam::GaussianScales& scales,
                                  const beam::BeamParameters& params,
                                  std::pair<double, double> bracket) {
    const auto re_gamma = [&](double w) {
        return std::real(gamma_r_gaussian(scales, params, w));
    };

    auto [lo, hi] = bracket;
    if (!(lo < hi)) throw config_error("solve_threshold: bracket must satisfy lo < hi");

    // coarse scan: locate sign changes, pick the one nearest the midpoint
    constexpr int kScan = 512;
    const double mid = 0.5 * (lo + hi);
    const double step = (hi - lo) / kScan;
    int n_changes = 0;
    double best_lo = 0.0, best_hi = 0.0, best_dist = 0.0;
    double prev_w = lo, prev_f = re_gamma(lo);
    for (int i = 1; i <= kScan; ++i) {
        const double w = lo + i * step;
        const double f = re_gamma(w);
        if ((prev_f < 0.0 && f >= 0.0) || (prev_f > 0.0 && f <= 0.0)) {
            ++n_changes;
            const double dist = std::fabs(0.5 * (prev_w + w) - mid);
            if (n_changes == 1 || dist < best_dist) {
                best_lo = prev_w;
                best_hi = w;
                best_dist = dist;
            }
        }
        prev_w = w;
        prev_f = f;
    }
    if (n_changes == 0)
        throw root_not_found_error("solve_threshold: Re Gamma^R has no sign change in the bracket");

    double a = best_lo, b = best_hi;
    double fa = re_gamma(a), fb = re_gamma(b);
    int iterations = 0;

    // bisection down to 1e-3 of the scan cell
    while (b - a > 1e-3 * step && iterations < 200) {
        const double c = 0.5 * (a + b);
        const double fc = re_gamma(c);
        ++iterations;
        if ((fa <= 0.0) == (fc <= 0.0)) {
            a = c;
            fa = fc;
        } else {
            b = c;
            fb = fc;
        }
    }

    // secant polish
    const double tol = 1e-10 * params.n_electrons;
    double x0 = a, f0 = fa, x1 = b, f1 = fb;
    while (std::fabs(f1) > tol && iterations < 400) {
        ++iterations;
        if (f1 == f0) break;
        const double x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
        x0 = x1;
        f0 = f1;
        x1 = std::clamp(x2, lo, hi);
        f1 = re_gamma(x1);
    }
    if (std::fabs(f1) > tol)
        throw root_not_found_error("solve_threshold: secant polish failed to reach residual tolerance");

    const double y = selfenergy::detuning_y(scales, x1);
    const double im = std::imag(gamma_r_gaussian(scales, params, x1));
    return {x1, y, im, im < 0.0, std::fabs(f1), iterations, n_changes > 1};
}

std::vector<std::pair<double, bool>> gain_sign_map(const beam::GaussianScales& scales,
                                                   const beam::BeamParameters& params,
                                                   std::span<const double> omega_grid) {
    std::vector<std::pair<double, bool>> out;
    out.reserve(omega_grid.size());
    for (double w : omega_grid)
        out.emplace_back(w, std::imag(gamma_r_gaussian(scales, params, w)) < 0.0);
    return out;
}

std::array<complexd, 3> cubic_roots(double c1, double c2, double c3, double rhs) {
    const double mu = (c1 + c2 + c3) / 3.0;
    const double a1 = c1 - mu, a2 = c2 - mu, a3 = c3 - mu;
    // depressed cubic d^3 + p d + q = 0 in d = w - mu
    const double p = a1 * a2 + a1 * a3 + a2 * a3;
    const double q = -(a1 * a2 * a3 + rhs);

    const complexd s = std::sqrt(complexd(q * q / 4.0 + p * p * p / 27.0));
    complexd u = std::pow(-q / 2.0 + s, 1.0 / 3.0);
    if (std::abs(u) < 1e-300) u = std::pow(-q / 2.0 - s, 1.0 / 3.0);
    const complexd w3(-0.5, 0.8660254037844386467637232);  // exp(2 pi i / 3)

    const auto poly = [&](complexd z) { return (z - c1) * (z - c2) * (z - c3) - rhs; };
    const auto dpoly = [&](complexd z) {
        return (z - c2) * (z - c3) + (z - c1) * (z - c3) + (z - c1) * (z - c2);
    };

    std::array<complexd, 3> roots;
    complexd uk = u;
    for (int k = 0; k < 3; ++k) {
        complexd z = (std::abs(uk) < 1e-300) ? complexd(0.0) : uk - p / (3.0 * uk);
        z += mu;
        for (int it = 0; it < 8; ++it) {  // Newton polish in factored form
            const complexd f = poly(z);
            const complexd df = dpoly(z);
            if (std::abs(df) == 0.0) break;
            const complexd dz = f / df;
            z -= dz;
            if (std::abs(dz) < 1e-15 * (1.0 + std::abs(z))) break;
        }
        roots[static_cast<std::size_t>(k)] = z;
        uk *= w3;
    }
    return roots;
}

namespace {

PierceCubic make_pierce(const std::array<complexd, 3>& roots, int m0,
                        const beam::BeamParameters& params) {
    PierceCubic out;
    out.roots = roots;
    double best_im = 0.0;
    for (const auto& r : roots) {
        const double scale = std::max(1.0, std::abs(r));
        if (r.imag() > 1e-9 * scale && r.imag() > best_im) {
            best_im = r.imag();
            out.unstable_root = r;
        }
    }
    out.rho_eff = std::cbrt(params.n_electrons * params.eta / static_cast<double>(m0));
    return out;
}

}  // namespace

PierceCubic pierce_cubic(int m0, const beam::BeamParameters& params) {
    const double o1 = beam::transition_frequency(m0, params);
    const double o2 = beam::transition_frequency(m0 + 1, params);
    return make_pierce(cubic_roots(params.omega_eta, o1, o2, kTwoPi), m0, params);
}

PierceCubic pierce_cubic_degenerate(double omega_bar, int m0,
                                    const beam::BeamParameters& params) {
    return make_pierce(cubic_roots(omega_bar, omega_bar, omega_bar, kTwoPi), m0, params);
}

complexd continuum_dispersion_residual(std::span<const std::pair<double, double>> f_samples,
                                       const beam::BeamParameters& params, double omega) {
    if (f_samples.size() < 5) throw std::range_error("continuum_dispersion_residual: grid too small");
    const double p0 = f_samples.front().first;
    const double pn = f_samples.back().first;
    const double dp = (pn - p0) / static_cast<double>(f_samples.size() - 1);
    if (dp <= 0.0) throw std::range_error("continuum_dispersion_residual: grid not increasing");

    const double sqrt_eta = std::sqrt(params.eta);
    const double p_res = sqrt_eta * omega;
    if (p_res < p0 + dp || p_res > pn - dp)
        throw std::range_error("continuum_dispersion_residual: resonant momentum within one cell of the grid boundary");

    const double excl = 0.5 * dp * (1.0 + 1e-9);
    double sum = 0.0;
    for (std::size_t j = 1; j + 1 < f_samples.size(); ++j) {
        const double p = f_samples[j].first;
        if (std::fabs(p - p_res) <= excl) continue;
        const double dfdp = (f_samples[j + 1].second - f_samples[j - 1].second) / (2.0 * dp);
        sum += dfdp / (omega - p / sqrt_eta);
    }
    const double integral = sum * dp;
    return complexd((omega - params.omega_eta) / kTwoPi +
                        std::pow(params.eta, 1.5) * integral,
                    0.0);
}

}  // namespace fel::dispersion
