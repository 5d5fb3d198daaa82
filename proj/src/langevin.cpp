#include "fel/langevin.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "fel/errors.hpp"
#include "fel/rng.hpp"

namespace fel::langevin {

namespace {

complexd drift(const lgk::CanonicalLaserParams& p, complexd a) {
    return (p.alpha - p.beta * std::norm(a)) * a;
}

void check_config(const lgk::CanonicalLaserParams& p, const LangevinConfig& cfg) {
    if (!(cfg.dt > 0.0)) throw config_error("langevin: dt must be > 0");
    if (cfg.n_traj < 1) throw config_error("langevin: n_traj must be >= 1");
    if (cfg.burn_in_fraction < 0.0 || cfg.burn_in_fraction >= 1.0)
        throw config_error("langevin: burn_in_fraction must lie in [0, 1)");
    if (cfg.dt * std::fabs(p.alpha) > 0.05)
        throw config_error("langevin: dt * |alpha| must be <= 0.05");
    if (p.d_las < 0.0) throw config_error("langevin: d_las must be >= 0");
}

}  // namespace

std::vector<complexd> integrate_with_noise(const lgk::CanonicalLaserParams& p,
                                           complexd initial_amplitude, double dt,
                                           Scheme scheme,
                                           std::span<const complexd> increments) {
    std::vector<complexd> out;
    out.reserve(increments.size() + 1);
    complexd a = initial_amplitude;
    out.push_back(a);
    for (std::size_t i = 0; i < increments.size(); ++i) {
        const complexd dw = increments[i];
        if (scheme == Scheme::euler_maruyama) {
            a += drift(p, a) * dt + dw;
        } else {
            const complexd f0 = drift(p, a);
            const complexd pred = a + f0 * dt + dw;
            a += 0.5 * (f0 + drift(p, pred)) * dt + dw;
        }
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
            throw divergence_error("langevin: trajectory diverged at step " + std::to_string(i + 1));
        out.push_back(a);
    }
    return out;
}

TrajectorySet simulate(const lgk::CanonicalLaserParams& p, const LangevinConfig& cfg) {
    check_config(p, cfg);

    TrajectorySet set;
    set.dt = cfg.dt;
    set.trajectories.resize(cfg.n_traj);

    const double noise_std = std::sqrt(p.d_las * cfg.dt);
    const auto run_traj = [&](std::size_t k) {
        gaussian_stream gs(derive_stream(cfg.seed, k));
        std::vector<complexd> increments(cfg.n_steps);
        for (auto& dw : increments) {
            double gx, gy;
            gs.next_pair(gx, gy);
            dw = complexd(gx * noise_std, gy * noise_std);
        }
        set.trajectories[k] =
            integrate_with_noise(p, cfg.initial_amplitude, cfg.dt, cfg.scheme, increments);
    };

    const unsigned workers = std::max(1u, cfg.n_workers);
    if (workers == 1 || cfg.n_traj == 1) {
        for (std::size_t k = 0; k < cfg.n_traj; ++k) run_traj(k);
    } else {
        std::vector<std::thread> pool;
        std::exception_ptr err;
        std::mutex err_mutex;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t k = w; k < cfg.n_traj; k += workers) run_traj(k);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (!err) err = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        if (err) std::rethrow_exception(err);
    }
    return set;
}

namespace {

// integrated autocorrelation time of Re a, truncated at the first zero
// crossing of the pooled normalized autocovariance
double autocorr_time(const TrajectorySet& set, std::size_t start, bool& degenerate) {
    const std::size_t len = set.trajectories.front().size() - start;

    double mean = 0.0;
    std::size_t count = 0;
    for (const auto& traj : set.trajectories)
        for (std::size_t i = start; i < traj.size(); ++i, ++count) mean += traj[i].real();
    mean /= static_cast<double>(count);

    const auto cov = [&](std::size_t lag) {
        double c = 0.0;
        std::size_t n = 0;
        for (const auto& traj : set.trajectories) {
            for (std::size_t i = start; i + lag < traj.size(); ++i, ++n)
                c += (traj[i].real() - mean) * (traj[i + lag].real() - mean);
        }
        return c / static_cast<double>(n);
    };

    const double c0 = cov(0);
    degenerate = !(c0 > 1e-30 * (1.0 + mean * mean));
    if (degenerate) return set.dt;

    double tau_sum = 0.5;
    for (std::size_t lag = 1; lag < len / 2; ++lag) {
        const double rho = cov(lag) / c0;
        if (rho <= 0.0) break;
        tau_sum += rho;
    }
    return tau_sum * set.dt;
}

}  // namespace

EnsembleStats stationary_stats(const TrajectorySet& set, double burn_in_fraction) {
    if (set.trajectories.empty() || set.trajectories.front().size() < 4)
        throw statistics_error("stationary_stats: empty trajectory set");
    const std::size_t len = set.trajectories.front().size();
    const auto start = static_cast<std::size_t>(burn_in_fraction * static_cast<double>(len));
    if (start + 4 > len) throw statistics_error("stationary_stats: burn-in leaves no data");

    EnsembleStats stats{};
    stats.autocorr_time = autocorr_time(set, start, stats.autocorr_degenerate);

    const std::size_t post = len - start;
    if (!stats.autocorr_degenerate &&
        static_cast<double>(post) * set.dt < 20.0 * stats.autocorr_time) {
        const auto needed = static_cast<std::size_t>(20.0 * stats.autocorr_time / set.dt);
        throw statistics_error(
            "stationary_stats: post-burn-in length must cover >= 20 autocorrelation times (need >= " +
            std::to_string(needed) + " samples, have " + std::to_string(post) + ")");
    }

    // batch means, one batch per trajectory (temporal batches for one trajectory)
    std::vector<double> batch_means;
    complexd mean_field = 0.0;
    std::size_t count = 0;
    if (set.trajectories.size() >= 2) {
        for (const auto& traj : set.trajectories) {
            double m = 0.0;
            for (std::size_t i = start; i < traj.size(); ++i, ++count) {
                m += std::norm(traj[i]);
                mean_field += traj[i];
            }
            batch_means.push_back(m / static_cast<double>(traj.size() - start));
        }
    } else {
        const auto& traj = set.trajectories.front();
        constexpr std::size_t kBatches = 20;
        const std::size_t bs = std::max<std::size_t>(1, post / kBatches);
        for (std::size_t b = start; b + bs <= len; b += bs) {
            double m = 0.0;
            for (std::size_t i = b; i < b + bs; ++i) m += std::norm(traj[i]);
            batch_means.push_back(m / static_cast<double>(bs));
        }
        for (std::size_t i = start; i < len; ++i, ++count) mean_field += traj[i];
    }

    double mean = 0.0;
    for (double m : batch_means) mean += m;
    mean /= static_cast<double>(batch_means.size());
    double var = 0.0;
    for (double m : batch_means) var += (m - mean) * (m - mean);
    var /= static_cast<double>(batch_means.size() > 1 ? batch_means.size() - 1 : 1);

    stats.mean_mod2 = mean;
    stats.stderr_mod2 = std::sqrt(var / static_cast<double>(batch_means.size()));
    stats.mean_field = mean_field / static_cast<double>(count);
    return stats;
}

ScalingFit scaling_sweep(double beta, double d_las, std::span<const double> alphas,
                         const LangevinConfig& cfg) {
    if (alphas.size() < 4) throw statistics_error("scaling_sweep: need at least 4 sweep points");
    if (!(beta > 0.0)) throw config_error("scaling_sweep: beta must be > 0");

    ScalingFit fit;
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        const double alpha = alphas[i];
        if (!(alpha > 0.0)) throw config_error("scaling_sweep: alphas must be > 0");
        lgk::CanonicalLaserParams p{alpha, beta, d_las, 0.0};
        LangevinConfig run = cfg;
        run.seed = derive_stream(cfg.seed, i);
        if (run.initial_amplitude == complexd(0.0, 0.0))
            run.initial_amplitude = std::sqrt(alpha / beta);

        const TrajectorySet set = simulate(p, run);
        const std::size_t len = set.trajectories.front().size();
        const auto start = static_cast<std::size_t>(cfg.burn_in_fraction * static_cast<double>(len));
        double mean_abs = 0.0;
        std::size_t count = 0;
        for (const auto& traj : set.trajectories)
            for (std::size_t j = start; j < traj.size(); ++j, ++count) mean_abs += std::abs(traj[j]);
        mean_abs /= static_cast<double>(count);
        fit.points.emplace_back(alpha, mean_abs);
    }

    // least squares in log-log
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const auto n = static_cast<double>(fit.points.size());
    for (const auto& [alpha, mean_abs] : fit.points) {
        const double x = std::log(alpha);
        const double y = std::log(mean_abs);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.intercept = (sy - fit.slope * sx) / n;
    return fit;
}

}  // namespace fel::langevin
