#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fel/beam.hpp"
#include "fel/errors.hpp"

using namespace fel::beam;

TEST_CASE("mode energies and transition frequencies") {
    const BeamParameters params(2.0, 1.0, 0.0);
    CHECK(mode_energy(0, params) == 0.0);
    CHECK(mode_energy(3, params) == doctest::Approx(9.0 / 4.0).epsilon(1e-15));
    CHECK(mode_energy(-3, params) == mode_energy(3, params));
    // Omega_m = eps_{m+1} - eps_m = (2m+1)/(2 eta)
    for (int m : {-5, 0, 1, 7})
        CHECK(transition_frequency(m, params) ==
              doctest::Approx(mode_energy(m + 1, params) - mode_energy(m, params)).epsilon(1e-14));
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(BeamParameters(0.0, 1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(BeamParameters(1.0, -2.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(GaussianScales(1.0, 0.0), std::domain_error);
    CHECK_NOTHROW(BeamParameters(1.0, 1.0, -3.0));
}

TEST_CASE("gaussian profile: normalized, bounded, symmetric, truncated") {
    const auto prof = gaussian_profile(100, 4.0, 32);
    CHECK(prof.m_min() == 68);
    CHECK(prof.m_max() == 132);
    double sum = 0.0;
    for (int m = prof.m_min(); m <= prof.m_max(); ++m) {
        const double v = prof.n(m);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        sum += v;
        CHECK(prof.n(m) == prof.n(200 - m));  // symmetry about m0
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(prof.n(67) == 0.0);
    CHECK(prof.n(133) == 0.0);
    CHECK(prof.n(100) > prof.n(101));
    CHECK_THROWS_AS(gaussian_profile(100, 4.0, 31), fel::config_error);  // < 8 sigma
    CHECK_THROWS_AS(gaussian_profile(100, -1.0, 32), fel::config_error);
}

TEST_CASE("cold profile is a single occupied mode") {
    const auto prof = cold_profile(7);
    CHECK(prof.m_min() == 5);
    CHECK(prof.m_max() == 9);
    CHECK(prof.n(7) == 1.0);
    for (int m : {5, 6, 8, 9, 4, 10}) CHECK(prof.n(m) == 0.0);
}

TEST_CASE("occupation profile invariants are enforced") {
    CHECK_THROWS_AS(OccupationProfile(0, {0.5, -0.1, 0.6}, ProfileKind::custom),
                    std::domain_error);
    CHECK_THROWS_AS(OccupationProfile(0, {1.2, -0.2}, ProfileKind::custom), std::domain_error);
    CHECK_THROWS_AS(OccupationProfile(0, {0.5, 0.4}, ProfileKind::custom), std::domain_error);
    CHECK_THROWS_AS(OccupationProfile(0, {1.0}, ProfileKind::custom), std::domain_error);
    CHECK_NOTHROW(OccupationProfile(-3, {0.25, 0.25, 0.25, 0.25}, ProfileKind::custom));
}

TEST_CASE("gaussian frequency scales") {
    const BeamParameters params(2.0, 1.0, 0.0);
    const auto scales = gaussian_scales(10, 3.0, params);
    CHECK(scales.omega_0 == doctest::Approx(21.0 / 4.0).epsilon(1e-15));
    CHECK(scales.sigma_omega == doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("profile CSV serialization") {
    std::ostringstream out;
    cold_profile(3).write_csv(out);
    const std::string text = out.str();
    CHECK(text.rfind("m,n_m\n", 0) == 0);
    CHECK(text.find("\n3,1\n") != std::string::npos);
}

TEST_CASE("pierce parameter from physical inputs") {
    // frozen against a high-precision evaluation of the defining formula
    const PhysicalBeamInputs in{1.0, 0.01, 100.0, 1e15};
    const double rho = rho_from_physical(in);
    CHECK(rho == doctest::Approx(3.517640023304272e-15).epsilon(1e-9));

    // linear in current, inverse in gamma and omega
    PhysicalBeamInputs in2 = in;
    in2.current_ampere = 2.5;
    CHECK(rho_from_physical(in2) == doctest::Approx(2.5 * rho).epsilon(1e-14));
    in2 = in;
    in2.lorentz_factor = 200.0;
    CHECK(rho_from_physical(in2) == doctest::Approx(0.5 * rho).epsilon(1e-14));
    in2 = in;
    in2.radiation_frequency_rad_s = 4e15;
    CHECK(rho_from_physical(in2) == doctest::Approx(0.25 * rho).epsilon(1e-14));

    in2 = in;
    in2.current_ampere = 0.0;
    CHECK_THROWS_AS((void)rho_from_physical(in2), std::domain_error);
}
