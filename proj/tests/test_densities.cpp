#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "horoxt/densities.hpp"
#include "horoxt/quadrature.hpp"

using namespace horoxt;

TEST_CASE("constants") {
    CHECK(hall_norm == 3.0 / (pi * pi));
    CHECK(modular_volume == pi / 3.0);
    CHECK(eta_bar_one == pi * pi / 3.0);
    CHECK(hall_norm * eta_bar_one == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("hall density pointwise") {
    // flat branch is exactly the normalising constant
    CHECK(hall_psi(0.0) == hall_norm);
    CHECK(hall_psi(0.5) == hall_norm);
    CHECK(hall_psi(0.999999) == hall_norm);

    // frozen reference points, derived independently from the branch formulas
    CHECK(hall_psi(2.0) == doctest::Approx(0.21069147831804863).epsilon(1e-13));
    CHECK(hall_psi(10.0) == doctest::Approx(0.006816769897698761).epsilon(1e-13));
    CHECK(hall_psi(4.0) == doctest::Approx(0.05870970285454197).epsilon(1e-13));

    // continuity at the branch edges, printed formulas against each other
    CHECK(detail::hall_psi_mid_branch(1.0) == doctest::Approx(hall_norm).epsilon(1e-13));
    CHECK(std::fabs(detail::hall_psi_mid_branch(4.0) - detail::hall_psi_far_branch(4.0)) <= 1e-13);

    CHECK_THROWS_AS(hall_psi(-0.1), std::domain_error);
}

TEST_CASE("extreme value density pointwise") {
    CHECK(rho(0.0) == hall_norm);
    CHECK(rho(1.0) == doctest::Approx(0.11182194125151691).epsilon(1e-13));
    CHECK(rho(1.0) == doctest::Approx(hall_norm * std::exp(-1.0)).epsilon(1e-14));
    const double knee = -2.0 * std::log(2.0);
    CHECK(rho(knee) == doctest::Approx(0.23483881141816787).epsilon(1e-12));
    CHECK(std::fabs(detail::rho_mid_branch(knee) - detail::rho_far_branch(knee)) <= 1e-13);
    CHECK(std::fabs(detail::rho_mid_branch(0.0) - hall_norm) <= 1e-13);
}

TEST_CASE("rho equals the exponential pushforward of hall_psi") {
    for (double s = -5.0; s <= 3.0; s += 0.125) {
        const double lhs = rho(s);
        const double rhs = std::exp(-s) * hall_psi(std::exp(-s));
        CHECK(std::fabs(lhs - rhs) <= 1e-12 * (1.0 + lhs));
    }
}

TEST_CASE("normalisation by quadrature") {
    const double psi_mass =
        integrate_segments([](double r) { return hall_psi(r); }, {0.0, 1.0, 4.0}, 1e-11) +
        psi_cdf_upper(4.0);
    CHECK(psi_mass == doctest::Approx(1.0).epsilon(1e-9));

    const double knee = -2.0 * std::log(2.0);
    const double rho_mass =
        integrate_segments([](double s) { return rho(s); }, {-50.0, knee, 0.0, 10.0}, 1e-11) +
        rho_cdf_upper(10.0);
    CHECK(rho_mass == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("tail integrals agree with quadrature") {
    CHECK(rho_cdf_upper(0.0) == hall_norm);
    CHECK(rho_cdf_upper(-30.0) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(psi_cdf_upper(0.0) == 1.0);
    CHECK(psi_cdf_upper(1.0) == doctest::Approx(1.0 - hall_norm).epsilon(1e-14));

    const double seg = integrate([](double r) { return hall_psi(r); }, 2.5, 3.5, 1e-12);
    CHECK(psi_cdf_upper(2.5) - psi_cdf_upper(3.5) == doctest::Approx(seg).epsilon(1e-9));

    const double seg2 =
        integrate_segments([](double s) { return rho(s); }, {-1.0, 0.0, 2.0}, 1e-12);
    CHECK(rho_cdf_upper(-1.0) - rho_cdf_upper(2.0) == doctest::Approx(seg2).epsilon(1e-9));

    CHECK_THROWS_AS(psi_cdf_upper(-0.5), std::domain_error);
}

TEST_CASE("mean of the extreme law") {
    const double target = 1.0 - 12.0 * zeta3 / pi_sq;
    CHECK(target == doctest::Approx(-0.4615259388028772).epsilon(1e-14));
    CHECK(std::fabs(rho_mean() - target) <= 1e-5);
}

TEST_CASE("distance-shifted law is a translate") {
    for (double s = -3.0; s <= 3.0; s += 0.5) {
        CHECK(omega_y(s, 0.0) == rho(s));
        CHECK(omega_y(s, 2.5) == doctest::Approx(rho(s - 2.5)).epsilon(1e-14));
    }
    CHECK_THROWS_AS(omega_y(0.0, -0.1), std::domain_error);
}

TEST_CASE("tail equivalent approaches one from above") {
    const double t10 = tail_ratio(10.0);
    const double t100 = tail_ratio(100.0);
    const double t1000 = tail_ratio(1000.0);
    const double t4 = tail_ratio(10000.0);
    CHECK(t10 > t100);
    CHECK(t100 > t1000);
    CHECK(t1000 > t4);
    CHECK(t4 > 1.0);
    CHECK(t4 < 1.001);
    CHECK_THROWS_AS(tail_ratio(0.0), std::domain_error);
}

TEST_CASE("multi-cusp generalisations reduce to the one-cusp case") {
    const double one[] = {0.0};
    CHECK(eta_bar_multi(one, modular_volume) == doctest::Approx(eta_bar_one).epsilon(1e-14));
    const double two[] = {0.0, 0.0};
    CHECK(eta_bar_multi(two, 2.0 * modular_volume) ==
          doctest::Approx(eta_bar_one).epsilon(1e-14));
    CHECK(psi_sigma_flat(modular_volume) == doctest::Approx(hall_norm).epsilon(1e-15));
    // raising a cusp by sigma suppresses its hit rate by e^{-sigma}
    const double lifted[] = {std::log(2.0)};
    CHECK(eta_bar_multi(lifted, modular_volume) ==
          doctest::Approx(2.0 * eta_bar_one).epsilon(1e-14));
}

TEST_CASE("logarithm-law and smallest-denominator reparametrisations") {
    for (double s = -2.0; s <= 2.0; s += 0.25) {
        CHECK(eta_log_density(s) == doctest::Approx(2.0 * rho(-2.0 * s)).epsilon(1e-14));
        CHECK(rho_kmk(s + 2.5) == doctest::Approx(2.0 * rho(2.0 * (s + 2.5))).epsilon(1e-14));
    }
    // both are probability densities
    const double m1 = integrate_segments([](double s) { return eta_log_density(s); },
                                         {-12.0, 0.0, std::log(2.0), 25.0}, 1e-10);
    CHECK(m1 == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("joint density branches") {
    CHECK(hall_psi_rt(0.5, 0.0) == hall_norm);
    CHECK(hall_psi_rt(1.0, 0.5) == hall_norm);   // r e^{-t/2} < 1
    // middle branch at t = 0, x = 1: 1 - 1 + 1/r
    CHECK(hall_psi_rt(3.0, 0.0) == doctest::Approx(hall_norm / 3.0).epsilon(1e-13));
    // vanishing branch: r x (1 - x) > 1 at x = 1/2
    CHECK(hall_psi_rt(5.0, 2.0 * std::log(2.0)) == 0.0);
    CHECK_THROWS_AS(hall_psi_rt(-1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(hall_psi_rt(1.0, -0.1), std::domain_error);
}

TEST_CASE("height marginal of the joint density recovers hall_psi") {
    for (double r : {0.5, 2.0, 10.0}) {
        std::vector<double> pts{0.0};
        if (r > 1.0) pts.push_back(2.0 * std::log(r));
        if (r > 4.0) {
            const double q = std::sqrt(1.0 - 4.0 / r);
            pts.push_back(-2.0 * std::log(0.5 * (1.0 + q)));
            pts.push_back(-2.0 * std::log(0.5 * (1.0 - q)));
        }
        pts.push_back(std::max(2.0 * std::log(std::max(r, 2.0)), 1.0) + 40.0);
        std::sort(pts.begin(), pts.end());
        const double marg = integrate_segments(
            [r](double t) { return hall_psi_rt(r, t) * std::exp(-t); }, pts, 1e-10);
        CHECK(std::fabs(marg - hall_psi(r)) <= 1e-8);
    }
}

TEST_CASE("density evaluator record") {
    DensitySpec psi;
    CHECK(psi(0.5) == hall_psi(0.5));
    DensitySpec r{DensitySpec::Kind::rho, 0.0, 0.0};
    CHECK(r(1.0) == rho(1.0));
    DensitySpec om{DensitySpec::Kind::omega, 1.5, 0.0};
    CHECK(om(2.0) == omega_y(2.0, 1.5));
    DensitySpec rt{DensitySpec::Kind::psi_rt, 0.0, 0.7};
    CHECK(rt(2.0) == hall_psi_rt(2.0, 0.7));
}
