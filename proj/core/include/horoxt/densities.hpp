#pragma once

#include <span>
#include <numbers>

// Closed-form limit laws for cusp excursions of the horocycle flow on the modular
// surface.  hall_psi is the gap/return-time density, rho the centred extreme-value
// density; they are linked by rho(s) = e^{-s} hall_psi(e^{-s}).

namespace horoxt {

inline constexpr double pi = std::numbers::pi;
inline constexpr double pi_sq = pi * pi;
inline constexpr double hall_norm = 3.0 / pi_sq;     // flat value and global prefactor
inline constexpr double zeta3 = 1.2020569031595942854;
inline constexpr double modular_volume = pi / 3.0;   // hyperbolic area of the modular surface
inline constexpr double eta_bar_one = pi_sq / 3.0;   // mean return time to the unit section

// Piecewise density with branch points 1 and 4; ~ (6/pi^2) r^{-2} at infinity.
double hall_psi(double r);

// Joint density in (return time r, relative height t >= 0).
double hall_psi_rt(double r, double t);

// Extreme-value density; branch points -2 log 2 and 0, exponential on [0,oo).
double rho(double s);

// Upper tail integral of rho over [H, oo); closed form e^{-H} branch for H >= 0.
double rho_cdf_upper(double H);

// Upper tail integral of hall_psi over [X, oo).
double psi_cdf_upper(double X);

// First moment of rho, by quadrature.  Equals 1 - (12/pi^2) zeta(3).
double rho_mean();

// Distance-shifted law for base points at distance ell_y from the unit horocycle.
double omega_y(double s, double ell_y);

// hall_psi(r) * r^2 / (6/pi^2) -> 1 + 1/r + O(r^{-2})
double tail_ratio(double r);

// Mean return time for a surface with cusp heights sigma: pi*vol / sum_k e^{-sigma_k}.
double eta_bar_multi(std::span<const double> sigma, double vol);

// Flat region value of the multi-cusp return density.
double psi_sigma_flat(double vol);

// Logarithm law density 2 rho(-2s) and its KMK normalisation 2 rho(2r).
double eta_log_density(double s);
double rho_kmk(double r);

namespace detail {
// Printed branch formulas, for edge-continuity checks against the stable forms above.
double hall_psi_mid_branch(double r);    // [1,4]
double hall_psi_far_branch(double r);    // [4,oo)
double rho_mid_branch(double s);         // [-2 log 2, 0]
double rho_far_branch(double s);         // (-oo, -2 log 2]
}

// Evaluator record for the CLI surface.
struct DensitySpec {
    enum class Kind { psi, rho, omega, psi_rt } kind = Kind::psi;
    double ell = 0.0;    // omega shift
    double t = 0.0;      // fixed height slice for psi_rt
    double operator()(double x) const;
};

}
