#include "horoxt/densities.hpp"

#include <cmath>
#include <stdexcept>

#include "horoxt/quadrature.hpp"

namespace horoxt {

namespace {
const double two_log_two = 2.0 * std::log(2.0);
}

// Branches as printed:
//   [0,1)   : 1
//   [1,4]   : -1 + 2/r + (2/r) log r
//   [4,oo)  : -1 + 2/r + 2 sqrt(1/4 - 1/r) - (4/r) log(1/2 + sqrt(1/4 - 1/r))
// The far branch is evaluated in the rearranged form
//   -1 + 2w = -(4/r)/(1+q),  log(1/2 + w) = log1p(-(2/r)/(1+q)),  q = sqrt(1-4/r) = 2w,
// which is algebraically identical but avoids the -1 + 2w cancellation for large r.
double hall_psi(double r) {
    if (!(r >= 0.0)) throw std::domain_error("hall_psi: r must be >= 0");
    if (r < 1.0) return hall_norm;
    if (r <= 4.0) return hall_norm * (-1.0 + 2.0 / r + 2.0 * std::log(r) / r);
    const double q = std::sqrt(std::max(0.0, 1.0 - 4.0 / r));
    return hall_norm *
           (2.0 / r - (4.0 / r) / (1.0 + q) - (4.0 / r) * std::log1p(-(2.0 / r) / (1.0 + q)));
}

double hall_psi_rt(double r, double t) {
    if (!(r >= 0.0)) throw std::domain_error("hall_psi_rt: r must be >= 0");
    if (!(t >= 0.0)) throw std::domain_error("hall_psi_rt: t must be >= 0");
    const double x = std::exp(-0.5 * t);
    if (r * x <= 1.0) return hall_norm;
    if (r * x * (1.0 - x) <= 1.0) return hall_norm * (1.0 - 1.0 / x + 1.0 / (r * x * x));
    return 0.0;
}

// rho(s) = e^{-s} hall_psi(e^{-s}); branch points at -2 log 2 and 0.  Low branch in the
// same stabilised form so the identity holds to roundoff even for s << 0.
double rho(double s) {
    if (s >= 0.0) return hall_norm * std::exp(-s);
    if (s >= -two_log_two) return hall_norm * (-std::exp(-s) + 2.0 - 2.0 * s);
    const double x = std::exp(s);
    const double q = std::sqrt(std::max(0.0, 1.0 - 4.0 * x));
    return hall_norm * (2.0 - 4.0 / (1.0 + q) - 4.0 * std::log1p(-2.0 * x / (1.0 + q)));
}

double rho_cdf_upper(double H) {
    if (H >= 0.0) return hall_norm * std::exp(-H);
    double total = hall_norm;   // mass of [0,oo)
    if (H >= -two_log_two)
        return total + integrate([](double s) { return rho(s); }, H, 0.0, 1e-12);
    total += integrate([](double s) { return rho(s); }, -two_log_two, 0.0, 1e-12);
    // Below the last branch point substitute x = e^s; the integrand rho(log x)/x
    // extends continuously to 2*hall_norm at x = 0, so no long-tail quadrature is needed.
    const double xlo = std::exp(H);   // underflows to 0 for H < -745, which is exact enough
    total += integrate(
        [](double x) { return x > 0.0 ? rho(std::log(x)) / x : 2.0 * hall_norm; },
        xlo, 0.25, 1e-12);
    return total;
}

// Substituting r = e^{-s} in rho gives  int_H^oo rho = int_0^{e^{-H}} hall_psi,
// so the upper psi mass is the complement of the rho tail at -log X.
double psi_cdf_upper(double X) {
    if (!(X >= 0.0)) throw std::domain_error("psi_cdf_upper: X must be >= 0");
    if (X == 0.0) return 1.0;
    if (X <= 1.0) return 1.0 - hall_norm * X;
    return 1.0 - rho_cdf_upper(-std::log(X));
}

double rho_mean() {
    // s e^{-s} on [0,oo) integrates to 1.  Left of -60 the density is below 1e-26
    // (rho(s) ~ (6/pi^2) e^s there), so truncation is far inside the 1e-5 budget.
    double m = hall_norm;
    m += integrate([](double s) { return s * rho(s); }, -two_log_two, 0.0, 1e-12);
    m += integrate([](double s) { return s * rho(s); }, -60.0, -two_log_two, 1e-11);
    return m;
}

double omega_y(double s, double ell_y) {
    if (!(ell_y >= 0.0)) throw std::domain_error("omega_y: ell_y must be >= 0");
    return rho(s - ell_y);
}

double tail_ratio(double r) {
    if (!(r > 0.0)) throw std::domain_error("tail_ratio: r must be positive");
    return hall_psi(r) * r * r / (6.0 / pi_sq);
}

double eta_bar_multi(std::span<const double> sigma, double vol) {
    if (sigma.empty()) throw std::domain_error("eta_bar_multi: need at least one cusp");
    if (!(vol > 0.0)) throw std::domain_error("eta_bar_multi: volume must be positive");
    double denom = 0.0;
    for (double s : sigma) denom += std::exp(-s);
    return pi * vol / denom;
}

double psi_sigma_flat(double vol) {
    if (!(vol > 0.0)) throw std::domain_error("psi_sigma_flat: volume must be positive");
    return 1.0 / (pi * vol);
}

double eta_log_density(double s) { return 2.0 * rho(-2.0 * s); }

double rho_kmk(double r) { return 2.0 * rho(2.0 * r); }

namespace detail {

double hall_psi_mid_branch(double r) {
    return hall_norm * (-1.0 + 2.0 / r + 2.0 * std::log(r) / r);
}

double hall_psi_far_branch(double r) {
    const double w = std::sqrt((r - 4.0) / (4.0 * r));
    return hall_norm * (-1.0 + 2.0 / r + 2.0 * w - (4.0 / r) * std::log(0.5 + w));
}

double rho_mid_branch(double s) {
    return hall_norm * (-std::exp(-s) + 2.0 - 2.0 * s);
}

double rho_far_branch(double s) {
    const double w = std::sqrt(std::max(0.0, 0.25 - std::exp(s)));
    return hall_norm * (-std::exp(-s) + 2.0 + 2.0 * std::exp(-s) * w - 4.0 * std::log(0.5 + w));
}

}

double DensitySpec::operator()(double x) const {
    switch (kind) {
        case Kind::psi: return hall_psi(x);
        case Kind::rho: return rho(x);
        case Kind::omega: return omega_y(x, ell);
        case Kind::psi_rt: return hall_psi_rt(x, t);
    }
    throw std::logic_error("DensitySpec: bad kind");
}

}
