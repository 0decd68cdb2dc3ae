#include "mzqfi/pasvs.hpp"

#include <cmath>

namespace mzqfi {

namespace {

constexpr double kVacuumFloor = 1e-12;  // on sinh^2(xi) for photon subtraction

double log_factorial(int n) { return std::lgamma(double(n) + 1.0); }

void check_op(double xi, const PhotonOp& op) {
    if (op.kappa < 0) throw DomainError("photon operation count must be non-negative");
    if (op.kappa > kMaxPhotonOps)
        throw OverflowError("photon operation count exceeds the finite-sum limit of 30");
    if (op.sign == PhotonOpSign::Subtracted && op.kappa >= 1) {
        const double s = std::sinh(xi);
        if (s * s < kVacuumFloor)
            throw DomainError("photon subtraction from (numerical) vacuum: sinh^2(xi) "
                              "below 1e-12");
    }
}

// N_{xi,k+-} = sum_l k! k! / (l! l! (k-2l)!) y^{2l} x^{k-2l}
// with x_+ = cosh^2 xi, x_- = sinh^2 xi, y = sinh(2 xi)/4; coefficients are
// accumulated in the log domain.
double norm_sum_raw(double xi, PhotonOpSign sign, int kappa) {
    const double ch = std::cosh(xi);
    const double sh = std::sinh(xi);
    const double x = sign == PhotonOpSign::Added ? ch * ch : sh * sh;
    const double y = 0.25 * std::sinh(2.0 * xi);
    double acc = 0.0;
    for (int l = 0; l <= kappa / 2; ++l) {
        const double log_coeff = 2.0 * log_factorial(kappa) - 2.0 * log_factorial(l) -
                                 log_factorial(kappa - 2 * l);
        acc += std::exp(log_coeff) * std::pow(y * y, l) * std::pow(x, kappa - 2 * l);
    }
    if (!std::isfinite(acc))
        throw OverflowError("normalization sum overflowed the double range");
    return acc;
}

} // namespace

std::complex<double> legendre_p(int n, std::complex<double> z) {
    if (n == 0) return {1.0, 0.0};
    if (n == 1) return z;
    std::complex<double> pm1 = 1.0, p = z;
    for (int k = 1; k < n; ++k) {
        const std::complex<double> next =
            ((2.0 * k + 1.0) * z * p - double(k) * pm1) / double(k + 1);
        pm1 = p;
        p = next;
    }
    return p;
}

double normalization_sum(double xi, PhotonOp op) {
    check_op(xi, op);
    return norm_sum_raw(xi, op.sign, op.kappa);
}

double normalization_legendre(double xi, PhotonOp op) {
    check_op(xi, op);
    const double kfact = std::exp(log_factorial(op.kappa));
    if (op.sign == PhotonOpSign::Added) {
        const double ch = std::cosh(xi);
        return kfact * std::pow(ch, double(op.kappa)) *
               legendre_p(op.kappa, {ch, 0.0}).real();
    }
    // N_- = k! [-(i sinh xi)]^k P_k(i sinh xi); real despite the complex route
    const std::complex<double> z(0.0, std::sinh(xi));
    std::complex<double> pref = 1.0;
    for (int q = 0; q < op.kappa; ++q) pref *= -z;
    return kfact * (pref * legendre_p(op.kappa, z)).real();
}

PasvsMoments pasvs_moments(double xi, PhotonOp op) {
    check_op(xi, op);
    const int k = op.kappa;
    const double n0 = norm_sum_raw(xi, op.sign, k);
    const double n1 = norm_sum_raw(xi, op.sign, k + 1);
    const double n2 = norm_sum_raw(xi, op.sign, k + 2);

    PasvsMoments m;
    m.norm = n0;
    if (op.sign == PhotonOpSign::Added) {
        m.n_b = (n1 - n0) / n0;
        m.n_b_sq = (n2 - 3.0 * n1 + n0) / n0;
    } else {
        m.n_b = n1 / n0;
        m.n_b_sq = (n2 + n1) / n0;
    }

    // <b^2> = (1/N_k) sum_l k! (k+2)! / (l! (l+1)! (k-2l)!) (-1) y^{2l+1} x^{k-2l}
    const double ch = std::cosh(xi);
    const double sh = std::sinh(xi);
    const double x = op.sign == PhotonOpSign::Added ? ch * ch : sh * sh;
    const double y = 0.25 * std::sinh(2.0 * xi);
    double acc = 0.0;
    for (int l = 0; l <= k / 2; ++l) {
        const double log_coeff = log_factorial(k) + log_factorial(k + 2) -
                                 log_factorial(l) - log_factorial(l + 1) -
                                 log_factorial(k - 2 * l);
        acc += std::exp(log_coeff) * std::pow(y * y, l) * std::pow(x, k - 2 * l);
    }
    m.b_sq = std::complex<double>(-acc * y / n0, 0.0);
    return m;
}

} // namespace mzqfi
