#ifndef MZQFI_PASVS_HPP
#define MZQFI_PASVS_HPP

#include <complex>

#include "mzqfi/errors.hpp"

namespace mzqfi {

enum class PhotonOpSign { Added, Subtracted };

/// A kappa-photon addition (b'^k) or subtraction (b^k) applied to a
/// squeezed vacuum.  kappa is capped at 30 by the finite-sum evaluation.
struct PhotonOp {
    PhotonOpSign sign = PhotonOpSign::Added;
    int kappa = 0;
};

inline constexpr int kMaxPhotonOps = 30;

/// Normalization and photon-number moments of a photon-added/subtracted
/// squeezed vacuum state with real squeeze parameter.
struct PasvsMoments {
    double norm = 1.0;              // <xi| b^k b'^k |xi> resp. <xi| b'^k b^k |xi>
    double n_b = 0.0;               // <b'b>
    double n_b_sq = 0.0;            // <(b'b)^2>
    std::complex<double> b_sq{0.0, 0.0};  // <b^2>, real and negative for xi > 0
};

/// Normalization constant evaluated as the explicit finite double-factorial
/// sum.  Throws DomainError for subtraction from (numerical) vacuum and
/// OverflowError for kappa > 30.
double normalization_sum(double xi, PhotonOp op);

/// Same value computed through Legendre polynomials: P_k(cosh xi) for
/// addition, P_k(i sinh xi) with a compensating prefactor for subtraction.
/// The result is real despite complex intermediates.
double normalization_legendre(double xi, PhotonOp op);

/// Mean photon number, squared photon number and <b^2> from ratios of
/// normalization constants at kappa, kappa+1, kappa+2.
PasvsMoments pasvs_moments(double xi, PhotonOp op);

/// Legendre polynomial P_n evaluated by the three-term recurrence at a
/// complex argument.
std::complex<double> legendre_p(int n, std::complex<double> z);

} // namespace mzqfi

#endif
