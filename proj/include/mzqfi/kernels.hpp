#ifndef MZQFI_KERNELS_HPP
#define MZQFI_KERNELS_HPP

#include <complex>
#include <span>

namespace mzqfi::kernels {

using complex = std::complex<double>;

/// Raw expectation values over a two-mode amplitude array A(i, j) of shape
/// dim x dim (row-major, i = mode-a level).  All sums assume unit norm.
struct MomentSums {
    double n_a = 0.0;       // sum |A|^2 i
    double n_b = 0.0;       // sum |A|^2 j
    double n_a_sq = 0.0;    // sum |A|^2 i^2
    double n_b_sq = 0.0;    // sum |A|^2 j^2
    double cross = 0.0;     // sum |A|^2 i j
    double n_tot_sq = 0.0;  // sum |A|^2 (i+j)^2
    complex a_sq{0.0, 0.0};  // <a^2> via the (i+2, j) shift
    complex b_sq{0.0, 0.0};  // <b^2> via the (i, j+2) shift
};

// Each kernel comes in two flavors: the OpenMP-parallel default used by the
// oracle, and a plain serial reference kept for testing and benchmarking.

MomentSums moment_sums(std::span<const complex> amp, int dim);
MomentSums moment_sums_serial(std::span<const complex> amp, int dim);

/// out = M psi with M = cos(tau) J_z + sin(tau)(cos(theta) J_y + sin(theta) J_x),
/// applied as index-shift gathers; out must have the same size as amp.
void apply_rotated_jz(std::span<const complex> amp, std::span<complex> out,
                      int dim, double tau, double theta);
void apply_rotated_jz_serial(std::span<const complex> amp, std::span<complex> out,
                             int dim, double tau, double theta);

/// <x|y> and |x|^2.
complex inner(std::span<const complex> x, std::span<const complex> y);
complex inner_serial(std::span<const complex> x, std::span<const complex> y);
double norm_sq(std::span<const complex> x);

/// sum_j conj(x(i,j)) f(i,j) y(i,j) with f = (i+j)/2 (the J_0 weight).
complex j0_weighted_inner(std::span<const complex> x, std::span<const complex> y, int dim);
complex j0_weighted_inner_serial(std::span<const complex> x, std::span<const complex> y, int dim);

/// <a' b> (off-diagonal single shift); Re is <J_x>, Im is <J_y>.
complex adag_b(std::span<const complex> amp, int dim);

/// Frobenius norm of A minus its best rank-1 approximation, found by power
/// iteration on A A^H with a deterministic start.  Upper-bounds the second
/// Schmidt coefficient (and is below sqrt(rank) times it), so it separates
/// product states (residual ~ 1e-16) from entangled ones cleanly.
double schmidt_residual_norm(std::span<const complex> amp, int dim);

} // namespace mzqfi::kernels

#endif
