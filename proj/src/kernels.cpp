#include "mzqfi/kernels.hpp"

#include <cmath>
#include <vector>

namespace mzqfi::kernels {

namespace {
inline int idx(int i, int j, int dim) { return i * dim + j; }
}

MomentSums moment_sums_serial(std::span<const complex> amp, int dim) {
    MomentSums s;
    double asq_re = 0.0, asq_im = 0.0, bsq_re = 0.0, bsq_im = 0.0;
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            const complex a = amp[idx(i, j, dim)];
            const double w = std::norm(a);
            s.n_a += w * i;
            s.n_b += w * j;
            s.n_a_sq += w * double(i) * i;
            s.n_b_sq += w * double(j) * j;
            s.cross += w * double(i) * j;
            s.n_tot_sq += w * double(i + j) * (i + j);
            if (i + 2 < dim) {
                const complex t = std::conj(a) * amp[idx(i + 2, j, dim)] *
                                  std::sqrt(double(i + 1) * (i + 2));
                asq_re += t.real();
                asq_im += t.imag();
            }
            if (j + 2 < dim) {
                const complex t = std::conj(a) * amp[idx(i, j + 2, dim)] *
                                  std::sqrt(double(j + 1) * (j + 2));
                bsq_re += t.real();
                bsq_im += t.imag();
            }
        }
    }
    s.a_sq = complex(asq_re, asq_im);
    s.b_sq = complex(bsq_re, bsq_im);
    return s;
}

MomentSums moment_sums(std::span<const complex> amp, int dim) {
    double na = 0.0, nb = 0.0, nasq = 0.0, nbsq = 0.0, cross = 0.0, ntotsq = 0.0;
    double asq_re = 0.0, asq_im = 0.0, bsq_re = 0.0, bsq_im = 0.0;
    const complex* a_ptr = amp.data();
#pragma omp parallel for schedule(static) \
    reduction(+ : na, nb, nasq, nbsq, cross, ntotsq, asq_re, asq_im, bsq_re, bsq_im)
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            const complex a = a_ptr[idx(i, j, dim)];
            const double w = std::norm(a);
            na += w * i;
            nb += w * j;
            nasq += w * double(i) * i;
            nbsq += w * double(j) * j;
            cross += w * double(i) * j;
            ntotsq += w * double(i + j) * (i + j);
            if (i + 2 < dim) {
                const complex t = std::conj(a) * a_ptr[idx(i + 2, j, dim)] *
                                  std::sqrt(double(i + 1) * (i + 2));
                asq_re += t.real();
                asq_im += t.imag();
            }
            if (j + 2 < dim) {
                const complex t = std::conj(a) * a_ptr[idx(i, j + 2, dim)] *
                                  std::sqrt(double(j + 1) * (j + 2));
                bsq_re += t.real();
                bsq_im += t.imag();
            }
        }
    }
    MomentSums s;
    s.n_a = na;
    s.n_b = nb;
    s.n_a_sq = nasq;
    s.n_b_sq = nbsq;
    s.cross = cross;
    s.n_tot_sq = ntotsq;
    s.a_sq = complex(asq_re, asq_im);
    s.b_sq = complex(bsq_re, bsq_im);
    return s;
}

// w(i,j) = cos(tau) (i-j)/2 psi(i,j)
//        + c1 sqrt(i (j+1)) psi(i-1, j+1) + conj(c1) sqrt((i+1) j) psi(i+1, j-1)
// with c1 = sin(tau) (sin(theta) - i cos(theta)) / 2; gather form keeps rows
// independent.
namespace {
inline void apply_row(const complex* amp, complex* out, int dim, int i,
                      double cos_tau, complex c1) {
    const complex c2 = std::conj(c1);
    for (int j = 0; j < dim; ++j) {
        complex w = cos_tau * (0.5 * (i - j)) * amp[idx(i, j, dim)];
        if (i > 0 && j + 1 < dim)
            w += c1 * std::sqrt(double(i) * (j + 1)) * amp[idx(i - 1, j + 1, dim)];
        if (i + 1 < dim && j > 0)
            w += c2 * std::sqrt(double(i + 1) * j) * amp[idx(i + 1, j - 1, dim)];
        out[idx(i, j, dim)] = w;
    }
}
}

void apply_rotated_jz_serial(std::span<const complex> amp, std::span<complex> out,
                             int dim, double tau, double theta) {
    const double cos_tau = std::cos(tau);
    const complex c1 = 0.5 * std::sin(tau) * complex(std::sin(theta), -std::cos(theta));
    for (int i = 0; i < dim; ++i) apply_row(amp.data(), out.data(), dim, i, cos_tau, c1);
}

void apply_rotated_jz(std::span<const complex> amp, std::span<complex> out,
                      int dim, double tau, double theta) {
    const double cos_tau = std::cos(tau);
    const complex c1 = 0.5 * std::sin(tau) * complex(std::sin(theta), -std::cos(theta));
    const complex* a_ptr = amp.data();
    complex* o_ptr = out.data();
#pragma omp parallel for schedule(static)
    for (int i = 0; i < dim; ++i) apply_row(a_ptr, o_ptr, dim, i, cos_tau, c1);
}

complex inner_serial(std::span<const complex> x, std::span<const complex> y) {
    double re = 0.0, im = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const complex t = std::conj(x[k]) * y[k];
        re += t.real();
        im += t.imag();
    }
    return {re, im};
}

complex inner(std::span<const complex> x, std::span<const complex> y) {
    double re = 0.0, im = 0.0;
    const complex* xp = x.data();
    const complex* yp = y.data();
    const long n = long(x.size());
#pragma omp parallel for schedule(static) reduction(+ : re, im)
    for (long k = 0; k < n; ++k) {
        const complex t = std::conj(xp[k]) * yp[k];
        re += t.real();
        im += t.imag();
    }
    return {re, im};
}

double norm_sq(std::span<const complex> x) {
    double acc = 0.0;
    const complex* xp = x.data();
    const long n = long(x.size());
#pragma omp parallel for schedule(static) reduction(+ : acc)
    for (long k = 0; k < n; ++k) acc += std::norm(xp[k]);
    return acc;
}

complex j0_weighted_inner_serial(std::span<const complex> x, std::span<const complex> y,
                                 int dim) {
    double re = 0.0, im = 0.0;
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            const complex t =
                std::conj(x[idx(i, j, dim)]) * (0.5 * (i + j)) * y[idx(i, j, dim)];
            re += t.real();
            im += t.imag();
        }
    }
    return {re, im};
}

complex j0_weighted_inner(std::span<const complex> x, std::span<const complex> y,
                          int dim) {
    double re = 0.0, im = 0.0;
    const complex* xp = x.data();
    const complex* yp = y.data();
#pragma omp parallel for schedule(static) reduction(+ : re, im)
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            const complex t = std::conj(xp[idx(i, j, dim)]) * (0.5 * (i + j)) *
                              yp[idx(i, j, dim)];
            re += t.real();
            im += t.imag();
        }
    }
    return {re, im};
}

complex adag_b(std::span<const complex> amp, int dim) {
    // <a'b>: gathers amp(i+1, j-1), i.e. conj(A(i,j)) A(i+1,j-1) would be
    // <ab'>; here sum conj(A(i+1,j-1)) A(i,j) sqrt((i+1) j).
    double re = 0.0, im = 0.0;
    const complex* ap = amp.data();
#pragma omp parallel for schedule(static) reduction(+ : re, im)
    for (int i = 0; i < dim - 1; ++i) {
        for (int j = 1; j < dim; ++j) {
            const complex t = std::conj(ap[idx(i + 1, j - 1, dim)]) *
                              ap[idx(i, j, dim)] * std::sqrt(double(i + 1) * j);
            re += t.real();
            im += t.imag();
        }
    }
    return {re, im};
}

double schmidt_residual_norm(std::span<const complex> amp, int dim) {
    const complex* A = amp.data();

    // u <- normalize(A A^H u), deterministic row-norm start
    std::vector<complex> u(dim), t(dim);
    double start_norm = 0.0;
    for (int i = 0; i < dim; ++i) {
        double r = 0.0;
        for (int j = 0; j < dim; ++j) r += std::norm(A[idx(i, j, dim)]);
        u[i] = std::sqrt(r);
        start_norm += r;
    }
    if (start_norm <= 0.0) return 0.0;
    for (int i = 0; i < dim; ++i) u[i] /= std::sqrt(start_norm);

    double lambda_prev = 0.0;
    for (int iter = 0; iter < 1000; ++iter) {
        // t = A^H u
        for (int j = 0; j < dim; ++j) t[j] = 0.0;
        for (int i = 0; i < dim; ++i) {
            const complex ui = u[i];
            for (int j = 0; j < dim; ++j) t[j] += std::conj(A[idx(i, j, dim)]) * ui;
        }
        // u_next = A t
        double lambda = 0.0;
        for (int i = 0; i < dim; ++i) {
            complex acc = 0.0;
            for (int j = 0; j < dim; ++j) acc += A[idx(i, j, dim)] * t[j];
            u[i] = acc;
            lambda += std::norm(acc);
        }
        lambda = std::sqrt(lambda);  // = |B u|, converges to sigma_1^2
        if (lambda <= 0.0) return std::sqrt(start_norm);
        for (int i = 0; i < dim; ++i) u[i] /= lambda;
        if (std::abs(lambda - lambda_prev) <= 1e-15 * lambda && iter > 2) break;
        lambda_prev = lambda;
    }

    // sigma v = A^H u
    for (int j = 0; j < dim; ++j) t[j] = 0.0;
    for (int i = 0; i < dim; ++i) {
        const complex ui = u[i];
        for (int j = 0; j < dim; ++j) t[j] += std::conj(A[idx(i, j, dim)]) * ui;
    }
    double sigma = 0.0;
    for (int j = 0; j < dim; ++j) sigma += std::norm(t[j]);
    sigma = std::sqrt(sigma);
    if (sigma <= 0.0) return std::sqrt(start_norm);

    // || A - sigma u v^H ||_F, elementwise (no cancellation against ||A||)
    double res = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : res)
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            // sigma u_i conj(v_j) with v = t / sigma
            const complex r = A[idx(i, j, dim)] - u[i] * std::conj(t[j]);
            res += std::norm(r);
        }
    }
    return std::sqrt(res);
}

} // namespace mzqfi::kernels
