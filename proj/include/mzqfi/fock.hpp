#ifndef MZQFI_FOCK_HPP
#define MZQFI_FOCK_HPP

#include <vector>

#include "mzqfi/qfi.hpp"
#include "mzqfi/states.hpp"

namespace mzqfi {

/// Truncated two-mode Fock representation.  amplitudes has (cutoff+1)^2
/// entries indexed row-major by (n_a, n_b) and unit norm after
/// construction; tail_mass estimates the probability weight the truncation
/// discarded.
struct FockStateVector {
    int cutoff = 0;
    std::vector<complex> amplitudes;
    double tail_mass = 0.0;

    int dim() const { return cutoff + 1; }
    complex amplitude(int na, int nb) const { return amplitudes[na * dim() + nb]; }
};

struct TailReport {
    int cutoff_used = 0;
    double tail_mass = 0.0;
    double highest_occupied_level_mass = 0.0;  // weight on the outermost retained shell
};

/// Builds the normalized truncated amplitude array for the spec.  Throws
/// TruncationError (with a suggested larger cutoff) when the estimated tail
/// mass reaches tail_tol.  cutoff must be >= 4.
FockStateVector build_fock_state(const InputStateSpec& spec, int cutoff,
                                 double tail_tol = 1e-10);

/// Per-mode Fock cap in choose_cutoff.
inline constexpr int kCutoffCap = 256;

/// Smallest cutoff whose estimated tail mass stays below tail_tol,
/// computed from the analytic level distributions and capped at kCutoffCap.
/// Throws TruncationError when the cap is insufficient.
int choose_cutoff(const InputStateSpec& spec, double tail_tol = 1e-12);

/// All StateMoments fields by direct expectation on the amplitude array;
/// the separable flag comes from a Schmidt-rank test (second coefficient
/// below 1e-10 means product state).
StateMoments numeric_moments(const FockStateVector& state);

/// Fisher matrix from first principles: F_ss = 4V(J_0), F_sd = 4C(J_0, M),
/// F_dd = 4V(M) with M the beam-splitter-rotated J_z.  No parity or
/// separability assumption.
QfiMatrix qfi_matrix_numeric(const FockStateVector& state, const BeamSplitterConfig& bs);

TailReport truncation_diagnostics(const FockStateVector& state);

} // namespace mzqfi

#endif
