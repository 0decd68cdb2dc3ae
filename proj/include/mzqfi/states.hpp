#ifndef MZQFI_STATES_HPP
#define MZQFI_STATES_HPP

#include <complex>
#include <string>

#include "mzqfi/errors.hpp"

namespace mzqfi {

using complex = std::complex<double>;

/// Two-mode input state families.  Mode a is the "bright" port (coherent
/// or squeezed), mode b carries the definite-parity resource state.
enum class StateFamily {
    TwinFock,  // |kappa>|kappa>
    CsFock,    // |alpha>|kappa>
    CsCss,     // |alpha> (|beta>+|-beta>)/sqrt(N)
    CsSvs,     // |alpha>|xi>
    TwoSvs,    // |xi>|xi'>
    Tmsvs,     // exp(zeta* ab - zeta a'b')|00>
    CsPasvs,   // |alpha> b'^k|xi>/sqrt(N)
    CsPssvs,   // |alpha> b^k|xi>/sqrt(N)
};

/// Moment convention for the cat (CSS) mode: the large-|beta| asymptotic
/// form or the exact expansion.
enum class CssMode { Asymptotic, Exact };

/// Parameters for one input state.  Only the fields relevant to `family`
/// are read; the rest are ignored.
struct InputStateSpec {
    StateFamily family = StateFamily::CsSvs;
    complex alpha{0.0, 0.0};     // coherent amplitude, |alpha| e^{i phi_alpha}
    complex beta{0.0, 0.0};      // cat amplitude
    complex xi{0.0, 0.0};        // squeeze parameter, |xi| e^{i phi_xi}
    complex xi_prime{0.0, 0.0};  // second squeeze parameter (TwoSvs mode b)
    complex zeta{0.0, 0.0};      // two-mode squeeze parameter
    int kappa = 0;               // Fock occupation / photons added or subtracted
    CssMode css_mode = CssMode::Asymptotic;
};

/// The moment bundle every sensitivity bound needs.  Downstream code never
/// sees the state family, only this struct.
struct StateMoments {
    double n_a = 0.0;        // <a'a>
    double n_b = 0.0;        // <b'b>
    double var_a = 0.0;      // V(a'a)
    double var_b = 0.0;      // V(b'b)
    complex a_sq{0.0, 0.0};  // <a^2>
    complex b_sq{0.0, 0.0};  // <b^2>
    double cross_nn = 0.0;   // <a'a b'b>
    double mean_N = 0.0;     // <N> = n_a + n_b
    double mean_N_sq = 0.0;  // <N^2>
    bool separable = true;
};

/// Human-readable family tag used by the CLI ("cs-svs", "tmsvs", ...).
std::string family_tag(StateFamily family);

/// Inverse of family_tag; throws DomainError on an unknown tag.
StateFamily family_from_tag(const std::string& tag);

/// Checks the family-relevant invariants and returns the spec unchanged.
/// Throws DomainError on kappa < 0, photon subtraction from vacuum, or a
/// non-real squeeze parameter for the photon-added/subtracted families.
InputStateSpec validate(const InputStateSpec& spec);

/// Closed-form moment bundle for a validated spec.
StateMoments analytic_moments(const InputStateSpec& spec);

namespace detail {
/// Moments of a single-mode squeezed vacuum with squeeze parameter
/// |xi| e^{i phi}: mean photon number, number variance and <b^2>.
void svs_mode_moments(complex xi, double& n, double& var, complex& sq);
}

} // namespace mzqfi

#endif
