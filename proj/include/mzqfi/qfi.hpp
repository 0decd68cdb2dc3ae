#ifndef MZQFI_QFI_HPP
#define MZQFI_QFI_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "mzqfi/states.hpp"

namespace mzqfi {

/// Beam splitter parameterized by the splitting angle tau in [0, pi]
/// (transmission ratio T = cos^2(tau/2)) and the BS phase theta, stored
/// canonically in (-pi, pi].
struct BeamSplitterConfig {
    BeamSplitterConfig(double tau_, double theta_);

    double tau;
    double theta;

    double transmission() const;  // T = cos^2(tau/2)

    /// Maps a transmission ratio T in [0, 1] to tau = 2 acos(sqrt(T)).
    static BeamSplitterConfig from_transmission(double t, double theta);
};

/// The three independent elements of the 2x2 quantum Fisher matrix over
/// the sum/difference phases.
struct QfiMatrix {
    double f_ss = 0.0;
    double f_sd = 0.0;
    double f_dd = 0.0;
};

enum class Theory { SingleParam, TwoParam };

enum class TauChoice {
    Balanced,          // tau = pi/2
    FullTransmission,  // tau = 0
    Any,               // all tau equivalent
};

enum class ThetaChoiceKind { PhaseMatched, Any };

/// Optimal BS phase: either any phase works (<a^2> or <b^2> vanishes) or
/// the phase-matched pair {theta0, theta0 + pi}, with the representative
/// closest to zero reported as canonical.
struct ThetaChoice {
    ThetaChoiceKind kind = ThetaChoiceKind::Any;
    double canonical = 0.0;
    std::array<double, 2> solutions{0.0, 0.0};  // valid when PhaseMatched
};

struct OptimalBsReport {
    Theory theory = Theory::TwoParam;
    TauChoice tau_choice = TauChoice::Balanced;
    ThetaChoice theta_choice;
    double max_effective_qfi = 0.0;  // F_max = 1/(v * V) at v = 1
    double bound_variance = 0.0;     // 1 / F_max
};

/// Shot-noise, Heisenberg and photon-number-fluctuation variance benchmarks.
struct SensitivityLimits {
    double snl = 0.0;      // 1/<N>
    double hl = 0.0;       // 1/<N>^2
    double hofmann = 0.0;  // 1/<N^2>
};

/// Effective QFI at a balanced BS with phase theta,
///   F = 2<a'a b'b> + n_a + n_b - 2 Re(e^{2i theta} <a'^2><b^2>).
/// Requires a separable bundle (the factorized cross term assumes it).
double frak_f(const StateMoments& m, double theta);

struct FrakFMax {
    double value = 0.0;
    ThetaChoice theta;
};

/// Maximum of frak_f over the BS phase together with the maximizing phase;
/// the optimum satisfies 2 theta - theta_a + theta_b = +-pi when both
/// quadratic moments are nonzero, and is phase-independent otherwise.
FrakFMax frak_f_max(const StateMoments& m);

/// Harmonic-mean-like combination 4 Va Vb / (Va + Vb) governing the tau = 0
/// limit of the two-parameter bound.  Defined as 0 when both variances
/// vanish (the limit along Va = Vb -> 0).
double frak_g(const StateMoments& m);

/// 4 V(J_z) = V(a'a) + V(b'b) for separable inputs.
double four_var_jz(const StateMoments& m);

/// Fisher matrix of a separable bundle at the given beam splitter.
QfiMatrix qfi_matrix(const StateMoments& m, const BeamSplitterConfig& bs);

/// Fisher matrix of the two-mode squeezed vacuum (per-mode mean photon
/// number n), the closed form exposed for the non-separable family:
/// F_ss = 4(n^2+n), F_sd = 0, F_dd = 4(n^2+n) sin^2 tau.
QfiMatrix tmsvs_qfi_matrix(double n_per_mode, const BeamSplitterConfig& bs);

/// Effective QFI of the TMSVS at a balanced BS, 4(n^2 + n).
double tmsvs_frak_f(double n_per_mode);

/// Two-parameter Cramér–Rao lower bound on V(phi_d) after upsilon
/// repetitions.  Falls back to 1/(v F_dd) when F_ss = 0 (sharp total photon
/// number: the sum phase carries no information).
double bound_v2(const QfiMatrix& q, int upsilon);

/// Single-parameter bound 1/(v F_dd).
double bound_v1(const QfiMatrix& q, int upsilon);

/// Chooses the BS splitting angle and phase maximizing the effective QFI
/// under the given estimation theory, comparing the tau = 0 plateau
/// (frak_g or 4V(J_z)) against the balanced-BS maximum frak_f_max.
OptimalBsReport optimize_bs(const StateMoments& m, Theory theory);

/// 1/<N>, 1/<N>^2 and 1/<N^2> for a bundle with <N> > 0.
SensitivityLimits sensitivity_limits(const StateMoments& m);

/// Sensitivity gain in dB, -10 log10(variance * sqrt(v <N>)).
double gain_db(double variance, int upsilon, double mean_n);

/// Alternate convention -10 log10(sqrt(variance) * sqrt(v <N>)).  Never the
/// default; exposed behind an explicit flag in the CLI.
double gain_db_alt(double variance, int upsilon, double mean_n);

/// The six canonical input-state rows: twin Fock, coherent*Fock,
/// coherent*cat, coherent*squeezed, twin squeezed, two-mode squeezed.
enum class StateRow { Tfs, CsFs, CsCss, CsSvs, Tsvs, Tmsvs };

std::string state_row_name(StateRow row);

/// Closed-form summary quantities for one row at mean photon numbers
/// (n_a, n_b).  Rows that force equal occupation (Tfs, Tsvs, Tmsvs) read
/// n_a only.  frak_g is absent for the non-separable Tmsvs row.
struct StateRowValues {
    StateRow row;
    std::optional<double> frak_g;
    double four_var_jz = 0.0;
    double frak_f = 0.0;
    std::string tau_opt;    // descriptive: "pi/2", "0", "any"
    std::string theta_opt;  // descriptive: "phase-matched", "any"
};

/// Builds the row's moment bundle from (n_a, n_b) with real positive state
/// parameters and evaluates the implemented frak_g / 4V(J_z) / frak_f_max.
StateRowValues state_row_values(StateRow row, double n_a, double n_b);

/// The moment bundle behind state_row_values (Tmsvs included,
/// separable = false).
StateMoments state_row_moments(StateRow row, double n_a, double n_b);

struct HierarchyEntry {
    StateRow row;
    double f_max = 0.0;
};

/// Evaluates every row's balanced-BS effective QFI at equal per-mode mean
/// photon number n and returns the entries sorted ascending (ties keep the
/// canonical row order).
std::vector<HierarchyEntry> hierarchy_check(double n);

/// Wraps an angle into (-pi, pi].
double wrap_angle(double a);

} // namespace mzqfi

#endif
