#include "mzqfi/qfi.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace mzqfi {

namespace {
constexpr double kPi = 3.14159265358979323846;

void require_separable(const StateMoments& m, const char* who) {
    if (!m.separable)
        throw SeparabilityError(std::string(who) +
                                ": the factorized form assumes a separable input; use "
                                "the family closed form or the Fock oracle");
}

// magnitude below which a quadratic moment counts as vanishing for the
// phase-choice logic (analytic bundles produce exact zeros; oracle bundles
// carry rounding residue)
double zero_floor(const StateMoments& m) {
    return 1e-13 * (1.0 + m.n_a + m.n_b);
}
}

double wrap_angle(double a) {
    double w = std::remainder(a, 2.0 * kPi);
    if (w <= -kPi) w += 2.0 * kPi;
    return w;
}

BeamSplitterConfig::BeamSplitterConfig(double tau_, double theta_)
    : tau(tau_), theta(wrap_angle(theta_)) {
    if (!(tau_ >= 0.0 && tau_ <= kPi))
        throw DomainError("beam splitter angle tau must lie in [0, pi]");
}

double BeamSplitterConfig::transmission() const {
    const double c = std::cos(tau / 2.0);
    return c * c;
}

BeamSplitterConfig BeamSplitterConfig::from_transmission(double t, double theta) {
    if (!(t >= 0.0 && t <= 1.0))
        throw DomainError("transmission ratio must lie in [0, 1]");
    return BeamSplitterConfig(2.0 * std::acos(std::sqrt(t)), theta);
}

double frak_f(const StateMoments& m, double theta) {
    require_separable(m, "frak_f");
    const complex rot = std::exp(complex(0.0, 2.0 * theta));
    return 2.0 * m.cross_nn + m.n_a + m.n_b -
           2.0 * (rot * std::conj(m.a_sq) * m.b_sq).real();
}

FrakFMax frak_f_max(const StateMoments& m) {
    require_separable(m, "frak_f_max");
    FrakFMax out;
    const double ma = std::abs(m.a_sq);
    const double mb = std::abs(m.b_sq);
    out.value = 2.0 * m.cross_nn + m.n_a + m.n_b + 2.0 * ma * mb;
    if (ma <= zero_floor(m) || mb <= zero_floor(m)) {
        out.theta.kind = ThetaChoiceKind::Any;
        return out;
    }
    const double theta_a = std::arg(m.a_sq);
    const double theta_b = std::arg(m.b_sq);
    const double t0 = wrap_angle((theta_a - theta_b + kPi) / 2.0);
    const double t1 = wrap_angle((theta_a - theta_b - kPi) / 2.0);
    double canonical;
    if (std::abs(t0) < std::abs(t1))
        canonical = t0;
    else if (std::abs(t1) < std::abs(t0))
        canonical = t1;
    else
        canonical = std::max(t0, t1);  // tie at +-pi/2: report the positive one
    out.theta.kind = ThetaChoiceKind::PhaseMatched;
    out.theta.canonical = canonical;
    out.theta.solutions = {canonical, wrap_angle(canonical + kPi)};
    return out;
}

double frak_g(const StateMoments& m) {
    require_separable(m, "frak_g");
    const double sum = m.var_a + m.var_b;
    if (sum == 0.0) return 0.0;  // limit along var_a = var_b -> 0
    return 4.0 * m.var_a * m.var_b / sum;
}

double four_var_jz(const StateMoments& m) {
    require_separable(m, "four_var_jz");
    return m.var_a + m.var_b;
}

QfiMatrix qfi_matrix(const StateMoments& m, const BeamSplitterConfig& bs) {
    require_separable(m, "qfi_matrix");
    const double ct = std::cos(bs.tau);
    const double st = std::sin(bs.tau);
    QfiMatrix q;
    q.f_ss = m.var_a + m.var_b;
    q.f_sd = (m.var_a - m.var_b) * ct;
    q.f_dd = (m.var_a + m.var_b) * ct * ct + frak_f(m, bs.theta) * st * st;
    return q;
}

double tmsvs_frak_f(double n_per_mode) {
    return 4.0 * (n_per_mode * n_per_mode + n_per_mode);
}

QfiMatrix tmsvs_qfi_matrix(double n_per_mode, const BeamSplitterConfig& bs) {
    const double st = std::sin(bs.tau);
    QfiMatrix q;
    q.f_ss = tmsvs_frak_f(n_per_mode);
    q.f_sd = 0.0;
    q.f_dd = tmsvs_frak_f(n_per_mode) * st * st;
    return q;
}

namespace {
void require_upsilon(int upsilon) {
    if (upsilon < 1) throw DomainError("repetition count upsilon must be positive");
}
}

double bound_v2(const QfiMatrix& q, int upsilon) {
    require_upsilon(upsilon);
    if (q.f_ss == 0.0) {
        // sharp total photon number: the sum phase carries no information and
        // the problem is effectively single-parameter
        if (q.f_dd > 0.0) return 1.0 / (double(upsilon) * q.f_dd);
        throw SingularFisherError("bound_v2: zero Fisher information");
    }
    const double det = q.f_ss * q.f_dd - q.f_sd * q.f_sd;
    if (q.f_dd <= 0.0 || det <= 1e-14 * q.f_ss * q.f_dd)
        throw SingularFisherError("bound_v2: singular Fisher matrix, phase not "
                                  "identifiable");
    return q.f_ss / (double(upsilon) * det);
}

double bound_v1(const QfiMatrix& q, int upsilon) {
    require_upsilon(upsilon);
    if (q.f_dd <= 0.0)
        throw SingularFisherError("bound_v1: F_dd = 0, phase not identifiable");
    return 1.0 / (double(upsilon) * q.f_dd);
}

OptimalBsReport optimize_bs(const StateMoments& m, Theory theory) {
    const double plateau = theory == Theory::TwoParam ? frak_g(m) : four_var_jz(m);
    const FrakFMax fm = frak_f_max(m);
    const double tol = 1e-9 * std::max({plateau, fm.value, 1.0});

    OptimalBsReport r;
    r.theory = theory;
    if (fm.value > plateau + tol) {
        r.tau_choice = TauChoice::Balanced;
        r.theta_choice = fm.theta;
    } else if (fm.value < plateau - tol) {
        r.tau_choice = TauChoice::FullTransmission;
        r.theta_choice.kind = ThetaChoiceKind::Any;  // frak_f is irrelevant at tau = 0
    } else {
        r.tau_choice = TauChoice::Any;
        r.theta_choice = fm.theta;
    }
    r.max_effective_qfi = std::max(plateau, fm.value);
    if (r.max_effective_qfi <= 0.0)
        throw SingularFisherError("optimize_bs: zero Fisher information for every "
                                  "beam splitter");
    r.bound_variance = 1.0 / r.max_effective_qfi;
    return r;
}

SensitivityLimits sensitivity_limits(const StateMoments& m) {
    if (!(m.mean_N > 0.0))
        throw DomainError("sensitivity_limits: mean photon number must be positive");
    SensitivityLimits l;
    l.snl = 1.0 / m.mean_N;
    l.hl = 1.0 / (m.mean_N * m.mean_N);
    l.hofmann = 1.0 / m.mean_N_sq;
    return l;
}

double gain_db(double variance, int upsilon, double mean_n) {
    require_upsilon(upsilon);
    if (!(variance > 0.0) || !(mean_n > 0.0))
        throw DomainError("gain_db: variance and mean photon number must be positive");
    return -10.0 * std::log10(variance * std::sqrt(double(upsilon) * mean_n));
}

double gain_db_alt(double variance, int upsilon, double mean_n) {
    require_upsilon(upsilon);
    if (!(variance > 0.0) || !(mean_n > 0.0))
        throw DomainError("gain_db_alt: variance and mean photon number must be positive");
    return -10.0 * std::log10(std::sqrt(variance) * std::sqrt(double(upsilon) * mean_n));
}

std::string state_row_name(StateRow row) {
    switch (row) {
        case StateRow::Tfs: return "tfs";
        case StateRow::CsFs: return "cs-fs";
        case StateRow::CsCss: return "cs-css";
        case StateRow::CsSvs: return "cs-svs";
        case StateRow::Tsvs: return "tsvs";
        case StateRow::Tmsvs: return "tmsvs";
    }
    return "?";
}

StateMoments state_row_moments(StateRow row, double n_a, double n_b) {
    if (n_a < 0.0 || n_b < 0.0)
        throw DomainError("state_row_moments: occupations must be non-negative");
    StateMoments m;
    m.separable = true;
    auto coherent_a = [&]() {
        m.n_a = n_a;
        m.var_a = n_a;
        m.a_sq = complex(n_a, 0.0);  // real alpha: <a^2> = alpha^2 = n_a
    };
    auto svs_on = [&](double n, double& nn, double& var, complex& sq) {
        nn = n;
        var = 2.0 * n * (1.0 + n);
        sq = complex(-std::sqrt(n * (1.0 + n)), 0.0);  // real xi: theta_b = pi
    };
    switch (row) {
        case StateRow::Tfs:
            m.n_a = m.n_b = n_a;  // equal occupation by construction
            break;
        case StateRow::CsFs:
            coherent_a();
            m.n_b = n_b;
            break;
        case StateRow::CsCss:
            coherent_a();
            m.n_b = n_b;
            m.var_b = n_b;
            m.b_sq = complex(n_b, 0.0);  // real beta, asymptotic convention
            break;
        case StateRow::CsSvs:
            coherent_a();
            svs_on(n_b, m.n_b, m.var_b, m.b_sq);
            break;
        case StateRow::Tsvs:
            svs_on(n_a, m.n_a, m.var_a, m.a_sq);
            svs_on(n_a, m.n_b, m.var_b, m.b_sq);  // identical pair
            break;
        case StateRow::Tmsvs: {
            const double n = n_a;
            m.n_a = m.n_b = n;
            m.var_a = m.var_b = n * n + n;
            m.cross_nn = 2.0 * n * n + n;
            m.mean_N = 2.0 * n;
            m.mean_N_sq = 8.0 * n * n + 4.0 * n;
            m.separable = false;
            return m;
        }
    }
    m.cross_nn = m.n_a * m.n_b;
    m.mean_N = m.n_a + m.n_b;
    m.mean_N_sq = m.var_a + m.var_b + m.mean_N * m.mean_N;
    return m;
}

StateRowValues state_row_values(StateRow row, double n_a, double n_b) {
    StateRowValues v;
    v.row = row;
    const StateMoments m = state_row_moments(row, n_a, n_b);
    if (row == StateRow::Tmsvs) {
        v.frak_g = std::nullopt;
        v.four_var_jz = 0.0;  // V(a'a - b'b) vanishes on the twin-level diagonal
        v.frak_f = tmsvs_frak_f(n_a);
        v.tau_opt = "pi/2";
        v.theta_opt = "any";
        return v;
    }
    v.frak_g = frak_g(m);
    v.four_var_jz = four_var_jz(m);
    const FrakFMax fm = frak_f_max(m);
    v.frak_f = fm.value;
    const OptimalBsReport r = optimize_bs(m, Theory::TwoParam);
    switch (r.tau_choice) {
        case TauChoice::Balanced: v.tau_opt = "pi/2"; break;
        case TauChoice::FullTransmission: v.tau_opt = "0"; break;
        case TauChoice::Any: v.tau_opt = "any"; break;
    }
    if (r.theta_choice.kind == ThetaChoiceKind::Any) {
        v.theta_opt = "any";
    } else {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.6g", r.theta_choice.canonical);
        v.theta_opt = buf;
    }
    return v;
}

std::vector<HierarchyEntry> hierarchy_check(double n) {
    if (!(n > 0.0)) throw DomainError("hierarchy_check: n must be positive");
    std::vector<HierarchyEntry> out;
    for (StateRow row : {StateRow::Tfs, StateRow::CsFs, StateRow::CsCss,
                         StateRow::CsSvs, StateRow::Tsvs, StateRow::Tmsvs}) {
        out.push_back({row, state_row_values(row, n, n).frak_f});
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const HierarchyEntry& a, const HierarchyEntry& b) {
                         return a.f_max < b.f_max;
                     });
    return out;
}

} // namespace mzqfi
