#include "mzqfi/fock.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mzqfi/kernels.hpp"

namespace mzqfi {

namespace {

constexpr double kSeparabilityThreshold = 1e-10;  // on the second Schmidt coefficient
constexpr int kWeightScanCap = 200000;            // hard stop for tail scans

struct ModeAmps {
    std::vector<complex> amp;  // unit norm on 0..cutoff
    double tail = 0.0;         // estimated mass beyond cutoff (of the untruncated state)
};

// --- per-mode amplitude builders -----------------------------------------

ModeAmps coherent_mode(complex alpha, int cutoff) {
    const double mu = std::norm(alpha);
    ModeAmps m;
    m.amp.assign(cutoff + 1, complex(0.0, 0.0));
    // c_0 = e^{-mu/2}; c_{n+1} = c_n alpha / sqrt(n+1)
    complex c = std::exp(complex(-mu / 2.0, 0.0));
    double kept = 0.0;
    for (int n = 0; n <= cutoff; ++n) {
        m.amp[n] = c;
        kept += std::norm(c);
        c *= alpha / std::sqrt(double(n + 1));
    }
    m.tail = std::max(0.0, 1.0 - kept);
    const double s = std::sqrt(kept);
    for (auto& a : m.amp) a /= s;
    return m;
}

ModeAmps fock_mode(int kappa, int cutoff) {
    ModeAmps m;
    m.amp.assign(cutoff + 1, complex(0.0, 0.0));
    if (kappa <= cutoff) {
        m.amp[kappa] = 1.0;
        m.tail = 0.0;
    } else {
        m.tail = 1.0;
    }
    return m;
}

ModeAmps css_mode(complex beta, int cutoff) {
    const double mu = std::norm(beta);
    const double n_css = 2.0 * (1.0 + std::exp(-2.0 * mu));
    ModeAmps m;
    m.amp.assign(cutoff + 1, complex(0.0, 0.0));
    // even levels only: c_n = 2 beta^n e^{-mu/2} / sqrt(n! N_css)
    complex c = 2.0 * std::exp(complex(-mu / 2.0, 0.0)) / std::sqrt(n_css);
    double kept = 0.0;
    int n = 0;
    while (n <= cutoff) {
        m.amp[n] = c;
        kept += std::norm(c);
        c *= beta * beta / std::sqrt(double(n + 1) * (n + 2));
        n += 2;
    }
    m.tail = std::max(0.0, 1.0 - kept);
    const double s = std::sqrt(kept);
    for (auto& a : m.amp) a /= s;
    return m;
}

ModeAmps svs_mode(complex xi, int cutoff) {
    const double r = std::abs(xi);
    ModeAmps m;
    m.amp.assign(cutoff + 1, complex(0.0, 0.0));
    if (r == 0.0) {
        m.amp[0] = 1.0;
        return m;
    }
    const complex phase = xi / r;
    const double t = std::tanh(r);
    // A_0 = 1/sqrt(cosh r); A_{m+1} = -phase t sqrt((2m+1)/(2m+2)) A_m at level 2m
    complex a = 1.0 / std::sqrt(std::cosh(r));
    double kept = 0.0;
    for (int lvl = 0; lvl <= cutoff; lvl += 2) {
        m.amp[lvl] = a;
        kept += std::norm(a);
        const int mm = lvl / 2;
        a *= -phase * t * std::sqrt(double(2 * mm + 1) / double(2 * mm + 2));
    }
    // remaining even-level weights decay with ratio < t^2
    double w = std::norm(a);
    double tail = 0.0;
    for (int mm = cutoff / 2 + 1; mm < kWeightScanCap; ++mm) {
        tail += w;
        if (w < 1e-320 || w < tail * 1e-18) break;
        w *= t * t * double(2 * mm + 1) / double(2 * mm + 2);
    }
    m.tail = std::max(tail, std::max(0.0, 1.0 - kept));
    const double s = std::sqrt(kept);
    for (auto& x : m.amp) x /= s;
    return m;
}

// b'^k or b^k applied to a squeezed vacuum, renormalized numerically.
// The underlying SVS is built long enough that its own tail is negligible
// relative to the requested estimate.
ModeAmps pasvs_mode(double xi, bool added, int kappa, int cutoff) {
    const double r = std::abs(xi);
    const double t = std::tanh(r);
    // extend until SVS weights decay below 1e-34 of peak
    int ext = cutoff + kappa + 64;
    if (t > 0.0) {
        const double decay = std::max(1e-3, -std::log(t * t));
        ext = cutoff + kappa + int(80.0 / decay) + 64;
    }
    ext = std::min(ext, 60000);
    ModeAmps svs = svs_mode(complex(xi, 0.0), ext);

    std::vector<complex> raw(ext + 1 + kappa, complex(0.0, 0.0));
    if (added) {
        // raw(n) = svs(n-k) sqrt(n!/(n-k)!)
        for (int n = kappa; n <= ext + kappa; ++n) {
            const int src = n - kappa;
            if (src > ext) break;
            double f = 1.0;
            for (int q = src + 1; q <= n; ++q) f *= double(q);
            raw[n] = svs.amp[src] * std::sqrt(f);
        }
    } else {
        // raw(n) = svs(n+k) sqrt((n+k)!/n!)
        for (int n = 0; n + kappa <= ext; ++n) {
            double f = 1.0;
            for (int q = n + 1; q <= n + kappa; ++q) f *= double(q);
            raw[n] = svs.amp[n + kappa] * std::sqrt(f);
        }
    }

    double total = 0.0, kept = 0.0;
    for (int n = 0; n < int(raw.size()); ++n) {
        const double w = std::norm(raw[n]);
        total += w;
        if (n <= cutoff) kept += w;
    }
    ModeAmps m;
    m.amp.assign(cutoff + 1, complex(0.0, 0.0));
    if (total <= 0.0) {
        // subtraction annihilated everything (validate() rejects this upstream)
        m.tail = 1.0;
        return m;
    }
    m.tail = std::max(0.0, (total - kept) / total);
    const double s = std::sqrt(kept);
    for (int n = 0; n <= cutoff; ++n) m.amp[n] = raw[n] / s;
    return m;
}

FockStateVector product_state(const ModeAmps& a, const ModeAmps& b, int cutoff) {
    FockStateVector st;
    st.cutoff = cutoff;
    const int dim = cutoff + 1;
    st.amplitudes.assign(std::size_t(dim) * dim, complex(0.0, 0.0));
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) st.amplitudes[std::size_t(i) * dim + j] = a.amp[i] * b.amp[j];
    st.tail_mass = 1.0 - (1.0 - a.tail) * (1.0 - b.tail);
    return st;
}

FockStateVector tmsvs_state(complex zeta, int cutoff) {
    const double r = std::abs(zeta);
    FockStateVector st;
    st.cutoff = cutoff;
    const int dim = cutoff + 1;
    st.amplitudes.assign(std::size_t(dim) * dim, complex(0.0, 0.0));
    if (r == 0.0) {
        st.amplitudes[0] = 1.0;
        st.tail_mass = 0.0;
        return st;
    }
    const double t = std::tanh(r);
    const complex q = -(zeta / r) * t;
    complex c = 1.0 / std::cosh(r);
    double kept = 0.0;
    for (int n = 0; n <= cutoff; ++n) {
        st.amplitudes[std::size_t(n) * dim + n] = c;
        kept += std::norm(c);
        c *= q;
    }
    st.tail_mass = std::pow(t, 2.0 * (cutoff + 1));  // geometric remainder, exact
    const double s = std::sqrt(kept);
    for (auto& x : st.amplitudes) x /= s;
    return st;
}

ModeAmps mode_a_amps(const InputStateSpec& spec, int cutoff) {
    switch (spec.family) {
        case StateFamily::TwinFock: return fock_mode(spec.kappa, cutoff);
        case StateFamily::TwoSvs: return svs_mode(spec.xi, cutoff);
        default: return coherent_mode(spec.alpha, cutoff);
    }
}

ModeAmps mode_b_amps(const InputStateSpec& spec, int cutoff) {
    switch (spec.family) {
        case StateFamily::TwinFock: return fock_mode(spec.kappa, cutoff);
        case StateFamily::CsFock: return fock_mode(spec.kappa, cutoff);
        case StateFamily::CsCss: return css_mode(spec.beta, cutoff);
        case StateFamily::CsSvs: return svs_mode(spec.xi, cutoff);
        case StateFamily::TwoSvs: return svs_mode(spec.xi_prime, cutoff);
        case StateFamily::CsPasvs:
            return pasvs_mode(spec.xi.real(), true, spec.kappa, cutoff);
        case StateFamily::CsPssvs:
            return pasvs_mode(spec.xi.real(), false, spec.kappa, cutoff);
        default: throw DomainError("mode_b_amps: unsupported family");
    }
}

} // namespace

FockStateVector build_fock_state(const InputStateSpec& spec_in, int cutoff,
                                 double tail_tol) {
    const InputStateSpec spec = validate(spec_in);
    if (cutoff < 4) throw DomainError("build_fock_state: cutoff must be >= 4");

    FockStateVector st;
    if (spec.family == StateFamily::Tmsvs) {
        st = tmsvs_state(spec.zeta, cutoff);
    } else {
        st = product_state(mode_a_amps(spec, cutoff), mode_b_amps(spec, cutoff), cutoff);
    }

    if (!(st.tail_mass < tail_tol)) {
        int suggested = 0;
        try {
            suggested = choose_cutoff(spec, tail_tol);
        } catch (const TruncationError&) {
            suggested = 0;
        }
        std::ostringstream os;
        os << "build_fock_state: estimated tail mass " << st.tail_mass
           << " at cutoff " << cutoff << " exceeds tolerance " << tail_tol << "; ";
        if (suggested > 0)
            os << "suggested cutoff " << suggested;
        else
            os << "no cutoff within the cap of " << kCutoffCap << " suffices";
        throw TruncationError(os.str(), suggested);
    }

    // the per-mode builders normalize on the truncated support already;
    // renormalize once more to absorb rounding
    const double n2 = kernels::norm_sq(st.amplitudes);
    const double s = std::sqrt(n2);
    for (auto& x : st.amplitudes) x /= s;
    return st;
}

int choose_cutoff(const InputStateSpec& spec_in, double tail_tol) {
    const InputStateSpec spec = validate(spec_in);
    const double per_mode_tol = tail_tol / 2.0;

    auto fail = [&]() -> int {
        std::ostringstream os;
        os << "choose_cutoff: no cutoff <= " << kCutoffCap
           << " reaches tail tolerance " << tail_tol << " for this state";
        throw TruncationError(os.str(), 0);
    };

    // smallest c with mode tail < tol, by building the 1-D mode at the cap
    auto mode_cutoff = [&](auto build) -> int {
        ModeAmps probe = build(kCutoffCap);
        if (!(probe.tail < per_mode_tol)) return -1;
        // cumulative mass from the cap-sized build
        std::vector<double> w(kCutoffCap + 1);
        for (int n = 0; n <= kCutoffCap; ++n) w[n] = std::norm(probe.amp[n]);
        // probe.amp is normalized over 0..cap; rescale so full mass = 1
        const double kept_frac = 1.0 - probe.tail;
        double above = probe.tail;
        for (int c = kCutoffCap; c >= 4; --c) {
            const double next_above = above + w[c] * kept_frac;
            if (next_above >= per_mode_tol) return c;
            above = next_above;
        }
        return 4;
    };

    if (spec.family == StateFamily::Tmsvs) {
        const double t = std::tanh(std::abs(spec.zeta));
        if (t == 0.0) return 4;
        for (int c = 4; c <= kCutoffCap; ++c)
            if (std::pow(t, 2.0 * (c + 1)) < tail_tol) return c;
        return fail();
    }

    const int ca = mode_cutoff([&](int c) { return mode_a_amps(spec, c); });
    const int cb = mode_cutoff([&](int c) { return mode_b_amps(spec, c); });
    if (ca < 0 || cb < 0) return fail();
    return std::max(4, std::max(ca, cb));
}

StateMoments numeric_moments(const FockStateVector& state) {
    const int dim = state.dim();
    const auto s = kernels::moment_sums(state.amplitudes, dim);
    StateMoments m;
    m.n_a = s.n_a;
    m.n_b = s.n_b;
    m.var_a = s.n_a_sq - s.n_a * s.n_a;
    m.var_b = s.n_b_sq - s.n_b * s.n_b;
    m.a_sq = s.a_sq;
    m.b_sq = s.b_sq;
    m.cross_nn = s.cross;
    m.mean_N = s.n_a + s.n_b;
    m.mean_N_sq = s.n_tot_sq;
    m.separable =
        kernels::schmidt_residual_norm(state.amplitudes, dim) < kSeparabilityThreshold;
    return m;
}

QfiMatrix qfi_matrix_numeric(const FockStateVector& state, const BeamSplitterConfig& bs) {
    const int dim = state.dim();
    std::vector<complex> w(state.amplitudes.size());
    kernels::apply_rotated_jz(state.amplitudes, w, dim, bs.tau, bs.theta);

    const auto s = kernels::moment_sums(state.amplitudes, dim);
    const double mean_j0 = 0.5 * (s.n_a + s.n_b);
    const double mean_j0_sq = 0.25 * s.n_tot_sq;

    const double mean_m = kernels::inner(state.amplitudes, w).real();
    const double mean_m_sq = kernels::norm_sq(w);
    const double j0m = kernels::j0_weighted_inner(state.amplitudes, w, dim).real();

    QfiMatrix q;
    q.f_ss = 4.0 * (mean_j0_sq - mean_j0 * mean_j0);
    q.f_sd = 4.0 * (j0m - mean_j0 * mean_m);
    q.f_dd = 4.0 * (mean_m_sq - mean_m * mean_m);
    return q;
}

TailReport truncation_diagnostics(const FockStateVector& state) {
    TailReport r;
    r.cutoff_used = state.cutoff;
    r.tail_mass = state.tail_mass;
    const int dim = state.dim();
    double shell = 0.0;
    for (int j = 0; j < dim; ++j) shell += std::norm(state.amplitude(state.cutoff, j));
    for (int i = 0; i < dim - 1; ++i) shell += std::norm(state.amplitude(i, state.cutoff));
    r.highest_occupied_level_mass = shell;
    return r;
}

} // namespace mzqfi
