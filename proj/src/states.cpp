#include "mzqfi/states.hpp"

#include <cmath>

#include "mzqfi/pasvs.hpp"

namespace mzqfi {

std::string family_tag(StateFamily family) {
    switch (family) {
        case StateFamily::TwinFock: return "twin-fock";
        case StateFamily::CsFock: return "cs-fock";
        case StateFamily::CsCss: return "cs-css";
        case StateFamily::CsSvs: return "cs-svs";
        case StateFamily::TwoSvs: return "two-svs";
        case StateFamily::Tmsvs: return "tmsvs";
        case StateFamily::CsPasvs: return "cs-pasvs";
        case StateFamily::CsPssvs: return "cs-pssvs";
    }
    return "?";
}

StateFamily family_from_tag(const std::string& tag) {
    if (tag == "twin-fock") return StateFamily::TwinFock;
    if (tag == "cs-fock") return StateFamily::CsFock;
    if (tag == "cs-css") return StateFamily::CsCss;
    if (tag == "cs-svs") return StateFamily::CsSvs;
    if (tag == "two-svs") return StateFamily::TwoSvs;
    if (tag == "tmsvs") return StateFamily::Tmsvs;
    if (tag == "cs-pasvs") return StateFamily::CsPasvs;
    if (tag == "cs-pssvs") return StateFamily::CsPssvs;
    throw DomainError("unknown state family tag '" + tag + "'");
}

InputStateSpec validate(const InputStateSpec& spec) {
    const bool uses_kappa = spec.family == StateFamily::TwinFock ||
                            spec.family == StateFamily::CsFock ||
                            spec.family == StateFamily::CsPasvs ||
                            spec.family == StateFamily::CsPssvs;
    if (uses_kappa && spec.kappa < 0)
        throw DomainError("kappa must be non-negative");

    if (spec.family == StateFamily::CsPasvs || spec.family == StateFamily::CsPssvs) {
        if (spec.xi.imag() != 0.0)
            throw DomainError("photon-added/subtracted squeezed vacuum requires a real "
                              "squeeze parameter");
        if (spec.family == StateFamily::CsPssvs && spec.kappa > 0 && spec.xi == complex(0.0, 0.0))
            throw DomainError("cannot subtract photons from the vacuum (xi = 0)");
    }
    return spec;
}

namespace detail {

void svs_mode_moments(complex xi, double& n, double& var, complex& sq) {
    const double r = std::abs(xi);
    const double s = std::sinh(r);
    n = s * s;
    var = 2.0 * n * (1.0 + n);
    if (r == 0.0) {
        sq = complex(0.0, 0.0);
    } else {
        sq = -0.5 * std::sinh(2.0 * r) * (xi / r);  // -1/2 sinh(2|xi|) e^{i phi}
    }
}

} // namespace detail

namespace {

struct Mode {
    double n = 0.0;
    double var = 0.0;
    complex sq{0.0, 0.0};
};

Mode coherent(complex alpha) {
    Mode m;
    m.n = std::norm(alpha);
    m.var = m.n;
    m.sq = alpha * alpha;
    return m;
}

Mode fock(int kappa) {
    Mode m;
    m.n = double(kappa);
    return m;
}

Mode svs(complex xi) {
    Mode m;
    detail::svs_mode_moments(xi, m.n, m.var, m.sq);
    return m;
}

Mode css(complex beta, CssMode mode) {
    Mode m;
    const double mu = std::norm(beta);
    if (mode == CssMode::Asymptotic) {
        m.n = mu;
        m.var = mu;
    } else {
        // exact cat-state moments: b^2 is an eigenvalue relation, so
        // <(b'b)^2> = mu^2 + n_b and the variance follows
        const double th = std::tanh(mu);
        m.n = mu * th;
        m.var = mu * mu * (1.0 - th * th) + m.n;
    }
    m.sq = beta * beta;
    return m;
}

Mode pasvs_b(const InputStateSpec& spec) {
    PhotonOp op;
    op.sign = spec.family == StateFamily::CsPasvs ? PhotonOpSign::Added
                                                  : PhotonOpSign::Subtracted;
    op.kappa = spec.kappa;
    const PasvsMoments pm = pasvs_moments(spec.xi.real(), op);
    Mode m;
    m.n = pm.n_b;
    m.var = pm.n_b_sq - pm.n_b * pm.n_b;
    m.sq = pm.b_sq;
    return m;
}

StateMoments separable_bundle(const Mode& a, const Mode& b) {
    StateMoments m;
    m.n_a = a.n;
    m.n_b = b.n;
    m.var_a = a.var;
    m.var_b = b.var;
    m.a_sq = a.sq;
    m.b_sq = b.sq;
    m.cross_nn = a.n * b.n;
    m.mean_N = a.n + b.n;
    m.mean_N_sq = a.var + b.var + m.mean_N * m.mean_N;
    m.separable = true;
    return m;
}

} // namespace

StateMoments analytic_moments(const InputStateSpec& spec_in) {
    const InputStateSpec spec = validate(spec_in);
    switch (spec.family) {
        case StateFamily::TwinFock:
            return separable_bundle(fock(spec.kappa), fock(spec.kappa));
        case StateFamily::CsFock:
            return separable_bundle(coherent(spec.alpha), fock(spec.kappa));
        case StateFamily::CsCss:
            return separable_bundle(coherent(spec.alpha), css(spec.beta, spec.css_mode));
        case StateFamily::CsSvs:
            return separable_bundle(coherent(spec.alpha), svs(spec.xi));
        case StateFamily::TwoSvs:
            return separable_bundle(svs(spec.xi), svs(spec.xi_prime));
        case StateFamily::CsPasvs:
        case StateFamily::CsPssvs:
            return separable_bundle(coherent(spec.alpha), pasvs_b(spec));
        case StateFamily::Tmsvs: {
            // thermal marginals of the two-mode squeezed vacuum
            const double s = std::sinh(std::abs(spec.zeta));
            const double n = s * s;
            StateMoments m;
            m.n_a = m.n_b = n;
            m.var_a = m.var_b = n * n + n;
            m.a_sq = m.b_sq = complex(0.0, 0.0);
            m.cross_nn = 2.0 * n * n + n;  // <a'a b'b> = <(b'b)^2> on the diagonal
            m.mean_N = 2.0 * n;
            m.mean_N_sq = 8.0 * n * n + 4.0 * n;
            m.separable = false;
            return m;
        }
    }
    throw DomainError("analytic_moments: unknown family");
}

} // namespace mzqfi
