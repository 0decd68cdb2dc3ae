#include "mzqfi/sweep.hpp"

#include <cmath>
#include <exception>

namespace mzqfi {

namespace {

double fixed_or(const SweepRequest& req, const std::string& key, double fallback) {
    auto it = req.fixed_params.find(key);
    return it == req.fixed_params.end() ? fallback : it->second;
}

bool has_fixed(const SweepRequest& req, const std::string& key) {
    return req.fixed_params.count(key) != 0;
}

double fixed_n_a(const SweepRequest& req) {
    if (has_fixed(req, "na")) return fixed_or(req, "na", 0.0);
    if (has_fixed(req, "alpha")) {
        const double a = fixed_or(req, "alpha", 0.0);
        return a * a;
    }
    throw DomainError("sweep: fixed parameter 'na' (or 'alpha') is required");
}

} // namespace

StateMoments moments_from_occupations(StateFamily family, double n_a, double n_b) {
    if (n_a < 0.0 || n_b < 0.0)
        throw DomainError("occupations must be non-negative");
    StateMoments m;
    m.separable = true;
    auto coherent_a = [&]() {
        m.n_a = n_a;
        m.var_a = n_a;
        m.a_sq = complex(n_a, 0.0);
    };
    auto svs_mode = [&](double n, double& nn, double& var, complex& sq) {
        nn = n;
        var = 2.0 * n * (1.0 + n);
        sq = complex(-std::sqrt(n * (1.0 + n)), 0.0);
    };
    switch (family) {
        case StateFamily::CsFock:
            coherent_a();
            m.n_b = n_b;
            break;
        case StateFamily::CsCss:
            coherent_a();
            m.n_b = n_b;
            m.var_b = n_b;
            m.b_sq = complex(n_b, 0.0);
            break;
        case StateFamily::CsSvs:
            coherent_a();
            svs_mode(n_b, m.n_b, m.var_b, m.b_sq);
            break;
        case StateFamily::TwoSvs:
            svs_mode(n_a, m.n_a, m.var_a, m.a_sq);
            svs_mode(n_b, m.n_b, m.var_b, m.b_sq);
            break;
        default:
            throw DomainError("family '" + family_tag(family) +
                              "' cannot be swept over n_b");
    }
    m.cross_nn = m.n_a * m.n_b;
    m.mean_N = m.n_a + m.n_b;
    m.mean_N_sq = m.var_a + m.var_b + m.mean_N * m.mean_N;
    return m;
}

void validate_request(const SweepRequest& req) {
    if (req.steps < 2) throw DomainError("sweep: steps must be >= 2");
    if (!(req.start < req.stop)) throw DomainError("sweep: start must be < stop");
    if (req.start < 0.0) throw DomainError("sweep: grid values must be non-negative");
    if (req.upsilon < 1) throw DomainError("sweep: upsilon must be positive");

    const StateFamily family = family_from_tag(req.state_family);
    switch (req.sweep_param) {
        case SweepParam::Nb:
            if (family != StateFamily::CsFock && family != StateFamily::CsCss &&
                family != StateFamily::CsSvs && family != StateFamily::TwoSvs)
                throw DomainError("sweep over n_b supports cs-fock, cs-css, cs-svs, "
                                  "two-svs");
            fixed_n_a(req);
            break;
        case SweepParam::Xi:
            if (family != StateFamily::CsSvs && family != StateFamily::CsPasvs &&
                family != StateFamily::CsPssvs && family != StateFamily::TwoSvs)
                throw DomainError("sweep over xi supports cs-svs, cs-pasvs, cs-pssvs, "
                                  "two-svs");
            if (family == StateFamily::TwoSvs) {
                if (!has_fixed(req, "xi2"))
                    throw DomainError("sweep over xi for two-svs requires fixed 'xi2'");
            } else if (!has_fixed(req, "alpha")) {
                throw DomainError("sweep over xi requires fixed 'alpha'");
            }
            break;
        case SweepParam::Kappa:
            if (family != StateFamily::CsFock && family != StateFamily::TwinFock &&
                family != StateFamily::CsPasvs && family != StateFamily::CsPssvs)
                throw DomainError("sweep over kappa supports cs-fock, twin-fock, "
                                  "cs-pasvs, cs-pssvs");
            if (family == StateFamily::CsPasvs || family == StateFamily::CsPssvs) {
                if (!has_fixed(req, "xi"))
                    throw DomainError("sweep over kappa for photon-added/subtracted "
                                      "states requires fixed 'xi'");
            }
            if (family != StateFamily::TwinFock && !has_fixed(req, "alpha"))
                throw DomainError("sweep over kappa requires fixed 'alpha'");
            break;
    }
}

namespace {

StateMoments row_moments(const SweepRequest& req, StateFamily family, double x) {
    switch (req.sweep_param) {
        case SweepParam::Nb:
            return moments_from_occupations(family, fixed_n_a(req), x);
        case SweepParam::Xi: {
            InputStateSpec spec;
            spec.family = family;
            spec.alpha = complex(fixed_or(req, "alpha", 0.0), 0.0);
            spec.xi = complex(x, 0.0);
            spec.xi_prime = complex(fixed_or(req, "xi2", 0.0), 0.0);
            spec.kappa = int(std::llround(fixed_or(req, "kappa", 0.0)));
            return analytic_moments(spec);
        }
        case SweepParam::Kappa: {
            const long k = std::llround(x);
            if (k < 0) throw DomainError("sweep: kappa grid value is negative");
            InputStateSpec spec;
            spec.family = family;
            spec.alpha = complex(fixed_or(req, "alpha", 0.0), 0.0);
            spec.xi = complex(fixed_or(req, "xi", 0.0), 0.0);
            spec.kappa = int(k);
            return analytic_moments(spec);
        }
    }
    throw DomainError("sweep: unknown sweep parameter");
}

SweepRow eval_row(const SweepRequest& req, StateFamily family, double x) {
    SweepRow row;
    row.sweep_value = x;
    row.moments = row_moments(req, family, x);
    const StateMoments& m = row.moments;
    row.frak_g = frak_g(m);
    row.four_var_jz = four_var_jz(m);
    row.frak_f_max = frak_f_max(m).value;
    row.f_max_two = std::max(row.frak_g, row.frak_f_max);
    row.f_max_single = std::max(row.four_var_jz, row.frak_f_max);
    if (row.f_max_two <= 0.0 || row.f_max_single <= 0.0)
        throw SingularFisherError("sweep: zero Fisher information at grid point");
    row.v2_bound = 1.0 / (double(req.upsilon) * row.f_max_two);
    row.v1_bound = 1.0 / (double(req.upsilon) * row.f_max_single);
    row.limits = sensitivity_limits(m);
    auto g = req.gain_alt ? gain_db_alt : gain_db;
    row.gain_two_db = g(row.v2_bound, req.upsilon, m.mean_N);
    row.gain_single_db = g(row.v1_bound, req.upsilon, m.mean_N);
    return row;
}

} // namespace

std::vector<SweepRow> run_sweep(const SweepRequest& req) {
    validate_request(req);
    const StateFamily family = family_from_tag(req.state_family);
    const int n = req.steps;
    std::vector<SweepRow> rows(n);
    std::exception_ptr first_error = nullptr;

#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        try {
            const double x = req.start + (req.stop - req.start) * double(i) / double(n - 1);
            rows[i] = eval_row(req, family, x);
        } catch (...) {
#pragma omp critical
            if (!first_error) first_error = std::current_exception();
        }
    }
    if (first_error) std::rethrow_exception(first_error);
    return rows;
}

std::vector<std::string> sweep_header(SweepTheory theory) {
    std::vector<std::string> h = {"sweep_value", "n_a",    "n_b",        "mean_N",
                                  "mean_N_sq",   "frak_g", "four_var_jz", "frak_f_max"};
    if (theory != SweepTheory::SingleParam) {
        h.insert(h.end(), {"f_max_two", "v2_bound", "gain_two_db"});
    }
    if (theory != SweepTheory::TwoParam) {
        h.insert(h.end(), {"f_max_single", "v1_bound", "gain_single_db"});
    }
    h.insert(h.end(), {"snl", "hl", "hofmann"});
    return h;
}

DataTable sweep_table(const std::vector<SweepRow>& rows, SweepTheory theory) {
    DataTable t;
    t.header = sweep_header(theory);
    t.rows.reserve(rows.size());
    for (const auto& r : rows) {
        std::vector<Cell> row = {r.sweep_value, r.moments.n_a,  r.moments.n_b,
                                 r.moments.mean_N, r.moments.mean_N_sq,
                                 r.frak_g,      r.four_var_jz, r.frak_f_max};
        if (theory != SweepTheory::SingleParam) {
            row.insert(row.end(), {Cell(r.f_max_two), Cell(r.v2_bound), Cell(r.gain_two_db)});
        }
        if (theory != SweepTheory::TwoParam) {
            row.insert(row.end(),
                       {Cell(r.f_max_single), Cell(r.v1_bound), Cell(r.gain_single_db)});
        }
        row.insert(row.end(), {Cell(r.limits.snl), Cell(r.limits.hl), Cell(r.limits.hofmann)});
        t.rows.push_back(std::move(row));
    }
    return t;
}

} // namespace mzqfi
