#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mzqfi/emit.hpp"
#include "mzqfi/fock.hpp"
#include "mzqfi/qfi.hpp"
#include "mzqfi/states.hpp"
#include "mzqfi/sweep.hpp"

namespace {

using namespace mzqfi;

constexpr double kPi = 3.14159265358979323846;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;
constexpr int kExitIo = 4;
constexpr int kExitOracle = 5;

void emit_error(const std::string& kind, const std::string& msg) {
    std::cerr << "{\"error\": \"" << json_escape(msg) << "\", \"kind\": \"" << kind
              << "\"}\n";
}

// Expands `--config <path>` into synthesized flags appended after the user's
// arguments.  The file is flat key=value (one per line, '#' comments); a key
// already given on the command line is skipped, so flags override the file.
// Returns false (usage error) when the file cannot be read or parsed.
bool expand_config_args(std::vector<std::string>& args, std::string& error) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size())
            path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0)
            path = args[i].substr(9);
    }
    if (path.empty()) return true;
    std::ifstream is(path);
    if (!is) {
        error = "cannot read config file '" + path + "'";
        return false;
    }
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);
        const auto eq = line.find('=');
        if (eq == std::string::npos || eq == 0) {
            error = "config line " + std::to_string(lineno) + " is not key=value";
            return false;
        }
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t");
            const auto b = s.find_last_not_of(" \t");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const std::string flag = "--" + key;
        bool given = false;
        for (const auto& a : args)
            if (a == flag || a.rfind(flag + "=", 0) == 0) given = true;
        if (given) continue;
        if (value == "true") {
            args.push_back(flag);
        } else if (value == "false") {
            continue;
        } else {
            args.push_back(flag);
            args.push_back(value);
        }
    }
    return true;
}

// ----- shared state flags --------------------------------------------------

struct StateFlags {
    std::string state;
    double alpha = 0.0, alpha_arg = 0.0;
    double beta = 0.0, beta_arg = 0.0;
    double xi = 0.0, xi_arg = 0.0;
    double xi2 = 0.0, xi2_arg = 0.0;
    double zeta = 0.0, zeta_arg = 0.0;
    int kappa = 0;
    bool css_exact = false;

    std::string config_path;

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config_path,
                        "flat key=value file supplying defaults for these flags");
        cmd->add_option("--state", state, "state family tag (twin-fock, cs-fock, cs-css, "
                                          "cs-svs, two-svs, tmsvs, cs-pasvs, cs-pssvs)")
            ->required();
        cmd->add_option("--alpha", alpha, "coherent amplitude magnitude");
        cmd->add_option("--alpha-arg", alpha_arg, "coherent amplitude phase (rad)");
        cmd->add_option("--beta", beta, "cat amplitude magnitude");
        cmd->add_option("--beta-arg", beta_arg, "cat amplitude phase (rad)");
        cmd->add_option("--xi", xi, "squeeze parameter magnitude");
        cmd->add_option("--xi-arg", xi_arg, "squeeze parameter phase (rad)");
        cmd->add_option("--xi2", xi2, "second squeeze parameter magnitude (two-svs)");
        cmd->add_option("--xi2-arg", xi2_arg, "second squeeze parameter phase (rad)");
        cmd->add_option("--zeta", zeta, "two-mode squeeze parameter magnitude");
        cmd->add_option("--zeta-arg", zeta_arg, "two-mode squeeze parameter phase (rad)");
        cmd->add_option("--kappa", kappa, "Fock occupation / photons added or subtracted");
        cmd->add_flag("--css-exact", css_exact, "use exact cat-state moments instead of "
                                                "the large-amplitude asymptotic form");
    }

    InputStateSpec build() const {
        InputStateSpec spec;
        spec.family = family_from_tag(state);
        auto polar = [](double mag, double arg) {
            return std::polar(mag, arg);
        };
        spec.alpha = polar(alpha, alpha_arg);
        spec.beta = polar(beta, beta_arg);
        spec.xi = polar(xi, xi_arg);
        spec.xi_prime = polar(xi2, xi2_arg);
        spec.zeta = polar(zeta, zeta_arg);
        spec.kappa = kappa;
        spec.css_mode = css_exact ? CssMode::Exact : CssMode::Asymptotic;
        return spec;
    }
};

// ----- output helpers ------------------------------------------------------

int write_table(const DataTable& table, OutputFormat format, const std::string& path) {
    std::ostringstream buf;
    if (format == OutputFormat::Csv)
        emit_csv(table, buf);
    else
        emit_json(table, buf);
    if (path.empty() || path == "-") {
        std::cout << buf.str();
        return std::cout.good() ? kExitOk : kExitIo;
    }
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) {
        emit_error("io", "cannot open output file '" + path + "'");
        return kExitIo;
    }
    os << buf.str();
    os.flush();
    if (!os.good()) {
        os.close();
        std::error_code ec;
        std::filesystem::remove(path, ec);
        emit_error("io", "write failed for '" + path + "', partial file removed");
        return kExitIo;
    }
    return kExitOk;
}

// ----- report --------------------------------------------------------------

struct ReportDoc {
    std::vector<std::pair<std::string, Cell>> entries;
    void add(const std::string& k, double v) { entries.emplace_back(k, Cell(v)); }
    void add(const std::string& k, const std::string& v) { entries.emplace_back(k, Cell(v)); }

    void print_text(std::ostream& os) const {
        for (const auto& [k, c] : entries) {
            os << k << " = ";
            if (std::holds_alternative<double>(c)) {
                char buf[40];
                std::snprintf(buf, sizeof buf, "%.10g", std::get<double>(c));
                os << buf;
            } else {
                os << std::get<std::string>(c);
            }
            os << '\n';
        }
    }
    void print_json(std::ostream& os) const {
        os << "{\n";
        for (std::size_t k = 0; k < entries.size(); ++k) {
            os << "  \"" << json_escape(entries[k].first) << "\": ";
            if (std::holds_alternative<double>(entries[k].second))
                os << format_sci(std::get<double>(entries[k].second));
            else
                os << '"' << json_escape(std::get<std::string>(entries[k].second)) << '"';
            os << (k + 1 < entries.size() ? ",\n" : "\n");
        }
        os << "}\n";
    }
};

std::string theta_choice_text(const ThetaChoice& t) {
    if (t.kind == ThetaChoiceKind::Any) return "any";
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.10g (solutions %.10g, %.10g)", t.canonical,
                  t.solutions[0], t.solutions[1]);
    return buf;
}

std::string tau_choice_text(TauChoice t) {
    switch (t) {
        case TauChoice::Balanced: return "pi/2";
        case TauChoice::FullTransmission: return "0";
        case TauChoice::Any: return "any";
    }
    return "?";
}

int run_report(const StateFlags& sf, double tau, double theta, double transmission,
               bool have_transmission, int upsilon, bool gain_alt, bool as_json) {
    const InputStateSpec spec = validate(sf.build());
    const BeamSplitterConfig bs = have_transmission
                                      ? BeamSplitterConfig::from_transmission(transmission, theta)
                                      : BeamSplitterConfig(tau, theta);
    const StateMoments m = analytic_moments(spec);

    ReportDoc doc;
    doc.add("state", family_tag(spec.family));
    doc.add("tau", bs.tau);
    doc.add("theta", bs.theta);
    doc.add("transmission", bs.transmission());
    doc.add("upsilon", double(upsilon));
    doc.add("n_a", m.n_a);
    doc.add("n_b", m.n_b);
    doc.add("var_a", m.var_a);
    doc.add("var_b", m.var_b);
    doc.add("a_sq_re", m.a_sq.real());
    doc.add("a_sq_im", m.a_sq.imag());
    doc.add("b_sq_re", m.b_sq.real());
    doc.add("b_sq_im", m.b_sq.imag());
    doc.add("cross_nn", m.cross_nn);
    doc.add("mean_N", m.mean_N);
    doc.add("mean_N_sq", m.mean_N_sq);
    doc.add("separable", m.separable ? std::string("true") : std::string("false"));

    QfiMatrix q;
    if (spec.family == StateFamily::Tmsvs) {
        doc.add("frak_g", std::string("n/a"));
        doc.add("four_var_jz", 0.0);
        doc.add("frak_f_max", tmsvs_frak_f(m.n_a));
        doc.add("theta_opt", std::string("any"));
        doc.add("tau_opt_two_param", std::string("pi/2"));
        doc.add("f_max_two_param", tmsvs_frak_f(m.n_a));
        doc.add("tau_opt_single_param", std::string("pi/2"));
        doc.add("f_max_single_param", tmsvs_frak_f(m.n_a));
        q = tmsvs_qfi_matrix(m.n_a, bs);
    } else {
        doc.add("frak_g", frak_g(m));
        doc.add("four_var_jz", four_var_jz(m));
        const FrakFMax fm = frak_f_max(m);
        doc.add("frak_f_max", fm.value);
        doc.add("theta_opt", theta_choice_text(fm.theta));
        for (Theory theory : {Theory::TwoParam, Theory::SingleParam}) {
            const char* tag = theory == Theory::TwoParam ? "two_param" : "single_param";
            const OptimalBsReport r = optimize_bs(m, theory);
            doc.add(std::string("tau_opt_") + tag, tau_choice_text(r.tau_choice));
            doc.add(std::string("f_max_") + tag, r.max_effective_qfi);
        }
        q = qfi_matrix(m, bs);
    }

    doc.add("f_ss", q.f_ss);
    doc.add("f_sd", q.f_sd);
    doc.add("f_dd", q.f_dd);

    auto gain_fn = gain_alt ? gain_db_alt : gain_db;
    try {
        const double v2 = bound_v2(q, upsilon);
        doc.add("v2_bound", v2);
        doc.add("gain_v2_db", gain_fn(v2, upsilon, m.mean_N));
    } catch (const SingularFisherError&) {
        doc.add("v2_bound", std::string("singular"));
    }
    try {
        const double v1 = bound_v1(q, upsilon);
        doc.add("v1_bound", v1);
        doc.add("gain_v1_db", gain_fn(v1, upsilon, m.mean_N));
    } catch (const SingularFisherError&) {
        doc.add("v1_bound", std::string("singular"));
    }

    const SensitivityLimits lim = sensitivity_limits(m);
    doc.add("snl", lim.snl);
    doc.add("hl", lim.hl);
    doc.add("hofmann", lim.hofmann);

    if (as_json)
        doc.print_json(std::cout);
    else
        doc.print_text(std::cout);
    return std::cout.good() ? kExitOk : kExitIo;
}

// ----- sweep ---------------------------------------------------------------

bool parse_range(const std::string& text, double& start, double& stop, int& steps) {
    const auto c1 = text.find(':');
    const auto c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) return false;
    try {
        std::size_t used = 0;
        start = std::stod(text.substr(0, c1), &used);
        if (used != c1) return false;
        const std::string mid = text.substr(c1 + 1, c2 - c1 - 1);
        stop = std::stod(mid, &used);
        if (used != mid.size()) return false;
        const std::string last = text.substr(c2 + 1);
        steps = std::stoi(last, &used);
        if (used != last.size()) return false;
    } catch (const std::exception&) {
        return false;
    }
    return true;
}

int run_sweep_cmd(const StateFlags& sf, CLI::App* cmd, const std::string& range_text,
                  const std::string& param_text, const std::string& theory_text,
                  const std::string& format_text, const std::string& output,
                  int upsilon, bool gain_alt, double na) {
    SweepRequest req;
    req.state_family = sf.state;
    if (!parse_range(range_text, req.start, req.stop, req.steps)) {
        emit_error("usage", "range must be start:stop:steps");
        return kExitUsage;
    }
    if (param_text == "nb") req.sweep_param = SweepParam::Nb;
    else if (param_text == "xi") req.sweep_param = SweepParam::Xi;
    else if (param_text == "kappa") req.sweep_param = SweepParam::Kappa;
    else {
        emit_error("usage", "param must be one of nb, xi, kappa");
        return kExitUsage;
    }
    if (theory_text == "single") req.theory = SweepTheory::SingleParam;
    else if (theory_text == "two") req.theory = SweepTheory::TwoParam;
    else if (theory_text == "both") req.theory = SweepTheory::Both;
    else {
        emit_error("usage", "theory must be one of single, two, both");
        return kExitUsage;
    }
    if (format_text == "csv") req.format = OutputFormat::Csv;
    else if (format_text == "json") req.format = OutputFormat::Json;
    else {
        emit_error("usage", "format must be csv or json");
        return kExitUsage;
    }
    req.upsilon = upsilon;
    req.gain_alt = gain_alt;
    req.output_path = output;

    if (cmd->count("--na")) req.fixed_params["na"] = na;
    if (cmd->count("--alpha")) req.fixed_params["alpha"] = sf.alpha;
    if (cmd->count("--kappa")) req.fixed_params["kappa"] = double(sf.kappa);
    if (cmd->count("--xi")) req.fixed_params["xi"] = sf.xi;
    if (cmd->count("--xi2")) req.fixed_params["xi2"] = sf.xi2;

    try {
        validate_request(req);
    } catch (const Error& e) {
        emit_error("usage", e.what());
        return kExitUsage;
    }

    const std::vector<SweepRow> rows = run_sweep(req);  // Error -> exit 3 (caller)
    return write_table(sweep_table(rows, req.theory), req.format, req.output_path);
}

// ----- oracle-check --------------------------------------------------------

double rel_dev(double got, double want) {
    return std::abs(got - want) / std::max({1.0, std::abs(got), std::abs(want)});
}

int run_oracle_check(const StateFlags& sf, int cutoff, double tol, double tail_tol) {
    const InputStateSpec spec = validate(sf.build());
    if (cutoff == 0) cutoff = choose_cutoff(spec, 1e-12);
    const FockStateVector state = build_fock_state(spec, cutoff, tail_tol);
    const TailReport tail = truncation_diagnostics(state);
    std::printf("state            %s\n", family_tag(spec.family).c_str());
    std::printf("cutoff           %d\n", cutoff);
    std::printf("tail_mass        %.3e\n", tail.tail_mass);

    const StateMoments ana = analytic_moments(spec);
    const StateMoments num = numeric_moments(state);

    double worst_m = 0.0;
    std::string worst_m_name;
    auto check_m = [&](const char* name, double got, double want) {
        const double d = rel_dev(got, want);
        if (d > worst_m) {
            worst_m = d;
            worst_m_name = name;
        }
    };
    check_m("n_a", num.n_a, ana.n_a);
    check_m("n_b", num.n_b, ana.n_b);
    check_m("var_a", num.var_a, ana.var_a);
    check_m("var_b", num.var_b, ana.var_b);
    check_m("a_sq_re", num.a_sq.real(), ana.a_sq.real());
    check_m("a_sq_im", num.a_sq.imag(), ana.a_sq.imag());
    check_m("b_sq_re", num.b_sq.real(), ana.b_sq.real());
    check_m("b_sq_im", num.b_sq.imag(), ana.b_sq.imag());
    check_m("cross_nn", num.cross_nn, ana.cross_nn);
    check_m("mean_N", num.mean_N, ana.mean_N);
    check_m("mean_N_sq", num.mean_N_sq, ana.mean_N_sq);
    const bool sep_ok = num.separable == ana.separable;
    std::printf("moment max dev   %.3e (%s)\n", worst_m, worst_m_name.c_str());
    std::printf("separable flag   %s\n", sep_ok ? "agrees" : "DISAGREES");

    const double taus[] = {0.0, kPi / 6.0, kPi / 3.0, kPi / 2.0, 2.0 * kPi / 3.0};
    const double thetas[] = {0.0, kPi / 4.0, -kPi / 4.0, kPi / 2.0, -kPi / 2.0, kPi};
    double worst_q = 0.0;
    double worst_tau = 0.0, worst_theta = 0.0;
    std::string worst_elem;
    for (double tau : taus) {
        for (double theta : thetas) {
            const BeamSplitterConfig bs(tau, theta);
            const QfiMatrix want = spec.family == StateFamily::Tmsvs
                                       ? tmsvs_qfi_matrix(ana.n_a, bs)
                                       : qfi_matrix(ana, bs);
            const QfiMatrix got = qfi_matrix_numeric(state, bs);
            const double ds[3] = {rel_dev(got.f_ss, want.f_ss),
                                  rel_dev(got.f_sd, want.f_sd),
                                  rel_dev(got.f_dd, want.f_dd)};
            const char* names[3] = {"f_ss", "f_sd", "f_dd"};
            for (int k = 0; k < 3; ++k) {
                if (ds[k] > worst_q) {
                    worst_q = ds[k];
                    worst_tau = tau;
                    worst_theta = theta;
                    worst_elem = names[k];
                }
            }
        }
    }
    std::printf("qfi max dev      %.3e (%s at tau=%.6f theta=%.6f)\n", worst_q,
                worst_elem.c_str(), worst_tau, worst_theta);

    const bool pass = worst_m < tol && worst_q < tol && sep_ok;
    std::printf("%s (tolerance %.1e)\n", pass ? "PASS" : "FAIL", tol);
    if (!pass) {
        emit_error("oracle", "analytic/oracle deviation above tolerance; worst " +
                                 worst_elem + " dev " + format_sci(worst_q));
        return kExitOracle;
    }
    return kExitOk;
}

// ----- table1 --------------------------------------------------------------

int run_table1(double na, double nb, const std::string& format_text,
               const std::string& output) {
    OutputFormat format;
    if (format_text == "csv") format = OutputFormat::Csv;
    else if (format_text == "json") format = OutputFormat::Json;
    else {
        emit_error("usage", "format must be csv or json");
        return kExitUsage;
    }
    DataTable t;
    t.header = {"row", "frak_g", "four_var_jz", "frak_f_max", "tau_opt", "theta_opt"};
    for (StateRow row : {StateRow::Tfs, StateRow::CsFs, StateRow::CsCss, StateRow::CsSvs,
                         StateRow::Tsvs, StateRow::Tmsvs}) {
        const StateRowValues v = state_row_values(row, na, nb);
        std::vector<Cell> cells;
        cells.emplace_back(state_row_name(row));
        if (v.frak_g)
            cells.emplace_back(*v.frak_g);
        else
            cells.emplace_back(std::string("n/a"));
        cells.emplace_back(v.four_var_jz);
        cells.emplace_back(v.frak_f);
        cells.emplace_back(v.tau_opt);
        cells.emplace_back(v.theta_opt);
        t.rows.push_back(std::move(cells));
    }
    return write_table(t, format, output);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Phase-sensitivity bounds for two-path interferometry with "
                 "asymmetric beam splitters"};
    app.require_subcommand(1);

    // report
    CLI::App* report = app.add_subcommand("report", "single-state sensitivity report");
    StateFlags report_sf;
    report_sf.attach(report);
    double tau = kPi / 2.0, theta = 0.0, transmission = 0.5;
    int upsilon = 1;
    bool gain_alt = false, as_json = false;
    report->add_option("--tau", tau, "BS splitting angle in radians (default pi/2)");
    report->add_option("--theta", theta, "BS phase in radians");
    CLI::Option* trans_opt = report->add_option(
        "--tau-as-transmission", transmission, "specify the BS by transmission ratio T");
    report->add_option("--upsilon", upsilon, "number of repetitions");
    report->add_flag("--gain-alt", gain_alt,
                     "gain from the standard deviation instead of the variance");
    report->add_flag("--json", as_json, "emit the report as a JSON object");

    // sweep
    CLI::App* sweep = app.add_subcommand("sweep", "parameter sweep to CSV/JSON");
    StateFlags sweep_sf;
    sweep_sf.attach(sweep);
    std::string range_text, param_text, theory_text = "both", format_text = "csv";
    std::string output = "-";
    double na = 0.0;
    int sweep_upsilon = 1;
    bool sweep_gain_alt = false;
    sweep->add_option("--na", na, "fixed mean photon number of mode a");
    sweep->add_option("--param", param_text, "sweep parameter: nb | xi | kappa")->required();
    sweep->add_option("--range", range_text, "grid start:stop:steps")->required();
    sweep->add_option("--theory", theory_text, "single | two | both");
    sweep->add_option("--format", format_text, "csv | json");
    sweep->add_option("--output", output, "output path ('-' for stdout)");
    sweep->add_option("--upsilon", sweep_upsilon, "number of repetitions");
    sweep->add_flag("--gain-alt", sweep_gain_alt,
                    "gain from the standard deviation instead of the variance");

    // oracle-check
    CLI::App* oracle = app.add_subcommand(
        "oracle-check", "compare analytic formulas against the Fock-space oracle");
    StateFlags oracle_sf;
    oracle_sf.attach(oracle);
    int cutoff = 0;
    double tol = 1e-8, tail_tol = 1e-10;
    oracle->add_option("--cutoff", cutoff, "per-mode Fock cutoff (0 = automatic)");
    oracle->add_option("--tol", tol, "maximum relative deviation accepted");
    oracle->add_option("--tail-tol", tail_tol, "truncation tail tolerance");

    // table1
    CLI::App* table1 = app.add_subcommand(
        "table1", "closed-form summary of the six canonical input states");
    double t1_na = 0.0, t1_nb = 0.0;
    std::string t1_format = "csv", t1_output = "-", t1_config;
    table1->add_option("--config", t1_config,
                       "flat key=value file supplying defaults for these flags");
    table1->add_option("--na", t1_na, "mean photon number of mode a")->required();
    table1->add_option("--nb", t1_nb, "mean photon number of mode b")->required();
    table1->add_option("--format", t1_format, "csv | json");
    table1->add_option("--output", t1_output, "output path ('-' for stdout)");

    std::vector<std::string> args(argv + 1, argv + argc);
    {
        std::string cfg_error;
        if (!expand_config_args(args, cfg_error)) {
            emit_error("usage", cfg_error);
            return kExitUsage;
        }
    }
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    const bool oracle_mode = oracle->parsed();
    try {
        if (report->parsed()) {
            return run_report(report_sf, tau, theta, transmission,
                              trans_opt->count() > 0, upsilon, gain_alt, as_json);
        }
        if (sweep->parsed()) {
            return run_sweep_cmd(sweep_sf, sweep, range_text, param_text, theory_text,
                                 format_text, output, sweep_upsilon, sweep_gain_alt, na);
        }
        if (oracle->parsed()) {
            return run_oracle_check(oracle_sf, cutoff, tol, tail_tol);
        }
        if (table1->parsed()) {
            return run_table1(t1_na, t1_nb, t1_format, t1_output);
        }
    } catch (const TruncationError& e) {
        emit_error("truncation", e.what());
        return oracle_mode ? kExitOracle : kExitDomain;
    } catch (const Error& e) {
        emit_error("domain", e.what());
        return kExitDomain;
    } catch (const std::exception& e) {
        emit_error("internal", e.what());
        return 1;
    }
    return kExitUsage;
}
