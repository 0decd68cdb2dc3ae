#ifndef MZQFI_SWEEP_HPP
#define MZQFI_SWEEP_HPP

#include <map>
#include <string>
#include <vector>

#include "mzqfi/emit.hpp"
#include "mzqfi/qfi.hpp"
#include "mzqfi/states.hpp"

namespace mzqfi {

enum class SweepParam { Nb, Xi, Kappa };
enum class SweepTheory { SingleParam, TwoParam, Both };
enum class OutputFormat { Csv, Json };

/// One parameter sweep: `steps` evenly spaced grid points on [start, stop]
/// (inclusive), one output row each.  fixed_params supplies the family
/// parameters not being swept ("na", "alpha", "kappa", "xi", "xi2").
struct SweepRequest {
    std::string state_family;
    std::map<std::string, double> fixed_params;
    SweepParam sweep_param = SweepParam::Nb;
    double start = 0.0;
    double stop = 0.0;
    int steps = 0;
    SweepTheory theory = SweepTheory::Both;
    int upsilon = 1;
    OutputFormat format = OutputFormat::Csv;
    std::string output_path;  // empty means standard output
    bool gain_alt = false;
};

struct SweepRow {
    double sweep_value = 0.0;
    StateMoments moments;
    double frak_g = 0.0;
    double four_var_jz = 0.0;
    double frak_f_max = 0.0;
    double f_max_two = 0.0;
    double v2_bound = 0.0;
    double gain_two_db = 0.0;
    double f_max_single = 0.0;
    double v1_bound = 0.0;
    double gain_single_db = 0.0;
    SensitivityLimits limits;
};

/// Throws DomainError when the request is structurally invalid (bad range,
/// unknown family, unsupported family/parameter combination, missing fixed
/// parameters).  Checked again inside run_sweep.
void validate_request(const SweepRequest& req);

/// Evaluates every grid point (rows independent, evaluated in parallel) and
/// returns the rows in grid order.
std::vector<SweepRow> run_sweep(const SweepRequest& req);

/// Column layout for the requested theory selection.
std::vector<std::string> sweep_header(SweepTheory theory);

DataTable sweep_table(const std::vector<SweepRow>& rows, SweepTheory theory);

/// Moment bundle of a family realized at prescribed mean occupations; used
/// by the n_b sweeps (the Fock family treats n_b as continuous here).
StateMoments moments_from_occupations(StateFamily family, double n_a, double n_b);

} // namespace mzqfi

#endif
