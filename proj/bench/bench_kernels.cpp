// Compares the OpenMP kernels against the serial reference on a large
// truncated state: moment reductions, rotated-J_z application and the
// Fisher-matrix assembly, plus one full analytic sweep.

#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mzqfi/fock.hpp"
#include "mzqfi/kernels.hpp"
#include "mzqfi/sweep.hpp"

using namespace mzqfi;
namespace k = mzqfi::kernels;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <typename F>
double time_best_of(int reps, F f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        best = std::min(best, seconds_since(t0));
    }
    return best;
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not enabled; both columns run serial code\n");
#endif

    InputStateSpec spec;
    spec.family = StateFamily::CsSvs;
    spec.alpha = {6.0, 0.0};
    spec.xi = {1.4, 0.0};
    const int cutoff = 255;
    const FockStateVector st = build_fock_state(spec, cutoff, 1.0);
    const int dim = st.dim();
    std::printf("state: cs-svs alpha=6 xi=1.4, cutoff %d (%d amplitudes)\n\n", cutoff,
                dim * dim);

    const int reps = 5;
    std::vector<complex> out(st.amplitudes.size());

    const double t_ms = time_best_of(reps, [&] { (void)k::moment_sums_serial(st.amplitudes, dim); });
    const double t_mp = time_best_of(reps, [&] { (void)k::moment_sums(st.amplitudes, dim); });
    std::printf("%-22s serial %8.3f ms   parallel %8.3f ms   speedup %.2fx\n",
                "moment_sums", t_ms * 1e3, t_mp * 1e3, t_ms / t_mp);

    const double t_as = time_best_of(reps, [&] {
        k::apply_rotated_jz_serial(st.amplitudes, out, dim, 1.0, 0.7);
    });
    const double t_ap = time_best_of(reps, [&] {
        k::apply_rotated_jz(st.amplitudes, out, dim, 1.0, 0.7);
    });
    std::printf("%-22s serial %8.3f ms   parallel %8.3f ms   speedup %.2fx\n",
                "apply_rotated_jz", t_as * 1e3, t_ap * 1e3, t_as / t_ap);

    const double t_is = time_best_of(reps, [&] { (void)k::inner_serial(st.amplitudes, out); });
    const double t_ip = time_best_of(reps, [&] { (void)k::inner(st.amplitudes, out); });
    std::printf("%-22s serial %8.3f ms   parallel %8.3f ms   speedup %.2fx\n", "inner",
                t_is * 1e3, t_ip * 1e3, t_is / t_ip);

    const double t_qfi = time_best_of(reps, [&] {
        (void)qfi_matrix_numeric(st, BeamSplitterConfig(1.0, 0.7));
    });
    std::printf("%-22s %8.3f ms per evaluation\n\n", "qfi_matrix_numeric", t_qfi * 1e3);

    SweepRequest req;
    req.state_family = "cs-svs";
    req.fixed_params["na"] = 10.0;
    req.sweep_param = SweepParam::Nb;
    req.start = 0.1;
    req.stop = 40.0;
    req.steps = 20000;
    const double t_sweep = time_best_of(3, [&] { (void)run_sweep(req); });
    std::printf("%-22s %8.3f ms for %d grid points\n", "analytic sweep", t_sweep * 1e3,
                req.steps);
    return 0;
}
