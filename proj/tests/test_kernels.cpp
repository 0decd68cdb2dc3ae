#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "mzqfi/fock.hpp"
#include "mzqfi/kernels.hpp"
#include "test_support.hpp"

using namespace mzqfi;
namespace k = mzqfi::kernels;
using mzqfi::test::rel_dev;

namespace {

FockStateVector test_state() {
    InputStateSpec spec;
    spec.family = StateFamily::CsSvs;
    spec.alpha = std::polar(1.8, 0.5);
    spec.xi = std::polar(0.9, -0.7);
    return build_fock_state(spec, 70);
}

} // namespace

TEST_CASE("parallel moment sums match the serial reference") {
    const FockStateVector st = test_state();
    const auto p = k::moment_sums(st.amplitudes, st.dim());
    const auto s = k::moment_sums_serial(st.amplitudes, st.dim());
    CHECK(rel_dev(p.n_a, s.n_a) < 1e-12);
    CHECK(rel_dev(p.n_b, s.n_b) < 1e-12);
    CHECK(rel_dev(p.n_a_sq, s.n_a_sq) < 1e-12);
    CHECK(rel_dev(p.n_b_sq, s.n_b_sq) < 1e-12);
    CHECK(rel_dev(p.cross, s.cross) < 1e-12);
    CHECK(rel_dev(p.n_tot_sq, s.n_tot_sq) < 1e-12);
    CHECK(std::abs(p.a_sq - s.a_sq) < 1e-12);
    CHECK(std::abs(p.b_sq - s.b_sq) < 1e-12);
}

TEST_CASE("parallel operator application matches the serial reference") {
    const FockStateVector st = test_state();
    std::vector<complex> wp(st.amplitudes.size()), ws(st.amplitudes.size());
    k::apply_rotated_jz(st.amplitudes, wp, st.dim(), 1.1, 0.6);
    k::apply_rotated_jz_serial(st.amplitudes, ws, st.dim(), 1.1, 0.6);
    double worst = 0.0;
    for (std::size_t i = 0; i < wp.size(); ++i) worst = std::max(worst, std::abs(wp[i] - ws[i]));
    CHECK(worst < 1e-14);
}

TEST_CASE("parallel inner products match the serial reference") {
    const FockStateVector st = test_state();
    std::vector<complex> w(st.amplitudes.size());
    k::apply_rotated_jz(st.amplitudes, w, st.dim(), 0.8, -0.4);
    CHECK(std::abs(k::inner(st.amplitudes, w) - k::inner_serial(st.amplitudes, w)) < 1e-12);
    CHECK(std::abs(k::j0_weighted_inner(st.amplitudes, w, st.dim()) -
                   k::j0_weighted_inner_serial(st.amplitudes, w, st.dim())) < 1e-12);
    CHECK(rel_dev(k::norm_sq(st.amplitudes), 1.0) < 1e-12);
}

TEST_CASE("rotated J_z is Hermitian") {
    // <x|M y> must equal conj(<y|M x>) for deterministic pseudo-random vectors
    const int dim = 24;
    std::vector<complex> x(dim * dim), y(dim * dim), mx(dim * dim), my(dim * dim);
    std::uint64_t s = 0x243f6a8885a308d3ull;
    auto rnd = [&]() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return double(s % 1000ull) / 1000.0 - 0.5;
    };
    for (int i = 0; i < dim * dim; ++i) {
        x[i] = complex(rnd(), rnd());
        y[i] = complex(rnd(), rnd());
    }
    k::apply_rotated_jz(x, mx, dim, 0.9, 1.3);
    k::apply_rotated_jz(y, my, dim, 0.9, 1.3);
    const complex a = k::inner(x, my);
    const complex b = k::inner(y, mx);
    CHECK(std::abs(a - std::conj(b)) < 1e-10);
}

TEST_CASE("schmidt residual separates product from entangled states") {
    const FockStateVector product = test_state();
    CHECK(k::schmidt_residual_norm(product.amplitudes, product.dim()) < 1e-12);

    InputStateSpec spec;
    spec.family = StateFamily::Tmsvs;
    spec.zeta = {0.8, 0.0};
    const FockStateVector ent = build_fock_state(spec, 60);
    // second Schmidt coefficient is tanh(0.8)/cosh(0.8) ~ 0.5; the residual
    // must be at least that large
    CHECK(k::schmidt_residual_norm(ent.amplitudes, ent.dim()) > 0.3);
}
