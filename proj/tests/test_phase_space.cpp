#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hq/errors.hpp"
#include "hq/phase_space.hpp"
#include "oracles.hpp"

using namespace hq;

namespace {

MultimodeSuperposition single(std::vector<cplx> weights, std::vector<cplx> alphas) {
    MultimodeSuperposition s;
    s.modes = {3};
    for (std::size_t k = 0; k < weights.size(); ++k) s.branches.push_back({weights[k], double(k), {alphas[k]}});
    return normalize(s);
}

}  // namespace

TEST_CASE("single-axis quadrature wavefunction") {
    const Grid1D g{-10.0, 20.0, 601};
    const QuadratureField vac = quadrature_wavefunction(single({1.0}, {0.0}), {3}, {g});
    CHECK(std::norm(vac.at(200)) == doctest::Approx(1.0 / std::sqrt(std::numbers::pi)));
    const QuadratureField coh = quadrature_wavefunction(single({1.0}, {5.0}), {3}, {g});
    int best = 0;
    for (int i = 0; i < g.count; ++i)
        if (std::norm(coh.at(i)) > std::norm(coh.at(best))) best = i;
    CHECK(std::abs(g.at(best) - 5.0 * std::sqrt(2.0)) < g.step());
}

TEST_CASE("two-axis wavefunction and spectator checks") {
    MultimodeSuperposition s;
    s.modes = {3, 5, 7};
    s.branches = {{1.0, 0.0, {1.0, 2.0, 0.5}}, {-1.0, 1.0, {3.0, 1.0, 0.5}}};
    s = normalize(s);
    const Grid1D g{-8.0, 12.0, 201};
    const QuadratureField f = quadrature_wavefunction(s, {3, 5}, {g, g});
    double mass = 0.0;
    for (const cplx& v : f.values) mass += std::norm(v);
    CHECK(mass * g.step() * g.step() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(f.at(40, 70) - (s.branches[0].weight * coherent_wavefunction(g.at(40), 1.0) * coherent_wavefunction(g.at(70), 2.0) +
                                    s.branches[1].weight * coherent_wavefunction(g.at(40), 3.0) * coherent_wavefunction(g.at(70), 1.0))) < 1e-14);
    s.branches[1].alphas[2] = 0.6;
    CHECK_THROWS_AS(quadrature_wavefunction(s, {3, 5}, {g, g}), NotPureReduction);
    CHECK_THROWS_AS(quadrature_wavefunction(s, {3, 3}, {g, g}), ModeMismatch);
}

TEST_CASE("wigner basics") {
    const Grid1D g{-8.0, 8.0, 161};
    const WignerGrid vac = wigner_single_mode(single({1.0}, {0.0}), g, g);
    CHECK(vac.at(80, 80) == doctest::Approx(1.0 / std::numbers::pi));
    CHECK(*std::min_element(vac.values.begin(), vac.values.end()) > -1e-14);
    CHECK(vac.normalization_residual < 1e-10);

    const cplx a{2.0, -1.5};
    const Grid1D h{-10.0, 10.0, 401};
    const WignerGrid coh = wigner_single_mode(single({1.0}, {a}), h, h);
    std::size_t best = std::max_element(coh.values.begin(), coh.values.end()) - coh.values.begin();
    CHECK(std::abs(h.at(static_cast<int>(best / h.count)) - std::sqrt(2.0) * a.real()) < h.step());
    CHECK(std::abs(h.at(static_cast<int>(best % h.count)) - std::sqrt(2.0) * a.imag()) < h.step());

    MultimodeSuperposition two;
    two.modes = {3, 5};
    two.branches = {{1.0, 0.0, {1.0, 1.0}}};
    CHECK_THROWS_AS(wigner_single_mode(two, g, g), MultiMode);
}

TEST_CASE("cat negativity, normalisation and marginal") {
    const auto cat = single({1.0, -1.0}, {5.0, std::sqrt(50.0)});
    const Grid1D g = covering_grid(cat, {3}, 401);
    CHECK(g.max == doctest::Approx(std::sqrt(2.0) * std::sqrt(50.0) + 6.0));
    const WignerGrid w = wigner_single_mode(cat, g, g);
    CHECK(*std::min_element(w.values.begin(), w.values.end()) < -0.01);
    CHECK(w.normalization_residual < 1e-6);
    CHECK(w.imaginary_residue < 1e-12);
    const auto marginal = wigner_x_marginal(w);
    const QuadratureField psi = quadrature_wavefunction(cat, {3}, {g});
    for (int i = 0; i < g.count; ++i) CHECK(std::abs(marginal[i] - std::norm(psi.at(i))) < 1e-6);
}

TEST_CASE("wigner agrees with the Fock-basis oracle for small amplitudes") {
    const auto s = single({1.0, cplx{0.4, 0.7}, -0.5}, {cplx{1.5, 0.5}, cplx{-2.0, 1.0}, cplx{0.3, -2.5}});
    std::vector<cplx> w, a;
    for (const auto& b : s.branches) w.push_back(b.weight), a.push_back(b.alphas[0]);
    const auto c = oracle::superposition_fock(w, a, 70);
    const Grid1D g{-5.0, 5.0, 11};
    const WignerGrid lib = wigner_single_mode(s, g, g);
    for (int i = 0; i < g.count; i += 2)
        for (int j = 0; j < g.count; j += 2) CHECK(std::abs(lib.at(i, j) - oracle::fock_wigner(c, g.at(i), g.at(j))) < 1e-6);
}
