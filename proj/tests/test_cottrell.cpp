#include <doctest.h>

#include <cmath>
#include <random>

#include "chronopulse/cottrell.hpp"
#include "oracles.hpp"

using namespace chronopulse;

namespace {

CellParams reference_cell() {
    CellParams cell;
    cell.n_e = 1;
    cell.area_cm2 = 2.25;
    cell.conc_mol_per_cm3 = 1e-9;
    cell.diff_cm2_per_s = 1e-6;
    return cell;
}

double rel_dev(double a, double b) {
    return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

}  // namespace

TEST_CASE("cottrell current matches the extended-precision oracle") {
    const CellParams cell = reference_cell();
    const double got = cottrell_current(cell, 1.5);
    const auto want = static_cast<double>(
        oracles::cottrell_ld(cell.n_e, cell.faraday, cell.area_cm2, 1e-9L, 1e-6L, 1.5L));
    CHECK(rel_dev(got, want) < 1e-12);
    CHECK(got == doctest::Approx(1.0001e-7).epsilon(1e-3));
}

TEST_CASE("zero concentration yields zero current") {
    CellParams cell = reference_cell();
    cell.conc_mol_per_cm3 = 0.0;
    CHECK(cottrell_current(cell, 1.0) == 0.0);
    CHECK(reduced_tdc_constant(cell) == 0.0);
}

TEST_CASE("cottrell current rejects t <= 0") {
    const CellParams cell = reference_cell();
    CHECK_THROWS_AS(cottrell_current(cell, 0.0), std::domain_error);
    CHECK_THROWS_AS(cottrell_current(cell, -1.0), std::domain_error);
}

TEST_CASE("cell parameter validation") {
    CellParams cell = reference_cell();
    cell.n_e = 0;
    CHECK_THROWS_AS(cottrell_current(cell, 1.0), std::invalid_argument);
    cell = reference_cell();
    cell.area_cm2 = 0.0;
    CHECK_THROWS_AS(cottrell_current(cell, 1.0), std::invalid_argument);
    cell = reference_cell();
    cell.conc_mol_per_cm3 = -1e-9;
    CHECK_THROWS_AS(cottrell_current(cell, 1.0), std::invalid_argument);
    cell = reference_cell();
    cell.diff_cm2_per_s = 0.0;
    CHECK_THROWS_AS(cottrell_current(cell, 1.0), std::invalid_argument);
    cell = reference_cell();
    cell.faraday = -1.0;
    CHECK_THROWS_AS(cottrell_current(cell, 1.0), std::invalid_argument);
}

TEST_CASE("I(t)*sqrt(t) is constant over the full time range") {
    const CellParams cell = reference_cell();
    const double k_ref = cottrell_current(cell, 1.0);
    for (double t = 0.01; t <= 6.0; t += 0.01) {
        const double k = cottrell_current(cell, t) * std::sqrt(t);
        CHECK(rel_dev(k, k_ref) < 1e-12);
    }
}

TEST_CASE("current is exactly linear in concentration and electron count") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> conc(1e-12, 1e-6);
    std::uniform_real_distribution<double> t_dist(0.01, 6.0);
    for (int i = 0; i < 50; ++i) {
        CellParams cell = reference_cell();
        cell.conc_mol_per_cm3 = conc(rng);
        const double t = t_dist(rng);
        const double base = cottrell_current(cell, t);

        CellParams doubled_c = cell;
        doubled_c.conc_mol_per_cm3 = 2.0 * cell.conc_mol_per_cm3;
        CHECK(cottrell_current(doubled_c, t) == 2.0 * base);

        CellParams doubled_n = cell;
        doubled_n.n_e = 2 * cell.n_e;
        CHECK(cottrell_current(doubled_n, t) == 2.0 * base);
    }
}

TEST_CASE("reduced TDC prefactor is about 1e5 for the 2.25 cm^2 electrode") {
    const CellParams cell = reference_cell();
    const double prefactor = reduced_tdc_constant(cell) /
                             (cell.n_e * cell.conc_mol_per_cm3 * std::sqrt(cell.diff_cm2_per_s));
    CHECK(rel_dev(prefactor, 1e5) < 1e-3);
}

TEST_CASE("reduced TDC equals the model current at 1.5 s") {
    const CellParams cell = reference_cell();
    CHECK(reduced_tdc_constant(cell) == cottrell_current(cell, kReducedTdcTimeS));
}

TEST_CASE("noiseless simulation reproduces the model sample for sample") {
    const CellParams cell = reference_cell();
    const Transient tr = simulate_transient(cell, 6.0, 100.0, {0.0, 123});
    REQUIRE(tr.size() == 600);
    for (const Sample& s : tr.samples()) {
        CHECK(s.current_a == cottrell_current(cell, s.t_s));
    }
}

TEST_CASE("10 Hz grid ends exactly at the 6 s mark") {
    const Transient tr = simulate_transient(reference_cell(), 6.0, 10.0, {0.0, 0});
    REQUIRE(tr.size() == 60);
    CHECK(tr.end_s() == 6.0);
    CHECK(tr.front().t_s == 0.1);
}

TEST_CASE("simulation is deterministic for a fixed seed") {
    const CellParams cell = reference_cell();
    const NoiseSpec noise{1e-9, 987654321};
    const Transient a = simulate_transient(cell, 2.0, 100.0, noise);
    const Transient b = simulate_transient(cell, 2.0, 100.0, noise);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].current_a == b[i].current_a);
        CHECK(a[i].t_s == b[i].t_s);
    }
    const Transient c = simulate_transient(cell, 2.0, 100.0, {1e-9, 987654322});
    bool any_diff = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        any_diff = any_diff || a[i].current_a != c[i].current_a;
    }
    CHECK(any_diff);
}

TEST_CASE("truncating a longer simulation equals simulating the window") {
    const CellParams cell = reference_cell();
    for (double sigma : {0.0, 1e-9}) {
        const NoiseSpec noise{sigma, 42};
        const Transient full = simulate_transient(cell, 6.0, 10.0, noise);
        const Transient direct = simulate_transient(cell, 2.0, 10.0, noise);
        const Transient cut = truncate(full, 2.0);
        REQUIRE(cut.size() == direct.size());
        for (std::size_t i = 0; i < cut.size(); ++i) {
            CHECK(cut[i].t_s == direct[i].t_s);
            CHECK(cut[i].current_a == direct[i].current_a);
        }
    }
}

TEST_CASE("degenerate simulation inputs are rejected") {
    const CellParams cell = reference_cell();
    CHECK_THROWS_AS(simulate_transient(cell, 0.05, 10.0, {0.0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(simulate_transient(cell, -1.0, 10.0, {0.0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(simulate_transient(cell, 1.0, 0.0, {0.0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(simulate_transient(cell, 1.0, 10.0, {-1e-9, 0}), std::invalid_argument);
}
