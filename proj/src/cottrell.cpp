#include "chronopulse/cottrell.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace chronopulse {

void CellParams::validate() const {
    if (n_e < 1) throw std::invalid_argument("n_e must be >= 1");
    if (!(faraday > 0.0) || !std::isfinite(faraday)) {
        throw std::invalid_argument("faraday constant must be positive");
    }
    if (!(area_cm2 > 0.0) || !std::isfinite(area_cm2)) {
        throw std::invalid_argument("electrode area must be positive");
    }
    if (!(conc_mol_per_cm3 >= 0.0) || !std::isfinite(conc_mol_per_cm3)) {
        throw std::invalid_argument("concentration must be >= 0");
    }
    if (!(diff_cm2_per_s > 0.0) || !std::isfinite(diff_cm2_per_s)) {
        throw std::invalid_argument("diffusion coefficient must be positive");
    }
}

namespace {

double cottrell_numerator(const CellParams& cell) {
    return static_cast<double>(cell.n_e) * cell.faraday * cell.area_cm2 *
           cell.conc_mol_per_cm3 * std::sqrt(cell.diff_cm2_per_s);
}

}  // namespace

double cottrell_current(const CellParams& cell, double t_s) {
    cell.validate();
    if (!(t_s > 0.0)) {
        throw std::domain_error("Cottrell current is undefined for t <= 0");
    }
    return cottrell_numerator(cell) / std::sqrt(std::numbers::pi * t_s);
}

double reduced_tdc_constant(const CellParams& cell) {
    return cottrell_current(cell, kReducedTdcTimeS);
}

Transient simulate_transient(const CellParams& cell, double duration_s, double rate_hz,
                             const NoiseSpec& noise) {
    cell.validate();
    noise.validate();
    if (!(duration_s > 0.0)) throw std::invalid_argument("duration must be positive");
    if (!(rate_hz > 0.0)) throw std::invalid_argument("sampling rate must be positive");
    // The 1e-9 guard absorbs representation error in duration*rate (e.g. 0.3*100).
    const auto n = static_cast<std::size_t>(std::floor(duration_s * rate_hz + 1e-9));
    if (n < 1) {
        throw std::invalid_argument("duration*rate yields an empty sample grid");
    }
    std::vector<double> currents;
    currents.reserve(n);
    const double numerator = cottrell_numerator(cell);
    if (noise.sigma_a > 0.0) {
        GaussianSampler gauss(noise.seed);
        for (std::size_t i = 1; i <= n; ++i) {
            const double t = static_cast<double>(i) / rate_hz;
            const double model = numerator / std::sqrt(std::numbers::pi * t);
            currents.push_back(model + gauss.next() * noise.sigma_a);
        }
    } else {
        for (std::size_t i = 1; i <= n; ++i) {
            const double t = static_cast<double>(i) / rate_hz;
            currents.push_back(numerator / std::sqrt(std::numbers::pi * t));
        }
    }
    return Transient::from_currents(rate_hz, currents);
}

}  // namespace chronopulse
