#ifndef CHRONOPULSE_COTTRELL_HPP
#define CHRONOPULSE_COTTRELL_HPP

#include "chronopulse/noise.hpp"
#include "chronopulse/transient.hpp"

namespace chronopulse {

inline constexpr double kFaradayCPerMol = 96485.0;

/// Physical parameters of the electrochemical cell feeding the diffusion
/// current model.
struct CellParams {
    int n_e = 1;                        ///< electrons per analyte molecule
    double faraday = kFaradayCPerMol;   ///< C/mol, overridable only explicitly
    double area_cm2 = 0.0;              ///< planar electrode area
    double conc_mol_per_cm3 = 0.0;      ///< analyte concentration c_k
    double diff_cm2_per_s = 0.0;        ///< diffusion coefficient D_k

    void validate() const;
};

/// Diffusion-limited current after a potential step:
///   I(t) = n_e * F * A * c_k * sqrt(D_k) / sqrt(pi * t).
/// Strictly decreasing in t and exactly linear in c_k and n_e.
/// Throws std::domain_error for t <= 0 (singularity at the step).
double cottrell_current(const CellParams& cell, double t_s);

/// The model current evaluated at the fixed reference time t = 1.5 s,
///   n_e * 96485 * A * c_k * sqrt(D_k) / sqrt(pi * 1.5),
/// approximately 1e5 * n_e * c_k * sqrt(D_k) for a 2.25 cm^2 electrode.
double reduced_tdc_constant(const CellParams& cell);

/// Reference evaluation time of reduced_tdc_constant().
inline constexpr double kReducedTdcTimeS = 1.5;

/// Samples the model on the grid t_i = i / rate_hz for i = 1..floor(duration*rate),
/// adding one Gaussian draw per sample. sigma_a = 0 reproduces the noiseless
/// model bit for bit; a fixed (sigma_a, seed) pair reproduces identical output.
Transient simulate_transient(const CellParams& cell, double duration_s, double rate_hz,
                             const NoiseSpec& noise);

}  // namespace chronopulse

#endif
