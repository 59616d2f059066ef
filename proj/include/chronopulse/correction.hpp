#ifndef CHRONOPULSE_CORRECTION_HPP
#define CHRONOPULSE_CORRECTION_HPP

#include "chronopulse/transient.hpp"

namespace chronopulse {

/// Ambient conditions recorded alongside a measurement, prior to correction.
struct EnvironmentReading {
    double temp_c = 0.0;   ///< ambient temperature
    double rh_pct = 0.0;   ///< relative humidity, 0..100

    void validate() const;
};

/// How the typeset exponentials of the calibration equations are read.
///
/// kScaledExponent (default): the small constant scales the environment
/// reading inside the exponent, e.g. 25.478*exp(2.694e-9*k_rh) - 25.478.
/// This is the only reading under which the correction vanishes exactly at
/// the reference condition (k = 0).
///
/// kLiteralExponent: the constant exponential multiplies the reading,
/// e.g. 25.478*exp(2.694e-9)*k_rh - 25.478.
enum class CorrectionParse {
    kScaledExponent,
    kLiteralExponent,
};

/// Regression-derived calibration constants for the temperature and
/// relative-humidity corrections. Treated as opaque; no unit normalization
/// is applied.
struct CorrectionCoeffs {
    double temp_gain = 0.148;
    double temp_scale = 25.478;
    double temp_exp = 2.694e-9;
    double rh_gain = 0.148;
    double rh_scale = 0.999;
    double rh_exp = 2.233e-9;
    CorrectionParse parse = CorrectionParse::kScaledExponent;

    void validate() const;
};

/// Temperature correction of a raw signal:
///   x_temp = temp_gain*x_raw + temp_scale*exp(temp_exp*k_rh) - temp_scale.
/// At k_rh = 0 this is exactly temp_gain*x_raw.
double correct_temperature(double x_raw_a, double k_rh_pct, const CorrectionCoeffs& c = {});

/// Relative-humidity correction of a temperature-corrected signal:
///   x_rh = rh_gain*x_temp - rh_scale*exp(-rh_exp*k_temp) + rh_scale.
/// At k_temp = 0 this is exactly rh_gain*x_temp.
double correct_humidity(double x_temp_a, double k_temp_c, const CorrectionCoeffs& c = {});

/// Full correction chain, order fixed: temperature first, then humidity.
/// The result is the final reportable value.
double correct(double x_raw_a, const EnvironmentReading& env, const CorrectionCoeffs& c = {});

/// Pressure correction is intentionally inert: it provided no measurable
/// impact in the sensing environment this calibration targets.
inline double correct_pressure(double x_a) { return x_a; }

/// Applies correct() to every sample.
Transient correct_transient(const Transient& tr, const EnvironmentReading& env,
                            const CorrectionCoeffs& c = {});

}  // namespace chronopulse

#endif
