#include "chronopulse/correction.hpp"

#include <cmath>
#include <stdexcept>

namespace chronopulse {

void EnvironmentReading::validate() const {
    if (!std::isfinite(temp_c)) {
        throw std::domain_error("temperature reading must be finite");
    }
    if (!(rh_pct >= 0.0 && rh_pct <= 100.0)) {
        throw std::domain_error("relative humidity must be within [0, 100] %RH");
    }
}

void CorrectionCoeffs::validate() const {
    for (double v : {temp_gain, temp_scale, temp_exp, rh_gain, rh_scale, rh_exp}) {
        if (!std::isfinite(v)) throw std::invalid_argument("correction coefficients must be finite");
    }
}

double correct_temperature(double x_raw_a, double k_rh_pct, const CorrectionCoeffs& c) {
    c.validate();
    if (!std::isfinite(x_raw_a) || !std::isfinite(k_rh_pct)) {
        throw std::domain_error("temperature correction inputs must be finite");
    }
    if (c.parse == CorrectionParse::kScaledExponent) {
        // expm1: the correction term must vanish exactly at k_rh = 0.
        return c.temp_gain * x_raw_a + c.temp_scale * std::expm1(c.temp_exp * k_rh_pct);
    }
    return c.temp_gain * x_raw_a + c.temp_scale * std::exp(c.temp_exp) * k_rh_pct - c.temp_scale;
}

double correct_humidity(double x_temp_a, double k_temp_c, const CorrectionCoeffs& c) {
    c.validate();
    if (!std::isfinite(x_temp_a) || !std::isfinite(k_temp_c)) {
        throw std::domain_error("humidity correction inputs must be finite");
    }
    if (c.parse == CorrectionParse::kScaledExponent) {
        return c.rh_gain * x_temp_a - c.rh_scale * std::expm1(-c.rh_exp * k_temp_c);
    }
    return c.rh_gain * x_temp_a - c.rh_scale * std::exp(-c.rh_exp) * k_temp_c + c.rh_scale;
}

double correct(double x_raw_a, const EnvironmentReading& env, const CorrectionCoeffs& c) {
    env.validate();
    return correct_humidity(correct_temperature(x_raw_a, env.rh_pct, c), env.temp_c, c);
}

Transient correct_transient(const Transient& tr, const EnvironmentReading& env,
                            const CorrectionCoeffs& c) {
    env.validate();
    std::vector<Sample> out;
    out.reserve(tr.size());
    for (const Sample& s : tr.samples()) {
        out.push_back({s.t_s, correct(s.current_a, env, c)});
    }
    return Transient(tr.rate_hz(), std::move(out), kFileGridTolS);
}

}  // namespace chronopulse
