#include "pfab/devices.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "pfab/errors.hpp"
#include "pfab/units.hpp"

namespace pfab {

void AddDropResonator::validate() const {
  if (!(self_coupling_in > 0 && self_coupling_in < 1))
    throw OutOfRangeError("self_coupling_in must be in (0,1)");
  if (!(self_coupling_drop > 0 && self_coupling_drop < 1))
    throw OutOfRangeError("self_coupling_drop must be in (0,1)");
  if (!(round_trip_amplitude > 0 && round_trip_amplitude <= 1))
    throw OutOfRangeError("round_trip_amplitude must be in (0,1]");
  if (!(round_trip_length > 0)) throw OutOfRangeError("round_trip_length must be positive");
  if (!(group_index > 0)) throw OutOfRangeError("group_index must be positive");
}

namespace {

struct LevelPair {
  double thru;
  double drop;
};

// Power levels at a given cos(theta); the closed forms used both by
// transfer() and by the calibration search.
LevelPair levels(double t1, double t2, double a, double cos_theta) {
  const double t12a = t1 * t2 * a;
  const double denom = 1.0 - 2.0 * t12a * cos_theta + t12a * t12a;
  const double thru =
      (t2 * t2 * a * a - 2.0 * t12a * cos_theta + t1 * t1) / denom;
  const double drop = ((1.0 - t1 * t1) * (1.0 - t2 * t2) * a) / denom;
  return {thru, drop};
}

}  // namespace

TransferPoint transfer(const AddDropResonator& res, double wavelength) {
  res.validate();
  if (!(wavelength > 0)) throw OutOfRangeError("wavelength must be positive");
  const double theta = 2.0 * std::numbers::pi * res.group_index *
                       res.round_trip_length / (wavelength - res.resonance_offset);
  auto lv = levels(res.self_coupling_in, res.self_coupling_drop,
                   res.round_trip_amplitude, std::cos(theta));
  return {lv.thru, lv.drop};
}

FsrResult fsr(const AddDropResonator& res, double around_wavelength) {
  res.validate();
  const double ngl = res.group_index * res.round_trip_length;
  return {around_wavelength * around_wavelength / ngl, kSpeedOfLight / ngl};
}

double nearest_resonance(const AddDropResonator& res, double wavelength) {
  const double ngl = res.group_index * res.round_trip_length;
  const double cycles = ngl / (wavelength - res.resonance_offset);
  double best = 0.0, best_err = std::numeric_limits<double>::infinity();
  for (long long m = std::llround(cycles) - 1; m <= std::llround(cycles) + 1; ++m) {
    if (m <= 0) continue;
    const double lam = ngl / static_cast<double>(m) + res.resonance_offset;
    if (std::abs(lam - wavelength) < best_err) {
      best_err = std::abs(lam - wavelength);
      best = lam;
    }
  }
  return best;
}

AddDropResonator calibrate_switch(const SwitchLossModel& targets, double fsr_target_hz) {
  targets.validate();
  if (!(fsr_target_hz > 0)) throw OutOfRangeError("fsr target must be positive");

  const double drop_on_target = db_to_linear(-targets.drop_on_db);
  const double thru_res_max = db_to_linear(-targets.thru_on_isolation_db);
  const double drop_anti_max = db_to_linear(-targets.drop_off_isolation_db);
  // The bypass level of the physical device sits above the budgeted
  // thru_off_db figure; require it within a small working tolerance.
  const double thru_anti_min = db_to_linear(-(targets.thru_off_db + 0.05));

  constexpr double kAMin = 0.9;
  constexpr double kAMax = 0.9999;

  double best_margin = -std::numeric_limits<double>::infinity();
  double best_t = 0.0, best_a = 0.0;
  double best_residual = std::numeric_limits<double>::infinity();

  for (int i = 0; i <= 499; ++i) {
    const double t = 0.50 + 0.001 * i;
    auto drop_res = [&](double a) { return levels(t, t, a, 1.0).drop; };

    // On-resonance drop grows monotonically with a; bisect to the target.
    double lo = kAMin, hi = kAMax;
    if (drop_res(hi) < drop_on_target) {
      best_residual = std::min(
          best_residual, std::abs(linear_to_db(drop_res(hi)) + targets.drop_on_db));
      continue;
    }
    if (drop_res(lo) > drop_on_target) continue;
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      (drop_res(mid) < drop_on_target ? lo : hi) = mid;
    }
    const double a = 0.5 * (lo + hi);

    const auto on = levels(t, t, a, 1.0);
    const auto off = levels(t, t, a, -1.0);
    const double margins[] = {
        linear_to_db(thru_res_max) - linear_to_db(on.thru),
        linear_to_db(off.thru) - linear_to_db(thru_anti_min),
        linear_to_db(drop_anti_max) - linear_to_db(off.drop),
    };
    const double margin = *std::min_element(std::begin(margins), std::end(margins));
    if (margin > best_margin) {
      best_margin = margin;
      best_t = t;
      best_a = a;
    }
  }

  if (best_margin < 0.0) {
    const std::string detail =
        std::isfinite(best_margin)
            ? "worst constraint short by " + std::to_string(-best_margin) + " dB"
            : "on-resonance drop short by " + std::to_string(best_residual) + " dB";
    throw CalibrationError("switch calibration infeasible; " + detail);
  }

  AddDropResonator res;
  res.self_coupling_in = best_t;
  res.self_coupling_drop = best_t;
  res.round_trip_amplitude = best_a;
  res.group_index = 3.59;
  res.round_trip_length = kSpeedOfLight / fsr_target_hz / res.group_index;
  res.resonance_offset = 0.0;
  return res;
}

void WdmCarrierGrid::validate() const {
  if (carrier_count < 1) throw OutOfRangeError("carrier_count must be at least 1");
  if (!(spacing > 0)) throw OutOfRangeError("carrier spacing must be positive");
  if (!(center_wavelength > 0)) throw OutOfRangeError("center wavelength must be positive");
  if (!(power_per_carrier > 0)) throw OutOfRangeError("power per carrier must be positive");
}

std::vector<double> carrier_wavelengths(const WdmCarrierGrid& grid) {
  grid.validate();
  std::vector<double> out;
  out.reserve(grid.carrier_count);
  const double half = 0.5 * (grid.carrier_count - 1);
  for (int k = 0; k < grid.carrier_count; ++k)
    out.push_back(grid.center_wavelength + (k - half) * grid.spacing);
  return out;
}

AddDropResonator trim(const AddDropResonator& res, double target_resonance,
                      std::optional<double> from_resonance) {
  res.validate();
  if (!(target_resonance > 0)) throw OutOfRangeError("target resonance must be positive");

  const double anchor =
      from_resonance ? *from_resonance : nearest_resonance(res, target_resonance);
  const double fsr_lambda = fsr(res, target_resonance).fsr_wavelength;
  const double delta = target_resonance - anchor;
  if (std::abs(delta) > fsr_lambda)
    throw OutOfRangeError("trim target farther than one FSR from the current resonance");

  AddDropResonator out = res;
  out.resonance_offset += std::round(delta / kTrimAccuracy) * kTrimAccuracy;
  return out;
}

void SrnMaterial::validate() const {
  if (!(base_index > 1)) throw OutOfRangeError("base_index must exceed 1");
  if (!(breakdown_field > 0)) throw OutOfRangeError("breakdown_field must be positive");
  if (!(field_per_volt > 0)) throw OutOfRangeError("field_per_volt must be positive");
}

DeltaNTerms delta_n_terms(const SrnMaterial& mat, double e_dc, double e_ac) {
  mat.validate();
  if (!std::isfinite(e_dc) || !std::isfinite(e_ac))
    throw OutOfRangeError("fields must be finite");
  if (std::abs(e_dc) > mat.breakdown_field)
    throw InvalidStateError("DC field exceeds the breakdown field");

  const double n = mat.base_index;
  DeltaNTerms t;
  t.dc_chi2 = mat.chi2 * e_dc / n;
  t.dc_chi3 = 3.0 * mat.chi3 * e_dc * e_dc / (2.0 * n);
  t.ac_chi2 = mat.chi2 * e_ac / n;
  t.ac_chi3 = 3.0 * mat.chi3 * e_ac * e_ac / (2.0 * n);
  t.mixed = 3.0 * mat.chi3 * e_ac * e_dc / n;
  t.dn_dc = t.dc_chi2 + t.dc_chi3;
  t.dn_ac = t.ac_chi2 + t.ac_chi3 + t.mixed;
  return t;
}

double dc_field_from_voltage(const SrnMaterial& mat, double volts) {
  mat.validate();
  if (volts < 0) throw OutOfRangeError("voltage must be nonnegative");
  return mat.field_per_volt * volts;
}

double breakdown_voltage(const SrnMaterial& mat) {
  mat.validate();
  return mat.breakdown_field / mat.field_per_volt;
}

double photocurrent(const Photodetector& pd, double optical_power_w) {
  if (!(pd.responsivity > 0)) throw OutOfRangeError("responsivity must be positive");
  if (optical_power_w < 0) throw OutOfRangeError("optical power must be nonnegative");
  return pd.responsivity * optical_power_w;
}

}  // namespace pfab
