#ifndef PFAB_DEVICES_HPP
#define PFAB_DEVICES_HPP

#include <optional>
#include <vector>

#include "pfab/xbar.hpp"

namespace pfab {

// Two-coupler add-drop resonator. Field couplings t1/t2 and the round-trip
// amplitude a parameterize the standard power transfer functions; resonances
// sit at wavelengths where n_g * L / (lambda - resonance_offset) is integer.
struct AddDropResonator {
  double self_coupling_in = 0.9;       // t1, amplitude
  double self_coupling_drop = 0.9;     // t2, amplitude
  double round_trip_amplitude = 0.99;  // a
  double round_trip_length = 835.66e-6;  // L, meters (racetrack default)
  double group_index = 3.59;           // n_g
  double resonance_offset = 0.0;       // meters

  void validate() const;
};

struct TransferPoint {
  double thru_power = 0.0;  // power ratio in [0, 1]
  double drop_power = 0.0;
};

TransferPoint transfer(const AddDropResonator& res, double wavelength);

struct FsrResult {
  double fsr_wavelength = 0.0;  // meters
  double fsr_frequency = 0.0;   // Hz
};

FsrResult fsr(const AddDropResonator& res, double around_wavelength);

// Resonance wavelength nearest to `wavelength`.
double nearest_resonance(const AddDropResonator& res, double wavelength);

// Fits (t1 = t2, a, n_g*L) so the on/off transfer levels meet the loss model
// targets and the FSR matches fsr_target_hz. Deterministic: a coupling grid
// scan with a bisection on `a` per grid point, keeping the candidate with the
// largest worst-case dB margin.
AddDropResonator calibrate_switch(const SwitchLossModel& targets, double fsr_target_hz);

// Static comb-source output: equally spaced carriers around a center
// wavelength, equal power per carrier.
struct WdmCarrierGrid {
  int carrier_count = 32;
  double spacing = 0.8e-9;             // meters
  double center_wavelength = 1550e-9;  // meters
  double power_per_carrier = 0.5e-3;   // watts

  void validate() const;
  bool operator==(const WdmCarrierGrid&) const = default;
};

std::vector<double> carrier_wavelengths(const WdmCarrierGrid& grid);

// Shifts the resonance comb so the resonance currently at `from_resonance`
// (default: the one nearest the target) lands on `target_resonance`. The
// adjustment is quantized to the 10 pm trimming grid, so the residual is
// at most 5 pm. Targets farther than one FSR from the anchor are rejected.
AddDropResonator trim(const AddDropResonator& res, double target_resonance,
                      std::optional<double> from_resonance = std::nullopt);

inline constexpr double kTrimAccuracy = 10e-12;  // meters

// Scalar single-axis reduction of the chi2/chi3 susceptibilities; collinear
// DC and AC fields.
struct SrnMaterial {
  double chi2 = 3e-12;          // m/V
  double chi3 = 12.6e-19;       // m^2/V^2
  double base_index = 3.1;
  double breakdown_field = 1e8;  // V/m (100 V/um)
  double field_per_volt = 3e5;   // (V/m)/V (0.3 V/um per volt)

  void validate() const;
  bool operator==(const SrnMaterial&) const = default;
};

struct DeltaNTerms {
  double dc_chi2 = 0.0;
  double dc_chi3 = 0.0;
  double ac_chi2 = 0.0;
  double ac_chi3 = 0.0;
  double mixed = 0.0;   // heterodyne chi3 term, 3*chi3*E_ac*E_dc/n
  double dn_dc = 0.0;   // dc_chi2 + dc_chi3
  double dn_ac = 0.0;   // ac_chi2 + ac_chi3 + mixed
};

DeltaNTerms delta_n_terms(const SrnMaterial& mat, double e_dc, double e_ac);

double dc_field_from_voltage(const SrnMaterial& mat, double volts);
double breakdown_voltage(const SrnMaterial& mat);

struct Photodetector {
  double responsivity = 0.8;      // A/W
  double sensitivity_dbm = -10.0;

  bool operator==(const Photodetector&) const = default;
};

double photocurrent(const Photodetector& pd, double optical_power_w);

}  // namespace pfab

#endif
