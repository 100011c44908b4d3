#ifndef PFAB_UNITS_HPP
#define PFAB_UNITS_HPP

#include <cmath>

namespace pfab {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

inline double linear_to_db(double ratio) { return 10.0 * std::log10(ratio); }

inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

inline double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }

inline double nm(double x) { return x * 1e-9; }

}  // namespace pfab

#endif
