#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "hyperpol/materials.hpp"
#include "hyperpol/spectra.hpp"
#include "hyperpol/tmm.hpp"

namespace hyperpol::io {

/// Locale-independent float formatting with 9 significant digits
/// (std::to_chars, general form). NaN prints as "nan".
std::string format_g9(double v);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);

/// Header `lambda_nm,theta_deg,R`; row-major, lambda outer, theta inner;
/// "\n" line endings; failed cells print R as nan.
std::string map_to_csv(const ReflectivityMap& map);

/// Header `C_molar,dip_count,lambda1_nm,lambda2_nm,Rmin1,splitting_meV`;
/// absent values are empty fields.
std::string sensing_curve_to_csv(const SensingCurve& curve);

/// Header `lambda_nm,R,T`.
std::string reflectivity_to_csv(const std::vector<double>& lambda,
                                const std::vector<double>& R, const std::vector<double>& T);

/// Two-column-per-part CSV `wavelength_nm,eps_re,eps_im`, wavelengths
/// strictly increasing. Throws IoError when unreadable, InvalidInput (with
/// the line number) on malformed content.
TabulatedModel load_tabulated_csv(const std::string& path);

/// Parse the same CSV from an in-memory string (used by inline config tables).
TabulatedModel parse_tabulated_csv(std::string_view text, std::string_view origin);

/// FNV-1a, 64-bit; offset 0xcbf29ce484222325, prime 0x100000001b3.
std::uint64_t fnv1a64(std::string_view data);

/// 16 lowercase hex digits.
std::string hex64(std::uint64_t v);

}  // namespace hyperpol::io
