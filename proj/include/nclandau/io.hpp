#ifndef NCLANDAU_IO_HPP
#define NCLANDAU_IO_HPP

#include "nclandau/params.hpp"

#include <string>
#include <vector>

namespace nclandau {

/// Locale-independent numeric formatting: 17 significant digits, '.' decimal
/// separator, round-trip safe.
std::string format_number(double x);

/// Parses a flat JSON object with exactly the PhysParams keys
/// {mass, omega0, omega_c, theta, hbar, e_charge, c_light, E1, E2};
/// missing keys take defaults, unknown keys are rejected (ValidationError).
PhysParams params_from_json_text(const std::string& text);
PhysParams params_from_json_file(const std::string& path);

/// CSV assembly with deterministic formatting.
std::string csv_line(const std::vector<std::string>& fields);

} // namespace nclandau

#endif
