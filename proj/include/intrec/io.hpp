#pragma once

#include <filesystem>
#include <string>

#include <Eigen/Dense>
#include "json.hpp"

#include "intrec/modulus.hpp"
#include "intrec/simulation.hpp"
#include "intrec/stochastic.hpp"

namespace intrec {

/// "%.17g": enough digits for an exact decimal round trip of a double.
std::string format_double(double v);

/// Serializes JSON with every floating-point number printed by format_double.
/// Non-finite numbers become null.
std::string dump_json(const nlohmann::ordered_json& j, int indent = 2);

// Spec strings --------------------------------------------------------------

/// "linear:K=<f>", "hoelder:K=<f>,alpha=<f>", "pwl:<t0>,<w0>;<t1>,<w1>;…" or
/// "table:<path.csv>" (columns "t,omega"). Throws ParseError on bad syntax.
Modulus parse_modulus(const std::string& spec);

/// "srv:<v1>@<p1>,<v2>@<p2>,…" or "det:<v>" on [0, a].
SimpleRandomVariable parse_srv(const std::string& spec, double a = 1.0);

/// "<m>,<M>" on [0, a].
Envelope parse_envelope(const std::string& spec, double a = 1.0);

/// Comma-separated reals.
Eigen::VectorXd parse_real_list(const std::string& spec);

double parse_real(const std::string& text);

// GridProcess files ---------------------------------------------------------

/// "<stem>.json" next to the CSV file.
std::filesystem::path sidecar_path(const std::filesystem::path& csv_path);

/// Writes a CSV with header "t,atom0,atom1,…" and a sidecar JSON
/// {"probs": [...], "a": <f>}; all numbers carry 17 significant digits.
void write_grid_process(const GridProcess& p, const std::filesystem::path& csv_path);

/// Inverse of write_grid_process. Throws ParseError on malformed files and
/// when the time column is not the equispaced grid over [0, a].
GridProcess read_grid_process(const std::filesystem::path& csv_path);

}  // namespace intrec
