#include "intrec/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "intrec/errors.hpp"

namespace intrec {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream is(text);
  while (std::getline(is, part, sep)) parts.push_back(part);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

// "key=value" with the expected key.
double keyed_real(const std::string& item, const std::string& key) {
  const auto eq = item.find('=');
  if (eq == std::string::npos || trim(item.substr(0, eq)) != key)
    throw ParseError("expected '" + key + "=<number>', got '" + item + "'");
  return parse_real(item.substr(eq + 1));
}

void dump_to(std::ostringstream& os, const nlohmann::ordered_json& j, int indent, int depth) {
  const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close_pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  const char* newline = indent > 0 ? "\n" : "";
  const char* colon = indent > 0 ? ": " : ":";
  switch (j.type()) {
    case nlohmann::ordered_json::value_t::number_float: {
      const double v = j.get<double>();
      os << (std::isfinite(v) ? format_double(v) : "null");
      break;
    }
    case nlohmann::ordered_json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        break;
      }
      os << "[" << newline;
      bool first = true;
      for (const auto& item : j) {
        if (!first) os << "," << newline;
        first = false;
        os << pad;
        dump_to(os, item, indent, depth + 1);
      }
      os << newline << close_pad << "]";
      break;
    }
    case nlohmann::ordered_json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        break;
      }
      os << "{" << newline;
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) os << "," << newline;
        first = false;
        os << pad << nlohmann::ordered_json(key).dump() << colon;
        dump_to(os, value, indent, depth + 1);
      }
      os << newline << close_pad << "}";
      break;
    }
    default:
      os << j.dump();
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string dump_json(const nlohmann::ordered_json& j, int indent) {
  std::ostringstream os;
  dump_to(os, j, indent, 0);
  return os.str();
}

double parse_real(const std::string& text) {
  const std::string t = trim(text);
  double value = 0.0;
  const auto* begin = t.data();
  const auto* end = t.data() + t.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (t.empty() || ec != std::errc() || ptr != end || !std::isfinite(value))
    throw ParseError("not a finite number: '" + text + "'");
  return value;
}

Eigen::VectorXd parse_real_list(const std::string& spec) {
  const auto parts = split(spec, ',');
  if (parts.empty()) throw ParseError("empty number list");
  Eigen::VectorXd out(static_cast<Eigen::Index>(parts.size()));
  for (std::size_t i = 0; i < parts.size(); ++i) out[static_cast<Eigen::Index>(i)] = parse_real(parts[i]);
  return out;
}

Modulus parse_modulus(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw ParseError("modulus spec needs '<family>:<params>', got '" + spec + "'");
  const std::string family = spec.substr(0, colon);
  const std::string body = spec.substr(colon + 1);

  if (family == "linear") return Modulus::linear(keyed_real(body, "K"));
  if (family == "hoelder") {
    const auto parts = split(body, ',');
    if (parts.size() != 2) throw ParseError("hoelder modulus needs 'K=<f>,alpha=<f>'");
    return Modulus::hoelder(keyed_real(parts[0], "K"), keyed_real(parts[1], "alpha"));
  }
  if (family == "pwl") {
    const auto pairs = split(body, ';');
    Eigen::VectorXd t(static_cast<Eigen::Index>(pairs.size()));
    Eigen::VectorXd w(t.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const Eigen::VectorXd pair = parse_real_list(pairs[i]);
      if (pair.size() != 2) throw ParseError("pwl breakpoint needs '<t>,<omega>', got '" + pairs[i] + "'");
      t[static_cast<Eigen::Index>(i)] = pair[0];
      w[static_cast<Eigen::Index>(i)] = pair[1];
    }
    return Modulus::piecewise_linear(std::move(t), std::move(w));
  }
  if (family == "table") {
    std::ifstream in(body);
    if (!in) throw ParseError("cannot open modulus table '" + body + "'");
    std::string line;
    if (!std::getline(in, line) || trim(line) != "t,omega") throw ParseError("modulus table must start with 't,omega'");
    std::vector<double> ts, ws;
    while (std::getline(in, line)) {
      if (trim(line).empty()) continue;
      const Eigen::VectorXd row = parse_real_list(line);
      if (row.size() != 2) throw ParseError("modulus table rows need two columns");
      ts.push_back(row[0]);
      ws.push_back(row[1]);
    }
    return Modulus::tabulated(Eigen::Map<Eigen::VectorXd>(ts.data(), static_cast<Eigen::Index>(ts.size())),
                              Eigen::Map<Eigen::VectorXd>(ws.data(), static_cast<Eigen::Index>(ws.size())));
  }
  throw ParseError("unknown modulus family '" + family + "'");
}

SimpleRandomVariable parse_srv(const std::string& spec, double a) {
  if (spec.rfind("det:", 0) == 0) return SimpleRandomVariable::deterministic(parse_real(spec.substr(4)), a);
  if (spec.rfind("srv:", 0) != 0) throw ParseError("random time spec needs 'srv:' or 'det:', got '" + spec + "'");
  const auto atoms = split(spec.substr(4), ',');
  if (atoms.empty()) throw ParseError("random time spec has no atoms");
  Eigen::VectorXd values(static_cast<Eigen::Index>(atoms.size()));
  Eigen::VectorXd probs(values.size());
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const auto at = atoms[i].find('@');
    if (at == std::string::npos) throw ParseError("atom needs '<value>@<prob>', got '" + atoms[i] + "'");
    values[static_cast<Eigen::Index>(i)] = parse_real(atoms[i].substr(0, at));
    probs[static_cast<Eigen::Index>(i)] = parse_real(atoms[i].substr(at + 1));
  }
  return SimpleRandomVariable(std::move(values), std::move(probs), a);
}

Envelope parse_envelope(const std::string& spec, double a) {
  const Eigen::VectorXd v = parse_real_list(spec);
  if (v.size() != 2) throw ParseError("envelope needs '<m>,<M>'");
  return make_envelope(v[0], v[1], a);
}

std::filesystem::path sidecar_path(const std::filesystem::path& csv_path) {
  std::filesystem::path p = csv_path;
  return p.replace_extension(".json");
}

void write_grid_process(const GridProcess& p, const std::filesystem::path& csv_path) {
  std::ofstream csv(csv_path);
  if (!csv) throw std::runtime_error("cannot write '" + csv_path.string() + "'");
  csv << "t";
  for (Eigen::Index atom = 0; atom < p.atoms(); ++atom) csv << ",atom" << atom;
  csv << "\n";
  const Eigen::Index n = p.intervals();
  for (Eigen::Index j = 0; j <= n; ++j) {
    csv << format_double(p.domain_length() * static_cast<double>(j) / static_cast<double>(n));
    for (Eigen::Index atom = 0; atom < p.atoms(); ++atom) csv << "," << format_double(p.values()(j, atom));
    csv << "\n";
  }

  nlohmann::ordered_json meta;
  meta["probs"] = std::vector<double>(p.probs().data(), p.probs().data() + p.probs().size());
  meta["a"] = p.domain_length();
  std::ofstream json(sidecar_path(csv_path));
  if (!json) throw std::runtime_error("cannot write sidecar for '" + csv_path.string() + "'");
  json << dump_json(meta) << "\n";
}

GridProcess read_grid_process(const std::filesystem::path& csv_path) {
  std::ifstream json(sidecar_path(csv_path));
  if (!json) throw ParseError("missing sidecar '" + sidecar_path(csv_path).string() + "'");
  nlohmann::json meta;
  try {
    meta = nlohmann::json::parse(json);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed sidecar: ") + e.what());
  }
  if (!meta.contains("probs") || !meta.contains("a") || !meta["probs"].is_array() || !meta["a"].is_number())
    throw ParseError("sidecar needs {\"probs\": [...], \"a\": <number>}");
  const auto probs_vec = meta["probs"].get<std::vector<double>>();
  const double a = meta["a"].get<double>();
  const auto atoms = static_cast<Eigen::Index>(probs_vec.size());

  std::ifstream csv(csv_path);
  if (!csv) throw ParseError("cannot open '" + csv_path.string() + "'");
  std::string line;
  std::string expected = "t";
  for (Eigen::Index atom = 0; atom < atoms; ++atom) expected += ",atom" + std::to_string(atom);
  if (!std::getline(csv, line) || trim(line) != expected) throw ParseError("CSV header must be '" + expected + "'");

  std::vector<double> times;
  std::vector<double> flat;
  while (std::getline(csv, line)) {
    if (trim(line).empty()) continue;
    const Eigen::VectorXd row = parse_real_list(line);
    if (row.size() != atoms + 1) throw ParseError("CSV row has the wrong number of columns");
    times.push_back(row[0]);
    flat.insert(flat.end(), row.data() + 1, row.data() + row.size());
  }
  if (times.size() < 2) throw ParseError("CSV needs at least two grid rows");
  const auto n = static_cast<Eigen::Index>(times.size()) - 1;
  for (Eigen::Index j = 0; j <= n; ++j) {
    const double expected_t = a * static_cast<double>(j) / static_cast<double>(n);
    if (std::abs(times[static_cast<std::size_t>(j)] - expected_t) > 1e-14 * std::max(1.0, a))
      throw ParseError("CSV time column is not the equispaced grid over [0, a]");
  }
  Eigen::MatrixXd values = Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      flat.data(), n + 1, atoms);
  Eigen::VectorXd probs = Eigen::Map<const Eigen::VectorXd>(probs_vec.data(), atoms);
  return GridProcess(a, std::move(probs), std::move(values));
}

}  // namespace intrec
