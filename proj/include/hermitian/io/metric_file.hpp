#pragma once

// Metric files: canonical JSON (sorted keys, 17 significant digits) holding
// the solution parameters and the sampled profile.
//
//   schema_version  1
//   kind            chern | third | critical | ruled-zero | ruled-numeric
//   parameters      m, phi0, phi1, lambda, c1, c2              (chern, third, critical)
//                   genus?, m?, x, b, s_sigma, sC_tilde, F_repr (ruled); F_repr is
//                   {"form": "quartic", "c"} or {"form": "euler", "c1", "c2"}
//   l, grid_t, f, h                                             (chern, third, critical)
//   grid_z, F                                                   (ruled)

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "hermitian/error.hpp"
#include "hermitian/geometry/profile.hpp"
#include "hermitian/hirzebruch/closed_form.hpp"
#include "hermitian/ruled/admissible.hpp"

namespace hermitian {

inline constexpr int kSchemaVersion = 1;

enum class MetricKind { Chern, Third, Critical, RuledZero, RuledNumeric };

inline std::string_view to_string(MetricKind k) {
  switch (k) {
    case MetricKind::Chern: return "chern";
    case MetricKind::Third: return "third";
    case MetricKind::Critical: return "critical";
    case MetricKind::RuledZero: return "ruled-zero";
    case MetricKind::RuledNumeric: return "ruled-numeric";
  }
  return "unknown";
}

inline std::optional<MetricKind> parse_metric_kind(std::string_view s) {
  for (auto k : {MetricKind::Chern, MetricKind::Third, MetricKind::Critical, MetricKind::RuledZero,
                 MetricKind::RuledNumeric}) {
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

inline bool is_ruled(MetricKind k) { return k == MetricKind::RuledZero || k == MetricKind::RuledNumeric; }

inline SolutionKind solution_kind(MetricKind k) {
  switch (k) {
    case MetricKind::Chern: return SolutionKind::Chern;
    case MetricKind::Third: return SolutionKind::Third;
    case MetricKind::Critical: return SolutionKind::Critical;
    default: break;
  }
  throw Error(ErrorKind::Domain, "ruled metrics have no profile solution kind");
}

struct MetricFile {
  MetricKind kind = MetricKind::Chern;
  std::variant<ClosedFormSolution, AdmissibleSolution> parameters;
  double l = 0.0;
  std::vector<double> grid;  // grid_t or grid_z
  std::vector<double> f, h;
  std::vector<double> F;

  [[nodiscard]] const ClosedFormSolution& profile_solution() const { return std::get<ClosedFormSolution>(parameters); }
  [[nodiscard]] const AdmissibleSolution& ruled_solution() const { return std::get<AdmissibleSolution>(parameters); }

  /// The sampled profile of a chern, third or critical file.
  [[nodiscard]] ProfilePair profile() const {
    const Grid g(grid);
    return {SampledFunction(g, f), SampledFunction(g, h), profile_solution().m};
  }
};

inline MetricFile make_metric_file(const ClosedFormSolution& sol, const ProfilePair& p) {
  MetricFile out;
  switch (sol.kind) {
    case SolutionKind::Chern: out.kind = MetricKind::Chern; break;
    case SolutionKind::Third: out.kind = MetricKind::Third; break;
    case SolutionKind::Critical: out.kind = MetricKind::Critical; break;
  }
  out.parameters = sol;
  out.l = p.length();
  const auto nodes = p.grid().nodes();
  out.grid.assign(nodes.begin(), nodes.end());
  out.f.assign(p.f().values().begin(), p.f().values().end());
  out.h.assign(p.h().values().begin(), p.h().values().end());
  return out;
}

/// F sampled on n uniform nodes of [-1, 1].
inline MetricFile make_metric_file(MetricKind kind, const AdmissibleSolution& sol, std::size_t n) {
  if (!is_ruled(kind)) throw Error(ErrorKind::Domain, "ruled metric file needs a ruled kind");
  if (n < Grid::kMinNodes) throw Error(ErrorKind::Grid, "grid needs at least 8 nodes");
  MetricFile out;
  out.kind = kind;
  out.parameters = sol;
  const auto g = Grid::uniform(-1.0, 1.0, n);
  out.grid.assign(g.nodes().begin(), g.nodes().end());
  out.F.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.F[i] = eval_F(sol, out.grid[i]);
  return out;
}

// ---------------------------------------------------------------------------
// JSON.

namespace detail {

inline nlohmann::json array_json(const std::vector<double>& v) {
  auto a = nlohmann::json::array();
  for (double x : v) a.push_back(x);
  return a;
}

inline void write_number(std::ostream& os, double v) {
  if (!std::isfinite(v)) throw Error(ErrorKind::Format, "cannot write a non-finite number");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  // Keep a decimal point so floats read back as floats.
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  os << s;
}

inline void write_canonical(std::ostream& os, const nlohmann::json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      // nlohmann::json stores objects in a std::map, so keys come out sorted.
      os << "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) os << ",\n";
        first = false;
        os << pad << "  " << nlohmann::json(key).dump() << ": ";
        write_canonical(os, value, indent + 1);
      }
      os << "\n" << pad << "}";
      break;
    }
    case nlohmann::json::value_t::array: {
      os << "[";
      bool first = true;
      for (const auto& value : j) {
        if (!first) os << ", ";
        first = false;
        write_canonical(os, value, indent + 1);
      }
      os << "]";
      break;
    }
    case nlohmann::json::value_t::number_float: write_number(os, j.get<double>()); break;
    default: os << j.dump(); break;
  }
}

template <class T>
T required(const nlohmann::json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::Format, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorKind::Format, std::string("field '") + key + "' has the wrong type");
  }
}

inline std::vector<double> required_array(const nlohmann::json& j, const char* key) {
  const auto a = required<nlohmann::json>(j, key);
  if (!a.is_array()) throw Error(ErrorKind::Format, std::string("field '") + key + "' must be an array");
  std::vector<double> out;
  out.reserve(a.size());
  for (const auto& v : a) {
    if (!v.is_number()) throw Error(ErrorKind::Format, std::string("field '") + key + "' must hold numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace detail

/// Serialization with sorted keys, 17 significant digits and a trailing newline.
inline std::string canonical_dump(const nlohmann::json& j) {
  std::ostringstream os;
  detail::write_canonical(os, j, 0);
  os << "\n";
  return os.str();
}

inline nlohmann::json to_json(const MetricFile& m) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = std::string(to_string(m.kind));
  if (is_ruled(m.kind)) {
    const auto& s = m.ruled_solution();
    nlohmann::json p;
    if (s.genus) p["genus"] = *s.genus;
    if (s.m) p["m"] = *s.m;
    p["x"] = s.x;
    p["b"] = s.b;
    p["s_sigma"] = s.sSigma;
    p["sC_tilde"] = s.sC;
    if (const auto* q = std::get_if<QuarticF>(&s.F)) {
      p["F_repr"] = {{"form", "quartic"}, {"c", q->c}};
    } else {
      const auto& e = std::get<EulerF>(s.F);
      p["F_repr"] = {{"form", "euler"}, {"c1", e.c1}, {"c2", e.c2}};
    }
    j["parameters"] = p;
    j["grid_z"] = detail::array_json(m.grid);
    j["F"] = detail::array_json(m.F);
  } else {
    const auto& s = m.profile_solution();
    j["parameters"] = {{"m", s.m},           {"phi0", s.phi0}, {"phi1", s.phi1},
                       {"lambda", s.lambda}, {"c1", s.c1},     {"c2", s.c2}};
    j["l"] = m.l;
    j["grid_t"] = detail::array_json(m.grid);
    j["f"] = detail::array_json(m.f);
    j["h"] = detail::array_json(m.h);
  }
  return j;
}

inline MetricFile metric_file_from_json(const nlohmann::json& j) {
  using detail::required;
  if (!j.is_object()) throw Error(ErrorKind::Format, "metric file must be a JSON object");
  const int version = required<int>(j, "schema_version");
  if (version != kSchemaVersion) {
    throw Error(ErrorKind::Format, "unsupported schema_version " + std::to_string(version));
  }
  const auto kind_name = required<std::string>(j, "kind");
  const auto kind = parse_metric_kind(kind_name);
  if (!kind) throw Error(ErrorKind::Format, "unknown kind '" + kind_name + "'");
  const auto p = required<nlohmann::json>(j, "parameters");

  MetricFile m;
  m.kind = *kind;
  if (is_ruled(*kind)) {
    AdmissibleSolution s;
    if (p.contains("genus")) s.genus = required<int>(p, "genus");
    if (p.contains("m")) s.m = required<int>(p, "m");
    s.x = required<double>(p, "x");
    s.b = required<double>(p, "b");
    s.sSigma = required<double>(p, "s_sigma");
    s.sC = required<double>(p, "sC_tilde");
    const auto repr = required<nlohmann::json>(p, "F_repr");
    const auto form = required<std::string>(repr, "form");
    if (form == "quartic") {
      s.F = QuarticF{s.x, required<double>(repr, "c")};
    } else if (form == "euler") {
      s.F = EulerF{s.x, s.b, required<double>(repr, "c1"), required<double>(repr, "c2"), s.sC, s.sSigma};
    } else {
      throw Error(ErrorKind::Format, "unknown F_repr form '" + form + "'");
    }
    m.parameters = s;
    m.grid = detail::required_array(j, "grid_z");
    m.F = detail::required_array(j, "F");
    if (m.F.size() != m.grid.size()) throw Error(ErrorKind::Format, "grid_z and F differ in length");
  } else {
    ClosedFormSolution s;
    s.kind = solution_kind(*kind);
    s.m = required<int>(p, "m");
    s.phi0 = required<double>(p, "phi0");
    s.phi1 = required<double>(p, "phi1");
    s.lambda = required<double>(p, "lambda");
    s.c1 = required<double>(p, "c1");
    s.c2 = required<double>(p, "c2");
    m.parameters = s;
    m.l = required<double>(j, "l");
    m.grid = detail::required_array(j, "grid_t");
    m.f = detail::required_array(j, "f");
    m.h = detail::required_array(j, "h");
    if (m.f.size() != m.grid.size() || m.h.size() != m.grid.size()) {
      throw Error(ErrorKind::Format, "grid_t, f and h differ in length");
    }
    if (m.grid.empty() || m.grid.back() != m.l) throw Error(ErrorKind::Format, "grid_t must end at l");
  }
  return m;
}

inline std::string canonical_dump(const MetricFile& m) { return canonical_dump(to_json(m)); }

inline MetricFile parse_metric_file(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::Format, e.what());
  }
  return metric_file_from_json(j);
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorKind::Format, "cannot open " + path.string() + " for writing");
  os << text;
  if (!os) throw Error(ErrorKind::Format, "write to " + path.string() + " failed");
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(ErrorKind::Format, "cannot open " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

inline void write_metric_file(const std::filesystem::path& path, const MetricFile& m) {
  write_text_file(path, canonical_dump(m));
}

inline MetricFile read_metric_file(const std::filesystem::path& path) {
  return parse_metric_file(read_text_file(path));
}

}  // namespace hermitian
