#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <span>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "axiring/diagnostics.hpp"
#include "axiring/dyson.hpp"
#include "axiring/errors.hpp"
#include "axiring/particles.hpp"
#include "axiring/theory.hpp"

namespace axiring {

// Shortest decimal representation that round-trips the double exactly.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last)
    throw ConfigError("invalid floating-point literal: '" +
                      std::string(text) + "'");
  return v;
}

// ---------------------------------------------------------------------------
// Run configuration. Exact key set; unknown or wrong-typed fields are errors.

struct RunConfig {
  InitialProfile profile;
  double h = 0.05;
  double epsilon = 0.1;
  double dt = 0.01;
  double t_max = 1.0;
  long output_every = 1;
  std::uint64_t seed = 0;
  std::string out_dir = "out";
};

namespace detail {

inline void require_keys(const nlohmann::json& obj,
                         std::initializer_list<const char*> keys,
                         const std::string& where) {
  for (const char* k : keys)
    if (!obj.contains(k))
      throw ConfigError(where + ": missing key '" + k + "'");
  for (const auto& [key, _] : obj.items()) {
    bool known = false;
    for (const char* k : keys) known = known || key == k;
    if (!known) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

inline double get_number(const nlohmann::json& obj, const char* key,
                         const std::string& where) {
  if (!obj.at(key).is_number())
    throw ConfigError(where + ": field '" + key + "' must be a number");
  return obj.at(key).get<double>();
}

inline std::string get_string(const nlohmann::json& obj, const char* key,
                              const std::string& where) {
  if (!obj.at(key).is_string())
    throw ConfigError(where + ": field '" + key + "' must be a string");
  return obj.at(key).get<std::string>();
}

inline std::int64_t get_integer(const nlohmann::json& obj, const char* key,
                                const std::string& where) {
  if (!obj.at(key).is_number_integer() && !obj.at(key).is_number_unsigned())
    throw ConfigError(where + ": field '" + key + "' must be an integer");
  return obj.at(key).get<std::int64_t>();
}

}  // namespace detail

inline RunConfig parse_run_config(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  detail::require_keys(j,
                       {"preset", "params", "h", "epsilon", "dt", "t_max",
                        "output_every", "seed", "out_dir"},
                       "config");
  RunConfig cfg;
  const std::string preset = detail::get_string(j, "preset", "config");
  if (!j.at("params").is_object())
    throw ConfigError("config: field 'params' must be an object");
  const auto& params = j.at("params");
  if (preset == "patch-pair" || preset == "gaussian-ring-pair") {
    cfg.profile.kind = preset == "patch-pair"
                           ? ProfileKind::patch_pair
                           : ProfileKind::gaussian_ring_pair;
    const char* size_key = preset == "patch-pair" ? "radius" : "sigma";
    detail::require_keys(params, {"center_r", "center_z",
                                  preset == "patch-pair" ? "radius" : "sigma",
                                  "amplitude"},
                         "config.params");
    cfg.profile.center_r = detail::get_number(params, "center_r", "config.params");
    cfg.profile.center_z = detail::get_number(params, "center_z", "config.params");
    cfg.profile.radius = detail::get_number(params, size_key, "config.params");
    cfg.profile.amplitude =
        detail::get_number(params, "amplitude", "config.params");
  } else if (preset == "bahouri-chemin") {
    detail::require_keys(params, {"amplitude"}, "config.params");
    cfg.profile.kind = ProfileKind::bahouri_chemin;
    cfg.profile.amplitude =
        detail::get_number(params, "amplitude", "config.params");
  } else {
    throw ConfigError("config: unknown preset '" + preset + "'");
  }

  cfg.h = detail::get_number(j, "h", "config");
  cfg.epsilon = detail::get_number(j, "epsilon", "config");
  cfg.dt = detail::get_number(j, "dt", "config");
  cfg.t_max = detail::get_number(j, "t_max", "config");
  const auto oe = detail::get_integer(j, "output_every", "config");
  const auto seed = detail::get_integer(j, "seed", "config");
  cfg.output_every = static_cast<long>(oe);
  cfg.seed = static_cast<std::uint64_t>(seed);
  cfg.out_dir = detail::get_string(j, "out_dir", "config");

  if (!(cfg.h > 0.0)) throw ConfigError("config: h must be > 0");
  if (!(cfg.dt > 0.0)) throw ConfigError("config: dt must be > 0");
  if (!(cfg.t_max >= 0.0)) throw ConfigError("config: t_max must be >= 0");
  if (!(cfg.epsilon >= 0.0)) throw ConfigError("config: epsilon must be >= 0");
  if (cfg.output_every < 1)
    throw ConfigError("config: output_every must be >= 1");
  if (cfg.epsilon < cfg.h)
    std::fprintf(stderr,
                 "warning: epsilon = %g below grid spacing h = %g; blob "
                 "overlap is not guaranteed\n",
                 cfg.epsilon, cfg.h);
  return cfg;
}

inline RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& err) {
    throw ConfigError(std::string("config: ") + err.what());
  }
  return parse_run_config(j);
}

// ---------------------------------------------------------------------------
// Series / snapshot / audit serialization. LF line endings, shortest
// round-trip doubles throughout.

inline constexpr const char* kSeriesHeader =
    "t,P,Z,E,Gamma,Rmax,omega_linf,omega_l2,Pdot,Zdot";

inline void write_series_row(std::ostream& out, const TimeSeriesRecord& r) {
  out << format_double(r.t) << ',' << format_double(r.P) << ','
      << format_double(r.Z) << ',' << format_double(r.E) << ','
      << format_double(r.Gamma) << ',' << format_double(r.Rmax) << ','
      << format_double(r.omega_linf) << ',' << format_double(r.omega_l2)
      << ',' << format_double(r.Pdot) << ',' << format_double(r.Zdot) << '\n';
}

inline void write_series_csv(const std::string& path,
                             std::span<const TimeSeriesRecord> records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << kSeriesHeader << '\n';
  for (const auto& r : records) write_series_row(out, r);
}

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  int column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
      if (columns[i] == name) return static_cast<int>(i);
    return -1;
  }
};

// Reads a numeric CSV with one header row; '#'-prefixed lines are comments.
inline CsvTable read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  CsvTable table;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string cell;
    if (!have_header) {
      while (std::getline(ss, cell, ',')) table.columns.push_back(cell);
      have_header = true;
      continue;
    }
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) row.push_back(parse_double(cell));
    if (row.size() != table.columns.size())
      throw std::runtime_error(path + ": ragged CSV row");
    table.rows.push_back(std::move(row));
  }
  if (!have_header) throw std::runtime_error(path + ": empty CSV");
  return table;
}

inline constexpr const char* kSnapshotHeader = "r,z,xi0,volume";

inline void write_snapshot(const std::string& path,
                           const ParticleSystem& sys) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << kSnapshotHeader << '\n';
  for (const auto& p : sys.particles)
    out << format_double(p.pos.r) << ',' << format_double(p.pos.z) << ','
        << format_double(p.xi0) << ',' << format_double(p.volume) << '\n';
}

inline std::vector<Particle> read_snapshot(const std::string& path) {
  const CsvTable table = read_csv(path);
  if (table.columns != std::vector<std::string>{"r", "z", "xi0", "volume"})
    throw std::runtime_error(path + ": not a snapshot file");
  std::vector<Particle> out;
  out.reserve(table.rows.size());
  for (const auto& row : table.rows)
    out.push_back({{row[0], row[1]}, row[2], row[3]});
  return out;
}

inline nlohmann::json audit_to_json(const AuditReport& rep) {
  nlohmann::json meta = nlohmann::json::object();
  for (const auto& [k, v] : rep.metadata) meta[k] = v;
  return nlohmann::json{{"name", rep.name},     {"lhs", rep.lhs},
                        {"rhs", rep.rhs},       {"ratio", rep.ratio},
                        {"pass", rep.pass},     {"hard", rep.hard},
                        {"metadata", meta}};
}

inline void write_audit_json(std::ostream& out,
                             std::span<const AuditReport> reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) arr.push_back(audit_to_json(r));
  out << arr.dump(2) << '\n';
}

inline void write_dyson_csv(const std::string& path, const DysonResult& res) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << "t,R,Z,a,uz_self\n";
  for (const auto& s : res.series)
    out << format_double(s.t) << ',' << format_double(s.R) << ','
        << format_double(s.Z) << ',' << format_double(s.a) << ','
        << format_double(s.uz_self) << '\n';
  if (res.collision) out << "# collision=true\n";
}

inline std::string snapshot_filename(long index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "snapshot_%06ld.csv", index);
  return buf;
}

}  // namespace axiring
