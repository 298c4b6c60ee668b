// Copyright 2026 The tmg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace tmg::cli {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string message(int line, const std::string& field, const std::string& what) {
  std::ostringstream os;
  os << "config";
  if (line > 0) os << ":" << line;
  if (!field.empty()) os << ": field '" << field << "'";
  os << ": " << what;
  return os.str();
}

double parse_real(const std::string& value, int line, const std::string& field) {
  errno = 0;
  char* end = nullptr;
  const double x = std::strtod(value.c_str(), &end);
  if (value.empty() || *end != '\0' || errno == ERANGE || !std::isfinite(x)) {
    throw ConfigError(line, field, "expected a finite number, got '" + value + "'");
  }
  return x;
}

long parse_integer(const std::string& value, int line, const std::string& field) {
  errno = 0;
  char* end = nullptr;
  const long x = std::strtol(value.c_str(), &end, 10);
  if (value.empty() || *end != '\0' || errno == ERANGE) {
    throw ConfigError(line, field, "expected an integer, got '" + value + "'");
  }
  return x;
}

std::string real_text(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

ConfigError::ConfigError(int line, const std::string& field, const std::string& what)
    : std::runtime_error(message(line, field, what)), line_(line), field_(field) {}

const char* to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::Z0: return "z0";
    case SweepVariable::R0: return "r0";
    case SweepVariable::Nu: return "nu";
    case SweepVariable::T: return "t";
  }
  return "?";
}

const char* to_string(Format f) { return f == Format::Csv ? "csv" : "json"; }

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  SweepConfig sweep;
  bool has_sweep = false;
  std::set<std::string> sweep_keys;
  int sweep_line = 0;

  using Setter = void (*)(RunConfig&, SweepConfig&, const std::string&, int,
                          const std::string&);
  static const std::map<std::string, Setter> setters = {
      {"state.z1", [](RunConfig& c, SweepConfig&, const std::string& v, int l, const std::string& f) { c.state.z1 = parse_real(v, l, f); }},
      {"state.z2", [](RunConfig& c, SweepConfig&, const std::string& v, int l, const std::string& f) { c.state.z2 = parse_real(v, l, f); }},
      {"state.r", [](RunConfig& c, SweepConfig&, const std::string& v, int l, const std::string& f) { c.state.r = parse_real(v, l, f); }},
      {"state.nu1", [](RunConfig& c, SweepConfig&, const std::string& v, int l, const std::string& f) { c.state.nu1 = parse_real(v, l, f); }},
      {"state.nu2", [](RunConfig& c, SweepConfig&, const std::string& v, int l, const std::string& f) { c.state.nu2 = parse_real(v, l, f); }},
      {"channel.gamma1", [](RunConfig& c, SweepConfig&, const std::string& v, int l, const std::string& f) { c.channel.gamma1 = parse_real(v, l, f); }},
      {"channel.gamma2", [](RunConfig& c, SweepConfig&, const std::string& v, int l, const std::string& f) { c.channel.gamma2 = parse_real(v, l, f); }},
      {"channel.nb1", [](RunConfig& c, SweepConfig&, const std::string& v, int l, const std::string& f) { c.channel.nb1 = parse_real(v, l, f); }},
      {"channel.nb2", [](RunConfig& c, SweepConfig&, const std::string& v, int l, const std::string& f) { c.channel.nb2 = parse_real(v, l, f); }},
      {"time.t_max", [](RunConfig& c, SweepConfig&, const std::string& v, int l, const std::string& f) { c.time.t_max = parse_real(v, l, f); }},
      {"time.n_points", [](RunConfig& c, SweepConfig&, const std::string& v, int l, const std::string& f) { c.time.n_points = parse_integer(v, l, f); }},
      {"sweep.variable", [](RunConfig&, SweepConfig& s, const std::string& v, int l, const std::string& f) {
         if (v == "z0") s.variable = SweepVariable::Z0;
         else if (v == "r0") s.variable = SweepVariable::R0;
         else if (v == "nu") s.variable = SweepVariable::Nu;
         else if (v == "t") s.variable = SweepVariable::T;
         else throw ConfigError(l, f, "expected one of z0, r0, nu, t; got '" + v + "'");
       }},
      {"sweep.lo", [](RunConfig&, SweepConfig& s, const std::string& v, int l, const std::string& f) { s.lo = parse_real(v, l, f); }},
      {"sweep.hi", [](RunConfig&, SweepConfig& s, const std::string& v, int l, const std::string& f) { s.hi = parse_real(v, l, f); }},
      {"sweep.steps", [](RunConfig&, SweepConfig& s, const std::string& v, int l, const std::string& f) { s.steps = parse_integer(v, l, f); }},
      {"output.path", [](RunConfig& c, SweepConfig&, const std::string& v, int l, const std::string& f) {
         if (v.empty()) throw ConfigError(l, f, "path must not be empty");
         c.output.path = v;
       }},
      {"output.format", [](RunConfig& c, SweepConfig&, const std::string& v, int l, const std::string& f) {
         if (v == "csv") c.output.format = Format::Csv;
         else if (v == "json") c.output.format = Format::Json;
         else throw ConfigError(l, f, "expected csv or json; got '" + v + "'");
       }},
      {"oracle.cutoff", [](RunConfig& c, SweepConfig&, const std::string& v, int l, const std::string& f) {
         const long n = parse_integer(v, l, f);
         if (n != 0 && (n < 2 || n > 32)) throw ConfigError(l, f, "cutoff must be 0 (auto) or in [2, 32]");
         c.oracle.cutoff = static_cast<int>(n);
       }},
      {"oracle.dt", [](RunConfig& c, SweepConfig&, const std::string& v, int l, const std::string& f) {
         c.oracle.dt = parse_real(v, l, f);
         if (!(c.oracle.dt > 0)) throw ConfigError(l, f, "dt must be > 0");
       }},
  };
  static const std::set<std::string> sections = {"state", "channel", "time",
                                                 "sweep", "output", "oracle"};

  std::istringstream in(text);
  std::string raw;
  std::string section;
  std::set<std::string> seen;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find_first_of("#;");
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(line_no, "", "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (!sections.count(section)) {
        throw ConfigError(line_no, section, "unknown section");
      }
      if (section == "sweep") {
        has_sweep = true;
        sweep_line = line_no;
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(line_no, "", "expected 'key = value'");
    }
    if (section.empty()) {
      throw ConfigError(line_no, trim(line.substr(0, eq)), "key outside of any section");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const std::string field = section + "." + key;
    const auto it = setters.find(field);
    if (it == setters.end()) throw ConfigError(line_no, field, "unknown key");
    if (!seen.insert(field).second) throw ConfigError(line_no, field, "duplicate key");
    it->second(cfg, sweep, value, line_no, field);
    if (section == "sweep") sweep_keys.insert(key);
  }

  if (cfg.time.n_points < 2) throw ConfigError(0, "time.n_points", "must be >= 2");
  if (!(cfg.time.t_max > 0)) throw ConfigError(0, "time.t_max", "must be > 0");
  if (has_sweep) {
    for (const char* key : {"variable", "lo", "hi", "steps"}) {
      if (!sweep_keys.count(key)) {
        throw ConfigError(sweep_line, std::string("sweep.") + key, "missing");
      }
    }
    if (!(sweep.hi > sweep.lo)) throw ConfigError(sweep_line, "sweep.hi", "range is degenerate (need hi > lo)");
    if (sweep.steps < 2) throw ConfigError(sweep_line, "sweep.steps", "must be >= 2");
    cfg.sweep = sweep;
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, "", "cannot open '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string dump_config(const RunConfig& c) {
  std::ostringstream os;
  os << "[state]\n"
     << "z1 = " << real_text(c.state.z1) << "\n"
     << "z2 = " << real_text(c.state.z2) << "\n"
     << "r = " << real_text(c.state.r) << "\n"
     << "nu1 = " << real_text(c.state.nu1) << "\n"
     << "nu2 = " << real_text(c.state.nu2) << "\n\n"
     << "[channel]\n"
     << "gamma1 = " << real_text(c.channel.gamma1) << "\n"
     << "gamma2 = " << real_text(c.channel.gamma2) << "\n"
     << "nb1 = " << real_text(c.channel.nb1) << "\n"
     << "nb2 = " << real_text(c.channel.nb2) << "\n\n"
     << "[time]\n"
     << "t_max = " << real_text(c.time.t_max) << "\n"
     << "n_points = " << c.time.n_points << "\n\n";
  if (c.sweep) {
    os << "[sweep]\n"
       << "variable = " << to_string(c.sweep->variable) << "\n"
       << "lo = " << real_text(c.sweep->lo) << "\n"
       << "hi = " << real_text(c.sweep->hi) << "\n"
       << "steps = " << c.sweep->steps << "\n\n";
  }
  os << "[output]\n"
     << "path = " << c.output.path << "\n"
     << "format = " << to_string(c.output.format) << "\n\n"
     << "[oracle]\n"
     << "cutoff = " << c.oracle.cutoff << "\n"
     << "dt = " << real_text(c.oracle.dt) << "\n";
  return os.str();
}

}  // namespace tmg::cli
