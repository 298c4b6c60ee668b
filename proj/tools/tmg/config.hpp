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

// Run configuration: an INI-style text file.
//
//   # comment
//   [state]
//   z1 = 0
//   ...
//
// Sections: state, channel, time, sweep (optional), output, oracle. Unknown
// sections or keys are errors. dump() writes every field, defaults included,
// so a dumped file reproduces the run on its own.

#ifndef TMG_TOOLS_CONFIG_HPP
#define TMG_TOOLS_CONFIG_HPP

#include <optional>
#include <stdexcept>
#include <string>

namespace tmg::cli {

enum class SweepVariable { Z0, R0, Nu, T };
enum class Format { Csv, Json };

const char* to_string(SweepVariable v);
const char* to_string(Format f);

struct StateConfig {
  double z1 = 0;
  double z2 = 0;
  double r = 0;
  double nu1 = 0;
  double nu2 = 0;
};

struct ChannelConfig {
  double gamma1 = 0.1;
  double gamma2 = 0.1;
  double nb1 = 0;
  double nb2 = 0;
};

struct TimeConfig {
  double t_max = 30;
  long n_points = 301;
};

struct SweepConfig {
  SweepVariable variable = SweepVariable::Z0;
  double lo = 0;
  double hi = 1;
  long steps = 2;
};

struct OutputConfig {
  std::string path = "-";  // "-" is stdout
  Format format = Format::Csv;
};

struct OracleConfig {
  int cutoff = 0;  // 0 picks the smallest of 20, 24, 28, 32 that passes
  double dt = 0.01;
};

struct RunConfig {
  StateConfig state;
  ChannelConfig channel;
  TimeConfig time;
  std::optional<SweepConfig> sweep;
  OutputConfig output;
  OracleConfig oracle;
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& field, const std::string& message);
  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  int line_;
  std::string field_;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
std::string dump_config(const RunConfig& config);

}  // namespace tmg::cli

#endif  // TMG_TOOLS_CONFIG_HPP
