#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gofpower/quadrature.hpp"

namespace gofpower::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kInputError = 2,
  kNumericalError = 3,
};

enum class Command { Spectrum, Cdf, Power, Simulate, Examples };

/// Parsed command line. Paths left empty mean "stdout" for single-file
/// outputs.
struct RunConfig {
  Command command = Command::Examples;
  std::string model_spec;
  std::string pert_spec;
  std::string out;
  std::string svg;
  std::string power_out;
  std::vector<double> xs;
  double grid_step = 1.0 / 2000.0;
  double grid_max = 5.0;
  QuadratureConfig quadrature;
  std::uint64_t seed = 20100101;
  std::size_t trials = 40000;
  std::uint64_t n = 1000000;
  unsigned threads = 0;
  bool null_only = false;
};

int cmd_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_cdf(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_power(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_examples(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Full entry point: parses `args` (without the program name), dispatches,
/// and maps errors to exit codes.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gofpower::cli
