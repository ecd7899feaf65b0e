#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pjac/cpoly.hpp"

namespace pjac::cli {

enum class Command { Phi, Pn, Critical, Certify, Spectrum, Support, Family, Oracle, Verify };
enum class Format { Table, Json, Csv };

Command parse_command(const std::string& s);
std::string to_string(Command c);
Format parse_format(const std::string& s);

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kVerifyMismatch = 1;
inline constexpr int kBadInput = 2;
inline constexpr int kNumericalFailure = 3;

struct RunConfig {
  Command command = Command::Spectrum;
  std::string family;
  std::vector<double> params;
  std::string coeffs_path;
  std::optional<cplx> mu;
  double tol = kDefaultRootTol;
  Format format = Format::Table;
  std::string out_path;  // empty: standard output
  int grid = 64;
  int max_n = 32;
  std::uint64_t seed = 1;
};

/// Throws InputError when the config cannot be run.
void validate(const RunConfig& cfg);

struct RunResult {
  int exit_code = kOk;
  std::string output;      // the emitted document
  std::string diagnostic;  // message for standard error
};

/// Runs one command. Never throws; failures map to exit codes.
RunResult run(const RunConfig& cfg);

/// Parses argv into a config. Throws InputError on bad arguments; returns
/// nullopt when help was requested (text is written to `help`).
std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::string& help);

/// Full entry point: parse, run, write output, return the exit code.
int main(int argc, const char* const* argv);

}  // namespace pjac::cli
