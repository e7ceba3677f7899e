#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "hahnchain/chain.hpp"

namespace hahnchain::cli {

enum class Command { couplings, spectrum, eigvecs, correlate, pst_scan, verify };
enum class Format { csv, json };

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitVerifyFailed = 2;
inline constexpr int kExitIo = 3;

struct CliConfig {
  Command command = Command::spectrum;
  int m = 0;
  double alpha = 0.0;
  double beta = 1.0;
  std::optional<double> q;
  std::optional<int> r;
  std::optional<int> s;
  double t_min = 0.0;
  double t_max = 1.0;
  int steps = 101;
  Format format = Format::csv;
  std::optional<std::string> output;
  double rtol = 1e-10;

  ChainSpec spec() const { return {m, alpha, beta, q}; }
};

const char* command_name(Command c);

/// Validates the config, runs the command and writes to `output` (or `out`).
/// Returns 0 on success, 1 on invalid parameters, 2 when verify finds a
/// failing suite, 3 when the output cannot be written.
int run(const CliConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv into a CliConfig and calls run().
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hahnchain::cli
