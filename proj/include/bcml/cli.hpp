#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bcml/bicomplex.hpp"

namespace bcml::cli {

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitNotConverged = 3;

/// "x0" or "x0,x1,x2,x3".
Bicomplex parse_bicomplex(std::string_view text);

/// "re1,im1;re2,im2" giving the idempotent components.
Bicomplex parse_idempotent(std::string_view text);

/// One swept axis of a CSV grid: "name:start:stop:steps".
struct Sweep {
  std::string name;  // a | alpha | t | xi
  double start = 0.0;
  double stop = 0.0;
  int steps = 0;

  /// start + i (stop - start) / (steps - 1), with the last value exactly stop.
  double value(int i) const;
};

Sweep parse_sweep(std::string_view text);

/// Runs the command line. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// BCML_THREADS, 0 when unset or unparsable.
unsigned threads_from_environment();

}  // namespace bcml::cli
