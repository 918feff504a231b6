#pragma once

#include <cstdint>
#include <string>

#include "toricg2/io.hpp"

namespace toricg2 {

struct RunConfig {
  std::string command;  // validate | curvature | graph | models | solve
  std::string input;    // VField JSON for validate / curvature
  std::string box;      // "nu1=a:b,..." overriding the input domain
  std::string model;    // graph: c3 | t2rc2 | bs; solve: hierarchy | mu-dep | poly-ex | constant
  int res = 5;          // grid points per axis
  int samples = 10;     // random points for curvature
  int degree = 5;       // solve: max total degree
  double tol = 1e-8;
  double eps = 1.0;
  std::uint64_t seed = 1;

  // Throws std::invalid_argument on out-of-range fields.
  void check() const;
};

struct CommandResult {
  json report;
  std::string csv;  // curvature only
  bool pass = false;
};

CommandResult cmd_validate(const RunConfig& cfg);
CommandResult cmd_curvature(const RunConfig& cfg);
CommandResult cmd_graph(const RunConfig& cfg);
CommandResult cmd_models(const RunConfig& cfg);
CommandResult cmd_solve(const RunConfig& cfg);

CommandResult run_command(const RunConfig& cfg);

}  // namespace toricg2
