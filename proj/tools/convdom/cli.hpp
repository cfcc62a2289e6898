#pragma once

#include <optional>
#include <string>

#include "convdom/dominance.hpp"
#include "convdom/hh.hpp"
#include "convdom/interval.hpp"
#include "convdom/membership.hpp"
#include "convdom/quadrature.hpp"

namespace convdom::cli {

enum class Command { CheckClass, CheckDominated, VerifyHH, Decompose, Crosscheck };

const char* command_name(Command c);

struct RunConfig {
  Command command = Command::CheckClass;
  std::string f_text;
  std::optional<std::string> g_text;
  Interval interval;
  FunctionClass cls = FunctionClass::Q;  // check-class
  Kind kind = Kind::Q;                   // check-dominated, decompose
  std::string thm = "classical";         // verify-hh: classical|1|2|3|4
  SamplingPlan plan;
  QuadConfig quad;
  bool waive_prereq = false;
  std::optional<std::string> json_path;  // default: standard output
  std::optional<std::string> csv_path;
};

/// Exit status 0 when every verdict holds or sits within quadrature error,
/// 1 when anything is violated, 2 on errors (parse, domain, tolerance) and
/// inconclusive scans. json is the full report document; csv is present
/// when a defect curve was requested and produced.
struct RunOutcome {
  int exit_status = 0;
  std::string json;
  std::optional<std::string> csv;
};

RunOutcome run(const RunConfig& config);

/// Flag parsing plus output writing around run(); returns the exit status.
int main_impl(int argc, char** argv);

}  // namespace convdom::cli
