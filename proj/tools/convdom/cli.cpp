#include "cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "convdom/catalog.hpp"

namespace convdom::cli {

namespace {

using nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Deterministic document rendering. Floating-point values are serialized
// with 17 significant digits so reports round-trip and compare bytewise.

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void dump_value(const ordered_json& v, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  const std::string inner(static_cast<std::size_t>(indent) + 2, ' ');
  switch (v.type()) {
    case ordered_json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, val] : v.items()) {
        if (!first) out += ",\n";
        first = false;
        out += inner;
        out += ordered_json(key).dump();
        out += ": ";
        dump_value(val, out, indent + 2);
      }
      out += '\n';
      out += pad;
      out += '}';
      return;
    }
    case ordered_json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& item : v) {
        if (!first) out += ",\n";
        first = false;
        out += inner;
        dump_value(item, out, indent + 2);
      }
      out += '\n';
      out += pad;
      out += ']';
      return;
    }
    case ordered_json::value_t::number_float:
      out += fmt_double(v.get<double>());
      return;
    default:
      out += v.dump();
      return;
  }
}

std::string dump_document(const ordered_json& doc) {
  std::string out;
  dump_value(doc, out, 0);
  out += '\n';
  return out;
}

// ---------------------------------------------------------------------------
// Report pieces

ordered_json witness_json(const Witness& w) {
  ordered_json j;
  j["x"] = w.x;
  j["y"] = w.y ? ordered_json(*w.y) : ordered_json(nullptr);
  j["lambda"] = w.lambda ? ordered_json(*w.lambda) : ordered_json(nullptr);
  j["z"] = w.z ? ordered_json(*w.z) : ordered_json(nullptr);
  j["lhs"] = w.lhs;
  j["rhs"] = w.rhs;
  j["gap"] = w.gap;
  return j;
}

ordered_json verdict_json(const Verdict& v) {
  ordered_json j;
  if (const auto* h = std::get_if<HoldsOnSamples>(&v)) {
    j["type"] = "holds_on_samples";
    j["min_margin"] = h->min_margin;
    j["points_checked"] = h->points_checked;
  } else if (const auto* viol = std::get_if<Violated>(&v)) {
    j["type"] = "violated";
    j["witness"] = witness_json(viol->witness);
  } else {
    j["type"] = "inconclusive";
    j["reason"] = std::get<Inconclusive>(v).reason;
  }
  return j;
}

ordered_json hh_json(const HHReport& r) {
  ordered_json j;
  j["id"] = to_string(r.id);
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["margin"] = r.margin;
  j["quad_error"] = r.quad_error;
  j["verdict"] = to_string(r.verdict);
  return j;
}

ordered_json plan_json(const SamplingPlan& p) {
  ordered_json j;
  j["n_x"] = p.n_x;
  j["n_lambda"] = p.n_lambda;
  j["lambda_margin"] = p.lambda_margin;
  j["tau"] = p.tau;
  j["seed"] = p.seed;
  j["refine_rounds"] = p.refine_rounds;
  return j;
}

ordered_json quad_json(const QuadConfig& q) {
  ordered_json j;
  j["abs_tol"] = q.abs_tol;
  j["rel_tol"] = q.rel_tol;
  j["max_subdivisions"] = q.max_subdivisions;
  return j;
}

const char* class_name(FunctionClass c) {
  switch (c) {
    case FunctionClass::Convex: return "convex";
    case FunctionClass::Q: return "Q";
    case FunctionClass::P: return "P";
    case FunctionClass::Nonnegative: return "nonneg";
  }
  return "?";
}

const char* kind_name(Kind k) { return k == Kind::Q ? "Q" : "P"; }

FunctionClass class_of_kind(Kind k) {
  return k == Kind::Q ? FunctionClass::Q : FunctionClass::P;
}

ordered_json config_json(const RunConfig& cfg) {
  ordered_json j;
  j["f"] = cfg.f_text;
  j["g"] = cfg.g_text ? ordered_json(*cfg.g_text) : ordered_json(nullptr);
  j["interval"] = ordered_json::array({cfg.interval.a, cfg.interval.b});
  switch (cfg.command) {
    case Command::CheckClass:
      j["class"] = class_name(cfg.cls);
      break;
    case Command::CheckDominated:
      j["kind"] = kind_name(cfg.kind);
      j["waive_prereq"] = cfg.waive_prereq;
      break;
    case Command::Decompose:
      j["kind"] = kind_name(cfg.kind);
      break;
    case Command::VerifyHH:
      j["thm"] = cfg.thm;
      j["quad"] = quad_json(cfg.quad);
      break;
    case Command::Crosscheck:
      break;
  }
  j["plan"] = plan_json(cfg.plan);
  return j;
}

// Exit-status bookkeeping across every verdict in a report.
struct StatusTally {
  bool any_violated = false;
  bool any_inconclusive = false;

  void see(const Verdict& v) {
    any_violated = any_violated || violated(v);
    any_inconclusive = any_inconclusive || inconclusive(v);
  }
  void see(const HHReport& r) {
    any_violated = any_violated || r.verdict == HHVerdict::Violated;
  }
  int status() const {
    if (any_inconclusive) return 2;
    return any_violated ? 1 : 0;
  }
};

class UsageError : public Error {
 public:
  using Error::Error;
};

std::string defect_curve_csv(const std::vector<double>& lambdas,
                             const std::function<double(double)>& defect_at) {
  std::string out = "lambda,defect\n";
  for (double l : lambdas) {
    out += fmt_double(l);
    out += ',';
    out += fmt_double(defect_at(l));
    out += '\n';
  }
  return out;
}

std::vector<double> lambda_grid(bool open_interval, const SamplingPlan& plan) {
  const double lo = open_interval ? plan.lambda_margin : 0.0;
  const double hi = open_interval ? 1.0 - plan.lambda_margin : 1.0;
  return sample_points(lo, hi, plan.n_lambda);
}

// ---------------------------------------------------------------------------
// Command bodies. Each fills doc["result"], the tally, and optionally csv.

void run_check_class(const RunConfig& cfg, ordered_json& result,
                     StatusTally& tally, std::optional<std::string>& csv) {
  const FunctionExpr f = parse(cfg.f_text);
  const MembershipDetail det =
      check_membership_detail(f, cfg.interval, cfg.cls, cfg.plan);
  result["verdict"] = verdict_json(det.verdict);
  tally.see(det.verdict);
  if (cfg.csv_path) {
    if (cfg.cls == FunctionClass::Nonnegative)
      throw UsageError(
          "defect curves need a lambda axis; class nonneg has none");
    if (!inconclusive(det.verdict)) {
      const auto lambdas = lambda_grid(cfg.cls == FunctionClass::Q, cfg.plan);
      csv = defect_curve_csv(lambdas, [&](double l) {
        switch (cfg.cls) {
          case FunctionClass::Convex:
            return defect_convex(f, det.worst_x, det.worst_y, l);
          case FunctionClass::P:
            return defect_p(f, det.worst_x, det.worst_y, l);
          default:
            return defect_q(f, det.worst_x, det.worst_y, l);
        }
      });
    }
  }
}

void run_check_dominated(const RunConfig& cfg, ordered_json& result,
                         StatusTally& tally,
                         std::optional<std::string>& csv) {
  const FunctionExpr f = parse(cfg.f_text);
  const FunctionExpr g = parse(*cfg.g_text);
  const DominancePair pair{f, g, cfg.interval, cfg.kind};
  const Verdict gm =
      check_membership(g, cfg.interval, class_of_kind(cfg.kind), cfg.plan);
  if (!holds(gm) && !cfg.waive_prereq)
    throw PrereqFailed(
        "dominating function failed its class membership check; pass "
        "--waive-prereq to scan anyway");
  const DominanceDetail det =
      check_dominated_detail(pair, cfg.plan, /*waive_membership=*/true);
  result["g_membership"] = verdict_json(gm);
  result["waived"] = cfg.waive_prereq;
  result["verdict"] = verdict_json(det.verdict);
  tally.see(gm);
  tally.see(det.verdict);
  if (cfg.csv_path && !inconclusive(det.verdict)) {
    const auto lambdas = lambda_grid(cfg.kind == Kind::Q, cfg.plan);
    csv = defect_curve_csv(lambdas, [&](double l) {
      return dominance_defect(pair, det.worst_x, det.worst_y, l);
    });
  }
}

void run_crosscheck(const RunConfig& cfg, ordered_json& result,
                    StatusTally& tally) {
  const FunctionExpr f = parse(cfg.f_text);
  const CrosscheckReport rep =
      equivalence_crosscheck(f, cfg.interval, cfg.plan);
  result["eq1"] = verdict_json(rep.eq1);
  result["eq2"] = verdict_json(rep.eq2);
  result["agree"] = rep.agree;
  tally.see(rep.eq1);
  tally.see(rep.eq2);
}

void run_decompose(const RunConfig& cfg, ordered_json& result,
                   StatusTally& tally) {
  const FunctionExpr f = parse(cfg.f_text);
  const FunctionExpr g = parse(*cfg.g_text);
  const DominancePair pair{f, g, cfg.interval, cfg.kind};
  const Decomposition dec = decompose(pair);
  const FunctionClass cls = class_of_kind(cfg.kind);
  const Verdict lm = check_membership(dec.l, cfg.interval, cls, cfg.plan);
  const Verdict km = check_membership(dec.k, cfg.interval, cls, cfg.plan);
  result["l"] = pretty_print(dec.l);
  result["k"] = pretty_print(dec.k);
  result["l_membership"] = verdict_json(lm);
  result["k_membership"] = verdict_json(km);
  tally.see(lm);
  tally.see(km);
}

void run_verify_hh(const RunConfig& cfg, ordered_json& result,
                   StatusTally& tally) {
  const FunctionExpr f = parse(cfg.f_text);
  const double tau = cfg.plan.tau;
  ordered_json hypothesis;
  std::vector<HHReport> reports;
  if (cfg.thm == "classical") {
    const Verdict hv =
        check_membership(f, cfg.interval, FunctionClass::Convex, cfg.plan);
    hypothesis["f_convex"] = verdict_json(hv);
    tally.see(hv);
    reports = verify_hh_classical(f, cfg.interval, cfg.quad, tau);
  } else if (cfg.thm == "1" || cfg.thm == "2") {
    const FunctionClass cls =
        cfg.thm == "1" ? FunctionClass::Q : FunctionClass::P;
    const Verdict hv = check_membership(f, cfg.interval, cls, cfg.plan);
    hypothesis[cfg.thm == "1" ? "f_in_Q" : "f_in_P"] = verdict_json(hv);
    tally.see(hv);
    reports = cfg.thm == "1" ? verify_thm1(f, cfg.interval, cfg.quad, tau)
                             : verify_thm2(f, cfg.interval, cfg.quad, tau);
  } else {
    const FunctionExpr g = parse(*cfg.g_text);
    const Kind kind = cfg.thm == "3" ? Kind::Q : Kind::P;
    const Verdict gm =
        check_membership(g, cfg.interval, class_of_kind(kind), cfg.plan);
    const DominancePair pair{f, g, cfg.interval, kind};
    const Verdict dom =
        check_dominated(pair, cfg.plan, /*waive_membership=*/true);
    hypothesis[kind == Kind::Q ? "g_in_Q" : "g_in_P"] = verdict_json(gm);
    hypothesis["dominated"] = verdict_json(dom);
    tally.see(gm);
    tally.see(dom);
    reports = kind == Kind::Q
                  ? verify_thm3(f, g, cfg.interval, cfg.quad, tau)
                  : verify_thm4(f, g, cfg.interval, cfg.quad, tau);
  }
  result["hypothesis"] = hypothesis;
  ordered_json arr = ordered_json::array();
  for (const HHReport& r : reports) {
    arr.push_back(hh_json(r));
    tally.see(r);
  }
  result["inequalities"] = arr;
}

ordered_json error_json(const char* type, const std::string& message) {
  ordered_json e;
  e["type"] = type;
  e["message"] = message;
  return e;
}

}  // namespace

const char* command_name(Command c) {
  switch (c) {
    case Command::CheckClass: return "check-class";
    case Command::CheckDominated: return "check-dominated";
    case Command::VerifyHH: return "verify-hh";
    case Command::Decompose: return "decompose";
    case Command::Crosscheck: return "crosscheck";
  }
  return "?";
}

RunOutcome run(const RunConfig& cfg) {
  ordered_json doc;
  doc["schema"] = "convdom/1";
  doc["command"] = command_name(cfg.command);
  doc["config"] = config_json(cfg);

  RunOutcome out;
  StatusTally tally;
  ordered_json result;
  std::optional<std::string> csv;
  try {
    switch (cfg.command) {
      case Command::CheckClass:
        run_check_class(cfg, result, tally, csv);
        break;
      case Command::CheckDominated:
        run_check_dominated(cfg, result, tally, csv);
        break;
      case Command::Crosscheck:
        if (cfg.csv_path)
          throw UsageError("crosscheck does not produce defect curves");
        run_crosscheck(cfg, result, tally);
        break;
      case Command::Decompose:
        if (cfg.csv_path)
          throw UsageError("decompose does not produce defect curves");
        run_decompose(cfg, result, tally);
        break;
      case Command::VerifyHH:
        if (cfg.csv_path)
          throw UsageError("verify-hh does not produce defect curves");
        run_verify_hh(cfg, result, tally);
        break;
    }
    doc["result"] = result;
    out.exit_status = tally.status();
    out.csv = csv;
  } catch (const SyntaxError& e) {
    ordered_json err = error_json("SyntaxError", e.what());
    err["offset"] = e.offset();
    err["expected"] = e.expected();
    doc["error"] = err;
    out.exit_status = 2;
  } catch (const UnknownIdentifier& e) {
    ordered_json err = error_json("UnknownIdentifier", e.what());
    err["name"] = e.name();
    err["offset"] = e.offset();
    doc["error"] = err;
    out.exit_status = 2;
  } catch (const OutOfDomain& e) {
    doc["error"] = error_json("OutOfDomain", e.what());
    out.exit_status = 2;
  } catch (const NonFiniteValue& e) {
    doc["error"] = error_json("NonFiniteValue", e.what());
    out.exit_status = 2;
  } catch (const LambdaOutOfRange& e) {
    doc["error"] = error_json("LambdaOutOfRange", e.what());
    out.exit_status = 2;
  } catch (const PrereqFailed& e) {
    doc["error"] = error_json("PrereqFailed", e.what());
    out.exit_status = 2;
  } catch (const ToleranceNotReached& e) {
    ordered_json err = error_json("ToleranceNotReached", e.what());
    err["value"] = e.value();
    err["error_estimate"] = e.error_estimate();
    doc["error"] = err;
    out.exit_status = 2;
  } catch (const UnknownFixture& e) {
    doc["error"] = error_json("UnknownFixture", e.what());
    out.exit_status = 2;
  } catch (const UsageError& e) {
    doc["error"] = error_json("UsageError", e.what());
    out.exit_status = 2;
  } catch (const Error& e) {
    doc["error"] = error_json("Error", e.what());
    out.exit_status = 2;
  } catch (const std::invalid_argument& e) {
    doc["error"] = error_json("InvalidArgument", e.what());
    out.exit_status = 2;
  }

  out.json = dump_document(doc);
  return out;
}

int main_impl(int argc, char** argv) {
  CLI::App app{
      "Sampling-based verifier and falsifier for the Q/P function classes, "
      "convex-dominated pairs, and Hermite-Hadamard-type inequalities"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string f_text;
  std::string g_text;
  std::vector<double> interval;
  std::string cls = "Q";
  std::string kind = "Q";
  std::string thm;
  std::string json_path;
  std::string csv_path;

  const auto add_common = [&](CLI::App* sub, bool with_g) {
    sub->add_option("--f", f_text, "Function expression")->required();
    if (with_g) sub->add_option("--g", g_text, "Dominating / second function");
    sub->add_option("--interval", interval, "Domain endpoints A B")
        ->expected(2)
        ->required();
    sub->add_option("--nx", cfg.plan.n_x, "Grid points per spatial axis");
    sub->add_option("--nlambda", cfg.plan.n_lambda, "Lambda grid points");
    sub->add_option("--eps", cfg.plan.lambda_margin,
                    "Lambda margin for open-interval classes");
    sub->add_option("--tau", cfg.plan.tau, "Relative slack tolerance");
    sub->add_option("--seed", cfg.plan.seed, "Refinement restart seed");
    sub->add_option("--json", json_path, "Write the JSON report here");
    sub->add_option("--csv", csv_path,
                    "Write a lambda,defect curve at the worst (x, y) here");
  };

  CLI::App* check_class = app.add_subcommand(
      "check-class", "Sample a class condition over the interval");
  add_common(check_class, false);
  check_class->add_option("--class", cls, "One of convex|Q|P|nonneg")
      ->check(CLI::IsMember({"convex", "Q", "P", "nonneg"}))
      ->required();

  CLI::App* check_dominated = app.add_subcommand(
      "check-dominated", "Sample the convex-dominated condition for (f, g)");
  add_common(check_dominated, true);
  check_dominated->get_option("--g")->required();
  check_dominated->add_option("--kind", kind, "Class kind Q|P")
      ->check(CLI::IsMember({"Q", "P"}));
  check_dominated->add_flag("--waive-prereq", cfg.waive_prereq,
                            "Scan even when g fails its membership check");

  CLI::App* verify_hh = app.add_subcommand(
      "verify-hh", "Evaluate both sides of a Hermite-Hadamard-type bound");
  add_common(verify_hh, true);
  verify_hh->add_option("--thm", thm, "One of classical|1|2|3|4")
      ->check(CLI::IsMember({"classical", "1", "2", "3", "4"}))
      ->required();
  verify_hh->add_option("--abs-tol", cfg.quad.abs_tol,
                        "Quadrature absolute tolerance");
  verify_hh->add_option("--rel-tol", cfg.quad.rel_tol,
                        "Quadrature relative tolerance");

  CLI::App* decompose_cmd = app.add_subcommand(
      "decompose", "Construct l = g+f, k = g-f and check their membership");
  add_common(decompose_cmd, true);
  decompose_cmd->get_option("--g")->required();
  decompose_cmd->add_option("--kind", kind, "Class kind Q|P")
      ->check(CLI::IsMember({"Q", "P"}));

  CLI::App* crosscheck = app.add_subcommand(
      "crosscheck",
      "Compare the pointwise and triple-product forms of the Q condition");
  add_common(crosscheck, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    ordered_json doc;
    doc["schema"] = "convdom/1";
    doc["error"] = error_json("UsageError", e.what());
    std::cout << dump_document(doc);
    return 2;
  }

  if (check_class->parsed()) {
    cfg.command = Command::CheckClass;
    cfg.cls = cls == "convex"  ? FunctionClass::Convex
              : cls == "Q"     ? FunctionClass::Q
              : cls == "P"     ? FunctionClass::P
                               : FunctionClass::Nonnegative;
  } else if (check_dominated->parsed()) {
    cfg.command = Command::CheckDominated;
  } else if (verify_hh->parsed()) {
    cfg.command = Command::VerifyHH;
    cfg.thm = thm;
  } else if (decompose_cmd->parsed()) {
    cfg.command = Command::Decompose;
  } else {
    cfg.command = Command::Crosscheck;
  }
  cfg.kind = kind == "P" ? Kind::P : Kind::Q;
  cfg.f_text = f_text;
  if (!g_text.empty()) cfg.g_text = g_text;
  if (!json_path.empty()) cfg.json_path = json_path;
  if (!csv_path.empty()) cfg.csv_path = csv_path;

  if (cfg.command == Command::VerifyHH && (cfg.thm == "3" || cfg.thm == "4") &&
      !cfg.g_text) {
    ordered_json doc;
    doc["schema"] = "convdom/1";
    doc["command"] = command_name(cfg.command);
    doc["error"] =
        error_json("UsageError", "--g is required for --thm 3 and --thm 4");
    std::cout << dump_document(doc);
    return 2;
  }

  try {
    cfg.interval = Interval(interval[0], interval[1]);
  } catch (const std::invalid_argument& e) {
    ordered_json doc;
    doc["schema"] = "convdom/1";
    doc["command"] = command_name(cfg.command);
    doc["error"] = error_json("InvalidInterval", e.what());
    std::cout << dump_document(doc);
    return 2;
  }

  const RunOutcome outcome = run(cfg);

  if (cfg.json_path) {
    std::ofstream out(*cfg.json_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot open " << *cfg.json_path << " for writing\n";
      return 2;
    }
    out << outcome.json;
  } else {
    std::cout << outcome.json;
  }
  if (cfg.csv_path && outcome.csv) {
    std::ofstream out(*cfg.csv_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot open " << *cfg.csv_path << " for writing\n";
      return 2;
    }
    out << *outcome.csv;
  }
  return outcome.exit_status;
}

}  // namespace convdom::cli
