// Command-line front end: lambda computations, fusion classification
// reports, and the acceptance-criteria runner, over the expression grammar
// shared with the library (see expr.hpp).
//
// Exit codes: 0 success, 2 malformed input, 3 budget refused, 4 internal
// check failure.  --json output is byte-stable for fixed inputs and budgets
// (it carries no timings); human output may append elapsed times.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "oblim/expr.hpp"
#include "oblim/fusion.hpp"
#include "oblim/lambda.hpp"
#include "oblim/verify.hpp"

namespace {

using ojson = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

struct RunConfig {
  int prime = 2;
  std::string group_expr;
  std::string module_expr;
  int max_i = 3;
  std::string backend = "poset";
  bool include_stretch = false;
  bool json_out = false;
  uint64_t budget_chains = 0;  // 0: library defaults
  double time_limit = 0;       // 0: default (600 s per command; uncapped verify rows)
};

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

oblim::Budgets budgets_of(const RunConfig& cfg) {
  oblim::Budgets b;
  if (cfg.budget_chains) {
    b.chain_orbits = cfg.budget_chains;
    b.bar_chains = cfg.budget_chains;
  }
  return b;
}

// Wall-clock budget, checked on completion (the chain budgets are what bound
// the work preemptively).
void enforce_time(const RunConfig& cfg, Clock::time_point t0) {
  const double limit = cfg.time_limit > 0 ? cfg.time_limit : 600.0;
  const double spent = std::chrono::duration<double>(Clock::now() - t0).count();
  if (spent > limit)
    oblim::fail_budget("time limit exceeded: " + std::to_string(spent) + " s > " +
                       std::to_string(limit) + " s");
}

std::string dims_str(const std::vector<int>& d) {
  std::string s = "[";
  for (size_t i = 0; i < d.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(d[i]);
  }
  return s + "]";
}

void emit(const ojson& j) { std::printf("%s\n", j.dump(2).c_str()); }

int cmd_lambda(const RunConfig& cfg) {
  const auto t0 = Clock::now();
  oblim::ParsedContext px = oblim::parse_context(cfg.group_expr, cfg.module_expr);
  if (!px.module)
    oblim::fail_parse("lambda needs a module: pass -M or a semidirect group");
  if (int(px.module->p) != cfg.prime)
    oblim::fail_parse("module characteristic " + std::to_string(int(px.module->p)) +
                      " disagrees with -p " + std::to_string(cfg.prime));
  oblim::LambdaResult r = oblim::lambda_dims(px.gamma, cfg.prime, *px.module,
                                             cfg.max_i, cfg.backend, budgets_of(cfg));
  enforce_time(cfg, t0);
  const std::string mtext = cfg.module_expr.empty() ? px.module_text : cfg.module_expr;
  if (cfg.json_out) {
    ojson j;
    j["command"] = "lambda";
    j["prime"] = cfg.prime;
    j["group"] = cfg.group_expr;
    j["module"] = mtext;
    j["max_i"] = cfg.max_i;
    j["backend"] = r.backend;
    j["dims"] = r.dims;
    if (cfg.backend == "both") j["agreement"] = "poset and bar backends agree";
    emit(j);
  } else {
    std::printf("dims (degrees 0..%d): %s\n", cfg.max_i, dims_str(r.dims).c_str());
    std::printf("prime: %d\n", cfg.prime);
    std::printf("group: %s\n", cfg.group_expr.c_str());
    std::printf("module: %s\n", mtext.c_str());
    std::printf("backend: %s\n", r.backend.c_str());
    if (cfg.backend == "both") std::printf("agreement: poset and bar backends agree\n");
  }
  return 0;
}

int cmd_fusion_report(const RunConfig& cfg) {
  const auto t0 = Clock::now();
  oblim::ParsedContext px = oblim::parse_context(cfg.group_expr, cfg.module_expr);
  if (!px.semidirect)
    oblim::fail_parse("fusion-report needs a semidirect(...) group expression");
  if (int(px.module->p) != cfg.prime)
    oblim::fail_parse("module characteristic " + std::to_string(int(px.module->p)) +
                      " disagrees with -p " + std::to_string(cfg.prime));
  oblim::FusionContext fc =
      oblim::fusion_context_semidirect(*px.module, cfg.group_expr, px.module_text);
  oblim::ClassifyReport rep = oblim::classify_linking_systems(fc, budgets_of(cfg));
  enforce_time(cfg, t0);
  if (cfg.json_out) {
    ojson j;
    j["prime"] = rep.prime;
    j["group_spec"] = rep.group_spec;
    j["module_spec"] = rep.module_spec;
    j["lambda_dims"] = rep.lambda_dims;
    j["x_classes"] = rep.x_classes;
    j["y_classes"] = rep.y_classes;
    j["per_class_table"] = ojson::array();
    for (const auto& row : rep.per_class_table) {
      ojson rj;
      rj["rep"] = row.rep;
      rj["order"] = row.order;
      rj["outF_order"] = row.out_f_order;
      rj["zP_dim"] = row.zp_dim;
      rj["lambda_dims"] = row.lambda_dims;
      j["per_class_table"].push_back(rj);
    }
    j["note"] = rep.note;
    emit(j);
  } else {
    std::printf("classification at p = %d\n", rep.prime);
    std::printf("group: %s\n", rep.group_spec.c_str());
    std::printf("module: %s\n", rep.module_spec.c_str());
    std::printf("lambda dims (degrees 0..3): %s\n", dims_str(rep.lambda_dims).c_str());
    std::printf("x_classes: %d\n", rep.x_classes);
    std::printf("y_classes: %d\n", rep.y_classes);
    std::printf("note: %s\n", rep.note.c_str());
    std::printf("%-8s %8s %10s %9s  %s\n", "class", "order", "|Out_F|", "dim Z(P)",
                "lambda dims");
    for (const auto& row : rep.per_class_table)
      std::printf("%-8s %8llu %10llu %9d  %s\n", row.rep.c_str(),
                  (unsigned long long)row.order, (unsigned long long)row.out_f_order,
                  row.zp_dim, dims_str(row.lambda_dims).c_str());
  }
  return 0;
}

int cmd_verify_paper(const RunConfig& cfg) {
  const auto rows = oblim::run_acceptance(cfg.include_stretch, cfg.time_limit);
  bool fail = false;
  if (cfg.json_out) {
    ojson j = ojson::array();
    for (const auto& r : rows) {
      if (r.required && !r.pass) fail = true;
      ojson rj;
      rj["index"] = r.index;
      rj["name"] = r.name;
      rj["required"] = r.required;
      rj["pass"] = r.pass;
      rj["expected"] = r.expected;
      rj["actual"] = r.actual;
      j.push_back(rj);
    }
    emit(j);
  } else {
    for (const auto& r : rows) {
      if (r.required && !r.pass) fail = true;
      std::printf("criterion %d [%s] %s: %s (%.1fs)\n", r.index,
                  r.required ? "required" : "stretch", r.name.c_str(),
                  r.pass ? "PASS" : "FAIL", r.elapsed_s);
      std::printf("  expected: %s\n", r.expected.c_str());
      std::printf("  actual:   %s\n", r.actual.c_str());
      std::fflush(stdout);
    }
  }
  return fail ? 1 : 0;
}

void add_common(CLI::App* cmd, RunConfig* cfg, bool with_exprs) {
  if (with_exprs) {
    cmd->add_option("-p,--prime", cfg->prime, "coefficient prime (default 2)");
    cmd->add_option("-G,--group", cfg->group_expr,
                    "group expression: Sym(n), C(n), prod(...), wreath(G,n), "
                    "semidirect(M,G)")
        ->required();
    cmd->add_option("-M,--module", cfg->module_expr,
                    "module expression: natural(p), trivial(p,d), tensor(...), "
                    "power(M,n)");
    cmd->add_option("--budget-chains", cfg->budget_chains,
                    "cap on chain orbits / bar chains per degree")
        ->check(CLI::PositiveNumber);
  }
  cmd->add_flag("--json", cfg->json_out, "machine-readable output (no timings)");
  cmd->add_option("--time-limit", cfg->time_limit,
                  "wall-clock budget in seconds, checked on completion "
                  "(default 600; for verify-paper: caps each criterion)")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact higher limits, fusion systems and linking-system checks"};
  app.require_subcommand(1);
  RunConfig cfg;

  CLI::App* lam = app.add_subcommand(
      "lambda", "Lambda^i(Gamma; M) over the p-subgroup orbit category");
  add_common(lam, &cfg, true);
  lam->add_option("--max-i", cfg.max_i, "top degree (default 3)")
      ->check(CLI::Range(0, 4));
  lam->add_option("--backend", cfg.backend, "poset, bar or both (default poset)")
      ->check(CLI::IsMember({"poset", "bar", "both"}));

  CLI::App* fus = app.add_subcommand(
      "fusion-report", "linking-system classification counts for M . Gamma");
  add_common(fus, &cfg, true);

  CLI::App* ver = app.add_subcommand("verify-paper", "run the acceptance criteria");
  add_common(ver, &cfg, false);
  ver->add_flag("--include-stretch", cfg.include_stretch,
                "also run the non-gating stretch rows");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (lam->parsed() || fus->parsed()) {
      if (!is_prime(cfg.prime))
        oblim::fail_parse("-p must be a prime, got " + std::to_string(cfg.prime));
    }
    if (lam->parsed()) return cmd_lambda(cfg);
    if (fus->parsed()) return cmd_fusion_report(cfg);
    return cmd_verify_paper(cfg);
  } catch (const oblim::ParseError& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return 2;
  } catch (const oblim::BudgetError& e) {
    std::fprintf(stderr, "budget refused: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal check failed: %s\n", e.what());
    return 4;
  }
}
