#include <chrono>
#include <functional>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "erlab/error.hpp"
#include "erlab/parallel.hpp"

using namespace erlab;
using namespace erlab::cli;

int main(int argc, char** argv) {
  CLI::App app{"er-lab: optimal colour patterns, extension checks and LP certificates"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json";
  bool timing = false;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "tsv"}));
  app.add_flag("--timing", timing, "Include wall-clock timing in the report");

  std::string command;
  std::function<int(Report&)> action;
  auto bind = [&](CLI::App* sub, std::string name, auto fn, auto& args) {
    sub->callback([&command, &action, name, fn, &args] {
      command = name;
      action = [fn, &args](Report& rep) { return fn(args, rep); };
    });
  };

  Q2Args q2;
  auto* q2_cmd = app.add_subcommand("q2", "Branch and bound for Q_2(k)");
  q2_cmd->add_option("--k", q2.k, "Clique orders, e.g. 3,3")->required();
  q2_cmd->add_option("--rmax", q2.rmax, "Largest pattern order (default: exhaustive range)");
  q2_cmd->add_option("--budget", q2.budget, "Node budget per order");
  q2_cmd->add_flag("--no-prune", q2.no_prune, "Disable the upper-bound pruning");
  bind(q2_cmd, "q2", run_q2, q2);

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check a candidate optimal triple");
  verify_cmd->add_option("--pattern", verify.pattern, "Pattern JSON file")->required();
  verify_cmd->add_option("--k", verify.k, "Clique orders (default: from the file)");
  verify_cmd->add_option("--claim", verify.claim, "Claimed d_2,...,d_s (default: LP optimum)");
  bind(verify_cmd, "verify", run_verify, verify);

  ExtensionArgs ext;
  auto* ext_cmd = app.add_subcommand("extension", "Extension property of an optimal set");
  ext_cmd->add_option("--k", ext.k, "Clique orders")->required();
  ext_cmd->add_option("--opt", ext.opt, "Optimal triples (pattern, array or report JSON)");
  ext_cmd->add_flag("--gap", ext.gap, "Measure the best non-clone attachment");
  ext_cmd->add_flag("--loose", ext.loose, "Use the log2(s) bound in the attachment search");
  bind(ext_cmd, "extension", run_extension, ext);

  CapacityArgs cap;
  auto* cap_cmd = app.add_subcommand("capacity", "Blow-up capacity of a K_k-free graph");
  cap_cmd->add_option("--graph", cap.graph, "Graph JSON file")->required();
  cap_cmd->add_option("--k", cap.k, "Forbidden clique order")->required();
  cap_cmd->add_option("--contains", cap.contains, "Membership query, e.g. 1,2,2");
  bind(cap_cmd, "capacity", run_capacity, cap);

  LpArgs lp;
  auto* lp_cmd = app.add_subcommand("lp", "Solve Problem L with optional extra constraints");
  lp_cmd->add_option("--k", lp.k, "Clique orders")->required();
  lp_cmd->add_option("--constraint", lp.constraints, "Extra constraint, e.g. T=3,4:cap=3");
  lp_cmd->add_flag("--standard", lp.standard, "Add the standard constraints for k");
  lp_cmd->add_option("--scan", lp.scan, "Validity-scan each constraint up to this order");
  bind(lp_cmd, "lp", run_lp, lp);

  CertifyArgs cert;
  auto* cert_cmd = app.add_subcommand("certify", "Sandwich certificate: construction against the LP");
  cert_cmd->add_option("--k", cert.k, "Clique orders");
  cert_cmd->add_option("--construction", cert.construction, "Construction JSON file (default: built-in)");
  cert_cmd->add_option("--constraint", cert.constraints, "Extra constraint (default: standard constraints)");
  cert_cmd->add_flag("--bare", cert.bare, "Use Problem L without the standard constraints");
  cert_cmd->add_option("--scan", cert.scan, "Validity-scan each constraint up to this order");
  bind(cert_cmd, "certify", run_certify, cert);

  OracleArgs oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force colouring counts");
  oracle_cmd->require_subcommand(1);
  auto* count_cmd = oracle_cmd->add_subcommand("count", "Count valid colourings of a graph");
  count_cmd->add_option("--graph", oracle.graph, "Graph JSON file")->required();
  count_cmd->add_option("--k", oracle.k, "Clique orders")->required();
  bind(count_cmd, "oracle count", run_oracle_count, oracle);
  auto* extremal_cmd = oracle_cmd->add_subcommand("extremal", "Maximise the count over all n-vertex graphs");
  extremal_cmd->add_option("--n", oracle.n, "Number of vertices")->required();
  extremal_cmd->add_option("--k", oracle.k, "Clique orders")->required();
  bind(extremal_cmd, "oracle extremal", run_oracle_extremal, oracle);
  auto* blowup_cmd = oracle_cmd->add_subcommand("blowup", "Compare a blow-up count with the pattern count");
  blowup_cmd->add_option("--pattern", oracle.pattern, "Pattern JSON file")->required();
  blowup_cmd->add_option("--k", oracle.k, "Clique orders (default: from the file)");
  blowup_cmd->add_option("--n", oracle.n, "Blow-up order")->required();
  bind(blowup_cmd, "oracle blowup", run_oracle_blowup, oracle);

  SymmetriseArgs sym;
  auto* sym_cmd = app.add_subcommand("symmetrise", "Forward symmetrisation of a triple");
  sym_cmd->add_option("--input", sym.input, "Pattern JSON file")->required();
  sym_cmd->add_option("--k", sym.k, "Clique orders (default: from the file)");
  bind(sym_cmd, "symmetrise", run_symmetrise, sym);

  TablesArgs tables;
  auto* tables_cmd = app.add_subcommand("tables", "Known values of Q(k) with certificates");
  tables_cmd->add_flag("--search", tables.search, "Also run the exhaustive search for each row");
  bind(tables_cmd, "tables", run_tables, tables);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kUsage;
  }

  Report rep;
  rep.command = command;
  int code = kOk;
  const auto start = std::chrono::steady_clock::now();
  try {
    code = action(rep);
  } catch (const UsageError& e) {
    std::cerr << "er-lab " << command << ": " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    rep.add_error(std::string(e.name()), e.what());
    code = kFailed;
  }
  if (timing) {
    Json t = rep.timing ? *rep.timing : Json::object();
    t["total_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    t["threads"] = worker_count();
    rep.timing = t;
  } else {
    rep.timing.reset();
  }
  Json out = rep.to_json();
  if (format == "tsv") {
    std::cout << render_tsv(out);
  } else {
    std::cout << out.dump(2) << '\n';
  }
  return code;
}
