#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "erlab/io.hpp"

namespace erlab::cli {

// Malformed flags or unreadable files; reported on stderr with exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum ExitCode { kOk = 0, kUsage = 1, kFailed = 2 };

struct Q2Args {
  std::string k;
  int rmax = 0;  // 0: largest exhaustive order
  std::uint64_t budget = SearchOptions{}.budget;
  bool no_prune = false;
};

struct VerifyArgs {
  std::string pattern;
  std::string k;
  std::string claim;  // d_2,...,d_s
};

struct ExtensionArgs {
  std::string k;
  std::string opt;
  bool gap = false;
  bool loose = false;
};

struct CapacityArgs {
  std::string graph;
  int k = 0;
  std::string contains;
};

struct LpArgs {
  std::string k;
  std::vector<std::string> constraints;
  bool standard = false;
  int scan = 0;
};

struct CertifyArgs {
  std::string k;
  std::string construction;
  std::vector<std::string> constraints;
  bool bare = false;
  int scan = 0;
};

struct OracleArgs {
  std::string k;
  std::string graph;
  std::string pattern;
  int n = 0;
  bool counts = false;
};

struct SymmetriseArgs {
  std::string input;
  std::string k;
};

struct TablesArgs {
  bool search = false;
};

// Each command fills the report and returns the exit code.
int run_q2(const Q2Args& a, Report& rep);
int run_verify(const VerifyArgs& a, Report& rep);
int run_extension(const ExtensionArgs& a, Report& rep);
int run_capacity(const CapacityArgs& a, Report& rep);
int run_lp(const LpArgs& a, Report& rep);
int run_certify(const CertifyArgs& a, Report& rep);
int run_oracle_count(const OracleArgs& a, Report& rep);
int run_oracle_extremal(const OracleArgs& a, Report& rep);
int run_oracle_blowup(const OracleArgs& a, Report& rep);
int run_symmetrise(const SymmetriseArgs& a, Report& rep);
int run_tables(const TablesArgs& a, Report& rep);

/// Tab-separated rendering; tables get one line per row, other commands are flattened.
std::string render_tsv(const Json& report);

}  // namespace erlab::cli
