#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tes/scenario.hpp"

namespace tes::cli {

enum ExitCode { kPass = 0, kFail = 1, kInconclusive = 2 };

// A command's verdict: the exit code, a JSON record for stdout and, when the
// command produced one, a witness or language listing for --out.
struct Outcome {
  int code = kPass;
  json record;
  std::optional<std::string> listing;
};

Outcome cmd_check(const dsl::Env& env, const std::string& expr, const std::string& property);
Outcome cmd_equiv(const dsl::Env& env, const std::string& e1, const std::string& e2);
Outcome cmd_admits(const dsl::Env& env, const std::string& expr, const TesPrefix& trace);

struct HyperArgs {
  std::string mode;                    // "insert" or "shift"
  std::vector<Observable> insert;      // observables to insert
  std::vector<Rational> steps;         // alternative grid steps for shifting
  std::size_t budget = 10'000;
};
Outcome cmd_hyper(const dsl::Env& env, const std::string& expr, const HyperArgs& args);

Outcome cmd_divide(const dsl::Env& env, const std::string& e1, const std::string& e2, const std::string& rel,
                   const std::string& fn);
// Brute-force language of the product, compared against the product machinery.
Outcome cmd_oracle(const dsl::Env& env, const std::string& e1, const std::string& e2, const std::string& rel,
                   const std::string& fn);

// Runs a command body, mapping enumeration overflow and input errors to
// exit code 2 with an "error" record.
Outcome guarded(const std::function<Outcome()>& body);

}  // namespace tes::cli
