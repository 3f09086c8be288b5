#ifndef SKEWLIN_CLI_HPP
#define SKEWLIN_CLI_HPP

#include <string>
#include <vector>

#include "skewlin/io.hpp"

namespace skewlin {

struct CliOptions {
  std::uint64_t seed = kDefaultSeed;
  int budget = 200;
  std::string strategy = "auto";  // auto | exhaustive | meataxe
  std::string cert_path;          // verify: certificate document
  std::string manifest;           // corpus: manifest path
  bool all = false;               // corpus run --all
};

struct CommandResult {
  int exit_code = 0;  // 0 ok, 1 verification failed, 2 hypothesis violation,
                      // 3 parse/validation error, 4 inconclusive
  Json document;
};

/// verbs: centralize, irreducible, delta, linearize, verify,
/// corollary-one-sided, corollary-group, corollary-np, corpus
CommandResult run_command(const std::string& verb,
                          const std::vector<std::string>& args,
                          const CliOptions& opts);

}  // namespace skewlin

#endif
