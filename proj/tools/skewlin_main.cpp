#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "skewlin/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "skewlin: exact commutant algebras, division-ring certification, and "
      "module linearisation certificates"};
  app.require_subcommand(1);

  skewlin::CliOptions opts;
  std::string out_path;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--seed", opts.seed, "randomness seed (MeatAxe, sampling)");
    cmd->add_option("--budget", opts.budget, "attempt budget for randomized steps");
    cmd->add_option("-o,--out", out_path, "write the result document to a file");
  };

  std::vector<std::string> args;
  std::string verb;

  for (const char* name : {"centralize", "irreducible", "delta", "linearize",
                           "verify", "corollary-one-sided", "corollary-group",
                           "corollary-np"}) {
    CLI::App* cmd = app.add_subcommand(name);
    cmd->add_option("instance", args, "instance document (JSON)")->expected(1);
    add_common(cmd);
    if (std::string(name) == "irreducible" || std::string(name) == "delta")
      cmd->add_option("--strategy", opts.strategy,
                      "auto | exhaustive | meataxe (delta: randomized)");
    if (std::string(name) == "verify")
      cmd->add_option("--cert", opts.cert_path, "certificate document (JSON)")
          ->required();
    cmd->callback([&, name] { verb = name; });
  }

  CLI::App* corpus = app.add_subcommand("corpus", "run the built-in corpus");
  corpus->add_option("action", args, "only 'run' is supported")->expected(1);
  corpus->add_flag("--all", opts.all, "evaluate every entry");
  corpus->add_option("--manifest", opts.manifest,
                     "manifest path (default corpus/manifest.json)");
  add_common(corpus);
  corpus->callback([&] { verb = "corpus"; });

  CLI11_PARSE(app, argc, argv);

  skewlin::CommandResult result = skewlin::run_command(verb, args, opts);
  std::string text = result.document.dump(2);
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    out << text << "\n";
  } else {
    std::cout << text << "\n";
  }
  if (verb == "corpus" && result.document.contains("entries")) {
    for (const auto& entry : result.document["entries"])
      std::cerr << entry["name"].get<std::string>() << ": "
                << entry["status"].get<std::string>() << "\n";
  }
  return result.exit_code;
}
