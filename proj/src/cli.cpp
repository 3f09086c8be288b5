#include "skewlin/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "skewlin/errors.hpp"

namespace skewlin {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

InstanceDocument load_instance(const std::vector<std::string>& args) {
  if (args.empty()) throw ParseError("missing instance file argument");
  return parse_instance(read_file(args[0]));
}

IrredStrategy strategy_from(const std::string& name) {
  if (name == "auto") return IrredStrategy::Auto;
  if (name == "exhaustive") return IrredStrategy::Exhaustive;
  if (name == "meataxe") return IrredStrategy::MeatAxe;
  throw ParseError("unknown strategy '" + name + "'");
}

Json subspace_rows(const FieldPtr& f, const Subspace& s) {
  Json rows = Json::array();
  for (const auto& b : s.basis()) {
    Json row = Json::array();
    for (const auto& c : b) row.push_back(scalar_to_json(f, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

CommandResult do_centralize(const InstanceDocument& doc) {
  const ModuleInstance& m = doc.instance;
  if (m.s_gens.empty()) throw ValidationError("centralize needs s_gens");
  AlgebraBasis t = centralizer_basis(m.field, m.n, m.s_gens);
  Json j;
  j["verb"] = "centralize";
  if (!m.name.empty()) j["instance"] = m.name;
  j["dim"] = t.dim();
  j["commutative"] = t.commutative();
  Json basis = Json::array();
  for (const auto& b : t.basis()) basis.push_back(matrix_to_json(b));
  j["basis"] = std::move(basis);
  return {0, std::move(j)};
}

CommandResult do_irreducible(const InstanceDocument& doc, const CliOptions& opts) {
  const ModuleInstance& m = doc.instance;
  const std::vector<Matrix>& gens = !m.s_gens.empty() ? m.s_gens : m.g_gens;
  if (gens.empty()) throw ValidationError("irreducible needs s_gens or g_gens");
  IrreducibilityReport rep = irreducible_test(m.field, m.n, gens,
                                              strategy_from(opts.strategy),
                                              opts.seed, opts.budget);
  Json j;
  j["verb"] = "irreducible";
  if (!m.name.empty()) j["instance"] = m.name;
  j["verdict"] = rep.irreducible ? "irreducible" : "reducible";
  j["strategy"] = rep.strategy;
  if (rep.witness) j["witness"] = subspace_rows(m.field, *rep.witness);
  return {0, std::move(j)};
}

CommandResult do_delta(const InstanceDocument& doc, const CliOptions& opts) {
  const ModuleInstance& m = doc.instance;
  if (m.s_gens.empty()) throw ValidationError("delta needs s_gens");
  AlgebraBasis s = algebra_closure(m.field, m.n, m.s_gens, true);
  DeltaStrategy strat = DeltaStrategy::Auto;
  if (opts.strategy == "exhaustive") strat = DeltaStrategy::Exhaustive;
  if (opts.strategy == "randomized") strat = DeltaStrategy::Randomized;
  DeltaResult d = compute_delta(s, m.n, strat, opts.seed, opts.budget);
  Json j;
  j["verb"] = "delta";
  if (!m.name.empty()) j["instance"] = m.name;
  j["delta"] = d.delta;
  j["exact"] = d.exact;
  j["method"] = d.method;
  j["witness"] = matrix_to_json(d.witness);
  return {0, std::move(j)};
}

CommandResult do_linearize(const InstanceDocument& doc, const CliOptions& opts) {
  const ModuleInstance& m = doc.instance;
  LinearizationCertificate cert = linearize(m, opts.seed, opts.budget);
  return {0, certificate_to_json(cert, m.name)};
}

CommandResult do_verify(const InstanceDocument& doc, const CliOptions& opts) {
  if (opts.cert_path.empty())
    throw ParseError("verify needs --cert <certificate file>");
  Json cert_doc;
  try {
    cert_doc = Json::parse(read_file(opts.cert_path));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid certificate JSON: ") + e.what());
  }
  LinearizationCertificate cert = parse_certificate(cert_doc);
  VerificationResult res = verify_certificate(doc.instance, cert);
  Json j;
  j["verb"] = "verify";
  j["verified"] = res.pass;
  if (!res.pass) j["first_failure"] = res.first_failure;
  return {res.pass ? 0 : 1, std::move(j)};
}

CommandResult do_one_sided(const InstanceDocument& doc, const CliOptions& opts) {
  OneSidedResult res = one_sided(doc.instance, opts.seed, opts.budget);
  Json j = certificate_to_json(res.pipeline.cert, doc.instance.name);
  Json os;
  os["commutant_dim"] = res.t.dim();
  os["commutative"] = res.t.commutative();
  os["division"] = res.division.division;
  os["division_method"] = res.division.method;
  j["one_sided"] = std::move(os);
  return {0, std::move(j)};
}

CommandResult do_group(const InstanceDocument& doc, const CliOptions& opts) {
  GroupActionResult res = group_action(doc.instance, opts.seed, opts.budget);
  return {0, certificate_to_json(res.pipeline.cert, doc.instance.name)};
}

CommandResult do_np(const InstanceDocument& doc, const CliOptions& opts) {
  NPResult res = nesin_poizat(doc.instance, opts.seed, opts.budget);
  Json j = certificate_to_json(res.pipeline.cert, doc.instance.name);
  j["nesin_poizat"] = np_report_to_json(res.report, doc.instance.field);
  return {0, std::move(j)};
}

// expected must be a subtree of actual (objects by key, everything else exact)
bool subset_match(const Json& expected, const Json& actual) {
  if (expected.is_object()) {
    if (!actual.is_object()) return false;
    for (auto it = expected.begin(); it != expected.end(); ++it) {
      if (!actual.contains(it.key())) return false;
      if (!subset_match(it.value(), actual[it.key()])) return false;
    }
    return true;
  }
  return expected == actual;
}

CommandResult run_single(const std::string& verb, const std::string& path,
                         const CliOptions& opts);

CommandResult do_corpus(const std::vector<std::string>& args, const CliOptions& opts) {
  if (args.empty() || args[0] != "run")
    throw ParseError("usage: corpus run --all [--manifest <path>]");
  if (!opts.all) throw ParseError("corpus run requires --all");
  std::string manifest_path =
      opts.manifest.empty() ? std::string("corpus/manifest.json") : opts.manifest;
  Json manifest;
  try {
    manifest = Json::parse(read_file(manifest_path));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid manifest JSON: ") + e.what());
  }
  if (!manifest.contains("entries") || !manifest["entries"].is_array())
    throw ParseError("manifest must carry an 'entries' array");

  std::filesystem::path base = std::filesystem::path(manifest_path).parent_path();

  struct Row {
    std::string name;
    bool pass;
    Json detail;
  };
  std::vector<Row> rows;
  for (const auto& entry : manifest["entries"]) {
    std::string name = entry.at("name").get<std::string>();
    std::string file = (base / entry.at("file").get<std::string>()).string();
    std::string verb = entry.at("verb").get<std::string>();
    Json expect = entry.at("expect");

    CommandResult got = run_single(verb, file, opts);
    bool pass = true;
    if (expect.contains("exit"))
      pass = pass && got.exit_code == expect["exit"].get<int>();
    Json rest = expect;
    rest.erase("exit");
    pass = pass && subset_match(rest, got.document);

    Json detail;
    detail["name"] = name;
    detail["verb"] = verb;
    detail["status"] = pass ? "PASS" : "FAIL";
    detail["exit"] = got.exit_code;
    if (!pass) {
      detail["expected"] = expect;
      detail["got"] = got.document;
    }
    rows.push_back({std::move(name), pass, std::move(detail)});
  }
  std::sort(rows.begin(), rows.end(),
            [](const Row& a, const Row& b) { return a.name < b.name; });

  Json j;
  j["verb"] = "corpus";
  bool all_pass = true;
  Json entries = Json::array();
  for (auto& row : rows) {
    all_pass = all_pass && row.pass;
    entries.push_back(std::move(row.detail));
  }
  j["entries"] = std::move(entries);
  j["all_pass"] = all_pass;
  return {all_pass ? 0 : 1, std::move(j)};
}

CommandResult dispatch(const std::string& verb, const std::vector<std::string>& args,
                       const CliOptions& opts) {
  if (verb == "corpus") return do_corpus(args, opts);
  InstanceDocument doc = load_instance(args);
  if (verb == "centralize") return do_centralize(doc);
  if (verb == "irreducible") return do_irreducible(doc, opts);
  if (verb == "delta") return do_delta(doc, opts);
  if (verb == "linearize") return do_linearize(doc, opts);
  if (verb == "verify") return do_verify(doc, opts);
  if (verb == "corollary-one-sided") return do_one_sided(doc, opts);
  if (verb == "corollary-group") return do_group(doc, opts);
  if (verb == "corollary-np") return do_np(doc, opts);
  throw ParseError("unknown verb '" + verb + "'");
}

CommandResult run_single(const std::string& verb, const std::string& path,
                         const CliOptions& opts) {
  return run_command(verb, {path}, opts);
}

}  // namespace

CommandResult run_command(const std::string& verb,
                          const std::vector<std::string>& args,
                          const CliOptions& opts) {
  try {
    return dispatch(verb, args, opts);
  } catch (const HypothesisViolation& v) {
    Json j;
    j["error"] = "hypothesis_violation";
    j["claim"] = v.claim;
    j["message"] = v.what();
    if (!v.witness.empty()) j["witness"] = v.witness;
    return {2, std::move(j)};
  } catch (const InconclusiveError& e) {
    Json j;
    j["error"] = "inconclusive";
    j["message"] = e.what();
    return {4, std::move(j)};
  } catch (const ParseError& e) {
    Json j;
    j["error"] = "parse";
    j["message"] = e.what();
    return {3, std::move(j)};
  } catch (const ValidationError& e) {
    Json j;
    j["error"] = "validation";
    j["message"] = e.what();
    return {3, std::move(j)};
  } catch (const nlohmann::json::exception& e) {
    Json j;
    j["error"] = "parse";
    j["message"] = e.what();
    return {3, std::move(j)};
  }
}

}  // namespace skewlin
