#include "qcpat/cli.hpp"

#include "qcpat/action.hpp"
#include "qcpat/identities.hpp"
#include "qcpat/patterns.hpp"
#include "qcpat/scalar_io.hpp"
#include "qcpat/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcpat {
namespace {

std::string hex16(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  out << text;
  if (!out) throw std::runtime_error("failed writing output file: " + path);
}

// Routes a finished artifact: to the --out file when one was requested,
// otherwise to the standard output stream.
void deliver(const std::string& text, const std::string& outFile, std::ostream& out) {
  if (outFile.empty()) {
    out << text;
  } else {
    write_file(outFile, text);
  }
}

Signature load_signature(const std::string& path) {
  return signature_from_json(read_file(path));
}

CPattern load_pattern(const Signature& sig, const std::string& path) {
  const PatternText pt = pattern_from_text(read_file(path));
  const CPattern p = normalize(sig, pt.pattern);
  const std::vector<std::string> problems = validate(sig, p);
  if (!problems.empty()) {
    throw std::invalid_argument("invalid pattern: " + problems.front());
  }
  return p;
}

std::vector<double> parse_samples(const std::string& list) {
  std::vector<double> out;
  std::string item;
  std::istringstream in(list);
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed v-sample: \"" + item + "\"");
    }
    while (used < item.size() && (item[used] == ' ' || item[used] == '\t')) ++used;
    if (used != item.size()) {
      throw std::invalid_argument("malformed v-sample: \"" + item + "\"");
    }
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty v-sample list");
  return out;
}

GenSymbol make_symbol(const std::string& gen, int index) {
  if (gen == "e") return GenSymbol::e(index);
  if (gen == "f") return GenSymbol::f(index);
  if (gen == "h") return GenSymbol::h(index);
  if (gen == "c") return GenSymbol::c();
  throw std::invalid_argument("unknown generator family: " + gen);
}

std::string render_lincomb(const LinComb& x) {
  if (x.is_zero()) return "zero vector\n";
  std::string out;
  for (const auto& [p, c] : x.terms) {
    out += scalar_to_string(c) + " * " + pattern_brief(p) + "\n";
  }
  return out;
}

// Shared flag bundle; each subcommand registers the subset it consumes.
struct CliOpts {
  std::string signatureFile;
  std::string patternFile;
  std::string gen = "e";
  int index = 0;
  int depth = 3;
  int window = 3;
  std::string mode = "exact";
  std::string vSamples = "1.1,0.9";
  double tolerance = 1e-8;
  std::uint64_t seed = 12345;
  int trials = 20;
  std::string outFile;
  std::string suite = "all";
  bool mutate = false;
  bool flipOrientation = false;
};

int cmd_basis(const CliOpts& o, std::ostream& out) {
  const Signature sig = load_signature(o.signatureFile);
  if (o.depth < 1) throw std::invalid_argument("depth must be at least 1");
  const std::vector<CPattern> basis = enumerate_basis(sig, o.depth);
  std::string text = "basis sig=" + hex16(signature_digest(sig)) +
                     " N=" + std::to_string(o.depth) +
                     " count=" + std::to_string(basis.size()) + "\n";
  for (const CPattern& p : basis) text += pattern_brief(p) + "\n";
  deliver(text, o.outFile, out);
  return 0;
}

int cmd_act(const CliOpts& o, std::ostream& out) {
  const Signature sig = load_signature(o.signatureFile);
  const CPattern p = load_pattern(sig, o.patternFile);
  std::string text;
  if (o.gen == "e") {
    text = render_lincomb(apply_e(sig, o.index, p));
  } else if (o.gen == "f") {
    text = render_lincomb(apply_f(sig, o.index, p));
  } else if (o.gen == "h" || o.gen == "c") {
    const WeightValue w = o.gen == "h" ? weight(sig, p, o.index) : c_eigenvalue(sig);
    text = w.is_zero() ? "zero vector\n"
                       : "(" + w.to_string() + ") * " + pattern_brief(p) + "\n";
  } else {
    throw std::invalid_argument("unknown generator family: " + o.gen);
  }
  deliver(text, o.outFile, out);
  return 0;
}

int cmd_matrix(const CliOpts& o, std::ostream& out) {
  const Signature sig = load_signature(o.signatureFile);
  if (o.depth < 1) throw std::invalid_argument("depth must be at least 1");
  const GenSymbol g = make_symbol(o.gen, o.index);
  const GenMatrix M = build_matrix(sig, g, o.depth);
  std::string text;
  if (o.mode == "exact") {
    text = matrix_to_text(M);
  } else {
    text = matrix_to_text_numeric(M, parse_samples(o.vSamples).front());
  }
  deliver(text, o.outFile, out);
  return 0;
}

int cmd_verify(const CliOpts& o, std::ostream& out) {
  CheckConfig cfg = default_config();
  cfg.N = o.depth;
  cfg.window = o.window;
  cfg.mode = o.mode == "exact" ? CheckMode::Exact : CheckMode::Numeric;
  cfg.vSamples = parse_samples(o.vSamples);
  cfg.tolerance = o.tolerance;
  cfg.seed = o.seed;
  cfg.trials = o.trials;
  if (o.flipOrientation) cfg.orientation = Orientation::Flipped;
  if (!o.signatureFile.empty()) {
    cfg.battery.clear();
    cfg.battery.push_back({"custom", load_signature(o.signatureFile)});
  }
  validate_config(cfg);
  const Report rep = run_suite(o.suite, cfg);
  out << report_to_text(rep);
  if (!o.outFile.empty()) write_file(o.outFile, report_to_json(rep));
  return rep.all_passed() ? 0 : 1;
}

int cmd_identities(const CliOpts& o, std::ostream& out, bool trialsGiven) {
  CampaignPlan plan = default_campaign_plan();
  plan.seed = o.seed;
  if (trialsGiven) {
    if (o.trials <= 0) throw std::invalid_argument("trials must be positive");
    for (CampaignItemPlan& item : plan.items) item.configs = o.trials;
  }
  if (o.mutate) plan.debugMutation = Mutation{0, 1};
  const CampaignReport rep = run_campaign(plan);

  nlohmann::ordered_json j;
  j["pass"] = rep.pass;
  j["items"] = nlohmann::ordered_json::array();
  for (const CampaignItemResult& item : rep.items) {
    nlohmann::ordered_json ji;
    ji["identity"] = identity_name(item.id);
    ji["size"] = item.size;
    ji["trials"] = item.configs;
    ji["status"] = item.failures == 0 ? "pass" : "fail";
    if (!item.firstWitness.empty()) ji["counterexample"] = item.firstWitness;
    ji["millis"] = item.millis;
    j["items"].push_back(ji);
  }
  j["mutations"] = nlohmann::ordered_json::array();
  for (const MutationResult& m : rep.mutations) {
    nlohmann::ordered_json jm;
    jm["identity"] = identity_name(m.id);
    jm["size"] = m.size;
    jm["site"] = m.site;
    jm["delta"] = m.delta;
    jm["caught"] = m.caught;
    jm["samples-used"] = m.samplesUsed;
    j["mutations"].push_back(jm);
  }
  deliver(j.dump(2) + "\n", o.outFile, out);
  return rep.pass ? 0 : 1;
}

int cmd_series(const CliOpts& o, std::ostream& out) {
  const Signature sig = load_signature(o.signatureFile);
  if (o.trials < 0) throw std::invalid_argument("trials must be non-negative");
  const CPattern p = o.patternFile.empty() ? highest_weight(sig)
                                           : load_pattern(sig, o.patternFile);
  std::string text = "series sig=" + hex16(signature_digest(sig)) +
                     " pattern=" + pattern_brief(p) +
                     " T=" + std::to_string(o.trials) + "\n";
  SeriesPartial last;
  for (int t = 0; t <= o.trials; ++t) {
    last = series_I_partial(sig, p, t);
    text += "T=" + std::to_string(t) + " sum=" + last.value.to_string() +
            " stabilized=" + (last.stabilized ? "yes" : "no") + "\n";
  }
  text += last.stabilized
              ? "verdict: stabilized value " + last.value.to_string() + "\n"
              : "verdict: divergent through T=" + std::to_string(o.trials) + "\n";
  deliver(text, o.outFile, out);
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CliOpts o;
  CLI::App app{"Pattern-basis module calculator and relation verifier"};
  app.require_subcommand(1);

  CLI::App* basis = app.add_subcommand(
      "basis", "List the stabilized-window basis with a count header");
  basis->add_option("--signature", o.signatureFile, "Signature file (JSON)")->required();
  basis->add_option("--depth", o.depth, "Window depth N (default 3)");
  basis->add_option("--out", o.outFile, "Write the listing to a file");

  CLI::App* act = app.add_subcommand(
      "act", "Apply one generator to a pattern and print the exact result");
  act->add_option("--signature", o.signatureFile, "Signature file (JSON)")->required();
  act->add_option("--gen", o.gen, "Generator family: e, f, h, or c")
      ->required()
      ->check(CLI::IsMember({"e", "f", "h", "c"}));
  act->add_option("--index", o.index, "Generator index k (default 0)");
  act->add_option("--pattern", o.patternFile, "Pattern file")->required();
  act->add_option("--out", o.outFile, "Write the result to a file");

  CLI::App* matrix = app.add_subcommand(
      "matrix", "Export one generator matrix on the window basis");
  matrix->add_option("--signature", o.signatureFile, "Signature file (JSON)")->required();
  matrix->add_option("--gen", o.gen, "Generator family: e, f, h, or c")
      ->required()
      ->check(CLI::IsMember({"e", "f", "h", "c"}));
  matrix->add_option("--index", o.index, "Generator index k (default 0)");
  matrix->add_option("--depth", o.depth, "Window depth N (default 3)");
  matrix->add_option("--mode", o.mode, "exact or numeric (default exact)")
      ->check(CLI::IsMember({"exact", "numeric"}));
  matrix->add_option("--v-samples", o.vSamples,
                     "Comma-separated v values; numeric export uses the first");
  matrix->add_option("--out", o.outFile, "Write the matrix to a file");

  CLI::App* verify = app.add_subcommand(
      "verify", "Run a relation/proposition suite over the signature battery");
  verify->add_option("suite", o.suite,
                     "Suite: all, cartan, serre, hw, locality, restricted, gl, "
                     "singular, or classical (default all)");
  verify->add_option("--signature", o.signatureFile,
                     "Check a single signature file instead of the battery");
  verify->add_option("--depth", o.depth, "Window depth N (default 3)");
  verify->add_option("--window", o.window, "Generator-index window (default 3)");
  verify->add_option("--mode", o.mode, "exact or numeric (default exact)")
      ->check(CLI::IsMember({"exact", "numeric"}));
  verify->add_option("--v-samples", o.vSamples, "Comma-separated v values");
  verify->add_option("--tolerance", o.tolerance, "Numeric comparison tolerance");
  verify->add_option("--seed", o.seed, "Seed for all randomized checks");
  verify->add_option("--trials", o.trials, "Randomized samples per check");
  verify->add_flag("--flip-orientation", o.flipOrientation,
                   "Negative control: run with the rank-1 orientation flipped");
  verify->add_option("--out", o.outFile, "Write the JSON report to a file");

  CLI::App* identities = app.add_subcommand(
      "identities", "Run the bracket-identity campaign with mutation controls");
  identities->add_option("--seed", o.seed, "Campaign seed");
  CLI::Option* trialsOpt = identities->add_option(
      "--trials", o.trials, "Override the per-identity sample count");
  identities->add_flag("--mutate", o.mutate,
                       "Debug control: corrupt every identity and expect failure");
  identities->add_option("--out", o.outFile, "Write the JSON report to a file");

  CLI::App* series = app.add_subcommand(
      "series", "Tabulate weight-series partial sums with a stabilization verdict");
  series->add_option("--signature", o.signatureFile, "Signature file (JSON)")->required();
  series->add_option("--pattern", o.patternFile,
                     "Pattern file (default: the highest-weight pattern)");
  series->add_option("--trials", o.trials, "Largest partial-sum cutoff T (default 20)");
  series->add_option("--out", o.outFile, "Write the table to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (basis->parsed()) return cmd_basis(o, out);
    if (act->parsed()) return cmd_act(o, out);
    if (matrix->parsed()) return cmd_matrix(o, out);
    if (verify->parsed()) return cmd_verify(o, out);
    if (identities->parsed()) return cmd_identities(o, out, trialsOpt->count() > 0);
    if (series->parsed()) return cmd_series(o, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "error: no subcommand selected\n";
  return 2;
}

}  // namespace qcpat
