// tropmeas: command-line front end for the idempotent measure library.
//
// Exit codes: 0 ok, 1 usage, 2 parse or validation error, 3 property violation.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "tropmeas/document.hpp"
#include "tropmeas/monad.hpp"
#include "tropmeas/mutation.hpp"
#include "tropmeas/parallel.hpp"
#include "tropmeas/transport.hpp"
#include "tropmeas/verify.hpp"

namespace {

using namespace tropmeas;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitViolation = 3;

struct InvalidInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Document load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput(fmt::format("cannot read '{}'", path));
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str());
}

// "a=b,c=d" -> {{a, b}, {c, d}}
std::vector<std::pair<std::string, std::string>> parse_assignments(const std::string& text,
                                                                   const char* flag) {
  std::vector<std::pair<std::string, std::string>> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == item.size()) {
      throw InvalidInput(fmt::format("{}: expected key=value, got '{}'", flag, item));
    }
    out.emplace_back(item.substr(0, eq), item.substr(eq + 1));
  }
  return out;
}

std::size_t point_index(const FiniteMetricSpace& space, const std::string& label) {
  if (auto i = space.find(label)) return *i;
  throw InvalidInput(fmt::format("unknown point label '{}'", label));
}

const IdempotentMeasure& base_measure(const Document& doc, const std::string& name) {
  const auto& mu = doc.measure(name);
  if (mu.ground() != doc.space) {
    throw InvalidInput(fmt::format("measure '{}' is nested; this command needs a measure on "
                                   "the points",
                                   name));
  }
  return mu;
}

void print_result(const Document& doc, const std::string& name, const IdempotentMeasure& m) {
  Document out{doc.space, {{name, m}}};
  std::cout << print_document(out);
}

int cmd_dist(const std::string& file, const std::string& a, const std::string& b, bool oracle) {
  const Document doc = load(file);
  const auto& m1 = doc.measure(a);
  const auto& m2 = doc.measure(b);
  if (m1.ground() != m2.ground()) {
    throw InvalidInput(fmt::format("'{}' and '{}' are at different nesting levels", a, b));
  }
  const double h = H(m1, m2);
  const double rho = rho_I(m1, m2);
  const double diam = diameter(*m1.ground());
  std::cout << "H = " << format_number(h) << ", rho_I = " << format_number(rho);
  if (h > diam) std::cout << " (truncated at diam = " << format_number(diam) << ")";
  std::cout << "\n";
  if (oracle) {
    const double o = H_oracle(m1, m2);
    std::cout << "H_oracle = " << format_number(o) << (o == h ? " (agrees)" : " (MISMATCH)")
              << "\n";
    if (o != h) return kExitViolation;
  }
  return kExitOk;
}

int cmd_flatten(const std::string& file, const std::string& name) {
  const Document doc = load(file);
  print_result(doc, name, flatten(doc.measure(name)));
  return kExitOk;
}

int cmd_push(const std::string& file, const std::string& name, const std::string& map) {
  const Document doc = load(file);
  const auto& mu = base_measure(doc, name);
  PointMap f{doc.space, doc.space, std::vector<std::optional<std::size_t>>(doc.space->size())};
  for (const auto& [from, to] : parse_assignments(map, "--map")) {
    f.image[point_index(*doc.space, from)] = point_index(*doc.space, to);
  }
  print_result(doc, name, pushforward(f, mu));
  return kExitOk;
}

int cmd_eval(const std::string& file, const std::string& name, const std::string& phi_text) {
  const Document doc = load(file);
  const auto& mu = base_measure(doc, name);
  std::vector<std::optional<double>> values(doc.space->size());
  for (const auto& [label, value] : parse_assignments(phi_text, "--phi")) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != value.size()) throw InvalidInput(fmt::format("--phi: '{}' is not a number", value));
    values[point_index(*doc.space, label)] = v;
  }
  std::vector<double> phi;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!values[i]) {
      throw InvalidInput(fmt::format("--phi: no value for point '{}'", doc.space->label(i)));
    }
    phi.push_back(*values[i]);
  }
  std::cout << format_number(evaluate(mu, FunctionOnSpace(doc.space, std::move(phi)))) << "\n";
  return kExitOk;
}

struct VerifyArgs {
  std::string which;
  CampaignConfig cfg;
  bool cases_set = false;
  std::string mutate = "none";
  bool json = false;
};

int cmd_verify(VerifyArgs args) {
  if (!args.cases_set) {
    if (args.which == "lemma3") args.cfg.cases = 100;
    if (args.which == "axioms") args.cfg.cases = 1000;
  }
  static const std::map<std::string, Defect> defects{
      {"none", Defect::kNone},
      {"drop-abs", Defect::kDropAbsInCost},
      {"skip-truncation", Defect::kSkipTruncation},
      {"skip-columns", Defect::kSkipColumnWitnesses},
  };
  ScopedDefect defect(defects.at(args.mutate));
  const auto reports = run_campaign(args.which, args.cfg);

  bool ok = true;
  for (const auto& r : reports) ok = ok && r.ok();
  if (args.json) {
    std::cout << report_json(reports) << "\n";
  } else {
    for (const auto& r : reports) {
      std::cout << (r.ok() ? "PASS " : "FAIL ") << report_text(r) << "\n";
    }
    for (const auto& r : reports) {
      if (r.ok()) continue;
      const auto& f = r.failures.front();
      std::cout << "\ncounterexample (" << r.lemma << ", case " << f.case_index << "):\n"
                << "  " << f.detail << "\n"
                << "  lhs = " << format_number(f.lhs) << ", rhs = " << format_number(f.rhs)
                << ", gap = " << format_number(f.gap) << "\n"
                << f.inputs;
    }
  }
  return ok ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* env = std::getenv("TROPMEAS_THREADS")) {
    try {
      const long n = std::stol(env);
      if (n > 0) set_max_threads(static_cast<std::size_t>(n));
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring TROPMEAS_THREADS='" << env << "'\n";
    }
  }

  CLI::App app{"Idempotent (max-plus) probability measures on finite metric spaces"};
  app.require_subcommand(1);

  std::string file, m1, m2, map, phi;
  bool oracle = false;

  auto* dist = app.add_subcommand("dist", "rho_I and H between two measures");
  dist->add_flag("--oracle", oracle, "also run the exhaustive oracle and compare");
  dist->add_option("FILE", file)->required();
  dist->add_option("M1", m1)->required();
  dist->add_option("M2", m2)->required();

  auto* flat = app.add_subcommand("flatten", "flatten a nested measure one level");
  flat->add_option("FILE", file)->required();
  flat->add_option("M", m1)->required();

  auto* push = app.add_subcommand("push", "pushforward under a point map");
  push->add_option("FILE", file)->required();
  push->add_option("M", m1)->required();
  push->add_option("--map", map, "point map, e.g. a=b,c=d")->required();

  auto* eval = app.add_subcommand("eval", "evaluate a measure on a function");
  eval->add_option("FILE", file)->required();
  eval->add_option("M", m1)->required();
  eval->add_option("--phi", phi, "function values, e.g. a=1,b=5")->required();

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run a randomized property campaign");
  verify->add_option("CAMPAIGN", va.which)
      ->required()
      ->check(CLI::IsMember({"lemma1", "lemma2", "lemma3", "axioms", "oracle", "monad"}));
  verify->add_option("--space-size", va.cfg.space_size, "points per space (0: random 3-6)");
  verify->add_option_function<std::size_t>(
      "--cases", [&](std::size_t n) { va.cfg.cases = n, va.cases_set = true; }, "case count");
  verify->add_option("--seed", va.cfg.seed, "campaign seed");
  verify->add_option("--tol", va.cfg.tol, "tolerance for nested-metric comparisons");
  verify->add_option("--samples", va.cfg.samples, "lemma3: sampled measures per case");
  verify->add_option("--max-extras", va.cfg.max_extras, "lemma2: largest extras count");
  verify->add_option("--mutate", va.mutate, "enable a deliberate defect")
      ->check(CLI::IsMember({"none", "drop-abs", "skip-truncation", "skip-columns"}));
  verify->add_flag("--json", va.json, "machine-readable report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*dist) return cmd_dist(file, m1, m2, oracle);
    if (*flat) return cmd_flatten(file, m1);
    if (*push) return cmd_push(file, m1, map);
    if (*eval) return cmd_eval(file, m1, phi);
    if (*verify) return cmd_verify(va);
  } catch (const DocumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitUsage;
}
