#include "tropmeas/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <array>
#include <limits>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>

#include <fmt/format.h>
#include <json.hpp>

#include "tropmeas/document.hpp"
#include "tropmeas/monad.hpp"
#include "tropmeas/parallel.hpp"
#include "tropmeas/transport.hpp"

namespace tropmeas {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Rng case_rng(std::uint64_t seed, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

std::size_t space_size(const CampaignConfig& cfg, Rng& rng) {
  return cfg.space_size > 0 ? cfg.space_size : uniform_index(rng, 3, 6);
}

SpacePtr root_space(SpacePtr s) {
  while (s->level() > 0) s = s->base();
  return s;
}

using NamedMeasures = std::vector<std::pair<std::string, IdempotentMeasure>>;

std::string dump(NamedMeasures measures) {
  Document doc{root_space(measures.front().second.ground()), std::move(measures)};
  std::sort(doc.measures.begin(), doc.measures.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return print_document(doc, 0);
}

// 0 when structurally equal; otherwise the largest weight gap, or inf when
// the supports differ.
double measure_gap(const IdempotentMeasure& a, const IdempotentMeasure& b) {
  if (a.ground() != b.ground() || a.size() != b.size()) return kInf;
  double gap = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.entry(i).atom != b.entry(i).atom) return kInf;
    gap = std::max(gap, std::abs(a.entry(i).weight - b.entry(i).weight));
  }
  return gap;
}

// One property instance of a case, plus the inputs to dump if it fails.
struct Observation {
  CaseCheck check;
  std::function<std::string()> inputs;
};

struct Property {
  std::string name;
  double tol;
};

// Runs `cases` cases; each returns one Observation per property, in order.
std::vector<LemmaReport> run_cases(
    const std::vector<Property>& properties, std::size_t cases,
    const std::function<std::vector<Observation>(std::size_t)>& one_case) {
  struct Slot {
    std::vector<CaseCheck> checks;
    std::vector<std::optional<std::string>> inputs;
  };
  std::vector<Slot> slots(cases);
  parallel_for(cases, [&](std::size_t i) {
    auto obs = one_case(i);
    if (obs.size() != properties.size()) throw std::logic_error("campaign: property count mismatch");
    Slot& slot = slots[i];
    for (std::size_t p = 0; p < obs.size(); ++p) {
      const bool failed = !(obs[p].check.violation <= properties[p].tol);
      slot.inputs.push_back(failed ? std::optional(obs[p].inputs()) : std::nullopt);
      slot.checks.push_back(std::move(obs[p].check));
    }
  });

  std::vector<LemmaReport> reports;
  for (std::size_t p = 0; p < properties.size(); ++p) {
    LemmaReport r{properties[p].name, cases, {}, 0.0, properties[p].tol};
    for (std::size_t i = 0; i < cases; ++i) {
      const CaseCheck& c = slots[i].checks[p];
      r.max_violation = std::max(r.max_violation, c.violation);
      if (std::isnan(c.violation)) r.max_violation = kInf;
      if (slots[i].inputs[p]) {
        r.failures.push_back({i, *slots[i].inputs[p], c.lhs, c.rhs, c.violation, c.detail});
      }
    }
    reports.push_back(std::move(r));
  }
  return reports;
}

Observation observe(CaseCheck check, std::function<std::string()> inputs) {
  return {std::move(check), std::move(inputs)};
}

FunctionOnSpace map_values(const FunctionOnSpace& f, const std::function<double(double)>& g) {
  std::vector<double> v(f.values().begin(), f.values().end());
  for (auto& x : v) x = g(x);
  return FunctionOnSpace(f.space(), std::move(v));
}

std::vector<Observation> axiom_case(const SpacePtr& space, Rng& rng) {
  const double diam = diameter(*space);
  const IdempotentMeasure mu = gen_measure(space, 4, rng);
  const FunctionOnSpace phi = gen_function(space, rng);
  const FunctionOnSpace psi = gen_function(space, rng);
  const double c = std::uniform_real_distribution<double>(-10.0, 10.0)(rng);

  std::vector<Observation> out;
  auto inputs = [=] { return dump({{"mu", mu}}) + fmt::format("c = {}\n", c); };

  {
    const FunctionOnSpace constant(space, std::vector<double>(space->size(), c));
    const double lhs = evaluate(mu, constant);
    out.push_back(observe({lhs, c, std::abs(lhs - c), "mu(c) = c"}, inputs));
  }
  {
    const double lhs = evaluate(mu, map_values(phi, [c](double v) { return v + c; }));
    const double rhs = evaluate(mu, phi) + c;
    out.push_back(observe({lhs, rhs, std::abs(lhs - rhs), "mu(phi + c) = mu(phi) + c"}, inputs));
  }
  {
    std::vector<double> mx(space->size());
    for (std::size_t i = 0; i < mx.size(); ++i) mx[i] = std::max(phi(i), psi(i));
    const double lhs = evaluate(mu, FunctionOnSpace(space, std::move(mx)));
    const double rhs = std::max(evaluate(mu, phi), evaluate(mu, psi));
    out.push_back(
        observe({lhs, rhs, std::abs(lhs - rhs), "mu(phi max psi) = mu(phi) max mu(psi)"}, inputs));
  }

  // Metric triple; nu coincides with mu now and then so identity is exercised.
  const bool twin = std::bernoulli_distribution(0.1)(rng);
  const IdempotentMeasure nu = twin ? mu : gen_measure(space, 4, rng);
  const IdempotentMeasure kappa = gen_measure(space, 4, rng);
  const std::array<const IdempotentMeasure*, 3> t{&mu, &nu, &kappa};
  auto triple = [=] { return dump({{"mu", mu}, {"nu", nu}, {"kappa", kappa}}); };

  CaseCheck sym{0, 0, 0, "rho(a, b) = rho(b, a)"};
  CaseCheck ident{0, 0, 0, "rho(a, b) = 0 iff a = b"};
  CaseCheck nonneg{0, 0, 0, "rho >= 0"};
  CaseCheck tri{0, 0, -kInf, "rho(a, c) <= rho(a, b) + rho(b, c)"};
  CaseCheck bound{0, diam, -kInf, "rho <= diam"};
  double d[3][3];
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) d[a][b] = rho_I(*t[a], *t[b]);
  }
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      if (const double g = std::abs(d[a][b] - d[b][a]); g > sym.violation) {
        sym = {d[a][b], d[b][a], g, sym.detail};
      }
      const bool zero = d[a][b] == 0.0;
      const bool equal = *t[a] == *t[b];
      if (zero != equal) ident = {d[a][b], equal ? 1.0 : 0.0, 1.0, ident.detail};
      if (-d[a][b] > nonneg.violation) nonneg = {d[a][b], 0.0, -d[a][b], nonneg.detail};
      if (d[a][b] - diam > bound.violation) bound = {d[a][b], diam, d[a][b] - diam, bound.detail};
      for (int m = 0; m < 3; ++m) {
        const double g = d[a][b] - (d[a][m] + d[m][b]);
        if (g > tri.violation) tri = {d[a][b], d[a][m] + d[m][b], g, tri.detail};
      }
    }
  }
  tri.violation = std::max(tri.violation, 0.0);
  bound.violation = std::max(bound.violation, 0.0);
  for (auto* check : {&sym, &ident, &nonneg, &tri, &bound}) out.push_back(observe(*check, triple));
  return out;
}

const std::vector<Property>& axiom_properties() {
  static const std::vector<Property> props{
      {"axioms/constant", 0.0},        {"axioms/shift", kAlgebraTolerance},
      {"axioms/max", 0.0},             {"metric/symmetry", 0.0},
      {"metric/identity", 0.0},        {"metric/nonnegative", 0.0},
      {"metric/triangle", kNestedTolerance}, {"metric/bounded", 0.0},
  };
  return props;
}

}  // namespace

SpacePtr gen_space(std::size_t n, Rng& rng) {
  if (n == 0) throw std::invalid_argument("gen_space: need at least one point");
  std::uniform_real_distribution<double> coord(0.0, 1.0);
  std::vector<std::pair<double, double>> pts(n);
  for (auto& p : pts) p = {coord(rng), coord(rng)};
  std::vector<std::string> labels(n);
  std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    labels[i] = fmt::format("p{}", i);
    for (std::size_t j = 0; j < n; ++j) {
      dist[i][j] = std::abs(pts[i].first - pts[j].first) + std::abs(pts[i].second - pts[j].second);
    }
  }
  // Symmetrize exactly (|a - b| already is, this guards the sum order).
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) dist[i][j] = dist[j][i];
  }
  return FiniteMetricSpace::create(std::move(labels), dist);
}

IdempotentMeasure gen_measure(const SpacePtr& space, std::size_t max_support, Rng& rng,
                              double max_weight) {
  if (max_support < 1) throw std::invalid_argument("gen_measure: max_support must be >= 1");
  const std::size_t n = space->size();
  const std::size_t k = uniform_index(rng, 1, std::min(max_support, n));
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::shuffle(idx.begin(), idx.end(), rng);

  const double w = max_weight > 0.0 ? max_weight : 2.0 * diameter(*space);
  std::uniform_real_distribution<double> weight(-w, 0.0);
  std::vector<Entry> entries(k);
  for (std::size_t i = 0; i < k; ++i) entries[i] = {idx[i], weight(rng)};
  entries[uniform_index(rng, 0, k - 1)].weight = 0.0;
  return make_measure(space, std::move(entries));
}

IdempotentMeasure gen_measure(const SpacePtr& space, std::size_t max_support,
                              std::uint64_t seed) {
  Rng rng(seed);
  return gen_measure(space, max_support, rng);
}

FunctionOnSpace gen_function(const SpacePtr& space, Rng& rng) {
  const double scale = std::max(1.0, 2.0 * diameter(*space));
  std::uniform_real_distribution<double> value(-scale, scale);
  std::vector<double> v(space->size());
  for (auto& x : v) x = value(rng);
  return FunctionOnSpace(space, std::move(v));
}

CaseCheck check_lemma1(const IdempotentMeasure& m1, const IdempotentMeasure& m2) {
  const double lhs = rho_I(m1, m2);
  const double rhs = rho_I(flatten(m1), flatten(m2));
  return {lhs, rhs, rhs - lhs, "rho_I2(M1, M2) >= rho_I(flatten M1, flatten M2)"};
}

CaseCheck check_lemma2(const IdempotentMeasure& mu, std::size_t x0, std::size_t groups,
                       std::size_t extras, std::uint64_t seed) {
  const auto& ground = mu.ground();
  const IdempotentMeasure n = sample_psi_preimage(mu, groups, seed, extras);
  if (const double g = measure_gap(flatten(n), mu); g != 0.0) {
    return {0.0, 0.0, g, "sampled preimage does not flatten back to mu"};
  }

  std::vector<IdempotentMeasure> atoms(n.ground()->points().begin(), n.ground()->points().end());
  atoms.push_back(dirac(ground, x0));
  const SpacePtr lifted = lift(ground, atoms);
  const IdempotentMeasure n_lifted = reembed(n, lifted);

  const double lhs = rho_I(mu, dirac(ground, x0));
  const double rhs = rho_I(unit_in(lifted, x0), n_lifted);
  return {lhs, rhs, std::abs(lhs - rhs),
          fmt::format("rho_I(mu, delta_x0) = rho_I2(delta_delta_x0, N); x0 = {}, groups = {}, "
                      "extras = {}, N = {}",
                      ground->label(x0), groups, extras, describe(n))};
}

CaseCheck check_lemma3(const IdempotentMeasure& mu, std::size_t sample_count,
                       std::uint64_t seed) {
  const auto& ground = mu.ground();
  const double eps = dist_to_unit_image(mu);

  Rng rng(seed);
  std::vector<IdempotentMeasure> candidates;
  candidates.reserve(ground->size() + sample_count);
  for (std::size_t x = 0; x < ground->size(); ++x) candidates.push_back(dirac(ground, x));
  for (std::size_t i = 0; i < sample_count; ++i) {
    candidates.push_back(gen_measure(ground, ground->size(), rng));
  }
  const SpacePtr lifted = lift(ground, candidates);
  const IdempotentMeasure image = map_unit(mu, lifted);

  CaseCheck worst{kInf, eps, -kInf, ""};
  for (std::size_t p = 0; p < lifted->size(); ++p) {
    const double d = rho_I(image, dirac(lifted, p));
    if (eps - d > worst.violation) {
      worst = {d, eps, eps - d,
               fmt::format("rho_I2(I(eta)(mu), delta_nu) >= eps; nu = {}", lifted->label(p))};
    }
  }
  worst.violation = std::max(worst.violation, 0.0);
  return worst;
}

std::vector<LemmaReport> check_axioms(const SpacePtr& space, std::size_t cases,
                                      std::uint64_t seed) {
  return run_cases(axiom_properties(), cases, [&](std::size_t i) {
    Rng rng = case_rng(seed, i);
    return axiom_case(space, rng);
  });
}

LemmaReport run_oracle_campaign(const CampaignConfig& cfg) {
  return run_cases({{"oracle", 0.0}}, cfg.cases, [&](std::size_t i) {
    Rng rng = case_rng(cfg.seed, i);
    const SpacePtr x = gen_space(space_size(cfg, rng), rng);
    const std::size_t s = std::min<std::size_t>(cfg.max_support, 4);
    const IdempotentMeasure m1 = gen_measure(x, s, rng);
    const IdempotentMeasure m2 = gen_measure(x, s, rng);
    const double h = H(m1, m2);
    const double o = H_oracle(m1, m2);
    const double gap = h == o ? 0.0 : std::abs(h - o);
    std::vector<Observation> out;
    out.push_back(observe({h, o, gap, "H = H_oracle"},
                          [=] { return dump({{"mu1", m1}, {"mu2", m2}}); }));
    return out;
  }).front();
}

LemmaReport run_lemma1_campaign(const CampaignConfig& cfg) {
  return run_cases({{"lemma1", cfg.tol}}, cfg.cases, [&](std::size_t i) {
    Rng rng = case_rng(cfg.seed, i);
    const SpacePtr x = gen_space(space_size(cfg, rng), rng);
    std::vector<IdempotentMeasure> pool;
    for (std::size_t k = 0; k < 2 * cfg.max_outer; ++k) {
      pool.push_back(gen_measure(x, cfg.max_inner, rng));
    }
    const SpacePtr lifted = lift(x, pool);
    const IdempotentMeasure m1 = gen_measure(lifted, cfg.max_outer, rng);
    const IdempotentMeasure m2 = gen_measure(lifted, cfg.max_outer, rng);
    std::vector<Observation> out;
    out.push_back(
        observe(check_lemma1(m1, m2), [=] { return dump({{"M1", m1}, {"M2", m2}}); }));
    return out;
  }).front();
}

LemmaReport run_lemma2_campaign(const CampaignConfig& cfg) {
  return run_cases({{"lemma2", cfg.tol}}, cfg.cases, [&](std::size_t i) {
    Rng rng = case_rng(cfg.seed, i);
    const SpacePtr x = gen_space(space_size(cfg, rng), rng);
    const IdempotentMeasure mu = gen_measure(x, cfg.max_support, rng);
    const std::size_t x0 = uniform_index(rng, 0, x->size() - 1);
    const std::size_t groups = uniform_index(rng, 1, mu.size());
    const std::size_t extras = uniform_index(rng, 0, cfg.max_extras);
    const std::uint64_t seed = rng();
    std::vector<Observation> out;
    out.push_back(observe(check_lemma2(mu, x0, groups, extras, seed),
                          [=] { return dump({{"mu", mu}}); }));
    return out;
  }).front();
}

LemmaReport run_lemma3_campaign(const CampaignConfig& cfg) {
  return run_cases({{"lemma3", cfg.tol}}, cfg.cases, [&](std::size_t i) {
    Rng rng = case_rng(cfg.seed, i);
    const SpacePtr x = gen_space(space_size(cfg, rng), rng);
    IdempotentMeasure mu = gen_measure(x, cfg.max_support, rng);
    // Only measures off the unit image say anything; a support of two or
    // more points is off it.
    for (int tries = 0; dist_to_unit_image(mu) <= 0.0 && tries < 1000; ++tries) {
      mu = gen_measure(x, cfg.max_support, rng);
    }
    const std::uint64_t seed = rng();
    std::vector<Observation> out;
    out.push_back(
        observe(check_lemma3(mu, cfg.samples, seed), [=] { return dump({{"mu", mu}}); }));
    return out;
  }).front();
}

std::vector<LemmaReport> run_axioms_campaign(const CampaignConfig& cfg) {
  return run_cases(axiom_properties(), cfg.cases, [&](std::size_t i) {
    Rng rng = case_rng(cfg.seed, i);
    const SpacePtr x = gen_space(space_size(cfg, rng), rng);
    return axiom_case(x, rng);
  });
}

std::vector<LemmaReport> run_monad_campaign(const CampaignConfig& cfg) {
  const std::vector<Property> props{
      {"monad/flatten-unit", 0.0},       {"monad/flatten-map-unit", 0.0},
      {"monad/flatten-definitional", kAlgebraTolerance}, {"monad/flatten-support", 0.0},
      {"monad/preimage", 0.0},
  };
  return run_cases(props, cfg.cases, [&](std::size_t i) {
    Rng rng = case_rng(cfg.seed, i);
    const SpacePtr x = gen_space(space_size(cfg, rng), rng);
    const IdempotentMeasure mu = gen_measure(x, cfg.max_support, rng);
    std::vector<IdempotentMeasure> pool;
    for (std::size_t k = 0; k < 2 * cfg.max_outer; ++k) {
      pool.push_back(gen_measure(x, cfg.max_inner, rng));
    }
    const SpacePtr lifted = lift(x, pool);
    const IdempotentMeasure m = gen_measure(lifted, cfg.max_outer, rng);
    const FunctionOnSpace phi = gen_function(x, rng);
    const std::size_t groups = uniform_index(rng, 1, mu.size());
    const std::size_t extras = uniform_index(rng, 0, cfg.max_extras);
    const std::uint64_t seed = rng();

    auto with_mu = [=] { return dump({{"mu", mu}}); };
    auto with_m = [=] { return dump({{"M", m}}); };
    std::vector<Observation> out;

    out.push_back(observe({0, 0, measure_gap(flatten(unit_of(mu)), mu), "flatten(delta_mu) = mu"},
                          with_mu));
    out.push_back(observe(
        {0, 0, measure_gap(flatten(map_unit(mu)), mu), "flatten(I(eta)(mu)) = mu"}, with_mu));

    const IdempotentMeasure flat = flatten(m);
    CaseCheck def{0, 0, -kInf, "flatten(M)(phi) = M(phi_bar)"};
    auto compare = [&](const FunctionOnSpace& f) {
      const double lhs = evaluate(flat, f);
      const double rhs = flatten_definitional(m, f);
      if (std::abs(lhs - rhs) > def.violation) def = {lhs, rhs, std::abs(lhs - rhs), def.detail};
    };
    compare(phi);
    const double depth = 4.0 * diameter(*x) + 1.0;
    for (std::size_t p = 0; p < x->size(); ++p) {
      std::vector<double> bump(x->size(), -depth);
      bump[p] = 0.0;
      compare(FunctionOnSpace(x, std::move(bump)));
    }
    out.push_back(observe(def, [=] { return dump({{"M", m}}); }));

    std::set<std::size_t> inner_union;
    for (const auto& e : m.entries()) {
      for (const auto& a : support(lifted->point(e.atom))) inner_union.insert(a);
    }
    const auto flat_support = support(flat);
    const bool same = std::vector<std::size_t>(inner_union.begin(), inner_union.end()) == flat_support;
    out.push_back(observe({0, 0, same ? 0.0 : 1.0, "S flatten(M) = union of inner supports"}, with_m));

    const IdempotentMeasure pre = sample_psi_preimage(mu, groups, seed, extras);
    out.push_back(observe({0, 0, measure_gap(flatten(pre), mu),
                           fmt::format("flatten(preimage) = mu; groups = {}, extras = {}, N = {}",
                                       groups, extras, describe(pre))},
                          with_mu));
    return out;
  });
}

std::vector<LemmaReport> run_campaign(const std::string& name, const CampaignConfig& cfg) {
  if (name == "oracle") return {run_oracle_campaign(cfg)};
  if (name == "lemma1") return {run_lemma1_campaign(cfg)};
  if (name == "lemma2") return {run_lemma2_campaign(cfg)};
  if (name == "lemma3") return {run_lemma3_campaign(cfg)};
  if (name == "axioms") return run_axioms_campaign(cfg);
  if (name == "monad") return run_monad_campaign(cfg);
  throw std::invalid_argument("unknown campaign '" + name + "'");
}

std::string report_text(const LemmaReport& r) {
  return fmt::format("{}: {} cases, {} failures, max violation {} (tol {})", r.lemma, r.cases,
                     r.failures.size(), format_number(r.max_violation),
                     format_number(r.tolerance));
}

std::string report_json(const std::vector<LemmaReport>& reports) {
  using nlohmann::json;
  auto num = [](double v) { return std::isfinite(v) ? json(v) : json(format_number(v)); };
  json out = json::array();
  for (const auto& r : reports) {
    json failures = json::array();
    for (const auto& f : r.failures) {
      failures.push_back({{"case", f.case_index},
                          {"lhs", num(f.lhs)},
                          {"rhs", num(f.rhs)},
                          {"gap", num(f.gap)},
                          {"detail", f.detail},
                          {"inputs", f.inputs}});
    }
    out.push_back({{"lemma", r.lemma},
                   {"cases", r.cases},
                   {"ok", r.ok()},
                   {"max_violation", num(r.max_violation)},
                   {"tolerance", r.tolerance},
                   {"failures", failures}});
  }
  return out.dump(2);
}

}  // namespace tropmeas
