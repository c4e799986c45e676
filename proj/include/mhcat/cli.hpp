#ifndef MHCAT_CLI_HPP
#define MHCAT_CLI_HPP

#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mhcat/coproducts.hpp"
#include "mhcat/enrichment.hpp"
#include "mhcat/mcmc.hpp"
#include "mhcat/mh_algorithms.hpp"
#include "mhcat/model.hpp"
#include "mhcat/random.hpp"
#include "mhcat/sampler.hpp"

namespace mhcat::cli {

inline constexpr std::size_t kDefaultInstances = 1000;

/// Name of the environment variable overriding the default --instances.
inline constexpr const char* kInstancesEnv = "MHCAT_INSTANCES";

struct Options {
  std::string predicate;   ///< check
  std::string kernel;      ///< primary kernel (or measure/effect) name
  std::string other;       ///< second kernel for binary predicates
  std::string measure;     ///< target / reference measure
  std::string involution;
  std::string acceptance;  ///< effect name for α
  std::string balancing;   ///< balancing declaration name or function name
  std::string shift;       ///< involution s for the skew construction
  std::string proposal;    ///< proposal kernel q
  std::string init;        ///< initial state label (sample)
  std::string observed;    ///< observed data label (exchange)
  std::string name;        ///< name of the emitted artifact
  std::uint64_t seed = 0;
  std::optional<std::size_t> instances;
  std::size_t steps = 100000;
  std::size_t burn = 0;
  bool random = false;     ///< verify-mh / verify-skew on generated instances
};

/// Line-oriented report: `key: value` lines, then an optional model section
/// introduced by a line `[model]`.
struct Report {
  std::string command;
  bool pass = true;
  std::vector<std::pair<std::string, std::string>> fields;
  std::optional<ModelDocument> model;

  void add(std::string key, std::string value) { fields.emplace_back(std::move(key), std::move(value)); }
  void add(std::string key, bool value) { add(std::move(key), std::string(value ? "true" : "false")); }

  std::optional<std::string> get(const std::string& key) const {
    for (const auto& [k, v] : fields)
      if (k == key) return v;
    return std::nullopt;
  }

  int exit_code() const { return pass ? 0 : 1; }

  std::string header() const {
    std::ostringstream os;
    os << "command: " << command << '\n' << "result: " << (pass ? "pass" : "fail") << '\n';
    for (const auto& [k, v] : fields) os << k << ": " << v << '\n';
    return os.str();
  }

  std::string str() const { return model ? header() + "[model]\n" + model->emit() : header(); }
};

/// Splits report text back into its key/value lines and model section.
inline std::pair<std::vector<std::pair<std::string, std::string>>, std::string> split_report(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> fields;
  std::istringstream in(text);
  std::string line, model;
  bool in_model = false;
  while (std::getline(in, line)) {
    if (in_model) {
      model += line + '\n';
    } else if (line == "[model]") {
      in_model = true;
    } else if (auto colon = line.find(": "); colon != std::string::npos) {
      fields.emplace_back(line.substr(0, colon), line.substr(colon + 2));
    }
  }
  return {std::move(fields), std::move(model)};
}

inline std::size_t default_instances() {
  if (const char* env = std::getenv(kInstancesEnv)) {
    try {
      return static_cast<std::size_t>(std::stoull(env));
    } catch (const std::exception&) {
      throw DomainError(std::string(kInstancesEnv) + " is not a number: '" + env + "'");
    }
  }
  return kDefaultInstances;
}

namespace detail {

inline const std::string& required(const std::string& value, const char* flag) {
  if (value.empty()) throw DomainError(std::string("missing required flag --") + flag);
  return value;
}

/// A kernel, measure or effect by name.
inline const Kernel& any_kernel(const ModelDocument& doc, const std::string& name) {
  if (doc.has(DeclKind::kernel, name)) return doc.kernel(name);
  if (doc.has(DeclKind::measure, name)) return doc.measure(name);
  if (doc.has(DeclKind::effect, name)) return doc.effect(name);
  throw DomainError("unknown kernel, measure or effect '" + name + "'");
}

inline std::string label_list(const FinSpace& s, const std::vector<std::size_t>& idx) {
  std::string out;
  for (std::size_t k = 0; k < idx.size(); ++k) out += (k ? ", " : "") + s.point(idx[k]).str();
  return out;
}

/// The declared name of `s` in `src`, copied into `dst` as a list declaration.
inline std::string copy_space(ModelDocument& dst, const ModelDocument& src, const FinSpace& s, const std::string& hint) {
  return dst.ensure_space(s, src.find_space(s).value_or(hint));
}

inline void add_kernel_to(ModelDocument& dst, const ModelDocument& src, const std::string& name, const Kernel& k) {
  const std::string dom = copy_space(dst, src, k.dom(), "X");
  const std::string cod = copy_space(dst, src, k.cod(), "Y");
  dst.add_kernel(name, dom, cod, k);
}

inline void add_measure_to(ModelDocument& dst, const ModelDocument& src, const std::string& name, const Measure& m) {
  dst.add_measure(name, copy_space(dst, src, m.cod(), "X"), m);
}

inline MhProblem problem_from(const ModelDocument& doc, const Options& o) {
  const Measure& mu = doc.measure(required(o.measure, "measure"));
  const Involution& phi = doc.involution(required(o.involution, "involution"));
  if (!o.acceptance.empty() && !o.balancing.empty())
    throw DomainError("give either --acceptance or --balancing, not both");
  if (!o.acceptance.empty()) return {mu, phi, doc.effect(o.acceptance)};
  if (o.balancing.empty()) throw DomainError("missing required flag --acceptance or --balancing");
  const BalancingFunction a = doc.has(DeclKind::balancing, o.balancing) ? doc.balancing(o.balancing)
                                                                         : BalancingFunction::by_name(o.balancing);
  return {mu, phi, balancing_alpha(a, mu, phi)};
}

inline void add_pair_witness(Report& r, const FinSpace& dom, const FinSpace& cod, std::size_t x, std::size_t y) {
  r.add("witness.x", dom.point(x).str());
  r.add("witness.y", cod.point(y).str());
}

/// First (x, y) where pred(x, y) fails.
template <typename F>
std::optional<std::pair<std::size_t, std::size_t>> first_entry(const Kernel& k, F&& pred) {
  for (std::size_t x = 0; x < k.rows(); ++x)
    for (std::size_t y = 0; y < k.cols(); ++y)
      if (!pred(x, y)) return std::pair{x, y};
  return std::nullopt;
}

/// Detailed balance and balancing witnesses for an MH problem and its kernel.
inline void mh_witnesses(Report& r, const MhProblem& prob, const Kernel& p, const TheoremFlags& flags) {
  const FinSpace& x = prob.space();
  if (!flags.reversible)
    if (auto w = detailed_balance_violation(prob.target, p)) add_pair_witness(r, x, x, w->first, w->second);
  if (!flags.balanced) {
    if (auto xi = balancing_violation(prob)) {
      const Effect rd = involution_derivative(prob.target, prob.involution);
      r.add("witness.xi", x.point(*xi).str());
      r.add("witness.alpha", prob.acceptance.weight(*xi).to_string());
      r.add("witness.alpha_phi", prob.acceptance.weight(prob.involution(*xi)).to_string());
      r.add("witness.r", rd.weight(*xi).to_string());
    }
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Subcommands

/// Predicates available to `check`.
inline const std::vector<std::string>& predicate_names() {
  static const std::vector<std::string> names = {
      "invariant",   "reversible", "skew-reversible", "balanced",  "leq",       "abs-cont",
      "equivalent",  "singular",   "ae-equal",        "cancellative", "finite", "normalized",
      "substochastic", "copyable", "zero"};
  return names;
}

inline Report run_check(const ModelDocument& doc, const Options& o) {
  Report r{"check", true, {}, {}};
  const std::string& pred = detail::required(o.predicate, "predicate");
  r.add("predicate", pred);

  auto kernel = [&]() -> const Kernel& { return detail::any_kernel(doc, detail::required(o.kernel, "kernel")); };
  auto other = [&]() -> const Kernel& { return detail::any_kernel(doc, detail::required(o.other, "other")); };
  auto measure = [&]() -> const Measure& { return doc.measure(detail::required(o.measure, "measure")); };

  if (pred == "invariant") {
    const Measure& mu = measure();
    const Kernel& p = kernel();
    mhcat::detail::require_endomorphism_on(mu, p, "check invariant");
    const Measure pushed = compose(p, mu);
    r.pass = pushed == mu;
    for (std::size_t y = 0; y < mu.cols() && !r.pass; ++y)
      if (!(pushed.mass(y) == mu.mass(y))) {
        r.add("witness.y", mu.cod().point(y).str());
        r.add("witness.mu", mu.mass(y).to_string());
        r.add("witness.mu_p", pushed.mass(y).to_string());
        break;
      }
  } else if (pred == "reversible") {
    const Measure& mu = measure();
    const Kernel& p = kernel();
    const auto w = detailed_balance_violation(mu, p);
    r.pass = !w;
    if (w) detail::add_pair_witness(r, p.dom(), p.cod(), w->first, w->second);
  } else if (pred == "skew-reversible") {
    const Measure& mu = measure();
    const Involution& s = doc.involution(detail::required(o.shift, "shift"));
    const Kernel& p = kernel();
    r.pass = is_skew_reversible(mu, s, p);
    if (!r.pass) {
      // μ(x) P(x, y) = μ(y) P(s y, s x)
      const auto w = detail::first_entry(p, [&](std::size_t x, std::size_t y) {
        return mu.mass(x) * p(x, y) == mu.mass(y) * p(s(y), s(x));
      });
      if (w) detail::add_pair_witness(r, p.dom(), p.cod(), w->first, w->second);
    }
  } else if (pred == "balanced") {
    const MhProblem prob = detail::problem_from(doc, o);
    prob.validate();
    const auto xi = balancing_violation(prob);
    r.pass = !xi;
    if (xi) detail::mh_witnesses(r, prob, build_mh(prob), {true, false});
  } else if (pred == "leq" || pred == "abs-cont" || pred == "equivalent" || pred == "singular") {
    const Kernel& p = kernel();
    const Kernel& q = other();
    require_same(p.dom(), q.dom(), "check " + pred);
    require_same(p.cod(), q.cod(), "check " + pred);
    std::optional<std::pair<std::size_t, std::size_t>> w;
    if (pred == "leq") {
      r.pass = leq_kernel(p, q);
      w = detail::first_entry(p, [&](std::size_t x, std::size_t y) { return leq(p(x, y), q(x, y)); });
    } else if (pred == "abs-cont") {
      r.pass = abs_cont(p, q);
      w = detail::first_entry(p, [&](std::size_t x, std::size_t y) { return !(p(x, y).is_positive() && q(x, y).is_zero()); });
    } else if (pred == "equivalent") {
      r.pass = equivalent(p, q);
      w = detail::first_entry(p, [&](std::size_t x, std::size_t y) { return p(x, y).is_zero() == q(x, y).is_zero(); });
    } else {
      r.pass = is_singular(p, q);
      w = detail::first_entry(p, [&](std::size_t x, std::size_t y) { return p(x, y).is_zero() || q(x, y).is_zero(); });
    }
    if (!r.pass && w) detail::add_pair_witness(r, p.dom(), p.cod(), w->first, w->second);
  } else if (pred == "ae-equal") {
    const Measure& mu = measure();
    const Kernel& p = kernel();
    const Kernel& q = other();
    r.pass = ae_equal(mu, p, q);
    if (!r.pass) {
      const auto w = detail::first_entry(p, [&](std::size_t x, std::size_t y) {
        return mu.mass(x).is_zero() || p(x, y) == q(x, y);
      });
      if (w) detail::add_pair_witness(r, p.dom(), p.cod(), w->first, w->second);
    }
  } else if (pred == "cancellative") {
    const Kernel& p = kernel();
    r.pass = is_cancellative(p);
    if (!r.pass) {
      const auto w = detail::first_entry(p, [&](std::size_t x, std::size_t y) { return p(x, y).is_finite(); });
      detail::add_pair_witness(r, p.dom(), p.cod(), w->first, w->second);
    }
  } else if (pred == "finite" || pred == "normalized" || pred == "substochastic" || pred == "copyable" ||
             pred == "zero") {
    const Kernel& p = kernel();
    const Effect m = row_mass(p);
    auto row_ok = [&](std::size_t x) {
      if (pred == "finite") return m.weight(x).is_finite();
      if (pred == "normalized") return m.weight(x) == ExtNonneg::one();
      if (pred == "substochastic") return leq(m.weight(x), ExtNonneg::one());
      if (pred == "zero") return m.weight(x).is_zero();
      return is_copyable(Kernel::tabulate(FinSpace::unit(), p.cod(), [&](std::size_t, std::size_t y) { return p(x, y); }));
    };
    for (std::size_t x = 0; x < p.rows(); ++x)
      if (!row_ok(x)) {
        r.pass = false;
        r.add("witness.x", p.dom().point(x).str());
        r.add("witness.mass", m.weight(x).to_string());
        break;
      }
  } else {
    throw DomainError("unknown predicate '" + pred + "'");
  }
  return r;
}

inline Report run_decompose(const ModelDocument& doc, const Options& o) {
  Report r{"decompose", true, {}, ModelDocument{}};
  ModelDocument& out = *r.model;
  if (!o.involution.empty()) {
    const Measure& mu = doc.measure(detail::required(o.measure, "measure"));
    const Involution& phi = doc.involution(o.involution);
    const InvolutiveDecomposition d = involutive_decompose(mu, phi);
    const std::string sp = detail::copy_space(out, doc, mu.cod(), "X");
    std::vector<Label> s_points;
    for (auto i : d.set) s_points.push_back(mu.cod().point(i));
    const std::string s_name = o.name.empty() ? "S" : o.name;
    out.add_space(s_name, FinSpace(std::move(s_points)));
    out.add_measure("ac", sp, d.parts.ac);
    out.add_measure("si", sp, d.parts.si);
    r.add("set." + s_name, "{" + detail::label_list(mu.cod(), d.set) + "}");
  } else {
    const Kernel& p = detail::any_kernel(doc, detail::required(o.kernel, "kernel"));
    const Kernel& q = detail::any_kernel(doc, detail::required(o.other, "other"));
    const Decomposition d = lebesgue_decompose(p, q);
    detail::add_kernel_to(out, doc, "ac", d.ac);
    detail::add_kernel_to(out, doc, "si", d.si);
  }
  return r;
}

inline Report run_build_mh(const ModelDocument& doc, const Options& o) {
  Report r{"build-mh", true, {}, ModelDocument{}};
  const MhProblem prob = detail::problem_from(doc, o);
  const Kernel p = build_mh(prob);
  const std::string sp = detail::copy_space(*r.model, doc, prob.space(), "X");
  if (o.acceptance.empty()) r.model->add_effect("alpha", sp, prob.acceptance, true);
  r.model->add_kernel(o.name.empty() ? "mh" : o.name, sp, sp, p);
  r.add("normalized", is_normalized(p));
  return r;
}

inline Report run_verify_random(const std::string& command, const Options& o) {
  Report r{command, true, {}, {}};
  const std::size_t n = o.instances.value_or(default_instances());
  InstanceGenerator gen(o.seed);
  std::size_t agree = 0, balanced = 0;
  std::optional<std::size_t> first_disagreement;
  for (std::size_t k = 0; k < n; ++k) {
    TheoremFlags flags{};
    if (command == "verify-mh") {
      flags = verify_mh_theorem(gen.mh_problem(gen.uniform_index(2, 6)));
    } else {
      const auto [sprob, s] = gen.skew_problem(gen.uniform_index(2, 6));
      flags = verify_skew_theorem(sprob, s);
    }
    balanced += flags.balanced;
    if (flags.reversible == flags.balanced) ++agree;
    else if (!first_disagreement) first_disagreement = k;
  }
  r.add("mode", std::string("random"));
  r.add("seed", std::to_string(o.seed));
  r.add("instances", std::to_string(n));
  r.add("balanced", std::to_string(balanced));
  r.add("agreements", std::to_string(agree));
  r.pass = agree == n;
  if (first_disagreement) r.add("witness.instance", std::to_string(*first_disagreement));
  return r;
}

inline Report run_verify_mh(const ModelDocument& doc, const Options& o) {
  if (o.random) return run_verify_random("verify-mh", o);
  Report r{"verify-mh", true, {}, {}};
  const MhProblem prob = detail::problem_from(doc, o);
  const TheoremFlags flags = verify_mh_theorem(prob);
  r.add("reversible", flags.reversible);
  r.add("balanced", flags.balanced);
  r.add("theorem", flags.reversible == flags.balanced);
  r.pass = flags.reversible && flags.balanced;
  detail::mh_witnesses(r, prob, build_mh(prob), flags);
  return r;
}

inline Report run_verify_skew(const ModelDocument& doc, const Options& o) {
  if (o.random) return run_verify_random("verify-skew", o);
  Report r{"verify-skew", true, {}, {}};
  const MhProblem prob = detail::problem_from(doc, o);
  const Involution& s = doc.involution(detail::required(o.shift, "shift"));
  const TheoremFlags flags = verify_skew_theorem(prob, s);
  const Kernel p = build_skew_mh(prob, s);
  r.add("skew_reversible", flags.reversible);
  r.add("balanced", flags.balanced);
  r.add("theorem", flags.reversible == flags.balanced);
  r.pass = flags.reversible && flags.balanced;
  const Measure& mu = prob.target;
  if (!flags.reversible) {
    const auto w = detail::first_entry(p, [&](std::size_t x, std::size_t y) {
      return mu.mass(x) * p(x, y) == mu.mass(y) * p(s(y), s(x));
    });
    if (w) detail::add_pair_witness(r, p.dom(), p.cod(), w->first, w->second);
  }
  if (!flags.balanced) detail::mh_witnesses(r, prob, build_mh(prob), {true, false});
  return r;
}

inline Report run_classical_mh(const ModelDocument& doc, const Options& o) {
  Report r{"classical-mh", true, {}, ModelDocument{}};
  const Measure& pi = doc.measure(detail::required(o.measure, "measure"));
  const Kernel& q = doc.kernel(detail::required(o.proposal, "proposal"));
  const ClassicalMh c = classical_mh(pi, q);
  const bool agree = c.via_involution == c.direct;
  const auto w = detailed_balance_violation(pi, c.direct);
  r.add("agree", agree);
  r.add("reversible", !w);
  r.pass = agree && !w;
  if (w) detail::add_pair_witness(r, pi.cod(), pi.cod(), w->first, w->second);
  detail::add_kernel_to(*r.model, doc, o.name.empty() ? "mh" : o.name, c.direct);
  return r;
}

inline Report run_exchange(const ModelDocument& doc, const Options& o) {
  Report r{"exchange", true, {}, ModelDocument{}};
  const Measure& prior = doc.measure(detail::required(o.measure, "measure"));
  const Kernel& lik = doc.kernel(detail::required(o.kernel, "kernel"));
  const Kernel& q = doc.kernel(detail::required(o.proposal, "proposal"));
  const Label z = Label::parse(detail::required(o.observed, "observed"));
  const ExchangeSetup setup = exchange_algorithm(prior, lik, z, q);
  const auto xi = balancing_violation(setup.problem);
  const Kernel chain = exchange_chain(setup);
  const bool invariant = is_invariant(setup.posterior, chain);
  r.add("balanced", !xi);
  r.add("invariant", invariant);
  r.pass = !xi && invariant;
  if (xi) detail::mh_witnesses(r, setup.problem, build_mh(setup.problem), {true, false});
  detail::add_measure_to(*r.model, doc, "posterior", setup.posterior);
  detail::add_kernel_to(*r.model, doc, o.name.empty() ? "exchange" : o.name, chain);
  return r;
}

inline Report run_gibbs(const ModelDocument& doc, const Options& o) {
  Report r{"gibbs", true, {}, ModelDocument{}};
  const std::string& m = detail::required(o.measure, "measure");
  const MeasureDecl& md = doc.measure_decl(m);
  const SpaceDecl& sd = doc.space_decl(md.space);
  if (sd.form != SpaceDecl::Form::product) throw DomainError("gibbs: space '" + md.space + "' is not declared as a product");
  std::vector<FinSpace> factors;
  for (const auto& f : sd.operands) factors.push_back(doc.space(f));
  const Kernel g = gibbs(md.measure, factors);
  const bool invariant = is_invariant(md.measure, g);
  r.add("factors", std::to_string(factors.size()));
  r.add("invariant", invariant);
  r.pass = invariant;
  // Keep the product declaration so the output names the factor spaces.
  for (const auto& f : sd.operands) r.model->add_space(f, doc.space_decl(f));
  r.model->add_space(md.space, sd);
  r.model->add_kernel(o.name.empty() ? "gibbs" : o.name, md.space, md.space, g);
  return r;
}

inline Report run_sample(const ModelDocument& doc, const Options& o) {
  Report r{"sample", true, {}, {}};
  const Kernel& k = doc.kernel(detail::required(o.kernel, "kernel"));
  const Label init = Label::parse(detail::required(o.init, "init"));
  if (o.burn >= o.steps) throw DomainError("--burn must be smaller than --steps");
  const ChainRun run = run_chain(to_float(k), k.dom().index_of(init), o.seed, o.steps);
  const std::vector<double> freq = empirical(run, o.burn);
  r.add("prng", std::string(kPrngName));
  r.add("seed", std::to_string(o.seed));
  r.add("steps", std::to_string(o.steps));
  r.add("burn", std::to_string(o.burn));
  r.add("init", init.str());
  r.add("final", k.dom().point(run.trace.back()).str());
  for (std::size_t i = 0; i < freq.size(); ++i) {
    std::ostringstream v;
    v.precision(6);
    v << std::fixed << freq[i];
    r.add("freq." + k.dom().point(i).str(), v.str());
  }
  if (!o.measure.empty()) {
    const Measure& mu = doc.measure(o.measure);
    require_same(mu.cod(), k.dom(), "sample target");
    std::ostringstream v;
    v.precision(6);
    v << std::fixed << tv_distance(freq, normalized_masses(mu));
    r.add("tv", v.str());
  }
  return r;
}

inline const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names = {"check",        "decompose", "build-mh", "verify-mh", "verify-skew",
                                                 "classical-mh", "exchange",  "gibbs",    "sample"};
  return names;
}

inline Report dispatch(const std::string& subcommand, const Options& o, const ModelDocument& doc) {
  if (subcommand == "check") return run_check(doc, o);
  if (subcommand == "decompose") return run_decompose(doc, o);
  if (subcommand == "build-mh") return run_build_mh(doc, o);
  if (subcommand == "verify-mh") return run_verify_mh(doc, o);
  if (subcommand == "verify-skew") return run_verify_skew(doc, o);
  if (subcommand == "classical-mh") return run_classical_mh(doc, o);
  if (subcommand == "exchange") return run_exchange(doc, o);
  if (subcommand == "gibbs") return run_gibbs(doc, o);
  if (subcommand == "sample") return run_sample(doc, o);
  throw DomainError("unknown subcommand '" + subcommand + "'");
}

}  // namespace mhcat::cli

#endif  // MHCAT_CLI_HPP
