// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cli_support.hpp"
#include "mhcat/mhcat.hpp"

using namespace mhcat;

namespace {

struct Failed {
  std::string what;
};

void require(bool cond, const std::string& what) {
  if (!cond) throw Failed{what};
}

ExtNonneg q(long n, long d = 1) { return ExtNonneg(n, d); }

FinSpace rand_space(InstanceGenerator& g, const char* prefix, std::size_t lo, std::size_t hi) {
  return InstanceGenerator::space(g.uniform_index(lo, hi), prefix);
}

Kernel permutation(InstanceGenerator& g, const FinSpace& x) {
  std::vector<std::size_t> f(x.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = i;
  std::shuffle(f.begin(), f.end(), g.engine());
  return deterministic(x, x, f);
}

// Puts the missing row mass of a substochastic endomorphism on the diagonal.
Kernel complete(const Kernel& p) {
  const Effect m = row_mass(p);
  return Kernel::tabulate(p.dom(), p.cod(), [&](std::size_t i, std::size_t j) {
    return i == j ? p(i, j) + residual(m.weight(i), ExtNonneg::one()) : p(i, j);
  });
}

// ((x, x'), (y, y')) ↦ ((x, y), (x', y')).
Kernel middle_shuffle(const FinSpace& x, const FinSpace& y) {
  const std::size_t nx = x.size(), ny = y.size();
  std::vector<std::size_t> f(nx * nx * ny * ny);
  for (std::size_t a = 0; a < nx; ++a)
    for (std::size_t a2 = 0; a2 < nx; ++a2)
      for (std::size_t b = 0; b < ny; ++b)
        for (std::size_t b2 = 0; b2 < ny; ++b2)
          f[(a * nx + a2) * ny * ny + b * ny + b2] = (a * ny + b) * nx * ny + a2 * ny + b2;
  return deterministic(product(product(x, x), product(y, y)), product(product(x, y), product(x, y)), f);
}

// A normalized kernel with q(x, y) > 0 exactly when q(y, x) > 0.
Kernel symmetric_support_proposal(InstanceGenerator& g, const FinSpace& x) {
  const Kernel raw = g.markov_kernel(x, x, 0.6);
  const Kernel masked = Kernel::tabulate(x, x, [&](std::size_t i, std::size_t j) {
    if (i == j) return raw(i, j) + ExtNonneg(1, 8);
    return raw(j, i).is_zero() ? ExtNonneg::zero() : raw(i, j);
  });
  const Effect m = row_mass(masked);
  return Kernel::tabulate(x, x, [&](std::size_t i, std::size_t j) { return divide(masked(i, j), m.weight(i)); });
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------------------

std::string flagship() {
  InstanceGenerator g(1001);
  const int n = 10000;
  int balanced = 0;
  for (int i = 0; i < n; ++i) {
    const MhProblem p = g.mh_problem(g.uniform_index(2, 6));
    const TheoremFlags f = verify_mh_theorem(p);
    require(f.reversible == f.balanced, "flags disagree on instance " + std::to_string(i));
    require(is_normalized(build_mh(p)), "MH kernel not normalized on instance " + std::to_string(i));
    balanced += f.balanced;
  }
  require(balanced > n / 10 && balanced < n * 9 / 10, "instance mix is degenerate");
  return std::to_string(n) + " instances agree, " + std::to_string(balanced) + " balanced";
}

std::string involutive_decomposition() {
  InstanceGenerator g(1002);
  const int n = 10000;
  std::size_t partial = 0;
  for (int i = 0; i < n; ++i) {
    const FinSpace x = rand_space(g, "x", 1, 6);
    const Involution phi = g.involution(x);
    const Measure mu = g.measure(x, g.coin() ? 0.3 : 0.6);
    const InvolutiveDecomposition d = involutive_decompose(mu, phi);
    const Kernel f = lift(phi);
    const std::string at = " on instance " + std::to_string(i);
    require(equivalent(d.parts.ac, compose(f, d.parts.ac)), "ac not equivalent to its pushforward" + at);
    require(is_singular(d.parts.si, compose(f, d.parts.si)), "si not singular to its pushforward" + at);
    require(is_singular(d.parts.ac, d.parts.si), "ac and si not singular" + at);
    require(d.parts.ac + d.parts.si == mu, "ac + si differs from mu" + at);
    for (std::size_t k = 0; k < x.size(); ++k) {
      const bool in_s = std::find(d.set.begin(), d.set.end(), k) != d.set.end();
      require(d.parts.ac.mass(k) == (in_s ? mu.mass(k) : q(0)), "ac is not mu restricted to S" + at);
      require(in_s == (mu.mass(k).is_positive() && mu.mass(phi(k)).is_positive()), "S is not the mutual support" + at);
    }
    partial += !is_zero(d.parts.si) && !is_zero(d.parts.ac);
  }
  return std::to_string(n) + " decompositions exact, " + std::to_string(partial) + " with both parts nonzero";
}

std::string classical() {
  InstanceGenerator g(1003);
  const int n = 1000;
  for (int i = 0; i < n; ++i) {
    const FinSpace x = rand_space(g, "x", 1, 5);
    const Measure pi = g.measure(x, 0.8);
    const Kernel prop = g.markov_kernel(x, x, 0.7);
    const ClassicalMh c = classical_mh(pi, prop);
    const std::string at = " on instance " + std::to_string(i);
    require(c.via_involution == c.direct, "involutive and direct kernels differ" + at);
    require(is_reversible(pi, c.via_involution) && is_reversible(pi, c.direct), "kernel not reversible" + at);
  }
  return std::to_string(n) + " instances, via-involution = direct, both reversible";
}

std::string exchange() {
  InstanceGenerator g(1004);
  const int n = 200;
  for (int i = 0; i < n; ++i) {
    const FinSpace theta = rand_space(g, "t", 1, 3), z = rand_space(g, "z", 1, 3);
    const Measure prior = g.measure(theta, 1.0);
    const Kernel lik = g.kernel(theta, z, 1.0);
    const Kernel prop = g.coin() ? g.markov_kernel(theta, theta, 1.0) : symmetric_support_proposal(g, theta);
    const Label zo = z.point(g.uniform_index(0, z.size() - 1));
    std::vector<ExtNonneg> c(theta.size());
    for (auto& v : c) v = g.positive();
    const ExchangeSetup a = exchange_algorithm(prior, lik, zo, prop);
    const ExchangeSetup b = exchange_algorithm(prior, reweight(make_effect(theta, c), lik), zo, prop);
    const std::string at = " on instance " + std::to_string(i);
    require(check_balancing(a.problem), "balancing fails" + at);
    require(a.problem.acceptance == b.problem.acceptance, "rescaled likelihood changes alpha" + at);
    for (std::size_t k = 0; k < a.problem.acceptance.rows(); ++k)
      require(a.problem.acceptance.weight(k).to_string() == b.problem.acceptance.weight(k).to_string(),
              "rescaled alpha prints differently" + at);
    require(is_invariant(a.posterior, exchange_chain(a)), "exchange chain not invariant" + at);
  }
  return std::to_string(n) + " instances balanced, alpha identical under likelihood rescaling";
}

std::string gibbs_sampler() {
  InstanceGenerator g(1005);
  const int n = 1000;
  for (int i = 0; i < n; ++i) {
    std::vector<FinSpace> factors;
    const std::size_t k = g.uniform_index(2, 3);
    for (std::size_t j = 0; j < k; ++j)
      factors.push_back(rand_space(g, std::string(1, static_cast<char>('p' + j)).c_str(), 1, 3));
    const Measure mu = g.measure(product_of(factors), g.coin() ? 1.0 : 0.6);
    require(is_invariant(mu, gibbs(mu, factors)), "gibbs kernel not invariant on instance " + std::to_string(i));
  }
  return std::to_string(n) + " joint measures, all invariant";
}

std::string skew() {
  InstanceGenerator g(1006);
  const int n = 2000;
  int holds = 0, balanced = 0;
  for (int i = 0; i < n; ++i) {
    const auto [prob, s] = g.skew_problem(g.uniform_index(2, 6));
    const std::string at = " on instance " + std::to_string(i);
    const Kernel sk = lift(s);
    const Kernel candidates[] = {g.markov_kernel(prob.space(), prob.space()),
                                 compose(g.reversible_kernel(prob.target), sk), build_skew_mh(prob, s)};
    for (const Kernel& p : candidates) {
      const auto c = skew_reversibility_conditions(prob.target, s, p);
      require(c[0] == c[1] && c[0] == c[2] && c[0] == c[3], "skew conditions disagree" + at);
      holds += c[0];
    }
    const TheoremFlags f = verify_skew_theorem(prob, s);
    require(f.reversible == f.balanced, "skew flags disagree" + at);
    require(is_normalized(build_skew_mh(prob, s)), "skew kernel not normalized" + at);
    balanced += f.balanced;
  }
  return std::to_string(n) + " instances, conditions agree (" + std::to_string(holds) + " of " +
         std::to_string(3 * n) + " hold), " + std::to_string(balanced) + " balanced";
}

std::string enrichment_laws() {
  const int n = 1000;
  std::vector<std::string> done;
  auto law = [&](const char* name, std::uint64_t seed, const std::function<void(InstanceGenerator&, int)>& body) {
    InstanceGenerator g(seed);
    for (int i = 0; i < n; ++i) {
      try {
        body(g, i);
      } catch (const Failed& f) {
        throw Failed{std::string(name) + ": " + f.what + " (instance " + std::to_string(i) + ")"};
      }
    }
    done.push_back(name);
  };

  // Exhaustive CD structure on spaces of size ≤ 4.
  for (std::size_t nx = 1; nx <= 4; ++nx) {
    const FinSpace x = InstanceGenerator::space(nx, "x");
    const Kernel cp = copy(x);
    require(compose(left_unitor(x), compose(tensor(discard(x), identity(x)), cp)) == identity(x), "left counit");
    require(compose(right_unitor(x), compose(tensor(identity(x), discard(x)), cp)) == identity(x), "right counit");
    require(compose(associator(x, x, x), compose(tensor(cp, identity(x)), cp)) == compose(tensor(identity(x), cp), cp),
            "coassociativity");
    require(compose(swap(x, x), cp) == cp, "cocommutativity");
    for (std::size_t ny = 1; ny <= 4; ++ny) {
      const FinSpace y = InstanceGenerator::space(ny, "y");
      require(compose(middle_shuffle(x, y), tensor(cp, copy(y))) == copy(product(x, y)), "copy on tensor");
      require(compose(left_unitor(FinSpace::unit()), tensor(discard(x), discard(y))) == discard(product(x, y)),
              "discard on tensor");
      require(compose(swap(y, x), swap(x, y)) == identity(product(x, y)), "swap symmetry");
    }
    for (const Kernel& k : {identity(x), cp, discard(x), swap(x, x), associator(x, x, x)})
      require(is_normalized(k) && is_copyable(k) && is_copyable_by_definition(k), "structure morphism");
  }
  done.push_back("cd-structure");

  law("discard-naturality", 2001, [](InstanceGenerator& g, int) {
    const FinSpace a = rand_space(g, "a", 1, 4), b = rand_space(g, "b", 1, 4);
    const Kernel p = g.coin() ? g.markov_kernel(a, b) : g.kernel(a, b, 0.7, 0.05);
    require((compose(discard(b), p) == discard(a)) == is_normalized(p), "discard natural iff normalized");
  });
  law("bilinearity", 2002, [](InstanceGenerator& g, int) {
    const FinSpace a = rand_space(g, "a", 1, 4), b = rand_space(g, "b", 1, 4), c = rand_space(g, "c", 1, 4);
    const Kernel p = g.kernel(a, b, 0.6, 0.1), p2 = g.kernel(a, b, 0.6, 0.1);
    const Kernel r = g.kernel(b, c, 0.6, 0.1), r2 = g.kernel(b, c, 0.6, 0.1);
    require(compose(r, p + p2) == compose(r, p) + compose(r, p2), "post-composition");
    require(compose(r + r2, p) == compose(r, p) + compose(r2, p), "pre-composition");
    require(tensor(p + p2, r) == tensor(p, r) + tensor(p2, r), "tensor left");
    require(tensor(r, p + p2) == tensor(r, p) + tensor(r, p2), "tensor right");
    require(is_zero(compose(r, kernel_zero(a, b))) && is_zero(compose(kernel_zero(b, c), p)), "zero absorbs");
    require(is_zero(tensor(p, kernel_zero(c, c))), "tensor with zero");
  });
  law("zero-sum-free", 2003, [](InstanceGenerator& g, int) {
    const FinSpace a = rand_space(g, "a", 1, 4), b = rand_space(g, "b", 1, 4);
    const double density = g.coin(0.3) ? 0.05 : 0.5;
    const Kernel p = g.kernel(a, b, density, 0.1), r = g.kernel(a, b, density, 0.1);
    if (is_zero(p + r)) require(is_zero(p) && is_zero(r), "zero-sum-free");
    if (is_zero(row_mass(p))) require(is_zero(p), "zero-monic");
    if (is_zero(tensor(p, r))) require(is_zero(p) || is_zero(r), "no zero divisors");
    if (leq_kernel(p, kernel_zero(a, b))) require(is_zero(p), "below zero");
  });
  law("preorders", 2004, [](InstanceGenerator& g, int) {
    const FinSpace a = rand_space(g, "a", 1, 4), b = rand_space(g, "b", 1, 4), c = rand_space(g, "c", 1, 4);
    const Kernel p = g.kernel(a, b, 0.5, 0.1), pq = p + g.kernel(a, b, 0.5, 0.1);
    const Kernel r = g.kernel(b, c, 0.6, 0.1), s = g.kernel(c, a, 0.6, 0.1), t = g.kernel(c, c, 0.6, 0.1);
    require(leq_kernel(p, pq) && abs_cont(p, pq), "P <= P + Q");
    require(leq_kernel(compose(r, p), compose(r, pq)), "<= under post-composition");
    require(leq_kernel(compose(p, s), compose(pq, s)), "<= under pre-composition");
    require(leq_kernel(tensor(p, t), tensor(pq, t)), "<= under tensor");
    const Kernel q2 = g.kernel(a, b, 0.7, 0.1), p2 = meet(g.kernel(a, b, 0.7, 0.1), q2);
    require(abs_cont(compose(r, p2), compose(r, q2)), "<< under post-composition");
    require(abs_cont(compose(p2, s), compose(q2, s)), "<< under pre-composition");
    const Kernel u = g.kernel(a, b, 0.5, 0.1), v = g.kernel(a, b, 0.5, 0.1), w = g.kernel(a, b, 0.5, 0.1);
    if (leq_kernel(u, v) && leq_kernel(v, w)) require(leq_kernel(u, w), "<= transitive");
    if (abs_cont(u, v) && abs_cont(v, w)) require(abs_cont(u, w), "<< transitive");
    require(abs_cont(u, v) == abs_cont_by_definition(u, v), "<< pointwise vs definition");
  });
  law("cancellativity", 2005, [](InstanceGenerator& g, int) {
    const FinSpace a = rand_space(g, "a", 1, 4), b = rand_space(g, "b", 1, 4);
    const Kernel p = g.kernel(a, b, 0.6, 0.1);
    bool finite_atoms = true;
    for (const auto& e : p.entries()) finite_atoms = finite_atoms && e.is_finite();
    require(finite_atoms == is_cancellative(p), "finite atoms iff cancellative");
    const auto w = cancellativity_counterexample(p);
    require(w.has_value() != finite_atoms, "counterexample exists iff not cancellative");
    if (w) require(p + w->first == p + w->second && !(w->first == w->second), "counterexample is valid");
    if (is_finite_morphism(p)) require(is_cancellative(p), "finite implies cancellative");
    const Kernel moved = compose(permutation(g, b), compose(p, permutation(g, a)));
    require(is_cancellative(moved) == is_cancellative(p), "invariant under permutations");
  });
  law("invariance-and-reversibility", 2006, [](InstanceGenerator& g, int) {
    const FinSpace x = rand_space(g, "x", 1, 5);
    const Measure mu = g.measure(x, 0.8);
    const Kernel p = g.reversible_kernel(mu), r = g.reversible_kernel(mu);
    const Kernel np = complete(p), nr = complete(r);
    require(is_reversible(mu, np) && is_invariant(mu, np), "reversible implies invariant");
    require(is_invariant(mu, compose(nr, np)), "invariant kernels compose");
    require(is_reversible(mu, p + r), "sum of reversible kernels");
    const Kernel other = g.coin() ? g.reversible_kernel(mu) : g.kernel(x, x, 0.5);
    require(!is_reversible(mu, other + p) || is_reversible(mu, other), "difference rule");
    const Involution phi = g.involution(x);
    std::vector<ExtNonneg> m(x.size());
    for (auto& v : m) v = ExtNonneg(static_cast<long>(g.uniform_index(0, 2)));
    const Measure small = make_measure(x, m);
    if (is_invariant(small, lift(phi))) require(is_reversible(small, lift(phi)), "invariant involution");
  });
  law("importance-sampling", 2007, [](InstanceGenerator& g, int) {
    const FinSpace x = rand_space(g, "x", 1, 6);
    const Measure mu = g.measure(x, 0.7);
    const Measure pi = meet(g.measure(x, 0.8), mu);
    const Effect r = rn_derivative(pi, mu);
    const Effect f = g.effect(x, 0.7, 0.1);
    require(compose(f, pi) == compose(effect_mul(f, r), mu), "integral identity");
  });

  std::string out = std::to_string(done.size()) + " law groups (";
  for (std::size_t i = 0; i < done.size(); ++i) out += (i ? ", " : "") + done[i];
  return out + "), " + std::to_string(n) + " random instances each";
}

std::string meet_exhaustive() {
  const std::vector<ExtNonneg> grid = {q(0), q(1, 2), q(2), ExtNonneg::infinity()};
  const std::vector<std::pair<std::size_t, std::size_t>> shapes = {{1, 1}, {1, 2}, {1, 3}, {2, 1}, {3, 1}};
  std::size_t checks = 0;
  for (const auto& [rows, cols] : shapes) {
    const FinSpace dom = rows == 1 ? FinSpace::unit() : InstanceGenerator::space(rows, "a");
    const FinSpace cod = InstanceGenerator::space(cols, "b");
    const std::size_t cells = rows * cols;
    std::vector<Kernel> all;
    std::vector<std::size_t> idx(cells, 0);
    while (true) {
      std::vector<ExtNonneg> m;
      for (auto i : idx) m.push_back(grid[i]);
      all.emplace_back(dom, cod, std::move(m));
      std::size_t k = 0;
      while (k < cells && ++idx[k] == grid.size()) idx[k++] = 0;
      if (k == cells) break;
    }
    for (const auto& p : all)
      for (const auto& r : all) {
        const Kernel m = meet(p, r);
        require(abs_cont(m, p) && abs_cont(m, r), "meet is not a lower bound");
        for (const auto& l : all) {
          require((abs_cont(l, p) && abs_cont(l, r)) == abs_cont(l, m), "meet is not the greatest lower bound");
          ++checks;
        }
      }
  }
  return std::to_string(checks) + " lower-bound checks over grid {0, 1/2, 2, inf}";
}

std::string sampler() {
  const FinSpace x = FinSpace::of({"a", "b"});
  const Measure mu = make_measure(x, {q(1, 3), q(2, 3)});
  const Involution phi(x, {1, 0});
  const MhProblem prob{mu, phi, balancing_alpha(BalancingFunction::metropolis(), mu, phi)};
  const auto start = std::chrono::steady_clock::now();
  const ChainRun run = run_chain(to_float(build_mh(prob)), 0, 20240601, 1'000'000);
  const double tv = tv_distance(empirical(run, 0), normalized_masses(mu));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  require(tv < 0.02, "tv " + std::to_string(tv) + " >= 0.02");
  require(secs < 5.0, "took " + std::to_string(secs) + " s");
  char buf[96];
  std::snprintf(buf, sizeof buf, "10^6 steps, tv %.6f, %.3f s", tv, secs);
  return buf;
}

std::string cli_round_trip() {
  const std::string dir = MHCAT_MODELS_DIR;
  int files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() != ".model") continue;
    const std::string text = slurp(entry.path());
    const ModelDocument doc = parse_model(text);
    require(doc.emit() == text, entry.path().filename().string() + " does not round-trip");
    require(parse_model(doc.emit()) == doc, entry.path().filename().string() + " re-parse differs");
    ++files;
  }
  require(files >= 5, "corpus is missing");

  int failures = 0;
  // Corpus failures through the installed binary.
  {
    const ModelDocument doc = parse_model(slurp(dir + "/skewed.model"));
    const auto run = clitest::run_tool("verify-mh --model " + dir +
                                       "/skewed.model --measure mu --involution phi --acceptance always");
    require(run.status == 1, "verify-mh on skewed.model should exit 1");
    const std::string bad = clitest::recheck_witnesses(
        run.out, MhProblem{doc.measure("mu"), doc.involution("phi"), doc.effect("always")});
    require(bad.empty(), "skewed.model: " + bad);
    ++failures;
  }
  {
    const ModelDocument doc = parse_model(slurp(dir + "/skew.model"));
    const auto run = clitest::run_tool("verify-skew --model " + dir +
                                       "/skew.model --measure mu --involution phi --shift s --acceptance half");
    require(run.status == 1, "verify-skew on skew.model should exit 1");
    const std::string bad = clitest::recheck_witnesses(
        run.out, MhProblem{doc.measure("mu"), doc.involution("phi"), doc.effect("half")}, &doc.involution("s"));
    require(bad.empty(), "skew.model: " + bad);
    ++failures;
  }
  require(clitest::run_tool("verify-mh --model " + dir +
                            "/metropolis.model --measure mu --involution phi --acceptance alpha")
                  .status == 0,
          "verify-mh on metropolis.model should pass");

  // Generated failures through in-process dispatch.
  InstanceGenerator g(1010);
  for (int i = 0; i < 500; ++i) {
    const bool skewed = i % 2 == 1;
    MhProblem prob = g.mh_problem(g.uniform_index(2, 6));
    std::optional<Involution> s;
    if (skewed) {
      auto sp = g.skew_problem(g.uniform_index(2, 6));
      prob = std::move(sp.first);
      s = std::move(sp.second);
    }
    ModelDocument doc;
    doc.add_space("X", prob.space());
    doc.add_measure("mu", "X", prob.target);
    doc.add_involution("phi", "X", prob.involution);
    doc.add_effect("alpha", "X", prob.acceptance, true);
    if (s) doc.add_involution("s", "X", *s);
    cli::Options o;
    o.measure = "mu";
    o.involution = "phi";
    o.acceptance = "alpha";
    if (s) o.shift = "s";
    const cli::Report r = cli::dispatch(skewed ? "verify-skew" : "verify-mh", o, parse_model(doc.emit()));
    if (r.pass) continue;
    const std::string bad = clitest::recheck_witnesses(r.str(), prob, s ? &*s : nullptr);
    require(bad.empty(), "generated instance " + std::to_string(i) + ": " + bad);
    ++failures;
  }
  return std::to_string(files) + " corpus files round-trip, " + std::to_string(failures) +
         " failure reports with re-failing witnesses";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<std::string()>>> criteria = {
      {"MH biconditional on random problems", flagship},
      {"involutive Lebesgue decomposition", involutive_decomposition},
      {"classical MH recovery", classical},
      {"exchange algorithm", exchange},
      {"Gibbs invariance", gibbs_sampler},
      {"skew-reversibility suite", skew},
      {"enrichment law suite", enrichment_laws},
      {"meet universal property", meet_exhaustive},
      {"sampler sanity", sampler},
      {"CLI round-trip and witnesses", cli_round_trip},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& [name, run] = criteria[i];
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
      detail = run();
    } catch (const Failed& f) {
      ok = false;
      detail = f.what;
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.1f s", secs);
    std::cout << (ok ? "PASS" : "FAIL") << "  [" << i + 1 << "] " << name << ": " << detail << " (" << timing << ")"
              << std::endl;
    failed += !ok;
  }
  std::cout << criteria.size() - failed << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
