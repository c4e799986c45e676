#ifndef MHCAT_RANDOM_HPP
#define MHCAT_RANDOM_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "mhcat/kernel.hpp"
#include "mhcat/mcmc.hpp"

namespace mhcat {

/// Seeded generator of random exact instances for the theorem batches.
///
/// Rational entries have denominators at most `max_denominator` (64 by
/// default). `density` is the probability that an entry is in the support.
class InstanceGenerator {
 public:
  explicit InstanceGenerator(std::uint64_t seed, long max_denominator = 64)
      : rng_(seed), max_den_(max_denominator) {}

  std::mt19937_64& engine() { return rng_; }

  std::size_t uniform_index(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  /// Atoms "s0", "s1", ...
  static FinSpace space(std::size_t n, const std::string& prefix = "s") {
    std::vector<Label> pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back(Label::atom(prefix + std::to_string(i)));
    return FinSpace(std::move(pts));
  }

  /// A positive rational k/d with d ≤ max_denominator and k ≤ max_numerator.
  ExtNonneg positive(long max_numerator = 128) {
    const long d = std::uniform_int_distribution<long>(1, max_den_)(rng_);
    const long k = std::uniform_int_distribution<long>(1, max_numerator)(rng_);
    return ExtNonneg(k, d);
  }

  /// A rational in [0, 1] with denominator at most max_denominator.
  ExtNonneg probability() {
    const long d = std::uniform_int_distribution<long>(1, max_den_)(rng_);
    const long k = std::uniform_int_distribution<long>(0, d)(rng_);
    return ExtNonneg(k, d);
  }

  /// Entry that is zero with probability 1 - density, ∞ with probability
  /// p_inf, and otherwise a positive rational.
  ExtNonneg entry(double density, double p_inf = 0.0) {
    if (!coin(density)) return {};
    if (p_inf > 0.0 && coin(p_inf)) return ExtNonneg::infinity();
    return positive();
  }

  Measure measure(const FinSpace& x, double density = 0.7, double p_inf = 0.0) {
    std::vector<ExtNonneg> m(x.size());
    for (auto& v : m) v = entry(density, p_inf);
    return make_measure(x, std::move(m));
  }

  Effect effect(const FinSpace& x, double density = 0.7, double p_inf = 0.0) {
    std::vector<ExtNonneg> w(x.size());
    for (auto& v : w) v = entry(density, p_inf);
    return make_effect(x, std::move(w));
  }

  Effect probability_effect(const FinSpace& x) {
    std::vector<ExtNonneg> w(x.size());
    for (auto& v : w) v = probability();
    return make_effect(x, std::move(w));
  }

  Kernel kernel(const FinSpace& x, const FinSpace& y, double density = 0.7, double p_inf = 0.0) {
    return Kernel::tabulate(x, y, [&](std::size_t, std::size_t) { return entry(density, p_inf); });
  }

  /// A probability vector over n cells: d units spread over a random support,
  /// with d ≤ max_denominator. The support is never empty.
  std::vector<ExtNonneg> distribution(std::size_t n, double density = 0.7) {
    std::vector<std::size_t> support;
    for (std::size_t j = 0; j < n; ++j)
      if (coin(density)) support.push_back(j);
    if (support.empty()) support.push_back(uniform_index(0, n - 1));
    const long parts = static_cast<long>(support.size());
    const long d = std::uniform_int_distribution<long>(parts, std::max(max_den_, parts))(rng_);
    // Random composition of d into |support| positive parts.
    std::vector<long> cuts;
    std::vector<long> all(static_cast<std::size_t>(d - 1));
    std::iota(all.begin(), all.end(), 1L);
    std::shuffle(all.begin(), all.end(), rng_);
    cuts.assign(all.begin(), all.begin() + (parts - 1));
    cuts.push_back(0);
    cuts.push_back(d);
    std::sort(cuts.begin(), cuts.end());
    std::vector<ExtNonneg> out(n);
    for (std::size_t s = 0; s < support.size(); ++s) out[support[s]] = ExtNonneg(cuts[s + 1] - cuts[s], d);
    return out;
  }

  Measure probability_measure(const FinSpace& x, double density = 0.7) {
    return make_measure(x, distribution(x.size(), density));
  }

  /// A normalized kernel with rows drawn by distribution().
  Kernel markov_kernel(const FinSpace& x, const FinSpace& y, double density = 0.7) {
    std::vector<ExtNonneg> m;
    m.reserve(x.size() * y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      auto row = distribution(y.size(), density);
      m.insert(m.end(), row.begin(), row.end());
    }
    return Kernel(x, y, std::move(m));
  }

  /// A uniformly shuffled pairing: each point is fixed with probability
  /// p_fixed, the rest are matched at random.
  Involution involution(const FinSpace& x, double p_fixed = 0.3) {
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng_);
    std::vector<std::size_t> perm(x.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::vector<std::size_t> free;
    for (auto i : order)
      if (!coin(p_fixed)) free.push_back(i);
    for (std::size_t k = 0; k + 1 < free.size(); k += 2) {
      perm[free[k]] = free[k + 1];
      perm[free[k + 1]] = free[k];
    }
    return Involution(x, std::move(perm));
  }

  /// A finite measure whose support is a union of φ-orbits, so φ∘μ ≪ μ.
  Measure orbit_closed_measure(const Involution& phi, double density = 0.7) {
    const FinSpace& x = phi.space();
    std::vector<ExtNonneg> m(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      const std::size_t j = phi(i);
      if (j < i) continue;
      if (!coin(density)) continue;
      m[i] = positive();
      if (j != i) m[j] = positive();
    }
    return make_measure(x, std::move(m));
  }

  /// A substochastic μ-reversible kernel: K(x, y) = S(x, y) / μ(x) for a random
  /// symmetric S on supp(μ), scaled down uniformly if a row mass exceeds 1.
  Kernel reversible_kernel(const Measure& mu, double density = 0.6) {
    const FinSpace& x = mu.cod();
    const std::size_t n = x.size();
    std::vector<ExtNonneg> s(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) s[i * n + j] = s[j * n + i] = entry(density);
    std::vector<ExtNonneg> k(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      if (mu.mass(i).is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (mu.mass(j).is_zero()) continue;
        k[i * n + j] = divide(s[i * n + j], mu.mass(i));
      }
    }
    Kernel raw(x, x, std::move(k));
    ExtNonneg biggest;
    const Effect rm = row_mass(raw);
    for (std::size_t i = 0; i < n; ++i) biggest = rm.weight(i) > biggest ? rm.weight(i) : biggest;
    if (biggest.is_zero() || leq(biggest, ExtNonneg::one())) return raw;
    const ExtNonneg shrink = divide(ExtNonneg::one(), biggest);
    return Kernel::tabulate(x, x, [&](std::size_t i, std::size_t j) { return raw(i, j) * shrink; });
  }

  /// An acceptance for (μ, φ) that is built from a balancing function
  /// (possibly scaled by a constant), arbitrary, or balanced with a single
  /// entry perturbed.
  Effect acceptance(const Measure& mu, const Involution& phi) {
    const FinSpace& x = phi.space();
    switch (uniform_index(0, 4)) {
      case 0: return balancing_alpha(BalancingFunction::metropolis(), mu, phi);
      case 1: return balancing_alpha(BalancingFunction::barker(), mu, phi);
      case 2: {
        const ExtNonneg c = probability();
        const Effect base = balancing_alpha(BalancingFunction::metropolis(), mu, phi);
        return Kernel::tabulate(x, FinSpace::unit(), [&](std::size_t i, std::size_t) { return base.weight(i) * c; });
      }
      case 3: {
        const Effect base = balancing_alpha(BalancingFunction::barker(), mu, phi);
        const std::size_t k = uniform_index(0, x.size() - 1);
        const ExtNonneg v = probability();
        return Kernel::tabulate(x, FinSpace::unit(),
                                [&](std::size_t i, std::size_t) { return i == k ? v : base.weight(i); });
      }
      default: return probability_effect(x);
    }
  }

  /// A random MhProblem on n points with an orbit-closed target.
  MhProblem mh_problem(std::size_t n) {
    const FinSpace x = space(n);
    Involution phi = involution(x);
    Measure mu = orbit_closed_measure(phi);
    Effect alpha = acceptance(mu, phi);
    return {std::move(mu), std::move(phi), std::move(alpha)};
  }

  /// An MhProblem together with an involution s that leaves the target
  /// invariant: the support is closed under φ and s, and masses are constant
  /// on s-orbits.
  std::pair<MhProblem, Involution> skew_problem(std::size_t n) {
    const FinSpace x = space(n);
    Involution phi = involution(x);
    Involution s = involution(x);
    std::vector<bool> in(n, false);
    for (std::size_t i = 0; i < n; ++i)
      if (coin(0.7)) in[i] = true;
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t i = 0; i < n; ++i)
        if (in[i] && (!in[phi(i)] || !in[s(i)])) {
          in[phi(i)] = in[s(i)] = true;
          changed = true;
        }
    }
    std::vector<ExtNonneg> m(n);
    for (std::size_t i = 0; i < n; ++i)
      if (in[i] && s(i) >= i) m[i] = m[s(i)] = positive();
    Measure mu = make_measure(x, std::move(m));
    Effect alpha = acceptance(mu, phi);
    return {MhProblem{std::move(mu), std::move(phi), std::move(alpha)}, std::move(s)};
  }

 private:
  std::mt19937_64 rng_;
  long max_den_;
};

}  // namespace mhcat

#endif  // MHCAT_RANDOM_HPP
