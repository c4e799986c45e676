#ifndef MHCAT_MH_ALGORITHMS_HPP
#define MHCAT_MH_ALGORITHMS_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "mhcat/enrichment.hpp"
#include "mhcat/error.hpp"
#include "mhcat/kernel.hpp"
#include "mhcat/mcmc.hpp"

// Classical MH, the exchange algorithm and systematic-scan Gibbs, each built
// from the involutive MH kernel or from conditionals.

namespace mhcat {

namespace detail {

/// a / b with the convention a / 0 = 0.
inline ExtNonneg ratio_or_zero(const ExtNonneg& a, const ExtNonneg& b) {
  if (b.is_zero()) return {};
  return divide(a, b);
}

inline void require_finite_measure(const Measure& mu, std::string_view what) {
  if (!mu.is_measure()) throw SpaceMismatch(std::string(what) + ": expected a measure");
  if (!is_cancellative(mu)) throw DomainError(std::string(what) + ": measure has an infinite atom");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Classical Metropolis–Hastings

struct ClassicalMh {
  Kernel via_involution;  ///< marginal of the swap-involution MH kernel on X ⊗ X
  Kernel direct;          ///< the textbook accept/reject matrix
  MhProblem augmented;    ///< (π ⊗ q, swap, α) on X ⊗ X
};

/// α(x, y) = min(1, π(y)q(y,x) / (π(x)q(x,y))), and 0 when π(x)q(x,y) = 0.
inline Effect classical_acceptance(const Measure& pi, const Kernel& q) {
  const FinSpace& x = pi.cod();
  const std::size_t n = x.size();
  return Kernel::tabulate(product(x, x), FinSpace::unit(), [&](std::size_t k, std::size_t) {
    const std::size_t a = k / n, b = k % n;
    return min(ExtNonneg::one(), detail::ratio_or_zero(pi.mass(b) * q(b, a), pi.mass(a) * q(a, b)));
  });
}

inline ClassicalMh classical_mh(const Measure& pi, const Kernel& q) {
  detail::require_finite_measure(pi, "classical_mh");
  require_same(q.dom(), pi.cod(), "classical_mh");
  require_same(q.cod(), pi.cod(), "classical_mh");
  if (!is_normalized(q)) throw DomainError("classical_mh: proposal must be normalized");

  const FinSpace& x = pi.cod();
  const std::size_t n = x.size();
  MhProblem prob{compose(noise_addition(q), pi), Involution::swap_factors(x), classical_acceptance(pi, q)};
  Kernel via = augment_reversible(pi, q, build_mh(prob)).chain;

  // Textbook form: move x → y with q(x,y)·α(x,y), stay with the remainder.
  std::vector<ExtNonneg> m(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    ExtNonneg moved;
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      const ExtNonneg forward = pi.mass(a) * q(a, b);
      const ExtNonneg accept =
          forward.is_zero() ? ExtNonneg::zero() : min(ExtNonneg::one(), divide(pi.mass(b) * q(b, a), forward));
      m[a * n + b] = q(a, b) * accept;
      moved += m[a * n + b];
    }
    m[a * n + a] = residual(moved, ExtNonneg::one());
  }
  return {std::move(via), Kernel(x, x, std::move(m)), std::move(prob)};
}

// ---------------------------------------------------------------------------
// Exchange algorithm

/// Augmented space (X ⊗ Z) ⊗ X with points ((x, z), y): current parameter x,
/// synthetic data z ~ ℓ_y, proposed parameter y ~ q(x, ·).
struct ExchangeSetup {
  Measure posterior;  ///< normalized target on X, ∝ prior(x) ℓ_x(z_obs)
  MhProblem problem;  ///< (μ, (x,z,y) ↦ (y,z,x), α) on the augmented space
  Kernel augment;     ///< X → augmented space, x ↦ δ_x ⊗ ℓ_y ⊗ q(x, dy)
  Kernel project;     ///< augmented space → X, keeps x
};

/// Builds the exchange-algorithm instance. `lik` may have unnormalized rows:
/// the augmented measure uses row-normalized likelihoods, while α is computed
/// from the raw values, whose per-row constants cancel.
inline ExchangeSetup exchange_algorithm(const Measure& prior, const Kernel& lik, const Label& z_obs, const Kernel& q) {
  detail::require_finite_measure(prior, "exchange_algorithm");
  const FinSpace& xs = prior.cod();
  const FinSpace& zs = lik.cod();
  require_same(lik.dom(), xs, "exchange_algorithm likelihood");
  require_same(q.dom(), xs, "exchange_algorithm proposal");
  require_same(q.cod(), xs, "exchange_algorithm proposal");
  if (!is_normalized(q)) throw DomainError("exchange_algorithm: proposal must be normalized");
  const std::size_t zo = zs.index_of(z_obs);
  const std::size_t nx = xs.size(), nz = zs.size();

  const Effect row_totals = row_mass(lik);
  for (std::size_t x = 0; x < nx; ++x) {
    const ExtNonneg& t = row_totals.weight(x);
    if (t.is_zero() || t.is_infinite())
      throw DomainError("exchange_algorithm: likelihood row '" + xs.point(x).str() + "' has no finite positive mass");
  }
  const Kernel ell = Kernel::tabulate(xs, zs, [&](std::size_t x, std::size_t z) {
    return divide(lik(x, z), row_totals.weight(x));
  });

  ExtNonneg total;
  std::vector<ExtNonneg> post(nx);
  for (std::size_t x = 0; x < nx; ++x) {
    post[x] = prior.mass(x) * ell(x, zo);
    total += post[x];
  }
  if (total.is_zero()) throw DomainError("exchange_algorithm: zero-mass target");
  for (auto& v : post) v = divide(v, total);
  Measure posterior = make_measure(xs, std::move(post));

  const FinSpace aug = product(product(xs, zs), xs);
  auto index = [&](std::size_t x, std::size_t z, std::size_t y) { return (x * nz + z) * nx + y; };

  Kernel augment = Kernel::tabulate(xs, aug, [&](std::size_t from, std::size_t k) {
    const std::size_t y = k % nx, z = (k / nx) % nz, x = k / (nx * nz);
    return from == x ? q(x, y) * ell(y, z) : ExtNonneg::zero();
  });
  Measure mu = compose(augment, posterior);

  std::vector<std::size_t> perm(aug.size());
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t z = 0; z < nz; ++z)
      for (std::size_t y = 0; y < nx; ++y) perm[index(x, z, y)] = index(y, z, x);

  // Unnormalized target and likelihood values only.
  Effect alpha = Kernel::tabulate(aug, FinSpace::unit(), [&](std::size_t k, std::size_t) {
    const std::size_t y = k % nx, z = (k / nx) % nz, x = k / (nx * nz);
    const ExtNonneg num = prior.mass(y) * lik(y, zo) * q(y, x) * lik(x, z);
    const ExtNonneg den = prior.mass(x) * lik(x, zo) * q(x, y) * lik(y, z);
    return min(ExtNonneg::one(), detail::ratio_or_zero(num, den));
  });

  Kernel project = Kernel::tabulate(aug, xs, [&](std::size_t k, std::size_t to) {
    return k / (nx * nz) == to ? ExtNonneg::one() : ExtNonneg::zero();
  });

  return {std::move(posterior), MhProblem{std::move(mu), Involution(aug, std::move(perm)), std::move(alpha)},
          std::move(augment), std::move(project)};
}

/// The exchange chain marginalized back to X.
inline Kernel exchange_chain(const ExchangeSetup& setup) {
  return compose(setup.project, compose(build_mh(setup.problem), setup.augment));
}

// ---------------------------------------------------------------------------
// Conditionals and Gibbs sampling

enum class Given { first, second };

/// The first projection X ⊗ Y → X.
inline Kernel project_first(const FinSpace& x, const FinSpace& y) {
  return compose(right_unitor(x), tensor(identity(x), discard(y)));
}

/// The second projection X ⊗ Y → Y.
inline Kernel project_second(const FinSpace& x, const FinSpace& y) {
  return compose(left_unitor(y), tensor(discard(x), identity(y)));
}

/// A conditional of μ on X ⊗ Y given one factor: f(x, y) = μ(x, y) / μ_X(x).
/// Rows over null marginal points are uniform.
inline Kernel conditional(const Measure& mu, const FinSpace& x, const FinSpace& y, Given given = Given::first) {
  if (!mu.is_measure()) throw SpaceMismatch("conditional: expected a measure");
  require_same(mu.cod(), product(x, y), "conditional");
  const bool first = given == Given::first;
  const FinSpace& cond = first ? x : y;
  const FinSpace& out = first ? y : x;
  auto joint = [&](std::size_t c, std::size_t o) -> const ExtNonneg& {
    return first ? mu.mass(c * y.size() + o) : mu.mass(o * y.size() + c);
  };
  const ExtNonneg uniform = out.size() == 0 ? ExtNonneg::zero() : ExtNonneg(1, static_cast<long>(out.size()));
  std::vector<ExtNonneg> m;
  m.reserve(cond.size() * out.size());
  for (std::size_t c = 0; c < cond.size(); ++c) {
    ExtNonneg marginal;
    for (std::size_t o = 0; o < out.size(); ++o) marginal += joint(c, o);
    if (marginal.is_infinite())
      throw DomainError("conditional: infinite marginal mass at '" + cond.point(c).str() + "'");
    for (std::size_t o = 0; o < out.size(); ++o)
      m.push_back(marginal.is_zero() ? uniform : divide(joint(c, o), marginal));
  }
  return Kernel(cond, out, std::move(m));
}

/// μ = (Id ⊗ f) ∘ copy ∘ μ_X (given the first factor) or the mirrored form.
inline bool is_conditional(const Measure& mu, const FinSpace& x, const FinSpace& y, const Kernel& f,
                           Given given = Given::first) {
  if (given == Given::first) {
    const Measure marginal = compose(project_first(x, y), mu);
    return compose(compose(tensor(identity(x), f), copy(x)), marginal) == mu;
  }
  const Measure marginal = compose(project_second(x, y), mu);
  return compose(compose(tensor(f, identity(y)), copy(y)), marginal) == mu;
}

/// Deterministic regrouping X_1 ⊗ ... ⊗ X_n → X_{-i} ⊗ X_i, moving factor i to
/// the last slot. Indices are row-major digits of the left-grouped product.
inline Kernel move_factor_last(std::span<const FinSpace> factors, std::size_t i) {
  std::vector<FinSpace> others;
  for (std::size_t k = 0; k < factors.size(); ++k)
    if (k != i) others.push_back(factors[k]);
  const FinSpace joint = product_of(factors);
  const FinSpace target = product(product_of(others), factors[i]);
  std::vector<std::size_t> f(joint.size());
  std::vector<std::size_t> digits(factors.size());
  for (std::size_t idx = 0; idx < joint.size(); ++idx) {
    std::size_t rest = idx;
    for (std::size_t k = factors.size(); k-- > 0;) {
      digits[k] = rest % factors[k].size();
      rest /= factors[k].size();
    }
    std::size_t head = 0;
    for (std::size_t k = 0; k < factors.size(); ++k)
      if (k != i) head = head * factors[k].size() + digits[k];
    f[idx] = head * factors[i].size() + digits[i];
  }
  return deterministic(joint, target, f);
}

/// The single-site updates P_1, ..., P_n: P_i redraws coordinate i from its
/// conditional given the others.
inline std::vector<Kernel> gibbs_updates(const Measure& mu, std::span<const FinSpace> factors) {
  if (factors.size() < 2) throw DomainError("gibbs: need at least two factors");
  detail::require_finite_measure(mu, "gibbs");
  require_same(mu.cod(), product_of(factors), "gibbs");
  std::vector<Kernel> updates;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    std::vector<FinSpace> others;
    for (std::size_t k = 0; k < factors.size(); ++k)
      if (k != i) others.push_back(factors[k]);
    const FinSpace rest = product_of(others);
    const FinSpace& xi = factors[i];

    const Kernel regroup = move_factor_last(factors, i);
    const Kernel f = conditional(compose(regroup, mu), rest, xi, Given::first);
    const Kernel redraw = compose(tensor(identity(rest), f), copy(rest));
    const Kernel drop = project_first(rest, xi);
    updates.push_back(compose(transpose(regroup), compose(redraw, compose(drop, regroup))));
  }
  return updates;
}

/// P_n ∘ ... ∘ P_1.
inline Kernel gibbs(const Measure& mu, std::span<const FinSpace> factors) {
  const auto updates = gibbs_updates(mu, factors);
  Kernel acc = identity(mu.cod());
  for (const auto& p : updates) acc = compose(p, acc);
  return acc;
}

}  // namespace mhcat

#endif  // MHCAT_MH_ALGORITHMS_HPP
