#ifndef MHCAT_MCMC_HPP
#define MHCAT_MCMC_HPP

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mhcat/enrichment.hpp"
#include "mhcat/error.hpp"
#include "mhcat/kernel.hpp"

namespace mhcat {

namespace detail {

inline void require_endomorphism_on(const Measure& mu, const Kernel& p, std::string_view what) {
  if (!mu.is_measure()) throw SpaceMismatch(std::string(what) + ": expected a measure");
  require_same(p.dom(), p.cod(), what);
  require_same(mu.cod(), p.dom(), what);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Invariance and reversibility

/// P ∘ μ = μ.
inline bool is_invariant(const Measure& mu, const Kernel& p) {
  detail::require_endomorphism_on(mu, p, "is_invariant");
  return compose(p, mu) == mu;
}

inline bool detailed_balance_holds_at(const Measure& mu, const Kernel& p, std::size_t x, std::size_t y) {
  return mu.mass(x) * p(x, y) == mu.mass(y) * p(y, x);
}

/// First pair (x, y) with μ(x)P(x,y) ≠ μ(y)P(y,x), scanning x ≤ y.
inline std::optional<std::pair<std::size_t, std::size_t>> detailed_balance_violation(const Measure& mu,
                                                                                    const Kernel& p) {
  detail::require_endomorphism_on(mu, p, "is_reversible");
  for (std::size_t x = 0; x < p.rows(); ++x)
    for (std::size_t y = x + 1; y < p.rows(); ++y)
      if (!detailed_balance_holds_at(mu, p, x, y)) return std::pair{x, y};
  return std::nullopt;
}

/// Detailed balance μ(x)P(x,y) = μ(y)P(y,x), exactly. P need not be normalized.
inline bool is_reversible(const Measure& mu, const Kernel& p) { return !detailed_balance_violation(mu, p); }

/// π(x)P(x,y) = π(y)(s∘P∘s)(y,x) for all x, y. Requires s to be π-invariant.
inline bool is_skew_reversible(const Measure& pi, const Involution& s, const Kernel& p) {
  detail::require_endomorphism_on(pi, p, "is_skew_reversible");
  require_same(s.space(), p.dom(), "is_skew_reversible");
  const Kernel sk = lift(s);
  if (!is_invariant(pi, sk)) throw DomainError("is_skew_reversible: involution is not invariant for the measure");
  const Kernel twisted = compose(sk, compose(p, sk));
  for (std::size_t x = 0; x < p.rows(); ++x)
    for (std::size_t y = 0; y < p.rows(); ++y)
      if (!(pi.mass(x) * p(x, y) == pi.mass(y) * twisted(y, x))) return false;
  return true;
}

/// The four equivalent formulations of (π, s)-reversibility:
/// P skew-reversible; P∘s reversible; s∘P reversible; P = Q∘s = s∘R for
/// reversible Q, R (witnessed by Q = P∘s, R = s∘P).
inline std::array<bool, 4> skew_reversibility_conditions(const Measure& pi, const Involution& s, const Kernel& p) {
  const Kernel sk = lift(s);
  const Kernel ps = compose(sk, p);  // P then s
  const Kernel sp = compose(p, sk);  // s then P
  const bool c1 = is_skew_reversible(pi, s, p);
  const bool c2 = is_reversible(pi, sp);
  const bool c3 = is_reversible(pi, ps);
  const bool c4 = is_reversible(pi, sp) && is_reversible(pi, ps) && compose(sp, sk) == p && compose(sk, ps) == p;
  return {c1, c2, c3, c4};
}

// ---------------------------------------------------------------------------
// Bayesian inverses and augmentation

/// P†(y, x) = π(x)P(x, y) / (P∘π)(y). Rows where the pushforward vanishes
/// are uniform.
inline Kernel bayesian_inverse(const Measure& pi, const Kernel& p) {
  if (!pi.is_measure()) throw SpaceMismatch("bayesian_inverse: expected a measure");
  require_same(pi.cod(), p.dom(), "bayesian_inverse");
  const Measure m = compose(p, pi);
  const ExtNonneg uniform = p.rows() == 0 ? ExtNonneg::zero() : ExtNonneg(1, static_cast<long>(p.rows()));
  return Kernel::tabulate(p.cod(), p.dom(), [&](std::size_t y, std::size_t x) {
    const ExtNonneg& my = m.mass(y);
    if (my.is_zero()) return uniform;
    const ExtNonneg joint = pi.mass(x) * p(x, y);
    if (my.is_infinite() || joint.is_infinite())
      throw DomainError("bayesian_inverse: infinite mass at '" + p.cod().point(y).str() + "'");
    return divide(joint, my);
  });
}

/// π(x)P(x,y) = (P∘π)(y) P†(y,x) for all x, y.
inline bool is_bayesian_inverse(const Measure& pi, const Kernel& p, const Kernel& dagger) {
  require_same(dagger.dom(), p.cod(), "is_bayesian_inverse");
  require_same(dagger.cod(), p.dom(), "is_bayesian_inverse");
  const Measure m = compose(p, pi);
  for (std::size_t x = 0; x < p.rows(); ++x)
    for (std::size_t y = 0; y < p.cols(); ++y)
      if (!(pi.mass(x) * p(x, y) == m.mass(y) * dagger(y, x))) return false;
  return true;
}

/// R = (Id ⊗ Q) ∘ copy : X → X ⊗ Z, keeping x and drawing z ~ Q(x, ·).
inline Kernel noise_addition(const Kernel& q) {
  return compose(tensor(identity(q.dom()), q), copy(q.dom()));
}

/// R† : X ⊗ Z → X, forgetting the auxiliary coordinate.
inline Kernel noise_deletion(const FinSpace& x, const FinSpace& z) {
  return compose(right_unitor(x), tensor(identity(x), discard(z)));
}

struct Augmentation {
  Kernel chain;    ///< Π = R† ∘ P ∘ R on X
  Measure joint;   ///< μ = R ∘ π on X ⊗ Z
};

/// Marginalizes an augmented-space kernel P back to X. If P is μ-reversible
/// (resp. invariant) then Π is π-reversible (resp. invariant).
inline Augmentation augment_reversible(const Measure& pi, const Kernel& q, const Kernel& p) {
  if (!pi.is_measure()) throw SpaceMismatch("augment_reversible: expected a measure");
  require_same(pi.cod(), q.dom(), "augment_reversible");
  if (!is_normalized(q)) throw DomainError("augment_reversible: auxiliary kernel must be normalized");
  const FinSpace xz = product(q.dom(), q.cod());
  require_same(p.dom(), xz, "augment_reversible");
  require_same(p.cod(), xz, "augment_reversible");
  const Kernel r = noise_addition(q);
  const Kernel r_dagger = noise_deletion(q.dom(), q.cod());
  return {compose(r_dagger, compose(p, r)), compose(r, pi)};
}

// ---------------------------------------------------------------------------
// Involutive Metropolis–Hastings

/// A map a : [0,∞] → [0,1] with a(0) = 0 and a(t) = t·a(1/t).
struct BalancingFunction {
  std::string name;
  std::function<ExtNonneg(const ExtNonneg&)> eval;

  ExtNonneg operator()(const ExtNonneg& t) const { return eval(t); }

  /// min(1, t); a(∞) = 1.
  static BalancingFunction metropolis() {
    return {"metropolis", [](const ExtNonneg& t) { return min(ExtNonneg::one(), t); }};
  }

  /// t / (1 + t); a(∞) = 1.
  static BalancingFunction barker() {
    return {"barker", [](const ExtNonneg& t) {
              if (t.is_infinite()) return ExtNonneg::one();
              return divide(t, t + ExtNonneg::one());
            }};
  }

  static BalancingFunction by_name(std::string_view name) {
    if (name == "metropolis") return metropolis();
    if (name == "barker") return barker();
    throw DomainError("unknown balancing function '" + std::string(name) + "'");
  }
};

/// Target μ, involution φ and acceptance probability α on one space.
struct MhProblem {
  Measure target;
  Involution involution;
  Effect acceptance;

  const FinSpace& space() const { return involution.space(); }

  void validate() const {
    if (!target.is_measure()) throw SpaceMismatch("MhProblem: target must be a measure");
    if (!acceptance.is_effect()) throw SpaceMismatch("MhProblem: acceptance must be an effect");
    require_same(target.cod(), involution.space(), "MhProblem target");
    require_same(acceptance.dom(), involution.space(), "MhProblem acceptance");
    if (!is_cancellative(target)) throw NotCancellative("MhProblem: target has an infinite atom");
    for (std::size_t i = 0; i < acceptance.rows(); ++i)
      if (!leq(acceptance.weight(i), ExtNonneg::one()))
        throw DomainError("MhProblem: acceptance " + acceptance.weight(i).to_string() + " at '" +
                          involution.space().point(i).str() + "' exceeds 1");
  }
};

/// ᾱ with α + ᾱ = 1, for a probability α.
inline Effect complement(const Effect& alpha) {
  return Kernel::tabulate(alpha.dom(), alpha.cod(), [&](std::size_t i, std::size_t) {
    if (!leq(alpha.weight(i), ExtNonneg::one()))
      throw DomainError("complement: " + alpha.weight(i).to_string() + " exceeds 1");
    return residual(alpha.weight(i), ExtNonneg::one());
  });
}

/// α · φ + ᾱ · Id.
inline Kernel build_mh(const MhProblem& prob) {
  prob.validate();
  const FinSpace& x = prob.space();
  return kernel_add(reweight(prob.acceptance, lift(prob.involution)),
                    reweight(complement(prob.acceptance), identity(x)));
}

/// r = d(φ∘μ)/dμ.
inline Effect involution_derivative(const Measure& mu, const Involution& phi) {
  return rn_derivative(compose(lift(phi), mu), mu);
}

inline bool balancing_holds_at(const MhProblem& prob, const Effect& r, std::size_t xi) {
  if (prob.target.mass(xi).is_zero()) return true;
  const ExtNonneg& a = prob.acceptance.weight(xi);
  return a == prob.acceptance.weight(prob.involution(xi)) * r.weight(xi);
}

/// First ξ with μ(ξ) > 0 and α(ξ) ≠ α(φ(ξ))·r(ξ). Throws NotAbsolutelyContinuous
/// when φ∘μ is not ≪ μ.
inline std::optional<std::size_t> balancing_violation(const MhProblem& prob) {
  prob.validate();
  const Effect r = involution_derivative(prob.target, prob.involution);
  for (std::size_t xi = 0; xi < prob.space().size(); ++xi)
    if (!balancing_holds_at(prob, r, xi)) return xi;
  return std::nullopt;
}

/// α = (α∘φ) ∗ r, μ-almost everywhere.
inline bool check_balancing(const MhProblem& prob) { return !balancing_violation(prob); }

/// α = a ∘ r. Off the support of μ, r = 0 and so α = a(0) = 0.
inline Effect balancing_alpha(const BalancingFunction& a, const Measure& mu, const Involution& phi) {
  const Effect r = involution_derivative(mu, phi);
  return Kernel::tabulate(r.dom(), r.cod(), [&](std::size_t i, std::size_t) { return a(r.weight(i)); });
}

struct TheoremFlags {
  bool reversible;
  bool balanced;
  friend bool operator==(const TheoremFlags&, const TheoremFlags&) = default;
};

/// Both sides of the MH biconditional, computed independently: detailed balance
/// of the assembled kernel, and the balancing condition on α.
inline TheoremFlags verify_mh_theorem(const MhProblem& prob) {
  const bool balanced = check_balancing(prob);
  return {is_reversible(prob.target, build_mh(prob)), balanced};
}

/// s ∘ (α·φ + ᾱ·Id): moves to s(φ(ξ)) with probability α(ξ), else to s(ξ).
inline Kernel build_skew_mh(const MhProblem& prob, const Involution& s) {
  require_same(s.space(), prob.space(), "build_skew_mh");
  const Kernel sk = lift(s);
  if (!is_invariant(prob.target, sk)) throw DomainError("build_skew_mh: involution s is not invariant for the target");
  return compose(sk, build_mh(prob));
}

inline TheoremFlags verify_skew_theorem(const MhProblem& prob, const Involution& s) {
  const bool balanced = check_balancing(prob);
  return {is_skew_reversible(prob.target, s, build_skew_mh(prob, s)), balanced};
}

/// The first MH summand α·φ is μ-reversible iff the balancing condition holds.
inline TheoremFlags first_summand_reversible(const Measure& mu, const Involution& phi, const Effect& alpha) {
  const MhProblem prob{mu, phi, alpha};
  const bool balanced = check_balancing(prob);
  return {is_reversible(mu, reweight(alpha, lift(phi))), balanced};
}

/// φ is μ-reversible up to the correction factor r:
/// μ(x)[φ(x) = y] = μ(y) r(y) [φ(y) = x] for all x, y.
inline bool reweighting_identity_holds(const Measure& mu, const Involution& phi) {
  const Effect r = involution_derivative(mu, phi);
  const Kernel f = lift(phi);
  for (std::size_t x = 0; x < f.rows(); ++x)
    for (std::size_t y = 0; y < f.rows(); ++y)
      if (!(mu.mass(x) * f(x, y) == mu.mass(y) * r.weight(y) * f(y, x))) return false;
  return true;
}

}  // namespace mhcat

#endif  // MHCAT_MCMC_HPP
