#ifndef MHCAT_ENRICHMENT_HPP
#define MHCAT_ENRICHMENT_HPP

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "mhcat/error.hpp"
#include "mhcat/kernel.hpp"

namespace mhcat {

namespace detail {

inline void require_parallel(const Kernel& p, const Kernel& q, std::string_view what) {
  require_same(p.dom(), q.dom(), what);
  require_same(p.cod(), q.cod(), what);
}

template <typename F>
Kernel entrywise(const Kernel& p, const Kernel& q, F&& f) {
  return Kernel::tabulate(p.dom(), p.cod(), [&](std::size_t i, std::size_t j) { return f(p(i, j), q(i, j)); });
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Commutative-monoid structure on hom-sets

inline Kernel kernel_zero(const FinSpace& x, const FinSpace& y) { return zero(x, y); }

inline Kernel kernel_add(const Kernel& p, const Kernel& q) {
  detail::require_parallel(p, q, "kernel_add");
  return detail::entrywise(p, q, [](const ExtNonneg& a, const ExtNonneg& b) { return a + b; });
}

inline Kernel operator+(const Kernel& p, const Kernel& q) { return kernel_add(p, q); }

inline bool is_zero(const Kernel& p) {
  for (const auto& v : p.entries())
    if (!v.is_zero()) return false;
  return true;
}

/// A kernel R with P + R = Q, when P ≤ Q.
inline std::optional<Kernel> leq_witness(const Kernel& p, const Kernel& q) {
  detail::require_parallel(p, q, "leq_kernel");
  for (std::size_t k = 0; k < p.entries().size(); ++k)
    if (!leq(p.entries()[k], q.entries()[k])) return std::nullopt;
  return detail::entrywise(p, q, [](const ExtNonneg& a, const ExtNonneg& b) { return residual(a, b); });
}

/// The canonical preorder P ≤ Q (∃R. P + R = Q), decided entrywise.
inline bool leq_kernel(const Kernel& p, const Kernel& q) { return leq_witness(p, q).has_value(); }

// ---------------------------------------------------------------------------
// Cancellativity and finiteness

/// A pair (Q, R) with Q ≠ R but P + Q = P + R, if one exists. On finite spaces
/// one exists exactly when P has an infinite entry: Q = 0 and R = unit mass there.
inline std::optional<std::pair<Kernel, Kernel>> cancellativity_counterexample(const Kernel& p) {
  for (std::size_t i = 0; i < p.rows(); ++i)
    for (std::size_t j = 0; j < p.cols(); ++j)
      if (p(i, j).is_infinite()) {
        Kernel r = Kernel::tabulate(p.dom(), p.cod(), [&](std::size_t a, std::size_t b) {
          return (a == i && b == j) ? ExtNonneg::one() : ExtNonneg::zero();
        });
        return std::pair{zero(p.dom(), p.cod()), std::move(r)};
      }
  return std::nullopt;
}

/// Pointwise σ-finite, i.e. no infinite atom.
inline bool is_cancellative(const Kernel& p) {
  for (const auto& v : p.entries())
    if (v.is_infinite()) return false;
  return true;
}

/// 1 ∘ P is cancellative, i.e. every row has finite total mass.
inline bool is_finite_morphism(const Kernel& p) { return is_cancellative(row_mass(p)); }

// ---------------------------------------------------------------------------
// Absolute continuity, meets, singularity

/// P ≪ Q: in every row, Q(x, y) = 0 implies P(x, y) = 0.
inline bool abs_cont(const Kernel& p, const Kernel& q) {
  detail::require_parallel(p, q, "abs_cont");
  for (std::size_t k = 0; k < p.entries().size(); ++k)
    if (q.entries()[k].is_zero() && !p.entries()[k].is_zero()) return false;
  return true;
}

/// P ≪ Q evaluated from the definition: S ∘ Q ∘ R = 0 ⟹ S ∘ P ∘ R = 0, with R
/// ranging over Dirac measures I → X and S over point indicators Y → I. These
/// span every kernel into and out of a finite space, so the basis suffices.
inline bool abs_cont_by_definition(const Kernel& p, const Kernel& q) {
  detail::require_parallel(p, q, "abs_cont");
  for (const auto& x : p.dom().points()) {
    const Kernel r = dirac(p.dom(), x);
    const Kernel qr = compose(q, r), pr = compose(p, r);
    for (std::size_t y = 0; y < p.cols(); ++y) {
      const Kernel s = indicator(p.cod(), {y});
      if (is_zero(compose(s, qr)) && !is_zero(compose(s, pr))) return false;
    }
  }
  return true;
}

inline bool equivalent(const Kernel& p, const Kernel& q) { return abs_cont(p, q) && abs_cont(q, p); }

/// Canonical meet under ≪: P's masses restricted to the common support.
inline Kernel meet(const Kernel& p, const Kernel& q) {
  detail::require_parallel(p, q, "meet");
  return detail::entrywise(p, q, [](const ExtNonneg& a, const ExtNonneg& b) {
    return b.is_zero() ? ExtNonneg::zero() : a;
  });
}

/// P ⊥ Q: rowwise disjoint supports (0 is a meet).
inline bool is_singular(const Kernel& p, const Kernel& q) {
  detail::require_parallel(p, q, "is_singular");
  for (std::size_t k = 0; k < p.entries().size(); ++k)
    if (p.entries()[k].is_positive() && q.entries()[k].is_positive()) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Lebesgue decompositions

struct Decomposition {
  Kernel ac;  ///< absolutely continuous part, a meet of P and the reference
  Kernel si;  ///< singular part
};

/// P = ac + si with ac ≪ Q (the canonical meet) and si ⊥ Q.
inline Decomposition lebesgue_decompose(const Kernel& p, const Kernel& q) {
  detail::require_parallel(p, q, "lebesgue_decompose");
  Kernel ac = meet(p, q);
  Kernel si = detail::entrywise(p, q, [](const ExtNonneg& a, const ExtNonneg& b) {
    return b.is_zero() ? a : ExtNonneg::zero();
  });
  return {std::move(ac), std::move(si)};
}

struct InvolutiveDecomposition {
  std::vector<std::size_t> set;  ///< S, the support of the absolutely continuous part
  Decomposition parts;
};

/// The (φ∘μ)-decomposition of μ. On S = supp(ac) the measure and its
/// pushforward are equivalent; off S they are singular.
inline InvolutiveDecomposition involutive_decompose(const Measure& mu, const Involution& phi) {
  if (!mu.is_measure()) throw SpaceMismatch("involutive_decompose: expected a measure");
  require_same(mu.cod(), phi.space(), "involutive_decompose");
  if (!is_cancellative(mu)) throw NotCancellative("involutive_decompose: measure has an infinite atom");
  Decomposition d = lebesgue_decompose(mu, compose(lift(phi), mu));
  return {row_support(d.ac, 0), std::move(d)};
}

// ---------------------------------------------------------------------------
// Radon–Nikodym derivatives and almost-everywhere equality

/// r with π = r · μ pointwise. Null atoms of μ get r = 0.
inline Effect rn_derivative(const Measure& pi, const Measure& mu) {
  if (!pi.is_measure() || !mu.is_measure()) throw SpaceMismatch("rn_derivative: expected measures");
  require_same(pi.cod(), mu.cod(), "rn_derivative");
  if (!abs_cont(pi, mu)) throw NotAbsolutelyContinuous("rn_derivative: pi is not absolutely continuous w.r.t. mu");
  std::vector<ExtNonneg> r(mu.cols());
  for (std::size_t x = 0; x < mu.cols(); ++x) {
    const ExtNonneg& m = mu.mass(x);
    const ExtNonneg& p = pi.mass(x);
    if (m.is_zero()) continue;
    if (m.is_infinite()) {
      if (p.is_infinite()) r[x] = ExtNonneg::one();
      else if (p.is_positive())
        throw NoExactDerivative("rn_derivative: infinite atom of mu at '" + mu.cod().point(x).str() +
                                "' carries finite positive mass");
      continue;
    }
    r[x] = divide(p, m);
  }
  return make_effect(mu.cod(), std::move(r));
}

/// Rows of P and Q agree wherever μ has positive mass.
inline bool ae_equal(const Measure& mu, const Kernel& p, const Kernel& q) {
  if (!mu.is_measure()) throw SpaceMismatch("ae_equal: expected a measure");
  detail::require_parallel(p, q, "ae_equal");
  require_same(mu.cod(), p.dom(), "ae_equal");
  if (!is_cancellative(mu)) throw NotCancellative("ae_equal: measure has an infinite atom");
  for (std::size_t x = 0; x < p.rows(); ++x) {
    if (mu.mass(x).is_zero()) continue;
    for (std::size_t y = 0; y < p.cols(); ++y)
      if (!(p(x, y) == q(x, y))) return false;
  }
  return true;
}

}  // namespace mhcat

#endif  // MHCAT_ENRICHMENT_HPP
