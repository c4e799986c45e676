#ifndef MHCAT_KERNEL_HPP
#define MHCAT_KERNEL_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "mhcat/error.hpp"
#include "mhcat/semiring.hpp"
#include "mhcat/space.hpp"

namespace mhcat {

/// A morphism X → Y of the CD category of finite spaces: a |X| × |Y| matrix
/// of [0,∞] masses, entry (x, y) being K(x, {y}).
///
/// Measures are kernels out of the unit (one row), effects are kernels into
/// the unit (one column). Kernels are immutable; every operation returns a
/// fresh value.
class Kernel {
 public:
  Kernel() : Kernel(FinSpace::unit(), FinSpace::unit()) {}

  /// The zero kernel.
  Kernel(FinSpace dom, FinSpace cod)
      : dom_(std::move(dom)), cod_(std::move(cod)), m_(dom_.size() * cod_.size()) {}

  Kernel(FinSpace dom, FinSpace cod, std::vector<ExtNonneg> entries)
      : dom_(std::move(dom)), cod_(std::move(cod)), m_(std::move(entries)) {
    if (m_.size() != dom_.size() * cod_.size())
      throw SpaceMismatch("kernel entry count " + std::to_string(m_.size()) + " does not match " +
                          std::to_string(dom_.size()) + "x" + std::to_string(cod_.size()));
  }

  /// Builds the kernel whose (i, j) entry is f(i, j).
  template <typename F>
  static Kernel tabulate(const FinSpace& dom, const FinSpace& cod, F&& f) {
    std::vector<ExtNonneg> m;
    m.reserve(dom.size() * cod.size());
    for (std::size_t i = 0; i < dom.size(); ++i)
      for (std::size_t j = 0; j < cod.size(); ++j) m.push_back(f(i, j));
    return Kernel(dom, cod, std::move(m));
  }

  const FinSpace& dom() const noexcept { return dom_; }
  const FinSpace& cod() const noexcept { return cod_; }
  std::size_t rows() const noexcept { return dom_.size(); }
  std::size_t cols() const noexcept { return cod_.size(); }

  const ExtNonneg& operator()(std::size_t i, std::size_t j) const { return m_[i * cod_.size() + j]; }
  const ExtNonneg& at(const Label& x, const Label& y) const {
    return (*this)(dom_.index_of(x), cod_.index_of(y));
  }
  const std::vector<ExtNonneg>& entries() const noexcept { return m_; }

  bool is_measure() const { return dom_ == FinSpace::unit(); }
  bool is_effect() const { return cod_ == FinSpace::unit(); }

  /// Mass of a measure at point j.
  const ExtNonneg& mass(std::size_t j) const { return (*this)(0, j); }
  /// Value of an effect at point i.
  const ExtNonneg& weight(std::size_t i) const { return (*this)(i, 0); }

  friend bool operator==(const Kernel& a, const Kernel& b) {
    return a.dom_ == b.dom_ && a.cod_ == b.cod_ && a.m_ == b.m_;
  }

  friend std::ostream& operator<<(std::ostream& os, const Kernel& k) {
    os << '[';
    for (std::size_t i = 0; i < k.rows(); ++i) {
      os << (i ? ", [" : "[");
      for (std::size_t j = 0; j < k.cols(); ++j) os << (j ? "," : "") << k(i, j);
      os << ']';
    }
    return os << ']';
  }

 private:
  FinSpace dom_;
  FinSpace cod_;
  std::vector<ExtNonneg> m_;
};

using Measure = Kernel;
using Effect = Kernel;

inline Measure make_measure(const FinSpace& x, std::vector<ExtNonneg> masses) {
  return Kernel(FinSpace::unit(), x, std::move(masses));
}

inline Effect make_effect(const FinSpace& x, std::vector<ExtNonneg> weights) {
  return Kernel(x, FinSpace::unit(), std::move(weights));
}

/// Indices j with positive mass in row i.
inline std::vector<std::size_t> row_support(const Kernel& k, std::size_t i) {
  std::vector<std::size_t> s;
  for (std::size_t j = 0; j < k.cols(); ++j)
    if (k(i, j).is_positive()) s.push_back(j);
  return s;
}

// ---------------------------------------------------------------------------
// Composition and monoidal product

/// later ∘ earlier (Chapman–Kolmogorov): result(x, z) = Σ_y earlier(x, y) · later(y, z).
inline Kernel compose(const Kernel& later, const Kernel& earlier) {
  require_same(earlier.cod(), later.dom(), "compose");
  const std::size_t n = earlier.rows(), m = earlier.cols(), p = later.cols();
  std::vector<ExtNonneg> out(n * p);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < m; ++y) {
      const ExtNonneg& a = earlier(x, y);
      if (a.is_zero()) continue;
      for (std::size_t z = 0; z < p; ++z) {
        const ExtNonneg& b = later(y, z);
        if (b.is_zero()) continue;
        out[x * p + z] += a * b;
      }
    }
  }
  return Kernel(earlier.dom(), later.cod(), std::move(out));
}

/// left ⊗ right: ((x, y), (x', y')) ↦ left(x, x') · right(y, y').
inline Kernel tensor(const Kernel& left, const Kernel& right) {
  const FinSpace dom = product(left.dom(), right.dom());
  const FinSpace cod = product(left.cod(), right.cod());
  const std::size_t rc = right.cols(), rr = right.rows();
  return Kernel::tabulate(dom, cod, [&](std::size_t i, std::size_t j) {
    return left(i / rr, j / rc) * right(i % rr, j % rc);
  });
}

// ---------------------------------------------------------------------------
// Structure morphisms

/// Deterministic kernel of a function given by point indices.
inline Kernel deterministic(const FinSpace& dom, const FinSpace& cod, const std::vector<std::size_t>& f) {
  if (f.size() != dom.size()) throw SpaceMismatch("deterministic: map size does not match domain");
  std::vector<ExtNonneg> m(dom.size() * cod.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] >= cod.size()) throw DomainError("deterministic: image index out of range");
    m[i * cod.size() + f[i]] = ExtNonneg::one();
  }
  return Kernel(dom, cod, std::move(m));
}

inline Kernel identity(const FinSpace& x) {
  std::vector<std::size_t> f(x.size());
  std::iota(f.begin(), f.end(), std::size_t{0});
  return deterministic(x, x, f);
}

inline Kernel zero(const FinSpace& x, const FinSpace& y) { return Kernel(x, y); }

/// X → X ⊗ X, x ↦ δ_(x,x).
inline Kernel copy(const FinSpace& x) {
  std::vector<std::size_t> f(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) f[i] = i * x.size() + i;
  return deterministic(x, product(x, x), f);
}

/// X → I, the all-ones effect (also the multiplicative unit of effects).
inline Kernel discard(const FinSpace& x) { return deterministic(x, FinSpace::unit(), std::vector<std::size_t>(x.size(), 0)); }

/// X ⊗ Y → Y ⊗ X.
inline Kernel swap(const FinSpace& x, const FinSpace& y) {
  std::vector<std::size_t> f(x.size() * y.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) f[i * y.size() + j] = j * x.size() + i;
  return deterministic(product(x, y), product(y, x), f);
}

/// I → X, unit mass at the given point.
inline Kernel dirac(const FinSpace& x, const Label& point) {
  return deterministic(FinSpace::unit(), x, {x.index_of(point)});
}

/// (X ⊗ Y) ⊗ Z → X ⊗ (Y ⊗ Z).
inline Kernel associator(const FinSpace& x, const FinSpace& y, const FinSpace& z) {
  const FinSpace dom = product(product(x, y), z);
  const FinSpace cod = product(x, product(y, z));
  std::vector<std::size_t> f(dom.size());
  std::iota(f.begin(), f.end(), std::size_t{0});  // both groupings share the row-major index
  return deterministic(dom, cod, f);
}

/// I ⊗ X → X.
inline Kernel left_unitor(const FinSpace& x) {
  std::vector<std::size_t> f(x.size());
  std::iota(f.begin(), f.end(), std::size_t{0});
  return deterministic(product(FinSpace::unit(), x), x, f);
}

/// X ⊗ I → X.
inline Kernel right_unitor(const FinSpace& x) {
  std::vector<std::size_t> f(x.size());
  std::iota(f.begin(), f.end(), std::size_t{0});
  return deterministic(product(x, FinSpace::unit()), x, f);
}

/// The inverse of a permutation kernel (its transpose).
inline Kernel transpose(const Kernel& k) {
  return Kernel::tabulate(k.cod(), k.dom(), [&](std::size_t i, std::size_t j) { return k(j, i); });
}

enum class StructureKind { identity, copy, discard, swap, dirac };

/// Dispatches to the named structure morphism. `y` is used by swap, `point` by dirac.
inline Kernel structure(StructureKind kind, const FinSpace& x, const std::optional<FinSpace>& y = std::nullopt,
                        const std::optional<Label>& point = std::nullopt) {
  switch (kind) {
    case StructureKind::identity: return identity(x);
    case StructureKind::copy: return copy(x);
    case StructureKind::discard: return discard(x);
    case StructureKind::swap:
      if (!y) throw DomainError("swap requires a second space");
      return swap(x, *y);
    case StructureKind::dirac:
      if (!point) throw DomainError("dirac requires a point");
      return dirac(x, *point);
  }
  throw DomainError("unknown structure kind");
}

// ---------------------------------------------------------------------------
// Involutions

/// A self-inverse permutation of a space's points.
class Involution {
 public:
  explicit Involution(FinSpace space) : space_(std::move(space)), perm_(space_.size()) {
    std::iota(perm_.begin(), perm_.end(), std::size_t{0});
  }

  Involution(FinSpace space, std::vector<std::size_t> perm) : space_(std::move(space)), perm_(std::move(perm)) {
    if (perm_.size() != space_.size()) throw SpaceMismatch("involution: permutation size does not match space");
    for (std::size_t i = 0; i < perm_.size(); ++i) {
      if (perm_[i] >= perm_.size()) throw DomainError("involution: index out of range");
      if (perm_[perm_[i]] != i)
        throw DomainError("not an involution: " + space_.point(i).str() + " -> " + space_.point(perm_[i]).str() +
                          " -> " + space_.point(perm_[perm_[i]]).str());
    }
  }

  /// From a list of (from, to) label pairs; unlisted points are fixed.
  static Involution from_pairs(const FinSpace& space, const std::vector<std::pair<Label, Label>>& pairs) {
    std::vector<std::size_t> perm(space.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::vector<bool> seen(space.size(), false);
    for (const auto& [from, to] : pairs) {
      const std::size_t i = space.index_of(from);
      if (seen[i]) throw DomainError("involution: point '" + from.str() + "' mapped twice");
      seen[i] = true;
      perm[i] = space.index_of(to);
    }
    return Involution(space, std::move(perm));
  }

  /// (x, y) ↦ (y, x) on X ⊗ X.
  static Involution swap_factors(const FinSpace& x) {
    const std::size_t n = x.size();
    std::vector<std::size_t> perm(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) perm[i * n + j] = j * n + i;
    return Involution(product(x, x), std::move(perm));
  }

  const FinSpace& space() const noexcept { return space_; }
  std::size_t operator()(std::size_t i) const { return perm_.at(i); }
  const std::vector<std::size_t>& permutation() const noexcept { return perm_; }
  bool is_identity() const {
    for (std::size_t i = 0; i < perm_.size(); ++i)
      if (perm_[i] != i) return false;
    return true;
  }

  friend bool operator==(const Involution&, const Involution&) = default;

 private:
  FinSpace space_;
  std::vector<std::size_t> perm_;
};

/// x ↦ δ_φ(x).
inline Kernel lift(const Involution& phi) {
  return deterministic(phi.space(), phi.space(), phi.permutation());
}

inline Kernel lift_involution(const Involution& phi) { return lift(phi); }

// ---------------------------------------------------------------------------
// Effects and structural predicates

/// The effect 1 ∘ P: x ↦ P(x, Y).
inline Effect row_mass(const Kernel& p) {
  return Kernel::tabulate(p.dom(), FinSpace::unit(), [&](std::size_t i, std::size_t) {
    ExtNonneg s;
    for (std::size_t j = 0; j < p.cols(); ++j) s += p(i, j);
    return s;
  });
}

inline bool is_normalized(const Kernel& p) {
  const Effect m = row_mass(p);
  for (std::size_t i = 0; i < p.rows(); ++i)
    if (!(m.weight(i) == ExtNonneg::one())) return false;
  return true;
}

inline bool is_substochastic(const Kernel& p) {
  const Effect m = row_mass(p);
  for (std::size_t i = 0; i < p.rows(); ++i)
    if (!leq(m.weight(i), ExtNonneg::one())) return false;
  return true;
}

/// Whether copy ∘ P = (P ⊗ P) ∘ copy. On finite spaces this holds exactly when
/// every row has at most one nonzero entry c, with c · c = c, so c is 1 or ∞.
inline bool is_copyable(const Kernel& p) {
  for (std::size_t i = 0; i < p.rows(); ++i) {
    std::size_t nonzero = 0;
    for (std::size_t j = 0; j < p.cols(); ++j) {
      if (p(i, j).is_zero()) continue;
      if (++nonzero > 1 || !(p(i, j) == ExtNonneg::one() || p(i, j).is_infinite())) return false;
    }
  }
  return true;
}

/// The defining equation of copyability, evaluated literally.
inline bool is_copyable_by_definition(const Kernel& p) {
  return compose(copy(p.cod()), p) == compose(tensor(p, p), copy(p.dom()));
}

/// Pointwise product v ∗ w of two effects on the same space.
inline Effect effect_mul(const Effect& v, const Effect& w) {
  require_same(v.dom(), w.dom(), "effect_mul");
  if (!v.is_effect() || !w.is_effect()) throw SpaceMismatch("effect_mul: arguments must be effects");
  return Kernel::tabulate(v.dom(), FinSpace::unit(), [&](std::size_t i, std::size_t) { return v.weight(i) * w.weight(i); });
}

/// w · P: row x of P scaled by w(x).
inline Kernel reweight(const Effect& w, const Kernel& p) {
  if (!w.is_effect()) throw SpaceMismatch("reweight: weight must be an effect");
  require_same(w.dom(), p.dom(), "reweight");
  return Kernel::tabulate(p.dom(), p.cod(), [&](std::size_t i, std::size_t j) { return w.weight(i) * p(i, j); });
}

/// P ∘ μ for a measure μ.
inline Measure pushforward(const Kernel& p, const Measure& mu) { return compose(p, mu); }

/// Indicator effect of a set of points.
inline Effect indicator(const FinSpace& x, const std::vector<std::size_t>& points) {
  std::vector<ExtNonneg> w(x.size());
  for (auto i : points) w.at(i) = ExtNonneg::one();
  return make_effect(x, std::move(w));
}

}  // namespace mhcat

#endif  // MHCAT_KERNEL_HPP
