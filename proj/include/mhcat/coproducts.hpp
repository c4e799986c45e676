#ifndef MHCAT_COPRODUCTS_HPP
#define MHCAT_COPRODUCTS_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "mhcat/error.hpp"
#include "mhcat/kernel.hpp"

namespace mhcat {

enum class Side { left, right };

/// X ⊕ Y: X's points tagged "L:", then Y's points tagged "R:".
inline FinSpace oplus(const FinSpace& x, const FinSpace& y) {
  std::vector<Label> pts;
  pts.reserve(x.size() + y.size());
  for (const auto& a : x.points()) pts.push_back(Label::left(a));
  for (const auto& b : y.points()) pts.push_back(Label::right(b));
  return FinSpace(std::move(pts));
}

/// i_X : X → X ⊕ Y or i_Y : Y → X ⊕ Y.
inline Kernel injection(Side side, const FinSpace& x, const FinSpace& y) {
  const FinSpace sum = oplus(x, y);
  const FinSpace& from = side == Side::left ? x : y;
  const std::size_t offset = side == Side::left ? 0 : x.size();
  std::vector<std::size_t> f(from.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = offset + i;
  return deterministic(from, sum, f);
}

/// [f, g] : X ⊕ Y → Z, stacking the rows of f over those of g.
inline Kernel copair(const Kernel& f, const Kernel& g) {
  require_same(f.cod(), g.cod(), "copair");
  const FinSpace sum = oplus(f.dom(), g.dom());
  const std::size_t nx = f.rows();
  return Kernel::tabulate(sum, f.cod(), [&](std::size_t i, std::size_t j) {
    return i < nx ? f(i, j) : g(i - nx, j);
  });
}

struct Isomorphism {
  Kernel forward;
  Kernel backward;
};

/// (X ⊗ Y) ⊕ (X ⊗ Z) ≅ X ⊗ (Y ⊕ Z), as mutually inverse permutation kernels.
/// With X empty both sides are the initial object.
inline Isomorphism distributivity_iso(const FinSpace& x, const FinSpace& y, const FinSpace& z) {
  const FinSpace lhs = oplus(product(x, y), product(x, z));
  const FinSpace rhs = product(x, oplus(y, z));
  const std::size_t ny = y.size(), nz = z.size(), nyz = ny + nz;
  std::vector<std::size_t> f(lhs.size());
  for (std::size_t a = 0; a < x.size(); ++a) {
    for (std::size_t b = 0; b < ny; ++b) f[a * ny + b] = a * nyz + b;
    for (std::size_t c = 0; c < nz; ++c) f[x.size() * ny + a * nz + c] = a * nyz + ny + c;
  }
  Kernel forward = deterministic(lhs, rhs, f);
  Kernel backward = transpose(forward);
  return {std::move(forward), std::move(backward)};
}

/// The nullary case 0 ≅ 0 ⊗ X: both sides are empty and so are the kernels.
inline Isomorphism initial_iso(const FinSpace& x) {
  const FinSpace zx = product(FinSpace::empty(), x);
  return {Kernel(FinSpace::empty(), zx), Kernel(zx, FinSpace::empty())};
}

}  // namespace mhcat

#endif  // MHCAT_COPRODUCTS_HPP
