#ifndef MHCAT_SAMPLER_HPP
#define MHCAT_SAMPLER_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mhcat/error.hpp"
#include "mhcat/kernel.hpp"

namespace mhcat {

/// Row-major double-precision stochastic matrix.
struct FloatMatrix {
  std::size_t n = 0;
  std::vector<double> p;

  double operator()(std::size_t i, std::size_t j) const { return p[i * n + j]; }
};

/// Nearest-double conversion of a normalized, finite endomorphism. After
/// rounding, each row's largest entry absorbs the residual so rows sum to 1.0.
inline FloatMatrix to_float(const Kernel& k) {
  require_same(k.dom(), k.cod(), "to_float");
  if (!is_cancellative(k)) throw DomainError("to_float: kernel has an infinite entry");
  if (!is_normalized(k)) throw DomainError("to_float: kernel is not normalized");
  FloatMatrix m{k.rows(), std::vector<double>(k.rows() * k.cols())};
  for (std::size_t i = 0; i < m.n; ++i) {
    std::size_t largest = 0;
    double sum = 0.0;
    for (std::size_t j = 0; j < m.n; ++j) {
      m.p[i * m.n + j] = k(i, j).rational().get_d();
      if (m.p[i * m.n + j] > m.p[i * m.n + largest]) largest = j;
    }
    for (std::size_t j = 0; j < m.n; ++j)
      if (j != largest) sum += m.p[i * m.n + j];
    m.p[i * m.n + largest] = 1.0 - sum;
  }
  return m;
}

inline constexpr const char* kPrngName = "mt19937_64";

struct ChainRun {
  FloatMatrix kernel;
  std::size_t initial = 0;
  std::uint64_t seed = 0;
  std::size_t length = 0;
  std::vector<std::uint32_t> trace;  ///< length + 1 states, starting with `initial`
};

/// Simulates `length` steps with std::mt19937_64. Uniforms are taken from the
/// top 53 bits of each draw, so traces are reproducible across platforms.
inline ChainRun run_chain(const FloatMatrix& kernel, std::size_t initial, std::uint64_t seed, std::size_t length) {
  if (initial >= kernel.n) throw DomainError("run_chain: initial state out of range");
  ChainRun run{kernel, initial, seed, length, {}};
  run.trace.reserve(length + 1);
  std::mt19937_64 gen(seed);

  // Cumulative rows, pinned to 1 from the last positive entry on so every draw
  // lands on a state of positive probability.
  std::vector<double> cum(kernel.p.size());
  for (std::size_t i = 0; i < kernel.n; ++i) {
    double acc = 0.0;
    std::size_t last = 0;
    for (std::size_t j = 0; j < kernel.n; ++j) {
      cum[i * kernel.n + j] = (acc += kernel(i, j));
      if (kernel(i, j) > 0.0) last = j;
    }
    for (std::size_t j = last; j < kernel.n; ++j) cum[i * kernel.n + j] = 1.0;
  }

  std::size_t state = initial;
  run.trace.push_back(static_cast<std::uint32_t>(state));
  for (std::size_t t = 0; t < length; ++t) {
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    const double* row = &cum[state * kernel.n];
    std::size_t next = 0;
    while (u >= row[next]) ++next;
    state = next;
    run.trace.push_back(static_cast<std::uint32_t>(state));
  }
  return run;
}

/// Visit frequencies over trace positions burn_in + 1 .. length.
inline std::vector<double> empirical(const ChainRun& run, std::size_t burn_in) {
  if (burn_in >= run.length) throw DomainError("empirical: burn-in must be shorter than the run");
  std::vector<double> freq(run.kernel.n, 0.0);
  for (std::size_t t = burn_in + 1; t < run.trace.size(); ++t) freq[run.trace[t]] += 1.0;
  const double count = static_cast<double>(run.trace.size() - burn_in - 1);
  for (auto& f : freq) f /= count;
  return freq;
}

/// Half the L1 distance.
inline double tv_distance(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw SpaceMismatch("tv_distance: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return 0.5 * s;
}

/// A finite measure as a probability vector.
inline std::vector<double> normalized_masses(const Measure& mu) {
  if (!mu.is_measure() || !is_cancellative(mu)) throw DomainError("normalized_masses: expected a finite measure");
  const ExtNonneg total = row_mass(mu).weight(0);
  if (total.is_zero()) throw DomainError("normalized_masses: zero measure");
  std::vector<double> out(mu.cols());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = divide(mu.mass(i), total).to_double();
  return out;
}

}  // namespace mhcat

#endif  // MHCAT_SAMPLER_HPP
