#ifndef MHCAT_SEMIRING_HPP
#define MHCAT_SEMIRING_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "mhcat/error.hpp"

namespace mhcat {

/// An exact element of the semiring ([0,∞], +, ·).
///
/// Finite values are nonnegative rationals kept in lowest terms; the single
/// extra point is ∞. Multiplication follows the measure-theoretic convention
/// 0·∞ = 0, so a zero weight annihilates infinite mass.
class ExtNonneg {
 public:
  ExtNonneg() = default;
  ExtNonneg(long value) : q_(value) {  // NOLINT(google-explicit-constructor)
    if (value < 0) throw DomainError("negative value " + std::to_string(value));
  }
  ExtNonneg(long num, long den)
      : ExtNonneg(mpq_class(mpz_class(num), mpz_class(den == 0 ? 1 : den))) {
    if (den == 0) throw DomainError("zero denominator");
  }
  explicit ExtNonneg(mpq_class q) : q_(std::move(q)) {
    q_.canonicalize();
    if (sgn(q_) < 0) throw DomainError("negative value " + q_.get_str());
  }

  static ExtNonneg infinity() {
    ExtNonneg v;
    v.inf_ = true;
    return v;
  }
  static ExtNonneg zero() { return {}; }
  static ExtNonneg one() { return ExtNonneg(1L); }

  bool is_infinite() const noexcept { return inf_; }
  bool is_finite() const noexcept { return !inf_; }
  bool is_zero() const noexcept { return !inf_ && sgn(q_) == 0; }
  bool is_positive() const noexcept { return !is_zero(); }

  /// The rational value. Only meaningful when is_finite().
  const mpq_class& rational() const {
    if (inf_) throw DomainError("rational() of infinity");
    return q_;
  }

  double to_double() const {
    return inf_ ? std::numeric_limits<double>::infinity() : q_.get_d();
  }

  friend ExtNonneg operator+(const ExtNonneg& a, const ExtNonneg& b) {
    if (a.inf_ || b.inf_) return infinity();
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    ExtNonneg r;
    r.q_ = a.q_ + b.q_;
    return r;
  }

  friend ExtNonneg operator*(const ExtNonneg& a, const ExtNonneg& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.inf_ || b.inf_) return infinity();
    ExtNonneg r;
    r.q_ = a.q_ * b.q_;
    return r;
  }

  ExtNonneg& operator+=(const ExtNonneg& b) {
    if (inf_ || b.is_zero()) return *this;
    if (b.inf_) {
      *this = infinity();
      return *this;
    }
    q_ += b.q_;
    return *this;
  }

  ExtNonneg& operator*=(const ExtNonneg& b) { return *this = *this * b; }

  friend bool operator==(const ExtNonneg& a, const ExtNonneg& b) {
    if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
    return a.q_ == b.q_;
  }

  friend std::strong_ordering operator<=>(const ExtNonneg& a, const ExtNonneg& b) {
    if (a.inf_ || b.inf_) return static_cast<int>(a.inf_) <=> static_cast<int>(b.inf_);
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  /// Canonical text: "inf", an integer, or "p/q" in lowest terms.
  std::string to_string() const {
    if (inf_) return "inf";
    return q_.get_str();
  }

  /// Accepts "inf", "123" and "p/q"; rejects signs, zero denominators and junk.
  static ExtNonneg parse(std::string_view text) {
    if (text == "inf") return infinity();
    auto digits = [](std::string_view s) {
      if (s.empty()) return false;
      for (char c : s)
        if (c < '0' || c > '9') return false;
      return true;
    };
    const auto slash = text.find('/');
    const std::string_view num = text.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? std::string_view("1")
                                                                  : text.substr(slash + 1);
    if (!digits(num) || !digits(den))
      throw DomainError("not a nonnegative rational or 'inf': '" + std::string(text) + "'");
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
    return ExtNonneg(mpq_class(n, d));
  }

  friend std::ostream& operator<<(std::ostream& os, const ExtNonneg& v) {
    return os << v.to_string();
  }

 private:
  bool inf_ = false;
  mpq_class q_;
};

inline ExtNonneg add(const ExtNonneg& a, const ExtNonneg& b) { return a + b; }
inline ExtNonneg mul(const ExtNonneg& a, const ExtNonneg& b) { return a * b; }

/// The canonical order of the additive monoid: a ≤ b iff a + c = b for some c.
/// On [0,∞] this coincides with the usual extended order.
inline bool leq(const ExtNonneg& a, const ExtNonneg& b) { return a <= b; }

/// The c with a + c = b, for a ≤ b. When b = ∞ the witness is ∞.
inline ExtNonneg residual(const ExtNonneg& a, const ExtNonneg& b) {
  if (!leq(a, b)) throw DomainError("residual: " + a.to_string() + " exceeds " + b.to_string());
  if (b.is_infinite()) return ExtNonneg::infinity();
  return ExtNonneg(b.rational() - a.rational());
}

/// Partial division: defined for finite nonzero b, and for finite a over b = ∞
/// (result 0). ∞/∞ and a/0 raise DomainError.
inline ExtNonneg divide(const ExtNonneg& a, const ExtNonneg& b) {
  if (b.is_zero()) throw DomainError("division by zero");
  if (b.is_infinite()) {
    if (a.is_infinite()) throw DomainError("inf / inf");
    return {};
  }
  if (a.is_infinite()) return ExtNonneg::infinity();
  return ExtNonneg(a.rational() / b.rational());
}

inline ExtNonneg min(const ExtNonneg& a, const ExtNonneg& b) { return a <= b ? a : b; }

}  // namespace mhcat

template <>
struct std::hash<mhcat::ExtNonneg> {
  std::size_t operator()(const mhcat::ExtNonneg& v) const {
    return std::hash<std::string>{}(v.to_string());
  }
};

#endif  // MHCAT_SEMIRING_HPP
