#ifndef MHCAT_SPACE_HPP
#define MHCAT_SPACE_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mhcat/error.hpp"

namespace mhcat {

/// A point label. Atoms are bare identifiers; products carry pairs "(x,y)";
/// coproducts carry tags "L:x" / "R:x". Labels are stored in canonical text
/// form, so equality and hashing are string operations.
class Label {
 public:
  enum class Kind { atom, pair, left, right };

  Label() = default;

  static Label atom(std::string_view name) {
    if (!is_atom_text(name)) throw DomainError("invalid atom label '" + std::string(name) + "'");
    return Label(std::string(name));
  }
  static Label pair(const Label& a, const Label& b) {
    return Label("(" + a.text_ + "," + b.text_ + ")");
  }
  static Label left(const Label& a) { return Label("L:" + a.text_); }
  static Label right(const Label& a) { return Label("R:" + a.text_); }

  /// Parses canonical label text (whitespace-free).
  static Label parse(std::string_view text) {
    std::size_t pos = 0;
    Label l = parse_at(text, pos);
    if (pos != text.size()) throw DomainError("trailing characters in label '" + std::string(text) + "'");
    return l;
  }

  Kind kind() const {
    if (!text_.empty() && text_.front() == '(') return Kind::pair;
    if (text_.starts_with("L:")) return Kind::left;
    if (text_.starts_with("R:")) return Kind::right;
    return Kind::atom;
  }

  /// Components of a pair label.
  std::pair<Label, Label> split() const {
    if (kind() != Kind::pair) throw DomainError("label '" + text_ + "' is not a pair");
    std::size_t pos = 1;
    Label a = parse_at(text_, pos);
    ++pos;  // ','
    Label b = parse_at(text_, pos);
    return {std::move(a), std::move(b)};
  }

  /// Payload of a tagged label.
  Label untag() const {
    const Kind k = kind();
    if (k != Kind::left && k != Kind::right) throw DomainError("label '" + text_ + "' is not tagged");
    return Label(text_.substr(2));
  }

  const std::string& str() const noexcept { return text_; }

  friend bool operator==(const Label&, const Label&) = default;
  friend auto operator<=>(const Label&, const Label&) = default;
  friend std::ostream& operator<<(std::ostream& os, const Label& l) { return os << l.text_; }

  static bool is_atom_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
           c == '.' || c == '-' || c == '\'' || c == '*';
  }
  static bool is_atom_text(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (!is_atom_char(c)) return false;
    return true;
  }

 private:
  explicit Label(std::string text) : text_(std::move(text)) {}

  static Label parse_at(std::string_view s, std::size_t& pos) {
    auto fail = [&]() -> Label { throw DomainError("malformed label '" + std::string(s) + "'"); };
    if (pos >= s.size()) return fail();
    if (s[pos] == '(') {
      ++pos;
      Label a = parse_at(s, pos);
      if (pos >= s.size() || s[pos] != ',') return fail();
      ++pos;
      Label b = parse_at(s, pos);
      if (pos >= s.size() || s[pos] != ')') return fail();
      ++pos;
      return pair(a, b);
    }
    if ((s[pos] == 'L' || s[pos] == 'R') && pos + 1 < s.size() && s[pos + 1] == ':') {
      const bool is_left = s[pos] == 'L';
      pos += 2;
      Label inner = parse_at(s, pos);
      return is_left ? left(inner) : right(inner);
    }
    const std::size_t start = pos;
    while (pos < s.size() && is_atom_char(s[pos])) ++pos;
    if (pos == start) return fail();
    return Label(std::string(s.substr(start, pos - start)));
  }

  std::string text_;
};

/// A finite measurable space with the discrete σ-algebra: an ordered list of
/// distinct labels. Copies share the underlying storage.
class FinSpace {
 public:
  FinSpace() : FinSpace(std::vector<Label>{}) {}

  explicit FinSpace(std::vector<Label> points) {
    auto d = std::make_shared<Data>();
    d->points = std::move(points);
    d->index.reserve(d->points.size());
    for (std::size_t i = 0; i < d->points.size(); ++i) {
      if (!d->index.emplace(d->points[i].str(), i).second)
        throw DomainError("duplicate point label '" + d->points[i].str() + "'");
    }
    data_ = std::move(d);
  }

  /// Convenience: a space of atom labels.
  static FinSpace of(std::initializer_list<std::string_view> names) {
    std::vector<Label> pts;
    for (auto n : names) pts.push_back(Label::atom(n));
    return FinSpace(std::move(pts));
  }

  /// The monoidal unit: one point labelled "*".
  static const FinSpace& unit() {
    static const FinSpace u(std::vector<Label>{Label::atom("*")});
    return u;
  }

  /// The initial object (no points).
  static const FinSpace& empty() {
    static const FinSpace e;
    return e;
  }

  std::size_t size() const noexcept { return data_->points.size(); }
  const Label& point(std::size_t i) const { return data_->points.at(i); }
  std::span<const Label> points() const noexcept { return data_->points; }

  std::optional<std::size_t> find(const Label& l) const {
    auto it = data_->index.find(l.str());
    if (it == data_->index.end()) return std::nullopt;
    return it->second;
  }

  std::size_t index_of(const Label& l) const {
    if (auto i = find(l)) return *i;
    throw DomainError("unknown point label '" + l.str() + "'");
  }

  friend bool operator==(const FinSpace& a, const FinSpace& b) {
    return a.data_ == b.data_ || a.data_->points == b.data_->points;
  }

  friend std::ostream& operator<<(std::ostream& os, const FinSpace& s) {
    os << '{';
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? ", " : "") << s.point(i);
    return os << '}';
  }

 private:
  struct Data {
    std::vector<Label> points;
    std::unordered_map<std::string, std::size_t> index;
  };
  std::shared_ptr<const Data> data_;
};

/// X ⊗ Y: all pairs in lexicographic order of indices. Point (i, j) sits at
/// index i * |Y| + j.
inline FinSpace product(const FinSpace& x, const FinSpace& y) {
  std::vector<Label> pts;
  pts.reserve(x.size() * y.size());
  for (const auto& a : x.points())
    for (const auto& b : y.points()) pts.push_back(Label::pair(a, b));
  return FinSpace(std::move(pts));
}

/// X_1 ⊗ ... ⊗ X_n, grouped to the left: ((x1,x2),x3). The empty product is
/// the unit and a single factor is returned unchanged.
inline FinSpace product_of(std::span<const FinSpace> factors) {
  if (factors.empty()) return FinSpace::unit();
  FinSpace acc = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) acc = product(acc, factors[i]);
  return acc;
}

inline void require_same(const FinSpace& a, const FinSpace& b, std::string_view what) {
  if (!(a == b)) {
    std::ostringstream os;
    os << what << ": space mismatch " << a << " vs " << b;
    throw SpaceMismatch(os.str());
  }
}

}  // namespace mhcat

template <>
struct std::hash<mhcat::Label> {
  std::size_t operator()(const mhcat::Label& l) const { return std::hash<std::string>{}(l.str()); }
};

#endif  // MHCAT_SPACE_HPP
