#include "mhcat/model.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mhcat {

namespace {

/// "{a: 1/2, b: 1}", listing only positive entries in space order.
std::string emit_masses(const FinSpace& s, const std::vector<ExtNonneg>& values) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i].is_zero()) continue;
    out += first ? "" : ", ";
    out += s.point(i).str() + ": " + values[i].to_string();
    first = false;
  }
  return out + "}";
}

}  // namespace

std::string ModelDocument::emit() const {
  std::ostringstream os;
  auto put_comments = [&](const std::vector<std::string>& lines) {
    for (const auto& l : lines) os << '#' << l << '\n';
  };
  for (const auto& [kind, name] : order_) {
    if (auto it = comments_.find({kind, name}); it != comments_.end()) put_comments(it->second);
    switch (kind) {
      case DeclKind::space: {
        const SpaceDecl& d = spaces_.at(name);
        os << "space " << name << " = ";
        if (d.form == SpaceDecl::Form::list) {
          os << '{';
          for (std::size_t i = 0; i < d.space.size(); ++i) os << (i ? ", " : "") << d.space.point(i);
          os << '}';
        } else {
          const char* op = d.form == SpaceDecl::Form::product ? " * " : " + ";
          for (std::size_t i = 0; i < d.operands.size(); ++i) os << (i ? op : "") << d.operands[i];
        }
        break;
      }
      case DeclKind::kernel: {
        const KernelDecl& d = kernels_.at(name);
        os << "kernel " << name << " : " << d.dom << " -> " << d.cod << " = {";
        bool first = true;
        for (std::size_t i = 0; i < d.kernel.rows(); ++i) {
          std::vector<ExtNonneg> row(d.kernel.entries().begin() + static_cast<long>(i * d.kernel.cols()),
                                     d.kernel.entries().begin() + static_cast<long>((i + 1) * d.kernel.cols()));
          bool empty = true;
          for (const auto& v : row) empty = empty && v.is_zero();
          if (empty) continue;
          os << (first ? "\n" : ",\n") << "  " << d.kernel.dom().point(i) << ": "
             << emit_masses(d.kernel.cod(), row);
          first = false;
        }
        os << (first ? "}" : "\n}");
        break;
      }
      case DeclKind::measure: {
        const MeasureDecl& d = measures_.at(name);
        os << "measure " << name << " on " << d.space << " = " << emit_masses(d.measure.cod(), d.measure.entries());
        break;
      }
      case DeclKind::effect: {
        const EffectDecl& d = effects_.at(name);
        os << (d.probability ? "probability " : "effect ") << name << " on " << d.space << " = "
           << emit_masses(d.effect.dom(), d.effect.entries());
        break;
      }
      case DeclKind::involution: {
        const InvolutionDecl& d = involutions_.at(name);
        os << "involution " << name << " on " << d.space << " = {";
        bool first = true;
        for (std::size_t i = 0; i < d.involution.space().size(); ++i) {
          if (d.involution(i) == i) continue;
          os << (first ? "" : ", ") << d.involution.space().point(i) << " -> "
             << d.involution.space().point(d.involution(i));
          first = false;
        }
        os << '}';
        break;
      }
      case DeclKind::balancing:
        os << "balancing " << name << " = " << balancing_.at(name);
        break;
    }
    os << '\n';
  }
  put_comments(trailing_);
  return os.str();
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class ModelParser {
 public:
  explicit ModelParser(std::string_view text) : s_(text) {}

  ModelDocument parse() {
    ModelDocument doc;
    while (true) {
      std::vector<std::string> comments = skip_space_collecting_comments();
      if (at_end()) {
        doc.set_trailing_comments(std::move(comments));
        return doc;
      }
      const Pos start = pos_;
      const std::string keyword = identifier("a declaration keyword");
      std::pair<DeclKind, std::string> decl;
      try {
        decl = declaration(doc, keyword, start);
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        fail_at(start, e.what());
      }
      if (!comments.empty()) doc.set_comments(decl.first, decl.second, std::move(comments));
    }
  }

 private:
  struct Pos {
    std::size_t offset = 0;
    int line = 1;
    int column = 1;
  };

  [[noreturn]] void fail_at(const Pos& p, const std::string& what) const { throw ParseError(what, p.line, p.column); }
  [[noreturn]] void fail(const std::string& what) const { fail_at(pos_, what); }

  bool at_end() const { return pos_.offset >= s_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_.offset + ahead < s_.size() ? s_[pos_.offset + ahead] : '\0';
  }
  void advance() {
    if (s_[pos_.offset] == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else {
      ++pos_.column;
    }
    ++pos_.offset;
  }

  std::vector<std::string> skip_space_collecting_comments() {
    std::vector<std::string> comments;
    while (!at_end()) {
      const char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '#') {
        advance();
        std::string line;
        while (!at_end() && peek() != '\n') {
          line += peek();
          advance();
        }
        comments.push_back(std::move(line));
      } else {
        break;
      }
    }
    return comments;
  }

  void skip_ws() {
    const auto stray = skip_space_collecting_comments();
    (void)stray;  // comments inside a declaration are dropped
  }

  void expect(std::string_view token) {
    skip_ws();
    for (std::size_t i = 0; i < token.size(); ++i)
      if (peek(i) != token[i]) fail("expected '" + std::string(token) + "'");
    for (std::size_t i = 0; i < token.size(); ++i) advance();
  }

  bool accept(std::string_view token) {
    skip_ws();
    for (std::size_t i = 0; i < token.size(); ++i)
      if (peek(i) != token[i]) return false;
    for (std::size_t i = 0; i < token.size(); ++i) advance();
    return true;
  }

  static bool ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
  static bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9'); }

  std::string identifier(const char* what) {
    skip_ws();
    if (!ident_start(peek())) fail(std::string("expected ") + what);
    std::string out;
    while (!at_end() && ident_char(peek())) {
      out += peek();
      advance();
    }
    return out;
  }

  Label label() {
    skip_ws();
    return label_here();
  }

  Label label_here() {
    const char c = peek();
    if (c == '(') {
      advance();
      Label a = label_here();
      if (peek() != ',') fail("expected ',' in pair label");
      advance();
      Label b = label_here();
      if (peek() != ')') fail("expected ')' closing pair label");
      advance();
      return Label::pair(a, b);
    }
    if ((c == 'L' || c == 'R') && peek(1) == ':' && (peek(2) == '(' || Label::is_atom_char(peek(2)))) {
      advance();
      advance();
      Label inner = label_here();
      return c == 'L' ? Label::left(inner) : Label::right(inner);
    }
    std::string atom;
    while (!at_end() && Label::is_atom_char(peek()) && !(peek() == '-' && peek(1) == '>')) {
      atom += peek();
      advance();
    }
    if (atom.empty()) fail("expected a point label");
    return Label::atom(atom);
  }

  ExtNonneg value() {
    skip_ws();
    const Pos start = pos_;
    std::string text;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '/' || peek() == '-' || peek() == '.')) {
      text += peek();
      advance();
    }
    try {
      return ExtNonneg::parse(text);
    } catch (const DomainError& e) {
      fail_at(start, e.what());
    }
  }

  /// '{' label ':' value, ... '}' over the given space.
  std::vector<ExtNonneg> masses(const FinSpace& sp) {
    std::vector<ExtNonneg> out(sp.size());
    std::vector<bool> seen(sp.size(), false);
    expect("{");
    if (accept("}")) return out;
    do {
      skip_ws();
      const Pos at = pos_;
      const Label l = label();
      const auto idx = sp.find(l);
      if (!idx) fail_at(at, "unknown point '" + l.str() + "'");
      if (seen[*idx]) fail_at(at, "point '" + l.str() + "' listed twice");
      seen[*idx] = true;
      expect(":");
      out[*idx] = value();
    } while (accept(","));
    expect("}");
    return out;
  }

  const FinSpace& space_ref(const ModelDocument& doc, std::string* name_out) {
    skip_ws();
    const Pos at = pos_;
    const std::string name = identifier("a space name");
    if (!doc.has(DeclKind::space, name)) fail_at(at, "unknown space '" + name + "'");
    if (name_out) *name_out = name;
    return doc.space(name);
  }

  std::pair<DeclKind, std::string> declaration(ModelDocument& doc, const std::string& keyword, const Pos& start) {
    if (keyword == "space") {
      const std::string name = identifier("a space name");
      expect("=");
      skip_ws();
      if (peek() == '{') {
        advance();
        std::vector<Label> pts;
        if (!accept("}")) {
          do pts.push_back(label());
          while (accept(","));
          expect("}");
        }
        doc.add_space(name, FinSpace(std::move(pts)));
      } else {
        std::vector<std::string> ops;
        std::vector<FinSpace> factors;
        std::string op_name;
        factors.push_back(space_ref(doc, &op_name));
        ops.push_back(op_name);
        std::optional<char> op;
        while (true) {
          const Pos before = pos_;
          skip_ws();
          const char c = peek();
          if (c != '*' && c != '+') {
            pos_ = before;  // leave comments for the next declaration
            break;
          }
          if (op && *op != c) fail("cannot mix '*' and '+' in one space expression");
          op = c;
          advance();
          factors.push_back(space_ref(doc, &op_name));
          ops.push_back(op_name);
        }
        if (!op) fail("expected '*' or '+' after a space name");
        SpaceDecl d;
        d.operands = ops;
        if (*op == '*') {
          d.form = SpaceDecl::Form::product;
          d.space = product_of(factors);
        } else {
          d.form = SpaceDecl::Form::coproduct;
          d.space = factors[0];
          for (std::size_t i = 1; i < factors.size(); ++i) d.space = oplus(d.space, factors[i]);
        }
        doc.add_space(name, std::move(d));
      }
      return {DeclKind::space, name};
    }
    if (keyword == "measure" || keyword == "effect" || keyword == "probability") {
      const std::string name = identifier("a name");
      expect("on");
      std::string sp_name;
      const FinSpace& sp = space_ref(doc, &sp_name);
      expect("=");
      skip_ws();
      const Pos at = pos_;
      auto vals = masses(sp);
      if (keyword == "measure") {
        doc.add_measure(name, sp_name, make_measure(sp, std::move(vals)));
        return {DeclKind::measure, name};
      }
      try {
        doc.add_effect(name, sp_name, make_effect(sp, std::move(vals)), keyword == "probability");
      } catch (const DomainError& e) {
        fail_at(at, e.what());
      }
      return {DeclKind::effect, name};
    }
    if (keyword == "kernel") {
      const std::string name = identifier("a kernel name");
      expect(":");
      std::string dom_name, cod_name;
      const FinSpace dom = space_ref(doc, &dom_name);
      expect("->");
      const FinSpace cod = space_ref(doc, &cod_name);
      expect("=");
      expect("{");
      std::vector<ExtNonneg> m(dom.size() * cod.size());
      std::vector<bool> seen(dom.size(), false);
      if (!accept("}")) {
        do {
          skip_ws();
          const Pos at = pos_;
          const Label row = label();
          const auto idx = dom.find(row);
          if (!idx) fail_at(at, "unknown point '" + row.str() + "' in kernel domain");
          if (seen[*idx]) fail_at(at, "row '" + row.str() + "' listed twice");
          seen[*idx] = true;
          expect(":");
          auto vals = masses(cod);
          std::copy(vals.begin(), vals.end(), m.begin() + static_cast<long>(*idx * cod.size()));
        } while (accept(","));
        expect("}");
      }
      doc.add_kernel(name, dom_name, cod_name, Kernel(dom, cod, std::move(m)));
      return {DeclKind::kernel, name};
    }
    if (keyword == "involution") {
      const std::string name = identifier("an involution name");
      expect("on");
      std::string sp_name;
      const FinSpace& sp = space_ref(doc, &sp_name);
      expect("=");
      expect("{");
      std::vector<std::pair<Label, Label>> pairs;
      if (!accept("}")) {
        do {
          skip_ws();
          const Pos at = pos_;
          Label from = label();
          expect("->");
          Label to = label();
          if (!sp.find(from)) fail_at(at, "unknown point '" + from.str() + "'");
          if (!sp.find(to)) fail_at(at, "unknown point '" + to.str() + "'");
          pairs.emplace_back(std::move(from), std::move(to));
        } while (accept(","));
        expect("}");
      }
      try {
        doc.add_involution(name, sp_name, Involution::from_pairs(sp, pairs));
      } catch (const DomainError& e) {
        fail_at(start, std::string("involution '") + name + "': " + e.what());
      }
      return {DeclKind::involution, name};
    }
    if (keyword == "balancing") {
      const std::string name = identifier("a balancing name");
      expect("=");
      skip_ws();
      const Pos at = pos_;
      const std::string fn = identifier("a balancing function");
      try {
        doc.add_balancing(name, fn);
      } catch (const DomainError& e) {
        fail_at(at, e.what());
      }
      return {DeclKind::balancing, name};
    }
    fail_at(start, "unknown declaration keyword '" + keyword + "'");
  }

  std::string_view s_;
  Pos pos_;
};

}  // namespace

ModelDocument parse_model(std::string_view text) { return ModelParser(text).parse(); }

std::string emit_model(const ModelDocument& doc) { return doc.emit(); }

}  // namespace mhcat
