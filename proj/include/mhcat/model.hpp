#ifndef MHCAT_MODEL_HPP
#define MHCAT_MODEL_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mhcat/coproducts.hpp"
#include "mhcat/error.hpp"
#include "mhcat/kernel.hpp"
#include "mhcat/mcmc.hpp"

// Text format for named spaces, kernels, measures, effects, involutions and
// balancing-function selections. See docs/model-format.md for the grammar.

namespace mhcat {

enum class DeclKind { space, kernel, measure, effect, involution, balancing };

struct SpaceDecl {
  enum class Form { list, product, coproduct };
  Form form = Form::list;
  std::vector<std::string> operands;  ///< factor names for product / coproduct forms
  FinSpace space;
};

struct KernelDecl {
  std::string dom;
  std::string cod;
  Kernel kernel;
};

struct MeasureDecl {
  std::string space;
  Measure measure;
};

struct EffectDecl {
  std::string space;
  Effect effect;
  bool probability = false;  ///< declared with `probability`: every value must be ≤ 1
};

struct InvolutionDecl {
  std::string space;
  Involution involution;
};

/// A parsed model file. Declarations keep their order and leading comments so
/// that emit(parse(text)) reproduces canonical text exactly.
class ModelDocument {
 public:
  const SpaceDecl& space_decl(const std::string& name) const { return lookup(spaces_, name, "space"); }
  const FinSpace& space(const std::string& name) const { return space_decl(name).space; }
  const KernelDecl& kernel_decl(const std::string& name) const { return lookup(kernels_, name, "kernel"); }
  const Kernel& kernel(const std::string& name) const { return kernel_decl(name).kernel; }
  const MeasureDecl& measure_decl(const std::string& name) const { return lookup(measures_, name, "measure"); }
  const Measure& measure(const std::string& name) const { return measure_decl(name).measure; }
  const EffectDecl& effect_decl(const std::string& name) const { return lookup(effects_, name, "effect"); }
  const Effect& effect(const std::string& name) const { return effect_decl(name).effect; }
  const InvolutionDecl& involution_decl(const std::string& name) const {
    return lookup(involutions_, name, "involution");
  }
  const Involution& involution(const std::string& name) const { return involution_decl(name).involution; }
  BalancingFunction balancing(const std::string& name) const {
    return BalancingFunction::by_name(lookup(balancing_, name, "balancing"));
  }

  bool has(DeclKind kind, const std::string& name) const {
    switch (kind) {
      case DeclKind::space: return spaces_.count(name) > 0;
      case DeclKind::kernel: return kernels_.count(name) > 0;
      case DeclKind::measure: return measures_.count(name) > 0;
      case DeclKind::effect: return effects_.count(name) > 0;
      case DeclKind::involution: return involutions_.count(name) > 0;
      case DeclKind::balancing: return balancing_.count(name) > 0;
    }
    return false;
  }

  /// Name of a declared space equal to `s`, if any.
  std::optional<std::string> find_space(const FinSpace& s) const {
    for (const auto& [kind, name] : order_)
      if (kind == DeclKind::space && spaces_.at(name).space == s) return name;
    return std::nullopt;
  }

  // Builders. Each validates references and rejects duplicate names.

  void add_space(const std::string& name, SpaceDecl decl) {
    insert(spaces_, DeclKind::space, name, std::move(decl));
  }
  void add_space(const std::string& name, const FinSpace& s) { add_space(name, SpaceDecl{SpaceDecl::Form::list, {}, s}); }

  /// Returns the name of a declared space equal to `s`, declaring it as
  /// `hint` (or hint_2, hint_3, ...) when absent.
  std::string ensure_space(const FinSpace& s, const std::string& hint) {
    if (auto n = find_space(s)) return *n;
    std::string name = hint;
    for (int k = 2; spaces_.count(name); ++k) name = hint + "_" + std::to_string(k);
    add_space(name, s);
    return name;
  }

  void add_kernel(const std::string& name, const std::string& dom, const std::string& cod, Kernel k) {
    require_same(k.dom(), space(dom), "kernel '" + name + "' domain");
    require_same(k.cod(), space(cod), "kernel '" + name + "' codomain");
    insert(kernels_, DeclKind::kernel, name, KernelDecl{dom, cod, std::move(k)});
  }
  void add_measure(const std::string& name, const std::string& sp, Measure m) {
    if (!m.is_measure()) throw SpaceMismatch("measure '" + name + "' is not a measure");
    require_same(m.cod(), space(sp), "measure '" + name + "'");
    insert(measures_, DeclKind::measure, name, MeasureDecl{sp, std::move(m)});
  }
  void add_effect(const std::string& name, const std::string& sp, Effect e, bool probability = false) {
    if (!e.is_effect()) throw SpaceMismatch("effect '" + name + "' is not an effect");
    require_same(e.dom(), space(sp), "effect '" + name + "'");
    if (probability)
      for (std::size_t i = 0; i < e.rows(); ++i)
        if (!leq(e.weight(i), ExtNonneg::one()))
          throw DomainError("probability '" + name + "' has value " + e.weight(i).to_string() + " > 1");
    insert(effects_, DeclKind::effect, name, EffectDecl{sp, std::move(e), probability});
  }
  void add_involution(const std::string& name, const std::string& sp, Involution inv) {
    require_same(inv.space(), space(sp), "involution '" + name + "'");
    insert(involutions_, DeclKind::involution, name, InvolutionDecl{sp, std::move(inv)});
  }
  void add_balancing(const std::string& name, const std::string& function) {
    BalancingFunction::by_name(function);
    insert(balancing_, DeclKind::balancing, name, function);
  }

  /// Comment lines (without the leading '#') emitted before a declaration.
  void set_comments(DeclKind kind, const std::string& name, std::vector<std::string> lines) {
    comments_[{kind, name}] = std::move(lines);
  }
  void set_trailing_comments(std::vector<std::string> lines) { trailing_ = std::move(lines); }

  const std::vector<std::pair<DeclKind, std::string>>& order() const noexcept { return order_; }

  std::string emit() const;

  friend bool operator==(const ModelDocument& a, const ModelDocument& b) { return a.emit() == b.emit(); }

 private:
  template <typename M>
  static const typename M::mapped_type& lookup(const M& m, const std::string& name, const char* what) {
    auto it = m.find(name);
    if (it == m.end()) throw DomainError(std::string("unknown ") + what + " '" + name + "'");
    return it->second;
  }

  template <typename M, typename V>
  void insert(M& m, DeclKind kind, const std::string& name, V&& v) {
    if (!m.emplace(name, std::forward<V>(v)).second) throw DomainError("duplicate declaration '" + name + "'");
    order_.emplace_back(kind, name);
  }

  std::map<std::string, SpaceDecl> spaces_;
  std::map<std::string, KernelDecl> kernels_;
  std::map<std::string, MeasureDecl> measures_;
  std::map<std::string, EffectDecl> effects_;
  std::map<std::string, InvolutionDecl> involutions_;
  std::map<std::string, std::string> balancing_;
  std::vector<std::pair<DeclKind, std::string>> order_;
  std::map<std::pair<DeclKind, std::string>, std::vector<std::string>> comments_;
  std::vector<std::string> trailing_;
};

/// Parses a model document; errors carry the line and column.
ModelDocument parse_model(std::string_view text);

std::string emit_model(const ModelDocument& doc);

}  // namespace mhcat

#endif  // MHCAT_MODEL_HPP
