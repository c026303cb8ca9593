#pragma once

// Second-order abstract syntax: signatures, two-zone contexts, terms with
// binders and parameterised metavariables, and the two-level substitution
// calculus.
//
// Terms are positional. A variable is a 1-based level into the ambient
// variable context, and the i-th argument of an operator with binder depth
// n_i sees the ambient context extended on the right by n_i positions. A
// metavariable is a 1-based position into the metavariable context. Names
// exist only in the parser and printer, so alpha-equivalence is structural
// equality.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace soalg {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Where a check failed. `path` addresses a node ("root", "root.2.1", ...).
struct Diagnostic {
  std::string path;
  std::string message;
  std::string detail;

  std::string to_string() const;
};

// Either a value or the diagnostic explaining why there is none.
template <class T>
class Checked {
 public:
  Checked(T value) : state_(std::move(value)) {}  // NOLINT
  Checked(Diagnostic d) : state_(std::move(d)) {}  // NOLINT

  bool ok() const { return state_.index() == 0; }
  explicit operator bool() const { return ok(); }

  const T& value() const {
    if (!ok()) throw Error(diagnostic().to_string());
    return std::get<0>(state_);
  }
  T& value() {
    if (!ok()) throw Error(diagnostic().to_string());
    return std::get<0>(state_);
  }
  const Diagnostic& diagnostic() const { return std::get<1>(state_); }

 private:
  std::variant<T, Diagnostic> state_;
};

// Binder depths (n_1, ..., n_k): argument i binds n_i variables.
using Arity = std::vector<std::size_t>;

bool is_identifier(std::string_view name);

class Signature {
 public:
  Signature() = default;
  Signature(std::initializer_list<std::pair<std::string, Arity>> ops);

  // Throws Error on a duplicate or malformed name.
  void add(std::string name, Arity arity);

  const Arity* find(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name) != nullptr; }
  const std::vector<std::pair<std::string, Arity>>& operators() const {
    return ops_;
  }
  std::size_t size() const { return ops_.size(); }
  bool empty() const { return ops_.empty(); }

  friend bool operator==(const Signature& a, const Signature& b) {
    return a.ops_ == b.ops_;
  }

 private:
  std::vector<std::pair<std::string, Arity>> ops_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

// m_1:[a_1], ..., m_k:[a_k]. Names are optional hints for printing.
struct MetaContext {
  std::vector<std::size_t> arities;
  std::vector<std::string> names;

  MetaContext() = default;
  explicit MetaContext(std::vector<std::size_t> a,
                       std::vector<std::string> n = {})
      : arities(std::move(a)), names(std::move(n)) {}

  std::size_t size() const { return arities.size(); }
  std::size_t arity(std::size_t index) const { return arities.at(index - 1); }
  // 1-based; falls back to m<index> when there are no hints.
  std::string name(std::size_t index) const;
  // Hints must be absent or complete and pairwise distinct.
  std::optional<std::string> validate() const;

  // Positional equality; hints are ignored.
  friend bool operator==(const MetaContext& a, const MetaContext& b) {
    return a.arities == b.arities;
  }
};

// x_1, ..., x_n. Names are optional hints for printing.
struct VarContext {
  std::size_t size = 0;
  std::vector<std::string> names;

  VarContext() = default;
  explicit VarContext(std::size_t n, std::vector<std::string> hints = {})
      : size(n), names(std::move(hints)) {}

  std::string name(std::size_t index) const;
  std::optional<std::string> validate() const;

  friend bool operator==(const VarContext& a, const VarContext& b) {
    return a.size == b.size;
  }
};

class Term {
 public:
  enum class Kind : std::uint8_t { kVar, kMeta, kOp };

  static Term var(std::size_t index);
  static Term meta(std::size_t index, std::vector<Term> args = {});
  // `binders[i]` is the number of variables bound in `args[i]`.
  static Term op(std::string name, std::vector<Term> args,
                 std::vector<std::size_t> binders);
  // Operator whose arguments bind nothing.
  static Term op(std::string name, std::vector<Term> args = {});

  Kind kind() const { return node_->kind; }
  bool is_var() const { return kind() == Kind::kVar; }
  bool is_meta() const { return kind() == Kind::kMeta; }
  bool is_op() const { return kind() == Kind::kOp; }

  // Variable level or metavariable position (1-based). Zero for operators.
  std::size_t index() const { return node_->index; }
  const std::string& op_name() const { return node_->name; }
  std::span<const Term> args() const { return node_->args; }
  const Term& arg(std::size_t i) const { return node_->args.at(i); }
  std::span<const std::size_t> binders() const { return node_->binders; }

  // Number of nodes.
  std::size_t size() const { return node_->size; }
  // True when no operator occurs (a term of the theory of equality).
  bool is_pure() const { return node_->pure; }
  // True when some operator binds at least one variable. Only such terms
  // change under weakening.
  bool has_binders() const { return node_->binds; }

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

 private:
  struct Node {
    Kind kind;
    std::size_t index = 0;
    std::string name;
    std::vector<Term> args;
    std::vector<std::size_t> binders;
    std::size_t size = 1;
    bool pure = true;
    bool binds = false;
  };

  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Term make(Node node);

  std::shared_ptr<const Node> node_;
};

// Well-formedness of `t` in context (theta |> gamma). Returns the first
// offending node in pre-order.
std::optional<Diagnostic> check_term(const Signature& sig,
                                     const MetaContext& theta,
                                     std::size_t gamma, const Term& t);
inline std::optional<Diagnostic> check_term(const Signature& sig,
                                            const MetaContext& theta,
                                            const VarContext& gamma,
                                            const Term& t) {
  return check_term(sig, theta, gamma.size, t);
}

inline bool alpha_eq(const Term& a, const Term& b) { return a == b; }

// Identity tuple x_{from+1}, ..., x_{from+count}.
std::vector<Term> variables(std::size_t count, std::size_t from = 0);

// Capture-avoiding simultaneous substitution. `t` lives over
// replacements.size() variables; every replacement lives over `target`
// variables and so does the result. Bound positions under binders are
// relocated to sit after `target`.
Term subst_vars(const Term& t, std::span<const Term> replacements,
                std::size_t target);

// Context extension on the right: t over n variables, result over
// n + extra. Free levels are unchanged; levels bound inside t move up by
// `extra`.
Term weaken(const Term& t, std::size_t n, std::size_t extra);

// Context extension on the left: t over n variables, result over
// prefix + n with x_j renamed to x_{prefix+j}.
Term shift(const Term& t, std::size_t n, std::size_t prefix);

// Metasubstitution t<m_i := (x_i) body_i>. `t` lives over (Theta, gamma);
// body i lives over (Theta', gamma + arity(m_i)), the last positions being
// the abstracted ones. The result lives over (Theta', gamma).
Term subst_metas(const Term& t, std::span<const Term> bodies,
                 std::size_t gamma);

// Checked form: validates the body count against `theta`.
Term subst_metas(const Term& t, const MetaContext& theta,
                 std::span<const Term> bodies, std::size_t gamma);

// Bodies (x_1..x_{a_i}) m_i[x_1..x_{a_i}] over gamma, the unit of
// metasubstitution.
std::vector<Term> identity_bodies(const MetaContext& theta,
                                  std::size_t gamma);

// Renumber metavariables: m_i becomes m_{renumber[i-1]}.
Term rename_metas(const Term& t, std::span<const std::size_t> renumber);

}  // namespace soalg
