#pragma once

// Equational presentations and a checker for second-order equational logic:
// axioms, reflexivity, symmetry, transitivity and extended metasubstitution.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "soalg/kernel.hpp"
#include "soalg/syntax.hpp"

namespace soalg {

struct Equation {
  MetaContext theta;
  VarContext gamma;
  Term lhs;
  Term rhs;
  std::string label;

  // Positional comparison of contexts and sides; labels and hints ignored.
  bool same_judgement(const Equation& other) const;
};

std::string print_equation(const Equation& eq);

struct Presentation {
  std::string name;
  Signature sig;
  std::vector<Equation> axioms;

  const Equation* find(std::string_view label) const;
};

std::vector<Diagnostic> validate_presentation(const Presentation& p);

class Derivation {
 public:
  enum class Rule { kAxiom, kRefl, kSym, kTrans, kMsub, kUnknown };

  // Annotation on a side premise of extended metasubstitution as written in
  // a certificate: `meta := (params) body`. The proof itself is the
  // matching child. The body text is parsed against the side's concluded
  // context when checked.
  struct Side {
    std::string meta;
    std::vector<std::string> params;
    std::optional<std::string> body;
    Position body_pos;
  };

  static Derivation axiom(std::string label);
  static Derivation refl(MetaContext theta, VarContext gamma, Term t);
  static Derivation sym(Derivation d);
  static Derivation trans(Derivation a, Derivation b);
  // Side proofs in metavariable order. `ctx` fixes (Theta, Delta); it is
  // required when the main premise has no metavariables.
  static Derivation msub(Derivation main, std::vector<Derivation> sides,
                         std::optional<std::pair<MetaContext, VarContext>>
                             ctx = std::nullopt);
  // A node whose rule name was not recognised; kept so the checker can
  // report it in place.
  static Derivation unknown(std::string rule, Position pos);

  Rule rule() const { return node_->rule; }
  const std::string& label() const { return node_->label; }
  const MetaContext& theta() const { return node_->theta; }
  const VarContext& gamma() const { return node_->gamma; }
  const Term& term() const { return *node_->term; }
  const std::vector<Derivation>& children() const { return node_->children; }
  const std::vector<Side>& side_info() const { return node_->sides; }
  const std::optional<std::pair<MetaContext, VarContext>>& ctx() const {
    return node_->ctx;
  }
  const std::optional<Equation>& claim() const { return node_->claim; }
  Position pos() const { return node_->pos; }
  // Identity of the shared node, stable across copies.
  const void* id() const { return node_.get(); }

  Derivation with_claim(Equation claim) const;
  Derivation with_sides(std::vector<Side> sides) const;
  Derivation at(Position pos) const;

  std::size_t size() const;
  std::size_t depth() const;

 private:
  struct Node {
    Rule rule = Rule::kUnknown;
    std::string label;
    MetaContext theta;
    VarContext gamma;
    std::optional<Term> term;
    std::vector<Derivation> children;
    std::vector<Side> sides;
    std::optional<std::pair<MetaContext, VarContext>> ctx;
    std::optional<Equation> claim;
    Position pos{0, 0};  // line 0: not read from text
  };

  explicit Derivation(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Derivation make(Node n);

  std::shared_ptr<const Node> node_;
};

const char* rule_name(Derivation::Rule rule);

struct CheckOptions {
  std::size_t max_depth = 100000;
  // Called once per node that concludes successfully, children first.
  std::function<void(const Derivation&, const Equation&)> on_conclusion;
};

// Conclusion of `d` in `p`, or the first failing node (pre-order).
Checked<Equation> check_derivation(const Presentation& p, const Derivation& d,
                                   const CheckOptions& opt = {});

// Axiom `label` metasubstituted by `bodies`, proved by extended
// metasubstitution over reflexivity premises. Body i lives over
// (theta, delta + arity(m_i)).
Derivation instantiate_axiom(const Presentation& p, std::string_view label,
                             const MetaContext& theta, const VarContext& delta,
                             const std::vector<Term>& bodies);

// Context of the conclusion of extended metasubstitution: Gamma from the
// main premise followed by Delta.
VarContext concat_contexts(const VarContext& gamma, const VarContext& delta);

// Gamma extended by `extra` positions; hints, if any, are extended with
// fresh names.
VarContext extend_context(const VarContext& gamma, std::size_t extra);

}  // namespace soalg
