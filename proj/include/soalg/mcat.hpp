#pragma once

// The second-order theory of equality M and the classifying categories
// M(E). Objects are lists of metavariable arities; a morphism
// <m_1..m_k> -> <n_1..n_l> is a tuple of l terms, the q-th over
// (m_1:[m_1], ..., m_k:[m_k] |> x_1..x_{n_q}). Composition is
// metasubstitution. Morphisms of M(E) are representatives; equality of
// representatives needs certificates.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "soalg/eqlogic.hpp"

namespace soalg {

using SOType = std::vector<std::size_t>;
using Theory = std::shared_ptr<const Presentation>;

// The empty presentation, named "M".
const Theory& theory_m();
Theory make_theory(Presentation p);
bool same_theory(const Theory& a, const Theory& b);

std::string print_sotype(const SOType& a);

class Morphism {
 public:
  // Throws Error unless every component is well formed over the theory's
  // signature.
  Morphism(SOType src, SOType dst, std::vector<Term> components,
           Theory theory = theory_m());

  const SOType& src() const { return src_; }
  const SOType& dst() const { return dst_; }
  const std::vector<Term>& components() const { return components_; }
  const Term& component(std::size_t q) const { return components_.at(q); }
  const Theory& theory() const { return theory_; }

  // Source as a metavariable context m1..mk.
  MetaContext src_context() const { return MetaContext(src_); }
  // Every component is operator-free.
  bool is_pure() const;

  // Structural equality of representatives (same objects and theory).
  friend bool operator==(const Morphism& a, const Morphism& b);

 private:
  SOType src_;
  SOType dst_;
  std::vector<Term> components_;
  Theory theory_;
};

Morphism identity(const SOType& a, const Theory& theory = theory_m());
// f : a -> b, g : b -> c; result a -> c.
Morphism compose(const Morphism& f, const Morphism& g);

SOType terminal();
SOType product(const SOType& a, const SOType& b);
Morphism proj1(const SOType& a, const SOType& b,
               const Theory& theory = theory_m());
Morphism proj2(const SOType& a, const SOType& b,
               const Theory& theory = theory_m());
// f : c -> a, g : c -> b; result c -> a x b.
Morphism pair(const Morphism& f, const Morphism& g);
// Tuple of any number of morphisms with a common source.
Morphism tuple(const SOType& src, const std::vector<Morphism>& fs,
               const Theory& theory);
Morphism bang(const SOType& a, const Theory& theory = theory_m());

// <0> => <m_1..m_k> = <m_1+1, ..., m_k+1>.
SOType exponential(const SOType& b);
// (<0> => b) x <0> -> b.
Morphism eval(const SOType& b, const Theory& theory = theory_m());
// f : a x <0> -> b; result a -> (<0> => b).
Morphism curry(const Morphism& f);
// g : a -> (<0> => b); result a x <0> -> b.
Morphism uncurry(const Morphism& g);

// The structure functor M -> M(E): the same pure representative, viewed
// in `theory`.
Morphism in_theory(const Morphism& f, const Theory& theory);

enum class Verdict { kEqual, kUnequal, kNeedsCertificate, kCertificateRejected };
const char* verdict_name(Verdict v);

struct EqResult {
  Verdict verdict;
  std::optional<Diagnostic> diagnostic;

  bool equal() const { return verdict == Verdict::kEqual; }
};

// Without axioms, equality of representatives is structural. Otherwise
// structurally equal components are accepted and the remaining ones need
// certs[q] concluding src |> x_1..x_{n_q} |- f_q == g_q.
EqResult morphism_eq(const Morphism& f, const Morphism& g,
                     const std::vector<Derivation>* certs = nullptr);

// Judgement f_q == g_q that a certificate for component q must conclude.
Equation component_equation(const Morphism& f, const Morphism& g,
                            std::size_t q);

}  // namespace soalg
