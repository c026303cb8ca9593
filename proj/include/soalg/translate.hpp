#pragma once

// Syntactic translations between second-order signatures and presentations.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "soalg/eqlogic.hpp"
#include "soalg/mcat.hpp"

namespace soalg {

// Maps every operator o : (n_1, ..., n_k) of `src` to a term of `dst` over
// (m_1:[n_1], ..., m_k:[n_k] |> .).
class Translation {
 public:
  // `images` follows the order of src.operators(). Throws Error when an
  // image is not well-formed in its operator's metavariable context.
  Translation(Signature src, Signature dst, std::vector<Term> images,
              std::string name = "");

  const Signature& src() const { return src_; }
  const Signature& dst() const { return dst_; }
  const std::string& name() const { return name_; }
  const std::vector<Term>& images() const { return images_; }
  const Term& image(std::string_view op) const;

  friend bool operator==(const Translation& a, const Translation& b) {
    return a.src_ == b.src_ && a.dst_ == b.dst_ && a.images_ == b.images_;
  }

 private:
  Signature src_;
  Signature dst_;
  std::vector<Term> images_;
  std::string name_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

// o |-> o(..., (x_1..x_{n_i}) m_i[x_1..x_{n_i}], ...)
Translation identity_translation(const Signature& sig);

// The extension of `tr` to a term over `gamma` variables. Unchecked: `t`
// must be well-formed in tr.src().
Term apply(const Translation& tr, const Term& t, std::size_t gamma);
// Checked form; throws Error on an ill-formed term.
Term apply(const Translation& tr, const MetaContext& theta,
           const VarContext& gamma, const Term& t);
Equation apply(const Translation& tr, const Equation& eq);

// o |-> tr2(tr1_o)
Translation compose(const Translation& tr1, const Translation& tr2);

// abs : (1), app : (0, 0)
Signature lambda_signature();
// Continuation-passing translation of the untyped lambda calculus:
//   app |-> m:[0], n:[0] |> . |- \k. m[] (\v. v (\l. n[] l) k)
//   abs |-> f:[1] |> . |- \k. k (\x. \l. f[x] l)
Translation builtin_cps();

// Per source axiom label, a derivation in the target presentation.
using TranslationCerts = std::vector<std::pair<std::string, Derivation>>;

// Checks that every axiom s == t of `src` has a certificate concluding
// tr(s) == tr(t) in `dst`. Returns the first problem, or nothing.
std::optional<Diagnostic> check_equational(const Translation& tr,
                                           const Presentation& src,
                                           const Presentation& dst,
                                           const TranslationCerts& certs);

// Transports a derivation of `src` to one of `dst`: terms are translated
// node by node and each axiom node is replaced by its certificate. Throws
// Error if `d` does not check in `src` or a certificate is missing.
Derivation translate_derivation(const Translation& tr,
                                const Presentation& src,
                                const Presentation& dst,
                                const TranslationCerts& certs,
                                const Derivation& d);

// Component-wise image of a representative, landing in `dst`.
Morphism map_morphism(const Translation& tr, const Morphism& f,
                      const Theory& dst);
// M(tr) : M(src) -> M(dst), identity on objects.
std::function<Morphism(const Morphism&)> induced_theory_map(
    const Translation& tr, const Theory& src, const Theory& dst);

}  // namespace soalg
