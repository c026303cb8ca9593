#pragma once

// Finite fragments of the internal language E(T) of a second-order
// algebraic theory T = M(E), and the round trip E -> E(T) -> E.
//
// A listed morphism f : <m_1..m_k> -> <n> becomes an operator o_f of arity
// (m_1, ..., m_k, 0, ..., 0) with n trailing zeros, and
//   t_f = o_f((x_1..x_{m_1}) m_1[..], ..., (..) m_k[..], x_1, ..., x_n)
// over (m_1..m_k |> x_1..x_n). The emitted presentation has
//   eq_<o_f>   s == t_f                        for each pure listed f = <s>
//   comp<i>    t_h == t_g<m_j := t_{f_j}>      for the i-th triple (1-based)

#include <optional>
#include <string>
#include <vector>

#include "soalg/mcat.hpp"
#include "soalg/translate.hpp"

namespace soalg {

// "o_" followed by the FNV-1a 64-bit hash of print_morphism(f) in hex.
std::string operator_of(const Morphism& f);
Arity operator_arity(const Morphism& f);
// The term t_f in a signature containing o_f.
Term t_of(const Morphism& f);

struct FragmentTriple {
  std::string h;
  std::string g;
  std::vector<std::string> fs;
  // Certificate for h == g . <fs> when the representatives differ.
  std::optional<Derivation> cert;
};

struct FragmentSpec {
  std::string name;
  Theory theory;
  std::vector<std::pair<std::string, Morphism>> morphisms;
  std::vector<FragmentTriple> triples;

  const Morphism* find(std::string_view label) const;
};

std::optional<Diagnostic> validate(const FragmentSpec& spec);
// Throws Error when `spec` does not validate.
Presentation emit_fragment(const FragmentSpec& spec);
// o_f |-> s_f[x_q := m_{k+q}[]], from the emitted presentation to the
// theory's presentation.
Translation fragment_dictionary(const FragmentSpec& spec);
// Certificates making fragment_dictionary equational: reflexivity for the
// pure equations and the triple certificates for the composition ones.
TranslationCerts fragment_soundness_certs(const FragmentSpec& spec);

// Collects morphisms and triples, labelling each morphism by its operator
// name and dropping repeats.
class FragmentBuilder {
 public:
  FragmentBuilder(std::string name, Theory theory);

  std::string add(const Morphism& f);
  // Returns the label of the triple's composition equation.
  std::string add_triple(const Morphism& h, const Morphism& g,
                         const std::vector<Morphism>& fs,
                         std::optional<Derivation> cert = std::nullopt);

  const FragmentSpec& spec() const { return spec_; }

 private:
  FragmentSpec spec_;
};

// The generators f_o = <o((x_1) m_1[x_1], ..., (x_k) m_k[x_k])> of p.
FragmentSpec canonical_spec(const Presentation& p);

struct Roundtrip {
  // The canonical spec closed under what the certificates use.
  FragmentSpec spec;
  Presentation fragment;
  // o |-> t_{f_o}, from p to the fragment.
  Translation unit;
  // One certificate per axiom of p, checked in the fragment.
  TranslationCerts certs;
  // The dictionary back to p.
  Translation inverse;
};

Roundtrip roundtrip(const Presentation& p);
Translation roundtrip_unit(const Presentation& p);

}  // namespace soalg
