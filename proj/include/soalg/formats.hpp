#pragma once

// Text formats.
//
// Presentation (.soep):
//   signature <name>
//   op <name> : (n1, ..., nk)
//   axioms
//   (<label>) <theta> |> <gamma> |- <term> == <term>
//
// Derivation (.soderiv), one tree per file, or a bundle of
// `(cert <label> <tree>)` entries:
//   (axiom <label>)
//   (refl <theta> |> <gamma> |- <term>)
//   (sym d)
//   (trans d d)
//   (msub d [(ctx <theta> |> <delta>)] (<m> := [(<x>, ...)] <term> : d) ...)
//
// Morphism:
//   <m1, ..., mk> -> <n1, ..., nl> where { t1; ...; tl } in <theory|M>
// with metavariables m1..mk and variables x1..x_{n_q} in component q.
//
// Translation (.sotr), one line per source operator; the listed names are
// the operator's metavariables m_i:[n_i]:
//   translation <name> : <src-presentation> -> <dst-presentation>
//   op <name> => <m1>, ..., <mk> |- <term>
//
// Finite model (.somod), one line per operator listing its interpretation
// array (see finsem.hpp for the encoding):
//   model <name> : <presentation> size <s>
//   op <name> = e_0 e_1 ... e_{N-1}
//
// Fragment of the internal language (.sofrag); morphisms "in M" are read
// into the named theory:
//   fragment <name> over <presentation>
//   morphism <label> = <morphism>
//   triple <h> = <g> . (<f1>, ..., <fl>) [by <derivation>]
//
// Any derivation node may end with
// `=> <theta> |> <gamma> |- <term> == <term>`, which the checker compares
// with the derived conclusion.
//
// '#' starts a comment in every format.

#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "soalg/eqlogic.hpp"
#include "soalg/finsem.hpp"
#include "soalg/intlang.hpp"
#include "soalg/mcat.hpp"
#include "soalg/translate.hpp"

namespace soalg {

Presentation parse_presentation(std::string_view text);
std::string print_presentation(const Presentation& p);

Derivation parse_derivation(const Signature& sig, std::string_view text);
using CertBundle = std::vector<std::pair<std::string, Derivation>>;
CertBundle parse_cert_bundle(const Signature& sig, std::string_view text);

// Prints `d` with every side premise annotated by its body. Throws Error if
// `d` does not check in `p`. With `claims`, each node also carries its
// conclusion.
std::string print_derivation(const Presentation& p, const Derivation& d,
                             bool claims = false);
std::string print_cert_bundle(const Presentation& p, const CertBundle& b);

// Looks up a theory by name; "M" is always the theory of equality.
using TheoryResolver = std::function<Theory(const std::string&)>;
Morphism parse_morphism(std::string_view text, const TheoryResolver& resolve);
std::string print_morphism(const Morphism& f);
// "<1, 0>"
SOType parse_sotype(std::string_view text);

// Header names must match `src.name` and `dst.name`.
Translation parse_translation(std::string_view text, const Presentation& src,
                              const Presentation& dst);
std::string print_translation(const Translation& tr, const std::string& src,
                              const std::string& dst);

// The header presentation name must match `p.name`; the model is not
// checked against the axioms.
FiniteModel parse_model(std::string_view text, const Presentation& p,
                        std::string* name = nullptr);
std::string print_model(const FiniteModel& m, const std::string& name,
                        const std::string& presentation);

// The header presentation name must match `p.name`. The result is not
// validated.
FragmentSpec parse_fragment(std::string_view text, const Presentation& p);
std::string print_fragment(const FragmentSpec& spec);

Equation parse_equation(const Signature& sig, std::string_view text);

std::string read_file(const std::string& path);

}  // namespace soalg
