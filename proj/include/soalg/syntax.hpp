#pragma once

// Surface syntax for terms in context.
//
//   term    := var | meta '[' terms? ']' | op '(' bindarg (',' bindarg)* ')'
//            | op '(' ')'
//   bindarg := ('(' names ')')? term
//   theta   := '.' | name ':' '[' k ']' (',' name ':' '[' k ']')*
//   gamma   := '.' | name (',' name)*
//   judgement := theta '|>' gamma '|-' term
//
// The UTF-8 glyphs for triangle, turnstile and triple-equals are accepted as
// aliases for '|>', '|-' and '=='.

#include <cstddef>
#include <string>
#include <string_view>

#include "soalg/kernel.hpp"

namespace soalg {

struct Position {
  std::size_t line = 1;
  std::size_t column = 1;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, Position where);

  Position where() const { return where_; }
  const std::string& bare_message() const { return bare_; }

 private:
  Position where_;
  std::string bare_;
};

MetaContext parse_meta_context(std::string_view text, Position origin = {});
VarContext parse_var_context(std::string_view text, Position origin = {});

// Parses and checks well-formedness; arity problems are reported as
// ParseError at the offending token.
Term parse_term(const Signature& sig, const MetaContext& theta,
                const VarContext& gamma, std::string_view text,
                Position origin = {});

struct Judgement {
  MetaContext theta;
  VarContext gamma;
  Term term;
};

Judgement parse_judgement(const Signature& sig, std::string_view text,
                          Position origin = {});

// Bound variables print as x<level>, primed until they differ from every
// name of the ambient variable context.
std::string print_term(const MetaContext& theta, const VarContext& gamma,
                       const Term& t);
std::string print_meta_context(const MetaContext& theta);
std::string print_var_context(const VarContext& gamma);
std::string print_judgement(const MetaContext& theta, const VarContext& gamma,
                            const Term& t);
// "(1, 0)"
std::string print_arity(const Arity& arity);

}  // namespace soalg
