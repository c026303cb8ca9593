#pragma once

// Streaming readers over a Lexer, used by the file-format parsers.

#include "lexer.hpp"

namespace soalg::text {

MetaContext read_meta_context(Lexer& lx);
VarContext read_var_context(Lexer& lx);
Term read_term(Lexer& lx, const Signature& sig, const MetaContext& theta,
               const VarContext& gamma);
// theta '|>' gamma '|-'
std::pair<MetaContext, VarContext> read_context(Lexer& lx);
// "(1, 0)" or "()"
Arity read_arity(Lexer& lx);
// "<1,0>" or "<>"
std::vector<std::size_t> read_object(Lexer& lx);

}  // namespace soalg::text

#include "soalg/formats.hpp"

namespace soalg::text {

Equation read_equation(Lexer& lx, const Signature& sig);
Morphism read_morphism(Lexer& lx, const TheoryResolver& resolve);

}  // namespace soalg::text
