#pragma once

#include <string>

#include "doctest.h"

#include "soalg/eqlogic.hpp"
#include "soalg/formats.hpp"
#include "soalg/kernel.hpp"
#include "soalg/syntax.hpp"

namespace soalg::test {

inline Signature lambda_sig() { return Signature{{"abs", {1}}, {"app", {0, 0}}}; }

inline std::string corpus(const std::string& file) {
  return std::string(SOALG_CORPUS_DIR) + "/" + file;
}

inline Presentation load(const std::string& file) {
  return parse_presentation(read_file(corpus(file)));
}

// Term over (theta |> gamma) written in surface syntax.
inline Term term(const Signature& sig, const std::string& theta,
                 const std::string& gamma, const std::string& text) {
  return parse_term(sig, parse_meta_context(theta), parse_var_context(gamma),
                    text);
}

}  // namespace soalg::test

namespace soalg::test {

// Positional rendering used in failure messages.
inline std::string raw(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::kVar:
      return "#" + std::to_string(t.index());
    case Term::Kind::kMeta: {
      std::string out = "M" + std::to_string(t.index()) + "[";
      for (std::size_t i = 0; i < t.args().size(); ++i)
        out += (i ? ", " : "") + raw(t.arg(i));
      return out + "]";
    }
    case Term::Kind::kOp: {
      std::string out = t.op_name() + "(";
      for (std::size_t i = 0; i < t.args().size(); ++i)
        out += (i ? ", " : "") + std::string(t.binders()[i], '.') + raw(t.arg(i));
      return out + ")";
    }
  }
  return "?";
}

}  // namespace soalg::test

namespace doctest {
template <>
struct StringMaker<soalg::Term> {
  static String convert(const soalg::Term& t) {
    return soalg::test::raw(t).c_str();
  }
};
}  // namespace doctest
