#include "soalg/syntax.hpp"

#include <set>

#include "syntax_detail.hpp"

namespace soalg {
namespace text {

MetaContext read_meta_context(Lexer& lx) {
  MetaContext theta;
  if (lx.accept(".")) return theta;
  do {
    Position at = lx.peek().pos;
    std::string name = lx.expect_name("metavariable name");
    for (const auto& n : theta.names)
      if (n == name) lx.fail("duplicate metavariable '" + name + "'", at);
    lx.expect(":");
    lx.expect("[");
    std::size_t arity = lx.expect_number("metavariable arity");
    lx.expect("]");
    theta.names.push_back(std::move(name));
    theta.arities.push_back(arity);
  } while (lx.accept(","));
  return theta;
}

VarContext read_var_context(Lexer& lx) {
  VarContext gamma;
  if (lx.accept(".")) return gamma;
  do {
    Position at = lx.peek().pos;
    std::string name = lx.expect_name("variable name");
    for (const auto& n : gamma.names)
      if (n == name) lx.fail("duplicate variable '" + name + "'", at);
    gamma.names.push_back(std::move(name));
  } while (lx.accept(","));
  gamma.size = gamma.names.size();
  return gamma;
}

std::pair<MetaContext, VarContext> read_context(Lexer& lx) {
  MetaContext theta = read_meta_context(lx);
  lx.expect("|>");
  VarContext gamma = read_var_context(lx);
  lx.expect("|-");
  return {std::move(theta), std::move(gamma)};
}

Arity read_arity(Lexer& lx) {
  Arity arity;
  lx.expect("(");
  if (lx.accept(")")) return arity;
  do {
    arity.push_back(lx.expect_number("binder depth"));
  } while (lx.accept(","));
  lx.expect(")");
  return arity;
}

std::vector<std::size_t> read_object(Lexer& lx) {
  std::vector<std::size_t> obj;
  lx.expect("<");
  if (lx.accept(">")) return obj;
  do {
    obj.push_back(lx.expect_number("arity"));
  } while (lx.accept(","));
  lx.expect(">");
  return obj;
}

namespace {

class TermReader {
 public:
  TermReader(Lexer& lx, const Signature& sig, const MetaContext& theta,
             const VarContext& gamma)
      : lx_(lx), sig_(sig), theta_(theta) {
    for (std::size_t j = 1; j <= gamma.size; ++j)
      scope_.push_back(gamma.name(j));
  }

  Term term() {
    Position at = lx_.peek().pos;
    std::string name = lx_.expect_name("a term");
    if (lx_.accept("[")) return meta(name, at);
    // A variable ending a line may be followed by the next axiom's label.
    if (!lx_.at_end() && lx_.peek().text == "(" &&
        (sig_.find(name) || lx_.peek().pos.line == at.line)) {
      lx_.next();
      return op(name, at);
    }
    for (std::size_t i = scope_.size(); i-- > 0;)
      if (scope_[i] == name) return Term::var(i + 1);
    lx_.fail("unknown variable '" + name + "'", at);
  }

 private:
  Term meta(const std::string& name, Position at) {
    std::size_t index = 0;
    for (std::size_t i = 1; i <= theta_.size(); ++i)
      if (theta_.name(i) == name) index = i;
    if (index == 0) lx_.fail("unknown metavariable '" + name + "'", at);
    std::vector<Term> args;
    if (!lx_.accept("]")) {
      do {
        args.push_back(term());
      } while (lx_.accept(","));
      lx_.expect("]");
    }
    if (args.size() != theta_.arity(index))
      lx_.fail("metavariable arity mismatch: " + name + " expects " +
                   std::to_string(theta_.arity(index)) + " argument(s), got " +
                   std::to_string(args.size()),
               at);
    return Term::meta(index, std::move(args));
  }

  Term op(const std::string& name, Position at) {
    const Arity* arity = sig_.find(name);
    if (!arity) lx_.fail("unknown operator '" + name + "'", at);
    std::vector<Term> args;
    std::vector<std::size_t> binders;
    if (!lx_.accept(")")) {
      do {
        Position arg_at = lx_.peek().pos;
        std::vector<std::string> bound;
        if (lx_.accept("(")) {
          if (!lx_.accept(")")) {
            do {
              bound.push_back(lx_.expect_name("bound variable name"));
            } while (lx_.accept(","));
            lx_.expect(")");
          }
        }
        std::size_t slot = args.size();
        if (slot < arity->size() && bound.size() != (*arity)[slot])
          lx_.fail("binder count mismatch: " + name + " binds " +
                       std::to_string((*arity)[slot]) + " in argument " +
                       std::to_string(slot + 1) + ", got " +
                       std::to_string(bound.size()),
                   arg_at);
        for (auto& b : bound) scope_.push_back(std::move(b));
        args.push_back(term());
        scope_.resize(scope_.size() - bound.size());
        binders.push_back(bound.size());
      } while (lx_.accept(","));
      lx_.expect(")");
    }
    if (args.size() != arity->size())
      lx_.fail("operator arity mismatch: " + name + " expects " +
                   std::to_string(arity->size()) + " argument(s), got " +
                   std::to_string(args.size()),
               at);
    return Term::op(name, std::move(args), std::move(binders));
  }

  Lexer& lx_;
  const Signature& sig_;
  const MetaContext& theta_;
  std::vector<std::string> scope_;
};

}  // namespace

Term read_term(Lexer& lx, const Signature& sig, const MetaContext& theta,
               const VarContext& gamma) {
  return TermReader(lx, sig, theta, gamma).term();
}

}  // namespace text

namespace {

template <class F>
auto whole(std::string_view text, Position origin, F&& read) {
  text::Lexer lx(text, origin);
  auto out = read(lx);
  if (!lx.at_end()) lx.fail("trailing input '" + lx.peek().text + "'");
  return out;
}

}  // namespace

MetaContext parse_meta_context(std::string_view text, Position origin) {
  return whole(text, origin,
               [](text::Lexer& lx) { return text::read_meta_context(lx); });
}

VarContext parse_var_context(std::string_view text, Position origin) {
  return whole(text, origin,
               [](text::Lexer& lx) { return text::read_var_context(lx); });
}

Term parse_term(const Signature& sig, const MetaContext& theta,
                const VarContext& gamma, std::string_view text,
                Position origin) {
  return whole(text, origin, [&](text::Lexer& lx) {
    return text::read_term(lx, sig, theta, gamma);
  });
}

Judgement parse_judgement(const Signature& sig, std::string_view text,
                          Position origin) {
  return whole(text, origin, [&](text::Lexer& lx) {
    auto [theta, gamma] = text::read_context(lx);
    Term t = text::read_term(lx, sig, theta, gamma);
    return Judgement{std::move(theta), std::move(gamma), std::move(t)};
  });
}

namespace {

class Printer {
 public:
  Printer(const MetaContext& theta, const VarContext& gamma)
      : theta_(theta) {
    for (std::size_t j = 1; j <= gamma.size; ++j) {
      scope_.push_back(gamma.name(j));
      taken_.insert(gamma.name(j));
    }
  }

  void term(const Term& t) {
    switch (t.kind()) {
      case Term::Kind::kVar:
        if (t.index() <= scope_.size())
          out_ += scope_[t.index() - 1];
        else  // ill-scoped; print the raw level so the text is inspectable
          out_ += "?x" + std::to_string(t.index());
        return;
      case Term::Kind::kMeta:
        out_ += t.index() <= theta_.size() ? theta_.name(t.index())
                                           : "?m" + std::to_string(t.index());
        out_ += '[';
        for (std::size_t i = 0; i < t.args().size(); ++i) {
          if (i) out_ += ", ";
          term(t.arg(i));
        }
        out_ += ']';
        return;
      case Term::Kind::kOp:
        out_ += t.op_name();
        out_ += '(';
        for (std::size_t i = 0; i < t.args().size(); ++i) {
          if (i) out_ += ", ";
          std::size_t k = t.binders()[i];
          if (k > 0) {
            out_ += '(';
            for (std::size_t j = 0; j < k; ++j) {
              if (j) out_ += ", ";
              std::string name = "x" + std::to_string(scope_.size() + 1);
              while (taken_.count(name)) name += '\'';
              out_ += name;
              scope_.push_back(std::move(name));
            }
            out_ += ") ";
          }
          term(t.arg(i));
          scope_.resize(scope_.size() - k);
        }
        out_ += ')';
        return;
    }
  }

  std::string take() { return std::move(out_); }

 private:
  const MetaContext& theta_;
  std::vector<std::string> scope_;
  std::set<std::string> taken_;
  std::string out_;
};

}  // namespace

std::string print_term(const MetaContext& theta, const VarContext& gamma,
                       const Term& t) {
  Printer p(theta, gamma);
  p.term(t);
  return p.take();
}

std::string print_meta_context(const MetaContext& theta) {
  if (theta.size() == 0) return ".";
  std::string out;
  for (std::size_t i = 1; i <= theta.size(); ++i) {
    if (i > 1) out += ", ";
    out += theta.name(i) + ":[" + std::to_string(theta.arity(i)) + "]";
  }
  return out;
}

std::string print_var_context(const VarContext& gamma) {
  if (gamma.size == 0) return ".";
  std::string out;
  for (std::size_t j = 1; j <= gamma.size; ++j) {
    if (j > 1) out += ", ";
    out += gamma.name(j);
  }
  return out;
}

std::string print_judgement(const MetaContext& theta, const VarContext& gamma,
                            const Term& t) {
  return print_meta_context(theta) + " |> " + print_var_context(gamma) +
         " |- " + print_term(theta, gamma, t);
}

std::string print_arity(const Arity& arity) {
  std::string out = "(";
  for (std::size_t i = 0; i < arity.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(arity[i]);
  }
  return out + ")";
}

}  // namespace soalg
