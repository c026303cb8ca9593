#include "soalg/formats.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "syntax_detail.hpp"

namespace soalg {

using text::Lexer;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace text {

Equation read_equation(Lexer& lx, const Signature& sig) {
  auto [theta, gamma] = read_context(lx);
  Term lhs = read_term(lx, sig, theta, gamma);
  lx.expect("==");
  Term rhs = read_term(lx, sig, theta, gamma);
  return Equation{std::move(theta), std::move(gamma), std::move(lhs),
                  std::move(rhs), ""};
}

}  // namespace text

Equation parse_equation(const Signature& sig, std::string_view src) {
  Lexer lx(src);
  Equation eq = text::read_equation(lx, sig);
  if (!lx.at_end()) lx.fail("trailing input '" + lx.peek().text + "'");
  return eq;
}

// ---------------------------------------------------------------------------
// Presentations

Presentation parse_presentation(std::string_view src) {
  Lexer lx(src);
  Presentation p;
  if (lx.at_end() || lx.peek().text != "signature")
    lx.fail("no signature block");
  lx.next();
  p.name = lx.expect_name("presentation name");
  while (!lx.at_end() && lx.peek().kind == text::Token::Kind::kName &&
         lx.peek().text == "op") {
    lx.next();
    Position at = lx.peek().pos;
    std::string name = lx.expect_name("operator name");
    lx.expect(":");
    Arity arity = text::read_arity(lx);
    try {
      p.sig.add(name, std::move(arity));
    } catch (const Error& e) {
      lx.fail(e.what(), at);
    }
  }
  if (lx.at_end()) return p;
  if (lx.peek().text != "axioms")
    lx.fail("expected 'op' or 'axioms' but found '" + lx.peek().text + "'");
  lx.next();
  while (!lx.at_end()) {
    Position at = lx.peek().pos;
    lx.expect("(");
    std::string label = lx.expect_name("axiom label");
    lx.expect(")");
    Equation eq = text::read_equation(lx, p.sig);
    eq.label = std::move(label);
    if (p.find(eq.label)) lx.fail("duplicate axiom label '" + eq.label + "'", at);
    p.axioms.push_back(std::move(eq));
  }
  return p;
}

std::string print_presentation(const Presentation& p) {
  std::string out = "signature " + p.name + "\n";
  for (const auto& [name, arity] : p.sig.operators())
    out += "op " + name + " : " + print_arity(arity) + "\n";
  if (!p.axioms.empty()) {
    out += "axioms\n";
    for (const auto& a : p.axioms)
      out += "(" + a.label + ") " + print_equation(a) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Derivations

namespace {

Derivation read_derivation(Lexer& lx, const Signature& sig);

Derivation read_side(Lexer& lx, const Signature& sig, std::string meta,
                     Derivation::Side& info) {
  info.meta = std::move(meta);
  lx.expect(":=");
  if (lx.accept("(")) {
    if (!lx.accept(")")) {
      do {
        info.params.push_back(lx.expect_name("parameter name"));
      } while (lx.accept(","));
      lx.expect(")");
    }
  }
  auto [body, pos] = lx.take_until({":"});
  if (body.empty()) lx.fail("expected a side body");
  info.body = std::string(body);
  info.body_pos = pos;
  lx.expect(":");
  Derivation d = read_derivation(lx, sig);
  lx.expect(")");
  return d;
}

Derivation read_derivation(Lexer& lx, const Signature& sig) {
  Position at = lx.peek().pos;
  lx.expect("(");
  Position rule_at = lx.peek().pos;
  std::string rule = lx.expect_name("a rule name");
  Derivation d = Derivation::axiom("");
  if (rule == "axiom") {
    d = Derivation::axiom(lx.expect_name("axiom label"));
  } else if (rule == "refl") {
    auto [theta, gamma] = text::read_context(lx);
    Term t = text::read_term(lx, sig, theta, gamma);
    d = Derivation::refl(std::move(theta), std::move(gamma), std::move(t));
  } else if (rule == "sym") {
    d = Derivation::sym(read_derivation(lx, sig));
  } else if (rule == "trans") {
    Derivation a = read_derivation(lx, sig);
    Derivation b = read_derivation(lx, sig);
    d = Derivation::trans(std::move(a), std::move(b));
  } else if (rule == "msub") {
    Derivation main = read_derivation(lx, sig);
    std::optional<std::pair<MetaContext, VarContext>> ctx;
    std::vector<Derivation> sides;
    std::vector<Derivation::Side> infos;
    while (lx.accept("(")) {
      std::string name = lx.expect_name("metavariable name or 'ctx'");
      if (name == "ctx" && !lx.is(":=")) {
        if (ctx || !sides.empty()) lx.fail("misplaced (ctx ...)");
        MetaContext theta = text::read_meta_context(lx);
        lx.expect("|>");
        VarContext delta = text::read_var_context(lx);
        lx.expect(")");
        ctx.emplace(std::move(theta), std::move(delta));
        continue;
      }
      Derivation::Side info;
      sides.push_back(read_side(lx, sig, std::move(name), info));
      infos.push_back(std::move(info));
    }
    d = Derivation::msub(std::move(main), std::move(sides), std::move(ctx))
            .with_sides(std::move(infos));
  } else {
    lx.take_until({});
    lx.expect(")");
    return Derivation::unknown(rule, rule_at);
  }
  if (lx.accept("=>")) d = d.with_claim(text::read_equation(lx, sig));
  lx.expect(")");
  return d.at(at);
}

}  // namespace

Derivation parse_derivation(const Signature& sig, std::string_view src) {
  Lexer lx(src);
  Derivation d = read_derivation(lx, sig);
  if (!lx.at_end()) lx.fail("trailing input '" + lx.peek().text + "'");
  return d;
}

CertBundle parse_cert_bundle(const Signature& sig, std::string_view src) {
  Lexer lx(src);
  CertBundle out;
  while (!lx.at_end()) {
    lx.expect("(");
    Position at = lx.peek().pos;
    if (lx.expect_name("'cert'") != "cert") lx.fail("expected 'cert'", at);
    std::string label = lx.expect_name("axiom label");
    for (const auto& [l, _] : out)
      if (l == label) lx.fail("duplicate certificate for '" + label + "'", at);
    out.emplace_back(std::move(label), read_derivation(lx, sig));
    lx.expect(")");
  }
  return out;
}

namespace {

class DerivationPrinter {
 public:
  DerivationPrinter(const Presentation& p, const Derivation& root,
                    bool claims)
      : claims_(claims) {
    CheckOptions opt;
    opt.on_conclusion = [this](const Derivation& d, const Equation& e) {
      concl_.insert_or_assign(d.id(), e);
    };
    auto r = check_derivation(p, root, opt);
    if (!r) throw Error("cannot print an invalid derivation: " +
                        r.diagnostic().to_string());
  }

  void print(const Derivation& d, std::size_t indent) {
    out_ += '(';
    out_ += rule_name(d.rule());
    switch (d.rule()) {
      case Derivation::Rule::kAxiom:
        out_ += ' ' + d.label();
        break;
      case Derivation::Rule::kRefl:
        out_ += ' ' + print_judgement(d.theta(), d.gamma(), d.term());
        break;
      case Derivation::Rule::kSym:
      case Derivation::Rule::kTrans:
        for (const auto& c : d.children()) {
          newline(indent + 1);
          print(c, indent + 1);
        }
        break;
      case Derivation::Rule::kMsub: {
        newline(indent + 1);
        print(d.children()[0], indent + 1);
        const Equation& main = concl_.at(d.children()[0].id());
        if (d.ctx()) {
          newline(indent + 1);
          out_ += "(ctx " + print_meta_context(d.ctx()->first) + " |> " +
                  print_var_context(d.ctx()->second) + ")";
        }
        for (std::size_t i = 1; i < d.children().size(); ++i) {
          const Derivation& c = d.children()[i];
          const Equation& s = concl_.at(c.id());
          std::size_t arity = main.theta.arity(i);
          std::size_t delta = s.gamma.size - arity;
          newline(indent + 1);
          out_ += "(" + main.theta.name(i) + " := ";
          if (arity > 0) {
            out_ += '(';
            for (std::size_t j = 1; j <= arity; ++j) {
              if (j > 1) out_ += ", ";
              out_ += s.gamma.name(delta + j);
            }
            out_ += ") ";
          }
          out_ += print_term(s.theta, s.gamma, s.lhs) + " :";
          newline(indent + 2);
          print(c, indent + 2);
          out_ += ')';
        }
        break;
      }
      case Derivation::Rule::kUnknown:
        throw Error("unreachable");
    }
    if (claims_ || d.claim()) {
      newline(indent + 1);
      out_ += "=> " + print_equation(d.claim() ? *d.claim()
                                                : concl_.at(d.id()));
    }
    out_ += ')';
  }

  std::string take() { return std::move(out_); }

 private:
  void newline(std::size_t indent) {
    out_ += '\n';
    out_.append(2 * indent, ' ');
  }

  bool claims_;
  std::map<const void*, Equation> concl_;
  std::string out_;
};

}  // namespace

std::string print_derivation(const Presentation& p, const Derivation& d,
                             bool claims) {
  DerivationPrinter printer(p, d, claims);
  printer.print(d, 0);
  return printer.take() + "\n";
}

std::string print_cert_bundle(const Presentation& p, const CertBundle& b) {
  std::string out;
  for (const auto& [label, d] : b) {
    DerivationPrinter printer(p, d, false);
    printer.print(d, 1);
    out += "(cert " + label + "\n  " + printer.take() + ")\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Morphisms

namespace text {

Morphism read_morphism(Lexer& lx, const TheoryResolver& resolve) {
  SOType src = read_object(lx);
  lx.expect("->");
  SOType dst = read_object(lx);
  Position at = lx.peek().pos;
  if (lx.expect_name("'where'") != "where") lx.fail("expected 'where'", at);
  lx.expect("{");
  auto [body, body_pos] = lx.take_until({});
  lx.expect("}");
  at = lx.peek().pos;
  if (lx.expect_name("'in'") != "in") lx.fail("expected 'in'", at);
  at = lx.peek().pos;
  std::string name = lx.expect_name("theory name");
  Theory theory = name == "M" ? theory_m() : resolve(name);
  if (!theory) lx.fail("unknown theory '" + name + "'", at);

  Lexer inner(body, body_pos);
  MetaContext theta(src);
  std::vector<Term> comps;
  for (std::size_t q = 0; q < dst.size(); ++q) {
    if (q > 0) inner.expect(";");
    comps.push_back(read_term(inner, theory->sig, theta, VarContext(dst[q])));
  }
  inner.accept(";");
  if (!inner.at_end())
    inner.fail("expected " + std::to_string(dst.size()) + " component(s)");
  try {
    return Morphism(std::move(src), std::move(dst), std::move(comps), theory);
  } catch (const Error& e) {
    lx.fail(e.what(), body_pos);
  }
}

}  // namespace text

Morphism parse_morphism(std::string_view src, const TheoryResolver& resolve) {
  Lexer lx(src);
  Morphism f = text::read_morphism(lx, resolve);
  if (!lx.at_end()) lx.fail("trailing input '" + lx.peek().text + "'");
  return f;
}

SOType parse_sotype(std::string_view src) {
  Lexer lx(src);
  SOType a = text::read_object(lx);
  if (!lx.at_end()) lx.fail("trailing input '" + lx.peek().text + "'");
  return a;
}

std::string print_morphism(const Morphism& f) {
  std::string out = print_sotype(f.src()) + " -> " + print_sotype(f.dst()) +
                    " where {";
  MetaContext theta = f.src_context();
  for (std::size_t q = 0; q < f.dst().size(); ++q) {
    out += q ? "; " : " ";
    out += print_term(theta, VarContext(f.dst()[q]), f.component(q));
  }
  out += f.dst().empty() ? "}" : " }";
  return out + " in " + f.theory()->name;
}

// ---------------------------------------------------------------------------
// Fragments

FragmentSpec parse_fragment(std::string_view src, const Presentation& p) {
  Lexer lx(src);
  if (lx.at_end() || lx.peek().text != "fragment")
    lx.fail("expected 'fragment'");
  lx.next();
  FragmentSpec spec;
  spec.name = lx.expect_name("fragment name");
  Position at = lx.peek().pos;
  if (lx.expect_name("'over'") != "over") lx.fail("expected 'over'", at);
  at = lx.peek().pos;
  if (lx.expect_name("presentation") != p.name)
    lx.fail("presentation is not '" + p.name + "'", at);
  spec.theory = make_theory(p);
  auto resolve = [&](const std::string& name) -> Theory {
    return name == p.name ? spec.theory : nullptr;
  };
  while (!lx.at_end()) {
    at = lx.peek().pos;
    std::string kw = lx.expect_name("'morphism' or 'triple'");
    if (kw == "morphism") {
      std::string label = lx.expect_name("morphism label");
      lx.expect("=");
      Morphism f = text::read_morphism(lx, resolve);
      if (same_theory(f.theory(), theory_m())) f = in_theory(f, spec.theory);
      spec.morphisms.emplace_back(std::move(label), std::move(f));
    } else if (kw == "triple") {
      FragmentTriple tr;
      tr.h = lx.expect_name("morphism label");
      lx.expect("=");
      tr.g = lx.expect_name("morphism label");
      lx.expect(".");
      lx.expect("(");
      if (!lx.accept(")")) {
        do {
          tr.fs.push_back(lx.expect_name("morphism label"));
        } while (lx.accept(","));
        lx.expect(")");
      }
      if (lx.peek().kind == text::Token::Kind::kName && lx.peek().text == "by") {
        lx.next();
        tr.cert = read_derivation(lx, p.sig);
      }
      spec.triples.push_back(std::move(tr));
    } else {
      lx.fail("expected 'morphism' or 'triple'", at);
    }
  }
  return spec;
}

std::string print_fragment(const FragmentSpec& spec) {
  std::string out = "fragment " + spec.name + " over " + spec.theory->name + "\n";
  for (const auto& [label, f] : spec.morphisms)
    out += "morphism " + label + " = " + print_morphism(f) + "\n";
  for (const auto& tr : spec.triples) {
    out += "triple " + tr.h + " = " + tr.g + " . (";
    for (std::size_t i = 0; i < tr.fs.size(); ++i)
      out += (i ? ", " : "") + tr.fs[i];
    out += ")";
    if (tr.cert) {
      std::string d = print_derivation(*spec.theory, *tr.cert);
      d.pop_back();
      out += " by " + d;
    }
    out += "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Translations

Translation parse_translation(std::string_view src_text,
                              const Presentation& src,
                              const Presentation& dst) {
  Lexer lx(src_text);
  Position at = lx.peek().pos;
  if (lx.at_end() || lx.peek().text != "translation")
    lx.fail("expected 'translation'");
  lx.next();
  std::string name = lx.expect_name("translation name");
  lx.expect(":");
  at = lx.peek().pos;
  if (lx.expect_name("source presentation") != src.name)
    lx.fail("source presentation is not '" + src.name + "'", at);
  lx.expect("->");
  at = lx.peek().pos;
  if (lx.expect_name("target presentation") != dst.name)
    lx.fail("target presentation is not '" + dst.name + "'", at);

  std::vector<std::optional<Term>> images(src.sig.size());
  while (!lx.at_end()) {
    at = lx.peek().pos;
    if (lx.expect_name("'op'") != "op") lx.fail("expected 'op'", at);
    at = lx.peek().pos;
    std::string op = lx.expect_name("operator name");
    const auto& ops = src.sig.operators();
    std::size_t index = 0;
    while (index < ops.size() && ops[index].first != op) ++index;
    if (index == ops.size())
      lx.fail("'" + op + "' is not an operator of '" + src.name + "'", at);
    if (images[index]) lx.fail("second image for '" + op + "'", at);
    lx.expect("=>");
    std::vector<std::string> names;
    if (!lx.is("|-")) {
      do {
        names.push_back(lx.expect_name("metavariable name"));
      } while (lx.accept(","));
    }
    const Arity& arity = ops[index].second;
    if (names.size() != arity.size())
      lx.fail("'" + op + "' has " + std::to_string(arity.size()) +
                  " argument(s), " + std::to_string(names.size()) +
                  " metavariable name(s) given",
              at);
    MetaContext theta(arity, names);
    if (auto msg = theta.validate()) lx.fail(*msg, at);
    lx.expect("|-");
    images[index] = text::read_term(lx, dst.sig, theta, VarContext());
  }
  std::vector<Term> out;
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (!images[i])
      lx.fail("no image for operator '" + src.sig.operators()[i].first + "'");
    out.push_back(std::move(*images[i]));
  }
  return Translation(src.sig, dst.sig, std::move(out), name);
}

FiniteModel parse_model(std::string_view text, const Presentation& p,
                        std::string* name) {
  Lexer lx(text);
  if (lx.at_end() || lx.peek().text != "model") lx.fail("expected 'model'");
  lx.next();
  std::string model_name = lx.expect_name("model name");
  lx.expect(":");
  Position at = lx.peek().pos;
  if (lx.expect_name("presentation") != p.name)
    lx.fail("presentation is not '" + p.name + "'", at);
  at = lx.peek().pos;
  if (lx.expect_name("'size'") != "size") lx.fail("expected 'size'", at);
  at = lx.peek().pos;
  std::size_t size = lx.expect_number("carrier size");
  if (size == 0) lx.fail("carrier size must be positive", at);

  const auto& ops = p.sig.operators();
  std::vector<std::optional<std::vector<Elem>>> interp(ops.size());
  while (!lx.at_end()) {
    at = lx.peek().pos;
    if (lx.expect_name("'op'") != "op") lx.fail("expected 'op'", at);
    at = lx.peek().pos;
    std::string op = lx.expect_name("operator name");
    std::size_t index = 0;
    while (index < ops.size() && ops[index].first != op) ++index;
    if (index == ops.size())
      lx.fail("'" + op + "' is not an operator of '" + p.name + "'", at);
    if (interp[index]) lx.fail("second interpretation for '" + op + "'", at);
    lx.expect("=");
    std::vector<Elem> entries;
    while (lx.peek().kind == text::Token::Kind::kNumber) {
      Position e_at = lx.peek().pos;
      std::size_t e = lx.expect_number("entry");
      if (e >= size)
        lx.fail("entry " + std::to_string(e) + " outside the carrier", e_at);
      entries.push_back(static_cast<Elem>(e));
    }
    std::uint64_t want = FiniteModel::interp_size(size, ops[index].second);
    if (entries.size() != want)
      lx.fail("'" + op + "' needs " + std::to_string(want) + " entries, got " +
                  std::to_string(entries.size()),
              at);
    interp[index] = std::move(entries);
  }
  std::vector<std::vector<Elem>> out;
  for (std::size_t i = 0; i < interp.size(); ++i) {
    if (!interp[i])
      lx.fail("no interpretation for operator '" + ops[i].first + "'");
    out.push_back(std::move(*interp[i]));
  }
  if (name) *name = model_name;
  return FiniteModel(p.sig, size, std::move(out));
}

std::string print_model(const FiniteModel& m, const std::string& name,
                        const std::string& presentation) {
  std::string out = "model " + name + " : " + presentation + " size " +
                    std::to_string(m.carrier()) + "\n";
  const auto& ops = m.sig().operators();
  for (std::size_t o = 0; o < ops.size(); ++o) {
    out += "op " + ops[o].first + " =";
    for (Elem e : m.interp()[o]) out += " " + std::to_string(e);
    out += "\n";
  }
  return out;
}

std::string print_translation(const Translation& tr, const std::string& src,
                              const std::string& dst) {
  std::string out = "translation " +
                    (tr.name().empty() ? std::string("tr") : tr.name()) +
                    " : " + src + " -> " + dst + "\n";
  const auto& ops = tr.src().operators();
  for (std::size_t i = 0; i < ops.size(); ++i) {
    MetaContext theta(ops[i].second);
    out += "op " + ops[i].first + " =>";
    for (std::size_t j = 1; j <= theta.size(); ++j)
      out += (j > 1 ? ", " : " ") + theta.name(j);
    out += " |- " + print_term(theta, VarContext(), tr.images()[i]) + "\n";
  }
  return out;
}

}  // namespace soalg
