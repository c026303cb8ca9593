#include "soalg/eqlogic.hpp"

#include <algorithm>
#include <set>

namespace soalg {

bool Equation::same_judgement(const Equation& other) const {
  return theta == other.theta && gamma == other.gamma && lhs == other.lhs &&
         rhs == other.rhs;
}

std::string print_equation(const Equation& eq) {
  return print_meta_context(eq.theta) + " |> " + print_var_context(eq.gamma) +
         " |- " + print_term(eq.theta, eq.gamma, eq.lhs) +
         " == " + print_term(eq.theta, eq.gamma, eq.rhs);
}

const Equation* Presentation::find(std::string_view label) const {
  for (const auto& a : axioms)
    if (a.label == label) return &a;
  return nullptr;
}

std::vector<Diagnostic> validate_presentation(const Presentation& p) {
  std::vector<Diagnostic> out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < p.axioms.size(); ++i) {
    const Equation& a = p.axioms[i];
    std::string where = "axiom " + std::to_string(i + 1);
    if (a.label.empty()) {
      out.push_back({where, "missing label", ""});
    } else {
      where = "axiom (" + a.label + ")";
      if (!seen.insert(a.label).second)
        out.push_back({where, "duplicate label", a.label});
    }
    if (auto msg = a.theta.validate())
      out.push_back({where, "bad metavariable context", *msg});
    if (auto msg = a.gamma.validate())
      out.push_back({where, "bad variable context", *msg});
    if (auto d = check_term(p.sig, a.theta, a.gamma, a.lhs))
      out.push_back({where + " lhs " + d->path, d->message, d->detail});
    if (auto d = check_term(p.sig, a.theta, a.gamma, a.rhs))
      out.push_back({where + " rhs " + d->path, d->message, d->detail});
  }
  return out;
}

// ---------------------------------------------------------------------------

Derivation Derivation::make(Node n) {
  return Derivation(std::make_shared<const Node>(std::move(n)));
}

Derivation Derivation::axiom(std::string label) {
  Node n;
  n.rule = Rule::kAxiom;
  n.label = std::move(label);
  return make(std::move(n));
}

Derivation Derivation::refl(MetaContext theta, VarContext gamma, Term t) {
  Node n;
  n.rule = Rule::kRefl;
  n.theta = std::move(theta);
  n.gamma = std::move(gamma);
  n.term = std::move(t);
  return make(std::move(n));
}

Derivation Derivation::sym(Derivation d) {
  Node n;
  n.rule = Rule::kSym;
  n.children.push_back(std::move(d));
  return make(std::move(n));
}

Derivation Derivation::trans(Derivation a, Derivation b) {
  Node n;
  n.rule = Rule::kTrans;
  n.children.push_back(std::move(a));
  n.children.push_back(std::move(b));
  return make(std::move(n));
}

Derivation Derivation::msub(
    Derivation main, std::vector<Derivation> sides,
    std::optional<std::pair<MetaContext, VarContext>> ctx) {
  Node n;
  n.rule = Rule::kMsub;
  n.children.push_back(std::move(main));
  for (auto& s : sides) n.children.push_back(std::move(s));
  n.ctx = std::move(ctx);
  return make(std::move(n));
}

Derivation Derivation::unknown(std::string rule, Position pos) {
  Node n;
  n.rule = Rule::kUnknown;
  n.label = std::move(rule);
  n.pos = pos;
  return make(std::move(n));
}

Derivation Derivation::with_claim(Equation claim) const {
  Node n = *node_;
  n.claim = std::move(claim);
  return make(std::move(n));
}

Derivation Derivation::with_sides(std::vector<Side> sides) const {
  Node n = *node_;
  n.sides = std::move(sides);
  return make(std::move(n));
}

Derivation Derivation::at(Position pos) const {
  Node n = *node_;
  n.pos = pos;
  return make(std::move(n));
}

std::size_t Derivation::size() const {
  std::size_t n = 1;
  for (const auto& c : children()) n += c.size();
  return n;
}

std::size_t Derivation::depth() const {
  std::size_t d = 0;
  for (const auto& c : children()) d = std::max(d, c.depth());
  return d + 1;
}

const char* rule_name(Derivation::Rule rule) {
  switch (rule) {
    case Derivation::Rule::kAxiom:
      return "axiom";
    case Derivation::Rule::kRefl:
      return "refl";
    case Derivation::Rule::kSym:
      return "sym";
    case Derivation::Rule::kTrans:
      return "trans";
    case Derivation::Rule::kMsub:
      return "msub";
    case Derivation::Rule::kUnknown:
      break;
  }
  return "unknown";
}

VarContext concat_contexts(const VarContext& gamma, const VarContext& delta) {
  std::size_t n = gamma.size + delta.size;
  if (gamma.names.empty() && delta.names.empty()) return VarContext(n);
  std::vector<std::string> names;
  std::set<std::string> taken;
  auto push = [&](std::string name) {
    while (taken.count(name)) name += '\'';
    taken.insert(name);
    names.push_back(std::move(name));
  };
  for (std::size_t j = 1; j <= gamma.size; ++j) push(gamma.name(j));
  for (std::size_t j = 1; j <= delta.size; ++j) push(delta.name(j));
  return VarContext(n, std::move(names));
}

VarContext extend_context(const VarContext& gamma, std::size_t extra) {
  if (gamma.names.empty()) return VarContext(gamma.size + extra);
  std::set<std::string> taken(gamma.names.begin(), gamma.names.end());
  std::vector<std::string> names = gamma.names;
  for (std::size_t j = 1; j <= extra; ++j) {
    std::string name = "x" + std::to_string(gamma.size + j);
    while (taken.count(name)) name += '\'';
    taken.insert(name);
    names.push_back(std::move(name));
  }
  return VarContext(gamma.size + extra, std::move(names));
}

// ---------------------------------------------------------------------------

namespace {

std::string child_path(const std::string& path, std::size_t i) {
  return path + "." + std::to_string(i);
}

class Checker {
 public:
  Checker(const Presentation& p, const CheckOptions& opt) : p_(p), opt_(opt) {}

  Checked<Equation> run(const Derivation& d, const std::string& path,
                        std::size_t depth) {
    if (depth > opt_.max_depth)
      return fail(d, path, "derivation depth cap exceeded",
                  std::to_string(opt_.max_depth));
    Checked<Equation> result = conclude(d, path, depth);
    if (result && d.claim()) {
      const Equation& claim = *d.claim();
      const Equation& got = result.value();
      if (!claim.same_judgement(got))
        return fail(d, path, "conclusion mismatch",
                    "derived " + print_equation(got) + ", claimed " +
                        print_equation(claim));
      Equation out = claim;
      out.label = got.label;
      result = std::move(out);
    }
    if (result && opt_.on_conclusion) opt_.on_conclusion(d, result.value());
    return result;
  }

 private:
  Diagnostic fail(const Derivation& d, const std::string& path,
                  const std::string& message, const std::string& detail) {
    std::string where = path;
    if (d.pos().line > 0)
      where += " (" + std::to_string(d.pos().line) + ":" +
               std::to_string(d.pos().column) + ")";
    return Diagnostic{where, std::string(rule_name(d.rule())) + ": " + message,
                      detail};
  }

  Checked<Equation> conclude(const Derivation& d, const std::string& path,
                             std::size_t depth) {
    switch (d.rule()) {
      case Derivation::Rule::kAxiom: {
        const Equation* ax = p_.find(d.label());
        if (!ax) return fail(d, path, "unknown axiom", d.label());
        return *ax;
      }
      case Derivation::Rule::kRefl: {
        if (auto msg = d.theta().validate())
          return fail(d, path, "bad metavariable context", *msg);
        if (auto msg = d.gamma().validate())
          return fail(d, path, "bad variable context", *msg);
        if (auto diag = check_term(p_.sig, d.theta(), d.gamma(), d.term()))
          return fail(d, path, "ill-formed term", diag->to_string());
        return Equation{d.theta(), d.gamma(), d.term(), d.term(), ""};
      }
      case Derivation::Rule::kSym: {
        if (d.children().size() != 1)
          return fail(d, path, "expects one premise", "");
        auto c = run(d.children()[0], child_path(path, 1), depth + 1);
        if (!c) return c;
        Equation e = c.value();
        std::swap(e.lhs, e.rhs);
        e.label.clear();
        return e;
      }
      case Derivation::Rule::kTrans: {
        if (d.children().size() != 2)
          return fail(d, path, "expects two premises", "");
        auto a = run(d.children()[0], child_path(path, 1), depth + 1);
        if (!a) return a;
        auto b = run(d.children()[1], child_path(path, 2), depth + 1);
        if (!b) return b;
        const Equation& l = a.value();
        const Equation& r = b.value();
        if (!(l.theta == r.theta) || !(l.gamma == r.gamma))
          return fail(d, path, "premise contexts differ",
                      print_meta_context(l.theta) + " |> " +
                          print_var_context(l.gamma) + " vs " +
                          print_meta_context(r.theta) + " |> " +
                          print_var_context(r.gamma));
        if (l.rhs != r.lhs)
          return fail(d, path, "middle terms differ",
                      print_term(l.theta, l.gamma, l.rhs) + " vs " +
                          print_term(r.theta, r.gamma, r.lhs));
        return Equation{l.theta, l.gamma, l.lhs, r.rhs, ""};
      }
      case Derivation::Rule::kMsub:
        return msub(d, path, depth);
      case Derivation::Rule::kUnknown:
        break;
    }
    return fail(d, path, "unknown rule", d.label());
  }

  Checked<Equation> msub(const Derivation& d, const std::string& path,
                         std::size_t depth) {
    if (d.children().empty()) return fail(d, path, "missing main premise", "");
    auto main = run(d.children()[0], child_path(path, 1), depth + 1);
    if (!main) return main;
    const Equation& m = main.value();
    std::size_t k = m.theta.size();
    std::size_t given = d.children().size() - 1;
    if (given != k)
      return fail(d, path, "side premise count mismatch",
                  "main premise has " + std::to_string(k) +
                      " metavariable(s), got " + std::to_string(given) +
                      " side premise(s)");
    if (!d.side_info().empty() && d.side_info().size() != k)
      return fail(d, path, "side annotation count mismatch", "");

    std::vector<Equation> sides;
    for (std::size_t i = 1; i <= k; ++i) {
      auto s = run(d.children()[i], child_path(path, i + 1), depth + 1);
      if (!s) return s;
      sides.push_back(s.value());
    }

    std::optional<MetaContext> theta;
    std::optional<VarContext> delta;
    if (d.ctx()) {
      theta = d.ctx()->first;
      delta = d.ctx()->second;
      if (auto msg = theta->validate())
        return fail(d, path, "bad metavariable context", *msg);
      if (auto msg = delta->validate())
        return fail(d, path, "bad variable context", *msg);
    } else if (k == 0) {
      return fail(d, path, "no side premises and no explicit context", "");
    }

    for (std::size_t i = 1; i <= k; ++i) {
      const Equation& s = sides[i - 1];
      std::size_t arity = m.theta.arity(i);
      std::string which = "side " + std::to_string(i) + " (" +
                          m.theta.name(i) + ")";
      if (s.gamma.size < arity)
        return fail(d, path, which + " context too small",
                    "needs at least " + std::to_string(arity) +
                        " variable(s), has " + std::to_string(s.gamma.size));
      VarContext side_delta(s.gamma.size - arity);
      if (!s.gamma.names.empty())
        side_delta.names.assign(s.gamma.names.begin(),
                                s.gamma.names.begin() +
                                    static_cast<std::ptrdiff_t>(
                                        side_delta.size));
      if (!theta) {
        theta = s.theta;
        delta = side_delta;
      } else if (!(s.theta == *theta)) {
        return fail(d, path, which + " metavariable context mismatch",
                    print_meta_context(s.theta) + " vs " +
                        print_meta_context(*theta));
      } else if (!(side_delta == *delta)) {
        return fail(d, path, which + " variable context mismatch",
                    "Delta of size " + std::to_string(side_delta.size) +
                        " vs " + std::to_string(delta->size));
      }
      if (auto diag = check_annotation(d, i, s, side_delta, path)) return *diag;
    }

    std::size_t g = m.gamma.size;
    std::size_t dsz = delta->size;
    std::vector<Term> lbodies, rbodies;
    for (std::size_t i = 1; i <= k; ++i) {
      std::size_t n = dsz + m.theta.arity(i);
      lbodies.push_back(shift(sides[i - 1].lhs, n, g));
      rbodies.push_back(shift(sides[i - 1].rhs, n, g));
    }
    Term lhs = subst_metas(weaken(m.lhs, g, dsz), lbodies, g + dsz);
    Term rhs = subst_metas(weaken(m.rhs, g, dsz), rbodies, g + dsz);
    return Equation{*theta, concat_contexts(m.gamma, *delta), std::move(lhs),
                    std::move(rhs), ""};
  }

  std::optional<Diagnostic> check_annotation(const Derivation& d,
                                             std::size_t i, const Equation& s,
                                             const VarContext& delta,
                                             const std::string& path) {
    if (d.side_info().empty()) return std::nullopt;
    const Derivation::Side& info = d.side_info()[i - 1];
    std::string which = "side " + std::to_string(i);
    std::size_t arity = s.gamma.size - delta.size;
    if (info.params.size() != arity)
      return fail(d, path, which + " parameter count mismatch",
                  "expects " + std::to_string(arity) + ", got " +
                      std::to_string(info.params.size()));
    if (!info.body) return std::nullopt;
    std::vector<std::string> names;
    for (std::size_t j = 1; j <= delta.size; ++j)
      names.push_back(delta.name(j));
    for (const auto& q : info.params) names.push_back(q);
    VarContext ctx(names.size(), names);
    if (auto msg = ctx.validate())
      return fail(d, path, which + " parameter names clash", *msg);
    try {
      Term body = parse_term(p_.sig, s.theta, ctx, *info.body, info.body_pos);
      if (body != s.lhs)
        return fail(d, path, which + " body differs from its proof",
                    "written " + print_term(s.theta, ctx, body) +
                        ", proved " + print_term(s.theta, ctx, s.lhs));
    } catch (const ParseError& e) {
      return fail(d, path, which + " body", e.what());
    }
    return std::nullopt;
  }

  const Presentation& p_;
  const CheckOptions& opt_;
};

}  // namespace

Checked<Equation> check_derivation(const Presentation& p, const Derivation& d,
                                   const CheckOptions& opt) {
  return Checker(p, opt).run(d, "root", 0);
}

Derivation instantiate_axiom(const Presentation& p, std::string_view label,
                             const MetaContext& theta, const VarContext& delta,
                             const std::vector<Term>& bodies) {
  const Equation* ax = p.find(label);
  if (!ax) throw Error("instantiate_axiom: unknown axiom '" +
                       std::string(label) + "'");
  if (bodies.size() != ax->theta.size())
    throw Error("instantiate_axiom: " + std::to_string(bodies.size()) +
                " bodies for " + std::to_string(ax->theta.size()) +
                " metavariable(s)");
  std::vector<Derivation> sides;
  for (std::size_t i = 1; i <= bodies.size(); ++i) {
    VarContext ctx = extend_context(delta, ax->theta.arity(i));
    if (auto diag = check_term(p.sig, theta, ctx, bodies[i - 1]))
      throw Error("instantiate_axiom: body " + std::to_string(i) + ": " +
                  diag->to_string());
    sides.push_back(Derivation::refl(theta, ctx, bodies[i - 1]));
  }
  return Derivation::msub(Derivation::axiom(std::string(label)),
                          std::move(sides), std::make_pair(theta, delta));
}

}  // namespace soalg
