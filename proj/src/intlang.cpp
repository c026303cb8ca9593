#include "soalg/intlang.hpp"

#include <cstdio>
#include <map>
#include <set>

#include "soalg/formats.hpp"

namespace soalg {

namespace {

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::size_t target_of(const Morphism& f) {
  if (f.dst().size() != 1)
    throw Error("internal language: target " + print_sotype(f.dst()) +
                " is not a singleton");
  return f.dst()[0];
}

}  // namespace

std::string operator_of(const Morphism& f) {
  target_of(f);
  return "o_" + fnv1a_hex(print_morphism(f));
}

Arity operator_arity(const Morphism& f) {
  Arity out = f.src();
  out.resize(out.size() + target_of(f), 0);
  return out;
}

Term t_of(const Morphism& f) {
  std::size_t n = target_of(f);
  std::vector<Term> args;
  for (std::size_t i = 1; i <= f.src().size(); ++i)
    args.push_back(Term::meta(i, variables(f.src()[i - 1], n)));
  for (std::size_t q = 1; q <= n; ++q) args.push_back(Term::var(q));
  return Term::op(operator_of(f), std::move(args), operator_arity(f));
}

const Morphism* FragmentSpec::find(std::string_view label) const {
  for (const auto& [l, f] : morphisms)
    if (l == label) return &f;
  return nullptr;
}

namespace {

std::string triple_path(std::size_t i) { return "triple " + std::to_string(i); }

std::optional<Diagnostic> check_triple(const FragmentSpec& spec,
                                       const FragmentTriple& tr,
                                       std::size_t i) {
  std::string path = triple_path(i);
  auto lookup = [&](const std::string& label) { return spec.find(label); };
  const Morphism* h = lookup(tr.h);
  if (!h) return Diagnostic{path, "unknown morphism '" + tr.h + "'", ""};
  const Morphism* g = lookup(tr.g);
  if (!g) return Diagnostic{path, "unknown morphism '" + tr.g + "'", ""};
  std::vector<Morphism> fs;
  for (const auto& l : tr.fs) {
    const Morphism* f = lookup(l);
    if (!f) return Diagnostic{path, "unknown morphism '" + l + "'", ""};
    fs.push_back(*f);
  }
  if (g->src().size() != fs.size())
    return Diagnostic{path, "argument count mismatch",
                      "'" + tr.g + "' has source " + print_sotype(g->src()) +
                          ", " + std::to_string(fs.size()) + " given"};
  for (std::size_t j = 0; j < fs.size(); ++j) {
    if (fs[j].src() != h->src())
      return Diagnostic{path, "source mismatch",
                        "'" + tr.fs[j] + "' has source " +
                            print_sotype(fs[j].src()) + ", '" + tr.h +
                            "' has " + print_sotype(h->src())};
    if (fs[j].dst()[0] != g->src()[j])
      return Diagnostic{path, "target mismatch",
                        "'" + tr.fs[j] + "' has target " +
                            print_sotype(fs[j].dst()) + ", '" + tr.g +
                            "' expects <" + std::to_string(g->src()[j]) + ">"};
  }
  if (h->dst() != g->dst())
    return Diagnostic{path, "target mismatch",
                      "'" + tr.h + "' and '" + tr.g + "' differ in target"};
  Morphism rhs = compose(tuple(h->src(), fs, spec.theory), *g);
  std::vector<Derivation> certs;
  if (tr.cert) certs.push_back(*tr.cert);
  EqResult r = morphism_eq(*h, rhs, tr.cert ? &certs : nullptr);
  if (!r.equal())
    return Diagnostic{path,
                      std::string("composite not certified: ") +
                          verdict_name(r.verdict),
                      r.diagnostic ? r.diagnostic->to_string() : ""};
  return std::nullopt;
}

}  // namespace

std::optional<Diagnostic> validate(const FragmentSpec& spec) {
  if (!spec.theory) return Diagnostic{"", "fragment has no theory", ""};
  std::set<std::string> labels;
  for (const auto& [label, f] : spec.morphisms) {
    if (!labels.insert(label).second)
      return Diagnostic{"morphism " + label, "duplicate label", ""};
    if (!same_theory(f.theory(), spec.theory))
      return Diagnostic{"morphism " + label,
                        "morphism is not in '" + spec.theory->name + "'", ""};
    if (f.dst().size() != 1)
      return Diagnostic{"morphism " + label, "target is not a singleton",
                        print_sotype(f.dst())};
  }
  for (std::size_t i = 0; i < spec.triples.size(); ++i)
    if (auto d = check_triple(spec, spec.triples[i], i + 1)) return d;
  return std::nullopt;
}

Presentation emit_fragment(const FragmentSpec& spec) {
  if (auto d = validate(spec))
    throw Error("emit_fragment: " + d->to_string());
  Presentation out;
  out.name = spec.name;
  std::set<std::string> seen;
  for (const auto& [_, f] : spec.morphisms) {
    std::string op = operator_of(f);
    if (!seen.insert(op).second) continue;
    out.sig.add(op, operator_arity(f));
  }
  seen.clear();
  for (const auto& [_, f] : spec.morphisms) {
    std::string op = operator_of(f);
    if (!f.is_pure() || !seen.insert(op).second) continue;
    out.axioms.push_back(Equation{f.src_context(), VarContext(f.dst()[0]),
                                  f.component(0), t_of(f), "eq_" + op});
  }
  for (std::size_t i = 0; i < spec.triples.size(); ++i) {
    const FragmentTriple& tr = spec.triples[i];
    const Morphism& h = *spec.find(tr.h);
    const Morphism& g = *spec.find(tr.g);
    std::size_t n = h.dst()[0];
    std::vector<Term> bodies;
    for (const auto& l : tr.fs) {
      const Morphism& f = *spec.find(l);
      bodies.push_back(shift(t_of(f), f.dst()[0], n));
    }
    out.axioms.push_back(Equation{h.src_context(), VarContext(n), t_of(h),
                                  subst_metas(t_of(g), bodies, n),
                                  "comp" + std::to_string(i + 1)});
  }
  return out;
}

namespace {

Term closed_representative(const Morphism& f) {
  std::size_t k = f.src().size(), n = f.dst()[0];
  std::vector<Term> closing;
  for (std::size_t q = 1; q <= n; ++q) closing.push_back(Term::meta(k + q));
  return subst_vars(f.component(0), closing, 0);
}

}  // namespace

Translation fragment_dictionary(const FragmentSpec& spec) {
  Presentation frag = emit_fragment(spec);
  std::map<std::string, Term> images;
  for (const auto& [_, f] : spec.morphisms)
    images.emplace(operator_of(f), closed_representative(f));
  std::vector<Term> out;
  for (const auto& [op, _] : frag.sig.operators()) out.push_back(images.at(op));
  return Translation(frag.sig, spec.theory->sig, std::move(out),
                     spec.name + "_dictionary");
}

TranslationCerts fragment_soundness_certs(const FragmentSpec& spec) {
  Presentation frag = emit_fragment(spec);
  Translation dict = fragment_dictionary(spec);
  TranslationCerts out;
  std::size_t triple = 0;
  for (const Equation& ax : frag.axioms) {
    if (ax.label.rfind("comp", 0) == 0) {
      const FragmentTriple& tr = spec.triples[triple++];
      if (tr.cert && !(apply(dict, ax.lhs, ax.gamma.size) ==
                       apply(dict, ax.rhs, ax.gamma.size))) {
        out.emplace_back(ax.label, *tr.cert);
        continue;
      }
    }
    out.emplace_back(ax.label, Derivation::refl(ax.theta, ax.gamma,
                                                apply(dict, ax.lhs,
                                                      ax.gamma.size)));
  }
  return out;
}

// ---------------------------------------------------------------------------

FragmentBuilder::FragmentBuilder(std::string name, Theory theory) {
  spec_.name = std::move(name);
  spec_.theory = std::move(theory);
}

std::string FragmentBuilder::add(const Morphism& f) {
  std::string op = operator_of(f);
  if (!spec_.find(op)) spec_.morphisms.emplace_back(op, f);
  return op;
}

std::string FragmentBuilder::add_triple(const Morphism& h, const Morphism& g,
                                        const std::vector<Morphism>& fs,
                                        std::optional<Derivation> cert) {
  FragmentTriple tr{add(h), add(g), {}, std::move(cert)};
  for (const auto& f : fs) tr.fs.push_back(add(f));
  for (std::size_t i = 0; i < spec_.triples.size(); ++i) {
    const FragmentTriple& old = spec_.triples[i];
    if (old.h == tr.h && old.g == tr.g && old.fs == tr.fs)
      return "comp" + std::to_string(i + 1);
  }
  spec_.triples.push_back(std::move(tr));
  return "comp" + std::to_string(spec_.triples.size());
}

namespace {

Morphism generator(const std::string& op, const Arity& arity,
                   const Theory& theory) {
  std::vector<Term> args;
  for (std::size_t i = 1; i <= arity.size(); ++i)
    args.push_back(Term::meta(i, variables(arity[i - 1])));
  return Morphism(arity, {0}, {Term::op(op, std::move(args), arity)}, theory);
}

}  // namespace

FragmentSpec canonical_spec(const Presentation& p) {
  Theory theory = make_theory(p);
  FragmentBuilder b(p.name + "_internal", theory);
  for (const auto& [op, arity] : p.sig.operators())
    b.add(generator(op, arity, theory));
  return b.spec();
}

namespace {

using Ctx = std::pair<MetaContext, VarContext>;

Derivation ax(const std::string& label) { return Derivation::axiom(label); }
Derivation sym(Derivation d) { return Derivation::sym(std::move(d)); }
Derivation trans(Derivation a, Derivation b) {
  return Derivation::trans(std::move(a), std::move(b));
}
Derivation msub(Derivation main, std::vector<Derivation> sides,
                const SOType& theta, std::size_t delta) {
  return Derivation::msub(std::move(main), std::move(sides),
                          Ctx{MetaContext(theta), VarContext(delta)});
}
Derivation refl(const SOType& theta, std::size_t gamma, Term t) {
  return Derivation::refl(MetaContext(theta), VarContext(gamma), std::move(t));
}

std::vector<Term> metas(std::size_t from, std::size_t count) {
  std::vector<Term> out;
  for (std::size_t i = 1; i <= count; ++i) out.push_back(Term::meta(from + i));
  return out;
}

// Builds, for each term u over (theta |> n), a derivation of
// tau(u) == t_[u] in the fragment, adding what it uses to the fragment.
class Closure {
 public:
  explicit Closure(const Presentation& p)
      : theory_(make_theory(p)), b_(p.name + "_internal", theory_) {
    for (const auto& [op, arity] : p.sig.operators())
      b_.add(generator(op, arity, theory_));
  }

  FragmentBuilder& builder() { return b_; }

  Morphism at(const SOType& theta, std::size_t n, Term u) const {
    return Morphism(theta, {n}, {std::move(u)}, theory_);
  }

  // (i) for a pure morphism.
  Derivation pure(const Morphism& f) { return ax("eq_" + b_.add(f)); }

  Derivation to_canonical(const SOType& theta, std::size_t n, const Term& u) {
    Morphism f = at(theta, n, u);
    if (f.is_pure()) return pure(f);
    if (u.kind() == Term::Kind::kOp) {
      Arity arity(u.binders().begin(), u.binders().end());
      SOType src;
      std::vector<Morphism> fs;
      std::vector<Derivation> sides;
      for (std::size_t i = 0; i < arity.size(); ++i) {
        src.push_back(n + arity[i]);
        fs.push_back(at(theta, n + arity[i], u.arg(i)));
        sides.push_back(to_canonical(theta, n + arity[i], u.arg(i)));
      }
      Morphism g = at(src, n, lifted(u.op_name(), arity, n));
      std::string comp = b_.add_triple(f, g, fs);
      Derivation d1 = msub(operator_step(u.op_name(), arity, n),
                           std::move(sides), theta, 0);
      return trans(std::move(d1), sym(ax(comp)));
    }
    // a metavariable applied to arguments, some not pure
    std::size_t j = u.index(), a = u.args().size();
    SOType esrc{a};
    esrc.resize(a + 1, n);
    std::vector<Term> eargs;
    for (std::size_t l = 0; l < a; ++l)
      eargs.push_back(Term::meta(l + 2, variables(n)));
    Morphism e = at(esrc, n, Term::meta(1, std::move(eargs)));
    Morphism pj = at(theta, a, Term::meta(j, variables(a)));
    std::vector<Morphism> fs{pj};
    std::vector<Derivation> sides{pure(pj)};
    for (std::size_t l = 0; l < a; ++l) {
      fs.push_back(at(theta, n, u.arg(l)));
      sides.push_back(to_canonical(theta, n, u.arg(l)));
    }
    std::string comp = b_.add_triple(f, e, fs);
    Derivation d = msub(pure(e), std::move(sides), theta, 0);
    return trans(std::move(d), sym(ax(comp)));
  }

  // Certificate for an axiom s == t of p.
  Derivation axiom_cert(const Equation& eq) {
    const SOType& theta = eq.theta.arities;
    std::size_t n = eq.gamma.size;
    Morphism fs = at(theta, n, eq.lhs), ft = at(theta, n, eq.rhs);
    std::vector<Morphism> projs;
    std::vector<Derivation> back;
    for (std::size_t j = 1; j <= theta.size(); ++j) {
      projs.push_back(at(theta, theta[j - 1],
                         Term::meta(j, variables(theta[j - 1]))));
      back.push_back(sym(pure(projs.back())));
    }
    std::optional<Derivation> cert;
    if (!(eq.lhs == eq.rhs)) cert = ax(eq.label);
    std::string comp = b_.add_triple(fs, ft, projs, cert);
    Derivation unproject = msub(refl(theta, n, t_of(ft)), std::move(back),
                                theta, 0);
    return trans(to_canonical(theta, n, eq.lhs),
                 trans(ax(comp), trans(std::move(unproject),
                                       sym(to_canonical(theta, n, eq.rhs)))));
  }

 private:
  // o((y_i) m_i[x_1..x_n, y_i]) over (<n + n_i>_i |> n).
  static Term lifted(const std::string& op, const Arity& arity, std::size_t n) {
    std::vector<Term> args;
    for (std::size_t i = 0; i < arity.size(); ++i)
      args.push_back(Term::meta(i + 1, variables(n + arity[i])));
    return Term::op(op, std::move(args), arity);
  }

  // tau(v) == t_g for g = <v>, v = lifted(op, arity, n).
  Derivation operator_step(const std::string& op, const Arity& arity,
                           std::size_t n) {
    auto key = std::make_pair(op, n);
    if (auto it = steps_.find(key); it != steps_.end()) return it->second;
    Derivation d = make_operator_step(op, arity, n);
    steps_.emplace(key, d);
    return d;
  }

  Derivation make_operator_step(const std::string& op, const Arity& arity,
                                std::size_t n) {
    std::size_t k = arity.size();
    SOType theta_g;
    for (std::size_t ni : arity) theta_g.push_back(n + ni);
    Term v = lifted(op, arity, n);
    Morphism g = at(theta_g, n, v);
    Morphism fo = generator(op, arity, theory_);
    if (n == 0) {
      b_.add(g);
      return refl(theta_g, 0, t_of(fo));
    }
    // close the n variables with trailing nullary metavariables
    SOType theta_c = theta_g;
    theta_c.resize(k + n, 0);
    std::vector<Term> closing = metas(k, n);
    Term vc = subst_vars(v, closing, 0);
    Morphism fvc = at(theta_c, 0, vc);

    // A: tau(vc) == t_[vc], through fo and the parameter projections
    std::vector<Morphism> params;
    std::vector<Derivation> param_eqs;
    for (std::size_t i = 1; i <= k; ++i) {
      std::vector<Term> args = closing;
      for (Term& y : variables(arity[i - 1])) args.push_back(std::move(y));
      params.push_back(at(theta_c, arity[i - 1], Term::meta(i, std::move(args))));
      param_eqs.push_back(pure(params.back()));
    }
    std::string t1 = b_.add_triple(fvc, fo, params);
    Derivation a = trans(msub(refl(arity, 0, t_of(fo)), std::move(param_eqs),
                              theta_c, 0),
                         sym(ax(t1)));

    // reopen: m_j := m_j, m_{k+q} := x_q over Delta = n
    auto reopen = [&] {
      std::vector<Derivation> sides;
      for (std::size_t j = 1; j <= k; ++j)
        sides.push_back(refl(theta_g, n + theta_g[j - 1],
                             Term::meta(j, variables(theta_g[j - 1], n))));
      for (std::size_t q = 1; q <= n; ++q)
        sides.push_back(refl(theta_g, n, Term::var(q)));
      return sides;
    };
    Derivation bstep = msub(std::move(a), reopen(), theta_g, n);

    // J: t_[vc] == t_g[x_q := m_{k+q}[]], through evaluation
    SOType ev_src{n};
    ev_src.resize(n + 1, 0);
    Term p_term = Term::meta(1, metas(1, n));
    Morphism ev = at(ev_src, 0, p_term);
    Morphism g_c = at(theta_c, n, v);
    std::vector<Morphism> closers;
    for (std::size_t q = 1; q <= n; ++q)
      closers.push_back(at(theta_c, 0, Term::meta(k + q)));
    std::vector<Morphism> t2_args{g_c};
    t2_args.insert(t2_args.end(), closers.begin(), closers.end());
    std::string t2 = b_.add_triple(fvc, ev, t2_args);

    std::vector<Morphism> projs;
    std::vector<Derivation> unproject;
    for (std::size_t j = 1; j <= k; ++j) {
      projs.push_back(at(theta_c, theta_g[j - 1],
                         Term::meta(j, variables(theta_g[j - 1]))));
      unproject.push_back(sym(pure(projs.back())));
    }
    std::string t3 = b_.add_triple(g_c, g, projs);

    std::vector<Derivation> s1_sides{refl(theta_c, n, t_of(g_c))};
    for (const auto& c : closers) s1_sides.push_back(refl(theta_c, 0, t_of(c)));
    Derivation s1 = msub(pure(ev), std::move(s1_sides), theta_c, 0);

    Derivation x = trans(ax(t3), msub(refl(theta_g, n, t_of(g)),
                                      std::move(unproject), theta_c, 0));
    std::vector<Derivation> s2_sides{std::move(x)};
    for (const auto& c : closers) s2_sides.push_back(sym(pure(c)));
    Derivation s2 = msub(refl(ev_src, 0, p_term), std::move(s2_sides),
                         theta_c, 0);
    Derivation j = trans(ax(t2), trans(sym(std::move(s1)), std::move(s2)));
    Derivation kstep = msub(std::move(j), reopen(), theta_g, n);
    return trans(std::move(bstep), std::move(kstep));
  }

  Theory theory_;
  FragmentBuilder b_;
  std::map<std::pair<std::string, std::size_t>, Derivation> steps_;
};

}  // namespace

Roundtrip roundtrip(const Presentation& p) {
  Closure c(p);
  TranslationCerts certs;
  for (const Equation& eq : p.axioms)
    certs.emplace_back(eq.label, c.axiom_cert(eq));
  Roundtrip out{c.builder().spec(), {}, Translation(Signature{}, Signature{}, {}),
                std::move(certs), Translation(Signature{}, Signature{}, {})};
  out.fragment = emit_fragment(out.spec);
  std::vector<Term> images;
  for (const auto& [op, arity] : p.sig.operators())
    images.push_back(t_of(generator(op, arity, out.spec.theory)));
  out.unit = Translation(p.sig, out.fragment.sig, std::move(images),
                         p.name + "_unit");
  out.inverse = fragment_dictionary(out.spec);
  return out;
}

Translation roundtrip_unit(const Presentation& p) { return roundtrip(p).unit; }

}  // namespace soalg
