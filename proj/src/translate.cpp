#include "soalg/translate.hpp"

namespace soalg {

Translation::Translation(Signature src, Signature dst, std::vector<Term> images,
                         std::string name)
    : src_(std::move(src)),
      dst_(std::move(dst)),
      images_(std::move(images)),
      name_(std::move(name)) {
  const auto& ops = src_.operators();
  if (images_.size() != ops.size())
    throw Error("translation gives " + std::to_string(images_.size()) +
                " image(s) for " + std::to_string(ops.size()) + " operator(s)");
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const auto& [op, arity] = ops[i];
    if (auto d = check_term(dst_, MetaContext(arity), 0, images_[i]))
      throw Error("image of '" + op + "': " + d->to_string());
    index_.emplace(op, i);
  }
}

const Term& Translation::image(std::string_view op) const {
  auto it = index_.find(op);
  if (it == index_.end())
    throw Error("translation has no image for '" + std::string(op) + "'");
  return images_[it->second];
}

Translation identity_translation(const Signature& sig) {
  std::vector<Term> images;
  for (const auto& [op, arity] : sig.operators()) {
    std::vector<Term> args;
    for (std::size_t i = 0; i < arity.size(); ++i)
      args.push_back(Term::meta(i + 1, variables(arity[i])));
    images.push_back(Term::op(op, std::move(args), arity));
  }
  return Translation(sig, sig, std::move(images), "id");
}

namespace {

Term apply_rec(const Translation& tr, const Term& t, std::size_t depth) {
  switch (t.kind()) {
    case Term::Kind::kVar:
      return t;
    case Term::Kind::kMeta: {
      std::vector<Term> args;
      for (const Term& a : t.args()) args.push_back(apply_rec(tr, a, depth));
      return Term::meta(t.index(), std::move(args));
    }
    case Term::Kind::kOp: {
      std::vector<Term> bodies;
      for (std::size_t i = 0; i < t.args().size(); ++i)
        bodies.push_back(apply_rec(tr, t.arg(i), depth + t.binders()[i]));
      return subst_metas(weaken(tr.image(t.op_name()), 0, depth), bodies,
                         depth);
    }
  }
  throw Error("unreachable");
}

}  // namespace

Term apply(const Translation& tr, const Term& t, std::size_t gamma) {
  return apply_rec(tr, t, gamma);
}

Term apply(const Translation& tr, const MetaContext& theta,
           const VarContext& gamma, const Term& t) {
  if (auto d = check_term(tr.src(), theta, gamma, t))
    throw Error("apply: " + d->to_string());
  return apply_rec(tr, t, gamma.size);
}

Equation apply(const Translation& tr, const Equation& eq) {
  return Equation{eq.theta, eq.gamma, apply(tr, eq.theta, eq.gamma, eq.lhs),
                  apply(tr, eq.theta, eq.gamma, eq.rhs), eq.label};
}

Translation compose(const Translation& tr1, const Translation& tr2) {
  if (!(tr1.dst() == tr2.src()))
    throw Error("compose: target signature of the first translation is not "
                "the source of the second");
  std::vector<Term> images;
  for (const Term& t : tr1.images()) images.push_back(apply(tr2, t, 0));
  return Translation(tr1.src(), tr2.dst(), std::move(images));
}

Signature lambda_signature() { return Signature{{"abs", {1}}, {"app", {0, 0}}}; }

Translation builtin_cps() {
  auto abs = [](Term body) { return Term::op("abs", {std::move(body)}, {1}); };
  auto app = [](Term a, Term b) {
    return Term::op("app", {std::move(a), std::move(b)});
  };
  auto x = [](std::size_t j) { return Term::var(j); };
  auto m = [](std::size_t i, std::vector<Term> args = {}) {
    return Term::meta(i, std::move(args));
  };
  // levels: k = 1, v = 2, l = 3
  Term tau_app =
      abs(app(m(1), abs(app(app(x(2), abs(app(m(2), x(3)))), x(1)))));
  // levels: k = 1, x = 2, l = 3
  Term tau_abs = abs(app(x(1), abs(abs(app(m(1, {x(2)}), x(3))))));
  return Translation(lambda_signature(), lambda_signature(),
                     {std::move(tau_abs), std::move(tau_app)}, "cps");
}

namespace {

const Derivation* find_cert(const TranslationCerts& certs,
                            std::string_view label) {
  for (const auto& [l, d] : certs)
    if (l == label) return &d;
  return nullptr;
}

void require_signatures(const Translation& tr, const Presentation& src,
                        const Presentation& dst) {
  if (!(tr.src() == src.sig))
    throw Error("translation source signature differs from '" + src.name +
                "'");
  if (!(tr.dst() == dst.sig))
    throw Error("translation target signature differs from '" + dst.name +
                "'");
}

}  // namespace

std::optional<Diagnostic> check_equational(const Translation& tr,
                                           const Presentation& src,
                                           const Presentation& dst,
                                           const TranslationCerts& certs) {
  require_signatures(tr, src, dst);
  for (const auto& [label, _] : certs)
    if (!src.find(label))
      return Diagnostic{label, "certificate for an unknown axiom", ""};
  for (const Equation& ax : src.axioms) {
    const Derivation* cert = find_cert(certs, ax.label);
    if (!cert) return Diagnostic{ax.label, "missing certificate", ""};
    auto r = check_derivation(dst, *cert);
    if (!r)
      return Diagnostic{ax.label + " " + r.diagnostic().path,
                        r.diagnostic().message, r.diagnostic().detail};
    Equation want = apply(tr, ax);
    if (!r.value().same_judgement(want))
      return Diagnostic{ax.label, "certificate concludes a different equation",
                        "wanted " + print_equation(want) + ", got " +
                            print_equation(r.value())};
  }
  return std::nullopt;
}

namespace {

Derivation transport(const Translation& tr, const TranslationCerts& certs,
                     const Derivation& d) {
  Derivation out = Derivation::axiom("");
  switch (d.rule()) {
    case Derivation::Rule::kAxiom: {
      const Derivation* cert = find_cert(certs, d.label());
      if (!cert) throw Error("no certificate for axiom '" + d.label() + "'");
      return *cert;
    }
    case Derivation::Rule::kRefl:
      out = Derivation::refl(d.theta(), d.gamma(),
                             apply(tr, d.term(), d.gamma().size));
      break;
    case Derivation::Rule::kSym:
      out = Derivation::sym(transport(tr, certs, d.children()[0]));
      break;
    case Derivation::Rule::kTrans:
      out = Derivation::trans(transport(tr, certs, d.children()[0]),
                              transport(tr, certs, d.children()[1]));
      break;
    case Derivation::Rule::kMsub: {
      std::vector<Derivation> sides;
      for (std::size_t i = 1; i < d.children().size(); ++i)
        sides.push_back(transport(tr, certs, d.children()[i]));
      out = Derivation::msub(transport(tr, certs, d.children()[0]),
                             std::move(sides), d.ctx());
      break;
    }
    case Derivation::Rule::kUnknown:
      throw Error("unknown rule");
  }
  if (d.claim()) out = out.with_claim(apply(tr, *d.claim()));
  return out;
}

}  // namespace

Derivation translate_derivation(const Translation& tr,
                                const Presentation& src,
                                const Presentation& dst,
                                const TranslationCerts& certs,
                                const Derivation& d) {
  require_signatures(tr, src, dst);
  auto r = check_derivation(src, d);
  if (!r) throw Error("translate_derivation: " + r.diagnostic().to_string());
  return transport(tr, certs, d);
}

Morphism map_morphism(const Translation& tr, const Morphism& f,
                      const Theory& dst) {
  if (!(f.theory()->sig == tr.src()))
    throw Error("map_morphism: morphism of '" + f.theory()->name +
                "' is outside the translation's source signature");
  if (!(dst->sig == tr.dst()))
    throw Error("map_morphism: target theory '" + dst->name +
                "' does not match the translation");
  std::vector<Term> comps;
  for (std::size_t q = 0; q < f.dst().size(); ++q)
    comps.push_back(apply(tr, f.component(q), f.dst()[q]));
  return Morphism(f.src(), f.dst(), std::move(comps), dst);
}

std::function<Morphism(const Morphism&)> induced_theory_map(
    const Translation& tr, const Theory& src, const Theory& dst) {
  if (!(src->sig == tr.src()) || !(dst->sig == tr.dst()))
    throw Error("induced_theory_map: theories do not match the translation");
  return [tr, src, dst](const Morphism& f) {
    if (!same_theory(f.theory(), src))
      throw Error("M(tr): morphism is not in '" + src->name + "'");
    return map_morphism(tr, f, dst);
  };
}

}  // namespace soalg
