#include "soalg/mcat.hpp"

namespace soalg {

const Theory& theory_m() {
  static const Theory m = [] {
    Presentation p;
    p.name = "M";
    return std::make_shared<const Presentation>(std::move(p));
  }();
  return m;
}

Theory make_theory(Presentation p) {
  return std::make_shared<const Presentation>(std::move(p));
}

bool same_theory(const Theory& a, const Theory& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->name != b->name || !(a->sig == b->sig) ||
      a->axioms.size() != b->axioms.size())
    return false;
  for (std::size_t i = 0; i < a->axioms.size(); ++i)
    if (a->axioms[i].label != b->axioms[i].label ||
        !a->axioms[i].same_judgement(b->axioms[i]))
      return false;
  return true;
}

std::string print_sotype(const SOType& a) {
  std::string out = "<";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(a[i]);
  }
  return out + ">";
}

Morphism::Morphism(SOType src, SOType dst, std::vector<Term> components,
                   Theory theory)
    : src_(std::move(src)),
      dst_(std::move(dst)),
      components_(std::move(components)),
      theory_(std::move(theory)) {
  if (!theory_) throw Error("morphism without a theory");
  if (components_.size() != dst_.size())
    throw Error("morphism " + print_sotype(src_) + " -> " +
                print_sotype(dst_) + " given " +
                std::to_string(components_.size()) + " component(s)");
  MetaContext theta(src_);
  for (std::size_t q = 0; q < dst_.size(); ++q)
    if (auto d = check_term(theory_->sig, theta, dst_[q], components_[q]))
      throw Error("component " + std::to_string(q + 1) + ": " +
                  d->to_string());
}

bool Morphism::is_pure() const {
  for (const auto& t : components_)
    if (!t.is_pure()) return false;
  return true;
}

bool operator==(const Morphism& a, const Morphism& b) {
  return a.src_ == b.src_ && a.dst_ == b.dst_ &&
         a.components_ == b.components_ && same_theory(a.theory_, b.theory_);
}

Morphism identity(const SOType& a, const Theory& theory) {
  std::vector<Term> comps;
  for (std::size_t i = 1; i <= a.size(); ++i)
    comps.push_back(Term::meta(i, variables(a[i - 1])));
  return Morphism(a, a, std::move(comps), theory);
}

Morphism compose(const Morphism& f, const Morphism& g) {
  if (f.dst() != g.src())
    throw Error("compose: " + print_sotype(f.dst()) + " is not " +
                print_sotype(g.src()));
  if (!same_theory(f.theory(), g.theory()))
    throw Error("compose: morphisms of different theories");
  std::vector<Term> comps;
  for (std::size_t q = 0; q < g.dst().size(); ++q) {
    std::size_t n = g.dst()[q];
    std::vector<Term> bodies;
    for (std::size_t p = 0; p < f.dst().size(); ++p)
      bodies.push_back(shift(f.component(p), f.dst()[p], n));
    comps.push_back(subst_metas(g.component(q), bodies, n));
  }
  return Morphism(f.src(), g.dst(), std::move(comps), g.theory());
}

SOType terminal() { return {}; }

SOType product(const SOType& a, const SOType& b) {
  SOType out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Morphism proj1(const SOType& a, const SOType& b, const Theory& theory) {
  std::vector<Term> comps;
  for (std::size_t i = 1; i <= a.size(); ++i)
    comps.push_back(Term::meta(i, variables(a[i - 1])));
  return Morphism(product(a, b), a, std::move(comps), theory);
}

Morphism proj2(const SOType& a, const SOType& b, const Theory& theory) {
  std::vector<Term> comps;
  for (std::size_t i = 1; i <= b.size(); ++i)
    comps.push_back(Term::meta(a.size() + i, variables(b[i - 1])));
  return Morphism(product(a, b), b, std::move(comps), theory);
}

Morphism pair(const Morphism& f, const Morphism& g) {
  if (f.src() != g.src())
    throw Error("pair: sources " + print_sotype(f.src()) + " and " +
                print_sotype(g.src()) + " differ");
  if (!same_theory(f.theory(), g.theory()))
    throw Error("pair: morphisms of different theories");
  std::vector<Term> comps = f.components();
  comps.insert(comps.end(), g.components().begin(), g.components().end());
  return Morphism(f.src(), product(f.dst(), g.dst()), std::move(comps),
                  f.theory());
}

Morphism tuple(const SOType& src, const std::vector<Morphism>& fs,
               const Theory& theory) {
  Morphism out = bang(src, theory);
  for (const auto& f : fs) out = pair(out, f);
  return out;
}

Morphism bang(const SOType& a, const Theory& theory) {
  return Morphism(a, {}, {}, theory);
}

SOType exponential(const SOType& b) {
  SOType out = b;
  for (auto& m : out) ++m;
  return out;
}

Morphism eval(const SOType& b, const Theory& theory) {
  std::size_t k = b.size();
  std::vector<Term> comps;
  for (std::size_t i = 1; i <= k; ++i) {
    std::vector<Term> args = variables(b[i - 1]);
    args.push_back(Term::meta(k + 1));
    comps.push_back(Term::meta(i, std::move(args)));
  }
  return Morphism(product(exponential(b), {0}), b, std::move(comps), theory);
}

Morphism curry(const Morphism& f) {
  const SOType& src = f.src();
  if (src.empty() || src.back() != 0)
    throw Error("curry: source " + print_sotype(src) +
                " does not end in an arity-0 entry");
  SOType a(src.begin(), src.end() - 1);
  MetaContext theta(a);
  std::vector<Term> comps;
  for (std::size_t q = 0; q < f.dst().size(); ++q) {
    std::size_t n = f.dst()[q];
    std::vector<Term> bodies = identity_bodies(theta, n + 1);
    bodies.push_back(Term::var(n + 1));
    comps.push_back(subst_metas(weaken(f.component(q), n, 1), bodies, n + 1));
  }
  return Morphism(a, exponential(f.dst()), std::move(comps), f.theory());
}

Morphism uncurry(const Morphism& g) {
  SOType b;
  for (std::size_t m : g.dst()) {
    if (m == 0)
      throw Error("uncurry: target " + print_sotype(g.dst()) +
                  " is not an exponential");
    b.push_back(m - 1);
  }
  std::size_t k = g.src().size();
  std::vector<Term> comps;
  for (std::size_t q = 0; q < b.size(); ++q) {
    std::vector<Term> reps = variables(b[q]);
    reps.push_back(Term::meta(k + 1));
    comps.push_back(subst_vars(g.component(q), reps, b[q]));
  }
  return Morphism(product(g.src(), {0}), b, std::move(comps), g.theory());
}

Morphism in_theory(const Morphism& f, const Theory& theory) {
  if (!f.is_pure())
    throw Error("in_theory: representative is not a morphism of M");
  return Morphism(f.src(), f.dst(), f.components(), theory);
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kEqual:
      return "equal";
    case Verdict::kUnequal:
      return "unequal";
    case Verdict::kNeedsCertificate:
      return "needs-certificate";
    case Verdict::kCertificateRejected:
      return "certificate-rejected";
  }
  return "?";
}

Equation component_equation(const Morphism& f, const Morphism& g,
                            std::size_t q) {
  return Equation{f.src_context(), VarContext(f.dst().at(q)), f.component(q),
                  g.component(q), ""};
}

EqResult morphism_eq(const Morphism& f, const Morphism& g,
                     const std::vector<Derivation>* certs) {
  if (f.src() != g.src() || f.dst() != g.dst())
    throw Error("morphism_eq: " + print_sotype(f.src()) + " -> " +
                print_sotype(f.dst()) + " vs " + print_sotype(g.src()) +
                " -> " + print_sotype(g.dst()));
  if (!same_theory(f.theory(), g.theory()))
    throw Error("morphism_eq: morphisms of different theories");
  const Presentation& p = *f.theory();
  if (p.axioms.empty() && !certs)
    return {f == g ? Verdict::kEqual : Verdict::kUnequal, std::nullopt};
  if (f == g) return {Verdict::kEqual, std::nullopt};
  if (!certs) return {Verdict::kNeedsCertificate, std::nullopt};
  if (certs->size() != f.dst().size())
    return {Verdict::kCertificateRejected,
            Diagnostic{"", "certificate count mismatch",
                       std::to_string(certs->size()) + " for " +
                           std::to_string(f.dst().size()) + " component(s)"}};
  for (std::size_t q = 0; q < f.dst().size(); ++q) {
    auto r = check_derivation(p, (*certs)[q]);
    std::string where = "component " + std::to_string(q + 1);
    if (!r)
      return {Verdict::kCertificateRejected,
              Diagnostic{where + " " + r.diagnostic().path,
                         r.diagnostic().message, r.diagnostic().detail}};
    Equation want = component_equation(f, g, q);
    if (!r.value().same_judgement(want))
      return {Verdict::kCertificateRejected,
              Diagnostic{where, "certificate concludes a different equation",
                         "wanted " + print_equation(want) + ", got " +
                             print_equation(r.value())}};
  }
  return {Verdict::kEqual, std::nullopt};
}

}  // namespace soalg
