#include "soalg/random.hpp"

#include <limits>

namespace soalg {

namespace {
constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max() / 4;

std::size_t sat_add(std::size_t a, std::size_t b) {
  return (a >= kInf || b >= kInf) ? kInf : std::min(kInf, a + b);
}
}

std::size_t Rng::below(std::size_t n) {
  if (n == 0) throw Error("Rng::below(0)");
  // Rejection sampling keeps the result exactly uniform.
  std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = eng_();
  } while (x >= limit);
  return static_cast<std::size_t>(x % n);
}

TermGen::TermGen(const Signature& sig, const MetaContext& theta)
    : sig_(sig), theta_(theta), min_{kInf, kInf} {
  bool changed = true;
  while (changed) {
    changed = false;
    for (int hv = 0; hv < 2; ++hv) {
      std::size_t best = hv ? 1 : kInf;
      for (std::size_t i = 1; i <= theta_.size(); ++i) {
        std::size_t a = theta_.arity(i);
        std::size_t c = 1;
        for (std::size_t j = 0; j < a; ++j) c = sat_add(c, min_[hv]);
        best = std::min(best, c);
      }
      for (const auto& [name, arity] : sig_.operators()) {
        std::size_t c = 1;
        for (std::size_t n : arity) {
          c = sat_add(c, min_[hv || n > 0]);
        }
        best = std::min(best, c);
      }
      if (best < min_[hv]) {
        min_[hv] = best;
        changed = true;
      }
    }
  }
}

std::optional<Term> TermGen::term(Rng& rng, std::size_t gamma,
                                  std::size_t max_size) {
  if (min_for(gamma) > max_size) return std::nullopt;
  return gen(rng, gamma, max_size);
}

Term TermGen::gen(Rng& rng, std::size_t gamma, std::size_t budget) {
  // Every constructor that fits the budget, with its minimum size.
  struct Choice {
    std::size_t kind;  // 0 var, 1 meta, 2 op
    std::size_t index;
    std::size_t cost;
  };
  std::vector<Choice> choices;
  if (gamma > 0) choices.push_back({0, 0, 1});
  for (std::size_t i = 1; i <= theta_.size(); ++i) {
    std::size_t a = theta_.arity(i);
    std::size_t c = 1;
    for (std::size_t j = 0; j < a; ++j) c = sat_add(c, min_for(gamma));
    if (c <= budget) choices.push_back({1, i, c});
  }
  for (std::size_t o = 0; o < sig_.size(); ++o) {
    std::size_t c = 1;
    for (std::size_t n : sig_.operators()[o].second)
      c = sat_add(c, min_for(gamma + n));
    if (c <= budget) choices.push_back({2, o, c});
  }
  // Prefer compound nodes while there is room so sizes spread out.
  std::vector<Choice> big;
  for (const auto& ch : choices)
    if (ch.cost > 1 || (ch.kind == 1 && theta_.arity(ch.index) > 0) ||
        (ch.kind == 2 && !sig_.operators()[ch.index].second.empty()))
      big.push_back(ch);
  const auto& pool = (!big.empty() && budget > 2 && rng.chance(60)) ? big
                                                                     : choices;
  const Choice ch = pool[rng.below(pool.size())];

  auto fill = [&](const std::vector<std::size_t>& depths) {
    std::size_t remaining = budget - 1;
    std::vector<std::size_t> mins;
    std::size_t rest = 0;
    for (std::size_t n : depths) {
      mins.push_back(min_for(gamma + n));
      rest += mins.back();
    }
    std::vector<Term> args;
    for (std::size_t i = 0; i < depths.size(); ++i) {
      rest -= mins[i];
      std::size_t cap = remaining - rest;
      std::size_t share = depths.size() - i;
      std::size_t fair = std::max(mins[i], cap / share);
      std::size_t sub = rng.range(mins[i], std::max(mins[i], std::min(cap, fair + fair / 2)));
      Term t = gen(rng, gamma + depths[i], sub);
      remaining -= t.size();
      args.push_back(std::move(t));
    }
    return args;
  };

  switch (ch.kind) {
    case 0:
      return Term::var(rng.range(1, gamma));
    case 1: {
      std::vector<std::size_t> depths(theta_.arity(ch.index), 0);
      return Term::meta(ch.index, fill(depths));
    }
    default: {
      const auto& [name, arity] = sig_.operators()[ch.index];
      return Term::op(name, fill(arity), arity);
    }
  }
}

Signature random_signature(Rng& rng, std::size_t ops, std::size_t max_args,
                           std::size_t max_depth) {
  Signature sig;
  for (std::size_t i = 1; i <= ops; ++i) {
    Arity a(rng.range(0, max_args));
    for (auto& n : a) n = rng.range(0, max_depth);
    sig.add("o" + std::to_string(i), std::move(a));
  }
  return sig;
}

MetaContext random_meta_context(Rng& rng, std::size_t max_len,
                                std::size_t max_arity) {
  std::vector<std::size_t> arities(rng.range(0, max_len));
  for (auto& a : arities) a = rng.range(0, max_arity);
  return MetaContext(std::move(arities));
}

std::vector<Term> random_bodies(Rng& rng, const Signature& sig,
                                const MetaContext& theta,
                                const MetaContext& target, std::size_t gamma,
                                std::size_t max_size) {
  TermGen gen(sig, target);
  std::vector<Term> out;
  for (std::size_t i = 1; i <= theta.size(); ++i) {
    auto t = gen.term(rng, gamma + theta.arity(i), max_size);
    if (!t) throw Error("random_bodies: no term fits the target context");
    out.push_back(std::move(*t));
  }
  return out;
}

SOType random_sotype(Rng& rng, std::size_t max_len, std::size_t max_entry) {
  SOType a(rng.range(0, max_len));
  for (auto& m : a) m = rng.range(0, max_entry);
  return a;
}

std::optional<Morphism> random_morphism(Rng& rng, const SOType& src,
                                        const SOType& dst, const Theory& theory,
                                        std::size_t max_size) {
  MetaContext theta(src);
  TermGen gen(theory->sig, theta);
  std::vector<Term> comps;
  for (std::size_t n : dst) {
    auto t = gen.term(rng, n, max_size);
    if (!t) return std::nullopt;
    comps.push_back(std::move(*t));
  }
  return Morphism(src, dst, std::move(comps), theory);
}

}  // namespace soalg

namespace soalg {

std::optional<Translation> random_translation(Rng& rng, const Signature& src,
                                              const Signature& dst,
                                              std::size_t max_size) {
  std::vector<Term> images;
  for (const auto& [op, arity] : src.operators()) {
    MetaContext theta(arity);
    TermGen gen(dst, theta);
    auto t = gen.term(rng, 0, max_size);
    if (!t) return std::nullopt;
    images.push_back(std::move(*t));
  }
  return Translation(src, dst, std::move(images));
}

namespace {

class DerivationGen {
 public:
  DerivationGen(Rng& rng, const Presentation& p, std::size_t max_size)
      : rng_(rng), p_(p), max_size_(max_size) {}

  std::optional<Derivation> gen(const MetaContext& theta, std::size_t gamma,
                                std::size_t depth) {
    if (depth <= 1) return leaf(theta, gamma);
    switch (rng_.below(5)) {
      case 0:
        return leaf(theta, gamma);
      case 1: {
        auto d = gen(theta, gamma, depth - 1);
        if (!d) return d;
        return Derivation::sym(*d);
      }
      case 2: {
        if (depth >= 3 && rng_.chance(50)) {
          auto d = gen(theta, gamma, depth - 2);
          if (!d) return d;
          return Derivation::trans(*d, Derivation::sym(*d));
        }
        auto d = gen(theta, gamma, depth - 1);
        if (!d) return d;
        Equation e = check_derivation(p_, *d).value();
        return Derivation::trans(*d, Derivation::refl(theta, VarContext(gamma),
                                                      e.rhs));
      }
      case 3:
        return instance(theta, gamma, depth);
      default: {
        // metasubstitute into a derivation over a smaller context
        MetaContext inner = random_meta_context(rng_, 2, 1);
        std::size_t g0 = rng_.range(0, gamma);
        auto main = gen(inner, g0, depth - 1);
        if (!main) return leaf(theta, gamma);
        return close(*main, inner, g0, theta, gamma, depth);
      }
    }
  }

 private:
  std::optional<Derivation> leaf(const MetaContext& theta, std::size_t gamma) {
    if (!p_.axioms.empty() && rng_.chance(40)) {
      const Equation& ax = p_.axioms[rng_.below(p_.axioms.size())];
      if (ax.theta == theta && ax.gamma.size == gamma)
        return Derivation::axiom(ax.label);
    }
    auto t = TermGen(p_.sig, theta).term(rng_, gamma, max_size_);
    if (!t) return std::nullopt;
    return Derivation::refl(theta, VarContext(gamma), *t);
  }

  std::optional<Derivation> instance(const MetaContext& theta,
                                     std::size_t gamma, std::size_t depth) {
    if (p_.axioms.empty()) return leaf(theta, gamma);
    const Equation& ax = p_.axioms[rng_.below(p_.axioms.size())];
    if (ax.gamma.size > gamma) return leaf(theta, gamma);
    return close(Derivation::axiom(ax.label), ax.theta, ax.gamma.size, theta,
                 gamma, depth);
  }

  // msub of `main` (over inner |> g0) with sides over theta |> delta + a_i.
  std::optional<Derivation> close(const Derivation& main,
                                  const MetaContext& inner, std::size_t g0,
                                  const MetaContext& theta, std::size_t gamma,
                                  std::size_t depth) {
    std::size_t delta = gamma - g0;
    std::vector<Derivation> sides;
    for (std::size_t a : inner.arities) {
      auto s = gen(theta, delta + a, depth - 1);
      if (!s) return leaf(theta, gamma);
      sides.push_back(std::move(*s));
    }
    return Derivation::msub(main, std::move(sides),
                            std::make_pair(theta, VarContext(delta)));
  }

  Rng& rng_;
  const Presentation& p_;
  std::size_t max_size_;
};

}  // namespace

std::optional<Derivation> random_derivation(Rng& rng, const Presentation& p,
                                            const MetaContext& theta,
                                            std::size_t gamma,
                                            std::size_t depth,
                                            std::size_t max_size) {
  return DerivationGen(rng, p, max_size).gen(theta, gamma, depth);
}

}  // namespace soalg
