#include "soalg/laws.hpp"

#include <functional>
#include <optional>

#include "soalg/random.hpp"

namespace soalg {

bool LawSuite::ok() const {
  for (const auto& l : laws)
    if (l.failed > 0 || l.checked == 0) return false;
  return true;
}

LawResult& LawSuite::law(const std::string& n) {
  for (auto& l : laws)
    if (l.name == n) return l;
  laws.push_back(LawResult{n, 0, 0, {}});
  return laws.back();
}

namespace {

void record(LawSuite& suite, const std::string& law, bool holds,
            std::uint64_t sample) {
  LawResult& r = suite.law(law);
  ++r.checked;
  if (!holds && r.failed++ == 0)
    r.first_failure = "sample " + std::to_string(sample);
}

std::optional<std::vector<Term>> term_list(Rng& rng, TermGen& gen,
                                           std::size_t count,
                                           std::size_t gamma,
                                           std::size_t max_size) {
  std::vector<Term> out;
  for (std::size_t i = 0; i < count; ++i) {
    auto t = gen.term(rng, gamma, max_size);
    if (!t) return std::nullopt;
    out.push_back(*t);
  }
  return out;
}

}  // namespace

LawSuite substitution_suite(std::uint64_t seed, std::uint64_t samples) {
  LawSuite suite{"substitution", 0, {}};
  for (const char* n : {"preservation", "unit", "fusion", "associativity"})
    suite.law(n);
  Rng rng(seed);
  std::uint64_t attempts = 0;
  while (suite.samples < samples && attempts++ < 20 * samples + 100) {
    Signature sig = random_signature(rng, 3, 3, 2);
    MetaContext th1 = random_meta_context(rng, 5, 2);
    // A nullary metavariable keeps bodies over empty contexts feasible.
    MetaContext th2 = random_meta_context(rng, 4, 2);
    th2.arities.push_back(0);
    MetaContext th3 = random_meta_context(rng, 4, 2);
    th3.arities.push_back(0);
    std::size_t n = rng.range(0, 5), p = rng.range(1, 5), q = rng.range(1, 5);
    TermGen g1(sig, th1);
    auto t = g1.term(rng, n, 30);
    if (!t || check_term(sig, th1, n, *t)) continue;
    std::uint64_t i = suite.samples++;

    record(suite, "unit",
           subst_vars(*t, variables(n), n) == *t &&
               subst_metas(*t, identity_bodies(th1, n), n) == *t,
           i);

    auto u = term_list(rng, g1, n, p, 8);
    auto v = term_list(rng, g1, p, q, 8);
    if (u && v) {
      Term tu = subst_vars(*t, *u, p);
      std::vector<Term> uv;
      for (const auto& x : *u) uv.push_back(subst_vars(x, *v, q));
      record(suite, "preservation", !check_term(sig, th1, p, tu), i);
      record(suite, "fusion", subst_vars(tu, *v, q) == subst_vars(*t, uv, q),
             i);
    }

    auto s = random_bodies(rng, sig, th1, th2, n, 10);
    Term ts = subst_metas(*t, s, n);
    record(suite, "preservation", !check_term(sig, th2, n, ts), i);
    auto r = random_bodies(rng, sig, th2, th3, n, 8);
    std::vector<Term> sr;
    for (std::size_t a = 1; a <= th1.size(); ++a) {
      std::size_t m = th1.arity(a);
      std::vector<Term> rw;
      for (std::size_t j = 1; j <= th2.size(); ++j) {
        // r_j lives over n + a_j; the m parameters of s_a come first.
        std::size_t aj = th2.arity(j);
        std::vector<Term> ren = variables(n);
        for (std::size_t l = 1; l <= aj; ++l)
          ren.push_back(Term::var(n + m + l));
        rw.push_back(subst_vars(r[j - 1], ren, n + m + aj));
      }
      sr.push_back(subst_metas(s[a - 1], rw, n + m));
    }
    record(suite, "associativity",
           subst_metas(ts, r, n) == subst_metas(*t, sr, n), i);
  }
  return suite;
}

LawSuite category_suite(std::uint64_t seed, std::uint64_t samples) {
  LawSuite suite{"category", 0, {}};
  for (const char* n : {"associativity", "unit", "product_beta",
                        "product_eta", "exponential_beta", "exponential_eta"})
    suite.law(n);
  Rng rng(seed);
  auto draw = [&](const SOType& a, const SOType& b) {
    return random_morphism(rng, a, b, theory_m(), 16);
  };
  auto object = [&] {
    SOType a = random_sotype(rng, 3, 3);
    a.push_back(0);  // every hom-set out of it is inhabited
    return a;
  };
  std::uint64_t attempts = 0;
  while (suite.samples < samples && attempts++ < 20 * samples + 100) {
    SOType a = object(), b = object(), c = object(), d = random_sotype(rng, 4, 3);
    auto f = draw(a, b), g = draw(b, c), h = draw(c, d), f2 = draw(a, c),
         k = draw(a, product(b, c)), e = draw(product(a, {0}), b),
         l = draw(a, exponential(b));
    if (!f || !g || !h || !f2 || !k || !e || !l) continue;
    std::uint64_t i = suite.samples++;

    record(suite, "associativity",
           compose(compose(*f, *g), *h) == compose(*f, compose(*g, *h)), i);
    record(suite, "unit",
           compose(identity(a), *f) == *f && compose(*f, identity(b)) == *f,
           i);
    Morphism ff = pair(*f, *f2);
    record(suite, "product_beta",
           compose(ff, proj1(b, c)) == *f && compose(ff, proj2(b, c)) == *f2,
           i);
    record(suite, "product_eta",
           pair(compose(*k, proj1(b, c)), compose(*k, proj2(b, c))) == *k, i);
    // ev . (curry(e) x id) = e
    Morphism lifted =
        pair(compose(proj1(a, {0}), curry(*e)), proj2(a, {0}));
    record(suite, "exponential_beta",
           compose(lifted, eval(b)) == *e && uncurry(curry(*e)) == *e, i);
    // curry(ev . (l x id)) = l
    Morphism ll = pair(compose(proj1(a, {0}), *l), proj2(a, {0}));
    record(suite, "exponential_eta",
           curry(compose(ll, eval(b))) == *l && curry(uncurry(*l)) == *l, i);
  }
  return suite;
}

LawSuite compositionality_suite(std::uint64_t seed, std::uint64_t samples) {
  LawSuite suite{"compositionality", 0, {}};
  suite.law("subst_vars");
  suite.law("subst_metas");
  Rng rng(seed);
  Signature src = lambda_signature();
  src.add("pair", {0, 2});
  Signature dst = lambda_signature();
  dst.add("c", {});
  Translation cps = builtin_cps();
  std::uint64_t attempts = 0;
  while (suite.samples < samples && attempts++ < 20 * samples + 100) {
    std::optional<Translation> tr;
    if (attempts % 3 == 1)
      tr = cps;
    else
      tr = random_translation(rng, src, dst, 10);
    if (!tr) continue;
    const Signature& sig = tr->src();
    MetaContext theta = random_meta_context(rng, 3, 2);
    theta.arities.push_back(0);
    MetaContext theta2 = random_meta_context(rng, 3, 2);
    theta2.arities.push_back(0);
    TermGen gen(sig, theta);
    std::size_t n = rng.range(0, 3), target = rng.range(0, 3);
    auto t = gen.term(rng, n, 20);
    if (!t) continue;
    auto reps = term_list(rng, gen, n, target, 8);
    if (!reps) continue;
    std::uint64_t i = suite.samples++;

    std::vector<Term> img_reps;
    for (const auto& r : *reps) img_reps.push_back(apply(*tr, r, target));
    record(suite, "subst_vars",
           apply(*tr, subst_vars(*t, *reps, target), target) ==
               subst_vars(apply(*tr, *t, n), img_reps, target),
           i);

    auto bodies = random_bodies(rng, sig, theta, theta2, n, 8);
    std::vector<Term> img_bodies;
    for (std::size_t b = 0; b < bodies.size(); ++b)
      img_bodies.push_back(apply(*tr, bodies[b], n + theta.arity(b + 1)));
    record(suite, "subst_metas",
           apply(*tr, subst_metas(*t, bodies, n), n) ==
               subst_metas(apply(*tr, *t, n), img_bodies, n),
           i);
  }
  return suite;
}

namespace {

// Calls fn on every tuple of `count` tables of the given arity.
void each_tuple(std::size_t s, std::size_t arity, std::size_t count,
                const std::function<void(const std::vector<FnTable>&)>& fn) {
  std::uint64_t radix = table_count(s, arity);
  std::vector<std::uint64_t> digit(count, 0);
  std::vector<FnTable> tuple(count, table_from_index(s, arity, 0));
  while (true) {
    fn(tuple);
    std::size_t i = count;
    while (i > 0 && digit[i - 1] + 1 == radix) {
      digit[--i] = 0;
      tuple[i] = table_from_index(s, arity, 0);
    }
    if (i == 0) return;
    ++digit[i - 1];
    tuple[i - 1] = table_from_index(s, arity, digit[i - 1]);
  }
}

// Every term of the theory of equality over (theta |> n) with exactly
// `size` nodes.
std::vector<Term> pure_terms(const MetaContext& theta, std::size_t n,
                             std::size_t size) {
  std::vector<Term> out;
  if (size == 0) return out;
  if (size == 1)
    for (std::size_t j = 1; j <= n; ++j) out.push_back(Term::var(j));
  for (std::size_t i = 1; i <= theta.size(); ++i) {
    std::size_t a = theta.arity(i);
    std::function<void(std::size_t, std::size_t, std::vector<Term>&)> fill =
        [&](std::size_t pos, std::size_t budget, std::vector<Term>& args) {
          if (pos == a) {
            if (budget == 0) out.push_back(Term::meta(i, args));
            return;
          }
          for (std::size_t sz = 1; sz + (a - pos - 1) <= budget; ++sz)
            for (const Term& t : pure_terms(theta, n, sz)) {
              args.push_back(t);
              fill(pos + 1, budget - sz, args);
              args.pop_back();
            }
        };
    std::vector<Term> args;
    fill(0, size - 1, args);
  }
  return out;
}

}  // namespace

LawSuite clone_suite(std::size_t max_term, const EnumOptions& opt) {
  LawSuite suite{"clone", 0, {}};
  for (const char* n : {"identity", "projection", "associativity",
                        "w_coherence"})
    suite.law(n);
  std::uint64_t sample = 0;
  for (std::size_t s = 1; s <= 2; ++s) {
    for (std::size_t a = 0; a <= 2; ++a) {
      std::vector<FnTable> ids;
      for (std::size_t i = 1; i <= a; ++i) ids.push_back(clone_iota(a, i, s));
      for (std::uint64_t fi = 0; fi < table_count(s, a); ++fi) {
        FnTable f = table_from_index(s, a, fi);
        record(suite, "identity", clone_sigma(f, ids, a) == f, sample++);
        for (std::size_t b = 0; b <= 2; ++b)
          each_tuple(s, b, a, [&](const std::vector<FnTable>& gs) {
            FnTable fg = clone_sigma(f, gs, b);
            for (std::size_t c = 0; c <= 2; ++c)
              each_tuple(s, c, b, [&](const std::vector<FnTable>& hs) {
                std::vector<FnTable> gh;
                for (const auto& g : gs) gh.push_back(clone_sigma(g, hs, c));
                record(suite, "associativity",
                       clone_sigma(fg, hs, c) == clone_sigma(f, gh, c),
                       sample++);
              });
          });
      }
      for (std::size_t b = 0; b <= 2; ++b)
        each_tuple(s, b, a, [&](const std::vector<FnTable>& gs) {
          for (std::size_t i = 1; i <= a; ++i)
            record(suite, "projection",
                   clone_sigma(clone_iota(a, i, s), gs, b) == gs[i - 1],
                   sample++);
        });
    }

    FiniteModel model(Signature{}, s, {});
    std::vector<MetaContext> thetas;
    for (std::size_t k = 0; k <= 2; ++k) {
      std::vector<std::size_t> ar(k, 0);
      std::function<void(std::size_t)> go = [&](std::size_t pos) {
        if (pos == k) {
          thetas.push_back(MetaContext(ar));
          return;
        }
        for (std::size_t m = 0; m <= 2; ++m) {
          ar[pos] = m;
          go(pos + 1);
        }
      };
      go(0);
    }
    for (const MetaContext& theta : thetas)
      for (std::size_t n = 0; n <= 2; ++n)
        for (std::size_t size = 1; size <= max_term; ++size)
          for (const Term& t : pure_terms(theta, n, size)) {
            CloneMap f = term_map(model, theta, n, t);
            for (std::size_t p = 0; p <= 1; ++p)
              for (std::size_t q = 0; q <= 1; ++q)
                record(suite, "w_coherence",
                       check_w_coherence(f, p, q, opt).holds, sample++);
          }
  }
  suite.samples = sample;
  return suite;
}

}  // namespace soalg
