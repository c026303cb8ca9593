#include "doctest.h"
#include "soalg/random.hpp"
#include "soalg/translate.hpp"
#include "support.hpp"

using namespace soalg;
using soalg::test::corpus;
using soalg::test::lambda_sig;
using soalg::test::load;
using soalg::test::term;

namespace {

Translation load_tr(const std::string& file, const Presentation& src,
                    const Presentation& dst) {
  return parse_translation(read_file(corpus("translations/" + file)), src,
                           dst);
}

TranslationCerts load_certs(const std::string& file, const Presentation& dst) {
  return parse_cert_bundle(dst.sig,
                           read_file(corpus("translations/" + file)));
}

}  // namespace

TEST_SUITE("translate") {
  TEST_CASE("identity translation fixes terms") {
    Translation id = identity_translation(lambda_sig());
    Term t = term(lambda_sig(), "m:[1], n:[0]", "y",
                  "app(abs((x) m[app(x, y)]), abs((z) app(z, n[])))");
    CHECK(apply(id, t, 1) == t);
    CHECK(apply(id, Term::var(1), 1) == Term::var(1));
  }

  TEST_CASE("builtin cps images") {
    Translation cps = builtin_cps();
    CHECK(!check_term(lambda_sig(), MetaContext({0, 0}), 0, cps.image("app")));
    CHECK(!check_term(lambda_sig(), MetaContext({1}), 0, cps.image("abs")));
    CHECK(apply(cps, Term::var(1), 1) == Term::var(1));
    // app(m[], n[]) is the generic instance, so its image is tau_app itself
    Term generic = term(lambda_sig(), "m:[0], n:[0]", ".", "app(m[], n[])");
    CHECK(apply(cps, generic, 0) == cps.image("app"));
    CHECK(apply(cps, generic, 0) ==
          term(lambda_sig(), "m:[0], n:[0]", ".",
               "abs((k) app(m[], abs((v) app(app(v, abs((l) app(n[], l))), k))))"));
  }

  TEST_CASE("cps on a beta redex") {
    Term redex = term(lambda_sig(), ".", "y", "app(abs((x) x), y)");
    Term want = term(lambda_sig(), ".", "y",
                     "abs((k) app(abs((k2) app(k2, abs((x) abs((l) app(x, l))))),"
                     " abs((v) app(app(v, abs((l) app(y, l))), k))))");
    CHECK(apply(builtin_cps(), redex, 1) == want);
  }

  TEST_CASE("cps file matches the builtin") {
    Presentation lambda = load("lambda.soep");
    Translation cps = load_tr("cps.sotr", lambda, lambda);
    CHECK(cps == builtin_cps());
    CHECK(cps.name() == "cps");
    std::string printed = print_translation(cps, "lambda", "lambda");
    CHECK(parse_translation(printed, lambda, lambda) == cps);
  }

  TEST_CASE("translation errors") {
    Presentation lambda = load("lambda.soep");
    CHECK_THROWS_AS(Translation(lambda_sig(), lambda_sig(), {}), Error);
    CHECK_THROWS_AS(
        Translation(lambda_sig(), lambda_sig(), {Term::meta(1), Term::meta(1)}),
        Error);
    auto bad = [&](const std::string& text) {
      CHECK_THROWS_AS(parse_translation(text, lambda, lambda), ParseError);
    };
    bad("translation t : lambda -> other\n");
    bad("translation t : lambda -> lambda\nop abs => f |- abs((x) f[x])\n");
    bad("translation t : lambda -> lambda\nop abs => |- abs((x) x)\n"
        "op app => m, n |- app(m[], n[])\n");
    bad("translation t : lambda -> lambda\nop lam => f |- f[]\n");
    bad("translation t : lambda -> lambda\nop abs => f |- abs((x) f[x])\n"
        "op abs => f |- abs((x) f[x])\nop app => m, n |- app(m[], n[])\n");
    bad("translation t : lambda -> lambda\nop abs => f |- abs((x) f[x])\n"
        "op app => m, n |- app(m[], y)\n");
    CHECK_THROWS_AS(apply(builtin_cps(), MetaContext{}, VarContext(0),
                          Term::var(1)),
                    Error);
  }

  TEST_CASE("composition") {
    Translation cps = builtin_cps();
    Translation id = identity_translation(lambda_sig());
    CHECK(compose(id, cps) == cps);
    CHECK(compose(cps, id) == cps);
    Translation twice = compose(cps, cps);
    Rng rng(5);
    TermGen gen(lambda_sig(), MetaContext({1, 0}));
    for (int i = 0; i < 200; ++i) {
      std::size_t g = rng.range(0, 2);
      auto t = gen.term(rng, g, 15);
      REQUIRE(t);
      CHECK(apply(twice, *t, g) == apply(cps, apply(cps, *t, g), g));
    }
    Presentation idem = load("idem.soep");
    CHECK_THROWS_AS(compose(cps, identity_translation(idem.sig)), Error);
  }

  TEST_CASE("composition is associative with units on random translations") {
    Rng rng(8);
    for (int i = 0; i < 100; ++i) {
      Signature a = random_signature(rng, 2, 2, 2);
      Signature b = random_signature(rng, 3, 2, 2);
      Signature c = random_signature(rng, 2, 2, 1);
      b.add("leaf", {});
      c.add("leaf", {});
      a.add("leaf", {});
      auto f = random_translation(rng, a, b, 8);
      auto g = random_translation(rng, b, c, 8);
      auto h = random_translation(rng, c, a, 8);
      REQUIRE(f);
      REQUIRE(g);
      REQUIRE(h);
      CHECK(compose(compose(*f, *g), *h) == compose(*f, compose(*g, *h)));
      CHECK(compose(identity_translation(a), *f) == *f);
      CHECK(compose(*f, identity_translation(b)) == *f);
    }
  }

  TEST_CASE("compositionality on random terms") {
    Rng rng(21);
    Signature sig = lambda_sig();
    sig.add("pair", {0, 2});
    Signature dst = lambda_sig();
    dst.add("c", {});
    for (int round = 0; round < 300; ++round) {
      Translation tr = round % 3 == 0
                           ? builtin_cps()
                           : *random_translation(rng, sig, dst, 10);
      const Signature& src = tr.src();
      MetaContext theta = random_meta_context(rng, 3, 2);
      TermGen gen(src, theta);
      std::size_t n = rng.range(0, 3), target = rng.range(0, 3);
      auto t = gen.term(rng, n, 20);
      REQUIRE(t);
      std::vector<Term> reps, img_reps;
      for (std::size_t j = 0; j < n; ++j) {
        reps.push_back(*gen.term(rng, target, 8));
        img_reps.push_back(apply(tr, reps.back(), target));
      }
      CHECK(apply(tr, subst_vars(*t, reps, target), target) ==
            subst_vars(apply(tr, *t, n), img_reps, target));

      MetaContext theta2 = random_meta_context(rng, 3, 2);
      auto bodies = random_bodies(rng, src, theta, theta2, n, 8);
      std::vector<Term> img_bodies;
      for (std::size_t i = 0; i < bodies.size(); ++i)
        img_bodies.push_back(apply(tr, bodies[i], n + theta.arity(i + 1)));
      CHECK(apply(tr, subst_metas(*t, bodies, n), n) ==
            subst_metas(apply(tr, *t, n), img_bodies, n));
    }
  }

  TEST_CASE("check_equational") {
    Presentation lambda = load("lambda.soep");
    Presentation beta = load("lambda_beta.soep");
    Presentation idem = load("idem.soep");
    Translation id = load_tr("lambda_id.sotr", lambda, lambda);
    CHECK(id == identity_translation(lambda.sig));
    CHECK(!check_equational(id, lambda, lambda,
                            load_certs("lambda_id.soderiv", lambda)));

    Translation delay = load_tr("delay.sotr", idem, beta);
    auto delay_certs = load_certs("delay.soderiv", beta);
    CHECK(!check_equational(delay, idem, beta, delay_certs));

    auto missing = check_equational(delay, idem, beta, {});
    REQUIRE(missing);
    CHECK(missing->message == "missing certificate");
    CHECK(missing->path == "idem");

    Translation first = load_tr("first.sotr", beta, beta);
    auto wrong = check_equational(first, beta, beta,
                                  load_certs("first.soderiv", beta));
    REQUIRE(wrong);
    CHECK(wrong->message == "certificate concludes a different equation");

    TranslationCerts stray{{"nope", Derivation::axiom("β")}};
    auto unknown = check_equational(id, lambda, lambda, stray);
    REQUIRE(unknown);
    CHECK(unknown->message == "certificate for an unknown axiom");

    TranslationCerts broken{{"β", Derivation::axiom("γ")},
                            {"η", Derivation::axiom("η")}};
    auto bad = check_equational(id, lambda, lambda, broken);
    REQUIRE(bad);
    CHECK(bad->path == "β root");
    CHECK(bad->message == "axiom: unknown axiom");

    Presentation empty = load("empty.soep");
    Translation vacuous(empty.sig, lambda.sig, {});
    CHECK(!check_equational(vacuous, empty, lambda, {}));
    CHECK_THROWS_AS(check_equational(vacuous, idem, lambda, {}), Error);
  }

  TEST_CASE("derivations transport along certified translations") {
    Presentation lambda = load("lambda.soep");
    Presentation beta = load("lambda_beta.soep");
    Presentation idem = load("idem.soep");
    Translation id = identity_translation(lambda.sig);
    auto id_certs = load_certs("lambda_id.soderiv", lambda);
    for (const char* name :
         {"beta", "eta", "refl", "beta_identity", "eta_var", "beta_identity_sym",
          "under_binder", "eta_redex", "self_application", "weakening",
          "beta_open", "beta_eta_chain"}) {
      CAPTURE(name);
      Derivation d = parse_derivation(
          lambda.sig, read_file(corpus(std::string("lambda/") + name + ".soderiv")));
      Equation concl = check_derivation(lambda, d).value();
      Derivation moved = translate_derivation(id, lambda, lambda, id_certs, d);
      auto r = check_derivation(lambda, moved);
      REQUIRE(r);
      CHECK(r.value().same_judgement(apply(id, concl)));
    }

    Translation delay = load_tr("delay.sotr", idem, beta);
    auto certs = load_certs("delay.soderiv", beta);
    for (const char* name : {"axiom", "twice", "sym", "meta"}) {
      CAPTURE(name);
      Derivation d = parse_derivation(
          idem.sig, read_file(corpus(std::string("idem/") + name + ".soderiv")));
      Equation concl = check_derivation(idem, d).value();
      Derivation moved = translate_derivation(delay, idem, beta, certs, d);
      auto r = check_derivation(beta, moved);
      REQUIRE(r);
      CHECK(r.value().same_judgement(apply(delay, concl)));
    }
    CHECK_THROWS_AS(translate_derivation(delay, idem, beta, {},
                                         Derivation::axiom("idem")),
                    Error);
    CHECK_THROWS_AS(translate_derivation(delay, idem, beta, certs,
                                         Derivation::axiom("β")),
                    Error);
  }

  TEST_CASE("induced theory map") {
    Theory lambda = make_theory(load("lambda.soep"));
    Translation cps = builtin_cps();
    auto Mcps = induced_theory_map(cps, lambda, lambda);
    auto Mid = induced_theory_map(identity_translation(lambda->sig), lambda,
                                  lambda);
    for (const SOType& a : {SOType{}, SOType{0}, SOType{2, 1}})
      CHECK(Mcps(identity(a, lambda)) == identity(a, lambda));
    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
      SOType a = random_sotype(rng, 2, 2), b = random_sotype(rng, 2, 2),
             c = random_sotype(rng, 2, 2);
      a.push_back(0);
      b.push_back(0);
      auto f = random_morphism(rng, a, b, lambda, 10);
      auto g = random_morphism(rng, b, c, lambda, 10);
      REQUIRE(f);
      REQUIRE(g);
      CHECK(Mcps(compose(*f, *g)) == compose(Mcps(*f), Mcps(*g)));
      CHECK(Mid(*f) == *f);
      CHECK(Mcps(*f).src() == a);
    }
    CHECK_THROWS_AS(Mcps(identity({1})), Error);
  }
}
