#include "doctest.h"
#include "soalg/random.hpp"
#include "support.hpp"

using namespace soalg;
using soalg::test::lambda_sig;
using soalg::test::term;

namespace {

Term V(std::size_t j) { return Term::var(j); }
Term M(std::size_t i, std::vector<Term> args = {}) {
  return Term::meta(i, std::move(args));
}
Term app(Term a, Term b) { return Term::op("app", {std::move(a), std::move(b)}); }
Term abs(Term body) { return Term::op("abs", {std::move(body)}, {1}); }

}  // namespace

TEST_SUITE("kernel") {
  TEST_CASE("signature rejects duplicates and bad names") {
    Signature sig;
    sig.add("app", {0, 0});
    CHECK_THROWS_AS(sig.add("app", {1}), Error);
    CHECK_THROWS_AS(sig.add("a-b", {}), Error);
    CHECK_THROWS_AS(sig.add("", {}), Error);
    CHECK(sig.find("app") != nullptr);
    CHECK(sig.find("abs") == nullptr);
  }

  TEST_CASE("context hints") {
    CHECK(MetaContext({1, 0}).name(2) == "m2");
    CHECK(MetaContext({1, 0}, {"m", "m"}).validate().has_value());
    CHECK(MetaContext({1}, {"m", "n"}).validate().has_value());
    CHECK(!VarContext(2, {"x", "y"}).validate().has_value());
    CHECK(VarContext(2, {"x"}).validate().has_value());
    CHECK(MetaContext({1}, {"a"}) == MetaContext({1}, {"b"}));
  }

  TEST_CASE("check_term accepts the beta redex over m:[1], n:[0]") {
    Term t = app(abs(M(1, {V(1)})), M(2));
    CHECK(!check_term(lambda_sig(), MetaContext({1, 0}), 0, t));
  }

  TEST_CASE("check_term variable base case") {
    CHECK(!check_term(Signature{}, MetaContext{}, 1, V(1)));
  }

  TEST_CASE("check_term diagnostics") {
    auto sig = lambda_sig();
    auto d = check_term(sig, MetaContext({1}), 0, M(1));
    REQUIRE(d);
    CHECK(d->path == "root");
    CHECK(d->message == "metavariable arity mismatch");
    CHECK(d->to_string().rfind("metavariable arity mismatch at root", 0) == 0);

    d = check_term(sig, MetaContext{}, 1, V(2));
    REQUIRE(d);
    CHECK(d->message == "variable index out of range");

    d = check_term(sig, MetaContext{}, 0, app(V(1), V(1)));
    REQUIRE(d);
    CHECK(d->path == "root.1");

    d = check_term(sig, MetaContext{}, 1, Term::op("lam", {V(1)}));
    REQUIRE(d);
    CHECK(d->message == "unknown operator");

    d = check_term(sig, MetaContext{}, 1, Term::op("app", {V(1)}));
    REQUIRE(d);
    CHECK(d->message == "operator arity mismatch");

    d = check_term(sig, MetaContext{}, 1, Term::op("abs", {V(1)}, {0}));
    REQUIRE(d);
    CHECK(d->message == "binder count mismatch");

    d = check_term(sig, MetaContext({0}), 0, M(2));
    REQUIRE(d);
    CHECK(d->message == "metavariable index out of range");

    // Bound variable is in scope only inside its binder.
    CHECK(!check_term(sig, MetaContext{}, 0, abs(V(1))));
    CHECK(check_term(sig, MetaContext{}, 0, app(abs(V(1)), V(1))));
  }

  TEST_CASE("alpha_eq") {
    auto sig = lambda_sig();
    CHECK(alpha_eq(term(sig, "m:[1]", ".", "abs((x) m[x])"),
                   term(sig, "m:[1]", ".", "abs((y) m[y])")));
    CHECK(!alpha_eq(term(sig, "m:[1], n:[1]", "x", "m[x]"),
                    term(sig, "m:[1], n:[1]", "x", "n[x]")));
    CHECK(!alpha_eq(term(sig, ".", "x, y", "app(x, y)"),
                    term(sig, ".", "x, y", "app(y, x)")));
  }

  TEST_CASE("subst_vars examples") {
    // m[x1] with x1 := y
    std::vector<Term> reps{V(1)};
    CHECK(subst_vars(M(1, {V(1)}), reps, 1) == M(1, {V(1)}));
    // identity clause
    CHECK(subst_vars(V(1), reps, 1) == V(1));
    // abs((z) app(x1, z)) with x1 := y where y is the second variable of
    // (w, y): the bound z moves to position 3 and is not captured.
    Term t = abs(app(V(1), V(2)));
    std::vector<Term> to_y{V(2)};
    CHECK(subst_vars(t, to_y, 2) == abs(app(V(2), V(3))));
    // Replacement mentioning the variable that would be captured by name.
    std::vector<Term> to_app{app(V(1), V(1))};
    CHECK(subst_vars(t, to_app, 1) == abs(app(app(V(1), V(1)), V(2))));
  }

  TEST_CASE("subst_vars length mismatch") {
    std::vector<Term> none;
    CHECK_THROWS_AS(subst_vars(V(1), none, 0), Error);
  }

  TEST_CASE("subst_metas examples") {
    // m[n[]] over (m:[1], n:[0]; .), m := (x) x, n := () y over (.; y).
    Term t = M(1, {M(2)});
    std::vector<Term> bodies{V(2), V(1)};
    CHECK(subst_metas(t, bodies, 1) == V(1));
    // variables are untouched
    CHECK(subst_metas(V(1), bodies, 1) == V(1));
    // m[m[x]] with m := (x) m[m[x]] over Gamma = (x)
    Term mm = M(1, {M(1, {V(1)})});
    std::vector<Term> body{M(1, {M(1, {V(2)})})};
    CHECK(subst_metas(mm, body, 1) ==
          M(1, {M(1, {M(1, {M(1, {V(1)})})})}));
  }

  TEST_CASE("subst_metas under binders uses the binder positions") {
    // abs((z) m[z]) with m := (x) app(x, y) over Gamma = (y)
    Term t = abs(M(1, {V(2)}));
    std::vector<Term> body{app(V(2), V(1))};
    CHECK(subst_metas(t, body, 1) == abs(app(V(2), V(1))));
    // body with its own binder: m := (x) abs((w) app(x, w))
    std::vector<Term> body2{abs(app(V(2), V(3)))};
    CHECK(subst_metas(t, body2, 1) == abs(abs(app(V(2), V(3)))));
  }

  TEST_CASE("subst_metas length mismatch") {
    std::vector<Term> none;
    CHECK_THROWS_AS(subst_metas(M(1), MetaContext({0}), none, 0), Error);
    CHECK_THROWS_AS(subst_metas(M(1), none, 0), Error);
  }

  TEST_CASE("weaken") {
    CHECK(weaken(V(1), 1, 1) == V(1));
    CHECK(weaken(M(1), 0, 3) == M(1));
    CHECK(weaken(app(V(1), V(2)), 2, 1) == app(V(1), V(2)));
    // Bound positions move past the new variables.
    CHECK(weaken(abs(V(2)), 1, 2) == abs(V(4)));
    CHECK(!check_term(lambda_sig(), MetaContext{}, 3, weaken(abs(V(2)), 1, 2)));
  }

  TEST_CASE("shift prefixes the context") {
    CHECK(shift(app(V(1), V(2)), 2, 3) == app(V(4), V(5)));
    CHECK(shift(abs(V(2)), 1, 1) == abs(V(3)));
  }

  TEST_CASE("rename_metas") {
    std::vector<std::size_t> ren{2, 1};
    CHECK(rename_metas(M(1, {M(2)}), ren) == M(2, {M(1)}));
  }
}

TEST_SUITE("syntax") {
  TEST_CASE("parse the beta redex") {
    auto sig = lambda_sig();
    Term t = term(sig, "m:[1], n:[0]", ".", "app(abs((x) m[x]), n[])");
    CHECK(t == app(abs(M(1, {V(1)})), M(2)));
    CHECK(term(sig, ".", "x", "x") == V(1));
  }

  TEST_CASE("parse errors carry positions") {
    auto sig = lambda_sig();
    try {
      term(sig, "m:[1]", "x", "m[x, x]");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.bare_message().find("metavariable arity mismatch") == 0);
      CHECK(e.where().line == 1);
      CHECK(e.where().column == 1);
    }
    try {
      term(sig, ".", "x", "app(x,\n  zz)");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.bare_message() == "unknown variable 'zz'");
      CHECK(e.where().line == 2);
      CHECK(e.where().column == 3);
    }
    CHECK_THROWS_AS(term(sig, ".", ".", "lam((x) x)"), ParseError);
    CHECK_THROWS_AS(term(sig, ".", ".", "abs(x)"), ParseError);
    CHECK_THROWS_AS(term(sig, ".", ".", "abs((x, y) x)"), ParseError);
    CHECK_THROWS_AS(term(sig, ".", "x", "app(x)"), ParseError);
    CHECK_THROWS_AS(term(sig, ".", "x", "x x"), ParseError);
    CHECK_THROWS_AS(term(sig, ".", "x", "q[]"), ParseError);
    CHECK_THROWS_AS(term(sig, ".", "x", "app(x, x"), ParseError);
    CHECK_THROWS_AS(parse_var_context("x, x"), ParseError);
    CHECK_THROWS_AS(parse_meta_context("m:[1], m:[0]"), ParseError);
    CHECK_THROWS_AS(term(sig, ".", "x", "app(x, $)"), ParseError);
  }

  TEST_CASE("shadowing resolves to the innermost binder") {
    auto sig = lambda_sig();
    CHECK(term(sig, ".", "x", "abs((x) x)") == abs(V(2)));
    CHECK(term(sig, ".", "x", "abs((y) x)") == abs(V(1)));
  }

  TEST_CASE("unicode judgement glyphs") {
    auto sig = lambda_sig();
    Judgement j = parse_judgement(
        sig, "m:[1], n:[0] \xE2\x96\xB7 . \xE2\x8A\xA2 m[n[]]");
    CHECK(j.term == M(1, {M(2)}));
  }

  TEST_CASE("printing") {
    auto sig = lambda_sig();
    MetaContext theta({1, 0}, {"m", "n"});
    Term t = app(abs(M(1, {V(1)})), M(2));
    CHECK(print_term(theta, VarContext{}, t) == "app(abs((x1) m[x1]), n[])");
    CHECK(print_term(MetaContext({1, 0}), VarContext{}, t) ==
          "app(abs((x1) m1[x1]), m2[])");
    // Bound names avoid the context's hint names.
    CHECK(print_term(MetaContext{}, VarContext(1, {"x2"}), abs(app(V(1), V(2)))) ==
          "abs((x2') app(x2, x2'))");
    CHECK(print_judgement(MetaContext{}, VarContext{}, Term::op("c")) ==
          ". |> . |- c()");
    CHECK(print_arity({1, 0}) == "(1, 0)");
    CHECK(print_arity({}) == "()");
  }

  TEST_CASE("parse after print is the identity on random terms") {
    Rng rng(7);
    for (int round = 0; round < 300; ++round) {
      Signature sig = random_signature(rng, 3, 3, 2);
      MetaContext theta = random_meta_context(rng, 3, 2);
      std::size_t gamma = rng.range(0, 3);
      TermGen gen(sig, theta);
      auto t = gen.term(rng, gamma, 25);
      if (!t) continue;
      VarContext g(gamma);
      std::string text = print_term(theta, g, *t);
      CHECK(parse_term(sig, theta, g, text) == *t);
    }
  }
}

TEST_SUITE("kernel properties") {
  // Randomized instances of the substitution laws. Every generated term is
  // checked well-formed first so failures point at the operation.
  TEST_CASE("preservation, unit, fusion and associativity") {
    Rng rng(2024);
    int checked = 0;
    for (int round = 0; round < 400; ++round) {
      Signature sig = random_signature(rng, 3, 3, 2);
      MetaContext th1 = random_meta_context(rng, 3, 2);
      MetaContext th2 = random_meta_context(rng, 3, 2);
      th2.arities.push_back(0);  // keeps bodies over empty contexts feasible
      MetaContext th3 = random_meta_context(rng, 2, 2);
      th3.arities.push_back(0);
      std::size_t n = rng.range(0, 3), p = rng.range(0, 3), q = rng.range(0, 3);
      TermGen g1(sig, th1), g2(sig, th2), g3(sig, th3);
      auto t = g1.term(rng, n, 20);
      if (!t) continue;
      REQUIRE(!check_term(sig, th1, n, *t));

      // unit laws
      CHECK(subst_vars(*t, variables(n), n) == *t);
      CHECK(subst_metas(*t, identity_bodies(th1, n), n) == *t);

      // variable substitution: preservation and fusion
      std::vector<Term> u, v;
      bool ok = true;
      for (std::size_t i = 0; i < n && ok; ++i) {
        auto x = g1.term(rng, p, 8);
        ok = x.has_value();
        if (ok) u.push_back(*x);
      }
      for (std::size_t i = 0; i < p && ok; ++i) {
        auto x = g1.term(rng, q, 8);
        ok = x.has_value();
        if (ok) v.push_back(*x);
      }
      if (ok) {
        Term tu = subst_vars(*t, u, p);
        CHECK(!check_term(sig, th1, p, tu));
        std::vector<Term> uv;
        for (const auto& x : u) uv.push_back(subst_vars(x, v, q));
        CHECK(subst_vars(tu, v, q) == subst_vars(*t, uv, q));
      }

      // metasubstitution: preservation and associativity
      auto s = random_bodies(rng, sig, th1, th2, n, 10);
      Term ts = subst_metas(*t, s, n);
      CHECK(!check_term(sig, th2, n, ts));
      auto r = random_bodies(rng, sig, th2, th3, n, 8);
      Term lhs = subst_metas(ts, r, n);
      std::vector<Term> sr;
      for (std::size_t i = 1; i <= th1.size(); ++i) {
        std::size_t m = th1.arity(i);
        std::vector<Term> rw;
        for (std::size_t j = 1; j <= th2.size(); ++j) {
          // r_j lives over n + a_j; make room for m_i parameters after n.
          std::size_t a = th2.arity(j);
          std::vector<Term> ren = variables(n);
          for (std::size_t l = 1; l <= a; ++l) ren.push_back(Term::var(n + m + l));
          rw.push_back(subst_vars(r[j - 1], ren, n + m + a));
        }
        sr.push_back(subst_metas(s[i - 1], rw, n + m));
      }
      CHECK(lhs == subst_metas(*t, sr, n));
      ++checked;
    }
    CHECK(checked > 200);
  }
}

TEST_SUITE("kernel parsing") {
  TEST_CASE("a variable ending a line is not applied to the next label") {
    Presentation p = parse_presentation(
        "signature d\nop o : (0)\naxioms\n(a) . |> x |- o(x) == x\n"
        "(b) . |> x |- x == o(x)\n");
    REQUIRE(p.axioms.size() == 2);
    CHECK(p.axioms[0].rhs == Term::var(1));
    CHECK_THROWS_AS(parse_term(p.sig, {}, VarContext(1, {"x"}), "x (x)"),
                    ParseError);
  }
}
