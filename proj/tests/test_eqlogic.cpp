#include <filesystem>

#include "doctest.h"
#include "support.hpp"

using namespace soalg;
using soalg::test::corpus;
using soalg::test::lambda_sig;
using soalg::test::load;
using soalg::test::term;

namespace {

Term V(std::size_t j) { return Term::var(j); }
Term M(std::size_t i, std::vector<Term> args = {}) {
  return Term::meta(i, std::move(args));
}
Term app(Term a, Term b) { return Term::op("app", {std::move(a), std::move(b)}); }
Term abs(Term body) { return Term::op("abs", {std::move(body)}, {1}); }

Checked<Equation> check_text(const Presentation& p, const std::string& text) {
  return check_derivation(p, parse_derivation(p.sig, text));
}

}  // namespace

TEST_SUITE("eqlogic") {
  TEST_CASE("presentation file") {
    Presentation p = load("lambda.soep");
    CHECK(p.name == "lambda");
    CHECK(p.sig.size() == 2);
    REQUIRE(p.axioms.size() == 2);
    CHECK(p.axioms[0].label == "β");
    CHECK(p.axioms[0].lhs == app(abs(M(1, {V(1)})), M(2)));
    CHECK(p.axioms[0].rhs == M(1, {M(2)}));
    CHECK(p.axioms[1].lhs == abs(app(M(1), V(1))));
    CHECK(validate_presentation(p).empty());
    // print then parse
    Presentation q = parse_presentation(print_presentation(p));
    CHECK(q.sig == p.sig);
    REQUIRE(q.axioms.size() == 2);
    CHECK(q.axioms[1].same_judgement(p.axioms[1]));
  }

  TEST_CASE("presentation file errors") {
    CHECK_THROWS_WITH_AS(parse_presentation(""), "1:1: no signature block",
                         ParseError);
    CHECK_THROWS_AS(parse_presentation("signature s\nop a : (1,\n"),
                    ParseError);
    try {
      parse_presentation("signature s\nop a : (x)\n");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.where().line == 2);
      CHECK(e.where().column == 9);
    }
    CHECK_THROWS_AS(parse_presentation("signature s\nop a : ()\nop a : ()\n"),
                    ParseError);
    CHECK_THROWS_AS(
        parse_presentation("signature s\nop a : ()\naxioms\n(e) . |> . |- a() == b()\n"),
        ParseError);
    CHECK_THROWS_AS(parse_presentation(
                        "signature s\nop a : ()\naxioms\n(e) . |> . |- a() == "
                        "a()\n(e) . |> . |- a() == a()\n"),
                    ParseError);
  }

  TEST_CASE("validate_presentation") {
    CHECK(validate_presentation(load("lambda.soep")).empty());
    CHECK(validate_presentation(load("empty.soep")).empty());
    Presentation bad = load("lambda.soep");
    bad.axioms[0].rhs = M(3);  // undeclared metavariable
    auto diags = validate_presentation(bad);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].message == "metavariable index out of range");
    bad = load("lambda.soep");
    bad.axioms[1].label = "β";
    CHECK(validate_presentation(bad).size() == 1);
  }

  TEST_CASE("axiom, refl and the beta instance") {
    Presentation p = load("lambda.soep");
    auto beta = check_derivation(p, Derivation::axiom("β"));
    REQUIRE(beta);
    CHECK(print_equation(beta.value()) ==
          "m:[1], n:[0] |> . |- app(abs((x1) m[x1]), n[]) == m[n[]]");

    auto refl = check_text(p, "(refl m:[1] |> x |- m[x])");
    REQUIRE(refl);
    CHECK(refl.value().lhs == M(1, {V(1)}));
    CHECK(refl.value().rhs == M(1, {V(1)}));

    // ExtMetasubst(beta; m := (x) x, n := () y) over (.; y)
    Derivation d = Derivation::msub(
        Derivation::axiom("β"),
        {Derivation::refl(MetaContext{}, VarContext(2, {"y", "x"}), V(2)),
         Derivation::refl(MetaContext{}, VarContext(1, {"y"}), V(1))});
    auto r = check_derivation(p, d);
    REQUIRE(r);
    CHECK(r.value().theta.size() == 0);
    CHECK(r.value().gamma.size == 1);
    CHECK(r.value().lhs == app(abs(V(2)), V(1)));
    CHECK(r.value().rhs == V(1));
    CHECK(print_equation(r.value()) == ". |> y |- app(abs((x2) x2), y) == y");
  }

  TEST_CASE("instantiate_axiom") {
    Presentation p = load("lambda.soep");
    Derivation d = instantiate_axiom(p, "β", MetaContext{}, VarContext(1, {"y"}),
                                     {V(2), V(1)});
    auto r = check_derivation(p, d);
    REQUIRE(r);
    CHECK(r.value().lhs == app(abs(V(2)), V(1)));
    CHECK(r.value().rhs == V(1));

    // eta with f := () z over (z)
    d = instantiate_axiom(p, "η", MetaContext{}, VarContext(1, {"z"}), {V(1)});
    r = check_derivation(p, d);
    REQUIRE(r);
    CHECK(r.value().lhs == abs(app(V(1), V(2))));
    CHECK(r.value().rhs == V(1));

    // identity bodies give back the axiom
    const Equation& beta = *p.find("β");
    d = instantiate_axiom(p, "β", beta.theta, VarContext{},
                          identity_bodies(beta.theta, 0));
    r = check_derivation(p, d);
    REQUIRE(r);
    CHECK(r.value().same_judgement(beta));

    CHECK_THROWS_AS(instantiate_axiom(p, "nope", MetaContext{}, VarContext{}, {}),
                    Error);
    CHECK_THROWS_AS(instantiate_axiom(p, "β", MetaContext{}, VarContext{}, {V(1)}),
                    Error);
    CHECK_THROWS_AS(
        instantiate_axiom(p, "β", MetaContext{}, VarContext{}, {V(2), V(1)}),
        Error);
  }

  TEST_CASE("corpus certificates verify and reprint") {
    for (const char* dir : {"lambda", "idem", "empty"}) {
      std::string pres = std::string(dir) + ".soep";
      Presentation p = load(pres);
      std::size_t count = 0;
      for (const auto& entry :
           std::filesystem::directory_iterator(corpus(dir))) {
        if (entry.path().extension() != ".soderiv") continue;
        CAPTURE(entry.path().string());
        Derivation d = parse_derivation(p.sig, read_file(entry.path().string()));
        auto r = check_derivation(p, d);
        CHECK_MESSAGE(r.ok(), (r.ok() ? "" : r.diagnostic().to_string()));
        if (!r) continue;
        ++count;
        for (bool claims : {false, true}) {
          std::string text = print_derivation(p, d, claims);
          auto again = check_derivation(p, parse_derivation(p.sig, text));
          REQUIRE(again);
          CHECK(again.value().same_judgement(r.value()));
        }
      }
      CHECK(count >= 2);
    }
  }

  TEST_CASE("checker diagnostics name the node and rule") {
    Presentation p = load("lambda.soep");
    auto r = check_text(p, "(sym (axiom nope))");
    REQUIRE(!r);
    CHECK(r.diagnostic().path.rfind("root.1", 0) == 0);
    CHECK(r.diagnostic().message == "axiom: unknown axiom");

    r = check_text(p, "(trans (axiom β) (axiom η))");
    REQUIRE(!r);
    CHECK(r.diagnostic().message == "trans: premise contexts differ");

    r = check_text(p, "(trans (refl . |> x |- x) (refl . |> x |- abs((y) x)))");
    REQUIRE(!r);
    CHECK(r.diagnostic().message == "trans: middle terms differ");

    r = check_text(p, "(syn (axiom β))");
    REQUIRE(!r);
    CHECK(r.diagnostic().message == "unknown: unknown rule");
    CHECK(r.diagnostic().detail == "syn");

    r = check_text(p, "(axiom β => m:[1], n:[0] |> . |- m[n[]] == m[n[]])");
    REQUIRE(!r);
    CHECK(r.diagnostic().message == "axiom: conclusion mismatch");

    r = check_text(p, "(msub (axiom β) (m := (x) x : (refl . |> y, x |- x)))");
    REQUIRE(!r);
    CHECK(r.diagnostic().message == "msub: side premise count mismatch");

    r = check_text(p,
                   "(msub (axiom β) (m := (x) x : (refl . |> y, x |- x))"
                   " (n := y : (refl . |> y, z |- y)))");
    REQUIRE(!r);
    CHECK(r.diagnostic().message.find("variable context mismatch") !=
          std::string::npos);

    r = check_text(p,
                   "(msub (axiom β) (m := (x) x : (refl . |> y, x |- x))"
                   " (n := y : (refl q:[0] |> y |- y)))");
    REQUIRE(!r);
    CHECK(r.diagnostic().message.find("metavariable context mismatch") !=
          std::string::npos);

    r = check_text(p,
                   "(msub (axiom β) (m := (x) y : (refl . |> y, x |- x))"
                   " (n := y : (refl . |> y |- y)))");
    REQUIRE(!r);
    CHECK(r.diagnostic().message == "msub: side 1 body differs from its proof");

    r = check_text(p, "(msub (refl . |> x |- x))");
    REQUIRE(!r);
    CHECK(r.diagnostic().message ==
          "msub: no side premises and no explicit context");

    r = check_text(p, "(refl . |> x |- app(x, x))");
    CHECK(r);
    r = check_derivation(p, Derivation::refl(MetaContext{}, VarContext{}, V(1)));
    REQUIRE(!r);
    CHECK(r.diagnostic().message == "refl: ill-formed term");
  }

  TEST_CASE("depth cap") {
    Presentation p = load("lambda.soep");
    Derivation d = Derivation::axiom("β");
    for (int i = 0; i < 50; ++i) d = Derivation::sym(d);
    CheckOptions opt;
    opt.max_depth = 10;
    auto r = check_derivation(p, d, opt);
    REQUIRE(!r);
    CHECK(r.diagnostic().message == "sym: derivation depth cap exceeded");
    CHECK(check_derivation(p, d));
  }

  TEST_CASE("certificate syntax errors") {
    Signature sig = lambda_sig();
    CHECK_THROWS_AS(parse_derivation(sig, "(axiom"), ParseError);
    CHECK_THROWS_AS(parse_derivation(sig, "(trans (axiom a))"), ParseError);
    CHECK_THROWS_AS(parse_derivation(sig, "(refl . |> x |- y)"), ParseError);
    CHECK_THROWS_AS(parse_derivation(sig, "(axiom a) (axiom b)"), ParseError);
    CHECK_THROWS_AS(parse_derivation(sig, "(msub (axiom a) (m := : (axiom b)))"),
                    ParseError);
  }

  TEST_CASE("cert bundles") {
    Signature sig = lambda_sig();
    CertBundle b = parse_cert_bundle(sig, "(cert β (axiom β)) (cert η (axiom η))");
    REQUIRE(b.size() == 2);
    CHECK(b[1].first == "η");
    CHECK_THROWS_AS(parse_cert_bundle(sig, "(cert β (axiom β)) (cert β (axiom β))"),
                    ParseError);
    CHECK_THROWS_AS(parse_cert_bundle(sig, "(cart β (axiom β))"), ParseError);
  }
}
