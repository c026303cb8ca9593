// Acceptance runner: one pass/fail line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "soalg/cli.hpp"
#include "soalg/finsem.hpp"
#include "soalg/formats.hpp"
#include "soalg/intlang.hpp"
#include "soalg/laws.hpp"
#include "soalg/random.hpp"

using namespace soalg;
namespace fs = std::filesystem;

namespace {

std::string corpus_dir = SOALG_CORPUS_DIR;

std::string corpus(const std::string& file) { return corpus_dir + "/" + file; }

Presentation load(const std::string& file) {
  return parse_presentation(read_file(corpus(file)));
}

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  int number;
  std::string name;
  double limit;  // seconds; 0 when untimed
  std::function<Outcome()> run;
};

std::string suite_detail(const LawSuite& s) {
  std::uint64_t checked = 0, failed = 0;
  for (const auto& l : s.laws) {
    checked += l.checked;
    failed += l.failed;
  }
  std::string out = std::to_string(s.samples) + " samples, " +
                    std::to_string(checked) + " law instances, " +
                    std::to_string(failed) + " failures";
  for (const auto& l : s.laws)
    if (l.failed) out += "; " + l.name + " first fails at " + l.first_failure;
  return out;
}

Outcome law_criterion(const LawSuite& s, std::uint64_t samples) {
  return {s.ok() && s.samples == samples, suite_detail(s)};
}

// Certificates of the lambda-beta-eta corpus, sorted by file name.
std::vector<std::pair<std::string, std::string>> lambda_corpus() {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& e : fs::directory_iterator(corpus("lambda")))
    if (e.path().extension() == ".soderiv")
      out.emplace_back(e.path().filename().string(),
                       read_file(e.path().string()));
  std::sort(out.begin(), out.end());
  return out;
}

// Replaces the last rule keyword of a certificate by an unknown one, so the
// corrupted node is as deep as possible.
std::optional<std::string> corrupt_rule(const std::string& text) {
  std::size_t best = std::string::npos;
  for (const char* kw : {"(axiom", "(refl", "(sym", "(trans", "(msub"}) {
    std::size_t at = text.rfind(kw);
    if (at != std::string::npos && (best == std::string::npos || at > best))
      best = at;
  }
  if (best == std::string::npos) return std::nullopt;
  std::size_t end = text.find_first_of(" \n)", best + 1);
  return text.substr(0, best) + "(bogus" + text.substr(end);
}

Outcome criterion_checker() {
  Presentation p = load("lambda.soep");
  auto files = lambda_corpus();
  std::size_t verified = 0;
  std::string problems;
  bool beta_instance = false;
  Equation target = parse_equation(p.sig, ". |> y |- app(abs((x) x), y) == y");
  std::vector<std::pair<Derivation, Equation>> proved;
  for (const auto& [name, text] : files) {
    Derivation d = parse_derivation(p.sig, text);
    auto r = check_derivation(p, d);
    if (!r) {
      problems += " " + name + ": " + r.diagnostic().to_string();
      continue;
    }
    ++verified;
    proved.emplace_back(d, r.value());
    if (d.rule() == Derivation::Rule::kMsub &&
        d.children().front().rule() == Derivation::Rule::kAxiom &&
        d.children().front().label() == "β" &&
        r.value().same_judgement(target))
      beta_instance = true;
  }

  // Five rule-name corruptions and five corrupted conclusions.
  std::size_t mutants = 0, rejected = 0, node_level = 0;
  for (const auto& [name, text] : files) {
    if (mutants >= 5) break;
    auto bad = corrupt_rule(text);
    if (!bad) continue;
    ++mutants;
    Derivation d = parse_derivation(p.sig, *bad);
    auto r = check_derivation(p, d);
    if (!r) {
      ++rejected;
      const Diagnostic& diag = r.diagnostic();
      node_level += !diag.path.empty() &&
                    diag.message.find("unknown rule") != std::string::npos;
    }
  }
  for (const auto& [d, eq] : proved) {
    if (mutants >= 10) break;
    if (eq.lhs == eq.rhs) continue;
    Equation flipped = eq;
    std::swap(flipped.lhs, flipped.rhs);
    ++mutants;
    auto r = check_derivation(p, d.with_claim(flipped));
    if (!r) {
      ++rejected;
      node_level += !r.diagnostic().path.empty() &&
                    r.diagnostic().message.find("conclusion mismatch") !=
                        std::string::npos;
    }
  }

  std::ostringstream detail;
  detail << verified << "/" << files.size() << " certificates verify"
         << (beta_instance ? ", beta instance present" : ", beta instance MISSING")
         << "; " << rejected << "/" << mutants << " mutants rejected, "
         << node_level << " with node diagnostics" << problems;
  bool pass = files.size() >= 10 && verified == files.size() &&
              beta_instance && mutants == 10 && rejected == 10 &&
              node_level == 10;
  return {pass, detail.str()};
}

Outcome criterion_roundtrip() {
  Presentation p = load("lambda.soep");
  Roundtrip rt = roundtrip(p);
  std::vector<std::string> problems;
  if (auto d = check_equational(rt.unit, p, rt.fragment, rt.certs))
    problems.push_back("unit: " + d->to_string());
  if (auto d = check_equational(rt.inverse, rt.fragment, p,
                                fragment_soundness_certs(rt.spec)))
    problems.push_back("inverse: " + d->to_string());
  std::size_t cert_ok = 0;
  for (const auto& [label, d] : rt.certs) cert_ok += check_derivation(rt.fragment, d).ok();
  Translation back = compose(rt.unit, rt.inverse);
  Translation id = identity_translation(p.sig);
  std::size_t same = 0;
  for (std::size_t i = 0; i < id.images().size(); ++i)
    same += back.images()[i] == id.images()[i];
  std::ostringstream detail;
  detail << rt.fragment.sig.size() << " fragment operators, " << cert_ok << "/"
         << rt.certs.size() << " certificates check, " << same << "/"
         << id.images().size() << " composite images equal the identity's";
  for (const auto& s : problems) detail << "; " << s;
  return {problems.empty() && cert_ok == rt.certs.size() &&
              rt.certs.size() == p.axioms.size() &&
              same == id.images().size(),
          detail.str()};
}

Outcome criterion_enumeration() {
  Presentation beta = load("lambda_beta.soep");
  Presentation beta_eta = load("lambda.soep");
  std::size_t at2 = enumerate_models(beta, 2).size();
  std::size_t at1 = enumerate_models(beta_eta, 1).size();
  std::ostringstream detail;
  detail << at2 << " models of beta at size 2 (want 0), " << at1
         << " of beta+eta at size 1 (want 1)";
  return {at2 == 0 && at1 == 1, detail.str()};
}

Outcome criterion_soundness() {
  std::size_t derivations = 0, instances = 0, violations = 0, unchecked = 0;
  std::ostringstream detail;
  for (std::string name : {"empty", "idem", "lambda_beta"}) {
    Presentation p = load(name + ".soep");
    std::vector<FiniteModel> models;
    for (std::size_t s = 1; s <= 2; ++s)
      for (auto& m : enumerate_models(p, s)) models.push_back(std::move(m));
    std::vector<Derivation> ds;
    std::string dir = name == "lambda_beta" ? "lambda" : name;
    for (const auto& e : fs::directory_iterator(corpus(dir)))
      if (e.path().extension() == ".soderiv")
        ds.push_back(parse_derivation(p.sig, read_file(e.path().string())));
    Rng rng(7);
    for (int round = 0; round < 300; ++round) {
      MetaContext theta = random_meta_context(rng, 2, 1);
      if (auto d = random_derivation(rng, p, theta, rng.range(0, 2), 4, 8))
        ds.push_back(*d);
    }
    std::size_t here = 0;
    for (const Derivation& d : ds) {
      auto r = check_derivation(p, d);
      // corpus files written for beta-eta may use eta
      if (!r) {
        ++unchecked;
        continue;
      }
      ++here;
      for (const FiniteModel& m : models) {
        ++instances;
        violations += !satisfies(m, r.value()).holds;
      }
    }
    derivations += here;
    detail << name << ": " << here << " derivations, " << models.size()
           << " models; ";
  }
  detail << instances << " instances, " << violations << " violations ("
         << unchecked << " corpus files outside the theory skipped)";
  return {violations == 0 && instances > 0, detail.str()};
}

Outcome criterion_cli() {
  std::vector<std::string> args = {"--root", corpus_dir, "--format",
                                   "records", "batch", "commands.txt"};
  std::ostringstream a, b, ea, eb;
  int ca = cli::run(args, a, ea);
  int cb = cli::run(args, b, eb);
  const std::string first = a.str();
  bool identical = first == b.str() && ca == cb && ea.str() == eb.str();
  bool golden = first == read_file(corpus("commands.golden.jsonl"));
  std::size_t lines = std::count(first.begin(), first.end(), '\n');
  std::ostringstream detail;
  detail << lines << " records, runs " << (identical ? "identical" : "DIFFER")
         << ", golden file " << (golden ? "matches" : "DIFFERS");
  return {identical && golden, detail.str()};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) corpus_dir = argv[1];
  const std::uint64_t seed = 20240601;
  std::vector<Criterion> criteria = {
      {1, "substitution laws", 30,
       [&] { return law_criterion(substitution_suite(seed, 10000), 10000); }},
      {2, "derivation checker", 0, criterion_checker},
      {3, "category laws of M", 60,
       [&] { return law_criterion(category_suite(seed, 1000), 1000); }},
      {4, "compositionality", 0,
       [&] {
         return law_criterion(compositionality_suite(seed, 5000), 5000);
       }},
      {5, "fragment round trip", 0, criterion_roundtrip},
      {6, "finite model enumeration", 10, criterion_enumeration},
      {7, "soundness in small models", 0, criterion_soundness},
      {8, "clone and coherence", 60,
       [] {
         LawSuite s = clone_suite(3);
         return Outcome{s.ok(), suite_detail(s)};
       }},
      {9, "CLI determinism", 0, criterion_cli},
  };
  std::cout << "acceptance (seed " << seed << ")\n";
  int failed = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start)
                      .count();
    bool in_time = c.limit == 0 || secs < c.limit;
    bool pass = o.pass && in_time;
    failed += !pass;
    std::cout << (pass ? "PASS" : "FAIL") << "  " << c.number << ". "
              << c.name << ": " << o.detail << " [" << std::fixed
              << std::setprecision(2) << secs << " s";
    if (c.limit > 0) std::cout << ", limit " << c.limit << " s";
    std::cout << "]\n";
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size()
            << " criteria pass\n";
  return failed;
}
