#include "soalg/cli.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "soalg/formats.hpp"
#include "soalg/laws.hpp"

namespace soalg::cli {
namespace {

using Record = nlohmann::ordered_json;

// Exit with a given code; the message is already complete.
class Failure : public Error {
 public:
  Failure(Exit code, const std::string& message)
      : Error(message), code_(code) {}
  Exit code() const { return code_; }

 private:
  Exit code_;
};

struct Config {
  std::uint64_t max_enum = 10'000'000;
  std::size_t max_depth = 100000;
  std::uint64_t seed = 1;
  std::string format = "human";
  bool quiet = false;
  std::string root;
  unsigned threads = 1;
};

class Reporter {
 public:
  Reporter(const Config& cfg, std::ostream& out, std::ostream& err)
      : cfg_(cfg), out_(out), err_(err) {}

  bool records() const { return cfg_.format == "records"; }

  void emit(Record rec, const std::string& human) {
    if (records())
      out_ << rec.dump() << '\n';
    else if (!cfg_.quiet)
      out_ << human << '\n';
  }

  void error(Exit code, const std::string& message) {
    if (records()) {
      Record rec;
      rec["record"] = "error";
      rec["exit"] = static_cast<int>(code);
      rec["message"] = message;
      out_ << rec.dump() << '\n';
    } else {
      err_ << "error: " << message << '\n';
    }
  }

  void status(int code) {
    if (!records()) return;
    Record rec;
    rec["record"] = "status";
    rec["exit"] = code;
    out_ << rec.dump() << '\n';
  }

 private:
  const Config& cfg_;
  std::ostream& out_;
  std::ostream& err_;
};

class Session {
 public:
  Session(Config cfg, std::ostream& out, std::ostream& err)
      : cfg_(std::move(cfg)), rep_(cfg_, out, err) {}

  Config& config() { return cfg_; }
  Reporter& reporter() { return rep_; }

  std::string path(const std::string& p) const {
    if (cfg_.root.empty() || std::filesystem::path(p).is_absolute()) return p;
    return (std::filesystem::path(cfg_.root) / p).string();
  }

  std::string read(const std::string& p) const {
    try {
      return read_file(path(p));
    } catch (const Error&) {
      throw Failure(kInvalid, "cannot open '" + p + "'");
    }
  }

  // Parse errors are reported as <file>:<line>:<col>: <message>.
  template <typename F>
  auto parse(const std::string& file, F&& f) const -> decltype(f()) {
    try {
      return f();
    } catch (const ParseError& e) {
      throw Failure(kInvalid, file + ":" + e.what());
    } catch (const ResourceError&) {
      throw;
    } catch (const Failure&) {
      throw;
    } catch (const Error& e) {
      throw Failure(kInvalid, file + ": " + e.what());
    }
  }

  Presentation presentation(const std::string& file) const {
    std::string text = read(file);
    Presentation p = parse(file, [&] { return parse_presentation(text); });
    auto diags = validate_presentation(p);
    if (!diags.empty())
      throw Failure(kInvalid, file + ": " + diags.front().to_string());
    return p;
  }

  Theory theory(const std::string& file) {
    auto it = theories_.find(file);
    if (it != theories_.end()) return it->second;
    Theory t = make_theory(presentation(file));
    theories_.emplace(file, t);
    return t;
  }

  TheoryResolver resolver(const std::vector<std::string>& files) {
    std::vector<Theory> known;
    for (const auto& f : files) known.push_back(theory(f));
    return [known](const std::string& name) -> Theory {
      for (const auto& t : known)
        if (t->name == name) return t;
      return nullptr;
    };
  }

  EnumOptions enum_options() const {
    return EnumOptions{cfg_.max_enum, cfg_.threads};
  }

 private:
  Config cfg_;
  Reporter rep_;
  std::map<std::string, Theory> theories_;
};

Record record(const std::string& kind) {
  Record rec;
  rec["record"] = kind;
  return rec;
}

std::string plural(std::size_t n, const std::string& word) {
  return std::to_string(n) + " " + word + (n == 1 ? "" : "s");
}

// ---------------------------------------------------------------------------
// Commands

int cmd_check(Session& s, const std::string& file) {
  std::string text = s.read(file);
  Presentation p = s.parse(file, [&] { return parse_presentation(text); });
  auto diags = validate_presentation(p);
  if (!diags.empty()) {
    for (const auto& d : diags) {
      Record rec = record("diagnostic");
      rec["file"] = file;
      rec["path"] = d.path;
      rec["message"] = d.message;
      rec["detail"] = d.detail;
      s.reporter().emit(rec, file + ": " + d.to_string());
    }
    return kInvalid;
  }
  Record rec = record("check");
  rec["presentation"] = p.name;
  rec["operators"] = p.sig.size();
  rec["axioms"] = p.axioms.size();
  s.reporter().emit(rec, "ok " + p.name + ": " +
                             plural(p.sig.size(), "operator") + ", " +
                             plural(p.axioms.size(), "axiom"));
  return kOk;
}

int cmd_prove(Session& s, const std::string& pres, const std::string& file) {
  Presentation p = s.presentation(pres);
  std::string text = s.read(file);
  CertBundle items;
  bool bundle = text.find("(cert") != std::string::npos;
  s.parse(file, [&] {
    if (bundle)
      items = parse_cert_bundle(p.sig, text);
    else
      items.emplace_back("", parse_derivation(p.sig, text));
    return 0;
  });
  CheckOptions opt;
  opt.max_depth = s.config().max_depth;
  int code = kOk;
  for (const auto& [label, d] : items) {
    auto r = check_derivation(p, d, opt);
    std::string prefix = label.empty() ? "" : label + ": ";
    if (!r) {
      Record rec = record("rejected");
      if (!label.empty()) rec["label"] = label;
      rec["path"] = r.diagnostic().path;
      rec["message"] = r.diagnostic().message;
      rec["detail"] = r.diagnostic().detail;
      s.reporter().emit(rec,
                        prefix + "rejected: " + r.diagnostic().to_string());
      code = kCertificate;
      continue;
    }
    Equation eq = r.value();
    eq.label.clear();
    Record rec = record("proved");
    if (!label.empty()) rec["label"] = label;
    rec["equation"] = print_equation(eq);
    rec["size"] = d.size();
    s.reporter().emit(rec, prefix + print_equation(eq));
  }
  return code;
}

struct TranslationFiles {
  Presentation src, dst;
  Translation tr;
};

TranslationFiles load_translation(Session& s, const std::string& file,
                                  const std::string& src_file,
                                  const std::string& dst_file) {
  Presentation src = s.presentation(src_file);
  Presentation dst = s.presentation(dst_file);
  std::string text = s.read(file);
  Translation tr =
      s.parse(file, [&] { return parse_translation(text, src, dst); });
  return {std::move(src), std::move(dst), std::move(tr)};
}

int cmd_translate(Session& s, const std::string& file,
                  const std::string& src_file, const std::string& dst_file,
                  const std::string& judgement) {
  auto [src, dst, tr] = load_translation(s, file, src_file, dst_file);
  Record rec = record("translated");
  std::string human;
  s.parse("<judgement>", [&] {
    if (judgement.find("==") != std::string::npos ||
        judgement.find("\xe2\x89\xa1") != std::string::npos) {
      Equation eq = apply(tr, parse_equation(src.sig, judgement));
      eq.label.clear();
      human = print_equation(eq);
      rec["equation"] = human;
    } else {
      Judgement j = parse_judgement(src.sig, judgement);
      Term img = apply(tr, j.theta, j.gamma, j.term);
      human = print_judgement(j.theta, j.gamma, img);
      rec["judgement"] = human;
    }
    return 0;
  });
  s.reporter().emit(rec, human);
  return kOk;
}

int cmd_check_translation(Session& s, const std::string& file,
                          const std::string& src_file,
                          const std::string& dst_file,
                          const std::optional<std::string>& cert_file) {
  auto [src, dst, tr] = load_translation(s, file, src_file, dst_file);
  TranslationCerts certs;
  if (cert_file) {
    std::string text = s.read(*cert_file);
    certs = s.parse(*cert_file,
                    [&] { return parse_cert_bundle(dst.sig, text); });
  }
  auto diag = check_equational(tr, src, dst, certs);
  Record rec = record("translation");
  rec["name"] = tr.name();
  rec["src"] = src.name;
  rec["dst"] = dst.name;
  if (diag) {
    rec["equational"] = false;
    rec["path"] = diag->path;
    rec["message"] = diag->message;
    rec["detail"] = diag->detail;
    s.reporter().emit(rec, tr.name() + ": not certified: " + diag->to_string());
    return kCertificate;
  }
  rec["equational"] = true;
  rec["axioms"] = src.axioms.size();
  s.reporter().emit(rec, tr.name() + ": equational, " +
                             plural(src.axioms.size(), "axiom") +
                             " certified");
  return kOk;
}

FiniteModel load_model(Session& s, const std::string& file,
                       const Presentation& p, std::string* name) {
  std::string text = s.read(file);
  return s.parse(file, [&] { return parse_model(text, p, name); });
}

int cmd_model_check(Session& s, const std::string& file,
                    const std::string& pres) {
  Presentation p = s.presentation(pres);
  std::string name;
  FiniteModel m = load_model(s, file, p, &name);
  auto fail = check_model(m, p, s.enum_options());
  Record rec = record("model");
  rec["model"] = name;
  rec["presentation"] = p.name;
  rec["size"] = m.carrier();
  if (!fail) {
    rec["satisfies"] = true;
    s.reporter().emit(rec, name + ": satisfies all");
    return kOk;
  }
  const Equation* ax = p.find(fail->label);
  std::string w = print_assignment(ax->theta, ax->gamma, fail->witness);
  rec["satisfies"] = false;
  rec["axiom"] = fail->label;
  rec["witness"] = w;
  s.reporter().emit(rec, name + ": fails " + fail->label + ": " + w);
  return kInvalid;
}

int cmd_model_witness(Session& s, const std::string& file,
                      const std::string& pres,
                      const std::optional<std::string>& equation) {
  Presentation p = s.presentation(pres);
  std::string name;
  FiniteModel m = load_model(s, file, p, &name);
  std::vector<Equation> eqs;
  if (equation)
    eqs.push_back(
        s.parse("<equation>", [&] { return parse_equation(p.sig, *equation); }));
  else
    eqs = p.axioms;
  for (const auto& eq : eqs) {
    SatResult r = satisfies(m, eq, s.enum_options());
    Record rec = record("witness");
    rec["model"] = name;
    std::string what = eq.label.empty() ? print_equation(eq) : eq.label;
    rec["equation"] = what;
    rec["holds"] = r.holds;
    rec["checked"] = r.checked;
    if (r.holds) {
      s.reporter().emit(rec, what + ": holds for all " +
                                 plural(r.checked, "assignment"));
    } else {
      std::string w = print_assignment(eq.theta, eq.gamma, *r.witness);
      rec["witness"] = w;
      s.reporter().emit(rec, what + ": fails at " + w);
    }
  }
  return kOk;
}

int cmd_model_enumerate(Session& s, const std::string& pres, std::size_t size,
                        bool list) {
  Presentation p = s.presentation(pres);
  if (size == 0) throw Failure(kInvalid, "carrier size must be positive");
  auto models = enumerate_models(p, size, s.enum_options());
  if (list)
    for (std::size_t i = 0; i < models.size(); ++i) {
      std::string name = p.name + "_" + std::to_string(i + 1);
      Record rec = record("found");
      rec["model"] = name;
      rec["interp"] = models[i].interp();
      std::string text = print_model(models[i], name, p.name);
      if (!text.empty() && text.back() == '\n') text.pop_back();
      s.reporter().emit(rec, text);
    }
  Record rec = record("enumerate");
  rec["presentation"] = p.name;
  rec["size"] = size;
  rec["models"] = models.size();
  s.reporter().emit(rec, plural(models.size(), "model"));
  return kOk;
}

Morphism read_morphism(Session& s, const std::string& text,
                       const std::vector<std::string>& theories) {
  TheoryResolver resolve = s.resolver(theories);
  return s.parse("<morphism>", [&] { return parse_morphism(text, resolve); });
}

SOType read_sotype(Session& s, const std::string& text) {
  return s.parse("<object>", [&] { return parse_sotype(text); });
}

int emit_morphism(Session& s, const std::string& op, const Morphism& f) {
  Record rec = record("morphism");
  rec["op"] = op;
  rec["morphism"] = print_morphism(f);
  s.reporter().emit(rec, print_morphism(f));
  return kOk;
}

int cmd_fragment(Session& s, const std::string& file, const std::string& pres) {
  Presentation p = s.presentation(pres);
  std::string text = s.read(file);
  FragmentSpec spec = s.parse(file, [&] { return parse_fragment(text, p); });
  if (auto d = validate(spec)) {
    Exit code = d->message.rfind("composite not certified", 0) == 0
                    ? kCertificate
                    : kInvalid;
    throw Failure(code, file + ": " + d->to_string());
  }
  Presentation e = emit_fragment(spec);
  auto diag = check_equational(fragment_dictionary(spec), e, p,
                               fragment_soundness_certs(spec));
  if (diag)
    throw Failure(kCertificate,
                  file + ": dictionary not certified: " + diag->to_string());
  Record rec = record("fragment");
  rec["name"] = spec.name;
  rec["operators"] = e.sig.size();
  rec["equations"] = e.axioms.size();
  rec["presentation"] = print_presentation(e);
  std::string human = print_presentation(e);
  if (!human.empty() && human.back() == '\n') human.pop_back();
  s.reporter().emit(rec, human);
  return kOk;
}

int cmd_roundtrip(Session& s, const std::string& pres) {
  Presentation p = s.presentation(pres);
  Roundtrip rt = roundtrip(p);
  Record rec = record("roundtrip");
  rec["presentation"] = p.name;
  rec["operators"] = rt.fragment.sig.size();
  rec["equations"] = rt.fragment.axioms.size();
  auto fail = [&](const std::string& what, const Diagnostic& d) {
    throw Failure(kCertificate, p.name + ": " + what + ": " + d.to_string());
  };
  if (auto d = check_equational(rt.unit, p, rt.fragment, rt.certs))
    fail("unit not certified", *d);
  if (auto d = check_equational(rt.inverse, rt.fragment, p,
                                fragment_soundness_certs(rt.spec)))
    fail("inverse not certified", *d);
  Translation back = compose(rt.unit, rt.inverse);
  bool identity = back.images() == identity_translation(p.sig).images();
  rec["unit_certified"] = true;
  rec["inverse_certified"] = true;
  rec["identity"] = identity;
  s.reporter().emit(
      rec, p.name + ": fragment with " +
               plural(rt.fragment.sig.size(), "operator") + " and " +
               plural(rt.fragment.axioms.size(), "equation") +
               "; unit and inverse certified; composite " +
               (identity ? "is" : "is not") + " the identity");
  if (!identity)
    throw Failure(kCertificate, p.name + ": composite differs from identity");
  return kOk;
}

int cmd_laws(Session& s, const std::string& suite, std::uint64_t rounds) {
  std::vector<std::string> names;
  if (suite == "all")
    names = {"substitution", "category", "compositionality"};
  else
    names = {suite};
  std::uint64_t seed = s.config().seed;
  int code = kOk;
  for (const auto& n : names) {
    LawSuite r;
    if (n == "substitution")
      r = substitution_suite(seed, rounds);
    else if (n == "category")
      r = category_suite(seed, rounds);
    else if (n == "compositionality")
      r = compositionality_suite(seed, rounds);
    else
      r = clone_suite(3, s.enum_options());
    for (const auto& l : r.laws) {
      Record rec = record("law");
      rec["suite"] = r.name;
      rec["law"] = l.name;
      rec["samples"] = r.samples;
      rec["checked"] = l.checked;
      rec["failed"] = l.failed;
      if (!l.first_failure.empty()) rec["first_failure"] = l.first_failure;
      std::string human = r.name + "." + l.name + ": " +
                          std::to_string(l.checked) + " checked, " +
                          std::to_string(l.failed) + " failed";
      if (!l.first_failure.empty()) human += " (first at " + l.first_failure + ")";
      s.reporter().emit(rec, human);
    }
    if (!r.ok()) code = kInvalid;
  }
  return code;
}

// ---------------------------------------------------------------------------
// Argument parsing

using Action = std::function<int(Session&)>;

void add_global_options(CLI::App& app, Config& cfg) {
  app.add_option("--max-enum", cfg.max_enum,
                 "Bound on enumerated instances")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-depth", cfg.max_depth, "Bound on derivation depth")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "Seed for randomized commands");
  app.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"human", "records"}));
  app.add_flag("--quiet", cfg.quiet, "No output on success (human format)");
  app.add_option("--root", cfg.root, "Directory for relative paths");
  app.add_option("--threads", cfg.threads, "Enumeration threads")
      ->check(CLI::PositiveNumber);
}

// Declares the subcommands; `action` is set by the one that was given.
void add_commands(CLI::App& app, Action& action,
                  std::vector<std::string>& batch_file) {
  auto strings = std::make_shared<std::vector<std::string>>(8);
  auto& a = *strings;
  auto opt_file = std::make_shared<std::string>();
  auto opt_list = std::make_shared<bool>(false);
  auto size = std::make_shared<std::size_t>(0);
  auto rounds = std::make_shared<std::uint64_t>(100);
  auto suite = std::make_shared<std::string>("all");
  auto theories = std::make_shared<std::vector<std::string>>();

  auto* check = app.add_subcommand("check", "Validate a presentation");
  check->add_option("presentation", a[0])->required();
  check->callback([&action, strings] {
    action = [s = (*strings)[0]](Session& ss) { return cmd_check(ss, s); };
  });

  auto* prove = app.add_subcommand("prove", "Check a derivation");
  prove->add_option("presentation", a[0])->required();
  prove->add_option("derivation", a[1])->required();
  prove->callback([&action, strings] {
    action = [v = *strings](Session& ss) { return cmd_prove(ss, v[0], v[1]); };
  });

  auto* tr = app.add_subcommand("translate", "Translate a judgement");
  tr->add_option("translation", a[0])->required();
  tr->add_option("src", a[1])->required();
  tr->add_option("dst", a[2])->required();
  tr->add_option("judgement", a[3])->required();
  tr->callback([&action, strings] {
    action = [v = *strings](Session& ss) {
      return cmd_translate(ss, v[0], v[1], v[2], v[3]);
    };
  });

  auto* ct = app.add_subcommand("check-translation",
                                "Check that a translation is equational");
  ct->add_option("translation", a[0])->required();
  ct->add_option("src", a[1])->required();
  ct->add_option("dst", a[2])->required();
  ct->add_option("certificates", *opt_file);
  ct->callback([&action, strings, opt_file] {
    std::optional<std::string> certs;
    if (!opt_file->empty()) certs = *opt_file;
    action = [v = *strings, certs](Session& ss) {
      return cmd_check_translation(ss, v[0], v[1], v[2], certs);
    };
  });

  auto* model = app.add_subcommand("model", "Finite models");
  model->require_subcommand(1);
  auto* mc = model->add_subcommand("check", "Check a model against axioms");
  mc->add_option("model", a[0])->required();
  mc->add_option("presentation", a[1])->required();
  mc->callback([&action, strings] {
    action = [v = *strings](Session& ss) {
      return cmd_model_check(ss, v[0], v[1]);
    };
  });
  auto* mw = model->add_subcommand("witness", "Print failing assignments");
  mw->add_option("model", a[0])->required();
  mw->add_option("presentation", a[1])->required();
  mw->add_option("--equation", *opt_file, "Equation instead of the axioms");
  mw->callback([&action, strings, opt_file] {
    std::optional<std::string> eq;
    if (!opt_file->empty()) eq = *opt_file;
    action = [v = *strings, eq](Session& ss) {
      return cmd_model_witness(ss, v[0], v[1], eq);
    };
  });
  auto* me = model->add_subcommand("enumerate", "Count models of a size");
  me->add_option("presentation", a[0])->required();
  me->add_option("--size", *size, "Carrier size")->required();
  me->add_flag("--list", *opt_list, "Print every model");
  me->callback([&action, strings, size, opt_list] {
    action = [v = *strings, n = *size, l = *opt_list](Session& ss) {
      return cmd_model_enumerate(ss, v[0], n, l);
    };
  });

  auto* mcat = app.add_subcommand("mcat", "Operations of M and M(E)");
  mcat->require_subcommand(1);
  mcat->add_option("--theory", *theories,
                   "Presentation files naming theories");
  auto* id = mcat->add_subcommand("id", "Identity on an object");
  id->add_option("object", a[0])->required();
  id->callback([&action, strings] {
    action = [v = *strings](Session& ss) {
      return emit_morphism(ss, "id", identity(read_sotype(ss, v[0])));
    };
  });
  auto* ev = mcat->add_subcommand("eval", "Evaluation map of an object");
  ev->add_option("object", a[0])->required();
  ev->callback([&action, strings] {
    action = [v = *strings](Session& ss) {
      return emit_morphism(ss, "eval", eval(read_sotype(ss, v[0])));
    };
  });
  auto* comp = mcat->add_subcommand("compose", "f then g");
  comp->add_option("f", a[0])->required();
  comp->add_option("g", a[1])->required();
  comp->callback([&action, strings, theories] {
    action = [v = *strings, t = *theories](Session& ss) {
      Morphism f = read_morphism(ss, v[0], t);
      Morphism g = read_morphism(ss, v[1], t);
      Morphism fg = ss.parse("<compose>", [&] { return compose(f, g); });
      return emit_morphism(ss, "compose", fg);
    };
  });
  for (const char* name : {"curry", "uncurry"}) {
    auto* c = mcat->add_subcommand(name, name == std::string("curry")
                                             ? "Curry the last argument"
                                             : "Inverse of curry");
    c->add_option("f", a[0])->required();
    c->callback([&action, strings, theories, op = std::string(name)] {
      action = [v = *strings, t = *theories, op](Session& ss) {
        Morphism f = read_morphism(ss, v[0], t);
        Morphism r = ss.parse("<" + op + ">", [&] {
          return op == "curry" ? curry(f) : uncurry(f);
        });
        return emit_morphism(ss, op, r);
      };
    });
  }

  auto* frag = app.add_subcommand("fragment",
                                  "Emit the presentation of a fragment");
  frag->add_option("fragment", a[0])->required();
  frag->add_option("presentation", a[1])->required();
  frag->callback([&action, strings] {
    action = [v = *strings](Session& ss) { return cmd_fragment(ss, v[0], v[1]); };
  });

  auto* rt = app.add_subcommand("roundtrip",
                                "Round trip through the internal language");
  rt->add_option("presentation", a[0])->required();
  rt->callback([&action, strings] {
    action = [v = *strings](Session& ss) { return cmd_roundtrip(ss, v[0]); };
  });

  auto* laws = app.add_subcommand("laws", "Randomized law suites");
  laws->add_option("--rounds", *rounds, "Samples per suite");
  laws->add_option("--suite", *suite, "Suite to run")
      ->check(CLI::IsMember({"all", "substitution", "category",
                             "compositionality", "clone"}));
  laws->callback([&action, rounds, suite] {
    action = [r = *rounds, n = *suite](Session& ss) {
      return cmd_laws(ss, n, r);
    };
  });

  auto* batch = app.add_subcommand("batch", "Run one command per line");
  batch->add_option("file", batch_file)->required()->expected(1);
}

// Parses one invocation into a configured action. Returns an exit code when
// parsing ends the invocation (help, usage errors).
std::optional<int> parse_invocation(
    const std::function<void(CLI::App&)>& do_parse, Config& cfg,
    Action& action, std::vector<std::string>& batch_file, Reporter& early,
    std::ostream& out) {
  CLI::App app{"Second-order universal algebra workbench", "soalg"};
  app.require_subcommand(1);
  add_global_options(app, cfg);
  add_commands(app, action, batch_file);
  try {
    do_parse(app);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    early.error(kInvalid, e.what());
    return kInvalid;
  }
  return std::nullopt;
}

int execute(Session& s, const Action& action) {
  try {
    return action(s);
  } catch (const Failure& e) {
    s.reporter().error(e.code(), e.what());
    return e.code();
  } catch (const ResourceError& e) {
    s.reporter().error(kResource, e.what());
    return kResource;
  } catch (const Error& e) {
    s.reporter().error(kInvalid, e.what());
    return kInvalid;
  }
}

int run_batch(Session& outer, const std::string& file, std::ostream& out,
              std::ostream& err) {
  std::string text = outer.read(file);
  std::istringstream lines(text);
  std::string line;
  std::size_t number = 0;
  int worst = kOk;
  while (std::getline(lines, line)) {
    ++number;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    if (line.back() == '\r') line.pop_back();
    line = line.substr(first);

    Config cfg = outer.config();
    Reporter early(cfg, out, err);
    Record rec = record("command");
    rec["line"] = number;
    rec["text"] = line;
    early.emit(rec, "$ " + line);

    Action action;
    std::vector<std::string> nested;
    auto code = parse_invocation(
        [&](CLI::App& app) { app.parse(line, false); }, cfg, action, nested,
        early, out);
    if (!code && !nested.empty()) {
      early.error(kInvalid, "batch files do not nest");
      code = kInvalid;
    }
    if (!code) {
      Session s(cfg, out, err);
      code = execute(s, action);
    }
    early.status(*code);
    worst = std::max(worst, *code);
  }
  return worst;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  Config cfg;
  Action action;
  std::vector<std::string> batch_file;
  Reporter early(cfg, out, err);
  auto code = parse_invocation(
      [&](CLI::App& app) {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
      },
      cfg, action, batch_file, early, out);
  if (code) return *code;

  Session s(cfg, out, err);
  if (s.reporter().records()) {
    Record rec = record("header");
    rec["tool"] = "soalg";
    rec["format"] = 1;
    if (batch_file.empty())
      rec["command"] = args;
    else
      rec["batch"] = batch_file.front();
    rec["seed"] = cfg.seed;
    rec["max_enum"] = cfg.max_enum;
    out << rec.dump() << '\n';
  }
  int result;
  if (!batch_file.empty()) {
    try {
      result = run_batch(s, batch_file.front(), out, err);
    } catch (const Failure& e) {
      s.reporter().error(e.code(), e.what());
      result = e.code();
    }
  } else {
    result = execute(s, action);
  }
  s.reporter().status(result);
  return result;
}

}  // namespace soalg::cli
