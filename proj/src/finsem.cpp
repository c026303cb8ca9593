#include "soalg/finsem.hpp"

#include <algorithm>
#include <limits>
#include <thread>

namespace soalg {

namespace {

constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kMax / a) return kMax;
  return a * b;
}

std::uint64_t sat_plus(std::uint64_t a, std::uint64_t b) {
  return a > kMax - b ? kMax : a + b;
}

// Digits of `row` in base s, most significant first.
void decode(std::uint64_t row, std::size_t s, std::span<Elem> out) {
  for (std::size_t i = out.size(); i-- > 0;) {
    out[i] = static_cast<Elem>(row % s);
    row /= s;
  }
}

std::size_t rows_of(std::size_t s, std::size_t arity) {
  std::uint64_t r = sat_pow(s, arity);
  if (r > (1u << 26)) throw ResourceError("table of arity " +
                                          std::to_string(arity) +
                                          " is too large");
  return static_cast<std::size_t>(r);
}

}  // namespace

std::uint64_t sat_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    out = sat_mul(out, base);
    if (out == kMax || out == 0) break;
  }
  return out;
}

FnTable::FnTable(std::size_t c, std::size_t a, std::vector<Elem> t)
    : carrier(c), arity(a), table(std::move(t)) {
  if (carrier == 0) throw Error("empty carrier");
  if (table.size() != rows_of(carrier, arity))
    throw Error("table of arity " + std::to_string(arity) + " needs " +
                std::to_string(rows_of(carrier, arity)) + " entries, got " +
                std::to_string(table.size()));
  for (Elem e : table)
    if (e >= carrier)
      throw Error("table entry " + std::to_string(e) + " outside carrier");
}

Elem FnTable::at(std::span<const Elem> args) const {
  std::size_t row = 0;
  for (Elem a : args) row = row * carrier + a;
  return table[row];
}

std::uint64_t FnTable::index() const {
  std::uint64_t out = 0;
  for (Elem e : table) {
    if (out > (kMax - e) / carrier) throw ResourceError("table index overflow");
    out = out * carrier + e;
  }
  return out;
}

std::uint64_t table_count(std::size_t carrier, std::size_t arity) {
  return sat_pow(carrier, sat_pow(carrier, arity));
}

FnTable table_from_index(std::size_t carrier, std::size_t arity,
                         std::uint64_t index) {
  std::vector<Elem> t(rows_of(carrier, arity));
  decode(index, carrier, t);
  return FnTable(carrier, arity, std::move(t));
}

FnTable clone_iota(std::size_t n, std::size_t i, std::size_t carrier) {
  if (i < 1 || i > n)
    throw Error("clone_iota: " + std::to_string(i) + " not in 1.." +
                std::to_string(n));
  std::vector<Elem> t(rows_of(carrier, n));
  std::vector<Elem> c(n);
  for (std::size_t r = 0; r < t.size(); ++r) {
    decode(r, carrier, c);
    t[r] = c[i - 1];
  }
  return FnTable(carrier, n, std::move(t));
}

FnTable clone_sigma(const FnTable& f, std::span<const FnTable> gs,
                    std::size_t n) {
  if (gs.size() != f.arity)
    throw Error("clone_sigma: " + std::to_string(gs.size()) +
                " argument(s) for arity " + std::to_string(f.arity));
  for (const auto& g : gs)
    if (g.arity != n || g.carrier != f.carrier)
      throw Error("clone_sigma: argument of arity " + std::to_string(g.arity) +
                  ", expected " + std::to_string(n));
  std::vector<Elem> t(rows_of(f.carrier, n));
  std::vector<Elem> inner(gs.size());
  for (std::size_t r = 0; r < t.size(); ++r) {
    for (std::size_t j = 0; j < gs.size(); ++j) inner[j] = gs[j].table[r];
    t[r] = f.at(inner);
  }
  return FnTable(f.carrier, n, std::move(t));
}

FnTable clone_rename(const FnTable& f, std::span<const std::size_t> rho,
                     std::size_t n) {
  if (rho.size() != f.arity)
    throw Error("clone_rename: renaming of length " +
                std::to_string(rho.size()) + " for arity " +
                std::to_string(f.arity));
  for (std::size_t j : rho)
    if (j < 1 || j > n)
      throw Error("clone_rename: " + std::to_string(j) + " not in 1.." +
                  std::to_string(n));
  std::vector<Elem> t(rows_of(f.carrier, n));
  std::vector<Elem> c(n), picked(rho.size());
  for (std::size_t r = 0; r < t.size(); ++r) {
    decode(r, f.carrier, c);
    for (std::size_t j = 0; j < rho.size(); ++j) picked[j] = c[rho[j] - 1];
    t[r] = f.at(picked);
  }
  return FnTable(f.carrier, n, std::move(t));
}

// ---------------------------------------------------------------------------
// Models

std::uint64_t FiniteModel::interp_size(std::size_t carrier,
                                       const Arity& arity) {
  std::uint64_t out = 1;
  for (std::size_t n : arity) out = sat_mul(out, table_count(carrier, n));
  return out;
}

FiniteModel::FiniteModel(Signature sig, std::size_t carrier,
                         std::vector<std::vector<Elem>> interp)
    : sig_(std::move(sig)), carrier_(carrier), interp_(std::move(interp)) {
  if (carrier_ == 0) throw Error("empty carrier");
  const auto& ops = sig_.operators();
  if (interp_.size() != ops.size())
    throw Error("model interprets " + std::to_string(interp_.size()) +
                " operator(s), signature has " + std::to_string(ops.size()));
  for (std::size_t o = 0; o < ops.size(); ++o) {
    std::uint64_t want = interp_size(carrier_, ops[o].second);
    if (interp_[o].size() != want)
      throw Error("interpretation of '" + ops[o].first + "' needs " +
                  std::to_string(want) + " entries, got " +
                  std::to_string(interp_[o].size()));
    for (Elem e : interp_[o])
      if (e >= carrier_)
        throw Error("interpretation of '" + ops[o].first + "' has entry " +
                    std::to_string(e) + " outside the carrier");
    std::vector<std::uint64_t> radix;
    for (std::size_t n : ops[o].second)
      radix.push_back(table_count(carrier_, n));
    radices_.push_back(std::move(radix));
    index_.emplace(ops[o].first, o);
  }
}

const std::vector<Elem>& FiniteModel::interp(std::string_view op) const {
  auto it = index_.find(op);
  if (it == index_.end())
    throw Error("model has no operator '" + std::string(op) + "'");
  return interp_[it->second];
}

Elem FiniteModel::apply(std::size_t op, std::span<const FnTable> args) const {
  const auto& radix = radices_[op];
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < args.size(); ++i)
    idx = idx * radix[i] + args[i].index();
  return interp_[op][idx];
}

Elem FiniteModel::apply(std::string_view op,
                        std::span<const FnTable> args) const {
  auto it = index_.find(op);
  if (it == index_.end())
    throw Error("model has no operator '" + std::string(op) + "'");
  return apply(it->second, args);
}

namespace {

class Evaluator {
 public:
  Evaluator(const FiniteModel& m, const Assignment& a)
      : model_(m), asg_(a), env_(a.vars) {}

  Elem eval(const Term& t) {
    switch (t.kind()) {
      case Term::Kind::kVar:
        return env_[t.index() - 1];
      case Term::Kind::kMeta: {
        std::vector<Elem> args;
        args.reserve(t.args().size());
        for (const Term& a : t.args()) args.push_back(eval(a));
        return asg_.metas[t.index() - 1].at(args);
      }
      case Term::Kind::kOp: {
        std::size_t s = model_.carrier();
        std::vector<FnTable> tables;
        for (std::size_t i = 0; i < t.args().size(); ++i) {
          std::size_t n = t.binders()[i];
          std::size_t rows = rows_of(s, n);
          std::vector<Elem> tab(rows);
          std::size_t base = env_.size();
          env_.resize(base + n);
          for (std::size_t r = 0; r < rows; ++r) {
            decode(r, s, std::span<Elem>(env_).subspan(base, n));
            tab[r] = eval(t.arg(i));
          }
          env_.resize(base);
          tables.emplace_back(s, n, std::move(tab));
        }
        return model_.apply(t.op_name(), tables);
      }
    }
    throw Error("unreachable");
  }

 private:
  const FiniteModel& model_;
  const Assignment& asg_;
  std::vector<Elem> env_;
};

void check_assignment(const FiniteModel& model, const MetaContext& theta,
                      const VarContext& gamma, const Assignment& asg) {
  if (asg.metas.size() != theta.size() || asg.vars.size() != gamma.size)
    throw Error("assignment does not match the context");
  for (std::size_t i = 0; i < theta.size(); ++i)
    if (asg.metas[i].arity != theta.arities[i] ||
        asg.metas[i].carrier != model.carrier())
      throw Error("assignment for " + theta.name(i + 1) +
                  " has the wrong arity or carrier");
  for (Elem e : asg.vars)
    if (e >= model.carrier()) throw Error("variable value outside carrier");
}

}  // namespace

Elem interpret(const FiniteModel& model, const Term& t, const Assignment& asg) {
  return Evaluator(model, asg).eval(t);
}

Elem interpret(const FiniteModel& model, const MetaContext& theta,
               const VarContext& gamma, const Term& t, const Assignment& asg) {
  if (auto d = check_term(model.sig(), theta, gamma, t))
    throw Error("interpret: " + d->to_string());
  check_assignment(model, theta, gamma, asg);
  return interpret(model, t, asg);
}

std::uint64_t assignment_count(std::size_t carrier, const MetaContext& theta,
                               const VarContext& gamma) {
  std::uint64_t out = sat_pow(carrier, gamma.size);
  for (std::size_t a : theta.arities)
    out = sat_mul(out, table_count(carrier, a));
  return out;
}

namespace {

// Walks every assignment in order; stops when `visit` returns false.
template <class Visit>
std::uint64_t for_each_assignment(std::size_t s, const MetaContext& theta,
                                  std::size_t gamma, Visit visit) {
  std::size_t k = theta.size();
  std::vector<std::uint64_t> radix;
  for (std::size_t a : theta.arities) radix.push_back(table_count(s, a));
  Assignment asg;
  for (std::size_t i = 0; i < k; ++i)
    asg.metas.push_back(table_from_index(s, theta.arities[i], 0));
  asg.vars.assign(gamma, 0);
  std::vector<std::uint64_t> digit(k, 0);
  std::uint64_t visited = 0;
  while (true) {
    ++visited;
    if (!visit(asg)) return visited;
    // odometer: variables are the least significant digits
    std::size_t j = gamma;
    while (j > 0 && asg.vars[j - 1] + 1 == s) asg.vars[--j] = 0;
    if (j > 0) {
      ++asg.vars[j - 1];
      continue;
    }
    std::size_t i = k;
    while (i > 0 && digit[i - 1] + 1 == radix[i - 1]) {
      digit[--i] = 0;
      asg.metas[i] = table_from_index(s, theta.arities[i], 0);
    }
    if (i == 0) return visited;
    ++digit[i - 1];
    asg.metas[i - 1] = table_from_index(s, theta.arities[i - 1], digit[i - 1]);
  }
}

SatResult satisfies_unbounded(const FiniteModel& model, const Equation& eq) {
  SatResult out;
  out.checked = for_each_assignment(
      model.carrier(), eq.theta, eq.gamma.size, [&](const Assignment& a) {
        if (interpret(model, eq.lhs, a) == interpret(model, eq.rhs, a))
          return true;
        out.holds = false;
        out.witness = a;
        return false;
      });
  return out;
}

}  // namespace

SatResult satisfies(const FiniteModel& model, const Equation& eq,
                    const EnumOptions& opt) {
  if (auto d = check_term(model.sig(), eq.theta, eq.gamma, eq.lhs))
    throw Error("satisfies: left side: " + d->to_string());
  if (auto d = check_term(model.sig(), eq.theta, eq.gamma, eq.rhs))
    throw Error("satisfies: right side: " + d->to_string());
  std::uint64_t total = assignment_count(model.carrier(), eq.theta, eq.gamma);
  if (total > opt.max_enum)
    throw ResourceError("satisfies: " +
                        (total == kMax ? std::string("too many")
                                       : std::to_string(total)) +
                        " assignments exceed the bound of " +
                        std::to_string(opt.max_enum));
  return satisfies_unbounded(model, eq);
}

std::optional<AxiomFailure> check_model(const FiniteModel& model,
                                        const Presentation& p,
                                        const EnumOptions& opt) {
  if (!(model.sig() == p.sig))
    throw Error("model signature differs from '" + p.name + "'");
  for (const Equation& ax : p.axioms) {
    SatResult r = satisfies(model, ax, opt);
    if (!r.holds) return AxiomFailure{ax.label, *r.witness};
  }
  return std::nullopt;
}

std::uint64_t model_count(const Signature& sig, std::size_t carrier) {
  std::uint64_t digits = 0;
  for (const auto& [_, arity] : sig.operators())
    digits = sat_plus(digits, FiniteModel::interp_size(carrier, arity));
  return sat_pow(carrier, digits);
}

FiniteModel model_from_index(const Signature& sig, std::size_t carrier,
                             std::uint64_t index) {
  const auto& ops = sig.operators();
  std::vector<std::vector<Elem>> interp(ops.size());
  for (std::size_t o = 0; o < ops.size(); ++o) {
    std::uint64_t size = FiniteModel::interp_size(carrier, ops[o].second);
    if (size > (1u << 26))
      throw ResourceError("interpretation of '" + ops[o].first +
                          "' is too large");
    interp[o].resize(size);
  }
  for (std::size_t o = ops.size(); o-- > 0;)
    for (std::size_t e = interp[o].size(); e-- > 0;) {
      interp[o][e] = static_cast<Elem>(index % carrier);
      index /= carrier;
    }
  return FiniteModel(sig, carrier, std::move(interp));
}

std::vector<FiniteModel> enumerate_models(const Presentation& p,
                                          std::size_t carrier,
                                          const EnumOptions& opt) {
  if (carrier == 0) throw Error("empty carrier");
  std::uint64_t models = model_count(p.sig, carrier);
  std::uint64_t per_model = 1;
  for (const Equation& ax : p.axioms)
    per_model = sat_plus(per_model, assignment_count(carrier, ax.theta, ax.gamma));
  std::uint64_t work = sat_mul(models, per_model);
  if (models == kMax || work > opt.max_enum)
    throw ResourceError(
        "enumerating " +
        (models == kMax ? std::string("too many") : std::to_string(models)) +
        " candidate model(s) of size " + std::to_string(carrier) +
        " exceeds the bound of " + std::to_string(opt.max_enum));

  std::uint64_t threads =
      std::max<std::uint64_t>(1, std::min<std::uint64_t>(opt.threads, models));
  std::vector<std::vector<std::uint64_t>> found(threads);
  auto run = [&](std::uint64_t part) {
    std::uint64_t lo = models * part / threads;
    std::uint64_t hi = models * (part + 1) / threads;
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      FiniteModel m = model_from_index(p.sig, carrier, idx);
      bool ok = true;
      for (const Equation& ax : p.axioms)
        if (!satisfies_unbounded(m, ax).holds) {
          ok = false;
          break;
        }
      if (ok) found[part].push_back(idx);
    }
  };
  if (threads == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (std::uint64_t t = 0; t < threads; ++t) pool.emplace_back(run, t);
    for (auto& th : pool) th.join();
  }
  std::vector<FiniteModel> out;
  for (const auto& part : found)
    for (std::uint64_t idx : part)
      out.push_back(model_from_index(p.sig, carrier, idx));
  return out;
}

// ---------------------------------------------------------------------------
// Clone maps

CloneMap term_map(const FiniteModel& model, const MetaContext& theta,
                  std::size_t n, const Term& t) {
  if (auto d = check_term(model.sig(), theta, n, t))
    throw Error("term_map: " + d->to_string());
  CloneMap out;
  out.carrier = model.carrier();
  out.src = theta.arities;
  out.n = n;
  out.fn = [model, t, n, s = model.carrier()](std::span<const FnTable> gs) {
    Assignment asg;
    asg.metas.assign(gs.begin(), gs.end());
    asg.vars.assign(n, 0);
    std::vector<Elem> tab(rows_of(s, n));
    for (std::size_t r = 0; r < tab.size(); ++r) {
      decode(r, s, asg.vars);
      tab[r] = interpret(model, t, asg);
    }
    return FnTable(s, n, std::move(tab));
  };
  return out;
}

CloneMap tilde_lift(const CloneMap& f, std::size_t ell) {
  if (ell == 0) return f;
  std::size_t s = f.carrier;
  CloneMap out;
  out.carrier = s;
  for (std::size_t m : f.src) out.src.push_back(ell + m);
  out.n = ell + f.n;
  out.fn = [f, ell, s](std::span<const FnTable> gs) {
    std::size_t outer = rows_of(s, ell);
    std::size_t inner_n = rows_of(s, f.n);
    std::vector<Elem> tab(outer * inner_n);
    std::vector<FnTable> slice(gs.size());
    for (std::size_t c = 0; c < outer; ++c) {
      for (std::size_t i = 0; i < gs.size(); ++i) {
        std::size_t w = rows_of(s, f.src[i]);
        auto begin = gs[i].table.begin() + static_cast<std::ptrdiff_t>(c * w);
        slice[i] = FnTable(s, f.src[i],
                           std::vector<Elem>(begin, begin +
                                                        static_cast<std::ptrdiff_t>(w)));
      }
      FnTable r = f(slice);
      std::copy(r.table.begin(), r.table.end(),
                tab.begin() + static_cast<std::ptrdiff_t>(c * inner_n));
    }
    return FnTable(s, ell + f.n, std::move(tab));
  };
  return out;
}

namespace {

// w_ell(h) : the p tables of arity q weakened to q + ell, followed by the
// projections iota_{q+1}, ..., iota_{q+ell} of arity q + ell.
std::vector<FnTable> w_map(std::span<const FnTable> h, std::size_t q,
                           std::size_t ell, std::size_t s) {
  std::vector<std::size_t> incl(q);
  for (std::size_t j = 0; j < q; ++j) incl[j] = j + 1;
  std::vector<FnTable> out;
  for (const auto& hj : h) out.push_back(clone_rename(hj, incl, q + ell));
  for (std::size_t i = 1; i <= ell; ++i)
    out.push_back(clone_iota(q + ell, q + i, s));
  return out;
}

}  // namespace

CoherenceResult check_w_coherence(const CloneMap& f, std::size_t p,
                                  std::size_t q, const EnumOptions& opt) {
  std::size_t s = f.carrier;
  std::size_t k = f.src.size();
  std::vector<std::uint64_t> radix;
  std::vector<std::size_t> arities;
  for (std::size_t m : f.src) {
    radix.push_back(table_count(s, p + m));
    arities.push_back(p + m);
  }
  for (std::size_t j = 0; j < p; ++j) {
    radix.push_back(table_count(s, q));
    arities.push_back(q);
  }
  std::uint64_t total = 1;
  for (auto r : radix) total = sat_mul(total, r);
  if (total > opt.max_enum)
    throw ResourceError("coherence check over " +
                        (total == kMax ? std::string("too many")
                                       : std::to_string(total)) +
                        " instances exceeds the bound of " +
                        std::to_string(opt.max_enum));

  CloneMap fp = tilde_lift(f, p), fq = tilde_lift(f, q);
  CoherenceResult out;
  std::vector<std::uint64_t> digit(radix.size(), 0);
  std::vector<FnTable> args;
  for (std::size_t i = 0; i < radix.size(); ++i)
    args.push_back(table_from_index(s, arities[i], 0));
  // h varies fastest, so f~_p(g) is recomputed only when g changes. The
  // w maps depend on h alone and are built once per h.
  std::optional<FnTable> lifted;
  std::uint64_t h_count = 1;
  for (std::size_t j = k; j < radix.size(); ++j) h_count *= radix[j];
  // ws[h][0] for the target arity, ws[h][1 + i] for argument i
  bool cache = h_count <= 65536;
  std::vector<std::vector<std::vector<FnTable>>> ws(cache ? h_count : 1);
  while (true) {
    std::span<const FnTable> gs(args.data(), k);
    std::span<const FnTable> h(args.data() + k, p);
    std::uint64_t hi = 0;
    for (std::size_t j = k; j < radix.size(); ++j) hi = hi * radix[j] + digit[j];
    auto& w = ws[cache ? hi : 0];
    if (!cache) w.clear();
    if (w.empty()) {
      w.push_back(w_map(h, q, f.n, s));
      for (std::size_t i = 0; i < k; ++i) w.push_back(w_map(h, q, f.src[i], s));
    }
    if (!lifted) lifted = fp(gs);
    FnTable left = clone_sigma(*lifted, w[0], q + f.n);
    std::vector<FnTable> subs;
    for (std::size_t i = 0; i < k; ++i)
      subs.push_back(clone_sigma(gs[i], w[1 + i], q + f.src[i]));
    FnTable right = fq(subs);
    ++out.checked;
    if (!(left == right)) {
      out.holds = false;
      return out;
    }
    std::size_t i = radix.size();
    while (i > 0 && digit[i - 1] + 1 == radix[i - 1]) {
      digit[--i] = 0;
      args[i] = table_from_index(s, arities[i], 0);
    }
    if (i == 0) return out;
    ++digit[i - 1];
    args[i - 1] = table_from_index(s, arities[i - 1], digit[i - 1]);
    if (i - 1 < k) lifted.reset();
  }
}

std::vector<FnTable> morphism_action(const FiniteModel& model,
                                     const Morphism& f,
                                     std::span<const FnTable> gs) {
  if (!f.is_pure() && !(f.theory()->sig == model.sig()))
    throw Error("morphism_action: morphism outside the model's signature");
  std::vector<FnTable> out;
  MetaContext theta = f.src_context();
  for (std::size_t q = 0; q < f.dst().size(); ++q)
    out.push_back(term_map(model, theta, f.dst()[q], f.component(q))(gs));
  return out;
}

FiniteModel precompose(const Translation& tr, const FiniteModel& model) {
  if (!(tr.dst() == model.sig()))
    throw Error("precompose: model signature is not the translation target");
  std::size_t s = model.carrier();
  const auto& ops = tr.src().operators();
  std::vector<std::vector<Elem>> interp;
  for (std::size_t o = 0; o < ops.size(); ++o) {
    const Arity& arity = ops[o].second;
    std::uint64_t size = FiniteModel::interp_size(s, arity);
    if (size > (1u << 26))
      throw ResourceError("interpretation of '" + ops[o].first +
                          "' is too large");
    std::vector<Elem> tab(size);
    Assignment asg;
    for (std::uint64_t idx = 0; idx < size; ++idx) {
      asg.metas.clear();
      std::uint64_t rest = idx;
      std::vector<std::uint64_t> digits(arity.size());
      for (std::size_t i = arity.size(); i-- > 0;) {
        std::uint64_t r = table_count(s, arity[i]);
        digits[i] = rest % r;
        rest /= r;
      }
      for (std::size_t i = 0; i < arity.size(); ++i)
        asg.metas.push_back(table_from_index(s, arity[i], digits[i]));
      tab[idx] = interpret(model, tr.images()[o], asg);
    }
    interp.push_back(std::move(tab));
  }
  return FiniteModel(tr.src(), s, std::move(interp));
}

FiniteModel precompose(const Translation& tr, const Presentation& src,
                       const Presentation& dst, const TranslationCerts& certs,
                       const FiniteModel& model) {
  if (auto d = check_equational(tr, src, dst, certs))
    throw Error("precompose: translation is not certified: " + d->to_string());
  return precompose(tr, model);
}

std::string print_assignment(const MetaContext& theta, const VarContext& gamma,
                             const Assignment& asg) {
  std::string out;
  auto sep = [&] {
    if (!out.empty()) out += ", ";
  };
  for (std::size_t i = 0; i < asg.metas.size(); ++i) {
    sep();
    out += theta.name(i + 1) + " = [";
    for (std::size_t r = 0; r < asg.metas[i].table.size(); ++r)
      out += (r ? " " : "") + std::to_string(asg.metas[i].table[r]);
    out += "]";
  }
  for (std::size_t j = 0; j < asg.vars.size(); ++j) {
    sep();
    out += gamma.name(j + 1) + " = " + std::to_string(asg.vars[j]);
  }
  return out.empty() ? "(empty assignment)" : out;
}

}  // namespace soalg
