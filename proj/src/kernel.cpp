#include "soalg/kernel.hpp"

#include <set>

namespace soalg {

std::string Diagnostic::to_string() const {
  std::string out = message;
  if (!path.empty()) out += " at " + path;
  if (!detail.empty()) out += " (" + detail + ")";
  return out;
}

bool is_identifier(std::string_view name) {
  if (name.empty()) return false;
  for (char c : name) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
              (c >= '0' && c <= '9') || c == '_';
    if (!ok) return false;
  }
  return true;
}

Signature::Signature(
    std::initializer_list<std::pair<std::string, Arity>> ops) {
  for (const auto& [name, arity] : ops) add(name, arity);
}

void Signature::add(std::string name, Arity arity) {
  if (!is_identifier(name))
    throw Error("malformed operator name '" + name + "'");
  if (index_.count(name)) throw Error("duplicate operator '" + name + "'");
  index_.emplace(name, ops_.size());
  ops_.emplace_back(std::move(name), std::move(arity));
}

const Arity* Signature::find(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return nullptr;
  return &ops_[it->second].second;
}

namespace {

std::optional<std::string> check_hints(const std::vector<std::string>& names,
                                       std::size_t size, const char* what) {
  if (names.empty()) return std::nullopt;
  if (names.size() != size)
    return std::string(what) + " has " + std::to_string(names.size()) +
           " name(s) for " + std::to_string(size) + " position(s)";
  std::set<std::string_view> seen;
  for (const auto& n : names)
    if (!seen.insert(n).second)
      return std::string(what) + " repeats the name '" + n + "'";
  return std::nullopt;
}

}  // namespace

std::string MetaContext::name(std::size_t index) const {
  if (!names.empty()) return names.at(index - 1);
  return "m" + std::to_string(index);
}

std::optional<std::string> MetaContext::validate() const {
  return check_hints(names, arities.size(), "metavariable context");
}

std::string VarContext::name(std::size_t index) const {
  if (!names.empty()) return names.at(index - 1);
  return "x" + std::to_string(index);
}

std::optional<std::string> VarContext::validate() const {
  return check_hints(names, size, "variable context");
}

Term Term::make(Node node) {
  for (const auto& a : node.args) {
    node.size += a.size();
    node.pure = node.pure && a.is_pure();
    node.binds = node.binds || a.has_binders();
  }
  if (node.kind == Kind::kOp) {
    node.pure = false;
    for (std::size_t n : node.binders) node.binds = node.binds || n > 0;
  }
  return Term(std::make_shared<const Node>(std::move(node)));
}

Term Term::var(std::size_t index) {
  if (index == 0) throw Error("variable levels are 1-based");
  return make(Node{Kind::kVar, index, {}, {}, {}});
}

Term Term::meta(std::size_t index, std::vector<Term> args) {
  if (index == 0) throw Error("metavariable positions are 1-based");
  return make(Node{Kind::kMeta, index, {}, std::move(args), {}});
}

Term Term::op(std::string name, std::vector<Term> args,
              std::vector<std::size_t> binders) {
  if (args.size() != binders.size())
    throw Error("operator '" + name + "' given " +
                std::to_string(args.size()) + " argument(s) but " +
                std::to_string(binders.size()) + " binder count(s)");
  return make(Node{Kind::kOp, 0, std::move(name), std::move(args),
                   std::move(binders)});
}

Term Term::op(std::string name, std::vector<Term> args) {
  std::vector<std::size_t> binders(args.size(), 0);
  return op(std::move(name), std::move(args), std::move(binders));
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind || x.index != y.index || x.size != y.size ||
      x.name != y.name || x.binders != y.binders ||
      x.args.size() != y.args.size())
    return false;
  for (std::size_t i = 0; i < x.args.size(); ++i)
    if (!(x.args[i] == y.args[i])) return false;
  return true;
}

namespace {

std::string child_path(const std::string& path, std::size_t i) {
  return path + "." + std::to_string(i + 1);
}

std::optional<Diagnostic> check_rec(const Signature& sig,
                                    const MetaContext& theta, std::size_t n,
                                    const Term& t, const std::string& path) {
  switch (t.kind()) {
    case Term::Kind::kVar:
      if (t.index() > n)
        return Diagnostic{path, "variable index out of range",
                          "x" + std::to_string(t.index()) + " in a " +
                              std::to_string(n) + "-variable context"};
      return std::nullopt;
    case Term::Kind::kMeta: {
      if (t.index() > theta.size())
        return Diagnostic{path, "metavariable index out of range",
                          "m" + std::to_string(t.index()) + " with " +
                              std::to_string(theta.size()) + " declared"};
      std::size_t want = theta.arity(t.index());
      if (t.args().size() != want)
        return Diagnostic{path, "metavariable arity mismatch",
                          theta.name(t.index()) + " expects " +
                              std::to_string(want) + ", got " +
                              std::to_string(t.args().size())};
      for (std::size_t i = 0; i < t.args().size(); ++i)
        if (auto d = check_rec(sig, theta, n, t.arg(i), child_path(path, i)))
          return d;
      return std::nullopt;
    }
    case Term::Kind::kOp: {
      const Arity* arity = sig.find(t.op_name());
      if (!arity)
        return Diagnostic{path, "unknown operator", t.op_name()};
      if (arity->size() != t.args().size())
        return Diagnostic{path, "operator arity mismatch",
                          t.op_name() + " expects " +
                              std::to_string(arity->size()) +
                              " argument(s), got " +
                              std::to_string(t.args().size())};
      for (std::size_t i = 0; i < arity->size(); ++i) {
        if ((*arity)[i] != t.binders()[i])
          return Diagnostic{child_path(path, i), "binder count mismatch",
                            t.op_name() + " binds " +
                                std::to_string((*arity)[i]) + " here, got " +
                                std::to_string(t.binders()[i])};
        if (auto d = check_rec(sig, theta, n + (*arity)[i], t.arg(i),
                               child_path(path, i)))
          return d;
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Diagnostic> check_term(const Signature& sig,
                                     const MetaContext& theta,
                                     std::size_t gamma, const Term& t) {
  return check_rec(sig, theta, gamma, t, "root");
}

std::vector<Term> variables(std::size_t count, std::size_t from) {
  std::vector<Term> out;
  out.reserve(count);
  for (std::size_t j = 1; j <= count; ++j) out.push_back(Term::var(from + j));
  return out;
}

namespace {

// env[j-1] is the image of x_j, valid over env[j-1].level variables.
// Images are weakened on use when the traversal sits under binders.
struct Image {
  Term term;
  std::size_t level;
};

Term subst_rec(const Term& t, std::vector<Image>& env, std::size_t depth) {
  switch (t.kind()) {
    case Term::Kind::kVar: {
      if (t.index() > env.size())
        throw Error("substitution: variable x" + std::to_string(t.index()) +
                    " outside a " + std::to_string(env.size()) +
                    "-variable context");
      const Image& im = env[t.index() - 1];
      if (im.level == depth || !im.term.has_binders()) return im.term;
      return weaken(im.term, im.level, depth - im.level);
    }
    case Term::Kind::kMeta: {
      std::vector<Term> args;
      args.reserve(t.args().size());
      for (const auto& a : t.args()) args.push_back(subst_rec(a, env, depth));
      return Term::meta(t.index(), std::move(args));
    }
    case Term::Kind::kOp: {
      std::vector<Term> args;
      args.reserve(t.args().size());
      for (std::size_t i = 0; i < t.args().size(); ++i) {
        std::size_t k = t.binders()[i];
        for (std::size_t j = 1; j <= k; ++j)
          env.push_back({Term::var(depth + j), depth + k});
        args.push_back(subst_rec(t.arg(i), env, depth + k));
        env.erase(env.end() - static_cast<std::ptrdiff_t>(k), env.end());
      }
      return Term::op(t.op_name(), std::move(args),
                      {t.binders().begin(), t.binders().end()});
    }
  }
  throw Error("unreachable");
}

std::vector<Image> images(std::span<const Term> terms, std::size_t level) {
  std::vector<Image> env;
  env.reserve(terms.size());
  for (const auto& t : terms) env.push_back({t, level});
  return env;
}

}  // namespace

Term subst_vars(const Term& t, std::span<const Term> replacements,
                std::size_t target) {
  std::vector<Image> env = images(replacements, target);
  return subst_rec(t, env, target);
}

Term weaken(const Term& t, std::size_t n, std::size_t extra) {
  if (extra == 0 || !t.has_binders()) return t;
  return subst_vars(t, variables(n), n + extra);
}

Term shift(const Term& t, std::size_t n, std::size_t prefix) {
  if (prefix == 0) return t;
  return subst_vars(t, variables(n, prefix), prefix + n);
}

namespace {

Term msubst_rec(const Term& t, std::span<const Term> bodies,
                std::size_t gamma, std::size_t depth) {
  switch (t.kind()) {
    case Term::Kind::kVar:
      return t;
    case Term::Kind::kMeta: {
      if (t.index() > bodies.size())
        throw Error("metasubstitution: m" + std::to_string(t.index()) +
                    " has no body (" + std::to_string(bodies.size()) +
                    " given)");
      std::vector<Image> env = images(variables(gamma), depth);
      for (const auto& a : t.args())
        env.push_back({msubst_rec(a, bodies, gamma, depth), depth});
      return subst_rec(bodies[t.index() - 1], env, depth);
    }
    case Term::Kind::kOp: {
      std::vector<Term> args;
      args.reserve(t.args().size());
      for (std::size_t i = 0; i < t.args().size(); ++i)
        args.push_back(
            msubst_rec(t.arg(i), bodies, gamma, depth + t.binders()[i]));
      return Term::op(t.op_name(), std::move(args),
                      {t.binders().begin(), t.binders().end()});
    }
  }
  throw Error("unreachable");
}

}  // namespace

Term subst_metas(const Term& t, std::span<const Term> bodies,
                 std::size_t gamma) {
  return msubst_rec(t, bodies, gamma, gamma);
}

Term subst_metas(const Term& t, const MetaContext& theta,
                 std::span<const Term> bodies, std::size_t gamma) {
  if (bodies.size() != theta.size())
    throw Error("metasubstitution: " + std::to_string(bodies.size()) +
                " bodies for " + std::to_string(theta.size()) +
                " metavariable(s)");
  return subst_metas(t, bodies, gamma);
}

std::vector<Term> identity_bodies(const MetaContext& theta,
                                  std::size_t gamma) {
  std::vector<Term> out;
  out.reserve(theta.size());
  for (std::size_t i = 1; i <= theta.size(); ++i)
    out.push_back(Term::meta(i, variables(theta.arity(i), gamma)));
  return out;
}

Term rename_metas(const Term& t, std::span<const std::size_t> renumber) {
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) args.push_back(rename_metas(a, renumber));
  switch (t.kind()) {
    case Term::Kind::kVar:
      return t;
    case Term::Kind::kMeta:
      if (t.index() > renumber.size())
        throw Error("rename_metas: m" + std::to_string(t.index()) +
                    " not covered");
      return Term::meta(renumber[t.index() - 1], std::move(args));
    case Term::Kind::kOp:
      return Term::op(t.op_name(), std::move(args),
                      {t.binders().begin(), t.binders().end()});
  }
  throw Error("unreachable");
}

}  // namespace soalg
