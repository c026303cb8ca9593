#pragma once

// Finite semantics: the clone of operations on {0, ..., s-1}, interpretation
// of second-order terms in table-valued models, equation satisfaction, model
// enumeration and the lift of clone maps along extra leading arguments.
//
// Encodings (all first-coordinate-most-significant):
//  - An n-ary table lists f(c_1, ..., c_n) for the s^n tuples in
//    lexicographic order, so row(c) = c_1 s^(n-1) + ... + c_n.
//  - The index of a table reads its entries as base-s digits, row 0 most
//    significant. Tables of arity n are numbered 0 .. s^(s^n) - 1.
//  - An operator o : (n_1, ..., n_k) is interpreted by a dense array indexed
//    by the mixed-radix number (index(F_1), ..., index(F_k)) with radices
//    s^(s^n_i).
//  - Models of a signature are numbered by reading all interpretation
//    arrays, operators in signature order, as one base-s number.
//  - Assignments are ordered by (index(metas)..., vars...).

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "soalg/eqlogic.hpp"
#include "soalg/mcat.hpp"
#include "soalg/translate.hpp"

namespace soalg {

using Elem = std::uint32_t;

// Thrown when an enumeration would exceed the configured bound.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// base^exp, saturating at UINT64_MAX.
std::uint64_t sat_pow(std::uint64_t base, std::uint64_t exp);

struct FnTable {
  std::size_t carrier = 1;
  std::size_t arity = 0;
  std::vector<Elem> table;

  FnTable() = default;
  FnTable(std::size_t carrier, std::size_t arity, std::vector<Elem> table);

  std::size_t rows() const { return table.size(); }
  Elem at(std::span<const Elem> args) const;
  std::uint64_t index() const;

  friend bool operator==(const FnTable&, const FnTable&) = default;
};

// Table number `index` of the given arity.
FnTable table_from_index(std::size_t carrier, std::size_t arity,
                         std::uint64_t index);
std::uint64_t table_count(std::size_t carrier, std::size_t arity);

// i-th projection of arity n (1 <= i <= n).
FnTable clone_iota(std::size_t n, std::size_t i, std::size_t carrier);
// (c) |-> f(g_1(c), ..., g_m(c)) for m = f.arity tables g_j of arity n.
FnTable clone_sigma(const FnTable& f, std::span<const FnTable> gs,
                    std::size_t n);
// (c_1..c_n) |-> f(c_rho(1), ..., c_rho(m)); rho is 1-based into [n].
FnTable clone_rename(const FnTable& f, std::span<const std::size_t> rho,
                     std::size_t n);

class FiniteModel {
 public:
  // interp[o] is the dense array for the o-th operator of `sig`.
  FiniteModel(Signature sig, std::size_t carrier,
              std::vector<std::vector<Elem>> interp);

  const Signature& sig() const { return sig_; }
  std::size_t carrier() const { return carrier_; }
  const std::vector<std::vector<Elem>>& interp() const { return interp_; }
  const std::vector<Elem>& interp(std::string_view op) const;

  Elem apply(std::size_t op, std::span<const FnTable> args) const;
  Elem apply(std::string_view op, std::span<const FnTable> args) const;

  // Number of entries in the interpretation of an operator of this arity.
  static std::uint64_t interp_size(std::size_t carrier, const Arity& arity);

  friend bool operator==(const FiniteModel& a, const FiniteModel& b) {
    return a.sig_ == b.sig_ && a.carrier_ == b.carrier_ &&
           a.interp_ == b.interp_;
  }

 private:
  Signature sig_;
  std::size_t carrier_;
  std::vector<std::vector<Elem>> interp_;
  std::vector<std::vector<std::uint64_t>> radices_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

struct Assignment {
  std::vector<FnTable> metas;
  std::vector<Elem> vars;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

// Unchecked: `t` must be well-formed over the assignment's contexts.
Elem interpret(const FiniteModel& model, const Term& t, const Assignment& asg);
// Checked form; throws Error on an ill-formed term or a mismatched
// assignment.
Elem interpret(const FiniteModel& model, const MetaContext& theta,
               const VarContext& gamma, const Term& t, const Assignment& asg);

struct EnumOptions {
  std::uint64_t max_enum = 10'000'000;
  unsigned threads = 1;
};

struct SatResult {
  bool holds = true;
  std::optional<Assignment> witness;  // first failing assignment
  std::uint64_t checked = 0;
};

std::uint64_t assignment_count(std::size_t carrier, const MetaContext& theta,
                               const VarContext& gamma);
SatResult satisfies(const FiniteModel& model, const Equation& eq,
                    const EnumOptions& opt = {});

struct AxiomFailure {
  std::string label;
  Assignment witness;
};
// First axiom of `p` that fails in `model`, with its first witness.
std::optional<AxiomFailure> check_model(const FiniteModel& model,
                                        const Presentation& p,
                                        const EnumOptions& opt = {});

std::uint64_t model_count(const Signature& sig, std::size_t carrier);
FiniteModel model_from_index(const Signature& sig, std::size_t carrier,
                             std::uint64_t index);

// All models of `p` on the carrier, in index order. The search space is
// split into contiguous index ranges, one per thread.
std::vector<FiniteModel> enumerate_models(const Presentation& p,
                                          std::size_t carrier,
                                          const EnumOptions& opt = {});

// A map prod_i O(C)_{m_i} -> O(C)_n.
struct CloneMap {
  std::size_t carrier = 1;
  std::vector<std::size_t> src;
  std::size_t n = 0;
  std::function<FnTable(std::span<const FnTable>)> fn;

  FnTable operator()(std::span<const FnTable> gs) const { return fn(gs); }
};

// The map induced by a term over (theta |> n).
CloneMap term_map(const FiniteModel& model, const MetaContext& theta,
                  std::size_t n, const Term& t);
// f~_ell : prod_i O(C)_{ell+m_i} -> O(C)_{ell+n}, currying the first ell
// arguments.
CloneMap tilde_lift(const CloneMap& f, std::size_t ell);

struct CoherenceResult {
  bool holds = true;
  std::uint64_t checked = 0;
};
// Exhaustively checks the square relating f~_p and f~_q through
// substitution and w.
CoherenceResult check_w_coherence(const CloneMap& f, std::size_t p,
                                  std::size_t q, const EnumOptions& opt = {});

// Component-wise action prod_i O(C)_{m_i} -> prod_q O(C)_{n_q} of a
// morphism.
std::vector<FnTable> morphism_action(const FiniteModel& model,
                                     const Morphism& f,
                                     std::span<const FnTable> gs);

// Model of tr's source: o is interpreted by tau_o in `model`.
FiniteModel precompose(const Translation& tr, const FiniteModel& model);
// Checked form: refuses a translation that is not certified equational.
FiniteModel precompose(const Translation& tr, const Presentation& src,
                       const Presentation& dst, const TranslationCerts& certs,
                       const FiniteModel& model);

// "m = [0 1], n = [1], x = 0"
std::string print_assignment(const MetaContext& theta, const VarContext& gamma,
                             const Assignment& asg);

}  // namespace soalg
