#pragma once

// Law suites shared by the `laws` command and the acceptance runner. Each
// suite is deterministic in its seed and reports, per law, how many
// instances were checked and how many failed.

#include <cstdint>
#include <string>
#include <vector>

#include "soalg/finsem.hpp"

namespace soalg {

struct LawResult {
  std::string name;
  std::uint64_t checked = 0;
  std::uint64_t failed = 0;
  // Sample index of the first failure, when any.
  std::string first_failure;
};

struct LawSuite {
  std::string name;
  std::uint64_t samples = 0;
  std::vector<LawResult> laws;

  bool ok() const;
  LawResult& law(const std::string& name);
};

// Substitution on `samples` random terms of at most 30 nodes over contexts
// of length at most 5: preservation, unit, fusion and associativity of
// metasubstitution.
LawSuite substitution_suite(std::uint64_t seed, std::uint64_t samples);

// Category, product and exponential laws of M on `samples` random
// morphisms between objects with entries at most 3.
LawSuite category_suite(std::uint64_t seed, std::uint64_t samples);

// apply commutes with subst_vars and subst_metas on `samples` random
// (translation, term) pairs; every third translation is the builtin cps.
LawSuite compositionality_suite(std::uint64_t seed, std::uint64_t samples);

// Clone laws for every table of arity <= 2 on carriers of size <= 2, and
// w-coherence for p, q <= 1 of the maps induced by all terms of the theory
// of equality with at most `max_term` nodes over (theta |> n), theta of
// length <= 2 with arities <= 2 and n <= 2.
LawSuite clone_suite(std::size_t max_term = 3, const EnumOptions& opt = {});

}  // namespace soalg
