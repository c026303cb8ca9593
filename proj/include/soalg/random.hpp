#pragma once

// Seeded generators for property tests and the `laws` command. Output
// depends only on the seed (mt19937_64 raw output, no std distributions).

#include <cstdint>
#include <optional>
#include <random>

#include "soalg/kernel.hpp"
#include "soalg/mcat.hpp"
#include "soalg/translate.hpp"

namespace soalg {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }
  // Uniform in [0, n); n > 0.
  std::size_t below(std::size_t n);
  // Uniform in [lo, hi].
  std::size_t range(std::size_t lo, std::size_t hi) {
    return lo + below(hi - lo + 1);
  }
  bool chance(unsigned percent) { return below(100) < percent; }

 private:
  std::mt19937_64 eng_;
};

class TermGen {
 public:
  TermGen(const Signature& sig, const MetaContext& theta);

  // Random well-formed term over (theta, gamma) with at most `max_size`
  // nodes, or nothing if no such term exists.
  std::optional<Term> term(Rng& rng, std::size_t gamma, std::size_t max_size);

  // Smallest term size over a context with / without variables.
  std::size_t min_size(bool has_var) const { return min_[has_var]; }

 private:
  Term gen(Rng& rng, std::size_t gamma, std::size_t budget);
  std::size_t min_for(std::size_t gamma) const { return min_[gamma > 0]; }

  Signature sig_;
  MetaContext theta_;
  std::size_t min_[2];
};

// Signature with `ops` operators named o1.. (or a fixed set of names),
// each with up to `max_args` arguments of binder depth at most `max_depth`.
Signature random_signature(Rng& rng, std::size_t ops, std::size_t max_args,
                           std::size_t max_depth);

MetaContext random_meta_context(Rng& rng, std::size_t max_len,
                                std::size_t max_arity);

// Random bodies for `theta`, body i over (target, gamma + arity(m_i)).
std::vector<Term> random_bodies(Rng& rng, const Signature& sig,
                                const MetaContext& theta,
                                const MetaContext& target, std::size_t gamma,
                                std::size_t max_size);

SOType random_sotype(Rng& rng, std::size_t max_len, std::size_t max_entry);

// Random representative src -> dst over the theory's signature, or nothing
// when some component has no term of size <= max_size.
std::optional<Morphism> random_morphism(Rng& rng, const SOType& src,
                                        const SOType& dst, const Theory& theory,
                                        std::size_t max_size);

// Random translation src -> dst with images of at most `max_size` nodes.
std::optional<Translation> random_translation(Rng& rng, const Signature& src,
                                              const Signature& dst,
                                              std::size_t max_size);

// Random derivation of depth at most `depth` in `p` concluding over exactly
// (theta |> gamma), built from axiom instances, reflexivity, symmetry,
// transitivity and extended metasubstitution. Nothing when no term fits the
// context.
std::optional<Derivation> random_derivation(Rng& rng, const Presentation& p,
                                            const MetaContext& theta,
                                            std::size_t gamma,
                                            std::size_t depth,
                                            std::size_t max_size);

}  // namespace soalg
