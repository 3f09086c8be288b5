#ifndef SKEWLIN_COROLLARIES_HPP
#define SKEWLIN_COROLLARIES_HPP

#include <optional>

#include "skewlin/schur.hpp"

namespace skewlin {

/// One-sided form: T = C(S) is a division ring; S is replaced by C(T) and
/// the full linearisation runs on the replacement.
struct OneSidedResult {
  AlgebraBasis t;
  DivisionReport division;
  /// the instance the pipeline actually ran on (s_gens = basis of C(T))
  ModuleInstance instance_used;
  PipelineResult pipeline;
};

OneSidedResult one_sided(const ModuleInstance& m,
                         std::uint64_t seed = kDefaultSeed, int budget = 200);

/// Group form: T = C(<G>), S = C(T) >= G; the certificate additionally
/// carries every G-generator as an invertible matrix over K.
struct GroupActionResult {
  ModuleInstance instance_used;
  PipelineResult pipeline;
};

GroupActionResult group_action(const ModuleInstance& m,
                               std::uint64_t seed = kDefaultSeed,
                               int budget = 200);

/// The Nesin-Poizat pipeline: minimal R-submodule, annihilator ideal and its
/// G-conjugates, prime avoidance at |P| > 1 (reported as the connectedness
/// obstruction), Frac(R), then the global linearisation with R landing in
/// K Id and G in GL over K.
struct NPReport {
  Subspace w;                        // R-irreducible submodule
  Subspace p_ideal;                  // Ann_R(W) in R-coordinates
  std::vector<Subspace> conjugates;  // P = { h p h^-1 }
  std::vector<Matrix> conjugators;   // h per member of P
  std::vector<Matrix> avoidance;     // r_i' per ideal (|P| > 1 branch)
  std::vector<Matrix> sum_witnesses; // h_i with sum h_i W = V
  bool sum_direct = false;           // directness of sum h_i W over P
  std::optional<SkewFieldPresentation> frac;  // F = Frac(R), commutative
};

struct NPResult {
  NPReport report;
  ModuleInstance instance_used;
  PipelineResult pipeline;
};

NPResult nesin_poizat(const ModuleInstance& m,
                      std::uint64_t seed = kDefaultSeed, int budget = 200);

}  // namespace skewlin

#endif
