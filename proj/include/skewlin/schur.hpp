#ifndef SKEWLIN_SCHUR_HPP
#define SKEWLIN_SCHUR_HPP

#include <optional>
#include <string>
#include <vector>

#include "skewlin/module.hpp"

namespace skewlin {

/// delta, the set of lines, and the per-line complement data.
struct LineData {
  std::size_t delta = 0;
  Matrix delta_witness;  // s0 with dim(s0 V) = delta
  bool delta_exact = true;
  std::string delta_method;  // "exhaustive" | "division_shortcut" | "randomized"

  std::vector<Subspace> lines;       // discovery order, canonical
  std::vector<Matrix> line_witness;  // element whose image is the line
  /// transitivity[i][j] maps line i onto line j
  std::vector<std::vector<Matrix>> transitivity;

  /// claim (ix) data, filled by line_complement: L = s1 V = s1 L, H = ker s1
  std::vector<std::optional<Matrix>> s_one;
  std::vector<std::optional<Subspace>> complement;
};

struct Decomposition {
  std::vector<std::size_t> line_index;  // indices into LineData.lines
  std::vector<Subspace> lines;          // chosen lines, in order
  std::vector<Matrix> projections;      // pi_i, one per chosen line
  Matrix change_of_basis;               // columns = concatenated line bases
};

/// K by structure constants.  constants[i][j] = coordinates of B_i B_j.
struct SkewFieldPresentation {
  FieldSpec field;
  std::size_t dim = 0;
  std::vector<std::vector<Vec>> constants;
  Vec unit;
  bool commutative = false;
};

struct CheckLogEntry {
  std::string claim;
  std::string status;  // "pass" | "waived" | "coordinatised"
};

struct LinearizationCertificate {
  FieldSpec field;
  std::size_t n = 0;
  SkewFieldPresentation k;
  std::size_t delta = 0;
  std::size_t blocks = 0;  // number of lines in the decomposition
  Matrix adapted_basis;    // n x n, invertible, columns in blocks of k.dim
  /// per S-generator: blocks x blocks matrix of K-coordinates
  std::vector<std::vector<std::vector<Vec>>> s_images;
  /// per T-generator (when the instance supplies t_gens): a K-coordinate
  std::vector<Vec> t_images;
  /// corollary extensions
  std::vector<std::vector<std::vector<Vec>>> g_images;
  std::vector<Vec> r_images;
  std::vector<CheckLogEntry> check_log;
  std::size_t dim_algebra = 0;    // blocks^2 * k.dim
  std::size_t dim_commutant = 0;  // k.dim
};

// --- pipeline stages -------------------------------------------------------

/// Claim (i): every nonzero element of T is surjective with zero kernel and
/// sampled pairs have nonzero products.  Basis elements are checked
/// exhaustively, plus 50 seeded nonzero combinations.
void check_domain_surjective(const ModuleInstance& m, const AlgebraBasis& t,
                             std::uint64_t seed = kDefaultSeed);

/// ker t <= ker t^2 <= ... until stabilisation.  The chain starts with
/// ker t and then grows strictly; the first repeated kernel is included
/// only when stabilisation is not already forced (zero or full).
struct KernelChain {
  std::vector<Subspace> chain;
  Subspace stabilized;
};
KernelChain kernel_chain(const Matrix& t);

enum class DeltaStrategy { Auto, Exhaustive, Randomized };

struct DeltaResult {
  std::size_t delta = 0;
  Matrix witness;
  bool exact = true;
  std::string method;  // "exhaustive" | "division_shortcut" | "randomized"
};

/// delta = min dim sV over nonzero s in the span.  Exhaustive needs
/// |S| <= 2^20; the division shortcut gives delta = n exactly; randomized
/// yields an upper bound flagged inexact.
DeltaResult compute_delta(const AlgebraBasis& s, std::size_t n,
                          DeltaStrategy strategy = DeltaStrategy::Auto,
                          std::uint64_t seed = kDefaultSeed, int budget = 200);

/// Claims (ii)-(v): enumerate the lines, verify T-invariance, that S-gens
/// map lines to 0 or lines, that the lines sum to V, and record a
/// transitivity witness for every ordered pair.
LineData analyze_lines(const ModuleInstance& m, const AlgebraBasis& s,
                       const AlgebraBasis& t, LineData ld);

/// Claim (ix): complement H = ker s1 with s1 = s0 s, L = s1 V = s1 L and
/// V = L (+) H exactly; claim (vi) is checked, not assumed.  Fills ld.
std::pair<Subspace, Matrix> line_complement(std::size_t line_idx,
                                            const AlgebraBasis& s, LineData& ld);

/// Claim (x): the greedy direct-sum loop; every intermediate projection and
/// every final projection must solve linear membership in <S>.
Decomposition direct_sum_decompose(const ModuleInstance& m, const AlgebraBasis& s,
                                   const AlgebraBasis& t, LineData& ld);

/// Claim (xii): an invertible element of S inducing sigma on line l1 -> l2,
/// built by the two glueing cases; the middle case is checked impossible.
Matrix local_inverse(const Matrix& sigma, std::size_t l1, std::size_t l2,
                     const ModuleInstance& m, const AlgebraBasis& s,
                     const AlgebraBasis& t, LineData& ld);

/// Claims (xiii)-(xiv): S_L = pi_L S pi_L and T_L as operators on L,
/// both division rings and mutual centralisers inside End(L).
struct CompressedPair {
  Subspace line;
  AlgebraBasis s_l;
  AlgebraBasis t_l;
};
CompressedPair compress(const ModuleInstance& m, const AlgebraBasis& s,
                        const AlgebraBasis& t, const Decomposition& dec,
                        std::size_t which, const LineData& ld);

/// Everything the corollary pipelines need besides the certificate.
struct PipelineResult {
  LinearizationCertificate cert;
  AlgebraBasis s_closure;
  AlgebraBasis t;
  LineData ld;
  Decomposition dec;
  /// base vector v_i of each block; adapted basis column i*d+m is B_m(v_i)
  std::vector<Vec> block_vectors;
};

PipelineResult run_linearization(const ModuleInstance& m,
                                 std::uint64_t seed = kDefaultSeed,
                                 int budget = 200);

LinearizationCertificate linearize(const ModuleInstance& m,
                                   std::uint64_t seed = kDefaultSeed,
                                   int budget = 200);

/// blocks x blocks K-matrix image of an element of <S> (used for G images).
std::vector<std::vector<Vec>> k_matrix_image(const PipelineResult& pr,
                                             const Matrix& g);
/// K-scalar image of an element of T (used for T and R images).
Vec k_scalar_image(const PipelineResult& pr, const Matrix& t);

struct VerificationResult {
  bool pass = true;
  std::string first_failure;
};

/// Independent re-verification of a certificate against an instance; shares
/// only the exact linear algebra layer with the emitting pipeline.
VerificationResult verify_certificate(const ModuleInstance& m,
                                      const LinearizationCertificate& cert);

SkewFieldPresentation presentation_of(const AlgebraBasis& t);

}  // namespace skewlin

#endif
