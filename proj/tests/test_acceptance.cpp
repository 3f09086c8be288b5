// Acceptance suite: one test case per criterion, each printing a single
// PASS/FAIL line.  Everything is exact; every tolerance is an equality.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <iostream>

#include "corpus_instances.hpp"
#include "generators.hpp"
#include "skewlin/cli.hpp"
#include "skewlin/corollaries.hpp"
#include "skewlin/errors.hpp"

using namespace skewlin;
using namespace skewlin::testing;

namespace {

void report(int criterion, bool pass, const std::string& what) {
  std::cout << "[criterion " << criterion << "] " << (pass ? "PASS" : "FAIL")
            << ": " << what << std::endl;
  CHECK(pass);
}

std::string corpus_path(const std::string& name) {
  return std::string(SKEWLIN_SOURCE_DIR) + "/corpus/" + name;
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

}  // namespace

TEST_CASE("criterion 1: Schur property on 200 random irreducible instances") {
  Timer timer;
  Rng rng(20240901);
  int found = 0;
  bool all_division = true;
  while (found < 200) {
    auto m = random_module(rng);
    if (!irreducible_test(m.field, m.n, m.gens).irreducible) continue;
    ++found;
    AlgebraBasis c = centralizer_basis(m.field, m.n, m.gens);
    DivisionReport rep = is_division_ring(c);
    if (!rep.division) all_division = false;
  }
  double elapsed = timer.seconds();
  report(1, all_division && elapsed < 20.0,
         "commutants of 200 random irreducible instances are division rings (" +
             std::to_string(elapsed) + " s)");
}

TEST_CASE("criterion 2: centralizer equals brute-force enumeration") {
  Timer timer;
  auto feasible = [](const FieldPtr& f, std::size_t n) {
    std::uint64_t q = *f->order(), total = 1;
    for (std::size_t i = 0; i < n * n; ++i) {
      total *= q;
      if (total > 65536) return false;
    }
    return true;
  };
  auto brute = [](const FieldPtr& f, std::size_t n, const std::vector<Matrix>& gens) {
    std::uint64_t q = *f->order(), total = 1;
    for (std::size_t i = 0; i < n * n; ++i) total *= q;
    RrefSpan span(f, n * n);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      Matrix x = Matrix::from_vector(f, n, n, vector_by_index(f, n * n, idx));
      bool commutes = true;
      for (const auto& g : gens)
        if (!(x.mul(g) == g.mul(x))) {
          commutes = false;
          break;
        }
      if (commutes) span.insert(x.vectorize());
    }
    return span.rows();
  };
  auto agrees = [&](const FieldPtr& f, std::size_t n, const std::vector<Matrix>& gens) {
    AlgebraBasis c = centralizer_basis(f, n, gens);
    auto rows = brute(f, n, gens);
    if (rows.size() != c.dim()) return false;
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (!(Matrix::from_vector(f, n, n, rows[i]) == c.basis()[i])) return false;
    return true;
  };

  Rng rng(20240902);
  bool all_ok = true;
  int done = 0;
  while (done < 50) {
    auto m = random_module(rng);
    if (!feasible(m.field, m.n)) continue;
    ++done;
    if (!agrees(m.field, m.n, m.gens)) all_ok = false;
  }
  for (const auto& inst :
       {f4_on_f2sq(), crossed_product_f2(), singer_f3(), full_mat3_f2(),
        upper_triangular_fixture(), nilpotent_T_fixture()}) {
    if (!feasible(inst.field, inst.n)) continue;
    if (!agrees(inst.field, inst.n, inst.s_gens)) all_ok = false;
  }
  double elapsed = timer.seconds();
  report(2, all_ok && elapsed < 10.0,
         "50 random + corpus commutants equal the brute-force oracle, "
         "RREF-canonical (" + std::to_string(elapsed) + " s)");
}

TEST_CASE("criterion 3: triple-centralizer identity on 100 random sets") {
  Rng rng(20240903);
  bool all_ok = true;
  for (int t = 0; t < 100; ++t) {
    auto m = random_module(rng);
    AlgebraBasis c1 = centralizer_basis(m.field, m.n, m.gens);
    AlgebraBasis c3 = centralizer_basis(
        m.field, m.n, centralizer_basis(m.field, m.n, c1.basis()).basis());
    if (!c1.span_equal(c3)) all_ok = false;
  }
  report(3, all_ok, "C(C(C(X))) = C(X) exactly on 100 random generator sets");
}

TEST_CASE("criterion 4: theorem dimension identities on the corpus") {
  bool ok = true;
  auto expect = [&](bool cond, const char* what) {
    if (!cond) {
      ok = false;
      MESSAGE("failed: " << what);
    }
  };

  auto f4 = run_linearization(f4_on_f2sq());
  expect(f4.cert.k.dim == 2 && f4.cert.blocks == 1 && f4.cert.dim_algebra == 2,
         "f4_on_f2sq: d=2, k=1, dim<S>=2");

  auto crossed = run_linearization(crossed_product_f2());
  expect(crossed.cert.k.dim == 1 && crossed.cert.blocks == 2 &&
             crossed.cert.dim_algebra == 4,
         "crossed_product_f2: d=1, k=2, dim<S>=4");
  expect(crossed.t.dim() == 1 && crossed.t.basis()[0].is_identity(),
         "crossed_product_f2: T is exactly the prime-field scalars");

  auto singer = run_linearization(singer_f3());
  expect(singer.cert.k.dim == 2 && singer.cert.blocks == 1 &&
             singer.cert.k.commutative && *singer.t.element_count() == 9,
         "singer_f3: d=2, k=1, commutative K with 9 elements");

  auto mat3 = run_linearization(full_mat3_f2());
  expect(mat3.cert.k.dim == 1 && mat3.cert.blocks == 3 && mat3.cert.dim_algebra == 9,
         "full_mat3_f2: d=1, k=3, dim<S>=9");

  auto quat = one_sided(quaternions_q4());
  expect(quat.t.dim() == 4 && quat.division.division && !quat.t.commutative(),
         "quaternions_q4: commutant dimension 4, division, non-commutative");

  report(4, ok, "exact integer dimension identities on all five corpus instances");
}

TEST_CASE("criterion 5: decomposition invariants on corpus theorem instances") {
  bool ok = true;
  for (const auto& inst : theorem_corpus()) {
    auto pr = run_linearization(inst);
    const auto& dec = pr.dec;
    std::size_t k = dec.projections.size();
    Matrix sum = Matrix::zero(inst.field, inst.n, inst.n);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        Matrix prod = dec.projections[i].mul(dec.projections[j]);
        if (i == j ? !(prod == dec.projections[i]) : !prod.is_zero()) ok = false;
      }
      sum = sum.add(dec.projections[i]);
      if (!pr.s_closure.contains(dec.projections[i])) ok = false;
    }
    if (!sum.is_identity()) ok = false;
    for (const auto& line : dec.lines) {
      if (line.dim() != pr.cert.delta) ok = false;
      for (const auto& tb : pr.t.basis())
        for (const auto& v : line.basis())
          if (!line.contains(tb.apply(v))) ok = false;
    }
  }
  report(5, ok,
         "projections are orthogonal idempotents summing to 1 inside <S>; "
         "lines have dimension delta and are T-invariant");
}

TEST_CASE("criterion 6: certificate round-trip and fault injection") {
  bool ok = true;
  for (const auto& inst : theorem_corpus()) {
    auto cert = linearize(inst);
    if (!verify_certificate(inst, cert).pass) {
      ok = false;
      MESSAGE("round-trip failed for " << inst.name);
      continue;
    }
    const FieldPtr& f = inst.field;
    auto bump = [&](Scalar& s) { s = f->add(s, f->one()); };
    int mutations = 0;
    auto expect_fail = [&](const LinearizationCertificate& mutant, const char* what) {
      ++mutations;
      if (verify_certificate(inst, mutant).pass) {
        ok = false;
        MESSAGE(inst.name << ": mutation survived verification: " << what);
      }
    };

    std::size_t d = cert.k.dim;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k2 = 0; k2 < d; ++k2) {
          auto mutant = cert;
          bump(mutant.k.constants[i][j][k2]);
          expect_fail(mutant, "structure constant");
        }
    for (std::size_t g = 0; g < cert.s_images.size(); ++g)
      for (std::size_t i = 0; i < cert.blocks; ++i)
        for (std::size_t j = 0; j < cert.blocks; ++j)
          for (std::size_t c = 0; c < d; ++c) {
            auto mutant = cert;
            bump(mutant.s_images[g][i][j][c]);
            expect_fail(mutant, "s generator image entry");
          }
    for (std::size_t t = 0; t < cert.t_images.size(); ++t)
      for (std::size_t c = 0; c < d; ++c) {
        auto mutant = cert;
        bump(mutant.t_images[t][c]);
        expect_fail(mutant, "t generator image entry");
      }
    for (std::size_t r = 0; r < cert.n; ++r)
      for (std::size_t c = 0; c < cert.n; ++c) {
        auto mutant = cert;
        bump(mutant.adapted_basis.at(r, c));
        expect_fail(mutant, "adapted basis entry");
      }
    for (std::size_t c = 0; c < d; ++c) {
      auto mutant = cert;
      bump(mutant.k.unit[c]);
      expect_fail(mutant, "unit coordinate");
    }
    {
      auto mutant = cert;
      mutant.delta += 1;
      expect_fail(mutant, "delta");
      mutant = cert;
      mutant.blocks += 1;
      expect_fail(mutant, "blocks");
      mutant = cert;
      mutant.dim_algebra += 1;
      expect_fail(mutant, "dim algebra");
      mutant = cert;
      mutant.dim_commutant += 1;
      expect_fail(mutant, "dim commutant");
      mutant = cert;
      mutant.field = FieldSpec::prime(5);
      expect_fail(mutant, "field spec");
      mutant = cert;
      mutant.k.commutative = !mutant.k.commutative;
      expect_fail(mutant, "commutativity flag");
    }
    if (mutations < 20) {
      ok = false;
      MESSAGE(inst.name << ": only " << mutations << " mutations exercised");
    }
  }
  report(6, ok,
         "verify passes on every emitted certificate and fails on every one of "
         ">= 20 single-slot mutations per certificate");
}

TEST_CASE("criterion 7: MeatAxe agrees with exhaustive on 200 random instances") {
  Rng rng(20240907);
  int inconclusive = 0;
  bool verdicts_agree = true;
  for (int t = 0; t < 200; ++t) {
    auto m = random_module(rng);
    auto ex = irreducible_test(m.field, m.n, m.gens, IrredStrategy::Exhaustive);
    try {
      auto mx = irreducible_test(m.field, m.n, m.gens, IrredStrategy::MeatAxe,
                                 kDefaultSeed + static_cast<std::uint64_t>(t));
      if (mx.irreducible != ex.irreducible) verdicts_agree = false;
    } catch (const InconclusiveError&) {
      ++inconclusive;
    }
  }
  report(7, verdicts_agree && inconclusive * 100 < 5 * 200,
         "verdicts coincide on 200 instances; inconclusive rate " +
             std::to_string(inconclusive) + "/200 < 5%");
}

TEST_CASE("criterion 8: Nesin-Poizat pipeline on singer_f3") {
  bool ok = true;
  auto res = nesin_poizat(singer_f3());
  ok = ok && res.report.w.is_full();              // W = V
  ok = ok && res.report.p_ideal.is_zero();        // p = 0
  ok = ok && res.report.conjugates.size() == 1;   // |P| = 1
  ok = ok && res.report.frac.has_value() && res.report.frac->commutative &&
       res.report.frac->dim == 2;                 // F = 9-element field
  // R lands in K Id: scalar images exist for every generator
  ok = ok && res.pipeline.cert.r_images.size() == 1;
  // G lands in GL_1(K): a single invertible 1x1 image
  ok = ok && res.pipeline.cert.g_images.size() == 1 &&
       res.pipeline.cert.g_images[0].size() == 1 &&
       !vec_is_zero(res.instance_used.field, res.pipeline.cert.g_images[0][0][0]);
  report(8, ok,
         "W = V, p = 0, |P| = 1, F a commutative 9-element division algebra, "
         "R scalar in K, G invertible 1x1 over K");
}

TEST_CASE("criterion 9: violation fixtures exit 2 with the pinned claim tags") {
  CliOptions opts;
  auto upper =
      run_command("linearize", {corpus_path("upper_triangular_fixture.json")}, opts);
  bool upper_ok = upper.exit_code == 2 &&
                  upper.document["claim"].get<std::string>() == "irreducibility";
  auto nil =
      run_command("linearize", {corpus_path("nilpotent_T_fixture.json")}, opts);
  bool nil_ok = nil.exit_code == 2 &&
                nil.document["claim"].get<std::string>() == "i" &&
                nil.document["witness"].get<std::string>() == "[[0,1],[0,0]]";
  report(9, upper_ok && nil_ok,
         "upper_triangular -> claim 'irreducibility', nilpotent T -> claim (i) "
         "with the non-surjective witness; both exit 2");
}

TEST_CASE("criterion 10: kernel-chain contract") {
  bool ok = true;
  for (const auto& inst : theorem_corpus()) {
    AlgebraBasis t = centralizer_basis(inst.field, inst.n, inst.s_gens);
    for (const auto& tb : t.basis()) {
      if (tb.is_zero()) continue;
      auto kc = kernel_chain(tb);
      if (!kc.stabilized.is_zero() || kc.chain.size() > inst.n) ok = false;
    }
  }
  Matrix nil = Matrix::from_ints(Field::make(FieldSpec::prime(2)), {{0, 1}, {0, 0}});
  auto kc = kernel_chain(nil);
  ok = ok && kc.chain.size() == 2 && kc.stabilized.is_full();
  report(10, ok,
         "T-element chains stabilise at 0 within n steps on theorem instances; "
         "the nilpotent fixture stabilises at V in exactly 2 steps");
}
