#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "corpus_instances.hpp"
#include "skewlin/errors.hpp"
#include "skewlin/schur.hpp"

using namespace skewlin;
using namespace skewlin::testing;

namespace {

FieldPtr F(std::int64_t p) { return Field::make(FieldSpec::prime(p)); }

Subspace span_e(const FieldPtr& f, std::size_t n, std::size_t i) {
  return Subspace::from_vectors(f, n, {vec_unit(f, n, i)});
}

}  // namespace

TEST_CASE("kernel_chain: pinned examples") {
  auto f2 = F(2);
  Matrix inv = Matrix::from_ints(f2, {{0, 1}, {1, 1}});
  auto kc = kernel_chain(inv);
  CHECK(kc.chain.size() == 1);
  CHECK(kc.chain[0].is_zero());
  CHECK(kc.stabilized.is_zero());

  Matrix nil = Matrix::from_ints(f2, {{0, 1}, {0, 0}});
  auto kc2 = kernel_chain(nil);
  REQUIRE(kc2.chain.size() == 2);
  CHECK(kc2.chain[0].dim() == 1);
  CHECK(kc2.chain[1].dim() == 2);
  CHECK(kc2.stabilized.is_full());

  auto f3 = F(3);
  Matrix d = Matrix::from_ints(f3, {{1, 0, 0}, {0, 0, 0}, {0, 0, 2}});
  auto kc3 = kernel_chain(d);
  REQUIRE(kc3.chain.size() == 2);
  CHECK(kc3.chain[0].dim() == 1);
  CHECK(kc3.chain[1].dim() == 1);
  CHECK(kc3.stabilized == span_e(f3, 3, 1));
}

TEST_CASE("check_domain_surjective: pinned examples") {
  auto f3 = F(3);
  ModuleInstance scal;
  scal.field = f3;
  scal.n = 2;
  scal.s_gens = {Matrix::identity(f3, 2)};
  AlgebraBasis scalars = algebra_closure(f3, 2, {}, true);
  CHECK_NOTHROW(check_domain_surjective(scal, scalars));

  auto f4i = f4_on_f2sq();
  AlgebraBasis f4alg = algebra_closure(f4i.field, 2, f4i.s_gens, true);
  CHECK_NOTHROW(check_domain_surjective(f4i, f4alg));

  Matrix nil = Matrix::from_ints(f4i.field, {{0, 1}, {0, 0}});
  AlgebraBasis with_nil =
      AlgebraBasis::make(f4i.field, 2, {Matrix::identity(f4i.field, 2), nil}, true);
  try {
    check_domain_surjective(f4i, with_nil);
    FAIL("expected a claim (i) violation");
  } catch (const HypothesisViolation& v) {
    CHECK(v.claim == "i");
    CHECK(v.witness == "[[0,1],[0,0]]");
  }
}

TEST_CASE("compute_delta: pinned examples and shortcut consistency") {
  auto f2 = F(2);
  AlgebraBasis full = centralizer_basis(f2, 2, {Matrix::identity(f2, 2)});
  auto d1 = compute_delta(full, 2);
  CHECK(d1.delta == 1);
  CHECK(d1.exact);
  CHECK(rank_of(d1.witness) == 1);

  auto f4i = f4_on_f2sq();
  AlgebraBasis f4alg = algebra_closure(f4i.field, 2, f4i.s_gens, true);
  auto d2 = compute_delta(f4alg, 2);
  CHECK(d2.delta == 2);
  // shortcut agrees with plain exhaustive enumeration
  auto d2ex = compute_delta(f4alg, 2, DeltaStrategy::Exhaustive);
  CHECK(d2ex.delta == 2);
  CHECK(d2ex.method == "exhaustive");

  auto singer = singer_f3();
  AlgebraBasis salg = algebra_closure(singer.field, 2, singer.s_gens, true);
  CHECK(compute_delta(salg, 2).delta == 2);
  CHECK(compute_delta(salg, 2, DeltaStrategy::Exhaustive).delta == 2);

  auto quat = quaternions_q4();
  AlgebraBasis qalg = algebra_closure(quat.field, 4, quat.s_gens, true);
  auto d3 = compute_delta(qalg, 4);
  CHECK(d3.delta == 4);
  CHECK(d3.method == "division_shortcut");
  CHECK(d3.exact);
}

TEST_CASE("analyze_lines: pinned examples") {
  // full Mat_2(F2): the three 1-dimensional subspaces
  auto crossed = crossed_product_f2();
  AlgebraBasis s = algebra_closure(crossed.field, 2, crossed.s_gens, true);
  AlgebraBasis t = centralizer_basis(crossed.field, 2, crossed.s_gens);
  LineData ld;
  auto delta = compute_delta(s, 2);
  ld.delta = delta.delta;
  ld.delta_witness = delta.witness;
  ld.delta_exact = true;
  ld.delta_method = delta.method;
  ld = analyze_lines(crossed, s, t, std::move(ld));
  CHECK(ld.lines.size() == 3);
  for (const auto& line : ld.lines) CHECK(line.dim() == 1);
  // transitivity witnesses indeed carry line i onto line j
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(ld.lines[i].image_under(ld.transitivity[i][j]) == ld.lines[j]);

  // F4 instance: one line, V itself
  auto f4i = f4_on_f2sq();
  AlgebraBasis s4 = algebra_closure(f4i.field, 2, f4i.s_gens, true);
  AlgebraBasis t4 = centralizer_basis(f4i.field, 2, f4i.s_gens);
  LineData ld4;
  auto delta4 = compute_delta(s4, 2);
  ld4.delta = delta4.delta;
  ld4.delta_witness = delta4.witness;
  ld4.delta_exact = true;
  ld4 = analyze_lines(f4i, s4, t4, std::move(ld4));
  CHECK(ld4.lines.size() == 1);
  CHECK(ld4.lines[0].is_full());
}

TEST_CASE("analyze_lines rejects the upper-triangular fixture at transitivity") {
  auto fix = upper_triangular_fixture();
  AlgebraBasis s = algebra_closure(fix.field, 2, fix.s_gens, true);
  AlgebraBasis t = centralizer_basis(fix.field, 2, fix.s_gens);
  LineData ld;
  auto delta = compute_delta(s, 2);
  ld.delta = delta.delta;
  ld.delta_witness = delta.witness;
  ld.delta_exact = true;
  try {
    analyze_lines(fix, s, t, std::move(ld));
    FAIL("expected a hypothesis violation");
  } catch (const HypothesisViolation& v) {
    CHECK(v.claim == "v");
  }
}

TEST_CASE("line_complement: pinned examples") {
  auto crossed = crossed_product_f2();
  AlgebraBasis s = algebra_closure(crossed.field, 2, crossed.s_gens, true);
  AlgebraBasis t = centralizer_basis(crossed.field, 2, crossed.s_gens);
  LineData ld;
  auto delta = compute_delta(s, 2);
  ld.delta = delta.delta;
  ld.delta_witness = delta.witness;
  ld.delta_exact = true;
  ld = analyze_lines(crossed, s, t, std::move(ld));

  // canonical discovery order puts span{e1} first
  REQUIRE(ld.lines[0] == span_e(crossed.field, 2, 0));
  auto [h, s1] = line_complement(0, s, ld);
  CHECK(h == span_e(crossed.field, 2, 1));
  CHECK(rank_kernel_image(s1).image == ld.lines[0]);

  // single-line case: H = 0, s1 = unit
  auto f4i = f4_on_f2sq();
  AlgebraBasis s4 = algebra_closure(f4i.field, 2, f4i.s_gens, true);
  AlgebraBasis t4 = centralizer_basis(f4i.field, 2, f4i.s_gens);
  LineData ld4;
  auto delta4 = compute_delta(s4, 2);
  ld4.delta = delta4.delta;
  ld4.delta_witness = delta4.witness;
  ld4.delta_exact = true;
  ld4 = analyze_lines(f4i, s4, t4, std::move(ld4));
  auto [h4, s14] = line_complement(0, s4, ld4);
  CHECK(h4.is_zero());
  CHECK(s14.is_identity());
}

TEST_CASE("direct_sum_decompose: pinned examples and invariants") {
  auto crossed = crossed_product_f2();
  AlgebraBasis s = algebra_closure(crossed.field, 2, crossed.s_gens, true);
  AlgebraBasis t = centralizer_basis(crossed.field, 2, crossed.s_gens);
  LineData ld;
  auto delta = compute_delta(s, 2);
  ld.delta = delta.delta;
  ld.delta_witness = delta.witness;
  ld.delta_exact = true;
  ld = analyze_lines(crossed, s, t, std::move(ld));
  Decomposition dec = direct_sum_decompose(crossed, s, t, ld);
  REQUIRE(dec.lines.size() == 2);
  CHECK(dec.lines[0] == span_e(crossed.field, 2, 0));
  CHECK(dec.lines[1] == span_e(crossed.field, 2, 1));

  Matrix sum = Matrix::zero(crossed.field, 2, 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(dec.projections[i].mul(dec.projections[i]) == dec.projections[i]);
    CHECK(s.contains(dec.projections[i]));
    sum = sum.add(dec.projections[i]);
    for (std::size_t j = 0; j < 2; ++j)
      if (i != j) CHECK(dec.projections[i].mul(dec.projections[j]).is_zero());
  }
  CHECK(sum.is_identity());

  // full Mat_3(F2): three lines, dimensions sum to 3
  auto m3 = full_mat3_f2();
  AlgebraBasis s3 = algebra_closure(m3.field, 3, m3.s_gens, true);
  AlgebraBasis t3 = centralizer_basis(m3.field, 3, m3.s_gens);
  LineData ld3;
  auto delta3 = compute_delta(s3, 3);
  CHECK(delta3.delta == 1);
  ld3.delta = delta3.delta;
  ld3.delta_witness = delta3.witness;
  ld3.delta_exact = true;
  ld3 = analyze_lines(m3, s3, t3, std::move(ld3));
  CHECK(ld3.lines.size() == 7);  // all 1-dimensional subspaces of F2^3
  Decomposition dec3 = direct_sum_decompose(m3, s3, t3, ld3);
  CHECK(dec3.lines.size() == 3);
  std::size_t total = 0;
  for (const auto& line : dec3.lines) total += line.dim();
  CHECK(total == 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j)
      CHECK(dec3.lines[i].intersect(dec3.lines[j]).is_zero());
}

TEST_CASE("local_inverse: pinned examples") {
  auto crossed = crossed_product_f2();
  AlgebraBasis s = algebra_closure(crossed.field, 2, crossed.s_gens, true);
  AlgebraBasis t = centralizer_basis(crossed.field, 2, crossed.s_gens);
  LineData ld;
  auto delta = compute_delta(s, 2);
  ld.delta = delta.delta;
  ld.delta_witness = delta.witness;
  ld.delta_exact = true;
  ld = analyze_lines(crossed, s, t, std::move(ld));

  // identity on L1 extends to the identity matrix
  Matrix id = Matrix::identity(crossed.field, 2);
  CHECK(local_inverse(id, 0, 0, crossed, s, t, ld).is_identity());

  // e1 -> e2 extends to the swap matrix
  Matrix sigma = Matrix::from_ints(crossed.field, {{0, 0}, {1, 0}});
  std::size_t i1 = 0, i2 = 1;
  REQUIRE(ld.lines[i1] == span_e(crossed.field, 2, 0));
  REQUIRE(ld.lines[i2] == span_e(crossed.field, 2, 1));
  Matrix s_inv = local_inverse(sigma, i1, i2, crossed, s, t, ld);
  CHECK(s_inv == Matrix::from_ints(crossed.field, {{0, 1}, {1, 0}}));

  // Singer instance: one line, sigma = multiplication by the generator
  auto singer = singer_f3();
  AlgebraBasis ss = algebra_closure(singer.field, 2, singer.s_gens, true);
  AlgebraBasis st = centralizer_basis(singer.field, 2, singer.s_gens);
  LineData lds;
  auto ds = compute_delta(ss, 2);
  lds.delta = ds.delta;
  lds.delta_witness = ds.witness;
  lds.delta_exact = true;
  lds = analyze_lines(singer, ss, st, std::move(lds));
  Matrix got = local_inverse(singer.s_gens[0], 0, 0, singer, ss, st, lds);
  CHECK(got == singer.s_gens[0]);
}

TEST_CASE("compress: pinned examples") {
  auto crossed = crossed_product_f2();
  AlgebraBasis s = algebra_closure(crossed.field, 2, crossed.s_gens, true);
  AlgebraBasis t = centralizer_basis(crossed.field, 2, crossed.s_gens);
  LineData ld;
  auto delta = compute_delta(s, 2);
  ld.delta = delta.delta;
  ld.delta_witness = delta.witness;
  ld.delta_exact = true;
  ld = analyze_lines(crossed, s, t, std::move(ld));
  Decomposition dec = direct_sum_decompose(crossed, s, t, ld);
  CompressedPair cp = compress(crossed, s, t, dec, 0, ld);
  CHECK(cp.s_l.dim() == 1);
  CHECK(cp.t_l.dim() == 1);

  auto f4i = f4_on_f2sq();
  AlgebraBasis s4 = algebra_closure(f4i.field, 2, f4i.s_gens, true);
  AlgebraBasis t4 = centralizer_basis(f4i.field, 2, f4i.s_gens);
  LineData ld4;
  auto d4 = compute_delta(s4, 2);
  ld4.delta = d4.delta;
  ld4.delta_witness = d4.witness;
  ld4.delta_exact = true;
  ld4 = analyze_lines(f4i, s4, t4, std::move(ld4));
  Decomposition dec4 = direct_sum_decompose(f4i, s4, t4, ld4);
  CompressedPair cp4 = compress(f4i, s4, t4, dec4, 0, ld4);
  CHECK(cp4.s_l.dim() == 2);
  CHECK(cp4.t_l.dim() == 2);
  CHECK(cp4.s_l.span_equal(cp4.t_l));
}

TEST_CASE("linearize: f4_on_f2sq") {
  auto pr = run_linearization(f4_on_f2sq());
  CHECK(pr.cert.k.dim == 2);
  CHECK(pr.cert.blocks == 1);
  CHECK(pr.cert.dim_algebra == 2);
  CHECK(pr.cert.dim_commutant == 2);
  CHECK(pr.cert.k.commutative);
  CHECK(pr.cert.delta == 2);
}

TEST_CASE("linearize: crossed_product_f2 pins the Frobenius structure") {
  auto inst = crossed_product_f2();
  auto pr = run_linearization(inst);
  CHECK(pr.cert.k.dim == 1);
  CHECK(pr.cert.blocks == 2);
  CHECK(pr.cert.dim_algebra == 4);
  CHECK(pr.cert.dim_commutant == 1);  // T is exactly the prime field
  CHECK(pr.cert.k.commutative);

  // with the canonical adapted basis (e1, e2), the images are the
  // generators themselves; in particular the Frobenius part stays
  // [[1,1],[0,1]] over K = F2
  const auto& phi_img = pr.cert.s_images[1];
  auto one = inst.field->one();
  auto zero = inst.field->zero();
  CHECK(phi_img[0][0][0] == one);
  CHECK(phi_img[0][1][0] == one);
  CHECK(phi_img[1][0][0] == zero);
  CHECK(phi_img[1][1][0] == one);
}

TEST_CASE("linearize: singer_f3 gives the 9-element commutative K") {
  auto pr = run_linearization(singer_f3());
  CHECK(pr.cert.k.dim == 2);
  CHECK(pr.cert.blocks == 1);
  CHECK(pr.cert.k.commutative);
  CHECK(*pr.t.element_count() == 9);
}

TEST_CASE("linearize: full_mat3_f2") {
  auto pr = run_linearization(full_mat3_f2());
  CHECK(pr.cert.k.dim == 1);
  CHECK(pr.cert.blocks == 3);
  CHECK(pr.cert.dim_algebra == 9);
}

TEST_CASE("linearize: quaternions_q4 over the rationals") {
  auto pr = run_linearization(quaternions_q4());
  CHECK(pr.cert.k.dim == 4);
  CHECK(pr.cert.blocks == 1);
  CHECK_FALSE(pr.cert.k.commutative);
  CHECK(pr.cert.dim_algebra == 4);
  CHECK(pr.cert.dim_commutant == 4);
}

TEST_CASE("violation fixtures carry the pinned claim tags") {
  try {
    linearize(upper_triangular_fixture());
    FAIL("expected an irreducibility violation");
  } catch (const HypothesisViolation& v) {
    CHECK(v.claim == "irreducibility");
  }
  try {
    linearize(nilpotent_T_fixture());
    FAIL("expected a claim (i) violation");
  } catch (const HypothesisViolation& v) {
    CHECK(v.claim == "i");
    CHECK(v.witness == "[[0,1],[0,0]]");
  }
}

TEST_CASE("verify_certificate: round trip and targeted mutations") {
  for (const auto& inst : theorem_corpus()) {
    CAPTURE(inst.name);
    auto cert = linearize(inst);
    CHECK(verify_certificate(inst, cert).pass);

    const FieldPtr& f = inst.field;
    auto bump = [&](const Scalar& s) { return f->add(s, f->one()); };

    LinearizationCertificate mutant = cert;
    mutant.k.constants[0][0][0] = bump(mutant.k.constants[0][0][0]);
    CHECK_FALSE(verify_certificate(inst, mutant).pass);

    mutant = cert;
    mutant.s_images[0][0][0][0] = bump(mutant.s_images[0][0][0][0]);
    CHECK_FALSE(verify_certificate(inst, mutant).pass);

    mutant = cert;
    mutant.adapted_basis.at(0, 0) = bump(mutant.adapted_basis.at(0, 0));
    CHECK_FALSE(verify_certificate(inst, mutant).pass);

    mutant = cert;
    mutant.dim_algebra += 1;
    CHECK_FALSE(verify_certificate(inst, mutant).pass);
  }
}

TEST_CASE("verify_certificate accepts block-permuted certificates") {
  auto inst = crossed_product_f2();
  auto cert = linearize(inst);
  REQUIRE(cert.blocks == 2);
  std::size_t d = cert.k.dim;

  LinearizationCertificate permuted = cert;
  // swap the two blocks of the adapted basis ...
  for (std::size_t r = 0; r < cert.n; ++r)
    for (std::size_t c = 0; c < d; ++c) {
      permuted.adapted_basis.at(r, c) = cert.adapted_basis.at(r, d + c);
      permuted.adapted_basis.at(r, d + c) = cert.adapted_basis.at(r, c);
    }
  // ... and permute every image consistently
  for (std::size_t g = 0; g < cert.s_images.size(); ++g)
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        permuted.s_images[g][i][j] = cert.s_images[g][1 - i][1 - j];
  CHECK(verify_certificate(inst, permuted).pass);
}

TEST_CASE("kernel chains of T-elements vanish on theorem instances") {
  for (const auto& inst : theorem_corpus()) {
    CAPTURE(inst.name);
    auto pr = run_linearization(inst);
    for (const auto& tb : pr.t.basis()) {
      if (tb.is_zero()) continue;
      auto kc = kernel_chain(tb);
      CHECK(kc.stabilized.is_zero());
      CHECK(kc.chain.size() <= inst.n);
    }
  }
}
