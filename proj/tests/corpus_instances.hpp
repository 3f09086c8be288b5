// The built-in example instances, mirrored by the JSON documents under
// corpus/.  test_cli_format checks that the two stay in sync.
#ifndef SKEWLIN_TESTS_CORPUS_INSTANCES_HPP
#define SKEWLIN_TESTS_CORPUS_INSTANCES_HPP

#include "skewlin/module.hpp"

namespace skewlin::testing {

// S = F2[A] with A the companion of x^2+x+1: S = T = F4, d = 2, k = 1.
inline ModuleInstance f4_on_f2sq() {
  ModuleInstance m;
  m.name = "f4_on_f2sq";
  m.field = Field::make(FieldSpec::prime(2));
  m.n = 2;
  m.s_gens = {Matrix::from_ints(m.field, {{0, 1}, {1, 1}})};
  return m;
}

// A plus the Frobenius over F4: the crossed product is all of Mat_2(F2),
// and only the prime field commutes.  d = 1, k = 2.
inline ModuleInstance crossed_product_f2() {
  ModuleInstance m;
  m.name = "crossed_product_f2";
  m.field = Field::make(FieldSpec::prime(2));
  m.n = 2;
  m.s_gens = {Matrix::from_ints(m.field, {{0, 1}, {1, 1}}),
              Matrix::from_ints(m.field, {{1, 1}, {0, 1}})};
  return m;
}

// Singer element of order 8 over F3 (companion of x^2+x+2): K = F9.
// Carries r_gens and g_gens for the corollary pipelines.
inline ModuleInstance singer_f3() {
  ModuleInstance m;
  m.name = "singer_f3";
  m.field = Field::make(FieldSpec::prime(3));
  m.n = 2;
  Matrix c = Matrix::from_ints(m.field, {{0, 1}, {1, 2}});
  m.s_gens = {c};
  m.r_gens = {c};
  m.g_gens = {c};
  return m;
}

// All nine matrix units: d = 1, k = 3.
inline ModuleInstance full_mat3_f2() {
  ModuleInstance m;
  m.name = "full_mat3_f2";
  m.field = Field::make(FieldSpec::prime(2));
  m.n = 3;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Matrix e = Matrix::zero(m.field, 3, 3);
      e.at(i, j) = m.field->one();
      m.s_gens.push_back(std::move(e));
    }
  return m;
}

// Hamilton quaternions acting on themselves by left multiplication;
// the commutant is the (non-commutative) right-multiplication algebra.
inline ModuleInstance quaternions_q4() {
  ModuleInstance m;
  m.name = "quaternions_q4";
  m.field = Field::make(FieldSpec::rationals());
  m.n = 4;
  m.s_gens = {Matrix::from_ints(m.field, {{0, -1, 0, 0},
                                          {1, 0, 0, 0},
                                          {0, 0, 0, -1},
                                          {0, 0, 1, 0}}),
              Matrix::from_ints(m.field, {{0, 0, -1, 0},
                                          {0, 0, 0, 1},
                                          {1, 0, 0, 0},
                                          {0, -1, 0, 0}})};
  return m;
}

// Reducible: span{e1} is invariant.  Dies at the irreducibility check.
inline ModuleInstance upper_triangular_fixture() {
  ModuleInstance m;
  m.name = "upper_triangular_fixture";
  m.field = Field::make(FieldSpec::prime(2));
  m.n = 2;
  m.s_gens = {Matrix::from_ints(m.field, {{1, 0}, {0, 0}}),
              Matrix::from_ints(m.field, {{0, 1}, {0, 0}}),
              Matrix::from_ints(m.field, {{0, 0}, {0, 1}})};
  return m;
}

// Irreducible S, but the supplied T contains a nilpotent: dies at claim (i)
// with the non-surjective witness.
inline ModuleInstance nilpotent_T_fixture() {
  ModuleInstance m;
  m.name = "nilpotent_T_fixture";
  m.field = Field::make(FieldSpec::prime(2));
  m.n = 2;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Matrix e = Matrix::zero(m.field, 2, 2);
      e.at(i, j) = m.field->one();
      m.s_gens.push_back(std::move(e));
    }
  m.t_gens = {Matrix::from_ints(m.field, {{0, 1}, {0, 0}})};
  return m;
}

inline std::vector<ModuleInstance> theorem_corpus() {
  return {f4_on_f2sq(), crossed_product_f2(), singer_f3(), full_mat3_f2(),
          quaternions_q4()};
}

}  // namespace skewlin::testing

#endif
