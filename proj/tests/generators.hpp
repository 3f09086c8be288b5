// Shared random-instance generation for tests.  All draws are seeded.
#ifndef SKEWLIN_TESTS_GENERATORS_HPP
#define SKEWLIN_TESTS_GENERATORS_HPP

#include <vector>

#include "oracle.hpp"
#include "skewlin/matrix.hpp"

namespace skewlin::testing {

struct RandomModule {
  FieldPtr field;
  std::size_t n = 0;
  std::vector<Matrix> gens;
};

// F2/F3, n in [1, max_n], 1..3 generator matrices.
inline RandomModule random_module(Rng& rng, std::size_t max_n = 4) {
  RandomModule m;
  m.field = Field::make(FieldSpec::prime(rng() % 2 ? 2 : 3));
  m.n = 1 + rng() % max_n;
  std::size_t count = 1 + rng() % 3;
  for (std::size_t i = 0; i < count; ++i)
    m.gens.push_back(random_matrix(m.field, m.n, m.n, rng));
  return m;
}

}  // namespace skewlin::testing

#endif
