#pragma once

#include <memory>

#include "goppa/gf.hpp"
#include "goppa/poly.hpp"

namespace fixtures {

// GF(16) as F2[x]/(x^4+x+1)
inline std::shared_ptr<const goppa::Field> f16_a() {
  return std::make_shared<const goppa::Field>(goppa::Field::create(2, 4, {1, 1, 0, 0, 1}));
}

// GF(16) as F2[x]/(x^4+x^3+1)
inline std::shared_ptr<const goppa::Field> f16_b() {
  return std::make_shared<const goppa::Field>(goppa::Field::create(2, 4, {1, 0, 0, 1, 1}));
}

// GF(9) as F3[x]/(x^2+2x+2), i.e. x^2 = x+1
inline std::shared_ptr<const goppa::Field> gf9() {
  return std::make_shared<const goppa::Field>(goppa::Field::create(3, 2, {2, 2, 1}));
}

}  // namespace fixtures
