#pragma once

#include <vector>

namespace anitm {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

// Gauss-Legendre rule with `order` points, computed by Newton iteration on P_n.
// Rules are cached per order; the returned reference stays valid.
const GaussRule& gauss_legendre(int order);

}  // namespace anitm
