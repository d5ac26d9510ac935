#pragma once

#include <vector>

namespace piltz {

/// Gauss-Legendre rule mapped to [0, 1].
struct QuadRule {
    std::vector<double> t;
    std::vector<double> w;
};

/// order 8 or 16.
const QuadRule& gauss_rule(int order);

}  // namespace piltz
