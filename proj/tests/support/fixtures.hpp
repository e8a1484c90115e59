#pragma once

#include "gcm/tabular.hpp"

namespace gcm::testing {

/// The 2 x 3 worked example: rows x0 in {0, 1}, columns x1 labelled 1..3.
inline TabularFunction table1_f() {
  CategoricalDomain dom({2, 3}, {{"0", "1"}, {"1", "2", "3"}});
  return TabularFunction(dom, {-1, 5, 2, 3, -7, -4});
}

inline std::vector<double> as_vector(const TabularFunction& f) {
  return {f.values().begin(), f.values().end()};
}

}  // namespace gcm::testing
