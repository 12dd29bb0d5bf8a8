#include "fairpca/constraint.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "fairpca/errors.hpp"

namespace fairpca {

ConstraintMatrix build_constraint_matrix(const Dataset& data,
                                         const std::vector<int>& attributes,
                                         bool collapse_binary) {
  data.validate();
  const Index n = data.size();
  if (n < 2) throw InvalidInput("build_constraint_matrix: need at least 2 points");

  ConstraintMatrix out;
  std::vector<Vector> cols;
  for (int a : attributes) {
    if (a < 0 || static_cast<size_t>(a) >= data.attributes.size())
      throw InvalidInput("build_constraint_matrix: attribute index " +
                         std::to_string(a) + " out of range");
    const auto& codes = data.attributes[static_cast<size_t>(a)];

    // Map present values to dense 0..g-1 in sorted code order.
    std::map<int, int> dense;
    for (int v : codes) dense.emplace(v, 0);
    int g = 0;
    for (auto& kv : dense) kv.second = g++;

    if (g < 2) {
      out.omitted_attributes.push_back(a);
      std::string name = static_cast<size_t>(a) < data.attribute_names.size()
                             ? data.attribute_names[static_cast<size_t>(a)]
                             : ("attribute " + std::to_string(a));
      out.warnings.push_back("constraint: " + name +
                             " has a single value, column omitted");
      continue;
    }

    if (g == 2 && collapse_binary) {
      // One indicator column; centering gives the usual two-group vector.
      Vector z(n);
      for (Index i = 0; i < n; ++i)
        z(i) = dense[codes[static_cast<size_t>(i)]] == 1 ? 1.0 : 0.0;
      z.array() -= z.mean();
      cols.push_back(std::move(z));
    } else {
      for (int gg = 0; gg < g; ++gg) {
        Vector z(n);
        for (Index i = 0; i < n; ++i)
          z(i) = dense[codes[static_cast<size_t>(i)]] == gg ? 1.0 : 0.0;
        z.array() -= z.mean();
        cols.push_back(std::move(z));
      }
    }
  }

  out.Z.resize(n, static_cast<Index>(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j) out.Z.col(static_cast<Index>(j)) = cols[j];
  return out;
}

}  // namespace fairpca
