#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fairpca/types.hpp"

namespace fairpca {

// A dataset with columns as datapoints. Protected attributes are stored as
// integer codes 0..g-1 in the order of the sorted original values; the
// original value strings are kept in attribute_values so files written back
// out echo what was read in.
struct Dataset {
  Matrix X;  // d x n
  std::vector<std::vector<int>> attributes;            // each of length n
  std::vector<std::string> attribute_names;            // aligned with attributes
  std::vector<std::vector<std::string>> attribute_values;  // code -> original token
  std::optional<std::vector<int>> labels;              // binary 0/1
  std::string label_name;                              // empty when labels absent
  std::vector<std::string> feature_names;              // aligned with rows of X

  Index dim() const { return X.rows(); }
  Index size() const { return X.cols(); }

  // Structural checks: attribute/label lengths match n, codes within range,
  // labels binary, X finite. Throws InvalidInput on violation. Does not
  // require attributes to be non-degenerate; fitting surfaces that.
  void validate() const;
};

// Number of distinct attribute values actually present.
int group_count(const Dataset& data, int attribute);

// Column subset in the given order, copying attributes and labels along.
Dataset subset(const Dataset& data, const std::vector<Index>& cols);

// Fill in default names ("x0".., "group0".., value codes) where missing.
void ensure_names(Dataset& data);

}  // namespace fairpca
