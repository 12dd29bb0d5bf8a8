#pragma once

#include <string>
#include <vector>

#include "fairpca/dataset.hpp"
#include "fairpca/types.hpp"

namespace fairpca {

struct ConstraintMatrix {
  Matrix Z;  // n x c, columns centered (column sums are 0); c == 0 when empty
  std::vector<int> omitted_attributes;  // degenerate attributes, left out
  std::vector<std::string> warnings;
};

// Build the constraint matrix for the listed protected attributes.
//
// A binary attribute contributes one centered group-indicator column; an
// attribute with g > 2 values contributes g centered one-hot columns (their
// span has dimension g-1, which is what the fitting step needs; when
// collapse_binary is false the two-column variant is emitted for g == 2 as
// well, spanning the same line). Attributes with a single present value are
// omitted with a warning. Demanding mean-match per column of Z is equivalent
// to matching every group mean against the overall mean.
ConstraintMatrix build_constraint_matrix(const Dataset& data,
                                         const std::vector<int>& attributes,
                                         bool collapse_binary = true);

}  // namespace fairpca
