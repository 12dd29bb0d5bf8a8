#include "fairpca/dataset.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "fairpca/errors.hpp"

namespace fairpca {

void Dataset::validate() const {
  const Index n = X.cols();
  if (!X.allFinite()) throw InvalidInput("dataset: non-finite feature values");
  for (size_t a = 0; a < attributes.size(); ++a) {
    if (static_cast<Index>(attributes[a].size()) != n)
      throw InvalidInput("dataset: attribute " + std::to_string(a) +
                         " has length " + std::to_string(attributes[a].size()) +
                         ", expected " + std::to_string(n));
    for (int v : attributes[a])
      if (v < 0)
        throw InvalidInput("dataset: negative group code in attribute " +
                           std::to_string(a));
  }
  if (labels) {
    if (static_cast<Index>(labels->size()) != n)
      throw InvalidInput("dataset: label length mismatch");
    for (int y : *labels)
      if (y != 0 && y != 1) throw InvalidInput("dataset: labels must be 0/1");
  }
  if (!attribute_names.empty() && attribute_names.size() != attributes.size())
    throw InvalidInput("dataset: attribute_names length mismatch");
  if (!feature_names.empty() &&
      static_cast<Index>(feature_names.size()) != X.rows())
    throw InvalidInput("dataset: feature_names length mismatch");
}

int group_count(const Dataset& data, int attribute) {
  if (attribute < 0 || static_cast<size_t>(attribute) >= data.attributes.size())
    throw InvalidInput("group_count: attribute index " +
                       std::to_string(attribute) + " out of range");
  std::set<int> seen(data.attributes[static_cast<size_t>(attribute)].begin(),
                     data.attributes[static_cast<size_t>(attribute)].end());
  return static_cast<int>(seen.size());
}

Dataset subset(const Dataset& data, const std::vector<Index>& cols) {
  Dataset out;
  out.X.resize(data.X.rows(), static_cast<Index>(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j) {
    if (cols[j] < 0 || cols[j] >= data.X.cols())
      throw InvalidInput("subset: column index out of range");
    out.X.col(static_cast<Index>(j)) = data.X.col(cols[j]);
  }
  out.attributes.resize(data.attributes.size());
  for (size_t a = 0; a < data.attributes.size(); ++a) {
    out.attributes[a].reserve(cols.size());
    for (Index c : cols) out.attributes[a].push_back(data.attributes[a][static_cast<size_t>(c)]);
  }
  if (data.labels) {
    std::vector<int> y;
    y.reserve(cols.size());
    for (Index c : cols) y.push_back((*data.labels)[static_cast<size_t>(c)]);
    out.labels = std::move(y);
  }
  out.attribute_names = data.attribute_names;
  out.attribute_values = data.attribute_values;
  out.label_name = data.label_name;
  out.feature_names = data.feature_names;
  return out;
}

void ensure_names(Dataset& data) {
  if (data.feature_names.empty()) {
    for (Index i = 0; i < data.X.rows(); ++i)
      data.feature_names.push_back("x" + std::to_string(i));
  }
  if (data.attribute_names.empty()) {
    for (size_t a = 0; a < data.attributes.size(); ++a)
      data.attribute_names.push_back("group" + std::to_string(a));
  }
  if (data.attribute_values.size() != data.attributes.size()) {
    data.attribute_values.assign(data.attributes.size(), {});
  }
  for (size_t a = 0; a < data.attributes.size(); ++a) {
    if (!data.attribute_values[a].empty()) continue;
    int gmax = -1;
    for (int v : data.attributes[a]) gmax = std::max(gmax, v);
    for (int v = 0; v <= gmax; ++v)
      data.attribute_values[a].push_back(std::to_string(v));
  }
  if (data.labels && data.label_name.empty()) data.label_name = "y";
}

}  // namespace fairpca
