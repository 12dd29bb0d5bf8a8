#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fairpca/dataset.hpp"
#include "fairpca/types.hpp"

namespace fairpca {

// Which header columns play which role. Column names not claimed as group or
// label count as features when feature_columns is empty.
struct ColumnSpec {
  std::vector<std::string> feature_columns;
  std::vector<std::string> group_columns;
  std::optional<std::string> label_column;
};

struct LoadResult {
  Dataset data;
  std::vector<std::string> warnings;
};

// Reads a comma-separated file with a header row. The dialect is strict:
// no quoting, fields must not contain commas, surrounding blanks and a
// trailing \r are trimmed, '.' is the decimal separator. A feature column
// whose every cell parses as a number stays numeric; otherwise it is
// one-hot encoded into one 0/1 row per distinct value (sorted), named
// "col=value". Group columns map their sorted distinct tokens to codes
// 0..g-1. The label column must contain only 0 and 1. Missing listed
// columns raise SchemaError; an empty or unparsable cell raises ParseError
// naming row and column. A group column with a single value loads fine but
// is reported in warnings.
LoadResult load_csv(const std::string& path, const ColumnSpec& spec);

// Inverse of load_csv for datasets this library built: numeric features with
// 17 significant digits, group/label columns echoing their original tokens.
// load(write(load(f))) reproduces load(f) exactly.
void write_csv(const Dataset& data, const std::string& path);

// Feature-wise standardization fitted on one dataset and applied to others.
// sigma is the population standard deviation; constant features map to zero
// and are listed so callers can warn.
struct Scaler {
  Vector mean;
  Vector sigma;
  std::vector<Index> constant_features;
};

Scaler fit_scaler(const Dataset& train);
Dataset apply_scaler(const Scaler& scaler, const Dataset& data);

struct SplitResult {
  Dataset train;
  Dataset test;
  std::vector<std::string> warnings;
};

// Seeded train/test split with round(n * test_fraction) test points,
// stratified by attribute 0 when one exists: each group contributes its
// proportional share (floor + largest remainder). Groups too small to
// stratify fall back to a plain shuffled split with a warning.
SplitResult split(const Dataset& data, double test_fraction, std::uint64_t seed);

}  // namespace fairpca
