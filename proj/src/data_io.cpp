#include "fairpca/data_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "fairpca/errors.hpp"
#include "fairpca/rng.hpp"

namespace fairpca {

namespace {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && (s[a] == ' ' || s[a] == '\t')) ++a;
  while (b > a && (s[b - 1] == ' ' || s[b - 1] == '\t' || s[b - 1] == '\r')) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(trim(cur));
  return out;
}

bool parse_double(const std::string& tok, double& out) {
  if (tok.empty()) return false;
  char* end = nullptr;
  out = std::strtod(tok.c_str(), &end);
  return end == tok.c_str() + tok.size() && std::isfinite(out);
}

std::string num17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

LoadResult load_csv(const std::string& path, const ColumnSpec& spec) {
  std::ifstream in(path);
  if (!in) throw SchemaError("load_csv: cannot open " + path);

  std::string line;
  if (!std::getline(in, line)) throw SchemaError("load_csv: " + path + " is empty");
  const std::vector<std::string> header = split_fields(line);

  std::map<std::string, size_t> col_index;
  for (size_t j = 0; j < header.size(); ++j) {
    if (header[j].empty())
      throw SchemaError("load_csv: empty column name in header of " + path);
    if (!col_index.emplace(header[j], j).second)
      throw SchemaError("load_csv: duplicate column '" + header[j] + "' in " + path);
  }

  auto require = [&](const std::string& name) {
    auto it = col_index.find(name);
    if (it == col_index.end())
      throw SchemaError("load_csv: column '" + name + "' not found in " + path);
    return it->second;
  };

  std::set<size_t> group_idx, claimed;
  for (const auto& g : spec.group_columns) {
    const size_t j = require(g);
    if (!claimed.insert(j).second)
      throw SchemaError("load_csv: column '" + g + "' assigned twice");
    group_idx.insert(j);
  }
  std::optional<size_t> label_idx;
  if (spec.label_column) {
    const size_t j = require(*spec.label_column);
    if (!claimed.insert(j).second)
      throw SchemaError("load_csv: column '" + *spec.label_column + "' assigned twice");
    label_idx = j;
  }
  std::vector<size_t> feat_idx;
  if (spec.feature_columns.empty()) {
    for (size_t j = 0; j < header.size(); ++j)
      if (!claimed.count(j)) feat_idx.push_back(j);
  } else {
    for (const auto& f : spec.feature_columns) {
      const size_t j = require(f);
      if (claimed.count(j))
        throw SchemaError("load_csv: column '" + f + "' assigned twice");
      feat_idx.push_back(j);
    }
  }
  if (feat_idx.empty())
    throw SchemaError("load_csv: no feature columns left in " + path);

  // Cell grid; row numbers reported 1-based counting the header as line 1.
  std::vector<std::vector<std::string>> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    std::vector<std::string> fields = split_fields(line);
    if (fields.size() != header.size())
      throw ParseError("load_csv: " + path + ":" + std::to_string(lineno) + ": got " +
                       std::to_string(fields.size()) + " fields, expected " +
                       std::to_string(header.size()));
    rows.push_back(std::move(fields));
  }
  if (rows.empty()) throw ParseError("load_csv: " + path + " has no data rows");
  const Index n = static_cast<Index>(rows.size());

  auto cell_error = [&](size_t row, size_t col, const std::string& what) {
    return ParseError("load_csv: " + path + ":" + std::to_string(row + 2) +
                      ": column '" + header[col] + "': " + what);
  };

  LoadResult out;
  Dataset& data = out.data;

  // Feature columns: numeric if every cell parses, else one-hot per value.
  std::vector<std::vector<double>> feat_rows;
  for (size_t j : feat_idx) {
    bool numeric = true;
    std::vector<double> vals(static_cast<size_t>(n));
    for (size_t i = 0; i < rows.size(); ++i) {
      const std::string& tok = rows[i][j];
      if (tok.empty()) throw cell_error(i, j, "missing value");
      if (!parse_double(tok, vals[i])) {
        numeric = false;
        break;
      }
    }
    if (numeric) {
      feat_rows.push_back(std::move(vals));
      data.feature_names.push_back(header[j]);
    } else {
      std::set<std::string> values;
      for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i][j].empty()) throw cell_error(i, j, "missing value");
        values.insert(rows[i][j]);
      }
      for (const std::string& v : values) {
        std::vector<double> hot(static_cast<size_t>(n));
        for (size_t i = 0; i < rows.size(); ++i) hot[i] = rows[i][j] == v ? 1.0 : 0.0;
        feat_rows.push_back(std::move(hot));
        data.feature_names.push_back(header[j] + "=" + v);
      }
    }
  }
  data.X.resize(static_cast<Index>(feat_rows.size()), n);
  for (size_t r = 0; r < feat_rows.size(); ++r)
    for (Index i = 0; i < n; ++i)
      data.X(static_cast<Index>(r), i) = feat_rows[r][static_cast<size_t>(i)];

  // Group columns: sorted distinct tokens -> codes.
  for (const auto& gname : spec.group_columns) {
    const size_t j = col_index[gname];
    std::set<std::string> values;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (rows[i][j].empty()) throw cell_error(i, j, "missing value");
      values.insert(rows[i][j]);
    }
    std::map<std::string, int> code;
    std::vector<std::string> tokens;
    for (const std::string& v : values) {
      code[v] = static_cast<int>(tokens.size());
      tokens.push_back(v);
    }
    std::vector<int> codes(static_cast<size_t>(n));
    for (size_t i = 0; i < rows.size(); ++i) codes[i] = code[rows[i][j]];
    if (values.size() < 2)
      out.warnings.push_back("load_csv: group column '" + gname +
                             "' has a single value");
    data.attributes.push_back(std::move(codes));
    data.attribute_names.push_back(gname);
    data.attribute_values.push_back(std::move(tokens));
  }

  if (label_idx) {
    std::vector<int> y(static_cast<size_t>(n));
    for (size_t i = 0; i < rows.size(); ++i) {
      double v;
      if (!parse_double(rows[i][*label_idx], v) || (v != 0.0 && v != 1.0))
        throw cell_error(i, *label_idx, "label must be 0 or 1");
      y[i] = static_cast<int>(v);
    }
    data.labels = std::move(y);
    data.label_name = *spec.label_column;
  }

  data.validate();
  return out;
}

void write_csv(const Dataset& data, const std::string& path) {
  Dataset copy = data;
  ensure_names(copy);
  copy.validate();

  std::ofstream out(path);
  if (!out) throw SchemaError("write_csv: cannot open " + path + " for writing");

  std::string head;
  for (size_t r = 0; r < copy.feature_names.size(); ++r) {
    if (r) head += ',';
    head += copy.feature_names[r];
  }
  for (const auto& a : copy.attribute_names) head += "," + a;
  if (copy.labels) head += "," + copy.label_name;
  out << head << '\n';

  for (Index i = 0; i < copy.size(); ++i) {
    std::string row;
    for (Index r = 0; r < copy.X.rows(); ++r) {
      if (r) row += ',';
      row += num17(copy.X(r, i));
    }
    for (size_t a = 0; a < copy.attributes.size(); ++a) {
      const int c = copy.attributes[a][static_cast<size_t>(i)];
      row += ",";
      row += copy.attribute_values[a][static_cast<size_t>(c)];
    }
    if (copy.labels) row += "," + std::to_string((*copy.labels)[static_cast<size_t>(i)]);
    out << row << '\n';
  }
  if (!out) throw SchemaError("write_csv: write to " + path + " failed");
}

Scaler fit_scaler(const Dataset& train) {
  train.validate();
  if (train.size() < 1) throw InvalidInput("fit_scaler: empty dataset");
  Scaler s;
  s.mean = train.X.rowwise().mean();
  const Matrix centered = train.X.colwise() - s.mean;
  s.sigma = (centered.array().square().rowwise().sum() /
             static_cast<double>(train.size()))
                .sqrt();
  for (Index r = 0; r < s.sigma.size(); ++r)
    if (s.sigma(r) <= 0.0) s.constant_features.push_back(r);
  return s;
}

Dataset apply_scaler(const Scaler& scaler, const Dataset& data) {
  if (scaler.mean.size() != data.dim())
    throw DimensionError("apply_scaler: feature dimension mismatch");
  Dataset out = data;
  for (Index r = 0; r < out.X.rows(); ++r) {
    if (scaler.sigma(r) > 0.0) {
      out.X.row(r) = (data.X.row(r).array() - scaler.mean(r)) / scaler.sigma(r);
    } else {
      out.X.row(r).setZero();  // constant feature carries no information
    }
  }
  return out;
}

SplitResult split(const Dataset& data, double test_fraction, std::uint64_t seed) {
  data.validate();
  const Index n = data.size();
  if (!(test_fraction > 0.0) || !(test_fraction < 1.0))
    throw InvalidInput("split: test_fraction must lie in (0, 1)");
  const Index n_test = static_cast<Index>(
      std::llround(static_cast<double>(n) * test_fraction));
  if (n_test < 1 || n - n_test < 1)
    throw InvalidInput("split: both splits must be non-empty (n=" +
                       std::to_string(n) + ", test_fraction=" +
                       std::to_string(test_fraction) + ")");

  SplitResult out;
  Rng rng(seed);

  std::vector<Index> test_idx;
  bool stratified = false;
  if (!data.attributes.empty()) {
    // Group buckets by code order of attribute 0.
    std::map<int, std::vector<Index>> buckets;
    for (Index i = 0; i < n; ++i)
      buckets[data.attributes[0][static_cast<size_t>(i)]].push_back(i);

    // Proportional share per group, floor + largest remainder.
    std::vector<std::pair<int, std::vector<Index>>> groups(buckets.begin(),
                                                           buckets.end());
    std::vector<Index> take(groups.size());
    std::vector<double> rem(groups.size());
    Index assigned = 0;
    for (size_t g = 0; g < groups.size(); ++g) {
      const double ideal =
          static_cast<double>(groups[g].second.size()) * test_fraction;
      take[g] = static_cast<Index>(std::floor(ideal));
      rem[g] = ideal - std::floor(ideal);
      assigned += take[g];
    }
    std::vector<size_t> order(groups.size());
    for (size_t g = 0; g < order.size(); ++g) order[g] = g;
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return rem[a] > rem[b]; });
    for (size_t oi = 0; assigned < n_test && oi < order.size(); ++oi) {
      ++take[order[oi]];
      ++assigned;
    }

    bool feasible = assigned == n_test;
    for (size_t g = 0; feasible && g < groups.size(); ++g) {
      const Index cg = static_cast<Index>(groups[g].second.size());
      if (take[g] < 1 || cg - take[g] < 1) feasible = false;
    }
    if (feasible) {
      stratified = true;
      for (size_t g = 0; g < groups.size(); ++g) {
        std::vector<Index>& idx = groups[g].second;
        rng.shuffle(idx);
        for (Index t = 0; t < take[g]; ++t) test_idx.push_back(idx[static_cast<size_t>(t)]);
      }
    } else {
      out.warnings.push_back(
          "split: groups too small to stratify, falling back to a plain split");
    }
  }

  if (!stratified) {
    std::vector<Index> idx(static_cast<size_t>(n));
    for (Index i = 0; i < n; ++i) idx[static_cast<size_t>(i)] = i;
    rng.shuffle(idx);
    test_idx.assign(idx.begin(), idx.begin() + n_test);
  }

  std::sort(test_idx.begin(), test_idx.end());
  std::vector<char> in_test(static_cast<size_t>(n), 0);
  for (Index i : test_idx) in_test[static_cast<size_t>(i)] = 1;
  std::vector<Index> train_idx;
  train_idx.reserve(static_cast<size_t>(n - n_test));
  for (Index i = 0; i < n; ++i)
    if (!in_test[static_cast<size_t>(i)]) train_idx.push_back(i);

  out.test = subset(data, test_idx);
  out.train = subset(data, train_idx);
  return out;
}

}  // namespace fairpca
