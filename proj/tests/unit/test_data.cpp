#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "fairpca/data_io.hpp"
#include "fairpca/errors.hpp"
#include "fairpca/mixture.hpp"
#include "fairpca/rng.hpp"
#include "helpers.hpp"

using namespace fairpca;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path("/tmp/fairpca_test_" + name) {}
  ~TempFile() { std::remove(path.c_str()); }
  void write(const std::string& content) {
    std::ofstream out(path);
    out << content;
  }
};

}  // namespace

TEST_CASE("rng streams are reproducible and box-muller moments are sane") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  Rng g(7);
  double sum = 0.0, sq = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double v = g.gauss();
    sum += v;
    sq += v * v;
  }
  CHECK(std::abs(sum / n) < 0.03);
  CHECK(std::abs(sq / n - 1.0) < 0.05);
}

TEST_CASE("gen_mixture shapes, group layout and determinism") {
  MixtureSpec spec = equal_covariance_spec(50, 11);
  const Dataset a = gen_mixture(spec);
  const Dataset b = gen_mixture(spec);
  CHECK(a.dim() == 10);
  CHECK(a.size() == 100);
  CHECK((a.X.array() == b.X.array()).all());
  for (Index i = 0; i < 50; ++i) CHECK(a.attributes[0][static_cast<size_t>(i)] == 0);
  for (Index i = 50; i < 100; ++i) CHECK(a.attributes[0][static_cast<size_t>(i)] == 1);

  spec.seed = 12;
  const Dataset c = gen_mixture(spec);
  CHECK_FALSE((a.X.array() == c.X.array()).all());
}

TEST_CASE("gen_mixture sample moments approach the requested gaussians") {
  MixtureSpec spec;
  spec.d = 5;
  spec.n_per_group = 10000;
  spec.seed = 21;
  spec.mean0 = Vector::Zero(5);
  spec.mean1 = Vector::Constant(5, 1.0);
  Matrix cov = Matrix::Identity(5, 5);
  cov(0, 1) = cov(1, 0) = 0.3;
  spec.cov0 = cov;
  spec.cov1 = 2.0 * Matrix::Identity(5, 5);
  const Dataset d = gen_mixture(spec);

  const double bound = 5.0 / std::sqrt(static_cast<double>(spec.n_per_group));
  for (int g = 0; g < 2; ++g) {
    const Matrix Xg = g == 0 ? d.X.leftCols(10000) : d.X.rightCols(10000);
    const Vector mu = Xg.rowwise().mean();
    const Matrix C = ((Xg.colwise() - mu) * (Xg.colwise() - mu).transpose()) / 10000.0;
    const Matrix target = g == 0 ? spec.cov0 : spec.cov1;
    const Vector mean_target = g == 0 ? spec.mean0 : spec.mean1;
    CHECK((mu - mean_target).cwiseAbs().maxCoeff() < bound);
    CHECK((C - target).cwiseAbs().maxCoeff() < bound);
  }
}

TEST_CASE("gen_mixture label rules") {
  MixtureSpec spec = equal_covariance_spec(30, 31);
  spec.label_rule = MixtureSpec::LabelRule::group;
  const Dataset d = gen_mixture(spec);
  REQUIRE(d.labels.has_value());
  for (Index i = 0; i < d.size(); ++i)
    CHECK((*d.labels)[static_cast<size_t>(i)] == d.attributes[0][static_cast<size_t>(i)]);

  spec.label_rule = MixtureSpec::LabelRule::linear;
  spec.label_direction = Vector::Unit(10, 0);
  spec.label_offset = -1.0;
  const Dataset dl = gen_mixture(spec);
  for (Index i = 0; i < dl.size(); ++i) {
    const int expect = dl.X(0, i) - 1.0 > 0.0 ? 1 : 0;
    CHECK((*dl.labels)[static_cast<size_t>(i)] == expect);
  }
}

TEST_CASE("gen_mixture rejects inconsistent specs") {
  MixtureSpec spec = equal_covariance_spec(10, 1);
  spec.mean0 = Vector::Zero(3);
  CHECK_THROWS_AS(gen_mixture(spec), InvalidSpec);
  spec = equal_covariance_spec(10, 1);
  spec.cov0 = -Matrix::Identity(10, 10);
  CHECK_THROWS_AS(gen_mixture(spec), InvalidSpec);
}

TEST_CASE("split is stratified, seeded and exact in size") {
  const Dataset d = gen_mixture(equal_covariance_spec(100, 41));
  const SplitResult sp = split(d, 0.3, 5);
  CHECK(sp.test.size() == 60);
  CHECK(sp.train.size() == 140);
  CHECK(sp.warnings.empty());

  auto count1 = [](const Dataset& ds) {
    int c = 0;
    for (int v : ds.attributes[0]) c += v;
    return c;
  };
  // 100 per group, 30% test: exactly 30 of each group in the test split.
  CHECK(count1(sp.test) == 30);
  CHECK(count1(sp.train) == 70);

  const SplitResult again = split(d, 0.3, 5);
  CHECK((again.test.X.array() == sp.test.X.array()).all());
  const SplitResult other = split(d, 0.3, 6);
  CHECK_FALSE((other.test.X.array() == sp.test.X.array()).all());
}

TEST_CASE("split falls back when a group cannot be stratified") {
  Dataset d;
  d.X = testutil::random_matrix(2, 10, 51);
  d.attributes.push_back({0, 0, 0, 0, 0, 0, 0, 0, 0, 1});  // singleton group
  ensure_names(d);
  const SplitResult sp = split(d, 0.2, 3);
  CHECK(sp.test.size() == 2);
  CHECK(sp.warnings.size() == 1);
}

TEST_CASE("split validates the fraction") {
  const Dataset d = gen_mixture(equal_covariance_spec(10, 61));
  CHECK_THROWS_AS(split(d, 0.0, 1), InvalidInput);
  CHECK_THROWS_AS(split(d, 1.0, 1), InvalidInput);
  CHECK_THROWS_AS(split(d, 0.01, 1), InvalidInput);  // rounds to zero test points
}

TEST_CASE("scaler standardizes train features and reuses train moments") {
  const Dataset train = gen_mixture(equal_covariance_spec(200, 71));
  Dataset test = gen_mixture(equal_covariance_spec(50, 72));
  const Scaler sc = fit_scaler(train);
  const Dataset strain = apply_scaler(sc, train);
  for (Index r = 0; r < strain.X.rows(); ++r) {
    CHECK(std::abs(strain.X.row(r).mean()) < 1e-10);
    const double var = strain.X.row(r).squaredNorm() / static_cast<double>(strain.size()) -
                       std::pow(strain.X.row(r).mean(), 2);
    CHECK(var == doctest::Approx(1.0).epsilon(1e-8));
  }
  // Test data uses the train moments, so its mean is near but not exactly 0.
  const Dataset stest = apply_scaler(sc, test);
  CHECK(stest.X.row(0).mean() != 0.0);
  CHECK(std::abs(stest.X.row(0).mean()) < 0.5);
}

TEST_CASE("scaler maps constant features to zero") {
  Dataset d;
  d.X = testutil::random_matrix(3, 8, 81);
  d.X.row(1).setConstant(4.2);
  d.attributes.push_back(std::vector<int>(8, 0));
  ensure_names(d);
  const Scaler sc = fit_scaler(d);
  REQUIRE(sc.constant_features.size() == 1);
  CHECK(sc.constant_features[0] == 1);
  const Dataset s = apply_scaler(sc, d);
  CHECK(s.X.row(1).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("csv load with numeric, categorical, group and label columns") {
  TempFile f("basic.csv");
  f.write(
      "age,city,income,sex,hired\n"
      "30,oslo,10.5,m,1\n"
      "40,bergen,20.25,f,0\n"
      "50,oslo,30.125,f,1\n");
  ColumnSpec spec;
  spec.group_columns = {"sex"};
  spec.label_column = "hired";
  const LoadResult r = load_csv(f.path, spec);
  const Dataset& d = r.data;

  // Features: age, city one-hot (bergen, oslo sorted), income.
  REQUIRE(d.dim() == 4);
  CHECK(d.feature_names[0] == "age");
  CHECK(d.feature_names[1] == "city=bergen");
  CHECK(d.feature_names[2] == "city=oslo");
  CHECK(d.feature_names[3] == "income");
  CHECK(d.X(0, 0) == 30.0);
  CHECK(d.X(1, 0) == 0.0);
  CHECK(d.X(2, 0) == 1.0);
  CHECK(d.X(3, 2) == 30.125);

  // Groups: f -> 0, m -> 1 (sorted tokens).
  REQUIRE(d.attributes.size() == 1);
  CHECK(d.attributes[0][0] == 1);
  CHECK(d.attributes[0][1] == 0);
  CHECK(d.attribute_values[0][0] == "f");
  CHECK(d.attribute_values[0][1] == "m");

  REQUIRE(d.labels.has_value());
  CHECK((*d.labels)[0] == 1);
  CHECK((*d.labels)[1] == 0);
}

TEST_CASE("csv load errors carry row and column information") {
  TempFile f("bad.csv");
  f.write("a,b,g\n1,2,x\n3,oops,y\n");
  ColumnSpec spec;
  spec.group_columns = {"g"};
  // Column b turns categorical because of "oops": that is not an error.
  CHECK_NOTHROW(load_csv(f.path, spec));

  TempFile g("missing.csv");
  g.write("a,b,g\n1,2,x\n3,,y\n");
  try {
    load_csv(g.path, spec);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    const std::string msg = e.what();
    CHECK(msg.find(":3:") != std::string::npos);
    CHECK(msg.find("'b'") != std::string::npos);
  }

  TempFile h("ragged.csv");
  h.write("a,b,g\n1,2\n");
  CHECK_THROWS_AS(load_csv(h.path, spec), ParseError);

  TempFile l("badlabel.csv");
  l.write("a,g,y\n1,x,2\n2,y,0\n");
  ColumnSpec lspec;
  lspec.group_columns = {"g"};
  lspec.label_column = "y";
  CHECK_THROWS_AS(load_csv(l.path, lspec), ParseError);
}

TEST_CASE("csv load schema errors") {
  TempFile f("schema.csv");
  f.write("a,b\n1,2\n");
  ColumnSpec spec;
  spec.group_columns = {"nope"};
  CHECK_THROWS_AS(load_csv(f.path, spec), SchemaError);
  CHECK_THROWS_AS(load_csv("/tmp/fairpca_does_not_exist.csv", ColumnSpec{}),
                  SchemaError);

  TempFile dup("dup.csv");
  dup.write("a,a\n1,2\n");
  CHECK_THROWS_AS(load_csv(dup.path, ColumnSpec{}), SchemaError);
}

TEST_CASE("csv single-value group column loads with a warning") {
  TempFile f("onegroup.csv");
  f.write("a,g\n1,x\n2,x\n");
  ColumnSpec spec;
  spec.group_columns = {"g"};
  const LoadResult r = load_csv(f.path, spec);
  CHECK(r.warnings.size() == 1);
  CHECK(group_count(r.data, 0) == 1);
}

TEST_CASE("csv write then load round-trips the dataset exactly") {
  MixtureSpec mspec = covariance_gap_spec(40, 91);
  mspec.label_rule = MixtureSpec::LabelRule::linear;
  const Dataset d = gen_mixture(mspec);

  TempFile f("roundtrip.csv");
  write_csv(d, f.path);

  ColumnSpec spec;
  spec.group_columns = {"group"};
  spec.label_column = "y";
  const LoadResult r = load_csv(f.path, spec);
  CHECK((r.data.X.array() == d.X.array()).all());
  CHECK(r.data.attributes[0] == d.attributes[0]);
  CHECK(*r.data.labels == *d.labels);
  CHECK(r.data.feature_names == d.feature_names);

  // Second generation: write the loaded dataset again, loads identically.
  TempFile f2("roundtrip2.csv");
  write_csv(r.data, f2.path);
  const LoadResult r2 = load_csv(f2.path, spec);
  CHECK((r2.data.X.array() == r.data.X.array()).all());
}
