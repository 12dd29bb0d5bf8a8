#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>
#include <variant>

#include "fairpca/errors.hpp"
#include "fairpca/mixture.hpp"
#include "fairpca/model_io.hpp"
#include "helpers.hpp"

using namespace fairpca;
using testutil::random_dataset;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path("/tmp/fairpca_model_" + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("projection model round-trips bitwise") {
  const Dataset d = random_dataset(6, 30, 2, 141);
  const ProjectionModel m = fit_fair_pca(d, 2, {0}, false, true);
  TempFile f("proj.txt");
  save_model(m, f.path);

  const AnyPersistedModel loaded = load_model(f.path);
  REQUIRE(std::holds_alternative<ProjectionModel>(loaded));
  const ProjectionModel& r = std::get<ProjectionModel>(loaded);
  CHECK(r.method == Method::fair);
  CHECK(r.k == 2);
  CHECK(r.options.center);
  CHECK(r.options.attributes == std::vector<int>{0});
  CHECK((r.U.array() == m.U.array()).all());
  REQUIRE(r.train_mean.has_value());
  CHECK((r.train_mean->array() == m.train_mean->array()).all());

  // Transform through the reloaded model is bit-identical.
  const Matrix e1 = transform(m, d.X);
  const Matrix e2 = transform(r, d.X);
  CHECK((e1.array() == e2.array()).all());
}

TEST_CASE("fair_s model keeps its fraction and l") {
  const Dataset d = random_dataset(8, 40, 2, 142);
  const ProjectionModel m = fit_fair_pca_s(d, 2, 0, 0.5);
  TempFile f("fairs.txt");
  save_model(m, f.path);
  const ProjectionModel& r = std::get<ProjectionModel>(load_model(f.path));
  CHECK(r.method == Method::fair_s);
  CHECK(r.options.fair_s_fraction == 0.5);
  CHECK(r.options.fair_s_l == m.options.fair_s_l);
}

TEST_CASE("kernel model round-trips and re-embeds identically") {
  const Dataset d = random_dataset(4, 25, 2, 143);
  const KernelModel m = fit_fair_kernel_pca(d, 3, {0});
  TempFile f("kernel.txt");
  save_model(m, f.path);

  const AnyPersistedModel loaded = load_model(f.path);
  REQUIRE(std::holds_alternative<KernelModel>(loaded));
  const KernelModel& r = std::get<KernelModel>(loaded);
  CHECK(r.k == 3);
  CHECK(r.jitter == m.jitter);
  CHECK(*r.spec.gamma == *m.spec.gamma);
  CHECK((r.coeffs.array() == m.coeffs.array()).all());
  CHECK((r.R.array() == m.R.array()).all());
  CHECK((r.train_X.array() == m.train_X.array()).all());
  CHECK((r.train_embedding.array() == m.train_embedding.array()).all());

  const Matrix probe = testutil::random_matrix(4, 7, 144);
  CHECK((kernel_transform(m, probe).array() == kernel_transform(r, probe).array()).all());
}

TEST_CASE("linear kernel model omits gamma") {
  const Dataset d = random_dataset(5, 20, 2, 145);
  KernelSpec spec;
  spec.kind = KernelSpec::Kind::linear;
  const KernelModel m = fit_fair_kernel_pca(d, 2, {0}, spec);
  TempFile f("linker.txt");
  save_model(m, f.path);
  const KernelModel& r = std::get<KernelModel>(load_model(f.path));
  CHECK(r.spec.kind == KernelSpec::Kind::linear);
  CHECK_FALSE(r.spec.gamma.has_value());
}

TEST_CASE("load_model rejects foreign and damaged files") {
  TempFile f("junk.txt");
  {
    std::ofstream out(f.path);
    out << "not a model\n";
  }
  CHECK_THROWS_AS(load_model(f.path), SchemaError);

  TempFile g("truncated.txt");
  {
    std::ofstream out(g.path);
    out << "fairpca-model v1\ntype projection\nmethod fair\nd 3\nk 1\n";
  }
  CHECK_THROWS_AS(load_model(g.path), SchemaError);

  TempFile h("badnum.txt");
  {
    std::ofstream out(h.path);
    out << "fairpca-model v1\ntype projection\nmethod fair\nd 1\nk 1\n"
        << "center 0\neo 0\neo_constraint_only 0\nattributes 1 0\n"
        << "U 1 1\nnotanumber\nend\n";
  }
  CHECK_THROWS_AS(load_model(h.path), ParseError);

  CHECK_THROWS_AS(load_model("/tmp/fairpca_model_nonexistent.txt"), SchemaError);
}

TEST_CASE("shape mismatches inside the file are schema errors") {
  const Dataset d = random_dataset(3, 12, 2, 146);
  const ProjectionModel m = fit_fair_pca(d, 1, {0});
  TempFile f("shape.txt");
  save_model(m, f.path);

  // Corrupt the declared k.
  std::ifstream in(f.path);
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  in.close();
  const size_t pos = content.find("k 1");
  REQUIRE(pos != std::string::npos);
  content.replace(pos, 3, "k 2");
  std::ofstream out(f.path);
  out << content;
  out.close();
  CHECK_THROWS_AS(load_model(f.path), SchemaError);
}
