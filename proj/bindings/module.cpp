#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <variant>

#include "fairpca/data_io.hpp"
#include "fairpca/errors.hpp"
#include "fairpca/kernel.hpp"
#include "fairpca/linalg.hpp"
#include "fairpca/metrics.hpp"
#include "fairpca/mixture.hpp"
#include "fairpca/model_io.hpp"
#include "fairpca/projection.hpp"

namespace py = pybind11;
using namespace fairpca;

namespace {

KernelSpec make_spec(const std::string& kind, std::optional<double> gamma) {
  KernelSpec spec;
  if (kind == "gaussian") spec.kind = KernelSpec::Kind::gaussian;
  else if (kind == "linear") spec.kind = KernelSpec::Kind::linear;
  else throw InvalidInput("kernel kind must be 'gaussian' or 'linear'");
  spec.gamma = gamma;
  return spec;
}

py::dict report_dict(const EvalReport& r) {
  py::dict d;
  auto set = [&](const char* key, const std::optional<double>& v) {
    d[key] = v ? py::cast(*v) : py::none();
  };
  set("explained_var_fraction", r.explained_var_fraction);
  d["mmd2"] = r.mmd2;
  set("linear_insep", r.linear_insep);
  set("quadratic_insep", r.quadratic_insep);
  set("downstream_accuracy", r.downstream_accuracy);
  set("delta_dp", r.delta_dp);
  set("delta_eo", r.delta_eo);
  d["warnings"] = r.warnings;
  return d;
}

}  // namespace

PYBIND11_MODULE(_fairpca, m) {
  m.doc() = "Fair principal component analysis";

  py::register_exception<Error>(m, "FairPcaError");

  py::class_<Dataset>(m, "Dataset")
      .def(py::init([](const Matrix& X, const std::vector<std::vector<int>>& attributes,
                       std::optional<std::vector<int>> labels) {
             Dataset d;
             d.X = X;
             d.attributes = attributes;
             d.labels = std::move(labels);
             ensure_names(d);
             d.validate();
             return d;
           }),
           py::arg("X"), py::arg("attributes"), py::arg("labels") = py::none(),
           "X is d x n with datapoints as columns; attributes are integer "
           "group codes per datapoint.")
      .def_readonly("X", &Dataset::X)
      .def_readonly("attributes", &Dataset::attributes)
      .def_readonly("labels", &Dataset::labels)
      .def_property_readonly("dim", &Dataset::dim)
      .def_property_readonly("size", &Dataset::size);

  py::class_<ProjectionModel>(m, "ProjectionModel")
      .def_readonly("U", &ProjectionModel::U)
      .def_readonly("k", &ProjectionModel::k)
      .def_property_readonly("method",
                             [](const ProjectionModel& p) {
                               switch (p.method) {
                                 case Method::fair: return "fair";
                                 case Method::fair_s: return "fair_s";
                                 default: return "standard";
                               }
                             })
      .def_property_readonly("mean",
                             [](const ProjectionModel& p) -> py::object {
                               return p.train_mean ? py::cast(*p.train_mean)
                                                   : py::none();
                             })
      .def("transform",
           [](const ProjectionModel& p, const Matrix& X) { return transform(p, X); },
           py::arg("X"));

  py::class_<KernelModel>(m, "KernelModel")
      .def_readonly("k", &KernelModel::k)
      .def_readonly("coeffs", &KernelModel::coeffs)
      .def_readonly("R", &KernelModel::R)
      .def_readonly("train_embedding", &KernelModel::train_embedding)
      .def_property_readonly("gamma",
                             [](const KernelModel& km) -> py::object {
                               return km.spec.gamma ? py::cast(*km.spec.gamma)
                                                    : py::none();
                             })
      .def("transform",
           [](const KernelModel& km, const Matrix& X) { return kernel_transform(km, X); },
           py::arg("X"));

  py::class_<TradeoffModel>(m, "TradeoffModel")
      .def(py::init([](const ProjectionModel& fair, const ProjectionModel& standard,
                       double lam) {
             TradeoffModel t;
             t.fair = fair;
             t.standard = standard;
             t.lambda = lam;
             return t;
           }),
           py::arg("fair"), py::arg("standard"), py::arg("lam"))
      .def_readonly("lam", &TradeoffModel::lambda)
      .def("transform",
           [](const TradeoffModel& t, const Matrix& X) { return tradeoff_transform(t, X); },
           py::arg("X"));

  m.def("fit_standard_pca", &fit_standard_pca, py::arg("data"), py::arg("k"),
        py::arg("center") = false);
  m.def("fit_fair_pca", &fit_fair_pca, py::arg("data"), py::arg("k"),
        py::arg("attributes"), py::arg("eo_mode") = false,
        py::arg("center") = false, py::arg("eo_constraint_only") = false);
  m.def("fit_fair_pca_s", &fit_fair_pca_s, py::arg("data"), py::arg("k"),
        py::arg("attribute"), py::arg("f"), py::arg("center") = false);
  m.def("fit_fair_kernel_pca",
        [](const Dataset& data, Index k, const std::vector<int>& attributes,
           const std::string& kernel, std::optional<double> gamma, double jitter) {
          return fit_fair_kernel_pca(data, k, attributes, make_spec(kernel, gamma), jitter);
        },
        py::arg("data"), py::arg("k"), py::arg("attributes"),
        py::arg("kernel") = "gaussian", py::arg("gamma") = py::none(),
        py::arg("jitter") = 1e-5);
  m.def("default_lambda_grid", &default_lambda_grid);

  m.def("sym_eig_topk",
        [](const Matrix& A, Index k) {
          EigResult r = sym_eig_topk(A, k);
          return py::make_tuple(r.values, r.vectors);
        },
        py::arg("A"), py::arg("k"));
  m.def("nullspace_basis", &nullspace_basis, py::arg("M"),
        py::arg("rel_tol") = 1e-10);

  m.def("explained_variance", &explained_variance, py::arg("U"), py::arg("X"));
  m.def("mmd2",
        [](const Matrix& A, const Matrix& B, std::optional<double> gamma, bool biased) {
          MmdOptions opts;
          opts.gamma = gamma;
          opts.biased = biased;
          return mmd2(A, B, opts);
        },
        py::arg("A"), py::arg("B"), py::arg("gamma") = py::none(),
        py::arg("biased") = false);
  m.def("quadratic_expansion", &quadratic_expansion, py::arg("E"));

  m.def("evaluate",
        [](py::object model, const Dataset& train, const Dataset& test,
           double downstream_reg, double probe_reg, bool quadratic_probe,
           int attribute) {
          EvalOptions opts;
          opts.downstream_reg = downstream_reg;
          opts.probe_reg = probe_reg;
          opts.quadratic_probe = quadratic_probe;
          opts.attribute = attribute;
          AnyModel any = [&]() -> AnyModel {
            if (py::isinstance<ProjectionModel>(model))
              return model.cast<ProjectionModel>();
            if (py::isinstance<KernelModel>(model))
              return model.cast<KernelModel>();
            return model.cast<TradeoffModel>();
          }();
          return report_dict(evaluate(any, train, test, opts));
        },
        py::arg("model"), py::arg("train"), py::arg("test"),
        py::arg("downstream_reg") = 0.01, py::arg("probe_reg") = 0.01,
        py::arg("quadratic_probe") = false, py::arg("attribute") = 0);

  m.def("gen_mixture",
        [](Index d, Index n_per_group, std::optional<Vector> mean0,
           std::optional<Vector> mean1, std::optional<Matrix> cov0,
           std::optional<Matrix> cov1, std::uint64_t seed,
           const std::string& label_rule, std::optional<Vector> label_direction,
           double label_offset) {
          MixtureSpec spec;
          spec.d = d;
          spec.n_per_group = n_per_group;
          spec.mean0 = mean0 ? *mean0 : Vector::Zero(d).eval();
          spec.mean1 = mean1 ? *mean1 : Vector::Zero(d).eval();
          spec.cov0 = cov0 ? *cov0 : Matrix::Identity(d, d).eval();
          spec.cov1 = cov1 ? *cov1 : Matrix::Identity(d, d).eval();
          spec.seed = seed;
          if (label_rule == "none") spec.label_rule = MixtureSpec::LabelRule::none;
          else if (label_rule == "group") spec.label_rule = MixtureSpec::LabelRule::group;
          else if (label_rule == "linear") spec.label_rule = MixtureSpec::LabelRule::linear;
          else throw InvalidSpec("label_rule must be none, group or linear");
          spec.label_direction = std::move(label_direction);
          spec.label_offset = label_offset;
          return gen_mixture(spec);
        },
        py::arg("d"), py::arg("n_per_group"), py::arg("mean0") = py::none(),
        py::arg("mean1") = py::none(), py::arg("cov0") = py::none(),
        py::arg("cov1") = py::none(), py::arg("seed") = 0,
        py::arg("label_rule") = "none", py::arg("label_direction") = py::none(),
        py::arg("label_offset") = 0.0);

  m.def("split",
        [](const Dataset& data, double test_fraction, std::uint64_t seed) {
          SplitResult r = split(data, test_fraction, seed);
          return py::make_tuple(r.train, r.test, r.warnings);
        },
        py::arg("data"), py::arg("test_fraction"), py::arg("seed") = 0);

  m.def("load_csv",
        [](const std::string& path, const std::vector<std::string>& features,
           const std::vector<std::string>& groups, std::optional<std::string> label) {
          ColumnSpec spec;
          spec.feature_columns = features;
          spec.group_columns = groups;
          spec.label_column = std::move(label);
          LoadResult r = load_csv(path, spec);
          return py::make_tuple(r.data, r.warnings);
        },
        py::arg("path"), py::arg("features") = std::vector<std::string>{},
        py::arg("groups") = std::vector<std::string>{}, py::arg("label") = py::none());
  m.def("write_csv", &write_csv, py::arg("data"), py::arg("path"));

  m.def("save_model",
        [](py::object model, const std::string& path) {
          if (py::isinstance<ProjectionModel>(model))
            save_model(model.cast<ProjectionModel>(), path);
          else
            save_model(model.cast<KernelModel>(), path);
        },
        py::arg("model"), py::arg("path"));
  m.def("load_model",
        [](const std::string& path) -> py::object {
          AnyPersistedModel m2 = load_model(path);
          if (std::holds_alternative<ProjectionModel>(m2))
            return py::cast(std::get<ProjectionModel>(m2));
          return py::cast(std::get<KernelModel>(m2));
        },
        py::arg("path"));

#ifdef VERSION_INFO
  m.attr("__version__") = VERSION_INFO;
#else
  m.attr("__version__") = "dev";
#endif
}
