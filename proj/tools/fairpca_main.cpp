// Command-line front end: fit / transform / eval / sweep / synth.
//
// Exit codes: 0 success, 2 configuration problem (bad flags, invalid k),
// 3 data problem (missing files, schema or parse failures, degenerate
// attributes), 4 numerical failure.

#include <CLI11.hpp>
#include <Eigen/Core>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "fairpca/data_io.hpp"
#include "fairpca/errors.hpp"
#include "fairpca/kernel.hpp"
#include "fairpca/metrics.hpp"
#include "fairpca/mixture.hpp"
#include "fairpca/model_io.hpp"
#include "fairpca/projection.hpp"

using namespace fairpca;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitNumeric = 4;

struct CliError {
  int code;
  std::string message;
};

[[noreturn]] void fail(int code, const std::string& message) {
  throw CliError{code, message};
}

// Library exceptions raised while reading or writing files.
template <typename F>
auto data_phase(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const NumericalError& e) {
    fail(kExitNumeric, e.what());
  } catch (const Error& e) {
    fail(kExitData, e.what());
  }
}

// Library exceptions raised while fitting: bad k or bad parameters are a
// configuration problem, degenerate data is a data problem.
template <typename F>
auto fit_phase(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const DegenerateAttribute& e) {
    fail(kExitData, e.what());
  } catch (const DegenerateInput& e) {
    fail(kExitData, e.what());
  } catch (const NumericalError& e) {
    fail(kExitNumeric, e.what());
  } catch (const DimensionError& e) {
    fail(kExitConfig, e.what());
  } catch (const Error& e) {
    fail(kExitData, e.what());
  }
}

std::string fmt(double v, const char* spec = "%.12g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

// ---------------------------------------------------------------------------
// Shared fit configuration

struct FitFlags {
  std::string method = "fair";
  Index k = 2;
  std::vector<std::string> groups;
  std::string label;
  std::vector<std::string> features;
  bool eo = false;
  bool eo_constraint_only = false;
  bool center = false;
  double f = 1.0;
  std::string kernel = "gaussian";
  double gamma = 0.0;
  double jitter = 1e-5;
};

void add_fit_flags(CLI::App* cmd, FitFlags& ff, bool* f_set, bool* gamma_set,
                   bool* kernel_set, bool* jitter_set) {
  cmd->add_option("-m,--method", ff.method, "pca, fair, fair-s or fair-kernel")
      ->check(CLI::IsMember({"pca", "fair", "fair-s", "fair-kernel"}));
  cmd->add_option("-k,--k", ff.k, "embedding dimension")->required();
  cmd->add_option("-g,--group", ff.groups, "protected attribute column (repeatable)")
      ->delimiter(',');
  cmd->add_option("-y,--label", ff.label, "binary label column");
  cmd->add_option("--features", ff.features, "feature columns (default: all remaining)")
      ->delimiter(',');
  cmd->add_flag("--eo", ff.eo, "equalize opportunity: constrain label-1 points only");
  cmd->add_flag("--eo-constraint-only", ff.eo_constraint_only,
                "with --eo, keep the variance objective on all points");
  cmd->add_flag("--center", ff.center, "subtract the training mean");
  cmd->add_option("-f,--fraction", ff.f,
                  "fair-s: fraction of directions kept after covariance alignment")
      ->each([f_set](const std::string&) { *f_set = true; });
  cmd->add_option("--kernel", ff.kernel, "fair-kernel: gaussian or linear")
      ->check(CLI::IsMember({"gaussian", "linear"}))
      ->each([kernel_set](const std::string&) { *kernel_set = true; });
  cmd->add_option("--gamma", ff.gamma,
                  "fair-kernel: gaussian bandwidth (default: 1/(d*Var(X)))")
      ->each([gamma_set](const std::string&) { *gamma_set = true; });
  cmd->add_option("--jitter", ff.jitter, "fair-kernel: diagonal shift, default 1e-5")
      ->each([jitter_set](const std::string&) { *jitter_set = true; });
}

void check_fit_flags(const FitFlags& ff, bool f_set, bool gamma_set,
                     bool kernel_set, bool jitter_set) {
  const bool kernel_method = ff.method == "fair-kernel";
  if (ff.method != "pca" && ff.groups.empty())
    fail(kExitConfig, "method '" + ff.method + "' needs at least one --group");
  if (f_set && ff.method != "fair-s")
    fail(kExitConfig, "--fraction only applies to --method fair-s");
  if ((gamma_set || kernel_set || jitter_set) && !kernel_method)
    fail(kExitConfig, "--kernel/--gamma/--jitter only apply to --method fair-kernel");
  if (ff.method == "fair-s" && ff.groups.size() != 1)
    fail(kExitConfig, "--method fair-s takes exactly one --group");
  if (ff.eo && ff.method != "fair")
    fail(kExitConfig, "--eo only applies to --method fair");
  if (ff.eo && ff.label.empty()) fail(kExitConfig, "--eo needs a --label column");
  if (ff.eo_constraint_only && !ff.eo)
    fail(kExitConfig, "--eo-constraint-only needs --eo");
  if (f_set && !(ff.f > 0.0 && ff.f <= 1.0))
    fail(kExitConfig, "--fraction must lie in (0, 1]");
  if (ff.k < 1) fail(kExitConfig, "--k must be >= 1");
}

Dataset load_dataset(const std::string& path, const FitFlags& ff,
                     std::vector<std::string>* warnings = nullptr) {
  ColumnSpec spec;
  spec.feature_columns = ff.features;
  spec.group_columns = ff.groups;
  if (!ff.label.empty()) spec.label_column = ff.label;
  LoadResult r = data_phase([&] { return load_csv(path, spec); });
  for (const auto& w : r.warnings) {
    if (warnings) warnings->push_back(w);
    std::cerr << "warning: " << w << "\n";
  }
  return std::move(r.data);
}

std::vector<int> attribute_indices(const FitFlags& ff) {
  std::vector<int> idx;
  for (size_t i = 0; i < ff.groups.size(); ++i) idx.push_back(static_cast<int>(i));
  return idx;
}

KernelSpec kernel_spec(const FitFlags& ff, bool gamma_set) {
  KernelSpec spec;
  spec.kind = ff.kernel == "linear" ? KernelSpec::Kind::linear
                                    : KernelSpec::Kind::gaussian;
  if (gamma_set) spec.gamma = ff.gamma;
  return spec;
}

AnyPersistedModel fit_by_method(const FitFlags& ff, bool gamma_set,
                                const Dataset& data) {
  return fit_phase([&]() -> AnyPersistedModel {
    if (ff.method == "pca") return fit_standard_pca(data, ff.k, ff.center);
    if (ff.method == "fair")
      return fit_fair_pca(data, ff.k, attribute_indices(ff), ff.eo, ff.center,
                          ff.eo_constraint_only);
    if (ff.method == "fair-s")
      return fit_fair_pca_s(data, ff.k, 0, ff.f, ff.center);
    return fit_fair_kernel_pca(data, ff.k, attribute_indices(ff),
                               kernel_spec(ff, gamma_set), ff.jitter);
  });
}

// ---------------------------------------------------------------------------
// fit

struct FitCmd {
  FitFlags flags;
  bool f_set = false, gamma_set = false, kernel_set = false, jitter_set = false;
  std::string data_path;
  std::string out_path;
};

int cmd_fit(const FitCmd& cfg) {
  check_fit_flags(cfg.flags, cfg.f_set, cfg.gamma_set, cfg.kernel_set, cfg.jitter_set);
  const Dataset data = load_dataset(cfg.data_path, cfg.flags);
  const AnyPersistedModel model = fit_by_method(cfg.flags, cfg.gamma_set, data);
  data_phase([&] { save_model(model, cfg.out_path); });
  std::cerr << "fitted " << cfg.flags.method << " model (k=" << cfg.flags.k
            << ") on " << data.size() << " points, wrote " << cfg.out_path << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// transform

struct TransformCmd {
  std::string model_path;
  std::string std_model_path;
  double lambda = 0.0;
  bool lambda_set = false;
  std::vector<std::string> groups;
  std::string label;
  std::vector<std::string> features;
  std::string data_path;
  std::string out_path;
};

int cmd_transform(const TransformCmd& cfg) {
  if (cfg.lambda_set != !cfg.std_model_path.empty())
    fail(kExitConfig, "--lambda and --std-model go together");
  if (cfg.lambda_set && cfg.lambda < 0.0)
    fail(kExitConfig, "--lambda must be >= 0");

  const AnyPersistedModel model = data_phase([&] { return load_model(cfg.model_path); });

  FitFlags ff;
  ff.groups = cfg.groups;
  ff.label = cfg.label;
  ff.features = cfg.features;
  const Dataset data = load_dataset(cfg.data_path, ff);

  Matrix emb = data_phase([&]() -> Matrix {
    if (cfg.lambda_set) {
      if (!std::holds_alternative<ProjectionModel>(model))
        fail(kExitConfig, "--lambda requires plain projection models");
      const AnyPersistedModel second =
          data_phase([&] { return load_model(cfg.std_model_path); });
      if (!std::holds_alternative<ProjectionModel>(second))
        fail(kExitConfig, "--std-model must be a plain projection model");
      TradeoffModel t;
      t.fair = std::get<ProjectionModel>(model);
      t.standard = std::get<ProjectionModel>(second);
      t.lambda = cfg.lambda;
      return tradeoff_transform(t, data.X);
    }
    if (std::holds_alternative<ProjectionModel>(model))
      return transform(std::get<ProjectionModel>(model), data.X);
    return kernel_transform(std::get<KernelModel>(model), data.X);
  });

  Dataset out;
  out.X = std::move(emb);
  for (Index r = 0; r < out.X.rows(); ++r)
    out.feature_names.push_back("e" + std::to_string(r));
  out.attributes = data.attributes;
  out.attribute_names = data.attribute_names;
  out.attribute_values = data.attribute_values;
  out.labels = data.labels;
  out.label_name = data.label_name;
  data_phase([&] { write_csv(out, cfg.out_path); });
  std::cerr << "embedded " << data.size() << " points into " << out.X.rows()
            << " dimensions, wrote " << cfg.out_path << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// eval

struct EvalCmd {
  FitFlags flags;
  bool f_set = false, gamma_set = false, kernel_set = false, jitter_set = false;
  std::vector<std::uint64_t> seeds{1};
  double test_fraction = 0.3;
  bool standardize = false;
  double downstream_reg = 0.01;
  double probe_reg = 0.01;
  bool quadratic_probe = false;
  std::string mmd_gamma = "median";
  std::string data_path;
  std::string out_path;
};

EvalOptions eval_options(const EvalCmd& cfg) {
  EvalOptions opts;
  opts.downstream_reg = cfg.downstream_reg;
  opts.probe_reg = cfg.probe_reg;
  opts.quadratic_probe = cfg.quadratic_probe;
  if (cfg.mmd_gamma != "median") {
    try {
      opts.mmd_gamma = std::stod(cfg.mmd_gamma);
    } catch (const std::exception&) {
      fail(kExitConfig, "--mmd-gamma must be 'median' or a number");
    }
    if (*opts.mmd_gamma <= 0.0) fail(kExitConfig, "--mmd-gamma must be > 0");
  }
  return opts;
}

// Mean and population standard deviation per metric, taken over the seeds
// where the metric is present in every report.
EvalReport aggregate(const std::vector<EvalReport>& reports, bool want_std) {
  auto collect = [&](auto getter) -> std::optional<double> {
    std::vector<double> vals;
    for (const EvalReport& r : reports) {
      const std::optional<double> v = getter(r);
      if (!v) return std::nullopt;
      vals.push_back(*v);
    }
    double mean = 0.0;
    for (double v : vals) mean += v;
    mean /= static_cast<double>(vals.size());
    if (!want_std) return mean;
    double var = 0.0;
    for (double v : vals) var += (v - mean) * (v - mean);
    return std::sqrt(var / static_cast<double>(vals.size()));
  };

  EvalReport out;
  out.explained_var_fraction =
      collect([](const EvalReport& r) { return r.explained_var_fraction; });
  out.mmd2 = *collect([](const EvalReport& r) { return std::optional<double>(r.mmd2); });
  out.linear_insep = collect([](const EvalReport& r) { return r.linear_insep; });
  out.quadratic_insep = collect([](const EvalReport& r) { return r.quadratic_insep; });
  out.downstream_accuracy =
      collect([](const EvalReport& r) { return r.downstream_accuracy; });
  out.delta_dp = collect([](const EvalReport& r) { return r.delta_dp; });
  out.delta_eo = collect([](const EvalReport& r) { return r.delta_eo; });
  return out;
}

int cmd_eval(const EvalCmd& cfg) {
  check_fit_flags(cfg.flags, cfg.f_set, cfg.gamma_set, cfg.kernel_set, cfg.jitter_set);
  if (cfg.flags.groups.empty())
    fail(kExitConfig, "eval needs a --group column for the fairness metrics");
  if (cfg.seeds.empty()) fail(kExitConfig, "--seeds must not be empty");
  const EvalOptions opts = eval_options(cfg);

  const Dataset data = load_dataset(cfg.data_path, cfg.flags);

  std::vector<EvalReport> reports;
  std::vector<std::string> rows;
  for (std::uint64_t seed : cfg.seeds) {
    SplitResult sp = data_phase([&] { return split(data, cfg.test_fraction, seed); });
    for (const auto& w : sp.warnings) std::cerr << "warning: " << w << "\n";
    Dataset train = std::move(sp.train);
    Dataset test = std::move(sp.test);
    if (cfg.standardize) {
      const Scaler sc = fit_phase([&] { return fit_scaler(train); });
      if (!sc.constant_features.empty())
        std::cerr << "warning: " << sc.constant_features.size()
                  << " constant feature(s) scaled to zero\n";
      train = apply_scaler(sc, train);
      test = apply_scaler(sc, test);
    }

    const AnyPersistedModel fitted = fit_by_method(cfg.flags, cfg.gamma_set, train);
    const AnyModel model = std::holds_alternative<ProjectionModel>(fitted)
                               ? AnyModel(std::get<ProjectionModel>(fitted))
                               : AnyModel(std::get<KernelModel>(fitted));
    const EvalReport rep =
        fit_phase([&] { return evaluate(model, train, test, opts); });
    for (const auto& w : rep.warnings) std::cerr << "warning: " << w << "\n";
    reports.push_back(rep);
    rows.push_back(eval_csv_row(cfg.flags.method, std::to_string(seed),
                                std::nullopt, rep));
  }
  rows.push_back(eval_csv_row(cfg.flags.method, "mean", std::nullopt,
                              aggregate(reports, false)));
  rows.push_back(eval_csv_row(cfg.flags.method, "std", std::nullopt,
                              aggregate(reports, true)));

  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!cfg.out_path.empty()) {
    file.open(cfg.out_path);
    if (!file) fail(kExitData, "cannot open " + cfg.out_path + " for writing");
    out = &file;
  }
  *out << eval_csv_header() << "\n";
  for (const auto& r : rows) *out << r << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepCmd {
  FitFlags flags;  // method fixed to the fair/standard pair
  std::vector<std::uint64_t> seeds{1};
  std::vector<double> lambdas;
  double test_fraction = 0.3;
  bool standardize = false;
  double downstream_reg = 0.01;
  std::string data_path;
  std::string out_path;
};

int cmd_sweep(const SweepCmd& cfg) {
  if (cfg.flags.groups.empty()) fail(kExitConfig, "sweep needs a --group column");
  if (cfg.flags.label.empty()) fail(kExitConfig, "sweep needs a --label column");
  if (cfg.seeds.empty()) fail(kExitConfig, "--seeds must not be empty");
  if (cfg.flags.k < 1) fail(kExitConfig, "--k must be >= 1");
  std::vector<double> lambdas = cfg.lambdas.empty() ? default_lambda_grid() : cfg.lambdas;
  for (double l : lambdas)
    if (l < 0.0) fail(kExitConfig, "--lambdas must be >= 0");

  const Dataset data = load_dataset(cfg.data_path, cfg.flags);

  // One split and one model pair per seed, reused across the grid.
  struct SeedState {
    Dataset train, test;
    ProjectionModel fair, standard;
    double fit_seconds = 0.0;
  };
  std::vector<SeedState> states;
  for (std::uint64_t seed : cfg.seeds) {
    SeedState st;
    SplitResult sp = data_phase([&] { return split(data, cfg.test_fraction, seed); });
    st.train = std::move(sp.train);
    st.test = std::move(sp.test);
    if (cfg.standardize) {
      const Scaler sc = fit_phase([&] { return fit_scaler(st.train); });
      st.train = apply_scaler(sc, st.train);
      st.test = apply_scaler(sc, st.test);
    }
    const auto t0 = std::chrono::steady_clock::now();
    st.fair = fit_phase([&] {
      return fit_fair_pca(st.train, cfg.flags.k, attribute_indices(cfg.flags),
                          cfg.flags.eo, cfg.flags.center, cfg.flags.eo_constraint_only);
    });
    st.standard =
        fit_phase([&] { return fit_standard_pca(st.train, cfg.flags.k, cfg.flags.center); });
    const auto t1 = std::chrono::steady_clock::now();
    st.fit_seconds = std::chrono::duration<double>(t1 - t0).count();
    states.push_back(std::move(st));
  }

  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!cfg.out_path.empty()) {
    file.open(cfg.out_path);
    if (!file) fail(kExitData, "cannot open " + cfg.out_path + " for writing");
    out = &file;
  }
  *out << "lambda,downstream_accuracy_mean,downstream_accuracy_std,"
          "delta_dp_mean,delta_dp_std,delta_eo_mean,delta_eo_std,"
          "fit_train_seconds_mean\n";

  EvalOptions opts;
  opts.downstream_reg = cfg.downstream_reg;
  for (double lambda : lambdas) {
    std::vector<EvalReport> reports;
    double seconds = 0.0;
    for (SeedState& st : states) {
      TradeoffModel t;
      t.fair = st.fair;
      t.standard = st.standard;
      t.lambda = lambda;
      const auto t0 = std::chrono::steady_clock::now();
      const EvalReport rep =
          fit_phase([&] { return evaluate(AnyModel(t), st.train, st.test, opts); });
      const auto t1 = std::chrono::steady_clock::now();
      seconds += st.fit_seconds + std::chrono::duration<double>(t1 - t0).count();
      reports.push_back(rep);
    }
    const EvalReport mean = aggregate(reports, false);
    const EvalReport sd = aggregate(reports, true);
    auto cell = [](const std::optional<double>& v) {
      return v ? fmt(*v) : std::string();
    };
    *out << fmt(lambda) << ',' << cell(mean.downstream_accuracy) << ','
         << cell(sd.downstream_accuracy) << ',' << cell(mean.delta_dp) << ','
         << cell(sd.delta_dp) << ',' << cell(mean.delta_eo) << ','
         << cell(sd.delta_eo) << ','
         << fmt(seconds / static_cast<double>(states.size())) << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// synth

struct SynthCmd {
  std::string preset;
  Index d = 0;
  Index n_per_group = 1000;
  std::uint64_t seed = 0;
  std::vector<double> mean0, mean1, var0, var1;
  std::string label_rule = "none";
  double label_offset = 0.0;
  std::vector<double> label_direction;
  std::string out_path;
};

int cmd_synth(const SynthCmd& cfg) {
  MixtureSpec spec;
  if (!cfg.preset.empty()) {
    if (cfg.preset == "equal-cov") {
      spec = equal_covariance_spec(cfg.n_per_group, cfg.seed);
    } else if (cfg.preset == "cov-gap") {
      spec = covariance_gap_spec(cfg.n_per_group, cfg.seed);
    } else {
      fail(kExitConfig, "unknown preset '" + cfg.preset + "'");
    }
  } else {
    if (cfg.d < 1) fail(kExitConfig, "custom synth needs --d");
    spec.d = cfg.d;
    spec.n_per_group = cfg.n_per_group;
    spec.seed = cfg.seed;
    auto vec = [&](const std::vector<double>& v, double fallback) {
      if (v.empty()) return Vector::Constant(cfg.d, fallback).eval();
      if (static_cast<Index>(v.size()) != cfg.d)
        fail(kExitConfig, "vector flags must have d entries");
      Vector out(cfg.d);
      for (Index i = 0; i < cfg.d; ++i) out(i) = v[static_cast<size_t>(i)];
      return out;
    };
    spec.mean0 = vec(cfg.mean0, 0.0);
    spec.mean1 = vec(cfg.mean1, 0.0);
    spec.cov0 = vec(cfg.var0, 1.0).asDiagonal();
    spec.cov1 = vec(cfg.var1, 1.0).asDiagonal();
  }

  if (cfg.label_rule == "none") spec.label_rule = MixtureSpec::LabelRule::none;
  else if (cfg.label_rule == "group") spec.label_rule = MixtureSpec::LabelRule::group;
  else if (cfg.label_rule == "linear") spec.label_rule = MixtureSpec::LabelRule::linear;
  else fail(kExitConfig, "--label-rule must be none, group or linear");
  spec.label_offset = cfg.label_offset;
  if (!cfg.label_direction.empty()) {
    if (static_cast<Index>(cfg.label_direction.size()) != spec.d)
      fail(kExitConfig, "--label-direction must have d entries");
    Vector dir(spec.d);
    for (Index i = 0; i < spec.d; ++i) dir(i) = cfg.label_direction[static_cast<size_t>(i)];
    spec.label_direction = dir;
  }

  const Dataset data = [&] {
    try {
      return gen_mixture(spec);
    } catch (const InvalidSpec& e) {
      fail(kExitConfig, e.what());
    } catch (const Error& e) {
      fail(kExitNumeric, e.what());
    }
  }();
  data_phase([&] { write_csv(data, cfg.out_path); });
  std::cerr << "wrote " << data.size() << " points (d=" << data.dim() << ") to "
            << cfg.out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* threads = std::getenv("FAIRPCA_THREADS"))
    Eigen::setNbThreads(std::max(1, std::atoi(threads)));

  CLI::App app{"fair principal component analysis"};
  app.require_subcommand(1);

  FitCmd fit_cfg;
  CLI::App* fit = app.add_subcommand("fit", "fit a model and save it");
  add_fit_flags(fit, fit_cfg.flags, &fit_cfg.f_set, &fit_cfg.gamma_set,
                &fit_cfg.kernel_set, &fit_cfg.jitter_set);
  fit->add_option("-o,--out", fit_cfg.out_path, "model file")->required();
  fit->add_option("data", fit_cfg.data_path, "input csv")->required();

  TransformCmd tr_cfg;
  CLI::App* tr = app.add_subcommand("transform", "embed a csv through a saved model");
  tr->add_option("--model", tr_cfg.model_path, "model file")->required();
  tr->add_option("--std-model", tr_cfg.std_model_path,
                 "second (standard) model for the trade-off embedding");
  tr->add_option("--lambda", tr_cfg.lambda, "trade-off weight on the standard part")
      ->each([&](const std::string&) { tr_cfg.lambda_set = true; });
  tr->add_option("-g,--group", tr_cfg.groups, "group column to pass through")
      ->delimiter(',');
  tr->add_option("-y,--label", tr_cfg.label, "label column to pass through");
  tr->add_option("--features", tr_cfg.features, "feature columns (default: all remaining)")
      ->delimiter(',');
  tr->add_option("-o,--out", tr_cfg.out_path, "output csv")->required();
  tr->add_option("data", tr_cfg.data_path, "input csv")->required();

  EvalCmd ev_cfg;
  CLI::App* ev = app.add_subcommand(
      "eval", "split, fit and report representation metrics per seed");
  add_fit_flags(ev, ev_cfg.flags, &ev_cfg.f_set, &ev_cfg.gamma_set,
                &ev_cfg.kernel_set, &ev_cfg.jitter_set);
  ev->add_option("--seeds", ev_cfg.seeds, "split seeds, comma separated")->delimiter(',');
  ev->add_option("--test-fraction", ev_cfg.test_fraction, "test share, default 0.3");
  ev->add_flag("--standardize", ev_cfg.standardize,
               "standardize features on the train split");
  ev->add_option("--downstream-reg", ev_cfg.downstream_reg,
                 "l2 strength of the downstream classifier");
  ev->add_option("--probe-reg", ev_cfg.probe_reg, "l2 strength of the group probe");
  ev->add_flag("--quadratic-probe", ev_cfg.quadratic_probe,
               "also probe on degree-2 features");
  ev->add_option("--mmd-gamma", ev_cfg.mmd_gamma,
                 "'median' (default) or a fixed bandwidth");
  ev->add_option("-o,--out", ev_cfg.out_path, "report csv (default: stdout)");
  ev->add_option("data", ev_cfg.data_path, "input csv")->required();

  SweepCmd sw_cfg;
  CLI::App* sw = app.add_subcommand(
      "sweep", "trace the fairness/accuracy curve over the trade-off grid");
  sw->add_option("-k,--k", sw_cfg.flags.k, "embedding dimension")->required();
  sw->add_option("-g,--group", sw_cfg.flags.groups, "protected attribute column")
      ->delimiter(',');
  sw->add_option("-y,--label", sw_cfg.flags.label, "binary label column")->required();
  sw->add_option("--features", sw_cfg.flags.features, "feature columns")->delimiter(',');
  sw->add_flag("--center", sw_cfg.flags.center, "subtract the training mean");
  sw->add_flag("--eo", sw_cfg.flags.eo, "equalize opportunity instead of demographics");
  sw->add_option("--lambdas", sw_cfg.lambdas, "grid (default: (i/10)^3, i=0..10)")
      ->delimiter(',');
  sw->add_option("--seeds", sw_cfg.seeds, "split seeds, comma separated")->delimiter(',');
  sw->add_option("--test-fraction", sw_cfg.test_fraction, "test share, default 0.3");
  sw->add_flag("--standardize", sw_cfg.standardize,
               "standardize features on the train split");
  sw->add_option("--downstream-reg", sw_cfg.downstream_reg,
                 "l2 strength of the downstream classifier");
  sw->add_option("-o,--out", sw_cfg.out_path, "curve csv (default: stdout)");
  sw->add_option("data", sw_cfg.data_path, "input csv")->required();

  SynthCmd sy_cfg;
  CLI::App* sy = app.add_subcommand("synth", "generate a two-group gaussian mixture csv");
  sy->add_option("--preset", sy_cfg.preset, "equal-cov or cov-gap");
  sy->add_option("--d", sy_cfg.d, "dimension (custom mixtures)");
  sy->add_option("--n-per-group", sy_cfg.n_per_group, "points per group, default 1000");
  sy->add_option("--seed", sy_cfg.seed, "generator seed");
  sy->add_option("--mean0", sy_cfg.mean0, "group-0 mean entries")->delimiter(',');
  sy->add_option("--mean1", sy_cfg.mean1, "group-1 mean entries")->delimiter(',');
  sy->add_option("--var0", sy_cfg.var0, "group-0 diagonal variances")->delimiter(',');
  sy->add_option("--var1", sy_cfg.var1, "group-1 diagonal variances")->delimiter(',');
  sy->add_option("--label-rule", sy_cfg.label_rule, "none, group or linear");
  sy->add_option("--label-offset", sy_cfg.label_offset, "linear rule offset");
  sy->add_option("--label-direction", sy_cfg.label_direction, "linear rule direction")
      ->delimiter(',');
  sy->add_option("-o,--out", sy_cfg.out_path, "output csv")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (fit->parsed()) return cmd_fit(fit_cfg);
    if (tr->parsed()) return cmd_transform(tr_cfg);
    if (ev->parsed()) return cmd_eval(ev_cfg);
    if (sw->parsed()) return cmd_sweep(sw_cfg);
    if (sy->parsed()) return cmd_synth(sy_cfg);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
