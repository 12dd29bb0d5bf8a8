#include "fairpca/model_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "fairpca/errors.hpp"

namespace fairpca {

namespace {

constexpr const char* kHeader = "fairpca-model v1";

std::string num17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_matrix(std::ostream& out, const char* tag, const Matrix& M) {
  out << tag << ' ' << M.rows() << ' ' << M.cols() << '\n';
  for (Index i = 0; i < M.rows(); ++i) {
    for (Index j = 0; j < M.cols(); ++j) {
      if (j) out << ' ';
      out << num17(M(i, j));
    }
    out << '\n';
  }
}

void write_vector(std::ostream& out, const char* tag, const Vector& v) {
  out << tag << ' ' << v.size();
  for (Index i = 0; i < v.size(); ++i) out << ' ' << num17(v(i));
  out << '\n';
}

const char* method_name(Method m) {
  switch (m) {
    case Method::standard: return "standard";
    case Method::fair: return "fair";
    case Method::fair_s: return "fair_s";
  }
  return "standard";
}

class Reader {
 public:
  explicit Reader(const std::string& path) : path_(path), in_(path) {
    if (!in_) throw SchemaError("load_model: cannot open " + path);
  }

  std::string word() {
    std::string w;
    if (!(in_ >> w))
      throw SchemaError("load_model: " + path_ + ": unexpected end of file");
    return w;
  }

  void expect(const std::string& tag) {
    const std::string w = word();
    if (w != tag)
      throw SchemaError("load_model: " + path_ + ": expected '" + tag +
                        "', found '" + w + "'");
  }

  double number() {
    double v;
    if (!(in_ >> v))
      throw ParseError("load_model: " + path_ + ": malformed number");
    return v;
  }

  Index count() {
    const double v = number();
    const Index n = static_cast<Index>(v);
    if (v != static_cast<double>(n) || n < 0)
      throw ParseError("load_model: " + path_ + ": malformed count");
    return n;
  }

  Matrix matrix(const char* tag) {
    expect(tag);
    const Index r = count(), c = count();
    Matrix M(r, c);
    for (Index i = 0; i < r; ++i)
      for (Index j = 0; j < c; ++j) M(i, j) = number();
    return M;
  }

  Vector vector(const char* tag) {
    expect(tag);
    const Index n = count();
    Vector v(n);
    for (Index i = 0; i < n; ++i) v(i) = number();
    return v;
  }

  std::ifstream& stream() { return in_; }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::ifstream in_;
};

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw SchemaError("save_model: cannot open " + path + " for writing");
  return out;
}

void write_attributes(std::ostream& out, const std::vector<int>& attrs) {
  out << "attributes " << attrs.size();
  for (int a : attrs) out << ' ' << a;
  out << '\n';
}

}  // namespace

void save_model(const ProjectionModel& model, const std::string& path) {
  std::ofstream out = open_out(path);
  out << kHeader << '\n';
  out << "type projection\n";
  out << "method " << method_name(model.method) << '\n';
  out << "d " << model.U.rows() << '\n';
  out << "k " << model.k << '\n';
  out << "center " << (model.options.center ? 1 : 0) << '\n';
  out << "eo " << (model.options.eo_mode ? 1 : 0) << '\n';
  out << "eo_constraint_only " << (model.options.eo_constraint_only ? 1 : 0) << '\n';
  write_attributes(out, model.options.attributes);
  if (model.method == Method::fair_s) {
    out << "fair_s_fraction " << num17(model.options.fair_s_fraction) << '\n';
    out << "fair_s_l " << model.options.fair_s_l << '\n';
  }
  if (model.train_mean) write_vector(out, "mean", *model.train_mean);
  write_matrix(out, "U", model.U);
  out << "end\n";
  if (!out) throw SchemaError("save_model: write to " + path + " failed");
}

void save_model(const KernelModel& model, const std::string& path) {
  std::ofstream out = open_out(path);
  out << kHeader << '\n';
  out << "type kernel\n";
  out << "kernel "
      << (model.spec.kind == KernelSpec::Kind::gaussian ? "gaussian" : "linear")
      << '\n';
  if (model.spec.kind == KernelSpec::Kind::gaussian) {
    if (!model.spec.gamma)
      throw InvalidInput("save_model: kernel model has unresolved gamma");
    out << "gamma " << num17(*model.spec.gamma) << '\n';
  }
  out << "jitter " << num17(model.jitter) << '\n';
  out << "k " << model.k << '\n';
  write_attributes(out, model.attributes);
  write_matrix(out, "R", model.R);
  write_matrix(out, "coeffs", model.coeffs);
  write_matrix(out, "train_x", model.train_X);
  out << "end\n";
  if (!out) throw SchemaError("save_model: write to " + path + " failed");
}

void save_model(const AnyPersistedModel& model, const std::string& path) {
  if (std::holds_alternative<ProjectionModel>(model))
    save_model(std::get<ProjectionModel>(model), path);
  else
    save_model(std::get<KernelModel>(model), path);
}

AnyPersistedModel load_model(const std::string& path) {
  Reader r(path);

  // Header is a full line, not two tokens: read it verbatim.
  std::string header;
  if (!std::getline(r.stream(), header))
    throw SchemaError("load_model: " + path + " is empty");
  while (!header.empty() && (header.back() == '\r' || header.back() == ' '))
    header.pop_back();
  if (header != kHeader)
    throw SchemaError("load_model: " + path + ": unknown format '" + header + "'");

  r.expect("type");
  const std::string type = r.word();

  if (type == "projection") {
    ProjectionModel m;
    r.expect("method");
    const std::string method = r.word();
    if (method == "standard") m.method = Method::standard;
    else if (method == "fair") m.method = Method::fair;
    else if (method == "fair_s") m.method = Method::fair_s;
    else throw SchemaError("load_model: " + path + ": unknown method '" + method + "'");

    r.expect("d");
    const Index d = r.count();
    r.expect("k");
    m.k = r.count();
    r.expect("center");
    m.options.center = r.count() != 0;
    r.expect("eo");
    m.options.eo_mode = r.count() != 0;
    r.expect("eo_constraint_only");
    m.options.eo_constraint_only = r.count() != 0;
    r.expect("attributes");
    const Index na = r.count();
    for (Index i = 0; i < na; ++i)
      m.options.attributes.push_back(static_cast<int>(r.count()));
    if (m.method == Method::fair_s) {
      r.expect("fair_s_fraction");
      m.options.fair_s_fraction = r.number();
      r.expect("fair_s_l");
      m.options.fair_s_l = r.count();
    }

    std::string tag = r.word();
    if (tag == "mean") {
      const Index nm = r.count();
      Vector mu(nm);
      for (Index i = 0; i < nm; ++i) mu(i) = r.number();
      m.train_mean = mu;
      tag = r.word();
    }
    if (tag != "U")
      throw SchemaError("load_model: " + path + ": expected 'U', found '" + tag + "'");
    const Index ur = r.count(), uc = r.count();
    m.U.resize(ur, uc);
    for (Index i = 0; i < ur; ++i)
      for (Index j = 0; j < uc; ++j) m.U(i, j) = r.number();
    r.expect("end");

    if (m.U.rows() != d || m.U.cols() != m.k)
      throw SchemaError("load_model: " + path + ": U shape disagrees with d/k");
    if (m.train_mean && m.train_mean->size() != d)
      throw SchemaError("load_model: " + path + ": mean length disagrees with d");
    if (!m.U.allFinite())
      throw ParseError("load_model: " + path + ": non-finite entries in U");
    return m;
  }

  if (type == "kernel") {
    KernelModel m;
    r.expect("kernel");
    const std::string kind = r.word();
    if (kind == "gaussian") {
      m.spec.kind = KernelSpec::Kind::gaussian;
      r.expect("gamma");
      m.spec.gamma = r.number();
    } else if (kind == "linear") {
      m.spec.kind = KernelSpec::Kind::linear;
    } else {
      throw SchemaError("load_model: " + path + ": unknown kernel '" + kind + "'");
    }
    r.expect("jitter");
    m.jitter = r.number();
    r.expect("k");
    m.k = r.count();
    r.expect("attributes");
    const Index na = r.count();
    for (Index i = 0; i < na; ++i)
      m.attributes.push_back(static_cast<int>(r.count()));
    m.R = r.matrix("R");
    m.coeffs = r.matrix("coeffs");
    m.train_X = r.matrix("train_x");
    r.expect("end");

    if (m.coeffs.rows() != m.R.cols() || m.coeffs.cols() != m.k ||
        m.R.rows() != m.train_X.cols())
      throw SchemaError("load_model: " + path + ": inconsistent kernel shapes");
    if (!m.R.allFinite() || !m.coeffs.allFinite() || !m.train_X.allFinite())
      throw ParseError("load_model: " + path + ": non-finite entries");

    const Matrix K = gram(m.spec, m.train_X, m.train_X);
    m.train_embedding = m.coeffs.transpose() * (m.R.transpose() * K);
    return m;
  }

  throw SchemaError("load_model: " + path + ": unknown type '" + type + "'");
}

}  // namespace fairpca
