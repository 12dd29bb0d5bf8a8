#include "fairpca/mixture.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <string>

#include "fairpca/errors.hpp"
#include "fairpca/rng.hpp"

namespace fairpca {

namespace {

Matrix cholesky_factor(const Matrix& cov, Index d, const char* which) {
  if (cov.rows() != d || cov.cols() != d)
    throw InvalidSpec(std::string("gen_mixture: ") + which + " must be " +
                      std::to_string(d) + "x" + std::to_string(d));
  if (!cov.allFinite())
    throw InvalidSpec(std::string("gen_mixture: ") + which + " has non-finite entries");
  Matrix sym = 0.5 * (cov + cov.transpose());
  Eigen::LLT<Matrix> llt(sym);
  if (llt.info() != Eigen::Success) {
    // Semi-definite covariances are allowed; retry with a hair of jitter.
    sym.diagonal().array() += 1e-12;
    llt.compute(sym);
    if (llt.info() != Eigen::Success)
      throw InvalidSpec(std::string("gen_mixture: ") + which +
                        " is not positive semi-definite");
  }
  return llt.matrixL();
}

}  // namespace

Dataset gen_mixture(const MixtureSpec& spec) {
  if (spec.d < 1) throw InvalidSpec("gen_mixture: d must be >= 1");
  if (spec.n_per_group < 1)
    throw InvalidSpec("gen_mixture: n_per_group must be >= 1");
  if (spec.mean0.size() != spec.d || spec.mean1.size() != spec.d)
    throw InvalidSpec("gen_mixture: means must have length d");

  const Matrix L0 = cholesky_factor(spec.cov0, spec.d, "cov0");
  const Matrix L1 = cholesky_factor(spec.cov1, spec.d, "cov1");

  Rng rng(spec.seed);
  const Index n = 2 * spec.n_per_group;

  Dataset out;
  out.X.resize(spec.d, n);
  for (Index i = 0; i < n; ++i) {
    const bool g1 = i >= spec.n_per_group;
    const Vector xi = rng.gauss_vector(spec.d);
    out.X.col(i) = (g1 ? spec.mean1 : spec.mean0) + (g1 ? L1 : L0) * xi;
  }

  std::vector<int> groups(static_cast<size_t>(n), 0);
  for (Index i = spec.n_per_group; i < n; ++i) groups[static_cast<size_t>(i)] = 1;
  out.attributes.push_back(std::move(groups));
  out.attribute_names.push_back("group");

  if (spec.label_rule != MixtureSpec::LabelRule::none) {
    std::vector<int> y(static_cast<size_t>(n), 0);
    if (spec.label_rule == MixtureSpec::LabelRule::group) {
      for (Index i = 0; i < n; ++i)
        y[static_cast<size_t>(i)] = out.attributes[0][static_cast<size_t>(i)];
    } else {
      Vector dir;
      if (spec.label_direction) {
        if (spec.label_direction->size() != spec.d)
          throw InvalidSpec("gen_mixture: label_direction must have length d");
        dir = *spec.label_direction;
      } else {
        dir = rng.gauss_vector(spec.d);
      }
      const double nrm = dir.norm();
      if (nrm <= 0.0) throw InvalidSpec("gen_mixture: zero label direction");
      dir /= nrm;
      for (Index i = 0; i < n; ++i)
        y[static_cast<size_t>(i)] = dir.dot(out.X.col(i)) + spec.label_offset > 0.0 ? 1 : 0;
    }
    out.labels = std::move(y);
    out.label_name = "y";
  }

  ensure_names(out);
  return out;
}

MixtureSpec equal_covariance_spec(Index n_per_group, std::uint64_t seed) {
  MixtureSpec spec;
  spec.d = 10;
  spec.n_per_group = n_per_group;
  spec.seed = seed;
  spec.mean0 = Vector::Zero(10);
  spec.mean1 = Vector::Zero(10);
  spec.mean1(0) = 6.0;
  spec.cov0 = Matrix::Identity(10, 10);
  spec.cov1 = Matrix::Identity(10, 10);
  return spec;
}

MixtureSpec covariance_gap_spec(Index n_per_group, std::uint64_t seed) {
  MixtureSpec spec;
  spec.d = 10;
  spec.n_per_group = n_per_group;
  spec.seed = seed;
  spec.mean0 = Vector::Zero(10);
  spec.mean1 = Vector::Zero(10);
  Vector v0 = Vector::Ones(10), v1 = Vector::Ones(10);
  v0(0) = 25.0;
  v0(1) = 20.0;
  v1(2) = 16.0;
  v1(3) = 12.0;
  spec.cov0 = v0.asDiagonal();
  spec.cov1 = v1.asDiagonal();
  return spec;
}

}  // namespace fairpca
