#pragma once

#include <cstdint>
#include <optional>

#include "fairpca/dataset.hpp"
#include "fairpca/types.hpp"

namespace fairpca {

// Two-group gaussian mixture generator. Points are drawn as mean_g + L_g xi
// with L_g the Cholesky factor of cov_g (a tiny diagonal jitter is allowed
// for semi-definite inputs); all n_per_group group-0 columns come first.
// Draw order is fixed (per point, d normals in feature order), so a seed
// pins the dataset bytes on every platform.
struct MixtureSpec {
  Index d = 2;
  Index n_per_group = 100;
  Vector mean0, mean1;
  Matrix cov0, cov1;
  std::uint64_t seed = 0;

  enum class LabelRule { none, group, linear };
  LabelRule label_rule = LabelRule::none;
  // linear rule: y = 1 iff direction . x + offset > 0; a missing direction
  // is drawn at random (seeded) and normalized.
  std::optional<Vector> label_direction;
  double label_offset = 0.0;
};

Dataset gen_mixture(const MixtureSpec& spec);

// d = 10, identity covariances for both groups, means separated along the
// first axis. The embedding of a group-mean-matching projection carries no
// group signal at all here, which makes this the canonical smoke fixture.
MixtureSpec equal_covariance_spec(Index n_per_group, std::uint64_t seed);

// d = 10, both means zero, strongly different diagonal covariances: group 0
// is stretched along axes 0-1, group 1 along axes 2-3. Group membership is
// invisible to first moments but easy to read off second moments.
MixtureSpec covariance_gap_spec(Index n_per_group, std::uint64_t seed);

}  // namespace fairpca
