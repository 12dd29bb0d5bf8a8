#pragma once

#include <string>
#include <variant>

#include "fairpca/kernel.hpp"
#include "fairpca/projection.hpp"

namespace fairpca {

using AnyPersistedModel = std::variant<ProjectionModel, KernelModel>;

// Plain-text model files, format tag "fairpca-model v1". Every number is
// written with 17 significant digits, so save followed by load restores all
// doubles bitwise. Kernel models persist coeffs, R and the training matrix;
// the training embedding is recomputed on load (same expression, same bytes).
void save_model(const ProjectionModel& model, const std::string& path);
void save_model(const KernelModel& model, const std::string& path);
void save_model(const AnyPersistedModel& model, const std::string& path);

// SchemaError on a wrong/unknown header or missing sections, ParseError on
// malformed numbers.
AnyPersistedModel load_model(const std::string& path);

}  // namespace fairpca
