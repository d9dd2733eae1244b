#ifndef GAQ_PIPELINE_HPP
#define GAQ_PIPELINE_HPP

#include <string>
#include <vector>

#include "gaq/model.hpp"
#include "gaq/report.hpp"

namespace gaq {

/// Each stage runs everything before it.
enum class Stage { Check, Derive, Extend, Polarize, Represent, Pipeline };
std::string to_string(Stage s);
Stage stage_from_string(const std::string& s);

/// Never throws for model-level failures: errors become failed entries and
/// later steps are marked not-applicable.
Report run_pipeline(const ModelConfig& config, Stage stage = Stage::Pipeline);

/// Deterministic rational points inside the model's domain.
std::vector<Point> sample_points(const ModelConfig& config, std::size_t count, unsigned seed = 0);

}  // namespace gaq

#endif  // GAQ_PIPELINE_HPP
