#pragma once

// End-to-end pipelines over annotation files, shared by the CLI and the
// Python module.

#include <optional>
#include <string_view>

#include "spheremirror/io.hpp"

namespace spheremirror {

enum class CenterChoice { Auto, Reflection, Pairs, Axial };

/// "auto", "reflection", "pairs", "axial". Throws InvalidInput.
CenterChoice center_choice_from_string(std::string_view s);

/// Picks the center estimator. Auto prefers the camera reflection, then two
/// or more pairs, then a single pair with the major axis.
/// Throws InsufficientEvidence when the annotation lacks what the choice needs.
CenterEstimate estimate_center(const io::AnnotationFile& a, const Conic& c, CenterChoice choice);

CalibrationResult calibrate_annotation(const io::AnnotationFile& a, CenterChoice choice);

/// Per-pair reconstruction; failures are recorded in the status field rather
/// than thrown. Lengths between every two successful pairs when a radius is given.
io::ResultFile reconstruct_annotation(const io::AnnotationFile& a, const CalibrationResult& calib,
                                      const std::optional<Length>& radius);

}  // namespace spheremirror
