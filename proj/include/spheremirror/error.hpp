#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spheremirror {

enum class ErrorKind {
  // conic
  TooFewPoints,
  DegenerateConfiguration,
  NotAnEllipse,
  CircularAmbiguity,
  // center
  OutsideContour,
  CoincidentPoints,
  DegenerateLines,
  ParallelLines,
  // calibrate
  DegenerateCenterOnImageAxis,
  InfeasibleConic,
  CenterOutsideContour,
  CameraInsideSphere,
  BehindCamera,
  // stereo
  RayMissesSphere,
  ParallelRays,
  BehindRay,
  // synth
  NoVisibleReflection,
  DegenerateColinear,
  // io / cli
  InvalidInput,
  InsufficientEvidence,
};

std::string_view to_string(ErrorKind kind);

/// Process exit code for the command-line tool:
/// 2 invalid input or scene, 3 contour fit failure, 4 insufficient center
/// evidence, 5 geometric degeneracy or infeasibility.
int exit_code(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace spheremirror
