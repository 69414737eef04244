#include "spheremirror/error.hpp"

namespace spheremirror {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::TooFewPoints: return "TooFewPoints";
    case ErrorKind::DegenerateConfiguration: return "DegenerateConfiguration";
    case ErrorKind::NotAnEllipse: return "NotAnEllipse";
    case ErrorKind::CircularAmbiguity: return "CircularAmbiguity";
    case ErrorKind::OutsideContour: return "OutsideContour";
    case ErrorKind::CoincidentPoints: return "CoincidentPoints";
    case ErrorKind::DegenerateLines: return "DegenerateLines";
    case ErrorKind::ParallelLines: return "ParallelLines";
    case ErrorKind::DegenerateCenterOnImageAxis: return "DegenerateCenterOnImageAxis";
    case ErrorKind::InfeasibleConic: return "InfeasibleConic";
    case ErrorKind::CenterOutsideContour: return "CenterOutsideContour";
    case ErrorKind::CameraInsideSphere: return "CameraInsideSphere";
    case ErrorKind::BehindCamera: return "BehindCamera";
    case ErrorKind::RayMissesSphere: return "RayMissesSphere";
    case ErrorKind::ParallelRays: return "ParallelRays";
    case ErrorKind::BehindRay: return "BehindRay";
    case ErrorKind::NoVisibleReflection: return "NoVisibleReflection";
    case ErrorKind::DegenerateColinear: return "DegenerateColinear";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::InsufficientEvidence: return "InsufficientEvidence";
  }
  return "Unknown";
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput:
    case ErrorKind::CameraInsideSphere:
    case ErrorKind::BehindCamera:
    case ErrorKind::NoVisibleReflection:
    case ErrorKind::DegenerateColinear:
      return 2;
    case ErrorKind::TooFewPoints:
    case ErrorKind::DegenerateConfiguration:
    case ErrorKind::NotAnEllipse:
      return 3;
    case ErrorKind::InsufficientEvidence:
      return 4;
    case ErrorKind::CircularAmbiguity:
    case ErrorKind::OutsideContour:
    case ErrorKind::CoincidentPoints:
    case ErrorKind::DegenerateLines:
    case ErrorKind::ParallelLines:
    case ErrorKind::DegenerateCenterOnImageAxis:
    case ErrorKind::InfeasibleConic:
    case ErrorKind::CenterOutsideContour:
    case ErrorKind::RayMissesSphere:
    case ErrorKind::ParallelRays:
    case ErrorKind::BehindRay:
      return 5;
  }
  return 1;
}

}  // namespace spheremirror
