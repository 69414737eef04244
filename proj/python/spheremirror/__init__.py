"""Camera calibration and catadioptric stereo from one image of a spherical mirror."""

from ._core import (
    CalibrationResult,
    Conic,
    Error,
    Intrinsics,
    SceneSpec,
    SphereCenter,
    calibrate,
    conic_from_params,
    fit_conic,
    generate_annotation,
    measure_length,
    reconstruct,
    reconstruct_pair,
    reflect_forward,
    sample_contour,
    scene_spec_from_json,
    solve_calibration,
    synthetic_data_1,
    synthetic_data_2,
)

__all__ = [
    "CalibrationResult",
    "Conic",
    "Error",
    "Intrinsics",
    "SceneSpec",
    "SphereCenter",
    "calibrate",
    "conic_from_params",
    "fit_conic",
    "generate_annotation",
    "measure_length",
    "reconstruct",
    "reconstruct_pair",
    "reflect_forward",
    "sample_contour",
    "scene_spec_from_json",
    "solve_calibration",
    "synthetic_data_1",
    "synthetic_data_2",
]
