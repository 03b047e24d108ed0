"""Height-multiple root subsystems R(m): bases, types, Levi test and d_m."""
from .core import Root, RootSystem, SystemLabel, build, build_named
from .dm import DmReport, compute_dm
from .dynkin import ComponentLabel, DynkinType
from .predictor import Prediction, predict
from .subsystem import HeightSubsystem, base_of, classify, is_levi_type, r_of_m, rm_is_partial_base

__all__ = [
    "ComponentLabel", "DmReport", "DynkinType", "HeightSubsystem", "Prediction", "Root",
    "RootSystem", "SystemLabel", "base_of", "build", "build_named", "classify", "compute_dm",
    "is_levi_type", "predict", "r_of_m", "rm_is_partial_base",
]
