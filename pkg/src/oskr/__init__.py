"""OSKR and OKAI module-lattice KEMs with a four-variant NTT engine."""
from .params import PRESET_NAMES, ParamSet, bandwidth, encoded_sizes, preset

__version__ = "0.1.0"

__all__ = ["ParamSet", "preset", "encoded_sizes", "bandwidth", "PRESET_NAMES"]
