"""Max-2-Sat to depth-restricted Steiner arborescence compiler."""
from .gadgetcheck import verify_gadget
from .layout import DepthSolveError, TileGrid, WiringError, compile_reduction
from .params import (ALPHA_MIN, AlphaTooSmall, Parameters, default_parameters,
                     desk_parameters, length_bands)
from .realize import Realization, build_realization, lower_bound
from .sat import Max2SatInstance, format_dimacs, max2sat_bruteforce, parse_dimacs
