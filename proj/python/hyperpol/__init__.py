"""Polariton sensing toolkit for dye ensembles on hyperbolic metamaterials.

Thin Python layer over the C++ core: dispersive material models, effective-medium
homogenization with band-edge location, anisotropic scattering-matrix reflectivity,
coupled-oscillator polariton theory, and dip-based concentration sensing.

Attribute naming: C++ fields called ``lambda`` are exposed as ``wavelengths``
(``lambda`` is a Python keyword). All quantities are SI unless the name says
otherwise (``*_nm``, ``*_deg``, ``*_molar``, ``*_meV``).
"""

import json as _json

from . import _core
from ._core import *  # noqa: F401,F403
from ._core import presets  # noqa: F401

__version__ = _core.__version__


def run_job(config, subcommand, out_dir, n_workers=1, config_text=""):
    """Run one CLI subcommand programmatically; returns the summary as a dict."""
    return _json.loads(_core.run_job(config, subcommand, out_dir, n_workers, config_text))
