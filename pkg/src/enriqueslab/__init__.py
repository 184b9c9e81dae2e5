"""Exact intersection theory and Groebner bases, applied to a pencil of
Enriques surfaces carrying a non-algebraic integral Hodge class.

Submodules: ``chow``, ``charclass``, ``mpoly``, ``groebner``, ``paperlab``, ``dsl`` and ``cli``.
"""

from .chow import ChowClass, ChowRing, integrate, make_bundle_ring, make_multiproj
from .charclass import O, CompleteIntersectionSpec, chern_classes, euler_characteristic_top, hrr_chi
from .mpoly import MPoly, PolyRing, standard_ring
from .groebner import buchberger, smoothness_certificate
from .paperlab import build_instance, verify_all

__version__ = "0.1.0"

__all__ = [
    "ChowClass", "ChowRing", "integrate", "make_bundle_ring", "make_multiproj",
    "O", "CompleteIntersectionSpec", "chern_classes", "euler_characteristic_top", "hrr_chi",
    "MPoly", "PolyRing", "standard_ring", "buchberger", "smoothness_certificate",
    "build_instance", "verify_all",
]
