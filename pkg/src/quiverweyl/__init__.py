"""Namikawa-Weyl groups of quiver varieties and an exact representation checker."""

from .errors import (
    EmptyVariety,
    InputError,
    InternalInconsistency,
    MethodNotApplicable,
    ParseError,
    ValidationError,
)
from .quiver import (
    CartanData,
    Quiver,
    QuiverSetting,
    cartan_data,
    cartan_pairing,
    double_quiver,
    p_value,
    support_connected,
)
from .roots import Decomposition, Root, RootKind, RootSystem

__version__ = "0.1.0"
