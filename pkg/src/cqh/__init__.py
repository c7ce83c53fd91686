"""Exact computations with coquasi-Hopf algebras and their comodule algebras."""
from .exactlin import GF, QQ, BasedSpace, LinMap  # noqa: F401
from .coquasi import CoquasiBialgebra, CoquasiHopf, verify_all  # noqa: F401

__version__ = "0.1.0"
