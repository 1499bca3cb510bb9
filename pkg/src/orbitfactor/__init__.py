"""Finite-field kernel for Moebius group orbits, invariant rational functions,
and structured factorization of c*T^(q+1) + d*T^q - a*T - b."""

from . import classes, gf, grouporbit, invariants, moebius, structfactor, upoly
from .errors import AlgebraError

__all__ = [
    "AlgebraError",
    "classes",
    "gf",
    "grouporbit",
    "invariants",
    "moebius",
    "structfactor",
    "upoly",
]
