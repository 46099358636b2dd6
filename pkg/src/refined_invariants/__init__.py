"""Tropical refined invariants of abelian surfaces, their codegree
asymptotics and the quasi-modular forms that govern them, in exact
rational arithmetic."""

from .arith import divisors, euler_phi, sigma
from .asymptotics import (
    ArInvariant,
    ar_from_star,
    ar_star_closed,
    bg_bar_star_series,
    hilbert_expand,
    q_poly_interpolated,
    stabilization_check,
)
from .exact import LaurentPoly, NPoly, NotPolynomialError, Series, bar_transform, npoly_interpolate
from .genus_series import codegree_closed, genus_gf
from .invariants import (
    Polarization,
    VertexData,
    bg_class,
    bg_primitive,
    bg_star,
    p_laurent,
    refined_multiplicity,
)
from .quasimodular import d_op, eisenstein, g_m_closed, g_m_direct

__version__ = "0.1.0"
