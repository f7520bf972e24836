"""Exact calculator for universal sl(2) link homology built from webs and foams."""

from .coeff import GaussPoly, GaussRat, LaurentBi, LaurentQ
from .complex import (
    ChainComplex,
    HomologyTable,
    build_complex,
    derive_edge_maps,
    euler_characteristic,
    homology,
    homology_bruteforce,
    simplify,
    specialize,
)
from .diagram import LinkDiagram, linking_matrix, parse_braid, parse_pd, resolve
from .skein import p2

__version__ = "0.1.0"
