"""Exact decomposition of finitely presented modules and pure/RD composition series.

Concrete rings: ``Z``, ``Z/n``, ``GF(p)[t]`` and its quotients, finite
products of these, and small explicit table rings.
"""

from .rings import Integers, IntegersMod, PolynomialQuotient, ProductRing, TableRing
from .ideals import IdealSet, PrincipalIdeal
from .module import FpModule, PresentationMatrix, build_module, cyclic_sum
from .decompose import canonical_form, diagonal_reduce, indecomposable_refine, mu, peel_pure_generator
from .series import (CompositionSeries, normalize_series, reorder_almost_increasing,
                     sequence_predicates, series_from_decomposition, series_outcomes)
from .goldie import goldie_bruteforce, goldie_structural
from .oracle import FiniteModuleTable, is_pure_submodule, is_rd_submodule
from .parsing import parse_document, parse_ring

__version__ = "0.1.0"
