"""Exact determinants of contravariant forms on vacuum modules, the
simplicity criteria they imply, and inverse Kazhdan-Lusztig polynomials."""

from .exact import Poly, Series
from .roots import catalog, get_system
from .determinants import (FactoredDeterminant, gen_verma_det, identity_checks, mb_series,
                           mb_table, ns_vacuum_det, vacuum_det, vacuum_det_defect,
                           vacuum_det_osp12n, virasoro_vacuum_det, virasoro_verma_det)
from .criteria import (ALinear, Irrational, Verdict, c2_condition, ns_simple,
                       superconformal_simple, vacuum_irreducible, virasoro_simple,
                       w_algebra_simple)
from .kl import CoxeterGroup, KLTable, diagram, theta_member

__version__ = "0.1.0"
