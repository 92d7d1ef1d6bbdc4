"""Exact Grothendieck-Witt valued Euler classes and A1-local degrees."""

__version__ = "0.1.0"

from .errors import (BudgetExceeded, CharTwo, ChartDegenerate, Degenerate,
                     FactorBudgetExceeded, FactorDegreeTooHigh, GwError,
                     NonIsolatedZeros, NotSimple, NotSquarefree,
                     NotTriangular, SingularIndex, UnsupportedField,
                     ZeroEntry)
from .fields import (QQ, EtaleAlgebra, FieldCtx, PrimeField, Rationals,
                     hilbert_symbol, legendre, make_extension, trace_of)
from .gw import (GWClass, GWInvariants, SquareClass, gw_equal, gw_invariants,
                 gw_simplify, hyperbolic_split, parse_gw, witt_class)
from .quadform import (GramForm, diagonalize, diagonalize_with_transform,
                       gram_to_class, scharlau_transfer, trace_form)
from .polys import (MultiPoly, QuotientAlgebra, groebner, mult_matrix,
                    normal_form, parse_poly, parse_system, quotient_basis)
from .scheja_storch import divided_differences, ss_class, ss_form
from .degree import (ClosedPoint, consistency_report, fiber_points,
                     global_degree, local_index_simple)
from .enumerative import (GrassmannChart, PlaneConfig, RootStackChart,
                          euler_lines, euler_o_n, euler_o_n_stacky,
                          grassmann_section, lines_local_index,
                          reference_lines_config, stacky_lines_class)
from .fp_verifier import (Subspace2, enumerate_incident_lines,
                          enumerate_subspaces, splitmix64,
                          verify_lines_class)
