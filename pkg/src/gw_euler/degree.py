"""A1-local and global degrees.

The simple-zero local index is the trace-form transfer of the Jacobian
determinant at the point; the global degree is the Scheja-Storch class
of the shifted system; consistency_report cross-checks the two along a
triangular fiber decomposition (mismatches are reported, never raised).
"""

from dataclasses import dataclass

from .errors import NotSimple, NotTriangular
from .factor import factor_univariate
from .fields import EtaleAlgebra
from .gw import GWClass, UnsupportedField, gw_equal, gw_invariants
from .linalg import exact_det
from .polys import MultiPoly, QuotientAlgebra, groebner, jacobian, order_key
from .quadform import scharlau_transfer
from .scheja_storch import ss_class, ss_form


@dataclass
class ClosedPoint:
    """A closed point of the zero scheme with its residue algebra.

    coordinates are residue elements, one per original variable, and
    every system polynomial vanishes on them exactly (checked at
    construction time by fiber_points).
    """

    residue: EtaleAlgebra
    coordinates: tuple
    variables: tuple

    @property
    def degree(self):
        return self.residue.degree


def _shift_system(system, value):
    if value is None:
        return list(system)
    out = []
    for g, v in zip(system, value):
        ctx = g.ctx
        if isinstance(v, int):
            v = ctx.from_int(v)
        out.append(g - MultiPoly.const(ctx, g.variables, v))
    return out


def local_index_simple(system, point: ClosedPoint) -> GWClass:
    """Transfer of <det Jac> at a simple zero down to the base field."""
    residue = point.residue
    rows = []
    for row in jacobian(system):
        rows.append([g.eval_in(residue, list(point.coordinates)) for g in row])
    det = exact_det(residue, rows)
    if residue.is_zero(det):
        raise NotSimple(
            "Jacobian determinant vanishes at the point; use the global "
            "Scheja-Storch class of the local factor instead")
    return scharlau_transfer(residue, GWClass(residue, 0, [det]))


def fiber_points(system, value=None, univariate_factors=None):
    """Decompose a triangular fiber into closed points.

    The system minus the target value must be triangular after a lex
    Groebner computation: one univariate polynomial in the first
    variable, then each later variable cut out linearly over the
    accumulated residue.  Univariate factors beyond degree 3 need the
    built-in table (x^n -+ 1, n <= 12) or univariate_factors.
    """
    system = _shift_system(system, value)
    ctx = system[0].ctx
    variables = system[0].variables
    r = len(variables)
    reversed_vars = tuple(reversed(variables))
    mapped = [g.with_variables(reversed_vars) for g in system]
    gb = groebner(mapped, order="lex")
    algebra = QuotientAlgebra(mapped, order="lex", gb=gb)  # NonIsolatedZeros check
    if algebra.dim == 0:
        return []  # empty fiber
    key = order_key("lex")

    univariate = None
    rules = {}
    for g in gb:
        lt, _ = g.leading(key)
        support = [i for i, e in enumerate(lt) if e]
        if support == [r - 1]:
            coeffs = g.univariate_in(r - 1)
            if coeffs is not None:
                univariate = coeffs
        elif len(support) == 1 and lt[support[0]] == 1:
            rules[support[0]] = g
    if univariate is None:
        raise NotTriangular("no univariate relation in the first variable")
    for pos in range(r - 1):
        if pos not in rules:
            raise NotTriangular(
                f"variable {reversed_vars[pos]} is not cut out linearly "
                "(triangular shape with degree-1 later variables required)")

    factors = factor_univariate(ctx, univariate, supplied=univariate_factors)
    factors.sort(key=lambda f: (len(f[0]), tuple(ctx.sort_key(c) for c in f[0])))

    points = []
    for coeffs, _mult, certification in factors:
        residue = EtaleAlgebra(
            ctx, list(coeffs),
            irreducibility="irreducible" if certification == "irreducible"
            else None)
        known = {r - 1: residue.gen()}  # position of the first variable
        for pos in range(r - 2, -1, -1):
            g = rules[pos]
            values = [known.get(i, residue.zero()) for i in range(r)]
            used = {reversed_vars[i] for i in range(r) if i in known}
            if not (g.used_variables() - {reversed_vars[pos]}) <= used:
                raise NotTriangular(
                    f"relation for {reversed_vars[pos]} uses variables that "
                    "are not yet determined")
            # g = v_pos + q(later vars); evaluating with v_pos = 0 yields q
            gval = g.eval_in(residue, values)
            known[pos] = residue.neg(gval)
        coordinates = tuple(known[r - 1 - j] for j in range(r))
        for g in system:
            if not residue.is_zero(g.eval_in(residue, list(coordinates))):
                raise AssertionError("fiber point does not satisfy the system")
        points.append(ClosedPoint(residue, coordinates, variables))
    return points


def global_degree(system, value=None, order="degrevlex", budget=None) -> GWClass:
    """Scheja-Storch class of the fiber over the target value."""
    return ss_class(_shift_system(system, value), order=order, budget=budget)


@dataclass
class ConsistencyReport:
    system: list
    value: list | None
    local_sum: GWClass
    global_class: GWClass
    point_count: int
    equal: bool | None
    verdict: str
    local_invariants: dict | None = None
    global_invariants: dict | None = None

    def to_json(self):
        return {
            "system": [str(g) for g in self.system],
            "value": [str(v) for v in self.value] if self.value else None,
            "sum_of_local_indices": self.local_sum.to_json(),
            "global_degree": self.global_class.to_json(),
            "points": self.point_count,
            "local_invariants": self.local_invariants,
            "global_invariants": self.global_invariants,
            "gw_equal": self.equal,
            "verdict": self.verdict,
        }


def consistency_report(system, value=None, univariate_factors=None):
    """Compare the sum of simple-zero local indices with the global class."""
    points = fiber_points(system, value, univariate_factors)
    shifted = _shift_system(system, value)
    ctx = shifted[0].ctx
    local_sum = GWClass.zero(ctx)
    for p in points:
        local_sum = local_sum + local_index_simple(shifted, p)
    global_class = ss_form(shifted).gw_class
    local_inv = global_inv = None
    try:
        equal = gw_equal(local_sum, global_class)
        local_inv = gw_invariants(local_sum).to_json()
        global_inv = gw_invariants(global_class).to_json()
    except UnsupportedField:
        equal = None
    if equal is True:
        verdict = "match"
    elif equal is False:
        verdict = "mismatch"
    else:
        verdict = "undecided (extension field; compare ranks)"
    return ConsistencyReport(system=list(system), value=value,
                             local_sum=local_sum, global_class=global_class,
                             point_count=len(points), equal=equal,
                             verdict=verdict, local_invariants=local_inv,
                             global_invariants=global_inv)
