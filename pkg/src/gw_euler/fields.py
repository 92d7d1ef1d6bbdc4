"""Exact base fields and their finite etale extensions.

Supported contexts: the rationals, odd prime fields, and extensions by a
monic squarefree univariate modulus (single level over Q or F_p; towers
are flattened by the caller).  Elements are raw values: Fraction over Q,
int over F_p, tuple of base raws over an extension.  Every operation is a
pure function on immutable data.

Also home to the number-theoretic primitives (Legendre and Hilbert
symbols) that feed Grothendieck-Witt invariants.
"""

from fractions import Fraction

from . import univar
from .errors import CharTwo, NotSquarefree
from .intfactor import divisors, is_prime

INF = "inf"


class FieldCtx:
    """Common interface for exact field arithmetic on raw values."""

    kind = "?"
    characteristic = 0

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def from_int(self, n):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def eq(self, a, b):
        raise NotImplementedError

    def is_zero(self, a):
        return self.eq(a, self.zero())

    def pow(self, a, n):
        if n < 0:
            return self.pow(self.inv(a), -n)
        acc = self.one()
        while n:
            if n & 1:
                acc = self.mul(acc, a)
            a = self.mul(a, a)
            n >>= 1
        return acc

    def sort_key(self, a):
        """Total order on raw values, used only for deterministic output."""
        raise NotImplementedError

    def format(self, a) -> str:
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def elem_to_json(self, a):
        raise NotImplementedError

    def elem_from_json(self, obj):
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError

    def __repr__(self):
        return self.describe()


class Rationals(FieldCtx):
    """The field Q; raw values are Fraction (always in lowest terms)."""

    kind = "Q"
    characteristic = 0

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in Q")
        return 1 / a

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by 0 in Q")
        return a / b

    def eq(self, a, b):
        return a == b

    def is_zero(self, a):
        return a == 0

    def sort_key(self, a):
        return (abs(a), a < 0)

    def format(self, a):
        return str(a)

    def parse(self, text):
        return Fraction(text.strip())

    def elem_to_json(self, a):
        if a.denominator == 1:
            return a.numerator
        return str(a)

    def elem_from_json(self, obj):
        if isinstance(obj, str):
            return Fraction(obj)
        if isinstance(obj, int):
            return Fraction(obj)
        raise ValueError(f"cannot read a rational from {obj!r}")

    def describe(self):
        return "Q"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")


class PrimeField(FieldCtx):
    """The field F_p for an odd prime p; raw values are ints in [0, p)."""

    kind = "Fp"

    def __init__(self, p: int):
        if p == 2:
            raise CharTwo("characteristic 2 is not supported")
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, n):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"inverse of 0 in F_{self.p}")
        return pow(a, self.p - 2, self.p)

    def eq(self, a, b):
        return (a - b) % self.p == 0

    def is_zero(self, a):
        return a % self.p == 0

    def sort_key(self, a):
        return (a % self.p,)

    def format(self, a):
        return str(a % self.p)

    def parse(self, text):
        text = text.strip()
        if "/" in text:
            num, den = text.split("/")
            return self.div(int(num) % self.p, int(den) % self.p)
        return int(text) % self.p

    def elem_to_json(self, a):
        return a % self.p

    def elem_from_json(self, obj):
        return int(obj) % self.p

    def least_nonresidue(self):
        for n in range(2, self.p):
            if legendre(n, self.p) == -1:
                return n
        raise AssertionError("no quadratic non-residue found")

    def describe(self):
        return f"F_{self.p}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))


class EtaleAlgebra(FieldCtx):
    """base[t]/(m(t)) for a monic squarefree modulus m.

    Acts both as the ExtField context (when the modulus is irreducible)
    and as a split etale algebra (when it is not): addition,
    multiplication and traces are always defined; inverses exist exactly
    for non zero-divisors.  The power basis is 1, t, ..., t^(d-1) and raw
    elements are coordinate tuples of base raws.

    irreducibility is one of "irreducible", "reducible", "unverified".
    """

    kind = "ext"

    def __init__(self, base: FieldCtx, modulus, var: str = "t",
                 irreducibility: str | None = None):
        if base.characteristic == 2:
            raise CharTwo("characteristic 2 base field")
        modulus = univar.trim(base, [_coerce(base, c) for c in modulus])
        if len(modulus) < 2:
            raise ValueError("modulus must have degree >= 1")
        if not base.eq(modulus[-1], base.one()):
            raise ValueError("modulus must be monic")
        if not univar.is_squarefree(base, modulus):
            raise NotSquarefree(
                "modulus has a repeated factor; the trace pairing degenerates")
        self.base = base
        self.modulus = tuple(modulus)
        self.degree = len(modulus) - 1
        self.var = var
        self.characteristic = base.characteristic
        if irreducibility is None:
            irreducibility = _classify_irreducibility(base, modulus)
        self.irreducibility = irreducibility
        self._power_table = self._build_power_table()
        self._trace_table = self._build_trace_table()

    # power basis bookkeeping

    def _build_power_table(self):
        # coords of t^k for k = 0 .. 2d-2
        d = self.degree
        base = self.base
        table = []
        cur = [base.one()] + [base.zero()] * (d - 1)
        for k in range(2 * d - 1):
            table.append(tuple(cur))
            # multiply by t, reduce by modulus
            nxt = [base.zero()] + cur[:]
            if len(nxt) > d:
                lead = nxt.pop()
                if not base.is_zero(lead):
                    for i in range(d):
                        nxt[i] = base.sub(nxt[i], base.mul(lead, self.modulus[i]))
            cur = nxt
        return table

    def _build_trace_table(self):
        # Tr(t^k) for k = 0 .. d-1 via the multiplication matrix of t^k:
        # its (j,j) entry is coord j of t^(k+j).
        d = self.degree
        base = self.base
        out = []
        for k in range(d):
            acc = base.zero()
            for j in range(d):
                acc = base.add(acc, self._power_table[k + j][j])
            out.append(acc)
        return out

    def _power_coords(self, k):
        # coords of t^k for arbitrary k >= 0
        if k < len(self._power_table):
            return self._power_table[k]
        coeffs = [self.base.zero()] * k + [self.base.one()]
        _, r = univar.divmod_exact(self.base, coeffs, list(self.modulus))
        r = r + [self.base.zero()] * (self.degree - len(r))
        return tuple(r)

    # field-context interface

    def zero(self):
        return (self.base.zero(),) * self.degree

    def one(self):
        return self.embed(self.base.one())

    def from_int(self, n):
        return self.embed(self.base.from_int(n))

    def embed(self, c):
        return (c,) + (self.base.zero(),) * (self.degree - 1)

    def gen(self):
        """The class of t."""
        return self._power_coords(1)

    def lift(self, a):
        """Coordinates of a as a univariate coefficient list over base."""
        return univar.trim(self.base, list(a))

    def add(self, a, b):
        base = self.base
        return tuple(base.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        base = self.base
        return tuple(base.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        base = self.base
        return tuple(base.neg(x) for x in a)

    def mul(self, a, b):
        base = self.base
        d = self.degree
        conv = [base.zero()] * (2 * d - 1)
        for i, x in enumerate(a):
            if base.is_zero(x):
                continue
            for j, y in enumerate(b):
                if base.is_zero(y):
                    continue
                conv[i + j] = base.add(conv[i + j], base.mul(x, y))
        out = [base.zero()] * d
        for k, c in enumerate(conv):
            if base.is_zero(c):
                continue
            pk = self._power_table[k]
            for i in range(d):
                out[i] = base.add(out[i], base.mul(c, pk[i]))
        return tuple(out)

    def inv(self, a):
        g, u, _ = univar.xgcd(self.base, self.lift(a), list(self.modulus))
        if univar.degree(self.base, g) != 0:
            raise ZeroDivisionError(
                "element is a zero divisor (modulus not irreducible here)")
        u = u + [self.base.zero()] * (self.degree - len(u))
        return tuple(u[: self.degree])

    def eq(self, a, b):
        base = self.base
        return all(base.eq(x, y) for x, y in zip(a, b))

    def is_zero(self, a):
        base = self.base
        return all(base.is_zero(x) for x in a)

    def trace(self, a):
        """Trace of multiplication-by-a, an element of the base field."""
        base = self.base
        acc = base.zero()
        for k, c in enumerate(a):
            if not base.is_zero(c):
                acc = base.add(acc, base.mul(c, self._trace_table[k]))
        return acc

    def in_base(self, a):
        """True when all non-constant coordinates vanish."""
        return all(self.base.is_zero(c) for c in a[1:])

    def sort_key(self, a):
        return tuple(self.base.sort_key(c) for c in a)

    def format(self, a):
        base = self.base
        parts = []
        for k, c in enumerate(a):
            if base.is_zero(c):
                continue
            cs = base.format(c)
            if k == 0:
                parts.append(cs)
            else:
                mono = self.var if k == 1 else f"{self.var}^{k}"
                parts.append(mono if cs == "1" else
                             f"-{mono}" if cs == "-1" else f"{cs}*{mono}")
        if not parts:
            return "0"
        text = parts[0]
        for part in parts[1:]:
            text += " - " + part[1:] if part.startswith("-") else " + " + part
        return text

    def parse(self, text):
        from .polys import parse_poly  # local import avoids a cycle at load
        poly = parse_poly(text, self.base, variables=(self.var,))
        coeffs = [self.base.zero()] * max(
            (e[0] + 1 for e in poly.terms), default=0)
        for exps, c in poly.terms.items():
            coeffs[exps[0]] = c
        _, r = univar.divmod_exact(self.base, coeffs, list(self.modulus))
        r = r + [self.base.zero()] * (self.degree - len(r))
        return tuple(r[: self.degree])

    def elem_to_json(self, a):
        return [self.base.elem_to_json(c) for c in a]

    def elem_from_json(self, obj):
        if isinstance(obj, (int, str)):
            return self.embed(self.base.elem_from_json(obj))
        coords = [self.base.elem_from_json(c) for c in obj]
        coords += [self.base.zero()] * (self.degree - len(coords))
        return tuple(coords[: self.degree])

    def describe(self):
        mod = " + ".join(
            f"{self.base.format(c)}*{self.var}^{k}" if k else self.base.format(c)
            for k, c in enumerate(self.modulus) if not self.base.is_zero(c))
        return f"{self.base.describe()}[{self.var}]/({mod})"

    def __eq__(self, other):
        return (isinstance(other, EtaleAlgebra) and other.base == self.base
                and other.modulus == self.modulus)

    def __hash__(self):
        return hash(("ext", self.base, self.modulus))


QQ = Rationals()


def _coerce(base, c):
    if isinstance(c, int):
        return base.from_int(c)
    if isinstance(c, Fraction) and base.kind == "Q":
        return c
    return c


def _rational_roots(coeffs):
    """All rational roots of a polynomial with Fraction coefficients."""
    coeffs = univar.trim(QQ, coeffs)
    if len(coeffs) <= 1:
        return []
    den_lcm = 1
    for c in coeffs:
        den_lcm = den_lcm * c.denominator // _gcd(den_lcm, c.denominator)
    ints = [int(c * den_lcm) for c in coeffs]
    roots = []
    if ints and ints[0] == 0:
        roots.append(Fraction(0))
        while ints and ints[0] == 0:
            ints = ints[1:]
    if len(ints) <= 1:
        return roots
    a0, an = ints[0], ints[-1]
    for p in divisors(a0):
        for q in divisors(an):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if cand in roots:
                    continue
                if univar.evaluate(QQ, coeffs, cand) == 0:
                    roots.append(cand)
    return roots


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def find_root(base, coeffs):
    """Some root of the polynomial in base, or None."""
    if base.kind == "Q":
        roots = _rational_roots(coeffs)
        return roots[0] if roots else None
    if base.kind == "Fp":
        for x in range(base.p):
            if base.is_zero(univar.evaluate(base, coeffs, x)):
                return x
        return None
    return None


def _classify_irreducibility(base, modulus):
    d = len(modulus) - 1
    if d == 1:
        return "irreducible"
    if base.kind not in ("Q", "Fp"):
        return "unverified"
    if find_root(base, list(modulus)) is not None:
        return "reducible"
    if d <= 3:
        # no root and degree <= 3 forces irreducibility
        return "irreducible"
    return "unverified"


def make_extension(base: FieldCtx, modulus, var: str = "t",
                   irreducibility: str | None = None) -> EtaleAlgebra:
    """Build base[t]/(m) for a monic squarefree m.

    modulus may be a coefficient list (constant first, leading 1) or a
    polynomial string such as "t^2+t+1".  Raises NotSquarefree when the
    trace pairing would degenerate and CharTwo over characteristic 2.
    Irreducibility is certified only up to degree 3 (rational-root peel
    plus the no-root criterion); higher degrees are flagged "unverified"
    unless the caller certifies them.
    """
    if isinstance(modulus, str):
        from .polys import parse_poly
        poly = parse_poly(modulus, base, variables=(var,))
        coeffs = [base.zero()] * max((e[0] + 1 for e in poly.terms), default=0)
        for exps, c in poly.terms.items():
            coeffs[exps[0]] = c
        modulus = coeffs
    return EtaleAlgebra(base, modulus, var=var, irreducibility=irreducibility)


def trace_of(algebra: EtaleAlgebra, elem):
    """Trace of the multiplication-by-elem endomorphism, in the base."""
    return algebra.trace(elem)


def legendre(a: int, p: int) -> int:
    """Quadratic residue symbol (a|p) in {-1, 0, 1} for odd prime p."""
    a %= p
    if a == 0:
        return 0
    r = pow(a, (p - 1) // 2, p)
    return 1 if r == 1 else -1


def _val_unit(x: Fraction, p: int):
    """(v, u) with x = p^v * u and u a p-adic unit (as a Fraction)."""
    num, den = x.numerator, x.denominator
    v = 0
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v, Fraction(num, den)


def _unit_mod(u: Fraction, m: int) -> int:
    """u mod m for a fraction whose denominator is prime to m."""
    return u.numerator * pow(u.denominator, -1, m) % m


def hilbert_symbol(a, b, place) -> int:
    """Hilbert symbol (a, b)_v for nonzero rationals at a prime or "inf"."""
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ValueError("hilbert symbol needs nonzero arguments")
    if place in (INF, None) or place == float("inf"):
        return -1 if (a < 0 and b < 0) else 1
    p = int(place)
    alpha, u = _val_unit(a, p)
    beta, v = _val_unit(b, p)
    if p == 2:
        eps_u = (_unit_mod(u, 4) - 1) // 2 % 2
        eps_v = (_unit_mod(v, 4) - 1) // 2 % 2
        om_u = (_unit_mod(u, 8) ** 2 - 1) // 8 % 2
        om_v = (_unit_mod(v, 8) ** 2 - 1) // 8 % 2
        e = eps_u * eps_v + alpha * om_v + beta * om_u
        return -1 if e % 2 else 1
    eps_p = ((p - 1) // 2) % 2
    sym = 1
    if (alpha * beta * eps_p) % 2:
        sym = -sym
    if beta % 2:
        sym *= legendre(_unit_mod(u, p), p)
    if alpha % 2:
        sym *= legendre(_unit_mod(v, p), p)
    return sym


def field_to_json(ctx: FieldCtx):
    if ctx.kind == "Q":
        return {"field": "Q"}
    if ctx.kind == "Fp":
        return {"field": "Fp", "p": ctx.p}
    return {"field": "ext", "base": field_to_json(ctx.base),
            "modulus": [ctx.base.elem_to_json(c) for c in ctx.modulus],
            "var": ctx.var}


def field_from_json(obj) -> FieldCtx:
    kind = obj["field"]
    if kind == "Q":
        return QQ
    if kind == "Fp":
        return PrimeField(int(obj["p"]))
    if kind == "ext":
        base = field_from_json(obj["base"])
        modulus = [base.elem_from_json(c) for c in obj["modulus"]]
        return EtaleAlgebra(base, modulus, var=obj.get("var", "t"))
    raise ValueError(f"unknown field spec {obj!r}")


def parse_field_flag(text: str) -> FieldCtx:
    """Parse a --field flag value: Q | fp:<p> | ext:<json-file>."""
    text = text.strip()
    if text in ("Q", "q"):
        return QQ
    if text.lower().startswith("fp:"):
        return PrimeField(int(text.split(":", 1)[1]))
    if text.lower().startswith("ext:"):
        import json
        with open(text.split(":", 1)[1], encoding="utf-8") as handle:
            return field_from_json(json.load(handle))
    raise ValueError(f"cannot parse field spec {text!r}")
