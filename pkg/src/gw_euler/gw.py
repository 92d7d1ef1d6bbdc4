"""Grothendieck-Witt classes: formal sums of rank-1 forms plus hyperbolic planes.

A GWClass is a hyperbolic count plus a multiset of square classes <a>.
Simplification strips square factors (per field canonical form) and folds
every pair {<a>, <-a>} into a hyperbolic plane.  Equality is decided by
complete invariants: rank/signature/disc/Hasse over Q (Hasse-Minkowski),
rank/disc over F_p; extension contexts only support rank (UnsupportedField).

Convention: the discriminant is the plain square class of the product of
the diagonal entries (each hyperbolic plane contributes <-1>); the Hasse
set records the odd primes where the Hasse-Witt invariant is -1 (the
places 2 and infinity are then determined by the product formula and the
signature, so the four recorded invariants are still complete over Q).
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import UnsupportedField, ZeroEntry
from .fields import EtaleAlgebra, FieldCtx, hilbert_symbol, legendre
from .intfactor import factorize, squarefree_part


class SquareClass:
    """A nonzero field element up to squares, in canonical form.

    Over Q the representative is a squarefree integer with the sign
    preserved; over F_p it is 1 or the least non-residue; over an
    extension it is only denominator-cleared (canonical = False).
    """

    __slots__ = ("ctx", "rep", "canonical")

    def __init__(self, ctx: FieldCtx, rep):
        if isinstance(rep, int) and ctx.kind == "Q":
            rep = Fraction(rep)
        if ctx.is_zero(rep):
            raise ZeroEntry("<0> is not a square class (degenerate form)")
        self.ctx = ctx
        self.rep, self.canonical = _canonicalize(ctx, rep)

    def neg(self):
        return SquareClass(self.ctx, self.ctx.neg(self.rep))

    def times(self, other):
        return SquareClass(self.ctx, self.ctx.mul(self.rep, other.rep))

    def key(self):
        return self.ctx.sort_key(self.rep)

    def __eq__(self, other):
        if not isinstance(other, SquareClass):
            return NotImplemented
        return self.ctx == other.ctx and self.ctx.eq(self.rep, other.rep)

    def __hash__(self):
        return hash((self.ctx, self.key()))

    def render(self):
        if self.ctx.kind == "Q":
            return str(self.rep.numerator)
        return self.ctx.format(self.rep)

    def to_json(self):
        if self.ctx.kind == "Q":
            return [self.rep.numerator]
        if self.ctx.kind == "Fp":
            return [self.rep]
        return list(self.ctx.elem_to_json(self.rep))

    def __repr__(self):
        return f"<{self.render()}>"


def _canonicalize(ctx, rep):
    if ctx.kind == "Q":
        n = rep.numerator * rep.denominator
        return Fraction(squarefree_part(n)), True
    if ctx.kind == "Fp":
        if legendre(rep, ctx.p) == 1:
            return 1, True
        return ctx.least_nonresidue(), True
    if ctx.kind == "ext" and isinstance(ctx, EtaleAlgebra):
        # clear denominators by a square of the common denominator
        if ctx.base.kind == "Q":
            den = 1
            for c in rep:
                den = den * c.denominator // _gcd(den, c.denominator)
            rep = ctx.mul(rep, ctx.embed(Fraction(den * den)))
        return rep, False
    return rep, False


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


class GWClass:
    """m*H + sum of square classes, kept simplified."""

    __slots__ = ("ctx", "hyperbolic_count", "residual")

    def __init__(self, ctx, hyperbolic_count=0, residual=()):
        if hyperbolic_count < 0:
            raise ValueError("hyperbolic count must be nonnegative")
        self.ctx = ctx
        classes = [r if isinstance(r, SquareClass) else SquareClass(ctx, r)
                   for r in residual]
        folded, extra_h = _fold_pairs(ctx, classes)
        self.hyperbolic_count = hyperbolic_count + extra_h
        self.residual = tuple(sorted(folded, key=SquareClass.key))

    @classmethod
    def zero(cls, ctx):
        return cls(ctx, 0, ())

    @classmethod
    def hyperbolic(cls, ctx, m=1):
        return cls(ctx, m, ())

    @property
    def rank(self):
        return 2 * self.hyperbolic_count + len(self.residual)

    def __add__(self, other):
        if other.ctx != self.ctx:
            raise ValueError("cannot add classes over different fields")
        return GWClass(self.ctx, self.hyperbolic_count + other.hyperbolic_count,
                       self.residual + other.residual)

    def scale(self, a):
        """Multiply by the rank-1 class <a>; hyperbolic planes are absorbed."""
        unit = a if isinstance(a, SquareClass) else SquareClass(self.ctx, a)
        return GWClass(self.ctx, self.hyperbolic_count,
                       [r.times(unit) for r in self.residual])

    def __eq__(self, other):
        """Structural equality of the simplified presentation."""
        if not isinstance(other, GWClass):
            return NotImplemented
        return (self.ctx == other.ctx
                and self.hyperbolic_count == other.hyperbolic_count
                and self.residual == other.residual)

    def __hash__(self):
        return hash((self.ctx, self.hyperbolic_count, self.residual))

    def render(self):
        parts = []
        if self.hyperbolic_count == 1:
            parts.append("H")
        elif self.hyperbolic_count > 1:
            parts.append(f"{self.hyperbolic_count}H")
        i = 0
        while i < len(self.residual):
            j = i
            while j < len(self.residual) and self.residual[j] == self.residual[i]:
                j += 1
            count = j - i
            body = f"<{self.residual[i].render()}>"
            parts.append(body if count == 1 else f"{count}{body}")
            i = j
        return " + ".join(parts) if parts else "0"

    def to_json(self):
        return {"H": self.hyperbolic_count,
                "residual": [r.to_json() for r in self.residual]}

    @classmethod
    def from_json(cls, obj, ctx):
        residual = []
        for entry in obj.get("residual", []):
            if isinstance(entry, list):
                if ctx.kind == "ext":
                    residual.append(SquareClass(ctx, ctx.elem_from_json(entry)))
                else:
                    residual.append(SquareClass(ctx, ctx.elem_from_json(entry[0])))
            else:
                residual.append(SquareClass(ctx, ctx.elem_from_json(entry)))
        return cls(ctx, obj.get("H", 0), residual)

    def __repr__(self):
        return self.render()


def _fold_pairs(ctx, classes):
    """Fold {<a>, <-a>} pairs into hyperbolic planes."""
    remaining = list(classes)
    out = []
    hyps = 0
    while remaining:
        item = remaining.pop()
        partner = item.neg()
        try:
            remaining.remove(partner)
            hyps += 1
        except ValueError:
            out.append(item)
    return out, hyps


def gw_simplify(terms, ctx=None) -> GWClass:
    """Simplify a list of rank-1 generators into a GWClass.

    Accepts SquareClass values or raw field elements (with ctx supplied).
    """
    classes = []
    for t in terms:
        if isinstance(t, SquareClass):
            classes.append(t)
        else:
            if ctx is None:
                raise ValueError("raw representatives need an explicit ctx")
            classes.append(SquareClass(ctx, t))
    if ctx is None:
        if not classes:
            raise ValueError("cannot infer the field of an empty sum")
        ctx = classes[0].ctx
    if any(c.ctx != ctx for c in classes):
        raise ValueError("mixed field contexts in one sum")
    return GWClass(ctx, 0, classes)


@dataclass(frozen=True)
class GWInvariants:
    rank: int
    disc: SquareClass
    signature: int | None
    hasse: frozenset | None

    def triple(self):
        """(rank, signature, disc rep) for reports and comparisons."""
        disc = (self.disc.rep.numerator if self.disc.ctx.kind == "Q"
                else self.disc.rep)
        return (self.rank, self.signature, disc)

    def to_json(self):
        return {"rank": self.rank,
                "disc": self.disc.to_json(),
                "signature": self.signature,
                "hasse": sorted(self.hasse) if self.hasse is not None else None}


def gw_invariants(c: GWClass) -> GWInvariants:
    """Rank, discriminant, and (over Q) signature and Hasse place set."""
    ctx = c.ctx
    if ctx.kind not in ("Q", "Fp"):
        raise UnsupportedField(
            "invariants over extension fields are limited to the rank")
    disc = SquareClass(ctx, ctx.one())
    if c.hyperbolic_count % 2:
        disc = SquareClass(ctx, ctx.neg(ctx.one()))
    for r in c.residual:
        disc = disc.times(r)
    if ctx.kind == "Fp":
        return GWInvariants(c.rank, disc, None, None)
    signature = sum(1 if r.rep > 0 else -1 for r in c.residual)
    diag = [Fraction(1), Fraction(-1)] * c.hyperbolic_count
    diag += [r.rep for r in c.residual]
    places = set()
    for a in diag:
        for p in factorize(abs(a.numerator)):
            if p != 2:
                places.add(p)
    hasse = set()
    for p in sorted(places):
        eps = 1
        for i in range(len(diag)):
            for j in range(i + 1, len(diag)):
                eps *= hilbert_symbol(diag[i], diag[j], p)
        if eps == -1:
            hasse.add(p)
    return GWInvariants(c.rank, disc, signature, frozenset(hasse))


def gw_equal(c1: GWClass, c2: GWClass) -> bool:
    """Exact equality in GW(k) for k = Q (Hasse-Minkowski) or F_p."""
    if c1.ctx != c2.ctx:
        raise ValueError("classes live over different fields")
    ctx = c1.ctx
    if ctx.kind == "Q":
        i1, i2 = gw_invariants(c1), gw_invariants(c2)
        return (i1.rank == i2.rank and i1.signature == i2.signature
                and i1.disc == i2.disc and i1.hasse == i2.hasse)
    if ctx.kind == "Fp":
        i1, i2 = gw_invariants(c1), gw_invariants(c2)
        return i1.rank == i2.rank and i1.disc == i2.disc
    raise UnsupportedField(
        "equality over extension fields is not decided; compare invariants")


def witt_class(c: GWClass) -> GWClass:
    """Projection to the Witt group: drop the hyperbolic part."""
    return GWClass(c.ctx, 0, c.residual)


def hyperbolic_split(c: GWClass):
    """Largest m with c = m*H + <d> over Q, if the residue has rank 1.

    Returns (m, SquareClass d) when c equals m*H + <d> exactly in GW(Q),
    else None.  Uses completeness of rank/signature/disc/Hasse.
    """
    if c.ctx.kind != "Q":
        raise UnsupportedField("hyperbolic splitting implemented over Q only")
    if c.rank % 2 == 0:
        return None
    m = (c.rank - 1) // 2
    inv = gw_invariants(c)
    d = inv.disc if m % 2 == 0 else inv.disc.times(
        SquareClass(c.ctx, Fraction(-1)))
    candidate = GWClass(c.ctx, m, [d])
    if gw_equal(c, candidate):
        return m, d
    return None


def parse_gw(text: str, ctx) -> GWClass:
    """Parse the canonical rendering, e.g. "2H + <1> + <-3>" or "3<1>"."""
    text = text.strip()
    if text == "0":
        return GWClass.zero(ctx)
    hyper = 0
    residual = []
    for chunk in text.split("+"):
        chunk = chunk.strip()
        if not chunk:
            raise ValueError("empty summand in GW expression")
        if chunk.endswith("H"):
            count = chunk[:-1].strip()
            hyper += int(count) if count else 1
            continue
        count = 1
        if not chunk.startswith("<"):
            head, sep, rest = chunk.partition("<")
            if not sep:
                raise ValueError(f"cannot parse GW summand {chunk!r}")
            count = int(head)
            chunk = "<" + rest
        if not (chunk.startswith("<") and chunk.endswith(">")):
            raise ValueError(f"cannot parse GW summand {chunk!r}")
        residual.extend([SquareClass(ctx, ctx.parse(chunk[1:-1]))] * count)
    return GWClass(ctx, hyper, residual)
