"""Fans, Hirzebruch-Jung resolutions, and exact intersection theory.

The surfaces are the projective toric surface of a polygon's inner-normal
fan and its blow-up X at the torus identity.  Weil divisor classes live on
a fixed generator list (one boundary divisor per ray, then the exceptional
curve E), intersection numbers are exact rationals, and singular surfaces
are handled by routing every pairing through the minimal resolution.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .lattice import (
    LatticePolygon,
    Vec,
    normal_fan_rays,
    normalized_volume,
    smith_normal_form,
)


class NotSmooth(ValueError):
    """Raised when an operation needs a smooth complete fan."""


class FanMismatch(ValueError):
    """Raised when a fan does not refine the normal fan of a polygon."""


class NotNegativeDefinite(ValueError):
    """Raised when a contracted set fails to have negative definite Gram."""


def _cross(a: Vec, b: Vec) -> int:
    return a[0] * b[1] - a[1] * b[0]


def _angle_key(v: Vec) -> tuple[int, Fraction]:
    """Exact angular sort key, counterclockwise from the direction (1, 0)."""
    x, y = v
    if y == 0:
        sector = 0 if x > 0 else 4
    elif y > 0:
        sector = 1 if x > 0 else (2 if x == 0 else 3)
    else:
        sector = 5 if x < 0 else (6 if x == 0 else 7)
    return (sector, Fraction(y, x) if x else Fraction(0))


class Fan2D:
    """Complete fan in the plane: primitive rays, strictly counterclockwise.

    Rays are stored in a canonical order (sorted by angle starting from the
    direction of (1, 0)); the two-dimensional cones are the consecutive ray
    pairs, including the wrap-around pair.  Every consecutive gap must be
    strictly less than a half turn, which makes the fan complete.
    """

    __slots__ = ("rays",)

    def __init__(self, rays: Iterable[Sequence[int]]):
        seen: list[Vec] = []
        for r in rays:
            v = (int(r[0]), int(r[1]))
            if v == (0, 0):
                raise ValueError("zero vector is not a ray")
            if gcd(abs(v[0]), abs(v[1])) != 1:
                raise ValueError(f"ray {v} is not primitive")
            if v not in seen:
                seen.append(v)
        if len(seen) < 3:
            raise ValueError("a complete fan needs at least three rays")
        seen.sort(key=_angle_key)
        for i, v in enumerate(seen):
            w = seen[(i + 1) % len(seen)]
            if _cross(v, w) <= 0:
                raise ValueError(
                    f"rays {v}, {w} leave an angular gap of at least a half turn"
                )
        self.rays: tuple[Vec, ...] = tuple(seen)

    def __len__(self) -> int:
        return len(self.rays)

    def __iter__(self):
        return iter(self.rays)

    def __contains__(self, ray: Sequence[int]) -> bool:
        return (int(ray[0]), int(ray[1])) in self.rays

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Fan2D) and self.rays == other.rays

    def __hash__(self) -> int:
        return hash(self.rays)

    def __repr__(self) -> str:
        return f"Fan2D({list(map(list, self.rays))})"

    def index(self, ray: Sequence[int]) -> int:
        return self.rays.index((int(ray[0]), int(ray[1])))

    def cones(self) -> list[tuple[int, int]]:
        n = len(self.rays)
        return [(i, (i + 1) % n) for i in range(n)]

    def cone_determinants(self) -> list[int]:
        return [_cross(self.rays[i], self.rays[j]) for i, j in self.cones()]

    def is_smooth(self) -> bool:
        return all(d == 1 for d in self.cone_determinants())


def fan_from_polygon(delta: LatticePolygon) -> Fan2D:
    """Inner-normal fan of a two-dimensional lattice polygon."""
    return Fan2D(normal_fan_rays(delta))


def _bezout(a: int, b: int) -> tuple[int, int]:
    """s, t with s*a + t*b = gcd(a, b)."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return x0, y0


def _hj_between(v: Vec, w: Vec) -> list[Vec]:
    """Rays strictly between v and w in the minimal resolution of cone(v, w).

    Peels off the unique ray u with det(v, u) = 1 and 0 < det(u, w) < det(v, w)
    (the hull point adjacent to v), then continues on cone(u, w); this is the
    Hirzebruch-Jung continued-fraction expansion of the cone parameters.
    """
    out: list[Vec] = []
    while (d := _cross(v, w)) != 1:
        if d <= 0:
            raise ValueError("cone generators must be positively oriented")
        s, t = _bezout(v[0], v[1])
        if s * v[0] + t * v[1] == -1:
            s, t = -s, -t
        u0 = (-t, s)  # det(v, u0) = v[0]*s + v[1]*t = 1
        k = _cross(u0, w)
        shift = ((k % d) - k) // d
        u = (u0[0] + shift * v[0], u0[1] + shift * v[1])
        assert _cross(v, u) == 1 and 0 < _cross(u, w) < d
        out.append(u)
        v = u
    return out


class ResolvedFan:
    """A fan together with its minimal smooth refinement.

    ``origin`` maps each refined ray to ``None`` when it is a ray of the base
    fan, and to the index i of the base cone (base.rays[i], base.rays[i+1])
    it was inserted into otherwise.
    """

    __slots__ = ("base", "refined", "origin")

    def __init__(self, base: Fan2D, refined: Fan2D, origin: dict[Vec, int | None]):
        self.base = base
        self.refined = refined
        self.origin = origin

    def exceptional_rays(self) -> list[Vec]:
        return [r for r in self.refined.rays if self.origin[r] is not None]


def resolve(fan: Fan2D) -> ResolvedFan:
    """Minimal smooth refinement by Hirzebruch-Jung insertion in each cone."""
    origin: dict[Vec, int | None] = {r: None for r in fan.rays}
    rays = list(fan.rays)
    for i, j in fan.cones():
        for u in _hj_between(fan.rays[i], fan.rays[j]):
            rays.append(u)
            origin[u] = i
    refined = Fan2D(rays)
    if not refined.is_smooth():
        raise AssertionError("refinement failed to produce a smooth fan")
    return ResolvedFan(fan, refined, origin)


def self_intersections(fan: Fan2D) -> tuple[int, ...]:
    """Self-intersection number of each boundary divisor of a smooth fan.

    On a smooth complete fan v_{i-1} + v_{i+1} = b * v_i with D_i^2 = -b;
    the projective plane gives (1, 1, 1).
    """
    rays = fan.rays
    n = len(rays)
    out = []
    for i in range(n):
        prev, cur, nxt = rays[i - 1], rays[i], rays[(i + 1) % n]
        if _cross(prev, cur) != 1 or _cross(cur, nxt) != 1:
            raise NotSmooth(f"cone at ray {cur} is singular")
        b = _cross(prev, nxt)
        if (prev[0] + nxt[0], prev[1] + nxt[1]) != (b * cur[0], b * cur[1]):
            raise NotSmooth(f"rays around {cur} violate the smooth fan relation")
        out.append(-b)
    return tuple(out)


def _solve_linear(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]):
    """Exact Gaussian elimination; raises ValueError on a singular system."""
    n = len(rows)
    a = [[Fraction(x) for x in rows[i]] + [Fraction(rhs[i])] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular linear system")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[i][n] for i in range(n)]


def is_negative_definite(gram: Sequence[Sequence[Fraction | int]]) -> bool:
    """Exact test via the signs of the leading principal minors."""
    n = len(gram)
    m = [[Fraction(gram[i][j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i):
            if m[i][j] != m[j][i]:
                raise ValueError("Gram matrix must be symmetric")
    sign = 1
    minor: list[list[Fraction]] = []
    for k in range(1, n + 1):
        minor = [row[:k] for row in m[:k]]
        sign = -sign
        if sign * _det(minor) <= 0:
            return False
    return True


def _det(m: list[list[Fraction]]) -> Fraction:
    n = len(m)
    a = [row[:] for row in m]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            if a[r][col] != 0:
                f = a[r][col] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det


class DivisorClass:
    """Weil divisor class on a fixed surface context.

    Coefficients are exact rationals over the generator list (D_1..D_N, E)
    of the context.  Equality is entrywise; use ``ctx.classes_equal`` to
    compare classes modulo the lattice relations.
    """

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: "SurfaceContext", coeffs: Sequence[Fraction | int]):
        if len(coeffs) != len(ctx.fan) + 1:
            raise ValueError("coefficient vector does not match the generator list")
        self.ctx = ctx
        self.coeffs: tuple[Fraction, ...] = tuple(Fraction(c) for c in coeffs)

    def _check(self, other: "DivisorClass") -> None:
        if self.ctx is not other.ctx:
            raise ValueError("classes live on different surface contexts")

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        self._check(other)
        return DivisorClass(self.ctx, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        self._check(other)
        return DivisorClass(self.ctx, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(self.ctx, [-a for a in self.coeffs])

    def __mul__(self, k: int | Fraction) -> "DivisorClass":
        return DivisorClass(self.ctx, [a * k for a in self.coeffs])

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, DivisorClass)
            and self.ctx is other.ctx
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((id(self.ctx), self.coeffs))

    def __repr__(self) -> str:
        names = [f"D{i + 1}" for i in range(len(self.ctx.fan))] + ["E"]
        terms = [
            f"{c}*{n}" for c, n in zip(self.coeffs, names) if c != 0
        ] or ["0"]
        return " + ".join(terms)

    def pair(self, other: "DivisorClass") -> Fraction:
        self._check(other)
        return self.ctx.pair(self, other)

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)


class SurfaceContext:
    """Immutable intersection-theory context for X = Bl_e of a toric surface.

    Built from a polygon and a fan refining the polygon's inner-normal fan
    (the normal fan itself by default).  Generators are the boundary divisors
    D_1..D_N in the fan's canonical ray order followed by E; the two lattice
    relations sum(<u, v_i> D_i) = 0 are recorded and checked to annihilate
    the intersection pairing.
    """

    __slots__ = (
        "polygon",
        "fan",
        "resolution",
        "matrix",
        "relations",
        "_rel_snf",
        "_pullbacks",
    )

    def __init__(self, polygon: LatticePolygon, fan: Fan2D | None = None):
        if fan is None:
            fan = fan_from_polygon(polygon)
        for ray in normal_fan_rays(polygon):
            if ray not in fan:
                raise FanMismatch(
                    f"fan lacks the ray {ray} normal to an edge of the polygon"
                )
        self.polygon = polygon
        self.fan = fan
        self.resolution = resolve(fan)
        self._build_matrix()
        n = len(fan)
        self.relations = tuple(
            tuple(v[axis] for v in fan.rays) + (0,) for axis in (0, 1)
        )
        self._rel_snf = smith_normal_form([list(r) for r in self.relations])
        for rel in self.relations:
            for row in self.matrix:
                if sum(f * c for f, c in zip(row, rel)) != 0:
                    raise AssertionError("lattice relation escapes the radical")
        assert all(
            self.matrix[i][j] == self.matrix[j][i]
            for i in range(n + 1)
            for j in range(n + 1)
        )

    def _build_matrix(self) -> None:
        res = self.resolution
        refined = res.refined
        r = len(refined)
        selfints = self_intersections(refined)
        # full matrix on the smooth refinement, boundary part only
        smooth = [[Fraction(0)] * r for _ in range(r)]
        for i in range(r):
            smooth[i][i] = Fraction(selfints[i])
            smooth[i][(i + 1) % r] = Fraction(1)
            smooth[(i + 1) % r][i] = Fraction(1)
        exc = [refined.index(e) for e in res.exceptional_rays()]
        pullbacks: list[list[Fraction]] = []
        for v in self.fan.rays:
            vec = [Fraction(0)] * r
            vec[refined.index(v)] = Fraction(1)
            if exc:
                gram = [[smooth[a][b] for b in exc] for a in exc]
                rhs = [-smooth[refined.index(v)][a] for a in exc]
                for pos, val in zip(exc, _solve_linear(gram, rhs)):
                    vec[pos] = val
            pullbacks.append(vec)
        self._pullbacks = tuple(tuple(p) for p in pullbacks)
        n = len(self.fan)
        m = [[Fraction(0)] * (n + 1) for _ in range(n + 1)]
        for i in range(n):
            si = [
                sum(pullbacks[i][a] * smooth[a][b] for a in range(r))
                for b in range(r)
            ]
            for j in range(n):
                m[i][j] = sum(si[b] * pullbacks[j][b] for b in range(r))
        m[n][n] = Fraction(-1)
        self.matrix = m

    def __repr__(self) -> str:
        return f"SurfaceContext({self.polygon!r}, rays={len(self.fan)})"

    @classmethod
    def from_polygon(
        cls,
        delta: LatticePolygon,
        *,
        smooth: bool = False,
        cover: Iterable[LatticePolygon] = (),
    ) -> "SurfaceContext":
        """Context whose fan refines the normal fans of delta and every cover
        polygon; with smooth=True the fan is the minimal smooth refinement."""
        rays = list(normal_fan_rays(delta))
        for np_ in cover:
            rays.extend(_support_normals(np_))
        fan = Fan2D(rays)
        if smooth:
            fan = resolve(fan).refined
        return cls(delta, fan)

    @property
    def generator_count(self) -> int:
        return len(self.fan) + 1

    def divisor(self, i: int) -> DivisorClass:
        """The class of the boundary divisor D_{i+1} (0-based index)."""
        coeffs = [0] * self.generator_count
        coeffs[i] = 1
        return DivisorClass(self, coeffs)

    def exceptional(self) -> DivisorClass:
        coeffs = [0] * self.generator_count
        coeffs[-1] = 1
        return DivisorClass(self, coeffs)

    def zero(self) -> DivisorClass:
        return DivisorClass(self, [0] * self.generator_count)

    def pair(self, c1: DivisorClass, c2: DivisorClass) -> Fraction:
        if c1.ctx is not self or c2.ctx is not self:
            raise ValueError("classes live on a different surface context")
        m = self.matrix
        return sum(
            a * sum(m[i][j] * b for j, b in enumerate(c2.coeffs) if b)
            for i, a in enumerate(c1.coeffs)
            if a
        )

    def gram(self, classes: Sequence[DivisorClass]):
        return [[self.pair(a, b) for b in classes] for a in classes]

    def classes_equal(self, c1: DivisorClass, c2: DivisorClass) -> bool:
        """Equality in the Weil class group, i.e. modulo the two relations."""
        d = (c1 - c2).coeffs
        if any(x.denominator != 1 for x in d):
            return False
        snf = self._rel_snf
        cols = len(d)
        y = [
            sum(int(d[i]) * snf.v[i][j] for i in range(cols)) for j in range(cols)
        ]
        diag = snf.diagonal()
        for j, val in enumerate(y):
            dj = diag[j] if j < len(diag) else 0
            if dj == 0:
                if val != 0:
                    return False
            elif val % dj:
                return False
        return True

    def smooth_basis_drop(self) -> tuple[int, int]:
        """The lexicographically first consecutive ray pair spanning a smooth
        cone; the corresponding divisors are eliminated by express_in_basis."""
        for i, j in self.fan.cones():
            if _cross(self.fan.rays[i], self.fan.rays[j]) == 1:
                return (i, j)
        raise NotSmooth("no smooth cone in the fan")

    def express_in_basis(
        self, c: DivisorClass, drop: tuple[int, int] | None = None
    ) -> DivisorClass:
        """Rewrite a class modulo relations so two chosen coefficients vanish.

        The dropped pair must index rays spanning a smooth cone, so that the
        two relations eliminate those generators integrally.
        """
        if drop is None:
            drop = self.smooth_basis_drop()
        i, j = drop
        vi, vj = self.fan.rays[i], self.fan.rays[j]
        if _cross(vi, vj) not in (1, -1):
            raise ValueError("dropped rays must span a smooth cone")
        rows = [
            [Fraction(self.relations[0][i]), Fraction(self.relations[1][i])],
            [Fraction(self.relations[0][j]), Fraction(self.relations[1][j])],
        ]
        x = _solve_linear(rows, [c.coeffs[i], c.coeffs[j]])
        out = [
            c.coeffs[k] - x[0] * self.relations[0][k] - x[1] * self.relations[1][k]
            for k in range(self.generator_count)
        ]
        assert out[i] == 0 and out[j] == 0
        return DivisorClass(self, out)


def intersection_matrix(ctx: SurfaceContext) -> list[list[Fraction]]:
    """Exact rational intersection matrix over the generators (D_1..D_N, E)."""
    return [row[:] for row in ctx.matrix]


def canonical_class(ctx: SurfaceContext) -> DivisorClass:
    """K_X = -(sum of all boundary divisors) + E."""
    return DivisorClass(ctx, [-1] * len(ctx.fan) + [1])


def _support_normals(np_: LatticePolygon) -> list[Vec]:
    """Rays on which the support function of np_ needs a fan ray: the inner
    edge normals for a polygon, both perpendiculars for a segment."""
    if np_.dimension == 2:
        return list(normal_fan_rays(np_))
    if np_.dimension == 1:
        a, b = np_.vertices
        dx, dy = b[0] - a[0], b[1] - a[1]
        g = gcd(abs(dx), abs(dy))
        n = (-dy // g, dx // g)
        return [n, (-n[0], -n[1])]
    return []


def _support_value(np_: LatticePolygon, v: Vec) -> int:
    return -min(u[0] * v[0] + u[1] * v[1] for u in np_.vertices)


def _edge_lengths_by_normal(np_: LatticePolygon) -> dict[Vec, int]:
    out: dict[Vec, int] = {}
    if np_.dimension == 2:
        for (a, b), n in zip(np_.edges(), normal_fan_rays(np_)):
            out[n] = gcd(abs(b[0] - a[0]), abs(b[1] - a[1]))
    elif np_.dimension == 1:
        a, b = np_.vertices
        length = gcd(abs(b[0] - a[0]), abs(b[1] - a[1]))
        for n in _support_normals(np_):
            out[n] = length
    return out


def weil_class_from_support(
    ctx: SurfaceContext, np_: LatticePolygon, mult: int
) -> DivisorClass:
    """Weil class of the closure of a torus curve with Newton polygon np_,
    passing through the blown-up point with the given multiplicity.

    This is the raw support-function formula sum(h(v_i) D_i) - mult*E; it is
    a valid class on any context, but the numerical self-checks of
    divisor_class_of_curve only hold when the fan refines the normal fan.
    """
    coeffs = [_support_value(np_, v) for v in ctx.fan.rays] + [-mult]
    return DivisorClass(ctx, coeffs)


def divisor_class_of_curve(
    ctx: SurfaceContext, np_: LatticePolygon, mult: int
) -> DivisorClass:
    """Class of a torus curve from its Newton polygon and multiplicity at e.

    Requires the context fan to refine the normal fan of np_ (FanMismatch
    otherwise) and verifies the two numerical identities class^2 =
    Vol(np_) - mult^2 and class . D_F = lattice length of the edge with
    inner normal F.
    """
    for n in _support_normals(np_):
        if n not in ctx.fan:
            raise FanMismatch(
                f"context fan lacks the ray {n} from the normal fan of the curve"
            )
    c = weil_class_from_support(ctx, np_, mult)
    if ctx.pair(c, c) != normalized_volume(np_) - mult * mult:
        raise ValueError("curve class failed the self-intersection check")
    lengths = _edge_lengths_by_normal(np_)
    for i, v in enumerate(ctx.fan.rays):
        expect = lengths.get(v, 0)
        if ctx.pair(c, ctx.divisor(i)) != expect:
            raise ValueError("curve class failed the boundary degree check")
    return c


class QuotientPresentation:
    """Presentation of Cl(Y) = Cl(X) / (contracted classes), via Smith form.

    ``invariants`` lists the moduli of the retained cyclic coordinates in
    Smith order (torsion factors first, then 0 for each free factor).  The
    pairing on Y lifts a class to its unique representative orthogonal to
    the contracted set and pairs on X.
    """

    __slots__ = ("ctx", "contracted", "invariants", "_v", "_diag", "_kept", "_gram")

    def __init__(self, ctx: SurfaceContext, contracted: Sequence[DivisorClass]):
        self.ctx = ctx
        self.contracted = tuple(contracted)
        for c in self.contracted:
            if c.ctx is not ctx:
                raise ValueError("contracted class on a different context")
            if not c.is_integral:
                raise ValueError("contracted classes must be integral")
        gram = ctx.gram(self.contracted)
        if not is_negative_definite(gram):
            raise NotNegativeDefinite(
                "contracted classes do not have negative definite Gram matrix"
            )
        self._gram = gram
        rows = [list(r) for r in ctx.relations]
        rows += [[int(x) for x in c.coeffs] for c in self.contracted]
        snf = smith_normal_form(rows)
        self._v = snf.v
        cols = ctx.generator_count
        diag = snf.diagonal()
        moduli = [diag[j] if j < len(diag) else 0 for j in range(cols)]
        moduli = [abs(m) for m in moduli]
        self._diag = moduli
        self._kept = [j for j in range(cols) if moduli[j] != 1]
        self.invariants = tuple(moduli[j] for j in self._kept)

    @property
    def free_rank(self) -> int:
        return sum(1 for m in self.invariants if m == 0)

    def pushforward(self, c: DivisorClass) -> tuple[int, ...]:
        """Coordinates of the class in the quotient presentation; torsion
        coordinates are reduced into [0, modulus)."""
        if c.ctx is not self.ctx:
            raise ValueError("class on a different context")
        if not c.is_integral:
            raise ValueError("pushforward needs an integral class")
        x = [int(v) for v in c.coeffs]
        cols = len(x)
        y = [sum(x[i] * self._v[i][j] for i in range(cols)) for j in range(cols)]
        out = []
        for j in self._kept:
            m = self._diag[j]
            out.append(y[j] % m if m else y[j])
        return tuple(out)

    def pushforward_equal(self, c1: DivisorClass, c2: DivisorClass) -> bool:
        return self.pushforward(c1) == self.pushforward(c2)

    def lift(self, c: DivisorClass) -> DivisorClass:
        """The representative of the class orthogonal to the contracted set."""
        if not self.contracted:
            return c
        rhs = [-self.ctx.pair(c, f) for f in self.contracted]
        x = _solve_linear(self._gram, rhs)
        out = c
        for coeff, f in zip(x, self.contracted):
            out = out + coeff * f
        return out

    def pair(self, c1: DivisorClass, c2: DivisorClass) -> Fraction:
        """Intersection pairing on Y of the pushed-forward classes."""
        return self.ctx.pair(self.lift(c1), c2)

    def matrix(self) -> list[list[Fraction]]:
        """Pairing on Y of all generator images (not with respect to a basis)."""
        n = self.ctx.generator_count
        gens = [self.ctx.divisor(i) for i in range(n - 1)] + [self.ctx.exceptional()]
        lifts = [self.lift(g) for g in gens]
        return [[self.ctx.pair(lifts[i], gens[j]) for j in range(n)] for i in range(n)]


def quotient_to_Y(
    ctx: SurfaceContext, contracted: Sequence[DivisorClass]
) -> QuotientPresentation:
    """Quotient of the class group by a negative definite contracted set."""
    return QuotientPresentation(ctx, contracted)
