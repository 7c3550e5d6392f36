"""Elliptic curves in long Weierstrass form over the rationals and prime fields.

The curve y^2 + a1*x*y + a3*y = x^3 + a2*x^2 + a4*x + a6 is kept in long form
throughout so that characteristics 2 and 3 need no special casing.  Points are
either the point at infinity or exact affine pairs; all arithmetic is exact.
"""

from __future__ import annotations

import json
import math
import random
from fractions import Fraction
from typing import Iterable, Iterator

from .laurent import QQ, ExactField, GFp


class BadReduction(ValueError):
    """The curve does not reduce to a smooth curve at the given prime."""


class NonIntegralPoint(ValueError):
    """A coordinate denominator vanishes mod p, so the point has no reduction."""


class CurvePoint:
    """Point at infinity, or an affine point with exact coordinates."""

    __slots__ = ("x", "y")

    def __init__(self, x=None, y=None):
        if (x is None) != (y is None):
            raise ValueError("affine points need both coordinates")
        self.x = x
        self.y = y

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __eq__(self, other):
        return (
            isinstance(other, CurvePoint)
            and self.x == other.x
            and self.y == other.y
        )

    def __hash__(self):
        return hash((self.x, self.y))

    def __repr__(self):
        if self.is_infinity:
            return "O"
        return f"({self.x}, {self.y})"


INFINITY = CurvePoint()


class WeierstrassCurve:
    """A long-Weierstrass curve over an exact field (QQ or GF(p))."""

    __slots__ = ("field", "a1", "a2", "a3", "a4", "a6")

    def __init__(self, field: ExactField, a1, a2, a3, a4, a6):
        self.field = field
        self.a1 = field.of(a1)
        self.a2 = field.of(a2)
        self.a3 = field.of(a3)
        self.a4 = field.of(a4)
        self.a6 = field.of(a6)

    @classmethod
    def from_coefficients(cls, coeffs, field: ExactField = QQ) -> "WeierstrassCurve":
        a1, a2, a3, a4, a6 = coeffs
        return cls(field, a1, a2, a3, a4, a6)

    @property
    def coefficients(self):
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def b_invariants(self):
        f = self.field
        a1, a2, a3, a4, a6 = self.coefficients
        b2 = f.add(f.mul(a1, a1), f.mul(f.of(4), a2))
        b4 = f.add(f.mul(f.of(2), a4), f.mul(a1, a3))
        b6 = f.add(f.mul(a3, a3), f.mul(f.of(4), a6))
        b8 = f.sub(
            f.add(
                f.add(f.mul(f.mul(a1, a1), a6), f.mul(f.mul(f.of(4), a2), a6)),
                f.mul(a2, f.mul(a3, a3)),
            ),
            f.add(f.mul(a1, f.mul(a3, a4)), f.mul(a4, a4)),
        )
        return b2, b4, b6, b8

    def discriminant(self):
        f = self.field
        b2, b4, b6, b8 = self.b_invariants()
        t1 = f.neg(f.mul(f.mul(b2, b2), b8))
        t2 = f.neg(f.mul(f.of(8), f.mul(b4, f.mul(b4, b4))))
        t3 = f.neg(f.mul(f.of(27), f.mul(b6, b6)))
        t4 = f.mul(f.of(9), f.mul(b2, f.mul(b4, b6)))
        return f.add(f.add(t1, t2), f.add(t3, t4))

    @property
    def is_smooth(self) -> bool:
        return self.discriminant() != self.field.zero()

    def contains(self, point: CurvePoint) -> bool:
        if point.is_infinity:
            return True
        f = self.field
        x, y = point.x, point.y
        lhs = f.add(f.mul(y, y), f.add(f.mul(self.a1, f.mul(x, y)), f.mul(self.a3, y)))
        rhs = f.add(
            f.mul(x, f.mul(x, x)),
            f.add(f.mul(self.a2, f.mul(x, x)), f.add(f.mul(self.a4, x), self.a6)),
        )
        return lhs == rhs

    def point(self, x, y) -> CurvePoint:
        p = CurvePoint(self.field.of(x), self.field.of(y))
        if not self.contains(p):
            raise ValueError(f"{p} is not on the curve")
        return p

    def __eq__(self, other):
        return (
            isinstance(other, WeierstrassCurve)
            and self.field == other.field
            and self.coefficients == other.coefficients
        )

    def __hash__(self):
        return hash((self.field, self.coefficients))

    def __repr__(self):
        a1, a2, a3, a4, a6 = self.coefficients
        return f"WeierstrassCurve({self.field!r}, [{a1}, {a2}, {a3}, {a4}, {a6}])"


def negate(curve: WeierstrassCurve, point: CurvePoint) -> CurvePoint:
    if point.is_infinity:
        return INFINITY
    f = curve.field
    y = f.neg(f.add(point.y, f.add(f.mul(curve.a1, point.x), curve.a3)))
    return CurvePoint(point.x, y)


def add(curve: WeierstrassCurve, p: CurvePoint, q: CurvePoint) -> CurvePoint:
    """Chord-tangent sum, valid in every characteristic."""
    if p.is_infinity:
        return q
    if q.is_infinity:
        return p
    f = curve.field
    a1, a2, a3, a4, a6 = curve.coefficients
    x1, y1, x2, y2 = p.x, p.y, q.x, q.y
    if x1 == x2:
        # q = -p covers doubling a 2-torsion point as well
        if y2 == f.neg(f.add(y1, f.add(f.mul(a1, x1), a3))):
            return INFINITY
        if y1 != y2:
            raise ValueError("points do not lie on the curve")
        den = f.add(f.mul(f.of(2), y1), f.add(f.mul(a1, x1), a3))
        num_l = f.sub(
            f.add(f.mul(f.of(3), f.mul(x1, x1)), f.add(f.mul(f.mul(f.of(2), a2), x1), a4)),
            f.mul(a1, y1),
        )
        num_n = f.sub(
            f.add(f.mul(a4, x1), f.mul(f.of(2), a6)),
            f.add(f.mul(x1, f.mul(x1, x1)), f.mul(a3, y1)),
        )
        lam = f.div(num_l, den)
        nu = f.div(num_n, den)
    else:
        lam = f.div(f.sub(y2, y1), f.sub(x2, x1))
        nu = f.sub(y1, f.mul(lam, x1))
    x3 = f.sub(f.add(f.mul(lam, lam), f.mul(a1, lam)), f.add(a2, f.add(x1, x2)))
    y3 = f.neg(f.add(f.mul(f.add(lam, a1), x3), f.add(nu, a3)))
    return CurvePoint(x3, y3)


def subtract(curve: WeierstrassCurve, p: CurvePoint, q: CurvePoint) -> CurvePoint:
    return add(curve, p, negate(curve, q))


def multiply(curve: WeierstrassCurve, n: int, point: CurvePoint) -> CurvePoint:
    if n < 0:
        n, point = -n, negate(curve, point)
    result = INFINITY
    while n:
        if n & 1:
            result = add(curve, result, point)
        point = add(curve, point, point)
        n >>= 1
    return result


def _reduce_scalar(value, p: int):
    v = Fraction(value)
    if v.denominator % p == 0:
        raise NonIntegralPoint(f"denominator of {value} vanishes mod {p}")
    return v.numerator * pow(v.denominator, -1, p) % p


def reduce_curve_mod_p(curve: WeierstrassCurve, p: int) -> WeierstrassCurve:
    """Reduce a curve over QQ at a prime of good reduction."""
    if curve.field != QQ:
        raise ValueError("reduction starts from a curve over QQ")
    for c in curve.coefficients:
        if Fraction(c).denominator % p == 0:
            raise BadReduction(f"coefficient {c} is not {p}-integral")
    disc = Fraction(curve.discriminant())
    if disc.numerator % p == 0:
        raise BadReduction(f"prime {p} divides the discriminant")
    field = GFp(p)
    return WeierstrassCurve(field, *(_reduce_scalar(c, p) for c in curve.coefficients))


def reduce_mod_p(
    curve: WeierstrassCurve, point: CurvePoint, p: int
) -> tuple[WeierstrassCurve, CurvePoint]:
    # the denominator check comes first: a point with p in a denominator has
    # no affine reduction regardless of how the curve behaves at p
    if not point.is_infinity:
        image = CurvePoint(_reduce_scalar(point.x, p), _reduce_scalar(point.y, p))
    reduced = reduce_curve_mod_p(curve, p)
    if point.is_infinity:
        return reduced, INFINITY
    if not reduced.contains(image):
        raise ValueError("reduced point left the curve; input was off-curve")
    return reduced, image


def curve_bad_primes(curve: WeierstrassCurve) -> list[int]:
    """Primes where the given model fails to have good reduction."""
    if curve.field != QQ:
        raise ValueError("expected a curve over QQ")
    n = abs(Fraction(curve.discriminant()).numerator)
    for c in curve.coefficients:
        n *= Fraction(c).denominator
    return _prime_factors(n)


def _prime_factors(n: int) -> list[int]:
    n = abs(n)
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def _legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def _sqrt_mod_p(a: int, p: int) -> int:
    """Tonelli-Shanks; requires a to be a quadratic residue mod odd p."""
    a %= p
    if a == 0:
        return 0
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while _legendre(z, p) != -1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


EXHAUSTIVE_BOUND = 50021


def group_order(curve: WeierstrassCurve, exhaustive_bound: int = EXHAUSTIVE_BOUND) -> int:
    """Number of points over GF(p), point at infinity included."""
    p = curve.field.p
    if p is None:
        raise ValueError("group_order needs a curve over a prime field")
    if not curve.is_smooth:
        raise ValueError("curve is singular over GF(p)")
    if p <= exhaustive_bound:
        return _order_exhaustive(curve)
    return _order_bsgs(curve)


def _order_exhaustive(curve: WeierstrassCurve) -> int:
    p = curve.field.p
    a1, a2, a3, a4, a6 = curve.coefficients
    if p == 2:
        count = 1
        for x in range(2):
            for y in range(2):
                if curve.contains(CurvePoint(x, y)):
                    count += 1
        return count
    # complete the square in y: the y-count at x is 1 + chi(h(x)^2 + 4 f(x))
    count = 1
    for x in range(p):
        h = (a1 * x + a3) % p
        fx = (((x + a2) * x + a4) * x + a6) % p
        count += 1 + _legendre(h * h + 4 * fx, p)
    return count


def _hasse_interval(p: int) -> tuple[int, int]:
    t = math.isqrt(4 * p)
    return p + 1 - t, p + 1 + t


def _some_annihilator(curve: WeierstrassCurve, point: CurvePoint) -> int:
    """A multiple of ord(point) inside the Hasse interval, found by BSGS."""
    p = curve.field.p
    lo, hi = _hasse_interval(p)
    base = multiply(curve, lo, point)
    if base.is_infinity:
        return lo
    width = hi - lo
    m = math.isqrt(width) + 1
    baby = {}
    q = INFINITY
    for j in range(m):
        baby.setdefault(q, j)
        q = add(curve, q, point)
    step = negate(curve, multiply(curve, m, point))
    # looking for k = i*m + j in [0, hi-lo] with k*point = -base
    giant = negate(curve, base)
    for i in range(width // m + 2):
        if giant in baby:
            n = lo + i * m + baby[giant]
            if multiply(curve, n, point).is_infinity:
                return n
        giant = add(curve, giant, step)
    raise RuntimeError("no annihilator in the Hasse interval; point off curve?")


def _order_dividing(curve: WeierstrassCurve, point: CurvePoint, n: int) -> int:
    for q in _prime_factors(n):
        while n % q == 0 and multiply(curve, n // q, point).is_infinity:
            n //= q
    return n


def _random_point(curve: WeierstrassCurve, rng: random.Random) -> CurvePoint:
    p = curve.field.p
    a1, a2, a3, a4, a6 = curve.coefficients
    while True:
        x = rng.randrange(p)
        h = (a1 * x + a3) % p
        fx = (((x + a2) * x + a4) * x + a6) % p
        d = (h * h + 4 * fx) % p
        if _legendre(d, p) == -1:
            continue
        # y = (-h + sqrt(d)) / 2
        y = (-h + _sqrt_mod_p(d, p)) * pow(2, -1, p) % p
        return CurvePoint(x, y)


def _short_model(curve: WeierstrassCurve) -> tuple[int, int]:
    # y^2 = x^3 - 27 c4 x - 54 c6, isomorphic for p > 3
    p = curve.field.p
    b2, b4, b6, _ = curve.b_invariants()
    c4 = (b2 * b2 - 24 * b4) % p
    c6 = (-b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6) % p
    return (-27 * c4) % p, (-54 * c6) % p


def _order_bsgs(curve: WeierstrassCurve, max_samples: int = 48) -> int:
    p = curve.field.p
    rng = random.Random(p)
    lo, hi = _hasse_interval(p)

    def candidates(exponent_multiple: int) -> list[int]:
        first = -(-lo // exponent_multiple) * exponent_multiple
        return list(range(first, hi + 1, exponent_multiple))

    def sample_exponent(c: WeierstrassCurve) -> tuple[int, list[int]]:
        m = 1
        for _ in range(max_samples):
            pt = _random_point(c, rng)
            m = math.lcm(m, _order_dividing(c, pt, _some_annihilator(c, pt)))
            cands = candidates(m)
            if len(cands) <= 1:
                return m, cands
        return m, candidates(m)

    _, cands = sample_exponent(curve)
    if len(cands) == 1:
        return cands[0]
    # the group exponent is small: disambiguate through the quadratic twist
    a, b = _short_model(curve)
    d = 2
    while _legendre(d, p) != -1:
        d += 1
    twist = WeierstrassCurve(
        curve.field, 0, 0, 0, a * d * d % p, b * d * d * d % p
    )
    _, twist_cands = sample_exponent(twist)
    matches = [n for n in cands if 2 * p + 2 - n in twist_cands]
    if len(matches) != 1:
        raise RuntimeError(f"ambiguous group order over GF({p})")
    return matches[0]


def element_order(
    curve: WeierstrassCurve, point: CurvePoint, order: int | None = None
) -> int:
    if order is None:
        order = group_order(curve)
    return _order_dividing(curve, point, order)


def cyclic_subgroup(curve: WeierstrassCurve, point: CurvePoint) -> frozenset[CurvePoint]:
    """All multiples of the point, as a hash set."""
    seen = {INFINITY}
    current = point
    while not current.is_infinity:
        seen.add(current)
        current = add(curve, current, point)
    return frozenset(seen)


def in_cyclic_subgroup(
    curve: WeierstrassCurve, q: CurvePoint, point: CurvePoint
) -> bool:
    if q.is_infinity:
        return True
    return q in cyclic_subgroup(curve, point)


class ReductionContext:
    """Reduction of a fixed rational curve at one good prime.

    Caches the cyclic subgroups generated by designated points so that many
    membership queries against the same generator cost one subgroup walk.
    """

    __slots__ = ("curve_q", "p", "curve", "order", "_subgroups")

    def __init__(
        self,
        curve_q: WeierstrassCurve,
        p: int,
        generators: Iterable[CurvePoint] = (),
    ):
        self.curve_q = curve_q
        self.p = p
        self.curve = reduce_curve_mod_p(curve_q, p)
        self.order = group_order(self.curve)
        lo, hi = _hasse_interval(p)
        if not lo <= self.order <= hi:
            raise AssertionError("group order violates the Hasse bound")
        self._subgroups: dict[CurvePoint, frozenset[CurvePoint]] = {}
        for g in generators:
            self.subgroup(self.reduce(g))

    def reduce(self, point: CurvePoint) -> CurvePoint:
        return reduce_mod_p(self.curve_q, point, self.p)[1]

    def subgroup(self, generator: CurvePoint) -> frozenset[CurvePoint]:
        cached = self._subgroups.get(generator)
        if cached is None:
            cached = cyclic_subgroup(self.curve, generator)
            self._subgroups[generator] = cached
        return cached

    def in_cyclic(self, q: CurvePoint, generator: CurvePoint) -> bool:
        return q in self.subgroup(generator)


def torsion_bound(curve: WeierstrassCurve, primes: Iterable[int]) -> int:
    """gcd of reduced group orders; a multiple of the rational torsion order."""
    primes = list(primes)
    if len(primes) < 2:
        raise ValueError("torsion_bound needs at least two primes")
    g = 0
    for p in primes:
        g = math.gcd(g, group_order(reduce_curve_mod_p(curve, p)))
    return g


def is_nontorsion_by_mazur(curve: WeierstrassCurve, point: CurvePoint) -> bool:
    """True iff n*point is nonzero for n = 1..12, hence nontorsion over QQ."""
    if curve.field != QQ:
        raise ValueError("Mazur's bound applies to curves over QQ")
    if not curve.contains(point):
        raise ValueError("point is not on the curve")
    current = point
    for _ in range(12):
        if current.is_infinity:
            return False
        current = add(curve, current, point)
    return True


def _fraction_str(value) -> str:
    return str(Fraction(value))


def _points_to_json(points: dict[str, CurvePoint]) -> dict:
    out = {}
    for name, pt in points.items():
        out[name] = None if pt.is_infinity else [_fraction_str(pt.x), _fraction_str(pt.y)]
    return out


def save_curves(
    records: dict[str, tuple[WeierstrassCurve, dict[str, CurvePoint]]], path
) -> None:
    payload = {}
    for curve_id, (curve, points) in sorted(records.items()):
        payload[curve_id] = {
            "coefficients": [_fraction_str(c) for c in curve.coefficients],
            "points": _points_to_json(points),
        }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=1, sort_keys=True)
        fh.write("\n")


def load_curves(path) -> dict[str, tuple[WeierstrassCurve, dict[str, CurvePoint]]]:
    with open(path, "r", encoding="utf-8") as fh:
        payload = json.load(fh)
    records = {}
    for curve_id, entry in payload.items():
        curve = WeierstrassCurve(QQ, *(Fraction(c) for c in entry["coefficients"]))
        points = {}
        for name, coords in entry.get("points", {}).items():
            if coords is None:
                points[name] = INFINITY
            else:
                points[name] = curve.point(Fraction(coords[0]), Fraction(coords[1]))
        records[curve_id] = (curve, points)
    return records


def rational_points_iterator(
    curve: WeierstrassCurve, generator: CurvePoint, count: int
) -> Iterator[CurvePoint]:
    """First multiples of a generator; convenient for sampling homomorphism tests."""
    current = generator
    for _ in range(count):
        yield current
        current = add(curve, current, generator)
