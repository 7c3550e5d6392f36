"""Laurent polynomials over exact fields.

Coefficients are Fractions (rationals) or ints in [0, p) (prime fields).
Newton polygons, edge restrictions, vanishing multiplicity at the torus
identity (1,1), and complete factorization live here.  Factorization over
a prime field runs through a variable substitution v -> u^D, univariate
factorization, and exhaustive recombination; over the rationals it reduces
modulo several good primes, filters for a consistent shape, lifts one
factorization, and certifies every candidate by exact trial division.
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction
from math import comb, gcd
from typing import Iterable, Sequence

import numpy as np

from .lattice import LatticePolygon, Vec, is_minkowski_indecomposable, primitive


class ZeroPolynomial(ValueError):
    pass


class NotAnEdge(ValueError):
    pass


class RecombinationOverflow(RuntimeError):
    pass


class ExactField:
    """The rationals (p is None) or the prime field of order p."""

    __slots__ = ("p",)

    def __init__(self, p: int | None = None):
        if p is not None:
            if p < 2 or any(p % q == 0 for q in range(2, math.isqrt(p) + 1)):
                raise ValueError(f"{p} is not prime")
        self.p = p

    @property
    def is_prime_field(self) -> bool:
        return self.p is not None

    def of(self, x) -> Fraction | int:
        """Coerce an int or Fraction into the field."""
        if self.p is None:
            return x if type(x) is Fraction else Fraction(x)
        if type(x) is int:
            return x % self.p
        f = Fraction(x)
        den = f.denominator % self.p
        if den == 0:
            raise ZeroDivisionError(f"denominator divisible by {self.p}")
        return f.numerator * pow(den, -1, self.p) % self.p

    def zero(self):
        return 0 if self.p else Fraction(0)

    def one(self):
        return 1 if self.p else Fraction(1)

    def add(self, a, b):
        return (a + b) % self.p if self.p else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p else a - b

    def mul(self, a, b):
        return (a * b) % self.p if self.p else a * b

    def neg(self, a):
        return (-a) % self.p if self.p else -a

    def inv(self, a):
        if self.p:
            return pow(int(a), -1, self.p)
        if a == 0:
            raise ZeroDivisionError("division by zero")
        return 1 / Fraction(a)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def __eq__(self, other):
        return isinstance(other, ExactField) and self.p == other.p

    def __hash__(self):
        return hash(("ExactField", self.p))

    def __repr__(self):
        return "QQ" if self.p is None else f"GF({self.p})"


QQ = ExactField()


def GFp(p: int) -> ExactField:
    return ExactField(p)


def generalized_binomial(a: int, k: int) -> int:
    """binomial(a, k) for any integer a (negative upper index allowed)."""
    if k < 0:
        return 0
    if a >= 0:
        return comb(a, k)
    return (-1) ** k * comb(k - a - 1, k)


class LaurentPoly:
    """Finitely supported map Z^2 -> field, no zero coefficients stored."""

    __slots__ = ("field", "support")

    def __init__(self, field: ExactField, support: dict | None = None):
        self.field = field
        clean = {}
        for exp, c in (support or {}).items():
            c = field.of(c)
            if c != 0:
                clean[(int(exp[0]), int(exp[1]))] = c
        self.support = clean

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, field: ExactField) -> "LaurentPoly":
        return cls(field, {})

    @classmethod
    def constant(cls, field: ExactField, c) -> "LaurentPoly":
        return cls(field, {(0, 0): c})

    @classmethod
    def monomial(cls, field: ExactField, exp: Vec, c=1) -> "LaurentPoly":
        return cls(field, {tuple(exp): c})

    @classmethod
    def from_terms(
        cls, field: ExactField, terms: Iterable[tuple[int, int, object]]
    ) -> "LaurentPoly":
        d: dict = {}
        for ex, ey, c in terms:
            d[(ex, ey)] = field.add(d.get((ex, ey), field.zero()), field.of(c))
        return cls(field, d)

    # -- serialization: [ex, ey, numerator, denominator] records --------------

    def to_records(self) -> list[list[int]]:
        out = []
        for (ex, ey), c in sorted(self.support.items()):
            f = Fraction(c)
            out.append([ex, ey, f.numerator, f.denominator])
        return out

    @classmethod
    def from_records(
        cls, field: ExactField, records: Iterable[Sequence[int]]
    ) -> "LaurentPoly":
        return cls(field, {(r[0], r[1]): Fraction(r[2], r[3]) for r in records})

    # -- ring structure --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.support

    def __eq__(self, other):
        return (
            isinstance(other, LaurentPoly)
            and self.field == other.field
            and self.support == other.support
        )

    def __hash__(self):
        return hash((self.field, tuple(sorted(self.support.items()))))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        d = dict(self.support)
        z = self.field.zero()
        for e, c in other.support.items():
            d[e] = self.field.add(d.get(e, z), c)
        return LaurentPoly(self.field, d)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        d = dict(self.support)
        z = self.field.zero()
        for e, c in other.support.items():
            d[e] = self.field.sub(d.get(e, z), c)
        return LaurentPoly(self.field, d)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(
            self.field, {e: self.field.neg(c) for e, c in self.support.items()}
        )

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        d: dict = {}
        z = self.field.zero()
        fmul = self.field.mul
        fadd = self.field.add
        for (ax, ay), ac in self.support.items():
            for (bx, by), bc in other.support.items():
                e = (ax + bx, ay + by)
                d[e] = fadd(d.get(e, z), fmul(ac, bc))
        return LaurentPoly(self.field, d)

    def scale(self, c) -> "LaurentPoly":
        c = self.field.of(c)
        return LaurentPoly(
            self.field, {e: self.field.mul(v, c) for e, v in self.support.items()}
        )

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative power")
        out = LaurentPoly.constant(self.field, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def shift(self, t: Vec) -> "LaurentPoly":
        return LaurentPoly(
            self.field,
            {(e[0] + t[0], e[1] + t[1]): c for e, c in self.support.items()},
        )

    def min_exponents(self) -> Vec:
        xs = [e[0] for e in self.support]
        ys = [e[1] for e in self.support]
        return (min(xs), min(ys))

    def normalize_unit(self) -> "LaurentPoly":
        """Shift so the support touches both axes, and normalize the scalar.

        Over a prime field the coefficient of the lex-least support point
        becomes 1; over the rationals the coefficients are made integral,
        coprime, with the lex-least coefficient positive.
        """
        if self.is_zero():
            return self
        mx, my = self.min_exponents()
        f = self.shift((-mx, -my))
        lead = f.support[min(f.support)]
        if self.field.is_prime_field:
            return f.scale(self.field.inv(lead))
        den = math.lcm(*[Fraction(c).denominator for c in f.support.values()])
        num = math.gcd(*[Fraction(c * den).numerator for c in f.support.values()])
        s = Fraction(den, num)
        if lead < 0:
            s = -s
        return f.scale(s)

    def evaluate(self, x, y):
        """Value at a torus point (x and y both invertible)."""
        fld = self.field
        acc = fld.zero()
        xi = fld.of(x)
        yi = fld.of(y)
        if fld.p:
            xinv = pow(int(xi), -1, fld.p)
            yinv = pow(int(yi), -1, fld.p)
            for (ex, ey), c in self.support.items():
                px = pow(xi, ex, fld.p) if ex >= 0 else pow(xinv, -ex, fld.p)
                py = pow(yi, ey, fld.p) if ey >= 0 else pow(yinv, -ey, fld.p)
                acc = (acc + c * px * py) % fld.p
            return acc
        for (ex, ey), c in self.support.items():
            acc += c * xi**ex * yi**ey
        return acc

    def reduce_mod(self, p: int) -> "LaurentPoly":
        fld = GFp(p)
        return LaurentPoly(fld, {e: fld.of(c) for e, c in self.support.items()})

    def content_in_u(self) -> "UnivariatePoly":
        """gcd of the coefficients of powers of v, as polynomials in u."""
        rows: dict[int, dict[int, object]] = {}
        for (ex, ey), c in self.support.items():
            rows.setdefault(ey, {})[ex] = c
        g = UnivariatePoly(self.field, [])
        for row in rows.values():
            deg = max(row)
            coeffs = [row.get(i, self.field.zero()) for i in range(deg + 1)]
            g = g.gcd(UnivariatePoly(self.field, coeffs))
            if not g.is_zero() and g.degree() == 0:
                break
        return g

    def swap_variables(self) -> "LaurentPoly":
        return LaurentPoly(
            self.field, {(e[1], e[0]): c for e, c in self.support.items()}
        )

    def substitute_v_power(self, d: int) -> "UnivariatePoly":
        """The image under v -> u^d (support must be nonnegative)."""
        mx, my = self.min_exponents()
        if mx < 0 or my < 0:
            raise ValueError("normalize support first")
        deg = max(ex + d * ey for ex, ey in self.support)
        coeffs = [self.field.zero()] * (deg + 1)
        for (ex, ey), c in self.support.items():
            coeffs[ex + d * ey] = self.field.add(coeffs[ex + d * ey], c)
        return UnivariatePoly(self.field, coeffs)

    def specialize_u(self, x) -> "UnivariatePoly":
        """f(x, v) as a univariate polynomial in v (support must be >= 0)."""
        fld = self.field
        if not self.support:
            return UnivariatePoly(fld, [])
        dv = max(e[1] for e in self.support)
        coeffs = [fld.zero()] * (dv + 1)
        xi = fld.of(x)
        for (ex, ey), c in self.support.items():
            px = pow(int(xi), ex, fld.p) if fld.p else xi**ex
            coeffs[ey] = fld.add(coeffs[ey], fld.mul(c, px))
        return UnivariatePoly(fld, coeffs)

    def __repr__(self):
        terms = []
        for (ex, ey), c in sorted(self.support.items()):
            terms.append(f"{c}*u^{ex}*v^{ey}")
        return " + ".join(terms) if terms else "0"


class UnivariatePoly:
    """Dense univariate polynomial; index = degree, no trailing zeros."""

    __slots__ = ("field", "coeffs", "origin", "step")

    def __init__(
        self,
        field: ExactField,
        coeffs: Sequence,
        origin: Vec | None = None,
        step: Vec | None = None,
    ):
        self.field = field
        cs = [field.of(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = cs
        # normalization data recorded by restrict_to_edge
        self.origin = origin
        self.step = step

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return (
            isinstance(other, UnivariatePoly)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field, tuple(self.coeffs)))

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        z = self.field.zero()
        a = self.coeffs + [z] * (n - len(self.coeffs))
        b = other.coeffs + [z] * (n - len(other.coeffs))
        return UnivariatePoly(self.field, [self.field.add(x, y) for x, y in zip(a, b)])

    def __sub__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        z = self.field.zero()
        a = self.coeffs + [z] * (n - len(self.coeffs))
        b = other.coeffs + [z] * (n - len(other.coeffs))
        return UnivariatePoly(self.field, [self.field.sub(x, y) for x, y in zip(a, b)])

    def __mul__(self, other):
        if self.is_zero() or other.is_zero():
            return UnivariatePoly(self.field, [])
        z = self.field.zero()
        out = [z] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = self.field.add(out[i + j], self.field.mul(a, b))
        return UnivariatePoly(self.field, out)

    def __pow__(self, n: int) -> "UnivariatePoly":
        if n < 0:
            raise ValueError("negative power")
        out = UnivariatePoly(self.field, [1])
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def scale(self, c):
        c = self.field.of(c)
        return UnivariatePoly(self.field, [self.field.mul(x, c) for x in self.coeffs])

    def monic(self):
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.coeffs[-1]))

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError
        fld = self.field
        rem = list(self.coeffs)
        q = [fld.zero()] * max(0, len(rem) - len(other.coeffs) + 1)
        dlead = fld.inv(other.coeffs[-1])
        dn = other.degree()
        for i in range(len(rem) - 1, dn - 1, -1):
            if rem[i] == 0:
                continue
            f = fld.mul(rem[i], dlead)
            q[i - dn] = f
            for j, c in enumerate(other.coeffs):
                rem[i - dn + j] = fld.sub(rem[i - dn + j], fld.mul(f, c))
        return UnivariatePoly(fld, q), UnivariatePoly(fld, rem)

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic() if not a.is_zero() else a

    def derivative(self):
        fld = self.field
        return UnivariatePoly(
            fld, [fld.mul(fld.of(i), c) for i, c in enumerate(self.coeffs)][1:]
        )

    def is_squarefree(self) -> bool:
        if self.is_zero():
            return False
        if self.degree() == 0:
            return True
        g = self.gcd(self.derivative())
        return g.degree() == 0

    def evaluate(self, x):
        fld = self.field
        acc = fld.zero()
        xi = fld.of(x)
        for c in reversed(self.coeffs):
            acc = fld.add(fld.mul(acc, xi), c)
        return acc

    def distinct_roots(self) -> list:
        """All roots in a prime field, via gcd with x^p - x."""
        p = self.field.p
        if p is None:
            raise ValueError("root scan expects a prime field")
        if self.is_zero():
            raise ZeroPolynomial("roots of 0")
        if self.degree() == 0:
            return []
        if p <= 1000:
            return [x for x in range(p) if self.evaluate(x) == 0]
        arr = np.array([int(c) for c in self.coeffs], dtype=np.int64)
        xp = _np_powmod(np.array([0, 1], dtype=np.int64), p, arr, p)
        diff = xp.copy()
        if len(diff) < 2:
            diff = np.concatenate([diff, np.zeros(2 - len(diff), dtype=np.int64)])
        diff[1] = (diff[1] - 1) % p
        g = _np_gcd(diff, arr, p)
        lin = UnivariatePoly(self.field, [int(c) for c in g])
        if lin.degree() <= 0:
            return []
        roots = []
        for phi, _ in factor_univariate(lin, 0):
            if phi.degree() == 1:
                roots.append(int((-phi.coeffs[0]) % p))
        return sorted(roots)

    def __repr__(self):
        return f"UnivariatePoly({self.field}, {self.coeffs})"


# -- spec operations on Laurent polynomials -----------------------------------


def newton_polygon(f: LaurentPoly) -> LatticePolygon:
    """Convex hull of the support; degenerate hulls are returned as such."""
    if f.is_zero():
        raise ZeroPolynomial("Newton polygon of 0")
    return LatticePolygon(list(f.support))


def restrict_to_edge(f: LaurentPoly, edge: tuple[Vec, Vec]) -> UnivariatePoly:
    """Coefficients of f along an edge of its Newton polygon.

    The edge is walked from its start vertex in primitive steps; the result
    has degree = lattice length of the edge, with the start point and step
    recorded on it.
    """
    np_f = newton_polygon(f)
    a, b = (tuple(edge[0]), tuple(edge[1]))
    if np_f.dimension == 2:
        edges = np_f.edges()
    elif np_f.dimension == 1:
        edges = [tuple(np_f.vertices)]
    else:
        raise NotAnEdge("point Newton polygon has no edges")
    if (a, b) not in edges:
        if (b, a) in edges:
            a, b = b, a
        else:
            raise NotAnEdge(f"{edge} is not an edge of the Newton polygon")
    step = primitive((b[0] - a[0], b[1] - a[1]))
    length = gcd(abs(b[0] - a[0]), abs(b[1] - a[1]))
    z = f.field.zero()
    coeffs = [
        f.support.get((a[0] + i * step[0], a[1] + i * step[1]), z)
        for i in range(length + 1)
    ]
    return UnivariatePoly(f.field, coeffs, origin=a, step=step)


def multiplicity_at_identity(f: LaurentPoly) -> int:
    """Order of vanishing of f at the torus identity, by exact Taylor data.

    The coefficient of s^i t^j in f(1+s, 1+t) is sum over terms of
    c * C(a, i) * C(b, j); negative exponents enter through generalized
    binomials.
    """
    if f.is_zero():
        raise ZeroPolynomial("multiplicity of 0")
    fld = f.field
    d = 0
    while True:
        for i in range(d + 1):
            j = d - i
            acc = fld.zero()
            for (ax, ay), c in f.support.items():
                w = generalized_binomial(ax, i) * generalized_binomial(ay, j)
                if w:
                    acc = fld.add(acc, fld.mul(c, fld.of(w)))
            if acc != 0:
                return d
        d += 1


def initial_form_at_identity(f: LaurentPoly) -> UnivariatePoly:
    """Lowest homogeneous part of f(1+s, 1+t), dehomogenized at s = 1.

    coeffs[j] holds the coefficient of s^(d-j) t^j; the homogeneous degree d
    is recorded as .origin[0] so roots at infinity stay visible.
    """
    if f.is_zero():
        raise ZeroPolynomial("initial form of 0")
    fld = f.field
    d = multiplicity_at_identity(f)
    coeffs = []
    for j in range(d + 1):
        i = d - j
        acc = fld.zero()
        for (ax, ay), c in f.support.items():
            w = generalized_binomial(ax, i) * generalized_binomial(ay, j)
            if w:
                acc = fld.add(acc, fld.mul(c, fld.of(w)))
        coeffs.append(acc)
    return UnivariatePoly(fld, coeffs, origin=(d, 0), step=None)


def binary_form_squarefree(form: UnivariatePoly) -> bool:
    """Squarefreeness of the binary form whose dehomogenization is given.

    Vanished leading coefficients correspond to a root at infinity of
    multiplicity (homogeneous degree - actual degree).
    """
    if form.is_zero():
        return False
    d = form.origin[0] if form.origin else form.degree()
    inf_mult = d - form.degree()
    return inf_mult <= 1 and form.is_squarefree()


def binary_form_distinct_roots(form: UnivariatePoly) -> int:
    """Number of distinct projective roots of the binary form over GF(p)."""
    d = form.origin[0] if form.origin else form.degree()
    n = len(form.distinct_roots())
    if form.degree() < d:
        n += 1
    return n


def vertex_coefficients_unit_mod_p(f: LaurentPoly, p: int) -> bool:
    """True iff the Newton polygon of f survives reduction mod p."""
    if f.field.is_prime_field:
        raise ValueError("expects rational coefficients")
    for c in f.support.values():
        if Fraction(c).denominator % p == 0:
            return False
    npf = newton_polygon(f)
    for v in npf.vertices:
        if Fraction(f.support[v]).numerator % p == 0:
            return False
    return True


# -- univariate arithmetic over GF(p) on numpy arrays --------------------------
#
# Coefficients live in int64; p^2 * length must stay below 2^63, which holds
# for every prime used here (p below 10^6 at degree below a few thousand).


def _np_trim(a: np.ndarray) -> np.ndarray:
    nz = np.nonzero(a)[0]
    return a[: nz[-1] + 1] if len(nz) else a[:0]


def _np_mulmod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if len(a) == 0 or len(b) == 0:
        return a[:0]
    return np.convolve(a, b) % p


def _np_addmod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    n = max(len(a), len(b))
    out = np.zeros(n, dtype=np.int64)
    out[: len(a)] += a
    out[: len(b)] += b
    return _np_trim(out % p)


def _np_divmod(a: np.ndarray, b: np.ndarray, p: int):
    b = _np_trim(b % p)
    if len(b) == 0:
        raise ZeroDivisionError
    a = a.copy() % p
    db, da = len(b) - 1, len(a) - 1
    if da < db:
        return a[:0], _np_trim(a)
    inv = pow(int(b[-1]), -1, p)
    q = np.zeros(da - db + 1, dtype=np.int64)
    for i in range(da, db - 1, -1):
        c = int(a[i]) % p
        if c:
            f = c * inv % p
            q[i - db] = f
            a[i - db : i + 1] = (a[i - db : i + 1] - f * b) % p
    return q, _np_trim(a)


def _np_gcd(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    a, b = _np_trim(a % p), _np_trim(b % p)
    while len(b):
        a, b = b, _np_divmod(a, b, p)[1]
    if len(a):
        a = a * pow(int(a[-1]), -1, p) % p
    return a


def _np_powmod(base: np.ndarray, e: int, mod: np.ndarray, p: int) -> np.ndarray:
    result = np.array([1], dtype=np.int64)
    base = _np_divmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = _np_divmod(_np_mulmod(result, base, p), mod, p)[1]
        e >>= 1
        if e:
            base = _np_divmod(_np_mulmod(base, base, p), mod, p)[1]
    return result


def _np_deriv(a: np.ndarray, p: int) -> np.ndarray:
    if len(a) <= 1:
        return a[:0]
    return _np_trim(a[1:] * (np.arange(1, len(a), dtype=np.int64) % p) % p)


def _squarefree_decomposition(a: np.ndarray, p: int) -> list[tuple[np.ndarray, int]]:
    """Yun decomposition over GF(p), peeling p-th power parts."""
    out: list[tuple[np.ndarray, int]] = []

    def rec(f: np.ndarray, mult: int):
        if len(f) <= 1:
            return
        d = _np_deriv(f, p)
        if len(d) == 0:
            # a p-th power: x^(kp) -> x^k (Frobenius fixes the prime field)
            rec(f[::p].copy(), mult * p)
            return
        g = _np_gcd(f, d, p)
        w = _np_divmod(f, g, p)[0]
        i = 1
        while len(w) > 1:
            y = _np_gcd(w, g, p)
            z = _np_divmod(w, y, p)[0]
            if len(z) > 1:
                out.append((z * pow(int(z[-1]), -1, p) % p, mult * i))
            w = y
            g = _np_divmod(g, y, p)[0]
            i += 1
        if len(g) > 1:
            rec(g, mult)

    rec(_np_trim(a % p), 1)
    return out


def _distinct_degree(f: np.ndarray, p: int) -> list[tuple[np.ndarray, int]]:
    """(product of the degree-d irreducible factors, d), f squarefree monic."""
    out = []
    h = np.array([0, 1], dtype=np.int64)
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = _np_powmod(h, p, f, p)
        diff = h.copy()
        if len(diff) < 2:
            diff = np.concatenate([diff, np.zeros(2 - len(diff), dtype=np.int64)])
        diff[1] = (diff[1] - 1) % p
        g = _np_gcd(diff, f, p)
        if len(g) > 1:
            out.append((g, d))
            f = _np_divmod(f, g, p)[0]
            h = _np_divmod(h, f, p)[1]
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def _equal_degree(f: np.ndarray, d: int, p: int, rng: random.Random) -> list[np.ndarray]:
    """Cantor-Zassenhaus split of a product of degree-d irreducibles."""
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        h = _np_trim(np.array([rng.randrange(p) for _ in range(n)], dtype=np.int64))
        if len(h) <= 1:
            continue
        if p == 2:
            # trace map: sum of h^(2^i) over i < d
            t = h.copy()
            acc = h.copy()
            for _ in range(d - 1):
                t = _np_powmod(t, 2, f, p)
                acc = _np_addmod(acc, t, p)
            g = _np_gcd(acc, f, p)
        else:
            t = _np_powmod(h, (p**d - 1) // 2, f, p)
            if len(t) == 0:
                continue
            t = t.copy()
            t[0] = (t[0] - 1) % p
            g = _np_gcd(t, f, p)
        if 0 < len(g) - 1 < n:
            return _equal_degree(g, d, p, rng) + _equal_degree(
                _np_divmod(f, g, p)[0], d, p, rng
            )


def factor_univariate(g: UnivariatePoly, seed: int = 0) -> list[tuple[UnivariatePoly, int]]:
    """Complete factorization over the coefficient field.

    Prime fields: squarefree decomposition, distinct-degree splitting, then
    seeded equal-degree splitting; factors come back monic and sorted.
    Rationals: primitive integral factors (see the modular route below).
    """
    p = g.field.p
    if p is None:
        return _factor_univariate_rationals(g, seed)
    if g.is_zero():
        raise ZeroPolynomial("factorization of 0")
    rng = random.Random(seed)
    arr = np.array([int(c) for c in g.coeffs], dtype=np.int64) % p
    out: list[tuple[UnivariatePoly, int]] = []
    for part, mult in _squarefree_decomposition(arr, p):
        for prod, d in _distinct_degree(part, p):
            for irr in _equal_degree(prod, d, p, rng):
                out.append((UnivariatePoly(g.field, [int(c) for c in irr]), mult))
    out.sort(key=lambda fm: (fm[0].degree(), fm[0].coeffs))
    return out


# -- integer polynomial helpers for the rational route -------------------------


def _zz_trim(a: list[int]) -> list[int]:
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _zz_deriv(a: list[int]) -> list[int]:
    return _zz_trim([i * c for i, c in enumerate(a)][1:] or [0])


def _zz_primitive(a: list[int]) -> list[int]:
    g = math.gcd(*[abs(c) for c in a]) if any(a) else 1
    a = [c // g for c in a]
    if a[-1] < 0:
        a = [-c for c in a]
    return a


def _zz_divexact(a: list[int], b: list[int]) -> list[int] | None:
    """Exact division in Z[x]; None if the division fails."""
    q, r = UnivariatePoly(QQ, a).divmod(UnivariatePoly(QQ, b))
    if not r.is_zero():
        return None
    qs = [Fraction(c) for c in q.coeffs]
    if any(c.denominator != 1 for c in qs):
        return None
    return [c.numerator for c in qs] or [0]


def _zz_gcd(a: list[int], b: list[int]) -> list[int]:
    """Primitive gcd in Z[x] via modular images, CRT, and exact verification."""
    a, b = _zz_trim(list(a)), _zz_trim(list(b))
    if a == [0] and b == [0]:
        return [0]
    if a == [0]:
        return _zz_primitive(b)
    if b == [0]:
        return _zz_primitive(a)
    ca, cb = _zz_primitive(a), _zz_primitive(b)
    scale = math.gcd(abs(ca[-1]), abs(cb[-1]))
    content = math.gcd(
        math.gcd(*[abs(c) for c in a]), math.gcd(*[abs(c) for c in b])
    )
    p = 1 << 13
    best_deg: int | None = None
    crt_mod = 1
    crt_coeffs: list[int] = []
    last_cand: list[int] | None = None
    while True:
        p = _next_prime(p + 1)
        if ca[-1] % p == 0 or cb[-1] % p == 0:
            continue
        ga = _np_gcd(
            np.array(ca, dtype=np.int64) % p, np.array(cb, dtype=np.int64) % p, p
        )
        dg = len(ga) - 1
        if dg == 0:
            return [content]
        if best_deg is None or dg < best_deg:
            best_deg = dg
            crt_mod, crt_coeffs, last_cand = 1, [], None
        if dg > best_deg:
            continue
        img = [int(c) * scale % p for c in ga]
        if crt_mod == 1:
            crt_coeffs, crt_mod = img, p
        else:
            merged = []
            for x, y in zip(crt_coeffs, img):
                t = (y - x) * pow(crt_mod % p, -1, p) % p
                merged.append(x + crt_mod * t)
            crt_coeffs, crt_mod = merged, crt_mod * p
        sym = [c - crt_mod if c > crt_mod // 2 else c for c in crt_coeffs]
        cand = _zz_primitive(_zz_trim(list(sym)))
        if cand == last_cand:
            if _zz_divexact(ca, cand) is not None and _zz_divexact(cb, cand) is not None:
                return [c * content for c in cand]
        last_cand = cand


def _zz_squarefree_decomposition(ints: list[int]) -> list[tuple[list[int], int]]:
    """Yun decomposition of a primitive integer polynomial."""
    f = _zz_primitive(_zz_trim(list(ints)))
    out: list[tuple[list[int], int]] = []
    d = _zz_gcd(f, _zz_deriv(f))
    w = _zz_divexact(f, d)
    i = 1
    while len(w) > 1:
        y = _zz_gcd(w, d)
        z = _zz_divexact(w, y)
        if len(z) > 1:
            out.append((_zz_primitive(z), i))
        w = y
        d = _zz_divexact(d, y)
        i += 1
    return out


# -- Hensel lifting -------------------------------------------------------------


def _zm_mul(a: list[int], b: list[int], m: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % m
    return _zz_trim(out)


def _zm_add(a: list[int], b: list[int], m: int) -> list[int]:
    n = max(len(a), len(b))
    return _zz_trim(
        [
            ((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % m
            for i in range(n)
        ]
    )


def _zm_sub(a: list[int], b: list[int], m: int) -> list[int]:
    n = max(len(a), len(b))
    return _zz_trim(
        [
            ((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % m
            for i in range(n)
        ]
    )


def _zm_divmod_monic(a: list[int], b: list[int], m: int):
    """Division by a monic polynomial, coefficients mod m."""
    a = [c % m for c in a]
    db = len(b) - 1
    if len(a) - 1 < db:
        return [0], _zz_trim(a)
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] % m
        if c:
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % m
    return _zz_trim(q), _zz_trim(a)


def _bezout_mod_p(g: list[int], h: list[int], p: int):
    """s, t with s*g + t*h = 1 mod p (g, h coprime mod p)."""
    fld = GFp(p)
    r0, r1 = UnivariatePoly(fld, g), UnivariatePoly(fld, h)
    s0, s1 = UnivariatePoly(fld, [1]), UnivariatePoly(fld, [])
    t0, t1 = UnivariatePoly(fld, []), UnivariatePoly(fld, [1])
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.degree() != 0:
        raise ValueError("polynomials not coprime mod p")
    inv = fld.inv(r0.coeffs[0])
    s = [int(c) * inv % p for c in s0.coeffs] or [0]
    t = [int(c) * inv % p for c in t0.coeffs] or [0]
    return s, t


def _hensel_pair(f: list[int], g: list[int], h: list[int], p: int, modulus: int):
    """Lift the monic split f = g*h (mod p) to the given modulus p^(2^j).

    All of f, g, h are monic, which keeps every degree fixed during the
    quadratic lift.
    """
    s, t = _bezout_mod_p(g, h, p)
    m = p
    g = [c % p for c in g]
    h = [c % p for c in h]
    while m < modulus:
        m2 = m * m
        e = _zm_sub([c % m2 for c in f], _zm_mul(g, h, m2), m2)
        # (g + r)(h + se + qh) = gh + e(sg + th) = f mod m^2, with te = qg + r
        q, r = _zm_divmod_monic(_zm_mul(t, e, m2), g, m2)
        g2 = _zm_add(g, r, m2)
        h2 = _zm_add(h, _zm_add(_zm_mul(s, e, m2), _zm_mul(q, h, m2), m2), m2)
        b = _zm_sub(_zm_add(_zm_mul(s, g2, m2), _zm_mul(t, h2, m2), m2), [1], m2)
        c, d = _zm_divmod_monic(_zm_mul(s, b, m2), h2, m2)
        s2 = _zm_sub(s, d, m2)
        t2 = _zm_sub(t, _zm_add(_zm_mul(t, b, m2), _zm_mul(c, g2, m2), m2), m2)
        g, h, s, t = g2, h2, s2, t2
        m = m2
    return g, h


def _hensel_lift_factors(f: list[int], parts: list[list[int]], p: int, modulus: int):
    """Lift the monic factorization f = prod(parts) (mod p) to the modulus.

    f is monic mod the modulus (a power of p), the parts are monic mod p and
    pairwise coprime; the monic lifts come back in order.
    """
    if len(parts) == 1:
        return [[c % modulus for c in f]]
    fld = GFp(p)
    half = len(parts) // 2
    gp = UnivariatePoly(fld, [1])
    for q in parts[:half]:
        gp = gp * UnivariatePoly(fld, q)
    hp = UnivariatePoly(fld, [1])
    for q in parts[half:]:
        hp = hp * UnivariatePoly(fld, q)
    g, h = _hensel_pair(
        f, [int(c) for c in gp.coeffs], [int(c) for c in hp.coeffs], p, modulus
    )
    return _hensel_lift_factors(g, parts[:half], p, modulus) + _hensel_lift_factors(
        h, parts[half:], p, modulus
    )


def _next_prime(n: int) -> int:
    while True:
        if n >= 2 and all(n % q for q in range(2, math.isqrt(n) + 1)):
            return n
        n += 1


def _factor_squarefree_zz(ints: list[int], seed: int) -> list[list[int]]:
    """Irreducible factors of a primitive squarefree integer polynomial.

    Reduce modulo three good primes, keep the factorization with the fewest
    factors (a consistency filter against unlucky extra splitting), Hensel
    lift it, and certify subset products by exact trial division over Z.
    """
    n = len(ints) - 1
    if n <= 0:
        return []
    if n == 1:
        return [list(ints)]
    lead = ints[-1]
    primes: list[int] = []
    attempts = []
    p = 1 << 13
    while len(primes) < 3:
        p = _next_prime(p + 1)
        if lead % p == 0:
            continue
        fp = UnivariatePoly(GFp(p), [c % p for c in ints])
        if fp.degree() != n or not fp.is_squarefree():
            continue
        primes.append(p)
        attempts.append(factor_univariate(fp, seed))
    best = min(range(len(primes)), key=lambda i: len(attempts[i]))
    if len(attempts[best]) == 1:
        return [_zz_primitive(list(ints))]
    p = primes[best]
    modular = [[int(c) for c in phi.coeffs] for phi, _ in attempts[best]]
    norm = math.isqrt(sum(c * c for c in ints)) + 1
    bound = 4 * abs(lead) * norm * (1 << n)
    pk = p
    while pk < bound:
        pk *= pk
    linv = pow(lead % pk, -1, pk)
    fmon = [c * linv % pk for c in ints]
    lifted = _hensel_lift_factors(fmon, modular, p, pk)

    def symmetric(c: int) -> int:
        c %= pk
        return c - pk if c > pk // 2 else c

    remaining = list(range(len(lifted)))
    fz = list(ints)
    out: list[list[int]] = []
    while remaining:
        hit = None
        for size in range(1, len(remaining) + 1):
            for idx in itertools.combinations(remaining, size):
                prod = [fz[-1] % pk]
                for i in idx:
                    prod = _zm_mul(prod, lifted[i], pk)
                cand = _zz_primitive(_zz_trim([symmetric(c) for c in prod]))
                if len(cand) <= 1:
                    continue
                q = _zz_divexact(fz, cand)
                if q is not None:
                    out.append(cand)
                    fz = q
                    remaining = [i for i in remaining if i not in idx]
                    hit = idx
                    break
            if hit:
                break
        if not hit:
            out.append(_zz_primitive(fz))
            break
    return out


def _factor_univariate_rationals(
    g: UnivariatePoly, seed: int = 0
) -> list[tuple[UnivariatePoly, int]]:
    """Factorization over the rationals; factors are primitive and integral."""
    if g.is_zero():
        raise ZeroPolynomial("factorization of 0")
    if g.degree() < 1:
        return []
    den = math.lcm(*[Fraction(c).denominator for c in g.coeffs])
    ints = _zz_primitive([Fraction(c * den).numerator for c in g.coeffs])
    out: list[tuple[UnivariatePoly, int]] = []
    for part, mult in _zz_squarefree_decomposition(ints):
        for fac in _factor_squarefree_zz(part, seed):
            out.append((UnivariatePoly(QQ, fac), mult))
    out.sort(key=lambda fm: (fm[0].degree(), [Fraction(c) for c in fm[0].coeffs]))
    return out


# -- bivariate factorization -----------------------------------------------------


def _laurent_divexact(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly | None:
    """Exact division of polynomials with nonnegative support; None on failure."""
    if g.is_zero():
        raise ZeroDivisionError
    fld = f.field
    rem = dict(f.support)
    glead = max(g.support)
    gl = g.support[glead]
    quo: dict = {}
    z = fld.zero()
    while rem:
        lead = max(rem)
        e = (lead[0] - glead[0], lead[1] - glead[1])
        if e[0] < 0 or e[1] < 0:
            return None
        c = fld.div(rem[lead], gl)
        quo[e] = c
        for ge, gc in g.support.items():
            t = (ge[0] + e[0], ge[1] + e[1])
            val = fld.sub(rem.get(t, z), fld.mul(c, gc))
            if val == 0:
                rem.pop(t, None)
            else:
                rem[t] = val
    return LaurentPoly(fld, quo)


def _direction_key(d: Vec) -> Vec:
    return d if d[0] > 0 or (d[0] == 0 and d[1] > 0) else (-d[0], -d[1])


def _strip_segment_factors(f: LaurentPoly, seed: int):
    """Divide out every factor whose Newton polygon is a segment.

    Candidates come from irreducible factors of the edge restrictions of f
    rewritten along the edge direction; Newton polygons of factors sum to
    the Newton polygon of f, so every segment direction is an edge direction.
    """
    factors: list[tuple[LaurentPoly, int]] = []
    changed = True
    while changed and len(f.support) > 1:
        changed = False
        npf = newton_polygon(f)
        if npf.dimension == 0:
            break
        if npf.dimension == 1:
            edge_list = [tuple(npf.vertices)]
        else:
            edge_list = npf.edges()
        seen = set()
        for a, b in edge_list:
            d = primitive((b[0] - a[0], b[1] - a[1]))
            key = _direction_key(d)
            if key in seen:
                continue
            seen.add(key)
            r = restrict_to_edge(f, (a, b))
            for phi, _ in factor_univariate(r, seed):
                if phi.degree() < 1:
                    continue
                g = LaurentPoly(
                    f.field,
                    {(i * d[0], i * d[1]): c for i, c in enumerate(phi.coeffs)},
                ).normalize_unit()
                while True:
                    q = _laurent_divexact(f.normalize_unit(), g)
                    if q is None:
                        break
                    factors.append((g, 1))
                    f = q.normalize_unit()
                    changed = True
            if changed or len(f.support) <= 1:
                # the Newton polygon moved; recompute the edge list
                break
    return (f.normalize_unit() if not f.is_zero() else f), factors


def _specialization_irreducible(f: LaurentPoly, seed: int) -> bool | None:
    """Fast irreducibility certificate over GF(p) by line specializations.

    Any factorization f = g*h with trivial content in u has dv(g) >= 1 and
    dv(h) >= 1, and every specialization u = x of full v-degree factors as
    g(x,v)*h(x,v) with both degrees preserved.  So dv(g) is a subset sum of
    the factor-degree multiset of every such specialization.  When the
    intersection of those subset-sum sets over several x meets {1..dv-1}
    nowhere, f is irreducible.  Returns True on success, None when the
    certificate does not apply (never False).
    """
    p = f.field.p
    if p is None or p < 3:
        return None
    for g in (f, f.swap_variables()):
        g = g.normalize_unit()
        dv = max(e[1] for e in g.support)
        if dv == 0 or g.content_in_u().degree() != 0:
            continue
        feasible = (1 << dv) - 2  # bits 1..dv-1
        tried = 0
        for x in range(p):
            if tried >= 30:
                break
            spec = g.specialize_u(x)
            if spec.degree() != dv:
                continue
            tried += 1
            sums = 1
            for phi, mult in factor_univariate(spec, seed):
                for _ in range(mult):
                    sums |= sums << phi.degree()
            feasible &= sums
            if feasible == 0:
                return True
    return None


def _np_eval(a: np.ndarray, x: int, p: int) -> int:
    acc = 0
    for c in a[::-1].tolist():
        acc = (acc * x + c) % p
    return acc


def _np_taylor_shift(a: np.ndarray, x0: int, p: int) -> np.ndarray:
    """Coefficients of a(u + x0), same length as a."""
    out = np.zeros(len(a), dtype=np.int64)
    for c in a[::-1].tolist():
        shifted = np.zeros_like(out)
        shifted[1:] = out[:-1]
        out = (shifted + out * x0) % p
        out[0] = (out[0] + c) % p
    return out


def _np_series_inv(a: np.ndarray, K: int, p: int) -> np.ndarray:
    """Inverse of a power series with unit constant term, mod u^K."""
    out = np.zeros(K, dtype=np.int64)
    inv0 = pow(int(a[0]), -1, p)
    out[0] = inv0
    for k in range(1, K):
        hi = min(k, len(a) - 1)
        s = int(np.dot(a[1 : hi + 1], out[k - hi : k][::-1])) if hi else 0
        out[k] = -inv0 * s % p
    return out


def _np_series_mul(a: np.ndarray, b: np.ndarray, K: int, p: int) -> np.ndarray:
    out = np.zeros(K, dtype=np.int64)
    if len(a) and len(b):
        c = np.convolve(a, b)[:K] % p
        out[: len(c)] = c
    return out


def _np_poly_invmod(a: np.ndarray, mod: np.ndarray, p: int) -> np.ndarray | None:
    """Inverse of a modulo the univariate mod, None unless coprime."""
    r0, s0 = _np_trim(mod % p), np.zeros(0, dtype=np.int64)
    r1, s1 = _np_divmod(a, mod, p)[1], np.array([1], dtype=np.int64)
    while len(r1):
        q, r = _np_divmod(r0, r1, p)
        qs = _np_mulmod(q, s1, p)
        ns = np.zeros(max(len(s0), len(qs)), dtype=np.int64)
        ns[: len(s0)] += s0
        ns[: len(qs)] -= qs
        r0, r1 = r1, r
        s0, s1 = s1, _np_trim(ns % p)
    if len(r0) != 1:
        return None
    return _np_divmod(s0 * pow(int(r0[0]), -1, p) % p, mod, p)[1]


def _vp_mul(A: np.ndarray, B: np.ndarray, K: int, p: int) -> np.ndarray:
    """Product of polynomials in v whose coefficients are u-series mod u^K.

    Rows index the v-degree, columns the series coefficient.
    """
    out = np.zeros((A.shape[0] + B.shape[0] - 1, K), dtype=np.int64)
    for ja in range(A.shape[0]):
        ra = A[ja]
        if not ra.any():
            continue
        for jb in range(B.shape[0]):
            rb = B[jb]
            if not rb.any():
                continue
            c = np.convolve(ra, rb)[:K]
            out[ja + jb, : len(c)] += c
            out[ja + jb] %= p
    return out


def _vp_product(factors: Sequence[np.ndarray], K: int, p: int) -> np.ndarray:
    acc = factors[0]
    for g in factors[1:]:
        acc = _vp_mul(acc, g, K, p)
    return acc


def _shear(f: LaurentPoly, c: int, s: int) -> LaurentPoly:
    """f(u + c*v^s, v) over GF(p), for f with nonnegative support.

    A triangular automorphism of the polynomial ring, so it preserves
    irreducibility and factorizations; the inverse is the shear by p - c.
    """
    p = f.field.p
    du = max(e[0] for e in f.support)
    pas = [[1]]
    for i in range(1, du + 1):
        prev = pas[-1]
        pas.append([1] + [(prev[t - 1] + prev[t]) % p for t in range(1, i)] + [1])
    cpow = [1] * (du + 1)
    for i in range(1, du + 1):
        cpow[i] = cpow[i - 1] * c % p
    support: dict = {}
    for (i, j), coef in f.support.items():
        coef = int(coef)
        row = pas[i]
        for t in range(i + 1):
            e = (t, j + s * (i - t))
            val = (support.get(e, 0) + coef * row[t] * cpow[i - t]) % p
            if val:
                support[e] = val
            elif e in support:
                del support[e]
    return LaurentPoly(f.field, support)


def _shift_u(g: LaurentPoly, a: int, p: int) -> LaurentPoly:
    """g(u + a, v) for g with nonnegative support."""
    dv = max(e[1] for e in g.support)
    du = max(e[0] for e in g.support)
    rows = np.zeros((dv + 1, du + 1), dtype=np.int64)
    for (i, j), c in g.support.items():
        rows[j, i] = c
    support = {}
    for j in range(dv + 1):
        for i, c in enumerate(_np_taylor_shift(rows[j], a, p).tolist()):
            if c:
                support[(i, j)] = c
    return LaurentPoly(g.field, support)


def _np_pow(a: np.ndarray, e: int, p: int) -> np.ndarray:
    out = np.array([1], dtype=np.int64)
    while e:
        if e & 1:
            out = _np_mulmod(out, a, p)
        e >>= 1
        if e:
            a = _np_mulmod(a, a, p)
    return out


def _vp_root(
    B: np.ndarray, psi: np.ndarray, e: int, K: int, p: int
) -> np.ndarray | None:
    """Monic e-th root R of a monic series-coefficient v-polynomial B.

    B[:, 0] must equal psi^e with psi squarefree and p not dividing e; the
    root is rebuilt series degree by series degree, and the final product
    check certifies B = R^e, so a non-None result is always correct.
    """
    if e % p == 0:
        return None
    droot = len(psi) - 1
    R = np.zeros((droot + 1, K), dtype=np.int64)
    R[:, 0] = psi
    denom = _np_pow(psi, e - 1, p) * (e % p) % p
    for k in range(1, K):
        P = _vp_product([R] * e, K, p)
        err = _np_trim((B[:, k] - P[:, k]) % p)
        if not len(err):
            continue
        q, rem = _np_divmod(err, denom, p)
        if len(rem) or len(q) > droot:
            return None
        R[: len(q), k] = q
    if not np.array_equal(_vp_product([R] * e, K, p), B):
        return None
    return R


def _hensel_orient(f: LaurentPoly, seed: int) -> list[LaurentPoly] | None:
    """Single-orientation core of _hensel_factor_modp; specializes u.

    Scans lifting points u = x0 with nonvanishing leading v-coefficient.
    At a point with squarefree specialization the local irreducible factors
    lift to series precision du + 1 and subset products recombine into the
    complete factorization.  At a point with repeated parts the pairwise
    coprime blocks psi_e^e of the squarefree decomposition lift instead;
    certified blocks and subset products are proper factors and are finished
    recursively, and a pure e-th power is handled by a series root.  Every
    extraction is certified by exact division, so an unfaithful lifting
    point can only lead to None, never to a wrong factor.  The returned
    list carries multiplicity by repetition.
    """
    fld = f.field
    p = fld.p
    n = max(e[1] for e in f.support)
    m = max(e[0] for e in f.support)
    if n < 1 or m < 1:
        return None
    K = m + 1
    rows0 = np.zeros((n + 1, K), dtype=np.int64)
    for (i, j), c in f.support.items():
        rows0[j, i] = c

    def attempt(x0: int, sqf: list[tuple[np.ndarray, int]]):
        blocks: list[tuple[np.ndarray, int]] = []
        for psi, e2 in sqf:
            if e2 == 1:
                up = UnivariatePoly(fld, [int(c) for c in psi])
                for chi, _ in factor_univariate(up, seed):
                    blocks.append(
                        (np.array([int(c) for c in chi.coeffs], dtype=np.int64), 1)
                    )
            else:
                blocks.append((psi, e2))
        if len(blocks) == 1 and blocks[0][1] == 1:
            # a full-degree irreducible specialization of a u-primitive f
            return [f]
        squarefree_pt = all(e2 == 1 for _, e2 in blocks)
        rows = rows0
        if x0:
            rows = np.stack([_np_taylor_shift(rows0[j], x0, p) for j in range(n + 1)])
        # divide by the leading coefficient inside GF(p)[[u]]: M is monic in v
        linv = _np_series_inv(rows[n], K, p)
        M = np.stack([_np_series_mul(rows[j], linv, K, p) for j in range(n + 1)])
        assert M[n, 0] == 1 and not M[n, 1:].any()
        f_sh = LaurentPoly(
            fld,
            {
                (i, j): int(rows[j, i])
                for j in range(n + 1)
                for i in range(K)
                if rows[j, i]
            },
        )
        lc_sh = rows[n]

        def decode(prod: np.ndarray) -> LaurentPoly:
            # a true factor times the cofactor's leading coefficient equals
            # the subset product times lc, of u-degree at most m, so the
            # truncation at u^(m+1) is exact and the u-primitive part
            # recovers the factor
            cand_rows = [
                _np_trim(_np_series_mul(prod[j], lc_sh, K, p))
                for j in range(prod.shape[0])
            ]
            cont = cand_rows[0][:0]
            for rj in cand_rows:
                if len(rj):
                    cont = rj if len(cont) == 0 else _np_gcd(cont, rj, p)
                    if len(cont) == 1:
                        break
            support: dict = {}
            for j, rj in enumerate(cand_rows):
                if len(cont) > 1 and len(rj):
                    rj = _np_divmod(rj, cont, p)[0]
                for i2, c2 in enumerate(rj.tolist()):
                    if c2:
                        support[(i2, j)] = c2
            return LaurentPoly(fld, support).normalize_unit()

        def unshift(g: LaurentPoly) -> LaurentPoly:
            return (_shift_u(g, p - x0, p) if x0 else g).normalize_unit()

        if len(blocks) == 1:
            # perfect power: recover the root of M and certify by division
            psi, e2 = blocks[0]
            R = _vp_root(M, psi, e2, K, p)
            if R is None:
                return None
            lcf = UnivariatePoly(fld, [int(c) for c in lc_sh])
            root = UnivariatePoly(fld, [1])
            for phi, mult in factor_univariate(lcf, seed):
                if phi.degree() < 1:
                    continue
                if mult % e2:
                    return None
                root = root * phi ** (mult // e2)
            lcr = np.array([int(c) for c in root.coeffs], dtype=np.int64)
            D = [_np_trim(_np_series_mul(R[j], lcr, K, p)) for j in range(R.shape[0])]
            g = unshift(
                LaurentPoly(
                    fld,
                    {
                        (i2, j): c2
                        for j, rj in enumerate(D)
                        for i2, c2 in enumerate(rj.tolist())
                        if c2
                    },
                ).normalize_unit()
            )
            t = f
            for _ in range(e2):
                t = _laurent_divexact(t, g)
                if t is None:
                    return None
            if len(t.support) > 1:
                return None
            out: list[LaurentPoly] = []
            for h, mm in factor_bivariate(g, seed):
                out.extend([h] * (mm * e2))
            return out
        locs = [_np_pow(psi, e2, p) if e2 > 1 else psi for psi, e2 in blocks]
        r = len(locs)
        if r > 18:
            return None
        # CRT data of the pairwise coprime reduction mod u
        bezout = []
        for i, loc_i in enumerate(locs):
            b = np.array([1], dtype=np.int64)
            for j, loc_j in enumerate(locs):
                if j != i:
                    b = _np_divmod(_np_mulmod(b, loc_j, p), loc_i, p)[1]
            w = _np_poly_invmod(b, loc_i, p)
            if w is None:
                return None
            bezout.append(w)
        lifted = []
        for loc_i in locs:
            A = np.zeros((len(loc_i), K), dtype=np.int64)
            A[:, 0] = loc_i
            lifted.append(A)
        for k in range(1, K):
            prod = _vp_product(lifted, K, p)
            err = _np_trim((M[:, k] - prod[:, k]) % p)
            if len(err) == 0:
                continue
            for i in range(r):
                delta = _np_divmod(_np_mulmod(err, bezout[i], p), locs[i], p)[1]
                if len(delta):
                    lifted[i][: len(delta), k] = (
                        lifted[i][: len(delta), k] + delta
                    ) % p
        if not np.array_equal(_vp_product(lifted, K, p), M):
            return None
        current = f_sh
        plain: list[LaurentPoly] = []  # established irreducible
        rec: list[LaurentPoly] = []  # certified factors finished recursively
        pool = []
        for i, (psi, e2) in enumerate(blocks):
            if e2 == 1:
                pool.append(i)
                continue
            # a repeated block is a whole factor (the e2-th power part)
            cand = decode(lifted[i])
            q = _laurent_divexact(current, cand)
            if q is None:
                return None
            current = q.normalize_unit()
            rec.append(unshift(cand))
        budget = 1 << 16
        while pool and len(current.support) > 1:
            progress = False
            cur_du = max(e[0] for e in current.support)
            cur_dv = max(e[1] for e in current.support)
            for size in range(1, len(pool) + 1):
                for idx in itertools.combinations(pool, size):
                    budget -= 1
                    if budget < 0:
                        return None
                    prod = _vp_product([lifted[i] for i in idx], K, p)
                    if prod.shape[0] - 1 > cur_dv:
                        continue
                    cand = decode(prod)
                    if max(e[0] for e in cand.support) > cur_du:
                        continue
                    q = _laurent_divexact(current, cand)
                    if q is None:
                        continue
                    (plain if squarefree_pt else rec).append(unshift(cand))
                    current = q.normalize_unit()
                    pool = [i for i in pool if i not in idx]
                    progress = True
                    break
                if progress:
                    break
            if not progress:
                break
        if len(current.support) > 1:
            # at a squarefree point the sweep is complete, so the leftover
            # is irreducible; at a degenerate point it is only a certified
            # factor and gets refactored
            (plain if squarefree_pt else rec).append(unshift(current))
        if not (plain or rec):
            return None
        out = list(plain)
        for g in rec:
            for h, mm in factor_bivariate(g, seed):
                out.extend([h] * mm)
        return out

    degenerate: list[tuple[int, list]] = []
    usable = 0
    tried = 0
    for x in range(p):
        if usable >= 120:
            break
        if _np_eval(rows0[n], x, p) == 0:
            continue
        usable += 1
        spec = np.array(
            [_np_eval(rows0[j], x, p) for j in range(n + 1)], dtype=np.int64
        )
        sqf = _squarefree_decomposition(spec, p)
        if all(e2 == 1 for _, e2 in sqf):
            got = attempt(x, sqf)
            if got is not None:
                return got
            tried += 1
            if tried >= 4:
                return None
        else:
            degenerate.append((x, sqf))
    for x, sqf in degenerate[:6]:
        got = attempt(x, sqf)
        if got is not None:
            return got
    return None


def _hensel_factor_modp(f: LaurentPoly, seed: int) -> list[LaurentPoly] | None:
    """Factor over GF(p) by lifting the factors of a squarefree specialization.

    Over the power series ring at u = x0 the polynomial becomes a unit times
    a monic polynomial in v; the coprime factorization of the specialization
    lifts to series precision du + 1, and true factors are the u-primitive
    parts of leading-coefficient corrected subset products, each certified by
    exact division.  Returns None when no orientation admits a usable lifting
    point (for instance when f is not squarefree); a non-None result is the
    complete list of irreducible factors, each of multiplicity one.
    """
    p = f.field.p
    if p is None or p >= 1 << 20:
        return None
    for swapped in (False, True):
        g = f.swap_variables().normalize_unit() if swapped else f
        if max(e[1] for e in g.support) == 0:
            continue
        if g.content_in_u().degree() != 0:
            continue
        got = _hensel_orient(g, seed)
        if got is not None:
            if swapped:
                got = [h.swap_variables().normalize_unit() for h in got]
            return got
    # No line u = x0 meets f in a squarefree divisor (over a small field the
    # discriminant can vanish at every rational point), so specialize along
    # sheared lines u = x0 - c*v^s instead.
    fld = f.field
    for s in (1, 2):
        for c in range(1, min(p, 64)):
            F = _shear(f, c, s).normalize_unit()
            cont = F.content_in_u()
            outer: list[LaurentPoly] = []
            if cont.degree() > 0:
                contp = LaurentPoly(
                    fld, {(e, 0): c2 for e, c2 in enumerate(cont.coeffs)}
                ).normalize_unit()
                q = _laurent_divexact(F, contp)
                assert q is not None
                F = q.normalize_unit()
                for phi, mult in factor_univariate(cont, seed):
                    if phi.degree() >= 1:
                        gq = LaurentPoly(
                            fld, {(e, 0): c2 for e, c2 in enumerate(phi.coeffs)}
                        ).normalize_unit()
                        outer.extend([gq] * mult)
            if len(F.support) > 1:
                got = _hensel_orient(F, seed)
                if got is None:
                    continue
            else:
                got = []
            if outer or got:
                return [_shear(g, p - c, s).normalize_unit() for g in outer + got]
    return None


def _recombine(
    f: LaurentPoly,
    univ_factors: list[tuple[UnivariatePoly, int]],
    d: int,
    max_subsets: int,
) -> list[tuple[LaurentPoly, int]]:
    """Assemble bivariate factors from univariate images under v -> u^d.

    The image of a factor translated to touch both axes is x^s times a
    product of pool entries for some 0 <= s < d, so each candidate subset is
    decoded under every such shift and certified by exact division.  Minimal
    sub-multisets split off first, which keeps accepted factors irreducible.
    Candidates are pre-screened by divisibility of a few specializations
    u = x, which is what keeps the subset search affordable.
    """
    fld = f.field

    def probes(g: LaurentPoly) -> list[tuple[int, UnivariatePoly]]:
        xs = range(fld.p) if fld.p else range(8)
        out = []
        for x in xs:
            s = g.specialize_u(x)
            if not s.is_zero():
                out.append((x, s))
                if len(out) == 3:
                    break
        return out

    pool: list[UnivariatePoly] = []
    for phi, m in univ_factors:
        pool.extend([phi] * m)
    out: list[tuple[LaurentPoly, int]] = []
    current = f
    cur_probes = probes(current)
    checked = 0
    while pool and len(current.support) > 1:
        found = False
        cur_du = max(e[0] for e in current.support)
        cur_dv = max(e[1] for e in current.support)
        for size in range(1, len(pool) + 1):
            seen_keys = set()
            for idx in itertools.combinations(range(len(pool)), size):
                key = tuple(
                    sorted((pool[i].degree(), tuple(pool[i].coeffs)) for i in idx)
                )
                if key in seen_keys:
                    continue
                seen_keys.add(key)
                checked += 1
                if checked > max_subsets:
                    raise RecombinationOverflow(
                        f"more than {max_subsets} candidate subsets"
                    )
                prod = UnivariatePoly(fld, [1])
                for i in idx:
                    prod = prod * pool[i]
                for s in range(d):
                    cand_support: dict = {}
                    for e, c in enumerate(prod.coeffs):
                        if c != 0:
                            es = e + s
                            cand_support[(es % d, es // d)] = c
                    cand = LaurentPoly(fld, cand_support)
                    if (
                        max(e[0] for e in cand.support) > cur_du
                        or max(e[1] for e in cand.support) > cur_dv
                    ):
                        continue
                    cand = cand.normalize_unit()
                    plausible = True
                    for x, sc in cur_probes:
                        cs = cand.specialize_u(x)
                        if cs.is_zero():
                            continue
                        if not sc.divmod(cs)[1].is_zero():
                            plausible = False
                            break
                    if not plausible:
                        continue
                    q = _laurent_divexact(current, cand)
                    if q is not None:
                        out.append((cand, 1))
                        current = q.normalize_unit()
                        cur_probes = probes(current)
                        for i in sorted(idx, reverse=True):
                            pool.pop(i)
                        found = True
                        break
                if found:
                    break
            if found:
                break
        if not found:
            break
    if len(current.support) > 1:
        out.append((current.normalize_unit(), 1))
    return out


def _merge_multiplicities(
    factors: list[tuple[LaurentPoly, int]],
) -> list[tuple[LaurentPoly, int]]:
    acc: dict = {}
    order: list = []
    for g, m in factors:
        key = tuple(sorted(g.support.items()))
        if key not in acc:
            acc[key] = [g, 0]
            order.append(key)
        acc[key][1] += m
    out = [(acc[k][0], acc[k][1]) for k in order]
    out.sort(key=lambda gm: (len(gm[0].support), sorted(gm[0].support)))
    return out


def factor_bivariate(
    f: LaurentPoly, seed: int = 0, max_subsets: int = 1 << 20
) -> list[tuple[LaurentPoly, int]]:
    """Factor a Laurent polynomial into irreducibles over its field.

    Monomial units are normalized away (so a unit input has no factors).
    Factors with segment Newton polygons come from edge restrictions; a
    2-dimensional remainder is certified irreducible when its Newton polygon
    is Minkowski-indecomposable or a full-degree specialization is
    irreducible.  Otherwise, over a prime field a squarefree specialization
    is lifted and recombined, and the fallback for the remaining cases is
    the substitution v -> u^D with exhaustive recombination of the
    univariate factors.
    """
    if f.is_zero():
        raise ZeroPolynomial("factorization of 0")
    f = f.normalize_unit()
    if len(f.support) <= 1:
        return []
    f, segs = _strip_segment_factors(f, seed)
    out = list(segs)
    if len(f.support) > 1:
        npf = newton_polygon(f)
        pieces: list[tuple[LaurentPoly, int]] | None = None
        if npf.dimension == 2 and is_minkowski_indecomposable(npf):
            pieces = [(f, 1)]
        elif _specialization_irreducible(f, seed):
            pieces = [(f, 1)]
        else:
            lifted = _hensel_factor_modp(f, seed)
            if lifted is not None:
                pieces = [(g, 1) for g in lifted]
        if pieces is None:
            du = max(e[0] for e in f.support)
            swapped = False
            if du == 0:
                f = f.swap_variables()
                du = max(e[0] for e in f.support)
                swapped = True
            d = du + 1
            img = f.substitute_v_power(d)
            # x^k artifacts of the substitution are not factors of f
            k = next(i for i, c in enumerate(img.coeffs) if c != 0)
            img = UnivariatePoly(f.field, img.coeffs[k:])
            univ = factor_univariate(img, seed)
            pieces = _recombine(f, univ, d, max_subsets)
            if swapped:
                pieces = [(g.swap_variables().normalize_unit(), m) for g, m in pieces]
        out.extend(pieces)
    return _merge_multiplicities(out)
