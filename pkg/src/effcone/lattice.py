"""Exact lattice-polygon geometry and integer linear algebra.

Everything here is pure and exact: polygons are tuples of integer points,
matrices are lists of Python ints or Fractions, and no floating point is
used anywhere.  The polygon type canonicalizes its input to a
counterclockwise convex hull with collinear vertices merged.
"""

from __future__ import annotations

import math
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Iterator, Sequence

Vec = tuple[int, int]


class DegeneratePolygon(ValueError):
    """Raised by operations that require a two-dimensional polygon."""


class NotDefinite(ValueError):
    """Raised when a Gram matrix fails the required definiteness."""


def primitive(v: Sequence[int]) -> Vec:
    """Divide a nonzero integer vector by the gcd of its entries."""
    x, y = int(v[0]), int(v[1])
    g = gcd(abs(x), abs(y))
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    return (x // g, y // g)


def _cross(o: Vec, a: Vec, b: Vec) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points: Iterable[Sequence[int]]) -> list[Vec]:
    """Andrew's monotone chain; counterclockwise, collinear points dropped."""
    pts = sorted({(int(p[0]), int(p[1])) for p in points})
    if len(pts) <= 2:
        return pts
    lower: list[Vec] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Vec] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) == 2 and hull[0] == hull[1]:
        hull = hull[:1]
    return hull


class LatticePolygon:
    """Convex lattice polygon, stored counterclockwise from the lex-least vertex.

    Degenerate inputs (a point or a segment) are kept with dimension 0 or 1;
    most operations demand dimension 2 and raise DegeneratePolygon otherwise.
    """

    __slots__ = ("vertices", "_cache")

    def __init__(self, points: Iterable[Sequence[int]]):
        hull = convex_hull(points)
        if not hull:
            raise ValueError("empty point set")
        if len(hull) > 2:
            start = hull.index(min(hull))
            hull = hull[start:] + hull[:start]
        self.vertices: tuple[Vec, ...] = tuple(hull)
        self._cache: dict[str, object] = {}

    # -- basic structure ---------------------------------------------------

    @property
    def dimension(self) -> int:
        return min(len(self.vertices) - 1, 2)

    def __len__(self) -> int:
        return len(self.vertices)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LatticePolygon) and self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash(self.vertices)

    def __repr__(self) -> str:
        return f"LatticePolygon({list(map(list, self.vertices))})"

    def edges(self) -> list[tuple[Vec, Vec]]:
        n = len(self.vertices)
        if n == 1:
            return []
        if n == 2:
            return [(self.vertices[0], self.vertices[1])]
        return [(self.vertices[i], self.vertices[(i + 1) % n]) for i in range(n)]

    def edge_vectors(self) -> list[Vec]:
        return [(b[0] - a[0], b[1] - a[1]) for a, b in self.edges()]

    def translate(self, t: Sequence[int]) -> "LatticePolygon":
        tx, ty = int(t[0]), int(t[1])
        return LatticePolygon([(x + tx, y + ty) for x, y in self.vertices])

    def dilate(self, k: int) -> "LatticePolygon":
        if k < 0:
            raise ValueError("dilation factor must be >= 0")
        return LatticePolygon([(k * x, k * y) for x, y in self.vertices])

    def unimodular_image(self, m: Sequence[Sequence[int]], t: Sequence[int] = (0, 0)) -> "LatticePolygon":
        (a, b), (c, d) = m
        if a * d - b * c not in (1, -1):
            raise ValueError("matrix is not unimodular")
        return LatticePolygon(
            [(a * x + b * y + t[0], c * x + d * y + t[1]) for x, y in self.vertices]
        )

    def bounding_box(self) -> tuple[int, int, int, int]:
        xs = [v[0] for v in self.vertices]
        ys = [v[1] for v in self.vertices]
        return min(xs), min(ys), max(xs), max(ys)

    def contains(self, p: Sequence[int], strict: bool = False) -> bool:
        """Membership test; strict=True asks for the interior."""
        q = (int(p[0]), int(p[1]))
        if self.dimension < 2:
            if strict:
                return False
            if self.dimension == 0:
                return q == self.vertices[0]
            a, b = self.vertices
            if _cross(a, b, q) != 0:
                return False
            return (min(a[0], b[0]) <= q[0] <= max(a[0], b[0])
                    and min(a[1], b[1]) <= q[1] <= max(a[1], b[1]))
        for a, b in self.edges():
            c = _cross(a, b, q)
            if c < 0 or (strict and c == 0):
                return False
        return True


# -- spec operations -------------------------------------------------------


def normalized_volume(p: LatticePolygon) -> int:
    """Twice the euclidean area (the shoelace sum), a nonnegative integer."""
    v = p.vertices
    n = len(v)
    if n < 3:
        return 0
    s = 0
    for i in range(n):
        x1, y1 = v[i]
        x2, y2 = v[(i + 1) % n]
        s += x1 * y2 - x2 * y1
    return abs(s)


def boundary_points(p: LatticePolygon) -> int:
    if p.dimension == 0:
        return 1
    if p.dimension == 1:
        a, b = p.vertices
        return gcd(abs(b[0] - a[0]), abs(b[1] - a[1])) + 1
    return sum(gcd(abs(dx), abs(dy)) for dx, dy in p.edge_vectors())


def lattice_points(p: LatticePolygon) -> list[Vec]:
    """All lattice points of the polygon, lexicographically sorted."""
    key = "lattice_points"
    if key not in p._cache:
        x0, y0, x1, y1 = p.bounding_box()
        pts = [
            (x, y)
            for x in range(x0, x1 + 1)
            for y in range(y0, y1 + 1)
            if p.contains((x, y))
        ]
        p._cache[key] = pts
    return list(p._cache[key])  # type: ignore[arg-type]


def interior_points(p: LatticePolygon) -> list[Vec]:
    key = "interior_points"
    if key not in p._cache:
        x0, y0, x1, y1 = p.bounding_box()
        pts = [
            (x, y)
            for x in range(x0 + 1, x1)
            for y in range(y0 + 1, y1)
            if p.contains((x, y), strict=True)
        ]
        p._cache[key] = pts
    return list(p._cache[key])  # type: ignore[arg-type]


def _direction_rep(w: Vec) -> Vec:
    """Normalize a primitive direction so its first nonzero entry is positive."""
    if w[0] < 0 or (w[0] == 0 and w[1] < 0):
        return (-w[0], -w[1])
    return w


def width(p: LatticePolygon) -> tuple[int, set[Vec]]:
    """Minimal lattice width and the set of primitive directions attaining it.

    Directions are searched with sup-norm bounded by the vertex diameter;
    each is reported with its first nonzero coordinate positive (w and -w
    give the same width).
    """
    if p.dimension < 2:
        raise DegeneratePolygon("width needs a two-dimensional polygon")
    vs = p.vertices
    bound = max(
        max(abs(a[0] - b[0]), abs(a[1] - b[1])) for a in vs for b in vs
    )
    best: int | None = None
    dirs: set[Vec] = set()
    for a in range(0, bound + 1):
        for b in range(-bound, bound + 1):
            if (a, b) == (0, 0) or (a == 0 and b < 0):
                continue
            if gcd(a, abs(b)) != 1:
                continue
            vals = [a * x + b * y for x, y in vs]
            w = max(vals) - min(vals)
            if best is None or w < best:
                best = w
                dirs = {(a, b)}
            elif w == best:
                dirs.add((a, b))
    assert best is not None
    return best, dirs


def normal_fan_rays(p: LatticePolygon) -> list[Vec]:
    """Primitive inner normals of the edges, counterclockwise from the first edge."""
    if p.dimension < 2:
        raise DegeneratePolygon("normal fan needs a two-dimensional polygon")
    rays = []
    for dx, dy in p.edge_vectors():
        rays.append(primitive((-dy, dx)))
    return rays


def is_minkowski_indecomposable(p: LatticePolygon) -> bool:
    """No decomposition P = A + B with both summands of positive lattice diameter.

    Decided by edge-vector subdivision: each edge vector g*(a,b) contributes a
    part s in [0, g] to the first summand, and a decomposition is a nontrivial
    closed sub-loop.
    """
    if p.dimension == 0:
        return True
    if p.dimension == 1:
        a, b = p.vertices
        return gcd(abs(b[0] - a[0]), abs(b[1] - a[1])) == 1
    parts = []
    for dx, dy in p.edge_vectors():
        g = gcd(abs(dx), abs(dy))
        parts.append((g, (dx // g, dy // g)))
    # states: (partial sum, some s_i > 0 so far, some s_i < g_i so far)
    states: set[tuple[int, int, bool, bool]] = {(0, 0, False, False)}
    for g, (ax, ay) in parts:
        nxt: set[tuple[int, int, bool, bool]] = set()
        for sx, sy, pos, nonfull in states:
            for s in range(g + 1):
                nxt.add(
                    (sx + s * ax, sy + s * ay, pos or s > 0, nonfull or s < g)
                )
        states = nxt
    return (0, 0, True, True) not in states


# -- integer matrices ------------------------------------------------------


def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> list[list[int]]:
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        ai = a[i]
        for k in range(inner):
            f = ai[k]
            if f:
                bk = b[k]
                oi = out[i]
                for j in range(cols):
                    oi[j] += f * bk[j]
    return out


def mat_det(a: Sequence[Sequence[int]]) -> Fraction:
    n = len(a)
    m = [[Fraction(x) for x in row] for row in a]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] * inv
            if f:
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return det


def mat_inverse_unimodular(a: Sequence[Sequence[int]]) -> list[list[int]]:
    """Exact inverse of an integer matrix with determinant +-1."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(a)]
    for c in range(n):
        piv = next(r for r in range(c, n) if m[r][c] != 0)
        m[c], m[piv] = m[piv], m[c]
        inv = 1 / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c]:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    out = []
    for row in m:
        vals = row[n:]
        if any(v.denominator != 1 for v in vals):
            raise ValueError("matrix is not unimodular")
        out.append([int(v) for v in vals])
    return out


class SNFResult:
    """U * A * V = D with U, V unimodular and D diagonal, d1 | d2 | ..."""

    __slots__ = ("u", "d", "v")

    def __init__(self, u: list[list[int]], d: list[list[int]], v: list[list[int]]):
        self.u = u
        self.d = d
        self.v = v

    def diagonal(self) -> list[int]:
        return [self.d[i][i] for i in range(min(len(self.d), len(self.d[0]) if self.d else 0))]


def smith_normal_form(a: Sequence[Sequence[int]]) -> SNFResult:
    """Smith normal form by exact row/column reduction."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    d = [list(map(int, row)) for row in a]
    u = _identity(rows)
    v = _identity(cols)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in d:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, f):
        # row_dst += f * row_src
        d[dst] = [x + f * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, f):
        for r in d:
            r[dst] += f * r[src]
        for r in v:
            r[dst] += f * r[src]

    t = 0
    while t < min(rows, cols):
        # locate a pivot of minimal absolute value in the remaining block
        piv = None
        for i in range(t, rows):
            for j in range(t, cols):
                if d[i][j] and (piv is None or abs(d[i][j]) < abs(d[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            done = True
            for i in range(t + 1, rows):
                if d[i][t]:
                    q = d[i][t] // d[t][t]
                    add_row(t, i, -q)
                    if d[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, cols):
                if d[t][j]:
                    q = d[t][j] // d[t][t]
                    add_col(t, j, -q)
                    if d[t][j]:
                        swap_cols(t, j)
                        done = False
            if done:
                break
        # pivot must divide the whole remaining block
        stuck = False
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if d[i][j] % d[t][t]:
                    add_row(i, t, 1)
                    stuck = True
                    break
            if stuck:
                break
        if stuck:
            continue
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return SNFResult(u, d, v)


def cokernel_invariants(a: Sequence[Sequence[int]], ambient_rank: int) -> list[int]:
    """Invariant factors of Z^ambient_rank / column-span(A): 0 marks a free factor."""
    if not a or not a[0]:
        return [0] * ambient_rank
    snf = smith_normal_form(a)
    diag = snf.diagonal()
    out = [d for d in diag if d != 0]
    out += [0] * (ambient_rank - len(out))
    return out


# -- quadratic forms -------------------------------------------------------


def _floor_sqrt_fraction(f: Fraction) -> int:
    """floor(sqrt(f)) for a nonnegative rational."""
    if f < 0:
        raise ValueError("negative radicand")
    return isqrt(f.numerator * f.denominator) // f.denominator


def enumerate_vectors_of_norm(
    gram: Sequence[Sequence[Fraction | int]], n: Fraction | int
) -> list[tuple[int, ...]]:
    """All integer vectors v with v^T G v = n, for G negative definite.

    Bounded backtracking on the exact rational Cholesky-style decomposition
    of -G; raises NotDefinite if -G fails to be positive definite.
    """
    k = len(gram)
    q = [[Fraction(-gram[i][j]) for j in range(k)] for i in range(k)]
    for i in range(k):
        for j in range(i):
            if q[i][j] != q[j][i]:
                raise ValueError("Gram matrix must be symmetric")
    for i in range(k):
        if q[i][i] <= 0:
            raise NotDefinite("matrix is not negative definite")
        for j in range(i + 1, k):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for l in range(i + 1, k):
            for m2 in range(l, k):
                q[l][m2] -= q[l][i] * q[i][m2]
    for i in range(k):
        if q[i][i] <= 0:
            raise NotDefinite("matrix is not negative definite")
    target = Fraction(-n)
    if target < 0:
        return []
    out: list[tuple[int, ...]] = []
    x = [0] * k

    def descend(i: int, remaining: Fraction) -> None:
        c = sum((q[i][j] * x[j] for j in range(i + 1, k)), Fraction(0))
        s = remaining / q[i][i]
        r = _floor_sqrt_fraction(s) + 1
        lo = math.ceil(-c - r)
        hi = math.floor(-c + r)
        for xi in range(lo, hi + 1):
            term = q[i][i] * (xi + c) ** 2
            if term > remaining:
                continue
            x[i] = xi
            if i == 0:
                if term == remaining:
                    out.append(tuple(x))
            else:
                descend(i - 1, remaining - term)
        x[i] = 0

    descend(k - 1, target)
    return sorted(out)


# -- forgetful-map ray check ----------------------------------------------


def lm_ray_projection_check(
    n: int, proj: Sequence[Sequence[int]], target: LatticePolygon
) -> bool:
    """Check that all projected boundary rays of the rank-(n-3) lattice land in target.

    The lattice has generators e_1..e_{n-2} with e_{n-2} = -(e_1 + ... + e_{n-3});
    rays are the sums over subsets I of size 1..n-3.  Zero images are ignored;
    nonzero images are made primitive before the membership test.
    """
    m = n - 3
    cols = [(proj[0][j], proj[1][j]) for j in range(m)]
    last = (-sum(c[0] for c in cols), -sum(c[1] for c in cols))
    gens = cols + [last]
    total = len(gens)  # n - 2
    for mask in range(1, 1 << total):
        size = mask.bit_count()
        if not 1 <= size <= m:
            continue
        sx = sy = 0
        for i in range(total):
            if mask >> i & 1:
                sx += gens[i][0]
                sy += gens[i][1]
        if sx == 0 and sy == 0:
            continue
        if not target.contains(primitive((sx, sy))):
            return False
    return True


# -- canonical form --------------------------------------------------------


def _extended_gcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        qu = old_r // r
        old_r, r = r, old_r - qu * r
        old_s, s = s, old_s - qu * s
        old_t, t = t, old_t - qu * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def canonical_form(p: LatticePolygon) -> tuple[Vec, ...]:
    """Lex-least vertex tuple over unimodular maps and translations.

    Each edge in turn is moved to the positive x-axis with its start at the
    origin, the residual shear is fixed by reducing the preceding vertex,
    and the smallest resulting vertex list (over both orientations) wins.
    """
    if p.dimension == 0:
        return ((0, 0),)
    if p.dimension == 1:
        a, b = p.vertices
        g = gcd(abs(b[0] - a[0]), abs(b[1] - a[1]))
        return ((0, 0), (g, 0))
    best: tuple[Vec, ...] | None = None
    for reflected in (False, True):
        q = p.unimodular_image([[1, 0], [0, -1]]) if reflected else p
        verts = list(q.vertices)
        nv = len(verts)
        for start in range(nv):
            cyc = verts[start:] + verts[:start]
            ox, oy = cyc[0]
            dx, dy = cyc[1][0] - ox, cyc[1][1] - oy
            pdx, pdy = primitive((dx, dy))
            g, s, t = _extended_gcd(pdx, pdy)
            # rows of the unimodular map sending (pdx,pdy) to (1,0)
            m = [[s, t], [-pdy, pdx]]
            img = [
                (m[0][0] * (x - ox) + m[0][1] * (y - oy),
                 m[1][0] * (x - ox) + m[1][1] * (y - oy))
                for x, y in cyc
            ]
            anchor = img[-1]
            assert anchor[1] > 0
            k = -(anchor[0] // anchor[1])
            img = [(x + k * y, y) for x, y in img]
            cand = tuple(img)
            if best is None or cand < best:
                best = cand
    assert best is not None
    return best
