"""Linear systems with an imposed multiple point at the torus identity.

L_Delta(m) is the space of Laurent polynomials supported on Delta whose
vanishing multiplicity at (1,1) is at least m.  Everything here reduces to
exact kernels of the m(m+1)/2 Taylor-coefficient conditions: good-polygon
verification, the order e (first dilation k where h^0(kC) jumps to 2), the
Zariski decomposition of the adjoint K_X + C, and the component counts of
the order-e pencil's fibers mod p.

Kernels over GF(p) run on numpy int64 (p < 2^31); over the rationals a
fraction-free elimination handles small systems and a certified
multi-prime CRT route handles large ones.  Every rational answer is exact:
reconstructed vectors are verified against the integer matrix, and the
verified count matching the minimal modular nullity pins the dimension.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .lattice import (
    LatticePolygon,
    Vec,
    boundary_points,
    interior_points,
    lattice_points,
    normalized_volume,
    primitive,
)
from .laurent import (
    ExactField,
    GFp,
    LaurentPoly,
    QQ,
    _laurent_divexact,
    factor_bivariate,
    multiplicity_at_identity,
    newton_polygon,
)
from .toric import (
    DivisorClass,
    FanMismatch,
    NotNegativeDefinite,
    SurfaceContext,
    _solve_linear,
    canonical_class,
    divisor_class_of_curve,
    is_negative_definite,
    weil_class_from_support,
)


class OrderMismatch(ValueError):
    """Raised when a dilated system expected to be a pencil is not one."""


class AdjointNotUnique(RuntimeError):
    """Raised when the adjoint system has dimension > 1 and trivial gcd."""


class NonDuValPositivePart(RuntimeError):
    """Raised when the positive part of K_X + C is nonzero.

    The partial decomposition is attached as .decomposition so callers can
    inspect what was found; polyhedrality tests downstream do not apply.
    """

    def __init__(self, message: str, decomposition: "AdjointDecomposition"):
        super().__init__(message)
        self.decomposition = decomposition


@dataclass(frozen=True)
class NotFoundUpTo:
    """Sentinel for order_e: no dimension jump for any k <= kmax."""

    kmax: int


@dataclass(frozen=True)
class LinearSystemBasis:
    """Exact kernel basis of the multiplicity-m' conditions on Delta'.

    Every basis element is supported in Delta' and vanishes to order >= m'
    at (1,1); the basis is the reduced-echelon kernel basis (one element
    per free column), so it is deterministic across computation routes.
    """

    field: ExactField
    polygon: LatticePolygon
    multiplicity: int
    basis: tuple[LaurentPoly, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class GoodPolygonReport:
    m: int
    vertex_count: int
    checks: dict
    witness: LaurentPoly | None

    @property
    def good(self) -> bool:
        return self.vertex_count >= 4 and all(self.checks.values())


@dataclass(frozen=True)
class AdjointComponent:
    poly: LaurentPoly
    multiplicity: int
    divisor_class: DivisorClass
    # direction of the primitive segment NP when the polygon has lattice
    # width exactly m perpendicular to it (a 1-parameter subgroup closure)
    width_direction: Vec | None = None


@dataclass(frozen=True)
class AdjointDecomposition:
    components: tuple[AdjointComponent, ...]
    negative: DivisorClass
    positive: DivisorClass
    section: LaurentPoly
    warnings: tuple[str, ...] = ()


# -- condition matrix ----------------------------------------------------------
#
# f(1+s, 1+t) = sum_{a,b} (sum_{ij} c_ij C(i,a) C(j,b)) s^a t^b, so the
# multiplicity conditions are one row per (a, b) with a + b < m.  Supports
# are translated into the nonnegative orthant first (a monomial unit does
# not change the multiplicity), which keeps every binomial a plain C(n, k).

_EXACT_COLUMN_LIMIT = 160

_PRIMES31 = (
    2147483647, 2147483629, 2147483587, 2147483579, 2147483563, 2147483549,
    2147483543, 2147483497, 2147483489, 2147483477, 2147483423, 2147483399,
    2147483353, 2147483323, 2147483269, 2147483249,
)


def _conditions(m: int) -> list[Vec]:
    return [(a, d - a) for d in range(m) for a in range(d + 1)]


def _shifted_points(delta: LatticePolygon) -> tuple[list[Vec], list[Vec]]:
    pts = lattice_points(delta)
    x0 = min(x for x, _ in pts)
    y0 = min(y for _, y in pts)
    return pts, [(x - x0, y - y0) for x, y in pts]


def _integer_matrix(points: Sequence[Vec], conds: Sequence[Vec]) -> list[list[int]]:
    return [
        [math.comb(i, a) * math.comb(j, b) for i, j in points] for a, b in conds
    ]


def _pascal_mod(nmax: int, kmax: int, p: int) -> np.ndarray:
    t = np.zeros((nmax + 1, kmax + 1), dtype=np.int64)
    t[:, 0] = 1
    for n in range(1, nmax + 1):
        t[n, 1:] = (t[n - 1, 1:] + t[n - 1, : kmax]) % p
    return t


def _matrix_mod(points: Sequence[Vec], conds: Sequence[Vec], p: int) -> np.ndarray:
    pts = np.asarray(points, dtype=np.int64)
    cds = np.asarray(conds, dtype=np.int64)
    t = _pascal_mod(int(pts.max()), int(cds.max()) if len(cds) else 0, p)
    return t[pts[None, :, 0], cds[:, None, 0]] * t[pts[None, :, 1], cds[:, None, 1]] % p


def _dot_mod(row: np.ndarray, v: np.ndarray, p: int) -> int:
    # split one factor into 16-bit halves so int64 dot products cannot
    # overflow at 31-bit primes
    lo = int(row @ (v & 0xFFFF))
    hi = int(row @ (v >> 16))
    return (lo + ((hi % p) << 16)) % p


def _kernel_mod(M: np.ndarray, p: int) -> tuple[list[np.ndarray], tuple[int, ...]]:
    """Reduced kernel basis of M over GF(p) and the pivot column set."""
    M = M.copy() % p
    rows, cols = M.shape
    piv: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if len(nz) == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            M[[r, i]] = M[[i, r]]
        M[r, c:] = M[r, c:] * pow(int(M[r, c]), -1, p) % p
        below = M[r + 1 :, c]
        hit = np.nonzero(below)[0]
        if len(hit):
            idx = r + 1 + hit
            M[idx, c:] = (M[idx, c:] - below[hit][:, None] * M[r, c:][None, :]) % p
        piv.append(c)
        r += 1
    pivset = set(piv)
    basis = []
    for fc in (c for c in range(cols) if c not in pivset):
        v = np.zeros(cols, dtype=np.int64)
        v[fc] = 1
        for i in range(len(piv) - 1, -1, -1):
            c = piv[i]
            v[c] = (-_dot_mod(M[i, c + 1 :], v[c + 1 :], p)) % p
        basis.append(v)
    return basis, tuple(piv)


def _kernel_exact_qq(int_rows: Sequence[Sequence[int]], cols: int) -> list[list[Fraction]]:
    """Fraction-free echelon with content stripping; reduced kernel basis."""
    ech: list[tuple[int, list[int]]] = []  # (pivot col, row), ascending
    for row in int_rows:
        row = list(row)
        for c, er in ech:
            if row[c]:
                a, b = er[c], row[c]
                row = [a * x - b * y for x, y in zip(row, er)]
                g = math.gcd(*(abs(x) for x in row))
                if g > 1:
                    row = [x // g for x in row]
        pc = next((j for j, x in enumerate(row) if x), None)
        if pc is None:
            continue
        if row[pc] < 0:
            row = [-x for x in row]
        ech.append((pc, row))
        ech.sort(key=lambda t: t[0])
    pivset = {c for c, _ in ech}
    basis = []
    for fc in (c for c in range(cols) if c not in pivset):
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for c, er in reversed(ech):
            s = sum(er[j] * v[j] for j in range(c + 1, cols) if er[j] and v[j])
            v[c] = Fraction(-s, 1) / er[c] if s else Fraction(0)
        basis.append(v)
    return basis


def _rational_reconstruct(a: int, m: int) -> Fraction | None:
    """Wang's algorithm: the n/d with |n|, d <= sqrt(m/2) and n = a*d mod m."""
    bound = math.isqrt(m // 2)
    r0, r1 = m, a % m
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or math.gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1)


def _crt_pair(a1: int, m1: int, a2: int, m2: int) -> tuple[int, int]:
    d = pow(m1, -1, m2) * (a2 - a1) % m2
    return a1 + m1 * d, m1 * m2


def _verify_integral_kernel(
    points: Sequence[Vec], conds: Sequence[Vec], nums: list[int]
) -> bool:
    for a, b in conds:
        s = 0
        for (i, j), c in zip(points, nums):
            if c:
                s += c * math.comb(i, a) * math.comb(j, b)
        if s:
            return False
    return True


def _kernel_modular_qq(points: Sequence[Vec], conds: Sequence[Vec]) -> list[list[Fraction]]:
    """Certified kernel over QQ via 31-bit primes, CRT, and exact checks.

    nullity_p >= dim for every p, so exhibiting nullity_p exactly-verified
    independent kernel vectors certifies dim == nullity_p.  Primes whose
    nullity or pivot set disagrees with the best (smallest) one seen are
    discarded as unlucky.
    """
    cols = len(points)
    samples: list[tuple[int, tuple[int, ...], list[np.ndarray]]] = []
    for count in (1, 2, 4, 8, 16):
        while len(samples) < count:
            p = _PRIMES31[len(samples)]
            kern, piv = _kernel_mod(_matrix_mod(points, conds, p), p)
            samples.append((p, piv, kern))
        nmin = min(len(k) for _, _, k in samples)
        if nmin == 0:
            return []
        group = [s for s in samples if len(s[2]) == nmin]
        piv_best = max(Counter(piv for _, piv, _ in group).items(), key=lambda t: (t[1], t[0]))[0]
        group = [s for s in group if s[1] == piv_best]
        vectors: list[list[Fraction]] = []
        ok = True
        for j in range(nmin):
            coords: list[Fraction] = []
            for c in range(cols):
                a, mod = int(group[0][2][j][c]), group[0][0]
                for p, _, kern in group[1:]:
                    a, mod = _crt_pair(a, mod, int(kern[j][c]), p)
                f = _rational_reconstruct(a, mod)
                if f is None:
                    ok = False
                    break
                coords.append(f)
            if not ok:
                break
            den = math.lcm(*(f.denominator for f in coords))
            nums = [int(f * den) for f in coords]
            if not _verify_integral_kernel(points, conds, nums):
                ok = False
                break
            vectors.append([Fraction(n) for n in nums])
        if ok:
            return vectors
    raise RuntimeError("rational kernel not certified with 16 primes")


def _normalize_scalar(f: LaurentPoly) -> LaurentPoly:
    """Scalar-only normalization: the support is never shifted."""
    lead = f.support[min(f.support)]
    if f.field.is_prime_field:
        return f.scale(f.field.inv(lead))
    den = math.lcm(*(Fraction(c).denominator for c in f.support.values()))
    num = math.gcd(*(Fraction(c * den).numerator for c in f.support.values()))
    s = Fraction(den, num)
    return f.scale(-s if lead < 0 else s)


def linear_system(delta: LatticePolygon, m: int, field: ExactField = QQ) -> LinearSystemBasis:
    """Exact kernel basis of the multiplicity-m conditions at (1,1).

    The dimension is len(basis); the rank bound gives
    dim >= |Delta cap Z^2| - m(m+1)/2.
    """
    if m < 0:
        raise ValueError("multiplicity must be >= 0")
    pts, shifted = _shifted_points(delta)
    conds = _conditions(m)
    if not conds:
        basis = tuple(LaurentPoly.monomial(field, q) for q in pts)
        return LinearSystemBasis(field, delta, m, basis)
    if field.is_prime_field:
        p = field.p
        if p < 1 << 31:
            kern, _ = _kernel_mod(_matrix_mod(shifted, conds, p), p)
            vectors = [[int(c) for c in v] for v in kern]
        else:
            vectors = _kernel_exact_modp_py(
                _integer_matrix(shifted, conds), len(pts), p
            )
    elif len(pts) <= _EXACT_COLUMN_LIMIT:
        vectors = _kernel_exact_qq(_integer_matrix(shifted, conds), len(pts))
    else:
        vectors = _kernel_modular_qq(shifted, conds)
    basis = tuple(
        _normalize_scalar(LaurentPoly(field, {q: c for q, c in zip(pts, v) if c}))
        for v in vectors
    )
    assert len(basis) >= len(pts) - len(conds)  # rank bound
    return LinearSystemBasis(field, delta, m, basis)


def _kernel_exact_modp_py(
    int_rows: Sequence[Sequence[int]], cols: int, p: int
) -> list[list[int]]:
    # plain-python fallback for primes past the int64-safe range
    rows = [[x % p for x in row] for row in int_rows]
    piv: list[tuple[int, list[int]]] = []
    for row in rows:
        for c, er in piv:
            if row[c]:
                f = row[c]
                row = [(x - f * y) % p for x, y in zip(row, er)]
        pc = next((j for j, x in enumerate(row) if x), None)
        if pc is None:
            continue
        inv = pow(row[pc], -1, p)
        row = [x * inv % p for x in row]
        piv.append((pc, row))
        piv.sort(key=lambda t: t[0])
    pivset = {c for c, _ in piv}
    basis = []
    for fc in (c for c in range(cols) if c not in pivset):
        v = [0] * cols
        v[fc] = 1
        for c, er in reversed(piv):
            v[c] = -sum(er[j] * v[j] for j in range(c + 1, cols)) % p
        basis.append(v)
    return basis


def genus(delta: LatticePolygon, m: int) -> int:
    """Arithmetic genus of the proper transform of a degree-(Delta, m) curve."""
    return (normalized_volume(delta) - m * m + m - boundary_points(delta)) // 2 + 1


def good_polygon_check(delta: LatticePolygon, field: ExactField = QQ) -> GoodPolygonReport:
    """The five goodness flags, with m read off the boundary count.

    Good means: >= 4 vertices, Vol = m^2, |boundary| = m, the system
    L_Delta(m) is a single curve, that curve is irreducible, and its
    Newton polygon is all of Delta.
    """
    m = boundary_points(delta)
    checks = {
        "volume_eq_m2": normalized_volume(delta) == m * m,
        "boundary_eq_m": boundary_points(delta) == m,
        "dim_zero": False,
        "irreducible": False,
        "newton_polygon_full": False,
    }
    witness = None
    sys = linear_system(delta, m, field)
    if sys.dimension == 1:
        checks["dim_zero"] = True
        witness = sys.basis[0]
        factors = factor_bivariate(witness)
        checks["irreducible"] = len(factors) == 1 and factors[0][1] == 1
        checks["newton_polygon_full"] = newton_polygon(witness) == delta
    report = GoodPolygonReport(m, len(delta.vertices), checks, witness)
    if report.good:
        # excess multiplicity would force class^2 = Vol - mult^2 < 0 on a
        # nef-constructed curve, and goodness must sit in genus 1
        assert multiplicity_at_identity(witness) == m
        assert genus(delta, m) == 1
    return report


def order_e(
    delta: LatticePolygon, m: int, field: ExactField = QQ, kmax: int = 12
) -> int | NotFoundUpTo:
    """Least k <= kmax with dim L_{k Delta}(km) >= 2, else NotFoundUpTo.

    Assumes delta is good, so dim >= 1 at every k (the k-th power of the
    unique degree-m curve is always a member); a single prime with modular
    nullity 1 therefore certifies dim == 1 without reconstruction.
    """
    for k in range(1, kmax + 1):
        dk = delta.dilate(k)
        if field.is_prime_field:
            dim = linear_system(dk, k * m, field).dimension
        else:
            pts, shifted = _shifted_points(dk)
            if len(pts) <= _EXACT_COLUMN_LIMIT:
                dim = linear_system(dk, k * m, field).dimension
            else:
                p = _PRIMES31[0]
                kern, _ = _kernel_mod(_matrix_mod(shifted, _conditions(k * m), p), p)
                dim = 1 if len(kern) == 1 else linear_system(dk, k * m, field).dimension
        if dim >= 2:
            return k
    return NotFoundUpTo(kmax)


# -- adjoint decomposition -----------------------------------------------------


def _common_factor(basis: Sequence[LaurentPoly]) -> LaurentPoly | None:
    """gcd heuristic for a fixed part: factors of basis[0] dividing the rest."""
    first = basis[0].normalize_unit()
    rest = [g.normalize_unit() for g in basis[1:]]
    fixed = LaurentPoly.constant(first.field, 1)
    for g, a in factor_bivariate(first):
        power = a
        for h in rest:
            k = 0
            cur = h
            while k < power:
                nxt = _laurent_divexact(cur, g)
                if nxt is None:
                    break
                cur = nxt.normalize_unit()
                k += 1
            power = min(power, k)
            if power == 0:
                break
        for _ in range(power):
            fixed = fixed * g
    if len(fixed.support) <= 1:
        return None
    return fixed.normalize_unit()


def _width_direction_tag(delta: LatticePolygon, np_g: LatticePolygon, m: int) -> Vec | None:
    if np_g.dimension != 1:
        return None
    a, b = np_g.vertices
    s = (b[0] - a[0], b[1] - a[1])
    if math.gcd(abs(s[0]), abs(s[1])) != 1:
        return None
    w = (-s[1], s[0])
    vals = [w[0] * x + w[1] * y for x, y in delta.vertices]
    if max(vals) - min(vals) != m:
        return None
    s = primitive(s)
    if s[0] < 0 or (s[0] == 0 and s[1] < 0):
        s = (-s[0], -s[1])
    return s


def _bauer_fixed_point(
    target: DivisorClass,
    classes: Sequence[DivisorClass],
    bounds: Sequence[int],
) -> list[Fraction]:
    """Maximal 0 <= x_i <= b_i with (target - sum x_i C_i) . C_j >= 0.

    Solves target.C_j = sum_i x_i C_i.C_j on an active set, dropping
    negative coordinates and re-adding violated components until stable.
    The component Gram is negative definite, so each solve is unique.
    """
    n = len(classes)
    gram = [[classes[i].pair(classes[j]) for j in range(n)] for i in range(n)]
    rhs_all = [target.pair(c) for c in classes]
    active = set(range(n))
    for _ in range(4 * n + 8):
        if not active:
            x = [Fraction(0)] * n
        else:
            idx = sorted(active)
            sol = _solve_linear(
                [[gram[i][j] for j in idx] for i in idx], [rhs_all[i] for i in idx]
            )
            x = [Fraction(0)] * n
            for i, v in zip(idx, sol):
                x[i] = v
        negative = {i for i in active if x[i] < 0}
        if negative:
            active -= negative
            continue
        x = [min(x[i], Fraction(bounds[i])) for i in range(n)]
        pairings = [
            rhs_all[j] - sum(x[i] * gram[i][j] for i in range(n) if x[i])
            for j in range(n)
        ]
        violated = {j for j in range(n) if pairings[j] < 0} - active
        if not violated:
            return x
        active |= violated
    raise RuntimeError("Zariski chase did not stabilize")


def adjoint_decomposition(delta: LatticePolygon, gamma: LaurentPoly) -> AdjointDecomposition:
    """Zariski decomposition of K_X + C from the adjoint linear system.

    Sections of K_X + C are the interior-supported polynomials with
    multiplicity >= m-1 at the identity.  The (expected unique) section is
    factored; each factor gets a class from its own Newton polygon and
    multiplicity, and the negative part comes from the maximal-x iteration
    on the component classes.  A nonzero positive part is an error carrying
    the partial result; a pencil of adjoints falls back to its fixed part.
    """
    field = gamma.field
    m = boundary_points(delta)
    hull = LatticePolygon(interior_points(delta))
    adj = linear_system(hull, m - 1, field)
    warnings: list[str] = []
    if adj.dimension == 0:
        raise ValueError("adjoint system is empty; the polygon cannot be good")
    if adj.dimension == 1:
        section = adj.basis[0]
    else:
        common = _common_factor(adj.basis)
        if common is None:
            raise AdjointNotUnique(
                f"adjoint system has dimension {adj.dimension} and trivial gcd"
            )
        section = common
        warnings.append(
            f"adjoint system has dimension {adj.dimension}; "
            "decomposed its fixed part only"
        )
    ctx = SurfaceContext.from_polygon(delta)
    components = []
    for g, a in factor_bivariate(section):
        np_g = newton_polygon(g)
        mult_g = multiplicity_at_identity(g)
        try:
            cls = divisor_class_of_curve(ctx, np_g, mult_g)
        except FanMismatch:
            cls = weil_class_from_support(ctx, np_g, mult_g)
        components.append(
            AdjointComponent(g, a, cls, _width_direction_tag(delta, np_g, m))
        )
    classes = [c.divisor_class for c in components]
    if not is_negative_definite(ctx.gram(classes)):
        raise NotNegativeDefinite("adjoint component classes are not negative definite")
    target = canonical_class(ctx) + divisor_class_of_curve(
        ctx, newton_polygon(gamma), multiplicity_at_identity(gamma)
    )
    x = _bauer_fixed_point(target, classes, [c.multiplicity for c in components])
    negative = ctx.zero()
    for xi, cls in zip(x, classes):
        negative = negative + cls * xi
    positive = target - negative
    if ctx.classes_equal(positive, ctx.zero()):
        positive = ctx.zero()
    result = AdjointDecomposition(
        tuple(components), negative, positive, section, tuple(warnings)
    )
    if positive != ctx.zero():
        raise NonDuValPositivePart(
            "positive part of K_X + C is nonzero; the adjoint is not contracted",
            result,
        )
    total = ctx.zero()
    for comp in components:
        total = total + comp.divisor_class * comp.multiplicity
    assert ctx.classes_equal(total + positive, target)
    return result


# -- fibers of the order-e pencil ----------------------------------------------


def fiber_count_criterion(delta: LatticePolygon, p: int, e: int) -> tuple[tuple[int, ...], bool]:
    """Component-count profile of the order-e pencil mod p, and the verdict.

    The pencil is the 2-dimensional system L_{e Delta}(em) over GF(p); its
    p+1 members over the projective line are factored, mu_i counts the
    distinct non-monomial irreducible factors, and the verdict is
    sum(mu_i - 1) < #vertices - 3 (non-polyhedral when true).  The profile
    collects the counts > 1 as a sorted multiset.
    """
    m = boundary_points(delta)
    field = GFp(p)
    sys = linear_system(delta.dilate(e), e * m, field)
    if sys.dimension != 2:
        raise OrderMismatch(
            f"expected a pencil at dilation {e} mod {p}, "
            f"got dimension {sys.dimension}"
        )
    g0, g1 = sys.basis
    members = [g1] + [g0 + g1.scale(t) for t in range(p)]
    counts = [len(factor_bivariate(f, seed=i)) for i, f in enumerate(members)]
    profile = tuple(sorted(c for c in counts if c > 1))
    verdict = sum(c - 1 for c in counts) < len(delta.vertices) - 3
    return profile, verdict
