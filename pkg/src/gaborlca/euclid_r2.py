"""Compactly supported Parseval Gabor windows on R^2 for Delta = Q(Z^s x R^{2-s}) x P(Z x R).

Everything geometric is exact: matrices, strip pieces and translates are built from
``fractions.Fraction`` and all checks (partition, integrality, disjointness) are
rational identities.  Only :func:`validate_numeric` uses floating point, to evaluate
inner products of the adjoint system through closed-form polygon integrals.

Working in the coordinates where time shifts are Z^s x R^{2-s}, the adjoint system
is {E_beta T_{m a1} g~ : beta in Z^s x {0}, m in Z}.  The unit square is cut into the
pieces K_z = [0,1]^2 cap {z <= <x, a1>/|a1|^2 <= z+1}; each piece is moved by an
integer vector y_z so that the union of the moved pieces never meets its own
nonzero shifts along Z a1, and g~ is the indicator of that union.
"""
from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

Vec = tuple[Fraction, Fraction]


class GeometryError(ValueError):
    pass


class TranslateSearchError(RuntimeError):
    pass


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _vec(v) -> Vec:
    a, b = v
    return (_frac(a), _frac(b))


def _fstr(x: Fraction) -> str:
    return str(x) if x.denominator != 1 else f"{x.numerator}/1"


# -- matrices ------------------------------------------------------------------

@dataclass(frozen=True)
class RationalMatrix2:
    """[[a, b], [c, d]] with rational entries."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, _frac(getattr(self, name)))

    @classmethod
    def of(cls, rows) -> "RationalMatrix2":
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    @classmethod
    def identity(cls) -> "RationalMatrix2":
        return cls(1, 0, 0, 1)

    @classmethod
    def diag(cls, x, y) -> "RationalMatrix2":
        return cls(x, 0, 0, y)

    def rows(self):
        return ((self.a, self.b), (self.c, self.d))

    def det(self) -> Fraction:
        return self.a * self.d - self.b * self.c

    def T(self) -> "RationalMatrix2":
        return RationalMatrix2(self.a, self.c, self.b, self.d)

    def inverse(self) -> "RationalMatrix2":
        det = self.det()
        if det == 0:
            raise GeometryError("singular matrix")
        return RationalMatrix2(self.d / det, -self.b / det, -self.c / det, self.a / det)

    def __matmul__(self, other):
        if isinstance(other, RationalMatrix2):
            return RationalMatrix2(
                self.a * other.a + self.b * other.c, self.a * other.b + self.b * other.d,
                self.c * other.a + self.d * other.c, self.c * other.b + self.d * other.d,
            )
        x, y = other
        return (self.a * x + self.b * y, self.c * x + self.d * y)

    def column(self, j: int) -> Vec:
        return (self.a, self.c) if j == 0 else (self.b, self.d)

    def to_json(self):
        return [[_fstr(x) for x in row] for row in self.rows()]

    @classmethod
    def from_json(cls, rows) -> "RationalMatrix2":
        return cls.of([[Fraction(x) for x in row] for row in rows])


# -- polygons ------------------------------------------------------------------

def _cross(o: Vec, p: Vec, q: Vec) -> Fraction:
    return (p[0] - o[0]) * (q[1] - o[1]) - (p[1] - o[1]) * (q[0] - o[0])


def _signed_area(vs) -> Fraction:
    s = Fraction(0)
    for (x0, y0), (x1, y1) in zip(vs, vs[1:] + vs[:1]):
        s += x0 * y1 - x1 * y0
    return s / 2


def _clean(vs) -> list[Vec]:
    """Drop repeated and collinear vertices."""
    out = []
    for v in vs:
        if not out or out[-1] != v:
            out.append(v)
    while len(out) > 1 and out[0] == out[-1]:
        out.pop()
    changed = True
    while changed and len(out) >= 3:
        changed = False
        for i in range(len(out)):
            if _cross(out[i - 1], out[i], out[(i + 1) % len(out)]) == 0:
                del out[i]
                changed = True
                break
    return out


@dataclass(frozen=True)
class RationalPolygon:
    """A convex polygon with rational vertices in counterclockwise order."""

    vertices: tuple[Vec, ...]

    def __post_init__(self):
        vs = _clean([_vec(v) for v in self.vertices])
        if len(vs) < 3:
            raise GeometryError("a polygon needs three non-collinear vertices")
        if _signed_area(vs) < 0:
            vs.reverse()
        n = len(vs)
        if any(_cross(vs[i], vs[(i + 1) % n], vs[(i + 2) % n]) <= 0 for i in range(n)):
            raise GeometryError("only convex polygons are supported")
        object.__setattr__(self, "vertices", tuple(vs))

    @classmethod
    def box(cls, x0, y0, x1, y1) -> "RationalPolygon":
        return cls(((x0, y0), (x1, y0), (x1, y1), (x0, y1)))

    def area(self) -> Fraction:
        return _signed_area(list(self.vertices))

    def translate(self, v) -> "RationalPolygon":
        dx, dy = _vec(v)
        return RationalPolygon(tuple((x + dx, y + dy) for x, y in self.vertices))

    def transform(self, M: RationalMatrix2) -> "RationalPolygon":
        return RationalPolygon(tuple(M @ v for v in self.vertices))

    def bbox(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        xs = [v[0] for v in self.vertices]
        ys = [v[1] for v in self.vertices]
        return min(xs), min(ys), max(xs), max(ys)

    def to_json(self):
        return [[_fstr(x), _fstr(y)] for x, y in self.vertices]

    @classmethod
    def from_json(cls, data) -> "RationalPolygon":
        return cls(tuple((Fraction(x), Fraction(y)) for x, y in data))


def clip_halfplane(vs: list[Vec], n: Vec, c: Fraction) -> list[Vec]:
    """Keep the part of the polygon where <n, x> <= c (Sutherland-Hodgman step)."""
    out = []
    if not vs:
        return out
    val = [n[0] * x + n[1] * y - c for x, y in vs]
    for i in range(len(vs)):
        p, q = vs[i], vs[(i + 1) % len(vs)]
        vp, vq = val[i], val[(i + 1) % len(vs)]
        if vp <= 0:
            out.append(p)
        if (vp < 0 < vq) or (vq < 0 < vp):
            t = vp / (vp - vq)
            out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    return out


def intersection(p1: RationalPolygon, p2: RationalPolygon) -> RationalPolygon | None:
    """Exact intersection of two convex polygons, or None when it has no interior."""
    vs = list(p1.vertices)
    q = p2.vertices
    for a, b in zip(q, q[1:] + q[:1]):
        # interior of a ccw polygon lies to the left of each edge a -> b
        n = (b[1] - a[1], a[0] - b[0])
        vs = clip_halfplane(vs, n, n[0] * a[0] + n[1] * a[1])
        if not vs:
            return None
    vs = _clean(vs)
    if len(vs) < 3 or _signed_area(vs) == 0:
        return None
    return RationalPolygon(tuple(vs))


def intersection_area(p1: RationalPolygon, p2: RationalPolygon) -> Fraction:
    x0, y0, x1, y1 = p1.bbox()
    u0, v0, u1, v1 = p2.bbox()
    if x1 <= u0 or u1 <= x0 or y1 <= v0 or v1 <= y0:
        return Fraction(0)
    inter = intersection(p1, p2)
    return Fraction(0) if inter is None else inter.area()


UNIT_SQUARE = RationalPolygon.box(0, 0, 1, 1)


# -- strips and translates ------------------------------------------------------

def strip_parameter(x: Vec, a1: Vec) -> Fraction:
    return (x[0] * a1[0] + x[1] * a1[1]) / (a1[0] ** 2 + a1[1] ** 2)


def compute_strips(a1) -> list[tuple[int, RationalPolygon]]:
    """The pieces K_z of the unit square with positive area, in increasing z."""
    a1 = _vec(a1)
    nrm = a1[0] ** 2 + a1[1] ** 2
    if nrm == 0:
        raise GeometryError("a1 must be nonzero")
    ts = [strip_parameter(v, a1) for v in UNIT_SQUARE.vertices]
    lo, hi = math.floor(min(ts)), math.ceil(max(ts))
    # t(x) = <x, n>/|a1|^2, so z <= t <= z+1 reads <-a1, x> <= -z |a1|^2 and <a1, x> <= (z+1)|a1|^2
    neg = (-a1[0], -a1[1])
    pieces = []
    for z in range(lo, hi):
        vs = clip_halfplane(list(UNIT_SQUARE.vertices), neg, -z * nrm)
        vs = _clean(clip_halfplane(vs, a1, (z + 1) * nrm))
        if len(vs) >= 3 and _signed_area(vs) != 0:
            pieces.append((z, RationalPolygon(tuple(vs))))
    return pieces


def _shift_range(p1: RationalPolygon, p2: RationalPolygon, a1: Vec) -> range:
    """Integers m for which p1 and p2 + m a1 can share interior points (bounding-box test)."""
    x0, y0, x1, y1 = p1.bbox()
    u0, v0, u1, v1 = p2.bbox()
    lo, hi = -math.inf, math.inf
    for ai, dlo, dhi in ((a1[0], x0 - u1, x1 - u0), (a1[1], y0 - v1, y1 - v0)):
        # need dlo < m ai < dhi
        if ai == 0:
            if not dlo < 0 < dhi:
                return range(0)
            continue
        a, b = sorted((dlo / ai, dhi / ai))
        lo, hi = max(lo, a), min(hi, b)
    if lo >= hi:
        return range(0)
    return range(math.floor(lo) + 1, math.ceil(hi))


def _conflicts(p1: RationalPolygon, p2: RationalPolygon, a1: Vec, same: bool) -> bool:
    for m in _shift_range(p1, p2, a1):
        if same and m == 0:
            continue
        if intersection_area(p1, p2.translate((m * a1[0], m * a1[1]))) != 0:
            return True
    return False


def union_shift_bound(placed: list[RationalPolygon], a1: Vec) -> int:
    """Largest |m| for which the union of ``placed`` can meet its own shift by m a1.

    If the union's bounding box has widths (wx, wy), an overlap needs
    |m a1_i| < w_i for every coordinate with a1_i != 0.
    """
    boxes = [p.bbox() for p in placed]
    wx = max(b[2] for b in boxes) - min(b[0] for b in boxes)
    wy = max(b[3] for b in boxes) - min(b[1] for b in boxes)
    bound = math.inf
    for ai, w in ((a1[0], wx), (a1[1], wy)):
        if ai != 0:
            bound = min(bound, math.floor(w / abs(ai)))
    return int(bound)


@dataclass
class TranslateCheck:
    ok: bool
    shift_bound: int
    offending: tuple | None = None     # (z, z', m) of a first overlap


def verify_translates(strips, a1, ys) -> TranslateCheck:
    """Check (K_z + y_z) and (K_z' + y_z' + m a1) are interior-disjoint for all z, z' and m != 0.

    Pieces with z != z' are also checked at m = 0, so that the moved pieces do
    not overlap each other.  Every m with |m| <= shift_bound is examined.
    """
    a1 = _vec(a1)
    placed = [K.translate(y) for (_, K), y in zip(strips, ys)]
    bound = union_shift_bound(placed, a1)
    zs = [z for z, _ in strips]
    for i, j in itertools.product(range(len(placed)), repeat=2):
        for m in range(-bound, bound + 1):
            if m == 0 and i == j:
                continue
            shifted = placed[j].translate((m * a1[0], m * a1[1]))
            if intersection_area(placed[i], shifted) != 0:
                return TranslateCheck(False, bound, (zs[i], zs[j], m))
    return TranslateCheck(True, bound)


def _candidates(radius: int) -> list[tuple[int, int]]:
    pts = itertools.product(range(-radius, radius + 1), repeat=2)
    return sorted(pts, key=lambda p: (max(abs(p[0]), abs(p[1])), p))


def _search(strips, a1: Vec, radius: int, budget: int):
    cands = _candidates(radius)
    n = len(strips)
    chosen: list[RationalPolygon] = []
    ys: list[tuple[int, int]] = []
    visits = 0

    def place(k: int) -> bool:
        nonlocal visits
        if k == n:
            return True
        K = strips[k][1]
        for y in cands:
            visits += 1
            if visits > budget:
                return False
            piece = K.translate(y)
            if _conflicts(piece, piece, a1, same=True):
                continue
            if any(_conflicts(piece, other, a1, same=False) or _conflicts(other, piece, a1, same=False)
                   for other in chosen):
                continue
            chosen.append(piece)
            ys.append(y)
            if place(k + 1):
                return True
            chosen.pop()
            ys.pop()
        return False

    return list(ys) if place(0) else None


def choose_translates(strips, a1, radius: int | None = None, budget: int = 20000) -> list[tuple[int, int]]:
    """First valid assignment of integer translates in (L-inf norm, lexicographic) order.

    Pieces are placed in order of z by depth-first search over candidates in the
    L-inf ball of the given radius.  The default radius leaves a separate row of
    cells for every piece, which is what an axis-parallel a1 requires.  If the
    ball is exhausted (or ``budget`` candidate placements are tried) the radius
    is doubled once before giving up.
    """
    if not strips:
        raise GeometryError("no strips to place")
    a1 = _vec(a1)
    if radius is None:
        radius = max(1, len(strips) // 2)
    for r in (radius, 2 * radius):
        ys = _search(strips, a1, r, budget)
        if ys is not None:
            return ys
    raise TranslateSearchError(f"no valid translates within L-inf radius {2 * radius}")


# -- certificate ------------------------------------------------------------------

@dataclass
class Piece:
    z: int
    K: RationalPolygon
    y: tuple[int, int]


@dataclass
class TightFrameCertificateR2:
    P: RationalMatrix2
    Q: RationalMatrix2
    s: int
    a1: Vec
    Z: list[int]
    pieces: list[Piece]
    volume: Fraction
    volume_normalized_sq: Fraction
    shift_bound: int
    checks: dict = field(default_factory=dict)
    r: int = 1

    @property
    def valid(self) -> bool:
        keys = ("partition_ok", "translates_disjoint_ok", "integral_translates_ok")
        return all(self.checks.get(k, False) for k in keys)

    @property
    def amplitude_sq(self) -> Fraction:
        return 1 / abs(self.Q.det())

    def window_pieces(self) -> list[RationalPolygon]:
        """Support of g = D_Q g~, as the polygons Q (K_z + y_z)."""
        return [p.K.translate(p.y).transform(self.Q) for p in self.pieces]

    def to_json(self) -> dict:
        return {
            "P": self.P.to_json(),
            "Q": self.Q.to_json(),
            "r": self.r,
            "s": self.s,
            "a1": [_fstr(x) for x in self.a1],
            "Z": list(self.Z),
            "pieces": [{"z": p.z, "K": p.K.to_json(), "y": list(p.y)} for p in self.pieces],
            "volume": _fstr(self.volume),
            "volume_normalized_sq": _fstr(self.volume_normalized_sq),
            "shift_bound": self.shift_bound,
            "window": {"amplitude_sq": _fstr(self.amplitude_sq),
                       "support": [w.to_json() for w in self.window_pieces()]},
            "checks": dict(self.checks),
            "valid": self.valid,
        }

    @classmethod
    def from_json(cls, data) -> "TightFrameCertificateR2":
        if data.get("r", 1) != 1:
            raise GeometryError("only r = 1 is supported")
        pieces = [Piece(int(p["z"]), RationalPolygon.from_json(p["K"]), tuple(int(c) for c in p["y"]))
                  for p in data["pieces"]]
        return cls(
            RationalMatrix2.from_json(data["P"]), RationalMatrix2.from_json(data["Q"]), int(data["s"]),
            _vec(Fraction(x) for x in data["a1"]), [int(z) for z in data["Z"]], pieces,
            Fraction(data["volume"]), Fraction(data["volume_normalized_sq"]), int(data["shift_bound"]),
            dict(data.get("checks", {})),
        )


def adjoint_generator(P: RationalMatrix2, Q: RationalMatrix2) -> Vec:
    """a1, the generator of the discrete part of the adjoint translations.

    Conjugating by f -> |det Q|^{1/2} f(Q x) turns time shifts by Q k into shifts
    by k and modulations by P m into modulations by Q^T P m, so the adjoint
    translations are ((Q^T P)^T)^{-1} (Z x {0}) = (P^T Q)^{-1} (Z x {0}).
    """
    return (P.T() @ Q).inverse().column(0)


def _gram_det(cols) -> Fraction:
    if not cols:
        return Fraction(1)
    if len(cols) == 1:
        (x, y), = cols
        return x * x + y * y
    (x0, y0), (x1, y1) = cols
    return (x0 * y1 - x1 * y0) ** 2


def normalized_volume_sq(P: RationalMatrix2, Q: RationalMatrix2, s: int, r: int = 1) -> Fraction:
    """vol(Delta)^2 once the continuous columns of P and Q are replaced by orthonormal ones."""
    cont_p = [P.column(j) for j in range(r, 2)]
    cont_q = [Q.column(j) for j in range(s, 2)]
    return (P @ Q).det() ** 2 / (_gram_det(cont_p) * _gram_det(cont_q))


def check_partition(strips) -> bool:
    polys = [K for _, K in strips]
    if sum((K.area() for K in polys), Fraction(0)) != 1:
        return False
    if any(intersection_area(UNIT_SQUARE, K) != K.area() for K in polys):
        return False
    return all(intersection_area(p, q) == 0 for p, q in itertools.combinations(polys, 2))


def verify_certificate(cert: TightFrameCertificateR2) -> dict:
    """Recompute the three exact checks from the certificate data alone."""
    strips = compute_strips(cert.a1)
    same_strips = [z for z, _ in strips] == [p.z for p in cert.pieces] and all(
        K == p.K for (_, K), p in zip(strips, cert.pieces))
    partition_ok = same_strips and check_partition([(p.z, p.K) for p in cert.pieces])
    integral = all(isinstance(c, int) or Fraction(c).denominator == 1 for p in cert.pieces for c in p.y)
    tc = verify_translates([(p.z, p.K) for p in cert.pieces], cert.a1, [p.y for p in cert.pieces])
    return {
        "partition_ok": bool(partition_ok),
        "integral_translates_ok": bool(integral),
        "translates_disjoint_ok": tc.ok,
        "a1_matches": cert.a1 == adjoint_generator(cert.P, cert.Q),
    }


def assemble_certificate(P, Q, s: int, ys=None) -> TightFrameCertificateR2:
    """Build and check a certificate for r = 1; ``ys`` overrides the translate search."""
    P = P if isinstance(P, RationalMatrix2) else RationalMatrix2.of(P)
    Q = Q if isinstance(Q, RationalMatrix2) else RationalMatrix2.of(Q)
    if P.det() == 0 or Q.det() == 0:
        raise GeometryError("P and Q must be invertible")
    if s not in (0, 1, 2):
        raise GeometryError("s must be 0, 1 or 2")
    a1 = adjoint_generator(P, Q)
    strips = compute_strips(a1)
    ys = choose_translates(strips, a1) if ys is None else [tuple(int(c) for c in y) for y in ys]
    if len(ys) != len(strips):
        raise GeometryError(f"expected {len(strips)} translates, got {len(ys)}")
    tc = verify_translates(strips, a1, ys)
    cert = TightFrameCertificateR2(
        P, Q, s, a1, [z for z, _ in strips], [Piece(z, K, y) for (z, K), y in zip(strips, ys)],
        abs((P @ Q).det()), normalized_volume_sq(P, Q, s), tc.shift_bound,
    )
    cert.checks = {
        "partition_ok": check_partition(strips),
        "integral_translates_ok": True,
        "translates_disjoint_ok": tc.ok,
    }
    if not tc.ok:
        cert.checks["offending_shift"] = list(tc.offending)
    return cert


# -- numeric validation -------------------------------------------------------------

def exp_integral(poly: RationalPolygon, k: tuple[float, float]) -> complex:
    """Integral of exp(i <k, x>) over the polygon.

    For k != 0 the integrand is the divergence of -i k exp(i<k,x>)/|k|^2, and
    each edge p -> p + d contributes (k . (d_y, -d_x)) e^{i k.p} (e^{i theta} - 1)/(i theta)
    with theta = k . d.
    """
    kx, ky = k
    kk = kx * kx + ky * ky
    if kk == 0:
        return complex(float(poly.area()))
    vs = poly.vertices
    radius = max(math.hypot(float(x), float(y)) for x, y in vs)
    if math.sqrt(kk) * radius < 1:
        return _exp_integral_series(poly, k)
    total = 0j
    for p, q in zip(vs, vs[1:] + vs[:1]):
        px, py = float(p[0]), float(p[1])
        dx, dy = float(q[0] - p[0]), float(q[1] - p[1])
        theta = kx * dx + ky * dy
        if abs(theta) < 1e-4:
            phi = 1 + 1j * theta / 2 - theta**2 / 6 - 1j * theta**3 / 24
        else:
            phi = (cmath.exp(1j * theta) - 1) / (1j * theta)
        total += (kx * dy - ky * dx) * cmath.exp(1j * (kx * px + ky * py)) * phi
    return -1j * total / kk


def _exp_integral_series(poly: RationalPolygon, k: tuple[float, float], terms: int = 30) -> complex:
    """Taylor series in k, for |k| small against the polygon's size.

    On a triangle (0, a, b) of signed area T, the moment of (k . x)^n is
    2 T n!/(n+2)! sum_{i+j=n} u^i v^j with u = k . a, v = k . b; fan from the origin.
    """
    kx, ky = k
    vs = [(float(x), float(y)) for x, y in poly.vertices]
    total = 0j
    for (ax, ay), (bx, by) in zip(vs, vs[1:] + vs[:1]):
        T = (ax * by - bx * ay) / 2
        u, v = kx * ax + ky * ay, kx * bx + ky * by
        h = [1.0]                      # h[n] = sum_{i+j=n} u^i v^j
        for n in range(1, terms):
            h.append(u * h[-1] + v ** n)
        # i^n/n! times the moment collapses to 2 T i^n / (n+2)!
        total += sum(2 * T * (1j ** n) * h[n] / math.factorial(n + 2) for n in range(terms))
    return total


@dataclass
class NumericReport:
    max_off_identity: float
    identity_error: float
    count: int
    tolerance: float

    @property
    def ok(self) -> bool:
        return self.max_off_identity <= self.tolerance and self.identity_error <= self.tolerance

    def to_json(self) -> dict:
        return {
            "max_off_identity": float(f"{self.max_off_identity:.12e}"),
            "identity_error": float(f"{self.identity_error:.12e}"),
            "count": self.count,
            "tolerance": self.tolerance,
            "ok": self.ok,
        }


def adjoint_inner(cert: TightFrameCertificateR2, beta: tuple[int, int], m: int) -> complex:
    """<E_beta T_{m a1} g~, g~> with g~ the indicator of the moved pieces."""
    placed = [p.K.translate(p.y) for p in cert.pieces]
    shift = (m * cert.a1[0], m * cert.a1[1])
    k = (2 * math.pi * beta[0], 2 * math.pi * beta[1])
    total = 0j
    for p1 in placed:
        moved = p1.translate(shift)
        for p2 in placed:
            inter = None if intersection_area(moved, p2) == 0 else intersection(moved, p2)
            if inter is not None:
                total += exp_integral(inter, k)
    return total


def validate_numeric(cert: TightFrameCertificateR2, beta_range: int = 3, m_range: int = 3,
                     tolerance: float = 1e-10) -> NumericReport:
    """Orthonormality of the adjoint system over beta in Z^s x {0} and |m| <= m_range."""
    rng = range(-beta_range, beta_range + 1)
    zero = range(0, 1)
    b1 = rng if cert.s >= 1 else zero
    b2 = rng if cert.s >= 2 else zero
    worst, ident, count = 0.0, 0.0, 0
    for beta in itertools.product(b1, b2):
        for m in range(-m_range, m_range + 1):
            val = adjoint_inner(cert, beta, m)
            count += 1
            if beta == (0, 0) and m == 0:
                ident = abs(val - 1)
            else:
                worst = max(worst, abs(val))
    return NumericReport(worst, ident, count, tolerance)


# -- picture -------------------------------------------------------------------------

def certificate_svg(cert: TightFrameCertificateR2, scale: int = 120) -> str:
    """Pieces K_z (outlined) and their translates K_z + y_z (filled), with the dots Z a1."""
    placed = [p.K.translate(p.y) for p in cert.pieces]
    boxes = [p.bbox() for p in placed] + [UNIT_SQUARE.bbox()]
    x0 = math.floor(min(b[0] for b in boxes)) - 1
    y0 = math.floor(min(b[1] for b in boxes)) - 1
    x1 = math.ceil(max(b[2] for b in boxes)) + 1
    y1 = math.ceil(max(b[3] for b in boxes)) + 1

    def pt(v):
        return f"{(float(v[0]) - x0) * scale:.3f},{(y1 - float(v[1])) * scale:.3f}"

    w, h = (x1 - x0) * scale, (y1 - y0) * scale
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">']
    for gx in range(x0, x1 + 1):
        out.append(f'<line x1="{pt((gx, y0)).split(",")[0]}" y1="0" x2="{pt((gx, y0)).split(",")[0]}" y2="{h}" stroke="#ccc" stroke-dasharray="4"/>')
    for gy in range(y0, y1 + 1):
        out.append(f'<line x1="0" y1="{pt((x0, gy)).split(",")[1]}" x2="{w}" y2="{pt((x0, gy)).split(",")[1]}" stroke="#ccc" stroke-dasharray="4"/>')
    palette = ["#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3", "#937860", "#da8bc3", "#8c8c8c"]
    for i, (p, moved) in enumerate(zip(cert.pieces, placed)):
        colour = palette[i % len(palette)]
        out.append(f'<polygon points="{" ".join(pt(v) for v in p.K.vertices)}" fill="none" stroke="black"/>')
        out.append(f'<polygon points="{" ".join(pt(v) for v in moved.vertices)}" fill="{colour}" fill-opacity="0.5" stroke="black"/>')
        cx = sum(float(v[0]) for v in moved.vertices) / len(moved.vertices)
        cy = sum(float(v[1]) for v in moved.vertices) / len(moved.vertices)
        out.append(f'<text x="{pt((cx, cy)).split(",")[0]}" y="{pt((cx, cy)).split(",")[1]}" font-size="12">K{p.z}+y{p.z}</text>')
    a1 = cert.a1
    for m in range(-40, 41):
        v = (m * a1[0], m * a1[1])
        if x0 <= v[0] <= x1 and y0 <= v[1] <= y1:
            cx, cy = pt(v).split(",")
            out.append(f'<circle cx="{cx}" cy="{cy}" r="3" fill="black"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
