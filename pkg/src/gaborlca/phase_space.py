"""Time-frequency shifts pi(lam, gam) = E_gam T_lam on L^2(G) and the short-time Fourier transform.

Operators are applied as an index permutation followed by a phase multiplication,
(pi(nu) f)(x) = gam(x) f(x - lam); matrices are only built by :func:`tf_shift_matrix`
for tests and small reference computations.

Phase points are ordered lexicographically in (lam, gam), so the code of a point
is ``lam_index * |G| + gam_index``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .group_core import (
    COUNTING,
    DualElement,
    GroupElement,
    GroupSpec,
    MeasureConvention,
    RationalPhase,
    SpecMismatch,
    Window,
    char_value,
    check_same,
)


@dataclass(frozen=True)
class PhasePoint:
    lam: GroupElement
    gamma: DualElement

    def __post_init__(self):
        if self.lam.spec != self.gamma.spec:
            raise SpecMismatch("time and frequency parts built over different groups")

    @property
    def spec(self) -> GroupSpec:
        return self.lam.spec

    @classmethod
    def of(cls, spec: GroupSpec, lam, gamma) -> "PhasePoint":
        return cls(GroupElement(spec, tuple(lam)), DualElement(spec, tuple(gamma)))

    @classmethod
    def from_code(cls, spec: GroupSpec, code: int) -> "PhasePoint":
        li, gi = divmod(int(code), spec.order)
        return cls.of(spec, spec.residues[li], spec.residues[gi])

    @property
    def code(self) -> int:
        return self.lam.index * self.spec.order + self.gamma.index

    def __mul__(self, other: "PhasePoint") -> "PhasePoint":
        return PhasePoint(self.lam + other.lam, self.gamma + other.gamma)

    def inverse(self) -> "PhasePoint":
        return PhasePoint(-self.lam, -self.gamma)

    def is_identity(self) -> bool:
        return self.lam.is_identity() and self.gamma.is_identity()

    def to_json(self):
        return [list(self.lam.residues), list(self.gamma.residues)]


def identity_point(spec: GroupSpec) -> PhasePoint:
    return PhasePoint.of(spec, [0] * spec.rank, [0] * spec.rank)


def all_phase_points(spec: GroupSpec) -> list[PhasePoint]:
    return [PhasePoint.from_code(spec, c) for c in range(spec.order**2)]


def split_codes(spec: GroupSpec, codes) -> tuple[np.ndarray, np.ndarray]:
    codes = np.asarray(codes, dtype=np.int64)
    return codes // spec.order, codes % spec.order


def phase_numerator_table(spec: GroupSpec) -> np.ndarray:
    """Symplectic phase numerators between all pairs of phase points.

    ``T[c1, c2] * (1/exponent)`` is the commutation phase q(gam1, lam2) - q(gam2, lam1).
    """
    n = spec.order
    P = spec.phase_numerators
    l = np.arange(n * n) // n
    g = np.arange(n * n) % n
    return (P[g[:, None], l[None, :]] - P[g[None, :], l[:, None]]) % spec.exponent


# -- operators ---------------------------------------------------------------

def shift_values(spec: GroupSpec, lam_idx: int, gam_idx: int, values: np.ndarray) -> np.ndarray:
    x_minus_lam = spec.sub_table[:, lam_idx]
    return spec.char_table[gam_idx] * values[x_minus_lam]


def apply_tf_shift(nu: PhasePoint, f: Window) -> Window:
    if nu.spec != f.spec:
        raise SpecMismatch(f"{nu.spec} vs {f.spec}")
    return Window(f.spec, shift_values(f.spec, nu.lam.index, nu.gamma.index, f.values))


def tf_shift_matrix(nu: PhasePoint) -> np.ndarray:
    spec = nu.spec
    return np.stack([shift_values(spec, nu.lam.index, nu.gamma.index, e) for e in np.eye(spec.order, dtype=complex)], axis=1)


def shifted_family(g: Window, codes) -> np.ndarray:
    """Matrix whose columns are pi(nu) g for the phase points with the given codes."""
    spec = g.spec
    lam, gam = split_codes(spec, codes)
    x_minus_lam = spec.sub_table[:, lam]                     # (|G|, m)
    return spec.char_table[gam].T * g.values[x_minus_lam]


def commutation_phase(nu1: PhasePoint, nu2: PhasePoint) -> RationalPhase:
    """Phase c with pi(nu1) pi(nu2) = exp(2 pi i c) pi(nu2) pi(nu1)."""
    return RationalPhase(char_value(nu1.gamma, nu2.lam).q - char_value(nu2.gamma, nu1.lam).q)


def composition_phase(nu1: PhasePoint, nu2: PhasePoint) -> RationalPhase:
    """Phase c with pi(nu1) pi(nu2) = exp(2 pi i c) pi(nu1 nu2)."""
    return char_value(nu2.gamma, nu1.lam).conjugate()


def adjoint_decomposition(nu: PhasePoint) -> tuple[RationalPhase, PhasePoint]:
    """pi(nu)^* = exp(2 pi i c) pi(nu^{-1}); returns (c, nu^{-1})."""
    return char_value(nu.gamma, nu.lam).conjugate(), nu.inverse()


# -- coefficient maps ------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class TFCoefficientMap:
    """Coefficients indexed by a list of phase points, with a Haar weight per point."""

    spec: GroupSpec
    codes: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)
    weight: Fraction = Fraction(1)

    def __post_init__(self):
        codes = np.asarray(self.codes, dtype=np.int64).reshape(-1)
        values = np.array(self.values, dtype=complex).reshape(-1)
        if codes.shape != values.shape:
            raise ValueError("coefficient values must align with the domain")
        if Fraction(self.weight) <= 0:
            raise ValueError("weight must be positive")
        codes.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "codes", codes)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "weight", Fraction(self.weight))

    @property
    def points(self) -> list[PhasePoint]:
        return [PhasePoint.from_code(self.spec, c) for c in self.codes]

    def energy(self) -> float:
        return float(self.weight) * float(np.sum(np.abs(self.values) ** 2))

    def l1(self) -> float:
        return float(self.weight) * float(np.sum(np.abs(self.values)))

    def inner(self, other: "TFCoefficientMap") -> complex:
        if not np.array_equal(self.codes, other.codes) or self.weight != other.weight:
            raise ValueError("coefficient maps on different domains")
        return complex(float(self.weight) * np.vdot(other.values, self.values))

    def to_json(self) -> dict:
        return {
            "orders": list(self.spec.orders),
            "points": [p.to_json() for p in self.points],
            "weight": str(self.weight),
            "values": [[float(z.real), float(z.imag)] for z in self.values],
        }

    @classmethod
    def from_json(cls, data) -> "TFCoefficientMap":
        spec = GroupSpec(tuple(data["orders"]))
        codes = [PhasePoint.of(spec, lam, gam).code for lam, gam in data["points"]]
        values = [complex(re, im) for re, im in data["values"]]
        return cls(spec, codes, values, Fraction(data["weight"]))


def stft_matrix(f: Window, g: Window, conv: MeasureConvention = COUNTING) -> np.ndarray:
    """V[lam, gam] = <f, pi(lam, gam) g> as an (|G|, |G|) array."""
    check_same(f, g)
    spec = f.spec
    # row lam: f(x) conj(g(x - lam)); then pair against conj characters
    prod = f.values[None, :] * np.conj(g.values[spec.sub_table.T])
    return float(conv.weight_G) * (prod @ spec.char_table.conj().T)


def stft(f: Window, g: Window, conv: MeasureConvention = COUNTING) -> TFCoefficientMap:
    spec = f.spec
    V = stft_matrix(f, g, conv)
    return TFCoefficientMap(spec, np.arange(spec.order**2), V.reshape(-1), conv.weight_phase(spec))


def analysis(f: Window, g: Window, delta) -> TFCoefficientMap:
    """C_{g,Delta} f: the STFT restricted to the subgroup ``delta`` (counting measure on G)."""
    check_same(f, g)
    if delta.spec != f.spec:
        raise SpecMismatch(f"{delta.spec} vs {f.spec}")
    fam = shifted_family(g, delta.codes)
    return TFCoefficientMap(f.spec, delta.codes, fam.conj().T @ f.values, delta.weight)
