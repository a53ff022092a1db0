"""Finite abelian groups G = Z_{n1} x ... x Z_{nk}, their characters and Fourier transform.

The dual group is represented by the same :class:`GroupSpec`; a dual element
``w`` acts on ``x`` by ``exp(2 pi i sum_i w_i x_i / n_i)``.  Character values
are carried exactly as :class:`RationalPhase` and only turned into floating
complex numbers when linear algebra needs them.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce

import numpy as np


class SpecMismatch(ValueError):
    """Raised when objects built over different groups are combined."""


@dataclass(frozen=True)
class RationalPhase:
    """The unit complex number exp(2 pi i q), with q a rational mod 1."""

    q: Fraction

    def __post_init__(self):
        object.__setattr__(self, "q", Fraction(self.q) % 1)

    def __mul__(self, other: "RationalPhase") -> "RationalPhase":
        return RationalPhase(self.q + other.q)

    def conjugate(self) -> "RationalPhase":
        return RationalPhase(-self.q)

    def __complex__(self) -> complex:
        return exact_root(self.q)

    def __str__(self):
        return str(self.q)


def exact_root(q) -> complex:
    """exp(2 pi i q), exact at multiples of 1/4."""
    q = Fraction(q) % 1
    if (4 * q).denominator == 1:
        return complex((1, 1j, -1, -1j)[int(4 * q)])
    return complex(np.exp(2j * np.pi * float(q)))


@dataclass(frozen=True)
class GroupSpec:
    orders: tuple[int, ...]

    def __post_init__(self):
        orders = tuple(int(n) for n in self.orders)
        if any(n < 1 for n in orders):
            raise ValueError(f"cyclic orders must be >= 1, got {orders}")
        object.__setattr__(self, "orders", orders)

    @property
    def order(self) -> int:
        return math.prod(self.orders)

    @property
    def rank(self) -> int:
        return len(self.orders)

    @cached_property
    def exponent(self) -> int:
        # common denominator for all character phases
        return reduce(math.lcm, self.orders, 1)

    @cached_property
    def residues(self) -> np.ndarray:
        """(|G|, k) array of residues in enumeration order (last coordinate fastest)."""
        if self.rank == 0:
            return np.zeros((1, 0), dtype=np.int64)
        grids = np.meshgrid(*[np.arange(n) for n in self.orders], indexing="ij")
        return np.stack([g.ravel() for g in grids], axis=1).astype(np.int64)

    def index_of(self, residues) -> int:
        idx = 0
        for r, n in zip(residues, self.orders):
            idx = idx * n + (int(r) % n)
        return idx

    def indices_of(self, residues: np.ndarray) -> np.ndarray:
        residues = np.asarray(residues, dtype=np.int64) % np.asarray(self.orders, dtype=np.int64)
        idx = np.zeros(residues.shape[:-1], dtype=np.int64)
        for i, n in enumerate(self.orders):
            idx = idx * n + residues[..., i]
        return idx

    @cached_property
    def add_table(self) -> np.ndarray:
        """add_table[i, j] = index of (x_i + x_j)."""
        r = self.residues
        return self.indices_of(r[:, None, :] + r[None, :, :])

    @cached_property
    def neg(self) -> np.ndarray:
        return self.indices_of(-self.residues)

    @cached_property
    def sub_table(self) -> np.ndarray:
        """sub_table[i, j] = index of (x_i - x_j)."""
        return self.add_table[:, self.neg]

    @cached_property
    def phase_numerators(self) -> np.ndarray:
        """P[w, x] = numerator of the character phase, i.e. q(w, x) = P[w, x] / exponent."""
        scale = np.array([self.exponent // n for n in self.orders], dtype=np.int64)
        r = self.residues
        return ((r * scale) @ r.T) % self.exponent

    @cached_property
    def char_table(self) -> np.ndarray:
        """chi[w, x] = w(x) as complex numbers."""
        roots = np.exp(2j * np.pi * np.arange(self.exponent) / self.exponent)
        for k in range(4):
            if (k * self.exponent) % 4 == 0:
                roots[k * self.exponent // 4] = (1, 1j, -1, -1j)[k]
        table = roots[self.phase_numerators]
        table.setflags(write=False)
        return table

    def element(self, residues) -> "GroupElement":
        return GroupElement(self, tuple(residues))

    def dual_element(self, residues) -> "DualElement":
        return DualElement(self, tuple(residues))

    def to_json(self) -> dict:
        return {"orders": list(self.orders)}

    @classmethod
    def from_json(cls, data) -> "GroupSpec":
        return cls(tuple(data["orders"]))

    def __str__(self):
        if not self.orders:
            return "{e}"
        return " x ".join(f"Z{n}" for n in self.orders)


@dataclass(frozen=True)
class _Residues:
    spec: GroupSpec
    residues: tuple[int, ...]

    def __post_init__(self):
        if len(self.residues) != self.spec.rank:
            raise SpecMismatch(f"expected {self.spec.rank} residues, got {len(self.residues)}")
        reduced = tuple(int(r) % n for r, n in zip(self.residues, self.spec.orders))
        object.__setattr__(self, "residues", reduced)

    @property
    def index(self) -> int:
        return self.spec.index_of(self.residues)

    def _check(self, other):
        if self.spec != other.spec:
            raise SpecMismatch(f"{self.spec} vs {other.spec}")

    def __add__(self, other):
        self._check(other)
        return type(self)(self.spec, tuple(a + b for a, b in zip(self.residues, other.residues)))

    def __neg__(self):
        return type(self)(self.spec, tuple(-a for a in self.residues))

    def __sub__(self, other):
        return self + (-other)

    def is_identity(self) -> bool:
        return not any(self.residues)


class GroupElement(_Residues):
    """An element of G, written additively."""


class DualElement(_Residues):
    """A character of G."""


def enumerate_group(spec: GroupSpec) -> list[GroupElement]:
    return [GroupElement(spec, tuple(r)) for r in itertools.product(*[range(n) for n in spec.orders])]


def char_value(omega: DualElement, x: GroupElement) -> RationalPhase:
    if omega.spec != x.spec:
        raise SpecMismatch(f"{omega.spec} vs {x.spec}")
    return RationalPhase(sum((Fraction(w * a, n) for w, a, n in zip(omega.residues, x.residues, x.spec.orders)), Fraction(0)))


@dataclass(frozen=True)
class MeasureConvention:
    """Haar weights: ``weight_G`` per point of G, and the Plancherel-dual weight on the dual group."""

    weight_G: Fraction = Fraction(1)

    def __post_init__(self):
        w = Fraction(self.weight_G)
        if w <= 0:
            raise ValueError("Haar weight must be positive")
        object.__setattr__(self, "weight_G", w)

    def weight_dual(self, spec: GroupSpec) -> Fraction:
        return 1 / (self.weight_G * spec.order)

    def weight_phase(self, spec: GroupSpec) -> Fraction:
        return self.weight_G * self.weight_dual(spec)


COUNTING = MeasureConvention()


@dataclass(frozen=True, eq=False)
class Window:
    """A complex function on G, stored in enumeration order."""

    spec: GroupSpec
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.array(self.values, dtype=complex).reshape(-1)
        if v.shape[0] != self.spec.order:
            raise SpecMismatch(f"window of length {v.shape[0]} on a group of order {self.spec.order}")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __len__(self):
        return self.values.shape[0]

    def norm(self, conv: MeasureConvention = COUNTING) -> float:
        return float(np.sqrt(float(conv.weight_G) * np.vdot(self.values, self.values).real))

    def inner(self, other: "Window", conv: MeasureConvention = COUNTING) -> complex:
        """<self, other>, linear in the first slot."""
        check_same(self, other)
        return complex(float(conv.weight_G) * np.vdot(other.values, self.values))

    def scaled(self, c) -> "Window":
        return Window(self.spec, c * self.values)

    def __add__(self, other):
        check_same(self, other)
        return Window(self.spec, self.values + other.values)

    def __sub__(self, other):
        check_same(self, other)
        return Window(self.spec, self.values - other.values)

    def to_json(self) -> dict:
        return {"orders": list(self.spec.orders), "values": [[float(z.real), float(z.imag)] for z in self.values]}

    @classmethod
    def from_json(cls, data) -> "Window":
        spec = GroupSpec(tuple(data["orders"]))
        values = [complex(re, im) for re, im in data["values"]]
        return cls(spec, values)

    @classmethod
    def delta(cls, spec: GroupSpec, at=None) -> "Window":
        v = np.zeros(spec.order, dtype=complex)
        v[0 if at is None else spec.index_of(at)] = 1
        return cls(spec, v)

    @classmethod
    def random(cls, spec: GroupSpec, rng: np.random.Generator) -> "Window":
        """Componentwise standard complex normal."""
        n = spec.order
        return cls(spec, (rng.standard_normal(n) + 1j * rng.standard_normal(n)) / np.sqrt(2))


def check_same(*objs):
    specs = {o.spec for o in objs}
    if len(specs) > 1:
        raise SpecMismatch("objects live on different groups: " + ", ".join(map(str, specs)))


def fourier(f: Window, conv: MeasureConvention = COUNTING) -> Window:
    """f^(w) = sum_x f(x) conj(w(x)) weight_G."""
    chi = f.spec.char_table
    return Window(f.spec, float(conv.weight_G) * (chi.conj() @ f.values))


def inverse_fourier(fhat: Window, conv: MeasureConvention = COUNTING) -> Window:
    chi = fhat.spec.char_table
    return Window(fhat.spec, float(conv.weight_dual(fhat.spec)) * (chi.T @ fhat.values))
