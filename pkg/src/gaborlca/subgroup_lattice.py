"""Subgroups of the phase space G x G^: generation, enumeration, annihilators, adjoints and volume.

A subgroup is stored as the sorted array of its point codes (see
:mod:`gaborlca.phase_space`) together with a Haar weight per point.  The phase
space itself carries weight 1/|G| per point (counting measure on G, dual
measure on G^), and Weil's formula then forces the quotient weight
1/(w |G|), so that

    vol(Delta) = |G| / (w |Delta|).
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .group_core import GroupSpec, SpecMismatch
from .phase_space import PhasePoint, split_codes

TF = "tf"       # points (lam, gam) in G x G^
FT = "ft"       # points (beta, alpha) in G^ x G


class CapExceeded(ValueError):
    pass


def add_codes(spec: GroupSpec, a, b) -> np.ndarray:
    la, ga = split_codes(spec, a)
    lb, gb = split_codes(spec, b)
    return spec.add_table[la, lb] * spec.order + spec.add_table[ga, gb]


def neg_codes(spec: GroupSpec, a) -> np.ndarray:
    la, ga = split_codes(spec, a)
    return spec.neg[la] * spec.order + spec.neg[ga]


@dataclass(frozen=True, eq=False)
class PhaseSubgroup:
    spec: GroupSpec
    codes: np.ndarray = field(repr=False)
    generators: tuple[int, ...] = ()
    weight: Fraction = Fraction(1)
    coords: str = TF

    def __post_init__(self):
        codes = np.unique(np.asarray(self.codes, dtype=np.int64))
        n2 = self.spec.order**2
        if codes.size == 0 or codes[0] != 0:
            raise ValueError("subgroup must contain the identity")
        if codes[-1] >= n2:
            raise ValueError("point code out of range")
        gens = tuple(int(c) for c in self.generators) or minimal_generators(self.spec, codes)
        if not np.array_equal(_closure(self.spec, gens), codes):
            raise ValueError("point set is not a subgroup generated by the given generators")
        members = np.zeros(n2, dtype=bool)
        members[codes] = True
        if n2 % codes.size:
            raise ValueError("subgroup order must divide |G|^2")
        if Fraction(self.weight) <= 0:
            raise ValueError("weight must be positive")
        if self.coords not in (TF, FT):
            raise ValueError(f"unknown coordinates {self.coords!r}")
        codes.setflags(write=False)
        object.__setattr__(self, "codes", codes)
        object.__setattr__(self, "weight", Fraction(self.weight))
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "_members", members)

    def __len__(self):
        return int(self.codes.size)

    def __contains__(self, point) -> bool:
        code = point.code if isinstance(point, PhasePoint) else int(point)
        return bool(self._members[code])

    def __eq__(self, other):
        return (
            isinstance(other, PhaseSubgroup)
            and self.spec == other.spec
            and self.coords == other.coords
            and self.weight == other.weight
            and np.array_equal(self.codes, other.codes)
        )

    def __hash__(self):
        return hash((self.spec, self.coords, self.weight, self.codes.tobytes()))

    def same_points(self, other: "PhaseSubgroup") -> bool:
        return self.spec == other.spec and self.coords == other.coords and np.array_equal(self.codes, other.codes)

    @property
    def elements(self) -> list[PhasePoint]:
        return [PhasePoint.from_code(self.spec, c) for c in self.codes]

    @property
    def members(self) -> np.ndarray:
        return self._members

    def with_weight(self, weight) -> "PhaseSubgroup":
        return PhaseSubgroup(self.spec, self.codes, self.generators, Fraction(weight), self.coords)

    def is_full(self) -> bool:
        return len(self) == self.spec.order**2

    def to_json(self) -> dict:
        return {
            "orders": list(self.spec.orders),
            "generators": [PhasePoint.from_code(self.spec, c).to_json() for c in self.generators],
            "weight": str(self.weight),
            "coords": self.coords,
            "order": len(self),
        }

    def to_json_elements(self) -> dict:
        return {
            "orders": list(self.spec.orders),
            "elements": [p.to_json() for p in self.elements],
            "weight": str(self.weight),
            "coords": self.coords,
        }

    @classmethod
    def from_json(cls, data) -> "PhaseSubgroup":
        spec = GroupSpec(tuple(data["orders"]))
        weight = Fraction(data.get("weight", "1"))
        coords = data.get("coords", TF)
        if "elements" in data:
            codes = [PhasePoint.of(spec, lam, gam).code for lam, gam in data["elements"]]
            return cls(spec, codes, (), weight, coords)
        gens = [PhasePoint.of(spec, lam, gam) for lam, gam in data.get("generators", [])]
        sub = span(spec, gens, weight)
        if coords != TF:
            sub = PhaseSubgroup(spec, sub.codes, sub.generators, weight, coords)
        return sub

    def __repr__(self):
        return f"PhaseSubgroup({self.spec}, order={len(self)}, weight={self.weight}, coords={self.coords})"


def _closure(spec: GroupSpec, codes) -> np.ndarray:
    current = np.unique(np.concatenate([[0], np.asarray(codes, dtype=np.int64).reshape(-1)]))
    gens = current
    while True:
        nxt = np.unique(np.concatenate([current, add_codes(spec, current[:, None], gens[None, :]).ravel()]))
        if nxt.size == current.size:
            return current
        current = nxt


def minimal_generators(spec: GroupSpec, codes) -> tuple[int, ...]:
    """A small generating set, picked greedily in code order."""
    gens: list[int] = []
    have = np.array([0], dtype=np.int64)
    for c in np.asarray(codes, dtype=np.int64):
        if have.size >= len(codes):
            break
        if c in have:
            continue
        gens.append(int(c))
        have = _closure(spec, gens)
    return tuple(gens)


def span(spec: GroupSpec, generators, weight=Fraction(1)) -> PhaseSubgroup:
    """Smallest subgroup containing ``generators`` (PhasePoints or codes)."""
    codes = [g.code if isinstance(g, PhasePoint) else int(g) for g in generators]
    for g in generators:
        if isinstance(g, PhasePoint) and g.spec != spec:
            raise SpecMismatch(f"{g.spec} vs {spec}")
    return PhaseSubgroup(spec, _closure(spec, codes), tuple(codes), Fraction(weight))


def trivial_subgroup(spec: GroupSpec, weight=Fraction(1)) -> PhaseSubgroup:
    return PhaseSubgroup(spec, [0], (), Fraction(weight))


def full_subgroup(spec: GroupSpec, weight=Fraction(1)) -> PhaseSubgroup:
    return PhaseSubgroup(spec, np.arange(spec.order**2), (), Fraction(weight))


def separable_subgroup(spec: GroupSpec, time_gens, freq_gens, weight=Fraction(1)) -> PhaseSubgroup:
    """Lambda x Gamma with Lambda generated by ``time_gens`` in G, Gamma by ``freq_gens`` in G^."""
    zero = [0] * spec.rank
    gens = [PhasePoint.of(spec, t, zero) for t in time_gens] + [PhasePoint.of(spec, zero, w) for w in freq_gens]
    return span(spec, gens, weight)


def all_subgroups(spec: GroupSpec, cap: int = 256) -> list[PhaseSubgroup]:
    """Every subgroup of G x G^ (counting weight), in canonical (order, codes) order.

    Every subgroup is a join of cyclic subgroups, so a breadth-first closure
    of {e} under "join with a cyclic subgroup" reaches all of them.
    """
    n2 = spec.order**2
    if n2 > cap:
        raise CapExceeded(f"|G|^2 = {n2} exceeds the enumeration cap {cap}")
    cyclic = {}
    for c in range(n2):
        cyc = frozenset(_closure(spec, [c]).tolist())
        cyclic.setdefault(cyc, c)
    cyclic_sets = sorted(cyclic, key=lambda s: (len(s), sorted(s)))
    seen = {frozenset([0])}
    queue = deque(seen)
    while queue:
        h = queue.popleft()
        harr = np.fromiter(h, dtype=np.int64)
        for cyc in cyclic_sets:
            if cyc <= h:
                continue
            carr = np.fromiter(cyc, dtype=np.int64)
            joined = frozenset(np.unique(add_codes(spec, harr[:, None], carr[None, :])).tolist())
            if joined not in seen:
                seen.add(joined)
                queue.append(joined)
    ordered = sorted(seen, key=lambda s: (len(s), sorted(s)))
    return [PhaseSubgroup(spec, np.array(sorted(s), dtype=np.int64)) for s in ordered]


def volume(delta: PhaseSubgroup) -> Fraction:
    """vol(Delta) = |G| / (w |Delta|).  Every finite subgroup is co-compact, so this is also volto."""
    return Fraction(delta.spec.order) / (delta.weight * len(delta))


def adjoint(delta: PhaseSubgroup, weight=None) -> PhaseSubgroup:
    """Points whose time-frequency shifts commute with all shifts from ``delta``.

    Default Haar weight is vol(Delta)^{-1} times counting measure.
    """
    if delta.coords != TF:
        raise ValueError("adjoint is defined for subgroups of G x G^")
    spec = delta.spec
    P = spec.phase_numerators
    lam_m, gam_m = split_codes(spec, np.arange(spec.order**2))
    lam_d, gam_d = split_codes(spec, delta.codes)
    # q(beta, lam) - q(gam, alpha) for mu = (alpha, beta), nu = (lam, gam)
    num = (P[gam_m[:, None], lam_d[None, :]] - P[gam_d[None, :], lam_m[:, None]]) % spec.exponent
    codes = np.nonzero((num == 0).all(axis=1))[0]
    w = 1 / volume(delta) if weight is None else Fraction(weight)
    return PhaseSubgroup(spec, codes, (), w, TF)


def annihilator(delta: PhaseSubgroup, weight=None) -> PhaseSubgroup:
    """Delta^perp = {(beta, alpha) in G^ x G : gam(alpha) beta(lam) = 1 for all (lam, gam) in Delta}."""
    if delta.coords != TF:
        raise ValueError("annihilator is defined for subgroups of G x G^")
    spec = delta.spec
    P = spec.phase_numerators
    beta, alpha = split_codes(spec, np.arange(spec.order**2))
    lam_d, gam_d = split_codes(spec, delta.codes)
    num = (P[gam_d[None, :], alpha[:, None]] + P[beta[:, None], lam_d[None, :]]) % spec.exponent
    codes = np.nonzero((num == 0).all(axis=1))[0]
    w = 1 / volume(delta) if weight is None else Fraction(weight)
    return PhaseSubgroup(spec, codes, (), w, FT)


def phi(delta: PhaseSubgroup) -> PhaseSubgroup:
    """Image under Phi(x, w) = (w, x^{-1}), a measure preserving isomorphism G x G^ -> G^ x G.

    This is the map carrying the adjoint onto the annihilator.  The bare swap
    (x, w) -> (w, x) only does so when every element has order <= 2.
    """
    if delta.coords != TF:
        raise ValueError("phi maps subgroups of G x G^")
    spec = delta.spec
    lam, gam = split_codes(spec, delta.codes)
    return PhaseSubgroup(spec, gam * spec.order + spec.neg[lam], (), delta.weight, FT)


def swap(delta: PhaseSubgroup) -> PhaseSubgroup:
    """Bare coordinate swap (x, w) -> (w, x)."""
    spec = delta.spec
    lam, gam = split_codes(spec, delta.codes)
    return PhaseSubgroup(spec, gam * spec.order + lam, (), delta.weight, FT if delta.coords == TF else TF)


@dataclass(frozen=True)
class QuotientInfo:
    coset_reps: tuple[int, ...]
    quotient_weight: Fraction

    def points(self, spec: GroupSpec) -> list[PhasePoint]:
        return [PhasePoint.from_code(spec, c) for c in self.coset_reps]


def quotient(delta: PhaseSubgroup) -> QuotientInfo:
    """Coset representatives (smallest code in each coset) and the Weil-normalized quotient weight."""
    spec = delta.spec
    covered = np.zeros(spec.order**2, dtype=bool)
    reps = []
    for c in range(spec.order**2):
        if covered[c]:
            continue
        reps.append(c)
        covered[add_codes(spec, c, delta.codes)] = True
    return QuotientInfo(tuple(reps), 1 / (delta.weight * spec.order))


def weil_sides(delta: PhaseSubgroup, F):
    """Both sides of Weil's formula for a function F on the phase space (indexed by code).

    Exact when F holds Fractions (object array); floating otherwise.
    """
    spec = delta.spec
    F = np.asarray(F).reshape(-1)
    lhs = F.sum() * Fraction(1, spec.order)
    q = quotient(delta)
    rhs = 0
    for rep in q.coset_reps:
        rhs += F[add_codes(spec, rep, delta.codes)].sum() * delta.weight
    return lhs, rhs * q.quotient_weight
