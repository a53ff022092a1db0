"""Frame operators, spectral frame/Riesz bounds and canonical dual/tight windows.

Inner products on L^2(G) use counting measure; a subgroup's own Haar weight
enters every sum over it.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .group_core import SpecMismatch, Window, check_same
from .phase_space import TFCoefficientMap, shifted_family
from .subgroup_lattice import TF, PhaseSubgroup

DEFAULT_TOL = 1e-9


class NotAFrame(ValueError):
    pass


@dataclass(frozen=True)
class GaborSystem:
    g: Window
    delta: PhaseSubgroup

    def __post_init__(self):
        if self.g.spec != self.delta.spec:
            raise SpecMismatch(f"{self.g.spec} vs {self.delta.spec}")


@dataclass(frozen=True)
class SpectralReport:
    """Extreme spectrum of a frame operator (or of a Gram matrix, for Riesz bounds).

    For Riesz reports ``is_frame`` reads as "is a basic Riesz family".
    """

    eigenvalues: tuple[float, ...]
    A_opt: float
    B_opt: float
    is_frame: bool
    is_tight: bool
    is_parseval: bool
    tolerance: float
    kind: str = "frame"

    def to_json(self) -> dict:
        d = asdict(self)
        d["eigenvalues"] = [round(x, 12) for x in self.eigenvalues]
        d["A_opt"] = round(self.A_opt, 12)
        d["B_opt"] = round(self.B_opt, 12)
        return d


def _require(g: Window, delta: PhaseSubgroup):
    if g.spec != delta.spec:
        raise SpecMismatch(f"{g.spec} vs {delta.spec}")
    if delta.coords != TF:
        raise ValueError("Gabor systems are indexed by subgroups of G x G^")


def frame_operator(g: Window, h: Window, delta: PhaseSubgroup) -> np.ndarray:
    """Mixed frame operator S_{g,h} f = sum_nu w <f, pi(nu) g> pi(nu) h."""
    check_same(g, h)
    _require(g, delta)
    Mg = shifted_family(g, delta.codes)
    Mh = Mg if h is g else shifted_family(h, delta.codes)
    return float(delta.weight) * (Mh @ Mg.conj().T)


def gram_matrix(g: Window, delta: PhaseSubgroup) -> np.ndarray:
    """Weighted Gram matrix w <pi(mu') g, pi(mu) g>, rows/columns in code order."""
    _require(g, delta)
    M = shifted_family(g, delta.codes)
    return float(delta.weight) * (M.conj().T @ M)


def _report(eigs: np.ndarray, dim: int, tolerance: float, kind: str) -> SpectralReport:
    eigs = np.sort(np.clip(eigs.real, 0.0, None))
    B = float(eigs[-1]) if eigs.size else 0.0
    cut = tolerance * B
    nonzero = eigs[eigs > cut]
    full_rank = nonzero.size == dim and dim > 0
    A = float(nonzero[0]) if nonzero.size else 0.0
    tight = full_rank and (B - A) <= tolerance * B
    parseval = tight and abs(A - 1) <= tolerance and abs(B - 1) <= tolerance
    return SpectralReport(tuple(float(x) for x in eigs), A, B, bool(full_rank), bool(tight), bool(parseval), tolerance, kind)


def spectral_report(g: Window, delta: PhaseSubgroup, tolerance: float = DEFAULT_TOL) -> SpectralReport:
    """Optimal frame bounds as the extreme eigenvalues of S_{g,g}.

    When S is rank deficient, A_opt is the smallest nonzero eigenvalue (basic
    frame bound) and ``is_frame`` is False.
    """
    S = frame_operator(g, g, delta)
    eigs = np.linalg.eigvalsh((S + S.conj().T) / 2)
    return _report(eigs, g.spec.order, tolerance, "frame")


def riesz_bounds(g: Window, adj: PhaseSubgroup, tolerance: float = DEFAULT_TOL) -> SpectralReport:
    """Riesz bounds of {pi(mu) g}_{mu in adj} as the extreme spectrum of the weighted Gram matrix."""
    Gm = gram_matrix(g, adj)
    eigs = np.linalg.eigvalsh((Gm + Gm.conj().T) / 2)
    return _report(eigs, len(adj), tolerance, "riesz")


def _hermitian_power(S: np.ndarray, power: float, tolerance: float) -> np.ndarray:
    S = (S + S.conj().T) / 2
    w, U = np.linalg.eigh(S)
    if w.size == 0 or w[-1] <= 0 or w[0] <= tolerance * w[-1]:
        raise NotAFrame(f"frame operator is singular (smallest eigenvalue {w[0] if w.size else 0:.3e})")
    return (U * w**power) @ U.conj().T


def canonical_dual(g: Window, delta: PhaseSubgroup, tolerance: float = DEFAULT_TOL) -> Window:
    """S^{-1} g."""
    S = frame_operator(g, g, delta)
    return Window(g.spec, _hermitian_power(S, -1.0, tolerance) @ g.values)


def canonical_tight(g: Window, delta: PhaseSubgroup, tolerance: float = DEFAULT_TOL) -> Window:
    """S^{-1/2} g, generating a Parseval frame over the same subgroup."""
    S = frame_operator(g, g, delta)
    return Window(g.spec, _hermitian_power(S, -0.5, tolerance) @ g.values)


def synthesis(c: TFCoefficientMap, g: Window, delta: PhaseSubgroup) -> Window:
    """D c = sum_nu w c(nu) pi(nu) g."""
    _require(g, delta)
    if c.spec != g.spec or not np.array_equal(c.codes, delta.codes):
        raise ValueError("coefficients are not aligned with the subgroup")
    M = shifted_family(g, delta.codes)
    return Window(g.spec, float(delta.weight) * (M @ c.values))
