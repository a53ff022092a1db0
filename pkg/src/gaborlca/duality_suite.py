"""Executable checks of the density and duality theorems for Gabor systems on finite groups.

Every check returns a :class:`DualityReport`; ``verdict`` is True exactly when
``residual <= tolerance``.  Equivalence theorems (Wexler-Raz, duality
principle) are checked in both directions: the residual is 0 when the two
sides agree and the offending residual otherwise.  A disagreement whose
failing side lies in (tol, 10 tol] is flagged ``marginal`` and not counted as
a failure.

Vol here is the finite-group volume; every finite subgroup is co-compact, so
the co-compact and general variants of the volume coincide, condition A
holds automatically, and every window lies in S_0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .gabor_ops import (
    DEFAULT_TOL,
    NotAFrame,
    canonical_dual,
    canonical_tight,
    frame_operator,
    riesz_bounds,
    spectral_report,
)
from .group_core import Window, check_same
from .phase_space import PhasePoint, adjoint_decomposition, apply_tf_shift, shifted_family, split_codes
from .subgroup_lattice import PhaseSubgroup, adjoint, quotient, volume

THEOREMS = ("wexler_raz", "janssen", "figa", "bessel_duality", "duality_principle", "density", "dual_pair_bounds")


class TheoremViolation(AssertionError):
    """A configuration contradicting a theorem: this indicates a bug, not a counterexample."""


@dataclass
class DualityReport:
    theorem_id: str
    residual: float
    verdict: bool
    tolerance: float
    witnesses: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "theorem_id": self.theorem_id,
            "residual": _round(self.residual),
            "verdict": bool(self.verdict),
            "tolerance": self.tolerance,
            "witnesses": _jsonable(self.witnesses),
        }


def _round(x):
    return float(f"{float(x):.12e}")


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [_round(obj.real), _round(obj.imag)]
    if isinstance(obj, (float, np.floating)):
        return _round(obj)
    if isinstance(obj, PhasePoint):
        return obj.to_json()
    return obj


def _equivalence(theorem_id, left, right, tol, witnesses) -> DualityReport:
    """Report for a theorem of the form (left <= tol) <=> (right <= tol)."""
    left_ok, right_ok = left <= tol, right <= tol
    if left_ok == right_ok:
        residual, marginal = 0.0, False
    else:
        offending = right if left_ok else left
        marginal = offending <= 10 * tol
        residual = tol if marginal else offending
    witnesses = dict(witnesses, marginal=marginal, left_holds=left_ok, right_holds=right_ok)
    return DualityReport(theorem_id, residual, residual <= tol, tol, witnesses)


def biorthogonality_values(g: Window, h: Window, adj: PhaseSubgroup) -> np.ndarray:
    """<h, pi(mu) g> for mu in the (adjoint) subgroup, in code order."""
    return shifted_family(g, adj.codes).conj().T @ h.values


def wexler_raz_check(g: Window, h: Window, delta: PhaseSubgroup, tolerance: float = DEFAULT_TOL) -> DualityReport:
    """Dual frames  <=>  <h, pi(mu) g> = vol(Delta) delta_{mu,e} on the adjoint."""
    check_same(g, h)
    vol = volume(delta)
    adj = adjoint(delta)
    target = np.zeros(len(adj), dtype=complex)
    target[0] = float(vol)          # identity has code 0 and sorts first
    bio = biorthogonality_values(g, h, adj)
    dev = np.abs(bio - target)
    worst = int(np.argmax(dev))
    r_bio = float(dev[worst])
    S = frame_operator(g, h, delta)
    r_dual = float(np.linalg.norm(S - np.eye(g.spec.order)))
    return _equivalence(
        "wexler_raz", r_bio, r_dual, tolerance,
        {
            "vol": vol,
            "residual_bio": r_bio,
            "residual_dual": r_dual,
            "worst_mu": PhasePoint.from_code(g.spec, adj.codes[worst]),
            "value_at_worst": complex(bio[worst]),
        },
    )


def tf_operator_sum(spec, codes, coeffs) -> np.ndarray:
    """sum_mu c_mu pi(mu) as a dense matrix."""
    n = spec.order
    lam, gam = split_codes(spec, codes)
    J = np.zeros((n, n), dtype=complex)
    rows = np.arange(n)
    for c, l, w in zip(coeffs, lam, gam):
        # (pi(mu))[x, y] = gam(x) [y == x - lam]
        J[rows, spec.sub_table[:, l]] += c * spec.char_table[w]
    return J


def janssen_operator(g: Window, h: Window, delta: PhaseSubgroup) -> np.ndarray:
    """vol(Delta)^{-1} sum_{mu in adjoint} <h, pi(mu) g> pi(mu)."""
    check_same(g, h)
    adj = adjoint(delta)
    coeffs = biorthogonality_values(g, h, adj) / float(volume(delta))
    return tf_operator_sum(g.spec, adj.codes, coeffs)


def janssen_check(g: Window, h: Window, delta: PhaseSubgroup, tolerance: float = 1e-10) -> DualityReport:
    S = frame_operator(g, h, delta)
    J = janssen_operator(g, h, delta)
    scale = max(1.0, float(np.linalg.norm(S)))
    diff = float(np.linalg.norm(S - J))
    coeff_l1 = float(np.abs(biorthogonality_values(g, g, adjoint(delta))).sum())
    return DualityReport(
        "janssen", diff / scale, diff / scale <= tolerance, tolerance,
        {"frobenius_diff": diff, "frobenius_S": float(np.linalg.norm(S)), "condition_A_sum": coeff_l1},
    )


def _adjoint_apply(chi: PhasePoint, f: Window) -> Window:
    phase, inv = adjoint_decomposition(chi)
    return apply_tf_shift(inv, f).scaled(complex(phase))


def fundamental_function(f1: Window, f2: Window, g: Window, h: Window, delta: PhaseSubgroup, chi: PhasePoint) -> complex:
    """phi(chi) = sum_{nu in Delta} w <pi(chi)^* f1, pi(nu) g> <pi(nu) h, pi(chi)^* f2>."""
    check_same(f1, f2, g, h)
    a = _adjoint_apply(chi, f1).values
    b = _adjoint_apply(chi, f2).values
    Mg = shifted_family(g, delta.codes)
    Mh = shifted_family(h, delta.codes)
    return complex(float(delta.weight) * np.sum((Mg.conj().T @ a) * (b.conj() @ Mh)))


def figa_check(f1: Window, f2: Window, g: Window, h: Window, delta: PhaseSubgroup, tolerance: float = 1e-10) -> DualityReport:
    """Fundamental identity of Gabor analysis, plus its Fourier-series form at every coset representative."""
    check_same(f1, f2, g, h)
    spec = g.spec
    vol = float(volume(delta))
    adj = adjoint(delta)
    Mg = shifted_family(g, delta.codes)
    Mh = shifted_family(h, delta.codes)
    lhs = float(delta.weight) * np.sum((Mg.conj().T @ f1.values) * (f2.values.conj() @ Mh))
    coef = biorthogonality_values(g, h, adj)                       # <h, pi(mu) g>
    Mf1 = shifted_family(f1, adj.codes)
    tf = f2.values.conj() @ Mf1                                     # <pi(mu) f1, f2>
    terms = coef * tf / vol
    rhs = terms.sum()
    residual = abs(lhs - rhs)

    # phi(chi) = vol^{-1} sum_mu w(alpha) conj(beta(x)) <h, pi(mu) g><pi(mu) f1, f2>, chi = (x, w), mu = (alpha, beta)
    alpha, beta = split_codes(spec, adj.codes)
    P = spec.phase_numerators
    worst_chi, worst_dev = None, 0.0
    for rep in quotient(delta).coset_reps:
        chi = PhasePoint.from_code(spec, rep)
        x, w = chi.lam.index, chi.gamma.index
        phases = (P[w, alpha] - P[beta, x]) % spec.exponent
        series = np.sum(np.exp(2j * np.pi * phases / spec.exponent) * terms)
        dev = abs(fundamental_function(f1, f2, g, h, delta, chi) - series)
        if dev >= worst_dev:
            worst_chi, worst_dev = chi, dev
    scale = max(1.0, f1.norm() * f2.norm() * g.norm() * h.norm())
    res = max(residual, worst_dev) / scale
    return DualityReport(
        "figa", res, res <= tolerance, tolerance,
        {"lhs": complex(lhs), "rhs": complex(rhs), "identity_residual": residual,
         "fourier_series_residual": worst_dev, "worst_coset_rep": worst_chi, "scale": scale},
    )


def bessel_duality_check(g: Window, delta: PhaseSubgroup, tolerance: float = DEFAULT_TOL) -> DualityReport:
    """Optimal Bessel bounds of G(g, Delta) and of G(g, adjoint) (weight vol^{-1}) coincide."""
    b_delta = spectral_report(g, delta, tolerance).B_opt
    b_adj = spectral_report(g, adjoint(delta), tolerance).B_opt
    top = max(b_delta, b_adj)
    res = abs(b_delta - b_adj) / top if top > 0 else 0.0
    return DualityReport("bessel_duality", res, res <= tolerance, tolerance,
                         {"bessel_bound": b_delta, "adjoint_bessel_bound": b_adj, "vol": volume(delta)})


def duality_principle_check(g: Window, delta: PhaseSubgroup, tolerance: float = DEFAULT_TOL) -> DualityReport:
    """Frame with bounds (A, B)  <=>  adjoint system (counting weight) is Riesz with bounds (vol A, vol B).

    The upper relation is Bessel duality and is checked for every window; the
    lower relation only when a frame (equivalently Riesz) verdict is reached.
    """
    vol = volume(delta)
    fr = spectral_report(g, delta, tolerance)
    rz = riesz_bounds(g, adjoint(delta, weight=1), tolerance)
    scale = fr.B_opt if fr.B_opt > 0 else 1.0
    res_B = abs(rz.B_opt - float(vol) * fr.B_opt) / scale
    res_A = abs(rz.A_opt - float(vol) * fr.A_opt) / scale if (fr.is_frame and rz.is_frame) else 0.0
    agree = fr.is_frame == rz.is_frame
    residual = max(res_A, res_B) if agree else max(res_A, res_B, 1.0)
    return DualityReport(
        "duality_principle", residual, residual <= tolerance, tolerance,
        {"vol": vol, "is_frame": fr.is_frame, "is_riesz": rz.is_frame,
         "A_frame": fr.A_opt, "B_frame": fr.B_opt, "A_riesz": rz.A_opt, "B_riesz": rz.B_opt,
         "residual_A": res_A, "residual_B": res_B},
    )


def tight_orthogonality_check(g: Window, delta: PhaseSubgroup, tolerance: float = 1e-10) -> DualityReport:
    """Tight frame with bound A  <=>  adjoint system orthogonal with ||g||^2 = vol A."""
    vol = float(volume(delta))
    fr = spectral_report(g, delta, DEFAULT_TOL)
    adj = adjoint(delta, weight=1)
    gram = shifted_family(g, adj.codes)
    G = gram.conj().T @ gram
    off = float(np.max(np.abs(G - np.diag(np.diag(G))))) if len(adj) > 1 else 0.0
    norm2 = g.norm() ** 2
    orth = off <= tolerance * max(1.0, norm2) and abs(norm2 - vol * fr.A_opt) <= tolerance * max(1.0, norm2)
    return _equivalence(
        "tight_orthogonal", 0.0 if fr.is_tight else 1.0, 0.0 if orth else 1.0, tolerance,
        {"is_tight": fr.is_tight, "adjoint_orthogonal": orth, "max_offdiag": off, "norm2": norm2, "vol_A": vol * fr.A_opt},
    )


def density_verdict(g: Window, delta: PhaseSubgroup, tolerance: float = DEFAULT_TOL, strict: bool = True) -> DualityReport:
    """The density theorems, as four sub-verdicts.

    * co-compactness: always true for finite groups, reported;
    * counting weight and frame  =>  vol <= 1;
    * counting weight: total Riesz family  <=>  vol = 1 and frame;
    * frame  =>  A vol <= ||g||^2 <= B vol  and  ||S^{-1/2} g||^2 = vol.

    With ``strict`` a failed sub-verdict raises :class:`TheoremViolation`.
    """
    vol = volume(delta)
    fr = spectral_report(g, delta, tolerance)
    total_riesz = fr.is_frame and riesz_bounds(g, delta, tolerance).is_frame
    norm2 = g.norm() ** 2
    counting = delta.weight == 1
    sub = {"cocompact": True}
    residuals = {"cocompact": 0.0}

    sub["lattice_vol_le_1"] = (not counting) or (not fr.is_frame) or vol <= 1
    residuals["lattice_vol_le_1"] = 0.0 if sub["lattice_vol_le_1"] else float(vol - 1)

    if counting:
        sub["total_riesz_iff_critical_frame"] = total_riesz == (vol == 1 and fr.is_frame)
    else:
        sub["total_riesz_iff_critical_frame"] = True
    residuals["total_riesz_iff_critical_frame"] = 0.0 if sub["total_riesz_iff_critical_frame"] else 1.0

    tight_norm2 = None
    if fr.is_frame:
        tight_norm2 = canonical_tight(g, delta, tolerance).norm() ** 2
        r_lo = max(fr.A_opt * float(vol) - norm2, 0.0) / max(1.0, norm2)
        r_hi = max(norm2 - fr.B_opt * float(vol), 0.0) / max(1.0, norm2)
        r_tight = abs(tight_norm2 - float(vol)) / max(1.0, float(vol))
        residuals["norm_bounds"] = max(r_lo, r_hi, r_tight)
    else:
        residuals["norm_bounds"] = 0.0
    sub["norm_bounds"] = residuals["norm_bounds"] <= tolerance

    residual = max(residuals.values())
    report = DualityReport(
        "density", residual, all(sub.values()), tolerance,
        {"vol": vol, "norm2": norm2, "A": fr.A_opt, "B": fr.B_opt, "is_frame": fr.is_frame,
         "total_riesz": total_riesz, "counting_weight": counting, "tight_norm2": tight_norm2,
         "sub_verdicts": sub},
    )
    if not report.verdict:
        report.residual = max(report.residual, 2 * tolerance)
        if strict:
            raise TheoremViolation(f"density theorem violated: {report.to_json()}")
    return report


def dual_pair_bounds_check(g: Window, h: Window, delta: PhaseSubgroup, tolerance: float = DEFAULT_TOL) -> DualityReport:
    """If G(g) and G(h) are dual, Bessel bounds B_g and B_h certify frame bounds B_h^{-1} <= A_opt(g), B_opt(g) <= B_g."""
    S = frame_operator(g, h, delta)
    dual = float(np.linalg.norm(S - np.eye(g.spec.order))) <= tolerance
    fr_g = spectral_report(g, delta, tolerance)
    B_h = spectral_report(h, delta, tolerance).B_opt
    if not dual:
        return DualityReport("dual_pair_bounds", 0.0, True, tolerance, {"dual": False, "applicable": False})
    lower = 1.0 / B_h if B_h > 0 else math.inf
    res = max(lower - fr_g.A_opt, 0.0) / max(1.0, lower)
    return DualityReport(
        "dual_pair_bounds", res, res <= tolerance, tolerance,
        {"dual": True, "applicable": True, "A_opt": fr_g.A_opt, "B_opt": fr_g.B_opt, "certified_A": lower, "B_g": fr_g.B_opt},
    )


def canonical_dual_or_none(g: Window, delta: PhaseSubgroup, tolerance: float = DEFAULT_TOL):
    try:
        return canonical_dual(g, delta, tolerance)
    except NotAFrame:
        return None
