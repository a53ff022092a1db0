import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import specs, windows
from gaborlca.group_core import COUNTING, GroupSpec, MeasureConvention, SpecMismatch, Window
from gaborlca.phase_space import (
    PhasePoint,
    TFCoefficientMap,
    adjoint_decomposition,
    all_phase_points,
    analysis,
    apply_tf_shift,
    commutation_phase,
    composition_phase,
    identity_point,
    phase_numerator_table,
    shifted_family,
    stft,
    stft_matrix,
    tf_shift_matrix,
)
from gaborlca.subgroup_lattice import full_subgroup, separable_subgroup, trivial_subgroup


def points(spec):
    return st.integers(0, spec.order**2 - 1).map(lambda c: PhasePoint.from_code(spec, c))


def test_shift_examples():
    z2 = GroupSpec((2,))
    d0 = Window.delta(z2)
    assert np.array_equal(apply_tf_shift(PhasePoint.of(z2, [1], [0]), d0).values, [0, 1])
    assert np.array_equal(apply_tf_shift(PhasePoint.of(z2, [0], [1]), Window(z2, [1, 1])).values, [1, -1])
    z4 = GroupSpec((4,))
    out = apply_tf_shift(PhasePoint.of(z4, [1], [1]), Window.delta(z4)).values
    assert np.array_equal(out, [0, 1j, 0, 0])


def test_shift_spec_mismatch():
    with pytest.raises(SpecMismatch):
        apply_tf_shift(PhasePoint.of(GroupSpec((2,)), [1], [0]), Window.delta(GroupSpec((3,))))


def test_shift_matrix_oracle():
    # direct formula (pi(lam, gam) f)(x) = gam(x) f(x - lam), one entry at a time
    spec = GroupSpec((2, 3))
    for nu in all_phase_points(spec):
        M = tf_shift_matrix(nu)
        for xi, x in enumerate(spec.residues):
            for yi, y in enumerate(spec.residues):
                want = 0
                if spec.index_of(x - nu.lam.residues) == yi:
                    q = sum(Fraction(int(w) * int(a), n) for w, a, n in zip(nu.gamma.residues, x, spec.orders))
                    want = np.exp(2j * np.pi * float(q))
                assert abs(M[xi, yi] - want) < 1e-14


def test_commutation_phase_examples():
    z2 = GroupSpec((2,))
    assert commutation_phase(PhasePoint.of(z2, [1], [0]), PhasePoint.of(z2, [0], [1])).q == Fraction(1, 2)
    z4 = GroupSpec((4,))
    nu = PhasePoint.of(z4, [1], [1])
    assert commutation_phase(nu, nu).q == 0


@pytest.mark.parametrize("orders", [(8,), (3, 4)])
def test_commutation_and_composition_as_matrices(orders, rng):
    spec = GroupSpec(orders)
    n2 = spec.order**2
    for _ in range(100):
        a, b = (PhasePoint.from_code(spec, int(c)) for c in rng.integers(n2, size=2))
        A, B = tf_shift_matrix(a), tf_shift_matrix(b)
        assert np.max(np.abs(A @ B - complex(commutation_phase(a, b)) * (B @ A))) <= 1e-12
        assert np.max(np.abs(A @ B - complex(composition_phase(a, b)) * tf_shift_matrix(a * b))) <= 1e-12


def test_adjoint_decomposition_examples():
    z4 = GroupSpec((4,))
    ph, inv = adjoint_decomposition(PhasePoint.of(z4, [1], [1]))
    assert ph.q == Fraction(3, 4) and inv.to_json() == [[3], [3]]
    z2 = GroupSpec((2,))
    ph, inv = adjoint_decomposition(PhasePoint.of(z2, [1], [1]))
    assert ph.q == Fraction(1, 2) and inv.to_json() == [[1], [1]]
    ph, inv = adjoint_decomposition(identity_point(z4))
    assert ph.q == 0 and inv.is_identity()


@given(specs(), st.data())
def test_adjoint_decomposition_matrix(spec, data):
    nu = data.draw(points(spec))
    ph, inv = adjoint_decomposition(nu)
    assert np.allclose(tf_shift_matrix(nu).conj().T, complex(ph) * tf_shift_matrix(inv), atol=1e-12)


@given(specs(), st.data())
def test_shifts_are_unitary(spec, data):
    f = data.draw(windows(spec))
    nu = data.draw(points(spec))
    assert abs(apply_tf_shift(nu, f).norm() - f.norm()) <= 1e-12 * max(1.0, f.norm())


def test_phase_numerator_table_matches_commutation_phase():
    spec = GroupSpec((2, 4))
    T = phase_numerator_table(spec)
    pts = all_phase_points(spec)
    for i in range(0, len(pts), 5):
        for j in range(0, len(pts), 3):
            assert Fraction(int(T[i, j]), spec.exponent) == commutation_phase(pts[i], pts[j]).q


def test_stft_delta_on_z2():
    z2 = GroupSpec((2,))
    d0 = Window.delta(z2)
    V = stft_matrix(d0, d0)
    assert np.array_equal(V, [[1, 1], [0, 0]])


def test_stft_double_loop_oracle(rng):
    spec = GroupSpec((2, 3))
    f, g = Window.random(spec, rng), Window.random(spec, rng)
    V = stft(f, g)
    for c, val in zip(V.codes, V.values):
        nu = PhasePoint.from_code(spec, c)
        assert abs(val - f.inner(apply_tf_shift(nu, g))) < 1e-12


@pytest.mark.parametrize("weight", [Fraction(1), Fraction(1, 6), Fraction(5, 2)])
def test_stft_energy(weight, rng):
    spec = GroupSpec((6,))
    conv = MeasureConvention(weight)
    for _ in range(20):
        f, g = Window.random(spec, rng), Window.random(spec, rng)
        target = f.norm(conv) ** 2 * g.norm(conv) ** 2
        assert abs(stft(f, g, conv).energy() - target) <= 1e-10 * target


@given(specs(), st.data())
def test_stft_nonvanishing(spec, data):
    f = data.draw(windows(spec))
    g = data.draw(windows(spec))
    if f.norm() > 1e-3 and g.norm() > 1e-3:
        assert np.max(np.abs(stft_matrix(f, g))) > 0


def test_analysis_examples(rng):
    z2 = GroupSpec((2,))
    f = Window(z2, [2 + 1j, -3])
    c = analysis(f, f, trivial_subgroup(z2))
    assert c.values.tolist() == [f.inner(f)]
    sep = separable_subgroup(z2, [[1]], [])
    assert np.allclose(analysis(f, Window.delta(z2), sep).values, [2 + 1j, -3])
    spec = GroupSpec((3,))
    f, g = Window.random(spec, rng), Window.random(spec, rng)
    full = analysis(f, g, full_subgroup(spec, Fraction(1, 3)))
    ref = stft(f, g)
    assert np.allclose(full.values, ref.values) and full.weight == ref.weight


def test_shifted_family_columns(rng):
    spec = GroupSpec((2, 2))
    g = Window.random(spec, rng)
    codes = [0, 5, 11]
    M = shifted_family(g, codes)
    for j, c in enumerate(codes):
        assert np.allclose(M[:, j], apply_tf_shift(PhasePoint.from_code(spec, c), g).values)


def test_coefficient_map_json(rng):
    spec = GroupSpec((3,))
    V = stft(Window.random(spec, rng), Window.random(spec, rng))
    back = TFCoefficientMap.from_json(json.loads(json.dumps(V.to_json())))
    assert np.array_equal(back.codes, V.codes) and np.array_equal(back.values, V.values)
    assert back.weight == Fraction(1, 3)
    assert V.to_json()["points"][4] == [[1], [1]]


def test_coefficient_map_validation():
    with pytest.raises(ValueError):
        TFCoefficientMap(GroupSpec((2,)), [0, 1], [1.0])
    with pytest.raises(ValueError):
        TFCoefficientMap(GroupSpec((2,)), [0], [1.0], Fraction(0))


def test_group_law_on_points():
    spec = GroupSpec((4,))
    a, b = PhasePoint.of(spec, [3], [1]), PhasePoint.of(spec, [2], [3])
    assert (a * b).to_json() == [[1], [0]]
    assert (a * a.inverse()).is_identity()
    assert PhasePoint.from_code(spec, a.code) == a
