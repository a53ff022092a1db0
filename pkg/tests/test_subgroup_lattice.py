import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gaborlca.group_core import GroupSpec
from gaborlca.phase_space import PhasePoint, commutation_phase
from gaborlca.subgroup_lattice import (
    FT,
    CapExceeded,
    PhaseSubgroup,
    add_codes,
    adjoint,
    all_subgroups,
    annihilator,
    full_subgroup,
    phi,
    quotient,
    separable_subgroup,
    span,
    swap,
    trivial_subgroup,
    volume,
    weil_sides,
)

EXHAUSTIVE = [(1,), (2,), (3,), (4,), (2, 2)]


def brute_force_subgroups(spec):
    """Every subset containing 0 and closed under addition (finite, so a subgroup)."""
    n2 = spec.order**2
    table = add_codes(spec, np.arange(n2)[:, None], np.arange(n2)[None, :])
    found = set()
    for mask in range(1 << (n2 - 1)):
        members = [0] + [i + 1 for i in range(n2 - 1) if mask >> i & 1]
        s = set(members)
        if all(int(table[a, b]) in s for a in members for b in members):
            found.add(frozenset(s))
    return found


def brute_force_adjoint(delta):
    spec = delta.spec
    pts = delta.elements
    return [c for c in range(spec.order**2)
            if all(commutation_phase(PhasePoint.from_code(spec, c), nu).q == 0 for nu in pts)]


def brute_force_annihilator(delta):
    spec = delta.spec
    out = []
    for beta, alpha in itertools.product(spec.residues, repeat=2):
        ok = True
        for nu in delta.elements:
            q = sum(Fraction(int(g) * int(a), n) + Fraction(int(b) * int(l), n)
                    for g, a, b, l, n in zip(nu.gamma.residues, alpha, beta, nu.lam.residues, spec.orders))
            ok &= q.denominator == 1
        if ok:
            out.append(spec.index_of(beta) * spec.order + spec.index_of(alpha))
    return sorted(out)


@pytest.mark.parametrize("orders", [(2,), (3,), (4,)])
def test_subgroup_counts_against_brute_force(orders):
    spec = GroupSpec(orders)
    ours = {frozenset(s.codes.tolist()) for s in all_subgroups(spec)}
    assert ours == brute_force_subgroups(spec)


def test_subgroup_counts():
    assert len(all_subgroups(GroupSpec((2,)))) == 5
    assert len(all_subgroups(GroupSpec((3,)))) == 6
    assert len(all_subgroups(GroupSpec(()))) == 1
    assert len(all_subgroups(GroupSpec((4,)))) == 15
    # Z2^4 has 1 + 15 + 35 + 15 + 1 subgroups
    assert len(all_subgroups(GroupSpec((2, 2)))) == 67


def test_enumeration_cap():
    with pytest.raises(CapExceeded):
        all_subgroups(GroupSpec((17,)))
    assert len(all_subgroups(GroupSpec((3,)), cap=9)) == 6


def test_span_examples():
    z4 = GroupSpec((4,))
    assert len(span(z4, [])) == 1
    diag = span(z4, [PhasePoint.of(z4, [1], [1])])
    assert sorted(p.to_json()[0][0] for p in diag.elements) == [0, 1, 2, 3]
    assert all(p.lam.residues == p.gamma.residues for p in diag.elements)
    sep = span(z4, [PhasePoint.of(z4, [2], [0]), PhasePoint.of(z4, [0], [2])])
    assert len(sep) == 4
    assert {tuple(map(tuple, p.to_json())) for p in sep.elements} == {((0,), (0,)), ((2,), (0,)), ((0,), (2,)), ((2,), (2,))}


def test_rejects_non_subgroups():
    spec = GroupSpec((4,))
    with pytest.raises(ValueError):
        PhaseSubgroup(spec, [0, 1])
    with pytest.raises(ValueError):
        PhaseSubgroup(spec, [1, 2])
    with pytest.raises(ValueError):
        trivial_subgroup(spec, weight=0)


def test_volume_examples():
    assert volume(trivial_subgroup(GroupSpec((4,)))) == 4
    assert volume(full_subgroup(GroupSpec((2,)))) == Fraction(1, 2)
    z4 = GroupSpec((4,))
    assert volume(span(z4, [PhasePoint.of(z4, [1], [1])])) == 1


def test_adjoint_examples():
    z4 = GroupSpec((4,))
    assert len(adjoint(full_subgroup(z4))) == 1
    diag = span(z4, [PhasePoint.of(z4, [1], [1])])
    assert adjoint(diag).same_points(diag)
    z2 = GroupSpec((2,))
    time = separable_subgroup(z2, [[1]], [])
    assert adjoint(time).same_points(time)


def test_annihilator_examples():
    z4 = GroupSpec((4,))
    assert len(annihilator(full_subgroup(z4))) == 1
    assert len(annihilator(trivial_subgroup(z4))) == 16
    ann = annihilator(span(z4, [PhasePoint.of(z4, [1], [1])]))
    assert len(ann) == 4 and ann.coords == FT
    for c in ann.codes:
        beta, alpha = divmod(int(c), 4)
        assert (beta + alpha) % 4 == 0


@pytest.mark.parametrize("orders", EXHAUSTIVE)
def test_lattice_invariants(orders):
    spec = GroupSpec(orders)
    n = spec.order
    for delta in all_subgroups(spec):
        adj, ann = adjoint(delta), annihilator(delta)
        assert adj.codes.tolist() == brute_force_adjoint(delta)
        assert ann.codes.tolist() == brute_force_annihilator(delta)
        assert phi(adj).same_points(ann)
        assert len(delta) * len(ann) == n * n
        assert Fraction(n, len(delta)) * Fraction(n, len(adj)) == 1
        assert volume(delta) * volume(adjoint(delta, weight=1)) == 1
        assert adjoint(adj).same_points(delta)


def test_bare_swap_fails_beyond_exponent_two():
    # the swap agrees with the annihilator only on elementary abelian 2-groups
    z4 = GroupSpec((4,))
    mismatched = [d for d in all_subgroups(z4) if not swap(adjoint(d)).same_points(annihilator(d))]
    assert mismatched
    for d in all_subgroups(GroupSpec((2, 2))):
        assert swap(adjoint(d)).same_points(annihilator(d))


def test_adjoint_default_weight():
    z4 = GroupSpec((4,))
    delta = separable_subgroup(z4, [[2]], [])
    assert adjoint(delta).weight == 1 / volume(delta)
    assert adjoint(delta, weight=1).weight == 1


def test_quotient_examples():
    z2 = GroupSpec((2,))
    q = quotient(full_subgroup(z2))
    assert len(q.coset_reps) == 1 and q.quotient_weight == volume(full_subgroup(z2))
    assert len(quotient(trivial_subgroup(z2)).coset_reps) == 4


@pytest.mark.parametrize("orders", EXHAUSTIVE)
def test_quotient_invariants(orders):
    spec = GroupSpec(orders)
    for delta in all_subgroups(spec):
        for w in (Fraction(1), Fraction(2, 3)):
            d = delta.with_weight(w)
            q = quotient(d)
            assert len(q.coset_reps) * len(d) == spec.order**2
            assert q.quotient_weight * d.weight * spec.order == 1


@pytest.mark.parametrize("orders", [(2,), (4,), (2, 2)])
def test_weil_identity_exact(orders):
    spec = GroupSpec(orders)
    rng = np.random.default_rng(7)
    for delta in all_subgroups(spec):
        for _ in range(20):
            F = np.array([Fraction(int(v), 7) for v in rng.integers(-50, 50, spec.order**2)], dtype=object)
            lhs, rhs = weil_sides(delta.with_weight(Fraction(3, 2)), F)
            assert lhs == rhs


def test_weil_identity_float_diagonal(rng):
    z4 = GroupSpec((4,))
    diag = span(z4, [PhasePoint.of(z4, [1], [1])])
    F = rng.standard_normal(16) + 1j * rng.standard_normal(16)
    lhs, rhs = weil_sides(diag, F)
    assert abs(lhs - rhs) <= 1e-12


@given(st.sampled_from([(2,), (3,), (4,), (2, 2)]), st.data())
def test_json_round_trips(orders, data):
    spec = GroupSpec(orders)
    subs = all_subgroups(spec)
    delta = subs[data.draw(st.integers(0, len(subs) - 1))].with_weight(Fraction(data.draw(st.integers(1, 9)), 4))
    assert PhaseSubgroup.from_json(delta.to_json()) == delta
    assert PhaseSubgroup.from_json(delta.to_json_elements()) == delta


def test_enumeration_is_deterministic():
    spec = GroupSpec((2, 2))
    a = [s.codes.tolist() for s in all_subgroups(spec)]
    b = [s.codes.tolist() for s in all_subgroups(spec)]
    assert a == b
    assert [len(x) for x in a] == sorted(len(x) for x in a)
