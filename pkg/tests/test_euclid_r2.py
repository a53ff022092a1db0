import json
import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gaborlca.euclid_r2 import (
    UNIT_SQUARE,
    GeometryError,
    RationalMatrix2,
    RationalPolygon,
    TightFrameCertificateR2,
    TranslateSearchError,
    adjoint_generator,
    adjoint_inner,
    assemble_certificate,
    certificate_svg,
    check_partition,
    choose_translates,
    clip_halfplane,
    compute_strips,
    exp_integral,
    intersection_area,
    normalized_volume_sq,
    validate_numeric,
    verify_certificate,
    verify_translates,
)

THREE_P = RationalMatrix2.of([[2, -1], [1, 2]])
THREE_Y = [(-1, 1), (0, 0), (1, -1)]


def test_matrix_algebra():
    A = RationalMatrix2.of([[2, -1], [1, 2]])
    assert A.det() == 5
    assert A @ A.inverse() == RationalMatrix2.identity()
    assert A.T().column(0) == (F(2), F(-1))
    assert A @ (F(1), F(0)) == (F(2), F(1))
    assert RationalMatrix2.from_json(json.loads(json.dumps(A.to_json()))) == A
    with pytest.raises(GeometryError):
        RationalMatrix2.of([[1, 2], [2, 4]]).inverse()


def test_polygon_validation():
    assert UNIT_SQUARE.area() == 1
    with pytest.raises(GeometryError):
        RationalPolygon(((F(0), F(0)), (F(1), F(0))))
    # clockwise input is reoriented, non-convex input rejected
    cw = RationalPolygon(((F(0), F(0)), (F(0), F(1)), (F(1), F(1)), (F(1), F(0))))
    assert cw.area() == 1
    with pytest.raises(GeometryError):
        RationalPolygon(((F(0), F(0)), (F(2), F(0)), (F(1), F(1, 4)), (F(1), F(2))))
    flipped = UNIT_SQUARE.transform(RationalMatrix2.of([[0, 1], [1, 0]]))
    assert flipped.area() == 1


def test_intersection_area_exact():
    a = RationalPolygon.box(0, 0, 1, 1)
    assert intersection_area(a, RationalPolygon.box(F(1, 2), F(1, 3), 2, 2)) == F(1, 2) * F(2, 3)
    assert intersection_area(a, RationalPolygon.box(1, 0, 2, 1)) == 0  # shared edge only
    assert intersection_area(a, RationalPolygon.box(3, 3, 4, 4)) == 0


def test_clip_halfplane():
    vs = list(UNIT_SQUARE.vertices)
    out = clip_halfplane(vs, (F(1), F(1)), F(1))
    assert RationalPolygon(tuple(out)).area() == F(1, 2)


def test_strips_examples():
    strips = compute_strips((F(2, 5), F(1, 5)))
    assert [z for z, _ in strips] == [0, 1, 2]
    assert [K.area() for _, K in strips] == [F(1, 4), F(1, 2), F(1, 4)]
    strips = compute_strips((1, 0))
    assert [z for z, _ in strips] == [0] and strips[0][1].area() == 1
    strips = compute_strips((F(1, 2), F(1, 2)))
    assert [z for z, _ in strips] == [0, 1]
    assert all(len(K.vertices) == 3 and K.area() == F(1, 2) for _, K in strips)
    with pytest.raises(GeometryError):
        compute_strips((0, 0))


def small_fractions():
    return st.fractions(min_value=-3, max_value=3, max_denominator=7)


@given(small_fractions(), small_fractions())
def test_strips_partition_the_square(x, y):
    if x == 0 and y == 0:
        return
    strips = compute_strips((x, y))
    assert check_partition(strips)
    assert sum((K.area() for _, K in strips), F(0)) == 1


def test_three_piece_translates():
    a1 = (F(2, 5), F(1, 5))
    strips = compute_strips(a1)
    assert verify_translates(strips, a1, THREE_Y).ok
    ys = choose_translates(strips, a1)
    assert verify_translates(strips, a1, ys).ok
    # leaving every piece in place fails: the unit square meets its own a1-shift
    assert not verify_translates(strips, a1, [(0, 0)] * 3).ok


def test_single_piece_translates():
    strips = compute_strips((1, 0))
    assert choose_translates(strips, (1, 0)) == [(0, 0)]


def test_diagonal_translates():
    a1 = (F(1, 2), F(1, 2))
    strips = compute_strips(a1)
    ys = choose_translates(strips, a1)
    assert verify_translates(strips, a1, ys).ok


def test_search_failure_is_reported():
    strips = compute_strips((F(1, 10), 0))
    with pytest.raises(TranslateSearchError):
        choose_translates(strips, (F(1, 10), 0), radius=1, budget=50)
    with pytest.raises(GeometryError):
        choose_translates([], (1, 0))


def test_adjoint_generator():
    assert adjoint_generator(THREE_P, RationalMatrix2.identity()) == (F(2, 5), F(1, 5))
    P = RationalMatrix2.diag(10, 1)
    assert adjoint_generator(P, RationalMatrix2.identity()) == (F(1, 10), F(0))
    # a symmetric Q: both transposition conventions agree
    Q = RationalMatrix2.of([[2, 1], [1, 3]])
    literal = (Q @ THREE_P).T().inverse().column(0)
    assert adjoint_generator(THREE_P, Q) == literal


def test_adjoint_generator_commutes_with_lattice():
    # e^{2 pi i <P m, Q k>} = 1 and the a1 translate pairs to an integer with every modulation P m
    for P, Q in [(THREE_P, RationalMatrix2.of([[1, 1], [0, 2]])), (RationalMatrix2.diag(3, F(1, 2)), RationalMatrix2.of([[0, 1], [-1, F(1, 3)]]))]:
        a1 = adjoint_generator(P, Q)
        # after conjugation by Q, modulations are by Q^T P e1; <Q^T P e1, a1> must be 1 and <Q^T P e2, a1> = 0
        M = Q.T() @ P
        assert M.column(0)[0] * a1[0] + M.column(0)[1] * a1[1] == 1
        assert M.column(1)[0] * a1[0] + M.column(1)[1] * a1[1] == 0


def test_certificate_examples():
    cert = assemble_certificate(RationalMatrix2.identity(), RationalMatrix2.identity(), 2)
    assert cert.valid and cert.volume == 1 and len(cert.pieces) == 1
    cert = assemble_certificate(RationalMatrix2.diag(10, 1), RationalMatrix2.identity(), 2)
    assert cert.valid and cert.volume == 10 and cert.Z == list(range(10))
    cert = assemble_certificate(THREE_P, RationalMatrix2.identity(), 2, ys=THREE_Y)
    assert cert.valid and cert.Z == [0, 1, 2] and [p.y for p in cert.pieces] == THREE_Y
    with pytest.raises(GeometryError):
        assemble_certificate(RationalMatrix2.of([[1, 2], [2, 4]]), RationalMatrix2.identity(), 2)
    with pytest.raises(GeometryError):
        assemble_certificate(THREE_P, RationalMatrix2.identity(), 2, ys=[(0, 0)])


def test_invalid_assignment_is_recorded():
    cert = assemble_certificate(THREE_P, RationalMatrix2.identity(), 2, ys=[(0, 0)] * 3)
    assert not cert.valid and "offending_shift" in cert.checks


def test_certificate_json_round_trip():
    cert = assemble_certificate(THREE_P, RationalMatrix2.of([[1, 0], [0, 2]]), 1)
    data = json.loads(json.dumps(cert.to_json()))
    back = TightFrameCertificateR2.from_json(data)
    assert back.to_json() == cert.to_json()
    checks = verify_certificate(back)
    assert all(checks.values())
    assert data["window"]["amplitude_sq"] == "1/2"


def test_tampered_certificate_fails():
    cert = assemble_certificate(THREE_P, RationalMatrix2.identity(), 2)
    data = cert.to_json()
    data["pieces"][0]["y"] = list(data["pieces"][1]["y"])
    checks = verify_certificate(TightFrameCertificateR2.from_json(data))
    assert not checks["translates_disjoint_ok"]
    data = cert.to_json()
    data["a1"] = ["1/3", "1/5"]
    assert not verify_certificate(TightFrameCertificateR2.from_json(data))["partition_ok"]


def test_window_support_and_amplitude():
    Q = RationalMatrix2.of([[2, 0], [1, 1]])
    cert = assemble_certificate(THREE_P, Q, 2)
    total = sum((w.area() for w in cert.window_pieces()), F(0))
    assert total == abs(Q.det())
    assert cert.amplitude_sq * total == 1


def test_normalized_volume():
    P = RationalMatrix2.of([[2, 0], [0, 3]])
    assert normalized_volume_sq(P, RationalMatrix2.identity(), 2) == 4
    assert normalized_volume_sq(RationalMatrix2.identity(), RationalMatrix2.identity(), 0) == 1


def box_integral(x0, x1, y0, y1, kx, ky):
    def one(a, b, k):
        d = b - a
        return d if k == 0 else np.exp(1j * k * (a + d / 2)) * 2 * np.sin(k * d / 2) / k
    return one(x0, x1, kx) * one(y0, y1, ky)


@pytest.mark.parametrize("k", [(0.0, 0.0), (2 * math.pi, 0.0), (1.3, -0.7), (1e-6, 3e-6), (40.0, 17.0)])
def test_exp_integral_on_boxes(k):
    box = RationalPolygon.box(F(-1, 3), F(1, 4), F(5, 2), 2)
    assert abs(exp_integral(box, k) - box_integral(-1 / 3, 5 / 2, 1 / 4, 2, *k)) <= 1e-12


def test_exp_integral_triangle_quadrature():
    tri = RationalPolygon(((F(0), F(0)), (F(2), F(0)), (F(0), F(1))))
    k = (1.7, -2.9)
    n = 1500
    xs = (np.arange(n) + 0.5) * 2 / n
    ys = (np.arange(n) + 0.5) / n
    X, Y = np.meshgrid(xs, ys)
    inside = X / 2 + Y <= 1
    approx = np.sum(np.exp(1j * (k[0] * X + k[1] * Y)) * inside) * (2 / n) * (1 / n)
    assert abs(exp_integral(tri, k) - approx) <= 2e-3


def test_numeric_validation_three_pieces():
    cert = assemble_certificate(THREE_P, RationalMatrix2.identity(), 2, ys=THREE_Y)
    rep = validate_numeric(cert)
    assert rep.ok and rep.count == 49 * 7
    assert abs(adjoint_inner(cert, (0, 0), 0) - 1) <= 1e-12
    assert abs(adjoint_inner(cert, (0, 0), 2)) == 0


def test_numeric_validation_catches_bad_window():
    cert = assemble_certificate(THREE_P, RationalMatrix2.identity(), 2, ys=[(0, 0)] * 3)
    assert not validate_numeric(cert, 1, 1).ok


@pytest.mark.parametrize("s", [0, 1])
def test_beta_grid_follows_s(s):
    cert = assemble_certificate(THREE_P, RationalMatrix2.identity(), s)
    assert validate_numeric(cert, 2, 1).count == (5 if s == 1 else 1) * 3


def test_svg_mentions_every_piece():
    cert = assemble_certificate(THREE_P, RationalMatrix2.identity(), 2)
    svg = certificate_svg(cert)
    assert svg.startswith("<svg") and svg.count("<polygon") >= 2 * len(cert.pieces)


def test_series_and_boundary_forms_agree():
    from gaborlca.euclid_r2 import _exp_integral_series
    tri = RationalPolygon(((F(-1, 2), F(0)), (F(1, 3), F(-1, 5)), (F(0), F(2, 3))))
    for k in [(0.9, 0.3), (-0.5, 1.1), (0.05, -0.02)]:
        assert abs(_exp_integral_series(tri, k) - exp_integral(tri.translate((5, 5)), k) * np.exp(-1j * 5 * (k[0] + k[1]))) <= 1e-13
