import itertools
from pathlib import Path

import pytest

from arclab.arcgeom import ArcConfig
from arclab.gf import FieldCtx

ARCS_DIR = Path(__file__).resolve().parent.parent / "arcs"


# ----------------------------------------------------------------------
# independent oracles (no reuse of library elimination / pencil code)
# ----------------------------------------------------------------------


def laplace_det(ctx, rows):
    """Cofactor-expansion determinant: the independent oracle."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    acc = 0
    sign = 1
    for j in range(n):
        if rows[0][j]:
            minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
            term = ctx.mul(rows[0][j], laplace_det(ctx, minor))
            acc = ctx.add(acc, term if sign > 0 else ctx.neg(term))
        sign = -sign
    return acc


def all_dual_reps(ctx, k):
    """Every projective representative of the dual space, brute force."""
    out = []
    for lead in range(k):
        for rest in itertools.product(range(ctx.q), repeat=k - 1 - lead):
            out.append((0,) * lead + (1,) + rest)
    return out


def dot(ctx, u, v):
    acc = 0
    for a, b in zip(u, v):
        if a and b:
            acc = ctx.add(acc, ctx.mul(a, b))
    return acc


def mat_vec(ctx, rows, x):
    return [dot(ctx, row, x) for row in rows]


# ----------------------------------------------------------------------
# fields
# ----------------------------------------------------------------------


@pytest.fixture(scope="session")
def F4():
    return FieldCtx(2, 2)


@pytest.fixture(scope="session")
def F5():
    return FieldCtx(5)


@pytest.fixture(scope="session")
def F7():
    return FieldCtx(7)


@pytest.fixture(scope="session")
def F8():
    return FieldCtx(2, 3)


@pytest.fixture(scope="session")
def F9():
    return FieldCtx(3, 2)


@pytest.fixture(scope="session")
def F11():
    return FieldCtx(11)


@pytest.fixture(scope="session")
def F13():
    return FieldCtx(13)


@pytest.fixture(scope="session")
def F81():
    return FieldCtx(3, 4)


# ----------------------------------------------------------------------
# standard arcs
# ----------------------------------------------------------------------


def moment_curve(ctx, k, params, infinity=False):
    pts = [tuple(ctx.pow(a, i) for i in range(k)) for a in params]
    if infinity:
        pts.append((0,) * (k - 1) + (1,))
    return pts


@pytest.fixture(scope="session")
def conic_f5(F5):
    return ArcConfig(F5, 3, moment_curve(F5, 3, range(5), infinity=True))


@pytest.fixture(scope="session")
def conic_f13(F13):
    return ArcConfig(F13, 3, moment_curve(F13, 3, range(13), infinity=True))


@pytest.fixture(scope="session")
def arc_q11(F11):
    t = F11.t
    return ArcConfig(F11, 3, [
        (t(0), 0, 0), (0, t(0), 0), (0, 0, t(0)), (t(0), t(5), t(0)),
        (t(0), t(8), t(9)), (t(0), t(1), t(5)), (t(0), t(3), t(1)),
    ])


@pytest.fixture(scope="session")
def arc_q13_size9(F13):
    e = F13.t
    return ArcConfig(F13, 3, [
        (e(0), 0, 0), (0, e(0), 0), (0, 0, e(0)), (e(0), e(2), e(3)),
        (e(0), e(6), e(4)), (e(0), e(9), e(9)), (e(0), e(4), e(6)),
        (e(0), e(11), e(5)), (e(0), e(0), e(8)),
    ])


@pytest.fixture(scope="session")
def arc_q13_size6(F13):
    e = F13.t
    return ArcConfig(F13, 3, [
        (e(0), 0, 0), (0, e(0), 0), (0, 0, e(0)), (e(0), e(10), e(2)),
        (e(0), e(2), e(11)), (e(0), e(9), e(4)),
    ])


@pytest.fixture(scope="session")
def arc_q81(F81):
    r = F81.t
    rows = [
        [0, None, None, None, None, None],
        [None, 0, None, None, None, None],
        [None, None, 0, None, None, None],
        [None, None, None, 0, None, None],
        [None, None, None, None, 0, None],
        [None, None, None, None, None, 0],
        [0, 0, 0, 0, 0, 0],
        [0, 58, 41, 14, 54, 48],
        [0, 25, 55, 43, 74, 58],
        [0, 1, 66, 22, 42, 65],
        [0, 76, 44, 21, 43, 5],
    ]
    pts = [tuple(0 if e is None else r(e) for e in row) for row in rows]
    return ArcConfig(F81, 6, pts)


@pytest.fixture(scope="session")
def hyperconic_f8(F8):
    pts = [(1, a, F8.mul(a, a)) for a in range(8)] + [(0, 0, 1), (0, 1, 0)]
    return ArcConfig(F8, 3, pts)


@pytest.fixture(scope="session")
def hyperconic_f4(F4):
    pts = [(1, a, F4.mul(a, a)) for a in range(4)] + [(0, 0, 1), (0, 1, 0)]
    return ArcConfig(F4, 3, pts)
