"""The dual hypersurface of an arc.

For an arc S with t co-secants through every (k-2)-subset, the surface is
the sum over (k-1)-subsets C of a fixed reference subset E of

    alpha_C^m  prod_{z in E-C} det(z, Y_1, ..., Y_{k-1}) / det(z, C),

with m = 1 and |E| = k+t-1 for even q, m = 2 and |E| = k+2t-1 for odd q.
Expanding det(z, Y_1..Y_{k-1}) along its first row turns each factor into
the pairing z . Z with the dual coordinates Z_i = (-1)^{i-1} det(Y's with
coordinate i deleted), so the surface is evaluated directly on dual
vectors; the Y-form and the Z-form agree definitionally.  It vanishes on
the dual of every co-secant hyperplane of S.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arcgeom import (
    ArcConfig,
    det_full,
    det_uC,
    eval_form,
    kernel_of_points,
    pencil_through,
    subset_iter,
)
from .tangentfns import alpha_table, arc_degree, tangent_fn

__all__ = [
    "ArcTooSmallError",
    "ZeroVectorError",
    "DualSurface",
    "build_surface",
    "eval_surface",
    "eval_dual",
    "dual_coords",
    "theorem9_check",
]


class ArcTooSmallError(ValueError):
    pass


class ZeroVectorError(ValueError):
    pass


@dataclass(frozen=True)
class DualSurface:
    arc: ArcConfig
    E: tuple
    parity: str          # "even" | "odd"
    t: int
    degree: int          # t for even q, 2t for odd q
    coeffs: dict         # C -> alpha_C^m * prod_{z in E-C} det(z, C)^{-1}


def build_surface(arc: ArcConfig, E=None) -> DualSurface:
    """Assemble the surface data for the arc, E defaulting to the first
    admissible prefix (size k+t-1 for even q, k+2t-1 for odd q)."""
    ctx = arc.ctx
    k = arc.k
    t = arc_degree(arc)
    parity = "even" if ctx.q % 2 == 0 else "odd"
    esize = k + t - 1 if parity == "even" else k + 2 * t - 1
    if arc.size < esize:
        raise ArcTooSmallError(
            f"need |S| >= {esize} to choose E for {parity} q, have {arc.size}"
        )
    E = tuple(range(esize)) if E is None else tuple(sorted(E))
    if len(E) != esize:
        raise ArcTooSmallError(f"E must have size {esize}, got {len(E)}")
    table = alpha_table(arc)
    coeffs = {}
    for Cpos in subset_iter(esize, k - 1):
        C = tuple(E[i] for i in Cpos)
        a = table.alpha(C)
        if parity == "odd":
            a = ctx.mul(a, a)
        for z in E:
            if z not in C:
                a = ctx.div(a, det_uC(arc, arc.points[z], C))
        coeffs[C] = a
    degree = t if parity == "even" else 2 * t
    return DualSurface(arc, E, parity, t, degree, coeffs)


def dual_coords(ctx, vectors):
    """Z_i = (-1)^{i-1} det(vectors with coordinate i deleted): the dual
    vector of the span of k-1 vectors (zero vector if dependent)."""
    k = len(vectors) + 1
    out = []
    sign = 1
    for i in range(k):
        rows = [v[:i] + v[i + 1 :] for v in [tuple(u) for u in vectors]]
        d = det_full(ctx, rows)
        out.append(d if sign > 0 else ctx.neg(d))
        sign = -sign
    return tuple(out)


def eval_dual(surface: DualSurface, z) -> int:
    """Evaluate the surface at a dual vector; homogeneous of the stated
    degree, and zero on the dual of every co-secant of the arc."""
    ctx = surface.arc.ctx
    z = tuple(z)
    if not any(z):
        raise ZeroVectorError("the zero vector is not a dual point")
    acc = 0
    pts = surface.arc.points
    for C, coef in surface.coeffs.items():
        term = coef
        for u in surface.E:
            if u not in C:
                term = ctx.mul(term, eval_form(ctx, pts[u], z))
                if term == 0:
                    break
        acc = ctx.add(acc, term)
    return acc


def eval_surface(surface: DualSurface, ys) -> int:
    """Evaluate at k-1 vector arguments (degenerate tuples allowed)."""
    arc = surface.arc
    if len(ys) != arc.k - 1:
        raise ValueError(f"need k-1 = {arc.k - 1} vector arguments")
    z = dual_coords(arc.ctx, ys)
    if not any(z):
        # dependent arguments: every determinant factor vanishes
        return next(iter(surface.coeffs.values())) if surface.degree == 0 else 0
    return eval_dual(surface, z)


def _pencil_sample_points(arc: ArcConfig, A, count):
    """Points x, pairwise independent modulo span(A), one per pencil member."""
    ctx = arc.ctx
    k = arc.k
    rows = arc.points_at(A)
    basis = []
    for j in range(k):
        e = [0] * k
        e[j] = 1
        if len(kernel_of_points(ctx, rows + [tuple(e)] + basis, k)) == k - len(rows) - len(basis) - 1:
            basis.append(tuple(e))
            if len(basis) == 2:
                break
    u1, u2 = basis
    out = []
    for form in pencil_through(A, arc):
        b2 = eval_form(ctx, form, u2)
        if b2 == 0:
            out.append(u2)
        else:
            lam = ctx.neg(ctx.div(eval_form(ctx, form, u1), b2))
            out.append(tuple(ctx.add(a, ctx.mul(lam, b)) for a, b in zip(u1, u2)))
        if len(out) == count:
            break
    assert len(out) == count, "pencil too small for the requested sample count"
    return out


def theorem9_check(surface: DualSurface, A) -> bool:
    """Whether the surface restricted to (X, A) equals alpha_A f_A(X)
    (even q) or its square (odd q), as polynomials.

    Both sides are homogeneous of the surface degree in the two
    coordinates transverse to span(A), so agreement at degree+1 pairwise
    independent sample directions proves the identity; A need not be a
    subset of E."""
    arc = surface.arc
    ctx = arc.ctx
    A = tuple(sorted(A))
    table = alpha_table(arc)
    alpha = table.alpha(A)
    fA = tangent_fn(arc, A)
    a_vecs = arc.points_at(A)
    for x in _pencil_sample_points(arc, A, surface.degree + 1):
        lhs = eval_surface(surface, [x] + a_vecs)
        rhs = ctx.mul(alpha, fA(x))
        if surface.parity == "odd":
            rhs = ctx.mul(rhs, rhs)
        if lhs != rhs:
            return False
    return True
