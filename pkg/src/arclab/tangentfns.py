"""Tangent functions of a full arc and the signed alpha coefficients.

For a (k-2)-subset A of an arc S with t = q+k-1-|S|, the tangent function
f_A is the product of the t linear forms whose kernels meet S exactly in
A.  Each form is canonically scaled (first nonzero coefficient 1), which
fixes f_A; every identity checked here is invariant under rescaling any
single f_A, so the choice is free.

The alpha coefficients multiply the sum-zero identity into a form whose
terms depend only on (k-1)-subsets.  All sign exponents reduce mod 2 and
follow the fixed arc order: F is the set of the first k-2 positions, a
subset's members are always taken in increasing position order, and the
transposition count s is the parity of the shuffle (F&A, F-A) -> F.
"""

from __future__ import annotations

from .arcgeom import (
    ArcConfig,
    cosecants_through,
    det_linear_coeffs,
    det_uC,
    det_uvA,
    eval_form,
    subset_iter,
)

__all__ = [
    "TangentFn",
    "tangent_fn",
    "arc_degree",
    "interpolate_fA",
    "check_sum_zero",
    "check_segre_sign",
    "AlphaTable",
    "alpha_table",
    "check_atoc",
    "check_theeqn",
    "shuffle_parity",
]


def arc_degree(arc: ArcConfig) -> int:
    """t = q + k - 1 - |S|: the number of co-secants through each A."""
    return arc.ctx.q + arc.k - 1 - arc.size


class TangentFn:
    """f_A as an evaluated product of its co-secant forms."""

    def __init__(self, arc, A, forms):
        self.arc = arc
        self.A = tuple(A)
        self.forms = tuple(forms)
        self.t = len(forms)

    def __call__(self, v) -> int:
        ctx = self.arc.ctx
        acc = 1
        for form in self.forms:
            acc = ctx.mul(acc, eval_form(ctx, form, v))
            if acc == 0:
                return 0
        return acc

    def at(self, i) -> int:
        """Evaluate at arc point i (nonzero whenever i is outside A)."""
        return self(self.arc.points[i])


def tangent_fn(arc: ArcConfig, A) -> TangentFn:
    """Tangent function of the (k-2)-subset A, cached on the arc."""
    A = tuple(sorted(A))
    cache = getattr(arc, "_tangent_cache", None)
    if cache is None:
        cache = {}
        arc._tangent_cache = cache
    fn = cache.get(A)
    if fn is None:
        forms = cosecants_through(A, arc)
        assert len(forms) == arc_degree(arc), "co-secant count violates t"
        fn = TangentFn(arc, A, forms)
        cache[A] = fn
    return fn


def interpolate_fA(arc: ArcConfig, A, values):
    """Evaluator for f_A from its values at |values| arc points.

    values maps arc positions e (outside A) to f_A(e); with d+1 of them
    the evaluator reproduces the degree-d homogeneous function

        f_A(x) = sum_e f_A(e) prod_{u != e} d_A(u, x) / d_A(u, e)

    over all of V_k, u running over the other value points.  Passing the
    values of a genuine tangent function at t+1 points of E - A for any
    (t+k-1)-subset E containing A recovers f_A everywhere.
    """
    ctx = arc.ctx
    A = tuple(sorted(A))
    pts = sorted(values)
    if any(e in A for e in pts):
        raise ValueError("value points must lie outside A")
    if not pts:
        raise ValueError("need at least one value point")
    a_vecs = arc.points_at(A)
    # d_A(u, .) is linear: precompute its coefficient vector per value point
    lin = {u: det_linear_coeffs(ctx, [arc.points[u]], a_vecs) for u in pts}
    terms = []
    for e in pts:
        denom = 1
        for u in pts:
            if u != e:
                denom = ctx.mul(denom, eval_form(ctx, lin[u], arc.points[e]))
        weight = ctx.div(values[e], denom)
        terms.append((weight, [lin[u] for u in pts if u != e]))

    def evaluator(x):
        acc = 0
        for weight, forms in terms:
            term = weight
            for form in forms:
                term = ctx.mul(term, eval_form(ctx, form, x))
                if term == 0:
                    break
            acc = ctx.add(acc, term)
        return acc

    return evaluator


def check_sum_zero(arc: ArcConfig, A, E) -> int:
    """Left side of the sum-zero identity; exactly 0 on genuine arcs.

    E must contain A and have size t+k, so the sum has t+2 terms
    f_A(e) * prod_{u in E-(A+{e})} d_A(u, e)^{-1}.
    """
    ctx = arc.ctx
    A = tuple(sorted(A))
    E = tuple(sorted(E))
    if not set(A) <= set(E):
        raise ValueError("E must contain A")
    if len(E) != arc_degree(arc) + arc.k:
        raise ValueError("E must have size t+k")
    fA = tangent_fn(arc, A)
    rest = [e for e in E if e not in A]
    acc = 0
    for e in rest:
        term = fA.at(e)
        for u in rest:
            if u != e:
                term = ctx.div(term, det_uvA(arc, arc.points[u], arc.points[e], A))
        acc = ctx.add(acc, term)
    return acc


def check_segre_sign(arc: ArcConfig, D, x, y, z) -> bool:
    """Lemma-of-tangents sign relation for the triple (x, y, z) over D."""
    ctx = arc.ctx
    D = tuple(sorted(D))
    if x == y:
        return True
    f = lambda B, e: tangent_fn(arc, B).at(e)
    Dx = tuple(sorted(D + (x,)))
    Dy = tuple(sorted(D + (y,)))
    Dz = tuple(sorted(D + (z,)))
    lhs = ctx.div(ctx.mul(f(Dx, y), f(Dz, x)), f(Dx, z))
    rhs = ctx.div(ctx.mul(f(Dy, x), f(Dz, y)), f(Dy, z))
    t = arc_degree(arc)
    if (t + 1) % 2:
        rhs = ctx.neg(rhs)
    return lhs == rhs


def shuffle_parity(left, right) -> int:
    """Parity of the permutation sorting the concatenation left+right.

    Both halves are increasing index tuples partitioning their union, so
    the parity equals the inversion count of the concatenation mod 2.
    """
    seq = tuple(left) + tuple(right)
    inv = 0
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                inv += 1
    return inv % 2


class AlphaTable:
    """Signed alpha coefficients of an arc, relative to F = first k-2 points.

    The degree t defaults to the arc's own co-secant count; values are
    computed lazily from the arc's tangent functions and cached.
    """

    def __init__(self, arc: ArcConfig):
        self.arc = arc
        self.t = arc_degree(arc)
        self.F = tuple(range(arc.k - 2))
        self._cache = {}

    def _f(self, B, e) -> int:
        return tangent_fn(self.arc, B).at(e)

    def _chain(self, D, xs, zs) -> int:
        """prod_i f_{D + {z_i..z_r, x_1..x_{i-1}}}(x_i) / f_{D + {z_{i+1}..z_r, x_1..x_i}}(z_i)."""
        ctx = self.arc.ctx
        r = len(xs)
        acc = 1
        for i in range(1, r + 1):
            num_set = tuple(sorted(D + zs[i - 1 :] + xs[: i - 1]))
            den_set = tuple(sorted(D + zs[i:] + xs[:i]))
            acc = ctx.mul(acc, ctx.div(self._f(num_set, xs[i - 1]), self._f(den_set, zs[i - 1])))
        return acc

    def alpha(self, B) -> int:
        """alpha_A for |B| = k-2, alpha_C for |B| = k-1."""
        B = tuple(sorted(B))
        val = self._cache.get(B)
        if val is not None:
            return val
        arc = self.arc
        ctx = arc.ctx
        k = arc.k
        F = set(self.F)
        D = tuple(i for i in B if i in F)
        xs = tuple(i for i in B if i not in F)
        zs = tuple(i for i in self.F if i not in B)
        r = len(zs)
        s = shuffle_parity(D, zs)
        if len(B) == k - 2:
            if len(xs) != r:
                raise ValueError("not a valid (k-2)-subset")
            val = self._chain(D, xs, zs)
        elif len(B) == k - 1:
            if len(xs) != r + 1:
                raise ValueError("not a valid (k-1)-subset")
            head = tuple(sorted(D + xs[:r]))
            val = ctx.mul(self._f(head, xs[r]), self._chain(D, xs[:r], zs))
        else:
            raise ValueError("alpha is defined for (k-2)- and (k-1)-subsets")
        if ((r + s) * (self.t + 1)) % 2:
            val = ctx.neg(val)
        self._cache[B] = val
        return val

    def all_alpha_A(self):
        return {A: self.alpha(A) for A in subset_iter(self.arc.size, self.arc.k - 2)}

    def all_alpha_C(self):
        return {C: self.alpha(C) for C in subset_iter(self.arc.size, self.arc.k - 1)}


def alpha_table(arc: ArcConfig) -> AlphaTable:
    table = getattr(arc, "_alpha_table", None)
    if table is None:
        table = AlphaTable(arc)
        arc._alpha_table = table
    return table


def check_atoc(table: AlphaTable, A, e) -> bool:
    """Recursion alpha_{A+{e}} = (-1)^{d(t+1)} alpha_A f_A(e), d = #{a in A : a > e}."""
    arc = table.arc
    ctx = arc.ctx
    A = tuple(sorted(A))
    rhs = ctx.mul(table.alpha(A), tangent_fn(arc, A).at(e))
    d = sum(1 for a in A if a > e)
    if (d * (table.t + 1)) % 2:
        rhs = ctx.neg(rhs)
    return table.alpha(tuple(sorted(A + (e,)))) == rhs


def check_theeqn(table: AlphaTable, A, E) -> int:
    """Left side of sum_{A < C <= E} alpha_C prod_{u in E-C} det(u,C)^{-1};
    exactly 0 on genuine arcs when |E| = k+t."""
    arc = table.arc
    ctx = arc.ctx
    A = tuple(sorted(A))
    E = tuple(sorted(E))
    if not set(A) <= set(E):
        raise ValueError("E must contain A")
    acc = 0
    for e in E:
        if e in A:
            continue
        C = tuple(sorted(A + (e,)))
        term = table.alpha(C)
        for u in E:
            if u not in C:
                term = ctx.div(term, det_uC(arc, arc.points[u], C))
        acc = ctx.add(acc, term)
    return acc
