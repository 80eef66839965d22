"""Vectors and arcs of V_k(F_q).

An arc is an ordered list of vectors in which every k-subset is a basis.
The list order is the fixed ordering the sign bookkeeping in the tangent
function machinery refers to; subsets are tuples of strictly increasing
positions into that order, and determinants involving a subset always take
its members in increasing order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

__all__ = [
    "BudgetExceededError",
    "ArcConfig",
    "SearchResult",
    "det_full",
    "det_uC",
    "det_uvA",
    "det_linear_coeffs",
    "validate_arc",
    "canonical_form",
    "eval_form",
    "kernel_of_points",
    "pencil_through",
    "cosecants_through",
    "projective_points",
    "extensions_of",
    "complete_search",
    "subset_iter",
    "subset_rank",
    "subset_unrank",
]


class BudgetExceededError(RuntimeError):
    pass


# ----------------------------------------------------------------------
# determinants
# ----------------------------------------------------------------------


def det_full(ctx, rows) -> int:
    """Exact determinant of the k x k matrix whose i-th row is rows[i]."""
    k = len(rows)
    if any(len(r) != k for r in rows):
        raise ValueError("determinant requires a square matrix")
    m = [list(r) for r in rows]
    det = 1
    for c in range(k):
        piv = next((r for r in range(c, k) if m[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = ctx.neg(det)
        det = ctx.mul(det, m[c][c])
        inv = ctx.inv(m[c][c])
        for r in range(c + 1, k):
            if m[r][c]:
                f = ctx.mul(m[r][c], inv)
                for cc in range(c, k):
                    m[r][cc] = ctx.sub(m[r][cc], ctx.mul(f, m[c][cc]))
    return det


def det_uC(arc: "ArcConfig", u, C) -> int:
    """det(u, C) with the members of C in increasing arc order."""
    return det_full(arc.ctx, [u] + arc.points_at(C))


def det_uvA(arc: "ArcConfig", u, v, A) -> int:
    """det(u, v, A): the alternating form d_A(u, v)."""
    return det_full(arc.ctx, [u, v] + arc.points_at(A))


def det_linear_coeffs(ctx, before, after):
    """Coefficients c of the linear form x -> det(before + [x] + after)."""
    k = len(before) + 1 + len(after)
    coeffs = []
    for j in range(k):
        e = [0] * k
        e[j] = 1
        coeffs.append(det_full(ctx, list(before) + [e] + list(after)))
    return tuple(coeffs)


# ----------------------------------------------------------------------
# arcs
# ----------------------------------------------------------------------


def validate_arc(ctx, k, points):
    """None if every k-subset of points is a basis, else a witness subset."""
    pts = [tuple(p) for p in points]
    for p in pts:
        if len(p) != k:
            raise ValueError(f"vector {p} does not have length {k}")
        if not any(p):
            return (pts.index(p),)  # zero vector: the witness is the point itself
    for sub in itertools.combinations(range(len(pts)), k):
        if det_full(ctx, [pts[i] for i in sub]) == 0:
            return sub
    return None


class ArcConfig:
    """Ordered arc of V_k(F_q); immutable after validation."""

    def __init__(self, ctx, k, points, check=True):
        if k < 3:
            raise ValueError("dimension k must be at least 3")
        self.ctx = ctx
        self.k = k
        self.points = tuple(tuple(int(x) for x in p) for p in points)
        if len(self.points) > ctx.q + k - 1:
            raise ValueError(
                f"arc size {len(self.points)} exceeds q+k-1 = {ctx.q + k - 1}"
            )
        if check:
            witness = validate_arc(ctx, k, self.points)
            if witness is not None:
                raise ValueError(f"not an arc: subset {witness} is degenerate")

    @property
    def size(self) -> int:
        return len(self.points)

    def __len__(self):
        return len(self.points)

    def point(self, i):
        return self.points[i]

    def points_at(self, ids):
        return [self.points[i] for i in ids]

    def prefix(self, m) -> "ArcConfig":
        """Sub-arc of the first m points (no re-validation needed)."""
        return ArcConfig(self.ctx, self.k, self.points[:m], check=False)

    def extend(self, v, check=True) -> "ArcConfig":
        return ArcConfig(self.ctx, self.k, self.points + (tuple(v),), check=check)

    def __repr__(self):
        return f"ArcConfig({self.ctx!r}, k={self.k}, size={self.size})"


# ----------------------------------------------------------------------
# linear forms, pencils, co-secants
# ----------------------------------------------------------------------


def canonical_form(ctx, coeffs):
    """Scale a nonzero dual vector so its first nonzero coefficient is 1."""
    coeffs = tuple(int(c) for c in coeffs)
    lead = next((c for c in coeffs if c), None)
    if lead is None:
        raise ValueError("zero vector is not a linear form")
    if lead == 1:
        return coeffs
    inv = ctx.inv(lead)
    return tuple(ctx.mul(inv, c) for c in coeffs)


def eval_form(ctx, form, v) -> int:
    acc = 0
    for c, x in zip(form, v):
        if c and x:
            acc = ctx.add(acc, ctx.mul(c, x))
    return acc


def kernel_of_points(ctx, rows, width):
    """Basis of {w : row . w = 0 for all rows}, by elimination."""
    m = [list(r) for r in rows]
    nrows = len(m)
    pivots = []
    r = 0
    for c in range(width):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = ctx.inv(m[r][c])
        m[r] = [ctx.mul(inv, x) for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [ctx.sub(x, ctx.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(width) if c not in pivots]
    basis = []
    for fc in free:
        vec = [0] * width
        vec[fc] = 1
        for i, pc in enumerate(pivots):
            vec[pc] = ctx.neg(m[i][fc])
        basis.append(tuple(vec))
    return basis


def pencil_through(A, arc: ArcConfig):
    """The q+1 canonical forms vanishing on the (k-2)-space spanned by A."""
    ctx = arc.ctx
    basis = kernel_of_points(ctx, arc.points_at(A), arc.k)
    if len(basis) != 2:
        raise ValueError("subset does not span a (k-2)-space")
    b1, b2 = basis
    forms = {canonical_form(ctx, b2)}
    for lam in ctx.elements():
        coeffs = tuple(ctx.add(x, ctx.mul(lam, y)) for x, y in zip(b1, b2))
        forms.add(canonical_form(ctx, coeffs))
    assert len(forms) == ctx.q + 1
    return sorted(forms)


def cosecants_through(A, arc: ArcConfig):
    """Forms of the t hyperplanes meeting the arc exactly in A."""
    ctx = arc.ctx
    others = [p for i, p in enumerate(arc.points) if i not in A]
    out = []
    for form in pencil_through(A, arc):
        if all(eval_form(ctx, form, p) != 0 for p in others):
            out.append(form)
    return out


# ----------------------------------------------------------------------
# projective enumeration, extension and completion search
# ----------------------------------------------------------------------


def projective_points(ctx, k):
    """One representative per projective point, first nonzero coord 1,
    in lexicographic order of coordinate tuples."""
    q = ctx.q
    for lead in range(k):
        prefix = (0,) * lead + (1,)
        for rest in itertools.product(range(q), repeat=k - 1 - lead):
            yield prefix + rest


def _compatible(ctx, k, points, v):
    """Whether points + [v] still has the arc property (points is an arc)."""
    for sub in itertools.combinations(points, k - 1):
        if det_full(ctx, [v] + list(sub)) == 0:
            return False
    return True


def extensions_of(arc: ArcConfig):
    """All projective representatives v with arc + v still an arc."""
    ctx = arc.ctx
    return [
        v
        for v in projective_points(ctx, arc.k)
        if _compatible(ctx, arc.k, arc.points, v)
    ]


@dataclass(frozen=True)
class SearchResult:
    complete_sizes: tuple | None
    arcs: tuple | None
    nodes: int


def complete_search(arc: ArcConfig, target_size=None, budget=2_000_000) -> SearchResult:
    """Exhaustive DFS over extensions of the arc.

    Without a target, returns the sorted sizes of all complete arcs
    containing the input.  With a target, returns every arc of exactly
    that size containing the input (as full point tuples, each extension
    set enumerated once in candidate order).  Raises BudgetExceededError
    when the node count exceeds the budget, so a returned result is an
    exhaustion proof.
    """
    ctx = arc.ctx
    k = arc.k
    if target_size is not None and target_size > ctx.q + k - 1:
        raise ValueError(f"target size {target_size} exceeds q+k-1")
    base = list(arc.points)
    cands = extensions_of(arc)
    sizes = set()
    found = []
    nodes = 0

    def dfs(cur, cands, start):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceededError(f"search exceeded {budget} nodes")
        if target_size is not None:
            if len(cur) >= target_size:
                if len(cur) == target_size:
                    found.append(tuple(cur))
                return
        elif not cands:
            sizes.add(len(cur))
            return
        for i in range(start, len(cands)):
            v = cands[i]
            nxt = []
            for j, w in enumerate(cands):
                if j == i or not _compatible_pair(ctx, k, cur, v, w):
                    continue
                nxt.append((j, w))
            cur.append(v)
            dfs(cur, [w for _, w in nxt], _lower_count(nxt, i))
            cur.pop()

    def _compatible_pair(ctx, k, cur, v, w):
        # w stays a candidate after adding v: check only new subsets with v
        for sub in itertools.combinations(cur, k - 2):
            if det_full(ctx, [w, v] + list(sub)) == 0:
                return False
        return True

    def _lower_count(indexed, i):
        return sum(1 for j, _ in indexed if j < i)

    dfs(base, cands, 0)
    if target_size is not None:
        return SearchResult(None, tuple(found), nodes)
    return SearchResult(tuple(sorted(sizes)), None, nodes)


# ----------------------------------------------------------------------
# colexicographic subset indexing
# ----------------------------------------------------------------------


def subset_iter(n, arity):
    """All arity-subsets of range(n) in colexicographic order."""
    if arity == 0:
        yield ()
        return
    for last in range(arity - 1, n):
        for rest in subset_iter(last, arity - 1):
            yield rest + (last,)


def subset_rank(ids) -> int:
    """Colex rank of a sorted index tuple."""
    return sum(comb(c, j + 1) for j, c in enumerate(ids))


def subset_unrank(r, arity):
    """Sorted index tuple of colex rank r among arity-subsets."""
    out = [0] * arity
    k = arity
    while k > 0:
        n = k - 1
        while comb(n + 1, k) <= r:
            n += 1
        r -= comb(n, k)
        k -= 1
        out[k] = n
    return tuple(out)
