"""Vectorised numpy arithmetic on arrays of field element codes.

Multiplication uses an extended antilog table indexed by summed logs, with
the log of zero mapped to a sentinel large enough that any sum involving
it lands in the zero-filled tail.  Addition is digit-wise in base p, which
is exact for every supported field order.
"""

from __future__ import annotations

import numpy as np


class VecOps:
    def __init__(self, ctx):
        self.ctx = ctx
        q = ctx.q
        n1 = q - 1
        log = np.full(q, 2 * n1, dtype=np.int64)
        for v in range(1, q):
            log[v] = ctx.log[v]
        self.log = log
        ext = np.zeros(4 * n1 + 1, dtype=np.int64)
        for i in range(2 * n1 - 1):
            ext[i] = ctx.exp[i % n1]
        self.exp_ext = ext
        inv = np.zeros(q, dtype=np.int64)
        for v in range(1, q):
            inv[v] = ctx.inv(v)
        self.inv_table = inv
        neg = np.zeros(q, dtype=np.int64)
        for v in range(q):
            neg[v] = ctx.neg(v)
        self.neg_table = neg

    def mul(self, a, b):
        """Element-wise (broadcasting) product of element-code arrays."""
        return self.exp_ext[self.log[a] + self.log[b]]

    def add(self, a, b):
        ctx = self.ctx
        p = ctx.p
        if ctx.h == 1:
            return (a + b) % p
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        s = 1
        for _ in range(ctx.h):
            out += ((a // s + b // s) % p) * s
            s *= p
        return out

    def neg(self, a):
        return self.neg_table[a]

    def sub(self, a, b):
        return self.add(a, self.neg_table[b])

    def inv(self, a):
        return self.inv_table[a]
