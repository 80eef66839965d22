"""Exact arithmetic in GF(p^h) backed by log/antilog tables.

Elements are plain ints in ``0..q-1``.  For a prime field the int is the
residue mod p.  For an extension field it packs the coefficient vector of
the residue polynomial in base p, low degree first, so ``p`` is the class
of the indeterminate x.  0 and 1 are the additive and multiplicative
identities in every field.

Multiplication, inversion and powers go through the discrete-log tables of
a fixed primitive element; addition works digit-wise in base p.  The
primitive element is the smallest primitive root mod p when h = 1 and the
class of x otherwise, which requires the defining polynomial to be
primitive (the shipped Conway polynomials are; a user-supplied modulus is
checked).
"""

from __future__ import annotations

from functools import reduce

__all__ = [
    "FieldCtx",
    "FieldError",
    "NotPrimeError",
    "ReduciblePolynomialError",
    "NonPrimitiveGeneratorError",
    "UnsupportedFieldError",
    "ElementSyntaxError",
    "ExponentOutOfRangeError",
    "conway_polynomial",
]

TABLE_CAP = 1 << 20  # largest supported field order


class FieldError(ValueError):
    """Base class for field construction and parsing errors."""


class NotPrimeError(FieldError):
    pass


class ReduciblePolynomialError(FieldError):
    pass


class NonPrimitiveGeneratorError(FieldError):
    pass


class UnsupportedFieldError(FieldError):
    pass


class ElementSyntaxError(FieldError):
    pass


class ExponentOutOfRangeError(FieldError):
    pass


# Conway polynomials C_{p,h}, coefficients high degree -> low.  Standard
# table values (lexicographically least primitive polynomials compatible
# with all subfields); shipped for p <= 13, h <= 4 so that GF(4), GF(8),
# GF(9), GF(81), ... are reproducible across systems.
_CONWAY = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 0, 1, 1),
    (2, 4): (1, 0, 0, 1, 1),
    (3, 2): (1, 2, 2),
    (3, 3): (1, 0, 2, 1),
    (3, 4): (1, 2, 0, 0, 2),
    (5, 2): (1, 4, 2),
    (5, 3): (1, 0, 3, 3),
    (5, 4): (1, 0, 4, 4, 2),
    (7, 2): (1, 6, 3),
    (7, 3): (1, 6, 0, 4),
    (7, 4): (1, 0, 5, 4, 3),
    (11, 2): (1, 7, 2),
    (11, 3): (1, 0, 2, 9),
    (11, 4): (1, 0, 8, 10, 2),
    (13, 2): (1, 12, 2),
    (13, 3): (1, 0, 2, 11),
    (13, 4): (1, 0, 3, 12, 2),
}


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _smallest_primitive_root(p: int) -> int:
    phi = p - 1
    fac = set()
    m, d = phi, 2
    while d * d <= m:
        while m % d == 0:
            fac.add(d)
            m //= d
        d += 1
    if m > 1:
        fac.add(m)
    for g in range(2, p):
        if all(pow(g, phi // f, p) != 1 for f in fac):
            return g
    raise NonPrimitiveGeneratorError(f"no primitive root mod {p}")


def _poly_divides(d: list[int], f: list[int], p: int) -> bool:
    """Whether monic d divides f over GF(p); coefficients low -> high."""
    r = f[:]
    while len(r) >= len(d) and any(r):
        while r and r[-1] == 0:
            r.pop()
        if len(r) < len(d):
            break
        c = r[-1]
        off = len(r) - len(d)
        for i, di in enumerate(d):
            r[off + i] = (r[off + i] - c * di) % p
        r.pop()
    return not any(r)


def _check_irreducible(coeffs_low: list[int], p: int) -> None:
    """Trial division by all monic polynomials of degree <= h/2."""
    h = len(coeffs_low) - 1
    for deg in range(1, h // 2 + 1):
        # enumerate monic polynomials of this degree
        for idx in range(p ** deg):
            d = []
            m = idx
            for _ in range(deg):
                d.append(m % p)
                m //= p
            d.append(1)
            if _poly_divides(d, coeffs_low, p):
                raise ReduciblePolynomialError(
                    f"modulus is divisible by a degree-{deg} factor over GF({p})"
                )


def conway_polynomial(p: int, h: int):
    """Shipped Conway polynomial for (p, h), coefficients high -> low."""
    if h == 1:
        g = _smallest_primitive_root(p)
        return (1, (-g) % p)
    try:
        return _CONWAY[(p, h)]
    except KeyError:
        raise UnsupportedFieldError(
            f"no built-in modulus for GF({p}^{h}); supply one explicitly"
        ) from None


class FieldCtx:
    """Immutable context for GF(p^h): tables, primitive element, modulus."""

    def __init__(self, p: int, h: int = 1, modulus=None):
        if not _is_prime(p):
            raise NotPrimeError(f"{p} is not prime")
        if h < 1:
            raise FieldError(f"extension degree must be >= 1, got {h}")
        q = p ** h
        if q < 3:
            raise UnsupportedFieldError("field order must be at least 3")
        if q > TABLE_CAP:
            raise UnsupportedFieldError(f"field order {q} exceeds table cap {TABLE_CAP}")
        self.p = p
        self.h = h
        self.q = q

        if modulus is None:
            modulus = conway_polynomial(p, h)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != h + 1:
            raise FieldError(f"modulus must have degree {h} ({h + 1} coefficients)")
        if modulus[0] != 1:
            raise FieldError("modulus must be monic")
        self.modulus = modulus

        if h == 1:
            g = (-modulus[1]) % p
            # order check below covers a user-supplied non-primitive root
            exp = [1]
            x = 1
            for _ in range(q - 2):
                x = x * g % p
                if x == 1:
                    raise NonPrimitiveGeneratorError(
                        f"{g} is not a primitive root mod {p}"
                    )
                exp.append(x)
            self.generator = g
        else:
            low = list(reversed(modulus))
            _check_irreducible(low, p)
            # antilog by repeated multiplication with x, digits low->high
            exp = [1]
            cur = [1] + [0] * (h - 1)
            for _ in range(q - 2):
                cur = [0] + cur
                lead = cur.pop()
                if lead:
                    cur = [(c - lead * m) % p for c, m in zip(cur, low)]
                val = 0
                for c in reversed(cur):
                    val = val * p + c
                if val == 1:
                    raise NonPrimitiveGeneratorError(
                        "x is not primitive for the given modulus"
                    )
                exp.append(val)
            self.generator = p  # the class of x

        if len(set(exp)) != q - 1:
            raise NonPrimitiveGeneratorError("antilog table is not a bijection")
        self.exp = tuple(exp)
        log = [0] * q
        for i, v in enumerate(exp):
            log[v] = i
        self.log = tuple(log)

        if h > 1:
            # digit-wise addition table per power of p would be overkill;
            # keep the per-digit strides for add()
            self._pows = tuple(p ** i for i in range(h))
        self._vec = None  # lazy numpy helper, see vec_ops()

    # ------------------------------------------------------------------
    # arithmetic
    # ------------------------------------------------------------------
    def add(self, a: int, b: int) -> int:
        p = self.p
        if self.h == 1:
            return (a + b) % p
        out = 0
        for s in self._pows:
            out += ((a // s + b // s) % p) * s
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def neg(self, a: int) -> int:
        p = self.p
        if self.h == 1:
            return (-a) % p
        out = 0
        for s in self._pows:
            out += ((-(a // s)) % p) * s
        return out

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self.exp[(-self.log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("zero has no inverse")
            return 0
        return self.exp[(self.log[a] * e) % (self.q - 1)]

    def prod(self, items) -> int:
        return reduce(self.mul, items, 1)

    def elements(self):
        return range(self.q)

    def nonzero(self):
        return range(1, self.q)

    # ------------------------------------------------------------------
    # text syntax: "0", "t^e", bare integers for prime fields
    # ------------------------------------------------------------------
    def parse(self, text: str) -> int:
        text = text.strip()
        if text == "0":
            return 0
        if text.startswith("t^"):
            body = text[2:]
            if not body or not (body.isdigit() or (body[0] == "-" and body[1:].isdigit())):
                raise ElementSyntaxError(f"bad exponent in {text!r}")
            e = int(body)
            if not 0 <= e <= self.q - 2:
                raise ExponentOutOfRangeError(
                    f"exponent {e} outside 0..{self.q - 2}"
                )
            return self.exp[e]
        if self.h == 1 and text.isdigit():
            v = int(text)
            if v >= self.p:
                raise ExponentOutOfRangeError(f"{v} outside 0..{self.p - 1}")
            return v
        raise ElementSyntaxError(f"cannot parse field element {text!r}")

    def format(self, a: int) -> str:
        if not 0 <= a < self.q:
            raise FieldError(f"{a} is not an element code of GF({self.q})")
        if a == 0:
            return "0"
        return f"t^{self.log[a]}"

    def t(self, e: int) -> int:
        """The element (primitive element)**e."""
        return self.exp[e % (self.q - 1)]

    # ------------------------------------------------------------------
    def vec_ops(self):
        """Vectorised numpy arithmetic on element-code arrays (cached)."""
        if self._vec is None:
            from . import _vecops

            self._vec = _vecops.VecOps(self)
        return self._vec

    def __repr__(self):
        if self.h == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.h})"

    def __eq__(self, other):
        return (
            isinstance(other, FieldCtx)
            and (self.p, self.h, self.modulus) == (other.p, other.h, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.h, self.modulus))


def field_new(p: int, h: int = 1, modulus=None) -> FieldCtx:
    """Construct a field context; see FieldCtx."""
    return FieldCtx(p, h, modulus)
