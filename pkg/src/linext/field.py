"""Prime fields, quadratic towers over them, and simple residue extensions.

Elements of the prime field are plain ``int`` in ``range(p)``.  Elements of a
tower of height ``h`` are tuples of ``2**h`` base coordinates: the first half
is the part below the adjoined root, the second half its coefficient, so
``(a, b)`` means ``a + b*r`` with ``r**2`` equal to the tower parameter.

``SimpleExtension`` models ``F_p[t]/(g)`` for an irreducible ``g`` of any
degree.  It shares the element API with :class:`FieldDesc` so the generic
linear algebra in :mod:`linext.exactla` runs over either.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property

from sympy.polys.domains import ZZ
from sympy.polys import galoistools as gt

from .errors import NonResidue, NotPrime, TooSmall

# keeps products of two residues inside int64 with room for accumulation
WORD_SQRT_BOUND = 2**31


def _is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldDesc:
    """F_p or a quadratic tower F_{p^(2^h)} over it."""

    p: int
    tower: tuple = ()

    # -- shape -------------------------------------------------------------
    @property
    def height(self):
        return len(self.tower)

    @property
    def degree(self):
        return 2 ** self.height

    @property
    def order(self):
        return self.p ** self.degree

    @property
    def is_prime(self):
        return not self.tower

    def below(self):
        return FieldDesc(self.p, self.tower[:-1])

    def __repr__(self):
        if not self.tower:
            return f"F_{self.p}"
        return f"F_{self.p}^{self.degree}"

    # -- element helpers ---------------------------------------------------
    @property
    def zero(self):
        return 0 if not self.tower else (0,) * self.degree

    @property
    def one(self):
        return 1 if not self.tower else (1,) + (0,) * (self.degree - 1)

    def from_int(self, n):
        n %= self.p
        return n if not self.tower else (n,) + (0,) * (self.degree - 1)

    def coords(self, a):
        return (a,) if not self.tower else tuple(a)

    def from_coords(self, cs):
        cs = tuple(int(c) % self.p for c in cs)
        if len(cs) != self.degree:
            raise ValueError("coordinate vector has wrong length")
        return cs[0] if not self.tower else cs

    def embed(self, a, sub):
        """Image of ``a`` from the subfield ``sub`` (a prefix of this tower)."""
        cs = sub.coords(a)
        return self.from_coords(cs + (0,) * (self.degree - len(cs)))

    def from_index(self, n):
        """Deterministic enumeration: base-p digits, least significant first."""
        cs = []
        for _ in range(self.degree):
            cs.append(n % self.p)
            n //= self.p
        return self.from_coords(cs)

    def is_zero(self, a):
        return a == 0 if not self.tower else not any(a)

    # -- arithmetic --------------------------------------------------------
    def add(self, a, b):
        p = self.p
        if not self.tower:
            return (a + b) % p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        if not self.tower:
            return (a - b) % p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        if not self.tower:
            return (-a) % p
        return tuple((-x) % p for x in a)

    def _split(self, a):
        h = len(a) // 2
        if h == 1:
            return a[0], a[1]
        return a[:h], a[h:]

    def _join(self, x, y):
        if isinstance(x, int):
            return (x, y)
        return x + y

    def mul(self, a, b):
        if not self.tower:
            return a * b % self.p
        lo = self.below()
        a0, a1 = self._split(a)
        b0, b1 = self._split(b)
        c = self.tower[-1]
        t0 = lo.add(lo.mul(a0, b0), lo.mul(c, lo.mul(a1, b1)))
        t1 = lo.add(lo.mul(a0, b1), lo.mul(a1, b0))
        return self._join(t0, t1)

    def scale(self, a, n):
        """Multiply by a prime-field scalar."""
        p = self.p
        if not self.tower:
            return a * n % p
        return tuple(x * n % p for x in a)

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        if not self.tower:
            return pow(a, -1, self.p)
        lo = self.below()
        a0, a1 = self._split(a)
        c = self.tower[-1]
        norm = lo.sub(lo.mul(a0, a0), lo.mul(c, lo.mul(a1, a1)))
        ni = lo.inv(norm)
        return self._join(lo.mul(a0, ni), lo.neg(lo.mul(a1, ni)))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if not self.tower:
            return pow(a, e, self.p)
        result = self.one
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def frobenius(self, a):
        return self.pow(a, self.p)

    # -- squares -----------------------------------------------------------
    def is_square(self, a):
        if self.is_zero(a):
            return True
        return self.pow(a, (self.order - 1) // 2) == self.one

    @cached_property
    def _nonsquare(self):
        n = 1
        while True:
            z = self.from_index(n)
            if not self.is_zero(z) and not self.is_square(z):
                return z
            n += 1


def make_prime_field(p):
    """The prime field F_p for an odd prime ``p``."""
    p = int(p)
    if p <= 2:
        raise TooSmall(f"p={p} must exceed 2")
    if not _is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p >= WORD_SQRT_BOUND:
        raise TooSmall(f"p={p} exceeds the machine-word bound {WORD_SQRT_BOUND}")
    return FieldDesc(p)


def extend_quadratic(f):
    """Adjoin the square root of the smallest non-residue of ``f``."""
    return FieldDesc(f.p, f.tower + (f._nonsquare,))


def sqrt(a, f):
    """Square root with the lexicographically smaller coordinate vector.

    Tonelli-Shanks in the multiplicative group of ``f``.  Raises
    :class:`NonResidue` when ``a`` is not a square in ``f``.
    """
    if f.is_zero(a):
        return f.zero
    if not f.is_square(a):
        raise NonResidue(f"{a} is not a square in {f!r}")
    q = f.order
    t, s = q - 1, 0
    while t % 2 == 0:
        t //= 2
        s += 1
    z = f._nonsquare
    m = s
    c = f.pow(z, t)
    x = f.pow(a, (t + 1) // 2)
    b = f.pow(a, t)
    one = f.one
    while b != one:
        i, bb = 0, b
        while bb != one:
            bb = f.mul(bb, bb)
            i += 1
        w = c
        for _ in range(m - i - 1):
            w = f.mul(w, w)
        x = f.mul(x, w)
        c = f.mul(w, w)
        b = f.mul(b, c)
        m = i
    y = f.neg(x)
    return x if f.coords(x) <= f.coords(y) else y


# ---------------------------------------------------------------------------
# residue fields F_p[t]/(g) of arbitrary degree


def _trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


@dataclass(frozen=True)
class SimpleExtension:
    """F_p[t]/(g) with ``g`` monic irreducible, coefficients low to high."""

    p: int
    modulus: tuple
    tower: tuple = dc_field(default=(), compare=False)

    @property
    def degree(self):
        return len(self.modulus) - 1

    @property
    def order(self):
        return self.p ** self.degree

    @property
    def is_prime(self):
        return self.degree == 1

    def __repr__(self):
        return f"F_{self.p}[t]/({self.modulus})"

    @property
    def zero(self):
        return (0,) * self.degree

    @property
    def one(self):
        return (1,) + (0,) * (self.degree - 1)

    @property
    def gen(self):
        if self.degree == 1:
            return (-self.modulus[0] % self.p,)
        return (0, 1) + (0,) * (self.degree - 2)

    def from_int(self, n):
        return (n % self.p,) + (0,) * (self.degree - 1)

    def coords(self, a):
        return tuple(a)

    def from_coords(self, cs):
        cs = tuple(int(c) % self.p for c in cs)
        return cs + (0,) * (self.degree - len(cs))

    def embed(self, a, sub):
        if not (isinstance(sub, FieldDesc) and sub.is_prime):
            raise ValueError("only the prime subfield embeds into a residue field")
        return self.from_int(a)

    def is_zero(self, a):
        return not any(a)

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple((-x) % p for x in a)

    def scale(self, a, n):
        p = self.p
        return tuple(x * n % p for x in a)

    def mul(self, a, b):
        p, g, d = self.p, self.modulus, self.degree
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k] % p
            if c:
                for j in range(d):
                    prod[k - d + j] -= c * g[j]
        return tuple(c % p for c in prod[:d])

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        fa = _trim(list(a))[::-1]
        g = list(self.modulus)[::-1]
        s, _, h = gt.gf_gcdex(fa, g, self.p, ZZ)
        lead = int(h[-1]) if h else 1
        s = gt.gf_mul_ground(s, pow(lead, -1, self.p), self.p, ZZ)
        return self.from_coords([int(c) for c in s[::-1]])

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        result = self.one
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def frobenius(self, a):
        return self.pow(a, self.p)


def residue_field(p, g):
    """``SimpleExtension`` from a monic irreducible ``g`` given high to low."""
    return SimpleExtension(int(p), tuple(int(c) % p for c in reversed(g)))


def factor_univariate(coeffs, p):
    """Factor a polynomial over F_p; coefficients high to low.

    Returns ``[(factor_high_to_low, multiplicity), ...]`` with monic factors.
    """
    f = gt.gf_from_int_poly([int(c) for c in coeffs], p)
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    _, facs = gt.gf_factor(f, p, ZZ)
    return [([int(c) for c in g], k) for g, k in facs]
