"""Exact coefficient rings and their automorphisms.

Every ring in the closed list below carries decidable equality and exact
arithmetic, which is what makes the lifting criteria elsewhere in the
toolkit terminate:

* Integers           -- Python ints
* Rationals          -- fractions.Fraction
* PrimeField(p)      -- ints reduced mod p
* FiniteField(p, k)  -- tuples of k ints: coefficients in the basis
                        1, x, ..., x^(k-1) of F_p[x]/(m(x)) for the
                        lexicographically smallest monic irreducible m
* IntegersMod(n)     -- ints reduced mod n, n >= 2 (not necessarily prime)
* Product(base, w)   -- w-tuples of base elements, componentwise ops

Elements are plain immutable Python values; the ring object supplies the
operations.  Nothing here is ever represented in floating point.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as _iter_product

from .errors import RingMismatchError, UnsupportedRingError


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class Ring:
    """Base class; subclasses implement the arithmetic on raw elements."""

    kind = "abstract"
    is_field = False

    def zero(self):
        return self.of_int(0)

    def one(self):
        return self.of_int(1)

    def of_int(self, c):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def is_zero(self, a):
        return a == self.zero()

    def contains(self, a):
        """Cheap structural check that `a` is a well-formed element."""
        raise NotImplementedError

    def random_element(self, rng, bound=3):
        """Seeded sampling used by the batch certifiers."""
        raise NotImplementedError

    def __ne__(self, other):
        return not self.__eq__(other)


class IntegerRing(Ring):
    kind = "Integers"

    def of_int(self, c):
        return int(c)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def contains(self, a):
        return isinstance(a, int)

    def random_element(self, rng, bound=3):
        return rng.randint(-bound, bound)

    def __eq__(self, other):
        return isinstance(other, IntegerRing)

    def __hash__(self):
        return hash("Integers")

    def __repr__(self):
        return "Integers"


class RationalField(Ring):
    kind = "Rationals"
    is_field = True

    def of_int(self, c):
        return Fraction(c)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        return 1 / a

    def contains(self, a):
        return isinstance(a, Fraction)

    def random_element(self, rng, bound=3):
        return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Rationals")

    def __repr__(self):
        return "Rationals"


class PrimeFieldRing(Ring):
    kind = "PrimeField"
    is_field = True

    def __init__(self, p):
        if not _is_prime(p):
            raise ValueError(f"PrimeField modulus {p} is not prime")
        self.p = p

    def of_int(self, c):
        return c % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def contains(self, a):
        return isinstance(a, int) and 0 <= a < self.p

    def random_element(self, rng, bound=3):
        return rng.randrange(self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeFieldRing) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


def _poly_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mulmod(a, b, modulus, p):
    # multiply coefficient lists over F_p and reduce mod the monic `modulus`
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    k = len(modulus) - 1
    for d in range(len(out) - 1, k - 1, -1):
        c = out[d]
        if c:
            out[d] = 0
            for j in range(k):
                out[d - k + j] = (out[d - k + j] - c * modulus[j]) % p
    return _poly_trim(out)


def _poly_divmod(a, b, p):
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    lb_inv = pow(lb, p - 2, p)
    q = [0] * max(0, len(a) - db)
    while len(a) - 1 >= db and _poly_trim(a):
        a = _poly_trim(a)
        if len(a) - 1 < db:
            break
        d = len(a) - 1 - db
        c = (a[-1] * lb_inv) % p
        q[d] = c
        for j in range(len(b)):
            a[d + j] = (a[d + j] - c * b[j]) % p
    return _poly_trim(q), _poly_trim(a)


def _find_irreducible(p, k):
    """Lexicographically smallest monic irreducible of degree k over F_p."""
    if k == 1:
        return [0, 1]
    small = []
    for d in range(1, k // 2 + 1):
        for tail in _iter_product(range(p), repeat=d):
            small.append(list(tail) + [1])
    for tail in _iter_product(range(p), repeat=k):
        cand = list(tail) + [1]
        if cand[0] == 0:
            continue
        if all(_poly_divmod(cand, g, p)[1] for g in small if len(g) - 1 <= k // 2):
            return cand
    raise AssertionError("no irreducible polynomial found")


class FiniteFieldRing(Ring):
    """F_{p^k} with elements stored as length-k coefficient tuples."""

    kind = "FiniteField"
    is_field = True

    def __init__(self, p, k):
        if not _is_prime(p):
            raise ValueError(f"FiniteField characteristic {p} is not prime")
        if k < 1:
            raise ValueError("FiniteField degree must be >= 1")
        self.p = p
        self.k = k
        self.modulus = _find_irreducible(p, k)

    def of_int(self, c):
        return tuple([c % self.p] + [0] * (self.k - 1))

    def generator(self):
        """The class of x, a root of the modulus polynomial."""
        if self.k == 1:
            return self.of_int(1)
        return tuple([0, 1] + [0] * (self.k - 2))

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        return tuple((-x) % self.p for x in a)

    def mul(self, a, b):
        c = _poly_mulmod(_poly_trim(a), _poly_trim(b), self.modulus, self.p)
        return tuple(c + [0] * (self.k - len(c)))

    def inv(self, a):
        # extended Euclid in F_p[x] against the modulus
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        p = self.p

        def poly_mul(u, v):
            if not u or not v:
                return []
            out = [0] * (len(u) + len(v) - 1)
            for i, ui in enumerate(u):
                for j, vj in enumerate(v):
                    out[i + j] = (out[i + j] + ui * vj) % p
            return _poly_trim(out)

        def poly_sub(u, v):
            out = [
                ((u[j] if j < len(u) else 0) - (v[j] if j < len(v) else 0)) % p
                for j in range(max(len(u), len(v)))
            ]
            return _poly_trim(out)

        r0, r1 = list(self.modulus), _poly_trim(a)
        s0, s1 = [], [1]
        while r1:
            q, r = _poly_divmod(r0, r1, p)
            r0, r1 = r1, r
            s0, s1 = s1, poly_sub(s0, poly_mul(q, s1))
        lead_inv = pow(r0[-1], p - 2, p)
        c = _poly_trim([(x * lead_inv) % p for x in s0])
        if len(c) > self.k:
            c = _poly_divmod(c, self.modulus, p)[1]
        return tuple(c + [0] * (self.k - len(c)))

    def frobenius(self, a, e=1):
        """Apply x -> x^(p^e)."""
        out = a
        for _ in range(e % self.k if self.k else 0):
            out = self.pow(out, self.p)
        return out

    def pow(self, a, n):
        out = self.one()
        base = a
        while n:
            if n & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            n >>= 1
        return out

    def contains(self, a):
        return (
            isinstance(a, tuple)
            and len(a) == self.k
            and all(isinstance(x, int) and 0 <= x < self.p for x in a)
        )

    def random_element(self, rng, bound=3):
        return tuple(rng.randrange(self.p) for _ in range(self.k))

    def __eq__(self, other):
        return (
            isinstance(other, FiniteFieldRing)
            and other.p == self.p
            and other.k == self.k
        )

    def __hash__(self):
        return hash(("FiniteField", self.p, self.k))

    def __repr__(self):
        return f"FiniteField({self.p},{self.k})"


class IntegerModRing(Ring):
    kind = "IntegersMod"

    def __init__(self, n):
        if n < 2:
            raise ValueError("IntegersMod modulus must be >= 2")
        self.n = n

    def of_int(self, c):
        return c % self.n

    def add(self, a, b):
        return (a + b) % self.n

    def neg(self, a):
        return (-a) % self.n

    def mul(self, a, b):
        return (a * b) % self.n

    def contains(self, a):
        return isinstance(a, int) and 0 <= a < self.n

    def random_element(self, rng, bound=3):
        return rng.randrange(self.n)

    def __eq__(self, other):
        return isinstance(other, IntegerModRing) and other.n == self.n

    def __hash__(self):
        return hash(("IntegersMod", self.n))

    def __repr__(self):
        return f"IntegersMod({self.n})"


class ProductRing(Ring):
    """base^w with componentwise operations and the rotation automorphism."""

    kind = "Product"

    def __init__(self, base, width):
        if width < 1:
            raise ValueError("Product width must be >= 1")
        self.base = base
        self.width = width

    @property
    def is_field(self):  # a nontrivial product is never a field
        return False

    def of_int(self, c):
        return tuple(self.base.of_int(c) for _ in range(self.width))

    def add(self, a, b):
        return tuple(self.base.add(x, y) for x, y in zip(a, b))

    def neg(self, a):
        return tuple(self.base.neg(x) for x in a)

    def mul(self, a, b):
        return tuple(self.base.mul(x, y) for x, y in zip(a, b))

    def contains(self, a):
        return (
            isinstance(a, tuple)
            and len(a) == self.width
            and all(self.base.contains(x) for x in a)
        )

    def random_element(self, rng, bound=3):
        return tuple(self.base.random_element(rng, bound) for _ in range(self.width))

    def __eq__(self, other):
        return (
            isinstance(other, ProductRing)
            and other.base == self.base
            and other.width == self.width
        )

    def __hash__(self):
        return hash(("Product", self.base, self.width))

    def __repr__(self):
        return f"Product({self.base!r},{self.width})"


ZZ = IntegerRing()
QQ = RationalField()


def ring_arith(ring, a, b, op):
    """Exact binary arithmetic; rejects elements from a different ring."""
    if not (ring.contains(a) and ring.contains(b)):
        raise RingMismatchError(f"operands do not belong to {ring!r}")
    if op == "add":
        return ring.add(a, b)
    if op == "sub":
        return ring.sub(a, b)
    if op == "mul":
        return ring.mul(a, b)
    raise ValueError(f"unknown op {op!r}")


def is_idempotent_complete(ring):
    """Whether the matrix category over `ring` splits all idempotents.

    Fields and the integers do (projectives are free), as does Z/p^k
    (local ring).  Z/n with several prime factors and nontrivial products
    admit projectives that are not free, so the answer is False there.
    """
    if ring.is_field or isinstance(ring, IntegerRing):
        return True
    if isinstance(ring, IntegerModRing):
        n = ring.n
        p = 2
        while p * p <= n:
            if n % p == 0:
                while n % p == 0:
                    n //= p
                return n == 1
            p += 1
        return True  # n prime
    if isinstance(ring, ProductRing):
        return ring.width == 1 and is_idempotent_complete(ring.base)
    return False


class RingAut:
    """A ring automorphism usable for twisting.

    kind is one of "identity", "frobenius" (FiniteField only, x -> x^(p^e)),
    "rotation" (Product only, shifts coordinates by r).  Powers and inverses
    stay inside this family, which is all the Laurent layer needs.
    """

    def __init__(self, spec, kind="identity", param=0):
        if kind == "frobenius":
            if not isinstance(spec, FiniteFieldRing):
                raise UnsupportedRingError("Frobenius twist needs a FiniteField")
            param %= spec.k
            if param == 0:
                kind = "identity"
        elif kind == "rotation":
            if not isinstance(spec, ProductRing):
                raise UnsupportedRingError("rotation twist needs a Product ring")
            param %= spec.width
            if param == 0:
                kind = "identity"
        elif kind == "identity":
            param = 0
        else:
            raise ValueError(f"unknown automorphism kind {kind!r}")
        self.spec = spec
        self.kind = kind
        self.param = param

    def apply(self, a):
        if self.kind == "identity":
            return a
        if self.kind == "frobenius":
            return self.spec.frobenius(a, self.param)
        return tuple(a[(i + self.param) % self.spec.width] for i in range(self.spec.width))

    def power(self, j):
        """sigma^j for any integer j (the family is finite order)."""
        if self.kind == "identity":
            return self
        if self.kind == "frobenius":
            return RingAut(self.spec, "frobenius", (self.param * j) % self.spec.k)
        return RingAut(self.spec, "rotation", (self.param * j) % self.spec.width)

    def inverse(self):
        return self.power(-1)

    def is_identity(self):
        return self.kind == "identity"

    def __eq__(self, other):
        return (
            isinstance(other, RingAut)
            and other.spec == self.spec
            and other.kind == self.kind
            and other.param == self.param
        )

    def __hash__(self):
        return hash((self.spec, self.kind, self.param))

    def __repr__(self):
        if self.kind == "identity":
            return f"Identity({self.spec!r})"
        return f"{self.kind.capitalize()}({self.spec!r},{self.param})"
