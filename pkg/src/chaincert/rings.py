"""Exact coefficient rings: the integers, prime fields, and group rings.

Every ring element has a unique canonical form:

* integers       -- arbitrary-precision ``int``
* prime field    -- ``int`` residue in ``[0, p)``
* group ring     -- tuple of base-ring coefficients, one per group element,
                    in the fixed element order of the Cayley table

All values are immutable and all operations are pure functions, so rings and
elements can be shared freely across threads.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass


class RingError(ValueError):
    """An element or descriptor does not fit the ring it is used with."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class GroupTable:
    """A finite group given by its Cayley table on element indices.

    ``mult[i][j]`` is the index of the product (element i) * (element j).
    The element order fixed by the table is part of the data format: it
    determines the coefficient layout of every group-ring element.
    """

    order: int
    mult: tuple[tuple[int, ...], ...]
    identity: int

    def validate(self) -> None:
        n = self.order
        if n <= 0:
            raise RingError("group order must be positive")
        if len(self.mult) != n or any(len(row) != n for row in self.mult):
            raise RingError("Cayley table must be order x order")
        if any(not (0 <= x < n) for row in self.mult for x in row):
            raise RingError("Cayley table entries must be element indices")
        e = self.identity
        if not 0 <= e < n:
            raise RingError("identity index out of range")
        if any(self.mult[e][i] != i or self.mult[i][e] != i for i in range(n)):
            raise RingError("identity index is not a two-sided identity")
        for i in range(n):
            if not any(
                self.mult[i][j] == e and self.mult[j][i] == e for j in range(n)
            ):
                raise RingError(f"element {i} has no two-sided inverse")
        # desk scale keeps the triple loop affordable
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if self.mult[self.mult[i][j]][k] != self.mult[i][self.mult[j][k]]:
                        raise RingError(f"non-associative triple ({i},{j},{k})")

    def inverse(self, i: int) -> int:
        for j in range(self.order):
            if self.mult[i][j] == self.identity:
                return j
        raise RingError(f"element {i} has no inverse")

    @classmethod
    def cyclic(cls, m: int) -> "GroupTable":
        if m <= 0:
            raise RingError("cyclic group order must be positive")
        mult = tuple(tuple((i + j) % m for j in range(m)) for i in range(m))
        return cls(order=m, mult=mult, identity=0)

    @classmethod
    def symmetric(cls, n: int) -> "GroupTable":
        """Symmetric group on n letters; element 0 is the identity."""
        perms = sorted(itertools.permutations(range(n)))
        index = {p: i for i, p in enumerate(perms)}
        mult = tuple(
            tuple(index[tuple(p[q[x]] for x in range(n))] for q in perms)
            for p in perms
        )
        return cls(order=len(perms), mult=mult, identity=index[tuple(range(n))])


class Ring:
    """Common interface of the supported exact coefficient rings."""

    is_field = False
    is_group_ring = False

    @property
    def zero(self):
        raise NotImplementedError

    @property
    def one(self):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def contains(self, a) -> bool:
        raise NotImplementedError

    def check(self, a):
        if not self.contains(a):
            raise RingError(f"{a!r} is not a canonical element of {self}")
        return a

    def from_int(self, n: int):
        """Image of an integer under the unique map from Z."""
        raise NotImplementedError

    def render(self, a) -> str:
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError


@dataclass(frozen=True)
class IntegerRing(Ring):
    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def contains(self, a):
        return isinstance(a, int)

    def from_int(self, n):
        return n

    def render(self, a):
        return str(a)

    def parse(self, text):
        return int(text)

    def __str__(self):
        return "Z"


@dataclass(frozen=True)
class PrimeField(Ring):
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise RingError(f"{self.p} is not prime")
        if self.p >= 2**31:
            raise RingError("prime fields supported for p < 2^31 only")

    is_field = True

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1 % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero in a prime field")
        return pow(a, self.p - 2, self.p)

    def contains(self, a):
        return isinstance(a, int) and 0 <= a < self.p

    def from_int(self, n):
        return n % self.p

    def render(self, a):
        return str(a)

    def parse(self, text):
        return int(text) % self.p

    def __str__(self):
        return f"F{self.p}"


_TERM_RE = re.compile(r"([+-]?[^+-]+)")


@dataclass(frozen=True)
class GroupRing(Ring):
    """Group ring base[G] with G given by a Cayley table.

    Elements are dense coefficient tuples indexed by the table's element
    order. Multiplication is convolution over the table and is not assumed
    commutative.
    """

    base: Ring
    group: GroupTable

    def __post_init__(self):
        if isinstance(self.base, GroupRing):
            raise RingError("group-ring base must be Z or a prime field")
        if not isinstance(self.base, (IntegerRing, PrimeField)):
            raise RingError("unsupported group-ring base")

    is_group_ring = True

    @property
    def zero(self):
        return (self.base.zero,) * self.group.order

    @property
    def one(self):
        z = self.base.zero
        return tuple(
            self.base.one if i == self.group.identity else z
            for i in range(self.group.order)
        )

    def basis_element(self, i: int):
        z = self.base.zero
        return tuple(
            self.base.one if j == i else z for j in range(self.group.order)
        )

    def add(self, a, b):
        return tuple(self.base.add(x, y) for x, y in zip(a, b))

    def neg(self, a):
        return tuple(self.base.neg(x) for x in a)

    def mul(self, a, b):
        out = [self.base.zero] * self.group.order
        mult = self.group.mult
        base = self.base
        for g, x in enumerate(a):
            if x == base.zero:
                continue
            row = mult[g]
            for h, y in enumerate(b):
                if y == base.zero:
                    continue
                k = row[h]
                out[k] = base.add(out[k], base.mul(x, y))
        return tuple(out)

    def contains(self, a):
        return (
            isinstance(a, tuple)
            and len(a) == self.group.order
            and all(self.base.contains(x) for x in a)
        )

    def from_int(self, n):
        z = self.base.zero
        return tuple(
            self.base.from_int(n) if i == self.group.identity else z
            for i in range(self.group.order)
        )

    def regular_representation(self, a) -> tuple[tuple, ...]:
        """Matrix of left multiplication by ``a`` on the base-ring module
        with basis G, in table order: the (k, h) entry is the coefficient
        of the group element g with g*h = k.

        The map is a ring homomorphism: rep(a*b) = rep(a)rep(b).
        """
        n = self.group.order
        z = self.base.zero
        rows = [[z] * n for _ in range(n)]
        mult = self.group.mult
        for g, x in enumerate(a):
            if x == z:
                continue
            row = mult[g]
            for h in range(n):
                k = row[h]
                rows[k][h] = self.base.add(rows[k][h], x)
        return tuple(tuple(r) for r in rows)

    def render(self, a):
        terms = []
        for i, c in enumerate(a):
            if c == self.base.zero:
                continue
            coeff = self.base.render(c)
            if i == self.group.identity:
                terms.append(coeff)
            elif coeff == "1":
                terms.append(f"g{i}")
            elif coeff == "-1":
                terms.append(f"-g{i}")
            else:
                terms.append(f"{coeff}*g{i}")
        if not terms:
            return "0"
        out = terms[0]
        for t in terms[1:]:
            out += t if t.startswith("-") else "+" + t
        return out

    def parse(self, text):
        text = text.replace(" ", "")
        coeffs = [self.base.zero] * self.group.order
        if text in ("", "0"):
            return tuple(coeffs)
        for term in _TERM_RE.findall(text):
            sign = self.base.one
            if term.startswith("+"):
                term = term[1:]
            elif term.startswith("-"):
                sign = self.base.neg(self.base.one)
                term = term[1:]
            if "*" in term:
                c_text, g_text = term.split("*")
            elif term.startswith("g"):
                c_text, g_text = "1", term
            else:
                c_text, g_text = term, None
            idx = self.group.identity if g_text is None else int(g_text[1:])
            if not 0 <= idx < self.group.order:
                raise RingError(f"no group element {g_text}")
            c = self.base.mul(sign, self.base.parse(c_text))
            coeffs[idx] = self.base.add(coeffs[idx], c)
        return tuple(coeffs)

    def __str__(self):
        return f"{self.base}[G{self.group.order}]"


ZZ = IntegerRing()
