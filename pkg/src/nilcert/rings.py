"""Exact arithmetic over the three supported principal ideal domains.

Supported rings: arbitrary-precision integers, the prime field F_p
(p prime, p < 2**63), and arbitrary-precision rationals.  Elements are
plain Python values — ``int`` for the integers, ``int`` in ``[0, p)``
for F_p, ``fractions.Fraction`` for the rationals — and every operation
goes through the ring object so that F_p stays reduced.  No floating
point anywhere.

Entries serialize as decimal strings; rationals as ``"a/b"`` in lowest
terms with ``b > 0`` (integral values print without the denominator,
e.g. ``"3"``), and both forms are accepted on input.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _int_gcd


class Ring:
    """Common interface of the three ring instances.

    A *canonical associate* fixes one representative per unit orbit:
    the nonnegative one over the integers, ``1`` for nonzero field
    elements.  ``canon_unit(a)`` is the unit u with ``u*a`` canonical.
    """

    name: str
    is_field: bool

    def zero(self):
        raise NotImplementedError

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

    def is_zero(self, a) -> bool:
        return a == self.zero()

    def is_unit(self, a) -> bool:
        raise NotImplementedError

    def try_div(self, a, b):
        """Return q with q*b == a, or None when b does not divide a."""
        raise NotImplementedError

    def divides(self, b, a) -> bool:
        return self.try_div(a, b) is not None

    def gcd_bezout(self, a, b):
        """Return (g, s, t) with g == s*a + t*b and g a canonical associate."""
        raise NotImplementedError

    def canon_unit(self, a):
        """Unit u such that u*a is the canonical associate of a."""
        raise NotImplementedError

    def canonical(self, a):
        return self.mul(self.canon_unit(a), a)

    def divmod_reduce(self, a, b):
        """(q, r) with a == q*b + r and r the canonical residue mod b != 0.

        Over the integers r lies in [0, |b|); over a field r == 0.
        """
        raise NotImplementedError

    def pivot_key(self, a) -> int:
        """Nonnegative size used for pivot selection; smaller is better.

        All nonzero field elements rank equally; ties are broken
        positionally by the caller.
        """
        raise NotImplementedError

    def format(self, a) -> str:
        raise NotImplementedError

    def parse(self, s: str):
        raise NotImplementedError

    def descriptor(self) -> dict:
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, Ring) and self.descriptor() == other.descriptor()

    def __hash__(self):
        return hash(tuple(sorted(self.descriptor().items())))

    def __repr__(self):
        return self.name


class IntegerRing(Ring):
    name = "Z"
    is_field = False

    def zero(self):
        return 0

    def one(self):
        return 1

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def is_unit(self, a) -> bool:
        return a == 1 or a == -1

    def try_div(self, a, b):
        if b == 0:
            return 0 if a == 0 else None
        q, r = divmod(a, b)
        return q if r == 0 else None

    def gcd_bezout(self, a, b):
        old_r, r = a, b
        old_s, s = 1, 0
        old_t, t = 0, 1
        while r != 0:
            q = old_r // r
            old_r, r = r, old_r - q * r
            old_s, s = s, old_s - q * s
            old_t, t = t, old_t - q * t
        if old_r < 0:
            old_r, old_s, old_t = -old_r, -old_s, -old_t
        return old_r, old_s, old_t

    def canon_unit(self, a):
        return -1 if a < 0 else 1

    def divmod_reduce(self, a, b):
        q, r = divmod(a, abs(b))
        return (q if b > 0 else -q), r

    def pivot_key(self, a) -> int:
        return abs(a)

    def format(self, a) -> str:
        return str(a)

    def parse(self, s: str):
        return int(s)

    def descriptor(self) -> dict:
        return {"ring": "Z"}


class _FieldMixin:
    """gcd/reduction behaviour shared by F_p and Q."""

    def inv(self, a):
        raise NotImplementedError

    def is_unit(self, a) -> bool:
        return not self.is_zero(a)

    def try_div(self, a, b):
        if self.is_zero(b):
            return self.zero() if self.is_zero(a) else None
        return self.mul(a, self.inv(b))

    def gcd_bezout(self, a, b):
        if not self.is_zero(a):
            return self.one(), self.inv(a), self.zero()
        if not self.is_zero(b):
            return self.one(), self.zero(), self.inv(b)
        return self.zero(), self.zero(), self.zero()

    def canon_unit(self, a):
        return self.one() if self.is_zero(a) else self.inv(a)

    def divmod_reduce(self, a, b):
        return self.mul(a, self.inv(b)), self.zero()

    def pivot_key(self, a) -> int:
        return 1


class PrimeField(_FieldMixin, Ring):
    is_field = True

    def __init__(self, p: int):
        if p < 2 or p >= 2**63:
            raise ValueError(f"field characteristic out of range: {p}")
        if any(p % q == 0 for q in range(2, min(p, 1 + int(p**0.5)) + 1)):
            raise ValueError(f"field characteristic must be prime: {p}")
        self.p = p
        self.name = f"F{p}"

    def zero(self):
        return 0

    def one(self):
        return 1 % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        return pow(a, -1, self.p)

    def format(self, a) -> str:
        return str(a % self.p)

    def parse(self, s: str):
        return int(s) % self.p

    def descriptor(self) -> dict:
        return {"ring": "Fp", "p": self.p}


class RationalField(_FieldMixin, Ring):
    name = "Q"
    is_field = True

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        return 1 / a

    def format(self, a) -> str:
        return str(a)

    def parse(self, s: str):
        return Fraction(s)

    def descriptor(self) -> dict:
        return {"ring": "Q"}


ZZ = IntegerRing()
QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def ring_from_descriptor(desc: dict) -> Ring:
    """Build a ring from its JSON descriptor.

    Accepted forms: {"ring": "Z"}, {"ring": "Q"}, {"ring": "Fp", "p": 5}.
    """
    if not isinstance(desc, dict) or "ring" not in desc:
        raise ValueError(f"not a ring descriptor: {desc!r}")
    kind = desc["ring"]
    if kind == "Z":
        return ZZ
    if kind == "Q":
        return QQ
    if kind == "Fp":
        if "p" not in desc:
            raise ValueError('Fp descriptor requires "p"')
        return PrimeField(int(desc["p"]))
    raise ValueError(f"unknown ring kind: {kind!r}")


def integer_gcd(values) -> int:
    """gcd of an iterable of integers, 0 for an empty iterable."""
    g = 0
    for v in values:
        g = _int_gcd(g, v)
    return g
