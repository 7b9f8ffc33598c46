"""Exact arithmetic in GF(q), q = p^k.

Elements are plain integers in ``range(q)``.  For ``k > 1`` the base-p digits
of an element are its coordinates in the polynomial basis ``1, t, ..., t^(k-1)``
(least significant digit = constant term), so GF(4) with modulus ``t^2+t+1``
enumerates as ``0, 1, t, t+1``.

The hot paths (linear algebra, evaluation, line enumeration) work on raw
integers through :class:`FieldSpec` methods.  :class:`FieldElement` is a small
operator-overloading wrapper for interactive use and for the API surface.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from itertools import product

from .errors import FieldMismatchError, UsageError

# Extension fields up to this order get full multiplication tables.
TABLE_LIMIT = 256


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


# -- polynomials over GF(p) as low-to-high coefficient lists --------------

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _gfp_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _gfp_divmod(a, m, p):
    """Divide ``a`` by ``m`` (nonzero) over GF(p); returns (quotient, remainder)."""
    a = _trim(a)
    m = _trim(m)
    lead_inv = pow(m[-1], -1, p)
    quot = [0] * max(len(a) - len(m) + 1, 0)
    while len(a) >= len(m):
        shift = len(a) - len(m)
        c = a[-1] * lead_inv % p
        quot[shift] = c
        for i, y in enumerate(m):
            a[shift + i] = (a[shift + i] - c * y) % p
        a = _trim(a)
    return _trim(quot), a


def _gfp_sub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def is_irreducible(modulus, p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    m = _trim(modulus)
    k = len(m) - 1
    if k < 1:
        return False
    for deg in range(1, k // 2 + 1):
        for low in product(range(p), repeat=deg):
            if not _gfp_divmod(m, list(low) + [1], p)[1]:
                return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """GF(p^k) defined by a monic irreducible ``modulus`` (low-to-high, length k+1).

    ``modulus`` is empty for prime fields.
    """

    p: int
    k: int = 1
    modulus: tuple = dc_field(default=())

    def __post_init__(self):
        if not is_prime(self.p):
            raise UsageError(f"characteristic {self.p} is not prime")
        if self.k < 1:
            raise UsageError("extension degree must be >= 1")
        mod = tuple(int(c) for c in self.modulus)
        object.__setattr__(self, "modulus", mod)
        if self.k == 1:
            if mod:
                raise UsageError("prime fields take no modulus")
            return
        if not mod:
            raise UsageError(f"GF({self.p}^{self.k}) needs an explicit modulus")
        if len(mod) != self.k + 1 or mod[-1] != 1:
            raise UsageError(f"modulus must be monic of degree {self.k}")
        if any(not 0 <= c < self.p for c in mod):
            raise UsageError(f"modulus coefficients must lie in [0, {self.p})")
        if not is_irreducible(mod, self.p):
            raise UsageError(f"modulus {mod} is reducible over GF({self.p})")

    @property
    def q(self) -> int:
        return self.p ** self.k

    def __str__(self):
        if self.k == 1:
            return str(self.p)
        return f"{self.p}^{self.k} mod=" + ",".join(map(str, self.modulus))

    def __repr__(self):
        return f"FieldSpec({str(self)!r})"

    # -- encoding ----------------------------------------------------------

    def digits(self, a: int) -> list:
        out = []
        for _ in range(self.k):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def from_digits(self, digits) -> int:
        v = 0
        for d in reversed(list(digits)):
            v = v * self.p + d
        return v

    def elements(self) -> range:
        return range(self.q)

    def check(self, a: int) -> int:
        if not (isinstance(a, int) and 0 <= a < self.q):
            raise UsageError(f"{a!r} is not an element of GF({self.q})")
        return a

    # -- tables for extension fields --------------------------------------

    def _slow_mul(self, a, b):
        prod = _gfp_mul(_trim(self.digits(a)), _trim(self.digits(b)), self.p)
        rem = _gfp_divmod(prod, list(self.modulus), self.p)[1]
        return self.from_digits(rem + [0] * (self.k - len(rem)))

    @cached_property
    def _add_table(self):
        q, p = self.q, self.p
        digs = [self.digits(a) for a in range(q)]
        return [[self.from_digits((x + y) % p for x, y in zip(digs[a], digs[b]))
                 for b in range(q)] for a in range(q)]

    @cached_property
    def _neg_table(self):
        p = self.p
        return [self.from_digits((-x) % p for x in self.digits(a)) for a in range(self.q)]

    @cached_property
    def _mul_table(self):
        q = self.q
        return [[self._slow_mul(a, b) for b in range(q)] for a in range(q)]

    @cached_property
    def _inv_table(self):
        return [0] + [self._euclid_inv(a) for a in range(1, self.q)]

    def _euclid_inv(self, a):
        """Extended Euclid on the polynomial representation."""
        p = self.p
        r0, r1 = list(self.modulus), _trim(self.digits(a))
        s0, s1 = [], [1]
        while r1:
            quot, rem = _gfp_divmod(r0, r1, p)
            r0, r1 = r1, rem
            s0, s1 = s1, _gfp_sub(s0, _gfp_mul(quot, s1, p), p)
        # r0 is a nonzero constant because the modulus is irreducible
        c = pow(r0[0], -1, p)
        s = [x * c % p for x in s0]
        s = _gfp_divmod(s, list(self.modulus), p)[1]
        return self.from_digits(s + [0] * (self.k - len(s)))

    # -- arithmetic on integer encodings ----------------------------------

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if self.q <= TABLE_LIMIT:
            return self._add_table[a][b]
        return self.from_digits((x + y) % self.p for x, y in zip(self.digits(a), self.digits(b)))

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        if self.q <= TABLE_LIMIT:
            return self._neg_table[a]
        return self.from_digits((-x) % self.p for x in self.digits(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        if self.q <= TABLE_LIMIT:
            return self._mul_table[a][b]
        return self._slow_mul(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        if self.k == 1:
            return pow(a, -1, self.p)
        if self.q <= TABLE_LIMIT:
            return self._inv_table[a]
        return self._euclid_inv(a)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            raise UsageError("negative exponent")
        if self.k == 1:
            return pow(a, e, self.p)
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def element(self, value: int) -> "FieldElement":
        return FieldElement(self, self.check(value))


_SPEC_RE = re.compile(r"^\s*(\d+)\s*(?:\^\s*(\d+))?\s*(?:mod\s*=\s*([\d,\s]+))?\s*$")


def parse_field(text: str, modulus=None) -> FieldSpec:
    """Parse ``"p"``, ``"p^k"`` or ``"p^k mod=c0,c1,...,ck"``.

    ``modulus`` (string or sequence) may be given separately instead of inline.
    """
    m = _SPEC_RE.match(text)
    if not m:
        raise UsageError(f"cannot parse field spec {text!r}")
    p = int(m.group(1))
    k = int(m.group(2)) if m.group(2) else 1
    mod = m.group(3)
    if mod is not None and modulus is not None:
        raise UsageError("modulus given twice")
    if mod is None:
        mod = modulus
    if isinstance(mod, str):
        mod = [int(c) for c in mod.replace(" ", "").split(",") if c != ""]
    return FieldSpec(p, k, tuple(mod or ()))


@dataclass(frozen=True)
class FieldElement:
    spec: FieldSpec
    value: int

    def __post_init__(self):
        self.spec.check(self.value)

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise FieldMismatchError(f"GF({self.spec}) vs GF({other.spec})")
            return other.value
        if isinstance(other, int):
            return self.spec.check(other)
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.spec, self.spec.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.spec, self.spec.sub(self.value, b))

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg(self.value))

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.spec, self.spec.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.spec, self.spec.mul(self.value, self.spec.inv(b)))

    def __pow__(self, e):
        return FieldElement(self.spec, self.spec.pow(self.value, e))

    def inverse(self):
        return FieldElement(self.spec, self.spec.inv(self.value))

    def __int__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"GF({self.spec.q})({self.value})"


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def power(a: FieldElement, e: int) -> FieldElement:
    """``a**e`` by square-and-multiply; ``0**0 == 1``."""
    return a ** e


def enumerate_elements(spec: FieldSpec) -> list:
    return [FieldElement(spec, v) for v in spec.elements()]
