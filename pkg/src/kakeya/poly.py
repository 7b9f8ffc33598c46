"""Sparse multivariate polynomials over GF(q).

Polynomials here are formal: exponents are never reduced with ``x^q = x``,
so ``degree`` is the formal total degree that the degree-counting arguments
(zero bounds, top coefficients on lines) are about.

Monomials are exponent tuples ordered graded-lexicographically: by total
degree, then lexicographically on the exponent tuple.  For two variables of
degree 3 that gives ``x2^3, x1*x2^2, x1^2*x2, x1^3``.
"""

from __future__ import annotations

import re
from itertools import combinations
from math import comb

from .errors import UsageError
from .field import FieldSpec

NEG_INF = float("-inf")
MONOMIAL_ORDER = "grlex-v1"


def grlex_key(mono):
    return (sum(mono), tuple(mono))


def _compositions(n, d):
    # stars and bars: bar positions among d + n - 1 slots
    for bars in combinations(range(d + n - 1), n - 1):
        prev = -1
        exps = []
        for b in bars:
            exps.append(b - prev - 1)
            prev = b
        exps.append(d + n - 2 - prev)
        yield tuple(exps)


def monomials_of_degree(n: int, d: int, mode: str = "exactly") -> list:
    """All exponent tuples of total degree ``d`` (or ``<= d``) in grlex order."""
    if n < 1 or d < 0:
        raise UsageError("need n >= 1 and d >= 0")
    if mode == "exactly":
        degrees = [d]
    elif mode == "at_most":
        degrees = range(d + 1)
    else:
        raise UsageError(f"unknown mode {mode!r}")
    out = []
    for e in degrees:
        out.extend(sorted(_compositions(n, e)))
    return out


def monomial_count(n: int, d: int, mode: str = "exactly") -> int:
    if d < 0:
        return 0
    return comb(d + n - 1, n - 1) if mode == "exactly" else comb(d + n, n)


# -- univariate ---------------------------------------------------------

def _umul(spec, a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = spec.add(out[i + j], spec.mul(x, y))
    return out


class UnivariatePolynomial:
    """Polynomial in the line parameter ``a``; ``coefficients[i]`` multiplies ``a^i``."""

    __slots__ = ("spec", "coefficients")

    def __init__(self, spec: FieldSpec, coefficients):
        coeffs = list(coefficients)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.spec = spec
        self.coefficients = tuple(coeffs)

    @property
    def degree(self):
        return len(self.coefficients) - 1 if self.coefficients else NEG_INF

    def is_zero(self) -> bool:
        return not self.coefficients

    def coefficient(self, e: int) -> int:
        return self.coefficients[e] if 0 <= e < len(self.coefficients) else 0

    def evaluate(self, a: int) -> int:
        acc = 0
        for c in reversed(self.coefficients):
            acc = self.spec.add(self.spec.mul(acc, a), c)
        return acc

    def __eq__(self, other):
        return (isinstance(other, UnivariatePolynomial) and self.spec == other.spec
                and self.coefficients == other.coefficients)

    def __hash__(self):
        return hash((self.spec, self.coefficients))

    def __repr__(self):
        return f"UnivariatePolynomial({list(self.coefficients)})"


# -- multivariate -------------------------------------------------------

class Polynomial:
    """Immutable polynomial ``{monomial: coefficient}`` with nonzero coefficients only."""

    __slots__ = ("spec", "n", "_terms")

    def __init__(self, spec: FieldSpec, n: int, terms=None):
        if n < 1:
            raise UsageError("polynomials need at least one variable")
        clean = {}
        for mono, c in dict(terms or {}).items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != n or any(e < 0 for e in mono):
                raise UsageError(f"bad monomial {mono} for n={n}")
            c = spec.check(int(c))
            if c:
                clean[mono] = c
        self.spec = spec
        self.n = n
        self._terms = {m: clean[m] for m in sorted(clean, key=grlex_key)}

    @classmethod
    def constant(cls, spec, n, c):
        return cls(spec, n, {(0,) * n: c})

    @classmethod
    def variable(cls, spec, n, i):
        mono = [0] * n
        mono[i] = 1
        return cls(spec, n, {tuple(mono): 1})

    @classmethod
    def zero(cls, spec, n):
        return cls(spec, n)

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    @property
    def degree(self):
        if not self._terms:
            return NEG_INF
        return max(sum(m) for m in self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self._terms}) <= 1

    def coefficient(self, mono) -> int:
        return self._terms.get(tuple(mono), 0)

    def _same(self, other):
        if not isinstance(other, Polynomial):
            raise UsageError("expected a Polynomial")
        if other.spec != self.spec or other.n != self.n:
            raise UsageError("polynomials live in different rings")

    def __add__(self, other):
        self._same(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = self.spec.add(out.get(m, 0), c)
        return Polynomial(self.spec, self.n, out)

    def __neg__(self):
        return Polynomial(self.spec, self.n, {m: self.spec.neg(c) for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: int):
        return Polynomial(self.spec, self.n, {m: self.spec.mul(c, v) for m, v in self._terms.items()})

    def __eq__(self, other):
        return (isinstance(other, Polynomial) and self.spec == other.spec
                and self.n == other.n and self._terms == other._terms)

    def __hash__(self):
        return hash((self.spec, self.n, tuple(self._terms.items())))

    def __repr__(self):
        return f"Polynomial({self.to_text()!r}, q={self.spec.q}, n={self.n})"

    def __str__(self):
        return self.to_text()

    def _check_point(self, x):
        if len(x) != self.n:
            raise UsageError(f"point has dimension {len(x)}, polynomial has {self.n} variables")

    def evaluate(self, x) -> int:
        self._check_point(x)
        spec = self.spec
        if not self._terms:
            return 0
        maxdeg = [0] * self.n
        for m in self._terms:
            for i, e in enumerate(m):
                if e > maxdeg[i]:
                    maxdeg[i] = e
        pows = []
        for i in range(self.n):
            row = [1]
            for _ in range(maxdeg[i]):
                row.append(spec.mul(row[-1], x[i]))
            pows.append(row)
        acc = 0
        for m, c in self._terms.items():
            t = c
            for i, e in enumerate(m):
                if e:
                    t = spec.mul(t, pows[i][e])
                    if t == 0:
                        break
            acc = spec.add(acc, t)
        return acc

    def homogeneous_part(self, i: int) -> "Polynomial":
        if i < 0:
            raise UsageError("degree must be non-negative")
        return Polynomial(self.spec, self.n, {m: c for m, c in self._terms.items() if sum(m) == i})

    def restrict_to_line(self, base, direction) -> UnivariatePolynomial:
        """The univariate polynomial ``a -> f(base + a*direction)`` by symbolic expansion."""
        self._check_point(base)
        self._check_point(direction)
        spec = self.spec
        power_cache = {}

        def linear_power(i, e):
            key = (i, e)
            if key not in power_cache:
                if e == 0:
                    power_cache[key] = [1]
                else:
                    power_cache[key] = _umul(spec, linear_power(i, e - 1), [base[i], direction[i]])
            return power_cache[key]

        total = []
        for m, c in self._terms.items():
            part = [c]
            for i, e in enumerate(m):
                if e:
                    part = _umul(spec, part, linear_power(i, e))
            if len(part) > len(total):
                total.extend([0] * (len(part) - len(total)))
            for j, v in enumerate(part):
                total[j] = spec.add(total[j], v)
        return UnivariatePolynomial(spec, total)

    def top_coefficient_on_line(self, direction, base, e: int) -> int:
        """Coefficient of ``a^e`` in ``f(base + a*direction)``."""
        return self.restrict_to_line(base, direction).coefficient(e)

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m, c in self._terms.items():
            factors = [str(c)] + [f"x{i + 1}^{e}" for i, e in enumerate(m) if e]
            parts.append("*".join(factors))
        return "+".join(parts)


_FACTOR_RE = re.compile(r"^x(\d+)(?:\^(\d+))?$")


def parse_polynomial(text: str, spec: FieldSpec, n: int) -> Polynomial:
    """Inverse of :meth:`Polynomial.to_text`; repeated monomials are summed."""
    text = text.replace(" ", "")
    if not text:
        raise UsageError("empty polynomial text")
    if text == "0":
        return Polynomial.zero(spec, n)
    terms = {}
    for part in text.split("+"):
        if not part:
            raise UsageError(f"empty term in {text!r}")
        coeff = 1
        mono = [0] * n
        for j, factor in enumerate(part.split("*")):
            if factor.isdigit():
                if j != 0:
                    raise UsageError(f"coefficient must lead the term: {part!r}")
                coeff = spec.check(int(factor))
                continue
            fm = _FACTOR_RE.match(factor)
            if not fm:
                raise UsageError(f"cannot parse factor {factor!r}")
            var = int(fm.group(1))
            if not 1 <= var <= n:
                raise UsageError(f"variable x{var} out of range for n={n}")
            mono[var - 1] += int(fm.group(2) or 1)
        mono = tuple(mono)
        terms[mono] = spec.add(terms.get(mono, 0), coeff)
    return Polynomial(spec, n, terms)


def random_polynomial(spec, n, max_degree, rng, density=0.5, homogeneous=False, nonzero=True):
    """Random polynomial with each admissible monomial present with probability ``density``."""
    mode = "exactly" if homogeneous else "at_most"
    monos = monomials_of_degree(n, max_degree, mode)
    while True:
        terms = {m: rng.randrange(1, spec.q) for m in monos if rng.random() < density}
        f = Polynomial(spec, n, terms)
        if not (nonzero and f.is_zero()):
            return f


# Function-style entry points mirroring the method API.

def evaluate(f: Polynomial, x) -> int:
    return f.evaluate(x)


def homogeneous_part(f: Polynomial, i: int) -> Polynomial:
    return f.homogeneous_part(i)


def restrict_to_line(f: Polynomial, base, direction) -> UnivariatePolynomial:
    return f.restrict_to_line(base, direction)


def top_coefficient_on_line(f: Polynomial, direction, base, e: int) -> int:
    return f.top_coefficient_on_line(direction, base, e)


def scale_argument(f: Polynomial, c: int, points) -> bool:
    """Check ``f(c*x) == c^d * f(x)`` at every point, ``f`` homogeneous of degree ``d``."""
    if f.is_zero():
        return True
    if not f.is_homogeneous():
        raise UsageError("scale_argument needs a homogeneous polynomial")
    spec = f.spec
    cd = spec.pow(c, f.degree)
    for x in points:
        cx = [spec.mul(c, xi) for xi in x]
        if f.evaluate(cx) != spec.mul(cd, f.evaluate(x)):
            return False
    return True
