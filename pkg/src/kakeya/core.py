"""Point sets in F_q^n, lines, directions and Kakeya verification.

Points are encoded as mixed-radix integers in base q with coordinate 1 most
significant, so ``(1, 0)`` in GF(3)^2 is 3.  Directions are handled
projectively: a canonical direction has first nonzero coordinate 1, and the
lines in direction ``x`` are enumerated once each by letting the base point
run over the points whose pivot coordinate (first nonzero of ``x``) is 0.
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import ceil

from .errors import ResourceLimitError, SetFileError, UsageError
from .field import FieldSpec, parse_field

DEFAULT_MAX_CELLS = 10 ** 6


class Space:
    """Coordinate bookkeeping for F_q^n, shared by every set in that space."""

    def __init__(self, spec: FieldSpec, n: int):
        if n < 1:
            raise UsageError("dimension must be >= 1")
        self.spec = spec
        self.n = n
        self.q = spec.q
        self.size = self.q ** n

    def encode(self, x) -> int:
        if len(x) != self.n:
            raise UsageError(f"point {tuple(x)} does not have dimension {self.n}")
        v = 0
        for c in x:
            if not 0 <= c < self.q:
                raise UsageError(f"coordinate {c} outside [0, {self.q})")
            v = v * self.q + c
        return v

    def decode(self, v: int) -> tuple:
        out = [0] * self.n
        for i in range(self.n - 1, -1, -1):
            v, out[i] = divmod(v, self.q)
        return tuple(out)

    def points(self):
        return product(range(self.q), repeat=self.n)

    def add(self, x, y):
        return tuple(self.spec.add(a, b) for a, b in zip(x, y))

    def scale(self, c, x):
        return tuple(self.spec.mul(c, a) for a in x)

    def directions(self) -> list:
        """Canonical directions in increasing encoding order."""
        out = []
        for pivot in range(self.n):
            for tail in product(range(self.q), repeat=self.n - pivot - 1):
                out.append((0,) * pivot + (1,) + tail)
        out.sort(key=self.encode)
        return out

    def transversal(self, direction) -> list:
        """One base point per line in ``direction``: the points with pivot coordinate 0."""
        pivot = next(i for i, c in enumerate(direction) if c)
        return [x for x in self.points() if x[pivot] == 0]

    def line(self, base, direction) -> list:
        """Encodings of ``base + a*direction`` for ``a = 0, 1, ..., q-1``."""
        return [self.encode(self.add(base, self.scale(a, direction))) for a in range(self.q)]

    @staticmethod
    def canonical(x):
        return next((c for c in x if c), 0) == 1


@lru_cache(maxsize=64)
def space(spec: FieldSpec, n: int) -> Space:
    return Space(spec, n)


@lru_cache(maxsize=32)
def _line_table(spec: FieldSpec, n: int):
    """``[(direction, [(base, line_encodings), ...]), ...]`` for the whole space."""
    sp = space(spec, n)
    return tuple((d, tuple((b, tuple(sp.line(b, d))) for b in sp.transversal(d)))
                 for d in sp.directions())


def lines_by_direction(spec: FieldSpec, n: int):
    return _line_table(spec, n)


def canonicalize(spec: FieldSpec, x) -> tuple:
    """Scale a nonzero vector so its first nonzero coordinate is 1."""
    lead = next((c for c in x if c), None)
    if lead is None:
        raise UsageError("the zero vector has no direction")
    il = spec.inv(lead)
    return tuple(spec.mul(il, c) for c in x)


@dataclass(frozen=True)
class PointSet:
    spec: FieldSpec
    n: int
    members: tuple = ()

    def __post_init__(self):
        m = tuple(sorted(set(int(v) for v in self.members)))
        size = self.spec.q ** self.n
        if m and not (0 <= m[0] and m[-1] < size):
            raise UsageError("point encoding out of range")
        object.__setattr__(self, "members", m)

    @classmethod
    def from_points(cls, spec, n, points):
        sp = space(spec, n)
        return cls(spec, n, tuple(sp.encode(tuple(p)) for p in points))

    @classmethod
    def full(cls, spec, n):
        return cls(spec, n, tuple(range(spec.q ** n)))

    @property
    def space(self) -> Space:
        return space(self.spec, self.n)

    def _lookup(self):
        # frozen dataclass: cache the member set on the instance dict
        s = self.__dict__.get("_set")
        if s is None:
            s = frozenset(self.members)
            object.__setattr__(self, "_set", s)
        return s

    def coords(self) -> list:
        sp = self.space
        return [sp.decode(v) for v in self.members]

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.coords())

    def __contains__(self, x):
        if isinstance(x, int):
            return x in self._lookup()
        return self.space.encode(tuple(x)) in self._lookup()

    def contains_encoding(self, v: int) -> bool:
        return v in self._lookup()

    def digest(self) -> str:
        return hashlib.sha256(to_set_text(self).encode()).hexdigest()


# -- verification ---------------------------------------------------------

@dataclass
class KakeyaCheck:
    ok: bool
    witnesses: dict = dc_field(default_factory=dict)   # direction -> base point
    failing_direction: tuple | None = None

    def __bool__(self):
        return self.ok


def is_kakeya(k: PointSet) -> KakeyaCheck:
    """Does every canonical direction have a line entirely inside ``k``?

    Witness base points are the smallest-encoding transversal points; the scan
    stops at the first direction without one.
    """
    sp = k.space
    has = k.contains_encoding
    witnesses = {}
    for d, lines in lines_by_direction(k.spec, k.n):
        for base, pts in lines:
            if all(has(v) for v in pts):
                witnesses[d] = base
                break
        else:
            return KakeyaCheck(False, witnesses, d)
    return KakeyaCheck(True, witnesses, None)


@dataclass
class DirectionProfile:
    """``entries[direction] = (best_base, max_count)`` in canonical direction order."""

    q: int
    entries: dict

    def count(self, direction) -> int:
        return self.entries[tuple(direction)][1]

    def base(self, direction) -> tuple:
        return self.entries[tuple(direction)][0]

    def as_rows(self):
        return [(d, b, c) for d, (b, c) in self.entries.items()]


def direction_profile(k: PointSet) -> DirectionProfile:
    has = k.contains_encoding
    entries = {}
    for d, lines in lines_by_direction(k.spec, k.n):
        best_base, best = lines[0][0], -1
        for base, pts in lines:
            c = sum(1 for v in pts if has(v))
            if c > best:
                best_base, best = base, c
                if c == k.spec.q:
                    break
        entries[d] = (best_base, best)
    return DirectionProfile(k.spec.q, entries)


def gamma_threshold(q: int, gamma) -> int:
    return ceil(Fraction(gamma) * q)


@dataclass
class DeltaGammaReport:
    ok: bool
    qualifying_vectors: int     # |L|
    required: Fraction          # delta * q^n
    threshold: int              # ceil(gamma * q)
    delta_max: Fraction         # (q^n - 1) / q^n, the best any set can reach with threshold >= 2
    qualifying_directions: list
    profile: DirectionProfile

    def __bool__(self):
        return self.ok


def check_delta_gamma(k: PointSet, delta, gamma, profile=None) -> DeltaGammaReport:
    """Count the vectors ``x`` with a line in direction ``x`` meeting ``k`` in >= ceil(gamma*q) points.

    Every nonzero multiple of a qualifying canonical direction counts.  The zero
    vector's "line" is a single point, so it only counts when the threshold is
    at most 1 and ``k`` is nonempty.
    """
    delta, gamma = Fraction(delta), Fraction(gamma)
    if not (0 < delta <= 1 and 0 < gamma <= 1):
        raise UsageError("delta and gamma must lie in (0, 1]")
    q, n = k.spec.q, k.n
    profile = profile or direction_profile(k)
    t = gamma_threshold(q, gamma)
    good = [d for d, (_, c) in profile.entries.items() if c >= t]
    count = (q - 1) * len(good)
    if t <= 1 and len(k) > 0:
        count += 1
    required = delta * q ** n
    return DeltaGammaReport(
        ok=count >= required,
        qualifying_vectors=count,
        required=required,
        threshold=t,
        delta_max=Fraction(q ** n - 1, q ** n),
        qualifying_directions=good,
        profile=profile,
    )


# -- constructions ----------------------------------------------------------

def cone_closure(k: PointSet) -> PointSet:
    """All scalar multiples ``c*x`` for ``x`` in ``k`` and ``c`` in F."""
    sp = k.space
    out = set()
    for x in k.coords():
        for c in range(k.spec.q):
            out.add(sp.encode(sp.scale(c, x)))
    return PointSet(k.spec, k.n, tuple(out))


def product_set(k: PointSet, r: int, max_cells: int = DEFAULT_MAX_CELLS) -> PointSet:
    """Cartesian power ``k^r`` inside F^(n*r)."""
    if r < 1:
        raise UsageError("r must be >= 1")
    cells = len(k) ** r * k.n * r
    if cells > max_cells:
        raise ResourceLimitError(f"product would hold {cells} coordinates (limit {max_cells})")
    size = k.spec.q ** k.n
    out = []
    for combo in product(k.members, repeat=r):
        v = 0
        for m in combo:
            v = v * size + m
        out.append(v)
    return PointSet(k.spec, k.n * r, tuple(out))


def greedy_line_union(spec, n, order=None) -> PointSet:
    """Insert one line per direction, each chosen to add the fewest new points.

    Ties go to the smallest base-point encoding.  ``order`` permutes the
    direction sequence (default: canonical order).
    """
    table = lines_by_direction(spec, n)
    if order is not None:
        table = [table[i] for i in order]
    chosen = set()
    for _, lines in table:
        best_pts, best_new = None, None
        for _, pts in lines:
            new = sum(1 for v in pts if v not in chosen)
            if best_new is None or new < best_new:
                best_pts, best_new = pts, new
                if new == 0:
                    break
        chosen.update(best_pts)
    return PointSet(spec, n, tuple(chosen))


CONSTRUCTIONS = ("full", "greedy_lines", "union_random_lines")


def construct(kind: str, spec: FieldSpec, n: int, seed: int = 0) -> PointSet:
    if kind == "full":
        return PointSet.full(spec, n)
    if kind == "greedy_lines":
        return greedy_line_union(spec, n)
    if kind == "union_random_lines":
        rng = random.Random(seed)
        chosen = set()
        for _, lines in lines_by_direction(spec, n):
            chosen.update(rng.choice(lines)[1])
        return PointSet(spec, n, tuple(chosen))
    raise UsageError(f"unknown construction {kind!r}; choose from {', '.join(CONSTRUCTIONS)}")


# -- set files ------------------------------------------------------------

def to_set_text(k: PointSet) -> str:
    spec = k.spec
    head = f"{spec.p}" if spec.k == 1 else f"{spec.p}^{spec.k}"
    lines = [f"q={head} n={k.n}"]
    if spec.k > 1:
        lines.append("mod=" + ",".join(map(str, spec.modulus)))
    lines.extend(",".join(map(str, x)) for x in k.coords())
    return "\n".join(lines) + "\n"


def parse_set_text(text: str) -> PointSet:
    raw = text.split("\n")
    if raw and raw[-1] == "":
        raw.pop()
    if not raw:
        raise SetFileError(1, "empty file")
    header = raw[0].split()
    fields = {}
    for tok in header:
        if "=" not in tok:
            raise SetFileError(1, f"bad header token {tok!r}")
        key, val = tok.split("=", 1)
        fields[key] = val
    if set(fields) - {"q", "n", "mod"} or "q" not in fields or "n" not in fields:
        raise SetFileError(1, "header must be 'q=<spec> n=<dim>'")
    body_start = 1
    mod = fields.get("mod")
    if len(raw) > 1 and raw[1].startswith("mod="):
        if mod is not None:
            raise SetFileError(2, "modulus given twice")
        mod = raw[1][4:]
        body_start = 2
    try:
        spec = parse_field(fields["q"], mod)
        n = int(fields["n"])
        if n < 1:
            raise ValueError("n must be >= 1")
    except (ValueError, UsageError) as exc:
        raise SetFileError(1, str(exc)) from None
    sp = space(spec, n)
    members = []
    for lineno, line in enumerate(raw[body_start:], start=body_start + 1):
        try:
            coords = tuple(int(c) for c in line.split(","))
            members.append(sp.encode(coords))
        except (ValueError, UsageError) as exc:
            raise SetFileError(lineno, f"bad point {line!r}: {exc}") from None
    return PointSet(spec, n, tuple(members))


def read_set_file(path) -> PointSet:
    with open(path, encoding="utf-8") as fh:
        return parse_set_text(fh.read())


def write_set_file(k: PointSet, path):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(to_set_text(k))


def to_json_dict(k: PointSet) -> dict:
    return {
        "field": str(k.spec),
        "n": k.n,
        "points": [list(x) for x in k.coords()],
        "size": len(k),
    }


def from_json_dict(data: dict) -> PointSet:
    spec = parse_field(data["field"])
    return PointSet.from_points(spec, int(data["n"]), data["points"])


def dumps(obj) -> str:
    """Canonical JSON: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
