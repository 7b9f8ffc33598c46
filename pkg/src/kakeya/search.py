"""Minimum-size Kakeya sets at tiny parameters.

The exact search branches over one line per canonical direction, with point
sets held as Python int bitmasks (bit i = point with encoding i).  Two
slower oracles are kept for cross-checking: enumeration of every line choice
without pruning, and raw subset enumeration for q^n <= 16.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations, product

from .core import PointSet, greedy_line_union, is_kakeya, lines_by_direction
from .errors import ResourceLimitError
from .field import FieldSpec

DEFAULT_EXACT_LIMIT = 81
DEFAULT_NODE_BUDGET = 2_000_000
SUBSET_ORACLE_LIMIT = 16


@dataclass
class SearchResult:
    q: int
    n: int
    field: str
    size: int
    optimal: str          # "exact" | "heuristic"
    witness: PointSet
    nodes: int
    wall_time: float = 0.0

    def to_dict(self, include_timing=False) -> dict:
        out = {
            "field": self.field,
            "q": self.q,
            "n": self.n,
            "size": self.size,
            "optimal": self.optimal,
            "nodes": self.nodes,
            "witness": [list(x) for x in self.witness.coords()],
        }
        if include_timing:
            out["wall_time"] = round(self.wall_time, 6)
        return out


def _masks(spec, n):
    """Per canonical direction: list of (base, bitmask) in transversal order."""
    return [[(base, sum(1 << v for v in pts)) for base, pts in lines]
            for _, lines in lines_by_direction(spec, n)]


def _mask_to_set(spec, n, mask):
    members = []
    i = 0
    while mask:
        if mask & 1:
            members.append(i)
        mask >>= 1
        i += 1
    return PointSet(spec, n, tuple(members))


def _verified(result):
    if not is_kakeya(result.witness):
        raise RuntimeError("search produced a witness that is not a Kakeya set")
    return result


def minimal_kakeya_exact(spec: FieldSpec, n: int, max_points: int = DEFAULT_EXACT_LIMIT,
                         node_budget: int = DEFAULT_NODE_BUDGET,
                         fix_translation: bool = True) -> SearchResult:
    """Branch and bound over one line per direction.

    The incumbent starts at the canonical-order greedy set; a branch is cut as
    soon as its union is no smaller than the incumbent.  With
    ``fix_translation`` the first direction uses the line through the origin,
    which loses nothing since translates of Kakeya sets are Kakeya sets.  When
    the node budget runs out the best set so far is returned flagged
    ``heuristic``.
    """
    q = spec.q
    if q ** n > max_points:
        raise ResourceLimitError(
            f"q^n = {q ** n} exceeds the exact-search limit {max_points}; use greedy search")
    start = time.perf_counter()
    masks = _masks(spec, n)
    if fix_translation:
        masks[0] = masks[0][:1]   # transversal starts at the origin

    greedy = greedy_line_union(spec, n)
    best_mask = sum(1 << v for v in greedy.members)
    best_size = len(greedy)
    nodes = 0
    exhausted = False
    depth = len(masks)

    def branch(i, union):
        nonlocal best_mask, best_size, nodes, exhausted
        nodes += 1
        if nodes > node_budget:
            exhausted = True
            return
        size = union.bit_count()
        if size >= best_size:
            return
        if i == depth:
            best_mask, best_size = union, size
            return
        # fewest new points first; ties keep transversal order
        children = sorted(range(len(masks[i])), key=lambda j: (masks[i][j][1] & ~union).bit_count())
        for j in children:
            branch(i + 1, union | masks[i][j][1])
            if exhausted:
                return

    branch(0, 0)
    witness = _mask_to_set(spec, n, best_mask)
    return _verified(SearchResult(
        q=q, n=n, field=str(spec), size=best_size,
        optimal="heuristic" if exhausted else "exact", witness=witness,
        nodes=nodes, wall_time=time.perf_counter() - start,
    ))


def minimal_kakeya_lines_enumeration(spec: FieldSpec, n: int, max_leaves: int = 10 ** 6):
    """Minimum over every one-line-per-direction choice, no pruning.

    Returns ``(minimum_size, leaves)``.
    """
    masks = _masks(spec, n)
    leaves = 1
    for m in masks:
        leaves *= len(m)
    if leaves > max_leaves:
        raise ResourceLimitError(f"{leaves} leaves exceed the limit {max_leaves}")
    best = None
    for choice in product(*[[mask for _, mask in m] for m in masks]):
        u = 0
        for mask in choice:
            u |= mask
        c = u.bit_count()
        if best is None or c < best:
            best = c
    return best, leaves


def minimal_kakeya_subsets(spec: FieldSpec, n: int):
    """Smallest Kakeya set by raw subset enumeration (q^n <= 16 only).

    Returns ``(minimum_size, witness)``; subsets are tried by size, then in
    lexicographic order of their encodings.
    """
    total = spec.q ** n
    if total > SUBSET_ORACLE_LIMIT:
        raise ResourceLimitError(f"subset enumeration needs q^n <= {SUBSET_ORACLE_LIMIT}")
    masks = _masks(spec, n)
    for size in range(total + 1):
        for combo in combinations(range(total), size):
            u = sum(1 << v for v in combo)
            if all(any(mask & u == mask for _, mask in m) for m in masks):
                return size, PointSet(spec, n, combo)
    raise AssertionError("the full space is always Kakeya")


def _greedy_restart(spec, n, seed, index):
    rng = random.Random(f"{seed}/{index}")
    order = list(range(len(lines_by_direction(spec, n))))
    rng.shuffle(order)
    return greedy_line_union(spec, n, order)


def minimal_kakeya_greedy(spec: FieldSpec, n: int, restarts: int = 8, seed: int = 0,
                          threads: int = 1) -> SearchResult:
    """Best of ``restarts`` greedy line unions over random direction orders.

    Restart ``i`` draws its order from a generator seeded with ``(seed, i)``,
    and the winner is the minimum under (size, member encodings), so the
    result does not depend on ``threads``.
    """
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    start = time.perf_counter()
    lines_by_direction(spec, n)   # fill the cache before workers share it
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            sets = list(pool.map(lambda i: _greedy_restart(spec, n, seed, i), range(restarts)))
    else:
        sets = [_greedy_restart(spec, n, seed, i) for i in range(restarts)]
    best = min(sets, key=lambda s: (len(s), s.members))
    return _verified(SearchResult(
        q=spec.q, n=n, field=str(spec), size=len(best), optimal="heuristic",
        witness=best, nodes=restarts, wall_time=time.perf_counter() - start,
    ))
