"""Brute-force reference implementations, independent of the library's
direction canonicalization and transversal bookkeeping."""

from itertools import product


def all_points(spec, n):
    return list(product(range(spec.q), repeat=n))


def line(spec, y, x):
    return {tuple(spec.add(yi, spec.mul(a, xi)) for yi, xi in zip(y, x)) for a in range(spec.q)}


def max_intersection(spec, n, members, x):
    """max over every base point y of |{y + a x} ∩ K|; no transversal shortcut."""
    return max(len(line(spec, y, x) & members) for y in all_points(spec, n))


def brute_is_kakeya(spec, n, points):
    """Every nonzero vector (not just canonical ones) has a full line inside."""
    members = set(map(tuple, points))
    for x in all_points(spec, n):
        if not any(x):
            continue
        if not any(line(spec, y, x) <= members for y in all_points(spec, n)):
            return False
    return True
