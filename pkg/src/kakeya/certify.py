"""Replay the polynomial-method size arguments as checkable certificates.

Two pipelines:

``thm2``
    For a set claimed to have the (delta, gamma) line profile but smaller than
    ``C(d + n - 1, n - 1)``: find a homogeneous degree-d ``g`` vanishing on the
    set, push the zeros out to the cone over the set, prove ``g(y) = 0`` for
    every qualifying direction from ``d + 1`` zeros on an auxiliary line, and
    close with the zero count of ``g`` against ``d * q^(n-1)``.

``cascade``
    For a Kakeya set: either record ``|K| >= C(q + n - 2, n)`` together with a
    witness line per direction, or (never reachable for a genuine Kakeya set)
    peel homogeneous parts of a degree <= q-1 vanishing polynomial off from the
    top using the coefficient identity on witness lines.

Certificates are plain JSON.  :func:`verify_certificate` re-derives every step
from the serialized field, points and polynomial; stored booleans are never
trusted.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import comb

from .bounds import alon_tao_bound, count_zeros, thm2_bound
from .core import (PointSet, canonicalize, check_delta_gamma, cone_closure,
                   dumps, is_kakeya, space)
from .errors import NotKakeyaError, UsageError
from .field import parse_field
from .linalg import vanishing_polynomial
from .poly import MONOMIAL_ORDER, Polynomial, parse_polynomial

FORMAT = "kakeya-certificate-v1"


@dataclass
class Certificate:
    kind: str                 # "refutation" | "consistency"
    pipeline: str             # "thm2" | "cascade"
    field: str
    n: int
    set_digest: str
    points: list
    params: dict
    polynomial: str | None
    steps: list = dc_field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "format": FORMAT,
            "kind": self.kind,
            "pipeline": self.pipeline,
            "field": self.field,
            "n": self.n,
            "monomial_order": MONOMIAL_ORDER,
            "set_digest": self.set_digest,
            "points": self.points,
            "params": self.params,
            "polynomial": self.polynomial,
            "steps": self.steps,
        }

    def to_json(self) -> str:
        return dumps(self.to_dict())

    @property
    def final_step(self) -> dict:
        return self.steps[-1]


def _step(steps, name, claim, **data):
    entry = {"index": len(steps), "name": name, "claim": claim, "holds": True}
    entry.update(data)
    steps.append(entry)
    return entry


def _base_certificate(k, pipeline, params):
    return Certificate(
        kind="consistency", pipeline=pipeline, field=str(k.spec), n=k.n,
        set_digest=k.digest(), points=[list(x) for x in k.coords()],
        params=params, polynomial=None,
    )


def _line_params(k, base, direction):
    """Parameters ``a`` (increasing) with ``base + a*direction`` in ``k``."""
    sp = k.space
    return [a for a, v in enumerate(sp.line(base, direction)) if k.contains_encoding(v)]


def _claim_points(spec, base, direction, params, d):
    """Select the d+1 nonzero parameters and the points ``w_i = a_i^-1 * base + direction``."""
    chosen = params[:d + 2]
    if 0 in chosen:
        chosen.remove(0)
    chosen = chosen[:d + 1]
    inverses = [spec.inv(a) for a in chosen]
    sp_add = lambda x, y: tuple(spec.add(s, t) for s, t in zip(x, y))
    ws = [sp_add(tuple(spec.mul(b, c) for c in base), direction) for b in inverses]
    return chosen, inverses, ws


# -- pipeline: (delta, gamma) bound ---------------------------------------

def certify_refutation_thm2(k: PointSet, delta=1, gamma=1) -> Certificate:
    spec, n, q = k.spec, k.n, k.spec.q
    delta, gamma = Fraction(delta), Fraction(gamma)
    report = thm2_bound(q, n, delta, gamma)
    d = report.d
    cert = _base_certificate(k, "thm2", {"delta": str(delta), "gamma": str(gamma), "d": d})
    steps = cert.steps
    small = len(k) < report.bound
    _step(steps, "size_vs_bound", "set size compared with C(d+n-1, n-1)",
          size=len(k), bound=report.bound, relation="<" if small else ">=")
    if not small:
        return cert

    cert.kind = "refutation"
    monos = comb(d + n - 1, n - 1)
    _step(steps, "monomial_count", "degree-d monomials outnumber the points of the set",
          monomials=monos, size=len(k))

    g = vanishing_polynomial(k, d, "exactly")
    cert.polynomial = g.to_text()
    _step(steps, "vanishing_on_set", "nonzero g vanishes at every point of the set",
          checked_points=len(k))
    _step(steps, "homogeneous", "g is homogeneous of degree d", degree=d)

    cone = cone_closure(k)
    assert all(g.evaluate(x) == 0 for x in cone.coords())
    _step(steps, "vanishing_on_cone", "g(c*x) = c^d g(x) = 0 on the cone over the set",
          cone_size=len(cone))

    dg = check_delta_gamma(k, delta, gamma)
    for y in dg.qualifying_directions:
        z = dg.profile.base(y)
        params = _line_params(k, z, y)
        chosen, inverses, ws = _claim_points(spec, z, y, params, d)
        assert all(g.evaluate(w) == 0 for w in ws)
        z_zero = not any(z)
        if z_zero:
            restriction_zero = None
        else:
            restriction_zero = g.restrict_to_line(y, z).is_zero()
            assert restriction_zero
        assert g.evaluate(y) == 0
        _step(steps, "line_claim", "g vanishes at the qualifying direction and its multiples",
              direction=list(y), base=list(z), params=chosen, inverses=inverses,
              points=[list(w) for w in ws], branch="base_zero" if z_zero else "auxiliary_line",
              restriction_zero=restriction_zero, value_at_direction=0)

    zeros = count_zeros(g)
    sz = d * q ** (n - 1)
    qual = dg.qualifying_vectors
    outcome = "sz_violation" if zeros > sz else ("profile_fails" if qual < dg.required else "none")
    entry = _step(steps, "zero_count",
                  "qualifying vectors <= zeros of g <= d*q^(n-1) < delta*q^n",
                  zeros=zeros, sz_bound=sz, qualifying_vectors=qual,
                  required=str(dg.required), outcome=outcome)
    entry["holds"] = qual <= zeros and outcome != "none"
    return cert


# -- pipeline: homogeneous cascade ----------------------------------------

def _witness_lines(k, check, skip_check):
    if not check.ok and not skip_check:
        raise NotKakeyaError(check.failing_direction)
    return check.witnesses


def certify_cascade(k: PointSet, skip_kakeya_check: bool = False) -> Certificate:
    """Certificate that ``k`` respects the ``C(q+n-2, n)`` bound.

    ``skip_kakeya_check`` defers the Kakeya test to the point where a witness
    line is first needed; the pipeline then halts there with
    :class:`NotKakeyaError` naming the direction.
    """
    spec, n, q = k.spec, k.n, k.spec.q
    sp = space(spec, n)
    check = is_kakeya(k)
    witnesses = _witness_lines(k, check, skip_kakeya_check)
    bound = alon_tao_bound(q, n).bound
    cert = _base_certificate(k, "cascade", {"bound": bound})
    steps = cert.steps
    small = len(k) < bound

    if not small:
        missing = [d for d in sp.directions() if d not in witnesses]
        if missing:
            raise NotKakeyaError(missing[0])
        _step(steps, "kakeya_witnesses", "a full line inside the set for every direction",
              witnesses=[[list(d), list(b)] for d, b in witnesses.items()])
        _step(steps, "size_vs_bound", "set size compared with C(q+n-2, n)",
              size=len(k), bound=bound, relation=">=")
        return cert

    cert.kind = "refutation"
    _step(steps, "size_vs_bound", "set size compared with C(q+n-2, n)",
          size=len(k), bound=bound, relation="<")
    p = vanishing_polynomial(k, q - 1, "at_most")
    cert.polynomial = p.to_text()
    _step(steps, "vanishing_on_set", "nonzero P of degree <= q-1 vanishes on the set",
          checked_points=len(k), degree_bound=q - 1)
    cascade_steps(p, witnesses, sp, steps)
    return cert


def cascade_steps(p: Polynomial, witnesses: dict, sp, steps: list):
    """Peel ``P_{q-1}, ..., P_1`` off ``p`` and append one step per level.

    Each level checks, for every canonical direction ``y`` with witness base
    ``b``, that ``p(b + a*y)`` is the zero polynomial in ``a`` and that its
    ``a^j`` coefficient equals ``P_j(y)``; then that ``P_j`` vanishes on all of
    F^n and is therefore the zero polynomial.
    """
    spec, q = sp.spec, sp.q
    current = p
    for j in range(q - 1, 0, -1):
        part = current.homogeneous_part(j)
        per_direction = []
        for y in sp.directions():
            if y not in witnesses:
                raise NotKakeyaError(y)
            b = witnesses[y]
            restriction = current.restrict_to_line(b, y)
            coeff = restriction.coefficient(j)
            per_direction.append({
                "direction": list(y), "base": list(b),
                "restriction_zero": restriction.is_zero(),
                "coefficient": coeff, "part_at_direction": part.evaluate(y),
            })
        vanishes_everywhere = all(part.evaluate(x) == 0 for x in sp.points())
        entry = _step(steps, "cascade_level",
                      "line restriction is zero, so P_j(y) = 0 for all y, so P_j = 0",
                      degree=j, lines=per_direction,
                      part_vanishes_everywhere=vanishes_everywhere,
                      part_is_zero=part.is_zero())
        entry["holds"] = (all(r["restriction_zero"] and r["coefficient"] == r["part_at_direction"] == 0
                              for r in per_direction) and vanishes_everywhere and part.is_zero())
        current = current - part
    constant = current.coefficient((0,) * sp.n)
    _step(steps, "constant_term", "what is left of P is its constant term, which must be 0",
          constant=constant, remainder_zero=current.is_zero(),
          contradiction=not p.is_zero() and current.is_zero())
    return current


# -- verification ---------------------------------------------------------

@dataclass
class VerificationReport:
    ok: bool
    results: list  # (index, name, ok, message)

    def __bool__(self):
        return self.ok


class _Fail(Exception):
    pass


def _require(cond, message):
    if not cond:
        raise _Fail(message)


def verify_certificate(data) -> VerificationReport:
    """Re-check a certificate (dict or JSON text) from its serialized content alone."""
    if isinstance(data, str):
        data = json.loads(data)
    results = []
    try:
        _require(data.get("format") == FORMAT, "unknown certificate format")
        _require(data.get("monomial_order") == MONOMIAL_ORDER, "unknown monomial order")
        spec = parse_field(data["field"])
        n = int(data["n"])
        k = PointSet.from_points(spec, n, data["points"])
        _require(len(k) == len(data["points"]), "duplicate points")
        _require(k.digest() == data["set_digest"], "set digest mismatch")
        poly = None
        if data.get("polynomial") is not None:
            poly = parse_polynomial(data["polynomial"], spec, n)
    except (_Fail, KeyError, ValueError, UsageError) as exc:
        return VerificationReport(False, [(-1, "header", False, str(exc))])

    checker = {"thm2": _verify_thm2, "cascade": _verify_cascade}.get(data.get("pipeline"))
    if checker is None:
        return VerificationReport(False, [(-1, "header", False, "unknown pipeline")])
    ctx = {"k": k, "spec": spec, "n": n, "poly": poly, "data": data}
    for i, st in enumerate(data["steps"]):
        try:
            _require(st.get("index") == i, "step index out of sequence")
            checker(ctx, st)
            results.append((i, st["name"], True, ""))
        except (_Fail, KeyError, ValueError, TypeError, UsageError, ZeroDivisionError) as exc:
            results.append((i, st.get("name", "?"), False, str(exc)))
    try:
        _verify_completeness(ctx)
    except _Fail as exc:
        results.append((len(data["steps"]), "completeness", False, str(exc)))
    return VerificationReport(all(r[2] for r in results) and bool(results), results)


def _verify_completeness(ctx):
    data, k = ctx["data"], ctx["k"]
    names = [s["name"] for s in data["steps"]]
    if data["kind"] == "consistency":
        _require(ctx["poly"] is None, "consistency certificates carry no polynomial")
        if data["pipeline"] == "cascade":
            _require(names == ["kakeya_witnesses", "size_vs_bound"], "unexpected step list")
        else:
            _require(names == ["size_vs_bound"], "unexpected step list")
        return
    _require(data["kind"] == "refutation", "unknown certificate kind")
    _require(ctx["poly"] is not None, "refutation without polynomial")
    if data["pipeline"] == "thm2":
        _require(names[:5] == ["size_vs_bound", "monomial_count", "vanishing_on_set",
                               "homogeneous", "vanishing_on_cone"], "unexpected step list")
        _require(names[-1] == "zero_count", "refutation must end with the zero count")
        claimed = sorted(tuple(s["direction"]) for s in data["steps"] if s["name"] == "line_claim")
        dg = check_delta_gamma(k, Fraction(data["params"]["delta"]), Fraction(data["params"]["gamma"]))
        _require(claimed == sorted(dg.qualifying_directions),
                 "line claims do not cover exactly the qualifying directions")
    else:
        _require(names[-1] == "constant_term", "cascade must end at the constant term")
        levels = [s["degree"] for s in data["steps"] if s["name"] == "cascade_level"]
        _require(levels == list(range(ctx["spec"].q - 1, 0, -1)), "cascade levels incomplete")


def _verify_thm2(ctx, st):
    k, spec, n, g, data = ctx["k"], ctx["spec"], ctx["n"], ctx["poly"], ctx["data"]
    q = spec.q
    delta = Fraction(data["params"]["delta"])
    gamma = Fraction(data["params"]["gamma"])
    report = thm2_bound(q, n, delta, gamma)
    d = report.d
    _require(data["params"]["d"] == d, "effective degree mismatch")
    name = st["name"]
    if name == "size_vs_bound":
        _require(st["size"] == len(k) and st["bound"] == report.bound, "size or bound mismatch")
        rel = "<" if len(k) < report.bound else ">="
        _require(st["relation"] == rel, "relation mismatch")
        _require((rel == "<") == (data["kind"] == "refutation"), "kind does not match relation")
    elif name == "monomial_count":
        monos = comb(d + n - 1, n - 1)
        _require(st["monomials"] == monos and monos > len(k), "monomial count does not exceed size")
    elif name == "vanishing_on_set":
        _require(not g.is_zero(), "polynomial is zero")
        _require(all(g.evaluate(x) == 0 for x in k.coords()), "g does not vanish on the set")
    elif name == "homogeneous":
        _require(g.is_homogeneous() and g.degree == d == st["degree"], "g is not homogeneous of degree d")
    elif name == "vanishing_on_cone":
        cone = cone_closure(k)
        _require(st["cone_size"] == len(cone), "cone size mismatch")
        _require(all(g.evaluate(x) == 0 for x in cone.coords()), "g does not vanish on the cone")
    elif name == "line_claim":
        y, z = tuple(st["direction"]), tuple(st["base"])
        _require(any(y) and canonicalize(spec, y) == y, "direction is not canonical")
        sp = space(spec, n)
        line = sp.line(z, y)
        t = -(-gamma.numerator * q // gamma.denominator)
        _require(sum(1 for v in line if k.contains_encoding(v)) >= t, "line misses the gamma threshold")
        params = st["params"]
        _require(len(params) == d + 1 and len(set(params)) == d + 1 and 0 not in params,
                 "need d+1 distinct nonzero parameters")
        _require(all(k.contains_encoding(line[a]) for a in params), "parameter point not in the set")
        cone = cone_closure(k)
        for a, b, w in zip(params, st["inverses"], st["points"]):
            _require(spec.mul(a, b) == 1, "bad inverse")
            expect = tuple(spec.add(spec.mul(b, zc), yc) for zc, yc in zip(z, y))
            _require(tuple(w) == expect, "w_i is not b_i*z + y")
            _require(w in cone, "w_i not in the cone")
            _require(g.evaluate(w) == 0, "g(w_i) != 0")
        if any(z):
            _require(st["branch"] == "auxiliary_line", "branch mismatch")
            _require(len({tuple(w) for w in st["points"]}) == d + 1, "w_i not distinct")
            _require(g.restrict_to_line(y, z).is_zero(), "restriction of g is not zero")
        else:
            _require(st["branch"] == "base_zero", "branch mismatch")
        for c in range(1, q):
            _require(g.evaluate(tuple(spec.mul(c, yc) for yc in y)) == 0, "g nonzero on a multiple")
    elif name == "zero_count":
        zeros = count_zeros(g)
        sz = d * q ** (n - 1)
        dg = check_delta_gamma(k, delta, gamma)
        _require(st["zeros"] == zeros and st["sz_bound"] == sz, "zero count mismatch")
        _require(st["qualifying_vectors"] == dg.qualifying_vectors, "qualifying vector count mismatch")
        _require(Fraction(st["required"]) == dg.required, "required count mismatch")
        _require(dg.qualifying_vectors <= zeros, "more qualifying vectors than zeros")
        outcome = "sz_violation" if zeros > sz else ("profile_fails" if not dg.ok else "none")
        _require(st["outcome"] == outcome and outcome != "none", "no contradiction exhibited")
    else:
        raise _Fail(f"unknown step {name!r}")


def _verify_cascade(ctx, st):
    k, spec, n, p, data = ctx["k"], ctx["spec"], ctx["n"], ctx["poly"], ctx["data"]
    q = spec.q
    sp = space(spec, n)
    bound = comb(q + n - 2, n)
    _require(data["params"]["bound"] == bound, "bound mismatch")
    name = st["name"]
    if name == "kakeya_witnesses":
        seen = set()
        for d, b in st["witnesses"]:
            d, b = tuple(d), tuple(b)
            _require(any(d) and canonicalize(spec, d) == d, "direction is not canonical")
            _require(all(k.contains_encoding(v) for v in sp.line(b, d)), f"line {b}+a{d} not inside")
            seen.add(d)
        _require(seen == set(sp.directions()), "some direction has no witness")
    elif name == "size_vs_bound":
        rel = "<" if len(k) < bound else ">="
        _require(st["size"] == len(k) and st["bound"] == bound and st["relation"] == rel,
                 "size/bound mismatch")
        _require((rel == "<") == (data["kind"] == "refutation"), "kind does not match relation")
    elif name == "vanishing_on_set":
        _require(not p.is_zero() and p.degree <= q - 1, "P must be nonzero of degree <= q-1")
        _require(all(p.evaluate(x) == 0 for x in k.coords()), "P does not vanish on the set")
    elif name == "cascade_level":
        j = st["degree"]
        current = p
        for i in range(q - 1, j, -1):
            current = current - current.homogeneous_part(i)
        part = current.homogeneous_part(j)
        _require(sorted(tuple(r["direction"]) for r in st["lines"]) == sorted(sp.directions()),
                 "level does not cover every direction")
        for r in st["lines"]:
            y, b = tuple(r["direction"]), tuple(r["base"])
            _require(all(k.contains_encoding(v) for v in sp.line(b, y)), "witness line not inside")
            restriction = current.restrict_to_line(b, y)
            _require(restriction.is_zero(), "restriction is not identically zero")
            _require(restriction.coefficient(j) == part.evaluate(y) == 0, "coefficient identity fails")
        _require(all(part.evaluate(x) == 0 for x in sp.points()), "P_j does not vanish everywhere")
        _require(part.is_zero(), "P_j is not the zero polynomial")
    elif name == "constant_term":
        current = p
        for i in range(q - 1, 0, -1):
            current = current - current.homogeneous_part(i)
        _require(st["constant"] == current.coefficient((0,) * n), "constant mismatch")
        _require(len(k) == 0 or current.evaluate(k.coords()[0]) == 0, "constant term is nonzero")
    else:
        raise _Fail(f"unknown step {name!r}")
