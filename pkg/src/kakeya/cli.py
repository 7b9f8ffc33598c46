"""Command-line front end.

Exit codes: 0 success, 1 property fails, 2 input error, 3 resource limit.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict, dataclass, field as dc_field
from fractions import Fraction

from . import bounds, certify, core, search
from .errors import NotKakeyaError, ResourceLimitError, SetFileError, UsageError
from .field import parse_field
from .poly import parse_polynomial

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3

ENV_LIMITS = {
    "max_points": ("KAKEYA_MAX_POINTS", bounds.DEFAULT_MAX_POINTS),
    "exact_limit": ("KAKEYA_EXACT_LIMIT", search.DEFAULT_EXACT_LIMIT),
    "node_budget": ("KAKEYA_NODE_BUDGET", search.DEFAULT_NODE_BUDGET),
}


@dataclass
class RunConfig:
    command: str
    field: str | None = None
    modulus: str | None = None
    n: int | None = None
    input: str | None = None
    output: str | None = None
    seed: int = 0
    threads: int = 1
    format: str = "text"
    limits: dict = dc_field(default_factory=dict)
    options: dict = dc_field(default_factory=dict)

    def to_json(self) -> str:
        return core.dumps(asdict(self))

    def spec(self):
        if self.field is None:
            raise UsageError("--q is required")
        return parse_field(self.field, self.modulus)


def _env_int(name, default):
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{name} must be an integer, got {raw!r}") from None


def _emit(config, text, payload):
    if config.format == "json":
        out = core.dumps(payload)
    else:
        out = text if text.endswith("\n") else text + "\n"
    print(out, end="")


def _write_or_print(path, content):
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(content)
    else:
        print(content, end="")


def _fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _load_set(config):
    if not config.input:
        raise UsageError("an input set file is required")
    return core.read_set_file(config.input)


# -- subcommands -----------------------------------------------------------

def cmd_construct(config):
    k = core.construct(config.options["kind"], config.spec(), config.n, config.seed)
    if config.format == "json":
        _write_or_print(config.output, core.dumps(core.to_json_dict(k)))
    else:
        _write_or_print(config.output, core.to_set_text(k))
    return EXIT_OK


def _profile_rows(profile):
    return [{"direction": list(d), "base": list(b), "count": c} for d, b, c in profile.as_rows()]


def cmd_verify(config):
    k = _load_set(config)
    opts = config.options
    payload = {"size": len(k)}
    lines = []
    if opts.get("delta") is not None or opts.get("gamma") is not None:
        if opts.get("delta") is None or opts.get("gamma") is None:
            raise UsageError("--delta and --gamma go together")
        rep = core.check_delta_gamma(k, opts["delta"], opts["gamma"])
        ok = rep.ok
        payload.update({
            "property": "delta_gamma", "ok": ok, "delta": str(opts["delta"]),
            "gamma": str(opts["gamma"]), "qualifying_vectors": rep.qualifying_vectors,
            "required": str(rep.required), "threshold": rep.threshold,
            "delta_max": str(rep.delta_max),
        })
        lines.append(f"delta-gamma: {'yes' if ok else 'no'} (|L| = {rep.qualifying_vectors}, "
                     f"required {rep.required}, threshold {rep.threshold} points per line)")
        profile = rep.profile
    else:
        check = core.is_kakeya(k)
        ok = check.ok
        payload.update({"property": "kakeya", "ok": ok})
        if ok:
            lines.append("kakeya: yes")
        else:
            payload["failing_direction"] = list(check.failing_direction)
            lines.append(f"kakeya: no (no full line in direction {check.failing_direction})")
        profile = None
    if opts.get("profile"):
        profile = profile or core.direction_profile(k)
        payload["profile"] = _profile_rows(profile)
        lines.extend(f"  {d} base {b}: {c}" for d, b, c in profile.as_rows())
    _emit(config, "\n".join(lines), payload)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_profile(config):
    k = _load_set(config)
    profile = core.direction_profile(k)
    text = "\n".join(f"{d} base {b}: {c}" for d, b, c in profile.as_rows())
    _emit(config, text, {"q": profile.q, "profile": _profile_rows(profile)})
    return EXIT_OK


def _field_order(text):
    spec = text.split("mod=")[0].strip()
    if "^" in spec:
        p, k = spec.split("^")
        return int(p) ** int(k)
    return int(spec)


def cmd_bound(config):
    opts = config.options
    if config.field is None or config.n is None:
        raise UsageError("--q and --n are required")
    if (opts.get("delta") is None) != (opts.get("gamma") is None):
        raise UsageError("--delta and --gamma go together")
    try:
        q = _field_order(config.field)
    except ValueError:
        raise UsageError(f"cannot read a field order from {config.field!r}") from None
    reports = bounds.all_bounds(q, config.n, opts.get("delta"), opts.get("gamma"), opts.get("r"))
    text = "\n".join(f"{r.formula:<17} {r.bound}" + (f"  (d = {r.d})" if r.d is not None else "")
                     for r in reports)
    _emit(config, text, {"q": q, "n": config.n, "bounds": [r.to_dict() for r in reports]})
    return EXIT_OK


def cmd_certify(config):
    k = _load_set(config)
    opts = config.options
    if opts.get("mode") == "thm2":
        cert = certify.certify_refutation_thm2(k, opts.get("delta") or 1, opts.get("gamma") or 1)
    else:
        cert = certify.certify_cascade(k)
    _write_or_print(config.output, cert.to_json())
    if config.output:
        print(f"{cert.kind} certificate ({cert.pipeline}, {len(cert.steps)} steps) -> {config.output}",
              file=sys.stderr)
    return EXIT_OK


def cmd_zeros(config):
    spec = config.spec()
    if config.n is None:
        raise UsageError("--n is required")
    f = parse_polynomial(config.options["poly"], spec, config.n)
    count = bounds.count_zeros(f, config.limits["max_points"])
    deg = f.degree
    payload = {"polynomial": f.to_text(), "zeros": count, "field": str(spec), "n": config.n,
               "degree": None if f.is_zero() else deg}
    if not f.is_zero():
        payload["sz_bound"] = deg * spec.q ** (config.n - 1)
    _emit(config, str(count), payload)
    return EXIT_OK


def cmd_search(config):
    spec = config.spec()
    if config.n is None:
        raise UsageError("--n is required")
    opts = config.options
    if opts.get("mode") == "greedy":
        result = search.minimal_kakeya_greedy(spec, config.n, opts.get("restarts", 8),
                                              config.seed, config.threads)
    else:
        result = search.minimal_kakeya_exact(spec, config.n, config.limits["exact_limit"],
                                             config.limits["node_budget"])
    summary = result.to_dict(include_timing=bool(opts.get("timing")))
    summary["alon_tao"] = bounds.alon_tao_bound(spec.q, config.n).bound
    if config.output:
        core.write_set_file(result.witness, config.output)
    if config.format == "json":
        print(core.dumps(summary), end="")
    else:
        print(f"minimum size {result.size} ({result.optimal}, {result.nodes} nodes); "
              f"lower bound {summary['alon_tao']}")
    return EXIT_OK


def cmd_verify_certificate(config):
    if not config.input:
        raise UsageError("a certificate file is required")
    with open(config.input, encoding="utf-8") as fh:
        text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"certificate is not JSON: {exc}") from None
    report = certify.verify_certificate(data)
    lines = [f"step {i} {name}: {'ok' if ok else 'FAILED ' + msg}" for i, name, ok, msg in report.results]
    lines.append(f"certificate {'verified' if report.ok else 'REJECTED'}")
    payload = {"ok": report.ok, "steps": [{"index": i, "name": name, "ok": ok, "message": msg}
                                          for i, name, ok, msg in report.results]}
    _emit(config, "\n".join(lines), payload)
    return EXIT_OK if report.ok else EXIT_FAIL


COMMANDS = {
    "construct": cmd_construct,
    "verify": cmd_verify,
    "profile": cmd_profile,
    "bound": cmd_bound,
    "certify": cmd_certify,
    "zeros": cmd_zeros,
    "search": cmd_search,
    "verify-certificate": cmd_verify_certificate,
}


# -- argument parsing --------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", dest="field", help='field, e.g. "3", "2^2", "2^2 mod=1,1,1"')
    common.add_argument("--mod", dest="modulus", help="modulus coefficients c0,...,ck (low to high)")
    common.add_argument("--n", type=int)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("-o", "--output")
    common.add_argument("--max-points", type=int)
    common.add_argument("--exact-limit", type=int)
    common.add_argument("--node-budget", type=int)
    common.add_argument("--dump-config", action="store_true",
                        help="print the parsed configuration as JSON and exit")

    parser = argparse.ArgumentParser(prog="kakeya", description="Finite-field Kakeya set toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common], help="build a Kakeya set")
    p.add_argument("--kind", choices=core.CONSTRUCTIONS, default="greedy_lines")

    p = sub.add_parser("verify", parents=[common], help="check the Kakeya or (delta,gamma) property")
    p.add_argument("input")
    p.add_argument("--kakeya", action="store_true")
    p.add_argument("--delta", type=_fraction)
    p.add_argument("--gamma", type=_fraction)
    p.add_argument("--profile", action="store_true")

    p = sub.add_parser("profile", parents=[common], help="per-direction maximum line intersections")
    p.add_argument("input")

    p = sub.add_parser("bound", parents=[common], help="closed-form lower bounds")
    p.add_argument("--delta", type=_fraction)
    p.add_argument("--gamma", type=_fraction)
    p.add_argument("--r", type=int)

    p = sub.add_parser("certify", parents=[common], help="emit a proof certificate")
    p.add_argument("input")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--cascade", dest="mode", action="store_const", const="cascade")
    mode.add_argument("--thm2", dest="mode", action="store_const", const="thm2")
    p.add_argument("--delta", type=_fraction)
    p.add_argument("--gamma", type=_fraction)

    p = sub.add_parser("zeros", parents=[common], help="count zeros of a polynomial")
    p.add_argument("--poly", required=True)

    p = sub.add_parser("search", parents=[common], help="search for a minimum Kakeya set")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", dest="mode", action="store_const", const="exact")
    mode.add_argument("--greedy", dest="mode", action="store_const", const="greedy")
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--timing", action="store_true", help="include wall time in the JSON summary")

    p = sub.add_parser("verify-certificate", parents=[common], help="re-check a certificate file")
    p.add_argument("input")
    return parser


_COMMON_KEYS = {"command", "field", "modulus", "n", "seed", "threads", "format", "output",
                "max_points", "exact_limit", "node_budget", "dump_config", "input"}


def config_from_args(args) -> RunConfig:
    ns = vars(args)
    limits = {}
    for key, (env, default) in ENV_LIMITS.items():
        limits[key] = ns.get(key) if ns.get(key) is not None else _env_int(env, default)
    options = {k: v for k, v in ns.items() if k not in _COMMON_KEYS}
    for key in ("delta", "gamma"):
        if options.get(key) is not None:
            options[key] = str(options[key])
    cfg = RunConfig(
        command=args.command, field=args.field, modulus=args.modulus, n=args.n,
        input=ns.get("input"), output=args.output, seed=args.seed, threads=args.threads,
        format=args.format, limits=limits, options=options,
    )
    return cfg


def _runtime_options(cfg):
    opts = dict(cfg.options)
    for key in ("delta", "gamma"):
        if opts.get(key) is not None:
            opts[key] = Fraction(opts[key])
    return opts


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
        if args.dump_config:
            print(cfg.to_json(), end="")
            return EXIT_OK
        run_cfg = RunConfig(**{**asdict(cfg), "options": _runtime_options(cfg)})
        return COMMANDS[cfg.command](run_cfg)
    except SetFileError as exc:
        print(f"error: {cfg.input}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NotKakeyaError as exc:
        print(f"error: not a Kakeya set: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ResourceLimitError as exc:
        print(f"error: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (UsageError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
