"""Command-line front end.

Every subcommand produces a list of checks, prints them as a table and
optionally writes them as JSON.  Exit codes: 0 all checks pass, 1 some
check fails or errors, 2 malformed configuration, 3 output could not be written.
"""

import argparse
import json
import os
import re
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import acceptance, bridge, charlab, traces
from .acceptance import Check
from .cones import GradedElement, symplectic_cone
from .scalars import RatFunc, render
from .sl2quant import algebra, key_weight, keys_up_to
from .weyl import WeylTrace, moyal_product

_RATIONAL = re.compile(r"-?\d+(/[1-9]\d*)?")
_NEGATIVE = re.compile(r"-[\d.][\d./,eE+-]*")


class ConfigError(Exception):
    pass


def parse_rational(text, name):
    if not _RATIONAL.fullmatch(text.strip()):
        raise ConfigError(f"{name} must be an exact rational p/q, got {text!r}")
    return Fraction(text.strip())


def parse_param(text, name, symbol):
    if text == "symbolic":
        return RatFunc.var(symbol)
    return parse_rational(text, name)


def parse_matrix(text, size):
    if text.strip() == "0":
        return [[0] * size for _ in range(size)]
    entries = [parse_rational(t, "--B") for t in text.split(",")]
    if len(entries) != size * size:
        raise ConfigError(f"--B needs {size * size} comma-separated entries or 0")
    return [entries[i * size:(i + 1) * size] for i in range(size)]


def thread_count(value):
    if value is not None:
        return value
    env = os.environ.get("SHORTSTAR_THREADS")
    if env:
        if not env.isdigit() or int(env) < 1:
            raise ConfigError("SHORTSTAR_THREADS must be a positive integer")
        return int(env)
    return os.cpu_count() or 1


def _fan_out(jobs, threads):
    """Run zero-argument callables, keeping input order in the output."""
    if threads <= 1 or len(jobs) <= 1:
        return [job() for job in jobs]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda job: job(), jobs))


def _info(name, value):
    return Check(name, True, value=value)


def _from_report(name, report):
    witness = None if report else repr(report.witness)
    return Check(name, bool(report), witness, str(report.checked))


# -- subcommands ----------------------------------------------------------------------------------


def run_moyal(args, threads):
    n = args.n
    B = parse_matrix(args.B, 2 * n)
    cone = symplectic_cone(n)
    gens = [GradedElement.generator(cone, name) for name in cone.names]
    checks = []
    for a in gens:
        for b in gens:
            comps = moyal_product(a, b, B)
            while len(comps) > 1 and not comps[-1].terms:
                comps.pop()
            label = f"{a}*{b}"
            checks.append(_info(label, f"{label}: " + " + ".join(f"[{c}]" for c in comps)))
    table = bridge.moyal_table(B, args.cap, n)
    checks.append(_from_report("check_short", bridge.check_short(table)))
    checks.append(_from_report("bracket", bridge.check_bracket(table)))
    checks.append(_info("even", str(bool(bridge.check_even(table))).lower()))
    return checks


def run_sl2_traces(args, threads):
    lam = parse_param(args.lam, "--lambda", "l")
    w = parse_param(args.w, "--w", "w")
    c = parse_rational(args.c, "--c")
    alg = algebra(lam)
    h = alg.h
    checks = [
        _info("T^w(1)", render(traces.verma_trace(alg.one(), w=w))),
        _info("T^w(h)", render(traces.verma_trace(h, w=w))),
        _info("T(h^2)", render(traces.untwisted_trace(h * h))),
        _info("T_jordan(fe)", render(traces.jordan_trace(alg.f * alg.e, c))),
    ]
    families = [
        ("verma", lambda: traces.verma_functional(alg, w, args.cap)),
        ("dual verma", lambda: traces.dual_verma_functional(alg, w, args.cap)),
        ("untwisted", lambda: traces.untwisted_functional(alg, args.cap)),
        ("jordan", lambda: traces.jordan_functional(alg, c, args.cap)),
    ]
    jobs = [lambda make=make: traces.verify_twisted_trace(make()) for _, make in families]
    for (name, _), report in zip(families, _fan_out(jobs, threads)):
        checks.append(_from_report(f"{name} twisted-trace law", report))
    return checks


def _bridge_trace(args):
    if args.cone == "weyl":
        q = parse_rational(args.q, "--q")
        return WeylTrace(q, 2 * args.cap), bridge.WeylBackend(1)
    lam = parse_param(args.lam, "--lambda", "l")
    alg = algebra(lam)
    if args.trace == "untwisted":
        T = traces.untwisted_functional(alg, 2 * args.cap)
    elif args.trace == "verma":
        T = traces.verma_functional(alg, parse_param(args.w, "--w", "w"), 2 * args.cap)
    else:
        T = traces.jordan_functional(alg, parse_rational(args.c, "--c"), 2 * args.cap)
    return T, bridge.SL2Backend(alg)


def run_bridge(args, threads):
    T, backend = _bridge_trace(args)
    phi = bridge.build_quantization_map(T, backend, args.cap)
    table = bridge.star_table(phi)
    jobs = [
        lambda: _from_report("check_short", bridge.check_short(table)),
        lambda: _from_report("bracket", bridge.check_bracket(table)),
        lambda: _from_report("ct_recovery", bridge.ct_recovery(phi)),
        lambda: _from_report("twist_recovery", bridge.recover_twist(phi)),
    ]
    checks = _fan_out(jobs, threads)
    checks.append(_info("even", str(bool(bridge.check_even(table))).lower()))
    data = bridge.gram(phi, check_orthogonal=False)
    for d in sorted(data.determinants):
        checks.append(_info(f"gram det degree {d}", render(data.determinants[d])))
    return checks


def run_characters(args, threads):
    lam = parse_param(args.lam, "--lambda", "l")
    w = parse_param(args.w, "--w", "w")
    ctx = charlab.CharacterContext(lam, w)
    alg = algebra(lam)
    keys = [k for k in keys_up_to(args.cap) if key_weight(k) == 0]

    def one(k):
        a = alg.key(k)
        rational = charlab.character_rational(a, ctx=ctx)
        name = "h^%d" % k[1] if k[1] != 1 else "h"
        name = "1" if k[1] == 0 else name
        out = [_info(f"Ch({name})", render(rational))]
        out.append(Check(f"recursion Ch({name})", charlab.character_by_recursion(a, ctx) == rational))
        out.append(Check(f"ode Ch({name})", bool(charlab.ode_check(a, ctx))))
        return out

    checks = []
    for group in _fan_out([lambda k=k: one(k) for k in keys], threads):
        checks.extend(group)
    return checks


def run_unitarity(args, threads):
    lam = parse_rational(args.lam, "--lambda")
    report = bridge.hermitian_report(args.form, lam, args.cap)
    checks = [Check("hermitian", report.hermitian)]
    for deg in report.degrees:
        checks.append(_info(f"degree {deg.degree} minors", ", ".join(render(m) for m in deg.minors)))
    checks.append(
        Check(
            "positive-definite",
            report.positive_definite,
            None if report.first_failure is None else f"first failure at degree {report.first_failure}",
            str(report.positive_definite).lower(),
        )
    )
    return checks


def run_verify_all(args, threads):
    jobs = [lambda n=n: acceptance.run_criterion(n, args.cap) for n, _, _ in acceptance.CRITERIA]
    checks = []
    for result in _fan_out(jobs, threads):
        for c in result.checks:
            c.name = f"{result.number}. {c.name}"
            checks.append(c)
    return checks


COMMANDS = {
    "moyal": run_moyal,
    "sl2-traces": run_sl2_traces,
    "bridge": run_bridge,
    "characters": run_characters,
    "unitarity": run_unitarity,
    "verify-all": run_verify_all,
}


# -- plumbing -----------------------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(prog="shortstar", description="Short star-products from twisted traces.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, cap=12):
        p.add_argument("--cap", type=int, default=cap, help="degree cap (even, at least 2)")
        p.add_argument("--json", dest="json_path", help="write the report as JSON to this path")
        p.add_argument("--threads", type=int, help="worker threads (default: SHORTSTAR_THREADS or CPU count)")
        p.add_argument("--field", choices=["auto", "rational", "ratfun"], default="auto",
                       help="require numeric (rational) or allow symbolic (ratfun) parameters")
        return p

    p = common(sub.add_parser("moyal", help="Moyal-Weyl products"), cap=6)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--B", default="0", help="0 or row-major comma-separated entries of B in sp(2n)")

    p = common(sub.add_parser("sl2-traces", help="twisted traces on D_lambda"))
    p.add_argument("--lambda", dest="lam", default="symbolic")
    p.add_argument("--w", default="symbolic")
    p.add_argument("--c", default="1", help="parameter of the unipotent twist")

    p = common(sub.add_parser("bridge", help="quantization map and star-product from a trace"))
    p.add_argument("--cone", choices=["sl2", "weyl"], default="sl2")
    p.add_argument("--trace", choices=["untwisted", "verma", "jordan"], default="untwisted")
    p.add_argument("--lambda", dest="lam", default="symbolic")
    p.add_argument("--w", default="symbolic")
    p.add_argument("--c", default="1")
    p.add_argument("--q", default="-1", help="torus parameter for the Weyl trace")

    p = common(sub.add_parser("characters", help="reduced Verma characters"))
    p.add_argument("--lambda", dest="lam", default="symbolic")
    p.add_argument("--w", default="symbolic")

    p = common(sub.add_parser("unitarity", help="Hermitian Gram signatures"))
    p.add_argument("--form", choices=["split", "compact"], required=True)
    p.add_argument("--lambda", dest="lam", required=True)

    common(sub.add_parser("verify-all", help="run the acceptance suite"))
    return parser


def _params(args):
    skip = {"command", "json_path", "threads"}
    return {k: str(v) for k, v in sorted(vars(args).items()) if k not in skip and v is not None}


def validate(args):
    if args.cap < 2 or args.cap % 2:
        raise ConfigError("--cap must be even and at least 2")
    if args.threads is not None and args.threads < 1:
        raise ConfigError("--threads must be positive")
    if args.field == "rational":
        for name in ("lam", "w"):
            if getattr(args, name, None) == "symbolic":
                raise ConfigError("--field rational needs numeric parameters")


def render_value(v):
    if v is None:
        return None
    return v if isinstance(v, str) else render(v)


def make_report(command, params, checks, elapsed_ms):
    return {
        "command": command,
        "params": params,
        "checks": [
            {
                "name": c.name,
                "status": c.status,
                "witness": None if c.witness is None and not c.error else str(c.error or c.witness),
                "value": render_value(c.value),
            }
            for c in checks
        ],
        "elapsed_ms": int(elapsed_ms),
    }


def emit_json(report, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(report, fh, indent=2)
        fh.write("\n")


def print_table(report, stream=None):
    stream = stream or sys.stdout
    for c in report["checks"]:
        line = f"{c['status']:5}  {c['name']}"
        if c["value"] is not None:
            line += f" = {c['value']}"
        if c["witness"] is not None:
            line += f"  (witness: {c['witness']})"
        print(line, file=stream)
    print(f"{report['command']}: {len(report['checks'])} checks in {report['elapsed_ms']} ms", file=stream)


def _attach_negative_values(argv):
    """Turn ``--lambda -1/2`` into ``--lambda=-1/2`` so argparse does not read an option."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok.startswith("--") and "=" not in tok and i + 1 < len(argv) and _NEGATIVE.fullmatch(argv[i + 1]):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv=None):
    parser = build_parser()
    argv = _attach_negative_values(sys.argv[1:] if argv is None else list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    start = time.perf_counter()
    try:
        validate(args)
        threads = thread_count(args.threads)
        checks = COMMANDS[args.command](args, threads)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    report = make_report(args.command, _params(args), checks, (time.perf_counter() - start) * 1000)
    if args.json_path:
        try:
            emit_json(report, args.json_path)
        except OSError as exc:
            print(f"cannot write {args.json_path}: {exc}", file=sys.stderr)
            return 3
    print_table(report)
    return 0 if all(c["status"] == "pass" for c in report["checks"]) else 1


if __name__ == "__main__":
    sys.exit(main())
