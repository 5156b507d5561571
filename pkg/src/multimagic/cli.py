"""Command-line front end.

Subcommands: gen, verify, star, findgen, order-bound, fixtures.
Exit codes: 0 success / all checks pass, 1 a magic property or
certification failed, 2 usage or input errors.  The cell budget for
materialization honors the MULTIMAGIC_CELL_BUDGET environment variable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import fixtures
from .construct import (SquareSpec, TooLargeError, VirtualHypercube,
                        cell_budget, read_square_csv, star, write_square_csv)
from .genmat import (GeneratorMatrix, SmallUnitGroupError, brute_force_generator,
                     explicit_generator_over, find_generator)
from .orders import binomial_feasible, degree_bound
from .ring import FiniteRing, RingError
from .verify import check_multimagic, check_sub5x5_properties

PASS, FAIL, USAGE = 0, 1, 2


class GenerationError(Exception):
    """No usable generator matrix for the requested parameters."""


def _info(msg):
    print(msg, file=sys.stderr)


def _parse_ring(args) -> FiniteRing:
    if getattr(args, "ring", None):
        return FiniteRing.parse(args.ring)
    if getattr(args, "q", None):
        return FiniteRing.zmod(args.q)
    raise RingError("specify --q or --ring")


def _parse_t(text, size, ring):
    if text is None:
        return (0,) * size
    parts = [p for p in text.replace(" ", "").split(",") if p]
    if len(parts) != size:
        raise RingError(f"t needs {size} comma-separated entries")
    return tuple(ring.element(int(p)) for p in parts)


def _builtin_generator(ring, n, d):
    """Default generator route when none is named explicitly."""
    if d != 2:
        raise RingError("for d > 2 name a generator with --genmat")
    if n == 1:
        gm = brute_force_generator(ring, 1, budget=10 ** 6)
        if gm is None:
            raise GenerationError(
                f"no certifiable 2x2 generator exists over {ring.descriptor()} "
                f"(exhaustive minor search failed)")
        return gm
    try:
        return explicit_generator_over(ring, n)
    except SmallUnitGroupError as exc:
        if n == 2 and ring.kind == "zmod" and ring.q % 2 == 1:
            gm = fixtures.get_generator("gen-d2-n2-odd").over(ring)
            if gm.certify().ok:
                return gm
        raise GenerationError(str(exc)) from exc


def _load_generator(args):
    if args.genmat and args.genmat not in fixtures.GENERATORS:
        with open(args.genmat) as fh:
            return GeneratorMatrix.from_json(json.load(fh))  # carries its ring
    ring = _parse_ring(args)
    if args.genmat:
        return fixtures.get_generator(args.genmat).over(ring)
    return _builtin_generator(ring, args.n, args.d)


# ---------------------------------------------------------------------------
# gen
# ---------------------------------------------------------------------------

def cmd_gen(args) -> int:
    try:
        gm = _load_generator(args)
    except GenerationError as exc:
        _info(f"error: {exc}")
        return FAIL
    report = gm.certify()
    if not report.ok:
        _info(f"generator certification failed: {report.failure.describe(gm.ring)}")
        return FAIL
    _info(f"generator certified: degree {gm.n}, d={gm.d}, "
          f"{report.minors_checked} minors over {gm.ring.descriptor()}")

    t = _parse_t(args.t, gm.size, gm.ring)
    spec = SquareSpec.build(gm, t=t, certify=False)
    vh = VirtualHypercube(spec)
    _info(f"order {vh.order}"
          + (f"^{spec.d} hypercube" if spec.d != 2 else " square")
          + f", {vh.cells} cells")

    if args.spec:
        with open(args.spec, "w") as fh:
            json.dump(spec.to_json(), fh, indent=1)
        _info(f"spec written to {args.spec}")
    if args.virtual:
        if not args.spec:
            _info("note: --virtual without --spec writes nothing")
        return PASS

    try:
        tensor = vh.materialize()
    except TooLargeError as exc:
        _info(f"error: {exc}")
        return USAGE
    if args.json_out:
        with open(args.json_out, "w") as fh:
            json.dump(tensor.tolist(), fh)
        _info(f"tensor written to {args.json_out}")
    if spec.d != 2:
        if args.out:
            _info("error: CSV output is two-dimensional; use --json-out")
            return USAGE
        return PASS
    if args.out:
        write_square_csv(tensor, args.out)
        _info(f"square written to {args.out}")
    elif not args.json_out:
        for row in tensor:
            print(",".join(str(int(v)) for v in row))
    return PASS


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _checks(text):
    wanted = set()
    if text:
        for name in text.split(","):
            name = name.strip()
            if name not in ("pandiagonal", "associative", "perfect", "sub5"):
                raise RingError(f"unknown check {name!r}")
            wanted.add(name)
    return wanted


def cmd_verify(args) -> int:
    sources = [s for s in (args.infile, args.fixture, args.spec) if s]
    if len(sources) != 1:
        _info("error: give exactly one of --in, --fixture, --spec")
        return USAGE
    wanted = _checks(args.checks)

    if args.infile:
        source = read_square_csv(args.infile)
    elif args.fixture:
        source = fixtures.get_square(args.fixture).values()
    else:
        with open(args.spec) as fh:
            spec = SquareSpec.from_json(json.load(fh))
        vh = VirtualHypercube(spec)
        if args.stream:
            source = vh
        elif vh.cells > cell_budget():
            _info(f"error: {vh.cells} cells exceed the budget; pass --stream")
            return USAGE
        else:
            source = vh.materialize()

    report = check_multimagic(
        source, args.degree,
        pandiagonal="pandiagonal" in wanted,
        associative="associative" in wanted,
        perfect="perfect" in wanted,
        workers=args.threads or os.cpu_count() or 1,
    )
    out = report.to_json()
    if "sub5" in wanted:
        vals = source if isinstance(source, np.ndarray) else source.materialize()
        aligned, spread = check_sub5x5_properties(vals)
        out["sub5x5"] = {"aligned_blocks": aligned, "mod5_selections": spread}
    ok = report.ok and all(out.get("sub5x5", {"": True}).values())

    if args.json_out:
        with open(args.json_out, "w") as fh:
            json.dump(out, fh, indent=1)
    _info(f"order {report.order} d={report.dimension} degrees 1..{report.degree} "
          f"[{report.kernel} kernel]")
    for e in range(1, report.degree + 1):
        props = report.per_degree[e]
        line = " ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in props.items())
        _info(f"  S({e}) = {report.sums[e]}: {line}")
    if report.normal is not None:
        _info(f"  normal: {'ok' if report.normal else 'FAIL'}")
    if report.associative is not None:
        _info(f"  associative: {'ok' if report.associative else 'FAIL'}")
    if "sub5x5" in out:
        _info(f"  sub5x5: {out['sub5x5']}")
    for f in report.failures[:5]:
        _info(f"  failure: degree {f.degree} {f.prop} {f.line}: "
              f"observed {f.observed}, expected {f.expected}")
    print("PASS" if ok else "FAIL")
    return PASS if ok else FAIL


# ---------------------------------------------------------------------------
# star
# ---------------------------------------------------------------------------

def _square_arg(text):
    try:
        return fixtures.get_square(text).values()
    except KeyError:
        return read_square_csv(text)


def cmd_star(args) -> int:
    a = _square_arg(args.a)
    b = _square_arg(args.b)
    out = star(a, b, normalized=not args.literal)
    _info(f"star product: {a.shape[0]} x {b.shape[0]} -> order {out.shape[0]}")
    if args.out:
        write_square_csv(out, args.out)
        _info(f"written to {args.out}")
    if args.verify_degree:
        report = check_multimagic(out, args.verify_degree,
                                  check_normality=not args.literal,
                                  workers=args.threads or os.cpu_count() or 1)
        print("PASS" if report.ok else "FAIL")
        return PASS if report.ok else FAIL
    return PASS


# ---------------------------------------------------------------------------
# findgen / order-bound / fixtures
# ---------------------------------------------------------------------------

def cmd_findgen(args) -> int:
    q, gm = find_generator(args.n, args.d, strategy=args.strategy,
                           seed=args.seed, budget=args.budget)
    report = gm.certify()
    _info(f"q = {q}, re-certified: {'ok' if report.ok else 'FAIL'}")
    payload = gm.to_json()
    payload["q"] = q
    if args.json_out:
        with open(args.json_out, "w") as fh:
            json.dump(payload, fh, indent=1)
    print(json.dumps(payload))
    return PASS if report.ok else FAIL


def cmd_order_bound(args) -> int:
    bound = degree_bound(args.m)
    print(f"max possible degree: {bound}")
    top = min(bound + 2, 24)
    for n in range(1, top + 1):
        verdict = binomial_feasible(args.m, n)
        marker = "" if n <= bound else "   (beyond bound)"
        print(f"  n={n}: divisibility {'holds' if verdict else 'FAILS'}{marker}")
    if top < bound + 2:
        print(f"  ... table truncated at n={top}")
    return PASS


def cmd_fixtures(args) -> int:
    if args.action == "list":
        for name in fixtures.list_squares():
            fx = fixtures.get_square(name)
            alias = f" (alias: {', '.join(fx.aliases)})" if fx.aliases else ""
            print(f"square    {name:<16} order {fx.order:>3}{alias}  {fx.notes}")
        for name in fixtures.list_generators():
            gx = fixtures.get_generator(name)
            print(f"generator {name:<16} degree {gx.n}, d={gx.d}  {gx.notes}")
        return PASS
    if not args.name:
        _info("error: dump requires --name")
        return USAGE
    fx_name = args.name
    if fx_name in fixtures.GENERATORS:
        gx = fixtures.get_generator(fx_name)
        payload = {"name": gx.name, "n": gx.n, "d": gx.d,
                   "rows": [list(r) for r in gx.rows],
                   "good_moduli": list(gx.good_moduli),
                   "bad_moduli": list(gx.bad_moduli)}
        text = json.dumps(payload, indent=1)
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text + "\n")
        else:
            print(text)
        return PASS
    fx = fixtures.get_square(fx_name)
    vals = fx.values()
    if args.format == "json":
        payload = {"name": fx.name, "table": vals.tolist(), "notes": fx.notes}
        if fx.spec_json:
            payload["spec"] = fx.spec_json
        text = json.dumps(payload, indent=1)
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text + "\n")
        else:
            print(text)
    else:
        if args.out:
            write_square_csv(vals, args.out)
        else:
            for row in vals:
                print(",".join(str(int(v)) for v in row))
    return PASS


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="multimagic",
        description="construct, verify and compose multimagic squares")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a square/hypercube")
    g.add_argument("--n", type=int, required=True, help="multimagic degree")
    g.add_argument("--q", type=int, help="modulus (ring Z/qZ)")
    g.add_argument("--ring", help="ring descriptor, e.g. gf:2^2:x^2+x+1")
    g.add_argument("--d", type=int, default=2, help="dimension (default 2)")
    g.add_argument("--t", help="shift vector, comma separated")
    g.add_argument("--genmat", help="generator fixture name or JSON file")
    g.add_argument("--virtual", action="store_true",
                   help="do not materialize; write only the spec")
    g.add_argument("--spec", help="write the construction spec JSON here")
    g.add_argument("--out", help="write CSV here (default: stdout)")
    g.add_argument("--json-out", dest="json_out", help="write tensor JSON here")
    g.set_defaults(func=cmd_gen)

    v = sub.add_parser("verify", help="verify magic properties")
    v.add_argument("--in", dest="infile", help="CSV square")
    v.add_argument("--fixture", help="built-in square name")
    v.add_argument("--spec", help="construction spec JSON")
    v.add_argument("--stream", action="store_true",
                   help="verify a spec without materializing it")
    v.add_argument("--degree", type=int, required=True)
    v.add_argument("--checks", help="comma list: pandiagonal,associative,perfect,sub5")
    v.add_argument("--json", dest="json_out", help="write the report JSON here")
    v.add_argument("--threads", type=int, default=None,
                   help="verifier workers (default: all cores)")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("star", help="compose two squares")
    s.add_argument("--a", required=True, help="fixture name or CSV path")
    s.add_argument("--b", required=True, help="fixture name or CSV path")
    s.add_argument("--literal", action="store_true",
                   help="raw block formula (output not normal)")
    s.add_argument("--out", help="write CSV here")
    s.add_argument("--verify", dest="verify_degree", type=int,
                   help="verify the product to this degree")
    s.add_argument("--threads", type=int, default=None,
                   help="verifier workers (default: all cores)")
    s.set_defaults(func=cmd_star)

    f = sub.add_parser("findgen", help="search for a generator matrix")
    f.add_argument("--n", type=int, required=True)
    f.add_argument("--d", type=int, default=2)
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("--strategy", choices=("sequential", "seeded-random"),
                   default="seeded-random")
    f.add_argument("--budget", type=int, default=10 ** 6)
    f.add_argument("--json-out", dest="json_out")
    f.set_defaults(func=cmd_findgen)

    o = sub.add_parser("order-bound", help="degree bound for an order")
    o.add_argument("--m", type=int, required=True)
    o.set_defaults(func=cmd_order_bound)

    x = sub.add_parser("fixtures", help="list or dump built-in fixtures")
    x.add_argument("action", choices=("list", "dump"))
    x.add_argument("--name", help="fixture to dump")
    x.add_argument("--format", choices=("csv", "json"), default="csv")
    x.add_argument("--out")
    x.set_defaults(func=cmd_fixtures)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (RingError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        _info(f"error: {exc}")
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
