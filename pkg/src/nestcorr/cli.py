"""Command-line front end.

Exit codes: 0 success, 2 invalid input, 3 a failed identity check,
1 anything else.  ``--format json`` output parses back with
``parse_output``.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import __version__
from .errors import IdentityMismatch, NestcorrError, ValidationError
from .qcore import QPoly

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INVALID = 2
EXIT_MISMATCH = 3


# -- argument types ---------------------------------------------------------------


def _sites(text):
    try:
        return tuple(int(v) for v in text.replace(" ", "").split(",") if v != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _rational(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _nonneg(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


# -- JSON encoding -------------------------------------------------------------------


def _encode(value):
    if isinstance(value, QPoly):
        return {"qpoly": value.to_json()}
    if isinstance(value, Fraction):
        return {"fraction": str(value)}
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    if isinstance(value, (tuple, list)):
        return [_encode(v) for v in value]
    if isinstance(value, dict):
        return {k: _encode(v) for k, v in value.items()}
    return value


def _decode(obj):
    if isinstance(obj, dict):
        if set(obj) == {"qpoly"}:
            return QPoly.from_json(obj["qpoly"])
        if set(obj) == {"fraction"}:
            return Fraction(obj["fraction"])
        if set(obj) == {"re", "im"}:
            return complex(obj["re"], obj["im"])
        return {k: _decode(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_decode(v) for v in obj]
    return obj


def dumps(value):
    return json.dumps(_encode(value), sort_keys=True, separators=(",", ":"))


def parse_output(text):
    """Inverse of the ``--format json`` output: QPoly, Fraction and complex values are rebuilt.

    ``zq`` prints the bare polynomial, which comes back as a QPoly.
    """
    obj = json.loads(text)
    if isinstance(obj, dict) and set(obj) == {"min_degree", "coeffs"}:
        return QPoly.from_json(obj)
    return _decode(obj)


def _emit(args, payload, text=None):
    if args.format == "json":
        print(payload if isinstance(payload, str) else dumps(payload))
    else:
        print(text if text is not None else _as_text(payload))


def _as_text(payload):
    if not isinstance(payload, dict):
        return str(payload)
    lines = []
    for k, v in payload.items():
        if isinstance(v, dict):
            v = " ".join(f"{a}={b}" for a, b in v.items())
        lines.append(f"{k}: {v}")
    return "\n".join(lines)


# -- subcommands -------------------------------------------------------------------


def cmd_zq(args):
    from .partitions import zq_product

    value = zq_product(args.L, args.N, args.K)
    _emit(args, json.dumps(value.to_json(), separators=(",", ":")), str(value))


def cmd_count(args):
    from .partitions import macmahon_count, zq_brute

    count = macmahon_count(args.L, args.N, args.K)
    payload = {"params": {"L": args.L, "N": args.N, "K": args.K}, "count": count}
    if args.brute:
        brute = zq_brute(args.L, args.N, args.K)(1)
        if brute != count:
            raise IdentityMismatch("MacMahon count vs enumeration", count, brute)
        payload["brute"] = brute
    _emit(args, payload, str(count))


def cmd_schur(args):
    from .schur import principal_specialization, schur_eval, ssyt_count_formula

    lam = tuple(args.lam)
    if args.x:
        x = tuple(args.x)
        if len(lam) > len(x):
            raise ValidationError("partition longer than the point")
        value = schur_eval(lam + (0,) * (len(x) - len(lam)), x)
        params = {"lam": list(lam), "x": [str(v) for v in x]}
    else:
        if args.N is None:
            raise ValidationError("give --N with --mode, or points with --x")
        value = principal_specialization(lam, args.N, args.mode)
        params = {"lam": list(lam), "N": args.N, "mode": args.mode}
        params["count"] = ssyt_count_formula(lam + (0,) * (args.N - len(lam)), args.N)
    _emit(args, {"params": params, "value": value}, str(value))


def _verify_one(name, params):
    from .verify import run_check

    return run_check(name, params)


def cmd_verify(args):
    from .verify import CHECKS, Params

    params = Params(
        N=args.N, L=args.L, M=args.M, K=args.K, m=args.m, n=args.n, k=args.k,
        seed=args.seed, small=args.small, form=args.form,
    )
    names = list(CHECKS) if args.name == "all" else [args.name]
    for name in names:
        if name not in CHECKS:
            raise ValidationError(f"unknown check {name!r}; choose from all, {', '.join(CHECKS)}")
    if args.jobs > 1 and len(names) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_verify_one, names, [params] * len(names)))
    else:
        results = [_verify_one(name, params) for name in names]
    payload = {"results": [r.to_dict() for r in results], "ok": all(r.ok for r in results)}
    _emit(args, payload, "\n".join(r.line() for r in results))
    return EXIT_OK if payload["ok"] else EXIT_MISMATCH


def cmd_watermelon(args):
    from .paths import enumerate_watermelons, nests_to_json, path_gf

    L = args.N if args.L is None else args.L
    value = path_gf("watermelon", args.N, args.Mcal, L, args.n, args.delta)
    payload = {
        "params": {"N": args.N, "L": L, "Mcal": args.Mcal, "n": args.n, "delta": args.delta},
        "gf": value,
        "count": value(1),
    }
    if args.list:
        payload["nests"] = json.loads(nests_to_json(enumerate_watermelons(args.N, L, args.Mcal, args.n, args.delta)))
    _emit(args, payload, f"{value}\ncount: {value(1)}")


def cmd_walks(args):
    from .paths import bottleneck_count, random_turns_count, random_turns_kst

    params = {"l": list(args.l), "j": list(args.j), "K": args.K, "M": args.M}
    if args.K2 is not None:
        params.update({"K2": args.K2, "m": args.m})
        value = bottleneck_count(args.l, args.j, args.K, args.K2, args.m, args.M)
        payload = {"params": params, "count": value}
    else:
        value = random_turns_count(args.l, args.j, args.K, args.M)
        kst = random_turns_kst(args.l, args.j, args.K, args.M)
        if kst != value:
            raise IdentityMismatch("random turns determinant sum", kst, value)
        payload = {"params": params, "count": value}
    _emit(args, payload, str(value))


def _timed(args, params, fn):
    start = time.perf_counter()
    result = fn()
    ms = (time.perf_counter() - start) * 1000
    if hasattr(result, "value"):
        payload = {"params": params, "value": complex(result.value), "abs_err": result.abs_err}
        if result.notes:
            payload["notes"] = list(result.notes)
    else:
        payload = {"params": params, "value": float(result), "abs_err": 1e-9}
    payload["wall_time_ms"] = round(ms, 3)
    text = f"{payload['value']} (+/- {payload['abs_err']:.1e})"
    _emit(args, payload, text)


def cmd_amplitude(args):
    from . import xx0

    params = {"j": list(args.j), "l": list(args.l), "t": args.t, "M": args.M}
    if args.t2 is not None:
        params.update({"t2": args.t2, "m": args.m})
        _timed(args, params, lambda: xx0.two_time_amplitude(args.j, args.l, args.t, args.t2, args.m, args.M))
    else:
        _timed(args, params, lambda: xx0.amplitude(args.j, args.l, args.t, args.M))


def cmd_persistence(args):
    from . import xx0

    cfg = xx0.ChainConfig(args.M, args.N)
    params = {"M": args.M, "N": args.N, "n": args.n, "t": args.t}
    _timed(args, params, lambda: xx0.persistence(cfg, args.n, args.t, budget=args.budget))


def cmd_autocorr(args):
    from . import xx0

    cfg = xx0.ChainConfig(args.M, args.N)
    params = {"M": args.M, "N": args.N, "n": args.n, "m": args.m, "t1": args.t1, "t2": args.t2}
    _timed(args, params, lambda: xx0.autocorrelation(cfg, args.n, args.m, args.t1, args.t2, budget=args.budget))


def cmd_asymptotics(args):
    from .asymptotics import leading_asymptote, mehta_integral

    if args.kind == "mehta":
        mv = mehta_integral(args.N)
        payload = {"params": {"N": args.N}, "value": mv.value, "log_value": mv.log_value, "estimate": mv.estimate}
        _emit(args, payload)
        return
    window = tuple(args.window) if args.window else None
    if args.out:
        from .report import write_report

        rep, table, figure = write_report(args.kind, args.M, args.N, args.out, n=args.n, m=args.m, window=window)
        files = [str(table), str(figure)]
    else:
        rep = leading_asymptote(args.kind, args.M, args.N, n=args.n, m=args.m, window=window)
        files = []
    payload = {
        "params": {"kind": args.kind, "M": args.M, "N": args.N, "n": args.n, "m": args.m},
        "report": rep.as_row(),
        "notes": {k: v for k, v in rep.notes.items()},
    }
    if files:
        payload["files"] = files
    _emit(args, payload, "\n".join(f"{k}: {v}" for k, v in rep.as_row().items()))


def _nests_for(args):
    from . import paths

    if args.family == "star":
        return list(paths.enumerate_stars(tuple(args.lam), args.N, args.k))
    if args.family == "conj_star":
        lam = tuple(args.lam) + (0,) * (args.N - len(args.lam))
        return list(paths.enumerate_conj_stars(lam, args.Mcal, args.N, args.k))
    if args.family == "watermelon":
        L = args.N if args.L is None else args.L
        return [nest for nest, _ in paths.enumerate_watermelons(args.N, L, args.Mcal, args.n, args.delta)]
    if args.l is None or args.j is None:
        raise ValidationError("walks need --l and --j")
    return list(paths.enumerate_walks(args.l, args.j, args.K, args.M))


def cmd_draw(args):
    from .draw import SceneSpec, render_svg, write_svgs

    out = Path(args.out or ".")
    if args.family == "scene":
        if not args.scene:
            raise ValidationError("draw scene needs --scene FILE")
        scene = SceneSpec.from_json(Path(args.scene).read_text(encoding="utf-8"))
        out.mkdir(parents=True, exist_ok=True)
        target = out / f"{args.prefix or 'scene'}_1.svg"
        target.write_text(render_svg(scene), encoding="utf-8")
        files = [target]
    else:
        nests = _nests_for(args)
        if not args.all:
            if not 1 <= args.index <= max(len(nests), 1):
                raise ValidationError(f"index {args.index} outside 1..{len(nests)}")
            nests = nests[args.index - 1 : args.index]
        files = write_svgs(nests, out, args.prefix or args.family, cell_px=args.cell_px, labels=not args.no_labels)
    payload = {"files": [str(f) for f in files], "count": len(files)}
    _emit(args, payload, "\n".join(str(f) for f in files))


# -- parser ---------------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled test points")
    common.add_argument("--jobs", type=_nonneg, default=1, help="worker processes")
    common.add_argument("--out", default=None, help="output directory")
    common.add_argument("--budget", type=int, default=2_000_000, help="cap on enumerated mode subsets")

    parser = argparse.ArgumentParser(prog="nestcorr", description="Path nests, watermelons and XX0 correlators.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("zq", parents=[common], help="generating function of plane partitions in a box")
    for name in ("L", "N", "K"):
        p.add_argument(name, type=_nonneg)
    p.set_defaults(func=cmd_zq)

    p = sub.add_parser("count", parents=[common], help="MacMahon count A(L, N, K)")
    for name in ("L", "N", "K"):
        p.add_argument(name, type=_nonneg)
    p.add_argument("--brute", action="store_true", help="also count by enumeration")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("schur", parents=[common], help="Schur function value")
    p.add_argument("lam", type=_nonneg, nargs="*")
    p.add_argument("--N", type=_nonneg)
    p.add_argument("--mode", choices=("q_N", "q_N/q", "1/q_N"), default="q_N")
    p.add_argument("--x", type=_rational, nargs="+", help="rational evaluation point")
    p.set_defaults(func=cmd_schur)

    p = sub.add_parser("verify", parents=[common], help="run a named identity check or 'all'")
    p.add_argument("name")
    p.add_argument("--small", action="store_true", help="reduced parameter ranges")
    p.add_argument("--form", choices=("derived", "literal"), default="derived", help="which printed variant to test")
    p.add_argument("--N", type=_nonneg)
    p.add_argument("--L", type=_nonneg)
    p.add_argument("--M", "--Mcal", dest="M", type=_nonneg)
    p.add_argument("--K", type=_nonneg)
    p.add_argument("--m", type=_nonneg)
    p.add_argument("--n", type=_nonneg)
    p.add_argument("--k", type=_nonneg)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("watermelon", parents=[common], help="watermelon generating function by enumeration")
    p.add_argument("--N", type=_nonneg, required=True)
    p.add_argument("--L", type=_nonneg)
    p.add_argument("--Mcal", "--M", dest="Mcal", type=_nonneg, required=True)
    p.add_argument("--n", type=_nonneg, default=0)
    p.add_argument("--delta", type=_nonneg, default=0)
    p.add_argument("--list", action="store_true", help="include every nest")
    p.set_defaults(func=cmd_watermelon)

    p = sub.add_parser("walks", parents=[common], help="random-turns walker counts")
    p.add_argument("--l", type=_sites, required=True, help="start sites, e.g. 2,0")
    p.add_argument("--j", type=_sites, required=True, help="end sites")
    p.add_argument("--K", type=_nonneg, required=True)
    p.add_argument("--M", type=_nonneg, required=True)
    p.add_argument("--K2", type=_nonneg, help="second leg; counts with a bottleneck at --m")
    p.add_argument("--m", type=_nonneg, default=0)
    p.set_defaults(func=cmd_walks)

    p = sub.add_parser("amplitude", parents=[common], help="transition amplitude <j|exp(-tH)|l>")
    p.add_argument("--j", type=_sites, required=True)
    p.add_argument("--l", type=_sites, required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--M", type=_nonneg, required=True)
    p.add_argument("--t2", type=float, help="second time; gives the two-time amplitude with projector --m")
    p.add_argument("--m", type=_nonneg, default=0)
    p.set_defaults(func=cmd_amplitude)

    p = sub.add_parser("persistence", parents=[common], help="persistence of a domain wall")
    p.add_argument("--M", type=_nonneg, required=True)
    p.add_argument("--N", type=_nonneg, required=True)
    p.add_argument("--n", type=_nonneg, default=0)
    p.add_argument("--t", type=float, required=True)
    p.set_defaults(func=cmd_persistence)

    p = sub.add_parser("autocorr", parents=[common], help="dynamical auto-correlation")
    p.add_argument("--M", type=_nonneg, required=True)
    p.add_argument("--N", type=_nonneg, required=True)
    p.add_argument("--n", type=_nonneg, default=0)
    p.add_argument("--m", type=_nonneg, default=0)
    p.add_argument("--t1", type=float, required=True)
    p.add_argument("--t2", type=float, required=True)
    p.set_defaults(func=cmd_autocorr)

    p = sub.add_parser("asymptotics", parents=[common], help="power-law fit against the predicted asymptote")
    p.add_argument("kind", choices=("amplitude", "persistence", "two_time", "autocorr", "mehta"))
    p.add_argument("--M", type=_nonneg, default=60)
    p.add_argument("--N", type=_nonneg, required=True)
    p.add_argument("--n", type=_nonneg, default=0)
    p.add_argument("--m", type=_nonneg, default=0)
    p.add_argument("--window", type=float, nargs=2, metavar=("T_MIN", "T_MAX"))
    p.set_defaults(func=cmd_asymptotics)

    p = sub.add_parser("draw", parents=[common], help="render nests as SVG")
    p.add_argument("family", choices=("star", "conj_star", "watermelon", "walks", "scene"))
    p.add_argument("--N", type=_nonneg, default=0)
    p.add_argument("--L", type=_nonneg)
    p.add_argument("--Mcal", type=_nonneg, default=0)
    p.add_argument("--n", type=_nonneg, default=0)
    p.add_argument("--delta", type=_nonneg, default=0)
    p.add_argument("--k", type=_nonneg, default=0)
    p.add_argument("--lam", type=_sites, default=())
    p.add_argument("--l", type=_sites)
    p.add_argument("--j", type=_sites)
    p.add_argument("--K", type=_nonneg, default=0)
    p.add_argument("--M", type=_nonneg, default=1)
    p.add_argument("--all", action="store_true", help="one file per nest")
    p.add_argument("--index", type=int, default=1, help="which nest (1-based) without --all")
    p.add_argument("--prefix")
    p.add_argument("--cell-px", type=int, default=24)
    p.add_argument("--no-labels", action="store_true")
    p.add_argument("--scene", help="SceneSpec JSON file for family 'scene'")
    p.set_defaults(func=cmd_draw)
    return parser


def run(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code = args.func(args)
    except IdentityMismatch as exc:
        print(f"identity mismatch: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except ValidationError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (NestcorrError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_OK if code is None else code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
