"""Command-line front end: ``python -m cruciform <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path
from typing import Optional

from . import __version__
from . import analysis, closed_forms as cf, geometry as geo, verifier
from .engines import ENGINES, EngineError, count_with_engine

EX_OK, EX_FAIL, EX_DISCREPANCY, EX_USAGE = 0, 1, 2, 64

REGION_FLAGS = {
    "cruciform": (geo.build_cruciform, 6),
    "elbow": (geo.build_elbow, 3),
    "tregion": (geo.build_t_region, 5),
    "aztec": (geo.build_aztec_diamond, 1),
    "ar": (geo.build_aztec_rectangle, 2),
    "half_square": (geo.build_half_square, 1),
    "difrancesco": (geo.build_di_francesco, 1),
}

# options a config file may set; anything else in it is rejected
CONFIG_KEYS = (*REGION_FLAGS, "region_file", "engine", "seed", "out", "format",
               "max_mn", "n", "samples", "site", "params", "tiling_file")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _u64(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return v


def _add_region_flags(p):
    g = p.add_argument_group("region")
    g.add_argument("--cruciform", type=_int_list, metavar="m,n,a,b,c,d")
    g.add_argument("--elbow", type=_int_list, metavar="n,a,b")
    g.add_argument("--tregion", type=_int_list, metavar="m,n,b,c,d")
    g.add_argument("--aztec", type=_int_list, metavar="n")
    g.add_argument("--ar", type=_int_list, metavar="m,n")
    g.add_argument("--half-square", type=_int_list, metavar="n")
    g.add_argument("--difrancesco", type=_int_list, metavar="n")
    g.add_argument("--region-file", metavar="PATH")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="key=value file mirroring the flags")
    common.add_argument("--out", metavar="PATH")
    common.add_argument("--format", choices=("json", "csv", "svg", "ascii"))
    common.add_argument("--engine", choices=ENGINES)

    p = _Parser(prog="cruciform", description=__doc__)
    p.add_argument("--version", action="version", version=f"cruciform {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, help_ in (("region", "build, serialize or draw a region"),
                        ("count", "exact tiling count"),
                        ("prob", "occupation probabilities"),
                        ("sample", "seeded uniform tilings"),
                        ("render", "draw a region, optionally with a tiling")):
        s = sub.add_parser(name, parents=[common], help=help_)
        _add_region_flags(s)
        if name == "prob":
            s.add_argument("--site", type=_int_list, metavar="c1,r1,c2,r2")
        if name == "sample":
            s.add_argument("--seed", type=_u64)
            s.add_argument("--samples", type=int, metavar="K")
        if name == "render":
            s.add_argument("--tiling-file", metavar="PATH", help="sample transcript JSON")
        if name == "region":
            s.add_argument("--stats", action="store_true")

    f = sub.add_parser("formula", parents=[common], help="evaluate a closed form by name")
    f.add_argument("name", choices=sorted((*cf.FORMULAS, "half_square", "square_tfk")))
    f.add_argument("--n", type=int)
    f.add_argument("--params", type=_int_list, metavar="x,y,...")
    f.add_argument("--bits", type=int, default=128)

    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("suites", nargs="+", choices=sorted((*verifier.SUITES, "all")))
    v.add_argument("--max-mn", type=int)
    v.add_argument("--n", type=int)
    return p


# ------------------------------------------------------------------ helpers


def read_config(path: str) -> dict:
    out = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        k, v = (x.strip() for x in line.split("=", 1))
        k = k.lstrip("-").replace("-", "_")
        if k not in CONFIG_KEYS:
            raise UsageError(f"{path}:{lineno}: unknown key {k!r}")
        out[k] = v
    return out


def _apply_config(args, parser_actions):
    if not args.config:
        return
    conv = {a.dest: a.type for a in parser_actions if a.dest in CONFIG_KEYS}
    for k, v in read_config(args.config).items():
        if k not in conv:
            raise UsageError(f"config key {k!r} does not apply to '{args.command}'")
        if getattr(args, k, None) is None:  # flags win
            try:
                setattr(args, k, conv[k](v) if conv[k] else v)
            except (argparse.ArgumentTypeError, ValueError) as e:
                raise UsageError(f"config key {k}: {e}") from None


def region_from_args(args) -> geo.Region:
    chosen = [k for k in (*REGION_FLAGS, "region_file") if getattr(args, k, None) is not None]
    if len(chosen) != 1:
        raise UsageError("give exactly one region flag "
                         "(--cruciform, --elbow, --tregion, --aztec, --ar, --half-square, "
                         "--difrancesco or --region-file)")
    k = chosen[0]
    if k == "region_file":
        return geo.region_from_json(Path(args.region_file).read_text())
    fn, arity = REGION_FLAGS[k]
    vals = getattr(args, k)
    if len(vals) != arity:
        raise UsageError(f"--{k.replace('_', '-')} takes {arity} integers, got {len(vals)}")
    return fn(*vals)


def provenance(argv, **params) -> dict:
    return {"tool": "cruciform", "version": __version__,
            "command_line": list(argv), "parameters": params}


def _comment_header(prov: dict, prefix: str = "# ") -> str:
    return prefix + json.dumps(prov, sort_keys=True) + "\n"


def write_atomic(path: str, text: str):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(args, text: str, stdout):
    if args.out:
        write_atomic(args.out, text)
        print(f"wrote {args.out}", file=sys.stderr)
    else:
        stdout.write(text)


def _with_header(fmt: str, text: str, prov: dict) -> str:
    if fmt == "svg":
        head, rest = text.split("\n", 1)
        return f"{head}\n<!-- {json.dumps(prov, sort_keys=True)} -->\n{rest}"
    if fmt in ("csv", "ascii"):
        return _comment_header(prov) + text
    return text


def _tiling_from_file(path: str):
    doc = json.loads(Path(path).read_text())
    if "samples" in doc:
        doc = doc["samples"][0]
    return [tuple(geo.Cell(*c) for c in pair) for pair in doc["dominoes"]]


# -------------------------------------------------------------- subcommands


def cmd_region(args, argv, stdout):
    r = region_from_args(args)
    fmt = args.format or "json"
    prov = provenance(argv, region=r.label)
    if args.stats:
        st = geo.region_stats(r)
        print(json.dumps(_jsonable_stats(st), sort_keys=True), file=sys.stderr)
    if fmt == "json":
        doc = {"provenance": prov, "label": r.label, **geo.region_to_dict(r)}
        text = json.dumps(doc, separators=(",", ":")) + "\n"
    elif fmt in ("svg", "ascii"):
        text = _with_header(fmt, analysis.render(r, None, fmt, shade=True), prov)
    else:
        raise UsageError("region supports --format json, svg or ascii")
    _emit(args, text, stdout)
    return EX_OK


def _jsonable_stats(st) -> dict:
    return {k: (list(v) if isinstance(v, tuple) else v) for k, v in vars(st).items()}


def cmd_count(args, argv, stdout):
    r = region_from_args(args)
    value, how = count_with_engine(r, args.engine or "auto")
    prov = provenance(argv, region=r.label, engine=how)
    if args.format == "json":
        _emit(args, json.dumps({"provenance": prov, "count": str(value)}) + "\n", stdout)
    else:
        print(f"# engine: {how}  region: {r.label}  cells: {len(r)}", file=sys.stderr)
        _emit(args, f"{value}\n", stdout)
    return EX_OK


def cmd_formula(args, argv, stdout):
    name = args.name
    if name in ("half_square", "square_tfk"):
        if args.n is None:
            raise UsageError(f"{name} needs --n")
        fn = cf.half_square_value if name == "half_square" else cf.square_tfk_value
        enc = fn(args.n, args.bits)
        lo, hi = (mpmath_str(x) for x in (enc.lo, enc.hi))
        k = enc.certified_integer()
        if args.format == "json":
            doc = {"provenance": provenance(argv, name=name, n=args.n, bits=args.bits),
                   "lo": lo, "hi": hi, "certified_integer": None if k is None else str(k)}
            _emit(args, json.dumps(doc) + "\n", stdout)
        else:
            first = str(k) if k is not None else f"{enc.midpoint():.17g}"
            _emit(args, f"{first}\n[{lo}, {hi}]\n", stdout)
        return EX_OK
    fn, names = cf.FORMULAS[name]
    vals = args.params if args.params is not None else (
        (args.n,) if args.n is not None else None)
    if vals is None or len(vals) != len(names):
        raise UsageError(f"{name} takes parameters ({', '.join(names)}); "
                         f"use --params{' or --n' if len(names) == 1 else ''}")
    v = fn(*vals)
    if args.format == "json":
        doc = {"provenance": provenance(argv, name=name, params=list(vals)), **v.to_dict()}
        _emit(args, json.dumps(doc) + "\n", stdout)
    else:
        _emit(args, f"{v}\n2^({v.e}) * {v.q}\n", stdout)
    return EX_OK


def mpmath_str(x) -> str:
    import mpmath
    return mpmath.nstr(x, 40)


def _suite_kwargs(names, max_mn: Optional[int], n: Optional[int]) -> dict:
    kw = {}
    for s in names:
        d = {}
        if max_mn is not None:
            if s in ("theorem1", "complementation"):
                d["max_mn"] = max_mn
            elif s == "splitting":
                d["count_max_mn"] = max_mn
            elif s == "krattenthaler":
                d["max_sum"] = max_mn
        if n is not None and s in ("theorem2", "conjecture", "divisibility"):
            d["n_max"] = n
        kw[s] = d
    return kw


def cmd_verify(args, argv, stdout):
    names = sorted(verifier.SUITES) if "all" in args.suites else list(dict.fromkeys(args.suites))
    leds = verifier.run_suites(names, **_suite_kwargs(names, args.max_mn, args.n))
    fmt = args.format or "json"
    prov = provenance(argv, suites=names, max_mn=args.max_mn, n=args.n)
    if fmt == "json":
        text = verifier.ledgers_to_json(leds, header=prov) + "\n"
    elif fmt == "csv":
        text = _comment_header(prov) + verifier.ledgers_to_csv(leds)
    else:
        raise UsageError("verify writes --format json or csv")
    out = args.out or f"ledger.{fmt}"
    write_atomic(out, text)
    for led in leds:
        s = led.summary
        print(f"{led.suite:24s} {led.verdict:20s} match={s['match']} mismatch={s['mismatch']} "
              f"undefined={s['formula-undefined']} skipped={s['engine-skipped']}", file=stdout)
    print(f"verdict: {verifier.worst_verdict(leds)}  ledger: {out}", file=stdout)
    return verifier.exit_code(leds)


def cmd_prob(args, argv, stdout):
    r = region_from_args(args)
    if args.site is not None:
        if len(args.site) != 4:
            raise UsageError("--site takes c1,r1,c2,r2")
        p = analysis.occupation_probability(r, (args.site[:2], args.site[2:]))
        _emit(args, f"{p.numerator}/{p.denominator}\n", stdout)
        return EX_OK
    rows = analysis.occupation_heatmap(r)
    fmt = args.format or "csv"
    prov = provenance(argv, region=r.label)
    if fmt == "csv":
        text = _with_header("csv", analysis.heatmap_csv(rows), prov)
    elif fmt == "svg":
        text = _with_header("svg", analysis.render_svg(r, heat=rows), prov)
    elif fmt == "json":
        doc = {"provenance": prov,
               "sites": [{"site": [list(u), list(v)], "probability": f"{p.numerator}/{p.denominator}"}
                         for (u, v), p in rows]}
        text = json.dumps(doc, indent=1) + "\n"
    else:
        raise UsageError("prob supports --format csv, svg or json")
    _emit(args, text, stdout)
    return EX_OK


def cmd_sample(args, argv, stdout):
    r = region_from_args(args)
    seed = 0 if args.seed is None else args.seed
    k = 1 if args.samples is None else args.samples
    if k < 1 or seed + k > 2**64:
        raise UsageError("--samples must be positive and seeds must stay below 2^64")
    fmt = args.format or "json"
    prov = provenance(argv, region=r.label, seed=seed, samples=k, prng=analysis.PRNG_NAME)
    if fmt == "json":
        doc = json.loads(analysis.sample_transcript(r, range(seed, seed + k)))
        text = json.dumps({"provenance": prov, **doc}, indent=1) + "\n"
    elif fmt in ("svg", "ascii"):
        text = _with_header(fmt, analysis.render(r, analysis.sample_uniform(r, seed), fmt), prov)
    else:
        raise UsageError("sample supports --format json, svg or ascii")
    _emit(args, text, stdout)
    return EX_OK


def cmd_render(args, argv, stdout):
    r = region_from_args(args)
    fmt = args.format or "svg"
    if fmt not in ("svg", "ascii"):
        raise UsageError("render supports --format svg or ascii")
    tiling = _tiling_from_file(args.tiling_file) if args.tiling_file else None
    text = analysis.render(r, tiling, fmt, shade=tiling is None)
    _emit(args, _with_header(fmt, text, provenance(argv, region=r.label)), stdout)
    return EX_OK


COMMANDS = {"region": cmd_region, "count": cmd_count, "formula": cmd_formula,
            "verify": cmd_verify, "prob": cmd_prob, "sample": cmd_sample, "render": cmd_render}


def run(argv=None, stdout=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        sub = parser._subparsers._group_actions[0].choices[args.command]
        _apply_config(args, sub._actions)
        return COMMANDS[args.command](args, argv, stdout)
    except UsageError as e:
        print(f"cruciform: usage error: {e}", file=sys.stderr)
        return EX_USAGE
    except (geo.GeometryError, cf.FormulaDomainError, analysis.UntileableRegionError,
            FileNotFoundError, json.JSONDecodeError) as e:
        print(f"cruciform: invalid input: {e}", file=sys.stderr)
        return EX_USAGE
    except EngineError as e:
        print(f"cruciform: {type(e).__name__}: {e}", file=sys.stderr)
        return EX_FAIL


def main():
    sys.exit(run())
