"""Command-line front end.

    genalg --generator t.json --semigroup sum --cmd inspect,check-assoc --out reports/
    genalg fixtures

Reports are JSON with sorted keys; ``sample-grid`` writes CSV.  Exit codes:
0 when every requested command produced its report, 2 for unreadable
input, 3 when a command's preconditions do not hold.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import corpus
from .associativity import (
    Verdict,
    brute_force_assoc,
    build_generated_op,
    check_generator_condition,
    f_condition_check,
)
from .decomposition import decompose
from .generators import Direction, PiecewiseMonotone, plateau_data, range_of, validate
from .inverses import inverse_identities_report, pseudo_inverse, quasi_inverse_bounds, weak_pseudo_inverse
from .numerics import decimal12, fmt
from .properties import (
    cancellation_check,
    continuity_check,
    idempotent_points,
    limit_property_check,
    supconorm_equivalence_check,
)
from .semigroups import PreconditionViolated, parse_semigroup

COMMANDS = (
    "inspect",
    "invert",
    "range",
    "decompose",
    "check-gen-condition",
    "check-assoc",
    "check-props",
    "sample-grid",
    "fixtures",
)
NEEDS_GENERATOR = set(COMMANDS) - {"fixtures"}
GRID_MIN, GRID_MAX = 2, 10_000

EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION = 0, 2, 3


class ParseError(ValueError):
    pass


@dataclass
class AnalysisRequest:
    generator: Optional[PiecewiseMonotone]
    semigroup: object
    mode: Optional[str]
    commands: list
    out: Optional[Path] = None
    grid_n: int = 11


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# request parsing --------------------------------------------------------------------
def _load_generator(path: str):
    """A generator file, or a fixture file whose generator (and defaults) are used."""
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read generator {path}: {exc}") from exc
    defaults = {}
    if isinstance(data, dict) and "generator" in data:
        defaults = {"semigroup": data.get("semigroup"), "mode": data.get("mode")}
        data = data["generator"]
    try:
        return PiecewiseMonotone.from_json(data), defaults
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"invalid generator in {path}: {exc}") from exc


def _split_commands(raw: list) -> list:
    cmds = []
    for item in raw:
        cmds.extend(c.strip() for c in item.split(",") if c.strip())
    unknown = [c for c in cmds if c not in COMMANDS]
    if unknown:
        raise ParseError(f"unknown command(s): {', '.join(unknown)}; choose from {', '.join(COMMANDS)}")
    # keep the first occurrence of each, in the given order
    return list(dict.fromkeys(cmds))


def build_request(args) -> AnalysisRequest:
    commands = _split_commands(list(args.commands) + ([args.cmd] if args.cmd else []))
    if not commands:
        raise ParseError("no command given (use --cmd or a positional command)")
    if not GRID_MIN <= args.grid_n <= GRID_MAX:
        raise ParseError(f"--grid-n must lie in [{GRID_MIN}, {GRID_MAX}], got {args.grid_n}")
    gen, defaults = None, {}
    if NEEDS_GENERATOR & set(commands):
        if not args.generator:
            raise ParseError("--generator is required for " + ", ".join(c for c in commands if c in NEEDS_GENERATOR))
        gen, defaults = _load_generator(args.generator)
    sg_text = args.semigroup or defaults.get("semigroup") or "sum"
    try:
        semigroup = parse_semigroup(sg_text)
    except (OSError, KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"invalid semigroup {sg_text!r}: {exc}") from exc
    mode = args.mode or defaults.get("mode")
    return AnalysisRequest(gen, semigroup, mode, commands, Path(args.out) if args.out else None, args.grid_n)


# commands -----------------------------------------------------------------------------
def _genop(req: AnalysisRequest):
    return build_generated_op(req.generator, req.semigroup, req.mode)


def cmd_inspect(req: AnalysisRequest) -> dict:
    t = req.generator
    return {
        "generator": t.to_json(),
        "description": t.describe(),
        "breakpoints": [fmt(b) for b in t.breakpoints()],
        "validation": validate(t).to_json(),
    }


def cmd_invert(req: AnalysisRequest) -> dict:
    t = req.generator
    tinv, pinv = weak_pseudo_inverse(t), pseudo_inverse(t)
    if t.direction is Direction.NON_DECREASING:
        lo, hi = quasi_inverse_bounds(t)
        bounds = {"lower": lo.to_json(), "upper": hi.to_json()}
    else:
        bounds = {"not_applicable": "defined for non-decreasing generators only"}
    return {
        "weak_pseudo_inverse": {"pieces": tinv.to_json(), "description": tinv.describe()},
        "pseudo_inverse": {"pieces": pinv.to_json(), "description": pinv.describe()},
        "quasi_inverse_bounds": bounds,
        "identities": inverse_identities_report(t).to_json(),
    }


def cmd_range(req: AnalysisRequest) -> dict:
    t = req.generator
    return {"range": range_of(t).to_json(), "plateaus": plateau_data(t).to_json()}


def cmd_decompose(req: AnalysisRequest) -> dict:
    dec = decompose(req.generator)
    return {"decomposition": dec.to_json(), "description": dec.describe()}


def cmd_gen_condition(req: AnalysisRequest) -> dict:
    return check_generator_condition(req.generator, req.semigroup, req.mode).to_json()


def cmd_assoc(req: AnalysisRequest) -> dict:
    g = _genop(req)
    rep = f_condition_check(g)
    w = brute_force_assoc(g)
    out = rep.to_json()
    out["grid_witness"] = None if w is None else w.to_json()
    out["grid_agrees"] = not (rep.verdict is Verdict.ASSOCIATIVE and w is not None)
    return out


def _guarded(fn, *args):
    try:
        return fn(*args).to_json()
    except PreconditionViolated as exc:
        return {"not_applicable": str(exc)}


def cmd_props(req: AnalysisRequest) -> dict:
    g = _genop(req)
    return {
        "idempotents": _guarded(idempotent_points, g),
        "limit_property": _guarded(limit_property_check, g),
        "cancellation": _guarded(cancellation_check, g),
        "supconorm": _guarded(supconorm_equivalence_check, g),
        "continuity": _guarded(continuity_check, g),
    }


def grid_rows(genop, n: int, workers: int = 4) -> list:
    """Rows (x, y, T(x, y)) over the n x n uniform grid of [0, 1]^2."""
    xs = [Fraction(i, n - 1) for i in range(n)]

    def row(x):
        return [(x, y, genop.T(x, y)) for y in xs]

    if n * n < 4096:
        chunks = [row(x) for x in xs]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(row, xs))
    return [r for chunk in chunks for r in chunk]


def grid_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "y", "T", "x_decimal", "y_decimal", "T_decimal"])
    for x, y, v in rows:
        w.writerow([fmt(x), fmt(y), fmt(v), decimal12(x), decimal12(y), decimal12(v)])
    return buf.getvalue()


def cmd_sample_grid(req: AnalysisRequest) -> str:
    return grid_csv(grid_rows(_genop(req), req.grid_n))


def cmd_fixtures(req: AnalysisRequest) -> dict:
    return corpus.run_corpus()


HANDLERS = {
    "inspect": cmd_inspect,
    "invert": cmd_invert,
    "range": cmd_range,
    "decompose": cmd_decompose,
    "check-gen-condition": cmd_gen_condition,
    "check-assoc": cmd_assoc,
    "check-props": cmd_props,
    "sample-grid": cmd_sample_grid,
    "fixtures": cmd_fixtures,
}


def run(req: AnalysisRequest, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    results = {}
    code = EXIT_OK
    for name in req.commands:
        try:
            results[name] = HANDLERS[name](req)
        except PreconditionViolated as exc:
            print(f"genalg: {name}: precondition violated: {exc}", file=stderr)
            code = EXIT_PRECONDITION
    if req.out is not None:
        req.out.mkdir(parents=True, exist_ok=True)
        for name, res in results.items():
            if name == "sample-grid":
                (req.out / "grid.csv").write_text(res)
            else:
                (req.out / f"{name}.json").write_text(dumps(res))
    else:
        for name, res in results.items():
            if name == "sample-grid":
                stdout.write(res)
            else:
                stdout.write(dumps({name: res}))
    return code


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="genalg", description="Analyze operations generated by monotone one-place functions.")
    p.add_argument("commands", nargs="*", help="commands to run: " + ", ".join(COMMANDS))
    p.add_argument("--generator", help="generator JSON file (or a fixture file)")
    p.add_argument("--semigroup", help="sum, max, linprod or table:<path> (default sum)")
    p.add_argument("--mode", choices=["norm", "supconorm"], help="default follows the direction of the generator")
    p.add_argument("--cmd", help="comma-separated list of commands")
    p.add_argument("--out", help="directory for reports; stdout when omitted")
    p.add_argument("--grid-n", type=int, default=11, help=f"sample-grid resolution, {GRID_MIN}..{GRID_MAX}")
    return p


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        req = build_request(args)
    except ParseError as exc:
        print(f"genalg: error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    return run(req)


if __name__ == "__main__":
    sys.exit(main())
