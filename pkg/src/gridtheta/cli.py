"""Command line front end: ``gridtheta info|theta|moves|batch``.

Exit codes: 0 ok, 2 parse error, 3 not a knot, 4 inconclusive (resource
cap or oracle size limit), 5 illegal move.  1 is reserved for internal
inconsistencies such as a failed ``--paranoid`` cross-check.
"""

from __future__ import annotations

import argparse
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__, oracle
from .grid import GridDiagram, GridParseError, NotAKnotError, classical_invariants, format_grid, load_grid
from .invariant import Sign, grading_check, seed_chain
from .moves import MoveError, ScriptError, parse_script, run_script
from .nullity import Mode, ResourceLimitExceeded, is_null, max_live_for_memory, parse_memory
from .report import BatchEntry, BatchReport, MoveCheck, Query, Report

EXIT_OK, EXIT_INTERNAL, EXIT_PARSE, EXIT_NOT_KNOT, EXIT_INCONCLUSIVE, EXIT_ILLEGAL_MOVE = 0, 1, 2, 3, 4, 5
PARANOID_MAX_N = 10


class Inconclusive(Exception):
    pass


class CrossCheckFailed(Exception):
    pass


def base_report(G: GridDiagram, mode: str | None = None) -> Report:
    ci = classical_invariants(G)
    rep = Report(
        name=G.name, n=G.n, tb=ci.tb, r=ci.r, sl_plus=ci.sl_plus, sl_minus=ci.sl_minus,
        version=__version__, mode=mode,
    )
    for s in Sign:
        m, a = grading_check(G, s)
        rep.gradings[s.value] = [m, a]
    return rep


def run_query(G, sign, refine, mode, max_live, use_oracle=False, paranoid=False) -> Query:
    seed = seed_chain(G, sign, refine)
    q = Query(sign=Sign(sign).value, refine=refine, verdict="Inconclusive", seed_size=len(seed))
    try:
        v = is_null(G, seed, mode, max_live=max_live)
    except ResourceLimitExceeded as e:
        q.note = str(e)
        q.stats = {"live": e.live, "cap": e.cap}
        return q
    q.verdict = v.result.value
    q.stats = {
        "states_visited": v.stats.states_visited,
        "layers_built": v.stats.layers_built,
        "contractions_performed": v.stats.contractions_performed,
        "peak_live_generators": v.stats.peak_live_generators,
        "wall_time": round(v.stats.wall_time, 6),
    }
    if paranoid and G.n <= PARANOID_MAX_N:
        other = Mode.STAGED if Mode(mode) is Mode.INTERLEAVED else Mode.INTERLEAVED
        q.cross_check = is_null(G, seed, other, max_live=max_live).result.value
        if q.cross_check != q.verdict:
            raise CrossCheckFailed(f"{mode} says {q.verdict}, {other.value} says {q.cross_check}")
    if use_oracle:
        if G.n > oracle.BRUTE_FORCE_LIMIT:
            raise Inconclusive(f"oracle needs n <= {oracle.BRUTE_FORCE_LIMIT}, got {G.n}")
        q.oracle = "Null" if oracle.membership(G, seed) else "NonNull"
    return q


def _signs(s: str) -> list[str]:
    return ["plus", "minus"] if s == "both" else [s]


def theta_report(G, args, max_live) -> Report:
    rep = base_report(G, args.mode)
    refine = "delta1" if args.delta1 else "theta"
    for s in _signs(args.sign):
        rep.queries.append(
            run_query(G, s, refine, args.mode, max_live, getattr(args, "oracle", False),
                      getattr(args, "paranoid", False))
        )
    return rep


def _exit_for(rep: Report) -> int:
    return EXIT_INCONCLUSIVE if any(q.verdict == "Inconclusive" for q in rep.queries) else EXIT_OK


# -- output -------------------------------------------------------------------


def _print_info(rep: Report) -> None:
    print(f"{rep.name}: n={rep.n} tb={rep.tb} r={rep.r} sl+={rep.sl_plus} sl-={rep.sl_minus}")
    for s, (m, a) in sorted(rep.gradings.items()):
        print(f"  theta {s}: M={m} A={a}")


def _print_query(rep: Report, q: Query) -> None:
    sym = "+" if q.sign == "plus" else "-"
    label = "theta" if q.refine == "theta" else "delta1"
    line = f"{rep.name} {label}{sym}: {q.verdict}"
    if q.verdict == "Inconclusive":
        line += f" ({q.note})"
    else:
        st = q.stats
        line += (f" (visited={st['states_visited']} layers={st['layers_built']} "
                 f"contractions={st['contractions_performed']} peak={st['peak_live_generators']} "
                 f"{st['wall_time']:.3f}s)")
    if q.oracle is not None:
        line += f" oracle={q.oracle} {'agree' if q.oracle == q.verdict else 'DISAGREE'}"
    if q.cross_check is not None:
        line += f" cross-check={q.cross_check}"
    print(line)


# -- commands -------------------------------------------------------------------


def cmd_info(args) -> int:
    rep = base_report(load_grid(args.file))
    print(rep.to_json()) if args.json else _print_info(rep)
    return EXIT_OK


def cmd_theta(args) -> int:
    G = load_grid(args.file)
    rep = theta_report(G, args, _max_live(args))
    if args.json:
        print(rep.to_json())
    else:
        for q in rep.queries:
            _print_query(rep, q)
    return _exit_for(rep)


def cmd_moves(args) -> int:
    G = load_grid(args.file)
    script = parse_script(Path(args.script).read_text())
    H = run_script(G, script).with_name(G.name)
    rep = base_report(H)
    mc = MoveCheck(len(script), list(H.X), list(H.O))
    code = EXIT_OK
    if args.check_verdict:
        max_live = _max_live(args)
        before = run_query(G, "plus", "theta", Mode.INTERLEAVED.value, max_live)
        after = run_query(H, "plus", "theta", Mode.INTERLEAVED.value, max_live)
        mc.verdict_before, mc.verdict_after = before.verdict, after.verdict
        rep.queries.append(after)
        if "Inconclusive" in (before.verdict, after.verdict):
            code = EXIT_INCONCLUSIVE
    rep.moves = mc
    if args.out:
        Path(args.out).write_text(format_grid(H))
    if args.json:
        print(rep.to_json())
    else:
        print(format_grid(H), end="")
        if args.check_verdict:
            if mc.unchanged:
                print(f"verdict unchanged: {mc.verdict_after}")
            else:
                print(f"verdict changed: {mc.verdict_before} -> {mc.verdict_after}")
    return code


def _batch_one(path: str, args_d: dict) -> BatchEntry:
    args = argparse.Namespace(**args_d)
    try:
        G = load_grid(path)
        rep = theta_report(G, args, args_d["max_live"])
        code = _exit_for(rep)
        return BatchEntry(Path(path).name, "ok" if code == 0 else "inconclusive", code, rep)
    except GridParseError as e:
        return BatchEntry(Path(path).name, "parse-error", EXIT_PARSE, error=str(e))
    except NotAKnotError as e:
        return BatchEntry(Path(path).name, "not-a-knot", EXIT_NOT_KNOT, error=str(e))
    except Inconclusive as e:
        return BatchEntry(Path(path).name, "inconclusive", EXIT_INCONCLUSIVE, error=str(e))


def cmd_batch(args) -> int:
    d = Path(args.directory)
    if not d.is_dir():
        raise GridParseError(f"{d} is not a directory")
    files = sorted(str(p) for p in d.glob("*.grid"))
    args_d = {
        "sign": args.sign, "delta1": args.delta1, "mode": args.mode,
        "oracle": False, "paranoid": args.paranoid, "max_live": _max_live(args),
    }
    if args.jobs > 1 and len(files) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            entries = list(ex.map(_batch_one, files, [args_d] * len(files)))
    else:
        entries = [_batch_one(f, args_d) for f in files]
    br = BatchReport(str(d), __version__, entries)
    if args.json:
        print(br.to_json())
    else:
        print(f"{'file':<24} {'status':<12} {'n':>3} {'tb':>3} {'r':>3} {'sl+':>4}  verdicts")
        for e in entries:
            if e.report is None:
                print(f"{e.file:<24} {e.status:<12} {e.error}")
                continue
            rp = e.report
            vs = " ".join(f"{q.refine}{'+' if q.sign == 'plus' else '-'}={q.verdict}" for q in rp.queries)
            print(f"{e.file:<24} {e.status:<12} {rp.n:>3} {rp.tb:>3} {rp.r:>3} {rp.sl_plus:>4}  {vs}")
    return br.exit_code


def _max_live(args) -> int:
    return max_live_for_memory(parse_memory(args.max_mem))


# -- argument parsing -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gridtheta", description="Grid diagram Legendrian and transverse invariants.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="log per-layer progress")
    sub = p.add_subparsers(dest="command", required=True)

    def query_flags(sp, with_oracle=True):
        sp.add_argument("--sign", choices=["plus", "minus", "both"], default="plus")
        sp.add_argument("--delta1", action="store_true", help="use the one-X refinement of the cycle")
        sp.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.INTERLEAVED.value)
        sp.add_argument("--max-mem", default="16G", help="memory budget, e.g. 4G (default 16G)")
        sp.add_argument("--paranoid", action="store_true",
                        help=f"cross-check against the other schedule when n <= {PARANOID_MAX_N}")
        if with_oracle:
            sp.add_argument("--oracle", action="store_true", help="also run the brute-force membership test")
        sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("info", help="classical invariants and cycle gradings")
    sp.add_argument("file")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_info)

    sp = sub.add_parser("theta", help="decide whether the invariant vanishes")
    sp.add_argument("file")
    query_flags(sp)
    sp.set_defaults(func=cmd_theta)

    sp = sub.add_parser("moves", help="apply a move script")
    sp.add_argument("file")
    sp.add_argument("script")
    sp.add_argument("--check-verdict", action="store_true", help="compare the theta+ verdict before and after")
    sp.add_argument("--max-mem", default="16G")
    sp.add_argument("-o", "--out", help="write the resulting grid here")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_moves)

    sp = sub.add_parser("batch", help="run a query over every .grid file in a directory")
    sp.add_argument("directory")
    query_flags(sp, with_oracle=False)
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=cmd_batch)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(relativeCreated)8.0f ms %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except (GridParseError, ScriptError, OSError, ValueError) as e:
        if isinstance(e, NotAKnotError):
            print(f"error: {e}", file=sys.stderr)
            return EXIT_NOT_KNOT
        if isinstance(e, MoveError):
            print(f"illegal move at {e}", file=sys.stderr)
            return EXIT_ILLEGAL_MOVE
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except Inconclusive as e:
        print(f"inconclusive: {e}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except CrossCheckFailed as e:
        print(f"cross-check failed: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
