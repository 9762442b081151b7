"""Command-line interface.

Exit codes: 0 success, 1 a theorem check found a violating pair, 2 usage or
precondition error, 3 non-generic input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from importlib import resources
from typing import Any, Callable, Sequence

from . import __version__
from .chambers import descriptor, enumerate_chambers, regular_for, same_chamber
from .exact import (
    LengthVector,
    NonGenericError,
    a_vector,
    codim_stratum,
    dim_moduli,
    dominating_index,
    indices,
    is_d_regular,
    require_generic,
)
from .facering import distinguish, first_ih_rank, graded_ranks, short_complex
from .ihchain import morse_data_table
from .morse import betti_counts, filtration

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_NONGENERIC = 3


class UsageError(Exception):
    pass


def load_schema(name: str) -> dict:
    """Published JSON schema: ``analysis``, ``atlas``, ``verdict``, ``morse_data`` or ``sweep``."""
    text = resources.files("linkih").joinpath("schemas", f"{name}.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


# ---------------------------------------------------------------------------
# reports


def _guarded(notes: list[str], label: str, fn: Callable[[], Any]) -> Any:
    """Run ``fn``; on a precondition failure record why and return ``None``."""
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            value = fn()
        except (ValueError, NotImplementedError) as exc:
            notes.append(f"{label}: {exc}")
            return None
    for w in caught:
        notes.append(f"{label}: {w.message}")
    return value


def analysis_report(ell: LengthVector, d: int) -> dict:
    """Every invariant of ``ell`` for dimension ``d``; raises on non-generic input."""
    if d < 2:
        raise UsageError("--dim must be at least 2")
    require_generic(ell)
    ordered = ell.sorted()
    n = ell.n
    notes: list[str] = []
    desc = descriptor(ell)
    avec = a_vector(ordered) if n >= 3 else []
    families = [[list(indices(m)) for m in desc.family(k)] for k in range(max(n - 2, 0))]

    def codims() -> list[dict]:
        dim_moduli(n, d)
        return [{"k": c, "codim": codim_stratum(n, d, c)} for c in range(2, d - 1)]

    def ih_rank() -> dict:
        r = first_ih_rank(ordered, d)
        return {"rank": r.rank, "coefficients": r.coefficients}

    report = {
        "n": n,
        "d": d,
        "input": ell.to_json(),
        "ordered": ordered.to_json(),
        "generic": True,
        "dominating_index": dominating_index(ell),
        "d_regular": is_d_regular(ell, d),
        "empty": desc.empty_flag,
        "dim_moduli": _guarded(notes, "dim_moduli", lambda: dim_moduli(n, d)),
        "stratum_codims": _guarded(notes, "stratum_codims", codims),
        "a_vector": avec,
        "short_families": families,
        "chamber_id": desc.id,
        "betti_m3": _guarded(notes, "betti_m3", lambda: betti_counts(ordered).to_json()),
        "filtration": _guarded(notes, "filtration", lambda: filtration(ordered, d)),
        "first_ih_rank": _guarded(notes, "first_ih_rank", ih_rank),
        "ring_graded_ranks": _guarded(notes, "ring_graded_ranks", lambda: list(graded_ranks(ordered, d))),
        "face_complex": _guarded(notes, "face_complex", lambda: short_complex(ordered).to_json()),
        "warnings": notes,
    }
    if d >= 4 and n >= d + 2 and d % 2 == 0:
        notes.append(
            f"morse_data: the computed local table for even d={d} differs from the published one "
            "(Z in codegree d-2)"
        )
    return report


def chamber_records(n: int, d: int | None, regular_only: bool, workers: int) -> list[dict]:
    records = []
    for desc, rep in enumerate_chambers(n, workers):
        if regular_only and not is_d_regular(rep, d):
            continue
        rec = {
            "id": desc.id,
            "n": n,
            "shorts": desc.to_json()["shorts"],
            "representative": rep.to_json(),
            "regular_for": regular_for(rep),
            "empty": desc.empty_flag,
            "a_vector": a_vector(rep),
            "betti_m3": betti_counts(rep).to_json(),
        }
        if d is not None:
            rec["analysis"] = analysis_report(rep, d)
        records.append(rec)
    return records


def _perturbed(rep: LengthVector, rng: random.Random, scale: int = 1000) -> LengthVector:
    """A random permuted vector in the chamber of the integral vector ``rep``.

    Margins of ``rep`` are nonzero integers, so scaling by ``scale`` and adding
    at most ``(scale - 1) // n`` per entry cannot flip any of them.
    """
    n = rep.n
    bump = (scale - 1) // n
    ints = [int(x.real) for x in rep]
    vals = [scale * v + rng.randint(0, bump) for v in ints]
    rng.shuffle(vals)
    return LengthVector(vals)


def _check_pairs(d: int, pairs: list[tuple[list, list]]) -> list[dict]:
    bad = []
    for a, b in pairs:
        va, vb = LengthVector.from_json(a), LengthVector.from_json(b)
        verdict = distinguish(va, vb, d)
        if not verdict.consistent_with_theorem:
            bad.append({"a": a, "b": b, "verdict": verdict.to_json()})
    return bad


def sweep_report(n: int, d: int, seed: int = 0, copies: int = 2, workers: int = 1) -> dict:
    if not 4 <= n <= 7:
        raise UsageError("sweep supports 4 <= n <= 7")
    if d % 2 or d < 4:
        raise UsageError("sweep needs an even d >= 4")
    chambers = enumerate_chambers(n)
    reps = [rep for _, rep in chambers if is_d_regular(rep, d)]
    cross = [(reps[i].to_json(), reps[j].to_json()) for i in range(len(reps)) for j in range(i + 1, len(reps))]
    rng = random.Random(seed)
    same = []
    for rep in reps:
        for _ in range(copies):
            other = _perturbed(rep, rng)
            if not same_chamber(rep, other):
                raise AssertionError(f"perturbation left the chamber of {rep}")
            same.append((rep.to_json(), other.to_json()))
    work = cross + same
    if workers > 1 and work:
        chunks = [work[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_check_pairs, [d] * workers, chunks))
        violations = [v for part in parts for v in part]
    else:
        violations = _check_pairs(d, work)
    violations.sort(key=lambda v: json.dumps(v, sort_keys=True))
    return {
        "n": n,
        "d": d,
        "seed": seed,
        "chambers": len(chambers),
        "regular_chambers": len(reps),
        "distinct_pairs": len(cross),
        "same_chamber_pairs": len(same),
        "violations": violations,
    }


# ---------------------------------------------------------------------------
# output


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, list):
        return "|".join(_cell(v) if not isinstance(v, (list, dict)) else _compact(v) for v in value)
    if isinstance(value, dict):
        return _compact(value)
    return str(value)


def _compact(value: Any) -> str:
    return json.dumps(value, sort_keys=True, separators=(",", ":"))


def _flatten(record: dict, prefix: str = "") -> dict:
    out = {}
    for key in sorted(record):
        value = record[key]
        name = prefix + key
        if isinstance(value, dict):
            out.update(_flatten(value, name + "."))
        else:
            out[name] = _cell(value)
    return out


def to_csv(records: Sequence[dict]) -> str:
    rows = [_flatten(r) for r in records]
    fields = sorted({k for r in rows for k in r})
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow(r)
    return buf.getvalue()


def to_json(data: Any) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def _emit(args: argparse.Namespace, data: Any) -> None:
    if getattr(args, "format", "json") == "csv":
        text = to_csv(data if isinstance(data, list) else [data])
    else:
        text = to_json(data)
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands


def _lengths(text: str) -> LengthVector:
    try:
        return LengthVector.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_analyze(args: argparse.Namespace) -> int:
    _emit(args, analysis_report(_lengths(args.lengths), args.dim))
    return EXIT_OK


def cmd_chambers(args: argparse.Namespace) -> int:
    if not 4 <= args.n <= 8:
        raise UsageError("--n must lie in 4..8")
    if args.regular_only and args.dim is None:
        raise UsageError("--regular-only needs --dim")
    _emit(args, chamber_records(args.n, args.dim, args.regular_only, args.workers))
    return EXIT_OK


def cmd_distinguish(args: argparse.Namespace) -> int:
    a, b = _lengths(args.a), _lengths(args.b)
    verdict = distinguish(a, b, args.dim).to_json()
    verdict.update({"a_chamber": descriptor(a).id, "b_chamber": descriptor(b).id, "d": args.dim})
    _emit(args, verdict)
    return EXIT_OK


def cmd_morse_data(args: argparse.Namespace) -> int:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        table = morse_data_table(args.dim, args.cells, args.perversity_scale)
    if args.format == "text":
        lines = [f"d={table.d} k={table.k} s={table.s} top={table.top_dim}"]
        lines += [f"  H_{table.top_dim - r} (r={r}): {g}" for r, g in sorted(table.groups.items())]
        lines += [f"  note: {note}" for note in table.notes]
        text = "\n".join(lines) + "\n"
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return EXIT_OK
    _emit(args, table.to_json())
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    report = sweep_report(args.n, args.dim, args.seed, args.copies, args.workers)
    _emit(args, report)
    if report["violations"]:
        print(f"{len(report['violations'])} violating pair(s)", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="linkih", description="Invariants of polygon-linkage moduli spaces.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def output(p: argparse.ArgumentParser, formats: Sequence[str] = ("json", "csv")) -> None:
        p.add_argument("--format", choices=formats, default="json")
        p.add_argument("--out", help="write to this file instead of stdout")

    p = sub.add_parser("analyze", help="report every invariant of one length vector")
    p.add_argument("--lengths", required=True, help="comma-separated entries, e.g. 1,1,1,2 or 1,3/2,2+e")
    p.add_argument("--dim", type=int, required=True, help="ambient dimension d")
    output(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("chambers", help="enumerate chambers up to permutation")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--dim", type=int)
    p.add_argument("--regular-only", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    output(p)
    p.set_defaults(func=cmd_chambers)

    p = sub.add_parser("distinguish", help="compare two vectors through their face rings")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--dim", type=int, required=True)
    output(p)
    p.set_defaults(func=cmd_distinguish)

    p = sub.add_parser("morse-data", help="homology of the local Morse datum")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--cells", type=int, required=True, help="index multiple k")
    p.add_argument("--perversity-scale", type=int, choices=(0, 1), default=1)
    output(p, ("json", "csv", "text"))
    p.set_defaults(func=cmd_morse_data)

    p = sub.add_parser("sweep", help="check the chamber/ring correspondence exhaustively")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--copies", type=int, default=2, help="perturbed same-chamber copies per chamber")
    p.add_argument("--workers", type=int, default=1)
    output(p)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NonGenericError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONGENERIC
    except (UsageError, ValueError, NotImplementedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
