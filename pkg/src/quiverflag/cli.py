"""Command-line front end: ``quiverflag <command> ...``; JSON reports on stdout.

Exit codes: 0 ok, 2 unreadable or invalid input, 3 empty moduli space,
4 precondition failure, 5 search budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import (
    EmptyModuli,
    InvalidQuiver,
    NotStrict,
    PreconditionError,
    SearchBudgetExceeded,
    ShapeMismatch,
)
from .moduli import echelon_chart, is_special_stable, load_representation, special_weight
from .linalg import rank
from .plucker import GENERIC_RANK, TORIC_EXACT, cox_probe, plucker_ambient, plucker_quiver
from .quiver import (
    anticanonical_exponents,
    dimension,
    fano_sufficient,
    load_spec,
    simplify,
    unstable_codimension,
)
from .schur import hom_matrix, strong_exceptionality_check, tilting_rank, tilting_summands
from .toric import (
    kernel_binomials,
    load_cox_data,
    multiplication_surjective,
    quiver_of_sections,
    weakly_exceptional_check,
)
from .toric_cohomology import cohomology_dims

EXIT_OK, EXIT_INPUT, EXIT_EMPTY, EXIT_PRECONDITION, EXIT_BUDGET = 0, 2, 3, 4, 5


def _strs(values) -> list[str]:
    return [str(v) for v in values]


def _vector(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad integer vector {text!r}") from exc


def _degree_list(text: str) -> list[tuple[int, ...]]:
    return [_vector(part) for part in text.split(";")]


def _counts(text: str) -> dict[tuple[int, int], int]:
    out = {}
    try:
        for part in text.split(";"):
            edge, n = part.split(":")
            t, h = edge.split(",")
            out[(int(t), int(h))] = int(n)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad arrow counts {text!r}") from exc
    return out


def cmd_analyze(args) -> dict:
    spec = load_spec(args.quiver)
    spec.require_nonempty()
    codim = unstable_codimension(spec)
    return {
        "nonempty": True,
        "strict": spec.is_strict,
        "dim": str(dimension(spec)),
        "rho": str(spec.rho),
        "dims": _strs(spec.dims),
        "s": _strs(spec.s[1:]),
        "s_prime": _strs(spec.s_prime),
        "antican": _strs(anticanonical_exponents(spec)),
        "fano": fano_sufficient(spec),
        "theta": _strs(special_weight(spec)),
        "unstable_codimension": None if codim is None else str(codim),
    }


def cmd_simplify(args) -> dict:
    spec = simplify(load_spec(args.quiver))
    doc = spec.to_json()
    doc["labels"] = list(spec.labels)
    return doc


def cmd_tilting(args) -> dict:
    spec = load_spec(args.quiver)
    spec.require_nonempty()
    if not spec.is_strict:
        raise NotStrict("the quiver is not strict; run `quiverflag simplify` first")
    summands = tilting_summands(spec)
    cert = strong_exceptionality_check(spec)
    homs = hom_matrix(spec, args.jobs)
    return {
        "summands": [[_strs(w) for w in t.weights] for t in summands],
        "count": str(len(summands)),
        "rank": str(tilting_rank(spec)),
        "endomorphism_dim": str(sum(map(sum, homs))),
        "pairs_checked": str(cert.pairs_checked),
        "all_in_range": cert.all_in_range,
    }


def cmd_cohomology(args) -> dict:
    spec = load_spec(args.quiver)
    spec.require_nonempty()
    result = cohomology_dims(spec, args.theta, search_radius=args.radius, strict=True)
    return result.to_json()


def cmd_sections(args) -> dict:
    data = load_cox_data(args.cox)
    deltas = args.degrees
    if any(deltas[0]):
        deltas = [tuple(0 for _ in deltas[0])] + deltas
    sq = quiver_of_sections(data, deltas)
    doc = sq.to_json()
    doc["weakly_exceptional"] = weakly_exceptional_check(data, deltas)
    doc["multiplication_surjective"] = multiplication_surjective(data, deltas[1:])
    doc["binomials"] = [str(b) for b in kernel_binomials(sq, args.bound)]
    return doc


def cmd_plucker(args) -> dict:
    spec = load_spec(args.quiver)
    spec.require_nonempty()
    mode = None if args.mode == "auto" else args.mode
    pq = plucker_quiver(spec, mode)
    ambient = plucker_ambient(spec, args.counts if args.counts else pq.counts())
    doc = pq.to_json()
    doc["ambient"] = {
        "counts": [[str(t), str(h), str(n)] for (t, h), n in sorted(ambient.spec.quiver.arrow_counts().items())],
        "dim": str(ambient.dim),
        "codim": str(ambient.codim),
        "counts_injected": bool(args.counts),
    }
    return doc


def cmd_probe(args) -> dict:
    spec = load_spec(args.quiver)
    spec.require_nonempty()
    rows = cox_probe(spec, args.bound)
    return {
        "bound": str(args.bound),
        "degrees": [r.to_json() for r in rows],
        "all_surjective": all(r.surjective for r in rows),
    }


def cmd_stability(args) -> dict:
    spec = load_spec(args.quiver)
    rep = load_representation(spec, args.rep)
    stable = is_special_stable(spec, rep)
    doc = {
        "verdict": "stable" if stable else "unstable",
        "stable": stable,
        "ranks": _strs(rank(rep.block(i)) for i in range(1, spec.rho + 1)),
        "dims": _strs(spec.dims[1:]),
    }
    if stable:
        chart = echelon_chart(spec, rep)
        doc["pivots"] = [[str(c + 1) for c in p] for p in chart.pivots]
        doc["free_entries"] = str(chart.free_entries)
    return doc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quiverflag", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="dimension, s-vectors, anticanonical data")
    p.add_argument("quiver")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("simplify", help="contract vertices with r_i = s_i = 1")
    p.add_argument("quiver")
    p.set_defaults(func=cmd_simplify)

    p = sub.add_parser("tilting", help="tilting summands, rank and endomorphism dimension")
    p.add_argument("quiver")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_tilting)

    p = sub.add_parser("cohomology", help="line bundle cohomology (all ranks 1)")
    p.add_argument("quiver")
    p.add_argument("--theta", type=_vector, required=True, help="comma separated, e.g. -2,0,0")
    p.add_argument("--radius", type=int, default=None, help="only count exponents in [-R, R]")
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("sections", help="quiver of sections of line bundles on graded Cox data")
    p.add_argument("cox")
    p.add_argument("--degrees", type=_degree_list, required=True, help='e.g. "0,0;1,0;0,1"')
    p.add_argument("--bound", type=int, default=2, help="path length bound for binomials")
    p.set_defaults(func=cmd_sections)

    p = sub.add_parser("plucker", help="multigraded Plücker quiver and ambient")
    p.add_argument("quiver")
    p.add_argument("--mode", choices=["auto", TORIC_EXACT, GENERIC_RANK], default="auto")
    p.add_argument("--counts", type=_counts, default=None, help='override n\'_{i,j}, e.g. "0,1:6;0,2:24;1,2:2"')
    p.set_defaults(func=cmd_plucker)

    p = sub.add_parser("probe-cox", help="degreewise surjectivity of the Plücker Cox map")
    p.add_argument("quiver")
    p.add_argument("--bound", type=int, default=2)
    p.set_defaults(func=cmd_probe)

    p = sub.add_parser("stability", help="stability of an explicit representation")
    p.add_argument("quiver")
    p.add_argument("rep")
    p.set_defaults(func=cmd_stability)
    return parser


def _glue_negative_values(argv: list[str]) -> list[str]:
    # "--theta -2,0,0" would otherwise be read as an unknown flag
    out = []
    k = 0
    while k < len(argv):
        if argv[k] in ("--theta", "--degrees") and k + 1 < len(argv):
            out.append(f"{argv[k]}={argv[k + 1]}")
            k += 2
        else:
            out.append(argv[k])
            k += 1
    return out


def _emit(doc) -> None:
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_glue_negative_values(argv))
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        _emit(args.func(args))
        return EXIT_OK
    except (InvalidQuiver, ShapeMismatch, OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except EmptyModuli as exc:
        print(f"empty moduli space: {exc}", file=sys.stderr)
        return EXIT_EMPTY
    except SearchBudgetExceeded as exc:
        if exc.partial is not None:
            _emit(exc.partial.to_json())
        print(f"search budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except PreconditionError as exc:
        hint = " (try `quiverflag simplify`)" if isinstance(exc, NotStrict) else ""
        print(f"precondition failed: {exc}{hint}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
