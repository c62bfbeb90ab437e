"""Command-line front end.

Subcommands: enumerate, torsion, realize, table1, lattice, dquot,
binforms.  Exit status 0 on success, 1 on a domain error, 2 on usage
errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .configurations import Configuration, PreconditionError, deg_j, enumerate_case
from .kodaira import FiberError
from .lattices import (
    DynkinLabel,
    LatticeError,
    direct_sum,
    discriminant_form,
    gram_of,
    hyperbolic_u,
)
from .mordell_weil import HeightError, torsion_search
from .realizability import (
    RealizabilityError,
    d_lattice_quotient,
    realize,
    reduced_binary_forms,
)
from .report import classification_report, group_name, rows_to_csv, rows_to_json, rows_to_text

DOMAIN_ERRORS = (PreconditionError, FiberError, LatticeError, HeightError,
                 RealizabilityError)


def _dump(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _cmd_enumerate(args: argparse.Namespace) -> int:
    configs = enumerate_case(args.case)
    rows = [{
        "fibers": list(c.symbols),
        "euler_sum": c.euler_sum,
        "rank_sum": c.rank_sum,
        "deg_j": deg_j(c),
        "m": c.m,
    } for c in configs]
    if args.json:
        sys.stdout.write(_dump({"case": args.case, "count": len(rows), "rows": rows}))
    elif args.csv:
        print("fibers,euler_sum,rank_sum,deg_j,m")
        for r in rows:
            print(f"\"{','.join(r['fibers'])}\",{r['euler_sum']},{r['rank_sum']},"
                  f"{r['deg_j']},{r['m']}")
    else:
        print(f"case {args.case}: {len(rows)} configurations")
        for r in rows:
            print(f"  ({','.join(r['fibers'])})  degJ={r['deg_j']}")
    return 0


def _cmd_torsion(args: argparse.Namespace) -> int:
    config = Configuration.parse(args.config)
    report = torsion_search(config)
    payload = {
        "config": list(config.symbols),
        "maximal_group": list(report.maximal_group),
        "group_name": group_name(report.maximal_group),
        "witnesses": [list(a.components) for a in report.zero_height_elements
                      if any(a.components)],
        "discarded": [list(a.components) for a in report.discarded],
    }
    if args.json:
        sys.stdout.write(_dump(payload))
    else:
        print(f"configuration ({args.config}): MW torsion bound "
              f"{payload['group_name']}")
        for w in payload["witnesses"]:
            print(f"  zero-height section through components {w}")
        for w in payload["discarded"]:
            print(f"  discarded zero-height assignment {w}")
    return 0


def _cmd_realize(args: argparse.Namespace) -> int:
    result = realize(args.type)
    payload: dict = {
        "type": result.m,
        "fibers": list(result.configuration.symbols),
        "possible_torsion": [list(t) for t in result.possible_torsion],
        "mw": list(result.final_mw) if result.final_mw is not None else None,
        "mw_name": (group_name(result.final_mw)
                    if result.final_mw is not None else "non-existent"),
        "existence": result.provenance,
        "evidence": [],
    }
    for ev in result.evidence:
        entry = {
            "torsion": list(ev.torsion),
            "picard_det": ev.picard_det,
            "candidate_forms": [[[f.b11, f.b12], [f.b12, f.b22]] for f in ev.candidates],
            "realizable": ev.realizable,
        }
        if ev.transcendental is not None:
            t = ev.transcendental
            entry["transcendental"] = [[t.b11, t.b12], [t.b12, t.b22]]
            entry["witness_images"] = [list(img) for img in (ev.witness or ())]
        payload["evidence"].append(entry)
    if result.final_mw is not None:
        from .realizability import PUBLISHED_B_MATRICES, picard_candidate

        payload["picard"] = picard_candidate(result.m, result.final_mw).lattice.to_json()
        if result.provenance == "constructed":
            payload["published_generator_map"] = [
                list(row) for row in PUBLISHED_B_MATRICES[result.m]]
    if args.json:
        sys.stdout.write(_dump(payload))
    else:
        print(f"type {result.m} ({','.join(result.configuration.symbols)}): "
              f"MW = {payload['mw_name']} [{result.provenance}]")
        for entry in payload["evidence"]:
            verdict = "realizable" if entry["realizable"] else "excluded"
            print(f"  torsion {entry['torsion']}: det {entry['picard_det']} -> {verdict}")
    return 0


def _cmd_table1(args: argparse.Namespace) -> int:
    rows = classification_report()
    if args.json:
        sys.stdout.write(rows_to_json(rows))
    elif args.csv:
        sys.stdout.write(rows_to_csv(rows))
    else:
        sys.stdout.write(rows_to_text(rows))
    if args.figures:
        from .figures import render_report_files

        written = render_report_files(rows, args.figures)
        for path in written:
            print(f"wrote {path}", file=sys.stderr)
    return 0


def _cmd_lattice(args: argparse.Namespace) -> int:
    blocks = []
    for token in args.labels:
        if token == "U":
            blocks.append(hyperbolic_u())
        else:
            blocks.append(gram_of(DynkinLabel.parse(token)))
    lat = direct_sum(blocks)
    disc = discriminant_form(lat)
    payload = {
        "labels": list(args.labels),
        "rank": lat.rank,
        "det": lat.determinant(),
        "signature": list(lat.signature()),
        "gram": lat.to_json()["gram"],
        "discriminant": disc.to_json(),
    }
    if args.json:
        sys.stdout.write(_dump(payload))
    else:
        print(f"{' + '.join(args.labels)}: rank {lat.rank}, det {lat.determinant()}, "
              f"signature {lat.signature()}")
        print(f"discriminant group {list(disc.factors)}")
        for row in disc.to_json()["q_generators"]:
            print("  " + " ".join(f"{x:>6}" for x in row))
    return 0


def _cmd_dquot(args: argparse.Namespace) -> int:
    factors = d_lattice_quotient(args.parts)
    payload = {
        "parts": list(args.parts),
        "quotient": list(factors),
        "group_name": group_name(factors),
    }
    if args.json:
        sys.stdout.write(_dump(payload))
    else:
        parts = " + ".join(f"D{n}" for n in args.parts)
        print(f"D{sum(args.parts)} / ({parts}) = {payload['group_name']}")
    return 0


def _cmd_binforms(args: argparse.Namespace) -> int:
    forms = reduced_binary_forms(args.det)
    payload = {
        "det": args.det,
        "count": len(forms),
        "forms": [[[f.b11, f.b12], [f.b12, f.b22]] for f in forms],
    }
    if args.json:
        sys.stdout.write(_dump(payload))
    else:
        print(f"{len(forms)} reduced even positive definite forms of det {args.det}")
        for f in forms:
            print(f"  [[{f.b11},{f.b12}],[{f.b12},{f.b22}]]")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="k3extremal",
        description="Classification pipeline for extremal elliptic K3 surfaces "
                    "without semi-stable fibers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list admissible fiber configurations")
    p.add_argument("--case", required=True, choices=["A", "B", "C"])
    _output_flags(p, csv=True)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("torsion", help="torsion bound for one configuration")
    p.add_argument("--config", required=True,
                   help="comma-separated fiber symbols, e.g. 'III*,I2*,I1*'")
    _output_flags(p)
    p.set_defaults(func=_cmd_torsion)

    p = sub.add_parser("realize", help="final Mordell-Weil group of a type")
    p.add_argument("--type", required=True, type=int, choices=range(1, 14),
                   metavar="M", help="type index 1..13")
    _output_flags(p)
    p.set_defaults(func=_cmd_realize)

    p = sub.add_parser("table1", help="regenerate the classification table")
    _output_flags(p, csv=True)
    p.add_argument("--figures", metavar="DIR",
                   help="also render figures and delimited files into DIR")
    p.set_defaults(func=_cmd_table1)

    p = sub.add_parser("lattice", help="direct sums of U and ADE root lattices")
    p.add_argument("labels", nargs="+", metavar="LABEL",
                   help="U or ADE labels such as E7 D6 A1")
    _output_flags(p)
    p.set_defaults(func=_cmd_lattice)

    p = sub.add_parser("dquot", help="quotient of D_m by a block sum of D_n")
    p.add_argument("parts", nargs="+", type=int, metavar="N")
    _output_flags(p)
    p.set_defaults(func=_cmd_dquot)

    p = sub.add_parser("binforms", help="reduced even positive definite binary forms")
    p.add_argument("--det", required=True, type=int)
    _output_flags(p)
    p.set_defaults(func=_cmd_binforms)
    return parser


def _output_flags(p: argparse.ArgumentParser, csv: bool = False) -> None:
    p.add_argument("--json", action="store_true", help="machine-readable output")
    if csv:
        p.add_argument("--csv", action="store_true", help="comma-separated output")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DOMAIN_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
