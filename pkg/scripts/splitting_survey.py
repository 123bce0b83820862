#!/usr/bin/env python3
"""Which sections of multiplication exist, and which intertwinings the End(R) projections satisfy.

Prints one row per algebra; --json dumps the full intertwining tables.
"""
from __future__ import annotations

import argparse
import json
from dataclasses import dataclass, field

from ncalc.algebra import builtin
from ncalc.bimodule import find_splitting, mu_bimodule_map
from ncalc.duality import derivations, universal_splitting
from ncalc.linalg import Field


@dataclass
class SurveyConfig:
    fields: tuple[str, ...] = ("Q", "Fp:2", "Fp:3")
    algebras: tuple[tuple[str, dict], ...] = field(default_factory=lambda: (
        ("truncated_polynomial", {"m": 2}),
        ("truncated_polynomial", {"m": 3}),
        ("truncated_polynomial", {"m": 4}),
        ("cyclic_group_algebra", {"m": 2}),
        ("cyclic_group_algebra", {"m": 3}),
        ("matrix_algebra", {"k": 2}),
        ("quantum_plane", {"q": "-1", "N": 2}),
        ("quantum_plane", {"q": "1", "N": 2}),
    ))


def survey(cfg: SurveyConfig) -> list[dict]:
    rows = []
    for fname in cfg.fields:
        F = Field.parse(fname)
        for kind, params in cfg.algebras:
            try:
                a = builtin(kind, F, **params)
            except ValueError:
                continue
            mu = mu_bimodule_map(a)
            sp, rep = universal_splitting(a)
            rows.append({
                "field": fname,
                "algebra": a.name,
                "dim": a.dim,
                "bimodule section": find_splitting(mu, "bi") is not None,
                "left section": find_splitting(mu, "left") is not None,
                "dim Der": derivations(a).dim,
                "splitting checks pass": rep.ok,
                "P_L ltimes->odot_right": sp.table["P_L: End -> End0"]["ltimes -> odot_right"],
                "P_R rtimes->odot_left": sp.table["P_R: End -> End0"]["rtimes -> odot_left"],
                "table": sp.table,
            })
    return rows


def _flags(d: dict) -> str:
    return "".join(s[0].upper() if d[s] else "-" for s in ("left", "right"))


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--json", help="write all rows, with full tables, to this file")
    args = p.parse_args(argv)
    rows = survey(SurveyConfig())
    print("%-6s %-26s %4s %6s %6s %5s %5s %5s" % ("field", "algebra", "dim", "bisec", "lsec", "Der", "P_L", "P_R"))
    for r in rows:
        print("%-6s %-26s %4d %6s %6s %5d %5s %5s" % (
            r["field"], r["algebra"], r["dim"], r["bimodule section"], r["left section"], r["dim Der"],
            _flags(r["P_L ltimes->odot_right"]), _flags(r["P_R rtimes->odot_left"])))
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=1, sort_keys=True)
    return 0 if all(r["splitting checks pass"] for r in rows) else 1


if __name__ == "__main__":
    raise SystemExit(main())
