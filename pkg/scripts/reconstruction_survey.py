#!/usr/bin/env python3
"""Round trips calculus -> right Cartan pair -> calculus over random quotients of the universal calculus.

For each quotient: dimension, reflexivity of the one-forms, whether the
reconstructed differential generates, and whether the last arrow of the
dualized sequence is onto.
"""
from __future__ import annotations

import argparse
import random
from collections import Counter
from dataclasses import dataclass

from ncalc.algebra import corpus
from ncalc.calculus import quotient_fodc, random_generator_set
from ncalc.duality import cartan_from_fodc, is_reflexive, reconstruct_fodc, round_trip_report
from ncalc.linalg import QQ


@dataclass
class ReconstructionConfig:
    seed: int = 0
    samples: int = 30
    max_gens: int = 3


def run(cfg: ReconstructionConfig) -> dict:
    rng = random.Random(cfg.seed)
    out = {}
    for a in corpus(QQ):
        tally = Counter()
        for _ in range(cfg.samples):
            f = quotient_fodc(a, random_generator_set(a, rng, cfg.max_gens))
            rec = reconstruct_fodc(cartan_from_fodc(f))
            tally["samples"] += 1
            tally["reflexive"] += is_reflexive(f.omega)
            tally["recovered"] += rec.recovered
            tally["dual onto"] += rec.action_dual_onto
            tally["round trip"] += round_trip_report(f).ok
        out[a.name] = tally
    return out


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=30)
    args = p.parse_args(argv)
    res = run(ReconstructionConfig(seed=args.seed, samples=args.samples))
    cols = ("samples", "reflexive", "recovered", "dual onto", "round trip")
    print("%-26s " % "algebra" + " ".join("%10s" % c for c in cols))
    for name, t in res.items():
        print("%-26s " % name + " ".join("%10d" % t[c] for c in cols))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
