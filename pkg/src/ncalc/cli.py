"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a mathematical check fails,
2 when the input is malformed or unusable.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field as dc_field
from pathlib import Path

from . import io
from .algebra import BUILTINS, Algebra, builtin, validate_algebra
from .calculus import (FODC, check_universal_presentations, kaehler_calculus, quotient_fodc, universal_kernel_calculus,
                       universal_projection, validate_fodc)
from .checks import InvariantViolation, Report
from .duality import (cartan_from_fodc, dual, double_dual_map, end_structures, pairing_adjunction_violations,
                      reconstruct_fodc, round_trip_report, universal_splitting, validate_cartan_pair)
from .linalg import Field, QQ, is_injective, is_surjective
from .suite import CRITERIA, c7_sections, run_suite

log = logging.getLogger("ncalc")

VERBS = ("validate", "universal", "fodc", "dual", "cartan", "reconstruct", "end-structures", "kaehler",
         "splitting", "report")

EXIT_OK, EXIT_MATH, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


@dataclass
class JobSpec:
    command: str
    algebra: str
    field: str | None = None
    seed: int = 0
    format: str = "human"
    out: str | None = None
    options: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        if self.command not in VERBS:
            raise InputError("unknown command %r" % self.command)
        if self.format not in ("human", "json"):
            raise InputError("format must be human or json")
        if self.field is not None:
            try:
                Field.parse(self.field)
            except ValueError as exc:
                raise InputError(str(exc)) from None


def load_algebra(spec: str, field: Field | None) -> Algebra:
    """A JSON file, or ``builtin:<kind>[:param=value,...]``."""
    if spec.startswith("builtin:"):
        parts = spec.split(":", 2)
        kind = parts[1]
        params = {}
        if len(parts) == 3 and parts[2]:
            for kv in parts[2].split(","):
                if "=" not in kv:
                    raise InputError("builtin parameters look like name=value, got %r" % kv)
                k, v = kv.split("=", 1)
                params[k.strip()] = v.strip() if k.strip() == "q" else _int(v, k)
        try:
            return builtin(kind, field or QQ, **params)
        except (ValueError, TypeError) as exc:
            raise InputError(str(exc)) from None
    obj = io.load_json(spec)
    if field is not None and isinstance(obj, dict) and "field" in obj and obj["field"] != field.name:
        log.warning("field override: %s declares %s, using %s", spec, obj["field"], field.name)
    return io.parse_algebra(obj, field, spec)


def _int(v: str, name: str) -> int:
    try:
        return int(v)
    except ValueError:
        raise InputError("builtin parameter %s must be an integer" % name) from None


def _require_valid_algebra(a: Algebra) -> None:
    rep = validate_algebra(a)
    if not rep.ok:
        raise InputError("algebra is not a unital associative algebra:\n" + "\n".join(rep.lines()))


def _load_fodc(a: Algebra, which: str) -> FODC:
    if which == "universal":
        return universal_kernel_calculus(a)
    if which == "kaehler":
        try:
            return kaehler_calculus(a)
        except ValueError as exc:
            raise InputError(str(exc)) from None
    return io.read_fodc(which, a)


def _emit(path: str | None, obj: dict) -> None:
    if path:
        Path(path).write_text(json.dumps(obj, indent=1, sort_keys=True) + "\n", encoding="ascii")


# ------------------------------------------------------------ verbs

def _validate(a: Algebra, job: JobSpec) -> list[Report]:
    reps = [validate_algebra(a)]
    if not reps[0].ok:
        return reps
    if job.options.get("fodc"):
        f = _load_fodc(a, job.options["fodc"])
        reps.append(validate_fodc(f))
    if job.options.get("cartan"):
        reps.append(validate_cartan_pair(io.parse_cartan(io.load_json(job.options["cartan"]), a,
                                                         job.options["cartan"])))
    return reps


def _universal(a: Algebra, job: JobSpec) -> list[Report]:
    return [check_universal_presentations(a)]


def _fodc(a: Algebra, job: JobSpec) -> list[Report]:
    path = job.options.get("ideal")
    gens = io.read_generators(path, a) if path else []
    f = quotient_fodc(a, gens, Path(path).stem if path else "universal")
    rep = validate_fodc(f)
    rep.info["dim"] = f.dim
    rep.info["relations dim"] = f.relations.dim
    if rep.ok:
        pi = universal_projection(f)
        rep.require("universal projection recovers d", pi.matrix @ universal_kernel_calculus(a).d == f.d)
    _emit(job.options.get("emit"), io.fodc_to_json(f))
    return [rep]


def _dual(a: Algebra, job: JobSpec) -> list[Report]:
    side = job.options.get("side", "right")
    f = _load_fodc(a, job.options.get("fodc") or "universal")
    M = f.omega
    D = dual(M, side)
    rep = Report("%s dual of %s" % (side, M.name or "?"))
    rep.record("pairing adjunction on basis triples", pairing_adjunction_violations(D))
    mat, _, _ = double_dual_map(M, side, D)
    rep.info["dim"] = D.dim
    rep.info["torsionless"] = is_injective(mat)
    rep.info["reflexive"] = is_injective(mat) and is_surjective(mat)
    return [rep]


def _cartan(a: Algebra, job: JobSpec) -> list[Report]:
    side = job.options.get("side", "right")
    f = _load_fodc(a, job.options.get("fodc") or "universal")
    cp = cartan_from_fodc(f, side)
    rep = validate_cartan_pair(cp)
    _emit(job.options.get("emit"), io.cartan_to_json(cp))
    return [rep]


def _reconstruct(a: Algebra, job: JobSpec) -> list[Report]:
    if job.options.get("cartan"):
        path = job.options["cartan"]
        cp = io.parse_cartan(io.load_json(path), a, path)
        rec = reconstruct_fodc(cp)
        rec.report.title = "reconstruction from %s" % path
        return [rec.report]
    f = _load_fodc(a, job.options.get("fodc") or "universal")
    rec = reconstruct_fodc(cartan_from_fodc(f))
    rec.report.title = "reconstruction from the Cartan pair of %s" % (f.name or "?")
    return [rec.report, round_trip_report(f)]


def _end_structures(a: Algebra, job: JobSpec) -> list[Report]:
    return [end_structures(a).report]


def _kaehler(a: Algebra, job: JobSpec) -> list[Report]:
    f = _load_fodc(a, "kaehler")
    rep = validate_fodc(f)
    rep.title = "Kaehler calculus of %s" % (a.name or "?")
    rep.info["dim"] = f.dim
    cp = cartan_from_fodc(f)
    rep.merge(validate_cartan_pair(cp), "Cartan pair")
    return [rep]


def _splitting(a: Algebra, job: JobSpec) -> list[Report]:
    return [c7_sections(a, job.seed), universal_splitting(a)[1]]


def _report(a: Algebra, job: JobSpec) -> list[Report]:
    only = job.options.get("criteria")
    return run_suite(a, job.seed, only)


HANDLERS = {
    "validate": _validate, "universal": _universal, "fodc": _fodc, "dual": _dual, "cartan": _cartan,
    "reconstruct": _reconstruct, "end-structures": _end_structures, "kaehler": _kaehler,
    "splitting": _splitting, "report": _report,
}


def run(job: JobSpec) -> tuple[int, list[Report]]:
    """Execute one job; returns the exit code and the reports produced."""
    field = Field.parse(job.field) if job.field else None
    a = load_algebra(job.algebra, field)
    if job.command != "validate":
        _require_valid_algebra(a)
    try:
        reports = HANDLERS[job.command](a, job)
    except InvariantViolation as exc:
        return EXIT_MATH, [exc.report]
    code = EXIT_OK if all(r.ok for r in reports) else EXIT_MATH
    return code, reports


def render(job: JobSpec, code: int, reports: list[Report]) -> str:
    if job.format == "json":
        doc = {"command": job.command, "algebra": job.algebra, "seed": job.seed, "exit_code": code,
               "reports": [r.to_dict() for r in reports]}
        return json.dumps(doc, indent=1, sort_keys=True, ensure_ascii=True) + "\n"
    lines = []
    for r in reports:
        lines.extend(r.lines())
    lines.append("exit %d" % code)
    return "\n".join(lines).encode("ascii", "replace").decode("ascii") + "\n"


def _common(suppress: bool) -> argparse.ArgumentParser:
    dflt = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    c = argparse.ArgumentParser(add_help=False)
    c.add_argument("--field", default=dflt(None), help='override the ground field: "Q" or "Fp:<prime>"')
    c.add_argument("--seed", type=int, default=dflt(0))
    c.add_argument("--format", choices=("human", "json"), default=dflt("human"))
    c.add_argument("--out", default=dflt(None), help="write the report here instead of stdout")
    return c


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ncalc", description="First-order differential calculi and Cartan pairs "
                                "over finite-dimensional algebras.", parents=[_common(False)])
    # flags may also follow the verb; there they must not reset values given before it
    common = _common(True)
    sub = p.add_subparsers(dest="command", required=True)
    alg_help = "algebra JSON file or builtin:<kind>[:name=value,...] (kinds: %s)" % ", ".join(sorted(BUILTINS))
    fodc_help = "universal, kaehler, or a calculus JSON file"
    for verb in VERBS:
        s = sub.add_parser(verb, parents=[common])
        s.add_argument("algebra", help=alg_help)
        if verb == "validate":
            s.add_argument("--fodc", help="also validate this calculus file")
            s.add_argument("--cartan", help="also validate this Cartan pair file")
        if verb == "fodc":
            s.add_argument("--ideal", help="generator set file; omitted means the universal calculus")
            s.add_argument("--emit", help="write the quotient calculus as JSON")
        if verb in ("dual", "cartan", "reconstruct"):
            s.add_argument("--fodc", help=fodc_help)
        if verb in ("dual", "cartan"):
            s.add_argument("--side", choices=("right", "left"), default="right")
        if verb == "cartan":
            s.add_argument("--emit", help="write the Cartan pair as JSON")
        if verb == "reconstruct":
            s.add_argument("--cartan", help="Cartan pair file (default: pair of --fodc)")
        if verb == "report":
            s.add_argument("--criteria", help="comma-separated subset of 1-%d" % len(CRITERIA))
    return p


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="ncalc: %(message)s", stream=sys.stderr)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    opts = {k: v for k, v in vars(args).items()
            if k not in ("command", "algebra", "field", "seed", "format", "out") and v is not None}
    try:
        if "criteria" in opts:
            try:
                opts["criteria"] = sorted({int(x) for x in opts["criteria"].split(",")})
            except ValueError:
                raise InputError("--criteria takes comma-separated integers") from None
            bad = [k for k in opts["criteria"] if k not in CRITERIA]
            if bad:
                raise InputError("unknown criteria %s" % bad)
        job = JobSpec(args.command, args.algebra, args.field, args.seed, args.format, args.out, opts)
        code, reports = run(job)
    except (InputError, io.ParseError) as exc:
        print("ncalc: input error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    text = render(job, code, reports)
    if job.out:
        Path(job.out).write_text(text, encoding="ascii")
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
