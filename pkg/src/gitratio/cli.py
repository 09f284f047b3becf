"""``gitratio`` command line.

Every subcommand emits either a JSON report (with ``schema_version`` and
``kind``) or a plain fixed-width table. Output depends only on the
arguments, never on wall-clock time unless ``--timing`` is passed.

Exit codes: 0 success, 1 a verification came out false, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Callable, Sequence

import jsonschema

from . import acceptance
from .lattice import RankMismatch
from .localization import (
    beta_class,
    identity_sign,
    push_pull,
    sqrt_ctop_class,
    verify_antiinvariant_identity,
    verify_image_membership,
)
from .ratio import census_is_as_expected, pm_n_state_census, ratio_for_group
from .rootsys import RootSystem, UnsupportedGroup, all_parabolics, borel, build_type_A, parabolic, parse_group
from .stability import StateSet, Stability, classify, polystable_stabilizer, stabilizer_rank
from .statemodel import EliminationError, StateModel, census, eliminate_strictly_semistable

SCHEMA_VERSION = "1.0"
SUBCOMMANDS = ("ratio", "stability", "perturb", "localize", "census", "accept")


class UsageError(Exception):
    """Bad flags or bad input; exit code 2."""


@dataclass
class RunConfig:
    subcommand: str
    input_path: str | None = None
    group: str | None = None
    n: int | None = None
    output: str = "json"
    seed: int | None = None
    parabolic: str = "all"
    lattice: str = "sl"
    group_type: str = "A"
    out_path: str | None = None
    timing: bool = False

    def validate(self) -> None:
        if self.subcommand not in SUBCOMMANDS:
            raise UsageError(f"unknown subcommand {self.subcommand!r}")
        if self.output not in ("json", "table"):
            raise UsageError(f"--output must be json or table, got {self.output!r}")
        if self.subcommand in ("stability", "perturb") and not self.input_path:
            raise UsageError(f"{self.subcommand} needs an input file")
        if self.subcommand == "ratio" and not self.group:
            raise UsageError("ratio needs --group")
        if self.subcommand == "localize":
            if self.group_type != "A":
                raise UsageError(f"only type A is supported, got --type {self.group_type}")
            if self.n is None:
                raise UsageError("localize needs --n")
        if self.subcommand == "census" and self.n is None and not self.group:
            raise UsageError("census needs --n or --group")


@dataclass
class Report:
    kind: str
    body: dict
    table: list[str]
    ok: bool = True

    def to_json(self) -> dict:
        return {"schema_version": SCHEMA_VERSION, "kind": self.kind, **self.body}

    def render(self, output: str) -> str:
        if output == "json":
            return json.dumps(self.to_json(), indent=2) + "\n"
        return "\n".join(self.table) + "\n"


# --- input -------------------------------------------------------------------


def load_schema(name: str) -> dict:
    text = resources.files("gitratio").joinpath("schemas", f"{name}.schema.json").read_text("utf-8")
    return json.loads(text)


def read_json(path: str, schema: str) -> dict:
    try:
        text = Path(path).read_text("utf-8")
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise UsageError(f"{path}:{e.lineno}:{e.colno}: malformed JSON: {e.msg}") from None
    try:
        jsonschema.validate(data, load_schema(schema))
    except jsonschema.ValidationError as e:
        where = "/".join(str(p) for p in e.absolute_path) or "(root)"
        raise UsageError(f"{path}: {where}: {e.message}") from None
    return data


def _group(descriptor: str) -> RootSystem:
    try:
        return parse_group(descriptor)
    except UnsupportedGroup as e:
        raise UsageError(str(e)) from None


# --- subcommands --------------------------------------------------------------


def _ratio(cfg: RunConfig) -> Report:
    try:
        rep = ratio_for_group(cfg.group)
    except UnsupportedGroup as e:
        raise UsageError(str(e)) from None
    body = rep.to_json(timing=cfg.timing)
    table = [
        f"group        {rep.group}",
        f"|W|          {rep.weyl_order}",
        f"ratio        {body['ratio']}",
        f"ratio == |W| {rep.ratio_equals_weyl_order}",
    ]
    table += [f"check        {name:<32} {'ok' if v else 'FAILED'}" for name, v in body["checks"].items()]
    if cfg.timing:
        table.append(f"time         {rep.timing_ms:.1f} ms")
    return Report("ratio", body, table, ok=all(rep.checks.values()))


def _stability(cfg: RunConfig) -> Report:
    states = StateSet.from_json(read_json(cfg.input_path, "stateset"))
    cl = classify(states)
    poly = None if cl.kind is Stability.UNSTABLE else len(polystable_stabilizer(states))
    body = {
        "input": states.to_json(),
        **cl.to_json(),
        "stabilizer_rank": stabilizer_rank(states),
        "polystable_stabilizer_rank": poly,
    }
    cert = "-" if cl.certificate is None else str(list(cl.certificate.coords))
    table = [
        f"weights                      {[list(w.coords) for w in states]}",
        f"classification               {cl.kind.value}",
        f"certificate                  {cert}",
        f"stabilizer rank              {body['stabilizer_rank']}",
        f"polystable stabilizer rank   {'-' if poly is None else poly}",
    ]
    return Report("stability", body, table)


def _census_json(model: StateModel) -> dict:
    counts = census(model)
    return {k.value: counts[k] for k in Stability}


def _perturb(cfg: RunConfig) -> Report:
    model = StateModel.from_json(read_json(cfg.input_path, "statemodel"))
    system = _group(cfg.group) if cfg.group else build_type_A(model.rank + 1)
    if system.rank != model.rank:
        raise UsageError(f"model has rank {model.rank} but {system.label} has rank {system.rank}")
    ok = True
    try:
        out, steps = eliminate_strictly_semistable(model, system)
    except EliminationError as e:
        return Report("perturb", {"group": system.label, "error": str(e)}, [f"elimination failed: {e}"], ok=False)
    after = _census_json(out)
    ok = after[Stability.STRICTLY_SEMISTABLE.value] == 0
    body = {
        "group": system.label,
        "census_before": _census_json(model),
        "census_after": after,
        "steps": [s.to_json() for s in steps],
        "model": out.to_json(),
    }
    table = [f"group {system.label}, {len(model)} points in, {len(out)} points out"]
    table.append(f"before  {body['census_before']}")
    for i, s in enumerate(steps, start=1):
        table.append(
            f"round {i}: chi={list(s.chi.coords)} N={s.n.n} "
            f"stabilizer rank {s.max_rank_before} -> {s.max_rank_after}, {s.points_after} points"
        )
    table.append(f"after   {after}")
    return Report("perturb", body, table, ok=ok)


def _parabolics(system: RootSystem, choice: str):
    if choice == "all":
        return all_parabolics(system)
    if choice == "borel":
        return [borel(system)]
    if choice == "full":
        return [parabolic(system, range(1, system.rank + 1))]
    try:
        subset = [int(k) for k in choice.split(",") if k.strip()]
    except ValueError:
        raise UsageError(f"--parabolic must be borel, full, all or a list like 1,2; got {choice!r}") from None
    if any(not 1 <= k <= system.rank for k in subset):
        raise UsageError(f"simple root indices must lie in 1..{system.rank}")
    return [parabolic(system, subset)]


def _localize(cfg: RunConfig) -> Report:
    try:
        system = build_type_A(cfg.n)
    except ValueError as e:
        raise UsageError(str(e)) from None
    entries, table = [], [f"group {system.label}"]
    verified = True
    for par in _parabolics(system, cfg.parabolic):
        sq, beta = sqrt_ctop_class(par), beta_class(par)
        image = push_pull(beta)
        literal = verify_antiinvariant_identity(par)
        sign = identity_sign(par)
        membership = verify_image_membership(par)
        verified &= literal
        entries.append(
            {
                "parabolic": par.name,
                "simple_roots": sorted(par.subset),
                "cosets": [
                    {
                        "representative": str(w),
                        "sqrt_ctop": a.format(),
                        "beta": b.format(),
                        "push_pull_beta": c.format(),
                    }
                    for w, a, b, c in zip(par.coset_reps, sq.components, beta.components, image.components)
                ],
                "identity_verified": literal,
                "identity_sign": None if sign is None else str(sign),
                "image_membership_verified": membership,
            }
        )
        table.append("")
        table.append(f"parabolic {par.name} ({len(par.coset_reps)} cosets)")
        width = max(len(str(w)) for w in par.coset_reps)
        for w, a, b, c in zip(par.coset_reps, sq.components, beta.components, image.components):
            table.append(f"  {str(w):<{width}}  sqrt_ctop={a.format()}  beta={b.format()}  i*i_*(beta)={c.format()}")
        table.append(f"  identity {'verified' if literal else 'NOT verified'}")
        if not literal:
            table.append(f"  i*i_*(beta) = {sign} * sqrt_ctop; image membership verified: {membership}")
    body = {"group": system.label, "parabolics": entries, "verified": verified}
    return Report("localize", body, table, ok=verified)


def _census(cfg: RunConfig) -> Report:
    n = cfg.n
    if n is None:
        system = _group(cfg.group)
        if len(system.factors) != 1:
            raise UsageError("census takes a single A_{n-1} factor")
        n = system.factors[0]
    try:
        cen = pm_n_state_census(n, cfg.lattice)
    except ValueError as e:
        raise UsageError(str(e)) from None
    counts = {k.value: sum(1 for _, c in cen if c.kind is k) for k in Stability}
    expected = census_is_as_expected(n, cen)
    body = {
        "n": n,
        "lattice": cfg.lattice,
        "patterns": [{"rows": list(p), **c.to_json()} for p, c in cen],
        "counts": counts,
        "as_expected": expected,
    }
    table = [f"{'rows':<16} {'class':<20} certificate"]
    for p, c in cen:
        cert = "-" if c.certificate is None else str(list(c.certificate.coords))
        table.append(f"{','.join(map(str, p)):<16} {c.kind.value:<20} {cert}")
    table.append(f"counts {counts}; as expected: {expected}")
    return Report("census", body, table, ok=expected)


def _accept(cfg: RunConfig) -> Report:
    seed = acceptance.DEFAULT_SEED if cfg.seed is None else cfg.seed
    results = acceptance.run_all(seed)
    body = {
        "seed": seed,
        "criteria": [r.to_json() | ({"seconds": round(r.seconds, 3)} if cfg.timing else {}) for r in results],
        "passed": sum(r.passed for r in results),
        "failed": sum(not r.passed for r in results),
    }
    table = []
    for r in results:
        table.append(r.line() if cfg.timing else f"[{'PASS' if r.passed else 'FAIL'}] {r.number:>2}. {r.name}")
        table += [f"      {d}" for d in r.details if not d.startswith("over time budget") or cfg.timing]
    table.append(f"{body['passed']} passed, {body['failed']} failed")
    return Report("accept", body, table, ok=body["failed"] == 0)


HANDLERS: dict[str, Callable[[RunConfig], Report]] = {
    "ratio": _ratio,
    "stability": _stability,
    "perturb": _perturb,
    "localize": _localize,
    "census": _census,
    "accept": _accept,
}


def run(cfg: RunConfig, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        cfg.validate()
        report = HANDLERS[cfg.subcommand](cfg)
    except UsageError as e:
        print(f"gitratio {cfg.subcommand}: error: {e}", file=stderr)
        return 2
    except (RankMismatch, ValueError) as e:
        print(f"gitratio {cfg.subcommand}: error: {e}", file=stderr)
        return 2
    text = report.render(cfg.output)
    if cfg.out_path:
        Path(cfg.out_path).write_text(text, "utf-8")
    else:
        stdout.write(text)
    return 0 if report.ok else 1


# --- argument parsing -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=("json", "table"), default="json")
    common.add_argument("--out", dest="out_path", metavar="FILE", help="write the report here instead of stdout")

    p = argparse.ArgumentParser(prog="gitratio", description=__doc__.split("\n\n")[0])
    sub = p.add_subparsers(dest="subcommand", required=True)

    r = sub.add_parser("ratio", parents=[common], help="GIT integration ratio of a type-A group")
    r.add_argument("--group", required=True, help='e.g. "A2" or "A1xA2"')
    r.add_argument("--timing", action="store_true", help="include wall-clock time (breaks byte-identity)")

    s = sub.add_parser("stability", parents=[common], help="classify a StateSet JSON file")
    s.add_argument("--states", "--input", dest="input_path", required=True, metavar="FILE")

    q = sub.add_parser("perturb", parents=[common], help="eliminate strictly semistable points of a StateModel")
    q.add_argument("--model", "--input", dest="input_path", required=True, metavar="FILE")
    q.add_argument("--group", help="root system of matching rank (default A_r for a rank-r model)")

    loc = sub.add_parser("localize", parents=[common], help="verify the localization identity on G/P")
    loc.add_argument("--type", dest="group_type", default="A")
    loc.add_argument("--n", type=int, required=True, help="number of letters (PGL(n))")
    loc.add_argument("--parabolic", default="all", help='borel, full, all, or simple roots like "1,2"')

    c = sub.add_parser("census", parents=[common], help="stability census of P(M_n)")
    c.add_argument("--n", type=int)
    c.add_argument("--group")
    c.add_argument("--lattice", choices=("sl", "pgl"), default="sl")

    a = sub.add_parser("accept", parents=[common], help="run the acceptance criteria")
    a.add_argument("--seed", type=int)
    a.add_argument("--timing", action="store_true")
    return p


def parse_args(argv: Sequence[str] | None = None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    fields = RunConfig.__dataclass_fields__
    return RunConfig(**{k: v for k, v in vars(ns).items() if k in fields and v is not None})


def main(argv: Sequence[str] | None = None) -> int:
    return run(parse_args(argv))


if __name__ == "__main__":
    sys.exit(main())
