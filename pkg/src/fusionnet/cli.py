"""Command-line front end: read JSON documents, run one computation, write a report.

Exit status is 0 when every check passes, 1 when a check fails (the report
carries the counterexample) and 2 when an input cannot be read or does not
match its schema (the message names the JSON path).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Callable

from . import io
from .algebra import AlgebraError
from .bimodule import Refusal
from .latticenet.circle import GeometryError
from .latticenet.defects import DefectError, check_defect_axioms, compose_defects, defect_algebra_certificate, fiber_product
from .latticenet.nets import check_net_axioms
from .latticenet.sectors import SectorError, check_sector, fuse_sectors, verify_interchange, verify_l2_fusion
from .twoalgebra import RescaleError, TwoAlgebra, pentagon_rescale, verify_two_algebra

DEFAULT_TOLERANCE = 1e-9
SEED_ENV = "FUSIONNET_SEED"

COMMANDS: dict[str, tuple[Callable, list[str], str]] = {}


def command(name: str, inputs: list[str], help: str):
    def wrap(fn):
        COMMANDS[name] = (fn, inputs, help)
        return fn

    return wrap


class InputError(Exception):
    """Unreadable input; reported with exit status 2."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.message = message


def _load(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError("$", f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError("$", f"invalid JSON in {path} (line {exc.lineno}, column {exc.colno}): {exc.msg}") from None


def _conventions(n: int | None = None) -> dict:
    from .duality.adjunction import STATDIM_CONVENTION
    from .duality.report import TRACE_WEIGHTS

    return {
        "trace_weights": TRACE_WEIGHTS,
        "statdim_convention": STATDIM_CONVENTION,
        "middle_arc_length": n // 4 if n else "n/4 edges of the circle",
    }


# -- commands -----------------------------------------------------------------------
# each returns (result, passes, circle size or None)

@command("check-net", ["net"], "Check the net axioms on every arc configuration.")
def _check_net(docs, tol, seed, opts):
    N = io.parse_net(docs[0])
    rep = check_net_axioms(N, tol=tol)
    return rep, rep["passes"], N.n


@command("check-defect", ["defect"], "Check isotony, additivity, Haag duality and the vacuum extension of a defect.")
def _check_defect(docs, tol, seed, opts):
    D = io.parse_defect(docs[0])
    rep = check_defect_axioms(D, tol=tol)
    return rep, rep["passes"], D.n


@command("check-sector", ["sector"], "Check compatibility and locality of a sector's arc actions.")
def _check_sector(docs, tol, seed, opts):
    S = io.parse_sector(docs[0])
    rep = check_sector(S, tol=tol, seed=seed)
    return rep, rep["passes"], S.circle.n


def _junction_merges(C, E) -> dict:
    cj = [l for l, _ in C.junction_legs()]
    ej = [l for l, _ in E.junction_legs()]
    if len(ej) == 1 and len(cj) > 1:
        return {ej[0]: cj}
    return {}


@command("compose-defects", ["defect", "defect"], "Compose two defects; certify independence of the middle arc length.")
def _compose(docs, tol, seed, opts):
    D = io.parse_defect(docs[0], "$[0]")
    E = io.parse_defect(docs[1], "$[1]")
    m = opts.middle_arc_length
    try:
        C = compose_defects(D, E, m)
        C1 = compose_defects(D, E, C.m + 1)
    except DefectError as exc:
        return {"refused": str(exc), "witness": getattr(exc, "witness", {})}, False, D.n
    indep = defect_algebra_certificate(C, C1, tol=tol)
    result = {
        "composite": C.describe(),
        "middle_arc_length": C.m,
        "middle_arc_independence": {"compared_with": C.m + 1, "residual": indep["residual"], "passes": indep["passes"]},
    }
    passes = indep["passes"]
    if opts.expect:
        X = io.parse_defect(_load(opts.expect), "$expect")
        cert = defect_algebra_certificate(C, X, merges=_junction_merges(C, X), tol=tol)
        result["expected"] = {"defect": X.describe(), "residual": cert["residual"], "passes": cert["passes"]}
        if not cert["passes"]:
            result["expected"]["counterexample"] = next((p for p in cert["intervals"] if not p["residual"] < tol * 1e3), None)
        passes = passes and cert["passes"]
    return result, passes, D.n


@command("fuse-sectors", ["sector", "sector"], "Fuse two sectors horizontally (--direction h) or vertically (v).")
def _fuse(docs, tol, seed, opts):
    from .duality.adjunction import sector_dimension

    H = io.parse_sector(docs[0], "$[0]")
    K = io.parse_sector(docs[1], "$[1]")
    try:
        F = fuse_sectors(opts.direction, H, K)
    except SectorError as exc:
        return {"refused": str(exc)}, False, H.circle.n
    chk = check_sector(F, tol=tol, seed=seed)
    result = {"fused": F.describe(), "direction": opts.direction, "check": chk}
    try:
        result["statistical_dimension"] = sector_dimension(F, tol=tol)["value"]
    except (SectorError, AlgebraError) as exc:
        result["statistical_dimension"] = None
        result["statistical_dimension_note"] = str(exc)
    return result, chk["passes"], H.circle.n


@command("fiber-product", ["fiber_product"], "Fiber product of two algebras over a common middle algebra.")
def _fiber(docs, tol, seed, opts):
    doc = docs[0]
    U = io.parse_algebra(io._req(doc, "U", "$"), "$.U")
    W = io.parse_algebra(io._req(doc, "W", "$"), "$.W")
    rV = io.parse_homomorphism(io._req(doc, "right_V", "$"), "$.right_V")
    lV = io.parse_homomorphism(io._req(doc, "left_V", "$"), "$.left_V")
    try:
        F = fiber_product(U, W, rV, lV, tol=tol)
    except AlgebraError as exc:
        return {"refused": str(exc)}, False, None
    return {"algebra": io.dump_algebra(F), "ambient_dim": F.ambient_dim, "dim": F.dim, "blocks": [list(b) for b in F.blocks]}, True, None


@command("mu-index", ["net"], "μ-index of a net from the four-quarter vacuum bimodule.")
def _mu(docs, tol, seed, opts):
    from .duality.index import mu_index

    N = io.parse_net(docs[0])
    rep = mu_index(N, tol=tol)
    return rep, True, N.n


@command("rep-category", ["net"], "Irreducible vacuum endosectors with dimensions and fusion multiplicities.")
def _rep(docs, tol, seed, opts):
    from .duality.index import RepCategoryBound, rep_category

    N = io.parse_net(docs[0])
    try:
        rep = rep_category(N, tol=tol, seed=seed)
    except RepCategoryBound as exc:
        return {"refused": str(exc), "partial": exc.partial}, False, N.n
    return rep, True, N.n


@command("dualize", ["net"], "Full duality certificate chain and verdict for a net.")
def _dualize(docs, tol, seed, opts):
    from .duality.report import dualizability_report

    N = io.parse_net(docs[0])
    rep = dualizability_report(N, tol=tol, seed=seed)
    return rep, rep["verdict"] == "dualizable", N.n


@command("check-2algebra", ["two_algebra"], "Check the homomorphism property and both 2-algebra axioms.")
def _check_2alg(docs, tol, seed, opts):
    T = io.parse_two_algebra(docs[0])
    T.tol = tol
    rep = verify_two_algebra(T)
    if not rep["passes"]:
        failing = [k for k in ("mu_homomorphism", "mu_unital", "axiom1", "axiom2") if not rep[k] < tol * 100]
        rep["counterexample"] = {"failing": failing, "residuals": {k: rep[k] for k in failing}}
    return rep, rep["passes"], None


@command("pentagon-rescale", ["two_algebra"], "Rescale v by the central factor so that axiom 2 holds.")
def _pentagon(docs, tol, seed, opts):
    T = io.parse_two_algebra(docs[0])
    try:
        v = pentagon_rescale(T.algebra, T.mu, T.v, tol=tol)
    except RescaleError as exc:
        return {"refused": str(exc), "witness": exc.decomposition}, False, None
    except AlgebraError as exc:
        return {"refused": str(exc)}, False, None
    after = verify_two_algebra(TwoAlgebra(T.algebra, T.mu, v, tol))
    return {"v": io.complex_array(v), "check_after_rescale": after}, after["axiom2"] < tol * 100, None


@command("verify-l2-fusion", ["defect", "defect"], "Certify that L2 of a composite defect is the fusion of the L2 spaces.")
def _l2(docs, tol, seed, opts):
    D = io.parse_defect(docs[0], "$[0]")
    E = io.parse_defect(docs[1], "$[1]")
    try:
        cert = verify_l2_fusion(D, E, tol=tol, seed=seed)
    except (DefectError, SectorError) as exc:
        return {"refused": str(exc)}, False, D.n
    return cert, cert["passes"], D.n


@command("verify-interchange", ["sector", "sector", "sector", "sector"], "Certify the interchange law on a 2x2 grid of sectors.")
def _interchange(docs, tol, seed, opts):
    H, K, L, M = (io.parse_sector(d, f"$[{i}]") for i, d in enumerate(docs))
    try:
        cert = verify_interchange(H, K, L, M, tol=tol, seed=seed)
    except SectorError as exc:
        return {"refused": str(exc)}, False, H.circle.n
    return cert, cert["passes"], H.circle.n


@command("separability", ["abstract_algebra"], "Separability idempotent of an algebra, or a witness that none exists.")
def _separability(docs, tol, seed, opts):
    from .duality.separability import separability_check

    A = io.parse_abstract_algebra(docs[0])
    r = separability_check(A, tol=tol)
    if isinstance(r, Refusal):
        return {"refused": r.reason, "witness": r.witness}, False, None
    return {"idempotent": r.element, "residual": r.residual, "solution_space_dim": r.solution_space_dim, **r.details}, True, None


# -- driver -----------------------------------------------------------------------------

def _seed(value: int | None) -> int:
    if value is None:
        env = os.environ.get(SEED_ENV)
        if env is None:
            return 0
        try:
            value = int(env)
        except ValueError:
            raise InputError("$env." + SEED_ENV, f"not an integer: {env!r}") from None
        if value < 0:
            raise InputError("$env." + SEED_ENV, f"seed must be non-negative, got {value}")
    elif value < 0:
        raise InputError("$seed", f"seed must be non-negative, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fusionnet", description="Finite lattice models of conformal nets, defects and sectors.")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")
    for name, (_, inputs, help) in COMMANDS.items():
        sp = sub.add_parser(name, help=help, description=help)
        for i, kind in enumerate(inputs):
            sp.add_argument(f"input{i}", metavar=f"{kind.upper()}.json")
        sp.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE, help="numerical tolerance (default 1e-9)")
        sp.add_argument("--seed", type=int, default=None, help=f"random seed (default 0, or ${SEED_ENV})")
        sp.add_argument("--output", default=None, help="write the report here instead of stdout")
        sp.add_argument("--format", choices=("json", "text"), default="json")
        if name == "compose-defects":
            sp.add_argument("--middle-arc-length", type=int, default=None, help="edges in the middle arc (default n/4)")
            sp.add_argument("--expect", default=None, help="defect document the composite should be isomorphic to")
        if name == "fuse-sectors":
            sp.add_argument("--direction", choices=("h", "v"), default="v")
    return p


def _flatten(prefix: str, x, out: list):
    if isinstance(x, dict):
        for k in sorted(x):
            _flatten(f"{prefix}.{k}" if prefix else str(k), x[k], out)
    elif isinstance(x, list) and x and all(isinstance(v, (dict, list)) for v in x) and not _is_number_pair_matrix(x):
        for i, v in enumerate(x):
            _flatten(f"{prefix}[{i}]", v, out)
    else:
        out.append(f"{prefix}: {json.dumps(x, sort_keys=True, ensure_ascii=False)}")


def _is_number_pair_matrix(x) -> bool:
    return all(isinstance(r, list) and all(isinstance(c, list) and len(c) == 2 and all(isinstance(t, (int, float)) for t in c) for c in r) for r in x)


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return io.dumps(report)
    lines: list[str] = []
    _flatten("", io.encode(report), lines)
    return "\n".join(lines) + "\n"


def run(argv: list[str] | None = None) -> tuple[int, str, str | None, str | None]:
    """Run one job; returns ``(exit status, rendered report, output path, error message)``."""
    parser = build_parser()
    args = parser.parse_args(argv)
    fn, inputs, _ = COMMANDS[args.command]
    paths = [getattr(args, f"input{i}") for i in range(len(inputs))]
    report = {
        "format_version": io.FORMAT_VERSION,
        "command": args.command,
        "inputs": [Path(p).name for p in paths],
        "tolerance": args.tolerance,
    }
    try:
        seed = _seed(args.seed)
        report["seed"] = seed
        docs = []
        for p in paths:
            d = _load(p)
            if isinstance(d, dict) and "format_version" in d and d["format_version"] != io.FORMAT_VERSION:
                raise InputError("$.format_version", f"unsupported version {d['format_version']!r} in {Path(p).name}")
            docs.append(d)
        result, passes, n = fn(docs, args.tolerance, seed, args)
    except (InputError, io.SchemaError) as exc:
        report["error"] = {"path": exc.path, "message": exc.message}
        report["status"] = "input error"
        return 2, render(report, args.format), args.output, f"{exc.path}: {exc.message}"
    except DefectError as exc:
        # a well-formed document describing an invalid defect is a failed check
        result, passes, n = {"refused": str(exc), "witness": getattr(exc, "witness", {})}, False, None
    except (GeometryError, SectorError) as exc:
        report["error"] = {"path": "$", "message": str(exc)}
        report["status"] = "input error"
        return 2, render(report, args.format), args.output, f"$: {exc}"
    report["status"] = "pass" if passes else "fail"
    report["passes"] = bool(passes)
    report["result"] = result
    report["conventions"] = _conventions(n)
    return (0 if passes else 1), render(report, args.format), args.output, None


def main(argv: list[str] | None = None) -> int:
    status, text, out, err = run(argv)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if err:
        print(f"fusionnet: error: {err}", file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
