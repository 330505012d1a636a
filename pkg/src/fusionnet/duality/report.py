"""Aggregated duality report for a net: folds, snakes, adjunctions, conjugates, μ and Rep."""
from __future__ import annotations

from typing import Callable

from ..algebra import DEFAULT_TOL, AlgebraError
from ..latticenet.circle import GeometryError
from ..latticenet.defects import DefectError, IdentityDefect, check_defect_axioms, defect_algebra_certificate
from ..latticenet.nets import LatticeNet, check_net_axioms
from ..latticenet.sectors import SectorError, identity_sector
from .adjunction import STATDIM_CONVENTION, adjunction_sectors, conjugate_certificates, triangle_certificates, zigzag_check
from .finiteness import finiteness_report
from .folds import adjoint_defect, dual_net, unit_counit_defects
from .index import RepCategoryBound, mu_index, rep_category

__all__ = ["dualizability_report", "TRACE_WEIGHTS"]

TRACE_WEIGHTS = "canonical trace: weight n_i per Wedderburn block (normalized matrix units)"

_ERRORS = (AlgebraError, GeometryError, DefectError, SectorError)


def _defect_axiom_residual(rep: dict) -> float:
    return max(a["residual"] for a in rep["axioms"].values())


def _dual_involution(N: LatticeNet) -> dict:
    DD = dual_net(dual_net(N))
    r = max(N.local_algebra(L).distance(DD.local_algebra(L)) for L in range(1, N.n))
    return {"kind": "dual-involution", "residual": r}


class _Collector:
    def __init__(self, tol: float):
        self.tol = tol
        self.items: list[dict] = []

    def run(self, kind: str, fn: Callable[[], dict], residual: Callable[[dict], float | None] = lambda r: r["residual"]):
        try:
            r = fn()
        except _ERRORS as exc:
            self.items.append({"kind": kind, "residual": None, "passes": False, "reason": str(exc)})
            return None
        res = residual(r)
        ok = r.get("passes", True) and res is not None and res < self.tol
        entry = {"kind": kind, "residual": res, "passes": bool(ok)}
        if "reason" in r:
            entry["reason"] = r["reason"]
        self.items.append(entry)
        return r


def dualizability_report(net: LatticeNet, *, tol: float = DEFAULT_TOL, seed: int = 0, rep_bound: int | None = None) -> dict:
    """Run the duality certificate chain on ``net`` and aggregate a verdict.

    Certificates: the net axioms, the dual-net involution, the defect
    axioms of both folds, both zigzags, the triangle identities of both
    folds, ``(D†)† ≅ D`` for both folds, conjugate-sector involutions of the
    vacuum and of the counit sector, and ``Σ d² = μ``.

    ``verdict`` is ``"dualizable"`` when every certificate is present with
    residual below ``tol``; ``"not certified"`` otherwise; ``"refused"``
    when the quarter algebras are not factors.  In that case the
    fold-based certificates are listed as skipped and the rest are still
    computed.
    """
    C = _Collector(tol)
    axioms = C.run("net-axioms", lambda: check_net_axioms(net, tol=tol), lambda r: max(
        (a["residual"] for a in r["axioms"].values() if a.get("residual") is not None), default=0.0))
    caveats = []
    if axioms is not None:
        for name, a in axioms["axioms"].items():
            if a["passes"] is False:
                caveats.append({"axiom": name, "counterexample": a.get("counterexample")})
    C.run("dual-involution", lambda: _dual_involution(net))
    mu = C.run("mu-index", lambda: {**mu_index(net, tol=tol), "residual": 0.0})
    factors = bool(mu and mu["quarters_are_factors"])
    folds = {}
    if not factors:
        # fold defects of a non-factor net need fixed-point algebras on long arcs; no verdict follows anyway
        for kind in ("fold-axioms", "zigzag", "triangle", "adjoint-involution", "conjugate:counit"):
            C.items.append({"kind": kind, "residual": None, "passes": False, "reason": "skipped: quarter algebras are not factors"})
    else:
        try:
            Du, Dv = unit_counit_defects(net)
            folds = {"unit": Du, "counit": Dv}
        except _ERRORS as exc:
            C.items.append({"kind": "fold-defects", "residual": None, "passes": False, "reason": str(exc)})
    for tag, D in folds.items():
        C.run(f"fold-axioms:{tag}", lambda D=D: check_defect_axioms(D, tol=tol), _defect_axiom_residual)
    zz = C.run("zigzag", lambda: zigzag_check(net, tol=tol, seed=seed)) if factors else None
    for tag, D in folds.items():
        try:
            tris = triangle_certificates(D, tol=tol, seed=seed)
            for k, t in enumerate(tris):
                C.run(f"triangle:{tag}:{k}", lambda t=t: t)
        except _ERRORS as exc:
            C.items.append({"kind": f"triangle:{tag}", "residual": None, "passes": False, "reason": str(exc)})
        C.run(f"adjoint-involution:{tag}", lambda D=D: defect_algebra_certificate(adjoint_defect(adjoint_defect(D)), D, tol=tol))
    C.run("conjugate:vacuum", lambda: conjugate_certificates(identity_sector(IdentityDefect(net)), tol=tol, seed=seed))
    if "counit" in folds:
        C.run("conjugate:counit", lambda: conjugate_certificates(adjunction_sectors(folds["counit"])["counit"], tol=tol, seed=seed))

    try:
        kw = {"tol": tol, "seed": seed}
        if rep_bound is not None:
            kw["max_sector_dim"] = rep_bound
        rep = rep_category(net, **kw)
        rep_sum = rep["sum_of_squares"]
    except (RepCategoryBound, *_ERRORS) as exc:
        rep, rep_sum = None, None
        C.items.append({"kind": "rep-category", "residual": None, "passes": False, "reason": str(exc)})
    mu_value = mu["mu_index"] if mu else None
    if mu_value is not None and rep_sum is not None:
        C.items.append({"kind": "mu-equals-rep-dim", "residual": abs(mu_value - rep_sum), "passes": abs(mu_value - rep_sum) < tol})
    fin = finiteness_report(net, tol=tol)

    all_ok = all(c["passes"] for c in C.items)
    if not factors:
        verdict = "refused"
    else:
        verdict = "dualizable" if all_ok else "not certified"
    report = {
        "subject": {"kind": "net", "name": net.name, "n": net.n, "site_dim": net.site_dim},
        "mu_index": mu_value,
        "rep_sum_of_squares": rep_sum,
        "finiteness": {k: v for k, v in fin.items() if k != "mu_conventions"},
        "certificates": C.items,
        "verdict": verdict,
        "conventions": {
            "trace_weights": TRACE_WEIGHTS,
            "statdim_convention": STATDIM_CONVENTION,
            "middle_arc_length": net.n // 4,
        },
    }
    if zz is not None:
        report["zigzag_steps"] = [{k: s.get(k) for k in ("snake", "passes", "residual", "reason") if k in s} for s in zz["steps"]]
    if caveats:
        report["caveats"] = caveats
    if not factors:
        report["refusal"] = (
            "quarter algebras are not factors, so the statistical dimension is not a multiplicity; "
            "the μ-index is reported with the operator-norm convention and no verdict is drawn"
        )
    return report
