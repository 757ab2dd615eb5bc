"""Fixed-``n`` proofs of the parametric identities by evaluation on a grid.

For fixed ``n`` both sides of I1-I4, I7 and I8 are rational functions of the
free symbols.  Multiplying ``lhs - rhs`` by the product of the distinct
denominator forms gives a polynomial whose degree in each symbol is at most
``2n + 5`` for every identity in scope; :func:`degree_bound` returns the
looser ``3n + 12``.  A polynomial of per-variable degree ``<= D`` that
vanishes on a product grid with ``D + 1`` points per variable is zero, so
exact equality on the grid proves the identity for that ``n``.

Grid points are ``m = 1/2 + i`` and ``r = 1/3 + j``: every denominator form
has coefficient 1 on ``m``, ``r`` or ``m + r`` plus an integer, so none can
vanish there.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional

from .exact import format_rational, is_pole, lf
from .identities import IdentityDef, Term, eval_identity, eval_rhs, eval_term, get

__all__ = [
    "PROVABLE",
    "ProofCertificate",
    "degree_bound",
    "grid",
    "grid_is_pole_free",
    "verify_polynomial",
    "verify_induction",
    "seeded_mutations",
]

PROVABLE = ("I1", "I2", "I3", "I4", "I7", "I8")
INDUCTIVE = ("I7", "I8")
M_OFFSET = Fraction(1, 2)
R_OFFSET = Fraction(1, 3)


@dataclass(frozen=True)
class ProofCertificate:
    identity: str
    n: int
    degree_bound: int
    grid: dict            # symbol -> tuple of grid values
    verdict: str          # "verified" or "refuted"
    evaluations: int
    counterexample: Optional[dict] = None
    kind: str = "sum"     # "sum" or "step" (induction step n-1 -> n)

    @property
    def verified(self) -> bool:
        return self.verdict == "verified"

    def summary(self) -> str:
        if self.verified:
            return f"verified ({self.evaluations} evaluations)"
        point = ", ".join(f"{s}={format_rational(v)}" for s, v in self.counterexample.items())
        return f"refuted at {point}"


def _check_supported(identity: IdentityDef, allowed=PROVABLE) -> None:
    if identity.id not in allowed:
        raise ValueError(f"{identity.id} is not supported here (expected one of {', '.join(allowed)})")


def degree_bound(identity, n: int) -> int:
    identity = get(identity)
    _check_supported(identity)
    if n < 0:
        raise ValueError("n must be nonnegative")
    return 3 * n + 12


def grid(identity, n: int) -> dict:
    identity = get(identity)
    D = degree_bound(identity, n)
    out = {}
    if "m" in identity.free:
        out["m"] = tuple(M_OFFSET + i for i in range(D + 1))
    if "r" in identity.free:
        out["r"] = tuple(R_OFFSET + j for j in range(D + 1))
    return out


def _points(g: dict):
    ms = g.get("m", (None,))
    rs = g.get("r", (None,))
    for m in ms:
        for r in rs:
            yield {s: v for s, v in (("m", m), ("r", r)) if v is not None}


def grid_is_pole_free(identity, n: int) -> bool:
    """Audit: no denominator form of either side vanishes at any grid point."""
    identity = get(identity)
    forms = list(identity.summand.denominator) + list(identity.rhs.denominator)
    for p in _points(grid(identity, n)):
        for k in range(n + 1):
            a = dict(p, n=n, k=k)
            if any(f.evaluate(a) == 0 for f in forms):
                return False
    return True


def verify_polynomial(identity, n: int) -> ProofCertificate:
    """Prove ``identity`` for this ``n`` by exact evaluation on the grid.

    Stops at the first grid point where the sides differ.
    """
    identity = get(identity)
    D = degree_bound(identity, n)
    g = grid(identity, n)
    count = 0
    for p in _points(g):
        rep = eval_identity(identity, n, **p)
        count += 1
        if is_pole(rep.lhs) or is_pole(rep.rhs) or rep.reason:
            raise RuntimeError(f"{identity.id}, n={n}: grid point {p} is degenerate ({rep.reason})")
        if rep.status != "equal":
            return ProofCertificate(identity.id, n, D, g, "refuted", count, p)
    return ProofCertificate(identity.id, n, D, g, "verified", count)


def _verify_step(identity: IdentityDef, n: int) -> ProofCertificate:
    # rhs(n) - rhs(n-1) == summand(k=n), as a rational function of m
    D = degree_bound(identity, n)
    g = grid(identity, n)
    count = 0
    for p in _points(g):
        new, old = eval_rhs(identity, n, **p), eval_rhs(identity, n - 1, **p)
        term = eval_term(identity, n, n, **p)
        count += 1
        if any(is_pole(x) for x in (new, old, term)):
            raise RuntimeError(f"{identity.id}, step {n}: grid point {p} is a pole")
        if new - old != term:
            return ProofCertificate(identity.id, n, D, g, "refuted", count, p, kind="step")
    return ProofCertificate(identity.id, n, D, g, "verified", count, kind="step")


def verify_induction(identity, n_max: int) -> list:
    """Base case ``n = 0`` by :func:`verify_polynomial`, then every step
    ``n - 1 -> n`` up to ``n_max``.

    Only for identities whose summand does not depend on ``n`` (I7, I8), so
    that the sum grows by exactly one term per step.
    """
    identity = get(identity)
    _check_supported(identity, INDUCTIVE)
    certs = [verify_polynomial(identity, 0)]
    for n in range(1, n_max + 1):
        certs.append(_verify_step(identity, n))
    return certs


def seeded_mutations() -> dict:
    """One single-token corruption of each provable identity.

    Used as a soundness regression: every one of these must be refuted.
    """
    reg = {i: get(i) for i in PROVABLE}
    out = {}

    s = reg["I1"]
    out["I1"] = replace(s, rhs=Term(binomials=(replace(s.rhs.binomials[0], upper=lf("n+m+r+2")),)))

    s = reg["I2"]
    out["I2"] = replace(s, summand=replace(s.summand, numerator=((1, (lf("m+2"),)),)))

    s = reg["I3"]
    out["I3"] = replace(s, summand=replace(s.summand, denominator=(lf("n+r-k+2"),)))

    s = reg["I4"]
    out["I4"] = replace(s, rhs=replace(s.rhs, numerator=((1, (lf("m+r+3"),)),)))

    s = reg["I7"]
    num = s.summand.numerator
    out["I7"] = replace(s, summand=replace(s.summand, numerator=(num[0], (4, num[1][1]))))

    s = reg["I8"]
    num = s.summand.numerator
    out["I8"] = replace(s, summand=replace(
        s.summand, numerator=(num[0], (1, (lf("m+2k-3"), lf("m+2k+1"))))))
    return out
