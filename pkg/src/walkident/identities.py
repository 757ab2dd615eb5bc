"""The ten summation identities as data, and their exact evaluation.

Each identity is ``sum_{k=0}^{n} summand(k) = rhs + rhs_constant``.  Summand
and right-hand side are :class:`Term` objects: a rational constant times a
sum of products of linear forms, divided by a product of linear forms, times
generalized binomials and integer powers of rational bases.

At parameter points where some denominator form vanishes the free symbols
involved (``m`` and/or ``r``) are all shifted by the same ``eps`` and the
term is replaced by its limit ``eps -> 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from types import MappingProxyType
from typing import Mapping, Optional

from .exact import (
    POLE,
    EpsPoly,
    LinearForm,
    as_rational,
    binomial,
    eps_limit,
    gamma_binomial,
    is_pole,
    laurent_head,
    lf,
)
from .reports import SKIPPED, CheckReport, compare

__all__ = [
    "Binomial",
    "Power",
    "Term",
    "IdentityDef",
    "registry",
    "get",
    "eval_term",
    "eval_rhs",
    "eval_identity",
    "degenerate_symbols",
    "apply_reversal",
    "REVERSAL_TARGET",
    "check_reversal",
]

# symbols that may be shifted by eps; n and k are summation integers
PERTURBABLE = frozenset("mr")


@dataclass(frozen=True)
class Binomial:
    upper: LinearForm
    lower: LinearForm


@dataclass(frozen=True)
class Power:
    base: Fraction
    exponent: LinearForm


def _prod(*forms, coef=1):
    return (as_rational(coef), tuple(lf(f) if isinstance(f, str) else f for f in forms))


@dataclass(frozen=True)
class Term:
    constant: object = 1
    numerator: tuple = ((1, ()),)  # sum of (coef, (LinearForm, ...)) products
    denominator: tuple = ()
    binomials: tuple = ()
    powers: tuple = ()

    @property
    def symbols(self) -> frozenset:
        out = set()
        for _, forms in self.numerator:
            for f in forms:
                out |= f.symbols
        for f in self.denominator:
            out |= f.symbols
        for b in self.binomials:
            out |= b.upper.symbols | b.lower.symbols
        for p in self.powers:
            out |= p.exponent.symbols
        return frozenset(out)

    def substitute(self, mapping: Mapping[str, LinearForm]) -> "Term":
        sub = lambda f: f.substitute(mapping)  # noqa: E731
        return Term(
            self.constant,
            tuple((c, tuple(sub(f) for f in forms)) for c, forms in self.numerator),
            tuple(sub(f) for f in self.denominator),
            tuple(Binomial(sub(b.upper), sub(b.lower)) for b in self.binomials),
            tuple(Power(p.base, sub(p.exponent)) for p in self.powers),
        )

    def degenerate(self, assignment: Mapping) -> Optional[frozenset]:
        """Symbols to shift by ``eps`` at ``assignment``.

        Empty when the term is regular there, ``None`` when a denominator
        form vanishes without containing any shiftable symbol.  Besides
        vanishing denominators, a binomial whose lower index carries ``m``
        or ``r`` and whose upper argument is a negative integer is singular
        as a Gamma ratio and needs the shift.
        """
        syms = set()
        for f in self.denominator:
            if f.evaluate(assignment) == 0:
                s = f.symbols & PERTURBABLE
                if not s:
                    return None
                syms |= s
        for b in self.binomials:
            s = b.lower.symbols & PERTURBABLE
            if s:
                x = b.upper.evaluate(assignment)
                if x == int(x) and x <= -1:
                    syms |= s | (b.upper.symbols & PERTURBABLE)
        return frozenset(syms)

    def _integer_index(self, form: LinearForm, assignment, what: str) -> int:
        v = form.evaluate(assignment)
        if v != int(v):
            raise ValueError(f"{what} {form} is not an integer at {dict(assignment)}")
        return int(v)

    def _powers(self, assignment):
        acc = 1
        for p in self.powers:
            e = self._integer_index(p.exponent, assignment, "exponent")
            acc *= Fraction(p.base) ** e
        return acc

    def evaluate(self, assignment: Mapping, perturbed: Optional[frozenset] = None):
        """Exact value at ``assignment`` (rational or ``POLE``).

        With ``perturbed`` unset the symbols are chosen by :meth:`degenerate`
        and the direct product is used at regular points.  An explicit
        non-empty ``perturbed`` forces the eps path with that symbol set.
        """
        if perturbed is None:
            perturbed = self.degenerate(assignment)
            if perturbed is None:
                return POLE
        if not perturbed:
            if any(f.evaluate(assignment) == 0 for f in self.denominator):
                return POLE
            return self._direct(assignment)
        num, den, _ = self.eps_parts(assignment, frozenset(perturbed))
        return eps_limit(num, den)

    def laurent(self, assignment: Mapping, perturbed: frozenset) -> dict:
        """Laurent coefficients (exponents <= 0) of the eps-shifted term."""
        perturbed = frozenset(perturbed)
        if not any(b.lower.symbols & perturbed for b in self.binomials) and \
                all(f.evaluate(assignment) != 0 for f in self.denominator):
            # regular at eps = 0: the head is just the value there
            return {0: self._direct(assignment)}
        num, den, gamma = self.eps_parts(assignment, perturbed)
        head = laurent_head(num, den, 0)
        if gamma and head and min(head) <= -2:
            raise ValueError("pole of order >= 2 next to a Gamma ratio; "
                             "the dropped 1+O(eps^2) factor would matter")
        return head

    def _direct(self, assignment):
        num = 0
        for c, forms in self.numerator:
            t = c
            for f in forms:
                t = t * f.evaluate(assignment)
            num += t
        if num == 0:
            return 0
        num *= self.constant
        for b in self.binomials:
            num *= binomial(b.upper.evaluate(assignment),
                            self._integer_index(b.lower, assignment, "lower index"))
            if num == 0:
                return 0
        den = 1
        for f in self.denominator:
            den *= f.evaluate(assignment)
        return as_rational(Fraction(num) * self._powers(assignment) / den)

    def eps_parts(self, assignment: Mapping, perturbed: frozenset):
        """``(num, den, used_gamma)`` with perturbed symbols shifted by eps.

        Both polynomials are truncated to the precision that the limit and
        the Laurent head need.
        """
        gammas = sum(1 for b in self.binomials if b.lower.symbols & perturbed)
        # den valuation <= vanishing forms + numerator Gamma poles; the
        # Laurent head through eps^0 needs 2*val(den)+1 coefficients
        vanishing = sum(1 for f in self.denominator if f.evaluate(assignment) == 0)
        limit = 2 * (vanishing + gammas) + 1
        num = EpsPoly()
        for c, forms in self.numerator:
            t = EpsPoly.constant(c)
            for f in forms:
                t = t.mul(f.eval_eps(assignment, perturbed), limit)
            num = num + t
        num = num * as_rational(Fraction(self.constant) * self._powers(assignment))
        den = EpsPoly.constant(1)
        for b in self.binomials:
            upper = b.upper.eval_eps(assignment, perturbed)
            if b.lower.symbols & perturbed:
                p, q = gamma_binomial(upper, b.lower.eval_eps(assignment, perturbed), limit)
                num, den = num.mul(p, limit), den.mul(q, limit)
            else:
                j = self._integer_index(b.lower, assignment, "lower index")
                num = num.mul(binomial(upper, j, limit), limit)
            if num.is_zero():
                break
        for f in self.denominator:
            den = den.mul(f.eval_eps(assignment, perturbed), limit)
        return num, den, gammas > 0


@dataclass(frozen=True)
class IdentityDef:
    id: str
    free: tuple
    summand: Term
    rhs: Term
    rhs_constant: object = 0
    title: str = ""


def _b(upper: str, lower: str) -> Binomial:
    return Binomial(lf(upper), lf(lower))


def _d(*forms: str) -> tuple:
    return tuple(lf(f) for f in forms)


def _build():
    defs = [
        IdentityDef(
            "I1", ("m", "r"),
            Term(binomials=(_b("m+k", "k"), _b("n+r-k", "n-k"))),
            Term(binomials=(_b("n+m+r+1", "n"),)),
            title="sum C(m+k,k) C(n+r-k,n-k) = C(n+m+r+1,n)",
        ),
        IdentityDef(
            "I2", ("m", "r"),
            Term(numerator=(_prod("m+1"),), denominator=_d("m+k+1"),
                 binomials=(_b("m+2k", "k"), _b("2n+r-2k", "n-k"))),
            Term(binomials=(_b("2n+m+r+1", "n"),)),
            title="sum (m+1)/(m+k+1) C(m+2k,k) C(2n+r-2k,n-k) = C(2n+m+r+1,n)",
        ),
        IdentityDef(
            "I3", ("m", "r"),
            Term(numerator=(_prod("r+1"),), denominator=_d("n+r-k+1"),
                 binomials=(_b("m+2k", "k"), _b("2n+r-2k", "n-k"))),
            Term(binomials=(_b("2n+m+r+1", "n"),)),
            title="sum (r+1)/(n+r-k+1) C(m+2k,k) C(2n+r-2k,n-k) = C(2n+m+r+1,n)",
        ),
        IdentityDef(
            "I4", ("m", "r"),
            Term(numerator=(_prod("m+1", "r+1"),), denominator=_d("m+k+1", "n+r-k+1"),
                 binomials=(_b("m+2k", "k"), _b("2n+r-2k", "n-k"))),
            Term(numerator=(_prod("m+r+2"),), denominator=_d("n+m+r+2"),
                 binomials=(_b("2n+m+r+1", "n"),)),
            title="sum (m+1)(r+1)/((m+k+1)(n+r-k+1)) C(m+2k,k) C(2n+r-2k,n-k)"
                  " = (m+r+2)/(n+m+r+2) C(2n+m+r+1,n)",
        ),
        IdentityDef(
            "I5", ("m",),
            Term(numerator=(_prod("2k+1", "2k+1"),), denominator=_d("n+k+1", "m+k+1"),
                 binomials=(_b("2m", "m+k"), _b("2n", "n+k"))),
            Term(denominator=_d("n+m+1"), binomials=(_b("2n+2m", "n+m"),)),
            title="sum (2k+1)^2/((n+k+1)(m+k+1)) C(2m,m+k) C(2n,n+k)"
                  " = 1/(n+m+1) C(2n+2m,n+m)",
        ),
        IdentityDef(
            "I6", ("m",),
            Term(numerator=(_prod("k+1", "k+2"),), denominator=_d("m+k+2"),
                 binomials=(_b("2m+k+1", "m"), _b("2n-k", "n"))),
            Term(numerator=(_prod("n+1"),), denominator=_d("n+m+2"),
                 binomials=(_b("2n+2m+2", "n+m+1"),)),
            title="sum (k+1)(k+2)/(m+k+2) C(2m+k+1,m) C(2n-k,n)"
                  " = (n+1)/(n+m+2) C(2n+2m+2,n+m+1)",
        ),
        IdentityDef(
            "I7", ("m",),
            Term(numerator=(_prod("m+1", "m+5"), _prod("m+2k+1", "m+2k+1", coef=3)),
                 denominator=_d("m+k+1", "m+k+2", "m+k+3"),
                 binomials=(_b("m+2k", "k"),)),
            Term(constant=4, denominator=_d("n+m+3"), binomials=(_b("2n+m+2", "n"),)),
            title="sum ((m+1)(m+5)+3(m+2k+1)^2)/((m+k+1)(m+k+2)(m+k+3)) C(m+2k,k)"
                  " = 4/(n+m+3) C(2n+m+2,n)",
        ),
        IdentityDef(
            "I8", ("m",),
            Term(numerator=(_prod("m+1", "m+5"), _prod("m+2k-1", "m+2k+1")),
                 denominator=_d("m+k+1", "m+k+2", "m+k+3"),
                 binomials=(_b("m+2k", "k"),), powers=(Power(Fraction(2), lf("-k")),)),
            Term(denominator=_d("n+m+3"), binomials=(_b("2n+m+2", "n"),),
                 powers=(Power(Fraction(2), lf("1-n")),)),
            title="sum ((m+1)(m+5)+(m+2k-1)(m+2k+1))/((m+k+1)(m+k+2)(m+k+3)) 2^-k C(m+2k,k)"
                  " = 2^(1-n)/(n+m+3) C(2n+m+2,n)",
        ),
        IdentityDef(
            "I9", (),
            Term(constant=3, denominator=_d("k+2"), binomials=(_b("2k", "k+1"),)),
            Term(constant=2, denominator=_d("n+2"), binomials=(_b("2n+1", "n"),)),
            rhs_constant=-1,
            title="sum 3/(k+2) C(2k,k+1) = 2/(n+2) C(2n+1,n) - 1",
        ),
        IdentityDef(
            "I10", (),
            Term(constant=4, denominator=_d("k+3"), binomials=(_b("2k+1", "k+2"),),
                 powers=(Power(Fraction(2), lf("-k")),)),
            Term(denominator=_d("n+3"), binomials=(_b("2n+4", "n+2"),),
                 powers=(Power(Fraction(2), lf("-n")),)),
            rhs_constant=-2,
            title="sum 4/(k+3) 2^-k C(2k+1,k+2) = 2^-n/(n+3) C(2n+4,n+2) - 2",
        ),
    ]
    return MappingProxyType({d.id: d for d in defs})


_REGISTRY = _build()


def registry() -> Mapping[str, IdentityDef]:
    """Read-only mapping ``"I1"..."I10"`` -> :class:`IdentityDef`, in order."""
    return _REGISTRY


def get(identity) -> IdentityDef:
    if isinstance(identity, IdentityDef):
        return identity
    try:
        return _REGISTRY[str(identity).upper()]
    except KeyError:
        raise ValueError(f"unknown identity {identity!r} (expected I1..I10)") from None


def _assignment(identity: IdentityDef, n, m, r) -> dict:
    given = {"m": m, "r": r}
    a = {"n": as_rational(n)}
    if a["n"] != int(a["n"]) or a["n"] < 0:
        raise ValueError(f"n must be a nonnegative integer, got {n!r}")
    for s, v in given.items():
        if s in identity.free:
            if v is None:
                raise ValueError(f"{identity.id} needs a value for {s}")
            a[s] = as_rational(v)
        elif v is not None:
            raise ValueError(f"{identity.id} has no free symbol {s}")
    return a


def degenerate_symbols(identity, n, m=None, r=None) -> Optional[frozenset]:
    """Union of :meth:`Term.degenerate` over every summand and the right-hand
    side; ``None`` if some side has an unregularizable pole."""
    identity = get(identity)
    a = _assignment(identity, n, m, r)
    found = identity.rhs.degenerate(a)
    if found is None:
        return None
    for k in range(a["n"] + 1):
        a["k"] = k
        d = identity.summand.degenerate(a)
        if d is None:
            return None
        found |= d
    return found


def eval_term(identity, k: int, n: int, m=None, r=None, perturbed=None):
    """Summand ``k`` of ``identity`` at ``(n, m, r)``: rational or ``POLE``."""
    identity = get(identity)
    a = _assignment(identity, n, m, r)
    if not 0 <= k <= a["n"]:
        raise ValueError(f"k={k} outside 0..{a['n']}")
    a["k"] = k
    return identity.summand.evaluate(a, perturbed)


def eval_rhs(identity, n: int, m=None, r=None, perturbed=None):
    identity = get(identity)
    a = _assignment(identity, n, m, r)
    v = identity.rhs.evaluate(a, perturbed)
    return v if is_pole(v) else as_rational(v + identity.rhs_constant)


def _head_value(head: dict):
    if any(e < 0 and c != 0 for e, c in head.items()):
        return POLE
    return head.get(0, 0)


def eval_identity(identity, n: int, m=None, r=None, keep_terms: bool = False) -> CheckReport:
    """Evaluate both sides exactly and compare.

    Degenerate points use one shared perturbation: every free symbol that
    :func:`degenerate_symbols` reports is shifted by the same ``eps`` in
    every summand and on the right-hand side.  The summands are added as
    Laurent series before the limit, so poles of single terms that cancel
    in the sum do not make the whole side diverge.
    """
    identity = get(identity)
    a = _assignment(identity, n, m, r)
    n = a["n"]
    pert = degenerate_symbols(identity, n, m, r)
    terms = []
    if pert is None:
        lhs = rhs = POLE
    elif not pert:
        lhs = 0
        for k in range(n + 1):
            a["k"] = k
            t = identity.summand._direct(a)
            terms.append(t)
            lhs += t
        del a["k"]
        lhs = as_rational(lhs)
        rhs = as_rational(identity.rhs._direct(a) + identity.rhs_constant)
    else:
        total: dict = {}
        for k in range(n + 1):
            a["k"] = k
            head = identity.summand.laurent(a, pert)
            terms.append(_head_value(head))
            for e, c in head.items():
                total[e] = total.get(e, 0) + c
        del a["k"]
        lhs = _head_value(total)
        rhs = _head_value(identity.rhs.laurent(a, pert))
        if not is_pole(rhs):
            rhs = as_rational(rhs + identity.rhs_constant)
    status = compare(lhs, rhs)
    reason = ""
    if pert is None:
        reason = "pole not regularized by m or r"
    elif pert:
        reason = f"eps-limit in {','.join(sorted(pert))}"
    return CheckReport(
        identity.id, n,
        a.get("m"), a.get("r"),
        lhs, rhs, status, reason,
        tuple(terms) if keep_terms else None,
    )


REVERSAL_TARGET = MappingProxyType({"I1": "I1", "I2": "I3", "I3": "I2", "I4": "I4"})


def apply_reversal(identity) -> IdentityDef:
    """Replace ``k`` by ``n-k`` in the summand and swap ``m`` with ``r``."""
    identity = get(identity)
    if identity.id not in REVERSAL_TARGET:
        raise ValueError(f"reversal is defined for I1..I4 only, not {identity.id}")
    swap = {"m": lf("r"), "r": lf("m")}
    summand = identity.summand.substitute({"k": lf("n-k")}).substitute(swap)
    return replace(
        identity,
        id=f"{identity.id}~",
        summand=summand,
        rhs=identity.rhs.substitute(swap),
        title=f"reversed {identity.id}",
    )


def check_reversal(identity, n: int, m, r) -> CheckReport:
    """Compare the reversed summand of ``identity`` with the summand of its
    target term by term (and the right-hand sides) at one point."""
    src = get(identity)
    rev = apply_reversal(src)
    target = get(REVERSAL_TARGET[src.id])
    lhs_terms, rhs_terms = [], []
    for k in range(int(n) + 1):
        lhs_terms.append(eval_term(rev, k, n, m, r))
        rhs_terms.append(eval_term(target, k, n, m, r))
    lhs_terms.append(eval_rhs(rev, n, m, r))
    rhs_terms.append(eval_rhs(target, n, m, r))
    same = all(compare(a, b) == "equal" for a, b in zip(lhs_terms, rhs_terms))
    status = "equal" if same else "unequal"
    if any(is_pole(x) for x in lhs_terms + rhs_terms):
        status = SKIPPED if same else status
    return CheckReport(
        f"{src.id}->{target.id}", int(n), as_rational(m), as_rational(r),
        tuple(lhs_terms), tuple(rhs_terms), status,
    )
