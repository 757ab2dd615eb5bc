"""Exact scalars, generalized binomials and epsilon-perturbation polynomials.

Rationals are plain :class:`fractions.Fraction` values (integers are accepted
wherever a rational is).  :class:`EpsPoly` is a dense polynomial in a single
formal variable ``eps``; expressions that read ``0/0`` at a parameter point
are evaluated by shifting the degenerate symbols by ``eps`` and taking the
limit ``eps -> 0`` with :func:`eps_limit`.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Optional, Union

__all__ = [
    "POLE",
    "Pole",
    "EpsPoly",
    "EPS",
    "LinearForm",
    "SYMBOLS",
    "as_rational",
    "binomial",
    "eps_limit",
    "eval_linear_form",
    "format_rational",
    "gamma_binomial",
    "is_pole",
    "laurent_head",
    "lf",
    "parse_rational",
]

SYMBOLS = frozenset("nmrkN")


class Pole:
    """Marker for a diverging limit (the denominator vanishes faster)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "POLE"

    def __str__(self):
        return "pole"

    def __reduce__(self):
        return (Pole, ())


POLE = Pole()


def is_pole(x) -> bool:
    return x is POLE


def as_rational(x) -> Union[int, Fraction]:
    """Normalize ``x`` to an ``int`` when integral, otherwise a ``Fraction``.

    Keeping integral values as ``int`` lets the common integer sweeps skip
    Fraction arithmetic entirely.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        x = parse_rational(x)
    if isinstance(x, Rational):
        x = Fraction(x)
        return x.numerator if x.denominator == 1 else x
    raise TypeError(f"not an exact rational: {x!r}")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` (no floats)."""
    text = text.strip()
    if not re.fullmatch(r"[+-]?\d+(/[+-]?\d+)?", text):
        raise ValueError(f"not a rational literal: {text!r}")
    return Fraction(text)


def format_rational(x) -> str:
    """Lossless text form: ``"p"`` for integers, ``"p/q"`` otherwise."""
    if x is POLE:
        return "pole"
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class EpsPoly:
    """Polynomial in ``eps`` with exact rational coefficients.

    ``coeffs[i]`` is the coefficient of ``eps**i``; trailing zeros are
    trimmed so the zero polynomial has no coefficients.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def _raw(cls, coeffs: list) -> "EpsPoly":
        # coefficients already int/Fraction; only trims
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        obj = cls.__new__(cls)
        obj.coeffs = tuple(coeffs)
        return obj

    @classmethod
    def constant(cls, c) -> "EpsPoly":
        return cls((c,))

    @property
    def degree(self) -> int:
        """Degree; ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def valuation(self):
        """Index of the first nonzero coefficient (``None`` for zero)."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return None

    def coeff(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __call__(self, eps):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * eps + c
        return as_rational(acc)

    @staticmethod
    def _coerce(other):
        if isinstance(other, EpsPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return EpsPoly.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return EpsPoly._raw([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self):
        return EpsPoly._raw([-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return EpsPoly._raw([as_rational(c * other) for c in self.coeffs])
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.mul(other)

    def mul(self, other: "EpsPoly", limit: Optional[int] = None) -> "EpsPoly":
        """Product, keeping only coefficients below ``eps**limit`` if given."""
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return EpsPoly()
        size = len(a) + len(b) - 1
        if limit is not None:
            size = min(size, limit)
        out = [0] * size
        for i, x in enumerate(a):
            if x == 0 or i >= size:
                continue
            for j in range(min(len(b), size - i)):
                out[i + j] += x * b[j]
        return EpsPoly._raw(out)

    def truncate(self, limit: int) -> "EpsPoly":
        return EpsPoly(self.coeffs[:limit])

    __rmul__ = __mul__

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "EpsPoly(0)"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            c = format_rational(c)
            parts.append(c if i == 0 else f"{c}*eps" + (f"^{i}" if i > 1 else ""))
        return "EpsPoly(" + " + ".join(parts) + ")"


EPS = EpsPoly((0, 1))


def binomial(x, j: int, limit: Optional[int] = None):
    """Generalized binomial coefficient ``x (x-1) ... (x-j+1) / j!``.

    ``x`` may be an int, a Fraction or an :class:`EpsPoly`; ``j`` must be an
    integer.  Negative ``j`` gives 0.  ``limit`` truncates an EpsPoly result.
    """
    if j != int(j):
        raise ValueError(f"lower index must be an integer, got {j!r}")
    j = int(j)
    if j < 0:
        return EpsPoly() if isinstance(x, EpsPoly) else 0
    if isinstance(x, EpsPoly):
        if x.degree > 1:
            acc = EpsPoly.constant(1)
            for i in range(j):
                acc = acc.mul(x - i, limit)
            return acc * Fraction(1, math.factorial(j))
        return _falling_linear(x.coeff(0), x.coeff(1), j, limit) * Fraction(1, math.factorial(j))
    x = as_rational(x)
    if isinstance(x, int):
        if x >= 0:
            return math.comb(x, j)
        # upper negation: C(-a, j) = (-1)^j C(a+j-1, j)
        c = math.comb(-x + j - 1, j)
        return -c if j & 1 else c
    num = Fraction(1)
    for i in range(j):
        num *= x - i
    return as_rational(num / math.factorial(j))


def _falling_linear(c0, a, j: int, limit: Optional[int]) -> EpsPoly:
    """``prod_{i<j} (c0 - i + a*eps)`` truncated below ``eps**limit``."""
    size = j + 1 if limit is None else min(j + 1, limit)
    out = [1] + [0] * (size - 1)
    for i in range(j):
        c = c0 - i
        for d in range(size - 1, 0, -1):
            out[d] = out[d] * c + out[d - 1] * a
        out[0] *= c
    return EpsPoly._raw(out)


def _gamma_shift(c: int, alpha, limit):
    """``Gamma(c + alpha*eps) / Gamma(1 + alpha*eps)`` as ``(num, den)``."""
    num, den = EpsPoly.constant(1), EpsPoly.constant(1)
    if c >= 1:
        for i in range(1, c):
            num = num.mul(EpsPoly((i, alpha)), limit)
    else:
        for i in range(c, 1):
            den = den.mul(EpsPoly((i, alpha)), limit)
    return num, den


def gamma_binomial(upper: EpsPoly, lower: EpsPoly, limit: Optional[int] = None):
    """``Gamma(u+1) / (Gamma(l+1) Gamma(u-l+1))`` near integer arguments.

    ``upper`` and ``lower`` are degree-1 EpsPolys with integer constant
    terms.  Returns ``(num, den)`` with ``num/den`` equal to the binomial up
    to a factor ``1 + O(eps**2)``; the linear terms of the three
    ``log Gamma(1 + .)`` expansions cancel.  A vanishing reciprocal Gamma
    (unshifted argument at a nonpositive integer) gives a zero numerator.
    """
    x0, a = upper.coeff(0), upper.coeff(1)
    y0, b = lower.coeff(0), lower.coeff(1)
    if upper.degree > 1 or lower.degree > 1 or x0 != int(x0) or y0 != int(y0):
        raise ValueError("gamma_binomial needs integer points shifted linearly in eps")
    x0, y0 = int(x0), int(y0)
    num, den = EpsPoly.constant(1), EpsPoly.constant(1)
    for c, alpha, upstairs in ((x0 + 1, a, True), (y0 + 1, b, False),
                               (x0 - y0 + 1, a - b, False)):
        if alpha == 0 and c <= 0:
            if upstairs:
                raise ValueError(f"Gamma pole at {c} is not regularized by eps")
            return EpsPoly(), EpsPoly.constant(1)
        p, q = _gamma_shift(c, alpha, limit)
        if upstairs:
            num, den = num.mul(p, limit), den.mul(q, limit)
        else:
            num, den = num.mul(q, limit), den.mul(p, limit)
    return num, den


def eps_limit(num: EpsPoly, den: EpsPoly):
    """``lim_{eps->0} num(eps)/den(eps)`` as a rational, or ``POLE``."""
    vd = den.valuation()
    if vd is None:
        raise ValueError("denominator is identically zero")
    vn = num.valuation()
    if vn is None or vn > vd:
        return 0
    if vn < vd:
        return POLE
    return as_rational(Fraction(num.coeffs[vn]) / den.coeffs[vd])


def laurent_head(num: EpsPoly, den: EpsPoly, upto: int = 0):
    """Laurent coefficients of ``num/den`` for exponents ``<= upto``.

    Returns a dict ``{exponent: coefficient}`` covering every exponent from
    the valuation of the quotient through ``upto`` (empty when ``num`` is
    zero or the quotient vanishes to higher order).  ``num`` and ``den``
    must be exact through degree ``upto + 2*val(den) - val(num)``.
    """
    vd = den.valuation()
    if vd is None:
        raise ValueError("denominator is identically zero")
    vn = num.valuation()
    if vn is None:
        return {}
    lead = vn - vd
    count = upto - lead + 1
    if count <= 0:
        return {}
    a = [num.coeff(vn + i) for i in range(count)]
    b = [den.coeff(vd + i) for i in range(count)]
    inv0 = Fraction(1) / b[0]
    q = []
    for i in range(count):
        acc = Fraction(a[i])
        for j in range(1, i + 1):
            acc -= b[j] * q[i - j]
        q.append(acc * inv0)
    return {lead + i: as_rational(c) for i, c in enumerate(q)}


_TERM_RE = re.compile(r"([+-])?\s*(\d+(?:/\d+)?)?\s*\*?\s*([A-Za-z])?")


@dataclass(frozen=True)
class LinearForm:
    """``constant + sum(coef * symbol)`` over the symbols n, m, r, k, N."""

    constant: Union[int, Fraction] = 0
    coefficients: tuple = ()  # sorted ((symbol, coef), ...), no zero coefs

    def __post_init__(self):
        object.__setattr__(self, "constant", as_rational(self.constant))
        merged: dict = {}
        for s, c in self.coefficients:
            if s not in SYMBOLS:
                raise ValueError(f"unknown symbol {s!r}")
            merged[s] = merged.get(s, 0) + as_rational(c)
        coefs = tuple(sorted((s, as_rational(c)) for s, c in merged.items() if c != 0))
        object.__setattr__(self, "coefficients", coefs)

    @classmethod
    def of(cls, constant=0, **coefs) -> "LinearForm":
        return cls(constant, tuple(coefs.items()))

    @property
    def symbols(self) -> frozenset:
        return frozenset(s for s, _ in self.coefficients)

    def coefficient(self, symbol: str):
        for s, c in self.coefficients:
            if s == symbol:
                return c
        return 0

    def evaluate(self, assignment: Mapping):
        acc = self.constant
        for s, c in self.coefficients:
            try:
                acc += c * assignment[s]
            except KeyError:
                raise KeyError(f"symbol {s!r} missing from assignment") from None
        return acc

    def eval_eps(self, assignment: Mapping, perturbed=frozenset()) -> EpsPoly:
        shift = sum(c for s, c in self.coefficients if s in perturbed)
        return EpsPoly((self.evaluate(assignment), shift))

    def substitute(self, mapping: Mapping[str, "LinearForm"]) -> "LinearForm":
        """Replace symbols by linear forms (symbols absent from ``mapping`` stay)."""
        const = self.constant
        coefs: list = []
        for s, c in self.coefficients:
            if s in mapping:
                g = mapping[s]
                const += c * g.constant
                coefs.extend((t, c * d) for t, d in g.coefficients)
            else:
                coefs.append((s, c))
        return LinearForm(const, tuple(coefs))

    def __str__(self):
        out = ""
        for s, c in self.coefficients:
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = s if mag == 1 else f"{format_rational(mag)}{s}"
            out += (("-" if sign == "-" else "") if not out else sign) + body
        if self.constant != 0 or not out:
            c = self.constant
            if out:
                out += ("-" if c < 0 else "+") + format_rational(abs(c))
            else:
                out = format_rational(c)
        return out


def lf(text: str) -> LinearForm:
    """Parse a linear form such as ``"2n+m-2k+1"`` or ``"1/2m-3"``."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty linear form")
    pos = 0
    const = 0
    coefs = []
    while pos < len(s):
        mt = _TERM_RE.match(s, pos)
        if not mt or mt.end() == pos or (mt.group(2) is None and mt.group(3) is None):
            raise ValueError(f"cannot parse linear form {text!r}")
        if pos > 0 and mt.group(1) is None:
            raise ValueError(f"cannot parse linear form {text!r}")
        sign = -1 if mt.group(1) == "-" else 1
        mag = Fraction(mt.group(2)) if mt.group(2) else Fraction(1)
        if mt.group(3):
            coefs.append((mt.group(3), sign * mag))
        else:
            const += sign * mag
        pos = mt.end()
    return LinearForm(const, tuple(coefs))


def eval_linear_form(f: LinearForm, assignment: Mapping, perturbed=frozenset()) -> EpsPoly:
    """Evaluate ``f`` with every symbol in ``perturbed`` shifted by ``eps``."""
    return f.eval_eps({s: as_rational(v) for s, v in assignment.items()}, frozenset(perturbed))
