"""Path counting for the simple random walk on the integers.

A walk of ``N`` steps starts at 0; a left step ``L`` moves the position up
by one and a right step ``R`` moves it down by one, so the end position
``m`` is (#L - #R).  Counts:

* ``P(N, m)``    -- walks ending at ``m``                     (:func:`count_paths`)
* ``S(N, m, r)`` -- walks ending at ``m`` that visit ``r``      (:func:`count_touching`)
* ``T(N, m, r)`` -- walks ending at ``m`` that never visit ``r`` (:func:`count_avoiding`)

All counts are exact Python integers.  An independent oracle
(:func:`oracle_count`) counts by brute force, either by enumerating all
``2**N`` step sequences with numpy or by dynamic programming over
``(step, position)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from .exact import as_rational
from .reports import SKIPPED, CheckReport, compare

__all__ = [
    "PathConstraint",
    "end_at",
    "touches",
    "avoids",
    "first_reaches",
    "realizable",
    "count_paths",
    "count_touching",
    "count_avoiding",
    "closed_form_T",
    "first_passage_count",
    "oracle_count",
    "enumerate_paths",
    "positions",
    "check_recursion",
    "DECOMPOSITIONS",
    "check_decomposition",
    "decomposition_grid",
    "SimulationResult",
    "simulate",
    "EXHAUSTIVE_MAX_STEPS",
]

EXHAUSTIVE_MAX_STEPS = 24
_CHUNK_BITS = 16


def realizable(N: int, m: int) -> bool:
    return N >= 0 and abs(m) <= N and (N + m) % 2 == 0


def count_paths(N: int, m: int) -> int:
    """``P(N, m) = C(N, (N+m)/2)``; 0 when ``(N, m)`` is not realizable."""
    if not realizable(N, m):
        return 0
    return math.comb(N, (N + m) // 2)


def count_touching(N: int, m: int, r: int) -> int:
    """``S(N, m, r)``: walks to ``m >= 0`` visiting ``r`` at least once.

    For ``0 <= r <= m`` every walk qualifies; otherwise reflecting the tail
    after the last visit gives ``P(N, 2r - m)``.
    """
    if m < 0:
        raise ValueError(f"S(N, m, r) needs m >= 0, got m={m}")
    if not realizable(N, m):
        return 0
    if 0 <= r <= m:
        return count_paths(N, m)
    return count_paths(N, 2 * r - m)


def count_avoiding(N: int, m: int, r: int) -> int:
    """``T(N, m, r) = P(N, m) - S(N, m, r)`` for ``m >= 0`` and ``r < 0``."""
    if m < 0 or r >= 0:
        raise ValueError(f"T(N, m, r) needs m >= 0 and r < 0, got m={m}, r={r}")
    return count_paths(N, m) - count_touching(N, m, r)


def closed_form_T(N: int, m: int, depth: int):
    """Closed forms of ``T(N, m, -depth)`` for ``depth`` in 1..4, with
    ``mu = (N+m)/2`` the number of left steps."""
    if m < 0 or not realizable(N, m):
        raise ValueError(f"closed forms need a realizable walk with m >= 0, got N={N}, m={m}")
    mu = (N + m) // 2
    c = math.comb(N, mu)
    if depth == 1:
        v = Fraction(m + 1, mu + 1)
    elif depth == 2:
        v = Fraction((m + 2) * (N + 1), (mu + 1) * (mu + 2))
    elif depth == 3:
        v = Fraction((m + 3) * ((m + 1) * (m + 5) + 3 * (N + 1) ** 2),
                     4 * (mu + 1) * (mu + 2) * (mu + 3))
    elif depth == 4:
        v = Fraction((m + 4) * (N + 1) * ((m + 2) * (m + 6) + N * (N + 2)),
                     2 * (mu + 1) * (mu + 2) * (mu + 3) * (mu + 4))
    else:
        raise ValueError(f"depth must be 1, 2, 3 or 4, got {depth}")
    return as_rational(v * c)


def first_passage_count(N: int, m: int, r: int, k: int) -> int:
    """Walks to ``m`` whose first visit to ``r >= 1`` is at step ``r + 2k``.

    The prefix is a walk to ``r-1`` that stays below ``r`` (counted as
    ``T(r+2k-1, r-1, -1)`` after reversing and mirroring it); the suffix is
    unrestricted.
    """
    if r < 1 or k < 0:
        raise ValueError(f"first passage needs r >= 1 and k >= 0, got r={r}, k={k}")
    return count_avoiding(r + 2 * k - 1, r - 1, -1) * count_paths(N - r - 2 * k, m - r)


# -- oracle ---------------------------------------------------------------


@dataclass(frozen=True)
class PathConstraint:
    """One condition on a walk; lists of constraints are conjunctive.

    ``kind`` is ``"end"``, ``"touches"``, ``"avoids"`` or ``"first"``
    (first visit to ``position`` happens exactly at ``step``).
    """

    kind: str
    position: int
    step: int = -1

    def __post_init__(self):
        if self.kind not in ("end", "touches", "avoids", "first"):
            raise ValueError(f"unknown constraint kind {self.kind!r}")
        if self.kind == "first" and self.step < 0:
            raise ValueError("first-reaches needs a step >= 0")


def end_at(m: int) -> PathConstraint:
    return PathConstraint("end", m)


def touches(r: int) -> PathConstraint:
    return PathConstraint("touches", r)


def avoids(r: int) -> PathConstraint:
    return PathConstraint("avoids", r)


def first_reaches(r: int, step: int) -> PathConstraint:
    return PathConstraint("first", r, step)


def positions(path: str) -> list:
    """Positions after 0, 1, ..., N steps of an ``L``/``R`` string."""
    out = [0]
    for ch in path:
        if ch == "L":
            out.append(out[-1] + 1)
        elif ch == "R":
            out.append(out[-1] - 1)
        else:
            raise ValueError(f"path characters must be L or R, got {ch!r}")
    return out


@lru_cache(maxsize=32)
def _positions_block(N: int, start: int, size: int) -> np.ndarray:
    # rows: step sequences start..start+size-1, most significant bit = step 1,
    # bit 0 = L (+1); column j = position after j steps
    idx = np.arange(start, start + size, dtype=np.int64)
    shifts = np.arange(N - 1, -1, -1, dtype=np.int64)
    bits = (idx[:, None] >> shifts) & 1
    pos = np.zeros((size, N + 1), dtype=np.int8)
    np.cumsum(1 - 2 * bits, axis=1, out=pos[:, 1:])
    pos.setflags(write=False)
    return pos


def _blocks(N: int) -> Iterator[tuple]:
    total = 1 << N
    size = min(total, 1 << _CHUNK_BITS)
    for start in range(0, total, size):
        yield start, _positions_block(N, start, size)


def _mask(pos: np.ndarray, constraints: Sequence[PathConstraint]) -> np.ndarray:
    N = pos.shape[1] - 1
    keep = np.ones(pos.shape[0], dtype=bool)
    for c in constraints:
        if c.kind == "end":
            keep &= pos[:, N] == c.position
        elif c.kind == "touches":
            keep &= (pos == c.position).any(axis=1)
        elif c.kind == "avoids":
            keep &= ~(pos == c.position).any(axis=1)
        else:
            if c.step > N:
                keep[:] = False
            else:
                keep &= pos[:, c.step] == c.position
                keep &= ~(pos[:, : c.step] == c.position).any(axis=1)
    return keep


def _exhaustive(N: int, constraints) -> int:
    if N > EXHAUSTIVE_MAX_STEPS:
        raise ValueError(f"exhaustive enumeration is limited to N <= {EXHAUSTIVE_MAX_STEPS}")
    return sum(int(_mask(pos, constraints).sum()) for _, pos in _blocks(N))


def _dp(N: int, constraints) -> int:
    ends = {c.position for c in constraints if c.kind == "end"}
    if len(ends) > 1:
        return 0
    banned = {c.position for c in constraints if c.kind == "avoids"}
    targets = sorted({c.position for c in constraints if c.kind == "touches"})
    firsts = [(c.position, c.step) for c in constraints if c.kind == "first"]
    if any(s > N for _, s in firsts):
        return 0
    full = (1 << len(targets)) - 1

    def allowed(t: int, x: int) -> bool:
        if x in banned:
            return False
        for p, s in firsts:
            if (t < s and x == p) or (t == s and x != p):
                return False
        return True

    def mark(x: int, seen: int) -> int:
        for i, p in enumerate(targets):
            if x == p:
                seen |= 1 << i
        return seen

    states = {(0, mark(0, 0)): 1} if allowed(0, 0) else {}
    for t in range(1, N + 1):
        nxt: dict = {}
        for (x, seen), cnt in states.items():
            for y in (x + 1, x - 1):
                if allowed(t, y):
                    key = (y, mark(y, seen))
                    nxt[key] = nxt.get(key, 0) + cnt
        states = nxt
    return sum(cnt for (x, seen), cnt in states.items()
               if seen == full and (not ends or x in ends))


def oracle_count(N: int, constraints: Iterable[PathConstraint] = (), backend: str = "auto") -> int:
    """Count walks of ``N`` steps satisfying every constraint by brute force.

    ``backend`` is ``"exhaustive"`` (numpy enumeration of all step
    sequences, ``N <= 24``), ``"dp"`` (dynamic programming, any ``N``) or
    ``"auto"`` (exhaustive up to 16 steps, DP beyond).
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    constraints = tuple(constraints)
    if backend == "auto":
        backend = "exhaustive" if N <= 16 else "dp"
    if backend == "exhaustive":
        return _exhaustive(N, constraints)
    if backend == "dp":
        return _dp(N, constraints)
    raise ValueError(f"unknown backend {backend!r}")


def enumerate_paths(N: int, constraints: Iterable[PathConstraint] = (), limit: int = 100) -> list:
    """Satisfying walks as ``L``/``R`` strings in lexicographic order (``L < R``),
    at most ``limit`` of them."""
    if N < 0 or N > EXHAUSTIVE_MAX_STEPS:
        raise ValueError(f"enumeration needs 0 <= N <= {EXHAUSTIVE_MAX_STEPS}")
    constraints = tuple(constraints)
    out: list = []
    for start, pos in _blocks(N):
        if len(out) >= limit:
            break
        for i in np.flatnonzero(_mask(pos, constraints))[: limit - len(out)]:
            code = format(start + int(i), f"0{N}b") if N else ""
            out.append(code.replace("0", "L").replace("1", "R"))
    return out


# -- recursion and decompositions ------------------------------------------


def check_recursion(N: int, m: int, r: int) -> CheckReport:
    """Compare ``S(N+1, m+1, r)`` with ``S(N, m, r) + S(N, m+2, r)``."""
    lhs = count_touching(N + 1, m + 1, r)
    a, b = count_touching(N, m, r), count_touching(N, m + 2, r)
    return CheckReport("recursion", N, m, r, lhs, a + b, compare(lhs, a + b), terms=(a, b))


@lru_cache(maxsize=None)
def _T(N: int, m: int, r: int) -> int:
    # avoid-count for any end position; negative ends go through the DP oracle
    if N < 0:
        return 0
    if m >= 0:
        return count_avoiding(N, m, r)
    return _dp(N, (end_at(m), avoids(r)))


def _S(N: int, m: int, r: int) -> int:
    return count_touching(N, m, r)


P = count_paths


@dataclass(frozen=True)
class Decomposition:
    """A count written as a sum over ``k`` of products of counts.

    ``valid`` returns an empty string on the valid grid and a reason
    otherwise; ``terms`` lists the summands.
    """

    id: str
    params: tuple
    description: str
    valid: Callable
    lhs: Callable
    terms: Callable
    grid: Callable


def _need_realizable(N, m):
    return "" if realizable(N, m) else "(N, m) not realizable"


def _cross_left_valid(N, m, r):
    return _need_realizable(N, m) or ("" if 0 <= r < (N + m) // 2 else
                                      "needs 0 <= r < (N+m)/2 (an (r+1)-th left step)")


def _cross_right_valid(N, m, r):
    return _need_realizable(N, m) or ("" if 0 <= r < (N - m) // 2 else
                                      "needs 0 <= r < (N-m)/2 (an (r+1)-th right step)")


def _grid_nmr(r_range):
    def grid(max_steps):
        for N in range(max_steps + 1):
            for m in range(-N, N + 1, 2):
                for r in r_range(N, m):
                    yield {"N": N, "m": m, "r": r}
    return grid


def _grid_nm(min_m):
    def grid(max_steps):
        for N in range(max_steps + 1):
            for m in range(-N, N + 1, 2):
                if m >= min_m:
                    yield {"N": N, "m": m}
    return grid


DECOMPOSITIONS = {
    d.id: d for d in [
        Decomposition(
            "cross-left", ("N", "m", "r"),
            "P(N,m) = sum_k P(r+k, r-k) P(N-r-k-1, m-r+k-1): the (r+1)-th left step",
            _cross_left_valid,
            lambda N, m, r: P(N, m),
            lambda N, m, r: [P(r + k, r - k) * P(N - r - k - 1, m - r + k - 1)
                             for k in range((N - m) // 2 + 1)],
            _grid_nmr(lambda N, m: range(0, (N + m) // 2)),
        ),
        Decomposition(
            "cross-right", ("N", "m", "r"),
            "P(N,m) = sum_k P(r+k, -r+k) P(N-r-k-1, m+r-k+1): the (r+1)-th right step",
            _cross_right_valid,
            lambda N, m, r: P(N, m),
            lambda N, m, r: [P(r + k, -r + k) * P(N - r - k - 1, m + r - k + 1)
                             for k in range((N + m) // 2 + 1)],
            _grid_nmr(lambda N, m: range(0, (N - m) // 2)),
        ),
        Decomposition(
            "first-visit", ("N", "m", "r"),
            "P(N,m) = sum_k T(r+2k-1, r-1, -1) P(N-r-2k, m-r): first visit to r at step r+2k",
            lambda N, m, r: _need_realizable(N, m) or ("" if 1 <= r <= m else "needs 1 <= r <= m"),
            lambda N, m, r: P(N, m),
            lambda N, m, r: [_T(r + 2 * k - 1, r - 1, -1) * P(N - r - 2 * k, m - r)
                             for k in range((N - m) // 2 + 1)],
            _grid_nmr(lambda N, m: range(1, m + 1)),
        ),
        Decomposition(
            "last-visit", ("N", "m", "r"),
            "P(N,m) = sum_k P(r+2k, r) T(N-r-2k-1, m-r-1, -1): last visit to r at step r+2k",
            lambda N, m, r: _need_realizable(N, m) or ("" if 0 <= r < m else "needs 0 <= r < m"),
            lambda N, m, r: P(N, m),
            lambda N, m, r: [P(r + 2 * k, r) * _T(N - r - 2 * k - 1, m - r - 1, -1)
                             for k in range((N - m) // 2 + 1)],
            _grid_nmr(lambda N, m: range(0, m)),
        ),
        Decomposition(
            "band", ("N", "m", "r"),
            "S(N,m,r) - S(N,m,r-1) = sum_k T(2k-r-1, -r-1, -1) T(N-2k+r, m-r, -1): "
            "visits r < 0 but not r-1",
            lambda N, m, r: _need_realizable(N, m) or (
                "" if m >= 0 and r <= -1 else "needs m >= 0 and r <= -1"),
            lambda N, m, r: _S(N, m, r) - _S(N, m, r - 1),
            lambda N, m, r: [_T(2 * k - r - 1, -r - 1, -1) * _T(N - 2 * k + r, m - r, -1)
                             for k in range((N - m) // 2 + r + 1)],
            _grid_nmr(lambda N, m: range(-N - 1, 0) if m >= 0 else ()),
        ),
        Decomposition(
            "dyck-split", ("N", "r"),
            "T(N,0,-1) = sum_k T(r, 2k, -1) T(N-r, 2k, -1): position 2k at even step r",
            lambda N, r: "" if N >= 0 and N % 2 == 0 and r % 2 == 0 and 0 <= r <= N
            else "needs even N >= 0 and even r in [0, N]",
            lambda N, r: _T(N, 0, -1),
            lambda N, r: [_T(r, 2 * k, -1) * _T(N - r, 2 * k, -1) for k in range(r // 2 + 1)],
            lambda max_steps: ({"N": N, "r": r} for N in range(0, max_steps + 1, 2)
                               for r in range(0, N + 1, 2)),
        ),
        Decomposition(
            "dyck-cross", ("N", "r"),
            "T(N,0,-1) = sum_k T(r+k, r-k, -1) T(N-r-k-1, r-k+1, -1): the (r+1)-th left step",
            lambda N, r: "" if N >= 0 and N % 2 == 0 and 0 <= r < N // 2
            else "needs even N >= 0 and 0 <= r < N/2",
            lambda N, r: _T(N, 0, -1),
            lambda N, r: [_T(r + k, r - k, -1) * _T(N - r - k - 1, r - k + 1, -1)
                          for k in range(r + 1)],
            lambda max_steps: ({"N": N, "r": r} for N in range(0, max_steps + 1, 2)
                               for r in range(0, N // 2)),
        ),
        Decomposition(
            "reach-2", ("N", "m"),
            "T(N,m,-1) = sum_k T(N-2k-2, m-2, -3): first visit to 2 at step 2k+2",
            lambda N, m: _need_realizable(N, m) or ("" if m >= 2 else
                                                    "needs m >= 2 (walks in {0,1} never reach 2)"),
            lambda N, m: _T(N, m, -1),
            lambda N, m: [_T(N - 2 * k - 2, m - 2, -3) for k in range((N - m) // 2 + 1)],
            _grid_nm(2),
        ),
        Decomposition(
            "reach-3", ("N", "m"),
            "T(N,m,-1) = sum_k 2^k T(N-2k-3, m-3, -4): first visit to 3 at step 2k+3",
            lambda N, m: _need_realizable(N, m) or ("" if m >= 3 else
                                                    "needs m >= 3 (walks in {0,1,2} never reach 3)"),
            lambda N, m: _T(N, m, -1),
            lambda N, m: [_T(N - 2 * k - 3, m - 3, -4) * 2 ** k for k in range((N - m) // 2 + 1)],
            _grid_nm(3),
        ),
    ]
}


def _decomposition(which: str) -> Decomposition:
    try:
        return DECOMPOSITIONS[which]
    except KeyError:
        raise ValueError(f"unknown decomposition {which!r}; "
                         f"expected one of {', '.join(DECOMPOSITIONS)}") from None


def check_decomposition(which: str, params: dict) -> CheckReport:
    """Evaluate both sides of one decomposition at ``params``.

    Points outside the decomposition's valid grid are reported as skipped.
    """
    d = _decomposition(which)
    if set(params) != set(d.params):
        raise ValueError(f"{which} takes parameters {', '.join(d.params)}, got {sorted(params)}")
    args = [int(params[p]) for p in d.params]
    N, m, r = params["N"], params.get("m"), params.get("r")
    reason = d.valid(*args)
    if reason:
        return CheckReport(which, N, m, r, status=SKIPPED, reason=reason)
    lhs = d.lhs(*args)
    terms = tuple(d.terms(*args))
    rhs = sum(terms)
    return CheckReport(which, N, m, r, lhs, rhs, compare(lhs, rhs), terms=terms)


def decomposition_grid(which: str, max_steps: int = 14) -> list:
    """Every valid parameter point with ``N <= max_steps``."""
    return list(_decomposition(which).grid(max_steps))


# -- Monte Carlo -------------------------------------------------------------


@dataclass(frozen=True)
class SimulationResult:
    """Histogram of ``samples`` random walks.

    ``ends[x]`` counts walks ending at ``x``; ``touches[x]`` counts walks
    that visit ``x`` at least once (start included).
    """

    steps: int
    samples: int
    seed: int
    ends: dict
    touches: dict

    def frequency(self, position: int) -> float:
        return self.ends.get(position, 0) / self.samples


def simulate(N: int, samples: int, seed: int, chunk: int = 1 << 18) -> SimulationResult:
    """Sample ``samples`` walks with fair i.i.d. steps.

    Uses numpy's PCG64 generator (``numpy.random.default_rng(seed)``) and a
    fixed chunk size, so the same ``(N, samples, seed, chunk)`` always
    gives the same histogram.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if N < 0:
        raise ValueError("N must be nonnegative")
    rng = np.random.default_rng(seed)
    ends = np.zeros(2 * N + 1, dtype=np.int64)
    hits = np.zeros(2 * N + 1, dtype=np.int64)
    done = 0
    while done < samples:
        size = min(chunk, samples - done)
        steps = 1 - 2 * rng.integers(0, 2, size=(size, N), dtype=np.int8)
        pos = np.zeros((size, N + 1), dtype=np.int16)
        np.cumsum(steps, axis=1, out=pos[:, 1:])
        ends += np.bincount(pos[:, N] + N, minlength=2 * N + 1)
        lo, hi = pos.min(axis=1), pos.max(axis=1)
        # a walk visits every position between its minimum and maximum
        hits += np.bincount(lo + N, minlength=2 * N + 1).cumsum()
        hits -= np.concatenate(([0], np.bincount(hi + N, minlength=2 * N + 1)[:-1].cumsum()))[: 2 * N + 1]
        done += size
    return SimulationResult(
        N, samples, seed,
        {x - N: int(c) for x, c in enumerate(ends) if c},
        {x - N: int(c) for x, c in enumerate(hits) if c},
    )
