"""Exact domination numbers by exhaustive search and transfer matrices.

A *profile* is the set of chosen vertices in one column, encoded as an
integer in ``[0, 2**m)``.  Going from profile ``P`` to the next column's
profile ``Q`` is allowed when every vertex of the new column outside
``Q | rot(Q)`` lies in ``P``; the step costs ``|Q|``.  A dominating set is
then a closed walk of length ``n`` and its size is the walk's cost, so
the domination number is the least diagonal entry of the ``n``-th min-plus
power of the transition matrix.
"""

from __future__ import annotations

import itertools
import logging
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .core import CandidateSet, ColumnMask, CycleProduct, out_dominated

log = logging.getLogger(__name__)

INF = np.int32(1 << 29)
DENSE_MAX_BITS = 7


class BudgetError(RuntimeError):
    """The instance is outside the configured solver budget."""


@dataclass(frozen=True)
class SolverBudget:
    max_profile_bits: int = 14
    max_bruteforce_cells: int = 20
    time_limit: float | None = None  # seconds

    def __post_init__(self):
        if self.max_profile_bits <= 0 or self.max_bruteforce_cells <= 0:
            raise ValueError("budget limits must be positive")
        if self.time_limit is not None and self.time_limit <= 0:
            raise ValueError("time limit must be positive")


class _Clock:
    def __init__(self, limit: float | None):
        self.deadline = None if limit is None else time.monotonic() + limit

    def check(self) -> None:
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise BudgetError("time limit exceeded")


# -- brute force ------------------------------------------------------------

def gamma_bruteforce(inst: CycleProduct, budget: SolverBudget | None = None) -> tuple[int, CandidateSet]:
    """Smallest dominating set by enumerating subsets in order of size."""
    budget = budget or SolverBudget()
    cells = inst.m * inst.n
    if cells > budget.max_bruteforce_cells:
        raise BudgetError(f"{cells} cells > max_bruteforce_cells = {budget.max_bruteforce_cells}")
    clock = _Clock(budget.time_limit)
    vertices = [(k, i) for i in range(inst.n) for k in range(inst.m)]
    index = {v: t for t, v in enumerate(vertices)}
    reach = [sum(1 << index[u] for u in out_dominated(v, inst)) for v in vertices]
    everything = (1 << cells) - 1
    for size in range(cells + 1):
        for count, combo in enumerate(itertools.combinations(range(cells), size)):
            covered = 0
            for t in combo:
                covered |= reach[t]
            if covered == everything:
                return size, CandidateSet.from_vertices(inst, (vertices[t] for t in combo))
            if count & 0xFFFF == 0:
                clock.check()
    raise AssertionError("the full vertex set always dominates")


# -- transfer matrix --------------------------------------------------------

def _profile_tables(m: int) -> tuple[np.ndarray, np.ndarray]:
    """Per-profile cost ``|Q|`` and the mask a predecessor must contain."""
    q = np.arange(1 << m, dtype=np.int64)
    full = (1 << m) - 1
    rot = ((q << 1) | (q >> (m - 1))) & full
    need = full & ~(q | rot)
    cost = np.zeros(1 << m, dtype=np.int32)
    for b in range(m):
        cost += ((q >> b) & 1).astype(np.int32)
    return cost, need


@dataclass(frozen=True)
class TransferMatrix:
    m: int
    entries: np.ndarray  # int32, INF marks a forbidden transition

    def valid(self, p: int, q: int) -> bool:
        return bool(self.entries[p, q] < INF)


def _check_bits(m: int, budget: SolverBudget) -> None:
    if m > budget.max_profile_bits:
        raise BudgetError(f"profile width {m} > max_profile_bits = {budget.max_profile_bits}")


def build_transfer_matrix(m: int, budget: SolverBudget | None = None) -> TransferMatrix:
    _check_bits(m, budget or SolverBudget())
    cost, need = _profile_tables(m)
    p = np.arange(1 << m, dtype=np.int64)[:, None]
    ok = (p & need[None, :]) == need[None, :]
    entries = np.where(ok, cost[None, :], INF).astype(np.int32)
    return TransferMatrix(m, entries)


def min_plus_matmul(A: np.ndarray, B: np.ndarray, block: int = 64, workers: int | None = None) -> np.ndarray:
    """``C[i, j] = min_k A[i, k] + B[k, j]`` saturating at ``INF``."""
    rows = A.shape[0]
    out = np.empty((rows, B.shape[1]), dtype=np.int32)

    def run(start: int) -> None:
        stop = min(start + block, rows)
        part = (A[start:stop, :, None].astype(np.int64) + B[None, :, :]).min(axis=1)
        out[start:stop] = np.minimum(part, INF)

    starts = range(0, rows, block)
    workers = workers or min(len(starts), os.cpu_count() or 1)
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            list(pool.map(run, starts))
    else:
        for s in starts:
            run(s)
    return out


def min_plus_power(M: np.ndarray, e: int, clock: _Clock | None = None) -> np.ndarray:
    """``M`` to the ``e``-th min-plus power by repeated squaring (``e >= 1``)."""
    if e < 1:
        raise ValueError("exponent must be >= 1")
    result = None
    base = M
    while True:
        if e & 1:
            result = base if result is None else min_plus_matmul(result, base)
        e >>= 1
        if not e:
            return result
        if clock:
            clock.check()
        base = min_plus_matmul(base, base)


def _superset_min(V: np.ndarray, m: int) -> np.ndarray:
    """Replace ``V[:, P]`` with ``min(V[:, P'] for P' containing P)``, in place."""
    rows = V.shape[0]
    for b in range(m):
        view = V.reshape(rows, -1, 2, 1 << b)
        np.minimum(view[:, :, 0, :], view[:, :, 1, :], out=view[:, :, 0, :])
    return V


def _step(V: np.ndarray, m: int, cost: np.ndarray, need: np.ndarray) -> np.ndarray:
    best_pred = _superset_min(V.copy(), m)
    return np.minimum(best_pred[:, need] + cost[None, :], INF).astype(np.int32)


def _necklace_starts(m: int) -> np.ndarray:
    """One profile per rotation class (the numerically smallest)."""
    full = (1 << m) - 1
    q = np.arange(1 << m, dtype=np.int64)
    best = q.copy()
    r = q
    for _ in range(m - 1):
        r = ((r << 1) | (r >> (m - 1))) & full
        np.minimum(best, r, out=best)
    return np.flatnonzero(best == q)


def _orient(inst: CycleProduct, budget: SolverBudget) -> tuple[int, int, bool]:
    """Profile width, walk length, and whether the instance was transposed."""
    if inst.m <= inst.n:
        width, length, flipped = inst.m, inst.n, False
    else:
        width, length, flipped = inst.n, inst.m, True
    _check_bits(width, budget)
    return width, length, flipped


def _closed_walks_dense(width: int, length: int, clock: _Clock) -> np.ndarray:
    M = build_transfer_matrix(width, SolverBudget(max_profile_bits=width)).entries
    return np.diagonal(min_plus_power(M, length, clock)).copy()


def _closed_walks_stepped(width: int, length: int, clock: _Clock) -> tuple[np.ndarray, np.ndarray]:
    # Translating a set along the first cycle rotates every profile, so one
    # start profile per rotation class suffices.
    cost, need = _profile_tables(width)
    starts = _necklace_starts(width)
    V = np.full((len(starts), 1 << width), INF, dtype=np.int32)
    V[np.arange(len(starts)), starts] = 0
    for _ in range(length):
        clock.check()
        V = _step(V, width, cost, need)
    return starts, V[np.arange(len(starts)), starts]


def gamma_dp(inst: CycleProduct, budget: SolverBudget | None = None, method: str = "auto") -> int:
    """Exact domination number from closed walks of the transfer matrix.

    ``method`` is ``"dense"`` (square-and-multiply on the full matrix),
    ``"stepped"`` (row-vector propagation using the matrix's superset
    structure, from one start per rotation class) or ``"auto"``.
    """
    budget = budget or SolverBudget()
    width, length, _ = _orient(inst, budget)
    clock = _Clock(budget.time_limit)
    if method == "auto":
        method = "dense" if width <= DENSE_MAX_BITS else "stepped"
    if method == "dense":
        diag = _closed_walks_dense(width, length, clock)
    elif method == "stepped":
        _, diag = _closed_walks_stepped(width, length, clock)
    else:
        raise ValueError(f"unknown method {method!r}")
    return int(diag.min())


def witness_dp(inst: CycleProduct, budget: SolverBudget | None = None) -> CandidateSet:
    """One minimum dominating set, recovered by backtracking a single start."""
    budget = budget or SolverBudget()
    width, length, flipped = _orient(inst, budget)
    clock = _Clock(budget.time_limit)
    starts, diag = _closed_walks_stepped(width, length, clock)
    start = int(starts[int(diag.argmin())])
    best = int(diag.min())

    cost, need = _profile_tables(width)
    history = [np.full((1, 1 << width), INF, dtype=np.int32)]
    history[0][0, start] = 0
    for _ in range(length):
        clock.check()
        history.append(_step(history[-1], width, cost, need))
    if int(history[-1][0, start]) != best:
        raise AssertionError("replay of the optimal start disagrees")

    # profiles[t] is the column entered at step t; step `length` re-enters the start
    profiles = [0] * (length + 1)
    profiles[length] = start
    all_p = np.arange(1 << width, dtype=np.int64)
    for t in range(length, 0, -1):
        q = profiles[t]
        target = int(history[t][0, q]) - int(cost[q])
        row = history[t - 1][0]
        ok = ((all_p & need[q]) == need[q]) & (row == target)
        if t == 1:
            if not ok[start]:
                raise AssertionError("backtrack failed to return to the start profile")
            profiles[0] = start
        else:
            profiles[t - 1] = int(np.flatnonzero(ok)[0])

    cols = tuple(ColumnMask(width, p) for p in profiles[:length])
    W = CandidateSet(CycleProduct(width, length), cols)
    if flipped:
        W = W.transpose()
    log.debug("witness for %s has %d vertices", inst, len(W))
    return W
