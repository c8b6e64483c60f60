"""Bounds, closed-form domination numbers and the solved/open taxonomy."""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from typing import Sequence

from .core import CandidateSet, CycleProduct, InputError, is_dominating
from . import construct, solver

log = logging.getLogger(__name__)


class Method(str, enum.Enum):
    THEOREM1 = "theorem1"
    THEOREM2_I = "theorem2-case-i"
    THEOREM2_II = "theorem2-case-ii"
    THEOREM2_III = "theorem2-case-iii"
    THEOREM2_IV = "theorem2-case-iv"
    THEOREM2_V = "theorem2-case-v"
    THEOREM4_C4 = "theorem4-c4"
    TRIVIAL_THIRD = "trivial-third"
    GENERIC_UPPER = "generic-upper"
    EXACT_DP = "exact-dp"
    EXACT_BRUTEFORCE = "exact-bruteforce"
    STRICT_LB_CASE_III = "strict-lb-case-iii"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class GammaResult:
    lower: int
    upper: int
    exact: int | None
    method: Method
    certificate: CandidateSet | None = None

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError(f"lower {self.lower} > upper {self.upper}")
        if self.exact is not None and not self.lower <= self.exact <= self.upper:
            raise ValueError(f"exact {self.exact} outside [{self.lower}, {self.upper}]")
        if self.certificate is not None:
            if not is_dominating(self.certificate):
                raise ValueError("certificate is not dominating")
            if self.exact is not None and len(self.certificate) != self.exact:
                raise ValueError(f"certificate size {len(self.certificate)} != exact {self.exact}")


SUBCASES = ("solved", "open-a", "open-b", "open-c", "open-d-i", "open-d-ii")


@dataclass(frozen=True)
class CaseTag:
    m_residue: int
    n_residue: int
    subcase: str

    def __post_init__(self):
        if self.subcase not in SUBCASES:
            raise ValueError(f"unknown subcase {self.subcase!r}")
        expected = {
            "open-a": (0, 1),
            "open-b": (1, 0),
            "open-c": (1, 1),
            "open-d-i": (2, 1),
            "open-d-ii": (1, 2),
        }.get(self.subcase)
        if expected is not None and expected != (self.m_residue, self.n_residue):
            raise ValueError(f"{self.subcase} inconsistent with residues {self.m_residue}, {self.n_residue}")

    def __str__(self) -> str:
        return self.subcase


def check_column_inequality(m: int, counts: Sequence[int]) -> tuple[bool, int | None]:
    """Every column plus twice the next must reach ``m`` (cyclically).

    Returns ``(True, None)`` or ``(False, i)`` for the first ``i`` with
    ``counts[i-1] + 2*counts[i] < m``.
    """
    if not counts:
        raise InputError("counts must be non-empty")
    for i, c in enumerate(counts):
        if not 0 <= c <= m:
            raise InputError(f"count {c} at index {i} outside [0, {m}]")
    for i in range(len(counts)):
        if counts[i - 1] + 2 * counts[i] < m:
            return False, i
    return True, None


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def theorem1_bound(m: int, n: int) -> int:
    """Column-counting lower bound for one orientation, rounded up."""
    k1, r = divmod(m, 3)
    if r == 0:
        return n * k1
    if r == 1:
        return n * k1 + _ceil_div(n, 2)
    return n * (k1 + 1)


def lower_bound(inst: CycleProduct) -> int:
    return max(theorem1_bound(inst.m, inst.n), theorem1_bound(inst.n, inst.m), _ceil_div(inst.m * inst.n, 3))


def _lower_bound_method(inst: CycleProduct) -> Method:
    if in_case_iii(inst) or in_case_iii(inst.swapped()):
        return Method.STRICT_LB_CASE_III
    t1 = max(theorem1_bound(inst.m, inst.n), theorem1_bound(inst.n, inst.m))
    return Method.THEOREM1 if t1 >= _ceil_div(inst.m * inst.n, 3) else Method.TRIVIAL_THIRD


def generic_upper_bound(inst: CycleProduct) -> int:
    # a directed k-cycle is dominated by ceil(k/2) of its vertices; repeat per row
    return min(inst.m * _ceil_div(inst.n, 2), inst.n * _ceil_div(inst.m, 2))


def in_case_iii(inst: CycleProduct) -> bool:
    """m = 2 mod 3, n = 1 mod 3 and 2*k2 < k1: only a strict bound is known."""
    return inst.m % 3 == 2 and inst.n % 3 == 1 and 2 * inst.k2 < inst.k1


def theorem2_value(m: int, n: int) -> tuple[int, Method] | None:
    """Closed form for m = 2 (mod 3) in this orientation, with its case tag."""
    if m % 3 != 2:
        return None
    k1, k2 = m // 3, n // 3
    r = n % 3
    if r == 0:
        return n * (k1 + 1), Method.THEOREM2_I
    if r == 1:
        if 2 * k2 >= k1:
            return n * (k1 + 1), Method.THEOREM2_II
        return None
    if n >= m:
        return n * (k1 + 1), Method.THEOREM2_IV
    return m * (k2 + 1), Method.THEOREM2_V


def theorem4_value(n: int) -> int:
    """Domination number of C4 x Cn."""
    if n % 8 == 0:
        return 3 * n // 2
    return n + _ceil_div(n + 1, 2)


def known_gamma(inst: CycleProduct) -> tuple[int, Method] | None:
    """Exact value from a closed form, trying both orientations.

    When several formulas apply they must agree; a Theorem 2 case wins the
    provenance tag over the C4 formula.
    """
    found: list[tuple[int, Method]] = []
    for m, n in ((inst.m, inst.n), (inst.n, inst.m)):
        hit = theorem2_value(m, n)
        if hit is not None:
            found.append(hit)
    for m, n in ((inst.m, inst.n), (inst.n, inst.m)):
        if m == 4:
            found.append((theorem4_value(n), Method.THEOREM4_C4))
    if not found:
        return None
    values = {v for v, _ in found}
    if len(values) != 1:
        raise AssertionError(f"closed forms disagree on {inst}: {found}")
    return found[0]


def classify(inst: CycleProduct) -> CaseTag:
    rm, rn = inst.m % 3, inst.n % 3
    if known_gamma(inst) is not None:
        sub = "solved"
    elif (rm, rn) == (0, 1):
        sub = "open-a"
    elif (rm, rn) == (1, 0):
        sub = "open-b"
    elif (rm, rn) == (1, 1):
        sub = "open-c"
    elif in_case_iii(inst):
        sub = "open-d-i"
    elif in_case_iii(inst.swapped()):
        sub = "open-d-ii"
    else:
        # both divisible by 3: settled in the literature, value not in the registry
        sub = "solved"
    return CaseTag(rm, rn, sub)


def gamma(inst: CycleProduct, budget: solver.SolverBudget | None = None) -> GammaResult:
    """Best available answer: closed form, then exact search, then bounds."""
    budget = budget or solver.SolverBudget()
    lower = lower_bound(inst)
    upper = generic_upper_bound(inst)

    known = known_gamma(inst)
    if known is not None:
        value, method = known
        cert = construct.minimum_dominating_set(inst)
        if cert is None:
            try:
                cert = solver.witness_dp(inst, budget)
            except solver.BudgetError:
                pass
        if cert is not None and len(cert) != value:
            raise AssertionError(f"certificate size {len(cert)} != {value} on {inst}")
        return GammaResult(lower, value if cert is not None else upper, value, method, cert)

    try:
        cert = solver.witness_dp(inst, budget)
        value = len(cert)
        return GammaResult(lower, min(upper, value), value, Method.EXACT_DP, cert)
    except solver.BudgetError as exc:
        log.info("dp unavailable for %s: %s", inst, exc)

    if inst.m * inst.n <= budget.max_bruteforce_cells:
        value, cert = solver.gamma_bruteforce(inst, budget)
        return GammaResult(lower, min(upper, value), value, Method.EXACT_BRUTEFORCE, cert)

    return GammaResult(lower, upper, None, _lower_bound_method(inst))
