"""Minimum dominating sets for m = 2 (mod 3) built from translates of one column pattern.

Every column of the constructed set is a rotation of
``A = {0, 2, 5, ..., m-3}``.  Consecutive columns differ by a rotation of
+1 or -2, the sequence of rotations being the *step word*.  The word must
also close up around the second cycle, which reduces to choosing how many
+1 and -2 letters to use.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import CandidateSet, ColumnMask, CycleProduct, InputError, is_dominating

STEPS = (1, -2)


def _require_2mod3(m: int) -> None:
    if m % 3 != 2:
        raise InputError(f"construction needs m = 2 (mod 3), got m = {m}")


@dataclass(frozen=True)
class ABPair:
    a: int  # number of +1 steps
    b: int  # number of -2 steps

    def satisfies(self, inst: CycleProduct) -> bool:
        m = inst.m
        return (
            self.a >= 0
            and self.b >= 0
            and self.a + self.b == inst.n - 1
            and (self.a - 2 * self.b) % m in (2 % m, m - 1)
        )

    def word(self) -> tuple[int, ...]:
        return (1,) * self.a + (-2,) * self.b


@dataclass(frozen=True)
class ASetDescriptor:
    instance: CycleProduct
    offsets: tuple[int, ...]
    word: tuple[int, ...]

    def closes(self) -> bool:
        """True when the last column steps back onto column 0 by +1 or -2."""
        m = self.instance.m
        last = self.offsets[-1]
        return self.offsets[0] in ((last + 1) % m, (last - 2) % m)


def base_set(m: int) -> ColumnMask:
    _require_2mod3(m)
    return ColumnMask.from_members(m, [0, *range(2, m - 2, 3)])


def translate(A: ColumnMask, i: int, m: int) -> ColumnMask:
    if A.m != m:
        raise InputError(f"universe mismatch: {A.m} != {m}")
    return A.rotate(i)


def solve_ab(inst: CycleProduct) -> ABPair | None:
    """Letter counts for a closing step word, or None when no such pair is known.

    No pair is returned when n = 1 (mod 3) with 2*k2 < k1, and when
    n = 2 (mod 3) with k2 < k1 (that instance is built in the swapped
    orientation instead).
    """
    _require_2mod3(inst.m)
    k1, k2 = inst.k1, inst.k2
    r = inst.n % 3
    if r == 0:
        pair = ABPair(2 * k2, k2 - 1)
    elif r == 1:
        if 2 * k2 < k1:
            return None
        pair = ABPair(2 * k2 - k1, k2 + k1)
    else:
        if k2 < k1:
            return None
        pair = ABPair(2 * k2 - 2 * k1, k2 + 2 * k1 + 1)
    if not pair.satisfies(inst):
        raise AssertionError(f"{pair} does not close on {inst}")
    return pair


def build_from_word(inst: CycleProduct, word: Sequence[int]) -> tuple[CandidateSet, ASetDescriptor]:
    """Lay out rotated copies of the base pattern column by column.

    Column 0 is the base pattern itself; column ``j`` is column ``j-1``
    rotated by ``word[j-1]``.  The result is dominating whenever the word
    closes (see :meth:`ASetDescriptor.closes`).
    """
    _require_2mod3(inst.m)
    word = tuple(word)
    if len(word) != inst.n - 1:
        raise InputError(f"word length {len(word)} != n - 1 = {inst.n - 1}")
    bad = [w for w in word if w not in STEPS]
    if bad:
        raise InputError(f"word letters must be +1 or -2, got {bad[0]}")
    m = inst.m
    offsets = [0]
    for w in word:
        offsets.append((offsets[-1] + w) % m)
    A = base_set(m)
    cols = tuple(translate(A, i, m) for i in offsets)
    return CandidateSet(inst, cols), ASetDescriptor(inst, tuple(offsets), word)


def minimum_dominating_set(inst: CycleProduct) -> CandidateSet | None:
    """Verified optimal set when m or n is 2 (mod 3) and a closing word exists."""
    if inst.m % 3 == 2:
        pair = solve_ab(inst)
        if pair is not None:
            W, _ = build_from_word(inst, pair.word())
            return _checked(W, inst.n * (inst.k1 + 1))
    if inst.n % 3 == 2:
        swapped = inst.swapped()
        pair = solve_ab(swapped)
        if pair is not None:
            W, _ = build_from_word(swapped, pair.word())
            return _checked(W.transpose(), swapped.n * (swapped.k1 + 1))
    return None


def _checked(W: CandidateSet, size: int) -> CandidateSet:
    verdict = is_dominating(W)
    if not verdict:
        raise AssertionError(f"constructed set misses {verdict.witness} on {W.instance}")
    if len(W) != size:
        raise AssertionError(f"constructed set has {len(W)} vertices, expected {size}")
    return W
