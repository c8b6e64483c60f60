"""Instance model and domination checks for products of two directed cycles.

Vertices are pairs ``(k, i)`` with ``k`` in the first cycle (length ``m``)
and ``i`` in the second (length ``n``).  Arcs go ``(k, i) -> (k+1, i)`` and
``(k, i) -> (k, i+1)``, indices taken modulo the cycle lengths.  A set is
stored column by column: column ``i`` is the copy of the m-cycle at second
coordinate ``i``, held as an ``m``-bit mask.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence

MAX_COLUMN_BITS = 62

Vertex = tuple[int, int]


class InputError(ValueError):
    """Raised for malformed instances, masks or vertex coordinates."""


class DomsetFormatError(InputError):
    """Syntax or consistency error in a domset v1 file."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class CycleProduct:
    m: int
    n: int

    def __post_init__(self):
        for name, value in (("m", self.m), ("n", self.n)):
            if not isinstance(value, int) or isinstance(value, bool):
                raise InputError(f"{name} must be an integer, got {value!r}")
            if value < 2:
                raise InputError(f"{name} must be >= 2, got {value}")

    @property
    def k1(self) -> int:
        return self.m // 3

    @property
    def k2(self) -> int:
        return self.n // 3

    def swapped(self) -> CycleProduct:
        return CycleProduct(self.n, self.m)

    def __str__(self) -> str:
        return f"C{self.m} x C{self.n}"


def _rotl(bits: int, shift: int, m: int) -> int:
    shift %= m
    full = (1 << m) - 1
    return ((bits << shift) | (bits >> (m - shift))) & full


@dataclass(frozen=True)
class ColumnMask:
    """A subset of ``{0, ..., m-1}`` packed into an integer."""

    m: int
    bits: int = 0

    def __post_init__(self):
        if not 1 <= self.m <= MAX_COLUMN_BITS:
            raise InputError(f"column size must be in [1, {MAX_COLUMN_BITS}], got {self.m}")
        if self.bits < 0 or self.bits >> self.m:
            raise InputError(f"mask {self.bits:#x} has members outside [0, {self.m})")

    @classmethod
    def from_members(cls, m: int, members: Iterable[int]) -> ColumnMask:
        bits = 0
        for k in members:
            if not 0 <= k < m:
                raise InputError(f"member {k} out of range [0, {m})")
            bits |= 1 << k
        return cls(m, bits)

    @classmethod
    def full(cls, m: int) -> ColumnMask:
        return cls(m, (1 << m) - 1)

    def members(self) -> list[int]:
        return [k for k in range(self.m) if self.bits >> k & 1]

    def rotate(self, shift: int) -> ColumnMask:
        """Translate every member by ``shift`` modulo ``m``."""
        return ColumnMask(self.m, _rotl(self.bits, shift, self.m))

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, k: object) -> bool:
        return isinstance(k, int) and 0 <= k < self.m and bool(self.bits >> k & 1)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members())

    def __or__(self, other: ColumnMask) -> ColumnMask:
        _check_universe(self, other)
        return ColumnMask(self.m, self.bits | other.bits)

    def __and__(self, other: ColumnMask) -> ColumnMask:
        _check_universe(self, other)
        return ColumnMask(self.m, self.bits & other.bits)

    def __le__(self, other: ColumnMask) -> bool:
        _check_universe(self, other)
        return self.bits & ~other.bits == 0

    def __repr__(self) -> str:
        return f"ColumnMask(m={self.m}, {{{', '.join(map(str, self.members()))}}})"


def _check_universe(a: ColumnMask, b: ColumnMask) -> None:
    if a.m != b.m:
        raise InputError(f"universe mismatch: {a.m} != {b.m}")


@dataclass(frozen=True)
class CandidateSet:
    """A vertex subset of the product, organised by column."""

    instance: CycleProduct
    columns: tuple[ColumnMask, ...]

    def __post_init__(self):
        object.__setattr__(self, "columns", tuple(self.columns))
        if len(self.columns) != self.instance.n:
            raise InputError(f"expected {self.instance.n} columns, got {len(self.columns)}")
        for j, col in enumerate(self.columns):
            if col.m != self.instance.m:
                raise InputError(f"column {j} has universe {col.m}, expected {self.instance.m}")

    @classmethod
    def empty(cls, instance: CycleProduct) -> CandidateSet:
        return cls(instance, tuple(ColumnMask(instance.m) for _ in range(instance.n)))

    @classmethod
    def full(cls, instance: CycleProduct) -> CandidateSet:
        return cls(instance, tuple(ColumnMask.full(instance.m) for _ in range(instance.n)))

    @classmethod
    def from_vertices(cls, instance: CycleProduct, vertices: Iterable[Vertex]) -> CandidateSet:
        bits = [0] * instance.n
        for k, i in vertices:
            _check_vertex((k, i), instance)
            bits[i] |= 1 << k
        return cls(instance, tuple(ColumnMask(instance.m, b) for b in bits))

    def vertices(self) -> list[Vertex]:
        return [(k, i) for i, col in enumerate(self.columns) for k in col.members()]

    def __len__(self) -> int:
        return sum(len(c) for c in self.columns)

    def __contains__(self, v: object) -> bool:
        if not (isinstance(v, tuple) and len(v) == 2):
            return False
        k, i = v
        return isinstance(i, int) and 0 <= i < self.instance.n and k in self.columns[i]

    def transpose(self) -> CandidateSet:
        """Map ``(k, i) -> (i, k)``, giving a set of the swapped product."""
        return CandidateSet.from_vertices(self.instance.swapped(), ((i, k) for k, i in self.vertices()))

    def union(self, other: CandidateSet) -> CandidateSet:
        if other.instance != self.instance:
            raise InputError("instance mismatch")
        return CandidateSet(self.instance, tuple(a | b for a, b in zip(self.columns, other.columns)))


def _check_vertex(v: Vertex, instance: CycleProduct) -> None:
    k, i = v
    if not (0 <= k < instance.m and 0 <= i < instance.n):
        raise InputError(f"vertex {v} outside {instance}")


def out_dominated(v: Vertex, instance: CycleProduct) -> set[Vertex]:
    """Closed out-neighbourhood of ``v``: itself and its two successors."""
    _check_vertex(v, instance)
    k, i = v
    return {(k, i), ((k + 1) % instance.m, i), (k, (i + 1) % instance.n)}


def undominated_in_column(j: int, cur: ColumnMask, prev: ColumnMask) -> ColumnMask:
    """Vertices of column ``j`` covered neither by ``cur`` nor by ``prev``.

    Inside a column a chosen vertex covers itself and its successor; the
    previous column covers the vertex with the same first coordinate.
    ``j`` only labels error messages.
    """
    if cur.m != prev.m:
        raise InputError(f"column {j}: universe mismatch {cur.m} != {prev.m}")
    m = cur.m
    covered = cur.bits | _rotl(cur.bits, 1, m) | prev.bits
    return ColumnMask(m, ((1 << m) - 1) & ~covered)


class Verdict(NamedTuple):
    dominating: bool
    witness: Vertex | None = None

    def __bool__(self) -> bool:
        return self.dominating


def is_dominating(W: CandidateSet) -> Verdict:
    """Check ``W`` column by column; on failure report one undominated vertex."""
    n = W.instance.n
    for j in range(n):
        missing = undominated_in_column(j, W.columns[j], W.columns[j - 1])
        if missing.bits:
            k = (missing.bits & -missing.bits).bit_length() - 1
            return Verdict(False, (k, j))
    return Verdict(True)


def column_counts(W: CandidateSet) -> tuple[int, ...]:
    return tuple(len(c) for c in W.columns)


# domset v1 text format

HEADER = "# domset v1"


def write_set(W: CandidateSet) -> str:
    lines = [HEADER, f"m {W.instance.m}", f"n {W.instance.n}"]
    for j, col in enumerate(W.columns):
        members = " ".join(str(k) for k in col.members())
        lines.append(f"col {j}: {members}" if members else f"col {j}:")
    return "\n".join(lines) + "\n"


def _parse_int(token: str, what: str, line: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise DomsetFormatError(f"expected integer {what}, got {token!r}", line) from None


def _keyed_int(lines: Sequence[str], idx: int, key: str) -> int:
    if idx >= len(lines):
        raise DomsetFormatError(f"missing '{key} <integer>' line", idx + 1)
    parts = lines[idx].split()
    if len(parts) != 2 or parts[0] != key:
        raise DomsetFormatError(f"expected '{key} <integer>', got {lines[idx]!r}", idx + 1)
    return _parse_int(parts[1], key, idx + 1)


def read_set(text: str) -> CandidateSet:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or lines[0].rstrip("\r") != HEADER:
        raise DomsetFormatError(f"expected header {HEADER!r}", 1)
    lines = [ln.rstrip("\r") for ln in lines]
    m = _keyed_int(lines, 1, "m")
    n = _keyed_int(lines, 2, "n")
    if m < 2:
        raise DomsetFormatError(f"m must be >= 2, got {m}", 2)
    if n < 2:
        raise DomsetFormatError(f"n must be >= 2, got {n}", 3)
    instance = CycleProduct(m, n)
    if m > MAX_COLUMN_BITS:
        raise DomsetFormatError(f"m = {m} exceeds the supported maximum {MAX_COLUMN_BITS}", 2)
    body = lines[3:]
    if len(body) != n:
        where = len(lines) + 1 if len(body) < n else 4 + n
        raise DomsetFormatError(f"expected {n} column lines, found {len(body)}", where)

    columns = []
    for j, line in enumerate(body):
        lineno = j + 4
        head, sep, rest = line.partition(":")
        parts = head.split()
        if not sep or len(parts) != 2 or parts[0] != "col":
            raise DomsetFormatError(f"expected 'col <j>: <members>', got {line!r}", lineno)
        if _parse_int(parts[1], "column index", lineno) != j:
            raise DomsetFormatError(f"expected column {j}, got {parts[1]}", lineno)
        members = [_parse_int(tok, "member", lineno) for tok in rest.split()]
        for k in members:
            if not 0 <= k < m:
                raise DomsetFormatError(f"member {k} out of range [0, {m})", lineno)
        if any(a >= b for a, b in zip(members, members[1:])):
            raise DomsetFormatError("members must be strictly ascending", lineno)
        columns.append(ColumnMask.from_members(m, members))
    return CandidateSet(instance, tuple(columns))
