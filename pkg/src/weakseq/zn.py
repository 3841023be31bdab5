"""Arithmetic over Z_n: residues, subsets, orderings, partial sums and the
sequencing / t-weak sequencing verifiers.

All residues are kept canonical in [0, n).  Everything here is a pure
function on immutable values.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


MAX_MODULUS = 2**31  # sums of two canonical residues always fit a machine word


@dataclass(frozen=True, order=True)
class Modulus:
    """The cyclic group Z_n (written additively)."""

    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or not 2 <= self.n < MAX_MODULUS:
            raise ValueError(f"modulus must be an integer in [2, 2^31), got {self.n!r}")

    def reduce(self, x: int) -> int:
        return x % self.n

    def neg(self, x: int) -> int:
        return (-x) % self.n


def canonical_residues(modulus: Modulus, values, *, context: str = "element"):
    """Reduce arbitrary integers (signed notation allowed, e.g. -3 for n-3)
    into canonical nonzero residues, rejecting zero and duplicates."""
    out: list[int] = []
    seen: set[int] = set()
    for v in values:
        r = modulus.reduce(int(v))
        if r == 0:
            raise ValueError(f"{context} {v} is 0 modulo {modulus.n}")
        if r in seen:
            raise ValueError(f"duplicate {context} {v} (canonical {r}) modulo {modulus.n}")
        seen.add(r)
        out.append(r)
    return out


def parse_residues(text: str, modulus: Modulus) -> list[int]:
    """Parse a comma-separated residue list such as "1,2,5,-3"."""
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts:
        raise ValueError("empty residue list")
    try:
        values = [int(p) for p in parts]
    except ValueError as exc:
        raise ValueError(f"bad residue list {text!r}: {exc}") from None
    return canonical_residues(modulus, values)


@dataclass(frozen=True)
class SubsetSpec:
    """A subset A of Z_n \\ {0}, stored sorted."""

    modulus: Modulus
    elements: tuple[int, ...]

    def __post_init__(self):
        n = self.modulus.n
        if not self.elements:
            raise ValueError("subset must be nonempty")
        if list(self.elements) != sorted(set(self.elements)):
            raise ValueError("subset elements must be sorted and distinct")
        if any(not 1 <= e <= n - 1 for e in self.elements):
            raise ValueError("subset elements must be canonical residues in [1, n-1]")

    @classmethod
    def from_values(cls, n: int, values) -> SubsetSpec:
        modulus = Modulus(n)
        return cls(modulus, tuple(sorted(canonical_residues(modulus, values))))

    @classmethod
    def parse(cls, n: int, text: str) -> SubsetSpec:
        modulus = Modulus(n)
        return cls(modulus, tuple(sorted(parse_residues(text, modulus))))

    @property
    def k(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class Ordering:
    """An ordering (a_1, ..., a_k) of distinct nonzero residues of Z_n.

    The empty ordering is allowed; its only partial sum is s_0 = 0.
    """

    modulus: Modulus
    sequence: tuple[int, ...]

    def __post_init__(self):
        n = self.modulus.n
        if any(not 1 <= a <= n - 1 for a in self.sequence):
            raise ValueError("ordering entries must be canonical residues in [1, n-1]")
        if len(set(self.sequence)) != len(self.sequence):
            raise ValueError("ordering entries must be pairwise distinct")

    @classmethod
    def from_values(cls, n: int, values) -> Ordering:
        modulus = Modulus(n)
        return cls(modulus, tuple(canonical_residues(modulus, values)))

    @property
    def k(self) -> int:
        return len(self.sequence)

    def subset(self) -> SubsetSpec:
        return SubsetSpec(self.modulus, tuple(sorted(self.sequence)))


class OrderingKind(str, Enum):
    SEQUENCING = "sequencing"
    R_SEQUENCING = "r-sequencing"
    NEITHER = "neither"


def partial_sums(ordering: Ordering) -> tuple[int, ...]:
    """Return (s_0, ..., s_k) with s_0 = 0 and s_i = s_{i-1} + a_i mod n."""
    n = ordering.modulus.n
    sums = [0]
    acc = 0
    for a in ordering.sequence:
        acc = (acc + a) % n
        sums.append(acc)
    return tuple(sums)


def classify_ordering(ordering: Ordering) -> OrderingKind:
    """Classify an ordering as a sequencing, an R-sequencing, or neither.

    A sequencing has all k+1 partial sums distinct.  An R-sequencing returns
    to 0 exactly at the end: s_k = 0 and s_0, ..., s_{k-1} are distinct with
    no interior zero.
    """
    if ordering.k < 1:
        raise ValueError("classification needs a nonempty ordering")
    sums = partial_sums(ordering)
    if len(set(sums)) == len(sums):
        return OrderingKind.SEQUENCING
    interior = sums[1:-1]
    if sums[-1] == 0 and 0 not in interior and len(set(interior)) == len(interior):
        return OrderingKind.R_SEQUENCING
    return OrderingKind.NEITHER


def t_weak_violations(ordering: Ordering, t: int) -> list[tuple[int, int]]:
    """All pairs (i, j), i < j, j - i <= t, with s_i = s_j.

    Empty list <=> the ordering is a t-weak sequencing.  Requires t < k
    (gap-1 pairs are scanned but can never collide: the elements are
    nonzero).
    """
    k = ordering.k
    if not 1 <= t < k:
        raise ValueError(f"need 1 <= t < k, got t={t}, k={k}")
    sums = partial_sums(ordering)
    out = []
    for i in range(k + 1):
        for j in range(i + 1, min(k, i + t) + 1):
            if sums[i] == sums[j]:
                out.append((i, j))
    return out


def is_t_weak(ordering: Ordering, t: int) -> bool:
    return not t_weak_violations(ordering, t)


def cmpp_admissible(subset: SubsetSpec) -> bool:
    """True iff the subset holds at most one of each pair {x, -x}.

    An x with x = -x (the involution n/2 for even n) never disqualifies.
    """
    n = subset.modulus.n
    present = set(subset.elements)
    return all(x == n - x or (n - x) not in present for x in present)
