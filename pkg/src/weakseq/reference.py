"""Shipped reference table of certified monomials.

These rows are the package's regression fixture: for each (variant, t,
scope, ell) they pin the certificate monomial, the system degree and the
exact coefficient in factored form.  `reproduce-tables` recomputes the
coefficients from scratch and compares bit-exactly against these values.

variant "main" covers every subset (t = 6); variant "cmpp" covers subsets
holding at most one of each pair {x, -x} (t = 7).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod


@dataclass(frozen=True)
class ReferenceRow:
    variant: str
    t: int
    scope_kind: str  # "exact" (one k) or "at_least" (every k >= scope_value)
    scope_value: int
    ell: int
    degree: int
    monomial: tuple[int, ...]
    sign: int
    factored: tuple[tuple[int, int], ...]

    @property
    def coefficient(self) -> int:
        return self.sign * prod(p**e for p, e in self.factored)


def _m(head: tuple[int, ...], fill: int, ell: int) -> tuple[int, ...]:
    return head + (fill,) * (ell - len(head))


REFERENCE_ROWS: tuple[ReferenceRow, ...] = (
    # ---- variant "main", t = 6 ----
    ReferenceRow("main", 6, "exact", 13, 11, 104, _m((5, 9), 10, 11), -1,
                 ((2, 1), (11, 1), (946021, 1), (34341337, 1))),
    ReferenceRow("main", 6, "exact", 13, 11, 104, _m((6, 8), 10, 11), -1,
                 ((7, 1), (211, 1), (73019, 1), (7962769, 1))),
    ReferenceRow("main", 6, "exact", 14, 11, 107, _m((7,), 10, 11), -1,
                 ((2, 2), (3, 1), (5, 1), (7, 2), (37, 1), (433, 1), (81945547, 1))),
    ReferenceRow("main", 6, "exact", 14, 11, 107, _m((8, 9), 10, 11), -1,
                 ((3, 1), (5, 1), (555349, 1), (496867859, 1))),
    ReferenceRow("main", 6, "exact", 15, 11, 109, _m((9,), 10, 11), -1,
                 ((3, 4), (5, 1), (47, 1), (97, 1), (271, 1), (15985681, 1))),
    ReferenceRow("main", 6, "exact", 15, 11, 109, _m((10, 9), 10, 11), -1,
                 ((2, 2), (3, 1), (401, 1), (1305987719053, 1))),
    ReferenceRow("main", 6, "exact", 16, 12, 125, _m((5, 10), 11, 12), -1,
                 ((379, 1), (167938950753577, 1))),
    ReferenceRow("main", 6, "at_least", 16, 11, 110, _m((), 10, 11), -1,
                 ((3, 4), (5, 1), (47, 1), (97, 1), (271, 1), (15985681, 1))),
    ReferenceRow("main", 6, "at_least", 17, 12, 126, _m((6, 10), 11, 12), -1,
                 ((379, 1), (167938950753577, 1))),
    # ---- variant "cmpp", t = 7 ----
    ReferenceRow("cmpp", 7, "exact", 13, 11, 100, _m((2, 8), 10, 11), 1,
                 ((3, 3), (708569, 1), (33345973, 1))),
    ReferenceRow("cmpp", 7, "exact", 13, 11, 100, _m((3, 7), 10, 11), 1,
                 ((3, 1), (19, 1), (7829, 1), (31223, 1), (121843, 1))),
    ReferenceRow("cmpp", 7, "exact", 14, 11, 104, _m((5, 9), 10, 11), 1,
                 ((2, 3), (41, 1), (7682093, 1), (13267117, 1))),
    ReferenceRow("cmpp", 7, "exact", 14, 11, 104, _m((6, 8), 10, 11), 1,
                 ((2, 2), (16834339, 1), (679071929, 1))),
    ReferenceRow("cmpp", 7, "exact", 15, 11, 107, _m((7,), 10, 11), 1,
                 ((2, 2), (59, 1), (708923, 1), (1059330263, 1))),
    ReferenceRow("cmpp", 7, "exact", 15, 11, 107, _m((8, 9), 10, 11), 1,
                 ((7, 1), (149, 1), (239, 1), (4073, 1), (212718109, 1))),
    ReferenceRow("cmpp", 7, "exact", 16, 11, 109, _m((9,), 10, 11), 1,
                 ((13, 1), (67, 1), (451441944254443, 1))),
    ReferenceRow("cmpp", 7, "exact", 16, 11, 109, _m((10, 9), 10, 11), 1,
                 ((3, 2), (281, 1), (1163, 1), (112116705839, 1))),
    ReferenceRow("cmpp", 7, "exact", 17, 12, 125, _m((5, 10), 11, 12), 1,
                 ((2, 1), (7, 1), (13, 1), (4679, 1), (3953841444019, 1))),
    ReferenceRow("cmpp", 7, "at_least", 17, 11, 110, _m((), 10, 11), 1,
                 ((13, 1), (67, 1), (451441944254443, 1))),
    ReferenceRow("cmpp", 7, "at_least", 18, 12, 126, _m((6, 10), 11, 12), 1,
                 ((2, 1), (7, 1), (13, 1), (4679, 1), (3953841444019, 1))),
)

VARIANTS = {("main", 6), ("cmpp", 7)}


def reference_rows(variant: str, t: int, tier: str = "full") -> tuple[ReferenceRow, ...]:
    """Rows for one variant; tier "fast" keeps the full-coefficient rows at
    ell <= 11 (the ell = 12 rows stay degree-only in that tier)."""
    if (variant, t) not in VARIANTS:
        raise ValueError(f"no reference table for variant={variant!r}, t={t}")
    if tier not in ("fast", "full"):
        raise ValueError(f"tier must be 'fast' or 'full', got {tier!r}")
    rows = tuple(r for r in REFERENCE_ROWS if r.variant == variant and r.t == t)
    return rows


def row_in_fast_tier(row: ReferenceRow) -> bool:
    return row.ell <= 11
