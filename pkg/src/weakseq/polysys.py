"""Products of degree-1 integer linear forms and their builders.

Every polynomial this package manipulates is a product of linear forms with
coefficients +-1 over variables x_1..x_m (index 0..m-1 internally):

  * difference forms  (x_j - x_i)                  -- distinctness,
  * window forms      (x_{i+1} + ... + x_j)        -- a run of partial sums,
  * prefix forms      (x_1 + ... + x_j)            -- a window cut off at the
                                                      left border of the free
                                                      variables.

A factor is a tuple of (variable, coefficient) pairs sorted by variable; a
system is a multiset of factors in a canonical order.
"""

from __future__ import annotations

from dataclasses import dataclass

from .zn import Modulus

# ((var, coef), ...), total degree 1, coef in {+1, -1} for every family here
LinearFactor = tuple[tuple[int, int], ...]

FAMILIES = ("F", "P", "Pbar", "Q", "Qbar", "Htop", "Hbartop")


def difference_factor(i: int, j: int) -> LinearFactor:
    return ((i, -1), (j, 1))


def window_factor(lo: int, hi: int) -> LinearFactor:
    """All-ones form over the contiguous variable range [lo, hi)."""
    return tuple((v, 1) for v in range(lo, hi))


def factor_sort_key(factor: LinearFactor):
    return (max(v for v, _ in factor), len(factor), factor)


@dataclass(frozen=True)
class FactorSystem:
    """A canonical multiset of linear factors plus build provenance."""

    num_vars: int
    factors: tuple[LinearFactor, ...]
    family: str
    params: tuple[tuple[str, int], ...]

    def __post_init__(self):
        if self.num_vars < 1:
            raise ValueError("num_vars must be positive")
        for f in self.factors:
            if not f or any(not 0 <= v < self.num_vars for v, _ in f):
                raise ValueError(f"factor {f} out of range for {self.num_vars} variables")
            if any(c not in (-1, 1) for _, c in f):
                raise ValueError(f"factor {f} has a coefficient outside {{-1, +1}}")
            if [v for v, _ in f] != sorted({v for v, _ in f}):
                raise ValueError(f"factor {f} must list distinct variables in order")
        if list(self.factors) != sorted(self.factors, key=factor_sort_key):
            raise ValueError("factors must be in canonical order")

    @property
    def degree(self) -> int:
        # every factor is homogeneous of degree 1
        return len(self.factors)

    def param(self, name: str) -> int:
        for key, value in self.params:
            if key == name:
                return value
        raise KeyError(name)


def _make_system(num_vars, factors, family, params) -> FactorSystem:
    return FactorSystem(
        num_vars=num_vars,
        factors=tuple(sorted(factors, key=factor_sort_key)),
        family=family,
        params=tuple(params),
    )


def _difference_block(m: int) -> list[LinearFactor]:
    return [difference_factor(i, j) for i in range(m) for j in range(i + 1, m)]


def _window_block(m: int, t: int, min_len: int) -> list[LinearFactor]:
    # windows (i, j) over partial-sum indices 0 <= i < j <= m, j - i <= t,
    # of length at least min_len (length 1 never appears: single elements
    # are nonzero by construction)
    out = []
    for i in range(m + 1):
        for j in range(i + min_len, min(m, i + t) + 1):
            out.append(window_factor(i, j))
    return out


def _full_sequencing_windows(k: int) -> list[LinearFactor]:
    # every window except singletons and the full sum (i, j) = (0, k)
    out = []
    for i in range(k + 1):
        for j in range(i + 2, k + 1):
            if (i, j) == (0, k):
                continue
            out.append(window_factor(i, j))
    return out


def _prefix_multiplicities(family: str, t: int, ell: int, h: int | None) -> list[int]:
    """Multiplicity of the prefix form (x_1 + ... + x_j) for j = 1..min(ell, t-1).

    These are the top-degree parts of the windows that straddle the border
    between h fixed elements and ell free variables; with a long enough
    fixed part (h >= t-1) the count no longer depends on h.
    """
    out = []
    for j in range(1, min(ell, t - 1) + 1):
        if family == "Q":
            m = t - j
        elif family == "Qbar":
            m = t - 2 if j == 1 else t - j
        elif family == "Htop":
            m = min(h, t - j)
        elif family == "Hbartop":
            m = (min(h, t - 1) - 1) if j == 1 else min(h, t - j)
        else:  # pragma: no cover - internal misuse
            raise ValueError(family)
        out.append(max(0, m))
    return out


def build_factor_system(
    family: str,
    *,
    k: int | None = None,
    t: int | None = None,
    ell: int | None = None,
) -> FactorSystem:
    """Build one of the named factor systems.

    F(k)            all differences + every window of a full sequencing.
    P(k, t)         differences + windows of length 2..t (t-weak constraints).
    Pbar(k, t)      P without the length-2 windows (valid for sets holding at
                    most one of each pair {x, -x}).
    Q(t, ell)       P(ell, t) + prefix forms, multiplicity t-j for j < t.
    Qbar(t, ell)    Pbar(ell, t) + prefix forms with the adjacent-pair
                    crossing form removed (multiplicity t-2 at j=1).
    Htop(k, t, ell) like Q but with a fixed part of h = k - ell elements,
                    so prefix multiplicities are capped at h.
    Hbartop(k, t, ell)  the Qbar analogue of Htop.
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")

    if family == "F":
        if k is None or k < 2:
            raise ValueError("F needs k >= 2")
        factors = _difference_block(k) + _full_sequencing_windows(k)
        return _make_system(k, factors, family, [("k", k)])

    if family in ("P", "Pbar"):
        if k is None or t is None or k < 2 or not 1 <= t < k:
            raise ValueError(f"{family} needs k >= 2 and 1 <= t < k")
        min_len = 2 if family == "P" else 3
        factors = _difference_block(k) + _window_block(k, t, min_len)
        return _make_system(k, factors, family, [("k", k), ("t", t)])

    if family in ("Q", "Qbar"):
        if t is None or ell is None or ell < 1 or t < 2:
            raise ValueError(f"{family} needs ell >= 1 and t >= 2")
        min_len = 2 if family == "Q" else 3
        factors = _difference_block(ell) + _window_block(ell, t, min_len)
        mults = _prefix_multiplicities(family, t, ell, None)
        for j, m in enumerate(mults, start=1):
            factors.extend([window_factor(0, j)] * m)
        return _make_system(ell, factors, family, [("t", t), ("ell", ell)])

    # Htop / Hbartop
    if k is None or t is None or ell is None or not k > ell >= 1 or t < 2:
        raise ValueError(f"{family} needs k > ell >= 1 and t >= 2")
    h = k - ell
    min_len = 2 if family == "Htop" else 3
    factors = _difference_block(ell) + _window_block(ell, t, min_len)
    mults = _prefix_multiplicities(family, t, ell, h)
    for j, m in enumerate(mults, start=1):
        factors.extend([window_factor(0, j)] * m)
    return _make_system(ell, factors, family, [("k", k), ("t", t), ("ell", ell)])


def system_degree(system: FactorSystem) -> int:
    return system.degree


def closed_form_degree(family: str, t: int, ell: int) -> int:
    """Degree of Q / Qbar in closed form (each free variable ends t-1,
    respectively t-2, window forms plus the difference block)."""
    if family == "Q":
        return (t - 1) * ell + ell * (ell - 1) // 2
    if family == "Qbar":
        return (t - 2) * ell + ell * (ell - 1) // 2
    raise ValueError(f"no closed form for family {family!r}")


def evaluate_system(system: FactorSystem, point, modulus: Modulus) -> int:
    """Evaluate the product at an integer point, reduced mod n."""
    point = tuple(point)
    if len(point) != system.num_vars:
        raise ValueError(
            f"point has {len(point)} coordinates, system has {system.num_vars} variables"
        )
    n = modulus.n
    acc = 1
    for factor in system.factors:
        value = 0
        for v, c in factor:
            value += c * point[v]
        acc = (acc * value) % n
        if acc == 0:
            return 0
    return acc % n
