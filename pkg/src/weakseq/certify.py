"""Nonzero-coefficient certificates and theorem-coverage verification.

A certificate pins one monomial of one factor system together with its
exact integer coefficient and that coefficient's prime factorization.  Any
prime p dividing the coefficient is "excluded": over Z_p the certificate
says nothing, over every other Z_p it guarantees t-weak sequenceability for
the k values in scope.  Coverage verification replays the case split of the
two headline results: for each k, either some applicable certificate has a
coefficient p cannot divide (gcd of the alternatives is 1), or the shared
prime factors are all <= k and therefore impossible (a subset of Z_p \\ {0}
of size k forces p > k).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from math import prod

from .errors import DegreeMismatchError, MonomialBoundError, ZeroCoefficientError
from .extract import coefficient as extract_coefficient
from .factorint import Factorization, factorize, is_probable_prime
from .polysys import FactorSystem, build_factor_system
from .reference import ReferenceRow, reference_rows

VARIANTS = ("main", "cmpp")
BASE_CASE_MAX_K = 12  # sizes <= 12 assumed sequenceable (prior work), so k_min = 13
DEFAULT_K_MIN = BASE_CASE_MAX_K + 1


@dataclass(frozen=True)
class KScope:
    kind: str  # "exact" | "at_least"
    value: int

    def __post_init__(self):
        if self.kind not in ("exact", "at_least"):
            raise ValueError(f"k-scope kind must be 'exact' or 'at_least', got {self.kind!r}")
        if self.value < 1:
            raise ValueError("k-scope value must be positive")

    def applies(self, k: int) -> bool:
        return k == self.value if self.kind == "exact" else k >= self.value

    def __str__(self) -> str:
        return f"k={self.value}" if self.kind == "exact" else f"k>={self.value}"


def check_applicability(variant: str, k: int, t: int, ell: int) -> bool:
    """Whether the k-independent certificate system is usable at (k, t, ell).

    Needs room for the fixed part (k - (t-1) >= ell) and a bounding monomial
    of large enough degree (ell >= 2t-1, or 2t-3 when adjacent-pair factors
    are dropped).
    """
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    if min(k, t, ell) < 1:
        raise ValueError("parameters must be positive")
    low = 2 * t - 1 if variant == "main" else 2 * t - 3
    return k - (t - 1) >= ell >= low


def system_for(variant: str, t: int, ell: int, k_scope: KScope) -> FactorSystem:
    if variant == "main":
        if k_scope.kind == "at_least":
            return build_factor_system("Q", t=t, ell=ell)
        return build_factor_system("Htop", k=k_scope.value, t=t, ell=ell)
    if k_scope.kind == "at_least":
        return build_factor_system("Qbar", t=t, ell=ell)
    return build_factor_system("Hbartop", k=k_scope.value, t=t, ell=ell)


@dataclass(frozen=True)
class Certificate:
    variant: str
    t: int
    ell: int
    k_scope: KScope
    monomial: tuple[int, ...]
    degree: int
    coefficient: int
    factorization: tuple[tuple[int, int], ...]
    excluded_primes: tuple[int, ...]
    primality_method: str

    @property
    def label(self) -> str:
        return (
            f"{self.variant}/t{self.t}/ell{self.ell}/{self.k_scope}/"
            f"m({compress_monomial(self.monomial)})"
        )

    def to_json_dict(self) -> dict:
        return {
            "variant": self.variant,
            "t": self.t,
            "ell": self.ell,
            "k_scope": {"type": self.k_scope.kind, "value": self.k_scope.value},
            "monomial": list(self.monomial),
            "degree": self.degree,
            "coefficient": str(self.coefficient),
            "factorization": [{"prime": str(p), "exp": e} for p, e in self.factorization],
            "excluded_primes": [str(p) for p in self.excluded_primes],
            "primality_method": self.primality_method,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> Certificate:
        cert = cls(
            variant=data["variant"],
            t=int(data["t"]),
            ell=int(data["ell"]),
            k_scope=KScope(data["k_scope"]["type"], int(data["k_scope"]["value"])),
            monomial=tuple(int(g) for g in data["monomial"]),
            degree=int(data["degree"]),
            coefficient=int(data["coefficient"]),
            factorization=tuple((int(f["prime"]), int(f["exp"])) for f in data["factorization"]),
            excluded_primes=tuple(int(p) for p in data["excluded_primes"]),
            primality_method=data["primality_method"],
        )
        validate_certificate(cert)
        return cert


def compress_monomial(monomial: tuple[int, ...]) -> str:
    """Run-length render, e.g. (5, 9, 10, 10, 10) -> '5,9,10^3'."""
    parts = []
    i = 0
    while i < len(monomial):
        j = i
        while j < len(monomial) and monomial[j] == monomial[i]:
            j += 1
        parts.append(str(monomial[i]) if j - i == 1 else f"{monomial[i]}^{j - i}")
        i = j
    return ",".join(parts)


def _validate_scope(variant: str, t: int, ell: int, k_scope: KScope) -> None:
    if k_scope.kind == "at_least":
        if not check_applicability(variant, k_scope.value, t, ell):
            raise ValueError(
                f"scope {k_scope} fails the applicability chain for "
                f"variant={variant}, t={t}, ell={ell}"
            )
    else:
        fixed_min = t - 1 if variant == "main" else t - 2
        if not k_scope.value > ell:
            raise ValueError(f"exact scope needs k > ell, got {k_scope} with ell={ell}")
        if ell < fixed_min:
            raise ValueError(
                f"exact scope needs ell >= {fixed_min} so the fixed part stays short enough"
            )


def make_certificate(
    variant: str,
    t: int,
    ell: int,
    k_scope: KScope,
    monomial,
    *,
    state_cap: int | None = None,
) -> Certificate:
    """Build the system, extract the coefficient and assemble a certificate.

    Raises MonomialBoundError / DegreeMismatchError / ZeroCoefficientError
    for the three distinct failure modes.
    """
    monomial = tuple(int(g) for g in monomial)
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    if len(monomial) != ell:
        raise ValueError(f"monomial has {len(monomial)} exponents, expected ell={ell}")
    _validate_scope(variant, t, ell, k_scope)
    system = system_for(variant, t, ell, k_scope)
    if any(g > ell - 1 for g in monomial) or any(g < 0 for g in monomial):
        raise MonomialBoundError(
            f"monomial {monomial} does not divide the bounding monomial (max exponent {ell - 1})"
        )
    if sum(monomial) != system.degree:
        raise DegreeMismatchError(
            f"monomial degree {sum(monomial)} != system degree {system.degree}"
        )
    value = extract_coefficient(system, monomial, state_cap=state_cap)
    if value == 0:
        raise ZeroCoefficientError(
            f"coefficient of {monomial} in {system.family}{dict(system.params)} is zero"
        )
    fact = factorize(value)
    return Certificate(
        variant=variant,
        t=t,
        ell=ell,
        k_scope=k_scope,
        monomial=monomial,
        degree=system.degree,
        coefficient=value,
        factorization=fact.factors,
        excluded_primes=fact.primes(),
        primality_method=fact.method,
    )


def validate_certificate(cert: Certificate) -> None:
    """Re-verify everything cheap: scope, bounds, degree, factorization.

    Does not re-run the extraction; `reproduce-tables` does that.
    """
    _validate_scope(cert.variant, cert.t, cert.ell, cert.k_scope)
    if cert.coefficient == 0:
        raise ZeroCoefficientError("certificate carries a zero coefficient")
    if len(cert.monomial) != cert.ell:
        raise ValueError("monomial length differs from ell")
    if any(not 0 <= g <= cert.ell - 1 for g in cert.monomial):
        raise MonomialBoundError("monomial does not divide the bounding monomial")
    system = system_for(cert.variant, cert.t, cert.ell, cert.k_scope)
    if cert.degree != system.degree or sum(cert.monomial) != system.degree:
        raise DegreeMismatchError("certificate degree differs from the rebuilt system degree")
    if prod(p**e for p, e in cert.factorization) != abs(cert.coefficient):
        raise ValueError("factorization does not multiply back to |coefficient|")
    if tuple(p for p, _ in cert.factorization) != cert.excluded_primes:
        raise ValueError("excluded_primes differs from the factorization support")
    for p, _ in cert.factorization:
        if not is_probable_prime(p):
            raise ValueError(f"factorization entry {p} is not prime")


def certificate_from_reference(row: ReferenceRow) -> Certificate:
    """A certificate asserted from the shipped table (no extraction)."""
    fact = Factorization(sign=row.sign, factors=row.factored, method="")
    cert = Certificate(
        variant=row.variant,
        t=row.t,
        ell=row.ell,
        k_scope=KScope(row.scope_kind, row.scope_value),
        monomial=row.monomial,
        degree=row.degree,
        coefficient=row.coefficient,
        factorization=row.factored,
        excluded_primes=tuple(p for p, _ in row.factored),
        primality_method="reference-table",
    )
    validate_certificate(cert)
    assert fact.value() == cert.coefficient
    return cert


def reference_certificates(variant: str, t: int) -> list[Certificate]:
    return [certificate_from_reference(r) for r in reference_rows(variant, t)]


# ---------------------------------------------------------------------------
# theorem coverage
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CoverageRow:
    k_lo: int
    k_hi: int | None  # None = unbounded tail
    certificate_labels: tuple[str, ...]
    gcd: int
    residual_primes: tuple[int, ...]
    size_excluded_primes: tuple[int, ...]
    uncovered_primes: tuple[int, ...]
    covered: bool

    @property
    def k_label(self) -> str:
        return f"k={self.k_lo}" if self.k_hi == self.k_lo else f"k>={self.k_lo}"


@dataclass(frozen=True)
class TheoremReport:
    variant: str
    t: int
    k_min: int
    base_case: str
    rows: tuple[CoverageRow, ...]
    verdict: str  # "complete" | "incomplete"

    @property
    def gaps(self) -> tuple[CoverageRow, ...]:
        return tuple(r for r in self.rows if not r.covered)

    def to_json_dict(self) -> dict:
        return {
            "variant": self.variant,
            "t": self.t,
            "k_min": self.k_min,
            "base_case": self.base_case,
            "verdict": self.verdict,
            "rows": [
                {
                    "k": row.k_label,
                    "certificates": list(row.certificate_labels),
                    "gcd": str(row.gcd),
                    "residual_primes": [str(p) for p in row.residual_primes],
                    "size_excluded_primes": [str(p) for p in row.size_excluded_primes],
                    "uncovered_primes": [str(p) for p in row.uncovered_primes],
                    "covered": row.covered,
                }
                for row in self.rows
            ],
        }


def _coverage_row(k_lo: int, k_hi: int | None, certs: list[Certificate]) -> CoverageRow:
    if not certs:
        return CoverageRow(k_lo, k_hi, (), 0, (), (), (), covered=False)
    g = 0
    for cert in certs:
        g = math.gcd(g, abs(cert.coefficient))
    labels = tuple(c.label for c in certs)
    if g == 1:
        return CoverageRow(k_lo, k_hi, labels, 1, (), (), (), covered=True)
    residual = factorize(g).primes()
    # p > k always (a k-subset of Z_p \ {0} needs p >= k + 1), so shared
    # primes <= every k in the range are impossible
    size_excluded = tuple(q for q in residual if q <= k_lo)
    uncovered = tuple(q for q in residual if q > k_lo)
    return CoverageRow(k_lo, k_hi, labels, g, residual, size_excluded, uncovered,
                       covered=not uncovered)


def verify_theorem_coverage(
    variant: str,
    t: int,
    certificates,
    *,
    k_min: int = DEFAULT_K_MIN,
) -> TheoremReport:
    """Check that every k >= k_min and every prime p > k is discharged."""
    certs = list(certificates)
    if not certs:
        raise ValueError("certificate set must be nonempty")
    for cert in certs:
        if (cert.variant, cert.t) != (variant, t):
            raise ValueError(f"certificate {cert.label} does not belong to ({variant}, t={t})")
        validate_certificate(cert)

    exact_ks = [c.k_scope.value for c in certs if c.k_scope.kind == "exact"]
    tail_bounds = [c.k_scope.value for c in certs if c.k_scope.kind == "at_least"]
    tail_start = max([k_min] + tail_bounds + [k + 1 for k in exact_ks])

    rows = []
    for k in range(k_min, tail_start):
        applicable = [c for c in certs if c.k_scope.applies(k)]
        rows.append(_coverage_row(k, k, applicable))
    tail_certs = [c for c in certs if c.k_scope.kind == "at_least"]
    rows.append(_coverage_row(tail_start, None, tail_certs))

    verdict = "complete" if all(r.covered for r in rows) else "incomplete"
    return TheoremReport(
        variant=variant,
        t=t,
        k_min=k_min,
        base_case=f"k <= {k_min - 1}: assumed (prior work)",
        rows=tuple(rows),
        verdict=verdict,
    )


def load_certificates(path: str) -> list[Certificate]:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if isinstance(data, dict):
        data = [data]
    return [Certificate.from_json_dict(d) for d in data]


def save_certificates(path: str, certs) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump([c.to_json_dict() for c in certs], fh, indent=2)
        fh.write("\n")


__all__ = [
    "Certificate",
    "CoverageRow",
    "KScope",
    "TheoremReport",
    "check_applicability",
    "certificate_from_reference",
    "compress_monomial",
    "load_certificates",
    "make_certificate",
    "reference_certificates",
    "save_certificates",
    "system_for",
    "validate_certificate",
    "verify_theorem_coverage",
]
