"""Hodge-Deligne polynomials and Hodge diamonds.

A Hodge-Deligne polynomial is an ordinary bivariate polynomial plus an
optional claimed dimension.  The claim is metadata: it is never inferred from
the support, and validators require it explicitly, because the same
polynomial can be the H of spaces of different dimensions.

Validation is advisory.  Open strata legitimately fail the Serre reflection,
so nothing here is constructor-enforced; callers that need the smooth
projective identities run :func:`validate_smooth_projective` and read the
report.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .exact_poly import BivariatePolynomial
from .validation import Finding, ValidationReport


def _combine_add(a: Union[int, None], b: Union[int, None]) -> Union[int, None]:
    if a is None or b is None:
        return None
    return a + b


def _combine_same(a: Union[int, None], b: Union[int, None]) -> Union[int, None]:
    return a if a == b else None


@dataclass(frozen=True)
class HodgeDelignePolynomial:
    poly: BivariatePolynomial
    claimed_dimension: Union[int, None] = None

    def __post_init__(self):
        if not isinstance(self.poly, BivariatePolynomial):
            raise TypeError("poly must be a BivariatePolynomial")
        d = self.claimed_dimension
        if d is not None and (isinstance(d, bool) or not isinstance(d, int) or d < 0):
            raise ValueError(f"claimed dimension must be a nonnegative int, got {d!r}")

    @property
    def is_zero(self) -> bool:
        return self.poly.is_zero

    def coefficient(self, i: int, j: int) -> int:
        return self.poly.coefficient(i, j)

    def __add__(self, other: "HodgeDelignePolynomial") -> "HodgeDelignePolynomial":
        if not isinstance(other, HodgeDelignePolynomial):
            return NotImplemented
        return HodgeDelignePolynomial(
            self.poly + other.poly,
            _combine_same(self.claimed_dimension, other.claimed_dimension),
        )

    def __sub__(self, other: "HodgeDelignePolynomial") -> "HodgeDelignePolynomial":
        if not isinstance(other, HodgeDelignePolynomial):
            return NotImplemented
        return HodgeDelignePolynomial(
            self.poly - other.poly,
            _combine_same(self.claimed_dimension, other.claimed_dimension),
        )

    def __mul__(self, other: "HodgeDelignePolynomial") -> "HodgeDelignePolynomial":
        # product of varieties: dimensions add
        if not isinstance(other, HodgeDelignePolynomial):
            return NotImplemented
        return HodgeDelignePolynomial(
            self.poly * other.poly,
            _combine_add(self.claimed_dimension, other.claimed_dimension),
        )


def projective_space(n: int) -> HodgeDelignePolynomial:
    """H(P^n) = 1 + uv + ... + (uv)^n, claiming dimension n."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise ValueError(f"projective-space dimension must be a nonnegative int, got {n!r}")
    return HodgeDelignePolynomial(
        BivariatePolynomial.from_diagonal({k: 1 for k in range(n + 1)}),
        claimed_dimension=n,
    )


def scissor(ambient: HodgeDelignePolynomial, closed_subset: HodgeDelignePolynomial) -> HodgeDelignePolynomial:
    """H(ambient \\ closed subset) = H(ambient) - H(closed subset).

    Pure arithmetic; the claimed dimension of the ambient space is kept, since
    removing a proper closed subset does not change dimension.
    """
    return HodgeDelignePolynomial(ambient.poly - closed_subset.poly, ambient.claimed_dimension)


def blowup(ambient_dim: int, center: HodgeDelignePolynomial, codim: int,
           ambient: HodgeDelignePolynomial) -> HodgeDelignePolynomial:
    """H of the blowup of a smooth ambient space along a smooth center:

        H(Bl) = H(ambient) + H(center) * (uv + (uv)^2 + ... + (uv)^{codim-1}),

    the scissor relation H(Bl) = H(X) - H(Z) + H(Z)*H(P^{codim-1}).
    """
    if isinstance(codim, bool) or not isinstance(codim, int) or codim < 2:
        raise ValueError(f"blowup codimension must be an int >= 2, got {codim!r}")
    if isinstance(ambient_dim, bool) or not isinstance(ambient_dim, int) or ambient_dim < codim:
        raise ValueError(f"ambient dimension must be an int >= codimension, got {ambient_dim!r}")
    if center.claimed_dimension is not None and center.claimed_dimension != ambient_dim - codim:
        raise ValueError(
            f"center claims dimension {center.claimed_dimension}, expected {ambient_dim - codim}"
        )
    fiber_part = BivariatePolynomial.from_diagonal({k: 1 for k in range(1, codim)})
    return HodgeDelignePolynomial(ambient.poly + center.poly * fiber_part, ambient_dim)


def validate_smooth_projective(h: HodgeDelignePolynomial, d: int) -> ValidationReport:
    """Check the two identities every smooth projective d-fold satisfies:
    u<->v symmetry and the Serre reflection (i,j) <-> (d-i,d-j).

    Every violating exponent pair becomes one finding; passing both checks is
    necessary, not sufficient, for the polynomial to be geometric.
    """
    if isinstance(d, bool) or not isinstance(d, int) or d < 0:
        raise ValueError(f"dimension must be a nonnegative int, got {d!r}")
    p = h.poly
    findings: list[Finding] = []

    seen: set[tuple[int, int]] = set()
    for (i, j) in sorted(p.support(), key=lambda ij: (ij[0] + ij[1], ij[0], ij[1])):
        a, b = max(i, j), min(i, j)
        if (a, b) in seen or a == b:
            continue
        seen.add((a, b))
        if p.coefficient(a, b) != p.coefficient(b, a):
            findings.append(Finding(
                "error", "uv-asymmetry",
                f"coefficient {p.coefficient(a, b)} at ({a},{b}) vs {p.coefficient(b, a)} at ({b},{a})",
                f"({a},{b}) vs ({b},{a})",
            ))

    candidates = set(p.support())
    for (i, j) in p.support():
        candidates.add((d - i, d - j))
    seen_pairs: set[frozenset] = set()
    for (i, j) in sorted(candidates, key=lambda ij: (ij[0] + ij[1], ij[0], ij[1])):
        mi, mj = d - i, d - j
        key = frozenset(((i, j), (mi, mj)))
        if key in seen_pairs:
            continue
        seen_pairs.add(key)
        here = p.coefficient(i, j) if i >= 0 and j >= 0 else 0
        there = p.coefficient(mi, mj) if mi >= 0 and mj >= 0 else 0
        if here != there:
            findings.append(Finding(
                "error", "serre-reflection",
                f"coefficient {here} at ({i},{j}) vs {there} at ({mi},{mj}) for dimension {d}",
                f"({i},{j}) vs ({mi},{mj})",
            ))
    return ValidationReport(mode="smooth-projective", findings=tuple(findings))


@dataclass(frozen=True)
class DiamondViolation:
    """A failed Hodge-diamond identity: the offending position and value."""

    location: tuple[int, int]
    value: int
    reason: str

    def describe(self) -> str:
        return f"violation at {self.location}: value {self.value} ({self.reason})"


class HodgeDiamond:
    """Entries h^{p,q} for 0 <= p,q <= d, with the classical identities
    h^{p,q} = h^{q,p} = h^{d-p,d-q} enforced at construction."""

    __slots__ = ("_d", "_entries")

    def __init__(self, d: int, entries: dict[tuple[int, int], int]):
        if isinstance(d, bool) or not isinstance(d, int) or d < 0:
            raise ValueError(f"dimension must be a nonnegative int, got {d!r}")
        clean: dict[tuple[int, int], int] = {}
        for (p, q), val in entries.items():
            if p < 0 or q < 0 or p > d or q > d:
                raise ValueError(f"entry ({p},{q}) outside the {d}-diamond")
            if isinstance(val, bool) or not isinstance(val, int) or val < 0:
                raise ValueError(f"entry at ({p},{q}) must be a nonnegative int, got {val!r}")
            if val:
                clean[(p, q)] = val
        for (p, q), val in clean.items():
            if clean.get((q, p), 0) != val:
                raise ValueError(f"h^{{{p},{q}}} = {val} but h^{{{q},{p}}} = {clean.get((q, p), 0)}")
            if clean.get((d - p, d - q), 0) != val:
                raise ValueError(
                    f"h^{{{p},{q}}} = {val} but h^{{{d - p},{d - q}}} = {clean.get((d - p, d - q), 0)}"
                )
        self._d = d
        self._entries = clean

    @property
    def dimension(self) -> int:
        return self._d

    def entry(self, p: int, q: int) -> int:
        return self._entries.get((p, q), 0)

    def entries(self) -> dict[tuple[int, int], int]:
        return dict(self._entries)

    def __eq__(self, other) -> bool:
        if isinstance(other, HodgeDiamond):
            return self._d == other._d and self._entries == other._entries
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self._d, frozenset(self._entries.items())))

    def __str__(self) -> str:
        # rows by cohomological degree p+q, centered like the usual picture
        d = self._d
        rows = []
        for k in range(2 * d + 1):
            lo = max(0, k - d)
            hi = min(k, d)
            rows.append(" ".join(str(self.entry(p, k - p)) for p in range(hi, lo - 1, -1)))
        width = max(len(r) for r in rows)
        return "\n".join(r.center(width).rstrip() for r in rows)

    def __repr__(self) -> str:
        return f"HodgeDiamond(d={self._d}, {self._entries!r})"


def diamond_from_polynomial(p: BivariatePolynomial, d: int) -> Union[HodgeDiamond, DiamondViolation]:
    """Read h^{p,q} := (-1)^{p+q} * coefficient(p,q) off a polynomial.

    A negative entry is exactly a nonnegativity-conjecture counterexample
    surface, and a failed symmetry or Serre identity means the polynomial is
    not the E-function of a projective variety; both come back as a
    DiamondViolation rather than an exception.  Exponents beyond d are a
    caller error and raise.
    """
    if isinstance(d, bool) or not isinstance(d, int) or d < 0:
        raise ValueError(f"dimension must be a nonnegative int, got {d!r}")
    for (i, j) in p.support():
        if i > d or j > d:
            raise ValueError(f"exponent ({i},{j}) exceeds dimension {d}")
    entries = {
        (i, j): (-1 if (i + j) % 2 else 1) * c
        for (i, j), c in p.items()
    }
    for (i, j) in sorted(entries, key=lambda ij: (ij[0] + ij[1], ij[0], ij[1])):
        val = entries[(i, j)]
        if val < 0:
            return DiamondViolation((i, j), val, "negative entry")
        if entries.get((j, i), 0) != val:
            return DiamondViolation((i, j), val, f"h^{{{j},{i}}} = {entries.get((j, i), 0)} differs")
        if entries.get((d - i, d - j), 0) != val:
            return DiamondViolation(
                (i, j), val, f"h^{{{d - i},{d - j}}} = {entries.get((d - i, d - j), 0)} differs"
            )
    return HodgeDiamond(d, entries)
