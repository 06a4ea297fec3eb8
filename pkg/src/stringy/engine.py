"""The stringy E-function engine.

Computes E_st by the open-strata and closed-strata formulas, expands it as a
power series, and runs the analyses: the Poincare-duality functional
equation, u<->v symmetry, polynomiality with witnesses, stringy Hodge
numbers, nonnegativity verdicts, and the coefficient decomposition

    b_{i,j} = c_{i,j} + sum_{k=1..j} (-1)^k sum_{|J|=k} c^J_{i-k,j-k} + R_{i,j}

with its boundary terms R and S and the implied Hodge-component dimensions.

Everything takes a config that passes lenient validation; computations raise
ConfigValidationError otherwise instead of producing garbage.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .exact_poly import (
    BivariatePolynomial,
    StringyRational,
    TruncatedBiseries,
    UnivariateTSeries,
    expand_rational,
)
from .hodge import DiamondViolation, HodgeDiamond, diamond_from_polynomial
from .resolution import (
    ResolutionConfig,
    convert_strata,
    exceptional_union_hd,
    validate,
)
from .validation import ConfigValidationError

_UV = BivariatePolynomial.monomial(1, 1)
_ONE = BivariatePolynomial.one()


def _require_lenient(cfg: ResolutionConfig) -> None:
    report = validate(cfg, "lenient")
    if not report.accepted:
        raise ConfigValidationError(list(report.errors))


def _require_strict(cfg: ResolutionConfig) -> None:
    report = validate(cfg, "strict")
    if not report.accepted:
        raise ConfigValidationError(list(report.errors))


def stringy_e_open(cfg: ResolutionConfig) -> StringyRational:
    """E_st by the open-strata formula:

        sum over I of H(D_I^o) * prod_{i in I} (uv - 1)/((uv)^{a_i+1} - 1).

    The empty-set stratum is the ambient space minus all stored open strata;
    a component with a = 0 contributes the factor (uv-1)/(uv-1), normalized
    to 1 before any division can see 0/0.
    """
    _require_lenient(cfg)
    open_cfg = convert_strata(cfg, "open")
    complement = open_cfg.ambient.poly
    for value in open_cfg.strata.values():
        complement = complement - value.poly
    total = StringyRational(complement)
    for key, value in sorted(open_cfg.strata.items()):
        term = StringyRational(value.poly)
        for label in key:
            a = open_cfg.discrepancy(label)
            if a == 0:
                continue
            term = term * StringyRational(_UV - _ONE, (a + 1,))
        total = total + term
    return total


def stringy_e_closed(cfg: ResolutionConfig) -> StringyRational:
    """E_st by the closed-strata formula:

        sum over I of H(D_I) * prod_{i in I} (uv - (uv)^{a_i+1})/((uv)^{a_i+1} - 1).

    A component with a = 0 makes its factor exactly zero, so every stratum
    containing one drops out; the sums effectively run over a != 0 only.
    """
    _require_lenient(cfg)
    closed_cfg = convert_strata(cfg, "closed")
    total = StringyRational(closed_cfg.ambient.poly)
    for key, value in sorted(closed_cfg.strata.items()):
        if any(closed_cfg.discrepancy(label) == 0 for label in key):
            continue
        term = StringyRational(value.poly)
        for label in key:
            a = closed_cfg.discrepancy(label)
            term = term * StringyRational(_UV - BivariatePolynomial.uv_power(a + 1), (a + 1,))
        total = total + term
    return total


@dataclass(frozen=True)
class StringyResult:
    e_open: StringyRational
    e_closed: StringyRational
    agree: bool
    series: TruncatedBiseries
    dimension: int


def compute(cfg: ResolutionConfig, horizon: Union[int, None] = None) -> StringyResult:
    """Both formulas plus the series expansion.

    The two formulas are algebraically equal for any config passing lenient
    validation, so agree=False is an internal-error signal (a broken lattice
    conversion), not a property of the input.
    """
    if horizon is None:
        horizon = 2 * cfg.dimension
    e_open = stringy_e_open(cfg)
    e_closed = stringy_e_closed(cfg)
    agree = e_open == e_closed
    series = expand_rational(e_open, horizon)
    return StringyResult(e_open, e_closed, agree, series, cfg.dimension)


@dataclass(frozen=True)
class CheckOutcome:
    passed: bool
    witness: Union[tuple[int, int], None] = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.passed


def check_duality(x: StringyRational, d: int) -> CheckOutcome:
    """Decide E(u,v) = (uv)^d E(1/u,1/v) exactly.

    Clearing denominators: with x = N / prod((uv)^{m_k} - 1), the equation
    holds iff N(i,j) = sign * N(D-i, D-j) for all (i,j), where
    D = d + sum(m_k) and sign = (-1)^{number of factors}.  No negative
    exponent is ever stored.  The outcome does not depend on which
    representation of x is used: cancelling a factor (uv)^m - 1 flips the
    sign and shifts D by m consistently on both sides.
    """
    if isinstance(d, bool) or not isinstance(d, int) or d < 0:
        raise ValueError(f"dimension must be a nonnegative int, got {d!r}")
    num = x.numerator
    shift = d + x.denominator.degree_uv()
    sign = -1 if len(x.denominator) % 2 else 1
    candidates = set(num.support())
    for (i, j) in num.support():
        candidates.add((shift - i, shift - j))
    for (i, j) in sorted(candidates, key=lambda ij: (ij[0] + ij[1], ij[0], ij[1])):
        here = num.coefficient(i, j) if i >= 0 and j >= 0 else 0
        mi, mj = shift - i, shift - j
        there = num.coefficient(mi, mj) if mi >= 0 and mj >= 0 else 0
        if here != sign * there:
            return CheckOutcome(False, (i, j),
                                f"coefficient {here} at ({i},{j}) vs {sign}*{there} from ({mi},{mj})")
    return CheckOutcome(True)


def check_symmetry(x: StringyRational) -> CheckOutcome:
    """u<->v symmetry of the numerator; the denominator is symmetric by
    construction.  The witness is the u-heavy member of the first bad pair."""
    num = x.numerator
    seen: set[tuple[int, int]] = set()
    for (i, j) in sorted(num.support(), key=lambda ij: (ij[0] + ij[1], min(ij), max(ij))):
        a, b = max(i, j), min(i, j)
        if a == b or (a, b) in seen:
            continue
        seen.add((a, b))
        if num.coefficient(a, b) != num.coefficient(b, a):
            return CheckOutcome(False, (a, b),
                                f"coefficient {num.coefficient(a, b)} at ({a},{b}) vs "
                                f"{num.coefficient(b, a)} at ({b},{a})")
    return CheckOutcome(True)


@dataclass(frozen=True)
class Polynomial:
    value: BivariatePolynomial


@dataclass(frozen=True)
class NotPolynomial:
    witness: tuple[int, int]
    reason: str


def is_polynomial(x: StringyRational, d: int) -> Union[Polynomial, NotPolynomial]:
    """Decide whether x is a polynomial, for the E-function of a projective
    d-fold.

    An empty canonical denominator settles it immediately.  Otherwise the
    functional equation bounds a polynomial E-function's support by (d, d),
    so expand to horizon 2d + sum(m_k): any nonzero coefficient outside that
    box refutes polynomiality with the coefficient as witness; if the box
    holds, the candidate read off the truncation must multiply back onto the
    numerator exactly, and the lowest term of the residual is the witness
    when it does not.
    """
    if isinstance(d, bool) or not isinstance(d, int) or d < 0:
        raise ValueError(f"dimension must be a nonnegative int, got {d!r}")
    if x.is_polynomial:
        return Polynomial(x.numerator)
    horizon = 2 * d + x.denominator.degree_uv()
    series = expand_rational(x, horizon)
    for (i, j), c in series.sorted_items():
        if c and (i > d or j > d):
            return NotPolynomial((i, j), f"series coefficient {c} at ({i},{j}) exceeds degree ({d},{d})")
    candidate = BivariatePolynomial({(i, j): c for (i, j), c in series.items() if i <= d and j <= d})
    residual = candidate * x.denominator.polynomial() - x.numerator
    if residual.is_zero:
        return Polynomial(candidate)
    (i, j), c = residual.sorted_items()[0]
    return NotPolynomial((i, j), f"division residual {c} at ({i},{j})")


def stringy_hodge_numbers(p: BivariatePolynomial, d: int) -> Union[HodgeDiamond, DiamondViolation]:
    """Stringy Hodge numbers h^{p,q} = (-1)^{p+q} b_{p,q} of a polynomial
    E-function, with the h^{0,0} = 1 sanity check on top of the diamond
    identities.  A violation pinpoints a nonnegativity-conjecture
    counterexample candidate in the input data."""
    if p.coefficient(0, 0) != 1:
        return DiamondViolation((0, 0), p.coefficient(0, 0), "h^{0,0} must be 1")
    return diamond_from_polynomial(p, d)


def generalized_stringy_hodge_numbers(series: TruncatedBiseries, d: int
                                      ) -> Union[HodgeDiamond, DiamondViolation]:
    """The generalized definition for a non-polynomial E-function:
    h^{i,j} := (-1)^{i+j} b_{i,j} for i+j <= d, reflected across the middle
    by h^{d-i,d-j} := h^{i,j}.

    On the line i+j = d the reflection targets (j, i), so the two
    assignments agree exactly when the series is u<->v symmetric there.
    Deliberately opt-in: the construction is heuristic, not proved.
    """
    if isinstance(d, bool) or not isinstance(d, int) or d < 0:
        raise ValueError(f"dimension must be a nonnegative int, got {d!r}")
    if series.horizon < d:
        raise ValueError(f"series horizon {series.horizon} is below the dimension {d}")
    entries: dict[tuple[int, int], int] = {}
    for i in range(d + 1):
        for j in range(d + 1 - i):
            b = series.coefficient(i, j)
            val = (-1 if (i + j) % 2 else 1) * b
            if val < 0:
                return DiamondViolation((i, j), val, "negative entry")
            entries[(i, j)] = val
    for (i, j) in sorted(entries, key=lambda ij: (ij[0] + ij[1], ij[0], ij[1])):
        if i + j == d and entries[(i, j)] != entries[(j, i)]:
            return DiamondViolation((i, j), entries[(i, j)],
                                    f"h^{{{j},{i}}} = {entries[(j, i)]} differs on the middle line")
    full = dict(entries)
    for (i, j), val in entries.items():
        full[(d - i, d - j)] = val
    return HodgeDiamond(d, full)


@dataclass(frozen=True)
class NonnegativityReport:
    dimension: int
    horizon: int
    violations: tuple[tuple[int, int, int], ...]  # (i, j, b) with i+j <= d and wrong sign
    beyond_notes: tuple[tuple[int, int, int], ...]  # same shape, i+j > d, informational

    @property
    def passed(self) -> bool:
        return not self.violations


def check_nonnegativity(series: TruncatedBiseries, d: int) -> NonnegativityReport:
    """(-1)^{i+j} b_{i,j} >= 0 for i+j <= d, the proved range.  Sign
    anomalies beyond the range are reported separately and carry no verdict:
    the bound genuinely fails there in general."""
    if isinstance(d, bool) or not isinstance(d, int) or d < 0:
        raise ValueError(f"dimension must be a nonnegative int, got {d!r}")
    if series.horizon < d:
        raise ValueError(f"series horizon {series.horizon} is below the dimension {d}")
    violations = []
    notes = []
    for (i, j), b in series.sorted_items():
        if (-1 if (i + j) % 2 else 1) * b < 0:
            if i + j <= d:
                violations.append((i, j, b))
            else:
                notes.append((i, j, b))
    return NonnegativityReport(d, series.horizon, tuple(violations), tuple(notes))


def correction_factor_series(a: int, horizon: int) -> UnivariateTSeries:
    """Series of the closed-formula factor (t - t^{a+1})/(t^{a+1} - 1) in
    t = uv:

        -t + t^{a+1} - t^{a+2} + t^{2a+2} - t^{2a+3} + ...

    (+1 at multiples of a+1, -1 one step above each, including step 0).
    At a = 0 the numerator is identically zero and so is the series.
    """
    if isinstance(a, bool) or not isinstance(a, int) or a < 0:
        raise ValueError(f"discrepancy must be a nonnegative int, got {a!r}")
    if isinstance(horizon, bool) or not isinstance(horizon, int) or horizon < 0:
        raise ValueError(f"horizon must be a nonnegative int, got {horizon!r}")
    if a == 0:
        return UnivariateTSeries(horizon)
    coeffs: dict[int, int] = {}
    e = a + 1
    for k in range(e, horizon + 1, e):
        coeffs[k] = 1
    for k in range(1, horizon + 1, e):
        coeffs[k] = -1
    return UnivariateTSeries(horizon, coeffs)


@dataclass(frozen=True)
class DecompositionRow:
    i: int
    j: int
    direct: int           # b_{i,j} from the expansion
    c_term: int           # ambient coefficient c_{i,j}
    alternating_sum: int  # sum_{k=1..j} (-1)^k sum_{|J|=k} c^J_{i-k,j-k}
    r_term: int
    s_term: int
    implied_hodge_dim: int  # (-1)^{i+j} b_{i,j} - S_{i,j}
    flagged: bool           # implied dimension negative: inconsistent input

    @property
    def decomposed(self) -> int:
        return self.c_term + self.alternating_sum + self.r_term


@dataclass(frozen=True)
class DecompositionResult:
    rows: tuple[DecompositionRow, ...]
    rejected: tuple[tuple[tuple[int, int], str], ...] = field(default_factory=tuple)


def decompose_coefficients(cfg: ResolutionConfig, pairs) -> DecompositionResult:
    """The coefficient decomposition, under strict validation.

    Pairs with i < j are answered through b_{i,j} = b_{j,i}.  R and S follow
    the boundary-case table; both sums run over components with a != 0 only,
    which silently erases the boundary cases at d = 3 (the targeted
    discrepancy is 0 there), reproducing the explicit three-dimensional
    formulas.  implied_hodge_dim reads (-1)^{i+j} b_{i,j} - S_{i,j}; it is a
    dimension of a Hodge component of middle-degree cohomology only under
    the geometric hypotheses the config format cannot express, so a negative
    value flags the row rather than raising.
    """
    _require_strict(cfg)
    d = cfg.dimension
    closed_cfg = convert_strata(cfg, "closed")
    series = expand_rational(stringy_e_closed(cfg), d)
    ambient = closed_cfg.ambient.poly

    discrepancies = {comp.label: comp.discrepancy for comp in closed_cfg.components}
    strata = {
        key: value.poly for key, value in closed_cfg.strata.items()
        if not any(discrepancies[label] == 0 for label in key)
    }
    singles = {
        key[0]: poly for key, poly in strata.items() if len(key) == 1
    }

    def boundary_terms(i: int, j: int) -> tuple[int, int]:
        if d % 2 == 0 and i == j == d // 2:
            target = d // 2 - 1
            r_at, s_at, s_sign = (0, 0), (d - 1, d - 1), 1
        elif d % 2 == 1 and i == j == (d - 1) // 2:
            target = (d - 3) // 2
            r_at, s_at, s_sign = (0, 0), (d - 1, d - 1), 1
        elif d % 2 == 1 and i == (d + 1) // 2 and j == (d - 1) // 2:
            target = (d - 3) // 2
            r_at, s_at, s_sign = (1, 0), (d - 2, d - 1), -1
        else:
            return 0, 0
        r = s = 0
        for label, poly in singles.items():
            if discrepancies[label] == target:
                r += poly.coefficient(*r_at)
                s += s_sign * poly.coefficient(*s_at)
        return r, s

    rows: list[DecompositionRow] = []
    rejected: list[tuple[tuple[int, int], str]] = []
    for pair in pairs:
        if isinstance(pair, (str, bytes)):
            rejected.append((pair, "not an (i, j) pair"))
            continue
        try:
            i, j = pair
        except (TypeError, ValueError):
            rejected.append((tuple(pair) if hasattr(pair, "__iter__") else (pair,),
                             "not an (i, j) pair"))
            continue
        if isinstance(i, bool) or isinstance(j, bool) or not isinstance(i, int) or not isinstance(j, int):
            rejected.append(((i, j), "exponents must be integers"))
            continue
        if i < 0 or j < 0:
            rejected.append(((i, j), "exponents must be nonnegative"))
            continue
        if i + j > d:
            rejected.append(((i, j), f"i + j = {i + j} exceeds the dimension {d}"))
            continue
        i, j = max(i, j), min(i, j)

        alternating = 0
        for key, poly in strata.items():
            k = len(key)
            if k > j:
                continue
            alternating += (-1 if k % 2 else 1) * poly.coefficient(i - k, j - k)
        r_term, s_term = boundary_terms(i, j)
        direct = series.coefficient(i, j)
        implied = (-1 if (i + j) % 2 else 1) * direct - s_term
        rows.append(DecompositionRow(
            i=i, j=j, direct=direct,
            c_term=ambient.coefficient(i, j),
            alternating_sum=alternating,
            r_term=r_term, s_term=s_term,
            implied_hodge_dim=implied,
            flagged=implied < 0,
        ))
    return DecompositionResult(tuple(rows), tuple(rejected))


def local_contribution(cfg: ResolutionConfig, *, formula: str = "closed") -> StringyRational:
    """The additive share of the singular locus in E_st:

        E_st = H(ambient \\ exceptional locus) + local contribution,

    so local = E_st - (ambient - H(union of components)).  Requires the
    config to carry the singular locus polynomial, since the number is
    reported alongside it and is meaningless without a designated locus.
    """
    if cfg.singular_locus is None:
        raise ValueError("local contribution needs the config's singular_locus")
    if formula == "closed":
        e = stringy_e_closed(cfg)
    elif formula == "open":
        e = stringy_e_open(cfg)
    else:
        raise ValueError(f"formula must be 'open' or 'closed', got {formula!r}")
    away = cfg.ambient.poly - exceptional_union_hd(cfg).poly
    return e - StringyRational(away)
