"""The input data model: exceptional components with discrepancies and a
sparse strata table, plus validation, strata-convention conversion, and the
JSON interchange format.

Strata are keyed by sorted tuples of component labels.  An absent key means
the intersection is empty (H = 0); nothing is ever stored densely, and every
lattice walk enumerates only stored keys and their subsets.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Union

from .exact_poly import BivariatePolynomial, decode_json_int, encode_json_int
from .hodge import HodgeDelignePolynomial, validate_smooth_projective
from .validation import ConfigFormatError, Finding, ValidationReport

StratumKey = tuple[str, ...]

DEFAULT_COMPONENT_CAP = 24


@dataclass(frozen=True)
class Component:
    label: str
    discrepancy: int  # validated, not enforced: see validate()


class ResolutionConfig:
    """Immutable bundle of dimension, ambient H, components, and strata.

    The constructor enforces structure only (key shape, convention flag);
    semantic requirements (label uniqueness, discrepancy range, symmetry) are
    findings from :func:`validate`, so that deliberately broken inputs can be
    represented and reported on.
    """

    __slots__ = ("_dimension", "_ambient", "_components", "_convention", "_strata", "_singular_locus")

    def __init__(self, dimension: int, ambient: HodgeDelignePolynomial,
                 components: list[Component], convention: str,
                 strata: Mapping, singular_locus: Union[HodgeDelignePolynomial, None] = None):
        if isinstance(dimension, bool) or not isinstance(dimension, int) or dimension < 1:
            raise ValueError(f"dimension must be an int >= 1, got {dimension!r}")
        if convention not in ("open", "closed"):
            raise ValueError(f"strata convention must be 'open' or 'closed', got {convention!r}")
        if not isinstance(ambient, HodgeDelignePolynomial):
            raise TypeError("ambient must be a HodgeDelignePolynomial")
        comps = tuple(components)
        for comp in comps:
            if not isinstance(comp, Component):
                raise TypeError(f"components must be Component instances, got {comp!r}")
        table: dict[StratumKey, HodgeDelignePolynomial] = {}
        for key, value in strata.items():
            key = _canonical_key(key)
            if not isinstance(value, HodgeDelignePolynomial):
                raise TypeError(f"stratum {key} must map to a HodgeDelignePolynomial")
            if key in table:
                raise ValueError(f"duplicate stratum key {key}")
            if not value.is_zero:  # absent and zero are the same stratum
                table[key] = value
        if singular_locus is not None and not isinstance(singular_locus, HodgeDelignePolynomial):
            raise TypeError("singular_locus must be a HodgeDelignePolynomial or None")
        self._dimension = dimension
        self._ambient = ambient
        self._components = comps
        self._convention = convention
        self._strata = table
        self._singular_locus = singular_locus

    @property
    def dimension(self) -> int:
        return self._dimension

    @property
    def ambient(self) -> HodgeDelignePolynomial:
        return self._ambient

    @property
    def components(self) -> tuple[Component, ...]:
        return self._components

    @property
    def convention(self) -> str:
        return self._convention

    @property
    def strata(self) -> dict[StratumKey, HodgeDelignePolynomial]:
        return dict(self._strata)

    @property
    def singular_locus(self) -> Union[HodgeDelignePolynomial, None]:
        return self._singular_locus

    def stratum(self, key) -> HodgeDelignePolynomial:
        """H of the stratum for a label subset; absent keys are zero."""
        return self._strata.get(_canonical_key(key),
                                HodgeDelignePolynomial(BivariatePolynomial.zero()))

    def discrepancy(self, label: str) -> int:
        for comp in self._components:
            if comp.label == label:
                return comp.discrepancy
        raise KeyError(f"unknown component label {label!r}")

    def replace(self, **changes) -> "ResolutionConfig":
        fields = {
            "dimension": self._dimension,
            "ambient": self._ambient,
            "components": list(self._components),
            "convention": self._convention,
            "strata": self._strata,
            "singular_locus": self._singular_locus,
        }
        fields.update(changes)
        return ResolutionConfig(**fields)


def _canonical_key(key) -> StratumKey:
    if isinstance(key, str):
        parts = [key]
    else:
        parts = list(key)
    for label in parts:
        if not isinstance(label, str) or not label:
            raise ValueError(f"stratum key labels must be nonempty strings, got {key!r}")
    if len(set(parts)) != len(parts):
        raise ValueError(f"stratum key {key!r} repeats a label")
    return tuple(sorted(parts))


def _nonempty_subsets(key: StratumKey):
    n = len(key)
    for mask in range(1, 1 << n):
        yield tuple(key[b] for b in range(n) if mask >> b & 1)


def convert_strata(cfg: ResolutionConfig, target: str) -> ResolutionConfig:
    """Convert the strata table between the open and closed conventions by
    inclusion-exclusion over the subset lattice:

        closed H(D_I) = sum over stored J >= I of open H(D_J)
        open H(D_I)   = sum over stored J >= I of (-1)^{|J|-|I|} closed H(D_J)

    Only subsets of stored keys can acquire nonzero values, so the walk
    enumerates exactly those; round-tripping is the identity.
    """
    if target not in ("open", "closed"):
        raise ValueError(f"strata convention must be 'open' or 'closed', got {target!r}")
    if cfg.convention == target:
        return cfg
    acc: dict[StratumKey, HodgeDelignePolynomial] = {}
    for stored_key, value in cfg.strata.items():
        for sub in _nonempty_subsets(stored_key):
            if target == "open" and (len(stored_key) - len(sub)) % 2:
                term = HodgeDelignePolynomial(-value.poly, value.claimed_dimension)
            else:
                term = value
            acc[sub] = (acc[sub] + term) if sub in acc else term
    table = {key: val for key, val in acc.items() if not val.is_zero}
    return cfg.replace(convention=target, strata=table)


def component_closed_hd(cfg: ResolutionConfig, label: str) -> HodgeDelignePolynomial:
    """H(D_label) in the closed convention, converting if needed."""
    cfg.discrepancy(label)  # raises KeyError for unknown labels
    closed = convert_strata(cfg, "closed")
    h = closed.stratum((label,))
    return HodgeDelignePolynomial(h.poly, None)


def exceptional_union_hd(cfg: ResolutionConfig) -> HodgeDelignePolynomial:
    """H of the union of all components, by inclusion-exclusion over the
    stored closed strata."""
    closed = convert_strata(cfg, "closed")
    total = BivariatePolynomial.zero()
    for key, value in closed.strata.items():
        total = total + (value.poly if len(key) % 2 else -value.poly)
    return HodgeDelignePolynomial(total)


def validate(cfg: ResolutionConfig, mode: str = "lenient", *,
             max_components: int = DEFAULT_COMPONENT_CAP) -> ValidationReport:
    """Semantic validation.

    Lenient mode admits any formally consistent table: unique labels,
    integer discrepancies >= 0, u<->v symmetric polynomials, strata keyed by
    declared components.  Strict mode additionally enforces the hypotheses
    under which the coefficient decomposition is proved: d >= 3, every
    discrepancy > floor((d-4)/2), and the Serre reflection on the ambient
    polynomial and every closed stratum (a necessary condition for genuinely
    geometric smooth projective input, not a sufficient one).
    """
    if mode not in ("lenient", "strict"):
        raise ValueError(f"validation mode must be 'lenient' or 'strict', got {mode!r}")
    findings: list[Finding] = []
    d = cfg.dimension

    seen_labels: set[str] = set()
    for comp in cfg.components:
        label = comp.label
        if not isinstance(label, str) or not label or "," in label:
            findings.append(Finding("error", "bad-label",
                                    f"label must be a nonempty string without commas, got {label!r}",
                                    repr(label)))
            continue
        if label in seen_labels:
            findings.append(Finding("error", "duplicate-label",
                                    f"component label {label!r} declared twice", label))
        seen_labels.add(label)
        a = comp.discrepancy
        if isinstance(a, bool) or not isinstance(a, int) or a < 0:
            findings.append(Finding("error", "bad-discrepancy",
                                    f"discrepancy of {label!r} must be an integer >= 0, got {a!r}",
                                    label))

    if len(cfg.components) > max_components:
        findings.append(Finding("error", "too-many-components",
                                f"{len(cfg.components)} components exceed the cap of {max_components} "
                                f"(subset enumeration cost)", ""))

    used_labels: set[str] = set()
    for key in cfg.strata:
        used_labels.update(key)
        unknown = [label for label in key if label not in seen_labels]
        if unknown:
            findings.append(Finding("error", "unknown-label",
                                    f"stratum key {','.join(key)} references undeclared {unknown}",
                                    ",".join(key)))
    for comp in cfg.components:
        if comp.label in seen_labels and comp.label not in used_labels:
            findings.append(Finding("warning", "unused-component",
                                    f"component {comp.label!r} appears in no stratum", comp.label))

    named = [("ambient", cfg.ambient)] + [(",".join(k), v) for k, v in sorted(cfg.strata.items())]
    if cfg.singular_locus is not None:
        named.append(("singular_locus", cfg.singular_locus))
    for name, h in named:
        if not h.poly.is_uv_symmetric():
            findings.append(Finding("error", "uv-asymmetry",
                                    f"polynomial of {name} is not symmetric in u and v", name))

    if cfg.singular_locus is not None and not cfg.singular_locus.poly.is_zero:
        if cfg.singular_locus.poly != BivariatePolynomial.constant(
                cfg.singular_locus.poly.coefficient(0, 0)):
            findings.append(Finding("warning", "nonisolated-locus",
                                    "singular locus is not a finite set of points; local-contribution "
                                    "reporting follows the isolated-case convention only",
                                    "singular_locus"))

    if mode == "strict":
        structural = any(f.severity == "error" for f in findings)
        if d < 3:
            findings.append(Finding("error", "dimension-too-small",
                                    f"strict mode requires dimension >= 3, got {d}", ""))
        bound = (d - 4) // 2
        for comp in cfg.components:
            a = comp.discrepancy
            if isinstance(a, int) and not isinstance(a, bool) and a >= 0 and a <= bound:
                findings.append(Finding("error", "discrepancy-bound",
                                        f"discrepancy {a} of {comp.label!r} violates the bound "
                                        f"> floor((d-4)/2) = {bound} at dimension {d}", comp.label))
        if not structural and d >= 3:
            closed = convert_strata(cfg, "closed")
            for name, h, dim in [("ambient", cfg.ambient, d)] + [
                (",".join(k), v, d - len(k)) for k, v in sorted(closed.strata.items())
            ]:
                if dim < 0:
                    findings.append(Finding("error", "serre-reflection",
                                            f"stratum {name} is an intersection deeper than the dimension",
                                            name))
                    continue
                report = validate_smooth_projective(h, dim)
                for f in report.findings:
                    if f.code == "serre-reflection":
                        findings.append(Finding("error", "serre-reflection",
                                                f"closed stratum {name} at dimension {dim}: {f.message}",
                                                name))
    return ValidationReport(mode=mode, findings=tuple(findings))


# -- JSON interchange ---------------------------------------------------------

_CONFIG_FIELDS = {"dimension", "ambient", "components", "strata_convention", "strata", "singular_locus"}
_REQUIRED_FIELDS = {"dimension", "ambient", "components", "strata_convention", "strata"}
_COMPONENT_FIELDS = {"label", "discrepancy"}


def _poly_from_triples(raw, where: str) -> BivariatePolynomial:
    if not isinstance(raw, list):
        raise ConfigFormatError(f"{where}: expected a list of [i, j, c] triples")
    terms: dict[tuple[int, int], int] = {}
    for entry in raw:
        if not isinstance(entry, list) or len(entry) != 3:
            raise ConfigFormatError(f"{where}: each term must be a triple [i, j, c], got {entry!r}")
        i, j, c = entry
        if isinstance(i, bool) or isinstance(j, bool) or not isinstance(i, int) or not isinstance(j, int):
            raise ConfigFormatError(f"{where}: exponents must be integers, got {entry!r}")
        if i < 0 or j < 0:
            raise ConfigFormatError(f"{where}: exponents must be nonnegative, got {entry!r}")
        try:
            c = decode_json_int(c)
        except ValueError as exc:
            raise ConfigFormatError(f"{where}: {exc}") from None
        if c == 0:
            raise ConfigFormatError(f"{where}: zero coefficient at ({i},{j}) must be omitted")
        if (i, j) in terms:
            raise ConfigFormatError(f"{where}: duplicate exponent pair ({i},{j})")
        terms[(i, j)] = c
    return BivariatePolynomial(terms)


def _poly_to_triples(p: BivariatePolynomial) -> list:
    return [[i, j, encode_json_int(c)] for (i, j), c in p.sorted_items()]


def load_config(source: Union[str, Path, Mapping]) -> ResolutionConfig:
    """Build a ResolutionConfig from the interchange format: a JSON file path
    or an already-decoded mapping.  Parsing is strict; unknown fields and
    malformed shapes raise ConfigFormatError so typos cannot pass silently.
    """
    if isinstance(source, (str, Path)):
        text = Path(source).read_text()
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigFormatError(f"invalid JSON: {exc}") from None
    else:
        data = source
    if not isinstance(data, Mapping):
        raise ConfigFormatError("config must be a JSON object")

    unknown = set(data) - _CONFIG_FIELDS
    if unknown:
        raise ConfigFormatError(f"unknown config fields: {sorted(unknown)}")
    missing = _REQUIRED_FIELDS - set(data)
    if missing:
        raise ConfigFormatError(f"missing config fields: {sorted(missing)}")

    dimension = data["dimension"]
    if isinstance(dimension, bool) or not isinstance(dimension, int) or dimension < 1:
        raise ConfigFormatError(f"dimension must be an integer >= 1, got {dimension!r}")

    convention = data["strata_convention"]
    if convention not in ("open", "closed"):
        raise ConfigFormatError(f"strata_convention must be 'open' or 'closed', got {convention!r}")

    raw_components = data["components"]
    if not isinstance(raw_components, list):
        raise ConfigFormatError("components must be a list")
    components: list[Component] = []
    for idx, raw in enumerate(raw_components):
        if not isinstance(raw, Mapping):
            raise ConfigFormatError(f"components[{idx}] must be an object")
        extra = set(raw) - _COMPONENT_FIELDS
        if extra:
            raise ConfigFormatError(f"components[{idx}]: unknown fields {sorted(extra)}")
        if set(raw) != _COMPONENT_FIELDS:
            raise ConfigFormatError(f"components[{idx}]: needs exactly 'label' and 'discrepancy'")
        label = raw["label"]
        if not isinstance(label, str):
            raise ConfigFormatError(f"components[{idx}]: label must be a string")
        a = raw["discrepancy"]
        if isinstance(a, bool) or not isinstance(a, int):
            raise ConfigFormatError(f"components[{idx}]: discrepancy must be an integer, got {a!r}")
        components.append(Component(label, a))

    raw_strata = data["strata"]
    if not isinstance(raw_strata, Mapping):
        raise ConfigFormatError("strata must be an object keyed by comma-joined sorted labels")
    strata: dict[StratumKey, HodgeDelignePolynomial] = {}
    for raw_key, triples in raw_strata.items():
        if not isinstance(raw_key, str) or not raw_key:
            raise ConfigFormatError(f"stratum key must be a nonempty string, got {raw_key!r}")
        labels = raw_key.split(",")
        if any(not lab for lab in labels):
            raise ConfigFormatError(f"stratum key {raw_key!r} has an empty label")
        if labels != sorted(labels):
            raise ConfigFormatError(f"stratum key {raw_key!r} is not sorted")
        if len(set(labels)) != len(labels):
            raise ConfigFormatError(f"stratum key {raw_key!r} repeats a label")
        poly = _poly_from_triples(triples, f"strata[{raw_key!r}]")
        strata[tuple(labels)] = HodgeDelignePolynomial(poly)

    ambient = HodgeDelignePolynomial(_poly_from_triples(data["ambient"], "ambient"),
                                     claimed_dimension=dimension)
    singular = None
    if "singular_locus" in data:
        singular = HodgeDelignePolynomial(_poly_from_triples(data["singular_locus"], "singular_locus"))

    return ResolutionConfig(dimension, ambient, components, convention, strata, singular)


def config_to_dict(cfg: ResolutionConfig) -> dict:
    """The inverse of load_config, emitting the interchange shape."""
    out: dict = {
        "dimension": cfg.dimension,
        "ambient": _poly_to_triples(cfg.ambient.poly),
        "components": [{"label": c.label, "discrepancy": c.discrepancy} for c in cfg.components],
        "strata_convention": cfg.convention,
        "strata": {",".join(key): _poly_to_triples(val.poly) for key, val in sorted(cfg.strata.items())},
    }
    if cfg.singular_locus is not None:
        out["singular_locus"] = _poly_to_triples(cfg.singular_locus.poly)
    return out
