import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stringy.exact_poly import BivariatePolynomial
from stringy.hodge import HodgeDelignePolynomial, projective_space
from stringy.resolution import (
    Component,
    ResolutionConfig,
    component_closed_hd,
    config_to_dict,
    convert_strata,
    exceptional_union_hd,
    load_config,
    validate,
)
from stringy.validation import ConfigFormatError

from conftest import node_config, random_lenient_config
from oracles import (
    dict_add,
    dict_scale,
    full_lattice_closed_from_open,
    full_lattice_open_from_closed,
)


def P(terms):
    return BivariatePolynomial(terms)


def hd(terms, dim=None):
    return HodgeDelignePolynomial(P(terms), claimed_dimension=dim)


def simple_config(**overrides):
    base = dict(
        dimension=3,
        ambient=projective_space(3),
        components=[Component("A", 1), Component("B", 2)],
        convention="closed",
        strata={("A",): hd({(0, 0): 1}), ("A", "B"): hd({(0, 0): 2})},
    )
    base.update(overrides)
    return ResolutionConfig(
        base["dimension"], base["ambient"], base["components"],
        base["convention"], base["strata"],
        singular_locus=base.get("singular_locus"),
    )


class TestResolutionConfig:
    def test_keys_canonicalized(self):
        cfg = ResolutionConfig(
            3, projective_space(3), [Component("A", 1), Component("B", 1)],
            "closed", {("B", "A"): hd({(0, 0): 1})},
        )
        assert list(cfg.strata) == [("A", "B")]
        assert cfg.stratum(("B", "A")).coefficient(0, 0) == 1
        assert cfg.stratum("A").is_zero

    def test_duplicate_keys_rejected(self):
        with pytest.raises(ValueError, match="duplicate stratum key"):
            ResolutionConfig(
                3, projective_space(3), [], "closed",
                {("A", "B"): hd({(0, 0): 1}), ("B", "A"): hd({(0, 0): 2})},
            )

    def test_repeated_label_in_key_rejected(self):
        with pytest.raises(ValueError, match="repeats a label"):
            ResolutionConfig(3, projective_space(3), [], "closed",
                             {("A", "A"): hd({(0, 0): 1})})

    def test_zero_strata_dropped(self):
        cfg = ResolutionConfig(3, projective_space(3), [Component("A", 1)],
                               "closed", {("A",): hd({})})
        assert cfg.strata == {}

    def test_bad_dimension(self):
        for bad in (0, -1, True, 2.5):
            with pytest.raises((ValueError, TypeError)):
                ResolutionConfig(bad, projective_space(3), [], "closed", {})

    def test_bad_convention(self):
        with pytest.raises(ValueError):
            simple_config(convention="half-open")

    def test_discrepancy_lookup(self):
        cfg = simple_config()
        assert cfg.discrepancy("B") == 2
        with pytest.raises(KeyError):
            cfg.discrepancy("Z")

    def test_replace(self):
        cfg = simple_config()
        other = cfg.replace(dimension=4)
        assert other.dimension == 4
        assert other.strata == cfg.strata
        assert cfg.dimension == 3


class TestConvertStrata:
    def test_same_convention_is_identity(self):
        cfg = simple_config()
        assert convert_strata(cfg, "closed") is cfg

    def test_node_round_trip(self):
        cfg = node_config()
        opened = convert_strata(cfg, "open")
        back = convert_strata(opened, "closed")
        assert back.strata == cfg.strata
        assert opened.convention == "open"

    def test_closed_is_sum_of_opens(self):
        # two components meeting in a curve
        curve = hd({(0, 0): 1, (1, 1): 1})
        cfg = ResolutionConfig(
            3, projective_space(3),
            [Component("A", 1), Component("B", 1)],
            "open",
            {("A",): hd({(1, 1): 2}), ("B",): hd({(2, 2): 1}), ("A", "B"): curve},
        )
        closed = convert_strata(cfg, "closed")
        assert closed.stratum("A").poly == P({(1, 1): 2}) + curve.poly
        assert closed.stratum("B").poly == P({(2, 2): 1}) + curve.poly
        assert closed.stratum(("A", "B")).poly == curve.poly

    @settings(max_examples=60, deadline=None)
    @given(st.integers(min_value=0, max_value=10 ** 9))
    def test_round_trip_matches_full_lattice_oracle(self, seed):
        rng = random.Random(seed)
        cfg = random_lenient_config(rng)
        labels = [c.label for c in cfg.components]
        here = {k: dict(v.poly.items()) for k, v in cfg.strata.items()}
        if cfg.convention == "open":
            want = full_lattice_closed_from_open(labels, here)
            got = convert_strata(cfg, "closed")
        else:
            want = full_lattice_open_from_closed(labels, here)
            got = convert_strata(cfg, "open")
        assert {k: dict(v.poly.items()) for k, v in got.strata.items()} == want
        back = convert_strata(got, cfg.convention)
        assert back.strata == cfg.strata


class TestDerivedPolynomials:
    def test_component_closed_hd(self):
        cfg = node_config()
        assert component_closed_hd(cfg, "E1").poly == P({(0, 0): 1, (1, 1): 2, (2, 2): 1})
        with pytest.raises(KeyError):
            component_closed_hd(cfg, "nope")

    def test_exceptional_union_inclusion_exclusion(self):
        curve = {(0, 0): 1, (1, 1): 1}
        cfg = ResolutionConfig(
            3, projective_space(3),
            [Component("A", 1), Component("B", 1)],
            "closed",
            {("A",): hd({(1, 1): 2}), ("B",): hd({(2, 2): 1}), ("A", "B"): hd(curve)},
        )
        want = dict_add(
            dict_add({(1, 1): 2}, {(2, 2): 1}), dict_scale(curve, -1)
        )
        assert dict(exceptional_union_hd(cfg).poly.items()) == want

    @settings(max_examples=40, deadline=None)
    @given(st.integers(min_value=0, max_value=10 ** 9))
    def test_union_convention_independent(self, seed):
        rng = random.Random(seed)
        cfg = random_lenient_config(rng)
        other = convert_strata(cfg, "open" if cfg.convention == "closed" else "closed")
        assert exceptional_union_hd(cfg).poly == exceptional_union_hd(other).poly


class TestValidateLenient:
    def test_accepted_clean_config(self):
        report = validate(node_config())
        assert report.accepted and report.mode == "lenient"

    def test_bad_label(self):
        cfg = ResolutionConfig(3, projective_space(3),
                               [Component("", 1), Component("A,B", 1)], "closed", {})
        codes = [f.code for f in validate(cfg).errors]
        assert codes.count("bad-label") == 2

    def test_duplicate_label(self):
        cfg = ResolutionConfig(3, projective_space(3),
                               [Component("A", 1), Component("A", 2)], "closed", {})
        assert "duplicate-label" in {f.code for f in validate(cfg).errors}

    def test_bad_discrepancy(self):
        cfg = ResolutionConfig(3, projective_space(3),
                               [Component("A", -1), Component("B", True)], "closed", {})
        codes = [f.code for f in validate(cfg).errors]
        assert codes.count("bad-discrepancy") == 2

    def test_unknown_label_in_stratum(self):
        cfg = ResolutionConfig(3, projective_space(3), [Component("A", 1)],
                               "closed", {("A", "Z"): hd({(0, 0): 1})})
        assert "unknown-label" in {f.code for f in validate(cfg).errors}

    def test_uv_asymmetry(self):
        cfg = ResolutionConfig(3, hd({(1, 0): 1}, 3), [Component("A", 1)],
                               "closed", {("A",): hd({(2, 1): 1})},
                               singular_locus=hd({(1, 0): 1}))
        locations = [f.location for f in validate(cfg).errors if f.code == "uv-asymmetry"]
        assert len(locations) == 3

    def test_component_cap(self):
        comps = [Component(f"E{k}", 1) for k in range(30)]
        cfg = ResolutionConfig(3, projective_space(3), comps, "closed", {})
        assert "too-many-components" in {f.code for f in validate(cfg).errors}
        assert validate(cfg, max_components=31).accepted

    def test_unused_component_is_warning(self):
        cfg = ResolutionConfig(3, projective_space(3), [Component("A", 1)], "closed", {})
        report = validate(cfg)
        assert report.accepted
        assert "unused-component" in {f.code for f in report.warnings}

    def test_nonisolated_locus_is_warning(self):
        cfg = node_config().replace(singular_locus=hd({(0, 0): 1, (1, 1): 1}))
        report = validate(cfg)
        assert report.accepted
        assert "nonisolated-locus" in {f.code for f in report.warnings}


class TestValidateStrict:
    def test_node_passes(self):
        assert validate(node_config(), "strict").accepted

    def test_dimension_too_small(self):
        cfg = ResolutionConfig(2, projective_space(2), [], "closed", {})
        assert "dimension-too-small" in {f.code for f in validate(cfg, "strict").errors}

    def test_discrepancy_bound(self):
        # d = 5: bound is floor(1/2) = 0, so a = 0 fails and a = 1 passes
        amb = projective_space(5)
        low = ResolutionConfig(5, amb, [Component("A", 0)], "closed", {})
        assert "discrepancy-bound" in {f.code for f in validate(low, "strict").errors}
        ok = ResolutionConfig(5, amb, [Component("A", 1)], "closed", {})
        assert validate(ok, "strict").accepted

    def test_serre_checked_on_ambient_and_strata(self):
        cfg = ResolutionConfig(
            3, hd({(0, 0): 1}, 3), [Component("A", 1)],
            "closed", {("A",): hd({(0, 0): 1, (1, 1): 5})},
        )
        locations = {f.location for f in validate(cfg, "strict").errors
                     if f.code == "serre-reflection"}
        assert locations == {"ambient", "A"}

    def test_serre_skipped_when_structurally_broken(self):
        cfg = ResolutionConfig(3, hd({(0, 0): 1}, 3),
                               [Component("A", 1), Component("A", 1)], "closed", {})
        codes = {f.code for f in validate(cfg, "strict").errors}
        assert "duplicate-label" in codes
        assert "serre-reflection" not in codes

    def test_deep_intersection_rejected(self):
        labels = ["A", "B", "C", "D"]
        cfg = ResolutionConfig(
            3, projective_space(3), [Component(l, 1) for l in labels], "closed",
            {tuple(labels): hd({(0, 0): 1})},
        )
        assert not validate(cfg, "strict").accepted


class TestInterchange:
    def test_file_round_trip(self, e6_path):
        cfg = load_config(e6_path)
        again = load_config(config_to_dict(cfg))
        assert again.strata == cfg.strata
        assert again.ambient == cfg.ambient
        assert again.components == cfg.components
        assert config_to_dict(again) == config_to_dict(cfg)

    def test_singular_locus_optional(self):
        d = {
            "dimension": 3,
            "ambient": [[0, 0, 1]],
            "components": [],
            "strata_convention": "closed",
            "strata": {},
        }
        cfg = load_config(d)
        assert cfg.singular_locus is None
        assert "singular_locus" not in config_to_dict(cfg)

    def test_unknown_field(self):
        with pytest.raises(ConfigFormatError, match="unknown config fields"):
            load_config({"dimension": 3, "ambient": [], "components": [],
                         "strata_convention": "closed", "strata": {}, "extra": 1})

    def test_missing_field(self):
        with pytest.raises(ConfigFormatError, match="missing config fields"):
            load_config({"dimension": 3})

    def test_bad_dimension(self):
        with pytest.raises(ConfigFormatError, match="dimension"):
            load_config({"dimension": "3", "ambient": [[0, 0, 1]], "components": [],
                         "strata_convention": "closed", "strata": {}})

    @pytest.mark.parametrize("triples, message", [
        ({"not": "a list"}, "list of"),
        ([[0, 0]], "triple"),
        ([[0.5, 0, 1]], "integers"),
        ([[True, 0, 1]], "integers"),
        ([[-1, 0, 1]], "nonnegative"),
        ([[0, 0, 0]], "zero coefficient"),
        ([[0, 0, 1], [0, 0, 2]], "duplicate exponent pair"),
        ([[0, 0, 1.5]], "integer"),
    ])
    def test_bad_triples(self, triples, message):
        with pytest.raises(ConfigFormatError, match=message):
            load_config({"dimension": 3, "ambient": triples, "components": [],
                         "strata_convention": "closed", "strata": {}})

    @pytest.mark.parametrize("component", [
        {"label": "A"},
        {"label": "A", "discrepancy": 1, "extra": 2},
        {"label": 3, "discrepancy": 1},
        {"label": "A", "discrepancy": "one"},
        {"label": "A", "discrepancy": True},
        "A",
    ])
    def test_bad_components(self, component):
        with pytest.raises(ConfigFormatError):
            load_config({"dimension": 3, "ambient": [[0, 0, 1]], "components": [component],
                         "strata_convention": "closed", "strata": {}})

    @pytest.mark.parametrize("key", ["", "B,A", "A,,B", "A,A"])
    def test_bad_stratum_keys(self, key):
        with pytest.raises(ConfigFormatError):
            load_config({
                "dimension": 3, "ambient": [[0, 0, 1]],
                "components": [{"label": "A", "discrepancy": 1},
                               {"label": "B", "discrepancy": 1}],
                "strata_convention": "closed",
                "strata": {key: [[0, 0, 1]]},
            })

    def test_big_coefficients_round_trip(self, tmp_path):
        big = 2 ** 80
        d = {
            "dimension": 3,
            "ambient": [[0, 0, str(big)], [1, 1, -7]],
            "components": [],
            "strata_convention": "closed",
            "strata": {},
        }
        path = tmp_path / "big.json"
        path.write_text(json.dumps(d))
        cfg = load_config(path)
        assert cfg.ambient.coefficient(0, 0) == big
        emitted = config_to_dict(cfg)
        assert emitted["ambient"] == [[0, 0, str(big)], [1, 1, -7]]

    def test_invalid_json_file(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        with pytest.raises(ConfigFormatError, match="invalid JSON"):
            load_config(path)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(min_value=0, max_value=10 ** 9))
    def test_random_config_round_trip(self, seed):
        rng = random.Random(seed)
        cfg = random_lenient_config(rng)
        blob = json.dumps(config_to_dict(cfg), sort_keys=True)
        again = load_config(json.loads(blob))
        assert config_to_dict(again) == config_to_dict(cfg)
        assert again.dimension == cfg.dimension
        assert again.strata == cfg.strata
