"""
Tests for run configs, presets and report helpers.
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cli import RunConfig, format_config, load_config, parse_config
from cli.presets import load_preset, preset_names
from cli.reports import OutputDirectory, RunReport, output_stem
from components.errors import ConfigError, GatedRunError

POLY = """
# quadratic with two seeds
function = poly
roots = 1; -1
seeds = 2,0.5; -1.5,-0.3
dps = 30
"""


class TestParse:
    def test_basic(self):
        config = parse_config(POLY)
        assert config.function == "poly"
        assert config.roots == ("1", "-1")
        assert config.seeds == ((2.0, 0.5), (-1.5, -0.3))
        assert config.digits == 30

    def test_default_digits(self):
        assert parse_config("function=xi").digits == 100
        assert parse_config("function=sin").digits == 50

    def test_fractions_and_imaginary_unit(self):
        config = parse_config("function=poly\nroots=0.5+14i;0.5-14i\nseed_spacing=1/30")
        assert config.roots == ("0.5+14j", "0.5-14j")
        assert config.seed_spacing == 1 / 30

    def test_names_normalized(self):
        config = parse_config("function=xi\nmethod=Random_Relaxed\ncomparators=newton;NU")
        assert config.method == "random-relaxed"
        assert config.comparators == ("newton", "nu")

    def test_empty_value_resets(self):
        base = parse_config("function=poly\nroots=1;-1\ncomparators=newton\nmax_iter=5")
        config = parse_config("comparators=\nmax_iter=", base)
        assert config.comparators == ()
        assert config.max_iter == 30
        assert config.roots == ("1", "-1")

    @pytest.mark.parametrize("text, key", [
        ("dps=abc", "dps"),
        ("nx=0", "nx"),
        ("method=secant", "method"),
        ("function=gamma", "function"),
        ("deltas=0,1", "deltas"),
        ("function=sin\nx_min=3\nx_max=1", "x_min"),
        ("function=sin\ngamma0=1.5", "gamma0"),
        ("function=sin\nrect=0,1,2", "rect"),
        ("function=sin\nt_lo=14", "t_hi"),
        ("function=poly", "roots"),
        ("function=poly\nroots=1\ncoefficients=1;0;-1", "coefficients"),
        ("function=ht\nheat_t=0.7", "heat_t"),
        ("colour=red", "colour"),
    ])
    def test_invalid_names_key(self, text, key):
        with pytest.raises(ConfigError) as info:
            parse_config(text)
        assert info.value.key == key

    def test_line_without_equals(self):
        with pytest.raises(ConfigError, match="line 2"):
            parse_config("function=sin\nnx 5")

    def test_load_missing_file(self, tmp_path):
        with pytest.raises(ConfigError, match="cannot read config"):
            load_config(tmp_path / "missing.cfg")


class TestFormat:
    def test_round_trip(self):
        config = parse_config(
            "function=xi\nroots=0.5+14.134725j;0.5-14.134725j\nmethod=relaxed\nalpha=0.5+0.25j\n"
            "comparators=newton;bnqn\ndeltas=0,0.5,-1.25\ntheta=2\ngrad_tol=1e-30\ndps=40\n"
            "rect=-1,2,1,31\nt_lo=14\nt_hi=31\nseeds=0,14;0,21.5\nvoronoi_render=true\nworkers=3\n"
            "extra_sites=1+2j\nseed_height=100\nseed_spacing=1/30\n"
        )
        assert parse_config(format_config(config)) == config

    def test_every_key_written(self):
        text = format_config(RunConfig(function="sin"))
        assert text.splitlines()[0] == "preset="
        assert "dps=" in text.splitlines()
        assert parse_config(text) == RunConfig(function="sin")

    @settings(max_examples=100)
    @given(
        theta=st.floats(min_value=0, max_value=1e6, allow_nan=False),
        nx=st.integers(min_value=1, max_value=10_000),
        seeds=st.lists(st.tuples(st.floats(-1e12, 1e12), st.floats(-1e12, 1e12)), max_size=4),
    )
    def test_round_trip_property(self, theta, nx, seeds):
        config = RunConfig(function="sin", theta=theta, nx=nx, seeds=tuple(seeds))
        assert parse_config(format_config(config)) == config


class TestGate:
    @pytest.mark.parametrize("text", ["seed_height=1e9", "seeds=0,20000", "t_lo=0\nt_hi=1e5"])
    def test_gated(self, text):
        config = parse_config("function=xi\n" + text)
        with pytest.raises(GatedRunError, match="gated: long-running"):
            config.check_gate(allow_long=False)
        config.check_gate(allow_long=True)

    def test_not_gated(self):
        parse_config("function=xi\nseed_height=1e4\nseeds=0,-9000").check_gate(allow_long=False)

    def test_overrides_skip_none(self):
        config = parse_config(POLY).with_overrides(seed=4, out=None, workers=None)
        assert config.seed == 4
        assert config.out == "out"


class TestPresets:
    def test_names(self):
        names = preset_names()
        assert names == sorted(names)
        assert {"fig1", "exp1", "exp2", "exp3", "exp4"} <= set(names)

    @pytest.mark.parametrize("name", preset_names())
    def test_every_preset_loads(self, name):
        preset = load_preset(name)
        assert preset.config.preset == name
        assert preset.kind in ("basins", "seeds")
        assert preset.description

    def test_fig1(self):
        config = load_preset("fig1").config
        assert config.function == "poly"
        assert len(config.roots) == 8
        assert config.comparators == ("newton", "random-relaxed")
        assert config.voronoi_render
        assert (config.nx, config.ny, config.y_render_scale) == (250, 250, 0.1)

    def test_exp2_is_gated(self):
        config = load_preset("exp2").config
        assert config.seed_height == 1e9
        assert config.seed_spacing == 1 / 30
        with pytest.raises(GatedRunError):
            config.check_gate(allow_long=False)

    def test_unknown(self):
        with pytest.raises(ConfigError, match="unknown preset"):
            load_preset("exp9")


class TestReports:
    def test_output_stem(self):
        assert output_stem("basins", "random-relaxed") == "basins-random-relaxed"
        assert output_stem("Voronoi", None, "Extended") == "voronoi-extended"

    def test_report_ends_with_config(self):
        config = parse_config(POLY)
        text = RunReport("title").field("seeds", 2).section("Rows").table(["a", "bb"], [[1, 2]]).render(config)
        lines = text.splitlines()
        assert lines[:2] == ["title", "====="]
        assert "seeds: 2" in lines
        assert "a  bb" in lines
        assert text.endswith(format_config(config))

    def test_output_directory(self, tmp_path):
        out = OutputDirectory(tmp_path / "nested" / "run")
        out.write_csv("rows.csv", ["x", "y"], [[1, 2], [3, 4]])
        out.write_bytes("blob.bin", b"\x00\x01")
        assert (tmp_path / "nested" / "run" / "rows.csv").read_text() == "x,y\n1,2\n3,4\n"
        assert [p.name for p in out.files] == ["rows.csv", "blob.bin"]
