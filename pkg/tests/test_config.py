"""Config loading tests: defaults, overrides, and rejection paths."""

import json

import pytest

from tetherlaunch.config import ConfigError, default_app_config, load_config


def write(tmp_path, payload) -> str:
    path = tmp_path / "config.json"
    if isinstance(payload, str):
        path.write_text(payload, encoding="utf-8")
    else:
        path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)


class TestDefaults:
    def test_no_path_gives_defaults(self):
        assert load_config(None) == default_app_config()

    def test_empty_file_gives_defaults(self, tmp_path):
        assert load_config(write(tmp_path, "")) == default_app_config()

    def test_empty_object_gives_defaults(self, tmp_path):
        assert load_config(write(tmp_path, {})) == default_app_config()

    def test_reference_values(self):
        config = default_app_config()
        assert config.system.aircraft.mass == 1.2
        assert config.system.aircraft.max_thrust == 10.0
        assert config.system.aircraft.min_cruise_speed == 7.0
        assert config.system.tether.breaking_load == 4500.0
        assert config.system.tether.breaking_elongation == 0.02
        assert config.system.spring.stiffness == 70.0
        assert config.system.spring.max_travel == 0.35
        assert config.system.winch.radius == 0.1
        assert config.system.winch.max_torque == 13.0
        assert config.system.winch.inertia == 0.1
        assert config.system.slide.equivalent_mass == 11.2
        assert config.control.slide.position_gain == 14.0
        assert config.control.slide.speed_gain == 2.5
        assert config.control.slide.torque_limit == 26.0
        assert config.control.winch.speed_gain == 1.0
        assert config.control.winch.torque_limit == 13.0
        assert config.control.outer.ffwd_gain == 1.2
        assert config.control.outer.zone_low == 0.05
        assert config.control.outer.zone_high == 0.1
        assert config.control.outer.ref_min == -10.0
        assert config.control.outer.ref_max == 120.0
        assert config.control.outer.reelin_accel == -100.0
        assert config.control.outer.reelout_accel == 30.0
        assert config.control.outer.sample_period == 0.001
        assert config.ic.position == 20.0
        assert config.ic.speed == 10.0
        assert config.ic.speed_deficit == 4.0
        assert config.takeoff.slide_travel == 3.7
        assert config.takeoff.takeoff_speed == 9.0
        assert config.takeoff.climb_angle_deg == 30.0
        assert config.dt == 1e-4


class TestOverrides:
    def test_section_override(self, tmp_path):
        path = write(tmp_path, {"spring": {"max_travel": 0.2}})
        config = load_config(path)
        assert config.system.spring.max_travel == 0.2
        assert config.system.spring.stiffness == 70.0  # untouched default

    def test_controller_and_simulation(self, tmp_path):
        path = write(tmp_path, {
            "controller": {"ffwd_gain": 0.9},
            "simulation": {"speed_deficit": 2.0, "dt": 5e-5},
        })
        config = load_config(path)
        assert config.control.outer.ffwd_gain == 0.9
        assert config.ic.speed_deficit == 2.0
        assert config.dt == 5e-5
        assert config.takeoff.dt == 5e-5

    def test_integers_accepted_as_floats(self, tmp_path):
        path = write(tmp_path, {"winch": {"max_torque": 13}})
        assert load_config(path).system.winch.max_torque == 13.0


class TestRejection:
    def test_invalid_json(self, tmp_path):
        with pytest.raises(ConfigError, match="invalid JSON"):
            load_config(write(tmp_path, "{none}"))

    def test_top_level_must_be_object(self, tmp_path):
        with pytest.raises(ConfigError, match="top level"):
            load_config(write(tmp_path, "[1, 2]"))

    def test_unknown_section(self, tmp_path):
        with pytest.raises(ConfigError, match="pulley: unknown section"):
            load_config(write(tmp_path, {"pulley": {}}))

    def test_unknown_key(self, tmp_path):
        with pytest.raises(ConfigError, match="spring.foo: unknown key"):
            load_config(write(tmp_path, {"spring": {"foo": 1.0}}))

    def test_non_numeric_value(self, tmp_path):
        with pytest.raises(ConfigError, match="spring.stiffness"):
            load_config(write(tmp_path, {"spring": {"stiffness": "stiff"}}))
        with pytest.raises(ConfigError, match="expected a number"):
            load_config(write(tmp_path, {"spring": {"stiffness": True}}))

    def test_invariant_violation_names_field_and_bound(self, tmp_path):
        with pytest.raises(ConfigError,
                           match=r"spring: max_travel must be > 0"):
            load_config(write(tmp_path, {"spring": {"max_travel": -1.0}}))

    def test_zone_thresholds_must_fit_travel(self, tmp_path):
        with pytest.raises(ConfigError, match="zone_high"):
            load_config(write(tmp_path, {"spring": {"max_travel": 0.08}}))

    def test_takeoff_speed_floor(self, tmp_path):
        with pytest.raises(ConfigError, match="takeoff_speed"):
            load_config(write(tmp_path, {"simulation": {"takeoff_speed": 6.5}}))

    def test_nonpositive_step(self, tmp_path):
        with pytest.raises(ConfigError, match="simulation.dt"):
            load_config(write(tmp_path, {"simulation": {"dt": 0.0}}))
