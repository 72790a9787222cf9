"""
"""
import pytest

from boolmeas import RunConfig, get_preset_config


def test_yaml_roundtrip(tmp_path):
    cfg = RunConfig(description="roundtrip test", seed=7, multiset_cap=9)
    p = tmp_path / "t.yml"
    cfg.to_yaml(str(p))
    cfg2 = RunConfig.from_yaml(str(p))
    assert cfg2.description == "roundtrip test"
    assert cfg2.seed == 7
    assert cfg2.multiset_cap == 9
    assert cfg2 == cfg


def test_from_dict_ignores_unknown_keys():
    cfg = RunConfig.from_dict({"seed": 3, "title": "left over from elsewhere"})
    assert cfg.seed == 3


def test_presets_are_independent_copies():
    quick = get_preset_config("quick")
    quick.update(seed=11)
    assert get_preset_config("quick").seed == 0
    assert quick.multiset_cap <= get_preset_config("default").multiset_cap


def test_update_skips_none_and_revalidates():
    cfg = RunConfig()
    cfg.update(seed=None, output_format="json")
    assert cfg.seed == 0
    assert cfg.output_format == "json"
    with pytest.raises(ValueError):
        cfg.update(multiset_cap=13)


def test_unknown_preset():
    with pytest.raises(ValueError, match="Unknown preset"):
        get_preset_config("gigantic")


def test_bad_output_format():
    with pytest.raises(ValueError, match="Unknown output format"):
        RunConfig(output_format="xml")
