import pytest

from opbracket import instantiate_from_config
from opbracket.core import ConfigError
from opbracket.datastore import DEFAULT_DIRECTORY, ConfigObject, JSONStore, default_store
from opbracket.datastore.base import is_reference, parse_reference
from opbracket.flows import FlowSpec
from opbracket.run import RunConfig


@pytest.fixture
def store(tmp_path):
    return JSONStore(str(tmp_path / "presets"))


def flow_preset(name="slow-toda", **metadata):
    fields = {"kind": "oprl", "coeffs": [0.0, 1.0], "t_final": 0.5}
    fields.update(metadata)
    return ConfigObject(type="flows", name=name, instance="FlowSpec", metadata=fields)


def test_store_and_read_back(store):
    stored = store.store_config(flow_preset())
    assert stored.created is not None
    loaded = store.get_config("flows", "slow-toda")
    assert loaded.instance == "FlowSpec"
    assert loaded.metadata["coeffs"] == [0.0, 1.0]
    assert loaded.created == stored.created


def test_missing_preset(store):
    assert store.get_config("flows", "nothing") is None
    store.store_config(flow_preset("b"))
    store.store_config(flow_preset("a"))
    with pytest.raises(ConfigError, match="known: a, b"):
        store.require_config("flows", "nothing")


def test_entities_are_sorted(store):
    for name in ("zeta", "alpha", "mid"):
        store.store_config(flow_preset(name))
    store.store_config(ConfigObject(type="run", name="other", instance="RunConfig", metadata={"command": "verify"}))
    assert [name for name, _ in store.get_entities("flows")] == ["alpha", "mid", "zeta"]


def test_initialize_with_overwrite(store):
    store.store_config(flow_preset())
    store.initialize()
    assert store.get_entities("flows")
    store.initialize(overwrite=True)
    assert store.get_entities("flows") == []


def test_malformed_files(store, tmp_path):
    (tmp_path / "presets" / "flows_broken.json").write_text("{not json", encoding="utf-8")
    (tmp_path / "presets" / "flows_bare.json").write_text('{"metadata": {}}', encoding="utf-8")
    with pytest.raises(ConfigError):
        store.get_config("flows", "broken")
    with pytest.raises(ConfigError):
        store.get_config("flows", "bare")


def test_references():
    assert is_reference("#|:flows:toda:|#")
    assert not is_reference("flows:toda")
    assert parse_reference("#|:flows:toda:|#") == ("flows", "toda")
    with pytest.raises(ConfigError):
        parse_reference("#|:flows:|#")
    config = ConfigObject(type="run", name="x", instance="RunConfig",
                          metadata={"command": "flow", "flow": "#|:flows:toda:|#"})
    assert config.references() == [("flows", "toda")]


def test_instantiate_flow_spec(store):
    store.store_config(flow_preset())
    spec = instantiate_from_config(store.require_config("flows", "slow-toda"), store)
    assert isinstance(spec, FlowSpec)
    assert spec.t_final == 0.5


def test_instantiate_resolves_references(store):
    store.store_config(flow_preset())
    run = ConfigObject(type="run", name="custom", instance="RunConfig",
                       metadata={"command": "flow", "sizes": [3], "flow": "#|:flows:slow-toda:|#"})
    store.store_config(run)
    config = instantiate_from_config(store.require_config("run", "custom"), store)
    assert isinstance(config, RunConfig)
    assert config.flow.coeffs == [0.0, 1.0]


def test_instantiate_detects_cycles(store):
    store.store_config(ConfigObject(type="run", name="loop", instance="RunConfig",
                                    metadata={"command": "flow", "flow": "#|:run:loop:|#"}))
    with pytest.raises(ConfigError, match="cyclic"):
        instantiate_from_config(store.require_config("run", "loop"), store)


@pytest.mark.parametrize("config", [
    ConfigObject(type="nowhere", name="x", instance="FlowSpec", metadata={}),
    ConfigObject(type="flows", name="x", instance="Nothing", metadata={}),
    ConfigObject(type="flows", name="x", instance="FlowSpec", metadata={"kind": "oprl", "coeffs": [], "dt": -1}),
    ConfigObject(type="run", name="x", instance="RunConfig", metadata={"command": "flow", "flow": "#|:flows:gone:|#"}),
])
def test_instantiate_errors(store, config):
    with pytest.raises(ConfigError):
        instantiate_from_config(config, store)


def test_packaged_presets_build():
    store = JSONStore(DEFAULT_DIRECTORY)
    names = [name for name, _ in store.get_entities("run")]
    assert {"verify-oprl", "verify-opuc", "flow-toda", "flow-schur", "periodic-oprl"} <= set(names)
    for name in names:
        config = instantiate_from_config(store.require_config("run", name), store)
        assert isinstance(config, RunConfig)
    toda = instantiate_from_config(store.require_config("run", "flow-toda"), store)
    assert toda.flow.preset == "toda" and toda.family == "oprl"


def test_default_store_follows_environment(monkeypatch, tmp_path):
    monkeypatch.setenv("OPBRACKET_CONFIG_DIR", str(tmp_path))
    assert default_store().directory == str(tmp_path)
    monkeypatch.delenv("OPBRACKET_CONFIG_DIR")
    assert default_store().directory == DEFAULT_DIRECTORY
