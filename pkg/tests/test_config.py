import pytest

from starcover.config import StarCoverConfig, get_config
from starcover.errors import ConfigurationError


def test_singleton():
    assert StarCoverConfig() is get_config()


def test_defaults(monkeypatch):
    for key in ("STARCOVER_SUBGROUP_LIMIT", "STARCOVER_STAR_LIMIT", "STARCOVER_LOG_LEVEL", "STARCOVER_TIMESTAMPS"):
        monkeypatch.delenv(key, raising=False)
    config = get_config()
    assert config.subgroup_order_limit == 5040
    assert config.star_degree_limit == 5
    assert config.log_level == "WARNING"
    assert config.timestamps is True


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("STARCOVER_TABLEAU_LIMIT", "7")
    monkeypatch.setenv("STARCOVER_TIMESTAMPS", "false")
    monkeypatch.setenv("STARCOVER_LOG_LEVEL", "debug")
    config = get_config()
    assert config.tableau_size_limit == 7
    assert config.timestamps is False
    assert config.log_level == "DEBUG"


def test_malformed_value(monkeypatch):
    monkeypatch.setenv("STARCOVER_PRIME_LIMIT", "many")
    with pytest.raises(ConfigurationError, match="STARCOVER_PRIME_LIMIT"):
        get_config().prime_length_limit


def test_create_default_env_file(monkeypatch, tmp_path):
    monkeypatch.setenv("HOME", str(tmp_path))
    env_file = get_config().create_default_env_file()
    assert env_file == tmp_path / ".starcover" / ".env"
    assert "STARCOVER_STAR_LIMIT=5" in env_file.read_text()
