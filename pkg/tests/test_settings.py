from pathlib import Path

import pytest

from tverberg_kit.core.errors import ConfigError
from tverberg_kit.settings import DEFAULT_RETRIES, Settings, load_settings


def test_defaults_from_empty_environment():
    s = load_settings({})
    assert s == Settings()
    assert s.retries == DEFAULT_RETRIES
    assert s.jobs == 1
    assert not s.save_traces


def test_environment_overrides():
    s = load_settings({
        "TVK_RETRIES": "3",
        "TVK_JOBS": " 4 ",
        "TVK_GEN_ATTEMPTS": "50",
        "TVK_SAVE_TRACES": "Yes",
        "TVK_TRACE_DIR": "/tmp/tvk",
        "TVK_LOG_LEVEL": "debug",
    })
    assert (s.retries, s.jobs, s.gen_attempts) == (3, 4, 50)
    assert s.save_traces
    assert s.trace_dir == Path("/tmp/tvk")
    assert s.log_level == "DEBUG"


def test_blank_values_fall_back_to_defaults():
    assert load_settings({"TVK_RETRIES": "  ", "TVK_SAVE_TRACES": "0"}) == Settings()


@pytest.mark.parametrize("name,value", [
    ("TVK_RETRIES", "many"),
    ("TVK_RETRIES", "-1"),
    ("TVK_JOBS", "0"),
    ("TVK_GEN_ATTEMPTS", "1.5"),
    ("TVK_LOG_LEVEL", "chatty"),
])
def test_malformed_values(name, value):
    with pytest.raises(ConfigError) as info:
        load_settings({name: value})
    assert info.value.name == name
