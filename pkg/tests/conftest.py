import json

import pytest

from corpus import CURVES, make_tower  # noqa: F401


@pytest.fixture
def flagship_config(tmp_path):
    """The 11a1 flagship analysis config, on disk."""
    cfg = {
        "curve": [0, -1, 1, -10, -20],
        "d": -1,
        "p": 5,
        "n": 1,
        "ramified_sites": [{"ell": 11}],
        "dim_Sp_E_K": 0,
    }
    path = tmp_path / "flagship.json"
    path.write_text(json.dumps(cfg), encoding="utf-8")
    return path


def write_json(path, obj):
    path.write_text(json.dumps(obj), encoding="utf-8")
    return path
