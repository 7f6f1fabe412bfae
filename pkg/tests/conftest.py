import json
from importlib import resources
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from momentangle import io as mio

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

FIXTURES = Path(str(resources.files("momentangle") / "fixtures"))

COMPLETE_FANS = ["hopf1", "hopf2", "hopf3", "torus2", "torus4", "ce11", "ce12", "ce22",
                 "d1d1d2d2", "cp2", "cp2_ghost", "cp1_three_ghosts", "square_fan",
                 "hirzebruch1", "singular_fan", "singular_fan_ghost"]
# complete, regular, m - n even: the complex-structure pipeline applies directly
HODGE_FANS = ["hopf1", "hopf2", "hopf3", "torus2", "torus4", "ce11", "ce12", "ce22",
              "d1d1d2d2", "cp2_ghost", "cp1_three_ghosts", "square_fan", "hirzebruch1"]
POLYTOPES = ["square", "square_redundant", "square_degenerate", "simplex2", "simplex2_redundant",
             "simplex3", "prism", "cube", "pentagon", "square_pyramid", "rational_triangle",
             "d1d1d2d2_polytope"]


def load_fan(name):
    return mio.read_fan(FIXTURES / f"{name}.json")


def load_polytope(name):
    return mio.read_polytope(FIXTURES / f"{name}.json")


def load_raw(name):
    return json.loads((FIXTURES / f"{name}.json").read_text())


@pytest.fixture
def fan_loader():
    return load_fan
