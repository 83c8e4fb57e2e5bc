import json
from pathlib import Path

import pytest

from gerber import registry
from gerber.specfile import SpecFileError, load_spec, spec_from_dict, spec_to_dict

DATA = Path(__file__).parent / "data"


def test_load_heisenberg_file():
    spec, theta = load_spec(DATA / "heisenberg.json")
    ref, _ = registry.get("heisenberg")
    assert spec.structure_vector(0, 1) == ref.structure_vector(0, 1)
    assert spec.frame == ref.frame
    assert spec.name == "heisenberg"
    assert not any(theta)


@pytest.mark.parametrize("name", list(registry.NAMES))
def test_round_trip(name):
    spec, theta = registry.get(name)
    doc = spec_to_dict(spec, theta)
    back, theta2 = spec_from_dict(json.loads(json.dumps(doc)))
    assert spec_to_dict(back, theta2) == doc
    assert back.anchor == spec.anchor
    assert tuple(theta2 or (0,) * spec.rank) == tuple(theta or (0,) * spec.rank)


@pytest.mark.parametrize(
    "doc, fragment",
    [
        ({"rank": 1}, "version"),
        ({"version": 1}, "rank"),
        ({"version": 1, "rank": -1}, "non-negative"),
        ({"version": 1, "rank": 2, "structure": {"2,1": ["0", "0"]}}, "i < j"),
        ({"version": 1, "rank": 2, "structure": {"1,2": ["0"]}}, "2 polynomials"),
        ({"version": 1, "rank": 1, "base_vars": ["x"], "anchor": [["z"]]}, "anchor[1][1]"),
        ({"version": 1, "rank": 1, "anchor": [["1"]]}, "1x0"),
        ({"version": 1, "rank": 1, "connection": {"theta": []}}, "theta"),
        ({"version": 1, "rank": 2, "frame": ["X", "X"]}, "distinct"),
        ({"version": 1, "rank": 1, "frame": ["1bad"]}, "identifiers"),
    ],
)
def test_schema_errors(doc, fragment):
    with pytest.raises(SpecFileError, match=fragment.replace("[", r"\[").replace("]", r"\]")):
        spec_from_dict(doc)


def test_bad_json(tmp_path):
    p = tmp_path / "broken.json"
    p.write_text('{"version": 1,,}')
    with pytest.raises(SpecFileError, match="line 1"):
        load_spec(p)
