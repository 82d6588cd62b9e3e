import json
from pathlib import Path

import pytest

from cotensor.chain_complex import ChainComplex
from cotensor.coalgebra import DGCoalgebra, validate_coalgebra
from cotensor.comodule import ComoduleMap, DGComodule, validate_comodule
from cotensor.field_linalg import GF3
from cotensor.formats import FIXTURE_DIR, ParseError, dumps, load, loads

FILES = sorted(p.name for p in FIXTURE_DIR.iterdir() if p.is_file())


@pytest.mark.parametrize("name", FILES)
def test_fixture_round_trip(name):
    path = FIXTURE_DIR / name
    text = path.read_text(encoding="utf-8")
    obj = load(path)
    assert dumps(obj, json.loads(text)) == text


def test_loaded_objects_validate():
    assert validate_coalgebra(load(FIXTURE_DIR / "f4.coalg"))
    x = load(FIXTURE_DIR / "cofree-s3-f2.cm")
    assert isinstance(x, DGComodule) and validate_comodule(x)
    f = load(FIXTURE_DIR / "gen-d2-s2-f2.cmap")
    assert isinstance(f, ComoduleMap) and f.is_surjective()


def test_field_override():
    c = load(FIXTURE_DIR / "f2.coalg", field=GF3)
    assert isinstance(c, DGCoalgebra) and c.field == GF3


def test_complex_from_string():
    x = loads('{"kind": "complex", "field": 0, "dims": [1, 1], "diff": {"1": [["1/2"]]}}', maxdeg=3)
    assert isinstance(x, ChainComplex) and x.dims == (1, 1, 0, 0)


@pytest.mark.parametrize("text,where", [
    ("{", "<string>:1"),
    ("[1]", "<string>"),
    ('{"kind": "sheaf", "field": 2}', "kind"),
    ('{"kind": "complex", "field": 4, "dims": [1]}', "field"),
    ('{"kind": "complex", "field": 2, "dims": [1, 1], "diff": {"1": [[1, 1]]}}', "diff.1"),
    ('{"kind": "complex", "field": 2, "dims": [1, 1], "diff": {"x": [[1]]}}', "diff.x"),
    ('{"kind": "complex", "field": 2, "dims": [1, 1], "diff": {"1": [[0.5]]}}', "diff.1"),
    ('{"kind": "comodule", "field": 2, "coalgebra": "nowhere.coalg", "dims": [1]}', "coalgebra"),
])
def test_parse_errors_name_the_location(text, where):
    with pytest.raises(ParseError) as e:
        loads(text, maxdeg=4)
    assert where in e.value.where


def test_entries_above_window_rejected():
    with pytest.raises(ParseError):
        loads('{"kind": "complex", "field": 2, "dims": [0, 0, 0, 1]}', maxdeg=2)


def test_bad_differential_is_reported_at_its_degree():
    x = loads('{"kind": "complex", "field": 2, "dims": [1, 1, 1], "diff": {"1": [[1]], "2": [[1]]}}', maxdeg=3)
    from cotensor.chain_complex import validate_complex
    r = validate_complex(x)
    assert not r and r.degree == 2


def test_missing_file():
    with pytest.raises(ParseError):
        load(Path("/nonexistent/x.coalg"))
