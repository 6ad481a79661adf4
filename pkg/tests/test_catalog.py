import json
from fractions import Fraction
from importlib import resources

import pytest

from malcev.catalog import (STRUCTURAL_KINDS, Check, IdentitySpec, load_catalog, load_manifest,
                            load_spec_file, render, safe_eval)
from malcev.parser import alphabet_for, parse

NUMBERED = [f"({i})" for i in range(1, 30)]
NAMED_GROUPS = 12


def test_manifest_matches_files():
    manifest = load_manifest()
    files = {p.name[:-5] for p in (resources.files("malcev") / "catalog").iterdir()
             if p.name.endswith(".json") and p.name != "manifest.json"}
    assert len(manifest["order"]) == len(set(manifest["order"]))
    assert set(manifest["order"]) == files


def test_manifest_groups_complete():
    groups = load_manifest()["groups"]
    for key in NUMBERED:
        assert groups.get(key), f"no catalog entry for {key}"
    named = [k for k in groups if k not in NUMBERED]
    assert len(named) == NAMED_GROUPS and all(groups[k] for k in named)
    grouped = {i for ids in groups.values() for i in ids}
    assert grouped == set(load_manifest()["order"])


def test_items_load_and_render():
    items = load_catalog()
    assert [it.id for it in items] == load_manifest()["order"]
    for item in items:
        assert item.source and item.title
        for check in item.checks:
            if check.kind is not None:
                assert check.kind in STRUCTURAL_KINDS
                continue
            insts = check.instances(0, 2)
            assert insts, item.id
            for inst in insts:
                lhs, rhs = render(check.lhs, inst.names), render(check.rhs, inst.names)
                alpha = alphabet_for(lhs, rhs)
                parse(lhs, alpha), parse(rhs, alpha)


def test_safe_eval():
    assert safe_eval("3*n+1", {"n": 2}) == 7
    assert safe_eval("n/2", {"n": 3}) == Fraction(3, 2)
    assert safe_eval("rep('x ', 2)", {}) == "x x "
    assert safe_eval("1 <= n < 3 and not n == 2", {"n": 1}) is True
    with pytest.raises(NameError):
        safe_eval("m", {})
    with pytest.raises(ValueError):
        safe_eval("__import__('os')", {})


def test_render():
    assert render("{6**n}*J(x,y,z){rep(' x', n)}", {"n": 2}) == "36*J(x,y,z) x x"
    assert render("{n/2}", {"n": 4}) == "2"
    with pytest.raises(ValueError):
        render("{n", {"n": 1})


def test_parameter_expansion():
    chk = Check.from_json({"lhs": "x", "params": {
        "n": {"type": "int", "min": 1},
        "s": {"type": "opword", "ops": ["a", "b"], "max": 1},
        "f": {"type": "monomial", "letters": ["x", "y"], "degree": [1, 2]},
        "c": {"type": "choice", "values": ["u", "v"]},
        "p": {"type": "pair", "values": ["x", "y", "z"]}}, "where": "n + s_len <= 2"})
    insts = chk.instances(0, 2)
    labels = {(i.label["n"], i.label["s"]) for i in insts}
    assert labels == {(1, "id"), (2, "id"), (1, "a"), (1, "b")}
    assert len(insts) == 4 * 3 * 2 * 3
    assert insts[0].names["pmax"] == 2


def test_check_validation():
    with pytest.raises(ValueError):
        Check.from_json({"lhs": "x", "mode": "guess"})
    with pytest.raises(ValueError):
        Check.from_json({"kind": "magic"})
    with pytest.raises(ValueError):
        IdentitySpec.from_json({"id": "a", "title": "", "source": "", "checks": []})


def test_spec_file_defaults(tmp_path):
    p = tmp_path / "one.json"
    p.write_text(json.dumps({"id": "mine", "checks": [{"lhs": "x y", "rhs": "-y x"}]}))
    (item,) = load_spec_file(p)
    assert item.title == "mine" and item.source == ""
