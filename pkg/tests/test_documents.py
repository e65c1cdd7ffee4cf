import json

import pytest

from cohsite.algebra import FiniteAlgebra, MonomialAlgebra, find_isomorphism, zmod
from cohsite.catalog import truncated_monomial
from cohsite.documents import dump, load_algebra, load_module, read_document
from cohsite.errors import AxiomError, DocumentError

from conftest import EXAMPLES


def z2_doc(**changes):
    doc = {"kind": "ring", "carrier": ["0", "1"], "mul": [["0", "0"], ["0", "1"]],
           "add": [["0", "1"], ["1", "0"]], "zero": "0", "one": "1"}
    doc.update(changes)
    return doc


def test_examples_load():
    assert find_isomorphism(load_algebra(EXAMPLES / "z6.json"), zmod(6)) is not None
    assert isinstance(load_algebra(EXAMPLES / "f1xy.json"), MonomialAlgebra)
    T = load_algebra(EXAMPLES / "trunc3.json")
    assert find_isomorphism(T, truncated_monomial(3)) is not None
    D = load_algebra(EXAMPLES / "diamond.json")
    assert D.kind == "lattice" and D.n == 4


def test_module_examples():
    M = load_module(EXAMPLES / "z6_mod2.json")
    assert M.label == "Z/2" and M.n == 2
    assert load_module(EXAMPLES / "z6_zero.json").is_zero
    assert load_module(EXAMPLES / "trunc3_quot.json").n > 1


def test_inline_json_string():
    R = load_algebra(json.dumps(z2_doc()))
    assert isinstance(R, FiniteAlgebra) and R.n == 2


@pytest.mark.parametrize("doc, where", [
    ({"carrier": ["0"]}, "algebra: missing field 'kind'"),
    ({"kind": "field"}, "algebra.kind"),
    (z2_doc(mul=[["0", "0"]]), "algebra.mul: expected 2 rows"),
    (z2_doc(mul=[["0", "0"], ["0", "7"]]), "algebra.mul[1][1]: unknown element '7'"),
    (z2_doc(one="u"), "algebra.one"),
    (z2_doc(carrier=["0", "0"]), "algebra.carrier"),
    ({"kind": "monomial", "variables": ["x"], "inverted": ["y"]}, "algebra.inverted"),
])
def test_errors_name_their_location(doc, where):
    with pytest.raises(DocumentError) as exc:
        load_algebra(doc)
    assert str(exc.value).startswith(where)


def test_syntax_error_has_line_and_column(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{\n  "kind": "ring",\n  "carrier" ["0"]\n}\n')
    with pytest.raises(DocumentError) as exc:
        read_document(bad)
    assert exc.value.location == f"{bad}:3:13"


def test_missing_file():
    with pytest.raises(DocumentError, match="cannot read"):
        read_document("no/such/file.json")


def test_axiom_failure_is_not_a_document_error():
    # a non-associative table parses but fails validation
    doc = z2_doc(add=[["0", "1"], ["1", "1"]], mul=[["0", "0"], ["0", "1"]])
    with pytest.raises(AxiomError):
        load_algebra(doc)


def test_module_paths_resolve_against_document(tmp_path):
    (tmp_path / "z2.json").write_text(json.dumps(z2_doc()))
    (tmp_path / "m.json").write_text(json.dumps({"kind": "module", "algebra": "z2.json", "regular": True}))
    assert load_module(tmp_path / "m.json").n == 2


def test_module_errors():
    with pytest.raises(DocumentError, match="module.action"):
        load_module({"kind": "module", "algebra": z2_doc(), "carrier": ["0"], "action": [["0"]]})
    with pytest.raises(DocumentError, match="module.quotient"):
        load_module({"kind": "module", "algebra": z2_doc(), "quotient": [["0", "9"]]})


def test_finite_monomial_relations():
    T = load_algebra({"kind": "monomial", "variables": ["x", "y"], "truncation": {"x": 2, "y": 2},
                      "relations": [["x*y", "0"]]})
    assert sorted(T.names) == ["0", "1", "x", "y"]


def test_dump_is_sorted():
    assert dump({"b": 1, "a": [1, 2]}) == '{\n  "a": [\n    1,\n    2\n  ],\n  "b": 1\n}\n'
