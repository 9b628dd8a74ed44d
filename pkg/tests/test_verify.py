import pytest

from orderlab.verify import CASES, load_golden, run_verification

QUICK = [
    "z5sqrt2-local-units",
    "z2sqrt2-not-ideal-preserving",
    "cubic-three-splits",
    "cubic-conductor-principal",
    "cubic-associated",
    "cubic-unit-indices",
    "cubic-residue-field",
    "series-association-obstruction",
    "series-degree-one-irreducible",
    "series-hfd-witness",
    "davenport-small-groups",
]


def test_golden_covers_every_case():
    golden = load_golden()
    assert [c.name for c in CASES if c.name in golden] == [c.name for c in CASES]
    assert all(g["basis"] in {"reference", "derived", "trivial"} for g in golden.values())


@pytest.mark.parametrize("name", QUICK)
def test_quick_case(name):
    suite = run_verification(only=name)
    assert suite.passed, suite.diff()


def test_wrong_expectation_is_reported(tmp_path):
    import json

    doc = {"cases": load_golden()}
    doc["cases"]["cubic-residue-field"]["expected"] = 27
    path = tmp_path / "golden.json"
    path.write_text(json.dumps(doc))
    suite = run_verification(only="cubic-residue-field", golden_path=path)
    assert not suite.passed
    assert suite.diff()[0]["computed"] == 9
