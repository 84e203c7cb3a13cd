import json
import math
from pathlib import Path

import pytest

import teich_coords as tc

DATA = Path(__file__).resolve().parents[2] / "data"


def test_bundled_surfaces():
    names = tc.Surface.bundled_names()
    assert "three-punctured-sphere" in names
    sphere = tc.Surface.bundled("three-punctured-sphere")
    assert sphere.signature == (0, 3, [])
    assert sorted(sphere.interior_edges) == ["e12", "e13", "e23"]
    assert not sphere.punctures_are_univalent()


def test_forward_matches_oracle_on_sphere():
    s = tc.Surface.bundled("three-punctured-sphere")
    shear = {"e12": 0.5, "e13": 0.25, "e23": -0.1}
    deco = {"v1": 0.3, "v2": -0.2, "v3": 0.1}
    lam, lengths = tc.psi_forward(s, shear, deco)
    assert lengths["v1"] == pytest.approx(0.75)
    assert lam["e12"] == pytest.approx(0.6)
    measured, _ = tc.oracle_psi_forward(s, shear, deco)
    for e in lam:
        assert abs(lam[e] - measured[e]) <= 1e-9


def test_roundtrip_on_special_triangulation():
    s = tc.Surface.special(1, 1, [1])
    assert s.punctures_are_univalent()
    shear = {e: 0.1 * (i + 1) * (-1) ** i for i, e in enumerate(s.interior_edges)}
    deco = {v: 0.2 - 0.1 * i for i, v in enumerate(s.vertices)}
    lam, lengths = tc.psi_forward(s, shear, deco)
    shear2, deco2 = tc.psi_inverse(s, lam, lengths)
    for e, x in shear.items():
        assert abs(shear2[e] - x) <= 1e-9
    for v, d in deco.items():
        assert abs(deco2[v] - d) <= 1e-9


def test_closed_form_sphere():
    s = tc.Surface.bundled("three-punctured-sphere")
    lam = {"e12": 0.0, "e13": 0.0, "e23": 0.0}
    shear, _ = tc.closed_form_inverse("three-punctured-sphere", s, lam, {"v1": 0.75, "v2": 0.4, "v3": 0.15})
    assert shear == pytest.approx({"e12": 0.5, "e13": 0.25, "e23": -0.1})


def test_star_formulas():
    assert tc.neighborhood_radii([0.0, 0.0, 0.0]) == pytest.approx([3.0, 3.0, 3.0])
    assert tc.decoration_param("cusp", 3.0 * math.e, [3.0, 3.0, 3.0]) == pytest.approx(-1.0)
    d = tc.decoration_param("geodesic", math.sqrt(5.0), [math.sqrt(2.0), 3.0], 1.0)
    assert d == pytest.approx(-math.log(2.0))
    assert tc.radius_from_decoration("geodesic", d, [math.sqrt(2.0), 3.0], 1.0) == pytest.approx(math.sqrt(5.0))
    assert tc.endpoint_positions([0.0, math.log(2.0), math.log(3.0)], 0.0, 9.0) == pytest.approx([0, 1, 3, 9])


def test_errors_are_typed():
    s = tc.Surface.bundled("three-punctured-sphere")
    with pytest.raises(tc.HypothesisViolation):
        tc.psi_inverse(s, {"e12": 0, "e13": 0, "e23": 0}, {"v1": 0, "v2": 0, "v3": 0})
    with pytest.raises(tc.ParseError):
        tc.psi_forward(s, {"e12": 0.0}, {"v1": 0, "v2": 0, "v3": 0})
    with pytest.raises(tc.DomainError):
        tc.decoration_param("cusp", 0.0, [1.0])
    with pytest.raises(tc.TeichError):
        tc.Surface.bundled("no-such-surface")
    assert issubclass(tc.TeichError, ValueError)


def test_lamination_coordinates():
    s = tc.Surface.load(str(DATA / "surfaces" / "once-punctured-bigon.json"))
    doc = json.loads((DATA / "laminations" / "bigon-a.json").read_text())
    out = tc.lamination_coordinates(s, json.dumps(doc))
    assert out["flavor"] == "A"
    shear, deco = out["psi_x"]
    lam, lengths = tc.psi_forward(s, {e: shear[e] for e in s.interior_edges}, deco)
    for e, a in out["phi_a"].items():
        assert abs(lam[e] - a) <= 1e-9
    assert all(abs(l) <= 1e-12 for l in lengths.values())


def test_verify_suite():
    report = tc.verify(["roundtrip", "golden-forms"], samples=10)
    assert report["passed"]
    assert {c["suite"] for c in report["checks"]} == {"roundtrip", "golden-forms"}
    strict = tc.verify(["forward-oracle"], samples=5, tolerance=0.0)
    assert not strict["passed"]
