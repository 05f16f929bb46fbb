import json
import math

import numpy as np
import pytest

import mpgn


def test_integer_closed_form():
    z = mpgn.make_lattice("integer", dim=3)
    p = mpgn.successive_minima(z, mpgn.Tau([1.0, -1.0, 0.0]))
    assert p.lambdas == pytest.approx([math.exp(-1), 1.0, math.e], rel=1e-12)
    assert [w.coeffs for w in p.witnesses] == [[1, 0, 0], [0, 0, 1], [0, 1, 0]]


def test_lattice_from_numpy_is_unimodular_and_round_trips():
    lat = mpgn.Lattice(np.array([[2.0, 1.0], [0.0, 3.0]]), "demo")
    assert abs(np.linalg.det(lat.basis)) == pytest.approx(1.0, abs=1e-12)
    back = mpgn.Lattice.from_json(lat.to_json())
    assert np.array_equal(back.basis, lat.basis)
    assert back.label == "demo"


def test_tau_validation_and_errors():
    with pytest.raises(mpgn.BadParams):
        mpgn.Tau([1.0, 0.0])
    with pytest.raises(mpgn.MpgnError):
        mpgn.Lattice(np.array([[1.0, 2.0], [2.0, 4.0]]))
    with pytest.raises(mpgn.BudgetExceeded):
        lat = mpgn.make_lattice("random-unimodular", dim=3, seed=3)
        mpgn.successive_minima(lat, mpgn.Tau([9.0, -4.5, -4.5]), budget=5)


def test_conversions():
    assert mpgn.omega_to_psi(math.inf) == -1.0
    assert mpgn.psi_to_omega(-0.5) == pytest.approx(1.0)
    with pytest.raises(mpgn.OutOfDomain):
        mpgn.psi_to_omega(0.5)


def test_local_suite_and_report_json():
    lat = mpgn.make_lattice("totally-real-cubic")
    samples = mpgn.random_tau_samples(3, 20, 6.0, 1)
    report = mpgn.check_all_local(lat, samples)
    assert report.passed()
    doc = json.loads(report.to_json())
    assert doc["status"] == "pass" and doc["samples"] == 20


def test_exponents_and_relations():
    z = mpgn.make_lattice("integer")
    est = mpgn.estimate_exponents(z, "sup-plus", directions=6)
    assert est.value("Psi_lower", 1) == pytest.approx(-1.0)
    dual = z.dual()
    dual_f = mpgn.estimate_exponents(dual, "sup-plus", directions=6)
    dual_c = mpgn.estimate_exponents(dual, "sup-minus", directions=6)
    assert mpgn.check_exponent_relations(est, dual_f, dual_c).passed()
    doc = json.loads(est.to_json())
    assert {"lattice", "f", "k", "kind", "value", "trace", "witness_tau"} <= set(doc[0])


def test_minimal_systems():
    z = mpgn.make_lattice("integer")
    units = mpgn.VectorSystem.from_points([z.point([1, 0, 0]), z.point([0, 1, 0]), z.point([0, 0, 1])])
    assert mpgn.is_minimal_system(z, units) == (True, None)
    doubled = mpgn.VectorSystem.from_points([z.point([2, 0, 0]), z.point([0, 2, 0]), z.point([0, 0, 2])])
    minimal, witness = mpgn.is_minimal_system(z, doubled)
    assert not minimal and max(abs(x) for x in witness.coords) == 1.0
    bases = mpgn.find_minkowski_bases(mpgn.make_lattice("totally-real-cubic"), 3.0)
    assert bases and all(b.rank == 3 for b in bases)
