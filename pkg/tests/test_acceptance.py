"""Acceptance suite: one test per criterion, at the stated tolerances.

Each test prints a single PASS line on success (visible with `pytest -s` or
in the captured output), so the suite doubles as a checklist.
"""

import json
import math
import time

import pytest

from gerbecalc import (
    BigradedCochain,
    Cochain,
    TotalCochain,
    big_d,
    build_gerbopole,
    build_minus_one_gerbe,
    build_monopole,
    build_trivial,
    cech_delta,
    charge,
    curvature,
    dbar,
    exterior_derivative,
    gauge_equivalent,
    gauge_shift,
    higher_gauge_shift,
    validate_cocycle,
)
from gerbecalc.cli import main
from gerbecalc.randomdata import (
    random_bigraded,
    random_complex_and_cover,
    random_gauge_potential,
    random_total,
)
from gerbecalc.rng import Lcg64
from gerbecalc.serialize import datum_from_dict, datum_to_dict, save_datum

TWO_PI = 2.0 * math.pi


def test_criterion_1_operator_identities():
    """100 seeded random complexes: delta^2, d^2, anticommutation, D^2 < 1e-12."""
    start = time.perf_counter()
    rng = Lcg64(42)
    worst = 0.0
    for _ in range(100):
        complex, cover = random_complex_and_cover(rng)
        top = complex.top_dimension
        for n in range(0, min(2, len(cover.sets)) + 1):
            for p in range(0, top + 1):
                c = random_bigraded(cover, p, n, rng)
                worst = max(worst, cech_delta(cech_delta(c, cover), cover).sup_norm())
                worst = max(worst, dbar(dbar(c, cover), cover).sup_norm())
                mixed = cech_delta(dbar(c, cover), cover) + dbar(
                    cech_delta(c, cover), cover
                )
                worst = max(worst, mixed.sup_norm())
        for degree in (1, 2):
            total = random_total(cover, degree, rng)
            worst = max(worst, big_d(big_d(total, cover), cover).sup_norm())
    elapsed = time.perf_counter() - start
    assert worst < 1e-12
    assert elapsed < 5.0
    print(f"ACCEPT 1: PASS operator identities, worst residual {worst:.2e}, {elapsed:.2f}s")


def test_criterion_2_monopole_charge():
    start = time.perf_counter()
    for m in (6, 12, 24):
        datum = build_monopole(m)
        assert validate_cocycle(datum, 1e-9).passed
        assert abs(charge(datum) - 1.0) < 1e-10
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0
    print(f"ACCEPT 2: PASS monopole charge 1 for m in (6, 12, 24), {elapsed:.2f}s")


def test_criterion_3_gerbopole_charge():
    start = time.perf_counter()
    for m in (6, 12):
        datum = build_gerbopole(m)
        assert validate_cocycle(datum, 1e-9).passed
        assert abs(charge(datum) - 1.0) < 1e-10
    elapsed = time.perf_counter() - start
    assert elapsed < 10.0
    print(f"ACCEPT 3: PASS gerbopole charge 1 for m in (6, 12), {elapsed:.2f}s")


def test_criterion_4_minus_one_gerbe():
    datum = build_minus_one_gerbe(12)
    assert validate_cocycle(datum, 1e-9).passed
    assert abs(charge(datum) - 1.0) < 1e-10
    print("ACCEPT 4: PASS level -1 datum validates with winding 1")


def test_criterion_5_gauge_equivalence_positive():
    cases = [
        ("minus1", build_minus_one_gerbe(12)),
        ("monopole", build_monopole(12)),
        ("gerbopole", build_gerbopole(6)),
    ]
    rng = Lcg64(2024)
    for name, datum in cases:
        for _ in range(10):
            potential = random_gauge_potential(datum.cover, datum.level + 1, rng)
            shifted = gauge_shift(datum, potential)
            result = gauge_equivalent(datum, shifted, 1e-8)
            assert result.equivalent, name
            assert result.residual < 1e-8
            delta = shifted.data - datum.data
            pushed = big_d(result.witness.data, datum.cover)
            assert (pushed - delta).sup_norm() < 1e-8
    print("ACCEPT 5: PASS 10 random gauge shifts recovered per builder")


def test_criterion_6_gauge_equivalence_negative():
    monopole = build_monopole(12)
    trivial = build_trivial(monopole.cover, 0)
    result = gauge_equivalent(monopole, trivial, 1e-8)
    assert not result.equivalent
    assert result.witness is None
    gap = abs(charge(monopole) - charge(trivial))
    assert abs(gap - 1.0) < 1e-10
    print(
        f"ACCEPT 6: PASS monopole vs trivial NOT-FOUND, residual {result.residual:.2e}, "
        f"charge gap {gap:.1f}"
    )


def test_criterion_7_higher_gauge_shift():
    datum = build_monopole(12)
    complex = datum.cover.complex
    rng = Lcg64(77)
    base_charge = charge(datum)
    for _ in range(10):
        b = Cochain(1, {e: rng.uniform(-1, 1) for e in complex.cells(1)})
        full = TotalCochain(1, {(1, 0): BigradedCochain(1, 0, {(): b})})
        shifted = higher_gauge_shift(datum, full)
        diff = curvature(shifted) - curvature(datum)
        db = exterior_derivative(b, complex)
        assert (diff - db).sup_norm() < 1e-10
        assert abs(charge(shifted) - base_charge) < 1e-10
    print("ACCEPT 7: PASS curvature moves by dB, charge unchanged, 10 shifts")


def test_criterion_8_winding_linearity():
    for name, build in (
        ("minus1", build_minus_one_gerbe),
        ("monopole", build_monopole),
        ("gerbopole", build_gerbopole),
    ):
        datum = build(12, winding=2)
        assert validate_cocycle(datum, 1e-9).passed, name
        assert abs(charge(datum) - 2.0) < 1e-10, name
    print("ACCEPT 8: PASS doubled winding doubles the charge for all builders")


def test_criterion_9_cli_contract(tmp_path, capsys):
    # round-trip bit-exactness on all builder outputs
    builders = {
        "minus1": build_minus_one_gerbe(12),
        "monopole": build_monopole(12),
        "gerbopole": build_gerbopole(6),
    }
    for name, datum in builders.items():
        loaded = datum_from_dict(json.loads(json.dumps(datum_to_dict(datum))))
        assert loaded.data == datum.data, name
        assert loaded.cover == datum.cover, name

    # fixture suite: expected exit code per (command, file)
    fixtures = []

    def add(name, doc_text, command, expected):
        path = tmp_path / name
        path.write_text(doc_text)
        fixtures.append((command + [str(path)], expected))

    for name, datum in builders.items():
        add(f"{name}.json", json.dumps(datum_to_dict(datum)), ["validate"], 0)
    mono_doc = datum_to_dict(builders["monopole"])

    corrupted = json.loads(json.dumps(mono_doc))
    for part in corrupted["datum"]["parts"]:
        if (part["p"], part["n"]) == (0, 2):
            part["components"][0]["entries"][0]["value"] += 0.3
    add("corrupt_value.json", json.dumps(corrupted), ["validate"], 1)

    corrupted2 = json.loads(json.dumps(mono_doc))
    for part in corrupted2["datum"]["parts"]:
        if (part["p"], part["n"]) == (1, 1):
            part["components"][0]["entries"][0]["value"] -= 0.25
    add("corrupt_conn.json", json.dumps(corrupted2), ["validate"], 1)

    add("malformed.json", "{not json at all", ["validate"], 2)
    add("malformed2.json", '["wrong", "shape"]', ["validate"], 2)
    add("bad_version.json", json.dumps({"format_version": 9}), ["validate"], 2)

    bad_simplex = json.loads(json.dumps(mono_doc))
    bad_simplex["datum"]["parts"][0]["components"][0]["entries"][0]["simplex"] = [998]
    add("bad_simplex.json", json.dumps(bad_simplex), ["validate"], 2)

    trivial = json.loads(json.dumps(mono_doc))
    trivial["datum"]["parts"] = []
    add("trivial.json", json.dumps(trivial), ["charge"], 0)

    wrong_dim = json.loads(json.dumps(datum_to_dict(builders["minus1"])))
    wrong_dim["datum"]["level"] = 1
    wrong_dim["datum"]["parts"] = []
    wrong_dim["datum"]["angle_part"] = [0, 3]
    add("wrong_dim.json", json.dumps(wrong_dim), ["charge"], 1)

    mono_path = tmp_path / "monopole.json"
    shifted_path = tmp_path / "monopole_shifted.json"
    rc = main(
        ["demo", "monopole", "--m", "12", "--perturb-gauge", "3", "--out", str(shifted_path)]
    )
    assert rc == 0
    fixtures.append((["equiv", str(mono_path), str(shifted_path)], 0))
    fixtures.append((["equiv", str(mono_path), str(tmp_path / "trivial.json")], 1))

    assert len(fixtures) >= 12
    for argv, expected in fixtures:
        rc = main(argv)
        capsys.readouterr()
        assert rc == expected, f"{argv} -> {rc}, expected {expected}"
    print(f"ACCEPT 9: PASS round-trip bit-exact, {len(fixtures)} fixture commands honored")
