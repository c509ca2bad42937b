import math

import pytest

from gerbecalc import (
    BigradedCochain,
    Cochain,
    InvalidInputError,
    build_gerbopole,
    build_minus_one_gerbe,
    build_monopole,
    charge,
    curvature,
    exterior_derivative,
    gauge_equivalent,
    validate_cocycle,
    wrap,
)
from gerbecalc.builders import gerbopole_equator_pair

TWO_PI = 2.0 * math.pi


def gerbe_equations_oracle(datum):
    """Termwise check of the five gerbe equations, independent of big_d.

    Covers: transition cocycle on quadruples (vacuous for three sets),
    connection compatibility on triples, 2-form differences on pairs,
    curvature defined patchwise, and closedness of the curvature.
    """
    cover = datum.cover
    phi = datum.data.part(0, 3) or BigradedCochain.zero(0, 3, True)
    conn = datum.data.part(1, 2) or BigradedCochain.zero(1, 2)
    two_form = datum.data.part(2, 1) or BigradedCochain.zero(2, 1)
    field = curvature(datum)
    worst = 0.0
    for t in cover.nerve():
        sub = cover.overlap(t)
        if len(t) == 3:
            i, j, k = t
            for a, b in sub.cells(1):
                dlng = wrap(phi.component(t).get((b,)) - phi.component(t).get((a,)))
                value = (
                    conn.component((j, k)).get((a, b))
                    - conn.component((i, k)).get((a, b))
                    + conn.component((i, j)).get((a, b))
                    + dlng
                )
                worst = max(worst, abs(wrap(value)))
        elif len(t) == 2:
            i, j = t
            da = exterior_derivative(conn.component(t).restricted_to(sub), sub)
            for tri in sub.cells(2):
                value = (
                    two_form.component((j,)).get(tri)
                    - two_form.component((i,)).get(tri)
                    - da.get(tri)
                )
                worst = max(worst, abs(value))
        elif len(t) == 1:
            df = exterior_derivative(two_form.component(t).restricted_to(sub), sub)
            for tet in sub.cells(3):
                worst = max(worst, abs(field.get(tet) - df.get(tet)))
    worst = max(worst, exterior_derivative(field, cover.complex).sup_norm())
    return worst


class TestMinusOneGerbe:
    @pytest.mark.parametrize("m", [12, 18, 24])
    def test_validates_and_has_unit_charge(self, m):
        datum = build_minus_one_gerbe(m)
        assert datum.level == -1
        assert validate_cocycle(datum, 1e-9).passed
        assert charge(datum) == pytest.approx(1.0, abs=1e-10)

    def test_function_differences_vanish_exactly(self):
        datum = build_minus_one_gerbe(12)
        layer = datum.data.part(0, 1)
        for t in datum.cover.nerve():
            if len(t) != 2:
                continue
            i, j = t
            sub = datum.cover.overlap(t)
            for v in sub.cells(0):
                assert layer.component((j,)).get(v) == layer.component((i,)).get(v)

    def test_charge_oracle_direct_sum(self):
        m = 12
        datum = build_minus_one_gerbe(m)
        field = curvature(datum)
        # oracle: m increments of 2*pi/m each, read off along the circle
        for k in range(m - 1):
            assert field.get((k, k + 1)) == pytest.approx(TWO_PI / m, abs=1e-15)
        assert field.get((0, m - 1)) == pytest.approx(-TWO_PI / m, abs=1e-15)

    def test_curvature_closed_vacuously_at_top(self):
        datum = build_minus_one_gerbe(12)
        closed = exterior_derivative(curvature(datum), datum.cover.complex)
        assert closed.values == {}

    @pytest.mark.parametrize("m", [5, 9, 10, 6])
    def test_bad_resolution_rejected(self, m):
        with pytest.raises(InvalidInputError):
            build_minus_one_gerbe(m)


class TestMonopole:
    @pytest.mark.parametrize("m", [6, 12, 24])
    def test_validates_and_has_unit_charge(self, m):
        datum = build_monopole(m)
        assert datum.level == 0
        assert validate_cocycle(datum, 1e-9).passed
        assert charge(datum) == pytest.approx(1.0, abs=1e-10)

    def test_first_patch_connection_vanishes(self):
        datum = build_monopole(12)
        conn = datum.data.part(1, 1)
        assert conn.component((0,)).values == {}

    def test_curvature_spreads_over_polar_cells(self):
        m = 12
        field = curvature(build_monopole(m))
        assert len(field.values) == m
        for tri, value in field.values.items():
            assert 2 * m + 1 in tri
            assert abs(value) == pytest.approx(TWO_PI / m, abs=1e-12)

    def test_resolution_too_small_rejected(self):
        with pytest.raises(InvalidInputError):
            build_monopole(5)

    def test_winding_too_fast_for_mesh_rejected(self):
        with pytest.raises(InvalidInputError):
            build_monopole(6, winding=2)


class TestGerbopole:
    @pytest.mark.parametrize("m", [6, 12])
    def test_validates_and_has_unit_charge(self, m):
        datum = build_gerbopole(m)
        assert datum.level == 1
        assert validate_cocycle(datum, 1e-9).passed
        assert charge(datum) == pytest.approx(1.0, abs=1e-10)

    def test_termwise_equations_oracle(self):
        datum = build_gerbopole(12)
        assert gerbe_equations_oracle(datum) < 1e-9

    def test_curvature_mass(self):
        m = 12
        datum = build_gerbopole(m)
        field = curvature(datum)
        assert len(field.values) == m
        for value in field.values.values():
            assert abs(value) == pytest.approx(TWO_PI / m, abs=1e-12)

    def test_transition_respects_index_antisymmetry(self):
        datum = build_gerbopole(6)
        layer = datum.data.part(0, 3)
        sorted_comp = layer.component((0, 1, 2))
        swapped = layer.component((0, 2, 1))
        assert (sorted_comp + swapped).sup_norm() == 0.0

    def test_resolution_too_small_rejected(self):
        with pytest.raises(InvalidInputError):
            build_gerbopole(4)


class TestWindingLinearity:
    @pytest.mark.parametrize(
        "build,m",
        [
            (build_minus_one_gerbe, 12),
            (build_monopole, 12),
            (build_gerbopole, 12),
        ],
    )
    def test_doubling_the_winding_doubles_the_charge(self, build, m):
        datum = build(m, winding=2)
        assert validate_cocycle(datum, 1e-9).passed
        assert charge(datum) == pytest.approx(2.0, abs=1e-10)


class TestEquatorRestriction:
    def test_monopole_sits_on_the_equator(self):
        restricted, direct = gerbopole_equator_pair(12)
        assert validate_cocycle(restricted, 1e-9).passed
        assert validate_cocycle(direct, 1e-9).passed
        assert charge(restricted) == pytest.approx(charge(direct), abs=1e-10)
        assert abs(charge(restricted)) == pytest.approx(1.0, abs=1e-10)
        result = gauge_equivalent(restricted, direct)
        assert result.equivalent

    def test_equator_equivalence_survives_a_gauge_shift(self):
        from gerbecalc import gauge_shift
        from gerbecalc.randomdata import random_gauge_potential
        from gerbecalc.rng import Lcg64

        restricted, direct = gerbopole_equator_pair(6)
        pot = random_gauge_potential(direct.cover, 1, Lcg64(13))
        shifted = gauge_shift(direct, pot)
        result = gauge_equivalent(restricted, shifted)
        assert result.equivalent
        assert result.residual < 1e-8
