"""Concrete charge-1 example data on small triangulated spheres.

Three constructions, one per level:

* level -1 on a circle: a family of functions equal to the vertex angle on
  each arc of a three-arc cover, with the winding 1-form as curvature;
* level 0 on a 2-sphere (the monopole): two caps over an equatorial band,
  transition equal to longitude on the band, curvature concentrated on the
  polar cells of the second cap;
* level 1 on a 3-sphere (the gerbopole): three patches built over a base
  polygon joined to the fiber circle, transition equal to the fiber angle on
  the triple overlap, curvature concentrated in the third patch.

Meshes are chosen as the smallest complexes on which the required cover
combinatorics (which overlaps are nonempty, which are bands or shells) are
realized by vertex-induced subcomplexes.  All connection values come from
wrapped angle differences, so every charge is an exact telescoping sum.
"""

from __future__ import annotations

import math

from .bicomplex import TWO_PI, BigradedCochain, TotalCochain, wrap
from .cover import Cover
from .deligne import GerbeDatum
from .errors import InvalidInputError
from .simplicial import Cochain, SimplicialComplex, exterior_derivative

__all__ = [
    "circle_complex",
    "two_cone_sphere",
    "join_sphere3",
    "build_minus_one_gerbe",
    "build_monopole",
    "build_gerbopole",
    "build_trivial",
    "gerbopole_equator_pair",
]

# Orientation of the deterministic fundamental cycle against the increasing
# longitude direction, fixed once per mesh family so charges come out +1.
_MONOPOLE_SIGN = 1.0
_GERBOPOLE_SIGN = 1.0


def circle_complex(segments: int) -> SimplicialComplex:
    """An m-gon circle; vertex k sits at angle 2*pi*k/m."""
    if segments < 3:
        raise InvalidInputError("a circle needs at least 3 segments")
    edges = [(k, k + 1) for k in range(segments - 1)] + [(0, segments - 1)]
    return SimplicialComplex.from_top_cells(segments, edges, closed_manifold=True)


def two_cone_sphere(segments: int) -> SimplicialComplex:
    """A 2-sphere: two cones over an equatorial band of two m-gon rings.

    Vertices 0..m-1 are the upper ring, m..2m-1 the lower ring (same
    longitudes), 2m the north pole and 2m+1 the south pole.
    """
    m = segments
    if m < 3:
        raise InvalidInputError("a sphere band needs at least 3 segments")
    north, south = 2 * m, 2 * m + 1
    triangles = []
    for k in range(m):
        k1 = (k + 1) % m
        triangles.append((k, k1, north))
        triangles.append((k, k1, m + k1))
        triangles.append((k, m + k, m + k1))
        triangles.append((m + k, m + k1, south))
    return SimplicialComplex.from_top_cells(2 * m + 2, triangles, closed_manifold=True)


def join_sphere3(segments: int, base_segments: int = 8) -> SimplicialComplex:
    """A 3-sphere as the join of a fiber m-gon with a base polygon.

    Vertices 0..m-1 are the fiber circle carrying the winding coordinate;
    m..m+l-1 are the base polygon giving the suspension direction.
    """
    m, l = segments, base_segments
    if m < 3 or l < 3:
        raise InvalidInputError("both polygons need at least 3 segments")
    tetrahedra = []
    for k in range(m):
        k1 = (k + 1) % m
        for j in range(l):
            j1 = (j + 1) % l
            tetrahedra.append((k, k1, m + j, m + j1))
    return SimplicialComplex.from_top_cells(m + l, tetrahedra, closed_manifold=True)


def _check_resolution(m: int, winding: int, minimum: int) -> None:
    if not isinstance(m, int) or m < minimum:
        raise InvalidInputError(f"resolution must be an integer >= {minimum}, got {m!r}")
    if not isinstance(winding, int) or winding == 0:
        raise InvalidInputError(f"winding must be a nonzero integer, got {winding!r}")
    # every wrapped increment must stay below pi/2 to rule out branch ambiguity
    if abs(winding) * TWO_PI / m >= 0.5 * math.pi:
        raise InvalidInputError(f"resolution {m} is too coarse for winding {winding}")


def build_minus_one_gerbe(m: int, winding: int = 1) -> GerbeDatum:
    """Level -1 datum on an m-gon circle with three overlapping arcs.

    The function layer equals winding * angle on every arc, so differences on
    overlaps vanish identically, and the global 1-form layer is its wrapped
    derivative; the charge is the winding number.  m must be a multiple of 6
    and at least 12, so every arc endpoint separates the same pair of
    vertices as in the continuum picture and each edge fits inside an arc.
    """
    if not isinstance(m, int) or m < 12 or m % 6 != 0:
        raise InvalidInputError(
            f"the three-arc cover needs m >= 12 with 6 | m, got {m!r}"
        )
    _check_resolution(m, winding, 12)
    complex = circle_complex(m)
    # arcs (0, pi), (2pi/3, 5pi/3), (4pi/3, 7pi/3) in vertex indices
    arc0 = {v for v in range(m) if 0 < v < m // 2}
    arc1 = {v for v in range(m) if m // 3 < v < 5 * m // 6}
    arc2 = {v for v in range(m) if 2 * m // 3 < v or v < m // 6}
    cover = Cover.build(complex, [arc0, arc1, arc2])
    theta = {v: TWO_PI * v / m for v in range(m)}
    functions = {
        (i,): Cochain(0, {(v,): winding * theta[v] for v in sorted(arc)})
        for i, arc in enumerate(cover.sets)
    }
    one_form = {}
    for a, b in complex.cells(1):
        val = wrap(winding * (theta[b] - theta[a]))
        if val != 0.0:
            one_form[(a, b)] = val
    data = TotalCochain(
        1,
        {
            (0, 1): BigradedCochain(0, 1, functions, angle_valued=True),
            (1, 0): BigradedCochain(1, 0, {(): Cochain(1, one_form).scaled(-1.0)}),
        },
    )
    return GerbeDatum(-1, data, cover)


def _cap_bundle_data(
    complex: SimplicialComplex,
    cover: Cover,
    longitude: dict[int, float],
    winding: int,
    sign: float,
) -> TotalCochain:
    """Bundle data on a two-cap cover from longitudes on the band vertices.

    The transition layer on the band is sign * winding * longitude.  The
    connection on the second cap takes wrapped longitude differences on band
    edges and zero on edges touching the pole, which spreads the curvature
    evenly over the polar cells; the first cap's connection is zero.
    """
    band = cover.overlap((0, 1))
    phi = Cochain(
        0, {(v,): sign * winding * longitude[v] for (v,) in band.cells(0)}
    )
    second = cover.overlap((1,))
    a_values = {}
    for a, b in second.cells(1):
        if a in longitude and b in longitude:
            val = wrap(sign * winding * (longitude[b] - longitude[a]))
            if val != 0.0:
                a_values[(a, b)] = val
    connection = Cochain(1, a_values)
    field = exterior_derivative(connection, second)
    return TotalCochain(
        2,
        {
            (0, 2): BigradedCochain(0, 2, {(0, 1): phi}, angle_valued=True),
            (1, 1): BigradedCochain(1, 1, {(1,): connection}),
            (2, 0): BigradedCochain(2, 0, {(): field.scaled(-1.0)}),
        },
    )


def build_monopole(m: int, winding: int = 1) -> GerbeDatum:
    """Level-0 charge-`winding` datum on the two-cone sphere.

    Cover: north cap plus band, south cap plus band; the band overlap is an
    annulus (flagged WARN by the good-cover check, as expected).  Curvature
    lives on the m south polar triangles, roughly 2*pi*winding/m each.
    """
    _check_resolution(m, winding, 6)
    complex = two_cone_sphere(m)
    band = set(range(2 * m))
    cover = Cover.build(complex, [band | {2 * m}, band | {2 * m + 1}])
    longitude = {v: TWO_PI * (v % m) / m for v in band}
    data = _cap_bundle_data(complex, cover, longitude, winding, _MONOPOLE_SIGN)
    return GerbeDatum(0, data, cover)


def build_gerbopole(m: int, winding: int = 1, base_segments: int = 8) -> GerbeDatum:
    """Level-1 charge-`winding` datum on the joined 3-sphere.

    Three patches over base-polygon arcs, each joined with the full fiber
    circle: two thickened caps covering one half and a third patch covering
    the other half plus a collar.  The triple overlap is the bare fiber
    circle and carries the winding transition function; the curvature sits on
    the tetrahedra where the third patch's 2-form layer tapers off.
    """
    _check_resolution(m, winding, 6)
    l = base_segments
    if l % 2 != 0 or l < 8:
        raise InvalidInputError("the base polygon needs an even count >= 8")
    complex = join_sphere3(m, l)
    fiber = set(range(m))
    base = lambda j: m + (j % l)
    quarter, half = l // 4, l // 2
    arc0 = {base(j) for j in range(-1, quarter + 1)}
    arc1 = {base(j) for j in range(quarter, half + 2)}
    arc2 = {base(j) for j in range(half - 1, l + 2)}
    cover = Cover.build(complex, [fiber | arc0, fiber | arc1, fiber | arc2])

    alpha = {k: TWO_PI * k / m for k in range(m)}
    sign = _GERBOPOLE_SIGN
    phi = Cochain(0, {(k,): sign * winding * alpha[k] for k in range(m)})

    # connection 1-form on the (1, 2) overlap: minus the wrapped derivative
    # of the transition on ring edges, zero elsewhere, so the triple-overlap
    # equation closes exactly
    pair12 = cover.overlap((1, 2))
    a_values = {}
    for a, b in pair12.cells(1):
        if a in fiber and b in fiber:
            val = wrap(-sign * winding * (alpha[b] - alpha[a]))
            if val != 0.0:
                a_values[(a, b)] = val
    connection = Cochain(1, a_values)

    # 2-form layer on the third patch: the derivative of that connection,
    # which is supported on the mixed triangles of the (1, 2) overlap and
    # extends by zero into the rest of the patch
    two_form = exterior_derivative(connection, pair12)
    third = cover.overlap((2,))
    three_form = exterior_derivative(two_form, third)

    data = TotalCochain(
        3,
        {
            (0, 3): BigradedCochain(0, 3, {(0, 1, 2): phi}, angle_valued=True),
            (1, 2): BigradedCochain(1, 2, {(1, 2): connection}),
            (2, 1): BigradedCochain(2, 1, {(2,): two_form}),
            (3, 0): BigradedCochain(3, 0, {(): three_form.scaled(-1.0)}),
        },
    )
    return GerbeDatum(1, data, cover)


def build_trivial(cover: Cover, level: int) -> GerbeDatum:
    """The zero datum at the given level: all parts absent."""
    return GerbeDatum(level, TotalCochain.zero(level + 2), cover)


def gerbopole_equator_pair(
    m: int, winding: int = 1, base_segments: int = 8
) -> tuple[GerbeDatum, GerbeDatum]:
    """Restrict a gerbopole to its equatorial 2-sphere, plus a direct build.

    The equator is the suspension of the fiber circle by the two base poles.
    Restriction takes: transition = triple-overlap transition read in the
    (first, third, second) index order, connection = the (second, third)
    1-form layer, curvature = the third patch's 2-form layer.  The returned
    pair lives on one shared complex and cover, so it can be fed straight to
    the gauge-equivalence solver; both have the same charge.
    """
    gerbopole = build_gerbopole(m, winding, base_segments)
    l = base_segments
    north_old, south_old = m, m + l // 2
    relabel = {k: k for k in range(m)}
    relabel[north_old] = m
    relabel[south_old] = m + 1
    triangles = []
    for k in range(m):
        k1 = (k + 1) % m
        triangles.append((k, k1, m))
        triangles.append((k, k1, m + 1))
    sphere = SimplicialComplex.from_top_cells(m + 2, triangles, closed_manifold=True)
    ring = set(range(m))
    cover = Cover.build(sphere, [ring | {m}, ring | {m + 1}])

    def restrict(cochain: Cochain, old_support: set[int]) -> Cochain:
        out = {}
        for cell, value in cochain.values.items():
            if all(v in old_support for v in cell):
                out[tuple(sorted(relabel[v] for v in cell))] = value
        return Cochain(cochain.degree, out)

    old_sphere = ring | {north_old, south_old}
    transition = restrict(
        gerbopole.data.part(0, 3).component((0, 2, 1)), old_sphere
    )
    connection = restrict(
        gerbopole.data.part(1, 2).component((1, 2)), old_sphere
    )
    field = restrict(gerbopole.data.part(2, 1).component((2,)), old_sphere)
    restricted = GerbeDatum(
        0,
        TotalCochain(
            2,
            {
                (0, 2): BigradedCochain(0, 2, {(0, 1): transition}, angle_valued=True),
                (1, 1): BigradedCochain(1, 1, {(1,): connection}),
                (2, 0): BigradedCochain(2, 0, {(): field.scaled(-1.0)}),
            },
        ),
        cover,
    )
    longitude = {k: TWO_PI * k / m for k in range(m)}
    direct = GerbeDatum(
        0,
        _cap_bundle_data(sphere, cover, longitude, winding, -_GERBOPOLE_SIGN),
        cover,
    )
    return restricted, direct
