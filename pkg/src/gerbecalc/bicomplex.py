"""Bigraded cochains over a cover and the combined coboundary operators.

A (p, n) cochain assigns a p-cochain to every strictly increasing n-tuple of
cover indices, supported on that overlap; n = 0 means one global cochain.
Evaluation at a permuted tuple multiplies the canonically stored component by
the permutation sign, which encodes full antisymmetry in the cover indices.

Sign conventions.  The index-deletion coboundary acts as

    (delta C)_{i1..i(n+1)} = sum_{a=1..n+1} (-1)^(a+1) C_{i1..^i_a..i(n+1)}

with each summand restricted to the deeper overlap.  The cellwise coboundary
is twisted to dbar = (-1)^n d so that delta and dbar anticommute, and the
total operator is D = delta - dbar, which squares to zero.

Angle-valued layers.  A (0, n) layer may be flagged angle-valued, meaning its
values are defined only modulo 2*pi.  Its derivative is taken with per-edge
wrapping into (-pi, pi], and residuals of equations fed by such a layer must
be wrapped before comparison with zero.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable

from .cover import Cover
from .errors import InvalidInputError
from .simplicial import Cochain, SimplicialComplex, exterior_derivative

TWO_PI = 2.0 * math.pi

__all__ = [
    "TWO_PI",
    "wrap",
    "wrap_cochain",
    "wrap_d",
    "permutation_sign",
    "BigradedCochain",
    "TotalCochain",
    "GaugePotential",
    "cech_delta",
    "dbar",
    "big_d",
]


def wrap(x: float) -> float:
    """Reduce an angle to the principal branch (-pi, pi]."""
    x = float(x)
    if not math.isfinite(x):
        raise InvalidInputError(f"cannot wrap non-finite value {x!r}")
    r = math.remainder(x, TWO_PI)
    if r <= -math.pi:
        r += TWO_PI
    return r


def wrap_cochain(cochain: Cochain) -> Cochain:
    """Wrap every stored value; exact multiples of 2*pi drop out."""
    out = {}
    for s, v in cochain.values.items():
        w = wrap(v)
        if w != 0.0:
            out[s] = w
    return Cochain(cochain.degree, out)


def wrap_d(f: Cochain, complex: SimplicialComplex) -> Cochain:
    """Wrapped edge differences of an angle-valued vertex function.

    The result is invariant under shifting any single vertex value by a
    multiple of 2*pi, which makes winding counts exact telescoping sums.
    """
    if f.degree != 0:
        raise InvalidInputError("wrap_d expects a 0-cochain")
    for v in complex.cells(0):
        if v not in f.values:
            raise InvalidInputError(f"no angle value at vertex {v[0]}")
    out = {}
    for a, b in complex.cells(1):
        val = wrap(f.values[(b,)] - f.values[(a,)])
        if val != 0.0:
            out[(a, b)] = val
    return Cochain(1, out)


def permutation_sign(indices: Iterable[int]) -> int:
    """Sign of the permutation sorting the tuple; 0 if an index repeats."""
    t = tuple(indices)
    if len(set(t)) != len(t):
        return 0
    sign = 1
    for i in range(len(t)):
        for j in range(i + 1, len(t)):
            if t[i] > t[j]:
                sign = -sign
    return sign


@dataclass(frozen=True)
class BigradedCochain:
    """One element of the (form_degree, cech_degree) layer.

    Components are stored on sorted index tuples only; ``component`` applies
    the antisymmetry sign for any other index order.
    """

    form_degree: int
    cech_degree: int
    components: dict[tuple[int, ...], Cochain]
    angle_valued: bool = False

    def __post_init__(self):
        if self.form_degree < 0 or self.cech_degree < 0:
            raise InvalidInputError("bidegrees must be non-negative")
        if self.angle_valued and self.form_degree != 0:
            raise InvalidInputError("only 0-form layers can be angle-valued")
        for t, comp in self.components.items():
            if len(t) != self.cech_degree:
                raise InvalidInputError(
                    f"component key {t} has wrong length for cech degree {self.cech_degree}"
                )
            if any(a >= b for a, b in zip(t, t[1:])) or any(i < 0 for i in t):
                raise InvalidInputError(f"component key {t} is not strictly increasing")
            if comp.degree != self.form_degree:
                raise InvalidInputError(
                    f"component at {t} has degree {comp.degree}, expected {self.form_degree}"
                )

    @classmethod
    def zero(cls, form_degree: int, cech_degree: int, angle_valued: bool = False):
        return cls(form_degree, cech_degree, {}, angle_valued)

    def component(self, indices: Iterable[int]) -> Cochain:
        """Evaluate at any index tuple, applying the antisymmetry sign."""
        t = tuple(int(i) for i in indices)
        if len(t) != self.cech_degree:
            raise InvalidInputError(
                f"expected {self.cech_degree} indices, got {len(t)}"
            )
        sign = permutation_sign(t)
        if sign == 0:
            return Cochain.zero(self.form_degree)
        comp = self.components.get(tuple(sorted(t)))
        if comp is None:
            return Cochain.zero(self.form_degree)
        return comp if sign > 0 else comp.scaled(-1.0)

    def is_zero(self) -> bool:
        return all(not c.values for c in self.components.values())

    def sup_norm(self) -> float:
        return max((c.sup_norm() for c in self.components.values()), default=0.0)

    def scaled(self, factor: float) -> "BigradedCochain":
        comps = {}
        for t, c in self.components.items():
            sc = c.scaled(factor)
            if sc.values:
                comps[t] = sc
        return BigradedCochain(self.form_degree, self.cech_degree, comps, self.angle_valued)

    def wrapped(self) -> "BigradedCochain":
        comps = {}
        for t, c in self.components.items():
            wc = wrap_cochain(c)
            if wc.values:
                comps[t] = wc
        return BigradedCochain(self.form_degree, self.cech_degree, comps, self.angle_valued)

    def __add__(self, other: "BigradedCochain") -> "BigradedCochain":
        if (self.form_degree, self.cech_degree) != (other.form_degree, other.cech_degree):
            raise InvalidInputError("bidegrees differ")
        comps = dict(self.components)
        for t, c in other.components.items():
            merged = comps[t] + c if t in comps else c
            if merged.values:
                comps[t] = merged
            else:
                comps.pop(t, None)
        return BigradedCochain(
            self.form_degree,
            self.cech_degree,
            comps,
            self.angle_valued or other.angle_valued,
        )

    def __sub__(self, other: "BigradedCochain") -> "BigradedCochain":
        return self + other.scaled(-1.0)


@dataclass(frozen=True)
class TotalCochain:
    """Element of the direct sum of all (p, n) layers with p + n fixed.

    At most one part may be angle-valued and it must sit at (0, total_degree):
    the transition layer of a cocycle datum.
    """

    total_degree: int
    parts: dict[tuple[int, int], BigradedCochain]

    def __post_init__(self):
        for (p, n), part in self.parts.items():
            if p + n != self.total_degree:
                raise InvalidInputError(
                    f"part at ({p},{n}) does not match total degree {self.total_degree}"
                )
            if (part.form_degree, part.cech_degree) != (p, n):
                raise InvalidInputError(f"part stored under wrong bidegree ({p},{n})")
            if part.angle_valued and (p, n) != (0, self.total_degree):
                raise InvalidInputError(
                    "only the (0, k) part of a degree-k total cochain may be angle-valued"
                )

    @classmethod
    def zero(cls, total_degree: int) -> "TotalCochain":
        return cls(total_degree, {})

    def part(self, p: int, n: int) -> BigradedCochain | None:
        return self.parts.get((p, n))

    def bidegrees(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.parts))

    def sup_norm(self) -> float:
        return max((part.sup_norm() for part in self.parts.values()), default=0.0)

    def scaled(self, factor: float) -> "TotalCochain":
        parts = {}
        for key, part in self.parts.items():
            sp = part.scaled(factor)
            if sp.components:
                parts[key] = sp
        return TotalCochain(self.total_degree, parts)

    def __add__(self, other: "TotalCochain") -> "TotalCochain":
        if self.total_degree != other.total_degree:
            raise InvalidInputError("total degrees differ")
        parts = dict(self.parts)
        for key, part in other.parts.items():
            merged = parts[key] + part if key in parts else part
            if merged.components:
                parts[key] = merged
            else:
                parts.pop(key, None)
        return TotalCochain(self.total_degree, parts)

    def __sub__(self, other: "TotalCochain") -> "TotalCochain":
        return self + other.scaled(-1.0)


@dataclass(frozen=True)
class GaugePotential:
    """Shift datum for equivalence tests: a total cochain whose global
    top-degree form part is structurally absent."""

    data: TotalCochain

    def __post_init__(self):
        for (p, n) in self.data.parts:
            if n == 0:
                raise InvalidInputError(
                    "gauge potentials carry no global form part"
                )


def _check_indices(cochain: BigradedCochain, cover: Cover) -> None:
    for t in cochain.components:
        for i in t:
            if i >= len(cover.sets):
                raise InvalidInputError(
                    f"component {t} does not fit a cover with {len(cover.sets)} sets"
                )


def cech_delta(cochain: BigradedCochain, cover: Cover) -> BigradedCochain:
    """Index-deletion coboundary, raising the cover degree by one.

    Each summand is restricted to the deeper overlap; the angle-valued flag
    propagates since sums of angles are still angles.
    """
    _check_indices(cochain, cover)
    p, n = cochain.form_degree, cochain.cech_degree
    nerve = set(cover.nerve())
    out: dict[tuple[int, ...], Cochain] = {}
    for target in itertools.combinations(range(len(cover.sets)), n + 1):
        if target not in nerve:
            continue
        overlap = cover.overlap(target)
        acc = Cochain.zero(p)
        for a in range(n + 1):
            comp = cochain.components.get(target[:a] + target[a + 1 :])
            if comp is None or not comp.values:
                continue
            term = comp.restricted_to(overlap)
            if not term.values:
                continue
            acc = acc + (term if a % 2 == 0 else term.scaled(-1.0))
        if acc.values:
            out[target] = acc
    return BigradedCochain(p, n + 1, out, cochain.angle_valued)


def dbar(cochain: BigradedCochain, cover: Cover) -> BigradedCochain:
    """Sign-twisted cellwise coboundary (-1)^n d, taken inside each overlap.

    Angle-valued input uses wrapped edge differences; the output is an
    ordinary real-valued layer either way.
    """
    _check_indices(cochain, cover)
    p, n = cochain.form_degree, cochain.cech_degree
    flip = n % 2 == 1
    out: dict[tuple[int, ...], Cochain] = {}
    for key in sorted(cochain.components):
        comp = cochain.components[key]
        sub = cover.complex if n == 0 else cover.overlap(key)
        der = wrap_d(comp, sub) if cochain.angle_valued else exterior_derivative(comp, sub)
        if flip:
            der = der.scaled(-1.0)
        if der.values:
            out[key] = der
    return BigradedCochain(p + 1, n, out, False)


def big_d(total: TotalCochain, cover: Cover) -> TotalCochain:
    """Total coboundary D = delta - dbar; D(D(x)) = 0 for real-valued x."""
    acc: dict[tuple[int, int], BigradedCochain] = {}

    def put(key: tuple[int, int], piece: BigradedCochain) -> None:
        if not piece.components:
            return
        cur = acc.get(key)
        acc[key] = piece if cur is None else cur + piece

    for key in sorted(total.parts):
        part = total.parts[key]
        p, n = key
        put((p, n + 1), cech_delta(part, cover))
        put((p + 1, n), dbar(part, cover).scaled(-1.0))
    return TotalCochain(
        total.total_degree + 1, {k: v for k, v in acc.items() if v.components}
    )
