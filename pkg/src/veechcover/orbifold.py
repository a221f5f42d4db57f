"""Fundamental domain assembly and the orbifold signature of the quotient.

Each coset representative contributes one copy of the base domain: the
ideal quadrilateral in the upper half-plane with corners i, +cot(pi/2n),
-cot(pi/2n) and infinity, bounded by two vertical sides (crossed by the
shear) and two geodesic sides into i (crossed by the rotation).  The two
coset permutations encode all side identifications, so vertex classes
are their orbit structures:

* infinity corners cycle along the T permutation (one puncture per orbit);
* i corners cycle along the R permutation; an orbit of size k < n is a
  cone point of angle 2*pi*k/n, i.e. order n/k, and a full orbit of size
  n is a smooth point;
* the two cot corners alternate through a T crossing followed by a
  reversed R crossing, so their classes are the orbits of
  perm_R^-1 o perm_T (one puncture per orbit).

Genus then follows from the Euler count with index quadrilaterals,
2*index glued edges and the total number of vertex classes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import surface, words
from .enumeration import EnumerationResult
from .words import R, T


def orbits(perm) -> list[list[int]]:
    seen = [False] * len(perm)
    out = []
    for s in range(len(perm)):
        if seen[s]:
            continue
        orbit = []
        j = s
        while not seen[j]:
            seen[j] = True
            orbit.append(j)
            j = perm[j]
        out.append(orbit)
    return out


def _perm_inverse(p):
    out = [0] * len(p)
    for j, k in enumerate(p):
        out[k] = j
    return tuple(out)


@dataclass(frozen=True)
class OrbifoldSignature:
    genus: int
    punctures: int
    cone_points: tuple[int, ...]   # orders, ascending
    v_infinity: int
    v_cot: int
    v_cone: int

    @property
    def vertex_count(self) -> int:
        return self.v_infinity + self.v_cot + self.v_cone

    def as_dict(self) -> dict:
        return {
            "genus": self.genus,
            "punctures": self.punctures,
            "cone_points": list(self.cone_points),
            "v_infinity": self.v_infinity,
            "v_cot": self.v_cot,
            "v_cone": self.v_cone,
        }


def signature(result: EnumerationResult, n: int | None = None) -> OrbifoldSignature:
    """Orbifold signature of the quotient surface for an enumeration result."""
    n = result.n if n is None else n
    index = result.index

    t_orbits = orbits(result.perm_T)
    r_orbits = orbits(result.perm_R)
    for orbit in r_orbits:
        if n % len(orbit) != 0:
            raise RuntimeError(
                f"rotation orbit of size {len(orbit)} does not divide n={n}"
            )
    inv_r = _perm_inverse(result.perm_R)
    composite = tuple(inv_r[result.perm_T[a]] for a in range(index))
    c_orbits = orbits(composite)

    v_inf, v_cot, v_cone = len(t_orbits), len(c_orbits), len(r_orbits)
    v = v_inf + v_cot + v_cone
    numerator = 2 + index - v
    if numerator < 0 or numerator % 2 != 0:
        raise RuntimeError(
            f"Euler count failed: index={index}, vertex classes={v}"
        )
    cones = tuple(sorted(n // len(o) for o in r_orbits if len(o) < n))
    return OrbifoldSignature(
        genus=numerator // 2,
        punctures=v_inf + v_cot,
        cone_points=cones,
        v_infinity=v_inf,
        v_cot=v_cot,
        v_cone=v_cone,
    )


# -- side pairings -------------------------------------------------------------

@dataclass(frozen=True)
class SidePairing:
    """One glued side pair: the ``kind``-side of ``tile`` meets the
    ``kind``-inverse side of ``partner``; the pairing element is
    rep[tile] * kind * rep[partner]^-1.  ``tree_wall`` marks pairs whose
    two arcs coincide inside the domain union (partner literally the
    tile's successor word), which are walls between tiles rather than
    boundary identifications."""

    kind: str
    tile: int
    partner: int
    word: tuple[int, ...]
    tree_wall: bool


def side_pairings(result: EnumerationResult) -> tuple[SidePairing, ...]:
    out = []
    for kind, letter, perm in (("T", T, result.perm_T), ("R", R, result.perm_R)):
        for a in range(result.index):
            b = perm[a]
            word = words.concat_words(
                result.rep[a], (letter,), words.invert_word(result.rep[b])
            )
            tree = result.rep[b] == result.rep[a] + (letter,)
            out.append(SidePairing(kind, a, b, word, tree))
    return tuple(out)


# -- numeric tiles (rendering only) ---------------------------------------------

@dataclass(frozen=True)
class DomainTile:
    """Float corner positions of one translate of the base domain.

    ``None`` stands for the boundary point at infinity.  Corners are
    keyed 'i', 'cot_plus', 'cot_minus', 'infinity' after the base
    domain; sides pair corners as R-side (cot_plus, i), R^-1-side
    (cot_minus, i), T-side (cot_plus, infinity), T^-1-side
    (cot_minus, infinity).
    """

    index: int
    word: tuple[int, ...]
    corners: dict


_SIDES = (
    ("R", "cot_plus", "i"),
    ("R^-1", "cot_minus", "i"),
    ("T", "cot_plus", "infinity"),
    ("T^-1", "cot_minus", "infinity"),
)


def base_corners(n: int) -> dict:
    c = 1.0 / math.tan(math.pi / (2 * n))
    return {"i": complex(0.0, 1.0), "cot_plus": complex(c, 0.0),
            "cot_minus": complex(-c, 0.0), "infinity": None}


def _mat_mul2(a, b):
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )


def _mat_inv2(a):
    # unimodular 2x2 inverse
    return ((a[1][1], -a[0][1]), (-a[1][0], a[0][0]))


def word_matrix(word, n: int):
    rot = surface.rotation_matrix(n)
    shear = surface.shear_matrix(n)
    by_letter = {R: rot, T: shear, -R: _mat_inv2(rot), -T: _mat_inv2(shear)}
    out = ((1.0, 0.0), (0.0, 1.0))
    for a in word:
        out = _mat_mul2(out, by_letter[a])
    return out


_INF_TOL = 1e-9


def mobius(mat, z):
    """Apply a 2x2 real matrix as a Mobius map; ``None`` is infinity."""
    (a, b), (c, d) = mat
    if z is None:
        if abs(c) < _INF_TOL:
            return None
        return complex(a / c, 0.0)
    den = c * z + d
    if abs(den) < _INF_TOL:
        return None
    return (a * z + b) / den


def domain_tiles(result: EnumerationResult, n: int | None = None) -> tuple[DomainTile, ...]:
    n = result.n if n is None else n
    base = base_corners(n)
    tiles = []
    for idx, word in enumerate(result.rep):
        mat = word_matrix(word, n)
        corners = {name: mobius(mat, z) for name, z in base.items()}
        tiles.append(DomainTile(idx, word, corners))
    return tuple(tiles)


def tile_sides(tile: DomainTile):
    """The four (kind, endpoint, endpoint) side descriptors of a tile."""
    return tuple(
        (kind, tile.corners[p], tile.corners[q]) for kind, p, q in _SIDES
    )
