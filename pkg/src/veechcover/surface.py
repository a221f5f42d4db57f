"""Base-surface data for the once-punctured regular 2n-gon surface.

Gluing opposite sides of a regular 2n-gon (side length 1, two horizontal
sides, vertices removed) gives a translation surface whose fundamental
group is free on n loops x_1..x_n, one per side pair.  Two affine maps
act on it: the rotation by pi/n and the horizontal shear by
2*cot(pi/2n).  Each induces a substitution rule on the loop generators;
these rules and their inverses drive everything downstream.

The shear rule is only written out on a mixed generating set (the first
half of the generators plus the products x_{n+2-i}^-1 x_i it fixes), so
the images of the remaining generators are solved from the fixed-product
constraints.  Inverse rules are solved the same way and checked by
composition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from . import words
from .words import R, T


@dataclass(frozen=True)
class PolygonParams:
    """Parameters of the 2n-gon surface; n >= 4 throughout."""

    n: int

    def __post_init__(self):
        if self.n < 4:
            raise ValueError(f"polygon parameter n must be >= 4, got {self.n}")

    @property
    def elliptic_order(self) -> int:
        """Projective order of the rotation generator."""
        return self.n

    @property
    def genus_type(self) -> tuple[int, int]:
        """(genus, punctures) of the glued surface."""
        n = self.n
        if n % 2 == 0:
            return (n // 2, 1)
        return ((n - 1) // 2, 2)


def polygon_params(n: int) -> PolygonParams:
    return PolygonParams(n)


@dataclass(frozen=True)
class SubstitutionRule:
    """An endomorphism of the rank-n free group given by generator images.

    All rules constructed here are automorphisms; the dedicated
    constructors verify this by composing with a solved inverse rule.
    """

    n: int
    images: tuple[tuple[int, ...], ...]

    def apply(self, word):
        return words.apply_rule(self, word)

    def image_of(self, generator: int):
        return self.images[generator - 1]


def identity_rule(n: int) -> SubstitutionRule:
    return SubstitutionRule(n, tuple((i,) for i in range(1, n + 1)))


def inversion_rule(n: int) -> SubstitutionRule:
    """x_i -> x_i^-1 for every i; the rule of the central element -I."""
    return SubstitutionRule(n, tuple((-i,) for i in range(1, n + 1)))


def compose_rules(a: SubstitutionRule, b: SubstitutionRule) -> SubstitutionRule:
    """Rule for "a after b": generator i maps to a(b(x_i))."""
    if a.n != b.n:
        raise ValueError("rank mismatch")
    return SubstitutionRule(a.n, tuple(a.apply(img) for img in b.images))


def rules_are_inverse(a: SubstitutionRule, b: SubstitutionRule) -> bool:
    ident = identity_rule(a.n)
    return compose_rules(a, b) == ident and compose_rules(b, a) == ident


# -- rotation ---------------------------------------------------------------

@lru_cache(maxsize=None)
def _rotation_images(n: int):
    return tuple((i + 1,) for i in range(1, n)) + ((-1,),)


@lru_cache(maxsize=None)
def _rotation_inverse_images(n: int):
    # x_1 -> x_n^-1 (from x_n -> x_1^-1), x_i -> x_{i-1} otherwise.
    return ((-n,),) + tuple((i - 1,) for i in range(2, n + 1))


def rotation_rule(params: PolygonParams) -> SubstitutionRule:
    """Substitution induced by the rotation: x_i -> x_{i+1}, x_n -> x_1^-1."""
    return SubstitutionRule(params.n, _rotation_images(params.n))


def rotation_rule_inverse(params: PolygonParams) -> SubstitutionRule:
    return SubstitutionRule(params.n, _rotation_inverse_images(params.n))


# -- shear ------------------------------------------------------------------

def _shear_images_even(n: int):
    half = n // 2

    def fixed_product(j):  # x_{n+2-j}^-1 x_j, fixed by the rule
        return (-(n + 2 - j), j)

    def chain(top):  # product of fixed_product(j) for j = top, top-1, .., 2
        out = []
        for j in range(top, 1, -1):
            out.extend(fixed_product(j))
        return tuple(out)

    imgs = {1: (1,)}
    for i in range(2, half + 1):
        imgs[i] = words.reduce_word(chain(i) + (1, 1, i))
    imgs[half + 1] = words.reduce_word(chain(half) + (1, 1, half + 1))
    for i in range(half + 2, n + 1):
        ip = n + 2 - i  # partner generator in 2..half
        imgs[i] = words.concat_words(imgs[ip], (-ip, i))
    return tuple(imgs[i] for i in range(1, n + 1))


def _shear_inverse_images_even(n: int):
    half = n // 2

    def chain(top):
        out = []
        for j in range(top, 1, -1):
            out.extend((-(n + 2 - j), j))
        return tuple(out)

    # From x_i -> C_i x_1^2 x_i with C_i a product of fixed words:
    # inverse image of x_i is x_1^-2 C_i^-1 x_i.
    imgs = {1: (1,)}
    for i in range(2, half + 1):
        imgs[i] = words.concat_words((-1, -1), words.invert_word(chain(i)), (i,))
    imgs[half + 1] = words.concat_words(
        (-1, -1), words.invert_word(chain(half)), (half + 1,)
    )
    for i in range(half + 2, n + 1):
        ip = n + 2 - i
        imgs[i] = words.concat_words((-1, -1), words.invert_word(chain(ip)), (i,))
    return tuple(imgs[i] for i in range(1, n + 1))


def _shear_images_odd(n: int):
    half = (n - 1) // 2

    def fixed_product(j):  # x_{n+1-j}^-1 x_j
        return (-(n + 1 - j), j)

    def chain(top):  # j = top, .., 1
        out = []
        for j in range(top, 0, -1):
            out.extend(fixed_product(j))
        return tuple(out)

    imgs = {}
    for i in range(1, half + 1):
        imgs[i] = words.reduce_word(chain(i) + (i,))
    imgs[half + 1] = words.reduce_word(chain(half) + (half + 1,))
    for i in range(half + 2, n + 1):
        ip = n + 1 - i
        imgs[i] = words.concat_words(imgs[ip], (-ip, i))
    return tuple(imgs[i] for i in range(1, n + 1))


def _shear_inverse_images_odd(n: int):
    half = (n - 1) // 2

    def chain(top):
        out = []
        for j in range(top, 0, -1):
            out.extend((-(n + 1 - j), j))
        return tuple(out)

    imgs = {}
    for i in range(1, half + 1):
        imgs[i] = words.concat_words(words.invert_word(chain(i)), (i,))
    imgs[half + 1] = words.concat_words(words.invert_word(chain(half)), (half + 1,))
    for i in range(half + 2, n + 1):
        ip = n + 1 - i
        imgs[i] = words.concat_words(words.invert_word(chain(ip)), (i,))
    return tuple(imgs[i] for i in range(1, n + 1))


@lru_cache(maxsize=None)
def _shear_pair(n: int):
    if n % 2 == 0:
        rule = SubstitutionRule(n, _shear_images_even(n))
        inv = SubstitutionRule(n, _shear_inverse_images_even(n))
    else:
        rule = SubstitutionRule(n, _shear_images_odd(n))
        inv = SubstitutionRule(n, _shear_inverse_images_odd(n))
    if not rules_are_inverse(rule, inv):
        raise AssertionError(f"shear rule inverse check failed for n={n}")
    return rule, inv


def shear_rule(params: PolygonParams) -> SubstitutionRule:
    """Substitution induced by the horizontal shear (explicit images).

    The listed images cover x_1 .. x_{n/2+1} (even n) or x_1 ..
    x_{(n+1)/2} (odd n); the rest are solved from the fixed products.
    """
    return _shear_pair(params.n)[0]


def shear_rule_inverse(params: PolygonParams) -> SubstitutionRule:
    return _shear_pair(params.n)[1]


@lru_cache(maxsize=None)
def letter_rule(n: int, letter: int) -> SubstitutionRule:
    """Rule of a single signed R/T letter (negative letter = inverse)."""
    params = PolygonParams(n)
    if letter == R:
        return rotation_rule(params)
    if letter == -R:
        return rotation_rule_inverse(params)
    if letter == T:
        return shear_rule(params)
    if letter == -T:
        return shear_rule_inverse(params)
    raise ValueError(f"bad letter {letter}")


def word_rule(n: int, word) -> SubstitutionRule:
    """Fully expanded rule of an R/T word (test oracle only).

    Image words grow exponentially with the word length; the incremental
    action states in :mod:`veechcover.actions` are the production path.
    """
    rule = identity_rule(n)
    for a in word:
        rule = compose_rules(rule, letter_rule(n, a))
    return rule


# -- numeric matrices (rendering only) --------------------------------------

_DET_TOL = 1e-9


@dataclass(frozen=True)
class GeneratorMatrix:
    """Float 2x2 matrix of R or T; used only to draw tiles, never to decide."""

    kind: str
    entries: tuple[tuple[float, float], tuple[float, float]]

    def __post_init__(self):
        (a, b), (c, d) = self.entries
        if abs(a * d - b * c - 1.0) > _DET_TOL:
            raise ValueError(f"matrix {self.kind} is not unimodular")


def rotation_matrix(n: int):
    c, s = math.cos(math.pi / n), math.sin(math.pi / n)
    return ((c, -s), (s, c))


def shear_matrix(n: int):
    return ((1.0, 2.0 / math.tan(math.pi / (2 * n))), (0.0, 1.0))


def generator_matrix(params: PolygonParams, kind: str) -> GeneratorMatrix:
    if kind == "R":
        return GeneratorMatrix("R", rotation_matrix(params.n))
    if kind == "T":
        return GeneratorMatrix("T", shear_matrix(params.n))
    raise ValueError(f"bad generator kind {kind!r}")
