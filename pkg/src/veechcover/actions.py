"""Incremental action states attached to R/T words.

A word acts on covering data in two ways: through an n-by-n matrix over
Z_d (the abelianized substitution action, column i = exponent vector of
the image of x_i) and through an n-tuple of fiber permutations (the
monodromy image of each loop's substitution image).  Both are maintained
one letter at a time, so the exponentially growing image words are never
expanded outside of test oracles.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache

from . import surface, words


# -- matrices over Z_d (row tuples) ------------------------------------------

def mat_identity(n: int, d: int):
    return tuple(
        tuple((1 if i == j else 0) % d for j in range(n)) for i in range(n)
    )


def mat_mul(a, b, d: int):
    n = len(a)
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) % d for col in bt)
        for row in a
    )


def mat_vec(a, v, d: int):
    return tuple(sum(x * y for x, y in zip(row, v)) % d for row in a)


def mat_neg(a, d: int):
    return tuple(tuple((-x) % d for x in row) for row in a)


def mat_pow(a, k: int, d: int):
    out = mat_identity(len(a), d)
    for _ in range(k):
        out = mat_mul(out, a, d)
    return out


def integer_det(a) -> int:
    """Exact determinant of an integer matrix (fraction-free elimination)."""
    m = [list(row) for row in a]
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k]:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


@lru_cache(maxsize=None)
def letter_matrix_integer(n: int, letter: int):
    """Integer abelianization of a signed letter's substitution rule."""
    rule = surface.letter_rule(n, letter)
    cols = [words.exponent_vector(img, n) for img in rule.images]
    return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))


@lru_cache(maxsize=None)
def letter_matrix(n: int, d: int, letter: int):
    """Column i = exponent vector of the letter's image of x_i, mod d."""
    return tuple(
        tuple(x % d for x in row) for row in letter_matrix_integer(n, letter)
    )


# -- permutations (0-indexed image tuples, right action) ----------------------

def perm_identity(m: int):
    return tuple(range(m))


def perm_inverse(p):
    out = [0] * len(p)
    for j, k in enumerate(p):
        out[k] = j
    return tuple(out)


def perm_compose(a, b):
    """Apply a, then b."""
    return tuple(b[x] for x in a)


def evaluate_word(word, perms):
    """Permutation of a free word under x_i -> perms[i-1] (left to right)."""
    m = len(perms[0])
    cur = list(range(m))
    for a in word:
        p = perms[a - 1] if a > 0 else perm_inverse(perms[-a - 1])
        cur = [p[x] for x in cur]
    return tuple(cur)


# -- the state ----------------------------------------------------------------

@dataclass(frozen=True)
class ActionState:
    """Action data of one R/T word.

    ``matrix`` is the mod-d matrix of the word, ``inv_matrix`` its
    inverse (maintained directly, never inverted numerically), and
    ``perms`` the n-tuple of fiber permutations.  Either half may be
    absent depending on the membership mode.  After :func:`negate` the
    word field still names the un-negated word; negation is only used
    transiently for the sign ambiguity of the projective action.
    """

    n: int
    word: tuple[int, ...]
    d: int | None = None
    matrix: tuple | None = None
    inv_matrix: tuple | None = None
    perms: tuple | None = None


def initial_state(n: int, d: int | None = None, sigma=None) -> ActionState:
    matrix = inv = mat_identity(n, d) if d is not None else None
    return ActionState(n, (), d, matrix, inv, sigma)


def step(state: ActionState, letter: int) -> ActionState:
    """State of ``word * letter`` (letter may be negative = inverse)."""
    n = state.n
    word = words.concat_words(state.word, (letter,))
    matrix = inv_matrix = None
    if state.matrix is not None:
        matrix = mat_mul(state.matrix, letter_matrix(n, state.d, letter), state.d)
        inv_matrix = mat_mul(
            letter_matrix(n, state.d, -letter), state.inv_matrix, state.d
        )
    perms = None
    if state.perms is not None:
        rule = surface.letter_rule(n, letter)
        perms = tuple(evaluate_word(img, state.perms) for img in rule.images)
    return ActionState(n, word, state.d, matrix, inv_matrix, perms)


def step_word(state: ActionState, word) -> ActionState:
    for a in word:
        state = step(state, a)
    return state


def negate(state: ActionState) -> ActionState:
    """State of the projectively equal opposite-sign element."""
    matrix = inv_matrix = None
    if state.matrix is not None:
        matrix = mat_neg(state.matrix, state.d)
        inv_matrix = mat_neg(state.inv_matrix, state.d)
    perms = None
    if state.perms is not None:
        perms = tuple(perm_inverse(p) for p in state.perms)
    return replace(state, matrix=matrix, inv_matrix=inv_matrix, perms=perms)
