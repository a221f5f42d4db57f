"""Reduced words in free generators, shared by the two alphabets in play.

A word is a tuple of nonzero ints: letter ``k > 0`` is the k-th generator
and ``-k`` its inverse.  The covering side uses generators ``1..n`` (the
loops on the base surface), the coset-enumeration side uses the
two-letter alphabet R, T encoded as ``R = 1`` and ``T = 2``.  No group
relations are ever applied to R/T words; two distinct reduced words may
denote the same group element, and all equality questions downstream go
through membership tests.
"""

from __future__ import annotations

# Letters of the two-generator alphabet.
R = 1
T = 2

_TRIANGLE_NAMES = {R: "R", T: "T"}
_TRIANGLE_CODES = {"R": R, "T": T}


def reduce_word(letters) -> tuple[int, ...]:
    """Freely reduce a letter sequence (single stack pass)."""
    out: list[int] = []
    for a in letters:
        if a == 0:
            raise ValueError("0 is not a letter")
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def invert_word(word) -> tuple[int, ...]:
    return tuple(-a for a in reversed(word))


def concat_words(*parts) -> tuple[int, ...]:
    merged: list[int] = []
    for w in parts:
        merged.extend(w)
    return reduce_word(merged)


def concat_inverse(b, d) -> tuple[int, ...]:
    """The reduced word ``b * d^-1``."""
    return concat_words(b, invert_word(d))


def word_power(word, k: int) -> tuple[int, ...]:
    if k < 0:
        return word_power(invert_word(word), -k)
    return concat_words(*([tuple(word)] * k))


def apply_rule(rule, word) -> tuple[int, ...]:
    """Substitute every letter of ``word`` by its image under ``rule``.

    ``rule`` carries an ``images`` sequence with ``images[i-1]`` the
    (reduced) image word of generator ``i``; inverse letters receive the
    inverted image.  The result is freely reduced.
    """
    images = rule.images
    out: list[int] = []
    for a in word:
        img = images[a - 1] if a > 0 else invert_word(images[-a - 1])
        for b in img:
            if out and out[-1] == -b:
                out.pop()
            else:
                out.append(b)
    return tuple(out)


def exponent_vector(word, n: int) -> tuple[int, ...]:
    """Letter-count abelianization of ``word`` as a length-n vector."""
    v = [0] * n
    for a in word:
        if a > 0:
            v[a - 1] += 1
        else:
            v[-a - 1] -= 1
    return tuple(v)


def triangle_str(word) -> str:
    """Serialize an R/T word: letters left to right, "R^-1" for inverses.

    The empty word prints as "I".
    """
    if not word:
        return "I"
    parts = []
    for a in word:
        name = _TRIANGLE_NAMES[abs(a)]
        parts.append(name if a > 0 else name + "^-1")
    return " ".join(parts)


def triangle_from_str(text: str) -> tuple[int, ...]:
    """Parse the output of :func:`triangle_str` (reducing if needed)."""
    text = text.strip()
    if text in ("", "I"):
        return ()
    out = []
    for tok in text.split():
        sign = 1
        name = tok
        if tok.endswith("^-1"):
            sign = -1
            name = tok[:-3]
        if name not in _TRIANGLE_CODES:
            raise ValueError(f"bad letter {tok!r}")
        out.append(sign * _TRIANGLE_CODES[name])
    return reduce_word(out)


def free_str(word) -> str:
    """Human-readable form of a word in x1..xn, for messages and tests."""
    if not word:
        return "1"
    parts = []
    for a in word:
        parts.append(f"x{a}" if a > 0 else f"x{-a}^-1")
    return " ".join(parts)
