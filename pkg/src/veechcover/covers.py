"""Covering-space specifications of the 2n-gon surface and their analysis.

Two input shapes are supported:

* a monodromy cover: n permutations of the fiber ``{1..m}`` recording how
  the loops x_1..x_n permute the sheets (right action, letters applied
  left to right), plus a basepoint sheet;
* an Abelian cover: a modulus ``d`` and a subgroup ``V`` of (Z_d)^n given
  by generating vectors, where the coordinate map sends the loop x_i to
  the i-th basis vector.

Subgroups of (Z_d)^n are put into Howell normal form so that equal
subgroups always produce identical row matrices; the form also supports
membership by reduction, which is what the fast membership predicate
needs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce as _functools_reduce


class CoverError(ValueError):
    """Invalid covering data."""


# -- subgroups of (Z_d)^n ----------------------------------------------------

@dataclass(frozen=True)
class SubgroupCanonicalForm:
    """Howell normal form of a subgroup of (Z_d)^n.

    ``rows`` is the canonical echelon matrix (possibly empty); two
    generating sets span the same subgroup exactly when their forms have
    equal rows.  ``pivots`` lists (column, pivot value) per row.
    """

    d: int
    n: int
    rows: tuple[tuple[int, ...], ...]
    pivots: tuple[tuple[int, int], ...] = field(repr=False)
    cardinality: int

    def reduce(self, vector) -> tuple[int, ...]:
        """Canonical representative of ``vector`` modulo the subgroup."""
        d = self.d
        if d == 1:
            return tuple(0 for _ in range(self.n))
        v = [x % d for x in vector]
        for row, (col, piv) in zip(self.rows, self.pivots):
            if v[col] % piv == 0:
                q = v[col] // piv
                if q:
                    for k in range(col, self.n):
                        v[k] = (v[k] - q * row[k]) % d
        return tuple(v)

    def contains(self, vector) -> bool:
        return not any(self.reduce(vector))

    def __contains__(self, vector) -> bool:
        return self.contains(vector)


def _leading(v):
    for i, x in enumerate(v):
        if x:
            return i
    return None


def _unit_scaling(value: int, d: int) -> int:
    # unit u with (u * value) % d == gcd(value, d); d is small here
    g = math.gcd(value, d)
    for u in range(1, d + 1):
        if math.gcd(u, d) == 1 and (u * value) % d == g:
            return u
    raise AssertionError("no unit scaling found")  # unreachable

def canonicalize(gens, d: int, n: int) -> SubgroupCanonicalForm:
    """Howell normal form of the subgroup of (Z_d)^n spanned by ``gens``."""
    if d < 1:
        raise ValueError("modulus must be >= 1")
    if d == 1:
        return SubgroupCanonicalForm(1, n, (), (), 1)

    echelon: dict[int, list[int]] = {}  # pivot column -> row

    def insert(v):
        v = [x % d for x in v]
        while True:
            col = _leading(v)
            if col is None:
                return
            if col not in echelon:
                echelon[col] = v
                return
            h = echelon[col]
            g, x, y = _xgcd(h[col], v[col])
            combined = [(x * a + y * b) % d for a, b in zip(h, v)]
            # re-express both old rows over the new pivot row
            qh, qv = h[col] // g, v[col] // g
            leftover_h = [(a - qh * c) % d for a, c in zip(h, combined)]
            v = [(b - qv * c) % d for b, c in zip(v, combined)]
            echelon[col] = combined
            if any(leftover_h):
                insert(leftover_h)

    for g in gens:
        if len(g) != n:
            raise ValueError("generator length mismatch")
        insert(list(g))

    # Howell property: the annihilator multiple of every pivot row must
    # itself lie in the row span; iterate to a fixed point.
    while True:
        snapshot = sorted((c, tuple(r)) for c, r in echelon.items())
        for col, row in list(echelon.items()):
            ann = d // math.gcd(row[col], d)
            extra = [(ann * x) % d for x in row]
            if any(extra):
                insert(extra)
        if sorted((c, tuple(r)) for c, r in echelon.items()) == snapshot:
            break

    # normalize pivots to divisors of d and clear entries above pivots
    ordered_cols = sorted(echelon)
    rows = []
    for col in ordered_cols:
        row = echelon[col]
        u = _unit_scaling(row[col], d)
        rows.append([(u * x) % d for x in row])
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            col = ordered_cols[j]
            piv = rows[j][col]
            q = rows[i][col] // piv
            if q:
                rows[i] = [(a - q * b) % d for a, b in zip(rows[i], rows[j])]

    pivots = tuple((col, rows[i][col]) for i, col in enumerate(ordered_cols))
    card = 1
    for _, piv in pivots:
        card *= d // piv
    return SubgroupCanonicalForm(
        d, n, tuple(tuple(r) for r in rows), pivots, card
    )


def _xgcd(a: int, b: int):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def kernel_generators(coeffs, d: int) -> tuple[tuple[int, ...], ...]:
    """Generators of {v : sum coeffs[i]*v[i] = 0 mod d}.

    Requires a unit coefficient (true for every built-in preset); the
    kernel then has index d and n-1 generators.
    """
    n = len(coeffs)
    pivot = None
    for i, c in enumerate(coeffs):
        if math.gcd(c % d, d) == 1 or d == 1:
            pivot = i
            break
    if pivot is None:
        raise ValueError("no unit coefficient in functional")
    if d == 1:
        return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    inv = pow(coeffs[pivot] % d, -1, d)
    gens = []
    for j in range(n):
        if j == pivot:
            continue
        v = [0] * n
        v[j] = 1
        v[pivot] = (-inv * coeffs[j]) % d
        gens.append(tuple(v))
    return tuple(gens)


# -- cover specifications ----------------------------------------------------

@dataclass(frozen=True)
class MonodromyCover:
    """Finite unramified cover given by its fiber permutations.

    ``perms[i]`` is the 0-indexed image tuple of the loop x_{i+1} acting
    on the fiber; ``basepoint`` is the 0-indexed sheet of the chosen
    preimage of the polygon center.
    """

    n: int
    degree: int
    perms: tuple[tuple[int, ...], ...]
    basepoint: int = 0

    def __post_init__(self):
        m = self.degree
        if m < 1:
            raise CoverError("degree must be >= 1")
        if len(self.perms) != self.n:
            raise CoverError(f"need {self.n} permutations, got {len(self.perms)}")
        for p in self.perms:
            if len(p) != m or sorted(p) != list(range(m)):
                raise CoverError(f"not a permutation of 0..{m - 1}: {p}")
        if not 0 <= self.basepoint < m:
            raise CoverError("basepoint out of range")
        if not _transitive(self.perms, m):
            raise CoverError("disconnected cover")


@dataclass(frozen=True)
class AbelianCoverSpec:
    """Abelian cover given by (d, V); the cover's loops are ker of the
    coordinate map into (Z_d)^n / V."""

    n: int
    d: int
    gens: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.d < 1:
            raise CoverError("d must be >= 1")
        for v in self.gens:
            if len(v) != self.n:
                raise CoverError("generator length mismatch")
            if any(not 0 <= x < max(self.d, 1) for x in v):
                raise CoverError("generator entries must lie in 0..d-1")


def _transitive(perms, m: int) -> bool:
    seen = [False] * m
    seen[0] = True
    stack = [0]
    while stack:
        j = stack.pop()
        for p in perms:
            for k in (p[j],):
                if not seen[k]:
                    seen[k] = True
                    stack.append(k)
    return all(seen)


def _perm_order(p) -> int:
    m = len(p)
    seen = [False] * m
    order = 1
    for s in range(m):
        if seen[s]:
            continue
        length = 0
        j = s
        while not seen[j]:
            seen[j] = True
            length += 1
            j = p[j]
        order = order * length // math.gcd(order, length)
    return order


def _rooted_graph_match(tau, p, sigma, q, m) -> bool:
    """Unique equivariant map of Schreier graphs sending p to q, if any.

    Returns True when the tuple actions ``tau`` and ``sigma`` admit a
    bijection f with f(p) = q and f(j . x_i) = f(j) . x_i for all j, i;
    equivalently the stabilizer of p under tau equals that of q under
    sigma, both actions being transitive.
    """
    f = [-1] * m
    f[p] = q
    stack = [p]
    while stack:
        j = stack.pop()
        fj = f[j]
        for t, s in zip(tau, sigma):
            j2 = t[j]
            target = s[fj]
            if f[j2] < 0:
                f[j2] = target
                stack.append(j2)
            elif f[j2] != target:
                return False
    if -1 in f:
        return False
    return len(set(f)) == m


@dataclass(frozen=True)
class CoverAnalysis:
    """Structure report of a cover: Galois property, deck group data, and
    the (d, V) pair when the deck group is Abelian."""

    kind: str                      # "monodromy" | "abelian"
    n: int
    degree: int
    basepoint: int
    sigma: tuple[tuple[int, ...], ...]
    is_galois: bool
    deck_abelian: bool
    exponent: int | None           # lcm of deck orders of the loop images
    d: int | None                  # modulus used for the matrix action
    orders: tuple[int, ...] | None
    subgroup: SubgroupCanonicalForm | None
    order_condition: bool          # orders form {e} or {1, e}

    def as_dict(self) -> dict:
        out = {
            "kind": self.kind,
            "degree": self.degree,
            "is_galois": self.is_galois,
            "deck_abelian": self.deck_abelian,
        }
        if self.d is not None:
            out["d"] = self.d
            out["orders"] = list(self.orders)
            out["V"] = [list(r) for r in self.subgroup.rows]
            out["order_condition"] = self.order_condition
        return out


def _schreier_subgroup_image(cover: MonodromyCover, d: int) -> SubgroupCanonicalForm:
    """Coordinate image of the basepoint stabilizer, via Schreier vectors.

    A spanning tree of the fiber graph assigns each sheet the exponent
    vector of its transversal word; every Schreier generator then
    abelianizes to tree(j) + e_i - tree(j . x_i).
    """
    n, m = cover.n, cover.degree
    tree = [None] * m
    tree[cover.basepoint] = tuple(0 for _ in range(n))
    queue = [cover.basepoint]
    while queue:
        j = queue.pop(0)
        for i in range(n):
            j2 = cover.perms[i][j]
            if tree[j2] is None:
                vec = list(tree[j])
                vec[i] += 1
                tree[j2] = tuple(vec)
                queue.append(j2)
    gens = []
    for j in range(m):
        for i in range(n):
            j2 = cover.perms[i][j]
            vec = list(tree[j])
            vec[i] += 1
            gens.append(tuple(a - b for a, b in zip(vec, tree[j2])))
    return canonicalize(gens, d, n)


def _order_condition(orders, exponent) -> bool:
    s = set(orders)
    return s == {exponent} or s == {1, exponent}


def analyze(cover: MonodromyCover) -> CoverAnalysis:
    """Classify a monodromy cover and extract its Abelian data if present."""
    n, m = cover.n, cover.degree
    if not _transitive(cover.perms, m):
        raise CoverError("disconnected cover")
    base = cover.basepoint
    is_galois = all(
        _rooted_graph_match(cover.perms, p, cover.perms, base, m)
        for p in range(m)
        if p != base
    )
    deck_abelian = is_galois and all(
        tuple(q[p[j]] for j in range(m)) == tuple(p[q[j]] for j in range(m))
        for a, p in enumerate(cover.perms)
        for q in cover.perms[a + 1:]
    )
    if not (is_galois and deck_abelian):
        return CoverAnalysis(
            "monodromy", n, m, base, cover.perms, is_galois, deck_abelian,
            None, None, None, None, False,
        )
    orders = tuple(_perm_order(p) for p in cover.perms)
    exponent = _functools_reduce(lambda a, b: a * b // math.gcd(a, b), orders, 1)
    subgroup = _schreier_subgroup_image(cover, exponent)
    return CoverAnalysis(
        "monodromy", n, m, base, cover.perms, True, True,
        exponent, exponent, orders, subgroup,
        _order_condition(orders, exponent),
    )


def deck_cover(spec: AbelianCoverSpec) -> MonodromyCover:
    """Monodromy cover of an Abelian spec: translation action on
    (Z_d)^n / V, basepoint the zero coset."""
    n, d = spec.n, spec.d
    form = canonicalize(spec.gens, d, n)
    zero = form.reduce(tuple(0 for _ in range(n)))
    index_of = {zero: 0}
    fiber = [zero]
    queue = [zero]
    basis = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    while queue:
        v = queue.pop(0)
        for e in basis:
            w = form.reduce(tuple((a + b) % max(d, 1) for a, b in zip(v, e)))
            if w not in index_of:
                index_of[w] = len(fiber)
                fiber.append(w)
                queue.append(w)
    perms = tuple(
        tuple(
            index_of[form.reduce(tuple((a + b) % max(d, 1) for a, b in zip(v, e)))]
            for v in fiber
        )
        for e in basis
    )
    return MonodromyCover(n, len(fiber), perms, 0)


def analyze_abelian(spec: AbelianCoverSpec) -> CoverAnalysis:
    """Analysis of an Abelian spec without re-deriving (d, V).

    The declared modulus is kept for the matrix action (the exponent of
    the deck group always divides it); the order condition is judged
    against the true exponent.
    """
    n, d = spec.n, spec.d
    form = canonicalize(spec.gens, d, n)
    cover = deck_cover(spec)
    orders = tuple(_perm_order(p) for p in cover.perms)
    exponent = _functools_reduce(lambda a, b: a * b // math.gcd(a, b), orders, 1)
    return CoverAnalysis(
        "abelian", n, cover.degree, 0, cover.perms, True, True,
        exponent, d, orders, form, _order_condition(orders, exponent),
    )


# -- JSON cover specs --------------------------------------------------------

def cover_from_json(data: dict):
    """Parse the cover-spec schema into a MonodromyCover or AbelianCoverSpec.

    Schema::

        {"n": 4, "cover": {"type": "monodromy", "degree": 2,
                           "perms": [[2,1],[1,2],[2,1],[1,2]]}}
        {"n": 4, "cover": {"type": "abelian", "d": 2,
                           "V": [[0,1,0,0],[0,0,0,1],[1,0,1,0]]}}

    Monodromy permutations are 1-indexed image lists.
    """
    try:
        n = int(data["n"])
        cov = data["cover"]
        kind = cov["type"]
    except (KeyError, TypeError) as exc:
        raise CoverError(f"malformed cover spec: {exc}") from exc
    if n < 4:
        raise CoverError(f"polygon parameter n must be >= 4, got {n}")
    if kind == "monodromy":
        degree = int(cov["degree"])
        perms = cov["perms"]
        if len(perms) != n:
            raise CoverError(f"need {n} permutations, got {len(perms)}")
        converted = []
        for p in perms:
            if sorted(p) != list(range(1, degree + 1)):
                raise CoverError(f"not a permutation of 1..{degree}: {p}")
            converted.append(tuple(x - 1 for x in p))
        return MonodromyCover(n, degree, tuple(converted), 0)
    if kind == "abelian":
        d = int(cov["d"])
        gens = tuple(tuple(int(x) for x in row) for row in cov["V"])
        return AbelianCoverSpec(n, d, gens)
    raise CoverError(f"unknown cover type {kind!r}")


def cover_to_json(n: int, cover) -> dict:
    if isinstance(cover, MonodromyCover):
        return {
            "n": n,
            "cover": {
                "type": "monodromy",
                "degree": cover.degree,
                "perms": [[x + 1 for x in p] for p in cover.perms],
            },
        }
    if isinstance(cover, AbelianCoverSpec):
        return {
            "n": n,
            "cover": {
                "type": "abelian",
                "d": cover.d,
                "V": [list(v) for v in cover.gens],
            },
        }
    raise TypeError(f"not a cover: {cover!r}")
