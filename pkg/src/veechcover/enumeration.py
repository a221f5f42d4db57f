"""Breadth-first Reidemeister-Schreier enumeration of the coset space.

Starting from the identity word, each dequeued representative A spawns
the successors A*T and A*R (in that order).  A successor already
represented by the list is recorded as a Schreier generator
successor * representative^-1 (the scan stops at the first member, which
is also the only possible one since representatives lie in distinct
cosets); otherwise the successor joins the list and the queue.  The two
(total) maps "coset of A*T" and "coset of A*R" come out as permutations
of the representative indices.

Termination is guaranteed for Abelian covers, where distinct cosets have
distinct mod-d matrices up to sign; the default cap is the order of the
unit-determinant matrix group (doubled for odd n, where the rotation
matrix has determinant -1).  For general covers the caller must supply a
cap as the safety net.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from . import actions, membership, words
from .words import R, T


class CapExceeded(RuntimeError):
    """The representative list would outgrow the configured cap."""


@dataclass(frozen=True)
class EnumerationResult:
    n: int
    d: int | None
    mode: str
    index: int
    rep: tuple[tuple[int, ...], ...]
    gen: tuple[tuple[int, ...], ...]
    perm_T: tuple[int, ...]
    perm_R: tuple[int, ...]
    elapsed: float

    def rep_strings(self):
        return [words.triangle_str(w) for w in self.rep]

    def gen_strings(self):
        return [words.triangle_str(w) for w in self.gen]


def _factorize(d: int):
    out = []
    p = 2
    while p * p <= d:
        if d % p == 0:
            k = 0
            while d % p == 0:
                d //= p
                k += 1
            out.append((p, k))
        p += 1
    if d > 1:
        out.append((d, 1))
    return out


def sl_order(n: int, d: int) -> int:
    """Order of the determinant-one matrix group over Z_d."""
    if d == 1:
        return 1
    total = 1
    for p, k in _factorize(d):
        q = p ** (n * (n - 1) // 2)
        for i in range(2, n + 1):
            q *= p**i - 1
        total *= q * p ** ((k - 1) * (n * n - 1))
    return total


def default_cap(ctx: membership.MembershipContext) -> int | None:
    """Matrix-group bound on the index for Abelian covers, else None.

    The enumeration cannot produce more representatives than there are
    sign-classes of reachable matrices; odd n doubles the bound because
    the rotation matrix has determinant -1 there.
    """
    if ctx.subgroup is None:
        return None
    bound = sl_order(ctx.n, ctx.d)
    if ctx.n % 2 == 1:
        bound *= 2
    return bound


def enumerate_cosets(
    ctx: membership.MembershipContext, cap: int | None = None
) -> EnumerationResult:
    if cap is None:
        cap = default_cap(ctx)
        if cap is None:
            raise ValueError("general covers need an explicit enumeration cap")
    if cap < 1:
        raise ValueError("cap must be >= 1")

    start = time.perf_counter()
    init = membership.initial_state(ctx)
    rep_states = [init]
    keyed = ctx.mode == "abelian_fast"
    key_index = {membership.coset_key(ctx, init): 0} if keyed else None

    gens: list[tuple[int, ...]] = []
    seen_gens: set[tuple[int, ...]] = set()
    perm_t: list[int] = []
    perm_r: list[int] = []

    cursor = 0
    while cursor < len(rep_states):
        current = rep_states[cursor]
        for letter in (T, R):
            succ = actions.step(current, letter)
            if keyed:
                hit = key_index.get(membership.coset_key(ctx, succ))
            else:
                hit = None
                for j, rep in enumerate(rep_states):
                    if membership.same_coset(ctx, succ, rep):
                        hit = j
                        break
            if hit is None:
                if len(rep_states) + 1 > cap:
                    raise CapExceeded(
                        f"cap exceeded: more than {cap} coset representatives"
                    )
                if keyed:
                    key_index[membership.coset_key(ctx, succ)] = len(rep_states)
                rep_states.append(succ)
                hit = len(rep_states) - 1
            else:
                gen = words.concat_inverse(succ.word, rep_states[hit].word)
                if gen and gen not in seen_gens:
                    seen_gens.add(gen)
                    gens.append(gen)
            (perm_t if letter == T else perm_r).append(hit)
        cursor += 1

    return EnumerationResult(
        n=ctx.n,
        d=ctx.d,
        mode=ctx.mode,
        index=len(rep_states),
        rep=tuple(s.word for s in rep_states),
        gen=tuple(gens),
        perm_T=tuple(perm_t),
        perm_R=tuple(perm_r),
        elapsed=time.perf_counter() - start,
    )


# -- re-verification -----------------------------------------------------------

@dataclass(frozen=True)
class VerifyReport:
    passed: bool
    clauses: dict[str, bool]
    pairs_checked: int
    pairs_total: int

    def as_dict(self) -> dict:
        return {
            "passed": self.passed,
            "clauses": dict(self.clauses),
            "pairs_checked": self.pairs_checked,
            "pairs_total": self.pairs_total,
        }


def _distinct_pairs(index: int, pair_limit: int):
    """Deterministic pair selection: everything below the limit, else all
    pairs among a prefix plus an evenly strided sample of the rest."""
    if index <= pair_limit:
        for a in range(index):
            for b in range(a + 1, index):
                yield a, b
        return
    prefix = max(2, pair_limit // 4)
    for a in range(prefix):
        for b in range(a + 1, prefix):
            yield a, b
    budget = pair_limit * pair_limit // 2
    stride = max(1, (index * (index - 1) // 2) // budget)
    count = 0
    for a in range(index):
        for b in range(a + 1, index):
            if count % stride == 0 and (a >= prefix or b >= prefix):
                yield a, b
            count += 1


def verify_result(
    ctx: membership.MembershipContext,
    result: EnumerationResult,
    pair_limit: int = 128,
) -> VerifyReport:
    """Re-check the enumeration invariants by direct membership calls.

    Every state is rebuilt from its word from scratch, so this is an
    independent pass over the result rather than a replay of the
    enumerator's bookkeeping.  The all-pairs distinct-coset check is
    complete up to ``pair_limit`` representatives and sampled
    deterministically beyond that.
    """
    index = result.index
    clauses: dict[str, bool] = {}
    clauses["identity_first"] = bool(result.rep) and result.rep[0] == ()

    ok = len(result.perm_T) == index and len(result.perm_R) == index
    if ok:
        for a in range(index):
            for letter, perm in ((T, result.perm_T), (R, result.perm_R)):
                w = words.concat_words(
                    result.rep[a], (letter,), words.invert_word(result.rep[perm[a]])
                )
                if not membership.is_member(ctx, membership.word_state(ctx, w)):
                    ok = False
                    break
            if not ok:
                break
    clauses["schreier_products_members"] = ok

    ok = True
    pairs_checked = 0
    for a, b in _distinct_pairs(index, pair_limit):
        pairs_checked += 1
        w = words.concat_inverse(result.rep[a], result.rep[b])
        if membership.is_member(ctx, membership.word_state(ctx, w)):
            ok = False
            break
    clauses["reps_distinct_cosets"] = ok

    clauses["perm_R_orbits_divide_n"] = all(
        result.n % size == 0 for size in _orbit_sizes(result.perm_R)
    )

    seen = [False] * index
    seen[0] = True
    stack = [0]
    while stack:
        a = stack.pop()
        for perm in (result.perm_T, result.perm_R):
            if not seen[perm[a]]:
                seen[perm[a]] = True
                stack.append(perm[a])
    clauses["perms_transitive"] = all(seen)

    return VerifyReport(
        passed=all(clauses.values()),
        clauses=clauses,
        pairs_checked=pairs_checked,
        pairs_total=index * (index - 1) // 2,
    )


def _orbit_sizes(perm):
    seen = [False] * len(perm)
    sizes = []
    for s in range(len(perm)):
        if seen[s]:
            continue
        size = 0
        j = s
        while not seen[j]:
            seen[j] = True
            size += 1
            j = perm[j]
        sizes.append(size)
    return sizes
