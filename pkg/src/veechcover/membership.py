"""Membership of a triangle-group word in the cover's Veech group.

Two decision paths, dispatched by the context mode:

* ``abelian_fast``  — a word belongs iff its mod-d matrix maps the
  subgroup V onto itself; since the matrix is invertible and V finite,
  checking that every generator of V lands back in V suffices.  The sign
  ambiguity of the projective action is invisible here because -V = V.
* ``permutation_general`` — a word belongs iff some fiber point, taken
  as a new basepoint for the word's permuted loop system, has exactly
  the stabilizer of the original basepoint; decided by attempting the
  unique equivariant bijection between the two rooted Schreier graphs,
  for the word and for its negation.
* ``cross_checked``   — runs both and raises on disagreement.

For Abelian covers whose loop images all share one order d (apart from
trivial ones), the fast path is exact.  For other Abelian covers it is
known sufficient but not known necessary, so the default is to cross
check; ``force_abelian`` opts into the fast path alone.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import actions, covers, words

MODES = ("abelian_fast", "permutation_general", "cross_checked")


class OracleDisagreement(RuntimeError):
    """The two membership paths disagreed on a word (test signal)."""


@dataclass(frozen=True)
class MembershipContext:
    n: int
    mode: str
    d: int | None
    subgroup: covers.SubgroupCanonicalForm | None
    sigma: tuple | None
    basepoint: int
    degree: int | None
    analysis: covers.CoverAnalysis

    @property
    def has_matrix(self) -> bool:
        return self.subgroup is not None

    @property
    def has_perms(self) -> bool:
        return self.sigma is not None


def build_context(cover, mode: str = "auto", force_abelian: bool = False) -> MembershipContext:
    """Resolve the membership mode and collect the data each path needs.

    ``cover`` is a MonodromyCover or an AbelianCoverSpec.  ``auto``
    selects the fast path for Abelian covers meeting the order
    condition, cross-checking for other Abelian covers, and the
    permutation path otherwise.
    """
    if isinstance(cover, covers.AbelianCoverSpec):
        analysis = covers.analyze_abelian(cover)
    elif isinstance(cover, covers.MonodromyCover):
        analysis = covers.analyze(cover)
    else:
        raise TypeError(f"not a cover: {cover!r}")

    abelian_ok = analysis.is_galois and analysis.deck_abelian
    if mode == "auto":
        if abelian_ok:
            mode = (
                "abelian_fast"
                if analysis.order_condition or force_abelian
                else "cross_checked"
            )
        else:
            mode = "permutation_general"
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if mode in ("abelian_fast", "cross_checked") and not abelian_ok:
        raise ValueError(f"mode {mode} requires a Galois Abelian cover")

    subgroup = analysis.subgroup if mode != "permutation_general" else None
    sigma = analysis.sigma if mode != "abelian_fast" else None
    return MembershipContext(
        n=analysis.n,
        mode=mode,
        d=analysis.d if subgroup is not None else None,
        subgroup=subgroup,
        sigma=sigma,
        basepoint=analysis.basepoint,
        degree=analysis.degree,
        analysis=analysis,
    )


def initial_state(ctx: MembershipContext) -> actions.ActionState:
    return actions.initial_state(ctx.n, ctx.d, ctx.sigma)


def word_state(ctx: MembershipContext, word) -> actions.ActionState:
    """State of an arbitrary R/T word built from scratch (verification path)."""
    return actions.step_word(initial_state(ctx), word)


def is_member_abelian(ctx: MembershipContext, state: actions.ActionState) -> bool:
    """True iff the state's matrix maps every generator of V back into V."""
    form = ctx.subgroup
    return all(
        form.contains(actions.mat_vec(state.matrix, row, ctx.d))
        for row in form.rows
    )


def is_member_permutation(ctx: MembershipContext, state: actions.ActionState) -> bool:
    """True iff some fiber point's stabilizer under the permuted loop
    system equals the basepoint stabilizer (either sign)."""
    m = ctx.degree
    sigma = ctx.sigma
    base = ctx.basepoint
    for tau in (state.perms, tuple(actions.perm_inverse(p) for p in state.perms)):
        for p in range(m):
            if covers._rooted_graph_match(tau, p, sigma, base, m):
                return True
    return False


def is_member(ctx: MembershipContext, state: actions.ActionState) -> bool:
    if ctx.mode == "abelian_fast":
        return is_member_abelian(ctx, state)
    if ctx.mode == "permutation_general":
        return is_member_permutation(ctx, state)
    fast = is_member_abelian(ctx, state)
    general = is_member_permutation(ctx, state)
    if fast != general:
        raise OracleDisagreement(
            f"oracle disagreement on {words.triangle_str(state.word)}: "
            f"matrix path {fast}, permutation path {general}"
        )
    return fast


def coset_key(ctx: MembershipContext, state: actions.ActionState):
    """Canonical invariant of the state's right coset (Abelian data only).

    Words b, c lie in the same coset iff the matrix of b*c^-1 stabilizes
    V, iff the preimages of V under their matrices coincide; the Howell
    rows of that preimage subgroup are therefore a complete coset key.
    """
    form = ctx.subgroup
    rows = [actions.mat_vec(state.inv_matrix, row, ctx.d) for row in form.rows]
    return covers.canonicalize(rows, ctx.d, ctx.n).rows


def same_coset(
    ctx: MembershipContext,
    candidate: actions.ActionState,
    rep: actions.ActionState,
) -> bool:
    """Decide whether candidate and rep words represent the same coset.

    Equivalent to membership of candidate * rep^-1; each mode uses its
    cheapest faithful formulation (keys for the matrix path, a rooted
    graph match of the two stored permutation tuples for the general
    path, and a from-scratch product state for cross checking).
    """
    if ctx.mode == "abelian_fast":
        return coset_key(ctx, candidate) == coset_key(ctx, rep)
    if ctx.mode == "permutation_general":
        m = ctx.degree
        target = rep.perms
        for tau in (
            candidate.perms,
            tuple(actions.perm_inverse(p) for p in candidate.perms),
        ):
            for p in range(m):
                if covers._rooted_graph_match(tau, p, target, ctx.basepoint, m):
                    return True
        return False
    product = actions.step_word(candidate, words.invert_word(rep.word))
    return is_member(ctx, product)
