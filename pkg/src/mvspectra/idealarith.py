"""Arithmetic on lattice ideals and filters of a finite MV-algebra.

The pointwise sum of two ideals collects everything below a sum of
members; the difference of a filter and an ideal collects everything above
a difference.  Both are again an ideal respectively a filter, and they are
adjoint to each other.  The comprehension route here is cross-checked in
the tests against closure-fixpoint oracles.
"""

from __future__ import annotations

import numpy as np

from .errors import AlgebraError


def _as_indices(alg, members, what):
    s = sorted(int(x) for x in members)
    if any(not 0 <= x < alg.n for x in s):
        raise AlgebraError(f"{what} contains out-of-range elements")
    return s


def is_lattice_ideal(alg, members):
    s = frozenset(int(x) for x in members)
    if not s:
        return False
    for a in s:
        if not set(np.flatnonzero(alg.leq[:, a]).tolist()) <= s:
            return False
        if any(int(alg.join[a, b]) not in s for b in s):
            return False
    return True


def is_lattice_filter(alg, members):
    s = frozenset(int(x) for x in members)
    if not s:
        return False
    for a in s:
        if not set(np.flatnonzero(alg.leq[a, :]).tolist()) <= s:
            return False
        if any(int(alg.meet[a, b]) not in s for b in s):
            return False
    return True


def oplus_bar(alg, i, j):
    """{c : c <= a oplus b for some a in i, b in j}."""
    ii = _as_indices(alg, i, "ideal")
    jj = _as_indices(alg, j, "ideal")
    if not is_lattice_ideal(alg, ii) or not is_lattice_ideal(alg, jj):
        raise AlgebraError("oplus_bar needs lattice ideals")
    sums = np.unique(alg.oplus[np.ix_(ii, jj)])
    below = alg.leq[:, sums].any(axis=1)
    return frozenset(np.flatnonzero(below).tolist())


def ominus_bar(alg, f, i):
    """{c : c >= a ominus b for some a in f, b in i}."""
    ff = _as_indices(alg, f, "filter")
    ii = _as_indices(alg, i, "ideal")
    if not is_lattice_filter(alg, ff):
        raise AlgebraError("ominus_bar needs a lattice filter on the left")
    if not is_lattice_ideal(alg, ii):
        raise AlgebraError("ominus_bar needs a lattice ideal on the right")
    diffs = np.unique(alg.ominus[np.ix_(ff, ii)])
    above = alg.leq[diffs, :].any(axis=0)
    return frozenset(np.flatnonzero(above).tolist())


def oplus_bar_oracle(alg, i, j):
    """Lattice-ideal closure of the set of pairwise sums; for cross-checks."""
    cur = {int(alg.oplus[a, b]) for a in i for b in j}
    while True:
        nxt = set(cur)
        for a in cur:
            nxt.update(np.flatnonzero(alg.leq[:, a]).tolist())
            nxt.update(int(alg.join[a, b]) for b in cur)
        if nxt == cur:
            return frozenset(cur)
        cur = nxt


def ominus_bar_oracle(alg, f, i):
    cur = {int(alg.ominus[a, b]) for a in f for b in i}
    while True:
        nxt = set(cur)
        for a in cur:
            nxt.update(np.flatnonzero(alg.leq[a, :]).tolist())
            nxt.update(int(alg.meet[a, b]) for b in cur)
        if nxt == cur:
            return frozenset(cur)
        cur = nxt


def contains_one(alg, i, j):
    """Fast test for one in oplus_bar(i, j): some member negates into j."""
    ii = list(i)
    return any(int(alg.neg[a]) in j for a in ii)


def adjunction_holds(alg, f, i, j):
    """f ominus_bar i misses j exactly when f misses j oplus_bar i."""
    left = ominus_bar(alg, f, i).isdisjoint(j)
    right = f <= frozenset(range(alg.n)) - oplus_bar(alg, j, i)
    return left == right
