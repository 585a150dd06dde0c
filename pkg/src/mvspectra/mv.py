"""Finite MV-algebras as dense operation tables.

An algebra is (carrier 0..n-1, neg, oplus, zero); everything else is
derived: a ominus b = neg(neg a oplus b), a join b = (a ominus b) oplus b,
a meet b = neg(neg a join neg b).  The derived join/meet make the carrier a
bounded distributive lattice, and that reduct is where the duality lives.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import AlgebraError, CapExceeded
from .lattice import SCHEMA, FiniteDistLattice

_LAW_ORDER = (
    "involution",
    "commutativity",
    "associativity",
    "zero-identity",
    "one-absorption",
    "characteristic",
    "reduct-absorption",
    "reduct-associativity",
    "reduct-distributivity",
    "reduct-bounds",
)


@dataclass(frozen=True)
class AxiomViolation:
    """First failed law, with the lexicographically least witness tuple."""

    law: str
    witness: tuple
    witness_labels: tuple

    def __str__(self):
        pretty = ", ".join(str(w) for w in self.witness_labels)
        return f"axiom {self.law} fails at ({pretty})"


class MvAlgebra:
    """Carrier 0..n-1 with negation and truncated-addition tables.

    labels name elements for display and JSON; they carry no structure.
    Construction always rejects malformed tables and the empty or trivial
    carrier; validate=False skips only the axiom checks, so negative tests
    can build deliberately broken tables.
    """

    def __init__(self, neg, oplus, zero=0, labels=None, validate=True):
        self.neg = np.array(neg, dtype=np.int64)
        self.oplus = np.array(oplus, dtype=np.int64)
        self.zero = int(zero)
        n = self.neg.shape[0] if self.neg.ndim == 1 else 0
        if n == 0:
            raise AlgebraError("empty carrier rejected")
        if self.neg.shape != (n,) or self.oplus.shape != (n, n):
            raise AlgebraError("neg must be n and oplus must be n x n")
        for table in (self.neg, self.oplus):
            if table.min() < 0 or table.max() >= n:
                raise AlgebraError("table entries out of carrier range")
        if not 0 <= self.zero < n:
            raise AlgebraError("zero out of carrier range")
        self.n = n
        self.one = int(self.neg[self.zero])
        if n == 1:
            raise AlgebraError("trivial algebra (zero = one) rejected")
        self.labels = (
            tuple(str(w) for w in labels)
            if labels is not None
            else tuple(str(i) for i in range(n))
        )
        if len(self.labels) != n:
            raise AlgebraError("labels must match carrier size")
        if validate:
            bad = check_axioms(self)
            if bad is not None:
                raise AlgebraError(bad)

    # -- derived tables ----------------------------------------------------

    @cached_property
    def ominus(self):
        idx = np.arange(self.n)
        return self.neg[self.oplus[self.neg[idx][:, None], idx[None, :]]]

    @cached_property
    def odot(self):
        idx = np.arange(self.n)
        return self.neg[self.oplus[self.neg[idx][:, None], self.neg[idx][None, :]]]

    @cached_property
    def join(self):
        idx = np.arange(self.n)
        return self.oplus[self.ominus, idx[None, :]]

    @cached_property
    def meet(self):
        return self.neg[self.join[self.neg[:, None], self.neg[None, :]]]

    @cached_property
    def leq(self):
        return self.join == np.arange(self.n)[None, :]

    def nmul(self, m, a):
        """m-fold truncated sum of a."""
        acc = self.zero
        for _ in range(m):
            acc = int(self.oplus[acc, a])
        return acc

    def lattice_reduct(self):
        return FiniteDistLattice(
            self.leq, self.join, self.meet, labels=self.labels, validate=False
        )

    @cached_property
    def idempotents(self):
        return [int(e) for e in np.flatnonzero(self.oplus.diagonal() == np.arange(self.n))]

    def label_of(self, a):
        return self.labels[a]


def check_axioms(alg):
    """First violated law in the fixed order, or None.

    Witnesses are lexicographically least.  Cost is cubic in the carrier,
    fine for anything this package builds directly.
    """
    n = alg.n
    idx = np.arange(n)
    oplus, neg = alg.oplus, alg.neg

    def first(bad, law):
        where = np.argwhere(bad)
        if len(where) == 0:
            return None
        witness = tuple(int(v) for v in where[0])
        return AxiomViolation(
            law=law,
            witness=witness,
            witness_labels=tuple(alg.labels[v] for v in witness),
        )

    v = first(neg[neg] != idx, "involution")
    if v:
        return v
    v = first(oplus != oplus.T, "commutativity")
    if v:
        return v
    v = _assoc_violation(alg, oplus, "associativity")
    if v:
        return v
    v = first(oplus[alg.zero, :] != idx, "zero-identity")
    if v:
        return v
    v = first(oplus[alg.one, :] != alg.one, "one-absorption")
    if v:
        return v
    lhs = oplus[neg[oplus[neg[:, None], idx[None, :]]], idx[None, :]]
    v = first(lhs != lhs.T, "characteristic")
    if v:
        return v
    join, meet = alg.join, alg.meet
    v = first(join[idx[:, None], meet] != idx[:, None], "reduct-absorption")
    if v:
        return v
    v = first(meet[idx[:, None], join] != idx[:, None], "reduct-absorption")
    if v:
        return v
    v = _assoc_violation(alg, join, "reduct-associativity")
    if v:
        return v
    v = _assoc_violation(alg, meet, "reduct-associativity")
    if v:
        return v
    for a in range(n):
        lhs = meet[a, join]
        rhs = join[meet[a, :][:, None], meet[a, :][None, :]]
        v = first(lhs != rhs, "reduct-distributivity")
        if v:
            return AxiomViolation(
                law=v.law,
                witness=(a,) + v.witness,
                witness_labels=(alg.labels[a],) + v.witness_labels,
            )
    v = first(join[alg.zero, :] != idx, "reduct-bounds")
    if v:
        return v
    v = first(meet[alg.one, :] != idx, "reduct-bounds")
    if v:
        return v
    return None


def _assoc_violation(alg, table, law):
    n = alg.n
    for a in range(n):
        lhs = table[table[a, :], :]
        rhs = table[a, table]
        where = np.argwhere(lhs != rhs)
        if len(where):
            b, c = (int(v) for v in where[0])
            return AxiomViolation(
                law=law,
                witness=(a, b, c),
                witness_labels=(alg.labels[a], alg.labels[b], alg.labels[c]),
            )
    return None


# -- constructions -----------------------------------------------------------


def lukasiewicz_chain(n):
    """The chain 0, 1/n, ..., 1 with truncated addition; n >= 1."""
    if n < 1:
        raise AlgebraError("chain parameter must be at least 1")
    idx = np.arange(n + 1)
    oplus = np.minimum(idx[:, None] + idx[None, :], n)
    labels = tuple(str(i) for i in range(n + 1))
    return MvAlgebra(n - idx, oplus, zero=0, labels=labels, validate=False)


def product(a, b, cap=4096):
    """Componentwise product; labels are pairs of factor labels."""
    n = a.n * b.n
    if n > cap:
        raise CapExceeded(f"product carrier {n} exceeds cap {cap}")
    pairs = [(i, j) for i in range(a.n) for j in range(b.n)]
    index = {p: k for k, p in enumerate(pairs)}
    neg = np.array([index[(int(a.neg[i]), int(b.neg[j]))] for i, j in pairs])
    oplus = np.array(
        [
            [
                index[(int(a.oplus[i1, i2]), int(b.oplus[j1, j2]))]
                for (i2, j2) in pairs
            ]
            for (i1, j1) in pairs
        ]
    )
    labels = tuple(f"({a.labels[i]},{b.labels[j]})" for i, j in pairs)
    return MvAlgebra(neg, oplus, zero=index[(a.zero, b.zero)], labels=labels, validate=False)


def from_tables(neg, oplus, zero=0, labels=None, validate=True):
    """Validating constructor: raises AlgebraError carrying the violation."""
    return MvAlgebra(neg, oplus, zero=zero, labels=labels, validate=validate)


# -- MV-ideals ---------------------------------------------------------------


def is_mv_ideal(alg, members):
    """Downset containing zero, closed under truncated addition."""
    s = frozenset(int(x) for x in members)
    if alg.zero not in s:
        return False
    for a in s:
        if not set(np.flatnonzero(alg.leq[:, a]).tolist()) <= s:
            return False
        if any(int(alg.oplus[a, b]) not in s for b in s):
            return False
    return True


def ideal_generated(alg, seed):
    """Fixpoint closure of seed under downward passage and addition."""
    cur = {alg.zero} | {int(x) for x in seed}
    while True:
        nxt = set(cur)
        for a in cur:
            nxt.update(np.flatnonzero(alg.leq[:, a]).tolist())
            nxt.update(int(alg.oplus[a, b]) for b in cur)
        if nxt == cur:
            return frozenset(cur)
        cur = nxt


def ideal_generated_sums(alg, seed):
    """Closed form: everything below a finite sum of generators.

    Independent route kept for cross-checks against ideal_generated.
    """
    sums = {alg.zero} | {int(x) for x in seed}
    while True:
        nxt = sums | {int(alg.oplus[a, b]) for a in sums for b in sums}
        if nxt == sums:
            break
        sums = nxt
    out = set()
    for s in sums:
        out.update(np.flatnonzero(alg.leq[:, s]).tolist())
    return frozenset(out)


def is_prime_mv_ideal(alg, members):
    """Proper MV-ideal containing a ominus b or b ominus a for every pair."""
    s = frozenset(int(x) for x in members)
    if not is_mv_ideal(alg, s) or len(s) == alg.n:
        return False
    return all(
        int(alg.ominus[a, b]) in s or int(alg.ominus[b, a]) in s
        for a in range(alg.n)
        for b in range(a + 1, alg.n)
    )


def is_maximal_mv_ideal(alg, members):
    s = frozenset(int(x) for x in members)
    if not is_mv_ideal(alg, s) or len(s) == alg.n:
        return False
    full = frozenset(range(alg.n))
    return all(ideal_generated(alg, s | {a}) == full for a in range(alg.n) if a not in s)


def enumerate_mv_ideals(alg):
    """All MV-ideals: downsets of idempotents, in subset-lexicographic order.

    A finite MV-ideal is a downset with a maximum m, and addition-closure
    forces m oplus m = m; conversely the downset of any idempotent is an
    MV-ideal.  The brute-force scan over downsets lives in the tests.
    """
    out = [
        frozenset(np.flatnonzero(alg.leq[:, e]).tolist()) for e in alg.idempotents
    ]
    return sorted(out, key=lambda s: tuple(sorted(s)))


def enumerate_prime_mv_ideals(alg):
    from .lattice import enumerate_prime_ideals

    pts = enumerate_prime_ideals(alg.lattice_reduct())
    return [p.ideal for p in pts if is_mv_ideal(alg, p.ideal)]


def maximal_mv_ideals(alg):
    return [s for s in enumerate_mv_ideals(alg) if is_maximal_mv_ideal(alg, s)]


def ideal_congruent(alg, a, b, ideal):
    return int(alg.ominus[a, b]) in ideal and int(alg.ominus[b, a]) in ideal


@dataclass(frozen=True)
class Quotient:
    algebra: MvAlgebra
    projection: tuple


def quotient(alg, ideal):
    """Quotient by the congruence of an MV-ideal, reps in carrier order."""
    ideal = frozenset(int(x) for x in ideal)
    if not is_mv_ideal(alg, ideal):
        raise AlgebraError("quotient requires an MV-ideal")
    classes = []
    proj = [-1] * alg.n
    for a in range(alg.n):
        if proj[a] >= 0:
            continue
        k = len(classes)
        members = [b for b in range(alg.n) if ideal_congruent(alg, a, b, ideal)]
        for b in members:
            proj[b] = k
        classes.append(members)
    m = len(classes)
    neg = np.zeros(m, dtype=np.int64)
    oplus = np.zeros((m, m), dtype=np.int64)
    for k, members in enumerate(classes):
        neg[k] = proj[int(alg.neg[members[0]])]
        for k2, members2 in enumerate(classes):
            oplus[k, k2] = proj[int(alg.oplus[members[0], members2[0]])]
    labels = tuple(alg.labels[members[0]] for members in classes)
    return Quotient(
        algebra=MvAlgebra(neg, oplus, zero=proj[alg.zero], labels=labels, validate=False),
        projection=tuple(proj),
    )


# -- JSON ---------------------------------------------------------------------


def algebra_from_json(data, product_cap=4096, validate=True):
    """Builds from {"kind": "lukasiewicz" | "product" | "tables" | "chang"}.

    validate only affects explicit tables; the named constructions are
    correct by construction.
    """
    if not isinstance(data, dict):
        raise AlgebraError("algebra JSON must be an object")
    if "schema" in data and data["schema"] != SCHEMA:
        raise AlgebraError(f"unsupported schema {data['schema']!r}")
    kind = data.get("kind")
    if kind == "lukasiewicz":
        try:
            n = int(data["n"])
        except (KeyError, TypeError, ValueError):
            raise AlgebraError('lukasiewicz needs an integer "n"') from None
        return lukasiewicz_chain(n)
    if kind == "product":
        factors = data.get("factors")
        if not isinstance(factors, list) or len(factors) < 2:
            raise AlgebraError('product needs a list "factors" of length >= 2')
        algs = [
            algebra_from_json(f, product_cap=product_cap, validate=validate)
            for f in factors
        ]
        out = algs[0]
        for nxt in algs[1:]:
            out = product(out, nxt, cap=product_cap)
        return out
    if kind == "tables":
        if "neg" not in data or "oplus" not in data:
            raise AlgebraError('tables needs "neg" and "oplus"')
        return from_tables(
            data["neg"], data["oplus"], zero=data.get("zero", 0),
            labels=data.get("labels"), validate=validate,
        )
    if kind == "chang":
        from .chang import ChangAlgebra

        return ChangAlgebra()
    raise AlgebraError(f"unknown algebra kind {kind!r}")


def algebra_to_json(alg):
    return {
        "schema": SCHEMA,
        "kind": "tables",
        "zero": alg.zero,
        "neg": [int(v) for v in alg.neg],
        "oplus": [[int(v) for v in row] for row in alg.oplus],
        "labels": list(alg.labels),
    }
