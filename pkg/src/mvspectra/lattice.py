"""Finite posets, bounded distributive lattices, and the prime-ideal duality.

Order data lives in dense numpy boolean matrices: ``leq[i, j]`` holds when
element ``i`` lies below element ``j``.  At the scales this package targets
(a few thousand elements) dense tables beat anything clever, and every
topological notion collapses to order: open downsets are just downsets,
closed sets are upsets, and continuity of a map is checkable by finite
preimage identities.  That translation is used throughout without further
comment.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import (
    CapExceeded,
    LatticeError,
    NotDistributiveError,
    PosetError,
    SearchBudgetExceeded,
)

SCHEMA = "mv-spectra/1"


def _bool_mm(a, b):
    # boolean matrix product; route through BLAS above the small-case cutoff
    if a.shape[0] > 128:
        return (a.astype(np.float32) @ b.astype(np.float32)) > 0.5
    return (a.astype(np.uint8) @ b.astype(np.uint8)) > 0


def transitive_closure(rel):
    """Reflexive-transitive closure of a square boolean relation."""
    rel = np.asarray(rel, dtype=bool).copy()
    np.fill_diagonal(rel, True)
    while True:
        nxt = rel | _bool_mm(rel, rel)
        if (nxt == rel).all():
            return rel
        rel = nxt


class FinitePoset:
    """A partial order on elements 0..n-1, given by its full leq matrix."""

    def __init__(self, leq, validate=True):
        leq = np.array(leq, dtype=bool)
        if leq.ndim != 2 or leq.shape[0] != leq.shape[1]:
            raise PosetError("leq must be a square boolean matrix")
        self.leq = leq
        self.n = int(leq.shape[0])
        if validate:
            self._validate()

    @classmethod
    def from_pairs(cls, n, pairs):
        """Poset from generating pairs (i, j) meaning i <= j; closure is taken."""
        rel = np.zeros((n, n), dtype=bool)
        for i, j in pairs:
            if not (0 <= i < n and 0 <= j < n):
                raise PosetError(f"pair ({i}, {j}) out of range for size {n}")
            rel[i, j] = True
        return cls(transitive_closure(rel))

    def _validate(self):
        leq, n = self.leq, self.n
        if not leq.diagonal().all():
            i = int(np.flatnonzero(~leq.diagonal())[0])
            raise PosetError(f"not reflexive at element {i}")
        bad = leq & leq.T & ~np.eye(n, dtype=bool)
        if bad.any():
            i, j = (int(v) for v in np.argwhere(bad)[0])
            raise PosetError(f"not antisymmetric: {i} <= {j} and {j} <= {i}")
        if (_bool_mm(leq, leq) & ~leq).any():
            gap = _bool_mm(leq, leq) & ~leq
            i, j = (int(v) for v in np.argwhere(gap)[0])
            raise PosetError(f"not transitive: {i} and {j}")

    @cached_property
    def covers(self):
        """covers[i, j] holds when j covers i (i < j with nothing between)."""
        lt = self.leq & ~np.eye(self.n, dtype=bool)
        return lt & ~_bool_mm(lt, lt)

    def below(self, i):
        return frozenset(np.flatnonzero(self.leq[:, i]).tolist())

    def above(self, i):
        return frozenset(np.flatnonzero(self.leq[i, :]).tolist())

    def is_downset(self, members):
        s = set(members)
        return all(j in s for i in s for j in np.flatnonzero(self.leq[:, i]).tolist())

    def is_upset(self, members):
        s = set(members)
        return all(j in s for i in s for j in np.flatnonzero(self.leq[i, :]).tolist())

    def downsets(self, limit=None):
        """All downsets as int bitmasks, in a deterministic generation order.

        Processing elements along a linear extension keeps the scan simple:
        a downset may absorb element e exactly when it already contains
        everything strictly below e.
        """
        order = sorted(range(self.n), key=lambda e: (int(self.leq[:, e].sum()), e))
        strict_down = [
            int(sum(1 << int(i) for i in np.flatnonzero(self.leq[:, e])) & ~(1 << e))
            for e in range(self.n)
        ]
        result = [0]
        for e in order:
            bit = 1 << e
            need = strict_down[e]
            grown = [d | bit for d in result if d & need == need]
            result.extend(grown)
            if limit is not None and len(result) > limit:
                raise CapExceeded(f"more than {limit} downsets")
        return result

    def order_components(self):
        """Connected components of the comparability graph, as frozensets."""
        comp = self.leq | self.leq.T
        seen = [False] * self.n
        out = []
        for start in range(self.n):
            if seen[start]:
                continue
            block, stack = set(), [start]
            seen[start] = True
            while stack:
                v = stack.pop()
                block.add(v)
                for w in np.flatnonzero(comp[v]).tolist():
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            out.append(frozenset(block))
        return sorted(out, key=lambda b: min(b))

    def to_dot(self, labels=None, doublecircle=(), filled=(), extra_edges=()):
        """Hasse diagram in DOT, bottom-up; decorations mark point classes.

        extra_edges are (src, dst, label) triples drawn dashed on top of the
        covering relation.
        """
        labels = labels if labels is not None else [str(i) for i in range(self.n)]
        dbl, fil = set(doublecircle), set(filled)
        lines = ["digraph poset {", "  rankdir=BT;", '  node [shape=circle];']
        for i in range(self.n):
            attrs = [f'label="{labels[i]}"']
            if i in dbl:
                attrs.append("peripheries=2")
            if i in fil:
                attrs.append('style=filled fillcolor=gray80')
            lines.append(f"  n{i} [{' '.join(attrs)}];")
        for i, j in np.argwhere(self.covers).tolist():
            lines.append(f"  n{i} -> n{j};")
        for src, dst, lab in extra_edges:
            lines.append(f'  n{src} -> n{dst} [style=dashed label="{lab}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


class FiniteDistLattice:
    """A finite bounded distributive lattice with explicit operation tables.

    labels, when given, name the elements for display and JSON output; they
    play no role in the algebra.
    """

    def __init__(self, leq, join, meet, labels=None, validate=True):
        self.leq = np.array(leq, dtype=bool)
        self.join = np.array(join, dtype=np.int64)
        self.meet = np.array(meet, dtype=np.int64)
        self.n = int(self.leq.shape[0])
        self.labels = tuple(labels) if labels is not None else tuple(range(self.n))
        if self.join.shape != (self.n, self.n) or self.meet.shape != (self.n, self.n):
            raise LatticeError("join/meet tables must be n x n")
        bots = np.flatnonzero(self.leq.all(axis=1))
        tops = np.flatnonzero(self.leq.all(axis=0))
        if len(bots) != 1 or len(tops) != 1:
            raise LatticeError("lattice must have a unique bottom and top")
        self.bot = int(bots[0])
        self.top = int(tops[0])
        if validate:
            self._validate()

    # -- construction -----------------------------------------------------

    @classmethod
    def from_leq(cls, leq, labels=None, validate=True):
        """Build tables from an order matrix; fails if some lub/glb is missing."""
        poset = FinitePoset(leq)
        leq = poset.leq
        n = poset.n
        join = np.zeros((n, n), dtype=np.int64)
        meet = np.zeros((n, n), dtype=np.int64)
        for a in range(n):
            for b in range(a, n):
                join[a, b] = join[b, a] = _lub(leq, a, b)
                meet[a, b] = meet[b, a] = _glb(leq, a, b)
        return cls(leq, join, meet, labels=labels, validate=validate)

    @classmethod
    def from_join_meet(cls, join, meet, labels=None, validate=True):
        join = np.array(join, dtype=np.int64)
        n = join.shape[0]
        leq = join == np.arange(n)[None, :]
        return cls(leq, join, meet, labels=labels, validate=validate)

    @classmethod
    def chain(cls, n):
        idx = np.arange(n)
        leq = idx[:, None] <= idx[None, :]
        return cls(leq, np.maximum.outer(idx, idx), np.minimum.outer(idx, idx))

    def _validate(self):
        FinitePoset(self.leq)
        n, leq = self.n, self.leq
        for a in range(n):
            for b in range(n):
                j, m = int(self.join[a, b]), int(self.meet[a, b])
                if j != _lub(leq, a, b):
                    raise LatticeError(f"join table wrong at ({a}, {b})")
                if m != _glb(leq, a, b):
                    raise LatticeError(f"meet table wrong at ({a}, {b})")
        self.validate_distributive()

    def validate_distributive(self):
        """Raise NotDistributiveError (with a witness triple) when it fails.

        Small lattices get the cubic scan.  Larger ones get the structural
        test: a is determined by the join-irreducibles below it and those
        element sets exhaust the downsets of the join-irreducible subposet
        exactly in the distributive case.  The cubic scan is then only
        needed to extract a witness, and only runs on actual failures.
        """
        if self.n <= 64:
            w = self._distributivity_witness()
            if w is not None:
                raise NotDistributiveError(w)
            return
        ji = self.join_irreducibles
        masks = [_mask(self.leq[:, a][ji]) for a in range(self.n)]
        sub = FinitePoset(self.leq[np.ix_(ji, ji)])
        ok = len(set(masks)) == self.n
        if ok:
            try:
                ok = sorted(masks) == sorted(sub.downsets(limit=self.n))
            except CapExceeded:
                ok = False
        if not ok:
            raise NotDistributiveError(self._distributivity_witness())

    def _distributivity_witness(self):
        n = self.n
        for a in range(n):
            lhs = self.meet[a, self.join]
            rhs = self.join[self.meet[a, :][:, None], self.meet[a, :][None, :]]
            bad = np.argwhere(lhs != rhs)
            if len(bad):
                b, c = (int(v) for v in bad[0])
                return (a, b, c)
        return None

    # -- structure ---------------------------------------------------------

    @cached_property
    def join_irreducibles(self):
        """Non-bottom elements with exactly one lower cover, ascending."""
        covers = FinitePoset(self.leq, validate=False).covers
        counts = covers.sum(axis=0)
        return [int(j) for j in np.flatnonzero(counts == 1)]

    @cached_property
    def meet_irreducibles(self):
        covers = FinitePoset(self.leq, validate=False).covers
        counts = covers.sum(axis=1)
        return [int(j) for j in np.flatnonzero(counts == 1)]

    def poset(self):
        return FinitePoset(self.leq, validate=False)

    def principal_ideal(self, a):
        return frozenset(np.flatnonzero(self.leq[:, a]).tolist())

    def principal_filter(self, a):
        return frozenset(np.flatnonzero(self.leq[a, :]).tolist())

    def is_ideal(self, members):
        """Nonempty downset closed under join."""
        s = frozenset(members)
        if not s or not self.poset().is_downset(s):
            return False
        return all(int(self.join[a, b]) in s for a in s for b in s)

    def is_filter(self, members):
        s = frozenset(members)
        if not s or not self.poset().is_upset(s):
            return False
        return all(int(self.meet[a, b]) in s for a in s for b in s)

    def ideals(self):
        """Every ideal of a finite lattice is principal, so: one per element."""
        return [self.principal_ideal(a) for a in range(self.n)]

    def filters(self):
        return [self.principal_filter(a) for a in range(self.n)]

    def to_dot(self):
        return self.poset().to_dot(labels=[_label_str(x) for x in self.labels])


def _lub(leq, a, b):
    ub = np.flatnonzero(leq[a, :] & leq[b, :])
    for u in ub:
        if leq[u, ub].all():
            return int(u)
    raise LatticeError(f"elements {a} and {b} have no least upper bound")


def _glb(leq, a, b):
    lb = np.flatnonzero(leq[:, a] & leq[:, b])
    for u in lb[::-1]:
        if leq[lb, u].all():
            return int(u)
    raise LatticeError(f"elements {a} and {b} have no greatest lower bound")


def _mask(bits):
    return int(sum(1 << int(i) for i in np.flatnonzero(bits)))


def _label_str(x):
    if isinstance(x, frozenset):
        return "{" + ",".join(str(v) for v in sorted(x)) + "}"
    return str(x)


# -- dual space ------------------------------------------------------------


@dataclass(frozen=True)
class DualSpacePoint:
    """A point of the dual space: a prime ideal with its complementary filter."""

    ideal: frozenset
    filter: frozenset


def _point_key(point):
    return tuple(sorted(point.ideal))


def is_prime_ideal(lat, members):
    s = frozenset(members)
    if not lat.is_ideal(s) or len(s) == lat.n:
        return False
    return all(
        a in s or b in s
        for a in range(lat.n)
        for b in range(lat.n)
        if int(lat.meet[a, b]) in s
    )


def enumerate_prime_ideals(lat):
    """Dual-space points in the canonical (subset-lexicographic) order.

    Fast path: the prime ideals of a finite distributive lattice are exactly
    the sets {a : j not<= a} for j join-irreducible.  The brute-force scan
    over all downsets lives in prime_ideals_bruteforce and is cross-checked
    in the test suite.
    """
    all_elems = frozenset(range(lat.n))
    pts = []
    for j in lat.join_irreducibles:
        ideal = frozenset(np.flatnonzero(~lat.leq[j, :]).tolist())
        pts.append(DualSpacePoint(ideal=ideal, filter=all_elems - ideal))
    return sorted(pts, key=_point_key)


def prime_ideals_bruteforce(lat, limit=2_000_000):
    """Oracle path: scan every downset of the carrier order."""
    all_elems = frozenset(range(lat.n))
    pts = []
    for mask in lat.poset().downsets(limit=limit):
        members = frozenset(i for i in range(lat.n) if mask >> i & 1)
        if 0 < len(members) < lat.n and is_prime_ideal(lat, members):
            pts.append(DualSpacePoint(ideal=members, filter=all_elems - members))
    return sorted(pts, key=_point_key)


def stone_map(lat, a, points=None):
    """The clopen downset of points whose ideal omits a, as a set of indices."""
    if points is None:
        points = enumerate_prime_ideals(lat)
    return frozenset(x for x, p in enumerate(points) if a not in p.ideal)


def dual_order(points):
    """Specialization order on points: inclusion of ideals."""
    n = len(points)
    leq = np.zeros((n, n), dtype=bool)
    for i, p in enumerate(points):
        for j, q in enumerate(points):
            leq[i, j] = p.ideal <= q.ideal
    return FinitePoset(leq)


def lattice_from_downsets(poset, limit=None):
    """The lattice of all downsets of a poset, labelled by those downsets."""
    masks = sorted(poset.downsets(limit=limit), key=lambda m: (bin(m).count("1"), m))
    labels = [frozenset(k for k in range(poset.n) if m >> k & 1) for m in masks]
    if poset.n < 63:
        arr = np.array(masks, dtype=np.int64)
        union = np.bitwise_or.outer(arr, arr)
        inter = np.bitwise_and.outer(arr, arr)
        value_order = np.argsort(arr, kind="stable").astype(np.int64)
        ordered = arr[value_order]
        join = value_order[np.searchsorted(ordered, union)]
        meet = value_order[np.searchsorted(ordered, inter)]
        leq = inter == arr[:, None]
        return FiniteDistLattice(leq, join, meet, labels=labels, validate=False)
    index = {m: i for i, m in enumerate(masks)}
    n = len(masks)
    leq = np.zeros((n, n), dtype=bool)
    join = np.zeros((n, n), dtype=np.int64)
    meet = np.zeros((n, n), dtype=np.int64)
    for i, mi in enumerate(masks):
        for j, mj in enumerate(masks):
            leq[i, j] = mi & ~mj == 0
            join[i, j] = index[mi | mj]
            meet[i, j] = index[mi & mj]
    return FiniteDistLattice(leq, join, meet, labels=labels, validate=False)


@dataclass(frozen=True)
class DualityWitness:
    """Everything the round trip produced, for inspection and replay."""

    points: tuple
    poset: FinitePoset
    downset_lattice: FiniteDistLattice
    iso: tuple


def duality_roundtrip(lat):
    """Rebuild the lattice from its dual poset and certify the isomorphism.

    Raises NotDistributiveError (with witness) on nondistributive input.
    """
    lat.validate_distributive()
    points = enumerate_prime_ideals(lat)
    poset = dual_order(points)
    dl = lattice_from_downsets(poset)
    index = {lab: i for i, lab in enumerate(dl.labels)}
    iso = []
    for a in range(lat.n):
        img = stone_map(lat, a, points)
        if img not in index:
            raise LatticeError(f"stone image of {a} is not a downset of the dual")
        iso.append(index[img])
    iso = np.array(iso, dtype=np.int64)
    if dl.n != lat.n or len(set(iso.tolist())) != lat.n:
        raise LatticeError("stone map is not a bijection onto downsets")
    if (iso[lat.join] != dl.join[iso[:, None], iso[None, :]]).any():
        raise LatticeError("stone map does not preserve joins")
    if (iso[lat.meet] != dl.meet[iso[:, None], iso[None, :]]).any():
        raise LatticeError("stone map does not preserve meets")
    if int(iso[lat.bot]) != dl.bot or int(iso[lat.top]) != dl.top:
        raise LatticeError("stone map does not preserve bounds")
    return DualityWitness(
        points=tuple(points), poset=poset, downset_lattice=dl, iso=tuple(int(i) for i in iso)
    )


# -- congruences and the closed-subspace correspondence ---------------------


def congruence_closure(lat, pairs):
    """Smallest lattice congruence containing the given pairs, as a pair set."""
    parent = list(range(lat.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    stack = [(int(a), int(b)) for a, b in pairs]
    while stack:
        a, b = stack.pop()
        ra, rb = find(a), find(b)
        if ra == rb:
            continue
        parent[max(ra, rb)] = min(ra, rb)
        for c in range(lat.n):
            stack.append((int(lat.join[a, c]), int(lat.join[b, c])))
            stack.append((int(lat.meet[a, c]), int(lat.meet[b, c])))
    return frozenset(
        (a, b) for a in range(lat.n) for b in range(lat.n) if find(a) == find(b)
    )


def is_lattice_congruence(lat, theta):
    theta = frozenset((int(a), int(b)) for a, b in theta)
    n = lat.n
    if any(not (0 <= a < n and 0 <= b < n) for a, b in theta):
        return False
    if any((a, a) not in theta for a in range(n)):
        return False
    if any((b, a) not in theta for a, b in theta):
        return False
    rep = {}
    for a in range(n):
        cls = frozenset(b for b in range(n) if (a, b) in theta)
        rep[a] = cls
    if any(rep[a] != rep[b] for a, b in theta):
        return False
    return all(
        (int(lat.join[a, c]), int(lat.join[b, c])) in theta
        and (int(lat.meet[a, c]), int(lat.meet[b, c])) in theta
        for a, b in theta
        for c in range(n)
    )


def closed_subspace_of_congruence(lat, theta, points=None):
    """Points whose ideal cannot tell theta-related elements apart."""
    if points is None:
        points = enumerate_prime_ideals(lat)
    return frozenset(
        x
        for x, p in enumerate(points)
        if all((a in p.ideal) == (b in p.ideal) for a, b in theta)
    )


def congruence_of_subspace(lat, subspace, points=None):
    """Pairs of elements no point of the subspace separates."""
    if points is None:
        points = enumerate_prime_ideals(lat)
    sub = [points[x] for x in sorted(subspace)]
    return frozenset(
        (a, b)
        for a in range(lat.n)
        for b in range(lat.n)
        if all((a in p.ideal) == (b in p.ideal) for p in sub)
    )


def is_normal(lat):
    """Whenever d1 v d2 = top there are disjoint c1, c2 with c1 v d2 = c2 v d1 = top."""
    n = lat.n
    join_top = lat.join == lat.top
    meet_bot = lat.meet == lat.bot
    for d1 in range(n):
        for d2 in np.flatnonzero(join_top[d1]).tolist():
            c1s = np.flatnonzero(join_top[:, d2])
            c2s = np.flatnonzero(join_top[:, d1])
            if not meet_bot[np.ix_(c1s, c2s)].any():
                return False
    return True


# -- poset isomorphism search (used by the Kaplansky comparison) ------------


def _refine_colors(poset):
    lt = poset.leq & ~np.eye(poset.n, dtype=bool)
    colors = [
        (int(lt[:, v].sum()), int(lt[v, :].sum()), int(poset.covers[:, v].sum()),
         int(poset.covers[v, :].sum()))
        for v in range(poset.n)
    ]
    for _ in range(poset.n):
        palette = {c: i for i, c in enumerate(sorted(set(colors)))}
        cur = [palette[c] for c in colors]
        nxt = [
            (
                cur[v],
                tuple(sorted(cur[w] for w in np.flatnonzero(lt[:, v]).tolist())),
                tuple(sorted(cur[w] for w in np.flatnonzero(lt[v, :]).tolist())),
            )
            for v in range(poset.n)
        ]
        if len(set(nxt)) == len(set(colors)):
            colors = nxt
            break
        colors = nxt
    palette = {c: i for i, c in enumerate(sorted(set(colors)))}
    return [palette[c] for c in colors]


def poset_isomorphism(p, q, node_budget=200_000):
    """An order isomorphism p -> q as a tuple, or None; exact backtracking.

    Color refinement prunes the search; node_budget bounds the number of
    extension attempts and trips SearchBudgetExceeded rather than stalling.
    """
    if p.n != q.n:
        return None
    if int(p.leq.sum()) != int(q.leq.sum()):
        return None
    pc, qc = _refine_colors(p), _refine_colors(q)
    if sorted(pc) != sorted(qc):
        return None
    by_color = {}
    for v, c in enumerate(qc):
        by_color.setdefault(c, []).append(v)
    order = sorted(range(p.n), key=lambda v: (len(by_color[pc[v]]), v))
    mapping = [-1] * p.n
    used = [False] * q.n
    budget = [node_budget]

    def extend(i):
        if i == p.n:
            return True
        v = order[i]
        for w in by_color[pc[v]]:
            if used[w]:
                continue
            if budget[0] <= 0:
                raise SearchBudgetExceeded("isomorphism search budget exhausted")
            budget[0] -= 1
            ok = all(
                p.leq[v, u] == q.leq[w, mapping[u]] and p.leq[u, v] == q.leq[mapping[u], w]
                for u in order[:i]
            )
            if ok:
                mapping[v] = w
                used[w] = True
                if extend(i + 1):
                    return True
                mapping[v] = -1
                used[w] = False
        return False

    return tuple(mapping) if extend(0) else None


def lattice_isomorphic(lat1, lat2, node_budget=200_000):
    """Distributive lattices are isomorphic iff their join-irreducible posets are."""
    if lat1.n != lat2.n:
        return False
    p1 = FinitePoset(lat1.leq[np.ix_(lat1.join_irreducibles, lat1.join_irreducibles)])
    p2 = FinitePoset(lat2.leq[np.ix_(lat2.join_irreducibles, lat2.join_irreducibles)])
    return poset_isomorphism(p1, p2, node_budget=node_budget) is not None


# -- JSON ------------------------------------------------------------------


def lattice_from_json(data):
    """Accepts {"size", "leq"} pair lists or {"size", "join", "meet"} tables."""
    if not isinstance(data, dict):
        raise LatticeError("lattice JSON must be an object")
    if "schema" in data and data["schema"] != SCHEMA:
        raise LatticeError(f"unsupported schema {data['schema']!r}")
    try:
        n = int(data["size"])
    except (KeyError, TypeError, ValueError):
        raise LatticeError('lattice JSON needs an integer "size"') from None
    if n <= 0:
        raise LatticeError("size must be positive")
    if "leq" in data:
        return FiniteDistLattice.from_leq(FinitePoset.from_pairs(n, data["leq"]).leq)
    if "join" in data and "meet" in data:
        join = np.array(data["join"], dtype=np.int64)
        meet = np.array(data["meet"], dtype=np.int64)
        if join.shape != (n, n) or meet.shape != (n, n):
            raise LatticeError("join/meet tables must be size x size")
        if join.min() < 0 or join.max() >= n or meet.min() < 0 or meet.max() >= n:
            raise LatticeError("table entries out of range")
        return FiniteDistLattice.from_join_meet(join, meet)
    raise LatticeError('lattice JSON needs either "leq" or both "join" and "meet"')


def lattice_to_json(lat):
    pairs = [[int(i), int(j)] for i, j in np.argwhere(lat.leq)]
    return {"schema": SCHEMA, "size": lat.n, "leq": pairs}
