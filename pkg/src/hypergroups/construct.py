"""Builders: groups, coset spaces, chains, products, sums, subobjects, quotients, (co)limits."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product as _cartesian
from typing import Mapping, Sequence

import numpy as np

from .core import (_as_mask, AxiomError, Hypergroup, HypergroupError, StructureError, Unsupported, inv_mask,
                   members, mul_sets_mask, report, to_mask)
from .morph import Morphism, compose, identity


class GroupError(HypergroupError):
    pass


class DiagramError(HypergroupError):
    pass


# ----------------------------------------------------------------------------
# examples


def trivial(name: str = "T") -> Hypergroup:
    return Hypergroup([[1]], [0], ["1"], name)


def from_group(cayley, names: Sequence[str] | None = None, name: str = "G") -> Hypergroup:
    """Hypergroup with singleton cells from a group Cayley table (identity at index 0)."""
    c = np.asarray(cayley, dtype=np.int64)
    if c.ndim != 2 or c.shape[0] != c.shape[1] or c.shape[0] == 0:
        raise GroupError("Cayley table must be square and nonempty")
    n = c.shape[0]
    if (c < 0).any() or (c >= n).any():
        raise GroupError("closure: table entry outside the carrier")
    ar = np.arange(n)
    if not (np.array_equal(c[0], ar) and np.array_equal(c[:, 0], ar)):
        raise GroupError("identity: element 0 is not a two-sided identity")
    lhs = c[c[:, :, None], ar[None, None, :]]
    rhs = c[ar[:, None, None], c[None, :, :]]
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        raise GroupError(f"associativity fails at {tuple(int(v) for v in bad[0])}")
    inv = np.full(n, -1, np.int64)
    for x in range(n):
        hits = np.nonzero(c[x] == 0)[0]
        if hits.size != 1 or c[hits[0], x] != 0:
            raise GroupError(f"inverses: element {x} has no two-sided inverse")
        inv[x] = hits[0]
    return Hypergroup(np.left_shift(1, c), inv, names, name)


def cyclic_group(n: int, name: str | None = None) -> Hypergroup:
    ar = np.arange(n)
    return from_group((ar[:, None] + ar[None, :]) % n, name=name or f"Z{n}")


def symmetric_group(k: int, name: str | None = None) -> Hypergroup:
    """S_k on permutations of ``range(k)`` in lexicographic order; names are one-line forms."""
    els = sorted(permutations(range(k)))
    idx = {p: i for i, p in enumerate(els)}
    cay = [[idx[tuple(p[q[i]] for i in range(k))] for q in els] for p in els]
    names = ["e" if p == tuple(range(k)) else "p" + "".join(str(v) for v in p) for p in els]
    return from_group(cay, names, name or f"S{k}")


def chain_hypergroup(k: int, name: str | None = None) -> Hypergroup:
    """Additive hypergroup of the chain ``0 < e1 < ... < ek``.

    ``x + y = max`` for ``x != y`` and ``x + x = [0, x]``; every element is its own inverse.
    """
    if k < 1:
        raise ValueError("chain needs at least one nonzero element")
    n = k + 1
    t = np.zeros((n, n), np.int64)
    for x in range(n):
        for y in range(n):
            t[x, y] = (1 << max(x, y)) if x != y else (1 << (x + 1)) - 1
        t[0, x] = t[x, 0] = 1 << x
    names = ["0"] + [chr(ord("a") + i) if k <= 26 else f"e{i + 1}" for i in range(k)]
    return Hypergroup(t, np.arange(n), names, name or f"V{n}")


# ----------------------------------------------------------------------------
# subcarriers


@dataclass(frozen=True)
class SubCarrier:
    parent: Hypergroup
    mask: int

    def __post_init__(self):
        m = int(self.mask)
        object.__setattr__(self, "mask", m)
        if m >> self.parent.order:
            raise StructureError("subcarrier names elements outside the parent")
        if not m & 1:
            raise StructureError("subcarrier must contain the identity")
        if inv_mask(self.parent, m) != m:
            raise StructureError("subcarrier must be closed under inverses")

    def elements(self) -> list[int]:
        return sorted(members(self.mask))

    def __contains__(self, x: int) -> bool:
        return bool((self.mask >> int(x)) & 1)

    def __len__(self) -> int:
        return len(members(self.mask))

    def hypergroup(self, name: str | None = None, *, check: bool = True) -> Hypergroup:
        """The carrier with the induced operation ``(x*y) & S``, reindexed in ascending order."""
        els = self.elements()
        pos = {x: i for i, x in enumerate(els)}
        P = self.parent
        t = [[to_mask(pos[z] for z in members(int(P.table[x, y]) & self.mask)) for y in els]
             for x in els]
        if any(c == 0 for row in t for c in row):
            raise AxiomError(report([("nonempty", (els[0],))]),
                             "induced operation has an empty cell")
        inv = [pos[int(P.inv[x])] for x in els]
        return Hypergroup(t, inv, [P.names[x] for x in els], name or f"{P.name}|sub", check=check)

    def inclusion(self) -> Morphism:
        return Morphism(self.hypergroup(), self.parent, self.elements(), "incl")


def subcarrier(G: Hypergroup, elements) -> SubCarrier:
    return SubCarrier(G, to_mask(G.element(x) for x in elements) | 1)


def is_full_subcarrier(G: Hypergroup, S: SubCarrier) -> bool:
    m = S.mask
    for x in members(m):
        for y in members(m):
            if int(G.table[x, y]) & ~m:
                return False
    return True


def is_subhypergroup(G: Hypergroup, S: SubCarrier) -> bool:
    """Whether the induced operation makes ``S`` a hypergroup whose inclusion is a morphism."""
    try:
        S.inclusion()
    except HypergroupError:
        return False
    return True


def generated(G: Hypergroup, A) -> SubCarrier:
    """Least inverse-closed, product-closed subset containing ``A`` and the identity."""
    gen = _as_mask(A)
    m = gen | 1
    if m >> G.order:
        raise IndexError("generator outside the carrier")
    while True:
        nxt = m | inv_mask(G, m) | mul_sets_mask(G, m, m)
        if nxt == m:
            break
        m = nxt
    gens = members(gen) - {0}
    if G.commutative and len(gens) == 1:
        (a,) = gens
        assert powers_span(G, a) == m, "closure disagrees with the power formula"
    return SubCarrier(G, m)


def power_masks(G: Hypergroup, a: int) -> list[int]:
    """Distinct set powers ``a^0, a^1, ...`` up to the first repetition."""
    seen = []
    cur = 1  # a^0 = {0}
    while cur not in seen:
        seen.append(cur)
        cur = mul_sets_mask(G, cur, 1 << a)
    return seen


def powers_span(G: Hypergroup, a: int) -> int:
    """Union of ``a^i * a^-j`` over ``i, j >= 0``."""
    pos = power_masks(G, a)
    neg = power_masks(G, int(G.inv[a]))
    out = 0
    for p in pos:
        for q in neg:
            out |= mul_sets_mask(G, p, q)
    return out


def power(G: Hypergroup, a: int, i: int) -> int:
    """``a^i`` as a mask; negative ``i`` uses the inverse."""
    if i < 0:
        a, i = int(G.inv[a]), -i
    cur = 1
    for _ in range(i):
        cur = mul_sets_mask(G, cur, 1 << a)
    return cur


# ----------------------------------------------------------------------------
# coset structures


def _representative_quotient(G: Hypergroup, blocks: Sequence[frozenset[int]], name: str,
                             *, check: bool) -> Hypergroup:
    """``[a]*[b] = {[d] : d' in a'*b' for some representatives}`` over the given blocks."""
    block_of = {x: i for i, b in enumerate(blocks) for x in b}
    k = len(blocks)
    t = np.zeros((k, k), np.int64)
    for i, A in enumerate(blocks):
        for j, B in enumerate(blocks):
            acc = 0
            for a in A:
                for b in B:
                    for d in members(int(G.table[a, b])):
                        acc |= 1 << block_of[d]
            t[i, j] = acc
    targets = [sorted({block_of[int(G.inv[a])] for a in A}) for A in blocks]
    inv = _first_matching(targets)
    names = []
    for A in blocks:
        rep = min(A)
        names.append(G.names[rep] if rep else G.names[0])
    names = [f"[{s}]" for s in names]
    return Hypergroup(t, inv, names, name, check=check)


def _first_matching(targets: list[list[int]]) -> list[int]:
    """Lexicographically first permutation with ``perm[i]`` in ``targets[i]``.

    For cosets of a subgroup the incidence between blocks and inverse blocks is
    regular, so such a permutation exists.
    """
    k = len(targets)
    perm = [-1] * k
    used = [False] * k

    def place(i: int) -> bool:
        if i == k:
            return True
        for j in targets[i]:
            if not used[j]:
                used[j] = True
                perm[i] = j
                if place(i + 1):
                    return True
                used[j] = False
        return False

    if not place(0):
        raise StructureError("no inverse map is compatible with the blocks")
    return perm


def left_cosets(G: Hypergroup, S: SubCarrier) -> list[frozenset[int]]:
    blocks = []
    for a in G.elements():
        c = members(mul_sets_mask(G, 1 << a, S.mask))
        if c not in blocks:
            blocks.append(c)
    blocks.sort(key=min)
    return blocks


def coset_space(G: Hypergroup, H: SubCarrier, *, check: bool = True) -> Hypergroup:
    """Cosets ``aH`` of a subgroup of a group under the representative product.

    For non-normal ``H`` the result generally fails the identity and
    reversibility axioms; that raises ``AxiomError`` unless ``check=False``.
    """
    from .core import is_group_table
    if not is_group_table(G):
        raise Unsupported(f"{G.name} is not a group")
    m = H.mask
    if mul_sets_mask(G, m, m) != m:
        raise GroupError("not a subgroup: not closed under the product")
    blocks = left_cosets(G, H)
    return _representative_quotient(G, blocks, f"{G.name}/H", check=check)


@dataclass(frozen=True)
class QuotientPresentation:
    base: Hypergroup
    sub: SubCarrier
    cosets: tuple[frozenset[int], ...]
    quotient: Hypergroup
    projection: Morphism

    def block_of(self, x: int) -> int:
        return int(self.projection.map[x])


def quotient(G: Hypergroup, H: SubCarrier, *, allow_noncommutative: bool = False
             ) -> QuotientPresentation:
    """``G/H`` for abelian ``G``; a non-full ``H`` is replaced by the subhypergroup it generates."""
    if not G.commutative and not allow_noncommutative:
        raise Unsupported(f"quotients are only constructed for abelian hypergroups; {G.name} is not")
    if not is_full_subcarrier(G, H):
        H = generated(G, H.mask)
    blocks = left_cosets(G, H)
    seen = 0
    for b in blocks:
        bm = to_mask(b)
        if seen & bm:
            raise HypergroupError("cosets overlap without coinciding")
        seen |= bm
    Q = _representative_quotient(G, blocks, f"{G.name}/H", check=True)
    block_of = [0] * G.order
    for i, b in enumerate(blocks):
        for x in b:
            block_of[x] = i
    pi = Morphism(G, Q, block_of, "pi")
    return QuotientPresentation(G, H, tuple(blocks), Q, pi)


def coset_relation(G: Hypergroup, H: SubCarrier, x: int, y: int) -> tuple[bool, bool]:
    """``(x - y subset of H, x + H == y + H)``."""
    diff = mul_sets_mask(G, 1 << x, 1 << int(G.inv[y]))
    equiv = diff & ~H.mask == 0
    same = mul_sets_mask(G, 1 << x, H.mask) == mul_sets_mask(G, 1 << y, H.mask)
    return equiv, same


# ----------------------------------------------------------------------------
# products and sums


def _product_table(factors: Sequence[Hypergroup]):
    orders = [F.order for F in factors]
    tuples = list(_cartesian(*[range(k) for k in orders]))
    index = {t: i for i, t in enumerate(tuples)}
    n = len(tuples)
    t = np.zeros((n, n), np.int64)
    for i, a in enumerate(tuples):
        for j, b in enumerate(tuples):
            comps = [sorted(members(int(F.table[a[k], b[k]]))) for k, F in enumerate(factors)]
            acc = 0
            for c in _cartesian(*comps):
                acc |= 1 << index[c]
            t[i, j] = acc
    inv = [index[tuple(int(F.inv[a[k]]) for k, F in enumerate(factors))] for a in tuples]
    names = [".".join(F.names[a[k]] for k, F in enumerate(factors)) for a in tuples]
    return tuples, index, t, inv, names


def product(factors: Sequence[Hypergroup], name: str | None = None):
    """Cartesian product with componentwise operation, and the coordinate projections."""
    if not factors:
        raise ValueError("product of an empty family")
    tuples, _, t, inv, names = _product_table(factors)
    P = Hypergroup(t, inv, names, name or "x".join(F.name for F in factors))
    projections = [Morphism(P, F, [a[k] for a in tuples], f"p{k}") for k, F in enumerate(factors)]
    return P, projections


def direct_sum(summands: Sequence[Hypergroup], name: str | None = None):
    """Finite coproduct of abelian hypergroups (same carrier as the product) and injections."""
    if not summands:
        raise ValueError("direct sum of an empty family")
    for F in summands:
        if not F.commutative:
            raise Unsupported(f"direct sums are built for abelian summands; {F.name} is not")
    tuples, index, t, inv, names = _product_table(summands)
    P = Hypergroup(t, inv, names, name or "+".join(F.name for F in summands))
    injections = []
    for k, F in enumerate(summands):
        fmap = []
        for a in F.elements():
            slot = [0] * len(summands)
            slot[k] = a
            fmap.append(index[tuple(slot)])
        injections.append(Morphism(F, P, fmap, f"i{k}"))
    return P, injections


# ----------------------------------------------------------------------------
# diagrams


class DirectedDiagram:
    """Hypergroups on the nodes of a finite poset with an arrow for every ``i <= j``.

    ``arrows[(i, j)]`` maps ``objects[i]`` to ``objects[j]``.  Build from covering
    arrows with :meth:`from_arrows`; composites are filled in and must agree.
    """

    def __init__(self, nodes: Sequence[str], objects: Mapping[str, Hypergroup],
                 arrows: Mapping[tuple[str, str], Morphism], name: str = "D"):
        self.nodes = tuple(nodes)
        self.objects = dict(objects)
        self.arrows = dict(arrows)
        self.name = name
        self._validate()

    @classmethod
    def from_arrows(cls, nodes, objects, given: Mapping[tuple[str, str], Morphism], name="D"):
        nodes = tuple(nodes)
        arrows: dict[tuple[str, str], Morphism] = {(i, i): identity(objects[i]) for i in nodes}
        for (i, j), f in given.items():
            if i == j:
                continue
            arrows[(i, j)] = f
        changed = True
        while changed:
            changed = False
            for (i, j), f in list(arrows.items()):
                for (j2, k), g in list(arrows.items()):
                    if j2 != j or i == j or j == k:
                        continue
                    h = compose(g, f)
                    old = arrows.get((i, k))
                    if old is None:
                        arrows[(i, k)] = h
                        changed = True
                    elif not np.array_equal(old.map, h.map):
                        raise DiagramError(f"triangle {i} -> {j} -> {k} does not commute")
        return cls(nodes, objects, arrows, name)

    def _validate(self):
        for i in self.nodes:
            if i not in self.objects:
                raise DiagramError(f"node {i} has no object")
            f = self.arrows.get((i, i))
            if f is None or not np.array_equal(f.map, np.arange(self.objects[i].order)):
                raise DiagramError(f"arrow {i} -> {i} must be the identity")
        for (i, j), f in self.arrows.items():
            if f.dom != self.objects[i] or f.cod != self.objects[j]:
                raise DiagramError(f"arrow {i} -> {j} has the wrong endpoints")
            if i != j and (j, i) in self.arrows:
                raise DiagramError(f"{i} and {j} are mutually comparable; not a poset")
        for (i, j), f in self.arrows.items():
            for (j2, k), g in self.arrows.items():
                if j2 != j:
                    continue
                h = self.arrows.get((i, k))
                if h is None:
                    raise DiagramError(f"order not transitive at {i} <= {j} <= {k}")
                if not np.array_equal(h.map, g.map[f.map]):
                    raise DiagramError(f"triangle {i} -> {j} -> {k} does not commute")

    def leq(self, i, j) -> bool:
        return (i, j) in self.arrows

    def upper_bounds(self, i, j) -> list:
        return [k for k in self.nodes if self.leq(i, k) and self.leq(j, k)]

    def lower_bounds(self, i, j) -> list:
        return [k for k in self.nodes if self.leq(k, i) and self.leq(k, j)]

    def is_directed(self) -> bool:
        return all(self.upper_bounds(i, j) for i in self.nodes for j in self.nodes)

    def is_codirected(self) -> bool:
        return all(self.lower_bounds(i, j) for i in self.nodes for j in self.nodes)


def filtered_limit(D: DirectedDiagram, name: str = "lim"):
    """Compatible tuples with the product operation cut down to them, and the projections."""
    if not (D.is_directed() or D.is_codirected()):
        raise DiagramError("limit diagram must be directed or codirected")
    objs = [D.objects[i] for i in D.nodes]
    pos = {i: k for k, i in enumerate(D.nodes)}
    carrier = []
    for tup in _cartesian(*[range(G.order) for G in objs]):
        if all(int(f.map[tup[pos[i]]]) == tup[pos[j]] for (i, j), f in D.arrows.items()):
            carrier.append(tup)
    index = {t: k for k, t in enumerate(carrier)}
    n = len(carrier)
    t = np.zeros((n, n), np.int64)
    for a, ta in enumerate(carrier):
        for b, tb in enumerate(carrier):
            comps = [members(int(G.table[ta[k], tb[k]])) for k, G in enumerate(objs)]
            acc = 0
            for c, tc in enumerate(carrier):
                if all(tc[k] in comps[k] for k in range(len(objs))):
                    acc |= 1 << c
            t[a, b] = acc
    if (t == 0).any():
        a, b = np.argwhere(t == 0)[0]
        raise AxiomError(report([("nonempty", (int(a), int(b)))]),
                         f"limit operation has an empty cell at {carrier[a]} * {carrier[b]}")
    inv = [index[tuple(int(G.inv[ta[k]]) for k, G in enumerate(objs))] for ta in carrier]
    names = [".".join(G.names[ta[k]] for k, G in enumerate(objs)) for ta in carrier]
    L = Hypergroup(t, inv, names, name)
    psi = [Morphism(L, G, [ta[k] for ta in carrier], f"psi_{i}") for k, (i, G) in
           enumerate(zip(D.nodes, objs))]
    return L, psi


def colimit_relation(D: DirectedDiagram):
    """Members ``(node, x)`` of the disjoint union and the relation ``~`` as a set of pairs."""
    U = [(i, x) for i in D.nodes for x in D.objects[i].elements()]
    rel = set()
    for (i, x) in U:
        for (j, y) in U:
            for k in D.upper_bounds(i, j):
                if D.arrows[(i, k)](x) == D.arrows[(j, k)](y):
                    rel.add(((i, x), (j, y)))
                    break
    return U, rel


def is_equivalence(U, rel) -> bool:
    if any((u, u) not in rel for u in U):
        return False
    if any((v, u) not in rel for u, v in rel):
        return False
    by = {}
    for u, v in rel:
        by.setdefault(u, set()).add(v)
    return all(by.get(v, set()) <= by[u] for u in by for v in by[u])


def directed_colimit(D: DirectedDiagram, name: str = "colim"):
    """Disjoint union modulo ``~`` with the representative-pushing operation, and injections."""
    if not D.is_directed():
        raise DiagramError("colimit diagram must be directed")
    for i in D.nodes:
        if not D.objects[i].commutative:
            raise Unsupported(f"directed colimits are built for abelian objects; {i} is not")
    U, rel = colimit_relation(D)
    if not is_equivalence(U, rel):
        raise DiagramError("identification relation is not an equivalence")
    classes: list[list] = []
    cls_of = {}
    for u in U:
        if u in cls_of:
            continue
        c = [v for v in U if (u, v) in rel]
        for v in c:
            cls_of[v] = len(classes)
        classes.append(c)
    n = len(classes)
    t = np.zeros((n, n), np.int64)
    for (i, x) in U:
        for (j, y) in U:
            a, b = cls_of[(i, x)], cls_of[(j, y)]
            for k in D.upper_bounds(i, j):
                G = D.objects[k]
                for z in members(int(G.table[D.arrows[(i, k)](x), D.arrows[(j, k)](y)])):
                    t[a, b] |= 1 << cls_of[(k, z)]
    inv = [cls_of[(c[0][0], int(D.objects[c[0][0]].inv[c[0][1]]))] for c in classes]
    names = [f"{c[0][0]}:{D.objects[c[0][0]].names[c[0][1]]}" for c in classes]
    C = Hypergroup(t, inv, names, name)
    psi = [Morphism(D.objects[i], C, [cls_of[(i, x)] for x in D.objects[i].elements()], f"psi_{i}")
           for i in D.nodes]
    return C, psi
