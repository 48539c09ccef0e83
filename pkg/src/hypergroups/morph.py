"""Morphisms: recognition, fullness, composition, kernels, images, cokernels, Hom, isomorphism."""
from __future__ import annotations

from collections import Counter
from typing import Sequence

import numpy as np

from . import kernels
from .core import (CheckReport, Hypergroup, HypergroupError, Unsupported, members, report,
                   to_mask)


class MorphismError(HypergroupError):
    def __init__(self, rep: CheckReport, message: str | None = None):
        self.report = rep
        tag, w = rep.violations[0]
        super().__init__(message or f"morphism condition {tag} fails at {w}")


def is_morphism(dom: Hypergroup, cod: Hypergroup, fmap: Sequence[int]) -> CheckReport:
    """Conditions i (products), ii (inverses), iii (identity); first witness of each."""
    f = np.asarray(fmap, dtype=np.int64)
    if f.shape != (dom.order,) or (f < 0).any() or (f >= cod.order).any():
        return report([("total", tuple(int(v) for v in f))])
    out = []
    w = kernels.first_morphism_violation(dom.table, cod.table, f)
    if w[0] >= 0:
        out.append(("i", w))
    bad = np.nonzero(f[dom.inv] != cod.inv[f])[0]
    if bad.size:
        out.append(("ii", (int(bad[0]),)))
    if f[0] != 0:
        out.append(("iii", (0,)))
    return report(out)


class Morphism:
    __slots__ = ("dom", "cod", "map", "full", "name")

    def __init__(self, dom: Hypergroup, cod: Hypergroup, fmap: Sequence[int],
                 name: str = "f", *, check: bool = True):
        f = np.array(fmap, dtype=np.int64)
        if check:
            rep = is_morphism(dom, cod, f)
            if not rep.passed:
                raise MorphismError(rep)
        f.setflags(write=False)
        self.dom = dom
        self.cod = cod
        self.map = f
        self.name = name
        self.full = kernels.first_fullness_violation(dom.table, cod.table, f)[0] < 0

    def __call__(self, x: int) -> int:
        return int(self.map[x])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Morphism):
            return NotImplemented
        return (self.dom == other.dom and self.cod == other.cod
                and np.array_equal(self.map, other.map))

    def __hash__(self) -> int:
        return hash((self.dom.key(), self.cod.key(), self.map.tobytes()))

    def __repr__(self) -> str:
        return f"Morphism({self.dom.name} -> {self.cod.name}, {self.map.tolist()})"

    def as_tuple(self) -> tuple[int, ...]:
        return tuple(int(v) for v in self.map)

    @property
    def injective(self) -> bool:
        return len(set(self.map.tolist())) == self.dom.order

    @property
    def surjective(self) -> bool:
        return len(set(self.map.tolist())) == self.cod.order

    def image_mask(self) -> int:
        return to_mask(self.map.tolist())

    def is_zero(self) -> bool:
        return not self.map.any()


def identity(G: Hypergroup) -> Morphism:
    return Morphism(G, G, np.arange(G.order), "id")


def zero(G: Hypergroup, H: Hypergroup) -> Morphism:
    return Morphism(G, H, np.zeros(G.order, np.int64), "0")


def is_full(f: Morphism) -> bool:
    return f.full


def fullness_witness(f: Morphism) -> tuple[int, int] | None:
    w = kernels.first_fullness_violation(f.dom.table, f.cod.table, f.map)
    return None if w[0] < 0 else w


def compose(g: Morphism, f: Morphism) -> Morphism:
    """``g o f``."""
    if f.cod != g.dom:
        raise ValueError(f"cannot compose {g.name} after {f.name}: {f.cod.name} is not {g.dom.name}")
    return Morphism(f.dom, g.cod, g.map[f.map], f"{g.name}.{f.name}")


# ----------------------------------------------------------------------------
# kernels, images, cokernels


def kernel(f: Morphism):
    from .construct import SubCarrier
    sub = SubCarrier(f.dom, to_mask(np.nonzero(f.map == 0)[0].tolist()))
    return sub, sub.inclusion()


def image(f: Morphism):
    """Image carrier of ``f`` and its inclusion.

    The carrier carries the induced operation ``(x*y) & Im``; the inclusion is
    ``None`` if that operation is not a hypergroup.
    """
    from .construct import SubCarrier
    sub = SubCarrier(f.cod, f.image_mask())
    try:
        inc = sub.inclusion()
    except HypergroupError:
        inc = None
    return sub, inc


def cokernel(f: Morphism, *, force_generated: bool = False):
    """Quotient of the codomain by the image, with its projection.

    Requires ``f`` full and an abelian codomain; ``force_generated`` instead
    quotients by the subhypergroup generated by the image.
    """
    from .construct import SubCarrier, quotient
    if not f.cod.commutative:
        raise Unsupported(f"cokernel needs an abelian codomain; {f.cod.name} is not")
    if not f.full and not force_generated:
        raise Unsupported(f"{f.name} is not full; pass force_generated to quotient by the "
                          "generated subhypergroup")
    q = quotient(f.cod, SubCarrier(f.cod, f.image_mask()))
    return q.quotient, q.projection


def cokernel_presentation(f: Morphism, *, force_generated: bool = False):
    from .construct import SubCarrier, quotient
    cokernel(f, force_generated=force_generated)  # hypothesis checks
    return quotient(f.cod, SubCarrier(f.cod, f.image_mask()))


# ----------------------------------------------------------------------------
# Hom and isomorphism


def enumerate_hom(G: Hypergroup, H: Hypergroup) -> list[Morphism]:
    """All morphisms ``G -> H`` in lexicographic order of their map arrays."""
    maps = kernels.hom_search(G.table, G.inv, H.table, H.inv)
    return [Morphism(G, H, m, check=False) for m in maps]


def hom_maps(G: Hypergroup, H: Hypergroup) -> np.ndarray:
    return kernels.hom_search(G.table, G.inv, H.table, H.inv)


def is_isomorphism(f: Morphism) -> bool:
    if f.dom.order != f.cod.order or not f.injective:
        return False
    back = np.empty_like(f.map)
    back[f.map] = np.arange(f.dom.order)
    return is_morphism(f.cod, f.dom, back).passed


def inverse(f: Morphism) -> Morphism:
    if not is_isomorphism(f):
        raise ValueError(f"{f.name} is not an isomorphism")
    back = np.empty_like(f.map)
    back[f.map] = np.arange(f.dom.order)
    return Morphism(f.cod, f.dom, back, f.name + "^-1")


def _element_profile(G: Hypergroup, x: int) -> tuple:
    sizes = [len(members(m)) for m in G.table[x].tolist()]
    col = [len(members(m)) for m in G.table[:, x].tolist()]
    return (int(G.inv[x]) == x, len(members(G.table[x, x])), tuple(sorted(sizes)), tuple(sorted(col)))


def invariants(G: Hypergroup) -> tuple:
    sizes = Counter(len(members(m)) for m in G.table.ravel().tolist())
    fixed = sum(1 for x in G.elements() if G.inv[x] == x)
    profiles = Counter(_element_profile(G, x) for x in G.elements())
    return (G.order, G.commutative, tuple(sorted(sizes.items())), fixed,
            tuple(sorted(profiles.items())))


def are_isomorphic(G: Hypergroup, H: Hypergroup) -> Morphism | None:
    """A bijective morphism with morphism inverse, or None."""
    if invariants(G) != invariants(H):
        return None
    n = G.order
    gp = [_element_profile(G, x) for x in range(n)]
    hp = [_element_profile(H, x) for x in range(n)]
    gt, ht = G.table, H.table
    sigma = [-1] * n
    sigma[0] = 0
    used = [False] * n
    used[0] = True
    assigned = [0]

    def consistent(x: int) -> bool:
        img = 0
        for a in assigned:
            img |= 1 << sigma[a]
        dom_set = 0
        for a in assigned:
            dom_set |= 1 << a
        for a in assigned:
            for b in assigned:
                if a != x and b != x:
                    continue
                mapped = to_mask(sigma[c] for c in members(int(gt[a, b]) & dom_set))
                if mapped != int(ht[sigma[a], sigma[b]]) & img:
                    return False
        return True

    def extend(i: int) -> bool:
        if i == n:
            return True
        for y in range(1, n):
            if used[y] or hp[y] != gp[i]:
                continue
            sigma[i] = y
            used[y] = True
            assigned.append(i)
            if (H.inv[y] == y) == (G.inv[i] == i) and consistent(i) and extend(i + 1):
                return True
            assigned.pop()
            used[y] = False
            sigma[i] = -1
        return False

    if not extend(1):
        return None
    f = Morphism(G, H, sigma, "iso")
    assert is_isomorphism(f)
    return f


def first_iso(f: Morphism) -> Morphism:
    """The induced map ``dom / Ker f -> Im f``, ``[a] -> f(a)``, verified an isomorphism."""
    from .construct import quotient
    if not f.full:
        raise Unsupported(f"{f.name} is not full")
    if not (f.dom.commutative and f.cod.commutative):
        raise Unsupported("first isomorphism map needs abelian domain and codomain")
    ker, _ = kernel(f)
    q = quotient(f.dom, ker)
    im, inc = image(f)
    if inc is None:
        raise HypergroupError("image of a full morphism failed to be a hypergroup")
    I = inc.dom
    pos = {c: i for i, c in enumerate(im.elements())}
    fbar = []
    for block in q.cosets:
        vals = {int(f.map[a]) for a in block}
        if len(vals) != 1:
            raise HypergroupError(f"induced map not well defined on block {sorted(block)}")
        fbar.append(pos[vals.pop()])
    out = Morphism(q.quotient, I, fbar, f"{f.name}-bar")
    if not (is_isomorphism(out) and out.full):
        raise HypergroupError("induced map is not a full isomorphism")
    return out
