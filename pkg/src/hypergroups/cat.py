"""Hom structures, universal properties and exactness."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as _cartesian
from typing import Sequence

import numpy as np

from .core import CheckReport, Hypergroup, HypergroupError, members, report
from .morph import Morphism, cokernel, hom_maps, image, kernel


def _bitlist(mask: int) -> list[int]:
    return sorted(members(mask))


@dataclass
class HomStructure:
    """``Hom(G, H)`` with the pointwise multivalued operation.

    ``star[i][j]`` is a bitmask over indices of ``elements``; ``inv[i]`` is the
    index of ``x -> f(x)^-1`` or ``-1`` when that map is not a morphism.
    """

    dom: Hypergroup
    cod: Hypergroup
    maps: np.ndarray
    star: list[list[int]]
    neutral: int
    inv: list[int]
    _assoc: list | None = field(default=None, repr=False)

    @property
    def size(self) -> int:
        return len(self.maps)

    @property
    def elements(self) -> list[Morphism]:
        return [Morphism(self.dom, self.cod, m, f"h{i}", check=False) for i, m in enumerate(self.maps)]

    def index(self, fmap) -> int:
        key = tuple(int(v) for v in fmap)
        for i, m in enumerate(self.maps):
            if tuple(m.tolist()) == key:
                return i
        return -1

    def star_sets(self, A: int, B: int) -> int:
        out = 0
        for i in _bitlist(A):
            for j in _bitlist(B):
                out |= self.star[i][j]
        return out

    def check_axioms(self) -> CheckReport:
        """Axioms i and ii, closure under r, and nonemptiness of every cell."""
        k = self.size
        out = []
        missing = [i for i in range(k) if self.inv[i] < 0]
        if missing:
            out.append(("r-closed", (missing[0],)))
        empty = [(i, j) for i in range(k) for j in range(k) if self.star[i][j] == 0]
        if empty:
            out.append(("nonempty", empty[0]))
        done = False
        for f, g in _cartesian(range(k), repeat=2):
            for h in _bitlist(self.star[f][g]):
                rg, rf = self.inv[g], self.inv[f]
                if rg < 0 or rf < 0:
                    continue
                if not ((self.star[h][rg] >> f) & 1 and (self.star[rf][h] >> g) & 1):
                    out.append(("i", (f, g, h)))
                    done = True
                    break
            if done:
                break
        e = self.neutral
        for f in range(k):
            if self.star[e][f] != 1 << f or self.star[f][e] != 1 << f:
                out.append(("ii", (f,)))
                break
        for f in range(k):
            if self.inv[f] >= 0 and self.inv[self.inv[f]] != f:
                out.append(("r-involution", (f,)))
                break
        return report(out)

    def associativity_failures(self) -> list[tuple[int, int, int]]:
        if self._assoc is None:
            k = self.size
            fails = []
            for f, g, h in _cartesian(range(k), repeat=3):
                left = self.star_sets(self.star[f][g], 1 << h)
                right = self.star_sets(1 << f, self.star[g][h])
                if left != right:
                    fails.append((f, g, h))
            self._assoc = fails
        return self._assoc

    def is_associative(self) -> bool:
        return not self.associativity_failures()

    def as_hypergroup(self, name: str = "Hom") -> Hypergroup:
        """The star table as a :class:`Hypergroup`, when it is one (needs at most 62 elements)."""
        if any(self.star[i][j] == 0 for i in range(self.size) for j in range(self.size)):
            raise HypergroupError("Hom structure has an empty cell")
        perm = [self.neutral] + [i for i in range(self.size) if i != self.neutral]
        pos = {old: new for new, old in enumerate(perm)}
        t = [[sum(1 << pos[h] for h in _bitlist(self.star[a][b])) for b in perm] for a in perm]
        inv = [pos[self.inv[a]] for a in perm]
        return Hypergroup(t, inv, name=name)


def hom_structure(G: Hypergroup, H: Hypergroup) -> HomStructure:
    M = hom_maps(G, H)
    k = len(M)
    ct = H.table
    star = []
    for f in range(k):
        row = []
        for g in range(k):
            allowed = ct[M[f], M[g]]
            ok = ((allowed[None, :] >> M) & 1).all(axis=1)
            row.append(sum(1 << int(h) for h in np.nonzero(ok)[0]))
        star.append(row)
    lookup = {tuple(m.tolist()): i for i, m in enumerate(M)}
    neutral = lookup[tuple([0] * G.order)]
    inv = [lookup.get(tuple(H.inv[m].tolist()), -1) for m in M]
    return HomStructure(G, H, M, star, neutral, inv)


# ----------------------------------------------------------------------------
# bilinearity


def bilinearity_check(F: Hypergroup, G: Hypergroup, H: Hypergroup) -> CheckReport:
    """``(g*g') o (f*f')`` inside ``(gf * gf') * (g'f * g'f')`` for all f, f', g, g'."""
    FG, GH, FH = hom_structure(F, G), hom_structure(G, H), hom_structure(F, H)
    lookup = {tuple(m.tolist()): i for i, m in enumerate(FH.maps)}

    def comp(gi, fi):
        return lookup[tuple(GH.maps[gi][FG.maps[fi]].tolist())]

    out = []
    for f, f2 in _cartesian(range(FG.size), repeat=2):
        bs = _bitlist(FG.star[f][f2])
        for g, g2 in _cartesian(range(GH.size), repeat=2):
            left = FH.star[comp(g, f)][comp(g, f2)]
            right = FH.star[comp(g2, f)][comp(g2, f2)]
            rhs = FH.star_sets(left, right)
            for a in _bitlist(GH.star[g][g2]):
                for b in bs:
                    if not (rhs >> comp(a, b)) & 1:
                        out.append(("bilinear", (f, f2, g, g2, a, b)))
                        return report(out)
    return report(out)


# ----------------------------------------------------------------------------
# images and universal properties


def check_image_full(f: Morphism, *, force_generated: bool = False) -> bool:
    """Image carrier equals the kernel carrier of the cokernel projection."""
    im, _ = image(f)
    _, pi = cokernel(f, force_generated=force_generated)
    ker, _ = kernel(pi)
    return im.mask == ker.mask


def _maps_equal(a: np.ndarray, b: np.ndarray) -> bool:
    return bool(np.array_equal(a, b))


def universal_kernel_check(f: Morphism, tests: Sequence[Hypergroup]) -> CheckReport:
    """Every ``t: E -> dom f`` with ``f o t = 0`` factors uniquely through the kernel inclusion."""
    _, incl = kernel(f)
    out = []
    for E in tests:
        through = hom_maps(E, incl.dom)
        for t in hom_maps(E, f.dom):
            if f.map[t].any():
                continue
            hits = sum(1 for tb in through if _maps_equal(incl.map[tb], t))
            if hits != 1:
                out.append(("kernel-exist" if hits == 0 else "kernel-unique", (E.name, tuple(t.tolist()))))
    return report(out)


def universal_cokernel_check(f: Morphism, tests: Sequence[Hypergroup], *,
                             force_generated: bool = False) -> CheckReport:
    """Every ``t: cod f -> E`` with ``t o f = 0`` factors uniquely through the projection.

    Test objects are restricted to abelian hypergroups.
    """
    Q, pi = cokernel(f, force_generated=force_generated)
    out = []
    skipped = 0
    for E in tests:
        if not E.commutative:
            skipped += 1
            continue
        through = hom_maps(Q, E)
        for t in hom_maps(f.cod, E):
            if t[f.map].any():
                continue
            hits = sum(1 for tb in through if _maps_equal(tb[pi.map], t))
            if hits != 1:
                out.append(("cokernel-exist" if hits == 0 else "cokernel-unique",
                            (E.name, tuple(t.tolist()))))
    notes = [f"skipped {skipped} non-abelian test objects"] if skipped else []
    return report(out, notes)


def product_universal_check(factors: Sequence[Hypergroup], P: Hypergroup, projections: Sequence[Morphism],
                            tests: Sequence[Hypergroup]) -> CheckReport:
    out = []
    for E in tests:
        into = hom_maps(E, P)
        legs = [hom_maps(E, F) for F in factors]
        for choice in _cartesian(*[range(len(l)) for l in legs]):
            want = [legs[k][c] for k, c in enumerate(choice)]
            hits = sum(1 for m in into
                       if all(_maps_equal(p.map[m], w) for p, w in zip(projections, want)))
            if hits != 1:
                out.append(("product-exist" if hits == 0 else "product-unique",
                            (E.name,) + tuple(tuple(w.tolist()) for w in want)))
    return report(out)


def coproduct_universal_check(summands: Sequence[Hypergroup], S: Hypergroup, injections: Sequence[Morphism],
                              tests: Sequence[Hypergroup]) -> CheckReport:
    out = []
    for E in tests:
        if not E.commutative:
            continue
        outof = hom_maps(S, E)
        legs = [hom_maps(F, E) for F in summands]
        for choice in _cartesian(*[range(len(l)) for l in legs]):
            want = [legs[k][c] for k, c in enumerate(choice)]
            hits = sum(1 for m in outof
                       if all(_maps_equal(m[i.map], w) for i, w in zip(injections, want)))
            if hits != 1:
                out.append(("coproduct-exist" if hits == 0 else "coproduct-unique",
                            (E.name,) + tuple(tuple(w.tolist()) for w in want)))
    return report(out)


def biproduct_check(G: Hypergroup, H: Hypergroup, tests: Sequence[Hypergroup]) -> CheckReport:
    """Product property of ``G x H`` with projections and coproduct property with injections."""
    from .construct import direct_sum, product
    P, projections = product([G, H])
    S, injections = direct_sum([G, H])
    if P != S:
        return report([("same-carrier", (G.name, H.name))])
    return product_universal_check([G, H], P, projections, tests).merged(
        coproduct_universal_check([G, H], S, injections, tests))


def zero_object_check(tests: Sequence[Hypergroup]) -> CheckReport:
    from .construct import trivial
    T = trivial()
    out = []
    for G in tests:
        a, b = len(hom_maps(T, G)), len(hom_maps(G, T))
        if a != 1:
            out.append(("initial", (G.name, a)))
        if b != 1:
            out.append(("terminal", (G.name, b)))
    return report(out)


def limit_universal_check(D, L: Hypergroup, psi: Sequence[Morphism], tests) -> CheckReport:
    """Cones ``rho_i: E -> G_i`` over ``D`` factor uniquely through the limit."""
    out = []
    pos = {i: k for k, i in enumerate(D.nodes)}
    for k, i in enumerate(D.nodes):
        for (a, b), phi in D.arrows.items():
            if not _maps_equal(phi.map[psi[pos[a]].map], psi[pos[b]].map):
                out.append(("compatible", (a, b)))
    for E in tests:
        into = hom_maps(E, L)
        legs = [hom_maps(E, D.objects[i]) for i in D.nodes]
        for choice in _cartesian(*[range(len(l)) for l in legs]):
            rho = [legs[k][c] for k, c in enumerate(choice)]
            if not all(_maps_equal(phi.map[rho[pos[a]]], rho[pos[b]]) for (a, b), phi in D.arrows.items()):
                continue
            hits = sum(1 for m in into if all(_maps_equal(p.map[m], r) for p, r in zip(psi, rho)))
            if hits != 1:
                out.append(("limit-exist" if hits == 0 else "limit-unique",
                            (E.name,) + tuple(tuple(r.tolist()) for r in rho)))
    return report(out)


def colimit_universal_check(D, C: Hypergroup, psi: Sequence[Morphism], tests) -> CheckReport:
    """Cocones ``rho_i: G_i -> E`` over ``D`` factor uniquely through the colimit."""
    out = []
    pos = {i: k for k, i in enumerate(D.nodes)}
    for (a, b), phi in D.arrows.items():
        if not _maps_equal(psi[pos[b]].map[phi.map], psi[pos[a]].map):
            out.append(("compatible", (a, b)))
    for E in tests:
        outof = hom_maps(C, E)
        legs = [hom_maps(D.objects[i], E) for i in D.nodes]
        for choice in _cartesian(*[range(len(l)) for l in legs]):
            rho = [legs[k][c] for k, c in enumerate(choice)]
            if not all(_maps_equal(rho[pos[b]][phi.map], rho[pos[a]]) for (a, b), phi in D.arrows.items()):
                continue
            hits = sum(1 for m in outof if all(_maps_equal(m[p.map], r) for p, r in zip(psi, rho)))
            if hits != 1:
                out.append(("colimit-exist" if hits == 0 else "colimit-unique",
                            (E.name,) + tuple(tuple(r.tolist()) for r in rho)))
    return report(out)


# ----------------------------------------------------------------------------
# exactness


@dataclass
class ExactSequence:
    """``objects[0] -> objects[1] -> ...`` with ``arrows[k]: objects[k] -> objects[k+1]``.

    ``short`` marks ``0 -> X -> Y -> Z -> 0``: the first arrow must be full
    and injective, the last surjective.
    """

    arrows: list[Morphism]
    short: bool = False

    @property
    def objects(self) -> list[Hypergroup]:
        return [self.arrows[0].dom] + [a.cod for a in self.arrows]


class ExactnessError(HypergroupError):
    pass


def exactness_check(S: ExactSequence) -> CheckReport:
    arrows = S.arrows
    for k in range(len(arrows) - 1):
        if arrows[k].cod != arrows[k + 1].dom:
            raise ValueError(f"arrows {k} and {k + 1} are not composable")
    if S.short:
        if len(arrows) != 2:
            raise ValueError("a short exact sequence has exactly two arrows")
        if not arrows[0].full:
            raise ExactnessError("the first arrow of a short exact sequence must be full")
    out = []
    for k in range(len(arrows) - 1):
        f, g = arrows[k], arrows[k + 1]
        if g.map[f.map].any():
            out.append(("composite-zero", (k,)))
        im, _ = image(f)
        ker, _ = kernel(g)
        if im.mask != ker.mask:
            out.append(("exact", (k + 1, tuple(im.elements()), tuple(ker.elements()))))
    if S.short:
        if not arrows[0].injective:
            out.append(("injective", (0,)))
        if not arrows[1].surjective:
            out.append(("surjective", (2,)))
    return report(out)
