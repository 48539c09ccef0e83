"""Hypergroups up to isomorphism, canonical forms, and counterexample probes."""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations

import numpy as np

from . import kernels
from .core import Hypergroup, members

HARD_CAP = 6
DEFAULT_CAP = 5


def max_order() -> int:
    """Enumeration cap: ``HG_MAX_ORDER`` if set, never above 6."""
    raw = os.environ.get("HG_MAX_ORDER")
    if raw is None:
        return DEFAULT_CAP
    return max(1, min(HARD_CAP, int(raw)))


# ----------------------------------------------------------------------------
# canonical forms


@lru_cache(maxsize=None)
def identity_fixing_perms(n: int) -> np.ndarray:
    rows = [(0,) + p for p in permutations(range(1, n))]
    return np.array(rows, dtype=np.int64).reshape(len(rows), n)


@dataclass(frozen=True, order=True)
class CanonicalForm:
    order: int
    bytes: bytes = field(repr=False)

    def table(self) -> np.ndarray:
        return np.frombuffer(self.bytes, dtype=np.int64).reshape(self.order, self.order)

    def hex(self) -> str:
        return self.bytes.hex()


def canonical_relabelling(G: Hypergroup) -> tuple[CanonicalForm, np.ndarray]:
    """Minimal row-major table over identity-fixing relabellings, and a permutation reaching it."""
    if G.order > 9:
        raise ValueError("canonical forms are only computed up to order 9")
    perms = identity_fixing_perms(G.order)
    flat, idx = kernels.canonical_table(G.table, perms)
    return CanonicalForm(G.order, np.ascontiguousarray(flat, dtype=np.int64).tobytes()), perms[idx]


def canonical_form(G: Hypergroup) -> CanonicalForm:
    return canonical_relabelling(G)[0]


# ----------------------------------------------------------------------------
# enumeration


def standard_involutions(n: int) -> list[np.ndarray]:
    """One inverse map per conjugacy class of identity-fixing involutions."""
    out = []
    for pairs in range((n - 1) // 2 + 1):
        inv = np.arange(n)
        start = n - 2 * pairs
        for k in range(pairs):
            a, b = start + 2 * k, start + 2 * k + 1
            inv[a], inv[b] = b, a
        out.append(inv)
    return out


def triple_orbits(n: int, inv: np.ndarray, commutative: bool = False) -> list[list[tuple[int, int, int]]]:
    """Orbits of nonzero triples under the reversibility symmetries (and ``x<->y`` if commutative)."""
    seen = set()
    orbits = []
    for x in range(1, n):
        for y in range(1, n):
            for z in range(1, n):
                if (x, y, z) in seen:
                    continue
                orb = []
                stack = [(x, y, z)]
                seen.add((x, y, z))
                while stack:
                    a, b, c = stack.pop()
                    orb.append((a, b, c))
                    nbrs = [(c, int(inv[b]), a), (int(inv[a]), c, b)]
                    if commutative:
                        nbrs.append((b, a, c))
                    for t in nbrs:
                        if t not in seen:
                            seen.add(t)
                            stack.append(t)
                orbits.append(sorted(orb))
    return orbits


def search_space(n: int, inv: np.ndarray, commutative: bool = False):
    """Kernel inputs: forced base table, orbit arrays in decision order, cell completion levels."""
    base = np.zeros((n, n), np.int64)
    for x in range(n):
        base[0, x] = base[x, 0] = 1 << x
    for x in range(1, n):
        base[x, inv[x]] |= 1
    orbits = triple_orbits(n, inv, commutative)
    orbits.sort(key=lambda o: (max(a * n + b for a, b, _ in o), o))
    starts = [0]
    tri = []
    cell_last = np.full((n, n), -1, np.int64)
    for k, orb in enumerate(orbits):
        tri.extend(orb)
        starts.append(len(tri))
        for a, b, _ in orb:
            cell_last[a, b] = k
    tri_arr = np.array(tri, dtype=np.int64).reshape(len(tri), 3)
    return base, np.array(starts, dtype=np.int64), tri_arr, cell_last


def raw_solutions(n: int, commutative_only: bool = False) -> list[np.ndarray]:
    """Every labelled solution table whose inverse map is in standard form."""
    out = []
    for inv in standard_involutions(n):
        base, starts, tri, last = search_space(n, inv, commutative_only)
        out.extend(kernels.enumerate_tables(base, starts, tri, last))
    return out


def enumerate_hypergroups(n: int, commutative_only: bool = False) -> list[Hypergroup]:
    """One representative (in canonical form) per isomorphism class of order-``n`` hypergroups."""
    cap = max_order()
    if not 1 <= n <= cap:
        raise ValueError(f"order must lie in 1..{cap} (HG_MAX_ORDER, hard cap {HARD_CAP})")
    return list(_enumerate_cached(n, commutative_only))


@lru_cache(maxsize=None)
def _enumerate_cached(n: int, commutative_only: bool) -> tuple[Hypergroup, ...]:
    classes: dict[CanonicalForm, None] = {}
    for t in raw_solutions(n, commutative_only):
        G = Hypergroup(t, check=False)
        classes.setdefault(canonical_form(G), None)
    out = []
    for k, cf in enumerate(sorted(classes)):
        G = Hypergroup(cf.table().copy(), name=f"H{n}_{k}")
        out.append(G)
    return tuple(out)


def all_up_to(n: int, commutative_only: bool = False) -> list[Hypergroup]:
    out = []
    for k in range(1, n + 1):
        out.extend(enumerate_hypergroups(k, commutative_only))
    return out


def is_singleton_table(G: Hypergroup) -> bool:
    return all(len(members(m)) == 1 for m in G.table.ravel().tolist())


# ----------------------------------------------------------------------------
# counterexample probes


@dataclass(frozen=True)
class SearchWitness:
    """A concrete instance of a probed phenomenon.

    ``payload`` holds the hypergroups (under keys ``G``, ``H``, ``E``) and the
    morphism maps as tuples; :func:`replay` recomputes ``verdict`` from it.
    """

    kind: str
    payload: dict
    verdict: dict


@dataclass(frozen=True)
class SearchResult:
    kind: str
    witness: SearchWitness | None
    scanned: dict

    @property
    def found(self) -> bool:
        return self.witness is not None

    def describe(self) -> str:
        space = ", ".join(f"{k}={v}" for k, v in self.scanned.items())
        if self.witness is None:
            return f"{self.kind}: none found; exhausted {space}"
        return f"{self.kind}: witness found after scanning {space}"


def _objects(max_order: int, limit: int, what: str) -> list[Hypergroup]:
    if not 1 <= max_order <= limit:
        raise ValueError(f"{what} scans orders 1..{limit}")
    return all_up_to(max_order)


def _pair_star(S, A: int, B: int) -> list[tuple[int, ...]]:
    return [tuple(int(v) for v in S.maps[i]) for i in sorted(members(S.star_sets(A, B)))]


def search_hom_nonassociative(max_order: int = 3, pairs=None) -> SearchResult:
    """First ``(f, g, h)`` in some ``Hom(G, H)`` with ``(f*g)*h != f*(g*h)``.

    Scans every ordered pair of enumerated classes up to ``max_order`` (or the
    given ``pairs``) in enumeration order.
    """
    from .cat import hom_structure
    if pairs is None:
        objs = _objects(max_order, 4, "search_hom_nonassociative")
        pairs = [(G, H) for G in objs for H in objs]
    n_pairs = n_maps = n_triples = 0
    for G, H in pairs:
        S = hom_structure(G, H)
        n_pairs += 1
        n_maps += S.size
        for f in range(S.size):
            for g in range(S.size):
                for h in range(S.size):
                    n_triples += 1
                    left = S.star_sets(S.star[f][g], 1 << h)
                    right = S.star_sets(1 << f, S.star[g][h])
                    if left != right:
                        w = SearchWitness("hom-nonassoc", {
                            "G": G, "H": H,
                            "f": tuple(S.maps[f].tolist()), "g": tuple(S.maps[g].tolist()),
                            "h": tuple(S.maps[h].tolist())},
                            {"left": _pair_star(S, S.star[f][g], 1 << h),
                             "right": _pair_star(S, 1 << f, S.star[g][h])})
                        return SearchResult("hom-nonassoc", w, {
                            "pairs": n_pairs, "morphisms": n_maps, "triples": n_triples})
    return SearchResult("hom-nonassoc", None,
                        {"pairs": n_pairs, "morphisms": n_maps, "triples": n_triples})


def search_nonfull_image(max_order: int = 3) -> SearchResult:
    """First morphism whose image carrier is not a full subhypergroup of the codomain."""
    from .construct import SubCarrier, is_full_subcarrier
    from .morph import enumerate_hom
    objs = _objects(max_order, 4, "search_nonfull_image")
    n_pairs = n_maps = n_full = 0
    for G in objs:
        for H in objs:
            n_pairs += 1
            for f in enumerate_hom(G, H):
                n_maps += 1
                if f.full:
                    n_full += 1
                    continue
                im = SubCarrier(H, f.image_mask())
                if not is_full_subcarrier(H, im):
                    w = SearchWitness("nonfull-image", {"G": G, "H": H, "f": f.as_tuple()},
                                      {"image": tuple(im.elements()), "image_full": False})
                    return SearchResult("nonfull-image", w, {
                        "pairs": n_pairs, "morphisms": n_maps, "full_skipped": n_full})
    return SearchResult("nonfull-image", None,
                        {"pairs": n_pairs, "morphisms": n_maps, "full_skipped": n_full})


def _equalizer_sides(S, f: int, g: int, h_map: np.ndarray) -> tuple[bool, bool]:
    """``f o h == g o h`` and ``zero in {e o h : e in f * r(g)}``."""
    lhs = bool(np.array_equal(S.maps[f][h_map], S.maps[g][h_map]))
    rg = S.inv[g]
    rhs = rg >= 0 and any(not S.maps[e][h_map].any() for e in members(S.star[f][rg]))
    return lhs, bool(rhs)


def search_equalizer_kernel_gap(max_order: int = 3) -> SearchResult:
    """First ``(f, g, h)`` where ``f o h = g o h`` and ``(f - g) o h = 0`` disagree.

    ``f - g`` is the star set ``f * r(g)`` in ``Hom(G, H)`` and ``(f - g) o h = 0``
    means some member composed with ``h`` is the zero morphism.
    """
    from .cat import hom_structure
    from .morph import hom_maps
    objs = _objects(max_order, 3, "search_equalizer_kernel_gap")
    n_triples = n_inst = 0
    for G in objs:
        into = {E.name: (E, hom_maps(E, G)) for E in objs}
        for H in objs:
            S = hom_structure(G, H)
            for E, hs in into.values():
                n_triples += 1
                for h in hs:
                    for f in range(S.size):
                        for g in range(S.size):
                            n_inst += 1
                            lhs, rhs = _equalizer_sides(S, f, g, h)
                            if lhs != rhs:
                                w = SearchWitness("equalizer-gap", {
                                    "E": E, "G": G, "H": H, "h": tuple(h.tolist()),
                                    "f": tuple(S.maps[f].tolist()), "g": tuple(S.maps[g].tolist())},
                                    {"lhs": lhs, "rhs": rhs})
                                return SearchResult("equalizer-gap", w, {
                                    "object_triples": n_triples, "instances": n_inst})
    return SearchResult("equalizer-gap", None, {"object_triples": n_triples, "instances": n_inst})


def replay(w: SearchWitness) -> bool:
    """Recompute the verdict of ``w`` through the public checkers."""
    from .cat import hom_structure
    from .construct import SubCarrier, is_full_subcarrier
    from .morph import Morphism
    p = w.payload
    if w.kind == "hom-nonassoc":
        S = hom_structure(p["G"], p["H"])
        f, g, h = (S.index(p[k]) for k in "fgh")
        if min(f, g, h) < 0:
            return False
        left = _pair_star(S, S.star[f][g], 1 << h)
        right = _pair_star(S, 1 << f, S.star[g][h])
        return left != right and {"left": left, "right": right} == w.verdict
    if w.kind == "nonfull-image":
        f = Morphism(p["G"], p["H"], p["f"])
        im = SubCarrier(p["H"], f.image_mask())
        return (not f.full and not is_full_subcarrier(p["H"], im)
                and tuple(im.elements()) == w.verdict["image"])
    if w.kind == "equalizer-gap":
        Morphism(p["E"], p["G"], p["h"])
        S = hom_structure(p["G"], p["H"])
        f, g = S.index(p["f"]), S.index(p["g"])
        if min(f, g) < 0:
            return False
        lhs, rhs = _equalizer_sides(S, f, g, np.asarray(p["h"]))
        return lhs != rhs and {"lhs": lhs, "rhs": rhs} == w.verdict
    raise ValueError(f"unknown witness kind {w.kind!r}")
