"""Finite hypergroups as bitmask tables, the axiom verifier, and the relational form."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as _cartesian
from typing import Iterable, Sequence

import numpy as np

from . import kernels

MAX_CARRIER = 62


class HypergroupError(ValueError):
    pass


class StructureError(HypergroupError):
    """Table shape, cell contents or inverse map are malformed."""


class AxiomError(HypergroupError):
    def __init__(self, report: "CheckReport", message: str | None = None):
        self.report = report
        tag, witness = report.violations[0]
        super().__init__(message or f"axiom {tag} violated at {witness}")


class Unsupported(HypergroupError):
    """A construction was asked for outside the hypotheses it is proved under."""


# ----------------------------------------------------------------------------
# element sets


def to_mask(members: Iterable[int]) -> int:
    m = 0
    for x in members:
        m |= 1 << int(x)
    return m


def members(mask: int) -> frozenset[int]:
    mask = int(mask)
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return frozenset(out)


def _as_mask(s) -> int:
    if isinstance(s, (int, np.integer)):
        return int(s)
    return to_mask(s)


# ----------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class CheckReport:
    violations: tuple[tuple[str, tuple], ...] = ()
    notes: tuple[str, ...] = field(default=(), compare=False)

    @property
    def passed(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.passed

    def witness(self, tag: str):
        for t, w in self.violations:
            if t == tag:
                return w
        return None

    @property
    def tags(self) -> tuple[str, ...]:
        return tuple(t for t, _ in self.violations)

    def merged(self, other: "CheckReport") -> "CheckReport":
        return CheckReport(self.violations + other.violations, self.notes + other.notes)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "violations": [{"axiom": t, "witness": list(w)} for t, w in self.violations],
            "notes": list(self.notes),
        }


def report(violations: Iterable[tuple[str, tuple]] = (), notes: Iterable[str] = ()) -> CheckReport:
    return CheckReport(tuple(violations), tuple(notes))


# ----------------------------------------------------------------------------
# the hypergroup


class Hypergroup:
    """A finite hypergroup with identity 0.

    ``table[x, y]`` is the bitmask of ``x * y`` and ``inv`` is the inverse map.
    Construction validates the structure and, unless ``check=False``, the axioms;
    unchecked instances exist only so the verifiers can be run on raw tables.
    """

    __slots__ = ("table", "inv", "names", "name", "commutative", "checked", "_key")

    def __init__(self, table, inv=None, names: Sequence[str] | None = None,
                 name: str = "G", *, check: bool = True):
        t = np.array(table, dtype=np.int64)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise StructureError(f"table must be a nonempty square array, got shape {t.shape}")
        n = t.shape[0]
        if n > MAX_CARRIER:
            raise StructureError(f"carrier of {n} elements exceeds the {MAX_CARRIER}-element limit")
        if (t <= 0).any():
            x, y = np.argwhere(t <= 0)[0]
            raise StructureError(f"cell ({x},{y}) is empty")
        if (t >> n).any():
            x, y = np.argwhere(t >> n)[0]
            raise StructureError(f"cell ({x},{y}) names an element outside the carrier")
        if inv is None:
            inv = _inverse_from_table(t)
        r = np.array(inv, dtype=np.int64)
        if r.shape != (n,) or sorted(r.tolist()) != list(range(n)):
            raise StructureError("inverse map must be a permutation of the carrier")
        if names is None:
            names = [str(i) for i in range(n)]
        names = tuple(str(s) for s in names)
        if len(names) != n or len(set(names)) != n:
            raise StructureError("element names must be distinct, one per element")
        t.setflags(write=False)
        r.setflags(write=False)
        self.table = t
        self.inv = r
        self.names = names
        self.name = name
        self.commutative = bool((t == t.T).all())
        self.checked = check
        self._key = None
        if check:
            rep = verify_axioms(self)
            if not rep.passed:
                raise AxiomError(rep)

    @classmethod
    def from_sets(cls, cells, inv=None, **kw) -> "Hypergroup":
        return cls([[to_mask(c) for c in row] for row in cells], inv, **kw)

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def __len__(self) -> int:
        return self.order

    def elements(self) -> range:
        return range(self.order)

    def mul_mask(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def mul(self, a: int, b: int) -> frozenset[int]:
        return mul(self, a, b)

    def cells(self) -> list[list[frozenset[int]]]:
        return [[members(m) for m in row] for row in self.table.tolist()]

    def key(self) -> bytes:
        if self._key is None:
            self._key = self.inv.tobytes() + self.table.tobytes()
        return self._key

    def __eq__(self, other) -> bool:
        if not isinstance(other, Hypergroup):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"Hypergroup({self.name!r}, order={self.order})"

    def renamed(self, name: str | None = None, names: Sequence[str] | None = None) -> "Hypergroup":
        out = object.__new__(Hypergroup)
        out.table, out.inv = self.table, self.inv
        out.names = tuple(names) if names is not None else self.names
        out.name = name if name is not None else self.name
        out.commutative, out.checked, out._key = self.commutative, self.checked, None
        return out

    def element(self, label) -> int:
        """Resolve an element name (or plain index) to its index."""
        if isinstance(label, (int, np.integer)):
            i = int(label)
        elif label in self.names:
            return self.names.index(label)
        elif isinstance(label, str) and label.isdigit():
            i = int(label)
        else:
            raise KeyError(f"{label!r} is not an element of {self.name}")
        if not 0 <= i < self.order:
            raise KeyError(f"{label!r} is not an element of {self.name}")
        return i


def _inverse_from_table(t: np.ndarray) -> np.ndarray:
    n = t.shape[0]
    inv = np.full(n, -1, np.int64)
    for x in range(n):
        cands = [y for y in range(n) if t[x, y] & 1]
        if len(cands) != 1:
            raise StructureError(f"element {x} has {len(cands)} candidate inverses {cands}")
        inv[x] = cands[0]
    return inv


def relabel(G: Hypergroup, perm: Sequence[int], *, check: bool = True) -> Hypergroup:
    """Image of ``G`` under the bijection ``x -> perm[x]``; perm must fix 0."""
    p = np.asarray(perm, dtype=np.int64)
    n = G.order
    if p[0] != 0:
        raise StructureError("relabelling must fix the identity")
    pinv = np.argsort(p)
    t = np.zeros((n, n), np.int64)
    for i in range(n):
        for j in range(n):
            t[i, j] = to_mask(p[z] for z in members(G.table[pinv[i], pinv[j]]))
    inv = p[G.inv[pinv]]
    names = [G.names[pinv[i]] for i in range(n)]
    return Hypergroup(t, inv, names, G.name, check=check)


# ----------------------------------------------------------------------------
# operations


def _check_index(G: Hypergroup, a) -> int:
    if not isinstance(a, (int, np.integer)) or not 0 <= int(a) < G.order:
        raise IndexError(f"element {a!r} out of range for order {G.order}")
    return int(a)


def mul(G: Hypergroup, a: int, b: int) -> frozenset[int]:
    a, b = _check_index(G, a), _check_index(G, b)
    return members(G.table[a, b])


def mul_sets_mask(G: Hypergroup, A: int, B: int) -> int:
    out = 0
    for a in members(A):
        row = G.table[a]
        for b in members(B):
            out |= int(row[b])
    return out


def mul_sets(G: Hypergroup, A, B) -> frozenset[int]:
    A, B = _as_mask(A), _as_mask(B)
    if A == 0 or B == 0:
        raise ValueError("set product of an empty set")
    if (A | B) >> G.order:
        raise IndexError("set names elements outside the carrier")
    return members(mul_sets_mask(G, A, B))


def inv_mask(G: Hypergroup, A: int) -> int:
    return to_mask(int(G.inv[a]) for a in members(A))


def verify_axioms(G: Hypergroup) -> CheckReport:
    """Check axioms i-iii (and iv when the table is symmetric) on every triple.

    Violation tags: ``inv`` (stored inverse disagrees with the table), ``i``,
    ``ii``, ``iii``, ``iv``.  Each carries its lexicographically first witness.
    """
    t, r = G.table, G.inv
    n = G.order
    out = []
    for x in range(n):
        holders = [y for y in range(n) if t[x, y] & 1]
        if holders != [int(r[x])]:
            out.append(("inv", (x,)))
            break
    w = kernels.first_reversibility_violation(t, r)
    if w[0] >= 0:
        out.append(("i", w))
    for x in range(n):
        if t[0, x] != 1 << x:
            y = next(iter(sorted(members(t[0, x]) - {x})), x)
            out.append(("ii", (x, y)))
            break
    w = kernels.first_assoc_violation(t)
    if w[0] >= 0:
        out.append(("iii", w))
    if G.commutative:
        bad = np.argwhere(t != t.T)
        if bad.size:
            out.append(("iv", tuple(int(v) for v in bad[0])))
    return report(out)


def replay_axiom(G: Hypergroup, tag: str, witness: Sequence[int]) -> bool:
    """True iff ``witness`` still violates axiom ``tag`` in ``G``."""
    t, r = G.table, G.inv
    if tag == "inv":
        (x,) = witness
        return [y for y in G.elements() if t[x, y] & 1] != [int(r[x])]
    if tag == "i":
        x, y, z = witness
        if not (t[x, y] >> z) & 1:
            return False
        return not ((t[z, r[y]] >> x) & 1 and (t[r[x], z] >> y) & 1)
    if tag == "ii":
        x, y = witness
        return bool(((t[0, x] >> y) & 1) != (x == y)) or t[0, x] != 1 << x
    if tag == "iii":
        x, y, z = witness
        left = mul_sets_mask(G, int(t[x, y]), 1 << z)
        right = mul_sets_mask(G, 1 << x, int(t[y, z]))
        return left != right
    if tag == "iv":
        x, y = witness
        return t[x, y] != t[y, x]
    raise KeyError(tag)


def is_commutative(G: Hypergroup) -> bool:
    return G.commutative


def opposite(G: Hypergroup, *, check: bool = True) -> Hypergroup:
    return Hypergroup(G.table.T.copy(), G.inv, G.names, G.name + "^op", check=check)


def check_basic_identities(G: Hypergroup, *, literal_item_iii: bool = False) -> CheckReport:
    """The four elementary inverse identities, on every pair and triple.

    Item iii is checked as ``c in ab  <=>  c^-1 in b^-1 a^-1``.  With
    ``literal_item_iii`` the factors are not swapped, which only holds in
    commutative hypergroups.
    """
    t, r = G.table, G.inv
    n = G.order
    out = []
    if r[0] != 0:
        out.append(("ident-i", (0,)))
    for a in range(n):
        if r[r[a]] != a:
            out.append(("ident-ii", (a,)))
            break
    for a, b, c in _cartesian(range(n), repeat=3):
        lhs = bool((t[a, b] >> c) & 1)
        rhs_cell = t[r[a], r[b]] if literal_item_iii else t[r[b], r[a]]
        if lhs != bool((rhs_cell >> r[c]) & 1):
            out.append(("ident-iii", (a, b, c)))
            break
    for a, b in _cartesian(range(n), repeat=2):
        if inv_mask(G, int(t[a, b])) != t[r[b], r[a]]:
            out.append(("ident-iv", (a, b)))
            break
    return report(out)


@dataclass(frozen=True)
class SIPVerdict:
    is_group: bool
    witness: int | None = None
    partners: frozenset[int] = frozenset()

    def __bool__(self) -> bool:
        return self.is_group

    def to_dict(self) -> dict:
        return {"is_group": self.is_group, "witness": self.witness,
                "partners": sorted(self.partners)}


def sip_check(G: Hypergroup) -> SIPVerdict:
    """Strong inversion: every ``a`` has exactly one ``b`` with ``a*b == {1}``."""
    for a in G.elements():
        partners = frozenset(b for b in G.elements() if G.table[a, b] == 1)
        if len(partners) != 1:
            return SIPVerdict(False, a, partners)
    singletons = all(m & (m - 1) == 0 for m in G.table.ravel().tolist())
    if not singletons:
        raise AssertionError(f"{G.name} has strong inversion but a multivalued cell")
    return SIPVerdict(True)


def is_group_table(G: Hypergroup) -> bool:
    return all(m & (m - 1) == 0 for m in G.table.ravel().tolist())


# ----------------------------------------------------------------------------
# relational form


@dataclass(frozen=True)
class RelationalHypergroup:
    order: int
    inv: tuple[int, ...]
    identity: int
    pi: frozenset[tuple[int, int, int]]


def to_relational(G: Hypergroup) -> RelationalHypergroup:
    pi = frozenset((x, y, z) for x in G.elements() for y in G.elements()
                   for z in members(G.table[x, y]))
    return RelationalHypergroup(G.order, tuple(int(v) for v in G.inv), 0, pi)


def check_relational(R: RelationalHypergroup) -> CheckReport:
    """Conditions I-III of the relational presentation, plus cell nonemptiness."""
    n, r, e, pi = R.order, R.inv, R.identity, R.pi
    out = []
    for trip in sorted(pi):
        if any(not 0 <= v < n for v in trip):
            out.append(("range", trip))
            return report(out)
    for x, y, z in sorted(pi):
        if (z, r[y], x) not in pi or (r[x], z, y) not in pi:
            out.append(("I", (x, y, z)))
            break
    for x, y in _cartesian(range(n), repeat=2):
        if ((x, e, y) in pi) != (x == y):
            out.append(("II", (x, y)))
            break
    by_prefix: dict[tuple[int, int], set[int]] = {}
    for x, y, z in pi:
        by_prefix.setdefault((x, y), set()).add(z)
    found = False
    for u, v, w in _cartesian(range(n), repeat=3):
        for p in sorted(by_prefix.get((u, v), ())):
            for x in sorted(by_prefix.get((p, w), ())):
                if not any(x in by_prefix.get((u, q), ()) for q in by_prefix.get((v, w), ())):
                    out.append(("III", (u, v, w, p, x)))
                    found = True
                    break
            if found:
                break
        if found:
            break
    for x, y in _cartesian(range(n), repeat=2):
        if (x, y) not in by_prefix:
            out.append(("nonempty", (x, y)))
            break
    return report(out)


def from_relational(R: RelationalHypergroup, names=None, name: str = "G") -> Hypergroup:
    rep = check_relational(R)
    if not rep.passed:
        raise AxiomError(rep, f"relational structure fails {rep.tags[0]} at {rep.violations[0][1]}")
    n = R.order
    e = R.identity
    # move the identity to index 0
    perm = list(range(n))
    perm[0], perm[e] = e, 0
    t = np.zeros((n, n), np.int64)
    for x, y, z in R.pi:
        t[perm[x], perm[y]] |= 1 << perm[z]
    inv = np.zeros(n, np.int64)
    for x in range(n):
        inv[perm[x]] = perm[R.inv[x]]
    G = Hypergroup(t, inv, names, name, check=False)
    full = verify_axioms(G)
    if not full.passed:
        raise AxiomError(full, "relational conditions hold but the operation axioms fail "
                               f"({full.tags[0]} at {full.violations[0][1]})")
    G.checked = True
    return G
