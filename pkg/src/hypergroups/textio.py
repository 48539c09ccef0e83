"""Line-oriented text format for hypergroups, morphisms and diagrams.

::

    hypergroup V3
    elements 0 a b
    inv 0 a b
    a a = 0,a
    a b = b
    b a = b
    b b = 0,a,b

    morphism f : V3 -> K2
    map 0 -> 1
    map a -> 1
    map b -> g

    diagram D
    node top V3
    node bot K2
    arrow top -> bot f

Cells in the identity row and column may be omitted when they hold the forced
singleton; output omits exactly those.  ``#`` starts a comment.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .core import Hypergroup, HypergroupError, members, verify_axioms
from .morph import Morphism, is_morphism

KEYWORDS = ("hypergroup", "morphism", "diagram")
_NAME = re.compile(r"[^\s,=#]+")


class HgSyntaxError(HypergroupError):
    def __init__(self, line: int, col: int, message: str):
        self.line, self.col = line, col
        super().__init__(f"{line}:{col}: {message}")


class HgSemanticError(HypergroupError):
    def __init__(self, line: int, message: str, report=None):
        self.line = line
        self.report = report
        super().__init__(f"{line}: {message}")


@dataclass
class HgDocument:
    kind: str
    name: str
    body: object
    line: int = 1


@dataclass
class _Line:
    no: int
    text: str
    tokens: list[tuple[int, str]]


def _tokenize(text: str) -> list[_Line]:
    out = []
    for no, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        toks = []
        for m in re.finditer(r"->|=|,|[^\s,=#]+", body):
            toks.append((m.start() + 1, m.group()))
        if toks:
            out.append(_Line(no, raw, toks))
    return out


def _expect_name(line: _Line, i: int, what: str) -> str:
    if i >= len(line.tokens):
        col = len(line.text.rstrip()) + 1
        raise HgSyntaxError(line.no, col, f"expected {what}")
    col, tok = line.tokens[i]
    if tok in ("->", "=", ","):
        raise HgSyntaxError(line.no, col, f"expected {what}, got {tok!r}")
    return tok


def _expect(line: _Line, i: int, tok: str):
    if i >= len(line.tokens):
        raise HgSyntaxError(line.no, len(line.text.rstrip()) + 1, f"expected {tok!r}")
    col, got = line.tokens[i]
    if got != tok:
        raise HgSyntaxError(line.no, col, f"expected {tok!r}, got {got!r}")


def _end(line: _Line, i: int):
    if i < len(line.tokens):
        col, got = line.tokens[i]
        raise HgSyntaxError(line.no, col, f"unexpected {got!r}")


def _split_blocks(lines: list[_Line]) -> list[list[_Line]]:
    blocks: list[list[_Line]] = []
    for ln in lines:
        head = ln.tokens[0][1]
        if head in KEYWORDS:
            blocks.append([ln])
        elif not blocks:
            col = ln.tokens[0][0]
            raise HgSyntaxError(ln.no, col, "expected 'hypergroup', 'morphism' or 'diagram'")
        else:
            blocks[-1].append(ln)
    return blocks


def _elem(names: dict[str, int], line: _Line, i: int) -> int:
    tok = _expect_name(line, i, "element name")
    if tok not in names:
        raise HgSemanticError(line.no, f"unknown element {tok!r}")
    return names[tok]


def _parse_hypergroup(block: list[_Line], verify: bool) -> Hypergroup:
    head = block[0]
    gname = _expect_name(head, 1, "hypergroup name")
    _end(head, 2)
    if len(block) < 2 or block[1].tokens[0][1] != "elements":
        ln = block[1] if len(block) > 1 else head
        raise HgSyntaxError(ln.no if len(block) > 1 else head.no + 1, 1, "expected 'elements'")
    el = block[1]
    elems = [_expect_name(el, i, "element name") for i in range(1, len(el.tokens))]
    if not elems:
        raise HgSyntaxError(el.no, len(el.text.rstrip()) + 1, "expected element name")
    if len(set(elems)) != len(elems):
        raise HgSemanticError(el.no, "duplicate element name")
    names = {s: i for i, s in enumerate(elems)}
    n = len(elems)
    rest = block[2:]
    inv = None
    if rest and rest[0].tokens[0][1] == "inv":
        ln = rest[0]
        inv = [_elem(names, ln, i) for i in range(1, len(ln.tokens))]
        if len(inv) != n:
            raise HgSemanticError(ln.no, f"inv lists {len(inv)} elements, expected {n}")
        rest = rest[1:]
    t = np.zeros((n, n), np.int64)
    given = np.zeros((n, n), bool)
    for ln in rest:
        x = _elem(names, ln, 0)
        y = _elem(names, ln, 1)
        _expect(ln, 2, "=")
        i = 3
        acc = 0
        while True:
            acc |= 1 << _elem(names, ln, i)
            i += 1
            if i < len(ln.tokens) and ln.tokens[i][1] == ",":
                i += 1
                continue
            break
        _end(ln, i)
        if given[x, y]:
            raise HgSemanticError(ln.no, f"cell {elems[x]} {elems[y]} given twice")
        given[x, y] = True
        t[x, y] = acc
    for x in range(n):
        for y in range(n):
            if not given[x, y]:
                if x == 0 or y == 0:
                    t[x, y] = 1 << (x | y)
                else:
                    raise HgSemanticError(head.no, f"missing cell {elems[x]} {elems[y]}")
    try:
        G = Hypergroup(t, inv, elems, gname, check=False)
    except HypergroupError as e:
        raise HgSemanticError(head.no, str(e)) from None
    if verify:
        rep = verify_axioms(G)
        if not rep.passed:
            tag, w = rep.violations[0]
            raise HgSemanticError(head.no, f"{gname}: axiom {tag} violated at "
                                  f"({', '.join(elems[v] for v in w)})", rep)
        G.checked = True
    return G


def _parse_morphism(block: list[_Line], env: Mapping[str, object], verify: bool) -> Morphism:
    head = block[0]
    mname = _expect_name(head, 1, "morphism name")
    i = 2
    if i < len(head.tokens) and head.tokens[i][1] == ":":
        i += 1
    elif i < len(head.tokens) and head.tokens[i][1].startswith(":"):
        raise HgSyntaxError(head.no, head.tokens[i][0], "expected ':' followed by a space")
    else:
        col = head.tokens[i][0] if i < len(head.tokens) else len(head.text.rstrip()) + 1
        raise HgSyntaxError(head.no, col, "expected ':'")
    dname = _expect_name(head, i, "domain name")
    _expect(head, i + 1, "->")
    cname = _expect_name(head, i + 2, "codomain name")
    _end(head, i + 3)
    dom, cod = env.get(dname), env.get(cname)
    for nm, obj in ((dname, dom), (cname, cod)):
        if not isinstance(obj, Hypergroup):
            raise HgSemanticError(head.no, f"unknown hypergroup {nm!r}")
    dn = {s: k for k, s in enumerate(dom.names)}
    cn = {s: k for k, s in enumerate(cod.names)}
    fmap = [-1] * dom.order
    fmap[0] = 0
    seen = set()
    for ln in block[1:]:
        if ln.tokens[0][1] != "map":
            raise HgSyntaxError(ln.no, ln.tokens[0][0], "expected 'map'")
        a = _elem(dn, ln, 1)
        _expect(ln, 2, "->")
        b = _elem(cn, ln, 3)
        _end(ln, 4)
        if a in seen:
            raise HgSemanticError(ln.no, f"{dom.names[a]} mapped twice")
        seen.add(a)
        fmap[a] = b
    if -1 in fmap:
        raise HgSemanticError(head.no, f"{mname}: {dom.names[fmap.index(-1)]} is not mapped")
    if verify:
        rep = is_morphism(dom, cod, fmap)
        if not rep.passed:
            tag, w = rep.violations[0]
            raise HgSemanticError(head.no, f"{mname}: morphism condition {tag} fails at "
                                  f"({', '.join(dom.names[v] for v in w)})", rep)
    return Morphism(dom, cod, fmap, mname, check=False)


def _parse_diagram(block: list[_Line], env: Mapping[str, object]):
    from .construct import DirectedDiagram
    head = block[0]
    dname = _expect_name(head, 1, "diagram name")
    _end(head, 2)
    nodes, objects, arrows = [], {}, {}
    for ln in block[1:]:
        kw = ln.tokens[0][1]
        if kw == "node":
            label = _expect_name(ln, 1, "node label")
            obj = _expect_name(ln, 2, "hypergroup name")
            _end(ln, 3)
            if not isinstance(env.get(obj), Hypergroup):
                raise HgSemanticError(ln.no, f"unknown hypergroup {obj!r}")
            nodes.append(label)
            objects[label] = env[obj]
        elif kw == "arrow":
            a = _expect_name(ln, 1, "node label")
            _expect(ln, 2, "->")
            b = _expect_name(ln, 3, "node label")
            m = _expect_name(ln, 4, "morphism name")
            _end(ln, 5)
            if not isinstance(env.get(m), Morphism):
                raise HgSemanticError(ln.no, f"unknown morphism {m!r}")
            if a not in objects or b not in objects:
                raise HgSemanticError(ln.no, "arrow between undeclared nodes")
            arrows[(a, b)] = env[m]
        else:
            raise HgSyntaxError(ln.no, ln.tokens[0][0], "expected 'node' or 'arrow'")
    try:
        return DirectedDiagram.from_arrows(nodes, objects, arrows, dname)
    except HypergroupError as e:
        raise HgSemanticError(head.no, str(e)) from None


def parse_all(text: str, env: Mapping[str, object] | None = None, *, verify: bool = True
              ) -> list[HgDocument]:
    """Every document in ``text``; later documents may reference earlier names."""
    lines = _tokenize(text)
    if not lines:
        raise HgSyntaxError(1, 1, "expected 'hypergroup', 'morphism' or 'diagram'")
    scope = dict(env or {})
    docs = []
    for block in _split_blocks(lines):
        kind = block[0].tokens[0][1]
        if kind == "hypergroup":
            body = _parse_hypergroup(block, verify)
        elif kind == "morphism":
            body = _parse_morphism(block, scope, verify)
        else:
            body = _parse_diagram(block, scope)
        doc = HgDocument(kind, body.name, body, block[0].no)
        scope[doc.name] = body
        docs.append(doc)
    return docs


def parse(text: str, env: Mapping[str, object] | None = None, *, verify: bool = True) -> HgDocument:
    return parse_all(text, env, verify=verify)[0]


# ----------------------------------------------------------------------------
# output


def serialize_hypergroup(G: Hypergroup, name: str | None = None) -> str:
    nm = G.names
    out = [f"hypergroup {name or G.name}", "elements " + " ".join(nm),
           "inv " + " ".join(nm[int(r)] for r in G.inv)]
    for x in range(G.order):
        for y in range(G.order):
            if (x == 0 or y == 0) and G.table[x, y] == 1 << (x | y):
                continue
            cell = ",".join(nm[z] for z in sorted(members(int(G.table[x, y]))))
            out.append(f"{nm[x]} {nm[y]} = {cell}")
    return "\n".join(out) + "\n"


def serialize_morphism(f: Morphism, name: str | None = None) -> str:
    out = [f"morphism {name or f.name} : {f.dom.name} -> {f.cod.name}"]
    for a in range(f.dom.order):
        out.append(f"map {f.dom.names[a]} -> {f.cod.names[int(f.map[a])]}")
    return "\n".join(out) + "\n"


def _covers(D) -> list[tuple[str, str]]:
    out = []
    for (i, j) in D.arrows:
        if i == j:
            continue
        if any(k not in (i, j) and D.leq(i, k) and D.leq(k, j) for k in D.nodes):
            continue
        out.append((i, j))
    order = {n: k for k, n in enumerate(D.nodes)}
    return sorted(out, key=lambda p: (order[p[0]], order[p[1]]))


def serialize_diagram(D, arrow_names: Mapping[tuple[str, str], str] | None = None) -> str:
    out = [f"diagram {D.name}"]
    for i in D.nodes:
        out.append(f"node {i} {D.objects[i].name}")
    for i, j in _covers(D):
        nm = (arrow_names or {}).get((i, j)) or D.arrows[(i, j)].name
        out.append(f"arrow {i} -> {j} {nm}")
    return "\n".join(out) + "\n"


def serialize(doc) -> str:
    body = doc.body if isinstance(doc, HgDocument) else doc
    if isinstance(body, Hypergroup):
        return serialize_hypergroup(body)
    if isinstance(body, Morphism):
        return serialize_morphism(body)
    return serialize_diagram(body)


def serialize_all(docs) -> str:
    return "\n".join(serialize(d) for d in docs)


def serialize_diagram_bundle(D) -> str:
    """Objects, covering arrows and the diagram block as one self-contained text."""
    parts, seen = [], set()
    for i in D.nodes:
        G = D.objects[i]
        if G.name not in seen:
            seen.add(G.name)
            parts.append(serialize_hypergroup(G))
    names = {}
    for i, j in _covers(D):
        nm = f"{D.name}_{i}_{j}"
        names[(i, j)] = nm
        parts.append(serialize_morphism(D.arrows[(i, j)], nm))
    parts.append(serialize_diagram(D, names))
    return "\n".join(parts)
