"""Command-line interface.

Exit codes: 0 success or pass, 1 a check failed (the witness is printed),
2 usage, input or parse error.  ``--json`` switches to one JSON object on stdout.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

import numpy as np

from . import textio
from .cat import (ExactnessError, ExactSequence, bilinearity_check, biproduct_check, check_image_full,
                  colimit_universal_check, exactness_check, hom_structure, limit_universal_check,
                  universal_cokernel_check, universal_kernel_check)
from .construct import (SubCarrier, chain_hypergroup, coset_space, direct_sum, directed_colimit,
                        filtered_limit, generated, is_full_subcarrier, product, quotient)
from .core import (Hypergroup, HypergroupError, check_basic_identities, check_relational, members,
                   replay_axiom, sip_check, to_relational, verify_axioms)
from .enumeration import (canonical_relabelling, enumerate_hypergroups, search_equalizer_kernel_gap,
                          search_hom_nonassociative, search_nonfull_image, all_up_to, max_order)
from .morph import (Morphism, are_isomorphic, cokernel, enumerate_hom, image, is_morphism, kernel)


class UsageError(Exception):
    pass


@dataclass
class Outcome:
    ok: bool = True
    lines: list[str] = field(default_factory=list)
    data: dict = field(default_factory=dict)
    documents: list[str] = field(default_factory=list)

    def say(self, line: str):
        self.lines.append(line)


# ----------------------------------------------------------------------------
# loading


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _split_source(src: str) -> tuple[str, str | None]:
    path, sep, name = src.rpartition(":")
    if sep and path and name and "/" not in name:
        return path, name
    return src, None


def load(src: str, kind: str, *, verify: bool = True):
    """The named (or first) document of ``kind`` in ``FILE[:NAME]``."""
    path, name = _split_source(src)
    docs = textio.parse_all(_read(path), verify=verify)
    for d in docs:
        if d.kind == kind and (name is None or d.name == name):
            return d.body
    what = f"{kind} {name!r}" if name else f"a {kind}"
    raise UsageError(f"{path} contains no {what}")


def _elements(G: Hypergroup, spec: str) -> int:
    mask = 0
    for label in spec.split(","):
        label = label.strip()
        if not label:
            continue
        try:
            mask |= 1 << G.element(label)
        except KeyError as e:
            raise UsageError(str(e.args[0])) from None
    return mask


def _names(G: Hypergroup, items) -> list[str]:
    return [G.names[int(i)] for i in items]


def _tests(order: int) -> list[Hypergroup]:
    if not 1 <= order <= max_order():
        raise UsageError(f"test object order must lie in 1..{max_order()}")
    return all_up_to(order)


def _report(out: Outcome, rep, G: Hypergroup | None = None, label: str = "check"):
    out.ok = rep.passed
    out.data["report"] = data = rep.to_dict()
    if rep.passed:
        out.say(f"{label}: pass")
    for (tag, w), entry in zip(rep.violations, data["violations"]):
        shown = w
        if G is not None and all(isinstance(v, (int, np.integer)) for v in w):
            if all(0 <= int(v) < G.order for v in w):
                entry["names"] = _names(G, w)
                shown = "(" + ", ".join(entry["names"]) + ")"
        out.say(f"{label}: FAIL {tag} at {shown}")
    for note in rep.notes:
        out.say(f"note: {note}")


def _subcarrier_doc(sub: SubCarrier, name: str) -> str | None:
    try:
        return textio.serialize_hypergroup(sub.hypergroup(name))
    except HypergroupError:
        return None


# ----------------------------------------------------------------------------
# commands


def cmd_verify(a, out: Outcome):
    path, name = _split_source(a.source)
    docs = textio.parse_all(_read(path), verify=False)
    doc = next((d for d in docs if name is None or d.name == name), None)
    if doc is None:
        raise UsageError(f"{path} contains no document {name!r}")
    out.data.update(kind=doc.kind, name=doc.name)
    if doc.kind == "hypergroup":
        G = doc.body
        if a.replay:
            tag, _, raw = a.replay.partition(":")
            try:
                w = tuple(G.names.index(v) if v in G.names else G.element(v)
                          for v in raw.split(",") if v)
                hit = replay_axiom(G, tag, w)
            except (KeyError, ValueError, TypeError) as e:
                raise UsageError(f"bad witness {a.replay!r}: {e}") from None
            out.ok = not hit
            out.data["replay"] = {"axiom": tag, "witness": list(w), "violated": bool(hit)}
            state = "violated" if hit else "satisfied"
            out.say(f"axiom {tag} at ({', '.join(_names(G, w))}): {state}")
            return
        rep = verify_axioms(G)
        if a.identities:
            rep = rep.merged(check_basic_identities(G, literal_item_iii=a.literal_iii))
        _report(out, rep, G, doc.name)
    elif doc.kind == "morphism":
        f = doc.body
        _report(out, is_morphism(f.dom, f.cod, f.map), f.dom, doc.name)
    else:
        out.say(f"{doc.name}: pass")
        out.data["report"] = {"passed": True, "violations": [], "notes": []}


def cmd_commutative(a, out):
    G = load(a.source, "hypergroup")
    bad = np.argwhere(G.table != G.table.T)
    out.ok = not bad.size
    out.data["commutative"] = out.ok
    if out.ok:
        out.say(f"{G.name} is commutative")
    else:
        x, y = (int(v) for v in bad[0])
        out.data["witness"] = [x, y]
        out.say(f"{G.name} is not commutative: {G.names[x]}*{G.names[y]} != {G.names[y]}*{G.names[x]}")


def cmd_sip(a, out):
    G = load(a.source, "hypergroup")
    v = sip_check(G)
    out.ok = v.is_group
    out.data.update(v.to_dict())
    if v.is_group:
        out.say(f"{G.name}: strong inversion holds; it is a group")
    else:
        out.say(f"{G.name}: strong inversion fails at {G.names[v.witness]} "
                f"(partners: {', '.join(_names(G, sorted(v.partners))) or 'none'})")


def cmd_relational(a, out):
    G = load(a.source, "hypergroup")
    R = to_relational(G)
    triples = sorted(R.pi)
    out.data["triples"] = [list(t) for t in triples]
    for t in triples:
        out.say(" ".join(_names(G, t)))
    rep = check_relational(R)
    out.ok = rep.passed
    out.data["report"] = rep.to_dict()
    out.say(f"conditions I-III: {'pass' if rep.passed else 'FAIL ' + ', '.join(rep.tags)}")


def cmd_generate(a, out):
    G = load(a.source, "hypergroup")
    sub = generated(G, _elements(G, a.set) | 1)
    out.data["elements"] = _names(G, sub.elements())
    out.data["full"] = is_full_subcarrier(G, sub)
    out.say("generated: " + " ".join(out.data["elements"]))
    doc = _subcarrier_doc(sub, a.name or f"{G.name}_gen")
    if doc:
        out.documents.append(doc)


def cmd_quotient(a, out):
    G = load(a.source, "hypergroup")
    try:
        sub = SubCarrier(G, _elements(G, a.sub) | 1)
    except HypergroupError as e:
        raise UsageError(str(e)) from None
    q = quotient(G, sub, allow_noncommutative=a.allow_noncommutative)
    Q = q.quotient.renamed(a.name or q.quotient.name)
    out.data["cosets"] = [_names(G, sorted(b)) for b in q.cosets]
    out.documents.append(textio.serialize_hypergroup(Q))
    if a.projection:
        out.documents.insert(0, textio.serialize_hypergroup(G))
        out.documents.append(textio.serialize_morphism(Morphism(G, Q, q.projection.map, "pi")))


def cmd_coset_space(a, out):
    G = load(a.source, "hypergroup")
    try:
        sub = SubCarrier(G, _elements(G, a.sub) | 1)
    except HypergroupError as e:
        raise UsageError(str(e)) from None
    C = coset_space(G, sub, check=False)
    if a.name:
        C = C.renamed(a.name)
    rep = verify_axioms(C)
    _report(out, rep, C, C.name)
    if rep.passed or a.unchecked:
        out.documents.append(textio.serialize_hypergroup(C))


def cmd_chain(a, out):
    if a.k < 1:
        raise UsageError("chain length must be at least 1")
    out.documents.append(textio.serialize_hypergroup(chain_hypergroup(a.k, a.name)))


def _family(a, builder):
    objs = [load(s, "hypergroup") for s in a.sources]
    P, arrows = builder(objs, a.name)
    out_docs = [textio.serialize_hypergroup(P)]
    if a.morphisms:
        seen = set()
        pre = []
        for G in objs:
            if G.name not in seen:
                seen.add(G.name)
                pre.append(textio.serialize_hypergroup(G))
        out_docs = pre + out_docs + [textio.serialize_morphism(m) for m in arrows]
    return out_docs


def cmd_product(a, out):
    out.documents.extend(_family(a, product))


def cmd_direct_sum(a, out):
    out.documents.extend(_family(a, direct_sum))


def cmd_kernel(a, out):
    f = load(a.source, "morphism")
    sub, _ = kernel(f)
    out.data["elements"] = _names(f.dom, sub.elements())
    out.say(f"Ker {f.name}: " + " ".join(out.data["elements"]))
    out.documents.append(textio.serialize_hypergroup(sub.hypergroup(f"Ker_{f.name}")))


def cmd_image(a, out):
    f = load(a.source, "morphism")
    sub, inc = image(f)
    full = is_full_subcarrier(f.cod, sub)
    out.data.update(elements=_names(f.cod, sub.elements()), full_subhypergroup=full,
                    hypergroup=inc is not None, morphism_full=f.full)
    out.say(f"Im {f.name}: " + " ".join(out.data["elements"]))
    out.say(f"full subhypergroup: {'yes' if full else 'no'}")
    if inc is not None:
        out.documents.append(textio.serialize_hypergroup(inc.dom.renamed(f"Im_{f.name}")))


def cmd_cokernel(a, out):
    f = load(a.source, "morphism")
    Q, pi = cokernel(f, force_generated=a.force_generated)
    Q = Q.renamed(f"Coker_{f.name}")
    out.documents.append(textio.serialize_hypergroup(Q))
    out.documents.append(textio.serialize_morphism(Morphism(f.cod, Q, pi.map, "pi")))


def cmd_hom(a, out):
    G, H = load(a.dom, "hypergroup"), load(a.cod, "hypergroup")
    homs = enumerate_hom(G, H)
    out.data["count"] = len(homs)
    out.data["maps"] = [f.as_tuple() for f in homs]
    out.say(f"|Hom({G.name}, {H.name})| = {len(homs)}")
    for k, f in enumerate(homs):
        out.documents.append(textio.serialize_morphism(f, f"h{k}"))


def cmd_hom_table(a, out):
    G, H = load(a.dom, "hypergroup"), load(a.cod, "hypergroup")
    S = hom_structure(G, H)
    labels = [f"h{k}" for k in range(S.size)]
    for k, m in enumerate(S.maps):
        out.say(f"{labels[k]} = ({', '.join(_names(H, m))})")
    for i in range(S.size):
        for j in range(S.size):
            cell = ",".join(labels[h] for h in sorted(members(S.star[i][j]))) or "{}"
            out.say(f"{labels[i]} * {labels[j]} = {cell}")
    rep = S.check_axioms()
    fails = S.associativity_failures()
    out.data.update(maps=[list(map(int, m)) for m in S.maps], star=S.star, neutral=S.neutral,
                    inverse=S.inv, associative=not fails,
                    associativity_witness=list(fails[0]) if fails else None)
    out.say(f"associative: {'yes' if not fails else 'no, first failure at ' + str(fails[0])}")
    _report(out, rep, None, "hom axioms")


def cmd_bilinearity(a, out):
    objs = [load(s, "hypergroup") for s in (a.first, a.second, a.third)]
    _report(out, bilinearity_check(*objs), None, "bilinearity")


def cmd_image_full(a, out):
    f = load(a.source, "morphism")
    ok = check_image_full(f, force_generated=a.force_generated)
    out.ok = ok
    out.data["image_full"] = ok
    out.say(f"Im {f.name} = Ker Coker {f.name}: {'yes' if ok else 'no'}")


def _load_diagram(src):
    return load(src, "diagram")


def cmd_universal(a, out):
    tests = _tests(a.tests_order)
    if a.property == "kernel":
        f = load(a.sources[0], "morphism")
        _report(out, universal_kernel_check(f, tests), None, "kernel")
    elif a.property == "cokernel":
        f = load(a.sources[0], "morphism")
        _report(out, universal_cokernel_check(f, tests, force_generated=a.force_generated),
                None, "cokernel")
    elif a.property == "biproduct":
        if len(a.sources) != 2:
            raise UsageError("biproduct needs two hypergroups")
        G, H = (load(s, "hypergroup") for s in a.sources)
        _report(out, biproduct_check(G, H, tests), None, "biproduct")
    else:
        D = _load_diagram(a.sources[0])
        rep = None
        if D.is_directed() or D.is_codirected():
            L, psi = filtered_limit(D)
            rep = limit_universal_check(D, L, psi, tests)
            _report(out, rep, None, "limit cone")
            out.data["limit"] = rep.to_dict()
        if D.is_directed() and all(D.objects[i].commutative for i in D.nodes):
            C, psi = directed_colimit(D)
            crep = colimit_universal_check(D, C, psi, tests)
            ok = out.ok if rep is not None else True
            _report(out, crep, None, "colimit cocone")
            out.data["colimit"] = crep.to_dict()
            out.ok = ok and crep.passed
            rep = crep if rep is None else rep.merged(crep)
        if rep is None:
            raise UsageError("diagram is neither directed nor codirected")
        out.data["report"] = rep.to_dict()


def cmd_exact(a, out):
    arrows = [load(s, "morphism") for s in a.sources]
    try:
        rep = exactness_check(ExactSequence(arrows, short=a.short))
    except (ExactnessError, ValueError) as e:
        raise UsageError(str(e)) from None
    _report(out, rep, None, "exact")


def cmd_limit(a, out):
    D = _load_diagram(a.source)
    L, psi = filtered_limit(D, a.name or f"lim_{D.name}")
    _emit_cone(out, L, psi, D, outgoing=True)


def cmd_colimit(a, out):
    D = _load_diagram(a.source)
    C, psi = directed_colimit(D, a.name or f"colim_{D.name}")
    _emit_cone(out, C, psi, D, outgoing=False)


def _emit_cone(out, X, psi, D, *, outgoing: bool):
    docs, seen = [], set()
    for i in D.nodes:
        G = D.objects[i]
        if G.name not in seen:
            seen.add(G.name)
            docs.append(textio.serialize_hypergroup(G))
    docs.append(textio.serialize_hypergroup(X))
    for i, m in zip(D.nodes, psi):
        docs.append(textio.serialize_morphism(m, f"psi_{i}"))
    out.documents.extend(docs)
    out.data["order"] = X.order


def cmd_enumerate(a, out):
    try:
        classes = enumerate_hypergroups(a.order, a.commutative)
    except ValueError as e:
        raise UsageError(str(e)) from None
    out.data["count"] = len(classes)
    out.say(f"{len(classes)} classes of order {a.order}")
    if not a.count:
        out.documents.extend(textio.serialize_hypergroup(G) for G in classes)


def cmd_canon(a, out):
    G = load(a.source, "hypergroup")
    if G.order > 9:
        raise UsageError("canonical forms are computed up to order 9")
    cf, perm = canonical_relabelling(G)
    names = [G.names[int(p)] for p in perm]
    C = Hypergroup(cf.table().copy(), name=G.name, names=names)
    out.data["canonical_form"] = cf.hex()
    out.say(f"canonical form {cf.hex()}")
    out.documents.append(textio.serialize_hypergroup(C))


def cmd_iso(a, out):
    G, H = load(a.first, "hypergroup"), load(a.second, "hypergroup")
    f = are_isomorphic(G, H) if G.order == H.order else None
    out.ok = f is not None
    out.data["isomorphic"] = out.ok
    if f is None:
        out.say(f"{G.name} and {H.name} are not isomorphic")
    else:
        out.data["map"] = list(f.as_tuple())
        out.say(f"{G.name} and {H.name} are isomorphic")
        out.documents.append(textio.serialize_morphism(f, "iso"))


SEARCHES = {"hom-nonassoc": (search_hom_nonassociative, 4),
            "nonfull-image": (search_nonfull_image, 4),
            "equalizer-gap": (search_equalizer_kernel_gap, 3)}


def cmd_search(a, out):
    fn, limit = SEARCHES[a.kind]
    if not 1 <= a.max_order <= min(limit, max_order()):
        raise UsageError(f"{a.kind} scans orders 1..{min(limit, max_order())}")
    res = fn(a.max_order)
    out.data.update(kind=a.kind, found=res.found, scanned=res.scanned)
    out.say(res.describe())
    w = res.witness
    if w is None:
        return
    objs = {k: v for k, v in w.payload.items() if isinstance(v, Hypergroup)}
    maps = {k: list(v) for k, v in w.payload.items() if not isinstance(v, Hypergroup)}
    verdict = {k: ([list(m) for m in v] if isinstance(v, list) else
                   list(v) if isinstance(v, tuple) else v) for k, v in w.verdict.items()}
    out.data["witness"] = {"objects": {k: G.name for k, G in objs.items()}, "maps": maps,
                           "verdict": verdict}
    seen = set()
    for G in objs.values():
        if G.name not in seen:
            seen.add(G.name)
            out.documents.append(textio.serialize_hypergroup(G))
    for k, v in maps.items():
        out.say(f"{k} = ({', '.join(str(x) for x in v)})")
    for k, v in verdict.items():
        out.say(f"{k}: {v}")


# ----------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit one JSON object instead of text")
    p = argparse.ArgumentParser(prog="hg", parents=[common],
                                description="Finite hypergroups: verify, construct, enumerate.")
    sub = p.add_subparsers(dest="command", metavar="COMMAND", required=True)

    def add(name, fn, help_, aliases=()):
        sp = sub.add_parser(name, parents=[common], help=help_, aliases=list(aliases))
        sp.set_defaults(func=fn, command=name)
        return sp

    src = "FILE[:NAME]; '-' reads standard input"

    sp = add("verify", cmd_verify, "check the axioms of a document")
    sp.add_argument("source", help=src)
    sp.add_argument("--identities", action="store_true", help="also check the derived identities")
    sp.add_argument("--literal-iii", action="store_true",
                    help="check c in ab <=> c^-1 in a^-1 b^-1 instead of b^-1 a^-1")
    sp.add_argument("--replay", metavar="TAG:W1,W2,...",
                    help="re-test one reported witness given by element names; exit 1 if it is a violation")

    for name, fn, h in (("commutative", cmd_commutative, "test commutativity"),
                        ("sip", cmd_sip, "test the strong inversion property"),
                        ("relational", cmd_relational, "print the relational triples"),
                        ("canon", cmd_canon, "canonical form and canonical relabelling")):
        add(name, fn, h).add_argument("source", help=src)

    sp = add("generate", cmd_generate, "subhypergroup generated by a set", aliases=("generate-sub",))
    sp.add_argument("source", help=src)
    sp.add_argument("--set", required=True, help="comma-separated elements")
    sp.add_argument("--name")

    sp = add("quotient", cmd_quotient, "quotient of an abelian hypergroup")
    sp.add_argument("source", help=src)
    sp.add_argument("--sub", required=True, help="comma-separated elements of the subhypergroup")
    sp.add_argument("--name")
    sp.add_argument("--projection", action="store_true", help="also emit the projection")
    sp.add_argument("--allow-noncommutative", action="store_true")

    sp = add("coset-space", cmd_coset_space, "cosets of a subgroup of a group")
    sp.add_argument("source", help=src)
    sp.add_argument("--sub", required=True)
    sp.add_argument("--name")
    sp.add_argument("--unchecked", action="store_true",
                    help="emit the document even when the axioms fail")

    sp = add("chain", cmd_chain, "chain hypergroup with K nonzero elements")
    sp.add_argument("k", type=int)
    sp.add_argument("--name")

    for name, fn in (("product", cmd_product), ("direct-sum", cmd_direct_sum)):
        sp = add(name, fn, f"{name.replace('-', ' ')} of hypergroups")
        sp.add_argument("sources", nargs="+", metavar="SOURCE", help=src)
        sp.add_argument("--name")
        sp.add_argument("--morphisms", action="store_true",
                        help="also emit the factors and the structure morphisms")

    for name, fn, h in (("kernel", cmd_kernel, "kernel of a morphism"),
                        ("image", cmd_image, "image of a morphism")):
        add(name, fn, h).add_argument("source", help=src)
    for name, fn, h in (("cokernel", cmd_cokernel, "cokernel of a morphism"),
                        ("image-full", cmd_image_full, "test Im f = Ker Coker f")):
        sp = add(name, fn, h)
        sp.add_argument("source", help=src)
        sp.add_argument("--force-generated", action="store_true",
                        help="quotient by the subhypergroup generated by a non-full image")

    for name, fn, h in (("hom", cmd_hom, "list all morphisms"),
                        ("hom-table", cmd_hom_table, "star table of Hom(A, B)")):
        sp = add(name, fn, h)
        sp.add_argument("dom", help=src)
        sp.add_argument("cod", help=src)

    sp = add("bilinearity", cmd_bilinearity, "composition bilinearity over A -> B -> C")
    for n in ("first", "second", "third"):
        sp.add_argument(n, help=src)

    sp = add("universal", cmd_universal, "universal property checks")
    sp.add_argument("property", choices=("kernel", "cokernel", "biproduct", "cone"))
    sp.add_argument("sources", nargs="+", metavar="SOURCE", help=src)
    sp.add_argument("--tests-order", type=int, default=3, help="largest test object order")
    sp.add_argument("--force-generated", action="store_true")

    sp = add("exact", cmd_exact, "exactness of a sequence of morphisms")
    sp.add_argument("sources", nargs="+", metavar="SOURCE", help=src)
    sp.add_argument("--short", action="store_true", help="treat as 0 -> X -> Y -> Z -> 0")

    for name, fn, h in (("limit", cmd_limit, "limit of a directed or codirected diagram"),
                        ("colimit", cmd_colimit, "colimit of a directed diagram")):
        sp = add(name, fn, h)
        sp.add_argument("source", help=src)
        sp.add_argument("--name")

    sp = add("enumerate", cmd_enumerate, "all hypergroups of one order up to isomorphism")
    sp.add_argument("--order", type=int, required=True)
    sp.add_argument("--commutative", action="store_true")
    sp.add_argument("--count", action="store_true", help="print only the number of classes")

    sp = add("iso", cmd_iso, "find an isomorphism")
    sp.add_argument("first", help=src)
    sp.add_argument("second", help=src)

    sp = add("search", cmd_search, "counterexample probes")
    sp.add_argument("kind", choices=tuple(SEARCHES))
    sp.add_argument("--max-order", type=int, default=3)
    return p


def _emit(out: Outcome, code: int, command: str, as_json: bool, stream):
    if as_json:
        payload = {"command": command, "status": "pass" if code == 0 else "fail",
                   "exit_code": code, "messages": out.lines, "data": out.data,
                   "documents": out.documents}
        stream.write(json.dumps(payload, default=_jsonable) + "\n")
        return
    for line in out.lines:
        stream.write(line + "\n")
    if out.lines and out.documents:
        stream.write("\n")
    stream.write("\n".join(out.documents))


def _jsonable(v):
    if isinstance(v, np.integer):
        return int(v)
    if isinstance(v, np.ndarray):
        return v.tolist()
    if isinstance(v, (set, frozenset, tuple)):
        return list(v)
    raise TypeError(f"not serializable: {type(v).__name__}")


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    as_json = getattr(args, "json", False)
    out = Outcome()
    try:
        args.func(args, out)
    except (UsageError, textio.HgSyntaxError, textio.HgSemanticError, HypergroupError) as e:
        err = {"message": str(e)}
        for attr in ("line", "col"):
            if hasattr(e, attr):
                err[attr] = getattr(e, attr)
        rep = getattr(e, "report", None)
        if rep is not None:
            err["report"] = rep.to_dict()
        if as_json:
            stdout.write(json.dumps({"command": args.command, "status": "error", "exit_code": 2,
                                     "error": err}, default=_jsonable) + "\n")
        else:
            stderr.write(f"hg {args.command}: {e}\n")
        return 2
    code = 0 if out.ok else 1
    _emit(out, code, args.command, as_json, stdout)
    return code


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
