"""Independent reference implementations used to cross-check the library.

Deliberately naive and separately written: the question resolver scans the
raw edge list per candidate instead of using adjacency indexes, the trace
interpreter re-executes rendered solution text, and the puzzle solver walks
itertools.product instead of bitmasks. Tables are re-declared here on
purpose; do not import them from the package.
"""

from __future__ import annotations

import itertools
import re

from synthqa.knights import And, Atom, Formula, Iff, Implies, Or
from synthqa.model import Anchor, AttrLookup, Hop, QuestionAst, RelationKind, Universe

# --- brute-force question resolution -------------------------------------------

_ORACLE_MACROS = {
    "aunt": ["parent", "sister"],
    "uncle": ["parent", "brother"],
    "nephew": ["sibling", "son"],
    "niece": ["sibling", "daughter"],
    "grandmother": ["parent", "mother"],
    "grandfather": ["parent", "father"],
    "great-granddaughter": ["child", "child", "daughter"],
    "great-grandson": ["child", "child", "son"],
    "daughter-in-law": ["child", "wife"],
    "son-in-law": ["child", "husband"],
}

_ORACLE_GENDER = {
    "mother": "female", "father": "male",
    "son": "male", "daughter": "female",
    "brother": "male", "sister": "female",
    "husband": "male", "wife": "female",
}


def _is_step(u: Universe, candidate: str, step: str, origin: str) -> bool:
    """Does `candidate` stand in atomic relation `step` to `origin`?
    Checked by scanning the raw edge list."""
    base = {
        "mother": "parent", "father": "parent", "parent": "parent",
        "son": "child", "daughter": "child", "child": "child",
        "brother": "sibling", "sister": "sibling", "sibling": "sibling",
        "husband": "spouse", "wife": "spouse", "friend": "friend",
    }[step]
    want_gender = _ORACLE_GENDER.get(step)
    if want_gender is not None and u.person(candidate).gender.value != want_gender:
        return False
    edges = u.relations
    if base == "parent":
        return any(
            e.kind is RelationKind.PARENT_OF and e.src == candidate and e.dst == origin
            for e in edges
        )
    if base == "child":
        return any(
            e.kind is RelationKind.PARENT_OF and e.src == origin and e.dst == candidate
            for e in edges
        )
    if base == "sibling":
        if candidate == origin:
            return False
        origin_parents = {e.src for e in edges if e.kind is RelationKind.PARENT_OF and e.dst == origin}
        cand_parents = {e.src for e in edges if e.kind is RelationKind.PARENT_OF and e.dst == candidate}
        return bool(origin_parents & cand_parents)
    if base == "spouse":
        return any(
            e.kind is RelationKind.SPOUSE_OF and e.src == origin and e.dst == candidate
            for e in edges
        )
    return any(
        e.kind is RelationKind.FRIEND_OF and e.src == origin and e.dst == candidate
        for e in edges
    )


def _oracle_persons(ast: QuestionAst, u: Universe) -> set[str]:
    if isinstance(ast, Anchor):
        if ast.by_name is not None:
            return {p.id for p in u.persons if p.full_name == ast.by_name}
        attr, value = ast.by_attribute
        return {p.id for p in u.persons if getattr(p, attr) == value}
    assert isinstance(ast, Hop)
    current = _oracle_persons(ast.inner, u)
    steps = _ORACLE_MACROS.get(ast.relation_word, [ast.relation_word])
    for step in steps:
        current = {
            c.id
            for c in u.persons
            if any(_is_step(u, c.id, step, origin) for origin in current)
        }
    return current


def oracle_resolve(ast: QuestionAst, u: Universe) -> set[str]:
    """Answer set (names or attribute values) via exhaustive candidate scans."""
    if isinstance(ast, AttrLookup):
        persons = _oracle_persons(ast.inner, u)
        return {getattr(u.person(p), ast.attr) for p in persons}
    return {u.person(p).full_name for p in _oracle_persons(ast, u)}


def oracle_hop_triples(ast: QuestionAst, u: Universe) -> list[tuple[str, str, str]]:
    """(origin person id, atomic step, target person id) triples consumed while
    resolving the question; used by the answerability check."""
    triples: list[tuple[str, str, str]] = []

    def walk(node: QuestionAst) -> set[str]:
        if isinstance(node, AttrLookup):
            return walk(node.inner)
        if isinstance(node, Anchor):
            return _oracle_persons(node, u)
        current = walk(node.inner)
        steps = _ORACLE_MACROS.get(node.relation_word, [node.relation_word])
        for step in steps:
            nxt: set[str] = set()
            for origin in sorted(current):
                for c in u.persons:
                    if _is_step(u, c.id, step, origin):
                        nxt.add(c.id)
                        triples.append((origin, step, c.id))
            current = nxt
        return current

    walk(ast)
    return triples


# --- solution-trace interpretation ------------------------------------------------

_DEFINE_RE = re.compile(r"Define .+? as ([A-Za-z]); so \1 = (.+?)\.(?: |$)")


def interpret_trace(trace: str) -> int:
    """Execute a define-variable solution trace and return the last value.

    Each segment reads 'Define <label> as v; so v = EXPR[ = ... = N].'; the
    first expression after the variable is evaluated against the running
    environment and the trailing number, when present, must agree.
    """
    env: dict[str, int] = {}
    last: int | None = None
    matches = list(_DEFINE_RE.finditer(trace))
    if not matches:
        raise ValueError("trace contains no definitions")
    for m in matches:
        var, rhs = m.group(1), m.group(2)
        chunks = [c.strip() for c in rhs.split(" = ")]
        expr = chunks[0]
        tokens = expr.split()
        if len(tokens) == 1:
            value = env[tokens[0]] if tokens[0] in env else int(tokens[0])
        elif len(tokens) == 3:
            a = env[tokens[0]] if tokens[0] in env else int(tokens[0])
            b = env[tokens[2]] if tokens[2] in env else int(tokens[2])
            value = {"+": a + b, "-": a - b, "*": a * b}[tokens[1]]
        else:
            raise ValueError(f"unparseable expression: {expr!r}")
        stated = chunks[-1]
        if stated.lstrip("-").isdigit() and int(stated) != value:
            raise ValueError(f"trace states {stated} but evaluation gives {value}")
        if var in env:
            raise ValueError(f"variable {var} redefined")
        env[var] = value
        last = value
    assert last is not None
    return last


def trace_variables(trace: str) -> list[str]:
    return [m.group(1) for m in _DEFINE_RE.finditer(trace)]


# --- naive truth-table solving ------------------------------------------------------


def _naive_eval(f: Formula, assignment: dict[int, bool]) -> bool:
    if isinstance(f, Atom):
        truthful = assignment[f.person]
        return truthful if f.claims_truthteller else not truthful
    if isinstance(f, And):
        return _naive_eval(f.left, assignment) and _naive_eval(f.right, assignment)
    if isinstance(f, Or):
        return _naive_eval(f.left, assignment) or _naive_eval(f.right, assignment)
    if isinstance(f, Implies):
        if _naive_eval(f.left, assignment):
            return _naive_eval(f.right, assignment)
        return True
    if isinstance(f, Iff):
        return _naive_eval(f.left, assignment) is _naive_eval(f.right, assignment)
    raise TypeError(f"unknown formula node: {f!r}")


def naive_solve(statements: list[tuple[int, Formula]], n_people: int) -> list[tuple[bool, ...]]:
    out = []
    for combo in itertools.product((False, True), repeat=n_people):
        assignment = dict(enumerate(combo))
        ok = True
        for speaker, formula in statements:
            said_truth = _naive_eval(formula, assignment)
            if assignment[speaker] != said_truth:
                ok = False
                break
        if ok:
            out.append(tuple(combo))
    return out
