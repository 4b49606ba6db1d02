"""Shared domain types: people, universes, question trees, samples.

Everything here is immutable after construction and safe to share across
workers. Validation returns violations as data rather than raising, so a
generator can assert emptiness and a test can inspect specifics.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Union


class Gender(str, Enum):
    FEMALE = "female"
    MALE = "male"


class RelationKind(str, Enum):
    PARENT_OF = "parent_of"
    SPOUSE_OF = "spouse_of"
    FRIEND_OF = "friend_of"


@dataclass(frozen=True)
class Person:
    id: str
    full_name: str
    gender: Gender
    date_of_birth: str  # ISO-8601, zero-padded 4-digit year
    hobby: str
    occupation: str


@dataclass(frozen=True)
class RelationEdge:
    kind: RelationKind
    src: str  # person id
    dst: str  # person id


@dataclass(frozen=True)
class Universe:
    id: str
    seed: int
    persons: tuple[Person, ...]
    relations: tuple[RelationEdge, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "_by_id", {p.id: p for p in self.persons})
        object.__setattr__(self, "_by_name", {p.full_name: p for p in self.persons})
        parents: dict[str, list[str]] = {}
        children: dict[str, list[str]] = {}
        spouse: dict[str, str] = {}
        friends: dict[str, list[str]] = {}
        for e in self.relations:
            if e.kind is RelationKind.PARENT_OF:
                children.setdefault(e.src, []).append(e.dst)
                parents.setdefault(e.dst, []).append(e.src)
            elif e.kind is RelationKind.SPOUSE_OF:
                spouse[e.src] = e.dst
            else:
                friends.setdefault(e.src, []).append(e.dst)
        object.__setattr__(self, "_parents", parents)
        object.__setattr__(self, "_children", children)
        object.__setattr__(self, "_spouse", spouse)
        object.__setattr__(self, "_friends", friends)

    def person(self, pid: str) -> Person:
        return self._by_id[pid]

    def by_name(self, full_name: str) -> Optional[Person]:
        return self._by_name.get(full_name)

    def parents_of(self, pid: str) -> list[str]:
        return sorted(self._parents.get(pid, []))

    def children_of(self, pid: str) -> list[str]:
        return sorted(self._children.get(pid, []))

    def spouse_of(self, pid: str) -> Optional[str]:
        return self._spouse.get(pid)

    def friends_of(self, pid: str) -> list[str]:
        return sorted(self._friends.get(pid, []))

    def siblings_of(self, pid: str) -> list[str]:
        sibs: set[str] = set()
        for parent in self._parents.get(pid, []):
            sibs.update(self._children.get(parent, []))
        sibs.discard(pid)
        return sorted(sibs)


# --- question trees -------------------------------------------------------

ATTRIBUTES = ("hobby", "occupation", "date_of_birth")


@dataclass(frozen=True)
class Anchor:
    """Leaf of a question tree: a person picked by name or by attribute value."""

    by_name: Optional[str] = None
    by_attribute: Optional[tuple[str, str]] = None  # (attr, value)


@dataclass(frozen=True)
class Hop:
    relation_word: str
    inner: "QuestionAst"


@dataclass(frozen=True)
class AttrLookup:
    attr: str  # one of ATTRIBUTES
    inner: "QuestionAst"


QuestionAst = Union[Anchor, Hop, AttrLookup]


# Atomic relation words resolve as a base relation plus an optional gender
# filter on the target. "sibling" is internal (macro building block), not a
# surface question word.
ATOMIC_RELATIONS: dict[str, tuple[str, Optional[Gender]]] = {
    "parent": ("parent", None),
    "mother": ("parent", Gender.FEMALE),
    "father": ("parent", Gender.MALE),
    "child": ("child", None),
    "son": ("child", Gender.MALE),
    "daughter": ("child", Gender.FEMALE),
    "sibling": ("sibling", None),
    "brother": ("sibling", Gender.MALE),
    "sister": ("sibling", Gender.FEMALE),
    "husband": ("spouse", Gender.MALE),
    "wife": ("spouse", Gender.FEMALE),
    "friend": ("friend", None),
}

# Macro relation words expand to a fixed chain of atomic words, applied
# inner-first: aunt of X = sister of (parent of X).
MACRO_RELATIONS: dict[str, tuple[str, ...]] = {
    "aunt": ("parent", "sister"),
    "uncle": ("parent", "brother"),
    "nephew": ("sibling", "son"),
    "niece": ("sibling", "daughter"),
    "grandmother": ("parent", "mother"),
    "grandfather": ("parent", "father"),
    "great-granddaughter": ("child", "child", "daughter"),
    "great-grandson": ("child", "child", "son"),
    "daughter-in-law": ("child", "wife"),
    "son-in-law": ("child", "husband"),
}

SURFACE_RELATION_WORDS = tuple(
    w for w in ATOMIC_RELATIONS if w != "sibling"
) + tuple(MACRO_RELATIONS)


def expand_relation_word(word: str) -> tuple[str, ...]:
    """Atomic steps for a relation word, inner-first. Total and deterministic."""
    if word in MACRO_RELATIONS:
        return MACRO_RELATIONS[word]
    if word in ATOMIC_RELATIONS and word != "sibling":
        return (word,)
    raise KeyError(f"unknown relation word: {word!r}")


def validate_ast(ast: QuestionAst) -> None:
    """Raise ValueError unless the tree is one optional root AttrLookup over
    a hop chain ending in exactly one anchor."""
    node = ast
    if isinstance(node, AttrLookup):
        if node.attr not in ATTRIBUTES:
            raise ValueError(f"unknown attribute: {node.attr!r}")
        node = node.inner
    while isinstance(node, Hop):
        if node.relation_word not in SURFACE_RELATION_WORDS:
            raise ValueError(f"unknown relation word: {node.relation_word!r}")
        node = node.inner
    if isinstance(node, AttrLookup):
        raise ValueError("AttrLookup may only appear at the root")
    if not isinstance(node, Anchor):
        raise ValueError("question must bottom out in an Anchor")
    if (node.by_name is None) == (node.by_attribute is None):
        raise ValueError("anchor needs exactly one of by_name / by_attribute")
    if node.by_attribute is not None and node.by_attribute[0] not in ("hobby", "occupation"):
        raise ValueError("attribute anchors support hobby/occupation only")


def difficulty_of(ast: QuestionAst) -> int:
    """Number of distinct person-documents a solver must consult.

    Each atomic hop after macro expansion counts 1; an attribute-value
    anchor counts 1 (locating the person takes a document scan); a named
    anchor and a root attribute lookup count 0.
    """
    validate_ast(ast)
    total = 0
    node = ast
    if isinstance(node, AttrLookup):
        node = node.inner
    while isinstance(node, Hop):
        total += len(expand_relation_word(node.relation_word))
        node = node.inner
    assert isinstance(node, Anchor)
    if node.by_attribute is not None:
        total += 1
    return total


# --- samples ---------------------------------------------------------------


@dataclass(frozen=True)
class AnswerSet:
    """Order-free set of canonical (trimmed) answer strings."""

    values: frozenset[str]

    @classmethod
    def of(cls, *values: str) -> "AnswerSet":
        return cls(frozenset(v.strip() for v in values if v.strip()))

    @classmethod
    def from_iterable(cls, values) -> "AnswerSet":
        return cls.of(*values)

    def sorted(self) -> list[str]:
        return sorted(self.values)

    def __bool__(self) -> bool:
        return bool(self.values)

    def __len__(self) -> int:
        return len(self.values)


DATASETS = ("phantom", "gsm_inf", "rg_family", "rg_knights", "external")
SPLITS = ("train", "test")

# Datasets whose gold is a single string on the wire; phantom golds are lists.
SINGLE_GOLD_DATASETS = ("gsm_inf", "rg_family", "rg_knights", "external")


@dataclass(frozen=True)
class Sample:
    id: str
    dataset: str
    split: str
    difficulty: int
    prompt: str
    question_text: str
    gold: AnswerSet
    intermediate_golds: Optional[tuple[str, ...]] = None
    universe_id: Optional[str] = None
    seed_provenance: Optional[str] = None

    def __post_init__(self) -> None:
        if self.dataset not in DATASETS:
            raise ValueError(f"unknown dataset: {self.dataset!r}")
        if self.split not in SPLITS:
            raise ValueError(f"unknown split: {self.split!r}")
        if self.difficulty < 1:
            raise ValueError("difficulty must be >= 1")
        if not self.gold and self.dataset != "phantom":
            raise ValueError("empty gold only allowed for phantom samples")


# --- universe validation ----------------------------------------------------


@dataclass(frozen=True)
class Violation:
    code: str
    detail: str


def validate_universe(u: Universe) -> list[Violation]:
    """Every invariant breach in the universe; empty list means valid."""
    out: list[Violation] = []
    ids = {p.id for p in u.persons}

    names = [p.full_name for p in u.persons]
    for name in sorted({n for n in names if names.count(n) > 1}):
        out.append(Violation("duplicate_name", name))
    for attr in ("hobby", "occupation"):
        vals = [getattr(p, attr) for p in u.persons]
        for v in sorted({x for x in vals if vals.count(x) > 1}):
            out.append(Violation(f"duplicate_{attr}", v))

    pair_seen: dict[tuple[str, str, str], int] = {}
    for e in u.relations:
        if e.src not in ids or e.dst not in ids:
            out.append(Violation("dangling_edge", f"{e.kind.value}:{e.src}->{e.dst}"))
            continue
        pair_seen[(e.kind.value, e.src, e.dst)] = pair_seen.get((e.kind.value, e.src, e.dst), 0) + 1

    # symmetric kinds need their mirror edge present
    for kind in (RelationKind.SPOUSE_OF, RelationKind.FRIEND_OF):
        for (k, a, b), _ in sorted(pair_seen.items()):
            if k == kind.value and (k, b, a) not in pair_seen:
                out.append(Violation("asymmetric_edge", f"{k}:{a}->{b}"))

    spouse_degree: dict[str, int] = {}
    for (k, a, _b), _ in sorted(pair_seen.items()):
        if k == RelationKind.SPOUSE_OF.value:
            spouse_degree[a] = spouse_degree.get(a, 0) + 1
    for pid, deg in sorted(spouse_degree.items()):
        if deg > 1:
            out.append(Violation("spouse_degree", f"{pid} has {deg} spouses"))

    # parent_of must be a DAG: nobody is their own ancestor
    children: dict[str, list[str]] = {}
    for e in u.relations:
        if e.kind is RelationKind.PARENT_OF and e.src in ids and e.dst in ids:
            children.setdefault(e.src, []).append(e.dst)
    WHITE, GREY, BLACK = 0, 1, 2
    color = {pid: WHITE for pid in ids}

    def visit(pid: str, stack: list[str]) -> None:
        color[pid] = GREY
        stack.append(pid)
        for c in children.get(pid, []):
            if color[c] == GREY:
                out.append(Violation("ancestry_cycle", "->".join(stack + [c])))
            elif color[c] == WHITE:
                visit(c, stack)
        stack.pop()
        color[pid] = BLACK

    for pid in sorted(ids):
        if color[pid] == WHITE:
            visit(pid, [])

    return out
