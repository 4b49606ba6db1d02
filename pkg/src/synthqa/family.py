"""Family-tree narratives with single-word relation-inference queries.

Trees grow from a root couple by adding children and marrying children off
to newly introduced spouses, so descent is acyclic by construction. The
query asks how one person relates to another; gold answers come from
pairwise inference over the closed kinship vocabulary, and only pairs with
a unique supported relation are ever asked.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .model import Gender
from .seeds import rng_for

RELATION_WORDS = (
    "mother", "father", "son", "daughter", "husband", "wife",
    "brother", "sister", "grandmother", "grandfather", "grandson",
    "granddaughter", "aunt", "uncle", "niece", "nephew",
)

FEMALE_NAMES = [
    "Emily", "Aria", "Olivia", "Willow", "Lily", "Luna", "Lisa", "Eleanor",
    "Amelia", "Susan", "Patricia", "Barbara", "Zoe", "Lucy", "Sarah",
    "Grace", "Nova", "Sophie", "Sophia", "Ava", "Sky", "Karen", "Hannah",
    "Margaret", "Emma", "River", "Nora", "Ivy", "Ruby", "Clara",
]

MALE_NAMES = [
    "Harry", "Daniel", "James", "George", "John", "Liam", "Logan", "Ryder",
    "Noah", "Alexander", "Joseph", "William", "Charles", "Mason",
    "Christopher", "Kai", "Atlas", "Michael", "Aiden", "Matthew", "Phoenix",
    "Lucas", "Sebastian", "Thomas", "David", "Zion", "Andrew", "Henry",
    "Oliver", "Ethan",
]


@dataclass(frozen=True)
class TreePerson:
    id: int
    name: str
    gender: Gender


@dataclass(frozen=True)
class FamilyTree:
    persons: tuple[TreePerson, ...]
    couples: tuple[tuple[int, int], ...]  # (male, female) ids in creation order
    children: dict[int, tuple[int, ...]]  # couple index -> child ids

    def parents_of(self, pid: int) -> Optional[tuple[int, int]]:
        for ci, kids in self.children.items():
            if pid in kids:
                return self.couples[ci]
        return None

    def spouse_of(self, pid: int) -> Optional[int]:
        for a, b in self.couples:
            if a == pid:
                return b
            if b == pid:
                return a
        return None

    def children_of(self, pid: int) -> list[int]:
        out: list[int] = []
        for ci, (a, b) in enumerate(self.couples):
            if pid in (a, b):
                out.extend(self.children.get(ci, ()))
        return out

    def siblings_of(self, pid: int) -> list[int]:
        parents = self.parents_of(pid)
        if parents is None:
            return []
        ci = self.couples.index(parents)
        return [k for k in self.children.get(ci, ()) if k != pid]


def generate_tree(size: int, seed: int) -> FamilyTree:
    """Random tree with exactly `size` persons (size >= 3)."""
    if size < 3:
        raise ValueError("size must be >= 3")
    rng = rng_for(seed, "family-tree")
    males = rng.sample(MALE_NAMES, min(len(MALE_NAMES), size))
    females = rng.sample(FEMALE_NAMES, min(len(FEMALE_NAMES), size))
    persons: list[TreePerson] = []
    couples: list[tuple[int, int]] = []
    children: dict[int, list[int]] = {}
    unmarried: list[int] = []

    def add_person(gender: Gender) -> int:
        pid = len(persons)
        name = (males if gender is Gender.MALE else females).pop()
        persons.append(TreePerson(pid, name, gender))
        return pid

    def marry(a: int, b: int) -> int:
        male, female = (a, b) if persons[a].gender is Gender.MALE else (b, a)
        couples.append((male, female))
        children[len(couples) - 1] = []
        return len(couples) - 1

    h = add_person(Gender.MALE)
    w = add_person(Gender.FEMALE)
    marry(h, w)

    while len(persons) < size:
        if unmarried and rng.random() < 0.4:
            single = unmarried.pop(rng.randrange(len(unmarried)))
            opposite = Gender.FEMALE if persons[single].gender is Gender.MALE else Gender.MALE
            spouse = add_person(opposite)
            marry(single, spouse)
        else:
            ci = rng.randrange(len(couples))
            kid = add_person(rng.choice((Gender.MALE, Gender.FEMALE)))
            children[ci].append(kid)
            unmarried.append(kid)

    return FamilyTree(
        persons=tuple(persons),
        couples=tuple(couples),
        children={ci: tuple(kids) for ci, kids in children.items()},
    )


def infer_relation(t: FamilyTree, a: int, b: int) -> Optional[str]:
    """The unique single-word relation of `a` with respect to `b`, or None
    when no supported relation holds (or more than one would)."""
    if a == b:
        raise ValueError("a and b must differ")
    matches: list[str] = []
    ga = t.persons[a].gender

    def gendered(female: str, male: str) -> str:
        return female if ga is Gender.FEMALE else male

    parents_b = t.parents_of(b)
    if parents_b is not None and a in parents_b:
        matches.append(gendered("mother", "father"))
    if b in (t.parents_of(a) or ()):
        matches.append(gendered("daughter", "son"))
    if t.spouse_of(a) == b:
        matches.append(gendered("wife", "husband"))
    if a in t.siblings_of(b):
        matches.append(gendered("sister", "brother"))

    grandparents_b = set()
    if parents_b is not None:
        for p in parents_b:
            gp = t.parents_of(p)
            if gp is not None:
                grandparents_b.update(gp)
    if a in grandparents_b:
        matches.append(gendered("grandmother", "grandfather"))

    grandchildren_b = {gk for c in t.children_of(b) for gk in t.children_of(c)}
    if a in grandchildren_b:
        matches.append(gendered("granddaughter", "grandson"))

    parent_siblings_b = set()
    if parents_b is not None:
        for p in parents_b:
            parent_siblings_b.update(t.siblings_of(p))
    if a in parent_siblings_b:
        matches.append(gendered("aunt", "uncle"))

    sibling_children_b = {k for s in t.siblings_of(b) for k in t.children_of(s)}
    if a in sibling_children_b:
        matches.append(gendered("niece", "nephew"))

    return matches[0] if len(matches) == 1 else None


def render_narrative(t: FamilyTree) -> str:
    """One sentence pair per couple in creation order, in the style
    'X is married to Y. They have children called A, B and C.'"""
    parts: list[str] = []
    for ci, (male, female) in enumerate(t.couples):
        parts.append(f"{t.persons[male].name} is married to {t.persons[female].name}.")
        kids = [t.persons[k].name for k in t.children.get(ci, ())]
        if len(kids) == 1:
            parts.append(f"They have a child called {kids[0]}.")
        elif len(kids) == 2:
            parts.append(f"They have children called {kids[0]} and {kids[1]}.")
        elif kids:
            parts.append(f"They have children called {', '.join(kids[:-1])} and {kids[-1]}.")
    return " ".join(parts)


_QUERY_FORMS = (
    "What is {a} to {b}? Respond only with the word that describes their relationship.",
    "How is {a} related to {b}? Provide the relationship in one word.",
    "What relation is {a} to {b}? Answer with a single word.",
)


class NoQueryablePair(RuntimeError):
    pass


def queryable_pairs(t: FamilyTree) -> list[tuple[int, int, str]]:
    out: list[tuple[int, int, str]] = []
    for a in range(len(t.persons)):
        for b in range(len(t.persons)):
            if a == b:
                continue
            rel = infer_relation(t, a, b)
            if rel is not None:
                out.append((a, b, rel))
    return out


def pose_relation_query(t: FamilyTree, seed: int) -> tuple[str, str]:
    """(question_text, gold_word) for a random queryable pair of the tree."""
    pairs = queryable_pairs(t)
    if not pairs:
        raise NoQueryablePair("tree has no pair with a unique supported relation")
    rng = rng_for(seed, "family-query")
    a, b, rel = pairs[rng.randrange(len(pairs))]
    form = _QUERY_FORMS[rng.randrange(len(_QUERY_FORMS))]
    question = render_narrative(t) + "\n" + form.format(a=t.persons[a].name, b=t.persons[b].name)
    return question, rel


def generate_queries(count: int, seed: int, min_size: int = 3, max_size: int = 20) -> list[tuple[int, str, str]]:
    """`count` (tree_size, question, gold) triples with tree sizes uniform
    on [min_size, max_size]."""
    out: list[tuple[int, str, str]] = []
    rng = rng_for(seed, "family-sizes")
    for k in range(count):
        size = rng.randint(min_size, max_size)
        tree = generate_tree(size, seed=rng_for(seed, "family", k).randrange(2**63))
        question, gold = pose_relation_query(tree, seed=rng_for(seed, "family-q", k).randrange(2**63))
        out.append((size, question, gold))
    return out
