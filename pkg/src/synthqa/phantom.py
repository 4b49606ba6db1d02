"""Fictional-universe generation with multi-hop questions and a resolution
oracle.

A universe is a forest of 2-3 generation families plus a symmetric
friendship graph. Every person gets one Wikipedia-like article whose
templated sentences carry all facts any emitted question needs. Questions
come from a small grammar ("Who is the <relation> of ...?" / "What is the
<attribute> of ...?") sampled per difficulty level so the histogram covers
every level up to the cap, and every gold answer is computed by resolving
the question tree against the relation graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import vocab
from .model import (
    Anchor,
    AnswerSet,
    AttrLookup,
    ATOMIC_RELATIONS,
    Gender,
    Hop,
    Person,
    QuestionAst,
    RelationEdge,
    RelationKind,
    SURFACE_RELATION_WORDS,
    Universe,
    difficulty_of,
    expand_relation_word,
    validate_ast,
    validate_universe,
)
from .seeds import derive_seed, rng_for


class ConfigError(ValueError):
    pass


class UnknownAnchor(KeyError):
    pass


@dataclass(frozen=True)
class PhantomConfig:
    n_universes: int = 34
    people_per_universe: int = 25
    cfg_recursion_depth: int = 20
    max_difficulty: int = 9
    target_questions_per_universe: int = 330
    allow_empty_answers: float = 0.1
    seed: int = 0

    def __post_init__(self) -> None:
        if self.people_per_universe < 2:
            raise ConfigError("people_per_universe must be >= 2")
        if self.cfg_recursion_depth < 1:
            raise ConfigError("cfg_recursion_depth must be >= 1")
        if self.max_difficulty < 1:
            raise ConfigError("max_difficulty must be >= 1")
        if not 0.0 <= self.allow_empty_answers <= 1.0:
            raise ConfigError("allow_empty_answers must lie in [0, 1]")
        if self.n_universes < 1:
            raise ConfigError("n_universes must be >= 1")


# --- universe generation ------------------------------------------------------


def generate_universe(cfg: PhantomConfig, universe_index: int) -> Universe:
    """Deterministic universe for (cfg.seed, universe_index)."""
    rng = rng_for(cfg.seed, "universe", universe_index)
    n = cfg.people_per_universe
    if n > len(vocab.HOBBIES) or n > len(vocab.OCCUPATIONS):
        raise ConfigError("people_per_universe exceeds the attribute vocabularies")

    hobbies = rng.sample(vocab.HOBBIES, n)
    occupations = rng.sample(vocab.OCCUPATIONS, n)
    used_names: set[str] = set()
    persons: list[Person] = []
    genders: list[Gender] = []
    generations: list[int] = []

    def sample_name(gender: Gender) -> str:
        pool = vocab.FEMALE_GIVEN_NAMES if gender is Gender.FEMALE else vocab.MALE_GIVEN_NAMES
        while True:
            name = f"{rng.choice(pool)} {rng.choice(vocab.SURNAMES)}"
            if name not in used_names:
                used_names.add(name)
                return name

    def dob_for(generation: int) -> str:
        base = (200, 460, 720)[min(generation, 2)]
        year = base + rng.randint(0, 199)
        return f"{year:04d}-{rng.randint(1, 12):02d}-{rng.randint(1, 28):02d}"

    def add_person(gender: Gender, generation: int) -> int:
        pid = len(persons)
        persons.append(
            Person(
                id=f"p{pid:03d}",
                full_name=sample_name(gender),
                gender=gender,
                date_of_birth=dob_for(generation),
                hobby=hobbies[pid],
                occupation=occupations[pid],
            )
        )
        genders.append(gender)
        generations.append(generation)
        return pid

    parent_pairs: list[tuple[int, int]] = []  # (parent, child) indexes
    spouse_pairs: list[tuple[int, int]] = []

    remaining = n
    while remaining > 0:
        if remaining == 1:
            add_person(rng.choice((Gender.FEMALE, Gender.MALE)), 0)
            remaining -= 1
            break
        mother = add_person(Gender.FEMALE, 0)
        father = add_person(Gender.MALE, 0)
        spouse_pairs.append((mother, father))
        remaining -= 2

        kids = []
        for _ in range(rng.randint(0, 3)):
            if remaining == 0:
                break
            kid = add_person(rng.choice((Gender.FEMALE, Gender.MALE)), 1)
            parent_pairs.append((mother, kid))
            parent_pairs.append((father, kid))
            kids.append(kid)
            remaining -= 1

        for kid in kids:
            if remaining == 0:
                break
            if rng.random() < 0.6:
                opposite = Gender.MALE if genders[kid] is Gender.FEMALE else Gender.FEMALE
                spouse = add_person(opposite, 1)
                spouse_pairs.append((kid, spouse))
                remaining -= 1
                for _ in range(rng.randint(0, 3)):
                    if remaining == 0:
                        break
                    gk = add_person(rng.choice((Gender.FEMALE, Gender.MALE)), 2)
                    parent_pairs.append((kid, gk))
                    parent_pairs.append((spouse, gk))
                    remaining -= 1

    # friendships: Erdos-Renyi with expected degree ~4, never between spouses
    married = set(spouse_pairs) | {(b, a) for a, b in spouse_pairs}
    p_edge = min(1.0, 4.0 / max(1, n - 1))
    friend_pairs: list[tuple[int, int]] = []
    for i in range(n):
        for j in range(i + 1, n):
            if (i, j) in married:
                continue
            if rng.random() < p_edge:
                friend_pairs.append((i, j))

    relations: list[RelationEdge] = []
    pid = lambda i: persons[i].id  # noqa: E731
    for parent, child in parent_pairs:
        relations.append(RelationEdge(RelationKind.PARENT_OF, pid(parent), pid(child)))
    for a, b in spouse_pairs:
        relations.append(RelationEdge(RelationKind.SPOUSE_OF, pid(a), pid(b)))
        relations.append(RelationEdge(RelationKind.SPOUSE_OF, pid(b), pid(a)))
    for a, b in friend_pairs:
        relations.append(RelationEdge(RelationKind.FRIEND_OF, pid(a), pid(b)))
        relations.append(RelationEdge(RelationKind.FRIEND_OF, pid(b), pid(a)))

    return Universe(
        id=f"u{universe_index:03d}",
        seed=derive_seed(cfg.seed, "universe", universe_index),
        persons=tuple(persons),
        relations=tuple(relations),
    )


# --- articles -----------------------------------------------------------------


@dataclass(frozen=True)
class Article:
    title: str
    body: str


def _list_sentence(singular: str, plural: str, owner: str, names: list[str]) -> Optional[str]:
    if not names:
        return None
    if len(names) == 1:
        return f"The {singular} of {owner} is {names[0]}."
    return f"The {plural} of {owner} are {', '.join(names)}."


def render_articles(u: Universe) -> list[Article]:
    """One article per person; relation lists in canonical name order."""
    articles = []
    for p in u.persons:
        name = p.full_name
        names_of = lambda pids: sorted(u.person(x).full_name for x in pids)  # noqa: E731
        sentences: list[Optional[str]] = [
            f"The gender of {name} is {p.gender.value}.",
            f"The date of birth of {name} is {p.date_of_birth}.",
            f"The occupation of {name} is {p.occupation}.",
            f"The hobby of {name} is {p.hobby}.",
        ]
        mothers = [x for x in u.parents_of(p.id) if u.person(x).gender is Gender.FEMALE]
        fathers = [x for x in u.parents_of(p.id) if u.person(x).gender is Gender.MALE]
        sentences.append(_list_sentence("mother", "mothers", name, names_of(mothers)))
        sentences.append(_list_sentence("father", "fathers", name, names_of(fathers)))
        spouse = u.spouse_of(p.id)
        if spouse is not None:
            word = "husband" if u.person(spouse).gender is Gender.MALE else "wife"
            sentences.append(f"The {word} of {name} is {u.person(spouse).full_name}.")
        kids = u.children_of(p.id)
        sentences.append(_list_sentence("child", "children", name, names_of(kids)))
        sons = [x for x in kids if u.person(x).gender is Gender.MALE]
        daughters = [x for x in kids if u.person(x).gender is Gender.FEMALE]
        sentences.append(_list_sentence("son", "sons", name, names_of(sons)))
        sentences.append(_list_sentence("daughter", "daughters", name, names_of(daughters)))
        sibs = u.siblings_of(p.id)
        brothers = [x for x in sibs if u.person(x).gender is Gender.MALE]
        sisters = [x for x in sibs if u.person(x).gender is Gender.FEMALE]
        sentences.append(_list_sentence("brother", "brothers", name, names_of(brothers)))
        sentences.append(_list_sentence("sister", "sisters", name, names_of(sisters)))
        sentences.append(_list_sentence("friend", "friends", name, names_of(u.friends_of(p.id))))
        body = "\n".join(s for s in sentences if s is not None)
        articles.append(Article(title=name, body=f"# {name}\n{body}"))
    return articles


def evidence_block(articles: list[Article]) -> str:
    return "\n\n".join(a.body for a in articles)


# --- resolution ----------------------------------------------------------------


def _atomic_step(u: Universe, pid: str, step: str) -> list[str]:
    base, gender = ATOMIC_RELATIONS[step]
    if base == "parent":
        out = u.parents_of(pid)
    elif base == "child":
        out = u.children_of(pid)
    elif base == "sibling":
        out = u.siblings_of(pid)
    elif base == "spouse":
        s = u.spouse_of(pid)
        out = [s] if s is not None else []
    else:
        out = u.friends_of(pid)
    if gender is not None:
        out = [x for x in out if u.person(x).gender is gender]
    return out


def _resolve_persons(ast: QuestionAst, u: Universe) -> set[str]:
    if isinstance(ast, Anchor):
        if ast.by_name is not None:
            p = u.by_name(ast.by_name)
            if p is None:
                raise UnknownAnchor(ast.by_name)
            return {p.id}
        attr, value = ast.by_attribute
        return {p.id for p in u.persons if getattr(p, attr) == value}
    assert isinstance(ast, Hop)
    current = _resolve_persons(ast.inner, u)
    for step in expand_relation_word(ast.relation_word):
        nxt: set[str] = set()
        for pid in current:
            nxt.update(_atomic_step(u, pid, step))
        current = nxt
    return current


def resolve(ast: QuestionAst, u: Universe) -> AnswerSet:
    """Exact answer set for a question tree: full names, or attribute values
    for a root attribute lookup."""
    validate_ast(ast)
    if isinstance(ast, AttrLookup):
        persons = _resolve_persons(ast.inner, u)
        return AnswerSet.of(*(getattr(u.person(p), ast.attr) for p in persons))
    persons = _resolve_persons(ast, u)
    return AnswerSet.of(*(u.person(p).full_name for p in persons))


# --- question expansion ---------------------------------------------------------

_ATTR_SURFACE = {"hobby": "hobby", "occupation": "occupation", "date_of_birth": "date of birth"}


def surface_text(ast: QuestionAst) -> str:
    """Fixed template realization of a question tree."""
    validate_ast(ast)

    def chain_text(node: QuestionAst) -> str:
        if isinstance(node, Anchor):
            if node.by_name is not None:
                return node.by_name
            attr, value = node.by_attribute
            return f"the person whose {_ATTR_SURFACE[attr]} is {value}"
        assert isinstance(node, Hop)
        return f"the {node.relation_word} of {chain_text(node.inner)}"

    if isinstance(ast, AttrLookup):
        return f"What is the {_ATTR_SURFACE[ast.attr]} of {chain_text(ast.inner)}?"
    return f"Who is {chain_text(ast)}?"


@dataclass(frozen=True)
class ExpandedQuestion:
    ast: QuestionAst
    text: str
    answer: AnswerSet
    difficulty: int


def _apply_word(u: Universe, pids: set[str], word: str) -> set[str]:
    current = pids
    for step in expand_relation_word(word):
        nxt: set[str] = set()
        for pid in current:
            nxt.update(_atomic_step(u, pid, step))
        current = nxt
    return current


def _sample_hop_words(
    rng, u: Universe, start: set[str], total_hops: int, max_words: int, keep_alive: bool
) -> Optional[list[str]]:
    """Relation words whose atomic expansions sum to exactly total_hops,
    using at most max_words words (grammar recursion bound).

    With keep_alive, words are tried in random order and the first one that
    leaves the running person-set non-empty wins, so deep chains survive in
    universes where uniform choice almost always dies; without it the pick
    is uniform, which is how empty-answer questions arise.
    """
    words: list[str] = []
    current = set(start)
    remaining = total_hops
    while remaining > 0:
        slots_left = max_words - len(words)
        if slots_left == 0:
            return None
        eligible = [
            w
            for w in SURFACE_RELATION_WORDS
            if len(expand_relation_word(w)) <= remaining
            and (remaining == len(expand_relation_word(w)) or slots_left > 1)
        ]
        if not eligible:
            return None
        picked: Optional[str] = None
        if keep_alive and current:
            for w in rng.sample(eligible, len(eligible)):
                nxt = _apply_word(u, current, w)
                if nxt:
                    picked, current = w, nxt
                    break
        if picked is None:
            picked = eligible[rng.randrange(len(eligible))]
            current = _apply_word(u, current, picked)
        words.append(picked)
        remaining -= len(expand_relation_word(picked))
    return words


def expand_questions(u: Universe, cfg: PhantomConfig) -> list[ExpandedQuestion]:
    """Sample the question grammar per difficulty level.

    Targets an even share of cfg.target_questions_per_universe per level in
    [1, max_difficulty], deduplicates by surface text, and caps the fraction
    of empty-answer questions at cfg.allow_empty_answers.
    """
    rng = rng_for(cfg.seed, "questions", u.id)
    levels = list(range(1, cfg.max_difficulty + 1))
    base, extra = divmod(cfg.target_questions_per_universe, len(levels))
    quota = {d: base + (1 if i < extra else 0) for i, d in enumerate(levels)}
    max_empties = int(cfg.allow_empty_answers * cfg.target_questions_per_universe)

    hobby_values = sorted(p.hobby for p in u.persons)
    occupation_values = sorted(p.occupation for p in u.persons)
    names = sorted(p.full_name for p in u.persons)

    out: list[ExpandedQuestion] = []
    seen_text: set[str] = set()
    n_empty = 0

    def build_ast(difficulty: int) -> Optional[QuestionAst]:
        use_attr_anchor = rng.random() < 0.35 if difficulty > 1 else rng.random() < 0.5
        hops_needed = difficulty - 1 if use_attr_anchor else difficulty
        if hops_needed == 0 and not use_attr_anchor:
            return None
        if use_attr_anchor:
            if rng.random() < 0.5:
                anchor = Anchor(by_attribute=("hobby", hobby_values[rng.randrange(len(hobby_values))]))
            else:
                anchor = Anchor(by_attribute=("occupation", occupation_values[rng.randrange(len(occupation_values))]))
        else:
            anchor = Anchor(by_name=names[rng.randrange(len(names))])
        node: QuestionAst = anchor
        if hops_needed > 0:
            keep_alive = rng.random() >= 0.15
            words = _sample_hop_words(
                rng, u, _resolve_persons(anchor, u), hops_needed,
                cfg.cfg_recursion_depth, keep_alive,
            )
            if words is None:
                return None
            for w in words:
                node = Hop(w, node)
        # 30% attribute questions; a bare named anchor is never a question
        if rng.random() < 0.3 and not (isinstance(node, Anchor) and node.by_name is not None):
            attr = ("hobby", "occupation", "date_of_birth")[rng.randrange(3)]
            return AttrLookup(attr, node)
        if isinstance(node, Anchor):
            # "Who is the person whose hobby is X?" is fine; a bare name is not
            if node.by_name is not None:
                return None
        return node

    def fill(d: int, want: int, budget: int) -> int:
        nonlocal n_empty
        accepted = 0
        attempts = 0
        while accepted < want and attempts < budget:
            attempts += 1
            ast = build_ast(d)
            if ast is None:
                continue
            if difficulty_of(ast) != d:
                continue
            text = surface_text(ast)
            if text in seen_text:
                continue
            answer = resolve(ast, u)
            if not answer:
                if n_empty >= max_empties:
                    continue
                n_empty += 1
            seen_text.add(text)
            out.append(ExpandedQuestion(ast=ast, text=text, answer=answer, difficulty=d))
            accepted += 1
        return accepted

    for d in levels:
        fill(d, quota[d], quota[d] * 220)

    # some levels run out of satisfiable chains; make up the shortfall from
    # whatever levels still have headroom, deepest first
    deficit = cfg.target_questions_per_universe - len(out)
    for d in sorted(levels, reverse=True):
        if deficit <= 0:
            break
        deficit -= fill(d, deficit, deficit * 80)

    out.sort(key=lambda q: (q.difficulty, q.text))
    return out


# --- dataset assembly -----------------------------------------------------------


@dataclass(frozen=True)
class UniverseData:
    universe: Universe
    articles: tuple[Article, ...]
    questions: tuple[ExpandedQuestion, ...]


def build_universe_data(cfg: PhantomConfig, universe_index: int) -> UniverseData:
    u = generate_universe(cfg, universe_index)
    violations = validate_universe(u)
    if violations:
        raise RuntimeError(f"generated universe failed validation: {violations[:3]}")
    return UniverseData(
        universe=u,
        articles=tuple(render_articles(u)),
        questions=tuple(expand_questions(u, cfg)),
    )


def build_all(cfg: PhantomConfig) -> list[UniverseData]:
    return [build_universe_data(cfg, i) for i in range(cfg.n_universes)]
