"""Truth-teller/liar puzzles with brute-force-verified unique solutions.

Each inhabitant speaks one statement built from role atoms and at most one
binary connective. An assignment is consistent when every speaker's
truthfulness matches the truth value of what they said; the generator
rejection-samples statement sets until exactly one assignment survives.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .seeds import rng_for

THEMES = {
    "knights_knaves": ("knight", "knave"),
    "heroes_villains": ("hero", "villain"),
    "angels_devils": ("angel", "devil"),
    "saints_sinners": ("saint", "sinner"),
    "sages_fools": ("sage", "fool"),
    "altruists_egoists": ("altruist", "egoist"),
}

PERSON_NAMES = [
    "Aria", "Ava", "Amelia", "Grace", "Charlotte", "Jack", "Liam", "Zoey",
    "Logan", "James", "Avery", "Penelope", "Lily", "Riley", "Mia", "Luke",
    "Henry", "Sophia", "Alexander", "Elizabeth", "Benjamin", "Scarlett",
    "Aurora", "Daniel", "Emma", "Oliver", "Hazel", "Owen", "Nora", "Ethan",
]


class GenerationExhausted(RuntimeError):
    pass


@dataclass(frozen=True)
class Atom:
    person: int
    claims_truthteller: bool


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


Formula = Union[Atom, And, Or, Implies, Iff]


def eval_formula(f: Formula, assignment: tuple[bool, ...]) -> bool:
    if isinstance(f, Atom):
        return assignment[f.person] == f.claims_truthteller
    if isinstance(f, And):
        return eval_formula(f.left, assignment) and eval_formula(f.right, assignment)
    if isinstance(f, Or):
        return eval_formula(f.left, assignment) or eval_formula(f.right, assignment)
    if isinstance(f, Implies):
        return (not eval_formula(f.left, assignment)) or eval_formula(f.right, assignment)
    return eval_formula(f.left, assignment) == eval_formula(f.right, assignment)


def solve_kk(statements: list[tuple[int, Formula]], n_people: int) -> list[tuple[bool, ...]]:
    """All assignments under which every speaker is truthful exactly when
    their statement is true. Exhaustive over 2^n; n is capped at 16."""
    if n_people > 16:
        raise ValueError("enumeration bound is 16 people")
    solutions: list[tuple[bool, ...]] = []
    for mask in range(1 << n_people):
        assignment = tuple(bool(mask >> i & 1) for i in range(n_people))
        if all(assignment[s] == eval_formula(f, assignment) for s, f in statements):
            solutions.append(assignment)
    return solutions


@dataclass(frozen=True)
class KkInstance:
    n_people: int
    theme: str
    names: tuple[str, ...]
    statements: tuple[tuple[int, Formula], ...]
    gold: tuple[bool, ...]  # person index -> is truth-teller


def _random_formula(rng, n_people: int, speaker: int) -> Formula:
    def atom() -> Atom:
        return Atom(person=rng.randrange(n_people), claims_truthteller=rng.random() < 0.5)

    shape = rng.choice(("atom", "and", "or", "implies", "iff"))
    if shape == "atom":
        return atom()
    ctor = {"and": And, "or": Or, "implies": Implies, "iff": Iff}[shape]
    return ctor(atom(), atom())


def generate_kk_instance(n_people: int, theme: str, seed: int) -> KkInstance:
    """Rejection-sample one-statement-per-person puzzles until the solution
    is unique; deterministic in the seed."""
    if not 2 <= n_people <= 6:
        raise ValueError("n_people must be in [2, 6]")
    if theme not in THEMES:
        raise ValueError(f"unknown theme: {theme!r}")
    rng = rng_for(seed, "kk-instance")
    names = rng.sample(PERSON_NAMES, n_people)
    for _attempt in range(10_000):
        statements = tuple(
            (speaker, _random_formula(rng, n_people, speaker)) for speaker in range(n_people)
        )
        solutions = solve_kk(list(statements), n_people)
        if len(solutions) == 1:
            return KkInstance(
                n_people=n_people,
                theme=theme,
                names=tuple(names),
                statements=statements,
                gold=solutions[0],
            )
    raise GenerationExhausted(f"no unique-solution puzzle found for n={n_people}")


# --- rendering ---------------------------------------------------------------

_REPORT_FORMS = (
    '{name} was heard saying, "{stmt}".',
    '{name} stated, "{stmt}".',
    '{name} asserted: "{stmt}".',
    'In a statement by {name}: "{stmt}".',
    '"{stmt}," {name} claimed.',
    'As {name} put it, "{stmt}".',
    '{name} noted, "{stmt}".',
)


def _article(noun: str) -> str:
    return "an" if noun[0] in "aeiou" else "a"


def _plural(noun: str) -> str:
    return "heroes" if noun == "hero" else noun + "s"


def _atom_text(a: Atom, names: tuple[str, ...], roles: tuple[str, str]) -> str:
    role = roles[0] if a.claims_truthteller else roles[1]
    return f"{names[a.person]} is {_article(role)} {role}"


def _formula_text(f: Formula, names: tuple[str, ...], roles: tuple[str, str]) -> str:
    if isinstance(f, Atom):
        return _atom_text(f, names, roles)
    left = _formula_text(f.left, names, roles)
    right = _formula_text(f.right, names, roles)
    if isinstance(f, And):
        return f"{left} and {right}"
    if isinstance(f, Or):
        return f"{left} or {right}"
    if isinstance(f, Implies):
        return f"if {left} then {right}"
    return f"{left} if and only if {right}"


def _name_list(names: tuple[str, ...]) -> str:
    if len(names) == 2:
        return f"{names[0]}, and {names[1]}"
    return ", ".join(names[:-1]) + f", and {names[-1]}"


def gold_text(inst: KkInstance) -> str:
    """Canonical answer sentence: 'X is a hero, and Y is a villain.'"""
    t, f = THEMES[inst.theme]
    parts = []
    for name, truthful in zip(inst.names, inst.gold):
        role = t if truthful else f
        parts.append(f"{name} is {_article(role)} {role}")
    if len(parts) == 2:
        return f"{parts[0]}, and {parts[1]}."
    return ", ".join(parts[:-1]) + f", and {parts[-1]}."


def render_kk(inst: KkInstance, seed: int = 0) -> tuple[str, str]:
    """Themed question text plus the canonical gold sentence."""
    t, f = THEMES[inst.theme]
    rng = rng_for(seed, "kk-render", inst.theme, *inst.names)
    lines = [
        f"A very special island is inhabited only by {_plural(t)} and {_plural(f)}. "
        f"{_plural(t).capitalize()} always tell the truth, and {_plural(f)} always lie. "
        f"You meet {inst.n_people} inhabitants: {_name_list(inst.names)}."
    ]
    for speaker, formula in inst.statements:
        form = _REPORT_FORMS[rng.randrange(len(_REPORT_FORMS))]
        lines.append(form.format(name=inst.names[speaker], stmt=_formula_text(formula, inst.names, (t, f))))
    fmt = ", ".join(f"{n} is a {t}/{f}" for n in inst.names[:-1])
    fmt += f", and {inst.names[-1]} is a {t}/{f}"
    lines.append(f"So who is {_article(t)} {t} and who is {_article(f)} {f}? (Format your answer like: \"{fmt}\")")
    return " ".join(lines), gold_text(inst)


def generate_balanced(count: int, seed: int) -> list[tuple[KkInstance, str, str]]:
    """`count` instances spread evenly over 2..6 people with rotating themes.
    Returns (instance, question_text, gold_text) triples."""
    theme_names = sorted(THEMES)
    out: list[tuple[KkInstance, str, str]] = []
    sizes = [2, 3, 4, 5, 6]
    for k in range(count):
        n = sizes[k % len(sizes)]
        theme = theme_names[(k // len(sizes)) % len(theme_names)]
        inst = generate_kk_instance(n, theme, seed=rng_for(seed, "kk", k).randrange(2**63))
        question, gold = render_kk(inst, seed=rng_for(seed, "kk-text", k).randrange(2**63))
        out.append((inst, question, gold))
    return out
