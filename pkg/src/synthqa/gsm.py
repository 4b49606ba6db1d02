"""Grade-school math word problems generated from random computation DAGs.

A problem is a chain-plus-branches DAG of integer quantities combined by
binary add/sub/mul edges. Every node feeds the sink (no distractor facts),
all values stay inside [0, value_bound], and the rendered solution trace
replays the whole computation in define-variable style so it can be
re-executed as an independent check.
"""

from __future__ import annotations

import string
from dataclasses import dataclass, replace
from typing import Optional, Union

from .seeds import rng_for

OPS = ("add", "sub", "mul")
OP_SYMBOL = {"add": "+", "sub": "-", "mul": "*"}


class GenerationExhausted(RuntimeError):
    """Raised when bounded retries cannot satisfy the value constraints."""


class CycleDetected(RuntimeError):
    pass


@dataclass(frozen=True)
class QNode:
    id: int
    entity_label: Optional[tuple[str, str]] = None  # (noun, place)
    value: Optional[int] = None  # set for source nodes


@dataclass(frozen=True)
class OpEdge:
    op: str
    left: int  # node id
    right: Union[int, "Literal"]
    out: int  # node id


@dataclass(frozen=True)
class Literal:
    value: int


@dataclass(frozen=True)
class CompGraph:
    nodes: tuple[QNode, ...]
    edges: tuple[OpEdge, ...]
    sink: int

    @property
    def n_ops(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class GsmProblem:
    text: str
    question: str
    solution_trace: str
    gold: int
    n_ops: int


def eval_graph(g: CompGraph, overrides: Optional[dict[int, int]] = None) -> int:
    """Topologically evaluate the sink. `overrides` substitutes source values
    (used by the distractor-sensitivity checks)."""
    values = eval_all(g, overrides)
    return values[g.sink]


def eval_all(g: CompGraph, overrides: Optional[dict[int, int]] = None) -> dict[int, int]:
    producer = {e.out: e for e in g.edges}
    if len(producer) != len(g.edges):
        raise CycleDetected("a node is produced by more than one edge")
    values: dict[int, int] = {}
    for node in g.nodes:
        if node.id not in producer:
            if node.value is None:
                raise CycleDetected(f"source node {node.id} has no value")
            values[node.id] = node.value
    if overrides:
        values.update(overrides)

    state: dict[int, int] = {}  # 1 = in progress, 2 = done

    def compute(nid: int) -> int:
        if nid in values:
            return values[nid]
        if state.get(nid) == 1:
            raise CycleDetected(f"cycle through node {nid}")
        state[nid] = 1
        edge = producer.get(nid)
        if edge is None:
            raise CycleDetected(f"node {nid} unreachable from any source")
        left = compute(edge.left)
        right = edge.right.value if isinstance(edge.right, Literal) else compute(edge.right)
        if edge.op == "add":
            v = left + right
        elif edge.op == "sub":
            v = left - right
        else:
            v = left * right
        values[nid] = v
        state[nid] = 2
        return v

    for node in g.nodes:
        compute(node.id)
    return values


def generate_graph(n_ops: int, value_bound: int, seed: int) -> CompGraph:
    """Random computation DAG with exactly n_ops edges, all nodes feeding the
    sink, and every evaluated value inside [0, value_bound]."""
    if n_ops < 1:
        raise ValueError("n_ops must be >= 1")
    if value_bound < 1:
        raise ValueError("value_bound must be >= 1")
    rng = rng_for(seed, "gsm-graph")
    for _attempt in range(200):
        g = _try_generate(rng, n_ops, value_bound)
        if g is not None and _all_edges_live(g, rng):
            return g
    raise GenerationExhausted(
        f"no graph with {n_ops} ops fits value_bound={value_bound} after bounded retries"
    )


_LIVENESS_MOD = (1 << 61) - 1


def _eval_mod(g: CompGraph, assign: dict[int, int], bypass: Optional[OpEdge] = None) -> int:
    """Sink value modulo a large prime under a source assignment; `bypass`
    replaces that edge's output with its left input."""
    values = dict(assign)
    for e in g.edges:
        left = values[e.left]
        if e is bypass:
            values[e.out] = left
            continue
        right = e.right.value if isinstance(e.right, Literal) else values[e.right]
        if e.op == "add":
            v = left + right
        elif e.op == "sub":
            v = left - right
        else:
            v = left * right
        values[e.out] = v % _LIVENESS_MOD
    return values[g.sink]


def _all_edges_live(g: CompGraph, rng) -> bool:
    """Reject graphs where some edge never influences the sink (e.g. a later
    subtraction cancels it algebraically). Sink values are polynomials in the
    sources, so a few random modular evaluations separate live from dead."""
    sources = [n.id for n in g.nodes if n.value is not None]
    for e in g.edges:
        live = False
        for _ in range(4):
            assign = {s: rng.randrange(_LIVENESS_MOD) for s in sources}
            if _eval_mod(g, assign) != _eval_mod(g, assign, bypass=e):
                live = True
                break
        if not live:
            return False
    return True


def _try_generate(rng, n_ops: int, value_bound: int) -> Optional[CompGraph]:
    next_id = 0
    source_max = min(10, value_bound)

    def fresh_source() -> QNode:
        nonlocal next_id
        node = QNode(id=next_id, value=rng.randint(0, source_max))
        next_id += 1
        return node

    nodes: list[QNode] = []
    values: dict[int, int] = {}

    first = fresh_source()
    nodes.append(first)
    values[first.id] = first.value
    frontier: list[int] = [first.id]
    consumed: list[int] = []
    edges: list[OpEdge] = []

    for t in range(n_ops):
        remaining_after = n_ops - t - 1
        left = frontier.pop(rng.randrange(len(frontier)))
        consumed.append(left)

        # choose the right operand
        right: Union[int, Literal]
        must_merge = len(frontier) > remaining_after
        if must_merge:
            right = frontier.pop(rng.randrange(len(frontier)))
            consumed.append(right)
        else:
            reusable = [n for n in consumed if n != left]
            roll = rng.random()
            if frontier and roll < 0.20:
                right = frontier.pop(rng.randrange(len(frontier)))
                consumed.append(right)
            elif reusable and roll < 0.35:
                right = reusable[rng.randrange(len(reusable))]
            elif roll < 0.70 or value_bound < 2:
                src = fresh_source()
                nodes.append(src)
                values[src.id] = src.value
                right = src.id
            else:
                right = Literal(rng.randint(2, min(9, value_bound)))

        # pick an op that keeps the result in bounds, trying a few times
        out_value: Optional[int] = None
        op_choice: Optional[str] = None
        lv = values[left]
        rv = right.value if isinstance(right, Literal) else values[right]
        ops = list(OPS)
        rng.shuffle(ops)
        for op in ops:
            if op == "sub" and lv < rv:
                continue
            v = lv + rv if op == "add" else lv - rv if op == "sub" else lv * rv
            if 0 <= v <= value_bound:
                op_choice, out_value = op, v
                break
        if op_choice is None:
            return None  # restart the whole graph

        out = QNode(id=next_id)
        next_id += 1
        nodes.append(out)
        values[out.id] = out_value
        edges.append(OpEdge(op=op_choice, left=left, right=right, out=out.id))
        frontier.append(out.id)

        # occasionally stage an extra source for a later merge
        if len(frontier) <= remaining_after and rng.random() < 0.25:
            src = fresh_source()
            nodes.append(src)
            values[src.id] = src.value
            frontier.append(src.id)

    if len(frontier) != 1:
        return None
    return CompGraph(nodes=tuple(nodes), edges=tuple(edges), sink=frontier[0])


# --- rendering ---------------------------------------------------------------

THEMES = {
    "wildlife": {
        "nouns": [
            "adult wolf", "juvenile fox", "adult deer", "baby owl",
            "adult bear", "young raccoon", "adult beaver", "grey heron",
            "river otter", "red squirrel", "mountain hare", "wild boar",
        ],
        "places": [
            "Maple Creek", "Cedar Hollow", "Pine Ridge", "Willow Marsh",
            "Alder Valley", "Birchwood Glen", "Juniper Flats", "Larch Basin",
        ],
    },
    "education": {
        "nouns": [
            "elementary school", "private middle school", "public highschool",
            "culinary school", "regional college", "music academy",
            "trade institute", "language school", "art conservatory",
            "nursing school", "teacher seminary", "night school",
        ],
        "places": [
            "Riverton City", "Clearwater Bay", "Oakdale City", "Brookfield",
            "Eastport", "Graniteville", "Harborview", "Kingsmill",
        ],
    },
    "cinema": {
        "nouns": [
            "upbeat metropolis comedy", "intense detective thriller",
            "solemn period drama", "futuristic sci-fi movie",
            "whimsical animation feature", "gritty western saga",
            "sweeping romance epic", "quiet documentary portrait",
            "offbeat road movie", "haunting ghost story",
            "satirical courtroom farce", "lavish musical spectacle",
        ],
        "places": [
            "Festival de Clairmont", "Festival de Saint-Rivage",
            "Festival Lumière de Valmont", "Rêves de Belleville",
            "Cinéma du Lac Noir", "Festival des Collines",
            "Nuits de Montclair", "Écran de Beaumont",
        ],
    },
}

_LETTERS = string.ascii_lowercase + string.ascii_uppercase


def _label_text(label: tuple[str, str]) -> str:
    return f"{label[0]} in {label[1]}"


def render_problem(g: CompGraph, theme_seed: int) -> GsmProblem:
    """Word problem, question, and define-variable solution trace for a graph.

    The theme seed picks nouns and places only; the arithmetic (and the
    gold answer) comes entirely from the graph.
    """
    rng = rng_for(theme_seed, "gsm-theme")
    theme = THEMES[sorted(THEMES)[rng.randrange(len(THEMES))]]
    pairs = [(n, p) for p in theme["places"] for n in theme["nouns"]]
    rng.shuffle(pairs)
    if len(pairs) < len(g.nodes):
        raise ValueError("theme vocabulary too small for this graph")
    labels: dict[int, tuple[str, str]] = {
        node.id: pairs[i] for i, node in enumerate(g.nodes)
    }

    letters = list(_LETTERS)
    rng.shuffle(letters)
    values = eval_all(g)
    producer = {e.out: e for e in g.edges}

    # topological definition order: sources in node order, then edge order
    order = [n.id for n in g.nodes if n.id not in producer]
    order += [e.out for e in g.edges]

    var: dict[int, str] = {}
    trace_parts: list[str] = []
    sentences: list[str] = []
    for nid in order:
        v = letters[len(var)]
        var[nid] = v
        name = _label_text(labels[nid])
        if nid not in producer:
            trace_parts.append(f"Define {name} as {v}; so {v} = {values[nid]}.")
            sentences.append(f"The number of {name} is {values[nid]}.")
        else:
            e = producer[nid]
            lv = var[e.left]
            lname = _label_text(labels[e.left])
            sym = OP_SYMBOL[e.op]
            if isinstance(e.right, Literal):
                rv_txt = str(e.right.value)
                rhs_num = e.right.value
                if e.op == "add":
                    sent = f"The number of {name} equals {e.right.value} more than the number of {lname}."
                elif e.op == "sub":
                    sent = f"The number of {name} equals {e.right.value} less than the number of {lname}."
                else:
                    sent = f"The number of {name} equals {e.right.value} times the number of {lname}."
            else:
                rv_txt = var[e.right]
                rhs_num = values[e.right]
                rname = _label_text(labels[e.right])
                if e.op == "add":
                    sent = f"The number of {name} equals the sum of the number of {lname} and the number of {rname}."
                elif e.op == "sub":
                    sent = f"The number of {name} equals the number of {lname} minus the number of {rname}."
                else:
                    sent = f"The number of {name} equals the product of the number of {lname} and the number of {rname}."
            sentences.append(sent)
            trace_parts.append(
                f"Define {name} as {v}; so {v} = {lv} {sym} {rv_txt} = "
                f"{values[e.left]} {sym} {rhs_num} = {values[nid]}."
            )

    rng.shuffle(sentences)
    question = f"What is the number of {_label_text(labels[g.sink])}?"
    return GsmProblem(
        text=" ".join(sentences),
        question=question,
        solution_trace=" ".join(trace_parts),
        gold=values[g.sink],
        n_ops=g.n_ops,
    )


def labeled_graph(g: CompGraph, theme_seed: int) -> CompGraph:
    """Copy of the graph with entity labels filled the way render_problem
    assigns them (handy for inspection; rendering does not require it)."""
    rng = rng_for(theme_seed, "gsm-theme")
    theme = THEMES[sorted(THEMES)[rng.randrange(len(THEMES))]]
    pairs = [(n, p) for p in theme["places"] for n in theme["nouns"]]
    rng.shuffle(pairs)
    nodes = tuple(replace(n, entity_label=pairs[i]) for i, n in enumerate(g.nodes))
    return CompGraph(nodes=nodes, edges=g.edges, sink=g.sink)


# --- dataset ----------------------------------------------------------------


@dataclass(frozen=True)
class GsmConfig:
    min_ops: int = 2
    max_ops: int = 20
    per_difficulty_target: int = 625
    train_size: int = 10_000
    value_bound: int = 10_000
    seed: int = 0

    def __post_init__(self) -> None:
        if not 1 <= self.min_ops <= self.max_ops:
            raise ValueError("need 1 <= min_ops <= max_ops")
        if self.per_difficulty_target < 1:
            raise ValueError("per_difficulty_target must be >= 1")


def generate_problems(cfg: GsmConfig) -> list[GsmProblem]:
    """per_difficulty_target problems for every op count in [min_ops, max_ops],
    in deterministic (op count, index) order."""
    problems: list[GsmProblem] = []
    for n_ops in range(cfg.min_ops, cfg.max_ops + 1):
        for k in range(cfg.per_difficulty_target):
            seed = (cfg.seed, "gsm", n_ops, k)
            g = generate_graph(n_ops, cfg.value_bound, rng_for(*seed).randrange(2**63))
            problems.append(render_problem(g, rng_for(*seed, "theme").randrange(2**63)))
    return problems


def split_problems(
    problems: list[GsmProblem], train_size: int, seed: int
) -> tuple[list[GsmProblem], list[GsmProblem]]:
    """Seeded shuffle, then the first train_size problems train and the rest test."""
    order = list(range(len(problems)))
    rng_for(seed, "gsm-split").shuffle(order)
    shuffled = [problems[i] for i in order]
    return shuffled[:train_size], shuffled[train_size:]
