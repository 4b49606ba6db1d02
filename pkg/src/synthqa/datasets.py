"""End-to-end dataset builders: generator output -> prompt-assembled samples.

Splits are disjoint by construction. The multi-hop universes split BY
UNIVERSE so the test side shares zero facts with training; the math set
splits by seeded shuffle; the puzzle sets split by generation index while
keeping their size balance.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import dataset_io, family, gsm, knights, phantom
from .model import AnswerSet, Sample


def _difficulty_histogram(samples: list[Sample]) -> dict[str, int]:
    hist: dict[int, int] = {}
    for s in samples:
        hist[s.difficulty] = hist.get(s.difficulty, 0) + 1
    return {str(k): v for k, v in sorted(hist.items())}


def manifest_for(command: str, config: dict, train: list[Sample], test: list[Sample]) -> dict:
    return {
        "command": command,
        "config": config,
        "counts": {"train": len(train), "test": len(test)},
        "difficulty_histogram": {
            "train": _difficulty_histogram(train),
            "test": _difficulty_histogram(test),
        },
    }


# --- phantom --------------------------------------------------------------------


def make_split(
    datas: list[phantom.UniverseData], n_test_universes: int
) -> tuple[list[Sample], list[Sample]]:
    """Split universes into train/test (test takes the last n), then assemble
    one sample per question with the full-universe evidence prompt."""
    if not 0 <= n_test_universes < len(datas):
        raise ValueError("need 0 <= n_test_universes < number of universes")
    template = dataset_io.load_template("phantom")
    examples_block = dataset_io.load_cot_examples("phantom")
    n_train = len(datas) - n_test_universes

    def to_samples(data: phantom.UniverseData, split: str) -> list[Sample]:
        evidence = phantom.evidence_block(list(data.articles))
        out = []
        for k, q in enumerate(data.questions):
            out.append(
                Sample(
                    id=f"phantom-{data.universe.id}-q{k:04d}",
                    dataset="phantom",
                    split=split,
                    difficulty=q.difficulty,
                    prompt=dataset_io.assemble_prompt(
                        template, question=q.text, examples_block=examples_block, evidence=evidence
                    ),
                    question_text=q.text,
                    gold=q.answer,
                    universe_id=data.universe.id,
                    seed_provenance=f"{data.universe.seed}/{data.universe.id}/q{k:04d}",
                )
            )
        return out

    train: list[Sample] = []
    test: list[Sample] = []
    for i, data in enumerate(datas):
        (train if i < n_train else test).extend(to_samples(data, "train" if i < n_train else "test"))
    return train, test


def build_phantom(cfg: phantom.PhantomConfig, n_test_universes: int = 3) -> tuple[list[Sample], list[Sample]]:
    return make_split(phantom.build_all(cfg), n_test_universes)


# --- gsm ------------------------------------------------------------------------


def _gsm_example_block(problems: list[tuple[int, gsm.GsmProblem]]) -> str:
    parts = []
    for i, (_, p) in enumerate(problems, start=1):
        parts.append(f"Example {i}:\nQuestion: {p.question}\nAnswer: {p.solution_trace} <answer>{p.gold}</answer>.")
    return "\n\n".join(parts)


def build_gsm(cfg: gsm.GsmConfig) -> tuple[list[Sample], list[Sample]]:
    """Generate, split, and prompt the math problems. The worked examples in
    every prompt are the three earliest-generated training problems."""
    problems = gsm.generate_problems(cfg)
    indexed = list(enumerate(problems))
    train_idx, test_idx = gsm.split_problems(indexed, cfg.train_size, cfg.seed)
    cot_source = sorted(train_idx, key=lambda pair: pair[0])[:3]
    examples_block = _gsm_example_block(cot_source)
    template = dataset_io.load_template("gsm")

    def to_sample(gen_index: int, p: gsm.GsmProblem, split: str) -> Sample:
        return Sample(
            id=f"gsm-{gen_index:05d}",
            dataset="gsm_inf",
            split=split,
            difficulty=p.n_ops,
            prompt=dataset_io.assemble_prompt(
                template, question=p.question, examples_block=examples_block, evidence=p.text
            ),
            question_text=p.question,
            gold=AnswerSet.of(str(p.gold)),
            seed_provenance=f"{cfg.seed}/gsm/{gen_index:05d}",
        )

    train = [to_sample(i, p, "train") for i, p in train_idx]
    test = [to_sample(i, p, "test") for i, p in test_idx]
    return train, test


# --- reasoning puzzles ------------------------------------------------------------


def build_rg_family(
    count: int, seed: int, test_count: int = 1000, min_size: int = 3, max_size: int = 20
) -> tuple[list[Sample], list[Sample]]:
    triples = family.generate_queries(count + test_count, seed, min_size, max_size)
    template = dataset_io.load_template("rg")
    examples_block = dataset_io.load_cot_examples("rg_family")

    def to_sample(k: int, size: int, question: str, gold: str, split: str) -> Sample:
        return Sample(
            id=f"rgf-{k:05d}",
            dataset="rg_family",
            split=split,
            difficulty=size,
            prompt=dataset_io.assemble_prompt(template, question=question, examples_block=examples_block),
            question_text=question,
            gold=AnswerSet.of(gold),
            seed_provenance=f"{seed}/rg_family/{k:05d}",
        )

    train = [to_sample(k, *t, "train") for k, t in enumerate(triples[:count])]
    test = [to_sample(count + j, *t, "test") for j, t in enumerate(triples[count:])]
    return train, test


def build_rg_knights(count: int, seed: int, test_count: int = 1000) -> tuple[list[Sample], list[Sample]]:
    triples = knights.generate_balanced(count + test_count, seed)
    template = dataset_io.load_template("rg")
    examples_block = dataset_io.load_cot_examples("rg_knights")

    def to_sample(k: int, inst: knights.KkInstance, question: str, gold: str, split: str) -> Sample:
        return Sample(
            id=f"rgk-{k:05d}",
            dataset="rg_knights",
            split=split,
            difficulty=inst.n_people,
            prompt=dataset_io.assemble_prompt(template, question=question, examples_block=examples_block),
            question_text=question,
            gold=AnswerSet.of(gold),
            seed_provenance=f"{seed}/rg_knights/{k:05d}",
        )

    train = [to_sample(k, *t, "train") for k, t in enumerate(triples[:count])]
    test = [to_sample(count + j, *t, "test") for j, t in enumerate(triples[count:])]
    return train, test
