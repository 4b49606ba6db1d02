"""Prompt assembly, dataset file serialization, and benchmark ingestion.

Dataset files are UTF-8 JSON lines with a stable field order, one
independently parseable record per line and no trailing blank lines, so an
RL trainer can stream them and a byte diff is a meaningful equality check.
Prompt templates and the worked-example blocks live in templates/ as plain
text data files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Callable, Iterable, Optional

from .model import SINGLE_GOLD_DATASETS, AnswerSet, Sample

TEMPLATE_KINDS = ("phantom", "gsm", "rg")

# Advisory per-dataset prompt budgets (token counts under a pluggable
# counter; the default counter is whitespace word count). Prompts are
# checked, never truncated.
DEFAULT_BUDGETS = {
    "phantom": 6000,
    "gsm": 2048,
    "hotpot_like": 6000,
    "musique_like": 8000,
}


class TemplateMismatch(ValueError):
    pass


class ParseError(ValueError):
    pass


@dataclass(frozen=True)
class PromptTemplate:
    kind: str
    text: str

    def __post_init__(self) -> None:
        if self.kind not in TEMPLATE_KINDS:
            raise TemplateMismatch(f"unknown template kind: {self.kind!r}")
        if self.kind != "rg" and "{{evidence}}" not in self.text:
            raise TemplateMismatch("template is missing its evidence slot")
        if "<answer>FINAL_ANSWER</answer>" not in self.text:
            raise TemplateMismatch("template is missing the answer-tag instruction")
        if "{{question}}" not in self.text:
            raise TemplateMismatch("template is missing its question slot")


def _read_template_file(name: str) -> str:
    return resources.files("synthqa.templates").joinpath(name).read_text(encoding="utf-8")


def load_template(kind: str) -> PromptTemplate:
    if kind not in TEMPLATE_KINDS:
        raise TemplateMismatch(f"unknown template kind: {kind!r}")
    text = _read_template_file(f"{kind}_template.txt")
    return PromptTemplate(kind=kind, text=text.rstrip("\n"))


def load_cot_examples(name: str) -> str:
    """Shipped worked-example block: phantom, rg_family, or rg_knights."""
    if name not in ("phantom", "rg_family", "rg_knights"):
        raise TemplateMismatch(f"no shipped example block named {name!r}")
    return _read_template_file(f"{name}_examples.txt").rstrip("\n")


def format_cot_examples(examples: list[str]) -> str:
    """Join freeform worked examples into a numbered block."""
    return "\n\n".join(f"Example {i}:\n{ex.strip()}" for i, ex in enumerate(examples, start=1))


def assemble_prompt(
    template: PromptTemplate,
    question: str,
    examples_block: str = "",
    evidence: Optional[str] = None,
) -> str:
    """Fill the template slots. Phantom and gsm templates require evidence;
    the rg template has none."""
    text = template.text
    if template.kind == "rg":
        if evidence is not None:
            raise TemplateMismatch("rg template takes no evidence")
    else:
        if evidence is None:
            raise TemplateMismatch(f"{template.kind} template requires evidence")
        text = text.replace("{{evidence}}", evidence)
    text = text.replace("{{examples}}", examples_block)
    return text.replace("{{question}}", question)


# --- dataset files -------------------------------------------------------------

_FIELDS = (
    "id",
    "dataset",
    "split",
    "difficulty",
    "prompt",
    "question_text",
    "gold",
    "intermediate_golds",
    "universe_id",
    "seed_provenance",
)


def sample_to_record(s: Sample) -> dict:
    gold = s.gold.sorted()[0] if (s.dataset in SINGLE_GOLD_DATASETS and s.gold) else s.gold.sorted()
    if s.dataset in SINGLE_GOLD_DATASETS and not s.gold:
        gold = ""
    record = {
        "id": s.id,
        "dataset": s.dataset,
        "split": s.split,
        "difficulty": s.difficulty,
        "prompt": s.prompt,
        "question_text": s.question_text,
        "gold": gold,
    }
    if s.intermediate_golds is not None:
        record["intermediate_golds"] = list(s.intermediate_golds)
    if s.universe_id is not None:
        record["universe_id"] = s.universe_id
    if s.seed_provenance is not None:
        record["seed_provenance"] = s.seed_provenance
    return record


def record_to_sample(record: dict) -> Sample:
    try:
        gold = record["gold"]
        answer = AnswerSet.of(gold) if isinstance(gold, str) else AnswerSet.of(*gold)
        ig = record.get("intermediate_golds")
        return Sample(
            id=record["id"],
            dataset=record["dataset"],
            split=record["split"],
            difficulty=record["difficulty"],
            prompt=record["prompt"],
            question_text=record["question_text"],
            gold=answer,
            intermediate_golds=tuple(ig) if ig is not None else None,
            universe_id=record.get("universe_id"),
            seed_provenance=record.get("seed_provenance"),
        )
    except KeyError as exc:
        raise ParseError(f"record {record.get('id', '<no id>')!r} is missing field {exc}") from exc


def write_samples(path: str | Path, samples: Iterable[Sample]) -> int:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    n = 0
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        for s in samples:
            fh.write(json.dumps(sample_to_record(s), ensure_ascii=False))
            fh.write("\n")
            n += 1
    return n


def read_samples(path: str | Path) -> list[Sample]:
    out: list[Sample] = []
    with Path(path).open("r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(f"{path}:{lineno}: invalid JSON: {exc}") from exc
            out.append(record_to_sample(record))
    return out


# --- ordering ------------------------------------------------------------------


def shuffle_and_cap(samples: list[Sample], cap: Optional[int], seed: int) -> list[Sample]:
    """Seeded Fisher-Yates permutation truncated to cap (None = no cap)."""
    import random

    out = list(samples)
    random.Random(seed).shuffle(out)
    return out if cap is None else out[:cap]


def subsample_eval(samples: list[Sample], n: int, seed: int) -> list[Sample]:
    """Seeded sample without replacement, preserving nothing but the seed's
    choice; raises if n exceeds the pool."""
    import random

    if n > len(samples):
        raise ValueError(f"cannot subsample {n} from {len(samples)} samples")
    return random.Random(seed).sample(samples, n)


# --- benchmark ingestion ---------------------------------------------------------


def _paragraph_block(paragraphs: list[tuple[str, str]]) -> str:
    return "\n\n".join(f"# {title}\n{text}" for title, text in paragraphs)


def _load_json_records(path: Path) -> list[dict]:
    raw = path.read_text(encoding="utf-8").strip()
    if not raw:
        raise ParseError(f"{path}: empty file")
    if raw[0] == "[":
        data = json.loads(raw)
        if not isinstance(data, list):
            raise ParseError(f"{path}: expected a JSON array of records")
        return data
    records = []
    for lineno, line in enumerate(raw.splitlines(), start=1):
        if line.strip():
            try:
                records.append(json.loads(line))
            except json.JSONDecodeError as exc:
                raise ParseError(f"{path}:{lineno}: invalid JSON: {exc}") from exc
    return records


def ingest_benchmark(path: str | Path, format: str) -> list[Sample]:
    """Map a community benchmark file onto Samples.

    hotpot_like: array/lines of {_id|id, question, answer,
        context: [[title, [sentence, ...]], ...]}; every paragraph
        (supporting and distractor) lands in the evidence block, difficulty 2.
    musique_like: array/lines of {id, question, answer,
        paragraphs: [{title, paragraph_text}, ...],
        question_decomposition: [{question, answer}, ...]}; difficulty is the
        hop count and the decomposition answers become intermediate_golds.
    """
    if format not in ("hotpot_like", "musique_like"):
        raise ValueError(f"unknown benchmark format: {format!r}")
    path = Path(path)
    template = load_template("phantom")
    samples: list[Sample] = []
    for idx, record in enumerate(_load_json_records(path)):
        rid = str(record.get("_id") or record.get("id") or f"record-{idx}")
        where = f"{path}: record {rid}"
        question = record.get("question")
        answer = record.get("answer")
        if not isinstance(question, str) or not question:
            raise ParseError(f"{where}: missing question field")
        if not isinstance(answer, str) or not answer:
            raise ParseError(f"{where}: missing answer field")

        if format == "hotpot_like":
            context = record.get("context")
            if not isinstance(context, list):
                raise ParseError(f"{where}: missing context field")
            paragraphs = []
            for entry in context:
                try:
                    title, sentences = entry[0], entry[1]
                except (TypeError, IndexError) as exc:
                    raise ParseError(f"{where}: malformed context entry") from exc
                body = "".join(sentences) if isinstance(sentences, list) else str(sentences)
                paragraphs.append((str(title), body))
            difficulty = 2
            intermediate: Optional[tuple[str, ...]] = None
        else:
            paras = record.get("paragraphs")
            if not isinstance(paras, list):
                raise ParseError(f"{where}: missing paragraphs field")
            paragraphs = [(str(p.get("title", "")), str(p.get("paragraph_text", ""))) for p in paras]
            decomposition = record.get("question_decomposition")
            if not isinstance(decomposition, list) or not decomposition:
                raise ParseError(f"{where}: missing question_decomposition field")
            sub_answers = []
            for step in decomposition:
                sub = step.get("answer")
                if not isinstance(sub, str) or not sub:
                    raise ParseError(f"{where}: decomposition step missing answer")
                sub_answers.append(sub)
            difficulty = len(decomposition)
            intermediate = tuple(sub_answers)

        prompt = assemble_prompt(
            template,
            question=question,
            examples_block=load_cot_examples("phantom"),
            evidence=_paragraph_block(paragraphs),
        )
        samples.append(
            Sample(
                id=rid,
                dataset="external",
                split="test",
                difficulty=difficulty,
                prompt=prompt,
                question_text=question,
                gold=AnswerSet.of(answer),
                intermediate_golds=intermediate,
            )
        )
    return samples


# --- budgets ---------------------------------------------------------------------


def word_count(text: str) -> int:
    return len(text.split())


def length_budget_check(
    prompt: str, budget: int, counter: Callable[[str], int] = word_count
) -> tuple[bool, int]:
    """(fits, overflow_by) for a prompt under a token counter. overflow_by is
    0 when the prompt fits."""
    if budget <= 0:
        raise ValueError("budget must be positive")
    n = counter(prompt)
    return (n <= budget, max(0, n - budget))
