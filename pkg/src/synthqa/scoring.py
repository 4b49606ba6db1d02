"""Answer extraction, reward functions, and stratified evaluation metrics.

All functions are pure and reentrant. Rewards live in [0, 1]. The answer
channel is the last well-formed <answer>...</answer> pair in a generation;
everything before it is treated as the reasoning trace.
"""

from __future__ import annotations

import math
import re
import string
from collections import Counter
from dataclasses import dataclass
from typing import Optional

from .model import AnswerSet

ANSWER_RE = re.compile(r"<answer>(.*?)</answer>", re.DOTALL)

REWARD_KINDS = ("exact_match", "set_f1", "token_f1", "format_only")

# Which reward each dataset trains with. External benchmark files are
# evaluated with token F1; everything synthetic is exact except phantom,
# whose questions can have multiple answers.
DATASET_REWARD: dict[str, str] = {
    "phantom": "set_f1",
    "gsm_inf": "exact_match",
    "rg_family": "exact_match",
    "rg_knights": "exact_match",
    "external": "token_f1",
}

_PUNCT_TABLE = str.maketrans({ch: " " for ch in string.punctuation})
_ARTICLES_RE = re.compile(r"\b(a|an|the)\b")


def extract_answer(generation: str) -> Optional[str]:
    """Content of the last well-formed answer-tag pair, trimmed; None if absent."""
    matches = ANSWER_RE.findall(generation)
    if not matches:
        return None
    return matches[-1].strip()


def normalize(s: str) -> str:
    """Lowercase, drop punctuation and standalone articles, collapse whitespace."""
    s = s.lower().translate(_PUNCT_TABLE)
    s = _ARTICLES_RE.sub(" ", s)
    return " ".join(s.split())


def exact_match(pred: str, gold: str) -> int:
    """Case-insensitive equality of trimmed strings.

    No further normalization: synthetic golds like dates must survive
    punctuation intact.
    """
    return int(pred.strip().lower() == gold.strip().lower())


def _canonical_element(s: str) -> str:
    """Normalized form of one answer element. Elements that normalize to
    nothing (e.g. a bare article used as a literal value) fall back to
    trimmed casefolding so they still count as content."""
    n = normalize(s)
    return n if n else s.strip().lower()


def parse_answer_set(s: str) -> AnswerSet:
    """Split a comma-separated prediction into a normalized answer set."""
    return AnswerSet(frozenset(e for e in (_canonical_element(p) for p in s.split(",")) if e))


def _normalize_set(a: AnswerSet) -> frozenset[str]:
    return frozenset(e for e in (_canonical_element(x) for x in a.values) if e)


def set_f1(pred: AnswerSet, gold: AnswerSet) -> float:
    """F1 between answer sets after element-wise normalization.

    Both empty -> 1.0; exactly one empty -> 0.0.
    """
    p, g = _normalize_set(pred), _normalize_set(gold)
    if not p and not g:
        return 1.0
    if not p or not g:
        return 0.0
    common = len(p & g)
    if common == 0:
        return 0.0
    precision = common / len(p)
    recall = common / len(g)
    return 2 * precision * recall / (precision + recall)


def token_f1(pred: str, gold: str) -> float:
    """Bag-of-tokens F1 with multiplicity over normalized whitespace tokens."""
    p = normalize(pred).split()
    g = normalize(gold).split()
    if not p and not g:
        return 1.0
    if not p or not g:
        return 0.0
    common = sum((Counter(p) & Counter(g)).values())
    if common == 0:
        return 0.0
    precision = common / len(p)
    recall = common / len(g)
    return 2 * precision * recall / (precision + recall)


def format_reward(generation: str) -> int:
    """1 iff the generation carries a well-formed answer-tag pair."""
    return int(extract_answer(generation) is not None)


def reward_for(kind: str, generation: str, gold: AnswerSet) -> tuple[Optional[str], float]:
    """Extract and score one generation. Returns (extracted, reward)."""
    if kind not in REWARD_KINDS:
        raise ValueError(f"unknown reward kind: {kind!r}")
    extracted = extract_answer(generation)
    if kind == "format_only":
        return extracted, float(extracted is not None)
    if extracted is None:
        return None, 0.0
    if kind == "exact_match":
        gold_str = gold.sorted()[0] if gold else ""
        return extracted, float(exact_match(extracted, gold_str))
    if kind == "set_f1":
        return extracted, set_f1(parse_answer_set(extracted), gold)
    gold_str = gold.sorted()[0] if gold else ""
    return extracted, token_f1(extracted, gold_str)


def groundedness(trace: str, intermediate_golds: list[str]) -> list[bool]:
    """Whether each intermediate gold answer occurs (normalized, as a
    substring) in the reasoning trace. Golds that normalize away entirely
    fall back to a raw case-insensitive scan instead of matching everything.
    """
    t_norm = normalize(trace)
    t_raw = trace.lower()
    out: list[bool] = []
    for g in intermediate_golds or []:
        gn = normalize(g)
        if gn:
            out.append(gn in t_norm)
        else:
            graw = g.strip().lower()
            out.append(bool(graw) and graw in t_raw)
    return out


# --- aggregation -------------------------------------------------------------


@dataclass(frozen=True)
class ScoreRecord:
    sample_id: str
    raw_generation: str
    extracted: Optional[str]
    reward: float
    reward_kind: str
    difficulty: int
    checkpoint_step: Optional[int] = None

    def __post_init__(self) -> None:
        if not 0.0 <= self.reward <= 1.0:
            raise ValueError("reward out of [0, 1]")
        if self.reward_kind not in REWARD_KINDS:
            raise ValueError(f"unknown reward kind: {self.reward_kind!r}")


@dataclass(frozen=True)
class Bucket:
    mean: float
    standard_error: float
    n: int


@dataclass(frozen=True)
class StratifiedReport:
    buckets: dict[int, Bucket]  # difficulty -> stats, ascending keys
    overall: Bucket


def summarize(values: list[float]) -> Bucket:
    """Mean with standard error = sample stddev / sqrt(n); 0 for n < 2."""
    n = len(values)
    if n == 0:
        return Bucket(0.0, 0.0, 0)
    mean = sum(values) / n
    if n == 1:
        return Bucket(mean, 0.0, 1)
    var = sum((v - mean) ** 2 for v in values) / (n - 1)
    return Bucket(mean, math.sqrt(var) / math.sqrt(n), n)


def stratify(records: list[ScoreRecord]) -> StratifiedReport:
    """Per-difficulty mean +/- standard error plus an overall row."""
    by_level: dict[int, list[float]] = {}
    for r in records:
        by_level.setdefault(r.difficulty, []).append(r.reward)
    buckets = {d: summarize(vals) for d, vals in sorted(by_level.items())}
    return StratifiedReport(buckets=buckets, overall=summarize([r.reward for r in records]))


def groundedness_fractions(
    pairs: list[tuple[str, list[str]]],
) -> list[tuple[int, float, int]]:
    """Aggregate per-position groundedness over (trace, intermediate_golds)
    pairs: for the k-th intermediate answer, the fraction of traces that
    contain it. Returns (position, fraction, n) rows, 1-indexed."""
    hits: dict[int, int] = {}
    totals: dict[int, int] = {}
    for trace, golds in pairs:
        flags = groundedness(trace, golds)
        for k, ok in enumerate(flags, start=1):
            totals[k] = totals.get(k, 0) + 1
            hits[k] = hits.get(k, 0) + int(ok)
    return [(k, hits[k] / totals[k], totals[k]) for k in sorted(totals)]
