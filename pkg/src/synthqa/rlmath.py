"""Group-relative advantage normalization and the clipped token surrogate.

Desk-scale numeric core of the policy-gradient objective: no gradients, no
KL term (the trained configuration sets that coefficient to zero), just the
value computations so the math is testable in isolation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class TokenRatioSeq:
    """Per-token log-probabilities of one completion under the old and new
    policies, plus its group-normalized advantage."""

    old_logprobs: tuple[float, ...]
    new_logprobs: tuple[float, ...]
    advantage: float

    def __post_init__(self) -> None:
        if len(self.old_logprobs) != len(self.new_logprobs):
            raise ValueError("old/new logprob lengths differ")
        if not self.old_logprobs:
            raise ValueError("need at least one token")


def group_advantages(rewards: list[float], epsilon: float = 1e-8) -> list[float]:
    """(R_i - mean) / (population stddev + epsilon) for a reward group.

    Zero-variance groups come out as all zeros: every numerator is zero and
    epsilon keeps the division finite.
    """
    if not rewards:
        raise ValueError("empty reward group")
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    g = len(rewards)
    mean = sum(rewards) / g
    var = sum((r - mean) ** 2 for r in rewards) / g
    denom = math.sqrt(var) + epsilon
    return [(r - mean) / denom for r in rewards]


def grpo_surrogate(seqs: list[TokenRatioSeq], clip_eps: float) -> float:
    """Mean over completions of the per-token clipped surrogate:

        (1/G) sum_i (1/|o_i|) sum_t min(r_it * A_i, clip(r_it, 1-eps, 1+eps) * A_i)

    with r_it = exp(new_logprob - old_logprob), importance weighting per token.
    """
    if not seqs:
        raise ValueError("empty sequence group")
    if not 0.0 < clip_eps < 1.0:
        raise ValueError("clip_eps must lie in (0, 1)")
    total = 0.0
    for seq in seqs:
        acc = 0.0
        for old_lp, new_lp in zip(seq.old_logprobs, seq.new_logprobs):
            ratio = math.exp(new_lp - old_lp)
            clipped = min(max(ratio, 1.0 - clip_eps), 1.0 + clip_eps)
            acc += min(ratio * seq.advantage, clipped * seq.advantage)
        total += acc / len(seq.old_logprobs)
    return total / len(seqs)
