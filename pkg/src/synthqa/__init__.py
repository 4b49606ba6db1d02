"""synthqa: rule-generated synthetic reasoning datasets with verified answers.

Four generator families (multi-hop universes, computation-graph math,
family-relation inference, truth-teller puzzles), the scoring and reward
stack used to grade model generations against their machine-checked golds,
and a batch HTTP service that exposes rewards and dataset sampling to
external fine-tuning loops.
"""

__version__ = "0.1.0"
