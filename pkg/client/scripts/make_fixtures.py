#!/usr/bin/env python3
"""Regenerate the shared parity fixtures under tests/fixtures/.

Builds two small datasets with the synthqa CLI, crafts generations with a
mix of right, wrong, and malformed answers, scores them with `synthqa
score` for every reward kind, and freezes the resulting rewards. The client
integration test replays the same generations through a live service and
must reproduce these numbers exactly.
"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def run(*args: str) -> None:
    subprocess.run(args, check=True, capture_output=True, text=True)


def craft_generations(samples: list[dict]) -> list[dict]:
    out = []
    for i, s in enumerate(samples):
        gold = s["gold"]
        gold_text = ",".join(gold) if isinstance(gold, list) else gold
        if i % 4 == 0:
            generation = f"worked it out. <answer>{gold_text}</answer>"
        elif i % 4 == 1:
            generation = "<answer>definitely wrong</answer>"
        elif i % 4 == 2:
            generation = "no answer tags at all"
        else:
            partial = gold[0] if isinstance(gold, list) and gold else gold_text
            generation = f"<answer>first</answer> hmm <answer>{partial}</answer>"
        out.append({"sample_id": s["id"], "generation": generation})
    return out


def main() -> None:
    FIXTURES.mkdir(parents=True, exist_ok=True)
    with tempfile.TemporaryDirectory() as td:
        tmp = Path(td)
        run(sys.executable, "-m", "synthqa.cli", "gen", "rg-knights",
            "--count", "8", "--test-count", "0", "--seed", "42",
            "--out", str(tmp / "rgk"))
        run(sys.executable, "-m", "synthqa.cli", "gen", "phantom",
            "--universes", "1", "--people", "8", "--questions-per-universe", "12",
            "--test-universes", "0", "--max-difficulty", "3", "--seed", "42",
            "--out", str(tmp / "phantom"))

        datasets = {
            "rgk": (tmp / "rgk" / "train.jsonl").read_text(encoding="utf-8"),
            "phantom": (tmp / "phantom" / "train.jsonl").read_text(encoding="utf-8"),
        }
        for name, content in datasets.items():
            (FIXTURES / f"dataset-{name}.jsonl").write_text(content, encoding="utf-8")

        expected = {}
        cases = [
            ("exact_match", "rgk"),
            ("format_only", "rgk"),
            ("token_f1", "rgk"),
            ("set_f1", "phantom"),
        ]
        for kind, dataset in cases:
            samples = [json.loads(line) for line in datasets[dataset].splitlines()]
            generations = craft_generations(samples)
            gen_path = tmp / f"gens-{kind}.jsonl"
            gen_path.write_text(
                "".join(json.dumps(g) + "\n" for g in generations), encoding="utf-8"
            )
            out_dir = tmp / f"score-{kind}"
            run(sys.executable, "-m", "synthqa.cli", "score",
                "--generations", str(gen_path),
                "--dataset", str(tmp / dataset / "train.jsonl"),
                "--reward", kind, "--out", str(out_dir))
            rewards = {}
            for line in (out_dir / "records.jsonl").read_text(encoding="utf-8").splitlines():
                record = json.loads(line)
                rewards[record["sample_id"]] = record["reward"]
            expected[kind] = {
                "dataset": dataset,
                "items": generations,
                "rewards": [rewards[g["sample_id"]] for g in generations],
            }

        (FIXTURES / "expected.json").write_text(
            json.dumps(expected, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
    print(f"wrote fixtures to {FIXTURES}")


if __name__ == "__main__":
    main()
