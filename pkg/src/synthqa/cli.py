"""Operator command line: generate datasets, score generations, report runs,
and serve rewards over HTTP.

Every flag can also come from a JSON --config file whose keys mirror the
flag names (underscored); explicit flags win over the file.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import dataset_io, datasets, phantom, gsm, reports, scoring
from .seeds import derive_seed


def _apply_config(ctx: click.Context, config_path: str | None) -> None:
    if not config_path:
        return
    values = json.loads(Path(config_path).read_text(encoding="utf-8"))
    if not isinstance(values, dict):
        raise click.UsageError("--config must contain a JSON object")
    for key, value in values.items():
        param = key.replace("-", "_")
        if param not in ctx.params:
            raise click.UsageError(f"--config key {key!r} matches no flag")
        source = ctx.get_parameter_source(param)
        if source is not None and source.name == "DEFAULT":
            ctx.params[param] = value


def _write_dataset(out: Path, command: str, config: dict, train, test) -> None:
    out.mkdir(parents=True, exist_ok=True)
    dataset_io.write_samples(out / "train.jsonl", train)
    dataset_io.write_samples(out / "test.jsonl", test)
    manifest = datasets.manifest_for(command, config, train, test)
    (out / "manifest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True, ensure_ascii=False) + "\n", encoding="utf-8"
    )
    click.echo(f"wrote {len(train)} train / {len(test)} test samples to {out}")


@click.group()
def main() -> None:
    """Rule-generated synthetic reasoning datasets and their reward stack."""


@main.group()
def gen() -> None:
    """Generate a dataset (train/test files plus a manifest)."""


@gen.command("phantom")
@click.option("--universes", default=34, show_default=True, type=int)
@click.option("--people", default=25, show_default=True, type=int)
@click.option("--depth", default=20, show_default=True, type=int, help="Grammar recursion bound.")
@click.option("--max-difficulty", default=9, show_default=True, type=int)
@click.option("--questions-per-universe", default=330, show_default=True, type=int)
@click.option("--test-universes", default=3, show_default=True, type=int)
@click.option("--empty-answer-fraction", default=0.1, show_default=True, type=float)
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--out", required=True, type=click.Path(path_type=Path))
@click.option("--config", "config_path", default=None, type=click.Path(exists=True))
@click.pass_context
def gen_phantom(ctx, universes, people, depth, max_difficulty, questions_per_universe,
                test_universes, empty_answer_fraction, seed, out, config_path) -> None:
    """Multi-hop questions over fictional universes."""
    _apply_config(ctx, config_path)
    p = ctx.params
    try:
        cfg = phantom.PhantomConfig(
            n_universes=p["universes"],
            people_per_universe=p["people"],
            cfg_recursion_depth=p["depth"],
            max_difficulty=p["max_difficulty"],
            target_questions_per_universe=p["questions_per_universe"],
            allow_empty_answers=p["empty_answer_fraction"],
            seed=p["seed"],
        )
        if not 0 <= p["test_universes"] < cfg.n_universes:
            raise phantom.ConfigError("test-universes must be < universes")
    except phantom.ConfigError as exc:
        raise click.ClickException(str(exc))
    train, test = datasets.build_phantom(cfg, p["test_universes"])
    config = {k: v for k, v in p.items() if k not in ("out", "config_path")}
    _write_dataset(Path(p["out"]), "gen phantom", config, train, test)


@gen.command("gsm")
@click.option("--min-ops", default=2, show_default=True, type=int)
@click.option("--max-ops", default=20, show_default=True, type=int)
@click.option("--per-difficulty", default=625, show_default=True, type=int)
@click.option("--train-size", default=10000, show_default=True, type=int)
@click.option("--value-bound", default=10000, show_default=True, type=int)
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--out", required=True, type=click.Path(path_type=Path))
@click.option("--config", "config_path", default=None, type=click.Path(exists=True))
@click.pass_context
def gen_gsm(ctx, min_ops, max_ops, per_difficulty, train_size, value_bound, seed, out, config_path) -> None:
    """Math word problems from random computation graphs."""
    _apply_config(ctx, config_path)
    p = ctx.params
    try:
        cfg = gsm.GsmConfig(
            min_ops=p["min_ops"],
            max_ops=p["max_ops"],
            per_difficulty_target=p["per_difficulty"],
            train_size=p["train_size"],
            value_bound=p["value_bound"],
            seed=p["seed"],
        )
    except ValueError as exc:
        raise click.ClickException(str(exc))
    train, test = datasets.build_gsm(cfg)
    config = {k: v for k, v in p.items() if k not in ("out", "config_path")}
    _write_dataset(Path(p["out"]), "gen gsm", config, train, test)


@gen.command("rg-family")
@click.option("--count", default=10000, show_default=True, type=int, help="Training samples.")
@click.option("--test-count", default=1000, show_default=True, type=int)
@click.option("--min-size", default=3, show_default=True, type=int)
@click.option("--max-size", default=20, show_default=True, type=int)
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--out", required=True, type=click.Path(path_type=Path))
@click.option("--config", "config_path", default=None, type=click.Path(exists=True))
@click.pass_context
def gen_rg_family(ctx, count, test_count, min_size, max_size, seed, out, config_path) -> None:
    """Relation-inference queries over random family trees."""
    _apply_config(ctx, config_path)
    p = ctx.params
    if p["min_size"] < 3 or p["min_size"] > p["max_size"]:
        raise click.ClickException("need 3 <= min-size <= max-size")
    train, test = datasets.build_rg_family(
        p["count"], p["seed"], p["test_count"], p["min_size"], p["max_size"]
    )
    config = {k: v for k, v in p.items() if k not in ("out", "config_path")}
    _write_dataset(Path(p["out"]), "gen rg-family", config, train, test)


@gen.command("rg-knights")
@click.option("--count", default=10000, show_default=True, type=int, help="Training samples.")
@click.option("--test-count", default=1000, show_default=True, type=int)
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--out", required=True, type=click.Path(path_type=Path))
@click.option("--config", "config_path", default=None, type=click.Path(exists=True))
@click.pass_context
def gen_rg_knights(ctx, count, test_count, seed, out, config_path) -> None:
    """Truth-teller puzzles with unique solutions."""
    _apply_config(ctx, config_path)
    p = ctx.params
    train, test = datasets.build_rg_knights(p["count"], p["seed"], p["test_count"])
    config = {k: v for k, v in p.items() if k not in ("out", "config_path")}
    _write_dataset(Path(p["out"]), "gen rg-knights", config, train, test)


@main.command("score")
@click.option("--generations", "generations_path", required=True, type=click.Path(exists=True))
@click.option("--dataset", "dataset_path", required=True, type=click.Path(exists=True))
@click.option("--reward", "reward_kind", required=True, type=click.Choice(scoring.REWARD_KINDS))
@click.option("--out", required=True, type=click.Path(path_type=Path))
@click.option("--groundedness", "with_groundedness", is_flag=True,
              help="Also report per-position intermediate-answer coverage.")
@click.option("--checkpoint-step", default=None, type=int,
              help="Step label applied to records that carry none.")
@click.option("--config", "config_path", default=None, type=click.Path(exists=True))
@click.pass_context
def score_cmd(ctx, generations_path, dataset_path, reward_kind, out, with_groundedness,
              checkpoint_step, config_path) -> None:
    """Score a generations file against a dataset and write records + report."""
    _apply_config(ctx, config_path)
    p = ctx.params
    samples = {s.id: s for s in dataset_io.read_samples(p["dataset_path"])}

    generations: list[dict] = []
    with open(p["generations_path"], "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                generations.append(json.loads(line))
            except json.JSONDecodeError as exc:
                raise click.ClickException(f"{p['generations_path']}:{lineno}: invalid JSON: {exc}")

    unknown = sorted({g.get("sample_id") for g in generations} - set(samples))
    if unknown:
        click.echo(f"unknown sample ids: {', '.join(str(u) for u in unknown[:20])}", err=True)
        sys.exit(1)

    records: list[scoring.ScoreRecord] = []
    grounded_pairs: list[tuple[str, list[str]]] = []
    for g in generations:
        sample = samples[g["sample_id"]]
        extracted, reward = scoring.reward_for(p["reward_kind"], g["generation"], sample.gold)
        records.append(
            scoring.ScoreRecord(
                sample_id=sample.id,
                raw_generation=g["generation"],
                extracted=extracted,
                reward=reward,
                reward_kind=p["reward_kind"],
                difficulty=sample.difficulty,
                checkpoint_step=g.get("checkpoint_step", p["checkpoint_step"]),
            )
        )
        if sample.intermediate_golds:
            grounded_pairs.append((g["generation"], list(sample.intermediate_golds)))

    out_dir = Path(p["out"])
    out_dir.mkdir(parents=True, exist_ok=True)
    with (out_dir / "records.jsonl").open("w", encoding="utf-8") as fh:
        for r in records:
            fh.write(json.dumps({
                "sample_id": r.sample_id,
                "extracted": r.extracted,
                "reward": r.reward,
                "reward_kind": r.reward_kind,
                "difficulty": r.difficulty,
                "checkpoint_step": r.checkpoint_step,
            }, ensure_ascii=False) + "\n")

    report = scoring.stratify(records)
    (out_dir / "report.tsv").write_text(reports.stratified_table(report), encoding="utf-8")
    reports.stratified_figure(report, out_dir / "report.png")

    if p["with_groundedness"] and grounded_pairs:
        rows = scoring.groundedness_fractions(grounded_pairs)
        (out_dir / "groundedness.tsv").write_text(reports.groundedness_table(rows), encoding="utf-8")
        reports.groundedness_figure(rows, out_dir / "groundedness.png")

    click.echo(
        f"scored {len(records)} generations: mean reward "
        f"{report.overall.mean:.4f} +/- {report.overall.standard_error:.4f}"
    )


@main.command("report")
@click.option("--runs", "runs_pattern", required=True,
              help="Glob over score-record files, e.g. 'runs/step*/records.jsonl'.")
@click.option("--out", required=True, type=click.Path(path_type=Path))
@click.option("--config", "config_path", default=None, type=click.Path(exists=True))
@click.pass_context
def report_cmd(ctx, runs_pattern, out, config_path) -> None:
    """Aggregate per-checkpoint score files into a scaling table and figure."""
    import glob

    _apply_config(ctx, config_path)
    p = ctx.params
    by_step: dict[int, list[float]] = {}
    files = sorted(glob.glob(p["runs_pattern"], recursive=True))
    if not files:
        raise click.ClickException(f"no files match {p['runs_pattern']!r}")
    for path in files:
        with open(path, "r", encoding="utf-8") as fh:
            for line in fh:
                if not line.strip():
                    continue
                record = json.loads(line)
                step = record.get("checkpoint_step")
                if step is None:
                    continue
                by_step.setdefault(int(step), []).append(float(record["reward"]))
    if not by_step:
        raise click.ClickException("no records carry checkpoint_step metadata")

    rows = []
    for step in sorted(by_step):
        b = scoring.summarize(by_step[step])
        rows.append((step, b.mean, b.standard_error, b.n))
    out_dir = Path(p["out"])
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "scaling.tsv").write_text(reports.scaling_table(rows), encoding="utf-8")
    reports.scaling_figure(rows, out_dir / "scaling.png")
    click.echo(f"wrote scaling report over {len(rows)} checkpoint steps to {out_dir}")


@main.command("serve")
@click.option("--host", default=None, help=f"Bind host (or set {'{'}SYNTHQA_BIND{'}'}).")
@click.option("--port", default=8100, show_default=True, type=int)
@click.option("--dataset", "dataset_specs", multiple=True,
              help="name=path of a dataset file to preload; repeatable.")
@click.option("--batch-limit", default=None, type=int,
              help="Max items per /v1/score call (or set SYNTHQA_BATCH_LIMIT).")
@click.option("--config", "config_path", default=None, type=click.Path(exists=True))
@click.pass_context
def serve_cmd(ctx, host, port, dataset_specs, batch_limit, config_path) -> None:
    """Run the batch reward / sampling HTTP service."""
    import os

    import uvicorn

    from . import service

    _apply_config(ctx, config_path)
    p = ctx.params
    paths = {}
    for spec in p["dataset_specs"]:
        if "=" not in spec:
            raise click.ClickException(f"--dataset expects name=path, got {spec!r}")
        name, path = spec.split("=", 1)
        paths[name] = path
    loaded = service.load_datasets(paths)
    app = service.create_app(loaded, batch_limit=p["batch_limit"])
    bind = p["host"] or os.environ.get(service.BIND_ENV, "127.0.0.1")
    uvicorn.run(app, host=bind, port=p["port"], log_level="warning")


if __name__ == "__main__":
    main()
