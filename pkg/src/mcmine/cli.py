"""Command-line entry points.

Exit codes: 0 success, 1 validation/usage failure, 2 runtime error.
``--mock-scenario PATH`` switches every pipeline onto the deterministic
mock provider.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from . import benchgen, evaluate, io, miner
from .errors import McmineError
from .gateway import Gateway, mock_scenario_load
from .inject import make_injector
from .model import ModelConfig, validate_dataset
from .registry import ModelRegistry, load_registry, with_mock_provider


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}\n{self.format_usage()}")


def build_parser() -> _Parser:
    parser = _Parser(prog="mcmine", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--mock-scenario", help="scenario file; forces the mock provider")
        p.add_argument("--registry", help="model registry file (default: MCMINE_CONFIG or packaged)")

    p = sub.add_parser("inject", help="inject one misconception into one solution")
    common(p)
    p.add_argument("--problems", required=True)
    p.add_argument("--problem-id", required=True)
    p.add_argument("--misconceptions", required=True)
    p.add_argument("--misconception-id", required=True)
    p.add_argument("--solution-index", type=int, default=0)
    p.add_argument("--model", default="sonnet-4.5-reasoning")
    p.add_argument("--judge-model", default="sonnet-4.5-reasoning")
    p.add_argument("--out", help="write injected code to this file")

    p = sub.add_parser("genbench", help="generate a benchmark dataset")
    common(p)
    p.add_argument("--config", required=True, help="generation config JSON")
    p.add_argument("--misconceptions", required=True)
    p.add_argument("--problems", required=True)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--model", default="sonnet-4.5-reasoning")
    p.add_argument("--judge-model", default="sonnet-4.5-reasoning")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--audit", help="write per-attempt audit records to this JSONL file")
    p.add_argument("--verify-runner", help="command that verifies bank solutions before use")

    p = sub.add_parser("mine", help="mine misconceptions from a dataset")
    common(p)
    p.add_argument("--dataset", required=True)
    p.add_argument("--mode", choices=["single", "multi"], required=True)
    p.add_argument("--model", default="sonnet-4.5-reasoning")
    p.add_argument("--out", required=True)
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("eval", help="score predictions against a dataset")
    common(p)
    p.add_argument("--dataset", required=True)
    p.add_argument("--predictions", required=True)
    p.add_argument("--judge-model", default="sonnet-4.5-reasoning")
    p.add_argument("--out", required=True)
    p.add_argument("--threshold", type=int, help="novel-validation vote threshold (default: bag majority)")

    p = sub.add_parser("stats", help="print dataset statistics and identities")
    p.add_argument("--dataset", required=True)

    p = sub.add_parser("serve", help="run the analysis HTTP service")
    common(p)
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--cors-origin", default="*")

    return parser


def _gateway(args) -> Gateway:
    if getattr(args, "mock_scenario", None):
        return Gateway(scenario=mock_scenario_load(args.mock_scenario))
    return Gateway()


def _registry(args) -> ModelRegistry:
    return load_registry(getattr(args, "registry", None))


def _model_config(args, registry: ModelRegistry, model_id: str) -> ModelConfig:
    cfg = registry.get(model_id)
    if getattr(args, "mock_scenario", None):
        cfg = with_mock_provider(cfg)
    return cfg


def _cmd_inject(args) -> int:
    registry = _registry(args)
    gateway = _gateway(args)
    problems, solutions = io.load_problem_bank(args.problems)
    misconceptions = io.load_misconceptions(args.misconceptions)
    problem = problems[args.problem_id]
    mc = misconceptions[args.misconception_id]
    solution = solutions[args.problem_id].solutions[args.solution_index]
    injector = make_injector(
        _model_config(args, registry, args.model),
        _model_config(args, registry, args.judge_model),
        gateway,
    )
    outcome = injector(problem, solution, mc)
    print(outcome.kind)
    if outcome.kind == "injected":
        if args.out:
            Path(args.out).write_text(outcome.code, encoding="utf-8")
        else:
            print(outcome.code)
    elif outcome.kind == "rejected" and outcome.last_feedback:
        print(outcome.last_feedback, file=sys.stderr)
    return 0


def _cmd_genbench(args) -> int:
    registry = _registry(args)
    gateway = _gateway(args)
    cfg = benchgen.load_gen_config(args.config)
    misconceptions = io.load_misconceptions(args.misconceptions)
    problems, solutions = io.load_problem_bank(args.problems)
    bank = benchgen.problem_solution_bank(problems, solutions, cfg.problem_filter)
    if args.verify_runner:
        bank = benchgen.filter_verified(bank, args.verify_runner.split())

    audit_records: list[dict] = []
    injector = make_injector(
        _model_config(args, registry, args.model),
        _model_config(args, registry, args.judge_model),
        gateway,
        audit_sink=audit_records.append if args.audit else None,
    )
    result = benchgen.generate_dataset(
        list(misconceptions.values()), bank, cfg, injector, workers=args.workers
    )

    out_dir = Path(args.out_dir)
    io.save_dataset(result.dataset, out_dir, solutions)
    benchgen.save_genreport(result.report, out_dir / "genreport.json")
    if args.audit:
        with open(args.audit, "w", encoding="utf-8") as fh:
            for record in audit_records:
                fh.write(json.dumps(record) + "\n")

    violations = validate_dataset(result.dataset, cfg.bag_size_min, cfg.bag_size_max)
    for violation in violations:
        print(f"violation: {violation}", file=sys.stderr)
    print(json.dumps(result.report["failed_bags"]) if result.failures else "ok")
    return 1 if violations else 0


def _cmd_mine(args) -> int:
    registry = _registry(args)
    gateway = _gateway(args)
    dataset = io.load_dataset(args.dataset)
    records = miner.run_mining(
        dataset,
        args.mode,
        _model_config(args, registry, args.model),
        gateway,
        model_id=args.model,
        workers=args.workers,
    )
    miner.save_predictions(records, args.out)
    print(f"mined {len(records)} bags -> {args.out}")
    return 0


def _cmd_eval(args) -> int:
    registry = _registry(args)
    gateway = _gateway(args)
    dataset = io.load_dataset(args.dataset)
    predictions = miner.load_predictions(args.predictions)
    records = evaluate.evaluate_run(
        dataset,
        predictions,
        _model_config(args, registry, args.judge_model),
        gateway,
        threshold=args.threshold,
    )
    report = evaluate.build_report(records)
    evaluate.save_report(report, args.out)
    counts = report["counts"]
    print(
        "tp={tp} tn={tn} fp={fp} fn={fn}".format(**counts)
        + f" precision={report['precision']:.4f} recall={report['recall']:.4f}"
        + f" f1={report['f1']:.4f} accuracy={report['accuracy']:.4f}"
    )
    return 0


def _cmd_stats(args) -> int:
    dataset = io.load_dataset(args.dataset)
    stats = dataset.stats
    print(f"total_samples={stats.total_samples}")
    print(f"samples_exhibiting={stats.samples_exhibiting}")
    print(f"samples_clean={stats.samples_clean}")
    print(f"total_bags={stats.total_bags}")
    print(f"bags_with_misconception={stats.bags_with_misconception}")
    print(f"bags_correct_only={stats.bags_correct_only}")
    sample_identity = stats.total_samples == stats.samples_exhibiting + stats.samples_clean
    bag_identity = stats.total_bags == stats.bags_with_misconception + stats.bags_correct_only
    print(f"identity samples: total == exhibiting + clean: {sample_identity}")
    print(f"identity bags: total == labeled + correct_only: {bag_identity}")
    violations = validate_dataset(dataset)
    for violation in violations:
        print(f"violation: {violation}", file=sys.stderr)
    return 1 if violations or not (sample_identity and bag_identity) else 0


def _cmd_serve(args) -> int:
    from .server import serve

    registry = _registry(args)
    gateway = _gateway(args)
    serve(
        port=args.port,
        registry=registry,
        gateway=gateway,
        cors_origin=args.cors_origin,
        force_mock=bool(args.mock_scenario),
        host=args.host,
    )
    return 0


_COMMANDS = {
    "inject": _cmd_inject,
    "genbench": _cmd_genbench,
    "mine": _cmd_mine,
    "eval": _cmd_eval,
    "stats": _cmd_stats,
    "serve": _cmd_serve,
}


def cli_dispatch(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (McmineError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(cli_dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
