"""
Command-line entry point.

    savnet synth --out DIR --seed N
    savnet features --wav F --out CSV
    savnet train --config FILE --manifest CSV --dict CSV --out CKPT
    savnet eval --ckpt CKPT --manifest CSV --dict CSV --task zs|gzs|seen --report CSV
    savnet viz --ckpt CKPT --wav F --out DIR
    savnet experiment --manifest CSV --dict CSV --out CSV [--seeds 0 1 2]

Exit codes: 0 success, 1 usage error (bad flag, missing input file),
2 runtime error.
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from src.errors import SavnetError
from src.tasks import (
    evaluate_task,
    experiment_task,
    features_task,
    synth_task,
    train_task,
    visualize_task,
)
from src.tasks.experiment import LOSS_PRESETS

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_RUNTIME = 2


class UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="savnet",
        description="Zero-shot sound event classification with sound attribute vectors",
    )
    parser.add_argument("--verbose", action="store_true", help="Enable debug logging")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    synth = commands.add_parser("synth", help="Render the synthetic seen/unseen corpus")
    synth.add_argument("--out", required=True, help="Corpus output directory")
    synth.add_argument("--seed", type=int, default=0, help="Corpus seed (default: 0)")
    synth.add_argument("--n-seen", type=int, default=12, help="Seen classes (default: 12)")
    synth.add_argument("--n-unseen", type=int, default=4, help="Unseen classes (default: 4)")
    synth.add_argument("--per-class", type=int, default=40, help="Clips per class (default: 40)")

    features = commands.add_parser("features", help="Dump the log-mel spectrogram of a WAV as CSV")
    features.add_argument("--wav", required=True, help="Input WAV file")
    features.add_argument("--out", required=True, help="Output CSV")

    train = commands.add_parser("train", help="Train a model on the train split")
    train.add_argument("--config", required=True, help="key = value training config")
    train.add_argument("--manifest", required=True, help="Corpus manifest CSV")
    train.add_argument("--dict", required=True, dest="dictionary", help="Class dictionary CSV")
    train.add_argument("--out", required=True, help="Checkpoint destination")

    evaluate = commands.add_parser("eval", help="Evaluate a checkpoint on the test split")
    evaluate.add_argument("--ckpt", required=True, help="Checkpoint file")
    evaluate.add_argument("--manifest", required=True, help="Corpus manifest CSV")
    evaluate.add_argument("--dict", required=True, dest="dictionary", help="Class dictionary CSV")
    evaluate.add_argument(
        "--task", default="zs", choices=["zs", "gzs", "seen"], help="Evaluation protocol"
    )
    evaluate.add_argument("--report", help="Per-class report CSV destination")
    evaluate.add_argument(
        "--branch", default="global", choices=["global", "local"], help="Attribute score branch"
    )

    viz = commands.add_parser("viz", help="Export similarity maps of one clip")
    viz.add_argument("--ckpt", required=True, help="Checkpoint file")
    viz.add_argument("--wav", required=True, help="Input WAV file")
    viz.add_argument("--out", required=True, help="Output directory")

    experiment = commands.add_parser("experiment", help="Compare loss configurations over seeds")
    experiment.add_argument("--manifest", required=True, help="Corpus manifest CSV")
    experiment.add_argument("--dict", required=True, dest="dictionary", help="Class dictionary CSV")
    experiment.add_argument("--out", required=True, help="Results CSV destination")
    experiment.add_argument("--config", help="Base training config (loss and seed are overridden)")
    experiment.add_argument(
        "--seeds", type=int, nargs="+", default=[0, 1, 2], help="Seeds (default: 0 1 2)"
    )
    experiment.add_argument(
        "--losses", nargs="+", default=list(LOSS_PRESETS), choices=LOSS_PRESETS, help="Loss presets"
    )

    return parser


# command -> argument names that must point to existing files
_INPUTS = {
    "features": ("wav",),
    "train": ("config", "manifest", "dictionary"),
    "eval": ("ckpt", "manifest", "dictionary"),
    "viz": ("ckpt", "wav"),
    "experiment": ("manifest", "dictionary", "config"),
}


def _check_inputs(args: argparse.Namespace) -> None:
    for name in _INPUTS.get(args.command, ()):
        value = getattr(args, name)
        if value is not None and not Path(value).is_file():
            raise UsageError(f"savnet {args.command}: input file not found: {value}")


def _run(args: argparse.Namespace) -> None:
    if args.command == "synth":
        corpus = synth_task(
            args.out,
            seed=args.seed,
            n_seen=args.n_seen,
            n_unseen=args.n_unseen,
            per_class=args.per_class,
        )
        print(f"clips={len(corpus.rows)} classes={len(corpus.dictionary)}")
    elif args.command == "features":
        mel = features_task(args.wav, args.out)
        print(f"features={args.out} shape={'x'.join(str(d) for d in mel.values.shape)}")
    elif args.command == "train":
        train_task(
            args.config,
            args.manifest,
            args.dictionary,
            args.out,
            on_epoch=lambda epoch, loss: print(f"epoch={epoch} loss={loss:.6f}", flush=True),
        )
    elif args.command == "eval":
        report = evaluate_task(
            args.ckpt,
            args.manifest,
            args.dictionary,
            task=args.task,
            report=args.report,
            branch=args.branch,
        )
        sys.stdout.write(report.to_text())
    elif args.command == "viz":
        entries = visualize_task(args.ckpt, args.wav, args.out)
        print(f"maps={len(entries)} out={args.out}")
    elif args.command == "experiment":
        experiment_task(
            args.manifest,
            args.dictionary,
            args.out,
            seeds=args.seeds,
            losses=args.losses,
            config_path=args.config,
        )
        print(f"results={args.out}")


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        print(e, file=sys.stderr)
        return EXIT_USAGE

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    )

    try:
        _check_inputs(args)
        _run(args)
    except UsageError as e:
        print(e, file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as e:
        print(f"savnet {args.command}: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (SavnetError, OSError) as e:
        print(f"savnet {args.command}: {e}", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
