"""Command-line front end: select, ablate, synth, inspect.

Exit codes: 0 success, 2 bad arguments, 3 track error, 4 selection error.
Every failure prints exactly one line to stderr prefixed "error: ". Report
and manifest files are byte-deterministic for fixed inputs and flags.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from pathlib import Path

from . import synth as synth_mod
from .errors import SelectionError, TrackError
from .audio_diversity import DiversityMetricKind
from .motion_spectral import SpectralConfig
from .selector import (
    SelectionConfig,
    SelectionReport,
    StrategyKind,
    dumps_deterministic,
    report_to_json,
    run_strategy,
)
from .track_store import (
    AudioFeatureTrack,
    LandmarkTrack,
    TrackKind,
    load_track,
    read_sidecar,
    save_track,
    write_sidecar,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_TRACK = 3
EXIT_SELECTION = 4

_METRICS = {kind.value: kind for kind in DiversityMetricKind}
_STRATEGIES = {kind.value: kind for kind in StrategyKind}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # single "error: ..." line instead of argparse's usage dump
    def error(self, message):
        raise _UsageError(message)


def _threads_arg(value: str) -> int:
    if value == "auto":
        return min(8, os.cpu_count() or 1)
    n = int(value)
    if n < 1:
        raise ValueError("threads must be >= 1")
    return n


def _add_selection_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--segment-len", type=float, default=5.0, metavar="S")
    parser.add_argument("--stride", type=float, default=1.0, metavar="S")
    parser.add_argument("--top-m", type=int, default=5, metavar="M")
    parser.add_argument("--hf-threshold", type=float, default=0.25, metavar="F")
    parser.add_argument("--w-lip", type=float, default=0.5, metavar="W")
    parser.add_argument("--w-pose", type=float, default=0.5, metavar="W")
    parser.add_argument(
        "--metric", choices=sorted(_METRICS), default="pairwise-euclidean"
    )
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--threads", type=_threads_arg, default="auto", metavar="N|auto")


def _config_from_args(args, strategy: StrategyKind) -> SelectionConfig:
    return SelectionConfig(
        segment_len_s=args.segment_len,
        stride_s=args.stride,
        top_m=args.top_m,
        diversity_metric=_METRICS[args.metric],
        spectral=SpectralConfig(hf_threshold=args.hf_threshold),
        w_lip=args.w_lip,
        w_pose=args.w_pose,
        strategy=strategy,
        seed=args.seed,
    )


def _load_pair(audio_path: str, landmark_path: str) -> tuple[AudioFeatureTrack, LandmarkTrack]:
    audio = load_track(audio_path)
    landmarks = load_track(landmark_path)
    if audio.header.kind != TrackKind.AUDIO_FEATURES:
        raise TrackError(f"{audio_path} does not hold audio features")
    if landmarks.header.kind != TrackKind.LANDMARKS_2D:
        raise TrackError(f"{landmark_path} does not hold 2-D landmarks")
    return audio, landmarks


def _print_timings(report: SelectionReport) -> None:
    t = report.timings
    print(
        "timing: candidates={:.1f}ms diversity={:.1f}ms spectral={:.1f}ms total={:.1f}ms".format(
            t["candidates_ms"], t["diversity_ms"], t["spectral_ms"], t["total_ms"]
        ),
        file=sys.stderr,
    )


def _manifest_dict(report: SelectionReport, audio_path: str, landmark_path: str, report_path: str) -> dict:
    source = None
    for track_path in (audio_path, landmark_path):
        meta = read_sidecar(track_path)
        if meta and meta.get("source"):
            source = meta["source"]
            break
    chosen = report.chosen
    fps = chosen.len_frames / (chosen.end_s - chosen.start_s)
    return {
        "source_media": source,
        "start_s": chosen.start_s,
        "end_s": chosen.end_s,
        "fps": fps,
        "report_path": report_path,
    }


def _cmd_select(args) -> int:
    try:
        audio, landmarks = _load_pair(args.audio_track, args.landmark_track)
    except (OSError, TrackError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TRACK
    try:
        cfg = _config_from_args(args, _STRATEGIES[args.strategy])
        report = run_strategy(audio, landmarks, cfg, threads=args.threads)
    except SelectionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SELECTION
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        Path(args.out).write_text(report_to_json(report))
        manifest = _manifest_dict(report, args.audio_track, args.landmark_track, args.out)
        Path(args.manifest).write_text(dumps_deterministic(manifest))
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TRACK
    _print_timings(report)
    return EXIT_OK


def _cmd_ablate(args) -> int:
    names = [s.strip() for s in args.strategies.split(",") if s.strip()]
    if not names:
        print("error: empty strategy list", file=sys.stderr)
        return EXIT_USAGE
    unknown = [s for s in names if s not in _STRATEGIES]
    if unknown:
        print(f"error: unknown strategy {unknown[0]!r}", file=sys.stderr)
        return EXIT_USAGE
    if args.seeds < 1:
        print("error: --seeds must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    if (args.plant_start is None) != (args.plant_len is None):
        print("error: --plant-start and --plant-len go together", file=sys.stderr)
        return EXIT_USAGE

    try:
        audio, landmarks = _load_pair(args.audio_track, args.landmark_track)
    except (OSError, TrackError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TRACK

    lines = [synth_mod.ABLATION_CSV_HEADER]
    try:
        for name in names:
            strategy = _STRATEGIES[name]
            seeds = range(args.seeds) if strategy == StrategyKind.RANDOM else [0]
            base_cfg = _config_from_args(args, strategy)
            for seed in seeds:
                cfg = dataclasses.replace(base_cfg, seed=seed)
                report = run_strategy(audio, landmarks, cfg, threads=args.threads)
                lines.append(
                    synth_mod.ablation_csv_row(
                        name, seed, report, args.plant_start, args.plant_len
                    )
                )
    except SelectionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SELECTION
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        Path(args.out).write_text("\n".join(lines) + "\n")
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TRACK
    return EXIT_OK


def _cmd_synth(args) -> int:
    try:
        raw = json.loads(Path(args.spec).read_text())
        spec = synth_mod.spec_from_dict(raw)
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    audio, landmarks = synth_mod.generate_tracks(spec)
    out_dir = Path(args.out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        audio_path = out_dir / "audio.ftrk"
        landmark_path = out_dir / "landmarks.ftrk"
        save_track(audio, audio_path)
        save_track(landmarks, landmark_path)
        write_sidecar(audio_path, source=None, extractor="synth")
        write_sidecar(landmark_path, source=None, extractor="synth")
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TRACK
    print(str(audio_path))
    print(str(landmark_path))
    return EXIT_OK


def _cmd_inspect(args) -> int:
    try:
        track = load_track(args.track)
    except (OSError, TrackError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TRACK
    data = track.data.astype("float64")
    stats = {
        "min": data.min(axis=0).tolist(),
        "max": data.max(axis=0).tolist(),
        "mean": data.mean(axis=0).tolist(),
    }
    info = {
        "path": args.track,
        "kind": track.header.kind.name.lower(),
        "version": track.header.version,
        "fps": track.header.fps,
        "frame_count": track.header.frame_count,
        "dim": track.header.dim,
        "stats": stats,
    }
    print(dumps_deterministic(info), end="")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="isexplore", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_select = sub.add_parser("select", help="pick the most informative segment")
    p_select.add_argument("audio_track")
    p_select.add_argument("landmark_track")
    _add_selection_flags(p_select)
    p_select.add_argument("--strategy", choices=sorted(_STRATEGIES), default="isexplore")
    p_select.add_argument("--out", default="./isexplore_report.json")
    p_select.add_argument("--manifest", default="./segment.json")
    p_select.set_defaults(func=_cmd_select)

    p_ablate = sub.add_parser("ablate", help="run strategy variants, emit CSV")
    p_ablate.add_argument("audio_track")
    p_ablate.add_argument("landmark_track")
    _add_selection_flags(p_ablate)
    p_ablate.add_argument("--strategies", required=True, metavar="A,B,...")
    p_ablate.add_argument("--seeds", type=int, default=1, metavar="N")
    p_ablate.add_argument("--plant-start", type=float, default=None, metavar="S")
    p_ablate.add_argument("--plant-len", type=float, default=None, metavar="S")
    p_ablate.add_argument("--out", default="./ablation.csv")
    p_ablate.set_defaults(func=_cmd_ablate)

    p_synth = sub.add_parser("synth", help="generate a synthetic track pair")
    p_synth.add_argument("spec", help="SynthSpec JSON file")
    p_synth.add_argument("--out-dir", default=".")
    p_synth.set_defaults(func=_cmd_synth)

    p_inspect = sub.add_parser("inspect", help="print header and per-dimension stats")
    p_inspect.add_argument("track")
    p_inspect.set_defaults(func=_cmd_inspect)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return args.func(args)


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
