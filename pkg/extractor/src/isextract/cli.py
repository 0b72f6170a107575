"""Extractor CLI: isextract extract <video> --out-dir <dir>.

Exit codes: 0 success, 2 bad arguments, 3 extraction error. Every failure
prints exactly one "error: ..." line to stderr.
"""

from __future__ import annotations

import argparse
import sys

from .errors import ExtractionError
from .extractor import AUDIO_BACKENDS, ExtractorConfig, extract

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_EXTRACTION = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="isextract", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("extract", help="write audio.ftrk and landmarks.ftrk for a video")
    p.add_argument("video")
    p.add_argument("--out-dir", default=".")
    p.add_argument("--audio-backend", choices=AUDIO_BACKENDS, default="baseline")
    p.add_argument("--target-fps", type=float, default=None)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = ExtractorConfig(audio_backend=args.audio_backend, target_fps=args.target_fps)
    except (_UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        result = extract(args.video, args.out_dir, cfg)
    except (OSError, ExtractionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EXTRACTION
    stats = result["landmark_stats"]
    print(result["audio"])
    print(result["landmarks"])
    if stats.failed_frames:
        print(
            f"warning: {stats.failed_frames}/{stats.frame_count} frames "
            f"forward-filled ({stats.leading_backfilled} backfilled at the start)",
            file=sys.stderr,
        )
    return EXIT_OK


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
