"""Minimal RIFF/AVI support: an MJPG+PCM muxer and a PCM audio demuxer.

This environment ships no standalone ffmpeg, so the adapter supports one
well-defined container natively: AVI with MJPG video and little-endian PCM
audio. OpenCV decodes the video stream; the audio stream is parsed here.
The muxer exists so tests can render reference clips with a real audio
track.
"""

from __future__ import annotations

import struct
from pathlib import Path

import cv2
import numpy as np

from .errors import DecodeError, NoAudioStreamError

AVIF_HASINDEX = 0x10
AVIF_ISINTERLEAVED = 0x100
AVIIF_KEYFRAME = 0x10


def _chunk(fourcc: bytes, payload: bytes) -> bytes:
    pad = b"\x00" if len(payload) % 2 else b""
    return fourcc + struct.pack("<I", len(payload)) + payload + pad


def _list(list_type: bytes, payload: bytes) -> bytes:
    return _chunk(b"LIST", list_type + payload)


def _video_strl(width: int, height: int, fps: float, n_frames: int) -> bytes:
    strh = struct.pack(
        "<4s4sIHHIIIIIIiI4H",
        b"vids", b"MJPG", 0, 0, 0, 0,
        1000, round(fps * 1000),  # rate/scale = fps
        0, n_frames, 0, -1, 0,
        0, 0, width, height,
    )
    strf = struct.pack(
        "<IiiHH4sIiiII",
        40, width, height, 1, 24, b"MJPG", width * height * 3, 0, 0, 0, 0,
    )
    return _list(b"strl", _chunk(b"strh", strh) + _chunk(b"strf", strf))


def _audio_strl(sample_rate: int, channels: int, n_samples: int) -> bytes:
    block_align = channels * 2  # 16-bit PCM
    strh = struct.pack(
        "<4s4sIHHIIIIIIiI4H",
        b"auds", b"\x00\x00\x00\x00", 0, 0, 0, 0,
        1, sample_rate,
        0, n_samples, 0, -1, block_align,
        0, 0, 0, 0,
    )
    strf = struct.pack(
        "<HHIIHH",
        1, channels, sample_rate, sample_rate * block_align, block_align, 16,
    )
    return _list(b"strl", _chunk(b"strh", strh) + _chunk(b"strf", strf))


def write_avi(
    path,
    frames,
    fps: float,
    audio: np.ndarray | None = None,
    sample_rate: int = 16000,
    jpeg_quality: int = 95,
) -> int:
    """Mux BGR frames (and optional int16 PCM) into an AVI; returns the frame
    count. Audio is interleaved one chunk per video frame."""
    encoded = []
    size = None
    for frame in frames:
        if size is None:
            size = (frame.shape[1], frame.shape[0])
        ok, buf = cv2.imencode(".jpg", frame, [cv2.IMWRITE_JPEG_QUALITY, jpeg_quality])
        if not ok:
            raise DecodeError("JPEG encoding failed")
        encoded.append(buf.tobytes())
    if not encoded:
        raise ValueError("need at least one frame")
    n_frames = len(encoded)
    width, height = size

    pcm = None
    channels = 0
    if audio is not None:
        pcm = np.asarray(audio, dtype="<i2")
        if pcm.ndim == 1:
            pcm = pcm[:, None]
        channels = pcm.shape[1]

    headers = _video_strl(width, height, fps, n_frames)
    streams = 1
    if pcm is not None:
        headers += _audio_strl(sample_rate, channels, pcm.shape[0])
        streams = 2
    avih = struct.pack(
        "<IIIIIIIIII4I",
        round(1e6 / fps), 0, 0, AVIF_HASINDEX | AVIF_ISINTERLEAVED,
        n_frames, 0, streams, 0, width, height, 0, 0, 0, 0,
    )
    hdrl = _list(b"hdrl", _chunk(b"avih", avih) + headers)

    movi_payload = b""
    index = []

    def add(ckid: bytes, payload: bytes):
        nonlocal movi_payload
        index.append((ckid, 4 + len(movi_payload), len(payload)))
        movi_payload += _chunk(ckid, payload)

    for f, jpeg in enumerate(encoded):
        add(b"00dc", jpeg)
        if pcm is not None:
            lo = round(f * sample_rate / fps)
            hi = round((f + 1) * sample_rate / fps) if f < n_frames - 1 else pcm.shape[0]
            add(b"01wb", pcm[lo:hi].tobytes())

    movi = _list(b"movi", movi_payload)
    idx1 = _chunk(
        b"idx1",
        b"".join(
            ckid + struct.pack("<III", AVIIF_KEYFRAME, offset, length)
            for ckid, offset, length in index
        ),
    )
    body = b"AVI " + hdrl + movi + idx1
    Path(path).write_bytes(b"RIFF" + struct.pack("<I", len(body)) + body)
    return n_frames


def _iter_chunks(blob: bytes, start: int, end: int):
    pos = start
    while pos + 8 <= end:
        fourcc = blob[pos : pos + 4]
        (size,) = struct.unpack_from("<I", blob, pos + 4)
        payload_start = pos + 8
        payload_end = min(payload_start + size, end)
        yield fourcc, payload_start, payload_end
        pos = payload_start + size + (size % 2)


def _stream_headers(blob: bytes, start: int, end: int) -> list[tuple[bytes, bytes]]:
    streams = []
    for fourcc, s, e in _iter_chunks(blob, start, end):
        if fourcc == b"LIST" and blob[s : s + 4] == b"strl":
            fcc_type = b""
            strf = b""
            for sub, ss, se in _iter_chunks(blob, s + 4, e):
                if sub == b"strh":
                    fcc_type = blob[ss : ss + 4]
                elif sub == b"strf":
                    strf = blob[ss:se]
            streams.append((fcc_type, strf))
    return streams


def _collect_stream_data(blob: bytes, start: int, end: int, ckid_suffixes: tuple[bytes, ...], prefix: bytes, out: list):
    for fourcc, s, e in _iter_chunks(blob, start, end):
        if fourcc == b"LIST" and blob[s : s + 4] == b"rec ":
            _collect_stream_data(blob, s + 4, e, ckid_suffixes, prefix, out)
        elif fourcc[:2] == prefix and fourcc[2:] in ckid_suffixes:
            out.append(blob[s:e])


def read_avi_audio(path) -> tuple[np.ndarray, int]:
    """Decode the PCM audio stream of an AVI to mono float64 in [-1, 1].

    Raises NoAudioStreamError when the container has no audio stream and
    DecodeError for anything that is not an AVI with 16-bit PCM audio.
    """
    blob = Path(path).read_bytes()
    if len(blob) < 12 or blob[:4] != b"RIFF" or blob[8:12] != b"AVI ":
        raise DecodeError(f"{path} is not an AVI container")

    streams = []
    movi_span = None
    for fourcc, s, e in _iter_chunks(blob, 12, len(blob)):
        if fourcc != b"LIST":
            continue
        list_type = blob[s : s + 4]
        if list_type == b"hdrl":
            streams = _stream_headers(blob, s + 4, e)
        elif list_type == b"movi":
            movi_span = (s + 4, e)
    if not streams or movi_span is None:
        raise DecodeError("missing hdrl or movi list")

    audio_index = next((i for i, (t, _) in enumerate(streams) if t == b"auds"), None)
    if audio_index is None:
        raise NoAudioStreamError(f"{path} has no audio stream")
    strf = streams[audio_index][1]
    if len(strf) < 16:
        raise DecodeError("audio stream header too short")
    tag, channels, sample_rate, _, _, bits = struct.unpack_from("<HHIIHH", strf, 0)
    if tag != 1 or bits != 16 or channels < 1:
        raise DecodeError(f"unsupported audio format: tag={tag}, bits={bits}")

    prefix = f"{audio_index:02d}".encode()
    parts: list[bytes] = []
    _collect_stream_data(blob, movi_span[0], movi_span[1], (b"wb",), prefix, parts)
    raw = b"".join(parts)
    if len(raw) % (2 * channels):
        raise DecodeError("audio payload is not whole 16-bit frames")
    samples = np.frombuffer(raw, dtype="<i2").reshape(-1, channels)
    mono = samples.astype(np.float64).mean(axis=1) / 32768.0
    return mono, sample_rate


def iter_video_frames(path):
    """Yield decoded BGR frames; raises DecodeError if the file cannot open."""
    cap = cv2.VideoCapture(str(path))
    if not cap.isOpened():
        raise DecodeError(f"cannot open video {path}")
    try:
        while True:
            ok, frame = cap.read()
            if not ok:
                return
            yield frame
    finally:
        cap.release()


def video_fps(path) -> float:
    cap = cv2.VideoCapture(str(path))
    if not cap.isOpened():
        raise DecodeError(f"cannot open video {path}")
    fps = cap.get(cv2.CAP_PROP_FPS)
    cap.release()
    if fps <= 0:
        raise DecodeError(f"container reports no frame rate for {path}")
    return float(fps)
