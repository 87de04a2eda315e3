"""Greyscale raster I/O: ASCII/binary PGM (P2/P5) and 8/16-bit PNG."""

from __future__ import annotations

import os

import numpy as np

from .grid import GridImage

__all__ = ["RasterFormatError", "read_image", "write_raster"]


class RasterFormatError(ValueError):
    """Raised when a file is not a readable greyscale raster."""


def _pgm_tokens(data: bytes):
    """Yield whitespace-separated header tokens, skipping # comments."""
    i = 0
    n = len(data)
    while i < n:
        c = data[i : i + 1]
        if c in b" \t\r\n":
            i += 1
            continue
        if c == b"#":
            while i < n and data[i : i + 1] not in b"\r\n":
                i += 1
            continue
        j = i
        while j < n and data[j : j + 1] not in b" \t\r\n":
            j += 1
        yield data[i:j], j
        i = j


def _read_pgm(data: bytes) -> GridImage:
    toks = _pgm_tokens(data)
    try:
        magic, _ = next(toks)
        w_tok, _ = next(toks)
        h_tok, _ = next(toks)
        mv_tok, end = next(toks)
        width, height, maxval = int(w_tok), int(h_tok), int(mv_tok)
    except (StopIteration, ValueError) as exc:
        raise RasterFormatError("malformed PGM header") from exc
    if width <= 0 or height <= 0 or not (0 < maxval < 65536):
        raise RasterFormatError("bad PGM dimensions or maxval")
    count = width * height
    if magic == b"P2":
        try:
            vals = np.array(data[end:].split(), dtype=np.int64)
        except ValueError as exc:
            raise RasterFormatError("bad ASCII PGM samples") from exc
        if vals.shape[0] != count:
            raise RasterFormatError("ASCII PGM sample count mismatch")
    elif magic == b"P5":
        # exactly one whitespace byte separates the header from the samples
        start = end + 1
        if maxval > 255:
            raw = data[start : start + 2 * count]
            if len(raw) != 2 * count:
                raise RasterFormatError("binary PGM truncated")
            vals = np.frombuffer(raw, dtype=">u2").astype(np.int64)
        else:
            raw = data[start : start + count]
            if len(raw) != count:
                raise RasterFormatError("binary PGM truncated")
            vals = np.frombuffer(raw, dtype=np.uint8).astype(np.int64)
    else:
        raise RasterFormatError(f"unsupported PGM magic {magic!r}")
    if vals.max(initial=0) > maxval:
        raise RasterFormatError("PGM sample exceeds maxval")
    depth = 255 if maxval <= 255 else 65535
    return GridImage(width, height, vals, maxval=depth)


def _read_png(path: str) -> GridImage:
    from PIL import Image

    with Image.open(path) as im:
        if im.mode == "L":
            arr = np.asarray(im, dtype=np.int64)
            depth = 255
        elif im.mode in ("I;16", "I;16B", "I"):
            arr = np.asarray(im, dtype=np.int64)
            if arr.max(initial=0) > 65535 or arr.min(initial=0) < 0:
                raise RasterFormatError("PNG samples exceed 16-bit range")
            depth = 65535
        else:
            raise RasterFormatError(f"unsupported PNG mode {im.mode!r} (greyscale only)")
    return GridImage(arr.shape[1], arr.shape[0], arr, maxval=depth)


def read_image(path: str) -> GridImage:
    """Read a greyscale raster; format detected from the file content."""
    with open(path, "rb") as fh:
        head = fh.read(2)
    if head in (b"P2", b"P5"):
        with open(path, "rb") as fh:
            return _read_pgm(fh.read())
    if head == b"\x89P":
        return _read_png(path)
    raise RasterFormatError(f"{os.path.basename(path)}: not a PGM or PNG greyscale raster")


def write_raster(path: str, width: int, height: int, values, maxval: int = 65535) -> None:
    """Write values as 16-bit (default) or 8-bit PGM, or PNG by extension.

    Output bytes are a pure function of the arguments, so repeated runs are
    byte-identical.
    """
    arr = np.asarray(values, dtype=np.int64).ravel()
    if arr.shape[0] != width * height:
        raise ValueError("value count does not match dimensions")
    if arr.size and (arr.min() < 0 or arr.max() > maxval):
        raise ValueError(f"values outside [0, {maxval}]")
    if maxval not in (255, 65535):
        raise ValueError("maxval must be 255 or 65535")
    if path.lower().endswith(".png"):
        from PIL import Image

        if maxval == 255:
            im = Image.fromarray(arr.astype(np.uint8).reshape(height, width), mode="L")
        else:
            im = Image.fromarray(arr.astype(np.uint16).reshape(height, width))
        im.save(path, format="PNG")
        return
    header = f"P5\n{width} {height}\n{maxval}\n".encode("ascii")
    if maxval == 255:
        payload = arr.astype(">u1").tobytes()
    else:
        payload = arr.astype(">u2").tobytes()
    with open(path, "wb") as fh:
        fh.write(header + payload)
