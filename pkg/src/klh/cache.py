"""
On-disk cache of computed polynomial tables.

Layout, all integers little-endian::

    magic      4s   b"KLHC"
    format     H    FORMAT_VERSION
    version    B+s  length-prefixed package version
    type       c    b"A" or b"D"
    rank       H
    kind       c    b"P" or b"R"
    count      I    number of entries
    checksum   32s  sha256 of the payload
    payload         count * (y:I, w:I, ncoeffs:H, coeffs:ncoeffs*q)

y and w are indices into the group enumeration (by length, then one-line
notation). A cache from another package version is ignored; one for another
group is rejected; a corrupt one is dropped with a warning.
"""

from __future__ import annotations

import hashlib
import os
import struct
import warnings
from pathlib import Path
from typing import Iterable, Optional, Union

from . import __version__
from .groups import CoxeterContext
from .kl import KLTable, kl_table
from .polynomial import CoefficientOverflow, INT64_MAX

__all__ = [
    "CacheError", "StaleCache", "CacheMismatch", "CorruptCache",
    "CacheWarning", "FORMAT_VERSION", "cache_dir", "cache_path",
    "save_table", "load_entries", "load_into", "cached_kl_table",
]

MAGIC = b"KLHC"
FORMAT_VERSION = 1
_ENTRY = struct.Struct("<IIH")
PathLike = Union[str, os.PathLike]


class CacheError(Exception):
    pass


class StaleCache(CacheError):
    """Written by a different package or format version."""


class CacheMismatch(CacheError):
    """Written for a different group or table kind."""


class CorruptCache(CacheError):
    """Truncated, malformed, or failing its checksum."""


class CacheWarning(UserWarning):
    pass


def cache_dir() -> Optional[Path]:
    d = os.environ.get("KLH_CACHE_DIR")
    return Path(d) if d else None


def cache_path(context: CoxeterContext, kind: str = "P",
               directory: Optional[PathLike] = None) -> Optional[Path]:
    d = Path(directory) if directory is not None else cache_dir()
    if d is None:
        return None
    return d / f"kl-{kind}-{context}-v{__version__}.klc"


def _payload(entries: Iterable[tuple[int, int, tuple[int, ...]]]) -> tuple[int, bytes]:
    chunks = []
    count = 0
    for y, w, coeffs in entries:
        if any(abs(c) > INT64_MAX for c in coeffs):
            raise CoefficientOverflow(f"entry ({y}, {w}) does not fit in int64")
        chunks.append(_ENTRY.pack(y, w, len(coeffs)))
        chunks.append(struct.pack(f"<{len(coeffs)}q", *coeffs))
        count += 1
    return count, b"".join(chunks)


def _header(context: CoxeterContext, kind: str, count: int, digest: bytes,
            version: str = __version__) -> bytes:
    v = version.encode()
    return (MAGIC + struct.pack("<HB", FORMAT_VERSION, len(v)) + v
            + struct.pack("<cHcI", context.type.encode(), context.rank,
                          kind.encode(), count)
            + digest)


def save_table(table: KLTable, path: PathLike, kind: str = "P") -> Path:
    """Write every stored entry of one kind; the write is atomic."""
    path = Path(path)
    count, payload = _payload(table.entries(kind))
    data = _header(table.context, kind, count,
                   hashlib.sha256(payload).digest()) + payload
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_bytes(data)
    os.replace(tmp, path)
    return path


def load_entries(path: PathLike, context: CoxeterContext, kind: str = "P"):
    """Read and validate a cache file, returning its (y, w, coeffs) list."""
    data = Path(path).read_bytes()
    try:
        if data[:4] != MAGIC:
            raise CorruptCache(f"{path}: bad magic")
        fmt, vlen = struct.unpack_from("<HB", data, 4)
        off = 7
        version = data[off:off + vlen].decode()
        off += vlen
        if fmt != FORMAT_VERSION or version != __version__:
            raise StaleCache(f"{path}: written by version {version} "
                             f"(format {fmt}), this is {__version__}")
        t, rank, k, count = struct.unpack_from("<cHcI", data, off)
        off += struct.calcsize("<cHcI")
        digest = data[off:off + 32]
        off += 32
    except (struct.error, UnicodeDecodeError) as exc:
        raise CorruptCache(f"{path}: unreadable header ({exc})") from None
    if (t.decode(), rank) != (context.type, context.rank) or k.decode() != kind:
        raise CacheMismatch(f"{path}: holds {k.decode()} for "
                            f"{t.decode()}{rank}, wanted {kind} for {context}")
    payload = data[off:]
    if hashlib.sha256(payload).digest() != digest:
        raise CorruptCache(f"{path}: checksum mismatch")
    out = []
    pos = 0
    try:
        for _ in range(count):
            y, w, n = _ENTRY.unpack_from(payload, pos)
            pos += _ENTRY.size
            coeffs = struct.unpack_from(f"<{n}q", payload, pos)
            pos += 8 * n
            out.append((y, w, coeffs))
    except struct.error:
        raise CorruptCache(f"{path}: truncated payload") from None
    if pos != len(payload):
        raise CorruptCache(f"{path}: trailing bytes")
    return out


def load_into(table: KLTable, path: PathLike, kind: str = "P") -> int:
    entries = load_entries(path, table.context, kind)
    size = table.table.size
    if any(y >= size or w >= size for y, w, _ in entries):
        raise CacheMismatch(f"{path}: index outside {table.context}")
    table.load_entries(kind, entries)
    return len(entries)


def cached_kl_table(context: CoxeterContext,
                    path: Optional[PathLike] = None) -> KLTable:
    """The shared KL table of `context`, preloaded from a cache if one is usable.

    Any unusable cache is reported with a CacheWarning and ignored, so the
    caller falls back to computing.
    """
    table = kl_table(context)
    path = Path(path) if path is not None else cache_path(context)
    if path is None or not path.exists() or table.p_columns:
        return table
    try:
        load_into(table, path)
    except CacheError as exc:
        table.p_columns.clear()
        warnings.warn(f"ignoring cache: {exc}", CacheWarning, stacklevel=2)
    return table
