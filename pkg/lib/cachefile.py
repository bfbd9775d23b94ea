"""Binary files: VGC1 virtual code caches and STR1 strata checkpoints.

VGC1: b"VGC1", n (u8), code count (u64 LE), then per code a gene count (u8)
followed by one u64 LE mask per gene.

STR1: b"STR1", n (u8), next dimension level to expand (u8, 0 once the run is
complete), signature count (u64 LE), then per signature one wall sign per
2 bits (0 -> '0', 1 -> '+', 2 -> '-'), wall k at bits 2k..2k+1, padded to whole
bytes.
"""

import os
import struct
from pathlib import Path
from typing import BinaryIO, Iterable, Iterator

from lib.errors import CacheFormatError, PreconditionError
from lib.genetic import GeneticCode

VGC_MAGIC = b"VGC1"
STR_MAGIC = b"STR1"

_HEADER = struct.Struct("<4sBQ")
_STR_HEADER = struct.Struct("<4sBBQ")


def _read_exact(fh: BinaryIO, size: int, what: str) -> bytes:
    data = fh.read(size)
    if len(data) != size:
        raise CacheFormatError(f"truncated file while reading {what}")
    return data


def _read_header(fh: BinaryIO, magic: bytes) -> tuple[int, int]:
    found, n, count = _HEADER.unpack(_read_exact(fh, _HEADER.size, "header"))
    if found != magic:
        raise CacheFormatError(f"bad magic {found!r}, expected {magic!r}")
    return n, count


def _replace_atomically(path: Path, payload_writer) -> int:
    tmp = path.with_name(path.name + ".tmp")
    try:
        with open(tmp, "wb") as fh:
            count = payload_writer(fh)
    except BaseException:
        tmp.unlink(missing_ok=True)
        raise
    os.replace(tmp, path)
    return count


# ---------------------------------------------------------------------------
# VGC1
# ---------------------------------------------------------------------------

def write_codes(path: str | Path, n: int, codes: Iterable[GeneticCode]) -> int:
    """Stream `codes` to a VGC1 file; the count is patched into the header at the end."""

    def payload(fh: BinaryIO) -> int:
        fh.write(_HEADER.pack(VGC_MAGIC, n, 0))
        count = 0
        for code in codes:
            if code.n != n:
                raise PreconditionError(f"code of type {code.n} in a type-{n} cache")
            fh.write(struct.pack(f"<B{len(code)}Q", len(code), *code.genes))
            count += 1
        fh.seek(5)
        fh.write(struct.pack("<Q", count))
        return count

    return _replace_atomically(Path(path), payload)


def read_codes_header(path: str | Path) -> tuple[int, int]:
    with open(path, "rb") as fh:
        return _read_header(fh, VGC_MAGIC)


def read_codes(path: str | Path) -> Iterator[GeneticCode]:
    with open(path, "rb") as fh:
        n, count = _read_header(fh, VGC_MAGIC)
        for _ in range(count):
            (size,) = _read_exact(fh, 1, "gene count")
            genes = struct.unpack(f"<{size}Q", _read_exact(fh, 8 * size, "genes"))
            try:
                yield GeneticCode(n, genes)
            except PreconditionError as exc:
                raise CacheFormatError(f"invalid code in cache: {exc}") from exc
        if fh.read(1):
            raise CacheFormatError("trailing data after the last code")


# ---------------------------------------------------------------------------
# STR1
# ---------------------------------------------------------------------------

_TRIT = {0: 0, 1: 1, -1: 2}
_SIGN = {0: 0, 1: 1, 2: -1}


def wall_count(n: int) -> int:
    return (1 << (n - 1)) - 1 if n >= 1 else 0


def pack_signs(signs: tuple[int, ...]) -> bytes:
    word = 0
    for k, s in enumerate(signs):
        word |= _TRIT[s] << (2 * k)
    return word.to_bytes(-(-2 * len(signs) // 8), "little")


def unpack_signs(data: bytes, walls: int) -> tuple[int, ...]:
    word = int.from_bytes(data, "little")
    try:
        return tuple(_SIGN[word >> (2 * k) & 3] for k in range(walls))
    except KeyError as exc:
        raise CacheFormatError("invalid trit in strata checkpoint") from exc


def write_strata(path: str | Path, n: int, signatures: Iterable[tuple[int, ...]], level: int = 0) -> int:
    """Checkpoint `signatures`; `level` is the next dimension to expand (0 when done)."""
    walls = wall_count(n)
    items = list(signatures)
    if not 0 <= level <= n:
        raise PreconditionError(f"checkpoint level {level} outside 0..{n}")

    def payload(fh: BinaryIO) -> int:
        fh.write(_STR_HEADER.pack(STR_MAGIC, n, level, len(items)))
        for signs in items:
            if len(signs) != walls:
                raise PreconditionError(f"signature with {len(signs)} walls, n={n} has {walls}")
            fh.write(pack_signs(signs))
        return len(items)

    return _replace_atomically(Path(path), payload)


def read_strata(path: str | Path) -> tuple[int, int, list[tuple[int, ...]]]:
    """(n, next level, signatures) of an STR1 checkpoint."""
    with open(path, "rb") as fh:
        found, n, level, count = _STR_HEADER.unpack(_read_exact(fh, _STR_HEADER.size, "header"))
        if found != STR_MAGIC:
            raise CacheFormatError(f"bad magic {found!r}, expected {STR_MAGIC!r}")
        if level > n:
            raise CacheFormatError(f"checkpoint level {level} exceeds n={n}")
        walls = wall_count(n)
        width = -(-2 * walls // 8)
        out = [unpack_signs(_read_exact(fh, width, "signature"), walls) for _ in range(count)]
        if fh.read(1):
            raise CacheFormatError("trailing data after the last signature")
    return n, level, out
