"""Versioned on-disk container for built indexes.

Layout (little-endian)::

    magic    6 bytes  b"CSRIDX"
    version  u16
    scheme   u8       1=tc 2=dual 3=grail
    seed     u64
    graph    32 bytes sha256 of the canonical graph text
    length   u64      payload byte count
    payload           zlib-compressed canonical JSON
"""

from __future__ import annotations

import json
import struct
import zlib

MAGIC = b"CSRIDX"
VERSION = 1
SCHEME_IDS = {"tc": 1, "dual": 2, "grail": 3}
_HEADER = struct.Struct("<6sHBQ32sQ")


class ContainerError(ValueError):
    pass


def pack(scheme: str, seed: int, graph_sha256: str, payload: dict) -> bytes:
    body = zlib.compress(
        json.dumps(payload, sort_keys=True, separators=(",", ":")).encode(), 9)
    header = _HEADER.pack(MAGIC, VERSION, SCHEME_IDS[scheme], seed,
                          bytes.fromhex(graph_sha256), len(body))
    return header + body


def unpack(data: bytes, expect_graph_sha256: str | None = None) -> tuple[str, int, dict]:
    if len(data) < _HEADER.size:
        raise ContainerError("truncated index file")
    magic, version, scheme_id, seed, digest, length = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise ContainerError("not an index file (bad magic)")
    if version != VERSION:
        raise ContainerError(f"unsupported index version {version}")
    names = {v: k for k, v in SCHEME_IDS.items()}
    if scheme_id not in names:
        raise ContainerError(f"unknown scheme id {scheme_id}")
    if expect_graph_sha256 is not None and digest.hex() != expect_graph_sha256:
        raise ContainerError("index was built for a different graph")
    body = data[_HEADER.size:_HEADER.size + length]
    if len(body) != length:
        raise ContainerError("truncated index payload")
    return names[scheme_id], seed, json.loads(zlib.decompress(body))
