"""Binary containers for encodings, bases and coefficient sets.

All containers are little-endian: 4 magic bytes, a u32 format version,
fixed header fields, a row-major f64 payload, and a trailing CRC32 of all
preceding bytes. Next to every binary file a JSON mirror with the same
content (plus extended fit metadata) is written for debugging. The content
hash of an artifact is the SHA-256 of its canonical binary form.

    ACSB  subspace basis      header: n_bins, rank, method, iterations,
                              final_objective
    ACCF  coefficient sets    header: rank, n_objects, basis hash (raw);
                              per object: K_j, then rank*K_j f64
    ACEN  encoding corpus     header: n_bins, tau, max_depth,
                              min_region_area, n_objects; per object: id,
                              source dims, K, then per contour center,
                              depth, solidity and radii
"""

from __future__ import annotations

import hashlib
import json
import struct
import zlib
from pathlib import Path

import numpy as np

from .contours import HierarchicalEncoding, LocalContour
from .hierarchy import EncoderConfig
from .subspace import METHOD_FMS, METHOD_SVD, CoefficientSet, SubspaceBasis

FORMAT_VERSION = 1
_METHOD_CODE = {METHOD_SVD: 0, METHOD_FMS: 1}
_CODE_METHOD = {v: k for k, v in _METHOD_CODE.items()}


class SerializationError(ValueError):
    pass


def _finish(payload: bytearray) -> bytes:
    payload += struct.pack("<I", zlib.crc32(bytes(payload)) & 0xFFFFFFFF)
    return bytes(payload)


class _Cursor:
    def __init__(self, blob: bytes, path: str):
        self.blob = blob
        self.pos = 0
        self.path = path

    def take(self, fmt: str):
        size = struct.calcsize(fmt)
        if self.pos + size > len(self.blob) - 4:
            raise SerializationError(f"{self.path}: truncated container")
        vals = struct.unpack_from(fmt, self.blob, self.pos)
        self.pos += size
        return vals if len(vals) > 1 else vals[0]

    def take_bytes(self, n: int) -> bytes:
        if self.pos + n > len(self.blob) - 4:
            raise SerializationError(f"{self.path}: truncated container")
        out = self.blob[self.pos:self.pos + n]
        self.pos += n
        return out

    def take_f64(self, count: int) -> np.ndarray:
        raw = self.take_bytes(count * 8)
        return np.frombuffer(raw, dtype="<f8").copy()


def _open(blob: bytes, magic: bytes, path: str) -> _Cursor:
    if len(blob) < 12 or blob[:4] != magic:
        raise SerializationError(f"{path}: bad magic, expected {magic!r}")
    stored = struct.unpack_from("<I", blob, len(blob) - 4)[0]
    if zlib.crc32(blob[:-4]) & 0xFFFFFFFF != stored:
        raise SerializationError(f"{path}: CRC mismatch, file corrupt")
    cur = _Cursor(blob, path)
    cur.pos = 4
    version = cur.take("<I")
    if version != FORMAT_VERSION:
        raise SerializationError(f"{path}: unsupported version {version}")
    return cur


def content_hash(blob: bytes) -> str:
    return hashlib.sha256(blob).hexdigest()


def _write(path, blob: bytes, mirror: dict) -> None:
    path = Path(path)
    path.write_bytes(blob)
    path.with_suffix(".json").write_text(
        json.dumps(mirror, indent=2, sort_keys=True) + "\n"
    )


# -- basis (ACSB) ------------------------------------------------------------

def basis_to_bytes(basis: SubspaceBasis) -> bytes:
    meta = basis.fit_metadata
    blob = bytearray(b"ACSB")
    blob += struct.pack(
        "<IIIIId",
        FORMAT_VERSION,
        basis.n_bins,
        basis.rank,
        _METHOD_CODE[basis.method],
        int(meta.get("iterations", 0)),
        float(meta.get("final_objective", 0.0)),
    )
    blob += np.ascontiguousarray(basis.basis, dtype="<f8").tobytes()
    return _finish(blob)


def basis_hash(basis: SubspaceBasis) -> str:
    return content_hash(basis_to_bytes(basis))


def save_basis(basis: SubspaceBasis, path) -> str:
    blob = basis_to_bytes(basis)
    mirror = {
        "format": "ACSB",
        "version": FORMAT_VERSION,
        "n_bins": basis.n_bins,
        "rank": basis.rank,
        "method": basis.method,
        "fit_metadata": basis.fit_metadata,
        "content_hash": content_hash(blob),
        "basis": basis.basis.tolist(),
    }
    _write(path, blob, mirror)
    return content_hash(blob)


def load_basis(path) -> SubspaceBasis:
    path = Path(path)
    cur = _open(path.read_bytes(), b"ACSB", str(path))
    n_bins, rank, method_code, iterations = cur.take("<IIII")
    final_obj = cur.take("<d")
    if method_code not in _CODE_METHOD:
        raise SerializationError(f"{path}: unknown method code {method_code}")
    u = cur.take_f64(n_bins * rank).reshape(n_bins, rank)
    meta = {"iterations": iterations, "final_objective": final_obj}
    return SubspaceBasis(u, _CODE_METHOD[method_code], meta)


# -- coefficient sets (ACCF) -------------------------------------------------

def coefficients_to_bytes(coeffs: CoefficientSet) -> bytes:
    if len(coeffs.basis_hash) != 64:
        raise SerializationError("coefficient set needs a sha256 basis hash")
    blob = bytearray(b"ACCF")
    blob += struct.pack("<III", FORMAT_VERSION, coeffs.rank, coeffs.n_objects)
    blob += bytes.fromhex(coeffs.basis_hash)
    for omega in coeffs.coefficients:
        blob += struct.pack("<I", omega.shape[1])
        blob += np.ascontiguousarray(omega, dtype="<f8").tobytes()
    return _finish(blob)


def save_coefficients(coeffs: CoefficientSet, path) -> str:
    blob = coefficients_to_bytes(coeffs)
    mirror = {
        "format": "ACCF",
        "version": FORMAT_VERSION,
        "rank": coeffs.rank,
        "n_objects": coeffs.n_objects,
        "basis_hash": coeffs.basis_hash,
        "content_hash": content_hash(blob),
        "coefficients": [m.tolist() for m in coeffs.coefficients],
    }
    _write(path, blob, mirror)
    return content_hash(blob)


def load_coefficients(path) -> CoefficientSet:
    path = Path(path)
    cur = _open(path.read_bytes(), b"ACCF", str(path))
    rank, n_objects = cur.take("<II")
    digest = cur.take_bytes(32).hex()
    mats = []
    for _ in range(n_objects):
        k = cur.take("<I")
        mats.append(cur.take_f64(rank * k).reshape(rank, k))
    return CoefficientSet(tuple(mats), digest)


# -- encoding corpora (ACEN) -------------------------------------------------

def encodings_to_bytes(ids, encodings, config: EncoderConfig) -> bytes:
    ids = list(ids)
    encodings = list(encodings)
    if len(ids) != len(encodings):
        raise SerializationError("ids and encodings must align")
    blob = bytearray(b"ACEN")
    blob += struct.pack(
        "<IIdIII",
        FORMAT_VERSION,
        config.n_bins,
        config.tau,
        config.max_depth,
        config.min_region_area,
        len(ids),
    )
    for obj_id, enc in zip(ids, encodings):
        raw = obj_id.encode("utf-8")
        if len(raw) > 0xFFFF:
            raise SerializationError(f"object id too long: {obj_id[:32]}...")
        blob += struct.pack("<H", len(raw)) + raw
        blob += struct.pack("<III", enc.source[0], enc.source[1], len(enc))
        for contour, depth, sld in zip(enc.contours, enc.depths, enc.solidities):
            blob += struct.pack(
                "<ddId", contour.center[0], contour.center[1], depth, sld
            )
            blob += np.ascontiguousarray(contour.radii, dtype="<f8").tobytes()
    return _finish(blob)


def save_encodings(ids, encodings, config: EncoderConfig, path) -> str:
    blob = encodings_to_bytes(ids, encodings, config)
    mirror = {
        "format": "ACEN",
        "version": FORMAT_VERSION,
        "n_bins": config.n_bins,
        "tau": config.tau,
        "max_depth": config.max_depth,
        "min_region_area": config.min_region_area,
        "content_hash": content_hash(blob),
        "objects": [
            {
                "id": obj_id,
                "source": list(enc.source),
                "contours": [
                    {
                        "center": list(c.center),
                        "depth": d,
                        "solidity": s,
                        "radii": c.radii.tolist(),
                    }
                    for c, d, s in zip(enc.contours, enc.depths, enc.solidities)
                ],
            }
            for obj_id, enc in zip(ids, encodings)
        ],
    }
    _write(path, blob, mirror)
    return content_hash(blob)


def load_encodings(path) -> tuple[list[str], list[HierarchicalEncoding], EncoderConfig]:
    path = Path(path)
    cur = _open(path.read_bytes(), b"ACEN", str(path))
    n_bins = cur.take("<I")
    tau = cur.take("<d")
    max_depth, min_region_area, n_objects = cur.take("<III")
    config = EncoderConfig(
        tau=tau, max_depth=max_depth, n_bins=n_bins, min_region_area=min_region_area
    )
    ids: list[str] = []
    encodings: list[HierarchicalEncoding] = []
    for _ in range(n_objects):
        id_len = cur.take("<H")
        ids.append(cur.take_bytes(id_len).decode("utf-8"))
        sw, sh, k = cur.take("<III")
        contours, depths, slds = [], [], []
        for _ in range(k):
            cx, cy = cur.take("<dd")
            depth = cur.take("<I")
            sld = cur.take("<d")
            radii = cur.take_f64(n_bins)
            contours.append(LocalContour((cx, cy), radii))
            depths.append(depth)
            slds.append(sld)
        encodings.append(
            HierarchicalEncoding(tuple(contours), tuple(depths), tuple(slds), (sw, sh))
        )
    return ids, encodings, config
