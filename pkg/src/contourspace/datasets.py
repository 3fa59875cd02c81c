"""Corpus ingestion and deterministic synthetic shape generation.

Raster masks travel as binary PGM (P5) or grayscale PNG with foreground at
pixel values >= 128. Polygon annotations are JSON files of the form

    {"canvas": [W, H], "objects": [{"id": str,
                                    "polygons": [[x0, y0, x1, y1, ...], ...]}]}

and a corpus manifest is a JSON file listing object entries with unique
ids. Synthetic corpora are reproduced bit-exactly from a seed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from . import masks
from .raster import rasterize_polygon

FOREGROUND_THRESHOLD = 128
FAMILIES = ("disk", "ellipse", "rectangle", "cross", "star", "annulus", "random_blob")


class DatasetError(ValueError):
    pass


# -- raster mask files --------------------------------------------------------

def load_raster_mask(path) -> np.ndarray:
    path = Path(path)
    try:
        head = path.open("rb").read(2)
    except OSError as exc:
        raise DatasetError(f"{path}: cannot read ({exc})") from exc
    if head == b"P5":
        return _load_pgm(path)
    return _load_png(path)


def _load_pgm(path: Path) -> np.ndarray:
    blob = path.read_bytes()
    fields = []
    pos = 0
    while len(fields) < 4:
        if pos >= len(blob):
            raise DatasetError(f"{path}: truncated PGM header")
        ch = blob[pos:pos + 1]
        if ch.isspace():
            pos += 1
        elif ch == b"#":
            while pos < len(blob) and blob[pos:pos + 1] not in (b"\n", b"\r"):
                pos += 1
        else:
            start = pos
            while pos < len(blob) and not blob[pos:pos + 1].isspace():
                pos += 1
            fields.append(blob[start:pos])
    if fields[0] != b"P5":
        raise DatasetError(f"{path}: not a P5 PGM")
    try:
        w, h, maxval = (int(f) for f in fields[1:])
    except ValueError as exc:
        raise DatasetError(f"{path}: malformed PGM header") from exc
    if w < 1 or h < 1:
        raise DatasetError(f"{path}: bad PGM dimensions {w}x{h}")
    if not (0 < maxval < 256):
        raise DatasetError(f"{path}: unsupported PGM bit depth (maxval {maxval})")
    data = blob[pos + 1:pos + 1 + w * h]  # single whitespace after maxval
    if len(data) != w * h:
        raise DatasetError(f"{path}: PGM pixel data truncated")
    return np.frombuffer(data, dtype=np.uint8).reshape(h, w) >= FOREGROUND_THRESHOLD


def _load_png(path: Path) -> np.ndarray:
    try:
        img = Image.open(path)
        img.load()
    except (UnidentifiedImageError, OSError) as exc:
        raise DatasetError(f"{path}: not a PGM or readable PNG ({exc})") from exc
    if img.format != "PNG":
        raise DatasetError(f"{path}: unsupported image format {img.format}")
    if img.mode == "1":
        return np.asarray(img, dtype=bool)
    if img.mode != "L":
        raise DatasetError(f"{path}: PNG must be 8-bit grayscale, got mode {img.mode}")
    return np.asarray(img, dtype=np.uint8) >= FOREGROUND_THRESHOLD


def save_raster_mask(mask, path) -> None:
    """Write a mask as binary PGM (P5), foreground 255, background 0."""
    m = masks.as_mask(mask)
    h, w = m.shape
    header = f"P5\n{w} {h}\n255\n".encode("ascii")
    Path(path).write_bytes(header + (m.astype(np.uint8) * 255).tobytes())


# -- polygon annotations -------------------------------------------------------

def load_polygon_annotations(path) -> tuple[list[tuple[str, np.ndarray]], list[tuple[str, str]]]:
    """Rasterize per-object polygon lists from an annotation JSON.

    Returns (objects, errors): objects as (id, mask) pairs in file order,
    errors as (id, reason) pairs for entries that failed validation. A
    malformed file raises instead.
    """
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise DatasetError(f"{path}: unreadable annotation JSON ({exc})") from exc
    try:
        w, h = (int(v) for v in doc["canvas"])
        entries = doc["objects"]
    except (KeyError, TypeError, ValueError) as exc:
        raise DatasetError(f"{path}: annotation JSON missing canvas/objects") from exc
    if w < 1 or h < 1:
        raise DatasetError(f"{path}: bad canvas {doc.get('canvas')}")

    objects: list[tuple[str, np.ndarray]] = []
    errors: list[tuple[str, str]] = []
    for k, entry in enumerate(entries):
        obj_id = str(entry.get("id", f"object_{k}"))
        try:
            mask = np.zeros((h, w), dtype=bool)
            polys = entry["polygons"]
            if not polys:
                raise ValueError("no polygons")
            for flat in polys:
                coords = np.asarray(flat, dtype=float)
                if coords.ndim != 1 or coords.size < 6 or coords.size % 2:
                    raise ValueError("polygon needs >= 3 (x, y) vertex pairs")
                verts = coords.reshape(-1, 2)
                if (verts[:, 0].min() < 0 or verts[:, 0].max() > w
                        or verts[:, 1].min() < 0 or verts[:, 1].max() > h):
                    raise ValueError("vertex outside canvas")
                mask |= rasterize_polygon(verts, w, h)
            objects.append((obj_id, mask))
        except (KeyError, TypeError, ValueError) as exc:
            errors.append((obj_id, str(exc)))
    return objects, errors


# -- manifests ------------------------------------------------------------------

@dataclass(frozen=True)
class ManifestEntry:
    id: str
    source: str
    kind: str  # "raster" | "polygon"
    category: str | None = None


@dataclass(frozen=True)
class DatasetManifest:
    entries: tuple[ManifestEntry, ...]
    root: Path

    def __len__(self) -> int:
        return len(self.entries)


def load_manifest(path) -> DatasetManifest:
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise DatasetError(f"{path}: unreadable manifest ({exc})") from exc
    root = path.parent / doc.get("root", ".")
    entries = []
    seen = set()
    for raw in doc.get("entries", []):
        try:
            entry = ManifestEntry(
                id=str(raw["id"]),
                source=str(raw["source"]),
                kind=str(raw["kind"]),
                category=raw.get("category"),
            )
        except (KeyError, TypeError) as exc:
            raise DatasetError(f"{path}: malformed manifest entry {raw!r}") from exc
        if entry.kind not in ("raster", "polygon"):
            raise DatasetError(f"{path}: unknown entry kind {entry.kind!r}")
        if entry.id in seen:
            raise DatasetError(f"{path}: duplicate id {entry.id!r}")
        seen.add(entry.id)
        if not (root / entry.source).exists():
            raise DatasetError(f"{path}: missing source file {entry.source}")
        entries.append(entry)
    if not entries:
        raise DatasetError(f"{path}: manifest has no entries")
    return DatasetManifest(tuple(entries), root)


def save_manifest(manifest: DatasetManifest, path) -> None:
    doc = {
        "root": ".",
        "entries": [
            {"id": e.id, "source": e.source, "kind": e.kind,
             **({"category": e.category} if e.category else {})}
            for e in manifest.entries
        ],
    }
    Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def load_corpus(manifest: DatasetManifest) -> list[tuple[str, np.ndarray]]:
    """Materialize every manifest entry as (id, mask), in manifest order."""
    polygon_cache: dict[str, dict[str, np.ndarray]] = {}
    out = []
    for entry in manifest.entries:
        src = manifest.root / entry.source
        if entry.kind == "raster":
            out.append((entry.id, load_raster_mask(src)))
            continue
        key = str(src)
        if key not in polygon_cache:
            objects, errors = load_polygon_annotations(src)
            polygon_cache[key] = dict(objects)
            polygon_cache[key].update({oid: None for oid, _ in errors})
        mask = polygon_cache[key].get(entry.id)
        if mask is None:
            raise DatasetError(f"{src}: no usable object {entry.id!r}")
        out.append((entry.id, mask))
    return out


# -- synthetic corpora -----------------------------------------------------------

@dataclass(frozen=True)
class SynthSpec:
    family: str
    count: int
    canvas: tuple[int, int]
    seed: int
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise DatasetError(f"unknown shape family {self.family!r}")
        if self.count < 1:
            raise DatasetError("count must be >= 1")
        w, h = self.canvas
        if w < 8 or h < 8:
            raise DatasetError("canvas must be at least 8x8")
        object.__setattr__(self, "canvas", (int(w), int(h)))


def parse_synth_spec(doc: dict) -> SynthSpec:
    try:
        return SynthSpec(
            family=doc["family"],
            count=int(doc.get("count", 1)),
            canvas=tuple(int(v) for v in doc.get("canvas", (256, 256))),
            seed=int(doc.get("seed", 0)),
            params=dict(doc.get("params", {})),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise DatasetError(f"malformed synth spec {doc!r}: {exc}") from exc


def load_synth_specs(path) -> list[SynthSpec]:
    """Read a synth spec file: either one spec object or {"specs": [...]}."""
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise DatasetError(f"{path}: unreadable synth spec ({exc})") from exc
    if isinstance(doc, dict) and "specs" in doc:
        return [parse_synth_spec(d) for d in doc["specs"]]
    if isinstance(doc, dict):
        return [parse_synth_spec(doc)]
    raise DatasetError(f"{path}: synth spec must be an object")


def _grid(w: int, h: int):
    ys, xs = np.mgrid[0:h, 0:w]
    return xs + 0.5, ys + 0.5


def _ellipse_mask(w, h, cx, cy, a, b, angle) -> np.ndarray:
    px, py = _grid(w, h)
    dx, dy = px - cx, py - cy
    u = dx * np.cos(angle) + dy * np.sin(angle)
    v = -dx * np.sin(angle) + dy * np.cos(angle)
    return (u / a) ** 2 + (v / b) ** 2 <= 1.0


def _star_mask(w, h, cx, cy, k, r_out, r_in, phase) -> np.ndarray:
    px, py = _grid(w, h)
    dx, dy = px - cx, py - cy
    d = np.hypot(dx, dy)
    alpha = np.mod(np.arctan2(dy, dx) - phase, 2.0 * np.pi)
    alpha[alpha >= 2.0 * np.pi] = 0.0  # np.mod can round up to the modulus
    sector = np.minimum(np.floor(alpha / (np.pi / k)).astype(int), 2 * k - 1)
    a = sector * (np.pi / k)
    ra = np.where(sector % 2 == 0, r_out, r_in)
    rb = np.where(sector % 2 == 0, r_in, r_out)
    span = np.pi / k
    denom = rb * np.sin(a + span - alpha) + ra * np.sin(alpha - a)
    boundary = ra * rb * np.sin(span) / np.maximum(denom, 1e-12)
    return d <= boundary


def _generate_one(family: str, w: int, h: int, rng, params: dict) -> np.ndarray:
    side = min(w, h)
    p = params
    if family == "disk":
        r = rng.uniform(p.get("r_min", 0.15 * side), p.get("r_max", 0.35 * side))
        cx = rng.uniform(r + 1, w - r - 1)
        cy = rng.uniform(r + 1, h - r - 1)
        return _ellipse_mask(w, h, cx, cy, r, r, 0.0)
    if family == "ellipse":
        a = rng.uniform(p.get("a_min", 0.15 * side), p.get("a_max", 0.35 * side))
        b = rng.uniform(p.get("b_min", 0.12 * side), p.get("b_max", 0.3 * side))
        angle = rng.uniform(0, np.pi) if p.get("rotate", True) else 0.0
        m = max(a, b)
        cx = rng.uniform(m + 1, w - m - 1)
        cy = rng.uniform(m + 1, h - m - 1)
        return _ellipse_mask(w, h, cx, cy, a, b, angle)
    if family == "rectangle":
        rw = rng.uniform(p.get("w_min", 0.25 * side), p.get("w_max", 0.6 * side))
        rh = rng.uniform(p.get("h_min", 0.25 * side), p.get("h_max", 0.6 * side))
        cx = rng.uniform(rw / 2 + 1, w - rw / 2 - 1)
        cy = rng.uniform(rh / 2 + 1, h - rh / 2 - 1)
        px, py = _grid(w, h)
        return (np.abs(px - cx) <= rw / 2) & (np.abs(py - cy) <= rh / 2)
    if family == "cross":
        extent = rng.uniform(p.get("e_min", 0.55 * side), p.get("e_max", 0.85 * side))
        thick = extent * rng.uniform(p.get("t_min", 0.2), p.get("t_max", 0.34))
        cx = rng.uniform(extent / 2 + 1, w - extent / 2 - 1)
        cy = rng.uniform(extent / 2 + 1, h - extent / 2 - 1)
        px, py = _grid(w, h)
        horiz = (np.abs(px - cx) <= extent / 2) & (np.abs(py - cy) <= thick / 2)
        vert = (np.abs(px - cx) <= thick / 2) & (np.abs(py - cy) <= extent / 2)
        return horiz | vert
    if family == "star":
        k = int(p.get("points", rng.integers(5, 8)))
        r_out = rng.uniform(p.get("r_min", 0.3 * side), p.get("r_max", 0.45 * side))
        r_in = r_out * p.get("inner_ratio", rng.uniform(0.35, 0.5))
        phase = rng.uniform(0, 2 * np.pi)
        cx = rng.uniform(r_out + 1, w - r_out - 1)
        cy = rng.uniform(r_out + 1, h - r_out - 1)
        return _star_mask(w, h, cx, cy, k, r_out, r_in, phase)
    if family == "annulus":
        r_out = float(p.get("r_out", 0.42 * side))
        r_in = float(p.get("r_in", 0.25 * side))
        if not (0 < r_in < r_out):
            raise DatasetError("annulus needs 0 < r_in < r_out")
        jitter = float(p.get("jitter", 0.0))
        cx = w / 2 + (rng.uniform(-jitter, jitter) if jitter else 0.0)
        cy = h / 2 + (rng.uniform(-jitter, jitter) if jitter else 0.0)
        if cx - r_out < 0 or cx + r_out > w or cy - r_out < 0 or cy + r_out > h:
            raise DatasetError("annulus does not fit the canvas")
        px, py = _grid(w, h)
        d2 = (px - cx) ** 2 + (py - cy) ** 2
        return (d2 <= r_out**2) & (d2 > r_in**2)
    # random_blob: union of a few ellipses, clipped to the largest component
    while True:
        n = int(rng.integers(p.get("n_min", 3), p.get("n_max", 8) + 1))
        blob = np.zeros((h, w), dtype=bool)
        for _ in range(n):
            a = rng.uniform(0.08 * side, 0.22 * side)
            b = rng.uniform(0.08 * side, 0.22 * side)
            angle = rng.uniform(0, np.pi)
            cx = rng.uniform(0.25 * w, 0.75 * w)
            cy = rng.uniform(0.25 * h, 0.75 * h)
            blob |= _ellipse_mask(w, h, cx, cy, a, b, angle)
        if blob.any():
            return masks.connected_components(blob)[0]


def generate_synthetic(spec: SynthSpec) -> list[np.ndarray]:
    """Deterministic corpus: the seed fixes every mask bit-exactly."""
    rng = np.random.default_rng(spec.seed)
    w, h = spec.canvas
    return [_generate_one(spec.family, w, h, rng, spec.params) for _ in range(spec.count)]
