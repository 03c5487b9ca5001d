"""Chi-square histogram matching, gallery ranking and the persisted gallery index."""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Sequence, Union

import numpy as np

from .descriptor import Histogram, rtlnp_histogram
from .geometry import RtlnpParams
from .imaging import GrayImage, ImageError, load_grayscale
from .lbp import lbp_histogram

FORMAT_VERSION = 1


class DatasetError(ValueError):
    """The dataset directory does not follow the ``root/<class>/<image>`` layout."""


class IndexFormatError(ValueError):
    pass


# -- distance ----------------------------------------------------------------

def chi_square_many(x, Y) -> np.ndarray:
    """Chi-square distance from ``x`` to every row of ``Y``.

    Bins where both histograms are zero contribute nothing.
    """
    x = np.asarray(x, dtype=np.float64)
    Y = np.atleast_2d(np.asarray(Y, dtype=np.float64))
    if Y.shape[1] != x.shape[-1]:
        raise ValueError(f"length mismatch: {x.shape[-1]} vs {Y.shape[1]}")
    diff = Y - x
    den = Y + x
    terms = np.divide(diff * diff, den, out=np.zeros_like(den), where=den != 0)
    return 0.5 * terms.sum(axis=1)


def chi_square(x, y) -> float:
    """``0.5 * sum((x - y)**2 / (x + y))`` over bins with non-zero denominator."""
    x = np.asarray(x, dtype=np.float64).ravel()
    y = np.asarray(y, dtype=np.float64).ravel()
    if x.shape != y.shape:
        raise ValueError(f"length mismatch: {x.size} vs {y.size}")
    return float(chi_square_many(x, y[None, :])[0])


# -- descriptors ---------------------------------------------------------------

@dataclass(frozen=True)
class Descriptor:
    """Which histogram to extract: ``rtlnp`` with its params, or ``lbp``."""

    name: str = "rtlnp"
    params: Optional[RtlnpParams] = RtlnpParams()

    def __post_init__(self):
        if self.name == "rtlnp":
            if self.params is None:
                object.__setattr__(self, "params", RtlnpParams())
        elif self.name == "lbp":
            object.__setattr__(self, "params", None)
        else:
            raise ValueError(f"unknown descriptor {self.name!r} (expected rtlnp or lbp)")

    @property
    def n_bins(self) -> int:
        return self.params.n_bins if self.name == "rtlnp" else 256

    def histogram(self, image: GrayImage, workers: int = 1) -> Histogram:
        if self.name == "lbp":
            return lbp_histogram(image)
        return rtlnp_histogram(image, self.params, workers=workers)

    def params_dict(self) -> Optional[dict]:
        return None if self.params is None else self.params.to_dict()


def as_descriptor(choice: Union[Descriptor, RtlnpParams, str]) -> Descriptor:
    if isinstance(choice, Descriptor):
        return choice
    if isinstance(choice, RtlnpParams):
        return Descriptor("rtlnp", choice)
    if isinstance(choice, str):
        return Descriptor(choice)
    raise TypeError(f"cannot interpret {choice!r} as a descriptor")


# -- index -------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class GalleryEntry:
    id: int
    path: str
    class_label: str
    raw_bins: np.ndarray
    feature: np.ndarray = field(repr=False)

    @classmethod
    def from_histogram(cls, id: int, path: str, class_label: str, hist) -> "GalleryEntry":
        h = hist if isinstance(hist, Histogram) else Histogram(np.asarray(hist, dtype=np.int64))
        return cls(id, path, class_label, h.bins, h.normalized())

    @property
    def total(self) -> int:
        return int(self.raw_bins.sum())


@dataclass(frozen=True, eq=False)
class GalleryIndex:
    descriptor: Descriptor
    entries: tuple

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        ids = [e.id for e in self.entries]
        if ids != list(range(len(ids))):
            raise ValueError("entry ids must be dense and ordered 0..N-1")
        n = self.descriptor.n_bins
        for e in self.entries:
            if len(e.raw_bins) != n:
                raise ValueError(f"entry {e.id} has {len(e.raw_bins)} bins, expected {n}")
        feats = (np.vstack([e.feature for e in self.entries]) if self.entries
                 else np.zeros((0, n)))
        feats.flags.writeable = False
        object.__setattr__(self, "_features", feats)
        labels = np.array([e.class_label for e in self.entries], dtype=object)
        object.__setattr__(self, "_labels", labels)

    def __len__(self):
        return len(self.entries)

    @property
    def descriptor_name(self) -> str:
        return self.descriptor.name

    @property
    def params(self) -> Optional[RtlnpParams]:
        return self.descriptor.params

    @property
    def features(self) -> np.ndarray:
        """``(N, n_bins)`` matrix of L1-normalized histograms."""
        return self._features

    @property
    def labels(self) -> np.ndarray:
        return self._labels

    def to_json(self) -> str:
        return dumps_index(self)

    def save(self, path) -> None:
        Path(path).write_text(dumps_index(self), encoding="utf-8")

    @classmethod
    def load(cls, path) -> "GalleryIndex":
        return loads_index(Path(path).read_text(encoding="utf-8"))


def dumps_index(index: GalleryIndex) -> str:
    """Serialize to JSON with one entry per line. Output is a pure function
    of the index contents."""
    head = {
        "format_version": FORMAT_VERSION,
        "descriptor_name": index.descriptor.name,
        "params": index.descriptor.params_dict(),
    }
    lines = ["{"]
    for key, value in head.items():
        lines.append(f"  {json.dumps(key)}: {json.dumps(value, sort_keys=True)},")
    lines.append('  "entries": [')
    rows = []
    for e in index.entries:
        rec = {"id": e.id, "path": e.path, "class_label": e.class_label,
               "total": e.total, "raw_bins": [int(v) for v in e.raw_bins]}
        rows.append("    " + json.dumps(rec, separators=(",", ":")))
    if rows:
        lines.append(",\n".join(rows))
    lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def loads_index(text: str) -> GalleryIndex:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise IndexFormatError(f"index is not valid JSON: {exc}") from None
    if doc.get("format_version") != FORMAT_VERSION:
        raise IndexFormatError(f"unsupported index format_version {doc.get('format_version')!r}")
    try:
        params = doc.get("params")
        descriptor = Descriptor(doc["descriptor_name"],
                                RtlnpParams(**params) if params else None)
        entries = []
        for rec in doc["entries"]:
            bins = np.asarray(rec["raw_bins"], dtype=np.int64)
            if int(bins.sum()) != rec["total"]:
                raise IndexFormatError(f"entry {rec['id']}: total does not match bins")
            entries.append(GalleryEntry.from_histogram(
                rec["id"], rec["path"], rec["class_label"], bins))
        return GalleryIndex(descriptor, entries)
    except (KeyError, TypeError) as exc:
        raise IndexFormatError(f"malformed index document: {exc!r}") from None
    except ValueError as exc:
        if isinstance(exc, IndexFormatError):
            raise
        raise IndexFormatError(f"inconsistent index: {exc}") from None


def scan_dataset(root) -> List[tuple]:
    """``(class_label, relative_path)`` pairs sorted by class then filename.

    Top-level files are ignored; hidden files and directories are skipped.
    """
    root = Path(root)
    if not root.is_dir():
        raise DatasetError(f"{root}: dataset root is not a directory")
    items = []
    classes = sorted(d for d in os.listdir(root)
                     if not d.startswith(".") and (root / d).is_dir())
    for label in classes:
        files = sorted(f for f in os.listdir(root / label)
                       if not f.startswith(".") and (root / label / f).is_file())
        if not files:
            raise DatasetError(f"{root / label}: class directory holds no images")
        items.extend((label, f"{label}/{f}") for f in files)
    if not items:
        raise DatasetError(f"{root}: no class subdirectories with images")
    return items


def build_index(dataset_root, descriptor: Union[Descriptor, RtlnpParams, str] = "rtlnp",
                workers: int = 1) -> GalleryIndex:
    """Extract one histogram per image of ``dataset_root/<class>/<file>``.

    Entry order (and so ids) follow the sorted (class, filename) listing no
    matter how many workers are used.  Any unreadable image aborts the build
    with an :class:`~rtlnp.imaging.ImageError` naming the file.
    """
    desc = as_descriptor(descriptor)
    root = Path(dataset_root)
    items = scan_dataset(root)

    def extract(item):
        path = root / item[1]
        image = load_grayscale(path)
        try:
            return desc.histogram(image)
        except ValueError as exc:
            raise ImageError(f"{path}: {exc}") from None

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            hists = list(pool.map(extract, items))
    else:
        hists = [extract(it) for it in items]
    entries = [GalleryEntry.from_histogram(i, rel, label, h)
               for i, ((label, rel), h) in enumerate(zip(items, hists))]
    return GalleryIndex(desc, entries)


# -- ranking -----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class RankedList:
    """Gallery ordered by ascending distance to a query (ties by entry id).

    ``labels`` carries the class of each ranked entry; the 1-based position
    in ``ids`` is the entry's rank.
    """

    query_id: Optional[int]
    ids: np.ndarray
    distances: np.ndarray
    labels: np.ndarray

    def __len__(self):
        return len(self.ids)

    def rank_of(self, entry_id: int) -> int:
        pos = np.flatnonzero(self.ids == entry_id)
        if not pos.size:
            raise KeyError(entry_id)
        return int(pos[0]) + 1


def rank_feature(feature, index: GalleryIndex, exclude: Optional[int] = None) -> RankedList:
    """Rank every gallery entry (except ``exclude``) against ``feature``."""
    dist = chi_square_many(feature, index.features)
    ids = np.arange(len(index))
    if exclude is not None:
        keep = ids != exclude
        ids, dist = ids[keep], dist[keep]
    # stable sort on distance keeps ascending ids among ties
    order = np.argsort(dist, kind="stable")
    ids = ids[order]
    return RankedList(exclude, ids, dist[order], index.labels[ids])


def rank_gallery(query_id: int, index: GalleryIndex) -> RankedList:
    """Leave-one-out ranking: the query against every other entry."""
    if not 0 <= query_id < len(index):
        raise KeyError(f"unknown query id {query_id}")
    return rank_feature(index.entries[query_id].feature, index, exclude=query_id)


def rank_all(index: GalleryIndex, workers: int = 1) -> List[RankedList]:
    queries = range(len(index))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda q: rank_gallery(q, index), queries))
    return [rank_gallery(q, index) for q in queries]
