"""Retrieval and recognition scores over a leave-one-out run.

Precision/recall averages are macro averages: first over the queries of a
class, then over classes.  Recognition rate and CMC are percentages.
"""

from __future__ import annotations

import csv
import io
import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

from .retrieval import GalleryIndex, RankedList, rank_all

RECALL_DENOMINATORS = ("literal", "excl-query")


@dataclass(frozen=True, eq=False)
class EvaluationRun:
    """Every entry ranked once against all the others.

    ``ranked[q]`` must be the ranking for the query whose class is
    ``labels[q]``.
    """

    ranked: Sequence[RankedList]
    labels: np.ndarray
    class_sizes: Dict[str, int] = field(init=False)
    matches: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        labels = np.asarray(self.labels, dtype=object)
        ranked = tuple(self.ranked)
        n = len(labels)
        if len(ranked) != n:
            raise ValueError("need exactly one ranked list per entry")
        if n < 2:
            raise ValueError("an evaluation needs at least two entries")
        for q, rl in enumerate(ranked):
            if len(rl) != n - 1:
                raise ValueError(f"ranked list {q} has {len(rl)} entries, expected {n - 1}")
        matches = np.array([rl.labels == labels[q] for q, rl in enumerate(ranked)],
                           dtype=bool)
        matches.flags.writeable = False
        object.__setattr__(self, "ranked", ranked)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "class_sizes", dict(Counter(labels.tolist())))
        object.__setattr__(self, "matches", matches)

    @classmethod
    def from_index(cls, index: GalleryIndex, workers: int = 1) -> "EvaluationRun":
        return cls(rank_all(index, workers=workers), index.labels)

    @property
    def n_queries(self) -> int:
        return len(self.labels)

    @property
    def gallery_size(self) -> int:
        return len(self.labels) - 1

    @property
    def classes(self) -> List[str]:
        return sorted(self.class_sizes)

    def query_class_sizes(self) -> np.ndarray:
        return np.array([self.class_sizes[c] for c in self.labels])


def _check_lambda(lam: int, n: int) -> None:
    if not 1 <= lam <= n:
        raise ValueError(f"lambda={lam} outside [1, {n}]")


def _matches_within(ranked: RankedList, query_class, lam: int) -> int:
    _check_lambda(lam, len(ranked))
    return int(np.count_nonzero(ranked.labels[:lam] == query_class))


def precision_at(ranked: RankedList, query_class, lam: int) -> float:
    return _matches_within(ranked, query_class, lam) / lam


def recall_at(ranked: RankedList, query_class, class_size: int, lam: int,
              denominator: str = "literal") -> float:
    """Fraction of the class found in the top ``lam``.

    ``denominator="literal"`` divides by the full class size, so a query can
    reach at most ``(size - 1) / size``; ``"excl-query"`` divides by
    ``size - 1``.
    """
    hits = _matches_within(ranked, query_class, lam)
    return hits / _recall_denominator(class_size, denominator)


def _recall_denominator(class_size, denominator):
    if denominator == "literal":
        return class_size
    if denominator == "excl-query":
        return np.maximum(class_size - 1, 1)
    raise ValueError(f"unknown recall denominator {denominator!r}")


def _per_query_lambda(run: EvaluationRun, lam: Optional[int]) -> np.ndarray:
    if lam is None:
        return np.minimum(run.query_class_sizes(), run.gallery_size)
    _check_lambda(lam, run.gallery_size)
    return np.full(run.n_queries, lam)


def _hits(run: EvaluationRun, lams: np.ndarray) -> np.ndarray:
    cum = np.cumsum(run.matches, axis=1)
    return cum[np.arange(run.n_queries), lams - 1]


def _macro(run: EvaluationRun, per_query: np.ndarray) -> float:
    class_means = [per_query[run.labels == c].mean() for c in run.classes]
    return float(np.mean(class_means))


def arp(run: EvaluationRun, lam: Optional[int] = None) -> float:
    """Average retrieval precision at ``lam`` retrieved images.

    ``lam=None`` uses each query's own class size (capped at the gallery
    size), the setting behind the F-score summary.
    """
    lams = _per_query_lambda(run, lam)
    return _macro(run, _hits(run, lams) / lams)


def arr(run: EvaluationRun, lam: Optional[int] = None, denominator: str = "literal") -> float:
    """Average retrieval rate (recall); ``lam=None`` as in :func:`arp`."""
    lams = _per_query_lambda(run, lam)
    den = _recall_denominator(run.query_class_sizes(), denominator)
    return _macro(run, _hits(run, lams) / den)


def arp_curve(run: EvaluationRun, lambda_max: int) -> np.ndarray:
    return np.array([arp(run, lam) for lam in range(1, lambda_max + 1)])


def arr_curve(run: EvaluationRun, lambda_max: int, denominator: str = "literal") -> np.ndarray:
    return np.array([arr(run, lam, denominator) for lam in range(1, lambda_max + 1)])


def f_score(arp_value: float, arr_value: float) -> float:
    s = arp_value + arr_value
    if s <= 0:
        return 0.0
    return 2.0 * arp_value * arr_value / s


def anmrr(run: EvaluationRun) -> float:
    """Average normalized modified retrieval rank (MPEG-7), 0 best, 1 worst.

    For a query with ``NG`` classmates and window ``K = min(4 NG, 2 GTM)``,
    classmates ranked beyond ``K`` count as rank ``1.25 K``.
    """
    ng = run.query_class_sizes() - 1
    if np.any(ng < 1):
        singles = sorted(c for c, n in run.class_sizes.items() if n < 2)
        raise ValueError(f"ANMRR needs >= 2 images per class; singleton classes: {singles}")
    gtm = int(ng.max())
    ranks = np.arange(1, run.gallery_size + 1, dtype=np.float64)
    nmrr = np.empty(run.n_queries)
    for q in range(run.n_queries):
        n_g = int(ng[q])
        k = min(4 * n_g, 2 * gtm)
        r = ranks[run.matches[q]]
        penalized = np.where(r <= k, r, 1.25 * k)
        avr = penalized.sum() / n_g
        mrr = avr - 0.5 * (1 + n_g)
        nmrr[q] = mrr / (1.25 * k - 0.5 * (1 + n_g))
    return float(nmrr.mean())


def _first_match_ranks(run: EvaluationRun) -> np.ndarray:
    """1-based rank of the first classmate per query; ``inf`` if none."""
    has = run.matches.any(axis=1)
    first = np.argmax(run.matches, axis=1) + 1.0
    return np.where(has, first, np.inf)


def recognition_rate(run: EvaluationRun) -> float:
    """Percentage of queries whose nearest gallery entry is a classmate."""
    return 100.0 * int(np.count_nonzero(run.matches[:, 0])) / run.n_queries


def cmc(run: EvaluationRun, max_rank: int) -> np.ndarray:
    """Cumulative match curve: entry ``r-1`` is the percentage of queries with
    a classmate at rank <= r."""
    _check_lambda(max_rank, run.gallery_size)
    first = _first_match_ranks(run)
    n = run.n_queries
    return np.array([100.0 * int(np.count_nonzero(first <= r)) / n
                     for r in range(1, max_rank + 1)])


@dataclass
class MetricsReport:
    descriptor_name: str
    params: Optional[dict]
    n_queries: int
    n_classes: int
    recall_denominator: str
    lambdas: List[int]
    arp_curve: List[float]
    arr_curve: List[float]
    arp: float
    arr: float
    f_score: float
    anmrr: Optional[float]
    recognition_rate: float
    cmc_ranks: List[int]
    cmc: List[float]
    notices: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "descriptor_name": self.descriptor_name,
            "params": self.params,
            "n_queries": self.n_queries,
            "n_classes": self.n_classes,
            "recall_denominator": self.recall_denominator,
            "summary": {"arp": self.arp, "arr": self.arr, "f_score": self.f_score,
                        "anmrr": self.anmrr, "recognition_rate": self.recognition_rate},
            "curves": {"lambda": self.lambdas, "arp": self.arp_curve,
                       "arr": self.arr_curve},
            "cmc": {"rank": self.cmc_ranks, "percent": self.cmc},
            "notices": self.notices,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["metric", "x", "value"])
        for lam, v in zip(self.lambdas, self.arp_curve):
            w.writerow(["arp", lam, repr(v)])
        for lam, v in zip(self.lambdas, self.arr_curve):
            w.writerow(["arr", lam, repr(v)])
        for r, v in zip(self.cmc_ranks, self.cmc):
            w.writerow(["cmc", r, repr(v)])
        for name in ("arp", "arr", "f_score", "anmrr", "recognition_rate"):
            v = getattr(self, name)
            w.writerow([name, "", "" if v is None else repr(v)])
        return buf.getvalue()


def evaluate(run: EvaluationRun, lambda_max: int, cmc_max_rank: int,
             recall_denominator: str = "literal", descriptor_name: str = "",
             params: Optional[dict] = None) -> MetricsReport:
    """Compute every score for ``run``.

    ANMRR is left as ``None`` (with a notice) when some class has a single
    image; all other scores are still produced.
    """
    if recall_denominator not in RECALL_DENOMINATORS:
        raise ValueError(f"unknown recall denominator {recall_denominator!r}")
    notices = []
    a_p = arp(run)
    a_r = arr(run, denominator=recall_denominator)
    try:
        anmrr_value = anmrr(run)
    except ValueError as exc:
        anmrr_value = None
        notices.append(f"ANMRR skipped: {exc}")
    return MetricsReport(
        descriptor_name=descriptor_name,
        params=params,
        n_queries=run.n_queries,
        n_classes=len(run.class_sizes),
        recall_denominator=recall_denominator,
        lambdas=list(range(1, lambda_max + 1)),
        arp_curve=[float(v) for v in arp_curve(run, lambda_max)],
        arr_curve=[float(v) for v in arr_curve(run, lambda_max, recall_denominator)],
        arp=a_p,
        arr=a_r,
        f_score=f_score(a_p, a_r),
        anmrr=anmrr_value,
        recognition_rate=recognition_rate(run),
        cmc_ranks=list(range(1, cmc_max_rank + 1)),
        cmc=[float(v) for v in cmc(run, cmc_max_rank)],
        notices=notices,
    )
