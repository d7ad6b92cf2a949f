"""Rank-frequency analysis of text and power-law exponent fitting.

A corpus becomes a rank-frequency table (tokens sorted by descending count,
first occurrence breaking ties); the Zipf exponent alpha of
count ~ rank^(-alpha) is estimated by ordinary least squares on the log-log
points, and the Mandelbrot generalization count ~ (rank+gamma)^(-alpha) by
scanning a gamma grid and refining the winner with a golden-section pass.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

from .errors import FitError, InputError

__all__ = [
    "RankFrequencyTable",
    "FitResult",
    "tokenize",
    "rank_frequency",
    "fit_zipf",
    "fit_mandelbrot",
]

# Unicode alphanumeric runs: word characters minus the underscore
_TOKEN_RE = re.compile(r"[^\W_]+")

_GAMMA_MIN, _GAMMA_MAX = -0.9, 100.0

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class RankFrequencyTable:
    """Tokens of a corpus ordered by descending count, ranks 1..n."""

    entries: tuple[tuple[int, str, int], ...]
    total: int

    def __post_init__(self):
        if not self.entries:
            raise InputError("a rank-frequency table needs at least one entry")
        ranks = [e[0] for e in self.entries]
        counts = [e[2] for e in self.entries]
        if ranks != list(range(1, len(ranks) + 1)):
            raise InputError("ranks must be contiguous and start at 1")
        if any(c < 1 for c in counts):
            raise InputError("counts must be >= 1")
        if any(counts[i] < counts[i + 1] for i in range(len(counts) - 1)):
            raise InputError("counts must be non-increasing in rank")
        if self.total != sum(counts):
            raise InputError("total must equal the sum of counts")

    @classmethod
    def from_counts(cls, counts, tokens=None) -> "RankFrequencyTable":
        """Build a synthetic table from a non-increasing count sequence."""
        counts = [int(c) for c in counts]
        if tokens is None:
            tokens = [f"w{i}" for i in range(1, len(counts) + 1)]
        entries = tuple(
            (rank, token, count)
            for rank, (token, count) in enumerate(zip(tokens, counts), start=1)
        )
        return cls(entries=entries, total=sum(counts))

    @property
    def n_ranks(self) -> int:
        return len(self.entries)

    def counts(self) -> list[int]:
        return [e[2] for e in self.entries]

    def tokens(self) -> list[str]:
        return [e[1] for e in self.entries]


@dataclass(frozen=True)
class FitResult:
    """Fitted exponent(s) plus goodness-of-fit summaries."""

    alpha: float
    gamma: float | None
    log_log_r2: float
    ks_statistic: float
    n_ranks_used: int


def tokenize(data, min_length: int = 1) -> list[str]:
    """Lowercased alphanumeric runs of the input, shorter tokens dropped.

    Accepts str or UTF-8 bytes; invalid UTF-8 raises an InputError naming
    the first offending byte offset.  Splitting happens at every
    non-alphanumeric code point (Unicode categories decide), so the result
    is identical on every platform.
    """
    if isinstance(data, (bytes, bytearray)):
        try:
            text = bytes(data).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise InputError(f"invalid UTF-8 at byte offset {exc.start}") from exc
    else:
        text = data
    tokens = _TOKEN_RE.findall(text.lower())
    if min_length > 1:
        tokens = [t for t in tokens if len(t) >= min_length]
    return tokens


def rank_frequency(tokens) -> RankFrequencyTable:
    """Count tokens and rank them by descending count, first seen first."""
    counts: dict[str, int] = {}
    for token in tokens:
        counts[token] = counts.get(token, 0) + 1
    if not counts:
        raise InputError("cannot rank an empty token sequence")
    first_seen = {token: i for i, token in enumerate(counts)}  # insertion order
    ordered = sorted(counts.items(), key=lambda kv: (-kv[1], first_seen[kv[0]]))
    entries = tuple(
        (rank, token, count) for rank, (token, count) in enumerate(ordered, start=1)
    )
    return RankFrequencyTable(entries=entries, total=sum(counts.values()))


def _ols(x: np.ndarray, y: np.ndarray):
    """Least squares y ~ a + b x; returns (slope, rss, r2)."""
    xm, ym = x.mean(), y.mean()
    sxx = float(((x - xm) ** 2).sum())
    slope = float(((x - xm) * (y - ym)).sum()) / sxx
    resid = y - (ym + slope * (x - xm))
    rss = float((resid**2).sum())
    sst = float(((y - ym) ** 2).sum())
    r2 = 1.0 if sst <= 0.0 else min(1.0, max(0.0, 1.0 - rss / sst))
    return slope, rss, r2


def _truncated(table: RankFrequencyTable, max_rank):
    counts = table.counts()
    if max_rank is not None:
        counts = counts[: int(max_rank)]
    return counts


def _log_counts(counts) -> np.ndarray:
    # counts may be arbitrarily large Python ints; math.log handles them exactly
    return np.array([math.log(c) for c in counts])


def _ks_statistic(counts, alpha: float, gamma: float) -> float:
    """KS distance between the empirical rank distribution and the fitted
    (rank+gamma)^(-alpha) law truncated at the same number of ranks."""
    n = len(counts)
    emp = np.array([float(c) for c in counts])
    emp /= emp.sum()
    fitted = (np.arange(1, n + 1) + gamma) ** (-alpha)
    fitted /= fitted.sum()
    return float(np.abs(np.cumsum(emp) - np.cumsum(fitted)).max())


def fit_zipf(table: RankFrequencyTable, max_rank: int | None = None) -> FitResult:
    """alpha from OLS of ln(count) on ln(rank): count ~ rank^(-alpha)."""
    counts = _truncated(table, max_rank)
    n = len(counts)
    if n < 3:
        raise FitError(f"Zipf fit needs at least 3 ranks, got {n}")
    log_rank = np.log(np.arange(1, n + 1, dtype=float))
    log_count = _log_counts(counts)
    slope, _, r2 = _ols(log_rank, log_count)
    alpha = -slope
    return FitResult(
        alpha=alpha,
        gamma=None,
        log_log_r2=r2,
        ks_statistic=_ks_statistic(counts, alpha, 0.0),
        n_ranks_used=n,
    )


def _mandelbrot_rss(counts_log: np.ndarray, ranks: np.ndarray, gamma: float):
    slope, rss, r2 = _ols(np.log(ranks + gamma), counts_log)
    return rss, -slope, r2


def fit_mandelbrot(table: RankFrequencyTable, gamma_grid,
                   max_rank: int | None = None) -> FitResult:
    """Best (alpha, gamma) for count ~ (rank+gamma)^(-alpha) over a gamma grid.

    The residual sum of squares is minimized over the grid, then the winning
    gamma is refined by a golden-section pass between its grid neighbors.
    With gamma fixed at 0 this reduces exactly to the Zipf fit.
    """
    gammas = [float(g) for g in gamma_grid]
    if not gammas:
        raise InputError("gamma grid is empty")
    if any(not (_GAMMA_MIN < g <= _GAMMA_MAX) for g in gammas):
        raise InputError(
            f"gamma grid must lie in ({_GAMMA_MIN}, {_GAMMA_MAX}], got {gammas!r}"
        )
    gammas = sorted(set(gammas))
    counts = _truncated(table, max_rank)
    n = len(counts)
    if n < 4:
        raise FitError(f"Mandelbrot fit needs at least 4 ranks, got {n}")
    ranks = np.arange(1, n + 1, dtype=float)
    counts_log = _log_counts(counts)

    results = [_mandelbrot_rss(counts_log, ranks, g) for g in gammas]
    best_idx = min(range(len(gammas)), key=lambda i: results[i][0])
    best_gamma = gammas[best_idx]
    best_rss, best_alpha, best_r2 = results[best_idx]

    lo = gammas[best_idx - 1] if best_idx > 0 else best_gamma
    hi = gammas[best_idx + 1] if best_idx + 1 < len(gammas) else best_gamma
    if hi > lo:
        # one golden-section pass over the bracket around the grid winner
        a, b = lo, hi
        c = b - _GOLDEN * (b - a)
        d = a + _GOLDEN * (b - a)
        fc = _mandelbrot_rss(counts_log, ranks, c)
        fd = _mandelbrot_rss(counts_log, ranks, d)
        for _ in range(80):
            if b - a < 1e-10 * max(1.0, abs(a), abs(b)):
                break
            if fc[0] < fd[0]:
                b, d, fd = d, c, fc
                c = b - _GOLDEN * (b - a)
                fc = _mandelbrot_rss(counts_log, ranks, c)
            else:
                a, c, fc = c, d, fd
                d = a + _GOLDEN * (b - a)
                fd = _mandelbrot_rss(counts_log, ranks, d)
        for g, (rss, alpha, r2) in ((c, fc), (d, fd)):
            if rss < best_rss:
                best_rss, best_alpha, best_r2, best_gamma = rss, alpha, r2, g

    return FitResult(
        alpha=best_alpha,
        gamma=best_gamma,
        log_log_r2=best_r2,
        ks_statistic=_ks_statistic(counts, best_alpha, best_gamma),
        n_ranks_used=n,
    )
