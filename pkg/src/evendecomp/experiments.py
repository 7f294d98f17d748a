"""Seeded Monte-Carlo estimators and result persistence.

Samples are split into fixed-size chunks of global sample indices; each sample
draws from its own counter-based stream, so tallies do not depend on the
number of workers.
"""

from __future__ import annotations

import csv
import functools
import io
import json
import math
import os
import subprocess
import tempfile
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np
from scipy import stats

from . import _kernels as K
from ._parallel import map_ordered, split_range
from .decompose import decompose_auto
from .randgraph import SamplerSpec, sample_gnp_even
from .witness import Status

CHUNK = 50_000
DEGEN_CAP = 24
DECOMP_CAP = 18

TALLY_KEYS = (
    "favorable",
    "certified_decomposable",
    "certified_nondecomposable",
    "unknown",
    "witness_failures",
    "nondegenerate",
    "greedy_failures",
    "g_nondegenerate",
    "h_nondegenerate",
    "both_nondegenerate",
    "all_even",
    "initial",
    "draws",
    "bins",
)
CSV_HEADER = (
    ("experiment", "n", "p", "t", "a", "samples", "seed")
    + tuple(f"tally_{k}" for k in TALLY_KEYS)
    + ("estimate", "stderr", "runtime_s", "build")
)


@functools.lru_cache(maxsize=1)
def build_id() -> str:
    from . import __version__

    try:
        out = subprocess.run(
            ["git", "describe", "--always", "--dirty"],
            cwd=Path(__file__).resolve().parent,
            capture_output=True,
            text=True,
            timeout=10,
        )
        desc = out.stdout.strip()
    except (OSError, subprocess.SubprocessError):
        desc = ""
    return f"{__version__}+{desc}" if desc else __version__


@dataclass
class ExperimentRecord:
    experiment: str
    n: int
    samples: int
    seed: int
    tallies: dict[str, int]
    estimate: float
    stderr: float
    p: float | None = None
    t: int | None = None
    a: int | None = None
    runtime_s: float = 0.0
    build: str = field(default_factory=build_id)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentRecord":
        return cls(**d)

    def identity(self) -> dict:
        """Everything except wall-clock time."""
        d = self.to_dict()
        d.pop("runtime_s")
        return d

    def csv_row(self) -> dict:
        row = {
            "experiment": self.experiment,
            "n": self.n,
            "p": "" if self.p is None else repr(self.p),
            "t": "" if self.t is None else self.t,
            "a": "" if self.a is None else self.a,
            "samples": self.samples,
            "seed": self.seed,
            "estimate": repr(self.estimate),
            "stderr": repr(self.stderr),
            "runtime_s": repr(self.runtime_s),
            "build": self.build,
        }
        for k in TALLY_KEYS:
            row[f"tally_{k}"] = self.tallies.get(k, "")
        return row

    @classmethod
    def from_csv_row(cls, row: dict) -> "ExperimentRecord":
        def opt(x, conv):
            return None if x == "" else conv(x)

        tallies = {k: int(row[f"tally_{k}"]) for k in TALLY_KEYS if row[f"tally_{k}"] != ""}
        return cls(
            experiment=row["experiment"],
            n=int(row["n"]),
            samples=int(row["samples"]),
            seed=int(row["seed"]),
            tallies=tallies,
            estimate=float(row["estimate"]),
            stderr=float(row["stderr"]),
            p=opt(row["p"], float),
            t=opt(row["t"], int),
            a=opt(row["a"], int),
            runtime_s=float(row["runtime_s"]),
            build=row["build"],
        )


def _proportion(favorable: int, samples: int) -> tuple[float, float]:
    if samples == 0:
        return 0.0, 0.0
    est = favorable / samples
    return est, math.sqrt(est * (1.0 - est) / samples)


def _chunks(samples: int) -> list[tuple[int, int]]:
    return split_range(0, samples, max(1, -(-samples // CHUNK)))


def _sum(parts) -> np.ndarray:
    total = parts[0].copy()
    for p in parts[1:]:
        total += p
    return total


def _check_seed(seed: int) -> int:
    if not 0 <= seed < 1 << 64:
        raise ValueError("seed must be an unsigned 64-bit integer")
    return seed


# ---------------------------------------------------------------- c_n


def _c_chunk(n, seed, start, count):
    out = np.zeros(2, dtype=np.int64)
    K.mc_degeneracy(n, np.uint64(seed), start, count, out)
    return out


def estimate_c(n: int, samples: int, seed: int, workers: int | None = None, timing: bool = True) -> ExperimentRecord:
    """Fraction of G(n, 1/2) samples that are not even-degenerate (exact per sample)."""
    if not 1 <= n <= DEGEN_CAP:
        raise ValueError(f"n must be in [1, {DEGEN_CAP}]")
    _check_seed(seed)
    t0 = time.perf_counter()
    parts = map_ordered(_c_chunk, [(n, seed, s, c) for s, c in _chunks(samples)], workers)
    tot = _sum(parts) if parts else np.zeros(2, dtype=np.int64)
    est, se = _proportion(int(tot[0]), samples)
    return ExperimentRecord(
        "c",
        n,
        samples,
        seed,
        {"nondegenerate": int(tot[0]), "greedy_failures": int(tot[1])},
        est,
        se,
        p=0.5,
        runtime_s=time.perf_counter() - t0 if timing else 0.0,
    )


# ---------------------------------------------------------------- b*


def _bstar_chunk(n, s, seed, start, count):
    out = np.zeros(4, dtype=np.int64)
    K.mc_bstar(n, s, np.uint64(seed), start, count, out)
    return out


def estimate_b_star(
    n: int, samples: int, seed: int, s: int | None = None, workers: int | None = None, timing: bool = True
) -> ExperimentRecord:
    """Probability that both members of a parity-linked pair on a shared s-set are non-even-degenerate."""
    if not 1 <= n <= DEGEN_CAP:
        raise ValueError(f"n must be in [1, {DEGEN_CAP}]")
    s = n - 1 if s is None else s
    if not 0 <= s <= n:
        raise ValueError("need 0 <= s <= n")
    _check_seed(seed)
    t0 = time.perf_counter()
    parts = map_ordered(_bstar_chunk, [(n, s, seed, a, c) for a, c in _chunks(samples)], workers)
    tot = _sum(parts) if parts else np.zeros(4, dtype=np.int64)
    if tot[3]:
        raise RuntimeError("parity-linked sampling failed to match parities")
    est, se = _proportion(int(tot[2]), samples)
    return ExperimentRecord(
        "bstar",
        n,
        samples,
        seed,
        {"g_nondegenerate": int(tot[0]), "h_nondegenerate": int(tot[1]), "both_nondegenerate": int(tot[2])},
        est,
        se,
        p=0.5,
        t=s,
        runtime_s=time.perf_counter() - t0 if timing else 0.0,
    )


# ---------------------------------------------------------------- removal process


def _removal_chunk(n, t, a, seed, start, count):
    out = np.zeros(3, dtype=np.int64)
    K.mc_removal(n, t, a, np.uint64(seed), start, count, out)
    return out


def removal_process_stats(
    n: int, t: int, a: int, samples: int, seed: int, workers: int | None = None, timing: bool = True
) -> ExperimentRecord:
    """Empirical probability that n smallest-label removals on G(2n, 1/2) are all even and leave a (t, a)-initial set."""
    if not 0 <= a <= t <= n <= 32:
        raise ValueError("need 0 <= a <= t <= n <= 32")
    _check_seed(seed)
    t0 = time.perf_counter()
    parts = map_ordered(_removal_chunk, [(n, t, a, seed, s, c) for s, c in _chunks(samples)], workers)
    tot = _sum(parts) if parts else np.zeros(3, dtype=np.int64)
    est, se = _proportion(int(tot[0]), samples)
    return ExperimentRecord(
        "removal",
        n,
        samples,
        seed,
        {"favorable": int(tot[0]), "all_even": int(tot[1]), "initial": int(tot[2])},
        est,
        se,
        p=0.5,
        t=t,
        a=a,
        runtime_s=time.perf_counter() - t0 if timing else 0.0,
    )


def removal_bound(t: int, a: int) -> float:
    return 1.0 - 7.0 * 2.0 ** (-t / 2) - 4.0 * 2.0 ** (-(a * a))


# ---------------------------------------------------------------- decomposability


def _decomp_exact_chunk(n, p, seed, start, count):
    out = np.zeros(4, dtype=np.int64)
    K.mc_decomposability(n, p, np.uint64(seed), start, count, out)
    return out


def _decomp_constructive_chunk(n, p, seed, start, count):
    out = np.zeros(4, dtype=np.int64)
    for i in range(start, start + count):
        g = sample_gnp_even(SamplerSpec(n, p, seed, i))
        o = decompose_auto(g, exact_cap=0)
        if o.status is Status.DECOMPOSED:
            out[0] += 1
        else:
            out[2] += 1
    return out


def estimate_nondecomposable(
    n: int,
    p: float,
    samples: int,
    seed: int,
    workers: int | None = None,
    exact_cap: int = DECOMP_CAP,
    timing: bool = True,
) -> ExperimentRecord:
    """Three-way classification of even-edge-conditioned G(n, p) samples.

    Up to ``exact_cap`` vertices every sample is certified by the exact oracle;
    above it only constructive successes are certified and the rest are unknown.
    """
    if not 0 <= n <= 64:
        raise ValueError("n must be in [0, 64]")
    if p == 1.0 and (n * (n - 1) // 2) % 2:
        raise ValueError(f"G({n}, 1) has an odd number of edges")
    _check_seed(seed)
    exact = n <= min(exact_cap, DECOMP_CAP)
    fn = _decomp_exact_chunk if exact else _decomp_constructive_chunk
    t0 = time.perf_counter()
    parts = map_ordered(fn, [(n, p, seed, s, c) for s, c in _chunks(samples)], workers)
    tot = _sum(parts) if parts else np.zeros(4, dtype=np.int64)
    if tot[3]:
        raise RuntimeError("even-edge rejection sampling did not terminate")
    tallies = {
        "certified_decomposable": int(tot[0]),
        "certified_nondecomposable": int(tot[1]) if exact else 0,
        "unknown": 0 if exact else int(tot[2]),
        "witness_failures": int(tot[2]) if exact else 0,
    }
    est, se = _proportion(tallies["certified_nondecomposable"], samples)
    return ExperimentRecord(
        "nondecomposable",
        n,
        samples,
        seed,
        tallies,
        est,
        se,
        p=p,
        runtime_s=time.perf_counter() - t0 if timing else 0.0,
    )


# ---------------------------------------------------------------- goodness of fit


@dataclass
class GofResult:
    experiment: str
    n: int
    samples: int
    seed: int
    statistic: float
    dof: int
    pvalue: float
    counts: list[int]
    draws: int

    def to_record(self, runtime_s: float = 0.0) -> ExperimentRecord:
        return ExperimentRecord(
            self.experiment,
            self.n,
            self.samples,
            self.seed,
            {"draws": self.draws, "bins": self.dof + 1},
            self.pvalue,
            0.0,
            p=0.5,
            runtime_s=runtime_s,
        )


def _parity_chunk(n, seed, start, count):
    hist = np.zeros(1 << n, dtype=np.int64)
    K.mc_parity_vectors(n, np.uint64(seed), start, count, hist)
    return hist


def degree_parity_uniformity(n: int, samples: int, seed: int, workers: int | None = None) -> GofResult:
    """Chi-square test that the degree-parity vector of G(n, 1/2) is uniform over even-weight vectors."""
    if not 2 <= n <= 16:
        raise ValueError("n must be in [2, 16]")
    _check_seed(seed)
    parts = map_ordered(_parity_chunk, [(n, seed, s, c) for s, c in _chunks(samples)], workers)
    hist = _sum(parts)
    support = [v for v in range(1 << n) if bin(v).count("1") % 2 == 0]
    if hist.sum() != hist[support].sum():
        raise AssertionError("an odd-weight degree-parity vector was observed")
    observed = hist[support]
    res = stats.chisquare(observed)
    return GofResult(
        "parity", n, samples, seed, float(res.statistic), len(support) - 1, float(res.pvalue),
        [int(x) for x in observed], samples,
    )


def _forget_chunk(n, target, drop, seed, start, count):
    pairs = (n - 1) * (n - 2) // 2
    hist = np.zeros(1 << pairs, dtype=np.int64)
    draws = K.mc_forgetful(n, target, drop, np.uint64(seed), start, count, hist)
    return hist, draws


def forgetfulness(
    n: int, target: int, drop: int, samples: int, seed: int, workers: int | None = None
) -> GofResult:
    """Chi-square test that G minus ``drop`` is uniform when G(n, 1/2) is conditioned on a parity vector."""
    if not 2 <= n <= 7:
        raise ValueError("n must be in [2, 7]")
    if bin(target).count("1") % 2 or target >> n:
        raise ValueError("target parity vector must have even weight and n bits")
    if not 0 <= drop < n:
        raise ValueError("drop must be a vertex")
    _check_seed(seed)
    parts = map_ordered(_forget_chunk, [(n, target, drop, seed, s, c) for s, c in _chunks(samples)], workers)
    hist = _sum([h for h, _ in parts])
    draws = sum(int(d) for _, d in parts)
    res = stats.chisquare(hist)
    return GofResult(
        "forget", n, samples, seed, float(res.statistic), len(hist) - 1, float(res.pvalue),
        [int(x) for x in hist], draws,
    )


# ---------------------------------------------------------------- persistence


def _atomic_write(path: Path, text: str) -> None:
    path = Path(path)
    try:
        fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent or ".")
        try:
            with os.fdopen(fd, "w", newline="") as fh:
                fh.write(text)
                fh.flush()
                os.fsync(fh.fileno())
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
    except OSError as exc:
        raise OSError(f"cannot write results to {path}: {exc}") from exc


def records_to_text(records, fmt: str, header: bool = True) -> str:
    if fmt == "json":
        return "".join(json.dumps(r.to_dict(), sort_keys=True) + "\n" for r in records)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(CSV_HEADER), lineterminator="\n")
        if header:
            w.writeheader()
        for r in records:
            w.writerow(r.csv_row())
        return buf.getvalue()
    raise ValueError(f"unknown format {fmt!r}")


def write_results(records, path, fmt: str = "json") -> None:
    """Append records to ``path``: the new file contents replace the old in one rename."""
    path = Path(path)
    records = list(records)
    try:
        old = path.read_text() if path.exists() else ""
    except OSError as exc:
        raise OSError(f"cannot read existing results at {path}: {exc}") from exc
    if fmt == "csv" and old:
        first = old.splitlines()[0] if old.strip() else ""
        if first != ",".join(CSV_HEADER):
            raise ValueError(f"{path} has a different CSV header")
    if old and not old.endswith("\n"):
        old += "\n"
    _atomic_write(path, old + records_to_text(records, fmt, header=not old))


def read_results(path, fmt: str = "json") -> list[ExperimentRecord]:
    text = Path(path).read_text()
    if fmt == "json":
        return [ExperimentRecord.from_dict(json.loads(line)) for line in text.splitlines() if line.strip()]
    return [ExperimentRecord.from_csv_row(row) for row in csv.DictReader(io.StringIO(text))]
