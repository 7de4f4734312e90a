"""Seeded Monte Carlo integration on spheres and balls.

Points on the sphere are normalized standard Gaussian vectors, which are
exactly uniform in every dimension.  Work is split into shards; shard k
draws from its own counter-based stream (numpy Philox keyed by
(seed, k)), and partial sums are combined in shard order, so a result is
a pure function of (seed, samples, shards) regardless of how many worker
threads ran the shards.  The reproducibility contract is exactly that
triple together with the generator name in :data:`RNG_ALGORITHM`; bit
equality across different numpy builds is not promised.

Estimates carry the plain MC standard error (sample standard deviation /
sqrt(samples)).  Plain MC is used deliberately: unbiasedness is what makes
3-sigma acceptance bands meaningful for the verification experiments.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

import numpy as np

from .errors import NonFiniteSampleError
from .exponents import per_function_exponents
from .symmetry import Symmetry

RNG_ALGORITHM = "numpy-philox4x64"

#: Soft bound on floats held per evaluation chunk (values plus points).
_CHUNK_BUDGET = 4_000_000

_WORKERS_ENV = "SPHEREBL_WORKERS"


@dataclass(frozen=True)
class QuadConfig:
    """Sampling budget, seed and shard layout of one estimate."""

    samples: int = 1_000_000
    seed: int = 0
    shards: int = field(default_factory=lambda: os.cpu_count() or 1)

    def __post_init__(self):
        if self.samples < 100:
            raise ValueError(f"at least 100 samples required, got {self.samples}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in an unsigned 64-bit integer")
        if self.shards < 1:
            raise ValueError("shards must be >= 1")

    def with_seed(self, seed: int) -> "QuadConfig":
        return QuadConfig(self.samples, seed, self.shards)

    def to_dict(self) -> dict:
        return {"samples": self.samples, "seed": self.seed, "shards": self.shards}

    @classmethod
    def from_dict(cls, data: dict) -> "QuadConfig":
        return cls(**data)


@dataclass(frozen=True)
class Estimate:
    """A Monte Carlo value with its standard error and provenance."""

    value: float
    stderr: float
    samples: int
    seed: int

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "stderr": self.stderr,
            "samples": self.samples,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Estimate":
        return cls(data["value"], data["stderr"], data["samples"], data["seed"])


@dataclass(frozen=True)
class Integrand:
    """A nonnegative function on the sphere S^(n-1).

    ``eval`` is vectorized: it receives an (m, n) array of unit vectors and
    returns m values.  ``symmetry_tag`` declares the block symmetry the
    function claims to respect (invariance under rotations inside each
    block); see :func:`block_rotation_residual` for the check.  Functions
    are assumed even in each coordinate; nothing enforces it, but the
    verification records flag integrands whose symmetry is untagged.
    """

    n: int
    eval: Callable[[np.ndarray], np.ndarray]
    symmetry_tag: Symmetry | None = None


def _worker_count(shards: int) -> int:
    env = os.environ.get(_WORKERS_ENV)
    if env:
        width = max(1, int(env))
    else:
        width = os.cpu_count() or 1
    return max(1, min(width, shards))


def _shard_counts(samples: int, shards: int) -> list[int]:
    base, extra = divmod(samples, shards)
    return [base + (1 if k < extra else 0) for k in range(shards)]


def _shard_rng(seed: int, shard: int) -> np.random.Generator:
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(shard,))
    return np.random.Generator(np.random.Philox(ss))


def _chunk_size(dim: int, num_series: int) -> int:
    return max(1024, _CHUNK_BUDGET // max(1, dim + num_series))


def _sphere_chunk(rng: np.random.Generator, m: int, n: int) -> np.ndarray:
    g = rng.standard_normal((m, n))
    norms = np.sqrt((g * g).sum(axis=1))
    return g / norms[:, None]


def _ball_chunk(rng: np.random.Generator, m: int, dim: int, radius: float) -> np.ndarray:
    # uniform in the ball: uniform direction times radius * U^(1/dim)
    g = rng.standard_normal((m, dim))
    norms = np.sqrt((g * g).sum(axis=1))
    u = rng.random(m)
    scale = radius * u ** (1.0 / dim) / norms
    return g * scale[:, None]


def _run_shard(sampler, count: int, chunk: int, batch_eval, num_series: int):
    s1 = np.zeros(num_series)
    s2 = np.zeros(num_series)
    left = count
    while left > 0:
        m = min(left, chunk)
        vals = np.asarray(batch_eval(sampler(m)), dtype=float)
        if vals.shape != (num_series, m):
            vals = vals.reshape(num_series, m)
        if not np.isfinite(vals).all():
            raise NonFiniteSampleError(
                "integrand returned a non-finite value; truncate the singularity")
        s1 += vals.sum(axis=1)
        s2 += (vals * vals).sum(axis=1)
        left -= m
    return s1, s2


def _mc_estimates(cfg: QuadConfig, dim: int, make_sampler, batch_eval,
                  num_series: int, scale: float = 1.0) -> list[Estimate]:
    """Shared engine: mean of each value series times ``scale``.

    ``make_sampler(shard)`` returns a closure drawing points for that
    shard.  Shard partials are reduced in index order for determinism.
    """
    counts = _shard_counts(cfg.samples, cfg.shards)
    chunk = _chunk_size(dim, num_series)

    def job(shard: int):
        sampler = make_sampler(shard)
        return _run_shard(sampler, counts[shard], chunk, batch_eval, num_series)

    active = [k for k in range(cfg.shards) if counts[k] > 0]
    workers = _worker_count(len(active))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(job, active))
    else:
        partials = [job(k) for k in active]

    s1 = np.zeros(num_series)
    s2 = np.zeros(num_series)
    for p1, p2 in partials:  # fixed order: active shards ascending
        s1 += p1
        s2 += p2

    m = cfg.samples
    out = []
    for i in range(num_series):
        mean = float(s1[i]) / m
        var = max(0.0, (float(s2[i]) - float(s1[i]) * float(s1[i]) / m) / (m - 1))
        out.append(Estimate(
            value=mean * scale,
            stderr=math.sqrt(var / m) * abs(scale),
            samples=m,
            seed=cfg.seed,
        ))
    return out


def mc_sphere_estimates(n: int, cfg: QuadConfig, batch_eval,
                        num_series: int) -> list[Estimate]:
    """Estimate several sphere integrals from one shared sample stream.

    ``batch_eval(points)`` maps an (m, n) array of unit vectors to a
    (num_series, m) array.  All series see the same points, which is what
    the paired grid experiments rely on.
    """
    if n < 2:
        raise ValueError("sphere sampling needs dimension >= 2")

    def make_sampler(shard: int):
        rng = _shard_rng(cfg.seed, shard)
        return lambda m: _sphere_chunk(rng, m, n)

    return _mc_estimates(cfg, n, make_sampler, batch_eval, num_series)


def ball_volume(dim: int, radius: float = 1.0) -> float:
    return math.pi ** (dim / 2) / math.gamma(dim / 2 + 1) * radius**dim


def mc_ball_estimates(dim: int, radius: float, cfg: QuadConfig, batch_eval,
                      num_series: int) -> list[Estimate]:
    """Like :func:`mc_sphere_estimates` but uniform over the ball of the
    given radius, scaled by its volume (so the estimate targets the plain
    Lebesgue integral)."""
    if dim < 1:
        raise ValueError("ball sampling needs dimension >= 1")

    def make_sampler(shard: int):
        rng = _shard_rng(cfg.seed, shard)
        return lambda m: _ball_chunk(rng, m, dim, radius)

    return _mc_estimates(cfg, dim, make_sampler, batch_eval, num_series,
                         scale=ball_volume(dim, radius))


def sample_sphere(n: int, cfg: QuadConfig) -> Iterator[np.ndarray]:
    """Stream the sample points of each shard as (m, n) arrays of unit
    vectors, exactly the points the estimators consume."""
    if n < 2:
        raise ValueError("sphere sampling needs dimension >= 2")
    chunk = _chunk_size(n, 1)
    for shard, count in enumerate(_shard_counts(cfg.samples, cfg.shards)):
        rng = _shard_rng(cfg.seed, shard)
        left = count
        while left > 0:
            m = min(left, chunk)
            yield _sphere_chunk(rng, m, n)
            left -= m


def integrate_sphere(f: Integrand, cfg: QuadConfig) -> Estimate:
    """MC mean of ``f`` against the normalized uniform measure."""
    return mc_sphere_estimates(f.n, cfg, lambda pts: f.eval(pts)[None, :], 1)[0]


def _power_transform(est: Estimate, p: float) -> Estimate:
    """Delta-method transform of an estimate of m = ||f||_p^p to m^(1/p)."""
    if est.value <= 0.0:
        return Estimate(0.0, 0.0, est.samples, est.seed)
    value = est.value ** (1.0 / p)
    stderr = est.stderr * est.value ** (1.0 / p - 1.0) / p
    return Estimate(value, stderr, est.samples, est.seed)


def lp_norm_sphere(f: Integrand, p: float, cfg: QuadConfig) -> Estimate:
    """(integral of f^p)^(1/p) with a delta-method standard error."""
    if p < 1:
        raise ValueError("p must be >= 1")
    raw = mc_sphere_estimates(f.n, cfg, lambda pts: f.eval(pts)[None, :] ** p, 1)[0]
    return _power_transform(raw, p)


def ball_reduced_integral(f: Integrand, alpha, cfg: QuadConfig) -> Estimate:
    """Weighted ball integral equivalent (up to a dimensional constant) to
    the sphere integral of a function of the block ``alpha``.

    Estimates  int_{B_k} f(y) (1 - |y|^2)^((n-2-k)/2) dy  with k = |alpha|,
    by uniform sampling on the k-ball times its volume.  ``f.eval`` must
    factor through the alpha-coordinates; the remaining coordinates of the
    evaluation points are filled so each point stays on the sphere.
    """
    n = f.n
    k = alpha.weight
    if not 1 <= k <= n - 1:
        raise ValueError("the block must be proper: 1 <= |alpha| <= n-1")
    cols = np.array([i - 1 for i in alpha.support()], dtype=int)
    spare = next(i for i in range(n) if i not in set(cols.tolist()))
    expo = (n - 2 - k) / 2.0

    def batch(ys: np.ndarray) -> np.ndarray:
        m = len(ys)
        r2 = (ys * ys).sum(axis=1)
        rest = np.clip(1.0 - r2, 0.0, None)
        pts = np.zeros((m, n))
        pts[:, cols] = ys
        pts[:, spare] = np.sqrt(rest)
        if expo < 0:
            weight = np.maximum(rest, np.finfo(float).tiny) ** expo
        else:
            weight = rest**expo
        return (f.eval(pts) * weight)[None, :]

    return mc_ball_estimates(k, 1.0, cfg, batch, 1)[0]


def product_integrand(fs: Sequence[Integrand]) -> Integrand:
    """Pointwise product of several integrands on the same sphere."""
    n = fs[0].n
    if any(f.n != n for f in fs):
        raise ValueError("integrands live on different spheres")

    def ev(pts: np.ndarray) -> np.ndarray:
        out = np.asarray(fs[0].eval(pts), dtype=float).copy()
        for f in fs[1:]:
            out *= f.eval(pts)
        return out

    return Integrand(n=n, eval=ev)


@dataclass(frozen=True)
class VerificationRecord:
    """Outcome of one product-versus-norms check.

    ``passed`` is True when LHS <= RHS * (1 + 3 * joint relative stderr),
    the joint relative error combining the LHS error and the norm errors in
    quadrature.  ``flags`` lists soft warnings (e.g. untagged integrands
    whose assumed reflection symmetry could not be checked).
    """

    ps: tuple[float, ...]
    lhs: Estimate
    norms: tuple[Estimate, ...]
    rhs_value: float
    rhs_stderr: float
    margin: float
    rel_stderr_joint: float
    passed: bool
    flags: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "ps": list(self.ps),
            "lhs": self.lhs.to_dict(),
            "norms": [e.to_dict() for e in self.norms],
            "rhs_value": self.rhs_value,
            "rhs_stderr": self.rhs_stderr,
            "margin": self.margin,
            "rel_stderr_joint": self.rel_stderr_joint,
            "passed": self.passed,
            "flags": list(self.flags),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "VerificationRecord":
        return cls(
            ps=tuple(data["ps"]),
            lhs=Estimate.from_dict(data["lhs"]),
            norms=tuple(Estimate.from_dict(e) for e in data["norms"]),
            rhs_value=data["rhs_value"],
            rhs_stderr=data["rhs_stderr"],
            margin=data["margin"],
            rel_stderr_joint=data["rel_stderr_joint"],
            passed=data["passed"],
            flags=tuple(data["flags"]),
        )


def _rel(est: Estimate) -> float:
    return est.stderr / abs(est.value) if est.value else 0.0


def holder_record(fs: Sequence[Integrand], ps: Sequence[float], cfg: QuadConfig,
                  flags: Sequence[str] = ()) -> VerificationRecord:
    """Estimate both sides of the product inequality on one sample stream."""
    n = fs[0].n
    ps = [float(p) for p in ps]

    def batch(pts: np.ndarray) -> np.ndarray:
        vals = [np.asarray(f.eval(pts), dtype=float) for f in fs]
        prod = vals[0].copy()
        for v in vals[1:]:
            prod = prod * v
        rows = [prod] + [v**p for v, p in zip(vals, ps)]
        return np.stack(rows)

    ests = mc_sphere_estimates(n, cfg, batch, 1 + len(fs))
    lhs = ests[0]
    norms = tuple(_power_transform(e, p) for e, p in zip(ests[1:], ps))
    rhs = math.prod(e.value for e in norms)
    rel_rhs_sq = sum(_rel(e) ** 2 for e in norms)
    rhs_stderr = rhs * math.sqrt(rel_rhs_sq)
    rel_joint = math.sqrt(_rel(lhs) ** 2 + rel_rhs_sq)
    passed = lhs.value <= rhs * (1.0 + 3.0 * rel_joint)
    return VerificationRecord(
        ps=tuple(ps),
        lhs=lhs,
        norms=norms,
        rhs_value=rhs,
        rhs_stderr=rhs_stderr,
        margin=rhs - lhs.value,
        rel_stderr_joint=rel_joint,
        passed=passed,
        flags=tuple(flags),
    )


def holder_verify(fams: Sequence[Symmetry], fs: Sequence[Integrand],
                  ps: Sequence[float], cfg: QuadConfig) -> VerificationRecord:
    """Check  int prod f_J dsigma <= prod ||f_J||_{p_J}  by Monte Carlo.

    ``fs[J]`` must be tagged with ``fams[J]`` (untagged integrands are
    accepted but flagged), and each ``ps[J]`` must reach the sharp
    per-function exponent of the family, below which the inequality has no
    guarantee.
    """
    if not (len(fams) == len(fs) == len(ps)):
        raise ValueError("fams, fs and ps must have equal lengths")
    exps = per_function_exponents(fams)
    flags = []
    for j, (s, f, p) in enumerate(zip(fams, fs, ps)):
        if f.n != s.n:
            raise ValueError(f"integrand {j} has dimension {f.n}, family has {s.n}")
        if f.symmetry_tag is None:
            flags.append(f"integrand {j} untagged: symmetry and evenness not checked")
        elif f.symmetry_tag != s:
            raise ValueError(f"integrand {j} is tagged with a different symmetry")
        if p < exps[j] - 1e-12:
            raise ValueError(
                f"p[{j}] = {p} is below the sharp exponent {exps[j]}")
    return holder_record(fs, ps, cfg, flags)


def block_rotation_residual(f: Integrand, cfg: QuadConfig | None = None,
                            points: int = 256) -> float:
    """Largest relative change of ``f`` under one random in-block rotation.

    Zero (up to roundoff) for a genuinely block-symmetric integrand; used
    to validate ``symmetry_tag`` claims.
    """
    if f.symmetry_tag is None:
        raise ValueError("integrand carries no symmetry tag")
    cfg = cfg or QuadConfig(samples=max(100, points), seed=7, shards=1)
    rng = _shard_rng(cfg.seed, 0)
    pts = _sphere_chunk(rng, points, f.n)
    base = np.asarray(f.eval(pts), dtype=float)
    worst = 0.0
    for a in f.symmetry_tag.alphas:
        sup = [i - 1 for i in a.support()]
        if len(sup) < 2:
            continue
        i, j = rng.choice(len(sup), size=2, replace=False)
        ci, cj = sup[int(i)], sup[int(j)]
        theta = rng.random() * 2 * np.pi
        rot = pts.copy()
        rot[:, ci] = np.cos(theta) * pts[:, ci] - np.sin(theta) * pts[:, cj]
        rot[:, cj] = np.sin(theta) * pts[:, ci] + np.cos(theta) * pts[:, cj]
        vals = np.asarray(f.eval(rot), dtype=float)
        denom = np.maximum(np.abs(base), 1e-300)
        worst = max(worst, float(np.max(np.abs(vals - base) / denom)))
    return worst
