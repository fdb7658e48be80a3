"""Singular triples of bilinear operators: search, verification, classification.

A singular triple of T: H1 x H2 -> K is a positive value tau together with
unit vectors (x, y, z) satisfying

    T(x, y) = tau z,   contract_1(y, z) = tau x,   contract_2(x, z) = tau y,

where contract_1/contract_2 are the adjoint contractions of tensor_core.
Such triples are exactly the constrained critical points of <T(x,y), z> on
the product of unit spheres.

The workhorse is an alternating power iteration (hopm_refine) run from a
deterministic multi-start set. Alternating iteration only converges to
attracting triples, so enumerate_triples additionally polishes every start
with a Newton corrector on the square stationarity system, which reaches
saddle-type triples as well. Everything is deterministic for a fixed
SearchConfig.seed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .tensor_core import Tensor3, _as_entries, hs_norm

__all__ = [
    "SearchConfig",
    "SingularTriple",
    "NonConvergence",
    "TripleCheck",
    "OrderedCheck",
    "Spectrum",
    "hopm_refine",
    "hopm_value_trace",
    "verify_triple",
    "operator_norm",
    "enumerate_triples",
    "canonicalize",
    "is_ordered",
]

#: Norms below this count as "a zero vector" during normalization.
_ZERO_NORM = 1e-250

#: Relative residual target and sweep budget for the post-convergence polish.
#: The value-change stop leaves O(sqrt(iter_tol)) vector error at linearly
#: convergent fixed points, so sweeps continue until residuals reach this
#: level or stall; verification at residual_tol then has real margin.
_POLISH_FACTOR = 1e-13
_POLISH_MAX_SWEEPS = 3000
_POLISH_STALL_LIMIT = 40

#: Newton corrector settings (enumerate_triples / oracle only).
_NEWTON_TOL = 1e-13
_NEWTON_MAX_STEPS = 100
_NEWTON_DIVERGED = 1e6


@dataclass(frozen=True)
class SearchConfig:
    """Multi-start, tolerance and seed parameters for all iterative searches.

    starts=None resolves to 64 * max(dims) for the tensor at hand.
    iter_tol is the relative value-change stop for the alternating
    iteration; residual_tol gates verification; dedup_tol controls the
    sign-orbit merge distance; seed makes every search reproducible.
    """

    starts: Optional[int] = None
    max_iter: int = 10000
    iter_tol: float = 1e-14
    residual_tol: float = 1e-9
    dedup_tol: float = 1e-6
    seed: int = 0

    def __post_init__(self) -> None:
        if self.starts is not None and self.starts < 1:
            raise ValueError("starts must be a positive integer")
        if self.max_iter < 1:
            raise ValueError("max_iter must be a positive integer")
        for name in ("iter_tol", "residual_tol", "dedup_tol"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.seed < 0:
            raise ValueError("seed must be a nonnegative integer")

    def resolved_starts(self, dims: tuple[int, int, int]) -> int:
        return self.starts if self.starts is not None else 64 * max(dims)


@dataclass(frozen=True, eq=False)
class SingularTriple:
    """(tau, x, y, z) with the residuals of the three defining equations.

    x, y, z are unit float arrays in H1, H2, K. residuals holds
    (||T(x,y) - tau z||, ||contract_1(y,z) - tau x||, ||contract_2(x,z) - tau y||).
    """

    tau: float
    x: np.ndarray
    y: np.ndarray
    z: np.ndarray
    residuals: tuple[float, float, float]

    @property
    def max_residual(self) -> float:
        return max(self.residuals)


@dataclass(frozen=True)
class NonConvergence:
    """Returned by hopm_refine when the iteration cannot produce a triple."""

    reason: str


@dataclass(frozen=True)
class TripleCheck:
    """Residual report of verify_triple."""

    r1: float
    r2: float
    r3: float
    verified: bool

    @property
    def max_residual(self) -> float:
        return max(self.r1, self.r2, self.r3)


@dataclass(frozen=True)
class OrderedCheck:
    """Result of the ordered-singular-value slice test.

    slice_residuals are the Frobenius residuals of the three defining slice
    identities. adjoint_slice_residual is the symmetric fourth slice; it is
    reported for diagnosis but never gates the classification.
    """

    ordered: bool
    slice_residuals: tuple[float, float, float]
    adjoint_slice_residual: float


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Verified triples sorted by tau descending, deduplicated modulo sign orbit.

    complete stays False unless the exhaustive oracle confirms the listing
    on a small instance (oracle.confirm_complete); the multi-start search
    itself never certifies completeness.
    """

    triples: tuple[SingularTriple, ...]
    complete: bool = False


# ---------------------------------------------------------------------------
# residual and orbit helpers


def _triple_state_residuals(
    arr: np.ndarray, x: np.ndarray, y: np.ndarray, z: np.ndarray
) -> tuple[float, tuple[float, float, float]]:
    """tau = <T(x,y), z> and the three equation residuals at (x, y, z)."""
    txy = np.einsum("ijk,i,j->k", arr, x, y)
    tau = float(txy @ z)
    r1 = float(np.linalg.norm(txy - tau * z))
    r2 = float(np.linalg.norm(np.einsum("ijk,j,k->i", arr, y, z) - tau * x))
    r3 = float(np.linalg.norm(np.einsum("ijk,i,k->j", arr, x, z) - tau * y))
    return tau, (r1, r2, r3)


_ORBIT_SIGNS = ((1.0, 1.0, 1.0), (-1.0, -1.0, 1.0), (-1.0, 1.0, -1.0), (1.0, -1.0, -1.0))


def _orbit_distance(a: SingularTriple, b: SingularTriple) -> float:
    """min over sign variants of max(||x-x'||, ||y-y'||, ||z-z'||)."""
    best = np.inf
    for sx, sy, sz in _ORBIT_SIGNS:
        d = max(
            float(np.linalg.norm(a.x - sx * b.x)),
            float(np.linalg.norm(a.y - sy * b.y)),
            float(np.linalg.norm(a.z - sz * b.z)),
        )
        best = min(best, d)
    return best


def canonicalize(triple: SingularTriple) -> SingularTriple:
    """The sign-orbit representative with peak entries of x and y positive.

    The orbit {(x,y,z), (-x,-y,z), (-x,y,-z), (x,-y,-z)} preserves the
    defining equations with tau > 0. The representative makes the
    largest-magnitude entry of x positive, then of y positive; z's sign is
    forced (it picks up the product of the two flips). Idempotent; the
    residuals are orbit-invariant and carried over unchanged.
    """
    x = np.asarray(triple.x, dtype=float)
    y = np.asarray(triple.y, dtype=float)
    z = np.asarray(triple.z, dtype=float)
    if not np.any(x) or not np.any(y) or not np.any(z):
        raise ValueError("cannot canonicalize a triple with a zero vector")
    sx = -1.0 if x[int(np.argmax(np.abs(x)))] < 0 else 1.0
    sy = -1.0 if y[int(np.argmax(np.abs(y)))] < 0 else 1.0
    return SingularTriple(
        tau=triple.tau,
        x=sx * x,
        y=sy * y,
        z=(sx * sy) * z,
        residuals=triple.residuals,
    )


# ---------------------------------------------------------------------------
# batched alternating iteration (phase A: value stop; phase B: residual polish)


def _row_normalize(M: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    norms = np.linalg.norm(M, axis=1)
    safe = np.where(norms > _ZERO_NORM, norms, 1.0)
    return M / safe[:, None], norms


def _batch_residuals(
    arr: np.ndarray, X: np.ndarray, Y: np.ndarray, Z: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Per-row tau and max equation residual for a block of states."""
    TXY = np.einsum("ijk,si,sj->sk", arr, X, Y)
    tau = np.einsum("sk,sk->s", TXY, Z)
    r1 = np.linalg.norm(TXY - tau[:, None] * Z, axis=1)
    r2 = np.linalg.norm(
        np.einsum("ijk,sj,sk->si", arr, Y, Z) - tau[:, None] * X, axis=1
    )
    r3 = np.linalg.norm(
        np.einsum("ijk,si,sk->sj", arr, X, Z) - tau[:, None] * Y, axis=1
    )
    return tau, np.maximum(np.maximum(r1, r2), r3)


def _als_batch(
    arr: np.ndarray,
    X0: np.ndarray,
    Y0: np.ndarray,
    cfg: SearchConfig,
    trace: Optional[list] = None,
) -> dict:
    """Run the alternating iteration on a block of starts.

    Each row iterates z <- T(x,y)/|.|, x <- contract_1(y,z)/|.|,
    y <- contract_2(x,z)/|.| until the value <T(x,y), z> changes by less
    than iter_tol relatively (rows are independent; batching only
    vectorizes the identical update). Converged rows are then polished
    with further sweeps until the equation residuals stall or reach
    ~1e-13*(1+tau). Returns per-row final states and status.
    """
    S = X0.shape[0]
    n3 = arr.shape[2]
    X, _ = _row_normalize(np.array(X0, dtype=float))
    Y, _ = _row_normalize(np.array(Y0, dtype=float))
    Z = np.zeros((S, n3))
    f_prev = np.full(S, np.nan)
    converged = np.zeros(S, dtype=bool)
    dead = np.zeros(S, dtype=bool)

    for _ in range(cfg.max_iter):
        act = ~(converged | dead)
        if not act.any():
            break
        TXY = np.einsum("ijk,si,sj->sk", arr, X[act], Y[act])
        f = np.linalg.norm(TXY, axis=1)
        idx = np.flatnonzero(act)
        zero = f <= _ZERO_NORM
        if zero.any():
            dead[idx[zero]] = True
        Z[idx[~zero]] = TXY[~zero] / f[~zero, None]
        if trace is not None and not dead[0] and act[0]:
            trace.append(float(f[0]))
        prev = f_prev[idx]
        done = (~zero) & ~np.isnan(prev) & (np.abs(f - prev) <= cfg.iter_tol * (1.0 + f))
        converged[idx[done]] = True
        f_prev[idx] = f

        act = ~(converged | dead)
        if not act.any():
            break
        XN = np.einsum("ijk,sj,sk->si", arr, Y[act], Z[act])
        xn = np.linalg.norm(XN, axis=1)
        idx = np.flatnonzero(act)
        zero = xn <= _ZERO_NORM
        dead[idx[zero]] = True
        X[idx[~zero]] = XN[~zero] / xn[~zero, None]

        act = ~(converged | dead)
        idx = np.flatnonzero(act)
        if idx.size:
            YN = np.einsum("ijk,si,sk->sj", arr, X[act], Z[act])
            yn = np.linalg.norm(YN, axis=1)
            zero = yn <= _ZERO_NORM
            dead[idx[zero]] = True
            Y[idx[~zero]] = YN[~zero] / yn[~zero, None]

    ok = converged.copy()

    # Phase B: residual polish on the converged rows.
    if ok.any():
        sel = np.flatnonzero(ok)
        Xb, Yb, Zb = X[sel].copy(), Y[sel].copy(), Z[sel].copy()
        tau_b, res_b = _batch_residuals(arr, Xb, Yb, Zb)
        bestX, bestY, bestZ = Xb.copy(), Yb.copy(), Zb.copy()
        best_r = res_b.copy()
        stall = np.zeros(sel.size, dtype=int)
        active = best_r > _POLISH_FACTOR * (1.0 + np.abs(tau_b))
        for _ in range(_POLISH_MAX_SWEEPS):
            if not active.any():
                break
            a = np.flatnonzero(active)
            TXY = np.einsum("ijk,si,sj->sk", arr, Xb[a], Yb[a])
            f = np.linalg.norm(TXY, axis=1)
            bad = f <= _ZERO_NORM
            if bad.any():
                active[a[bad]] = False
                a = a[~bad]
                if a.size == 0:
                    continue
                TXY = TXY[~bad]
                f = f[~bad]
            Zb[a] = TXY / f[:, None]
            Xb[a] = _row_normalize(np.einsum("ijk,sj,sk->si", arr, Yb[a], Zb[a]))[0]
            Yb[a] = _row_normalize(np.einsum("ijk,si,sk->sj", arr, Xb[a], Zb[a]))[0]
            tau_a, res_a = _batch_residuals(arr, Xb[a], Yb[a], Zb[a])
            improved = res_a < best_r[a]
            imp = a[improved]
            bestX[imp], bestY[imp], bestZ[imp] = (
                Xb[imp],
                Yb[imp],
                Zb[imp],
            )
            best_r[imp] = res_a[improved]
            stall[imp] = 0
            stall[a[~improved]] += 1
            hit = res_a <= _POLISH_FACTOR * (1.0 + np.abs(tau_a))
            active[a[hit]] = False
            active[a[stall[a] > _POLISH_STALL_LIMIT]] = False
        X[sel], Y[sel], Z[sel] = bestX, bestY, bestZ

    reasons = np.where(dead, "zero contraction", "max_iter exceeded")
    return {"X": X, "Y": Y, "Z": Z, "ok": ok, "reasons": reasons}


# ---------------------------------------------------------------------------
# Newton corrector on the square stationarity system


def _newton_batch(
    arr: np.ndarray,
    X0: np.ndarray,
    Y0: np.ndarray,
    Z0: np.ndarray,
    tau0: np.ndarray,
) -> dict:
    """Newton iteration on F(x,y,z,tau) = 0 for a block of starts.

    F stacks T(x,y) - tau z, contract_1(y,z) - tau x, contract_2(x,z) - tau y
    and (||x||^2 - 1)/2; the system is square, and at a root with tau != 0
    the remaining unit norms hold automatically. Unlike the alternating
    iteration, Newton converges to critical points of any index, which is
    what recovers saddle-type triples. Roots with tau < 0 are mapped to
    positive tau via (x, y, z, tau) -> (x, -y, z, -tau).
    """
    n1, n2, n3 = arr.shape
    m = n1 + n2 + n3 + 1
    S = X0.shape[0]
    X = np.array(X0, dtype=float)
    Y = np.array(Y0, dtype=float)
    Z = np.array(Z0, dtype=float)
    tau = np.array(tau0, dtype=float)
    done = np.zeros(S, dtype=bool)
    alive = np.ones(S, dtype=bool)

    sl_x = slice(0, n1)
    sl_y = slice(n1, n1 + n2)
    sl_z = slice(n1 + n2, n1 + n2 + n3)
    r_f1 = slice(0, n3)
    r_f2 = slice(n3, n3 + n1)
    r_f3 = slice(n3 + n1, n3 + n1 + n2)

    for _ in range(_NEWTON_MAX_STEPS):
        act = alive & ~done
        if not act.any():
            break
        idx = np.flatnonzero(act)
        x, y, z, t = X[idx], Y[idx], Z[idx], tau[idx]
        k = idx.size
        A1 = np.einsum("ijk,sj->ski", arr, y)
        A2 = np.einsum("ijk,si->skj", arr, x)
        A3 = np.einsum("ijk,sk->sij", arr, z)
        F = np.empty((k, m))
        F[:, r_f1] = np.einsum("ski,si->sk", A1, x) - t[:, None] * z
        F[:, r_f2] = np.einsum("ski,sk->si", A1, z) - t[:, None] * x
        F[:, r_f3] = np.einsum("skj,sk->sj", A2, z) - t[:, None] * y
        F[:, -1] = 0.5 * (np.einsum("si,si->s", x, x) - 1.0)
        fn = np.linalg.norm(F, axis=1)
        hit = fn <= _NEWTON_TOL * (1.0 + np.abs(t))
        done[idx[hit]] = True
        go = ~hit
        if not go.any():
            continue
        gi = idx[go]
        kk = gi.size
        J = np.zeros((kk, m, m))
        J[:, r_f1, sl_x] = A1[go]
        J[:, r_f1, sl_y] = A2[go]
        J[:, r_f1, sl_z] = -tau[gi, None, None] * np.eye(n3)
        J[:, r_f1, -1] = -Z[gi]
        J[:, r_f2, sl_x] = -tau[gi, None, None] * np.eye(n1)
        J[:, r_f2, sl_y] = A3[go]
        J[:, r_f2, sl_z] = np.transpose(A1[go], (0, 2, 1))
        J[:, r_f2, -1] = -X[gi]
        J[:, r_f3, sl_x] = np.transpose(A3[go], (0, 2, 1))
        J[:, r_f3, sl_y] = -tau[gi, None, None] * np.eye(n2)
        J[:, r_f3, sl_z] = np.transpose(A2[go], (0, 2, 1))
        J[:, r_f3, -1] = -Y[gi]
        J[:, -1, sl_x] = X[gi]
        rhs = F[go]
        try:
            step = np.linalg.solve(J, rhs[:, :, None])[:, :, 0]
        except np.linalg.LinAlgError:
            step = np.zeros_like(rhs)
            for r in range(kk):
                try:
                    step[r] = np.linalg.solve(J[r], rhs[r])
                except np.linalg.LinAlgError:
                    alive[gi[r]] = False
        X[gi] -= step[:, sl_x]
        Y[gi] -= step[:, sl_y]
        Z[gi] -= step[:, sl_z]
        tau[gi] -= step[:, -1]
        huge = (
            (np.max(np.abs(X[gi]), axis=1) > _NEWTON_DIVERGED)
            | (np.max(np.abs(Y[gi]), axis=1) > _NEWTON_DIVERGED)
            | (np.max(np.abs(Z[gi]), axis=1) > _NEWTON_DIVERGED)
            | ~np.isfinite(tau[gi])
            | ~np.isfinite(X[gi]).all(axis=1)
            | ~np.isfinite(Y[gi]).all(axis=1)
            | ~np.isfinite(Z[gi]).all(axis=1)
        )
        alive[gi[huge]] = False

    ok = done & alive
    # Negative-tau roots are the same orbit with the second factor flipped.
    neg = ok & (tau < 0)
    Y[neg] *= -1.0
    tau[neg] *= -1.0
    # Roots carry unit norms up to the Newton tolerance; snap exactly.
    if ok.any():
        sel = np.flatnonzero(ok)
        for label, M in (("x", X), ("y", Y), ("z", Z)):
            norms = np.linalg.norm(M[sel], axis=1)
            off = np.abs(norms - 1.0) > 1e-6
            ok[sel[off]] = False
            good = sel[~off]
            M[good] = M[good] / np.linalg.norm(M[good], axis=1)[:, None]
            sel = sel[~off]
    return {"X": X, "Y": Y, "Z": Z, "tau": tau, "ok": ok}


# ---------------------------------------------------------------------------
# deterministic start sets


def _basis_pair_starts(
    arr: np.ndarray,
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """One start per canonical basis pair (e_i, f_j), z aligned with T(e_i, f_j)."""
    n1, n2, n3 = arr.shape
    X = np.repeat(np.eye(n1), n2, axis=0)
    Y = np.tile(np.eye(n2), (n1, 1))
    TXY = np.einsum("ijk,si,sj->sk", arr, X, Y)
    norms = np.linalg.norm(TXY, axis=1)
    Z = np.zeros((n1 * n2, n3))
    pos = norms > _ZERO_NORM
    Z[pos] = TXY[pos] / norms[pos, None]
    Z[~pos, 0] = 1.0
    return X, Y, Z, norms


def _random_starts(
    dims: tuple[int, int, int], count: int, seed: int
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """count uniform random unit triples, seeded deterministically per start index."""
    n1, n2, n3 = dims
    X = np.empty((count, n1))
    Y = np.empty((count, n2))
    Z = np.empty((count, n3))
    for s in range(count):
        g = np.random.default_rng([seed, s])
        v = g.standard_normal(n1 + n2 + n3)
        X[s] = v[:n1]
        Y[s] = v[n1 : n1 + n2]
        Z[s] = v[n1 + n2 :]
    X, _ = _row_normalize(X)
    Y, _ = _row_normalize(Y)
    Z, _ = _row_normalize(Z)
    return X, Y, Z


# ---------------------------------------------------------------------------
# candidate collection, dedup, ordering


def _collect_verified(
    T: Tensor3,
    X: np.ndarray,
    Y: np.ndarray,
    Z: np.ndarray,
    ok: np.ndarray,
    cfg: SearchConfig,
) -> list[SingularTriple]:
    arr = T.array
    out: list[SingularTriple] = []
    for i in np.flatnonzero(ok):
        tau, residuals = _triple_state_residuals(arr, X[i], Y[i], Z[i])
        if tau <= cfg.residual_tol:
            continue
        if max(residuals) > cfg.residual_tol:
            continue
        out.append(
            canonicalize(
                SingularTriple(tau=tau, x=X[i], y=Y[i], z=Z[i], residuals=residuals)
            )
        )
    return out


def _same_orbit(a: SingularTriple, b: SingularTriple, cfg: SearchConfig) -> bool:
    if abs(a.tau - b.tau) > cfg.dedup_tol * (1.0 + max(a.tau, b.tau)):
        return False
    return _orbit_distance(a, b) <= cfg.dedup_tol


def _dedup(cands: Sequence[SingularTriple], cfg: SearchConfig) -> list[SingularTriple]:
    """Sequential reduction in start-index order; first representative wins."""
    kept: list[SingularTriple] = []
    for c in cands:
        if not any(_same_orbit(c, k, cfg) for k in kept):
            kept.append(c)
    return kept


def _sort_triples(
    kept: Sequence[SingularTriple], cfg: SearchConfig
) -> tuple[SingularTriple, ...]:
    """tau descending; near-equal tau groups ordered lexicographically by (x, y)."""
    by_tau = sorted(kept, key=lambda tr: -tr.tau)
    out: list[SingularTriple] = []
    group: list[SingularTriple] = []
    for tr in by_tau:
        if group and group[-1].tau - tr.tau > cfg.dedup_tol * (1.0 + tr.tau):
            group.sort(key=lambda t: (tuple(t.x), tuple(t.y)))
            out.extend(group)
            group = []
        group.append(tr)
    group.sort(key=lambda t: (tuple(t.x), tuple(t.y)))
    out.extend(group)
    return tuple(out)


def _search_candidates(
    T: Tensor3,
    X0: np.ndarray,
    Y0: np.ndarray,
    Z0: np.ndarray,
    cfg: SearchConfig,
    use_newton: bool,
) -> list[SingularTriple]:
    """Alternating iteration over a start block, optionally followed by Newton.

    Candidates are collected in deterministic order: alternating-iteration
    results by start index first, then Newton results by start index.
    """
    arr = T.array
    als = _als_batch(arr, X0, Y0, cfg)
    cands = _collect_verified(T, als["X"], als["Y"], als["Z"], als["ok"], cfg)
    if use_newton:
        tau0 = np.einsum(
            "sk,sk->s", np.einsum("ijk,si,sj->sk", arr, X0, Y0), Z0
        )
        newt = _newton_batch(arr, X0, Y0, Z0, tau0)
        cands.extend(
            _collect_verified(T, newt["X"], newt["Y"], newt["Z"], newt["ok"], cfg)
        )
    return cands


# ---------------------------------------------------------------------------
# public operations


def hopm_refine(
    T: Tensor3,
    x0,
    y0,
    z0,
    cfg: Optional[SearchConfig] = None,
) -> Union[SingularTriple, NonConvergence]:
    """Alternating power iteration from a single start.

    Iterates z <- T(x,y)/|.|, x <- contract_1(y,z)/|.|, y <- contract_2(x,z)/|.|
    until the value <T(x,y), z> changes by less than iter_tol relatively,
    then polishes and returns the canonicalized triple with its computed
    residuals (the result is a candidate; it is not verification-gated).
    The value sequence is nondecreasing across sweeps. A zero vector under
    normalization or an exhausted iteration budget yields NonConvergence.
    z0 participates only through the start contract (the first sweep
    replaces it); it is validated like the others.
    """
    cfg = cfg if cfg is not None else SearchConfig()
    n1, n2, n3 = T.dims
    xa = _as_entries(x0, "H1", n1, "x0")
    ya = _as_entries(y0, "H2", n2, "y0")
    za = _as_entries(z0, "K", n3, "z0")
    for label, v in (("x0", xa), ("y0", ya), ("z0", za)):
        if np.linalg.norm(v) <= _ZERO_NORM:
            return NonConvergence(f"degenerate start: {label} is a zero vector")
    res = _als_batch(T.array, xa[None, :], ya[None, :], cfg)
    if not res["ok"][0]:
        return NonConvergence(str(res["reasons"][0]))
    tau, residuals = _triple_state_residuals(
        T.array, res["X"][0], res["Y"][0], res["Z"][0]
    )
    return canonicalize(
        SingularTriple(
            tau=tau, x=res["X"][0], y=res["Y"][0], z=res["Z"][0], residuals=residuals
        )
    )


def hopm_value_trace(
    T: Tensor3, x0, y0, cfg: Optional[SearchConfig] = None
) -> np.ndarray:
    """The per-sweep objective values ||T(x,y)|| of a single-start iteration.

    Diagnostic companion to hopm_refine: each alternating update maximizes
    the objective in one block, so the returned sequence is nondecreasing
    up to roundoff.
    """
    cfg = cfg if cfg is not None else SearchConfig()
    n1, n2, _ = T.dims
    xa = _as_entries(x0, "H1", n1, "x0")
    ya = _as_entries(y0, "H2", n2, "y0")
    values: list[float] = []
    _als_batch(T.array, xa[None, :], ya[None, :], cfg, trace=values)
    return np.asarray(values)


def verify_triple(T: Tensor3, triple: SingularTriple, tol: float) -> TripleCheck:
    """Check the three defining equations at the given triple.

    verified means max residual <= tol and tau > 0. Vectors more than 1e-8
    away from unit norm are rejected as an argument error.
    """
    n1, n2, n3 = T.dims
    xa = _as_entries(triple.x, "H1", n1, "x")
    ya = _as_entries(triple.y, "H2", n2, "y")
    za = _as_entries(triple.z, "K", n3, "z")
    for label, v in (("x", xa), ("y", ya), ("z", za)):
        if abs(np.linalg.norm(v) - 1.0) > 1e-8:
            raise ValueError(f"{label} is not a unit vector")
    arr = T.array
    txy = np.einsum("ijk,i,j->k", arr, xa, ya)
    tau = float(triple.tau)
    r1 = float(np.linalg.norm(txy - tau * za))
    r2 = float(np.linalg.norm(np.einsum("ijk,j,k->i", arr, ya, za) - tau * xa))
    r3 = float(np.linalg.norm(np.einsum("ijk,i,k->j", arr, xa, za) - tau * ya))
    verified = max(r1, r2, r3) <= tol and tau > 0
    return TripleCheck(r1=r1, r2=r2, r3=r3, verified=verified)


def is_ordered(T: Tensor3, triple: SingularTriple, tol: float) -> OrderedCheck:
    """Classify a verified triple as an ordered singular value.

    Checks three matrix identities over full bases: (a) freezing y gives the
    rank-one map x -> tau <x, x1> z1, (b) freezing x gives y -> tau <y, y1> z1,
    (c) the first adjoint contraction against z gives y -> tau <y, y1> x1.
    The symmetric fourth slice (second contraction against z) equals the
    transpose of (c) and is reported as a diagnostic only.
    """
    check = verify_triple(T, triple, tol)
    if not check.verified:
        raise ValueError(
            f"is_ordered requires a verified triple (max residual {check.max_residual:.3e})"
        )
    arr = T.array
    x, y, z = np.asarray(triple.x), np.asarray(triple.y), np.asarray(triple.z)
    tau = float(triple.tau)
    slice_a = np.einsum("ijk,j->ki", arr, y) - tau * np.outer(z, x)
    slice_b = np.einsum("ijk,i->kj", arr, x) - tau * np.outer(z, y)
    slice_c = np.einsum("ijk,k->ij", arr, z) - tau * np.outer(x, y)
    slice_d = np.einsum("ijk,k->ji", arr, z) - tau * np.outer(y, x)
    residuals = (
        float(np.linalg.norm(slice_a)),
        float(np.linalg.norm(slice_b)),
        float(np.linalg.norm(slice_c)),
    )
    return OrderedCheck(
        ordered=all(r <= tol for r in residuals),
        slice_residuals=residuals,
        adjoint_slice_residual=float(np.linalg.norm(slice_d)),
    )


def operator_norm(
    T: Tensor3, cfg: Optional[SearchConfig] = None
) -> tuple[float, Optional[SingularTriple]]:
    """The bilinear operator norm sup ||T(x,y)|| over unit x, y.

    The supremum is attained at a singular triple, and the maximizer is an
    attractor of the alternating iteration, so a plain multi-start run
    suffices: cfg.starts seeded random starts plus all canonical basis
    pairs. Returns (0.0, None) for the (near-)zero tensor.
    """
    cfg = cfg if cfg is not None else SearchConfig()
    if hs_norm(T) <= cfg.residual_tol:
        return 0.0, None
    arr = T.array
    Xb, Yb, Zb, _ = _basis_pair_starts(arr)
    Xr, Yr, Zr = _random_starts(T.dims, cfg.resolved_starts(T.dims), cfg.seed)
    X0 = np.vstack([Xb, Xr])
    Y0 = np.vstack([Yb, Yr])
    Z0 = np.vstack([Zb, Zr])
    cands = _search_candidates(T, X0, Y0, Z0, cfg, use_newton=False)
    if not cands:
        return 0.0, None
    ordered = _sort_triples(_dedup(cands, cfg), cfg)
    best = ordered[0]
    return best.tau, best


def enumerate_triples(T: Tensor3, cfg: Optional[SearchConfig] = None) -> Spectrum:
    """All singular triples the deterministic multi-start search can find.

    Every returned triple is verified at residual_tol; the list is
    deduplicated modulo the sign orbit, sorted by tau descending, and
    distinct orbits sharing (numerically) the same tau are all retained.
    Alternating-iteration results are supplemented with a Newton corrector
    run from the same start set, which recovers saddle-type triples the
    alternating iteration repels. Enumeration is heuristic: complete is
    always False here (see oracle.confirm_complete).
    """
    cfg = cfg if cfg is not None else SearchConfig()
    if hs_norm(T) < cfg.residual_tol:
        return Spectrum(triples=(), complete=False)
    arr = T.array
    Xb, Yb, Zb, _ = _basis_pair_starts(arr)
    Xr, Yr, Zr = _random_starts(T.dims, cfg.resolved_starts(T.dims), cfg.seed)
    X0 = np.vstack([Xb, Xr])
    Y0 = np.vstack([Yb, Yr])
    Z0 = np.vstack([Zb, Zr])
    cands = _search_candidates(T, X0, Y0, Z0, cfg, use_newton=True)
    return Spectrum(triples=_sort_triples(_dedup(cands, cfg), cfg), complete=False)
