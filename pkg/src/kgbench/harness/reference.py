"""Reference solutions and their on-disk cache.

Policies
--------
``tsf-fp2-fine``  TSF-FP2 at tau_ref = 1e-5 with 32 xi points.
``mol-rk``        Fourier method of lines with DOP853 at rtol 1e-12 (eps >= 1/32).
``cross-check``   both of the above; they must agree to 1e-7 in H1.
``auto``          mol-rk for eps >= 1/32, tsf-fp2-fine below.

With lam = 0 every policy returns the closed-form per-mode solution.

Cache files hold a text header (one ``key=value`` per line, closed by a
line ``end``) followed by the raw little-endian complex128 payload; the
header carries a SHA-256 of the payload.
"""

from __future__ import annotations

import contextlib
import fcntl
import hashlib
import math
import os
import tempfile
import threading
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .. import ua
from ..errors import ChecksumError, ReferenceIntegrityError, ReferenceUnavailableError
from ..mol import mol_solve
from ..problem import NkgeParams, sample_data
from ..spectral import Grid1d, fwd, h1_norm_coeffs

POLICIES = ("auto", "tsf-fp2-fine", "mol-rk", "cross-check")
TAU_REF = 1e-5
XI_REF = 32
MOL_RTOL = 1e-12
MOL_ATOL = 1e-14
MOL_MIN_EPS = 1.0 / 32
CROSS_TOL = 1e-7
FORMAT_VERSION = "1"


@dataclass
class ReferenceSolution:
    u: np.ndarray
    ut: np.ndarray | None
    meta: dict = field(default_factory=dict)

    @property
    def grid(self) -> Grid1d:
        a, b = self.meta["domain"]
        return Grid1d(float(a), float(b), int(self.meta["N"]))


def cache_dir() -> Path:
    d = os.environ.get("KGBENCH_CACHE_DIR")
    path = Path(d) if d else Path.home() / ".cache" / "kgbench"
    path.mkdir(parents=True, exist_ok=True)
    return path


def resolve_policy(policy: str, eps: float, lam: float) -> str:
    if policy not in POLICIES:
        raise ValueError(f"unknown reference policy {policy!r}; known: {POLICIES}")
    if lam == 0.0:
        return "exact-linear"
    if policy == "auto":
        return "mol-rk" if eps >= MOL_MIN_EPS * (1 - 1e-12) else "tsf-fp2-fine"
    if policy in ("mol-rk", "cross-check") and eps < MOL_MIN_EPS * (1 - 1e-12):
        raise ReferenceUnavailableError(f"{policy} needs eps >= 1/32, got eps={eps:g}")
    return policy


def _meta(p: NkgeParams, data_id: str, t_end: float, grid: Grid1d, generator: str) -> dict:
    m = {
        "format": FORMAT_VERSION,
        "generator": generator,
        "eps": repr(float(p.eps)),
        "lam": repr(float(p.lam)),
        "domain": (repr(float(grid.a)), repr(float(grid.b))),
        "N": str(grid.N),
        "data": data_id,
        "t": repr(float(t_end)),
    }
    if generator == "tsf-fp2-fine":
        m["tau_ref"] = repr(_tau_ref(t_end))
        m["xi_points"] = str(XI_REF)
    elif generator == "mol-rk":
        m["rtol"] = repr(MOL_RTOL)
    return m


def _tau_ref(t_end: float) -> float:
    return t_end / math.ceil(t_end / TAU_REF - 1e-9)


def _key(meta: dict) -> str:
    text = "|".join(f"{k}={meta[k]}" for k in sorted(meta) if k != "checksum")
    return hashlib.sha256(text.encode()).hexdigest()[:24]


# -------------------------------------------------------------- cache IO

def write_cache(path: Path, ref: ReferenceSolution) -> None:
    arrays = [np.ascontiguousarray(ref.u, dtype="<c16")]
    if ref.ut is not None:
        arrays.append(np.ascontiguousarray(ref.ut, dtype="<c16"))
    payload = b"".join(a.tobytes() for a in arrays)
    meta = dict(ref.meta)
    meta["arrays"] = str(len(arrays))
    meta["checksum"] = hashlib.sha256(payload).hexdigest()
    lines = []
    for k in sorted(meta):
        v = meta[k]
        if isinstance(v, (tuple, list)):
            v = ",".join(v)
        lines.append(f"{k}={v}")
    header = ("kgbench-reference\n" + "\n".join(lines) + "\nend\n").encode()
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-")
    try:
        with os.fdopen(fd, "wb") as f:
            f.write(header)
            f.write(payload)
        os.replace(tmp, path)
    except BaseException:
        with contextlib.suppress(OSError):
            os.unlink(tmp)
        raise


def read_cache(path: Path) -> ReferenceSolution:
    raw = path.read_bytes()
    marker = b"\nend\n"
    cut = raw.find(marker)
    if not raw.startswith(b"kgbench-reference\n") or cut < 0:
        raise ChecksumError(f"{path}: not a reference file")
    header = raw[len(b"kgbench-reference\n"):cut].decode()
    payload = raw[cut + len(marker):]
    meta: dict = {}
    for line in header.splitlines():
        k, _, v = line.partition("=")
        meta[k] = tuple(v.split(",")) if k == "domain" else v
    if hashlib.sha256(payload).hexdigest() != meta.get("checksum"):
        raise ChecksumError(f"{path}: checksum mismatch")
    n = int(meta["N"])
    arr = np.frombuffer(payload, dtype="<c16")
    if arr.size != n * int(meta["arrays"]):
        raise ChecksumError(f"{path}: payload size mismatch")
    u = arr[:n].copy()
    ut = arr[n:2 * n].copy() if int(meta["arrays"]) > 1 else None
    return ReferenceSolution(u, ut, meta)


_LOCKS: dict[str, threading.Lock] = {}
_LOCKS_GUARD = threading.Lock()


@contextlib.contextmanager
def _key_lock(path: Path):
    with _LOCKS_GUARD:
        lk = _LOCKS.setdefault(str(path), threading.Lock())
    with lk:
        with open(str(path) + ".lock", "w") as f:
            fcntl.flock(f, fcntl.LOCK_EX)
            try:
                yield
            finally:
                fcntl.flock(f, fcntl.LOCK_UN)


# -------------------------------------------------------------- generators

def linear_solution(data, p: NkgeParams, grid: Grid1d, t: float):
    """Closed-form per-mode solution for lam = 0: (u, u_t) coefficients."""
    w = np.sqrt(1.0 + p.eps**2 * grid.mu**2) / p.eps**2
    u0 = fwd(np.asarray(data.phi1, dtype=float))
    v0 = fwd(np.asarray(data.phi2, dtype=float)) / p.eps**2
    c, s = np.cos(w * t), np.sin(w * t)
    return c * u0 + s / w * v0, -w * s * u0 + c * v0


def _tsf_fine(data, p, grid, t_end):
    tau = _tau_ref(t_end)
    s = ua.tsf_init(data, p, grid, tau, 2, XI_REF)
    for _ in range(round(t_end / tau)):
        s = ua.step_tsf(s)
    return fwd(ua.tsf_reconstruct(s)), None


def _generate(generator: str, data, p, grid, t_end):
    if generator == "exact-linear":
        return linear_solution(data, p, grid, t_end)
    if generator == "mol-rk":
        return mol_solve(data, p, grid, t_end, rtol=MOL_RTOL, atol=MOL_ATOL)
    if generator == "tsf-fp2-fine":
        return _tsf_fine(data, p, grid, t_end)
    raise ValueError(generator)


def _cached(generator: str, p: NkgeParams, data_id: str, t_end: float, grid: Grid1d,
            use_cache: bool) -> ReferenceSolution:
    meta = _meta(p, data_id, t_end, grid, generator)
    if generator == "exact-linear" or not use_cache:
        u, ut = _generate(generator, sample_data(data_id, grid), p, grid, t_end)
        return ReferenceSolution(u, ut, meta)
    path = cache_dir() / f"{generator}-{_key(meta)}.kgref"
    with _key_lock(path):
        if path.exists():
            ref = read_cache(path)
            for k, v in meta.items():
                if ref.meta.get(k) != v:
                    raise ChecksumError(f"{path}: header field {k} does not match request")
            return ref
        u, ut = _generate(generator, sample_data(data_id, grid), p, grid, t_end)
        ref = ReferenceSolution(u, ut, meta)
        write_cache(path, ref)
        return read_cache(path)


def make_reference(p: NkgeParams, data_id: str, t_end: float, policy: str = "auto",
                   grid: Grid1d | None = None, use_cache: bool = True) -> ReferenceSolution:
    """Reference coefficients of u(t_end) on ``grid`` (default: h = 1/8)."""
    if grid is None:
        a, b = p.domain
        grid = Grid1d(a, b, int(round((b - a) * 8)))
    gen = resolve_policy(policy, p.eps, p.lam)
    if gen != "cross-check":
        return _cached(gen, p, data_id, t_end, grid, use_cache)
    fine = _cached("tsf-fp2-fine", p, data_id, t_end, grid, use_cache)
    mol = _cached("mol-rk", p, data_id, t_end, grid, use_cache)
    gap = h1_norm_coeffs(fine.u - mol.u, grid)
    if not gap <= CROSS_TOL:
        raise ReferenceIntegrityError(
            f"tsf-fp2-fine and mol-rk disagree by {gap:.3e} in H1 at eps={p.eps:g}")
    meta = dict(fine.meta)
    meta["generator"] = "cross-check"
    meta["agreement"] = repr(gap)
    return ReferenceSolution(fine.u, fine.ut, meta)
