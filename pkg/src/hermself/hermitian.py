"""Puncture codes and the Hermitian forms vanishing on a code's columns.

For a k x n generator G over F_{q^2}, the puncture code P(C) is the set of
lambda in F_q^n with sum_l lambda_l u_l v_l^q = 0 for all codewords u, v.
Its weight-r words are exactly the length-r truncations of C that become
Hermitian self-orthogonal after rescaling coordinates.
"""
from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import matfq
from .code import CodeError, LinearCode, canonical_columns, iter_codewords
from .config import DEFAULT_CAPS, CapExceeded, Caps
from .gf import GF


class VerificationError(RuntimeError):
    """An identity that must hold by construction failed."""


def _check_e(F: GF, e: int | None) -> int:
    e = F.e if e is None else int(e)
    if F.frobenius(e) == e:
        raise ValueError("e must lie outside the subfield F_q")
    return e


# ---------------------------------------------------------------------------
# T(G) and M(G)


def pair_rows(k: int) -> list[tuple[int, int]]:
    """Row labels of T(G): unordered pairs i <= j."""
    return [(i, j) for i in range(k) for j in range(i, k)]


def build_T(F: GF, G) -> np.ndarray:
    """Rows g_i * g_j^q (i < j) and g_i^(q+1) (i = j), over F_{q^2}."""
    G = matfq.asmatrix(G)
    Gq = F.frobenius(G)
    rows = [F.mul(G[i], Gq[j]) for i, j in pair_rows(G.shape[0])]
    return np.array(rows, dtype=np.int64).reshape(-1, G.shape[1])


def build_M(F: GF, G, e: int | None = None) -> np.ndarray:
    """The k^2 x n matrix over F_q whose right kernel is P(C).

    Row (i, j), in row-major order, holds
    e g_i g_j^q + e^q g_i^q g_j for i < j, g_i g_j^q + g_i^q g_j for i > j
    and g_i^(q+1) on the diagonal.
    """
    e = _check_e(F, e)
    G = matfq.asmatrix(G)
    k, n = G.shape
    Gq = F.frobenius(G)
    eq = F.frobenius(e)
    M = np.zeros((k * k, n), dtype=np.int64)
    for i in range(k):
        for j in range(k):
            if i == j:
                row = F.norm(G[i])
            else:
                a = F.mul(G[i], Gq[j])
                b = F.mul(Gq[i], G[j])
                row = F.add(F.mul(e, a), F.mul(eq, b)) if i < j else F.add(a, b)
            M[i * k + j] = row
    if not matfq.is_subfield_matrix(F, M):
        raise VerificationError("M(G) has an entry outside F_q")
    return M


# ---------------------------------------------------------------------------
# the puncture code


@dataclass(frozen=True)
class PunctureWord:
    lam: np.ndarray

    @property
    def weight(self) -> int:
        return int(np.count_nonzero(self.lam))

    @property
    def support(self) -> np.ndarray:
        return np.flatnonzero(self.lam)


@dataclass(frozen=True, eq=False)
class PunctureCode:
    code: LinearCode
    basis: np.ndarray  # dim x n, entries in F_q, echelon form

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def field(self) -> GF:
        return self.code.field

    def words(self, chunk: int = 2**14):
        yield from iter_codewords(self.field, self.basis, chunk=chunk, subfield=True)

    def same_space(self, other: "PunctureCode") -> bool:
        return matfq.same_span(self.field, self.basis, other.basis)


def puncture_code(C: LinearCode, e: int | None = None) -> PunctureCode:
    """P(C) as the right kernel of M(G), eliminated entirely over F_q."""
    M = build_M(C.field, C.gen, e)
    return PunctureCode(C, matfq.right_kernel(C.field, M, C.n))


def puncture_code_oracle(C: LinearCode, method: str = "coords", caps: Caps = DEFAULT_CAPS) -> PunctureCode:
    """P(C) from T(G) without using M(G).

    ``coords``: for lambda over F_q, T lambda = 0 splits into the two F_q
    coordinate systems T = T0 + e T1, so P(C) = ker [T0; T1].
    ``enumerate``: list every vector of ker T over F_{q^2} and keep those
    with all entries in F_q.
    """
    F = C.field
    T = build_T(F, C.gen)
    if method == "coords":
        stacked = np.vstack([T % F.q, T // F.q])
        return PunctureCode(C, matfq.right_kernel(F, stacked, C.n))
    if method == "enumerate":
        K = matfq.right_kernel(F, T, C.n)
        if F.order ** len(K) > caps.words:
            raise CapExceeded(f"kernel of T has {F.order}^{len(K)} vectors")
        keep = [w[np.all(w < F.q, axis=1)] for w in iter_codewords(F, K)]
        sub = np.vstack(keep) if keep else np.zeros((0, C.n), np.int64)
        return PunctureCode(C, matfq.row_basis(F, sub) if len(sub) else sub)
    raise ValueError(f"unknown method {method!r}")


def weight_set(P: PunctureCode, caps: Caps = DEFAULT_CAPS) -> dict[int, int]:
    """Weight -> number of words of P(C), over all q^dim words."""
    _check_puncture_cap(P, caps)
    counts = np.zeros(P.code.n + 1, dtype=np.int64)
    for words in P.words():
        counts += np.bincount(np.count_nonzero(words, axis=1), minlength=P.code.n + 1)
    return {w: int(c) for w, c in enumerate(counts) if c}


def weight_representatives(P: PunctureCode, caps: Caps = DEFAULT_CAPS) -> dict[int, PunctureWord]:
    """Lexicographically least word of each nonzero weight."""
    _check_puncture_cap(P, caps)
    best: dict[int, tuple] = {}
    for words in P.words():
        wt = np.count_nonzero(words, axis=1)
        for w in np.unique(wt):
            if w == 0:
                continue
            cand = words[wt == w]
            first = cand[np.lexsort(cand.T[::-1])[0]]
            key = tuple(int(x) for x in first)
            if w not in best or key < best[w]:
                best[int(w)] = key
    return {w: PunctureWord(np.array(v, dtype=np.int64)) for w, v in sorted(best.items())}


def words_of_weight(P: PunctureCode, w: int, limit: int | None = None, caps: Caps = DEFAULT_CAPS) -> list[PunctureWord]:
    _check_puncture_cap(P, caps)
    out: list[PunctureWord] = []
    for words in P.words():
        for row in words[np.count_nonzero(words, axis=1) == w]:
            out.append(PunctureWord(row.copy()))
            if limit is not None and len(out) >= limit:
                return out
    return out


def _check_puncture_cap(P: PunctureCode, caps: Caps) -> None:
    if P.field.q ** P.dim > caps.words:
        raise CapExceeded(f"P(C) has {P.field.q}^{P.dim} words, above the cap of {caps.words}")


# ---------------------------------------------------------------------------
# Hermitian forms


@dataclass(frozen=True, eq=False)
class HermitianForm:
    """sum_{i<j} (h_ij x_i x_j^q + h_ij^q x_i^q x_j) + sum_i d_i x_i^(q+1).

    ``offdiag[i, j]`` for i < j holds h_ij in F_{q^2} (other entries are
    ignored); ``diag[i]`` holds d_i in F_q.
    """

    field: GF
    offdiag: np.ndarray
    diag: np.ndarray

    def __post_init__(self):
        if not np.all(self.diag < self.field.q):
            raise ValueError("diagonal coefficients must lie in F_q")

    @property
    def k(self) -> int:
        return len(self.diag)

    def __call__(self, x) -> np.ndarray:
        return evaluate_form(self, x)

    def to_vector(self, e: int | None = None) -> np.ndarray:
        """Inverse of :func:`form_from_vector`."""
        F = self.field
        e = _check_e(F, e)
        k = self.k
        v = np.zeros(k * k, dtype=np.int64)
        denom = F.sub(e, F.frobenius(e))
        for i in range(k):
            v[i * k + i] = self.diag[i]
            for j in range(i + 1, k):
                h = self.offdiag[i, j]
                vij = F.div(F.sub(h, F.frobenius(h)), denom)
                v[i * k + j] = vij
                v[j * k + i] = F.sub(h, F.mul(e, vij))
        return v


def form_from_vector(F: GF, v, k: int, e: int | None = None) -> HermitianForm:
    """h_ij = e v_ij + v_ji for i < j, d_i = v_ii, with v indexed row-major."""
    e = _check_e(F, e)
    V = np.asarray(v, dtype=np.int64).reshape(k, k)
    off = np.zeros((k, k), dtype=np.int64)
    iu = np.triu_indices(k, 1)
    off[iu] = F.add(F.mul(e, V[iu]), V.T[iu])
    return HermitianForm(F, off, np.diag(V).copy())


def evaluate_form(H: HermitianForm, x) -> np.ndarray:
    """Value(s) in F_q of the form at one point (shape k) or many (m x k)."""
    F = H.field
    x = np.asarray(x, dtype=np.int64)
    single = x.ndim == 1
    X = np.atleast_2d(x)
    Xq = F.frobenius(X)
    # h_ij x_i x_j^q + its conjugate is the trace of h_ij x_i x_j^q
    t = np.zeros(len(X), dtype=np.int64)
    k = H.k
    for i in range(k):
        for j in range(i + 1, k):
            h = H.offdiag[i, j]
            if h:
                t = F.add(t, F.mul(h, F.mul(X[:, i], Xq[:, j])))
    val = F.trace(t)
    for i in range(k):
        if H.diag[i]:
            val = F.add(val, F.mul(H.diag[i], F.norm(X[:, i])))
    if np.any(val >= F.q):
        raise VerificationError("Hermitian form value outside F_q")
    return val[0] if single else val


# ---------------------------------------------------------------------------
# point sets in PG(k-1, q^2)


@dataclass(frozen=True, eq=False)
class PointSet:
    field: GF
    k: int
    points: np.ndarray  # m x k, first nonzero coordinate 1, sorted

    def __len__(self):
        return len(self.points)

    def __contains__(self, x) -> bool:
        x = np.asarray(x, dtype=np.int64)
        if not np.any(x):
            return False
        lead = x[np.flatnonzero(x)[0]]
        x = self.field.mul(x, self.field.inv(lead))
        return bool(np.any(np.all(self.points == x, axis=1)))

    def as_set(self) -> set[tuple[int, ...]]:
        return {tuple(int(v) for v in p) for p in self.points}

    def format(self, x) -> str:
        return "(" + ",".join(self.field.format(int(v)) for v in x) + ")"


def _sorted_points(pts: np.ndarray) -> np.ndarray:
    if len(pts) == 0:
        return pts
    return pts[np.lexsort(pts.T[::-1])]


def columns_as_points(C: LinearCode) -> PointSet:
    """The generator columns as distinct points of PG(k-1, q^2)."""
    try:
        pts = canonical_columns(C.field, C.gen)
    except CodeError as exc:
        raise CodeError(f"code is not projective: {exc}")
    return PointSet(C.field, C.k, pts)


def hf_basis(X: PointSet, e: int | None = None) -> list[HermitianForm]:
    """Basis of the Hermitian forms vanishing on X, from the left kernel of M."""
    F = X.field
    G = X.points.T.reshape(X.k, len(X))
    M = build_M(F, G, e) if len(X) else np.zeros((X.k * X.k, 0), dtype=np.int64)
    L = matfq.right_kernel(F, M.T, X.k * X.k)
    return [form_from_vector(F, v, X.k, e) for v in L]


def projective_point_count(Q: int, k: int) -> int:
    return (Q**k - 1) // (Q - 1)


def points_range(F: GF, k: int, start: int, stop: int) -> np.ndarray:
    """Points number start..stop-1 of PG(k-1, q^2) in a fixed enumeration.

    Block t holds the points whose first nonzero coordinate (a 1) is at
    position t; inside a block the trailing coordinates count in base q^2.
    """
    Q = F.order
    out = []
    offset = 0
    for t in range(k):
        size = Q ** (k - 1 - t)
        lo, hi = max(start, offset), min(stop, offset + size)
        if lo < hi:
            idx = np.arange(lo - offset, hi - offset, dtype=np.int64)
            pts = np.zeros((hi - lo, k), dtype=np.int64)
            pts[:, t] = 1
            for c in range(k - 1, t, -1):
                pts[:, c] = idx % Q
                idx //= Q
            out.append(pts)
        offset += size
    return np.vstack(out) if out else np.zeros((0, k), dtype=np.int64)


def _zeros_in_range(forms: list[HermitianForm], k: int, F: GF, start: int, stop: int) -> np.ndarray:
    pts = points_range(F, k, start, stop)
    for H in forms:
        if not len(pts):
            break
        pts = pts[evaluate_form(H, pts) == 0]
    return pts


def common_zeros(
    forms: list[HermitianForm],
    k: int,
    F: GF,
    caps: Caps = DEFAULT_CAPS,
    workers: int = 1,
    chunk: int = 1 << 18,
) -> PointSet:
    """All points of PG(k-1, q^2) on which every form vanishes.

    Forms are applied one after another to the shrinking survivor set, so
    most points are rejected by the first form or two.
    """
    total = projective_point_count(F.order, k)
    if total > caps.points:
        raise CapExceeded(f"PG({k - 1},{F.order}) has {total} points, above the cap of {caps.points}")
    ranges = [(s, min(s + chunk, total)) for s in range(0, total, chunk)]
    if workers > 1 and len(ranges) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futs = [pool.submit(_zeros_in_range, forms, k, F, s, t) for s, t in ranges]
            parts = [f.result() for f in futs]
    else:
        parts = [_zeros_in_range(forms, k, F, s, t) for s, t in ranges]
    pts = np.vstack(parts) if parts else np.zeros((0, k), dtype=np.int64)
    return PointSet(F, k, _sorted_points(pts))


# ---------------------------------------------------------------------------
# the geometric statements


def conditions_imposed(C: LinearCode) -> int:
    """Codimension of HF(X) in the k^2-dimensional space of Hermitian forms."""
    return C.n - puncture_code(C).dim


def dim_check(C: LinearCode) -> bool:
    """dim P(C) == n - k^2 + dim HF(X), the two sides computed separately."""
    lhs = puncture_code(C).dim
    rhs = C.n - C.k**2 + len(hf_basis(columns_as_points(C)))
    return lhs == rhs


@dataclass
class Extension:
    points: PointSet | None  # common zeros outside X
    codes: list[LinearCode] = dc_field(default_factory=list)
    skipped: str | None = None


def extend(C: LinearCode, caps: Caps = DEFAULT_CAPS, workers: int = 1) -> Extension:
    """Length n+1 codes, one per common zero of HF(X) outside X."""
    P = puncture_code(C)
    if P.dim > 0:
        return Extension(None, [], skipped=f"dim P(C) = {P.dim} > 0; C already truncates")
    X = columns_as_points(C)
    Z = common_zeros(hf_basis(X), C.k, C.field, caps, workers)
    known = X.as_set()
    new = np.array([p for p in Z.points if tuple(int(v) for v in p) not in known], dtype=np.int64)
    new = new.reshape(-1, C.k)
    codes = []
    for x in new:
        ext = C.extend(x)
        d = puncture_code(ext).dim
        if d != 1:
            raise VerificationError(f"extension by {X.format(x)} has dim P = {d}, expected 1")
        codes.append(ext)
    return Extension(PointSet(C.field, C.k, new), codes)


class Classification(str, enum.Enum):
    LARGE_N = "LARGE_N"
    TRUNCATES = "TRUNCATES"
    EXTENDS = "EXTENDS"
    NO_EXTENSION = "NO_EXTENSION"


def classify(C: LinearCode, caps: Caps = DEFAULT_CAPS, workers: int = 1) -> Classification:
    columns_as_points(C)  # raises for non-projective codes
    if C.n > C.k**2:
        return Classification.LARGE_N
    if puncture_code(C).dim > 0:
        return Classification.TRUNCATES
    if len(extend(C, caps, workers).codes):
        return Classification.EXTENDS
    return Classification.NO_EXTENSION
