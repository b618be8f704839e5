"""Linear codes over F_{q^2}."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import matfq
from .config import DEFAULT_CAPS, CapExceeded, Caps
from .gf import GF


class CodeError(ValueError):
    pass


# ---------------------------------------------------------------------------
# polynomials over the field (coefficient codes, constant term first)


def poly_divmod(F: GF, num: Sequence[int], den: Sequence[int]) -> tuple[list[int], list[int]]:
    num = [int(c) for c in num]
    den = [int(c) for c in den]
    while den and den[-1] == 0:
        den.pop()
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = int(F.inv(den[-1]))
    rem = list(num)
    quot = [0] * max(len(num) - len(den) + 1, 1)
    for shift in range(len(num) - len(den), -1, -1):
        c = int(F.mul(rem[shift + len(den) - 1], inv_lead))
        if c == 0:
            continue
        quot[shift] = c
        for i, d in enumerate(den):
            rem[shift + i] = int(F.sub(rem[shift + i], F.mul(c, d)))
    rem = rem[: len(den) - 1]
    while rem and rem[-1] == 0:
        rem.pop()
    return quot, rem


# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class LinearCode:
    """Row space of ``gen`` (k x n, full row rank, k may be 0) over ``field``."""

    field: GF
    gen: np.ndarray

    def __post_init__(self):
        gen = np.asarray(self.gen, dtype=np.int64)
        if gen.ndim != 2:
            raise CodeError("generator must be a 2-d array")
        gen.setflags(write=False)
        object.__setattr__(self, "gen", gen)

    @classmethod
    def from_generator(cls, F: GF, rows) -> "LinearCode":
        rows = np.asarray(rows, dtype=np.int64)
        if rows.ndim != 2 or rows.shape[1] == 0:
            raise CodeError("generator must be a non-empty k x n matrix")
        if np.any((rows < 0) | (rows >= F.order)):
            raise CodeError("generator entries outside the field")
        r = matfq.rank(F, rows)
        if r != rows.shape[0]:
            raise CodeError(f"generator rows are dependent (rank {r} < {rows.shape[0]})")
        return cls(F, rows)

    @classmethod
    def from_spanning(cls, F: GF, rows, n: int | None = None) -> "LinearCode":
        """Code spanned by possibly dependent rows (canonical rref generator)."""
        rows = matfq.asmatrix(rows, n)
        return cls(F, matfq.row_basis(F, rows))

    @classmethod
    def zero(cls, F: GF, n: int) -> "LinearCode":
        return cls(F, np.zeros((0, n), dtype=np.int64))

    @property
    def n(self) -> int:
        return self.gen.shape[1]

    @property
    def k(self) -> int:
        return self.gen.shape[0]

    def __repr__(self):
        return f"[{self.n},{self.k}]_{self.field.order} code"

    # -- duals ---------------------------------------------------------------

    def dual(self) -> "LinearCode":
        return LinearCode(self.field, matfq.right_kernel(self.field, self.gen, self.n))

    def parity_check(self) -> np.ndarray:
        return self.dual().gen

    def hermitian_dual(self) -> "LinearCode":
        return LinearCode(self.field, self.field.frobenius(self.dual().gen))

    def conjugate(self) -> "LinearCode":
        return LinearCode(self.field, self.field.frobenius(self.gen))

    def same_code(self, other: "LinearCode") -> bool:
        return self.n == other.n and matfq.same_span(self.field, self.gen, other.gen)

    def contains(self, v) -> bool:
        return matfq.in_span(self.field, self.gen, v)

    def contains_many(self, words) -> np.ndarray:
        """Membership test for each row of ``words`` via the parity check."""
        words = np.asarray(words, dtype=np.int64)
        H = self.parity_check()
        if H.shape[0] == 0:
            return np.ones(len(words), dtype=bool)
        syn = matfq.matmul(self.field, words, H.T)
        return ~np.any(syn, axis=1)

    # -- enumeration ---------------------------------------------------------

    def codewords(self, chunk: int = 2**14, start: int = 0, stop: int | None = None) -> Iterator[np.ndarray]:
        yield from iter_codewords(self.field, self.gen, chunk=chunk, start=start, stop=stop)

    def weight_distribution(self, caps: Caps = DEFAULT_CAPS) -> dict[int, int]:
        _check_words(self.field.order, self.k, caps)
        counts = np.zeros(self.n + 1, dtype=np.int64)
        for words in self.codewords():
            counts += np.bincount(np.count_nonzero(words, axis=1), minlength=self.n + 1)
        return {w: int(c) for w, c in enumerate(counts) if c}

    def min_distance(self, caps: Caps = DEFAULT_CAPS) -> int:
        """Minimum nonzero weight by exhaustive enumeration."""
        if self.k == 0:
            raise CodeError("the zero code has no minimum distance")
        _check_words(self.field.order, self.k, caps)
        best = self.n
        for words in self.codewords():
            wt = np.count_nonzero(words, axis=1)
            wt = wt[wt > 0]
            if wt.size:
                best = min(best, int(wt.min()))
        return best

    def min_distance_via_columns(self, caps: Caps = DEFAULT_CAPS) -> int:
        """Minimum distance as the fewest dependent columns of a parity check."""
        if self.k == 0:
            raise CodeError("the zero code has no minimum distance")
        return min_kernel_weight(self.field, self.parity_check(), caps)[0]

    def dual_distance(self, caps: Caps = DEFAULT_CAPS) -> int:
        """Minimum distance of the dual, i.e. fewest dependent columns of ``gen``."""
        if self.k == self.n:
            raise CodeError("the dual of the full space is the zero code")
        return min_kernel_weight(self.field, self.gen, caps)[0]

    # -- derived codes ---------------------------------------------------------

    def truncate(self, support: Iterable[int]) -> "LinearCode":
        """Keep only the coordinates in ``support`` (0-based, order kept)."""
        support = sorted(set(int(i) for i in support))
        if not support:
            raise CodeError("truncation support is empty")
        if support[0] < 0 or support[-1] >= self.n:
            raise CodeError(f"support outside 0..{self.n - 1}")
        return LinearCode.from_spanning(self.field, self.gen[:, support], len(support))

    def delete_coordinates(self, coords: Iterable[int]) -> "LinearCode":
        drop = set(int(i) for i in coords)
        return self.truncate(i for i in range(self.n) if i not in drop)

    def scale(self, theta) -> "LinearCode":
        theta = np.asarray(theta, dtype=np.int64)
        if theta.shape != (self.n,):
            raise CodeError(f"need {self.n} scaling factors, got {theta.shape}")
        if np.any(theta == 0):
            raise CodeError("scaling factors must be nonzero")
        return LinearCode(self.field, self.field.mul(self.gen, theta[None, :]))

    def extend(self, column) -> "LinearCode":
        column = np.asarray(column, dtype=np.int64).reshape(self.k, 1)
        return LinearCode(self.field, np.hstack([self.gen, column]))

    # -- predicates ------------------------------------------------------------

    def hermitian_gram(self) -> np.ndarray:
        F = self.field
        return matfq.matmul(F, self.gen, F.frobenius(self.gen).T)

    def is_hermitian_self_orthogonal(self) -> bool:
        return not np.any(self.hermitian_gram())

    def is_projective(self) -> bool:
        try:
            canonical_columns(self.field, self.gen)
        except CodeError:
            return False
        return True


def _check_words(Q: int, k: int, caps: Caps) -> None:
    if Q**k > caps.words:
        raise CapExceeded(f"{Q}^{k} codewords exceed the cap of {caps.words}")


def canonical_columns(F: GF, G) -> np.ndarray:
    """Columns of G scaled so their first nonzero entry is 1 (one per row).

    Raises CodeError on a zero column or two projectively equal columns.
    """
    cols = np.asarray(G, dtype=np.int64).T
    pts = projective_normalize(F, cols)
    if np.any(~np.any(cols, axis=1)):
        raise CodeError("generator has a zero column")
    uniq = np.unique(pts, axis=0)
    if len(uniq) != len(pts):
        raise CodeError("generator has projectively repeated columns")
    return pts


def projective_normalize(F: GF, vecs) -> np.ndarray:
    """Scale each row so its first nonzero entry is 1; zero rows stay zero."""
    vecs = np.asarray(vecs, dtype=np.int64)
    if vecs.shape[-1] == 0:
        return vecs.copy()
    nz = vecs != 0
    lead_idx = np.argmax(nz, axis=-1)
    lead = np.take_along_axis(vecs, lead_idx[..., None], axis=-1)
    lead = np.where(lead == 0, 1, lead)
    return F.mul(vecs, F.inv(lead))


def iter_codewords(
    F: GF, G, chunk: int = 2**14, start: int = 0, stop: int | None = None, subfield: bool = False
) -> Iterator[np.ndarray]:
    """All codewords m*G in lexicographic message order, in blocks.

    The message space is split into a head (enumerated as one block) and a
    tail; ``start``/``stop`` select a range of tail blocks so that callers can
    partition the work.  With ``subfield`` the messages range over F_q only.
    """
    G = np.asarray(G, dtype=np.int64)
    k, n = G.shape
    scalars = F.subfield_elements() if subfield else F.elements()
    Q = len(scalars)
    if k == 0:
        if start == 0:
            yield np.zeros((1, n), dtype=np.int64)
        return
    m = 1
    while m < k and Q ** (m + 1) <= max(chunk, Q):
        m += 1
    tail_rows, head_rows = G[: k - m], G[k - m :]
    head = np.zeros((1, n), dtype=np.int64)
    for row in head_rows:
        mult = F.mul(scalars[:, None], row[None, :])
        head = F.add(head[:, None, :], mult[None, :, :]).reshape(-1, n)
    # tail digit values index into ``scalars``, which is the identity map
    n_tail = Q ** (k - m)
    stop = n_tail if stop is None else min(stop, n_tail)
    for t in range(start, stop):
        digits = [(t // Q**i) % Q for i in range(k - m - 1, -1, -1)]
        offset = np.zeros(n, dtype=np.int64)
        for c, row in zip(digits, tail_rows):
            if c:
                offset = F.add(offset, F.mul(c, row))
        yield F.add(head, offset[None, :])


def cyclic_code(F: GF, n: int, g: Sequence[int]) -> "LinearCode":
    """Cyclic code of length n generated by g; coordinate i holds x^i (0-based)."""
    g = [int(c) for c in g]
    while g and g[-1] == 0:
        g.pop()
    deg = len(g) - 1
    if deg < 0 or deg >= n:
        raise CodeError(f"generator degree {deg} must lie in 0..{n - 1}")
    xn1 = [int(F.neg(1))] + [0] * (n - 1) + [1]
    _, rem = poly_divmod(F, xn1, g)
    if rem:
        raise CodeError(f"g does not divide x^{n}-1")
    k = n - deg
    rows = np.zeros((k, n), dtype=np.int64)
    for i in range(k):
        rows[i, i : i + deg + 1] = g
    return LinearCode(F, rows)


# ---------------------------------------------------------------------------
# low-weight words of ker(H) by meeting in the middle


def _partial_sums(F: GF, cols: np.ndarray, a: int, caps: Caps):
    """All sums c_1 h_{i_1} + ... + c_a h_{i_a} with i_1 < ... < i_a, c_1 = 1.

    Returns (index tuples, coefficient tuples, projective keys, leading
    coefficients); zero sums are dropped.
    """
    N, r = cols.shape
    Q = F.order
    idx = np.array(list(itertools.combinations(range(N), a)), dtype=np.int64).reshape(-1, a)
    nonzero = np.arange(1, Q, dtype=np.int64)
    grid = np.ones((1, 1), dtype=np.int64)
    if a > 1:
        tails = np.array(list(itertools.product(nonzero, repeat=a - 1)), dtype=np.int64)
        grid = np.hstack([np.ones((len(tails), 1), dtype=np.int64), tails])
    total = len(idx) * len(grid)
    if total > caps.combos:
        raise CapExceeded(f"{total} partial sums of {a} columns exceed the cap of {caps.combos}")
    if r == 0:
        return (np.zeros((0, a), np.int64),) * 2 + (np.zeros(0, np.int64),) * 2

    # scaled[c, j] = c * h_j
    scaled = F.mul(np.arange(Q)[:, None, None], cols[None, :, :])
    sums = np.broadcast_to(cols[idx[:, 0]][:, None, :], (len(idx), len(grid), r))
    for t in range(1, a):
        sums = F.add(sums, scaled[grid[None, :, t], idx[:, t, None]])
    sums = np.ascontiguousarray(sums).reshape(-1, r)
    I = np.repeat(idx, len(grid), axis=0)
    C = np.tile(grid, (len(idx), 1))
    keep = np.any(sums, axis=1)
    sums, I, C = sums[keep], I[keep], C[keep]
    lead_pos = np.argmax(sums != 0, axis=1)
    lead = sums[np.arange(len(sums)), lead_pos]
    canon = F.mul(sums, F.inv(lead)[:, None])
    return I, C, _row_keys(canon, Q), lead


def _row_keys(rows: np.ndarray, Q: int) -> np.ndarray:
    r = rows.shape[1]
    if r * np.log2(Q) < 62:
        weights = (Q ** np.arange(r, dtype=np.int64)).astype(np.int64)
        return rows @ weights
    # hashed keys; matches are verified by the caller
    rng = np.random.default_rng(0x5EED)
    mult = rng.integers(1, 2**62, size=r, dtype=np.int64).astype(np.uint64)
    return (rows.astype(np.uint64) * mult).sum(axis=1).view(np.int64)


def kernel_words_of_weight(
    F: GF,
    H,
    w: int,
    caps: Caps = DEFAULT_CAPS,
    limit: int | None = None,
    cache: dict | None = None,
    complete: bool = True,
) -> tuple[np.ndarray, np.ndarray]:
    """Every x with H x = 0 and weight exactly w, up to scalars.

    With ``limit`` the search may stop once that many words are found.
    ``cache`` lets repeated calls on the same H share partial sums.
    Words whose two halves are themselves kernel words are only produced
    with ``complete``; callers that already know there are no lighter
    kernel words (or that all of them are excluded) can skip that pass.

    Returns ``(supports, coeffs)``, both shaped (m, w): ``supports`` holds
    increasing column indices and ``coeffs`` the nonzero entries, the first
    of which is 1.  Rows come out sorted.
    """
    H = np.asarray(H, dtype=np.int64)
    N = H.shape[1]
    cols = H.T
    empty = (np.zeros((0, w), np.int64), np.zeros((0, w), np.int64))
    if w < 1 or w > N:
        return empty
    if w == 1:
        zero = np.flatnonzero(~np.any(cols, axis=1))
        return zero.reshape(-1, 1), np.ones((len(zero), 1), dtype=np.int64)

    a = w // 2
    b = w - a
    cache = {} if cache is None else cache
    for size in {a, b}:
        if size not in cache:
            I, C, K, L = _partial_sums(F, cols, size, caps)
            order = np.argsort(K, kind="stable")
            cache[size] = (I[order], C[order], K[order], L[order])
    IA, CA, KA, LA = cache[a]
    IB, CB, KB, LB = cache[b]

    supports, coeffs = [], []
    found = 0
    step = 1 << 17
    for s in range(0, len(KA), step):
        ka = KA[s : s + step]
        lo = np.searchsorted(KB, ka, side="left")
        hi = np.searchsorted(KB, ka, side="right")
        cnt = hi - lo
        if not cnt.any():
            continue
        ai = np.repeat(np.arange(s, s + len(ka)), cnt)
        offs = np.arange(cnt.sum()) - np.repeat(np.cumsum(cnt) - cnt, cnt)
        bi = np.repeat(lo, cnt) + offs
        ok = IA[ai, -1] < IB[bi, 0]
        ai, bi = ai[ok], bi[ok]
        if not len(ai):
            continue
        # sum_A = (lead_A / lead_B) sum_B, so sum_A + lam * sum_B = 0 for:
        lam = F.neg(F.div(LA[ai], LB[bi]))
        S = np.hstack([IA[ai], IB[bi]])
        C = np.hstack([CA[ai], F.mul(lam[:, None], CB[bi])])
        # drop hash collisions (only possible with hashed keys)
        resid = np.zeros((len(S), H.shape[0]), dtype=np.int64)
        for t in range(w):
            resid = F.add(resid, F.mul(C[:, t, None], cols[S[:, t]]))
        good = ~np.any(resid, axis=1)
        supports.append(S[good])
        coeffs.append(C[good])
        found += int(good.sum())
        if limit is not None and found >= limit:
            break
    if complete and (limit is None or found < limit):
        # both halves sum to zero: pair lighter kernel words, any ratio
        SA, CA0 = kernel_words_of_weight(F, H, a, caps, cache=cache)
        SB, CB0 = (SA, CA0) if b == a else kernel_words_of_weight(F, H, b, caps, cache=cache)
        if len(SA) and len(SB):
            ia, ib = np.nonzero(SA[:, -1][:, None] < SB[:, 0][None, :])
            for lam in range(1, F.order):
                supports.append(np.hstack([SA[ia], SB[ib]]))
                coeffs.append(np.hstack([CA0[ia], F.mul(lam, CB0[ib])]))
    if not supports:
        return empty
    S = np.vstack(supports)
    C = np.vstack(coeffs)
    order = np.lexsort(np.hstack([S, C]).T[::-1])
    return S[order], C[order]


def words_from_support(n: int, supports: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
    words = np.zeros((len(supports), n), dtype=np.int64)
    np.put_along_axis(words, supports, coeffs, axis=1)
    return words


def min_kernel_weight(F: GF, H, caps: Caps = DEFAULT_CAPS, exclude: LinearCode | None = None):
    """Smallest weight of a nonzero x with H x = 0 (and x not in ``exclude``).

    Returns ``(weight, witness word)``.  Searches weights up to
    ``caps.subset``.
    """
    H = np.asarray(H, dtype=np.int64)
    N = H.shape[1]
    r = matfq.rank(F, H) if H.shape[0] else 0
    if r == N:
        raise CodeError("H has full column rank; its kernel is the zero code")
    cache: dict = {}
    for w in range(1, min(caps.subset, N) + 1):
        if exclude is None or exclude.k == 0:
            # lighter kernel words would have returned already
            S, C = kernel_words_of_weight(F, H, w, caps, limit=1, cache=cache, complete=False)
            if len(S):
                return w, words_from_support(N, S[:1], C[:1])[0]
            continue
        # words inside ``exclude`` are rare, so try a small batch first
        for limit in (64, None):
            # every lighter kernel word lies in ``exclude``, and so does any
            # combination of them, so the zero-half pass adds nothing here
            S, C = kernel_words_of_weight(F, H, w, caps, limit=limit, cache=cache, complete=False)
            if not len(S):
                break
            words = words_from_support(N, S, C)
            outside = ~exclude.contains_many(words)
            if outside.any():
                return w, words[outside][0]
    raise CapExceeded(f"no qualifying kernel word of weight <= {caps.subset}")
