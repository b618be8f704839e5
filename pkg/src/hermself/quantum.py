"""Stabilizer code parameters from Hermitian self-orthogonal truncations.

A Hermitian self-orthogonal [n, k']_{q^2} code C gives an [[n, n-2k', d]]_q
quantum code, where d is the least weight in C^{perp_h} outside C (or the
least nonzero weight of C when C = C^{perp_h}).
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .code import LinearCode, min_kernel_weight
from .config import DEFAULT_CAPS, CapExceeded, Caps
from .hermitian import (
    PunctureCode,
    PunctureWord,
    VerificationError,
    puncture_code,
    weight_representatives,
    words_of_weight,
)


@dataclass(frozen=True)
class QuantumParams:
    n: int
    k: int
    d: int
    q: int

    def __post_init__(self):
        if not 0 <= self.k <= self.n or self.d < 1:
            raise ValueError(f"invalid quantum parameters {self}")
        if self.singleton_gap < 0:
            raise VerificationError(f"{self} violates the quantum Singleton bound")

    @property
    def singleton_gap(self) -> int:
        return self.n - 2 * (self.d - 1) - self.k

    def __str__(self):
        return f"[[{self.n},{self.k},{self.d}]]_{self.q}"


def truncation_from_word(C: LinearCode, lam) -> LinearCode:
    """Truncate C to supp(lambda) and rescale by norm preimages of lambda."""
    F = C.field
    lam = np.asarray(lam.lam if isinstance(lam, PunctureWord) else lam, dtype=np.int64)
    support = np.flatnonzero(lam)
    if not len(support):
        raise ValueError("the zero word gives no truncation")
    if np.any(lam >= F.q):
        raise ValueError("puncture words have entries in F_q")
    theta = [F.norm_preimage(int(l)) for l in lam[support]]
    T = C.truncate(support).scale(theta)
    if not T.is_hermitian_self_orthogonal():
        raise VerificationError("scaled truncation is not Hermitian self-orthogonal")
    return T


def quantum_params(T: LinearCode, caps: Caps = DEFAULT_CAPS) -> QuantumParams:
    F = T.field
    if not T.is_hermitian_self_orthogonal():
        raise ValueError("quantum_params needs a Hermitian self-orthogonal code")
    n, kc = T.n, T.k
    if kc == 0:
        d = 1  # C^{perp_h} is the whole space
    elif 2 * kc == n:
        if not T.hermitian_dual().same_code(T):
            raise VerificationError("dimension n/2 but C differs from its Hermitian dual")
        try:
            d = T.min_distance(caps)
        except CapExceeded:
            d = T.min_distance_via_columns(caps)
    else:
        # x in C^{perp_h} iff conj(G) x = 0
        d, _ = min_kernel_weight(F, F.frobenius(T.gen), caps, exclude=T)
    return QuantumParams(n, n - 2 * kc, d, F.q)


@dataclass
class SurveyRow:
    params: QuantumParams
    weight: int
    word: PunctureWord
    truncation_dim: int
    checked_words: int = 1
    flags: dict = dc_field(default_factory=dict)

    def as_dict(self) -> dict:
        p = self.params
        return {
            "n": p.n,
            "k": p.k,
            "d": p.d,
            "q": p.q,
            "weight": self.weight,
            "truncation_dim": self.truncation_dim,
            "singleton_gap": p.singleton_gap,
            "word": [int(v) for v in self.word.lam],
            "checked_words": self.checked_words,
            **self.flags,
        }


def quantum_survey(
    C: LinearCode,
    P: PunctureCode | None = None,
    caps: Caps = DEFAULT_CAPS,
    best_of: int | None = None,
    weights=None,
) -> list[SurveyRow]:
    """One quantum code per weight present in P(C), sorted by length.

    By default the lexicographically least word of each weight is used.
    With ``best_of`` up to that many words per weight are tried and the
    largest distance is kept.
    """
    P = puncture_code(C) if P is None else P
    if P.dim == 0:
        return []
    reps = weight_representatives(P, caps)
    rows = []
    for w, word in reps.items():
        if weights is not None and w not in weights:
            continue
        candidates = [word] if not best_of else words_of_weight(P, w, best_of, caps)
        best = None
        for cand in candidates:
            T = truncation_from_word(C, cand)
            params = quantum_params(T, caps)
            if best is None or params.d > best[0].d:
                best = (params, cand, T)
        params, cand, T = best
        rows.append(
            SurveyRow(
                params,
                w,
                cand,
                T.k,
                checked_words=len(candidates),
                flags={"self_orthogonal": True, "k_matches_dim": params.k == params.n - 2 * T.k},
            )
        )
    return sorted(rows, key=lambda r: r.params.n)
