"""Bitset search for monochromatic sumset configurations, plus finite audits.

The engine looks for pairs of sets (B, C) with every value h + P(k), h in B,
k in C, P in the polynomial list, landing in one fixed color class.  The core
object is the survivor bit-vector: positions b that still satisfy all
constraints imposed by the current C.  Greedy growth of C alternates between
whole-vector shifted-AND steps (fast while survivors are plentiful) and a
packed survivor-by-candidate bit matrix once few survivors remain, which makes
late greedy steps nearly free and scans every candidate exactly.

Also here: bad-set enumeration with stabilization reports, a longest-AP
dynamic program, and the log-space Gowers density threshold.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from typing import Iterable, Sequence

import mpmath
import numpy as np

from .coloring import ColorWindow, Coloring, bits_to_indices
from .errors import DomainError, EmptySet, NoConfiguration
from .poly import IntPolynomial, format_poly


@dataclass(frozen=True)
class Configuration:
    """A candidate monochromatic configuration (B + P(C) for each P)."""

    B: tuple[int, ...]
    C: tuple[int, ...]
    polys: tuple[IntPolynomial, ...]
    color: int
    survivors: int | None = None
    strategy: str | None = None

    def __post_init__(self):
        if not self.B or not self.C:
            raise DomainError("B and C must be nonempty")
        if list(self.B) != sorted(set(self.B)) or list(self.C) != sorted(set(self.C)):
            raise DomainError("B and C must be strictly sorted")

    def points(self) -> list[int]:
        return [h + P(k) for P in self.polys for h in self.B for k in self.C]

    def to_json(self, n: int | None = None) -> dict:
        out = {
            "B": list(self.B),
            "C": list(self.C),
            "polys": [format_poly(P) for P in self.polys],
            "color": self.color,
        }
        if n is not None:
            out["N"] = n
        if self.strategy is not None:
            out["strategy"] = self.strategy
        if self.survivors is not None:
            out["survivors"] = self.survivors
        return out


@dataclass(frozen=True)
class AuditReport:
    """Stabilization summary for one bad-set enumeration."""

    n: int
    color: int
    count: int
    max_element: int | None
    horizon: int
    stabilized: bool

    def to_json(self) -> dict:
        doc = {"n": self.n, "color": self.color, "count": self.count}
        if self.max_element is not None:
            doc["max_element"] = self.max_element
        doc["M"] = self.horizon
        doc["stabilized"] = self.stabilized
        return doc


def verify_config(coloring: Coloring, cfg: Configuration) -> int | None:
    """Common color of all configuration points, or None if mixed."""
    pts = cfg.points()
    if min(pts) < 1:
        return None
    if max(pts) < (1 << 62):
        cols = coloring.colors_at(np.array(pts, dtype=np.int64))
        first = int(cols[0])
        return first if (cols == first).all() else None
    first = coloring.color(pts[0])
    for p in pts[1:]:
        if coloring.color(p) != first:
            return None
    return first


def _full_mask(n: int) -> int:
    return ((1 << n) - 1) << 1


def survivor_set(w: ColorWindow, polys: Sequence[IntPolynomial], C: Iterable[int], color: int) -> int:
    """Bit-vector of b with b + P(c) <= N and colored `color` for all c, P.

    Bit b (1-indexed) survives iff every shifted copy of the color mask keeps
    it; shifts are whole-int shifts of the packed mask.
    """
    v = _full_mask(w.n)
    s = w.mask(color)
    for c in sorted(set(C)):
        for P in polys:
            k = P(c)
            v &= (s >> k) if k >= 0 else (s << -k)
            if not v:
                return 0
    return v & _full_mask(w.n)


def _poly_values(P: IntPolynomial, cs: np.ndarray) -> np.ndarray:
    """P over an int64 array, exact: falls back to objects near overflow."""
    if cs.size == 0:
        return cs
    top = max(abs(int(cs[0])), abs(int(cs[-1])))
    bound = sum(abs(c) * top**i for i, c in enumerate(P.coeffs))
    return P(cs) if bound < (1 << 62) else P(cs.astype(object))


def _candidates(w: ColorWindow, polys: Sequence[IntPolynomial]) -> np.ndarray:
    """All c >= 1 with max_P P(c) <= N, ascending."""
    # beyond N plus the coefficient mass, every P exceeds N
    slack = max(sum(abs(c) for c in P.coeffs) for P in polys)
    cs = np.arange(1, w.n + slack + 1, dtype=np.int64)
    keep = np.ones(cs.shape[0], dtype=bool)
    for P in polys:
        keep &= _poly_values(P, cs) <= w.n
    return cs[keep]


_GATHER_THRESHOLD = 64


def _shift_words(arr: np.ndarray, k: int, out: np.ndarray) -> np.ndarray:
    """out = arr >> k as one long bit string (bit b of out = bit b+k of arr)."""
    out[:] = 0
    word, bit = k >> 6, k & 63
    L = arr.shape[0]
    if word >= L:
        return out
    a = arr[word:]
    if bit == 0:
        out[: L - word] = a
    else:
        np.right_shift(a, np.uint64(bit), out=out[: L - word])
        out[: L - word - 1] |= a[1:] << np.uint64(64 - bit)
    return out


def _shift_words_left(arr: np.ndarray, k: int, out: np.ndarray) -> np.ndarray:
    """out = arr << k as one long bit string."""
    out[:] = 0
    word, bit = k >> 6, k & 63
    L = arr.shape[0]
    if word >= L:
        return out
    a = arr[: L - word]
    if bit == 0:
        out[word:] = a
    else:
        np.left_shift(a, np.uint64(bit), out=out[word:])
        out[word + 1 :] |= a[:-1] >> np.uint64(64 - bit)
    return out


def _mask_words(mask: int, nwords: int) -> np.ndarray:
    return np.frombuffer(mask.to_bytes(nwords * 8, "little"), dtype=np.uint64).copy()


def _words_to_int(words: np.ndarray) -> int:
    return int.from_bytes(words.tobytes(), "little")


def _greedy_one_color(
    w: ColorWindow,
    polys: Sequence[IntPolynomial],
    r: int,
    maxC: int,
    color: int,
    cand: np.ndarray,
    cap: int | None,
) -> tuple[list[int], int, int] | None:
    """Greedy C growth for one color: (C, survivor mask popcount, mask)."""
    nwords = (w.n + 64) // 64
    sw = _mask_words(w.mask(color), nwords)
    vw = _mask_words(_full_mask(w.n), nwords)
    vcount = w.n
    tmp = np.empty(nwords, dtype=np.uint64)
    v2 = np.empty(nwords, dtype=np.uint64)
    best_vw = np.empty(nwords, dtype=np.uint64)
    chosen: list[int] = []
    used: set[int] = set()
    cols: np.ndarray | None = None
    surv: np.ndarray | None = None
    vmask = 0
    pool = cand
    if cap is not None and pool.shape[0] > cap:
        stride = -(-pool.shape[0] // cap)
        pool = pool[::stride]
    # shifts beyond the window clip to n+1: the shifted mask comes out empty
    # either way, and clipped values index the dead padding in phase B
    pvals = [
        np.clip(_poly_values(P, pool), -(w.n + 1), w.n + 1).astype(np.int64)
        for P in polys
    ]
    pool_list = pool.tolist()

    while len(chosen) < maxC:
        if vcount > _GATHER_THRESHOLD:
            # phase A: shifted-AND scan of the candidate pool
            best_c, best_n = 0, r - 1
            for i, c in enumerate(pool_list):
                if c in used:
                    continue
                np.copyto(v2, vw)
                for pv in pvals:
                    k = int(pv[i])
                    sh = _shift_words(sw, k, tmp) if k >= 0 else _shift_words_left(sw, -k, tmp)
                    v2 &= sh
                n2 = int(np.bitwise_count(v2).sum())
                if n2 > best_n:
                    best_c, best_n = c, n2
                    np.copyto(best_vw, v2)
            if best_c == 0:
                break
            chosen.append(best_c)
            used.add(best_c)
            np.copyto(vw, best_vw)
            vcount = best_n
            continue

        # phase B: packed survivor-by-candidate matrix, scans every candidate
        if surv is None:
            surv = np.nonzero(np.unpackbits(vw.view(np.uint8), bitorder="little"))[0]
            surv = surv.astype(np.int64)
            vmask = (1 << surv.shape[0]) - 1
            okpad = np.zeros(2 * w.n + 2, dtype=bool)
            okpad[: w.n + 1] = w.colors == color
            cols = np.zeros(pool.shape[0], dtype=np.uint64)
            for i, b in enumerate(surv.tolist()):
                acc = np.ones(pool.shape[0], dtype=bool)
                for pv in pvals:
                    acc &= okpad[np.clip(b + pv, 0, 2 * w.n + 1)]
                cols |= acc.astype(np.uint64) << np.uint64(i)
            for c in chosen:
                idx = np.searchsorted(pool, c)
                if idx < pool.shape[0] and pool[idx] == c:
                    cols[idx] = 0
        counts = np.bitwise_count(cols & np.uint64(vmask))
        best = int(counts.max()) if counts.size else 0
        if best < r:
            break
        pick = int(np.nonzero(counts == best)[0][0])
        c = int(pool[pick])
        chosen.append(c)
        used.add(c)
        vmask &= int(cols[pick])
        cols[pick] = 0
        vcount = best

    if not chosen:
        return None
    if surv is not None:
        v = 0
        for i in range(surv.shape[0]):
            if vmask >> i & 1:
                v |= 1 << int(surv[i])
    else:
        v = _words_to_int(vw)
    return chosen, vcount, v


def greedy_search(
    w: ColorWindow,
    polys: Sequence[IntPolynomial],
    r: int,
    maxC: int,
    candidate_cap: int | None = None,
) -> Configuration:
    """Grow C greedily per color and keep the best configuration overall.

    Each step adds the candidate maximizing the survivor population, ties to
    the smallest candidate; across colors the largest |C| wins, then the
    larger survivor count, then the smaller color.  candidate_cap subsamples
    the scanned candidates evenly while survivors are plentiful (the exact
    matrix phase always scans all of them).
    """
    if r < 1 or maxC < 1:
        raise DomainError("r and maxC must be positive")
    polys = tuple(polys)
    cand = _candidates(w, polys)
    best: tuple[int, int, int, list[int], int] | None = None
    for color in range(1, w.palette + 1):
        got = _greedy_one_color(w, polys, r, maxC, color, cand, candidate_cap)
        if got is None:
            continue
        chosen, vcount, v = got
        key = (len(chosen), vcount, -color)
        if best is None or key > (best[0], best[1], -best[2]):
            best = (len(chosen), vcount, color, chosen, v)
    if best is None:
        raise NoConfiguration(f"no single candidate keeps {r} survivors in any color")
    _, vcount, color, chosen, v = best
    B = bits_to_indices(v)[:r]
    return Configuration(
        B=tuple(int(b) for b in B),
        C=tuple(sorted(chosen)),
        polys=polys,
        color=color,
        survivors=vcount,
        strategy="greedy",
    )


def exhaustive_search(
    w: ColorWindow, polys: Sequence[IntPolynomial], r: int, sizeC: int
) -> Configuration | None:
    """Optimal configuration over all C of the given size, or None.

    Enumerates candidate subsets in lexicographic order per color; keeps the
    survivor-count maximum (first witness wins ties, smaller color first).
    """
    from itertools import combinations

    if r < 1 or sizeC < 1:
        raise DomainError("r and sizeC must be positive")
    polys = tuple(polys)
    cand = [int(c) for c in _candidates(w, polys).tolist()]
    best: tuple[int, int, tuple[int, ...], int] | None = None
    for color in range(1, w.palette + 1):
        for C in combinations(cand, sizeC):
            v = survivor_set(w, polys, C, color)
            n = v.bit_count()
            if n >= r and (best is None or n > best[0]):
                best = (n, color, C, v)
    if best is None:
        return None
    n, color, C, v = best
    B = bits_to_indices(v)[:r]
    return Configuration(
        B=tuple(int(b) for b in B),
        C=C,
        polys=polys,
        color=color,
        survivors=n,
        strategy="exhaustive",
    )


def _poly_plus_n_int64(P: IntPolynomial, n: int, ms: np.ndarray) -> np.ndarray | None:
    # Horner in int64, only when |n + P(m)| provably fits; None means overflow risk.
    # |acc_j| <= sum |c_k| hi^(k-j) <= sum |c_k| hi^k for hi >= 1, so the final
    # bound also covers every intermediate step.
    hi = int(ms[-1])
    bound = abs(n) + sum(abs(c) * hi**k for k, c in enumerate(P.coeffs))
    if bound >= (1 << 62):
        return None
    acc = np.full(ms.shape[0], P.coeffs[-1], dtype=np.int64)
    for c in reversed(P.coeffs[:-1]):
        acc *= ms
        if c:
            acc += c
    acc += n
    return acc


def bad_set(
    coloring: Coloring,
    n: int,
    polys: Sequence[IntPolynomial],
    color: int,
    M: int,
) -> tuple[np.ndarray, AuditReport]:
    """All m <= M with every n + P(m) colored `color`, plus its report."""
    if M < 1:
        raise DomainError(f"horizon must be positive, got {M}")
    polys = tuple(polys)
    keep_chunks: list[np.ndarray] = []
    chunk = 1 << 20
    for lo in range(1, M + 1, chunk):
        ms = np.arange(lo, min(M, lo + chunk - 1) + 1, dtype=np.int64)
        ok = np.ones(ms.shape[0], dtype=bool)
        for P in polys:
            fast = _poly_plus_n_int64(P, n, ms)
            if fast is not None:
                good = fast >= 1
                if bool(good.all()):
                    ok &= coloring.colors_at(fast) == color
                else:
                    ok &= good & (coloring.colors_at(np.where(good, fast, 1)) == color)
            else:
                vals = n + P(ms.astype(object))
                ok &= np.array(
                    [v >= 1 and coloring.color(int(v)) == color for v in vals.tolist()]
                )
            if not ok.any():
                break
        keep_chunks.append(ms[ok])
    elems = np.concatenate(keep_chunks) if keep_chunks else np.zeros(0, dtype=np.int64)
    count = int(elems.shape[0])
    max_el = int(elems[-1]) if count else None
    stabilized = count == 0 or 2 * max_el <= M
    report = AuditReport(
        n=n, color=color, count=count, max_element=max_el, horizon=M, stabilized=stabilized
    )
    return elems, report


def bad_set_growth(
    coloring: Coloring,
    n: int,
    polys: Sequence[IntPolynomial],
    color: int,
    horizons: Sequence[int],
) -> list[tuple[int, int, int | None]]:
    """(M, count, max_element) rows for a ladder of horizons, one enumeration."""
    horizons = sorted(set(int(M) for M in horizons))
    if not horizons:
        return []
    elems, _ = bad_set(coloring, n, polys, color, horizons[-1])
    rows = []
    lst = elems.tolist()
    for M in horizons:
        k = bisect_right(lst, M)
        rows.append((M, k, int(lst[k - 1]) if k else None))
    return rows


def longest_ap(S: Iterable[int]) -> tuple[int, int, int]:
    """Longest arithmetic progression inside S as (start, difference, length).

    Dynamic program over pairs; ties prefer the smallest difference, then the
    smallest start.  A singleton set yields (s, 0, 1).
    """
    elems = sorted(set(int(s) for s in S))
    if not elems:
        raise EmptySet("cannot take the longest progression of an empty set")
    if len(elems) == 1:
        return (elems[0], 0, 1)
    n = len(elems)
    # length[i][d] = longest AP ending at elems[i] with difference d
    length: list[dict[int, int]] = [dict() for _ in range(n)]
    pos = {v: i for i, v in enumerate(elems)}
    best = (2, -(elems[1] - elems[0]), -elems[0])  # (len, -diff, -start)
    for j in range(n):
        for i in range(j):
            d = elems[j] - elems[i]
            l = length[i].get(d, 1) + 1
            length[j][d] = l
            start = elems[j] - (l - 1) * d
            key = (l, -d, -start)
            if key > best:
                best = key
    l, d, start = best[0], -best[1], -best[2]
    return (start, d, l)


def gowers_threshold(k: int, N: int) -> mpmath.mpf:
    """ln of the density threshold N (log log N)^(-2^-2^(k+9)), in log space.

    The dyadic exponent is applied by scaling ln ln ln N at a precision wide
    enough that the subtraction from ln N is exact to the working precision
    (capped; the correction is astronomically small but strictly positive).
    """
    if k < 1:
        raise DomainError(f"k must be at least 1, got {k}")
    if N <= 15:
        raise DomainError(f"N must exceed e^e (so N >= 16), got {N}")
    shift = 2 ** min(k + 9, 20)
    prec = min(2**20, shift) + 64
    with mpmath.workprec(prec):
        lnN = mpmath.ln(N)
        lll = mpmath.ln(mpmath.ln(mpmath.ln(N)))
        corr = mpmath.ldexp(lll, -(2 ** (k + 9)))
        return lnN - corr
