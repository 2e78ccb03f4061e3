"""Integer polynomials with zero constant term, growth profiles, and band offsets.

The polynomial type is the common currency of the package: coefficients are
arbitrary-precision Python ints, evaluation is exact Horner.  On top of it sit
the growth map psi = Q o P^{-1} (evaluated in high-precision real arithmetic),
its degree/leading-ratio profile, and the band-offset computation for pairs of
equal degree and equal leading coefficient.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import mpmath
import sympy

from .errors import (
    DomainError,
    EqualPolynomials,
    NotCaseII,
    ParseError,
    PolynomialError,
)

_TERM_RE = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?P<coeff>\d+)?\s*
        (?P<var>n)?\s*
        (?:\^\s*(?P<exp>\d+))?\s*""",
    re.VERBOSE,
)


# ---------------------------------------------------------------------------
# raw coefficient-list helpers (index = power), used internally
# ---------------------------------------------------------------------------

def _trim(coeffs: list[int]) -> list[int]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _eval_coeffs(coeffs: Sequence[int], x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _derive(coeffs: Sequence[int]) -> list[int]:
    return _trim([k * coeffs[k] for k in range(1, len(coeffs))])


def _shift(coeffs: Sequence[int], s: int) -> list[int]:
    # coefficients of p(n + s): Horner in the polynomial ring, out = out*(n+s) + c
    out: list[int] = []
    for c in reversed(coeffs):
        new = [0] * (len(out) + 1)
        for k, v in enumerate(out):
            new[k] += v * s
            new[k + 1] += v
        new[0] += c
        out = new
    return _trim(out)


def _sub(a: Sequence[int], b: Sequence[int]) -> list[int]:
    n = max(len(a), len(b))
    out = [(a[k] if k < len(a) else 0) - (b[k] if k < len(b) else 0) for k in range(n)]
    return _trim(out)


def _root_bound(coeffs: Sequence[int]) -> int:
    # Cauchy bound: all real roots lie below 1 + max |c_i| / |lead|
    lead = coeffs[-1]
    if len(coeffs) == 1:
        return 1
    m = max(abs(c) for c in coeffs[:-1])
    return 1 + (m + abs(lead) - 1) // abs(lead) + 1


def _positive_from(coeffs: Sequence[int], allow_zero: bool) -> int | None:
    """Smallest integer v >= 1 with coeffs(n) > 0 (or >= 0) for every int n >= v.

    Exact for integer arguments: integers up to the Cauchy root bound are
    checked directly; beyond it the sign equals the sign of the leading
    coefficient.  Returns None when no such v exists.
    """
    cs = _trim(list(coeffs))
    if not cs:
        return 1 if allow_zero else None
    if len(cs) == 1:
        ok = cs[0] > 0 or (allow_zero and cs[0] == 0)
        return 1 if ok else None
    if cs[-1] < 0:
        return None
    bound = _root_bound(cs)
    v = 1
    for n in range(1, bound + 1):
        val = _eval_coeffs(cs, n)
        if val < 0 or (val == 0 and not allow_zero):
            v = n + 1
    return v


# ---------------------------------------------------------------------------
# the polynomial type
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntPolynomial:
    """Polynomial with integer coefficients, zero constant term, positive lead.

    ``coeffs[k]`` is the coefficient of n^k; ``coeffs[0]`` must be 0 and the
    final entry positive.  Instances are immutable and hashable.
    """

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Sequence[int]):
        cs = _trim([int(c) for c in coeffs])
        if len(cs) < 2:
            raise PolynomialError("degree must be at least 1")
        if cs[0] != 0:
            raise PolynomialError(f"constant term must be 0, got {cs[0]}")
        if cs[-1] <= 0:
            raise PolynomialError(f"leading coefficient must be positive, got {cs[-1]}")
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1]

    def __call__(self, x):
        """Exact Horner evaluation; works for int, Fraction, and mpf inputs."""
        return _eval_coeffs(self.coeffs, x)

    def derivative_at(self, x):
        return _eval_coeffs(_derive(self.coeffs), x)

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"IntPolynomial({format_poly(self)!r})"


def parse_poly(text: str) -> IntPolynomial:
    """Parse the grammar ``c_d n^d + ... + c_1 n`` (e.g. ``n^3 - n``, ``2n^2+n``)."""
    s = text.strip()
    if not s:
        raise ParseError("empty polynomial", text, 0)
    coeffs: dict[int, int] = {}
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos:
            raise ParseError("unreadable term", text, pos)
        sign, coeff, var, exp = m.group("sign", "coeff", "var", "exp")
        if sign is None and not first:
            raise ParseError("missing + or - between terms", text, pos)
        if coeff is None and var is None:
            raise ParseError("unreadable term", text, pos)
        if exp is not None and var is None:
            raise ParseError("exponent without variable", text, pos)
        k = 0 if var is None else (int(exp) if exp is not None else 1)
        c = int(coeff) if coeff is not None else 1
        if sign == "-":
            c = -c
        coeffs[k] = coeffs.get(k, 0) + c
        pos = m.end()
        first = False
    deg = max(coeffs)
    return IntPolynomial([coeffs.get(k, 0) for k in range(deg + 1)])


def format_poly(p: IntPolynomial) -> str:
    """Canonical serialization; ``parse_poly`` round-trips it."""
    parts: list[str] = []
    for k in range(p.degree, 0, -1):
        c = p.coeffs[k]
        if c == 0:
            continue
        mag = abs(c)
        body = "n" if k == 1 else f"n^{k}"
        if mag != 1:
            body = f"{mag}{body}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"{'+' if c > 0 else '-'} {body}")
    return " ".join(parts)


# ---------------------------------------------------------------------------
# growth profile and psi evaluation
# ---------------------------------------------------------------------------

class GrowthCase(str, Enum):
    CASE_I = "I"
    CASE_II = "II"


@dataclass(frozen=True)
class PsiProfile:
    delta: Fraction
    c: Fraction
    case: GrowthCase


def psi_profile(P: IntPolynomial, Q: IntPolynomial) -> PsiProfile:
    """Degree ratio and leading-coefficient ratio of psi = Q o P^{-1}."""
    if P.coeffs == Q.coeffs:
        raise EqualPolynomials("P and Q coincide")
    delta = Fraction(Q.degree, P.degree)
    # leading behavior: Q(P^{-1}(t)) ~ (q_e / p_d^(e/d)) * t^(e/d); the profile
    # keeps the rational pair (delta, q_e/p_d) used by the case split
    c = Fraction(Q.lead, P.lead)
    case = GrowthCase.CASE_II if delta == 1 and c == 1 else GrowthCase.CASE_I
    return PsiProfile(delta=delta, c=c, case=case)


def _open_interval_root_free(coeffs: Sequence[int], a: int) -> bool:
    """True when the polynomial has no real root in the open interval (a, oo)."""
    cs = _trim(list(coeffs))
    if len(cs) <= 1:
        return True
    x = sympy.Symbol("x")
    poly = sympy.Poly(list(reversed(cs)), x)
    total = poly.count_roots(inf=a)          # roots in [a, oo)
    at_a = poly.count_roots(inf=a, sup=a)    # roots exactly at a
    return (total - at_a) == 0


@lru_cache(maxsize=256)
def _a_star_cached(p_coeffs: tuple[int, ...], q_coeffs: tuple[int, ...]) -> int:
    P = list(p_coeffs)
    Q = list(q_coeffs)
    conds: list[list[int]] = []
    if p_coeffs != q_coeffs:
        qp = _sub(Q, P)
        if not qp or qp[-1] <= 0:
            raise DomainError("Q does not eventually dominate P")
        conds.append(qp)
        dq, dp = _derive(Q), _derive(P)
        dqp = _sub(dq, dp)
        if dqp and dqp[-1] <= 0:
            raise DomainError("Q' does not eventually dominate P'")
        conds.append(dqp)
    conds.append(_sub(P, [1]))          # P >= 1 beyond the threshold
    conds.append(_sub(_derive(P), [1]))  # P' >= 1 beyond the threshold
    bound = max(_root_bound(_trim(list(c))) for c in conds if _trim(list(c))) + 1
    for a in range(1, bound + 2):
        ok = True
        for cs in conds:
            csr = _trim(list(cs))
            if not csr:
                continue
            if not _open_interval_root_free(csr, a):
                ok = False
                break
            if _eval_coeffs(csr, a + 1) <= 0 and _eval_coeffs(csr, bound + 2) <= 0:
                ok = False
                break
        if ok:
            return a
    raise DomainError("no monotonicity threshold found")  # pragma: no cover


def a_star(P: IntPolynomial, Q: IntPolynomial) -> int:
    """Smallest integer a with Q > P >= 1 and Q' > P' >= 1 on all of (a, oo).

    Decided exactly: real-root counting on the open interval plus a sign probe.
    For P == Q the dominance conditions are dropped (psi is the identity).
    """
    return _a_star_cached(P.coeffs, Q.coeffs)


def _to_mpf(t) -> mpmath.mpf:
    if isinstance(t, Fraction):
        return mpmath.mpf(t.numerator) / t.denominator
    return mpmath.mpf(t)


def _invert_p(P: IntPolynomial, t_mpf: mpmath.mpf, lo: int) -> mpmath.mpf:
    """Solve P(x) = t on the increasing branch (lo, oo): bisection then Newton."""
    mp = mpmath.mp
    lo_f = mpmath.mpf(lo)
    hi = mpmath.mpf(lo + 1)
    while P(hi) < t_mpf:
        hi *= 2
    lo_b, hi_b = lo_f, hi
    for _ in range(48):
        mid = (lo_b + hi_b) / 2
        if P(mid) < t_mpf:
            lo_b = mid
        else:
            hi_b = mid
    x = (lo_b + hi_b) / 2
    eps = mpmath.mpf(2) ** (-(mp.prec - 8))
    for _ in range(80):
        fx = P(x) - t_mpf
        dfx = P.derivative_at(x)
        step = fx / dfx
        x_new = x - step
        if x_new <= lo_f:  # safeguard: fall back into the bracket
            x_new = (x + lo_f) / 2
        x = x_new
        if abs(step) <= abs(x) * eps:
            break
    return x


def psi_eval(P: IntPolynomial, Q: IntPolynomial, t) -> mpmath.mpf:
    """psi(t) = Q(P^{-1}(t)) on the shared increasing branch.

    High-precision real arithmetic (128-bit significand or better); relative
    error well below 1e-12.  Raises DomainError for t <= P(a*).
    """
    a, prec = _psi_prep(P, Q, t)
    with mpmath.workprec(prec):
        t_mpf = _to_mpf(t)
        x = _invert_p(P, t_mpf, a)
        return +Q(x)


def psi_prime(P: IntPolynomial, Q: IntPolynomial, t) -> mpmath.mpf:
    """Derivative of psi at t, via the chain rule Q'(x)/P'(x) at x = P^{-1}(t)."""
    a, prec = _psi_prep(P, Q, t)
    with mpmath.workprec(prec):
        t_mpf = _to_mpf(t)
        x = _invert_p(P, t_mpf, a)
        return +(Q.derivative_at(x) / P.derivative_at(x))


def _psi_prep(P: IntPolynomial, Q: IntPolynomial, t) -> tuple[int, int]:
    """Domain check for psi-type evaluations; returns (a*, working precision)."""
    a = a_star(P, Q)
    floor_val = P(a)
    if isinstance(t, (int, float, Fraction)):
        in_domain = t > floor_val
    else:
        in_domain = t > mpmath.mpf(floor_val)
    if not in_domain:
        raise DomainError(f"t must exceed P(a*) = {floor_val}, got {t}")
    try:
        t_bits = max(64, int(abs(t)).bit_length())
    except (OverflowError, ValueError, TypeError):  # pragma: no cover
        t_bits = 64
    return a, max(160, t_bits + 96)


# ---------------------------------------------------------------------------
# band offsets for equal-degree, equal-lead pairs
# ---------------------------------------------------------------------------

class BandPart(str, Enum):
    PART_I = "PartI"
    PART_II = "PartII"
    PART_III = "PartIII"


@dataclass(frozen=True)
class BandOffset:
    l: int
    n0: int
    part: BandPart
    k1: int | None = None
    k2: int | None = None


def band_offset(P: IntPolynomial, Q: IntPolynomial) -> BandOffset:
    """Minimal l with P(n+l-1) <= Q(n) < P(n+l) for all large n, plus the part split.

    The upper edge is strict (half-open band), which pins l uniquely; the lower
    edge may be an exact equality.  N0 is the minimal integer from which P > 1,
    both polynomials are strictly increasing, and the band inequalities hold at
    every integer (decided exactly via root bounds, not sampling).
    """
    prof = psi_profile(P, Q)  # raises EqualPolynomials for P == Q
    if prof.case is not GrowthCase.CASE_II:
        raise NotCaseII(f"profile is delta={prof.delta}, c={prof.c}")
    Pc, Qc = list(P.coeffs), list(Q.coeffs)
    l = 1
    while True:
        diff1 = _sub(Qc, _shift(Pc, l - 1))   # Q(n) - P(n+l-1), want >= 0 eventually
        diff2 = _sub(_shift(Pc, l), Qc)       # P(n+l) - Q(n), want > 0 eventually
        ok1 = (not diff1) or diff1[-1] > 0
        ok2 = bool(diff2) and diff2[-1] > 0
        if ok1 and ok2:
            break
        l += 1
        if l > 10_000:  # pragma: no cover
            raise DomainError("no band offset below 10000")
    diff1_const = len(diff1) <= 1
    diff2_const = len(diff2) <= 1
    if diff2_const:
        part = BandPart.PART_II
        k1, k2 = 2 * (diff2[0] if diff2 else 0), None
    elif diff1_const and l > 1:
        part = BandPart.PART_III
        k1, k2 = None, 2 * (diff1[0] if diff1 else 0)
    else:
        part = BandPart.PART_I
        k1 = k2 = None

    conds = [
        (_sub(Pc, [1]), False),                 # P(n) > 1
        (_sub(_shift(Pc, 1), Pc), False),       # P strictly increasing
        (_sub(_shift(Qc, 1), Qc), False),       # Q strictly increasing
        (diff1, True),                          # Q(n) >= P(n+l-1)
        (diff2, False),                         # Q(n) < P(n+l)
    ]
    n0 = 1
    for cs, allow_zero in conds:
        v = _positive_from(cs, allow_zero)
        if v is None:  # pragma: no cover
            raise DomainError("band inequality never stabilizes")
        n0 = max(n0, v)
    for n in range(n0, n0 + 1001):
        assert P(n) > 1 and P(n + l - 1) <= Q(n) < P(n + l)
    return BandOffset(l=l, n0=n0, part=part, k1=k1, k2=k2)
