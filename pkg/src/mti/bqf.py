"""Hyperbolic SL(2,Z) conjugacy classes by trace, via indefinite binary
quadratic forms.

A hyperbolic matrix A maps to the form Q_A = (b, a-d, -c) of discriminant
Tr(A)^2 - 4; conjugacy classes of trace t correspond to proper equivalence
classes of forms of that discriminant, realized here as rho-cycles of
Gauss-reduced forms.  Imprimitive forms are enumerated directly by a
divisor-pair scan, so proper-power classes are included.

All square-root comparisons are exact (squares are compared, never floats).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt
from typing import Iterator

from .sl2 import Sl2Matrix

_SIEVE_CAP = 8_000_000
_spf: list[int] = [0, 1]


@dataclass(frozen=True)
class QuadForm:
    """Integer binary quadratic form m*x^2 + l*x*y + k*y^2."""

    m: int
    l: int
    k: int

    @property
    def discriminant(self) -> int:
        return self.l * self.l - 4 * self.m * self.k

    @property
    def content(self) -> int:
        return gcd(gcd(self.m, self.l), self.k)

    def __call__(self, x: int, y: int) -> int:
        return self.m * x * x + self.l * x * y + self.k * y * y

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.m, self.l, self.k)


@dataclass(frozen=True)
class ClassRep:
    """One hyperbolic conjugacy class: matrix representative plus the
    canonical reduced form (lexicographically smallest in its cycle)."""

    matrix: Sl2Matrix
    trace: int
    form: QuadForm
    primitive_content: int


def matrix_to_bqf(A: Sl2Matrix) -> QuadForm:
    """Form (b, a-d, -c) attached to a hyperbolic matrix."""
    if abs(A.trace) <= 2:
        raise ValueError("requires |trace| > 2")
    return QuadForm(A.b, A.a - A.d, -A.c)


def bqf_to_matrix(f: QuadForm, t: int) -> Sl2Matrix:
    """Trace-t matrix [[(t-l)/2, k], [-m, (t+l)/2]] attached to a form.

    Requires disc(f) = t^2 - 4, which forces l = t mod 2.  The image is a
    class representative: its own form is f composed with the rotation
    (x,y) -> (y,-x), hence in the same reduction cycle.
    """
    if f.discriminant != t * t - 4:
        raise ValueError(f"discriminant {f.discriminant} != t^2-4 = {t * t - 4}")
    if (t - f.l) % 2 != 0:
        raise ValueError("parity violation: l must equal t mod 2")
    return Sl2Matrix((t - f.l) // 2, f.k, -f.m, (t + f.l) // 2)


def _check_disc(D: int) -> int:
    if D <= 0:
        raise ValueError("discriminant must be positive")
    r = isqrt(D)
    if r * r == D:
        raise ValueError("discriminant must not be a perfect square")
    return r


def is_reduced(f: QuadForm) -> bool:
    """Gauss-reduced: 0 < l < sqrt(D) and sqrt(D) - l < 2|m| < sqrt(D) + l."""
    D = f.discriminant
    _check_disc(D)
    l, x = f.l, 2 * abs(f.m)
    if l <= 0 or l * l >= D:
        return False
    if D >= (x + l) * (x + l):  # sqrt(D) >= 2|m| + l
        return False
    return x <= l or (x - l) * (x - l) < D  # 2|m| - l < sqrt(D)


def _rho(m: int, l: int, k: int, D: int, isq: int) -> tuple[int, int, int]:
    # neighbor of a reduced form: leading coefficient k, companion l' the
    # unique residue of -l mod 2|k| in (sqrt(D) - 2|k|, sqrt(D))
    two_k = 2 * abs(k)
    l2 = (-l) % two_k
    l2 += ((isq - l2) // two_k) * two_k
    return (k, l2, (l2 * l2 - D) // (4 * k))


def reduction_cycle(f: QuadForm) -> list[QuadForm]:
    """The rho-orbit of a reduced form: the full cycle of its class."""
    if not is_reduced(f):
        raise ValueError(f"{f} is not reduced")
    D = f.discriminant
    isq = isqrt(D)
    start = f.as_tuple()
    cycle = [start]
    cur = _rho(*start, D, isq)
    while cur != start:
        cycle.append(cur)
        cur = _rho(*cur, D, isq)
    return [QuadForm(*c) for c in cycle]


def _normalize(a: int, b: int, c: int, D: int, isq: int) -> tuple[int, int, int, int]:
    # translate b into the normalization window; returns (a, b', c', shift)
    two_a = 2 * abs(a)
    if abs(a) > isq:
        r = b % two_a
        b2 = r - two_a if r > abs(a) else r
    else:
        b2 = isq - ((isq - b) % two_a)
    shift = (b2 - b) // (2 * a)
    return a, b2, (b2 * b2 - D) // (4 * a), shift


def reduce_with_transform(f: QuadForm) -> tuple[QuadForm, Sl2Matrix]:
    """Reduce an indefinite form; also return g with f(g*(x,y)) = reduced."""
    D = f.discriminant
    isq = _check_disc(D)
    a, b, c = f.as_tuple()
    # transform accumulated as column substitution (x,y) -> g.(x,y)
    g = (1, 0, 0, 1)
    while True:
        a, b, c, shift = _normalize(a, b, c, D, isq)
        # right-multiply by [[1, shift], [0, 1]] acting on the variables
        g = (g[0], g[1] + g[0] * shift, g[2], g[3] + g[2] * shift)
        if 0 < b and b * b < D and D < (2 * abs(a) + b) ** 2 and (
            2 * abs(a) <= b or (2 * abs(a) - b) ** 2 < D
        ):
            break
        a, b, c = c, -b, a
        # right-multiply by [[0, -1], [1, 0]]
        g = (g[1], -g[0], g[3], -g[2])
    return QuadForm(a, b, c), Sl2Matrix(*g)


def reduce_indefinite(f: QuadForm) -> QuadForm:
    """A reduced form properly equivalent to f (Gauss reduction)."""
    return reduce_with_transform(f)[0]


def apply_transform(f: QuadForm, g: Sl2Matrix) -> QuadForm:
    """Variable substitution (x, y) -> (g.a*x + g.b*y, g.c*x + g.d*y)."""
    m = f(g.a, g.c)
    k = f(g.b, g.d)
    l = 2 * f.m * g.a * g.b + f.l * (g.a * g.d + g.b * g.c) + 2 * f.k * g.c * g.d
    return QuadForm(m, l, k)


def _grow_sieve(limit: int) -> None:
    global _spf
    if len(_spf) > limit:
        return
    n = min(max(limit + 1, 2 * len(_spf)), _SIEVE_CAP)
    spf = list(range(n))
    for i in range(2, isqrt(n - 1) + 1):
        if spf[i] == i:
            for j in range(i * i, n, i):
                if spf[j] == j:
                    spf[j] = i
    _spf = spf


def _divisors(n: int) -> list[int]:
    # positive divisors; smallest-prime-factor sieve when it fits
    if n == 1:
        return [1]
    if n < _SIEVE_CAP:
        _grow_sieve(n)
        spf = _spf
        divs = [1]
        while n > 1:
            p = spf[n]
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            divs = [d * p**i for d in divs for i in range(e + 1)]
        return divs
    divs = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            divs.append(i)
            if i * i != n:
                divs.append(n // i)
        i += 1
    return divs


def reduced_forms_of_disc(D: int) -> list[QuadForm]:
    """Every reduced form of positive non-square discriminant D."""
    isq = _check_disc(D)
    out = []
    for l in range(2 - (D % 2), isq + 1, 2):
        n4 = D - l * l
        if n4 <= 0:
            break
        n = n4 // 4  # -m*k; factor over divisor pairs
        for m in _divisors(n):
            # window: sqrt(D) - l < 2m < sqrt(D) + l, exact in integers
            if D < (2 * m + l) ** 2 and (2 * m <= l or (2 * m - l) ** 2 < D):
                k = n // m
                out.append(QuadForm(m, l, -k))
                out.append(QuadForm(-m, l, k))
    return out


@lru_cache(maxsize=8)
def _canonical_cycle_reps(abs_t: int) -> tuple[tuple[int, int, int], ...]:
    # one lexicographically-minimal reduced form per rho-cycle of disc t^2-4
    D = abs_t * abs_t - 4
    isq = isqrt(D)
    remaining = {f.as_tuple() for f in reduced_forms_of_disc(D)}
    reps = []
    while remaining:
        start = next(iter(remaining))
        best = start
        remaining.discard(start)
        cur = _rho(*start, D, isq)
        while cur != start:
            remaining.discard(cur)
            if cur < best:
                best = cur
            cur = _rho(*cur, D, isq)
        reps.append(best)
    reps.sort()
    return tuple(reps)


def classes_with_trace(t: int) -> list[ClassRep]:
    """All conjugacy classes of hyperbolic SL(2,Z) matrices of trace t.

    One ClassRep per reduction cycle of discriminant t^2 - 4, imprimitive
    forms included; deterministic order (sorted canonical forms).
    """
    if abs(t) <= 2:
        raise ValueError("requires |t| > 2")
    out = []
    for rep in _canonical_cycle_reps(abs(t)):
        form = QuadForm(*rep)
        out.append(
            ClassRep(
                matrix=bqf_to_matrix(form, t),
                trace=t,
                form=form,
                primitive_content=form.content,
            )
        )
    return out


def class_count_with_trace(t: int) -> int:
    """Number of hyperbolic classes of trace t (= rho-cycles of disc t^2-4)."""
    if abs(t) <= 2:
        raise ValueError("requires |t| > 2")
    return len(_canonical_cycle_reps(abs(t)))


def hyperbolic_classes_below(T: int) -> Iterator[ClassRep]:
    """Stream every hyperbolic class with |trace| < T, in increasing |trace|.

    For each 3 <= t <= T-1 yields the trace-t classes then the trace-(-t)
    classes; the two share one form enumeration per discriminant.
    """
    if T < 4:
        raise ValueError("T must be at least 4")
    for t in range(3, T):
        yield from classes_with_trace(t)
        yield from classes_with_trace(-t)
