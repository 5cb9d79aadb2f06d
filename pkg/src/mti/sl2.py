"""Finite-gauge partition functions of genus-one (and genus-g) mapping tori,
mod-p conjugacy classification of SL(2,Z) elements, and brute-force
fixed-point oracles.

The partition function with gauge group Z/p of the mapping torus of A is
written Z(A, p) throughout; it equals the number of fixed covectors of the
induced action on Hom(H1(S), Z/p).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd

from .intmat import AbelianGroup, IntMatrix, is_prime, rank_mod_p


@dataclass(frozen=True)
class Sl2Matrix:
    """Element of SL(2,Z); determinant is validated at construction."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError(f"determinant is not 1: {self}")

    @classmethod
    def from_rows(cls, rows) -> "Sl2Matrix":
        (a, b), (c, d) = rows
        return cls(int(a), int(b), int(c), int(d))

    @property
    def trace(self) -> int:
        return self.a + self.d

    def __mul__(self, other: "Sl2Matrix") -> "Sl2Matrix":
        return Sl2Matrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __neg__(self) -> "Sl2Matrix":
        return Sl2Matrix(-self.a, -self.b, -self.c, -self.d)

    def inverse(self) -> "Sl2Matrix":
        return Sl2Matrix(self.d, -self.b, -self.c, self.a)

    def conjugate_by(self, g: "Sl2Matrix") -> "Sl2Matrix":
        return g * self * g.inverse()

    def mod(self, p: int) -> tuple[int, int, int, int]:
        return (self.a % p, self.b % p, self.c % p, self.d % p)

    def to_intmatrix(self) -> IntMatrix:
        return IntMatrix(2, 2, [self.a, self.b, self.c, self.d])

    def to_rows(self):
        return [[self.a, self.b], [self.c, self.d]]


SL2_T = Sl2Matrix(1, 1, 0, 1)
SL2_S = Sl2Matrix(0, 1, -1, 0)


@dataclass(frozen=True)
class ClassLabel:
    """Mod-p conjugacy class tag: C1..C8 for odd p, C1..C3 for p = 2.

    qr_flag records the quadratic-residue test that separates C3/C4 and
    C5/C6 (odd p); None where no such test applies.
    """

    kind: str
    p: int
    trace_mod_p: int
    qr_flag: bool | None = None


@dataclass(frozen=True)
class DwValue:
    """A power of p: the partition function value."""

    value: int
    exponent: int

    @classmethod
    def of(cls, p: int, exponent: int) -> "DwValue":
        return cls(p**exponent, exponent)


def sl2_snf_entries(A: Sl2Matrix) -> tuple[int, int]:
    """Diagonal SNF entries (A1, A2) of A - Id in closed form.

    A1 = gcd(a-1, b, c, d-1); A2 = |Tr - 2| / A1 when Tr != 2.  The gcd of
    the all-zero tuple (A = Id) is taken as 0; for Tr = 2 with A != Id the
    second entry is 0 (the difference matrix has rank 1).
    """
    a1 = gcd(gcd(A.a - 1, A.b), gcd(A.c, A.d - 1))
    if a1 == 0:
        return (0, 0)
    if A.trace == 2:
        return (a1, 0)
    return (a1, abs(A.trace - 2) // a1)


def genus1_homology(A: Sl2Matrix) -> AbelianGroup:
    """H1 of the mapping torus of the torus map A (trichotomy on Tr, Id)."""
    a1, a2 = sl2_snf_entries(A)
    if a1 == 0:
        return AbelianGroup(free_rank=3)
    if A.trace == 2:
        return AbelianGroup(free_rank=2, torsion=[a1] if a1 > 1 else [])
    return AbelianGroup(free_rank=1, torsion=[t for t in (a1, a2) if t > 1])


def dw_invariant_sl2(A: Sl2Matrix, p: int) -> DwValue:
    """Z(A, p): p^2 if A = Id mod p; p if Tr = 2 mod p (A != Id); else 1."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    am, bm, cm, dm = A.mod(p)
    if bm == 0 and cm == 0 and am == 1 % p and dm == 1 % p:
        return DwValue.of(p, 2)
    if (A.trace - 2) % p == 0:
        return DwValue.of(p, 1)
    return DwValue.of(p, 0)


def fixed_point_count_bruteforce(abar: tuple[int, int, int, int], p: int) -> int:
    """Exhaustively count covectors phi with phi o Abar = phi over F_p.

    abar is (a, b, c, d) of residues; maps phi(x, y) = u*x + v*y are
    enumerated over all p^2 pairs (u, v).
    """
    a, b, c, d = (x % p for x in abar)
    if (a * d - b * c) % p != 1 % p:
        raise ValueError("determinant is not 1 mod p")
    count = 0
    for u in range(p):
        for v in range(p):
            if (u * a + v * c) % p == u and (u * b + v * d) % p == v:
                count += 1
    return count


def legendre(a: int, p: int) -> int:
    """Legendre symbol by Euler's criterion (p an odd prime)."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def _unipotent_invariant(am, bm, cm, dm, p) -> int:
    """Square-class invariant of a unipotent residue matrix.

    N = A - Id has rank 1 and N^2 = 0; pick a basis vector e with Ne != 0
    and return det[Ne | e], well-defined up to squares.
    """
    na, nb, nc, nd = (am - 1) % p, bm, cm, (dm - 1) % p
    if na or nc:  # e = (1, 0), Ne = (na, nc)
        u = (na * 0 - nc * 1) % p
    else:  # e = (0, 1), Ne = (nb, nd)
        u = (nb * 1 - nd * 0) % p
    return u % p


def classify_mod_p(A: Sl2Matrix, p: int) -> ClassLabel:
    """Conjugacy class of A mod p in SL(2,F_p), p an odd prime.

    Central classes C1/C2; unipotent C3/C4 split by the quadratic-residue
    class of the unipotent invariant; negative-unipotent C5/C6 split by
    anchoring to the class of the representative [[-1,1],[0,-1]]; split
    semisimple C7 and nonsplit C8 by the residue class of Tr^2 - 4.
    """
    if p == 2 or not is_prime(p):
        raise ValueError("p must be an odd prime")
    am, bm, cm, dm = A.mod(p)
    return _classify_residues(am, bm, cm, dm, p)


def classify_mod_2(A: Sl2Matrix) -> ClassLabel:
    """Conjugacy class of A mod 2: C1 = identity, C2 = order two, C3 = order three."""
    m = A.mod(2)
    t = (m[0] + m[3]) % 2
    if m == (1, 0, 0, 1):
        return ClassLabel("C1", 2, t)
    sq = (
        (m[0] * m[0] + m[1] * m[2]) % 2,
        (m[0] * m[1] + m[1] * m[3]) % 2,
        (m[2] * m[0] + m[3] * m[2]) % 2,
        (m[2] * m[1] + m[3] * m[3]) % 2,
    )
    if sq == (1, 0, 0, 1):
        return ClassLabel("C2", 2, t)
    return ClassLabel("C3", 2, t)


def dw_invariant_sl2_p2(A: Sl2Matrix) -> DwValue:
    """Z(A, 2) from the mod-2 class: 4 / 2 / 1 for C1 / C2 / C3."""
    kind = classify_mod_2(A).kind
    return DwValue.of(2, {"C1": 2, "C2": 1, "C3": 0}[kind])


def geodesic_pullback_splitting(A: Sl2Matrix) -> int:
    """Number of closed geodesics over the one for [A] in the level-2 cover.

    6 / 3 / 2 for mod-2 classes C1 / C2 / C3; defined for hyperbolic A.
    """
    if abs(A.trace) <= 2:
        raise ValueError("requires |trace| > 2")
    kind = classify_mod_2(A).kind
    return {"C1": 6, "C2": 3, "C3": 2}[kind]


def dw_invariant_genus_g(fhat: IntMatrix, p: int, check_symplectic: bool = True) -> DwValue:
    """Z of the genus-g mapping torus: exponent 2g - rank_p(fhat - Id)."""
    from .intmat import is_symplectic

    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if fhat.rows != fhat.cols or fhat.rows % 2 != 0:
        raise ValueError("expected a 2g x 2g matrix")
    g = fhat.rows // 2
    if check_symplectic and not is_symplectic(fhat, g):
        raise ValueError("matrix is not symplectic")
    exponent = 2 * g - rank_mod_p(fhat - IntMatrix.identity(2 * g), p)
    return DwValue.of(p, exponent)


def fixed_point_count_genus_g(fhat_mod_p, g: int, p: int, bound: int = 10**6) -> int:
    """Count covectors on (Z/p)^{2g} fixed by precomposition with the matrix.

    Realizes the character of the induced permutation action without
    building the p^{2g}-dimensional representation; exhaustive, so p^{2g}
    is capped.
    """
    n = 2 * g
    if p**n > bound:
        raise ValueError(f"p^(2g) = {p**n} exceeds bound {bound}")
    rows = [[x % p for x in row] for row in fhat_mod_p]
    count = 0
    for phi in itertools.product(range(p), repeat=n):
        # condition: phi(M e_j) = phi(e_j) for all basis vectors
        if all(sum(phi[i] * rows[i][j] for i in range(n)) % p == phi[j] for j in range(n)):
            count += 1
    return count


@dataclass
class ClassCensusRow:
    kind: str
    class_count: int
    class_size: int


def slp_class_census(p: int) -> list[ClassCensusRow]:
    """Classify every element of SL(2,F_p), odd p <= 13.

    Returns one row per class kind with the number of distinct classes and
    the common class size.  Distinct C7/C8 classes are told apart by trace.
    """
    if p == 2 or not is_prime(p) or p > 13:
        raise ValueError("p must be an odd prime <= 13")
    totals: dict[str, int] = {}
    traces: dict[str, set[int]] = {"C7": set(), "C8": set()}
    for a, b, c in itertools.product(range(p), repeat=3):
        # solve a*d - b*c = 1 for d when possible
        if a != 0:
            d = (1 + b * c) * pow(a, p - 2, p) % p
            dvals = [d]
        elif b * c % p == p - 1:
            dvals = list(range(p))
        else:
            continue
        for d in dvals:
            label = _classify_residues(a, b, c, d, p)
            totals[label.kind] = totals.get(label.kind, 0) + 1
            if label.kind in traces:
                traces[label.kind].add(label.trace_mod_p)
    rows = []
    for kind in ("C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8"):
        total = totals.get(kind, 0)
        if kind in ("C7", "C8"):
            ncls = len(traces[kind])
        else:
            ncls = 1 if total else 0
        rows.append(ClassCensusRow(kind, ncls, total // ncls if ncls else 0))
    return rows


def _classify_residues(a: int, b: int, c: int, d: int, p: int) -> ClassLabel:
    """classify_mod_p on residues, avoiding an SL(2,Z) lift."""
    t = (a + d) % p
    if b == 0 and c == 0 and a == d:
        if a == 1:
            return ClassLabel("C1", p, t)
        if a == p - 1:
            return ClassLabel("C2", p, t)
    if t == 2 % p:
        u = _unipotent_invariant(a, b, c, d, p)
        is_qr = legendre(u, p) == 1
        return ClassLabel("C3" if is_qr else "C4", p, t, qr_flag=is_qr)
    if t == (p - 2) % p:
        u = _unipotent_invariant((-a) % p, (-b) % p, (-c) % p, (-d) % p, p)
        # anchor: the printed representative [[-1,1],[0,-1]] defines the C5 square class
        u0 = _unipotent_invariant(1, p - 1, 0, 1, p)
        same = legendre(u, p) == legendre(u0, p)
        return ClassLabel("C5" if same else "C6", p, t, qr_flag=same)
    disc = (t * t - 4) % p
    is_qr = legendre(disc, p) == 1
    return ClassLabel("C7" if is_qr else "C8", p, t, qr_flag=is_qr)
