"""Lattice-cone combinatorics: dual cones, Demazure roots, line factors.

Everything works on exact lattice data. Root enumeration is box-bounded
(root sets can be infinite); line-factor detection is exact linear
algebra over Z, so it needs no box.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Sequence

from .errors import DegenerateCone, DimensionMismatch
from .report import ClassificationReport, Evidence


@dataclass(frozen=True)
class Cone:
    """Pointed-or-not polyhedral cone given by primitive ray generators."""

    dim: int
    rays: tuple[tuple[int, ...], ...]

    @staticmethod
    def of(rays: Sequence[Sequence[int]]) -> "Cone":
        rays = tuple(tuple(int(x) for x in r) for r in rays)
        if not rays:
            raise ValueError("a cone needs at least one ray")
        dim = len(rays[0])
        for r in rays:
            if len(r) != dim:
                raise DimensionMismatch("rays of mixed dimension")
            if not any(r):
                raise ValueError("zero vector is not a ray")
            if gcd(*[abs(x) for x in r]) != 1:
                raise ValueError(f"ray {r} is not primitive")
        for i in range(len(rays)):
            for j in range(i + 1, len(rays)):
                if _proportional(rays[i], rays[j]):
                    raise ValueError(f"rays {rays[i]} and {rays[j]} are proportional")
        return Cone(dim, rays)


@dataclass(frozen=True)
class DemazureRoot:
    """Lattice vector pairing to -1 on one ray and >= 0 on the rest."""

    vector: tuple[int, ...]
    distinguished: int


def _proportional(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(
        a[i] * b[j] == a[j] * b[i] for i in range(len(a)) for j in range(len(a))
    )


def _pair(m: Sequence[int], v: Sequence[int]) -> int:
    return sum(int(x) * int(y) for x, y in zip(m, v))


def dual_membership(m: Sequence[int], cone: Cone) -> bool:
    """m lies in the dual cone iff it pairs >= 0 with every ray."""
    if len(m) != cone.dim:
        raise DimensionMismatch(f"vector length {len(m)} vs dim {cone.dim}")
    return all(_pair(m, v) >= 0 for v in cone.rays)


def phi_degree(m: Sequence[int], cone: Cone) -> int:
    """Sum of pairings with all rays; grades the semigroup algebra."""
    if len(m) != cone.dim:
        raise DimensionMismatch(f"vector length {len(m)} vs dim {cone.dim}")
    return sum(_pair(m, v) for v in cone.rays)


def root_of(e: Sequence[int], cone: Cone) -> DemazureRoot | None:
    """Return the root structure of e, or None if e is not a root."""
    if len(e) != cone.dim:
        raise DimensionMismatch(f"vector length {len(e)} vs dim {cone.dim}")
    distinguished = None
    for i, v in enumerate(cone.rays):
        p = _pair(e, v)
        if p == -1 and distinguished is None:
            distinguished = i
        elif p < 0:
            return None
    if distinguished is None:
        return None
    return DemazureRoot(tuple(int(x) for x in e), distinguished)


def enumerate_roots(cone: Cone, box: int) -> list[DemazureRoot]:
    """All roots of max-norm <= box, in lexicographic vector order."""
    if box < 1:
        raise ValueError("box must be >= 1")
    found = []
    for e in product(range(-box, box + 1), repeat=cone.dim):
        root = root_of(e, cone)
        if root is not None:
            found.append(root)
    return found


def detect_line_factor(cone: Cone) -> DemazureRoot | None:
    """Exact search for a root pairing to 0 on every non-distinguished ray.

    Solves, per ray, the integer linear system <p, v_i> = -1,
    <p, v_j> = 0 (j != i); such a root splits off a line factor.
    """
    for i in range(len(cone.rays)):
        rows = [list(v) for v in cone.rays]
        rhs = [-1 if j == i else 0 for j in range(len(cone.rays))]
        p = solve_integer_system(rows, rhs)
        if p is not None:
            return DemazureRoot(tuple(p), i)
    return None


def classify_toric(cone: Cone, box: int = 10) -> ClassificationReport:
    """Type A on a line factor, B on a visible root, else Inconclusive.

    Requires a pointed full-dimensional cone. Emptiness of the root box
    is evidence for type C, never proof.
    """
    if _rank([list(v) for v in cone.rays]) != cone.dim:
        raise DegenerateCone("rays do not span; cone is not full-dimensional")
    if not _is_pointed(cone):
        raise DegenerateCone("cone contains a line; not pointed")
    line = detect_line_factor(cone)
    if line is not None:
        return ClassificationReport(
            "A",
            (
                Evidence(
                    "line factor: root vanishing on all other rays",
                    {
                        "root": list(line.vector),
                        "distinguished_ray": line.distinguished,
                    },
                ),
            ),
        )
    roots = enumerate_roots(cone, box)
    if roots:
        return ClassificationReport(
            "B",
            (
                Evidence(
                    "no line factor, but Demazure roots exist (non-rigid)",
                    {
                        "box": box,
                        "root_count": len(roots),
                        "sample_root": list(roots[0].vector),
                    },
                ),
            ),
        )
    return ClassificationReport(
        "Inconclusive",
        (
            Evidence(
                "no roots within the search box; candidate for type C",
                {"box": box},
            ),
        ),
    )


def _is_pointed(cone: Cone) -> bool:
    # pointed iff some m pairs >= 1 with every ray (dual full-dimensional)
    constraints = [
        ([Fraction(x) for x in v], Fraction(1)) for v in cone.rays
    ]
    return _fourier_motzkin_feasible(constraints, cone.dim)


def _fourier_motzkin_feasible(
    constraints: list[tuple[list[Fraction], Fraction]], nvars: int
) -> bool:
    """Feasibility of {a.x >= c} by exact Fourier-Motzkin elimination."""
    for var in reversed(range(nvars)):
        pos, neg, rest = [], [], []
        for coeffs, c in constraints:
            if coeffs[var] > 0:
                pos.append((coeffs, c))
            elif coeffs[var] < 0:
                neg.append((coeffs, c))
            else:
                rest.append((coeffs, c))
        new = rest
        for pc, pk in pos:
            for nc, nk in neg:
                # scale so the var cancels: pos gives lower, neg gives upper bound
                scale_p = -nc[var]
                scale_n = pc[var]
                coeffs = [
                    scale_p * a + scale_n * b for a, b in zip(pc, nc)
                ]
                new.append((coeffs, scale_p * pk + scale_n * nk))
        constraints = new
    return all(c <= 0 for _, c in constraints)


# ---- exact integer linear algebra -----------------------------------------


def _rank(rows: list[list[int]]) -> int:
    rows = [[Fraction(x) for x in r] for r in rows]
    rank, col = 0, 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for r in range(rank + 1, len(rows)):
            if rows[r][col]:
                f = rows[r][col] / rows[rank][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank


def smith_normal_form(A: list[list[int]]):
    """Return (D, U, V) with U*A*V = D diagonal, U and V unimodular."""
    m = len(A)
    n = len(A[0]) if m else 0
    D = [row[:] for row in A]
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):
        D[dst] = [a + k * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, k):
        for row in D:
            row[dst] += k * row[src]
        for row in V:
            row[dst] += k * row[src]

    t = 0
    while t < min(m, n):
        # find a nonzero pivot with minimal absolute value
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                if D[i][j] and (pivot is None or abs(D[i][j]) < abs(D[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, m):
                if D[i][t]:
                    q = D[i][t] // D[t][t]
                    add_row(t, i, -q)
                    if D[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, n):
                if D[t][j]:
                    q = D[t][j] // D[t][t]
                    add_col(t, j, -q)
                    if D[t][j]:
                        swap_cols(t, j)
                        dirty = True
        t += 1
    return D, U, V


def solve_integer_system(A: list[list[int]], b: list[int]):
    """One integer solution of A x = b, or None if none exists."""
    m = len(A)
    n = len(A[0]) if m else 0
    D, U, V = smith_normal_form(A)
    Ub = [sum(U[i][k] * b[k] for k in range(m)) for i in range(m)]
    y = [0] * n
    for i in range(m):
        d = D[i][i] if i < n else 0
        if d:
            if Ub[i] % d:
                return None
            y[i] = Ub[i] // d
        elif Ub[i]:
            return None
    return [sum(V[i][k] * y[k] for k in range(n)) for i in range(n)]
