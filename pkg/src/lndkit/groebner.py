"""Gröbner-basis kernel: Buchberger, normal forms, ideal membership.

Deterministic throughout: for fixed generators and order, the reduced
basis and every normal form are reproducible bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import ArityMismatch, PointNotOnVariety, ResourceLimit
from .poly import Monomial, Polynomial, grevlex_key

DEFAULT_PAIR_BUDGET = 100_000


# ---- monomial orders ----------------------------------------------------


@dataclass(frozen=True)
class MonomialOrder:
    """Total order on monomials, compatible with multiplication, 1 minimal.

    kind is one of "lex", "grevlex", "weighted"; weighted orders break
    ties by grevlex.
    """

    kind: str
    weights: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex", "weighted"):
            raise ValueError(f"unknown order kind {self.kind!r}")
        if self.kind == "weighted" and self.weights is None:
            raise ValueError("weighted order requires a weight vector")

    def key(self, m: Monomial):
        if self.kind == "lex":
            return m
        if self.kind == "grevlex":
            return grevlex_key(m)
        w = self.weights
        if len(w) != len(m):
            raise ArityMismatch(f"weights length {len(w)} vs monomial {len(m)}")
        return (sum(e * wi for e, wi in zip(m, w)), grevlex_key(m))

    def describe(self) -> str:
        if self.kind == "weighted":
            return f"weighted{list(self.weights)}"
        return self.kind


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


# ---- ideals ----------------------------------------------------------


@dataclass(frozen=True)
class Ideal:
    """Finitely generated ideal; zero generators are dropped.

    The empty generator tuple denotes the zero ideal.
    """

    generators: tuple[Polynomial, ...]
    arity: int

    @staticmethod
    def of(generators: Sequence[Polynomial], arity: int | None = None) -> "Ideal":
        gens = tuple(g for g in generators if not g.is_zero())
        if arity is None:
            if not gens:
                raise ValueError("arity required for an empty generator list")
            arity = gens[0].arity
        for g in gens:
            if g.arity != arity:
                raise ArityMismatch("generators of mixed arity")
        return Ideal(gens, arity)


# ---- monomial helpers ----------------------------------------------------


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _quotient(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def _leading(f: Polynomial, order: MonomialOrder) -> tuple[Monomial, Fraction]:
    return max(f.terms, key=lambda t: order.key(t[0]))


def _mono_times(f: Polynomial, mono: Monomial, coeff: Fraction) -> Polynomial:
    return Polynomial(
        f.arity,
        [(tuple(a + b for a, b in zip(m, mono)), c * coeff) for m, c in f.terms],
    )


def reduce_poly(
    f: Polynomial, basis: Sequence[Polynomial], order: MonomialOrder
) -> Polynomial:
    """Full remainder of f under multivariate division by `basis`."""
    if not basis:
        return f
    lead = [_leading(g, order) for g in basis]
    remainder_terms: list[tuple[Monomial, Fraction]] = []
    p = f
    while not p.is_zero():
        lm, lc = _leading(p, order)
        for g, (glm, glc) in zip(basis, lead):
            if _divides(glm, lm):
                p = p - _mono_times(g, _quotient(lm, glm), lc / glc)
                break
        else:
            remainder_terms.append((lm, lc))
            p = p - Polynomial(p.arity, [(lm, lc)])
    return Polynomial(f.arity, remainder_terms)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    flm, flc = _leading(f, order)
    glm, glc = _leading(g, order)
    l = _lcm(flm, glm)
    return _mono_times(f, _quotient(l, flm), 1 / flc) - _mono_times(
        g, _quotient(l, glm), 1 / glc
    )


# ---- Buchberger ----------------------------------------------------------


@dataclass(frozen=True)
class GroebnerBasis:
    order: MonomialOrder
    basis: tuple[Polynomial, ...]
    arity: int

    def is_trivial(self) -> bool:
        return len(self.basis) == 1 and self.basis[0].is_constant()


def groebner(
    ideal: Ideal,
    order: MonomialOrder = GREVLEX,
    pair_budget: int = DEFAULT_PAIR_BUDGET,
) -> GroebnerBasis:
    """Reduced Gröbner basis by Buchberger with the normal strategy.

    Pair selection: smallest lcm in the order, ties by index. The product
    and chain criteria prune pairs. Raises ResourceLimit past the budget.
    """
    G: list[Polynomial] = []
    for g in ideal.generators:
        if not g.is_zero():
            _, lc = _leading(g, order)
            G.append(g.scale(1 / lc))
    pairs: set[tuple[int, int]] = {
        (i, j) for j in range(len(G)) for i in range(j)
    }
    processed = 0
    while pairs:
        pair = min(
            pairs,
            key=lambda p: (
                order.key(
                    _lcm(_leading(G[p[0]], order)[0], _leading(G[p[1]], order)[0])
                ),
                p,
            ),
        )
        pairs.discard(pair)
        processed += 1
        if processed > pair_budget:
            raise ResourceLimit(f"S-pair budget {pair_budget} exceeded")
        i, j = pair
        lmi = _leading(G[i], order)[0]
        lmj = _leading(G[j], order)[0]
        l = _lcm(lmi, lmj)
        # product criterion: coprime leading monomials
        if l == tuple(a + b for a, b in zip(lmi, lmj)):
            continue
        # chain criterion
        skip = False
        for k in range(len(G)):
            if k in (i, j):
                continue
            if _divides(_leading(G[k], order)[0], l):
                pik = (min(i, k), max(i, k))
                pjk = (min(j, k), max(j, k))
                if pik not in pairs and pjk not in pairs:
                    skip = True
                    break
        if skip:
            continue
        r = reduce_poly(s_polynomial(G[i], G[j], order), G, order)
        if not r.is_zero():
            _, lc = _leading(r, order)
            r = r.scale(1 / lc)
            pairs.update((k, len(G)) for k in range(len(G)))
            G.append(r)
    return GroebnerBasis(order, _autoreduce(G, order), ideal.arity)


def _autoreduce(
    G: list[Polynomial], order: MonomialOrder
) -> tuple[Polynomial, ...]:
    # minimalize: drop elements whose leading monomial another one divides
    G = [g for g in G if not g.is_zero()]
    G.sort(key=lambda g: order.key(_leading(g, order)[0]))
    minimal: list[Polynomial] = []
    for idx, g in enumerate(G):
        lm = _leading(g, order)[0]
        keep = True
        for jdx, h in enumerate(G):
            if jdx == idx:
                continue
            hlm = _leading(h, order)[0]
            if _divides(hlm, lm) and (hlm != lm or jdx < idx):
                keep = False
                break
        if keep:
            minimal.append(g)
    # inter-reduce tails
    reduced: list[Polynomial] = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1 :]
        r = reduce_poly(g, others, order)
        if not r.is_zero():
            _, lc = _leading(r, order)
            reduced.append(r.scale(1 / lc))
    reduced.sort(key=lambda g: order.key(_leading(g, order)[0]))
    return tuple(reduced)


def normal_form(f: Polynomial, gb: GroebnerBasis) -> Polynomial:
    """Unique remainder of f under full reduction by the basis."""
    if f.arity != gb.arity:
        raise ArityMismatch(f"arity {f.arity} vs basis arity {gb.arity}")
    return reduce_poly(f, gb.basis, gb.order)


def contains_one(
    ideal: Ideal,
    order: MonomialOrder = GREVLEX,
    pair_budget: int = DEFAULT_PAIR_BUDGET,
) -> bool:
    """True iff the ideal is the whole ring (reduced basis is {1})."""
    if not ideal.generators:
        return False
    gb = groebner(ideal, order, pair_budget)
    return gb.is_trivial()


# ---- Jacobian evidence ----------------------------------------------------


def jacobian_rank_at_point(
    relations: Sequence[Polynomial], point: Sequence
) -> int:
    """Exact rank over Q of the Jacobian of `relations` at `point`.

    The point must satisfy every relation.
    """
    if not relations:
        return 0
    arity = relations[0].arity
    pt = [Fraction(x) for x in point]
    if len(pt) != arity:
        raise ArityMismatch(f"point length {len(pt)} vs arity {arity}")
    for rel in relations:
        if rel.evaluate(pt) != 0:
            raise PointNotOnVariety(f"relation {rel!r} nonzero at {pt}")
    rows = [
        [rel.partial_derivative(j).evaluate(pt) for j in range(arity)]
        for rel in relations
    ]
    return _rank(rows)


def _rank(rows: list[list[Fraction]]) -> int:
    rows = [row[:] for row in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    col = 0
    while rank < len(rows) and col < ncols:
        pivot = next(
            (r for r in range(rank, len(rows)) if rows[r][col] != 0), None
        )
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pv = rows[rank][col]
        for r in range(rank + 1, len(rows)):
            if rows[r][col]:
                factor = rows[r][col] / pv
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank
