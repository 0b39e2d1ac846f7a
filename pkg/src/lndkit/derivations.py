"""Derivations on finitely presented algebras.

A PresentedAlgebra is K[vars]/(relations); computation happens on normal
forms modulo a cached Gröbner basis of the relation ideal. A Derivation
is given by generator images and extended by the Leibniz rule.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .errors import (
    ArityMismatch,
    NotASlice,
    NotVerifiedLND,
    ReservedVariable,
)
from .groebner import GREVLEX, GroebnerBasis, Ideal, MonomialOrder, groebner, normal_form
from .poly import Polynomial, parse_poly

FORMAL_PARAMETER = "_s"

DEFAULT_NILPOTENCY_BOUND = 64


class PresentedAlgebra:
    """K[vars]/(relations) with a cached reduced Gröbner basis."""

    def __init__(
        self,
        vars: Sequence[str],
        relations: Sequence[Polynomial] = (),
        gradings: dict[str, Sequence[int]] | None = None,
        order: MonomialOrder = GREVLEX,
    ):
        self.vars = tuple(vars)
        if len(set(self.vars)) != len(self.vars):
            raise ValueError("duplicate variable names")
        arity = len(self.vars)
        self.relations = tuple(r for r in relations if not r.is_zero())
        for r in self.relations:
            if r.arity != arity:
                raise ArityMismatch("relation arity differs from variable count")
        self.order = order
        if self.relations:
            self.gb = groebner(Ideal.of(self.relations, arity), order)
        else:
            self.gb = GroebnerBasis(order, (), arity)
        if self.gb.is_trivial():
            raise ValueError("relations generate the unit ideal; algebra is zero")
        self.gradings: dict[str, tuple[int, ...]] = {}
        for name, w in (gradings or {}).items():
            w = tuple(int(x) for x in w)
            if len(w) != arity:
                raise ArityMismatch(f"grading {name!r} has wrong length")
            self.gradings[name] = w

    @property
    def arity(self) -> int:
        return len(self.vars)

    def parse(self, text: str) -> Polynomial:
        return self.normal(parse_poly(text, self.vars))

    def normal(self, f: Polynomial) -> Polynomial:
        if f.arity != self.arity:
            raise ArityMismatch(f"arity {f.arity} vs algebra arity {self.arity}")
        return normal_form(f, self.gb)

    def is_compatible_grading(self, w: Sequence[int]) -> bool:
        """True iff every relation is homogeneous for the weights."""
        return all(r.is_homogeneous(w) for r in self.relations)

    def format(self, f: Polynomial) -> str:
        return f.format(self.vars)

    def __repr__(self) -> str:
        rels = ", ".join(self.format(r) for r in self.relations) or "0"
        return f"PresentedAlgebra(K[{', '.join(self.vars)}] / ({rels}))"


def cylinder(algebra: PresentedAlgebra, name: str = "u") -> PresentedAlgebra:
    """Adjoin one free variable: K[Y] -> K[Y][u], no new relations."""
    fresh = name
    k = 0
    while fresh in algebra.vars:
        k += 1
        fresh = f"{name}{k}"
    gradings = {g: w + (0,) for g, w in algebra.gradings.items()}
    gradings[fresh] = (0,) * algebra.arity + (1,)
    return PresentedAlgebra(
        algebra.vars + (fresh,),
        [r.extend(1) for r in algebra.relations],
        gradings,
        algebra.order,
    )


@dataclass(frozen=True)
class NilpotencyVerdict:
    """Outcome of a bounded local-nilpotency check on the generators."""

    status: str  # "verified" | "not_nilpotent" | "inconclusive"
    max_order: int | None = None
    witness_var: str | None = None
    witness_order: int | None = None
    bound: int | None = None

    @property
    def verified(self) -> bool:
        return self.status == "verified"

    def describe(self) -> str:
        if self.status == "verified":
            return f"VerifiedLND(max_order={self.max_order})"
        if self.status == "not_nilpotent":
            return (
                f"NotNilpotentWitness(var={self.witness_var},"
                f" order={self.witness_order})"
            )
        return f"Inconclusive(bound={self.bound})"


class Derivation:
    """Derivation determined by generator images, reduced to normal form."""

    def __init__(self, algebra: PresentedAlgebra, images: Sequence[Polynomial]):
        if len(images) != algebra.arity:
            raise ArityMismatch("one image per generator required")
        self.algebra = algebra
        self.images = tuple(algebra.normal(f) for f in images)
        self._well_defined: tuple[bool, tuple] | None = None
        self._verdict: NilpotencyVerdict | None = None

    @staticmethod
    def from_strings(
        algebra: PresentedAlgebra, images: dict[str, str]
    ) -> "Derivation":
        missing = set(algebra.vars) - set(images)
        extra = set(images) - set(algebra.vars)
        if missing or extra:
            raise ValueError(
                f"image map mismatch (missing {sorted(missing)},"
                f" extra {sorted(extra)})"
            )
        return Derivation(
            algebra, [algebra.parse(images[v]) for v in algebra.vars]
        )

    def is_zero(self) -> bool:
        return all(f.is_zero() for f in self.images)

    def apply(self, f: Polynomial) -> Polynomial:
        """D(f) = sum_j (df/dx_j) D(x_j), reduced modulo relations."""
        if f.arity != self.algebra.arity:
            raise ArityMismatch("polynomial arity differs from algebra arity")
        total = Polynomial.zero(f.arity)
        for j, image in enumerate(self.images):
            if image.is_zero():
                continue
            df = f.partial_derivative(j)
            if not df.is_zero():
                total = total + df * image
        return self.algebra.normal(total)

    def is_well_defined(self) -> tuple[bool, tuple]:
        """Check D kills every relation; certificate lists the reductions."""
        if self._well_defined is None:
            cert = tuple(
                (rel, self.apply(rel)) for rel in self.algebra.relations
            )
            ok = all(image.is_zero() for _, image in cert)
            self._well_defined = (ok, cert)
        return self._well_defined

    def nilpotency_check(
        self, bound: int = DEFAULT_NILPOTENCY_BOUND
    ) -> NilpotencyVerdict:
        """Iterate D on each generator, up to `bound` applications.

        A chain entry proportional to an earlier one certifies
        non-nilpotency; exhausting the bound is Inconclusive.
        """
        if bound < 1:
            raise ValueError("bound must be >= 1")
        if self._verdict is not None and self._verdict.verified:
            return self._verdict
        max_order = 0
        for j, name in enumerate(self.algebra.vars):
            chain = [self.images[j]]
            order = None
            while len(chain) <= bound:
                current = chain[-1]
                if current.is_zero():
                    order = len(chain)
                    break
                repeat = _proportional_index(chain[:-1], current)
                if repeat is not None:
                    verdict = NilpotencyVerdict(
                        "not_nilpotent",
                        witness_var=name,
                        witness_order=len(chain),
                        bound=bound,
                    )
                    self._verdict = verdict
                    return verdict
                chain.append(self.apply(current))
            if order is None:
                verdict = NilpotencyVerdict("inconclusive", bound=bound)
                self._verdict = verdict
                return verdict
            max_order = max(max_order, order)
        verdict = NilpotencyVerdict("verified", max_order=max_order, bound=bound)
        self._verdict = verdict
        return verdict

    def _require_verified(self):
        verdict = self._verdict or self.nilpotency_check()
        if not verdict.verified:
            raise NotVerifiedLND(verdict.describe())
        return verdict

    def iterate(self, f: Polynomial):
        """Yield f, D(f), D^2(f), ... stopping at the first zero."""
        current = self.algebra.normal(f)
        while not current.is_zero():
            yield current
            current = self.apply(current)

    def check_slice(self, s: Polynomial) -> bool:
        return self.apply(s) == Polynomial.constant(self.algebra.arity, 1)

    def exp_action(self, f: Polynomial, s=None):
        """exp(sD)(f) = sum_i s^i D^i(f) / i!; finite since D is an LND.

        With s=None the parameter stays formal: the result lives in the
        algebra extended by the reserved variable `_s` and is returned
        together with that extended algebra.
        """
        self._require_verified()
        if s is None:
            if FORMAL_PARAMETER in self.algebra.vars:
                raise ReservedVariable(
                    f"variable {FORMAL_PARAMETER!r} is reserved for exp"
                )
            ext = cylinder(self.algebra, FORMAL_PARAMETER)
            total = Polynomial.zero(ext.arity)
            for i, term in enumerate(self.iterate(f)):
                s_power = Polynomial.monomial(
                    ext.arity, (0,) * self.algebra.arity + (i,)
                )
                total = total + term.extend(1).scale(
                    Fraction(1, factorial(i))
                ) * s_power
            return ext.normal(total), ext
        s = Fraction(s)
        total = Polynomial.zero(self.algebra.arity)
        for i, term in enumerate(self.iterate(f)):
            total = total + term.scale(s**i / factorial(i))
        return self.algebra.normal(total)

    def kernel_membership(self, f: Polynomial) -> bool:
        return self.apply(f).is_zero()

    def kernel_projection(self, s: Polynomial, f: Polynomial) -> Polynomial:
        """Dixmier projection onto Ker D along a slice s.

        rho(f) = sum_i (-s)^i D^i(f) / i!; fixes the kernel pointwise and
        sends s to 0.
        """
        self._require_verified()
        if not self.check_slice(s):
            raise NotASlice(f"D({self.algebra.format(s)}) != 1")
        total = Polynomial.zero(self.algebra.arity)
        for i, term in enumerate(self.iterate(f)):
            total = total + term * (-s) ** i * Fraction(1, factorial(i))
        return self.algebra.normal(total)

    def image_ideal(self) -> Ideal:
        """Ideal generated by the images of the generators."""
        return Ideal.of(self.images, self.algebra.arity)

    def __repr__(self) -> str:
        imgs = ", ".join(
            f"{v} -> {self.algebra.format(f)}"
            for v, f in zip(self.algebra.vars, self.images)
        )
        return f"Derivation({imgs})"


def _proportional_index(chain: list[Polynomial], current: Polynomial):
    """Index of an earlier chain entry that current is a multiple of."""
    for idx, earlier in enumerate(chain):
        if earlier.is_zero() or len(earlier.terms) != len(current.terms):
            continue
        monos_e = [m for m, _ in earlier.terms]
        monos_c = [m for m, _ in current.terms]
        if monos_e != monos_c:
            continue
        ratio = current.terms[0][1] / earlier.terms[0][1]
        if all(
            c == ratio * e
            for (_, c), (_, e) in zip(current.terms, earlier.terms)
        ):
            return idx
    return None


def lift(
    D: Derivation, i: int, cyl: PresentedAlgebra | None = None
) -> Derivation:
    """Extend D to K[Y][u] by D(u)=0 and multiply by u^i."""
    if i < 0:
        raise ValueError("power of the cylinder variable must be >= 0")
    if cyl is None:
        cyl = cylinder(D.algebra)
    base = D.algebra.arity
    if cyl.arity != base + 1 or cyl.vars[:base] != D.algebra.vars:
        raise ArityMismatch("cylinder algebra does not extend the base")
    u_power = Polynomial.monomial(cyl.arity, (0,) * base + (i,))
    images = [img.extend(1) * u_power for img in D.images]
    images.append(Polynomial.zero(cyl.arity))
    return Derivation(cyl, images)
