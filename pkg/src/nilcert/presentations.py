"""Finitely generated modules over a PID as cokernel presentations.

A module is given as coker(relations) for a g-row relation matrix; its
invariant factors come from the Smith form.  Relation matrices are
stored in canonical Hermite column form, so two presentations of the
same submodule of relations compare equal structurally.

Torsion is meant with respect to non-zero-divisors; over the supported
domains that is the same as nonzero elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import NotASubmodule, NotFree, ShapeMismatch
from .matrices import Matrix, hermite_column_basis, solve
from .matrices import invariant_factors as _invariant_factors
from .rings import Ring


@dataclass(frozen=True)
class PresentedModule:
    """coker(relations: R^k -> R^generators)."""

    generators: int
    relations: Matrix

    def __post_init__(self):
        if self.relations.rows != self.generators:
            raise ShapeMismatch(
                f"{self.relations.rows}-row relations for {self.generators} generators"
            )
        object.__setattr__(
            self, "relations", hermite_column_basis(self.relations)
        )

    @property
    def ring(self) -> Ring:
        return self.relations.ring

    @cached_property
    def invariant_factors(self) -> tuple:
        """Nonzero Smith-diagonal entries of the relations, divisibility order."""
        return tuple(_invariant_factors(self.relations))

    @property
    def torsion_rank(self) -> int:
        return len(self.invariant_factors)

    def is_torsion_free(self) -> bool:
        """True iff every nonzero invariant factor is a unit.

        Over a PID a finitely generated torsion-free module is free.
        """
        R = self.ring
        return all(R.is_unit(d) for d in self.invariant_factors)

    def free_rank(self) -> int:
        """Rank of the module when it is free; NotFree when torsion is present."""
        if not self.is_torsion_free():
            raise NotFree(f"invariant factors {self.invariant_factors} contain torsion")
        return self.generators - self.torsion_rank

    def is_zero(self) -> bool:
        return self.is_torsion_free() and self.generators == self.torsion_rank

    def to_json(self) -> dict:
        return {"generators": self.generators, "relations": self.relations.to_json()}

    @classmethod
    def from_json(cls, ring: Ring, payload: dict) -> "PresentedModule":
        return cls(int(payload["generators"]), Matrix.from_json(ring, payload["relations"]))

    @classmethod
    def free(cls, ring: Ring, rank: int) -> "PresentedModule":
        return cls(rank, Matrix.zero(ring, rank, 0))


def submodule_quotient(ambient_rank: int, inner: Matrix, outer: Matrix) -> PresentedModule:
    """The quotient (outer span) / (inner span) inside R^ambient_rank.

    Both arguments are canonical bases of submodules; the columns of
    ``inner`` must lie in the span of ``outer``.  The presentation is
    coker(X) for the unique X with outer*X == inner.
    """
    if inner.rows != ambient_rank or outer.rows != ambient_rank:
        raise ShapeMismatch(
            f"bases live in R^{inner.rows} and R^{outer.rows}, ambient is R^{ambient_rank}"
        )
    x = solve(outer, inner)
    if x is None:
        raise NotASubmodule("inner span is not contained in the outer span")
    return PresentedModule(outer.cols, x)
