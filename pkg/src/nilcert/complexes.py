"""Bounded chain complexes of finitely generated free modules.

Acyclicity here is the factorization notion: every differential splits
through its cycle module, d_i = (Z_{i-1} -> N_{i-1}) o (N_i -> Z_{i-1}),
with each 0 -> Z_i -> N_i -> Z_{i-1} -> 0 short exact.  Over the
supported PIDs this is equivalent to all homology vanishing, because
images of maps between free modules are free and the quotient sequences
split; that equivalence is ring-specific, not a general fact about
exact categories, and the witness builder relies on it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotAComplex, ShapeMismatch
from .matrices import (
    Matrix,
    block_diag,
    hermite_column_basis,
    in_column_span,
    kernel_basis,
    solve,
    split_surjection,
)
from .presentations import PresentedModule, submodule_quotient
from .report import CheckReport
from .rings import Ring


class FreeComplex:
    """Chain complex supported on degrees [lo, hi].

    ``diffs[k]`` is the differential out of degree lo+1+k, a matrix of
    shape ranks[k] x ranks[k+1]; degrees outside the support are rank 0.
    """

    __slots__ = ("ring", "lo", "hi", "ranks", "diffs")

    def __init__(self, ring: Ring, lo: int, hi: int, ranks, diffs):
        if hi < lo:
            raise ShapeMismatch(f"support [{lo},{hi}] is empty")
        ranks = tuple(int(r) for r in ranks)
        diffs = tuple(diffs)
        if len(ranks) != hi - lo + 1:
            raise ShapeMismatch(f"expected {hi - lo + 1} ranks, got {len(ranks)}")
        if any(r < 0 for r in ranks):
            raise ShapeMismatch("negative rank")
        if len(diffs) != hi - lo:
            raise ShapeMismatch(f"expected {hi - lo} differentials, got {len(diffs)}")
        for k, d in enumerate(diffs):
            if d.rows != ranks[k] or d.cols != ranks[k + 1]:
                raise ShapeMismatch(
                    f"differential out of degree {lo + k + 1} is {d.rows}x{d.cols}, "
                    f"expected {ranks[k]}x{ranks[k + 1]}"
                )
        self.ring = ring
        self.lo = lo
        self.hi = hi
        self.ranks = ranks
        self.diffs = diffs

    def __eq__(self, other):
        return (
            isinstance(other, FreeComplex)
            and self.ring == other.ring
            and (self.lo, self.hi) == (other.lo, other.hi)
            and self.ranks == other.ranks
            and self.diffs == other.diffs
        )

    def __repr__(self):
        return f"FreeComplex({self.ring}, [{self.lo},{self.hi}], ranks={self.ranks})"

    @classmethod
    def single(cls, ring: Ring, degree: int, rank: int) -> "FreeComplex":
        return cls(ring, degree, degree, (rank,), ())

    @classmethod
    def zero(cls, ring: Ring) -> "FreeComplex":
        return cls.single(ring, 0, 0)

    def rank_at(self, i: int) -> int:
        if self.lo <= i <= self.hi:
            return self.ranks[i - self.lo]
        return 0

    def diff_at(self, i: int) -> Matrix:
        """Differential out of degree i, as a total function of i."""
        if self.lo < i <= self.hi:
            return self.diffs[i - self.lo - 1]
        return Matrix.zero(self.ring, self.rank_at(i - 1), self.rank_at(i))

    def to_json(self) -> dict:
        return {
            "lo": self.lo,
            "hi": self.hi,
            "ranks": list(self.ranks),
            "diffs": [d.to_json() for d in self.diffs],
        }

    @classmethod
    def from_json(cls, ring: Ring, payload: dict) -> "FreeComplex":
        return cls(
            ring,
            int(payload["lo"]),
            int(payload["hi"]),
            payload["ranks"],
            [Matrix.from_json(ring, d) for d in payload.get("diffs", [])],
        )


def check_complex(c: FreeComplex) -> bool:
    """True iff every consecutive composite d_i * d_(i+1) vanishes."""
    return all(
        (c.diff_at(i) @ c.diff_at(i + 1)).is_zero() for i in range(c.lo + 1, c.hi + 1)
    )


def homology(c: FreeComplex, i: int) -> PresentedModule:
    """ker(d_i) / im(d_(i+1)) as a presented module."""
    if not check_complex(c):
        raise NotAComplex("differentials do not compose to zero")
    cycle = kernel_basis(c.diff_at(i))
    boundary = hermite_column_basis(c.diff_at(i + 1))
    return submodule_quotient(c.rank_at(i), boundary, cycle)


def first_nonzero_homology_degree(c: FreeComplex) -> int | None:
    """Least degree with nonvanishing homology, or None when acyclic."""
    for i in range(c.lo, c.hi + 1):
        if not homology(c, i).is_zero():
            return i
    return None


@dataclass(frozen=True)
class AcyclicityWitness:
    """Factorization data exhibiting acyclicity.

    ``cycles[i]`` is the canonical basis of Z_i for lo-1 <= i <= hi;
    ``projections[i]`` is N_i ->> Z_{i-1} and ``sections[i]`` its right
    inverse, for lo <= i <= hi.  The inclusion Z_{i-1} -> N_{i-1} is the
    basis matrix cycles[i-1] itself, so d_i == cycles[i-1] * projections[i].
    """

    lo: int
    hi: int
    cycles: tuple[Matrix, ...]
    projections: tuple[Matrix, ...]
    sections: tuple[Matrix, ...]

    def cycle_at(self, i: int) -> Matrix:
        return self.cycles[i - self.lo + 1]

    def projection_at(self, i: int) -> Matrix:
        return self.projections[i - self.lo]

    def section_at(self, i: int) -> Matrix:
        return self.sections[i - self.lo]

    def to_json(self) -> dict:
        return {
            "lo": self.lo,
            "hi": self.hi,
            "cycles": [m.to_json() for m in self.cycles],
            "projections": [m.to_json() for m in self.projections],
            "sections": [m.to_json() for m in self.sections],
        }

    @classmethod
    def from_json(cls, ring: Ring, payload: dict) -> "AcyclicityWitness":
        return cls(
            int(payload["lo"]),
            int(payload["hi"]),
            tuple(Matrix.from_json(ring, m) for m in payload["cycles"]),
            tuple(Matrix.from_json(ring, m) for m in payload["projections"]),
            tuple(Matrix.from_json(ring, m) for m in payload["sections"]),
        )


def acyclicity_witness(c: FreeComplex) -> AcyclicityWitness | None:
    """Factorization witness when all homology vanishes, else None.

    Z_i is the canonical image basis of d_(i+1) (equal to ker d_i when
    acyclic); projections come from the deterministic solver and
    sections from the Smith-form splitting.
    """
    if not check_complex(c):
        raise NotAComplex("differentials do not compose to zero")
    if first_nonzero_homology_degree(c) is not None:
        return None
    cycles = [Matrix.zero(c.ring, c.rank_at(c.lo - 1), 0)]
    for i in range(c.lo, c.hi + 1):
        cycles.append(hermite_column_basis(c.diff_at(i + 1)))
    projections = []
    sections = []
    for i in range(c.lo, c.hi + 1):
        incl = cycles[i - c.lo]  # Z_{i-1} inside N_{i-1}
        proj = solve(incl, c.diff_at(i))
        assert proj is not None, "differential does not factor through cycles"
        projections.append(proj)
        sections.append(split_surjection(proj))
    return AcyclicityWitness(
        c.lo, c.hi, tuple(cycles), tuple(projections), tuple(sections)
    )


def verify_acyclicity_witness(c: FreeComplex, w: AcyclicityWitness) -> CheckReport:
    """Re-check every factorization, exactness, and section equation."""
    v: list[str] = []
    if (w.lo, w.hi) != (c.lo, c.hi):
        return CheckReport.failed(["witness support does not match the complex"])
    if len(w.cycles) != c.hi - c.lo + 2 or len(w.projections) != c.hi - c.lo + 1:
        return CheckReport.failed(["witness component counts are wrong"])
    for i in range(c.lo - 1, c.hi + 1):
        z = w.cycle_at(i)
        if z.rows != c.rank_at(i):
            return CheckReport.failed([f"cycle basis at degree {i} has wrong ambient rank"])
    for i in range(c.lo, c.hi + 1):
        z_prev = w.cycle_at(i - 1)
        z_here = w.cycle_at(i)
        proj = w.projection_at(i)
        sec = w.section_at(i)
        if proj.rows != z_prev.cols or proj.cols != c.rank_at(i):
            return CheckReport.failed([f"projection at degree {i} has wrong shape"])
        if sec.rows != c.rank_at(i) or sec.cols != z_prev.cols:
            return CheckReport.failed([f"section at degree {i} has wrong shape"])
        if not (z_prev @ proj == c.diff_at(i)):
            v.append(f"degree {i}: inclusion*projection != differential")
        if kernel_basis(z_here).cols != 0:
            v.append(f"degree {i}: cycle matrix is not a basis")
        if not (proj @ z_here).is_zero():
            v.append(f"degree {i}: projection*inclusion != 0")
        if not (hermite_column_basis(z_here) == kernel_basis(proj)):
            v.append(f"degree {i}: im(Z_{i}) != ker(projection)")
        if not (proj @ sec == Matrix.identity(c.ring, z_prev.cols)):
            v.append(f"degree {i}: projection*section != identity")
    if w.cycle_at(c.lo - 1).cols != 0:
        v.append("cycle module below the support is nonzero")
    if w.cycle_at(c.hi).cols != 0:
        v.append("cycle module at the top degree is nonzero")
    return CheckReport.from_violations(v)


def complex_direct_sum(a: FreeComplex, b: FreeComplex) -> FreeComplex:
    """Degreewise block sum, supported on the union interval."""
    if a.ring != b.ring:
        raise ShapeMismatch("direct sum over different rings")
    lo, hi = min(a.lo, b.lo), max(a.hi, b.hi)
    ranks = [a.rank_at(i) + b.rank_at(i) for i in range(lo, hi + 1)]
    diffs = [
        block_diag(a.diff_at(i), b.diff_at(i)) for i in range(lo + 1, hi + 1)
    ]
    return FreeComplex(a.ring, lo, hi, ranks, diffs)


def _degreewise_map(maps, src: FreeComplex, dst: FreeComplex, i: int) -> Matrix:
    m = maps.get(i)
    if m is None:
        return Matrix.zero(src.ring, dst.rank_at(i), src.rank_at(i))
    return m


def ses_of_complexes_check(iota, pi, a: FreeComplex, b: FreeComplex, c: FreeComplex) -> bool:
    """Degreewise short-exactness of a -> b -> c plus the chain-map squares.

    ``iota`` and ``pi`` are mappings degree -> Matrix; missing degrees
    mean zero maps (and force the corresponding ranks to match up).
    """
    if not (a.ring == b.ring == c.ring):
        raise ShapeMismatch("complexes over different rings")
    lo = min(a.lo, b.lo, c.lo)
    hi = max(a.hi, b.hi, c.hi)
    for i in range(lo, hi + 1):
        f = _degreewise_map(iota, a, b, i)
        g = _degreewise_map(pi, b, c, i)
        if f.rows != b.rank_at(i) or f.cols != a.rank_at(i):
            raise ShapeMismatch(f"iota at degree {i} has the wrong shape")
        if g.rows != c.rank_at(i) or g.cols != b.rank_at(i):
            raise ShapeMismatch(f"pi at degree {i} has the wrong shape")
        if kernel_basis(f).cols != 0:
            return False
        diag = [e for e in __import__("nilcert.matrices", fromlist=["smith_diagonal"]).smith_diagonal(g)]
        R = a.ring
        if len(diag) < g.rows or not all(R.is_unit(e) for e in diag[: g.rows]):
            return False
        if not (g @ f).is_zero():
            return False
        if not (hermite_column_basis(f) == kernel_basis(g)):
            return False
    for i in range(lo, hi + 1):
        f_here = _degreewise_map(iota, a, b, i)
        f_prev = _degreewise_map(iota, a, b, i - 1)
        g_here = _degreewise_map(pi, b, c, i)
        g_prev = _degreewise_map(pi, b, c, i - 1)
        if not (f_prev @ a.diff_at(i) == b.diff_at(i) @ f_here):
            return False
        if not (g_prev @ b.diff_at(i) == c.diff_at(i) @ g_here):
            return False
    return True
