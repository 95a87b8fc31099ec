"""Free modules with nilpotent endomorphisms, and vanishing certificates.

An object is a pair (R^n, nu) with nu a verified nilpotent matrix; its
index is the least m with nu^m == 0.  The central construction builds,
for any such object over a supported PID, an explicit chain of split
short exact sequences

    0 -> (ker nu^i, nu) -> (ker nu^(i+1), nu) -> (Q_i, 0) -> 0

down the kernel filtration, each quotient Q_i torsion-free hence free,
together with a final isomorphism R^n = K_1 + Q_1 + ... + Q_(m-1).
The certificate witnesses [(R^n, nu)] = [(R^n, 0)] in the Grothendieck
group and re-verifies from scratch with nothing but matrix arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionMismatch, NotNilpotent, ShapeMismatch
from .matrices import (
    Matrix,
    block_diag,
    hermite_column_basis,
    is_invertible,
    kernel_basis,
    smith_normal_form,
    solve,
    split_surjection,
)
from .presentations import submodule_quotient
from .report import CheckReport
from .rings import Ring, ring_from_descriptor


@dataclass(frozen=True)
class NilObject:
    """(R^rank, nu) with nu nilpotent of the stated index."""

    rank: int
    nu: Matrix
    index: int

    @property
    def ring(self) -> Ring:
        return self.nu.ring

    def to_json(self) -> dict:
        return {"rank": self.rank, "nu": self.nu.to_json()}

    @classmethod
    def from_json(cls, ring: Ring, payload: dict) -> "NilObject":
        return make_nil_object(int(payload["rank"]), Matrix.from_json(ring, payload["nu"]))


def nilpotency_index(nu: Matrix) -> int:
    """Least m >= 1 with nu^m == 0; NotNilpotent past the Cayley-Hamilton bound."""
    if not nu.is_square():
        raise ShapeMismatch(f"endomorphism must be square, got {nu.rows}x{nu.cols}")
    n = nu.rows
    power = nu
    m = 1
    while not power.is_zero():
        if m >= max(n, 1):
            raise NotNilpotent(f"nu^{m} != 0 for a {n}x{n} matrix")
        power = power @ nu
        m += 1
    return m


def make_nil_object(n: int, nu: Matrix) -> NilObject:
    if nu.rows != n or nu.cols != n:
        raise ShapeMismatch(f"expected a {n}x{n} endomorphism, got {nu.rows}x{nu.cols}")
    return NilObject(n, nu, nilpotency_index(nu))


def zero_nil_object(ring: Ring, n: int) -> NilObject:
    return NilObject(n, Matrix.zero(ring, n, n), 1)


def check_nil_morphism(f: Matrix, src: NilObject, dst: NilObject) -> bool:
    """True iff f intertwines the endomorphisms: f*nu_src == nu_dst*f."""
    if f.cols != src.rank or f.rows != dst.rank:
        raise DimensionMismatch(
            f"map is {f.rows}x{f.cols}, endpoints have ranks {src.rank} -> {dst.rank}"
        )
    return f @ src.nu == dst.nu @ f


def kernel_filtration(obj: NilObject) -> list[Matrix]:
    """Canonical bases of ker(nu) <= ker(nu^2) <= ... <= ker(nu^index) = R^n."""
    bases = []
    power = Matrix.identity(obj.ring, obj.rank)
    for _ in range(obj.index):
        power = power @ obj.nu
        bases.append(kernel_basis(power))
    return bases


@dataclass(frozen=True)
class NilSesWitness:
    """A verified split short exact sequence in the nilpotent category.

    iota: left -> middle and pi: middle -> right, with section a right
    inverse of pi; all three maps commute with the endomorphisms.
    """

    left: NilObject
    middle: NilObject
    right: NilObject
    iota: Matrix
    pi: Matrix
    section: Matrix

    def to_json(self) -> dict:
        return {
            "left": self.left.to_json(),
            "middle": self.middle.to_json(),
            "right": self.right.to_json(),
            "iota": self.iota.to_json(),
            "pi": self.pi.to_json(),
            "section": self.section.to_json(),
        }

    @classmethod
    def from_json(cls, ring: Ring, payload: dict) -> "NilSesWitness":
        return cls(
            NilObject.from_json(ring, payload["left"]),
            NilObject.from_json(ring, payload["middle"]),
            NilObject.from_json(ring, payload["right"]),
            Matrix.from_json(ring, payload["iota"]),
            Matrix.from_json(ring, payload["pi"]),
            Matrix.from_json(ring, payload["section"]),
        )


@dataclass(frozen=True)
class VanishingCertificate:
    """Witness chain for [(R^n, nu)] = [(R^n, 0)].

    ses_chain[i] is the filtration step ker nu^(i+1) -> ker nu^(i+2);
    final_iso maps the direct sum K_1 + Q_1 + ... + Q_(m-1) onto R^n
    (columns are the K_1 basis followed by the lifted section bases).
    """

    target: NilObject
    ses_chain: tuple[NilSesWitness, ...]
    final_iso: Matrix

    def to_json(self) -> dict:
        return {
            "ring": self.target.ring.descriptor(),
            "target": self.target.to_json(),
            "chain": [w.to_json() for w in self.ses_chain],
            "final_iso": self.final_iso.to_json(),
        }

    @classmethod
    def from_json(cls, payload: dict) -> "VanishingCertificate":
        ring = ring_from_descriptor(payload["ring"])
        return cls(
            NilObject.from_json(ring, payload["target"]),
            tuple(NilSesWitness.from_json(ring, w) for w in payload["chain"]),
            Matrix.from_json(ring, payload["final_iso"]),
        )


def _restricted_endomorphism(basis: Matrix, nu: Matrix) -> Matrix:
    """nu in the coordinates of an invariant submodule basis."""
    restricted = solve(basis, nu @ basis)
    assert restricted is not None, "submodule is not nu-invariant"
    return restricted


def vanishing_certificate(obj: NilObject) -> VanishingCertificate:
    """Build the full filtration certificate for a nilpotent endomorphism.

    Every quotient of consecutive filtration kernels is torsion-free,
    hence free over the PID, so every step splits; the lifted section
    bases assemble into a basis of R^n.
    """
    R = obj.ring
    n = obj.rank
    if obj.index == 1:
        return VanishingCertificate(obj, (), Matrix.identity(R, n))
    filtration = kernel_filtration(obj)
    chain = []
    lifted_blocks = [filtration[0]]
    for i in range(obj.index - 1):
        k_small, k_big = filtration[i], filtration[i + 1]
        left = make_nil_object(k_small.cols, _restricted_endomorphism(k_small, obj.nu))
        middle = make_nil_object(k_big.cols, _restricted_endomorphism(k_big, obj.nu))
        iota = solve(k_big, k_small)
        assert iota is not None, "filtration is not nested"
        quotient = submodule_quotient(n, k_small, k_big)
        assert quotient.is_torsion_free(), "filtration quotient has torsion"
        q_rank = quotient.free_rank()
        pi = _quotient_projection(iota, k_big.cols, q_rank)
        section = split_surjection(pi)
        right = zero_nil_object(R, q_rank)
        chain.append(NilSesWitness(left, middle, right, iota, pi, section))
        lifted_blocks.append(k_big @ section)
    final_iso = lifted_blocks[0]
    for block in lifted_blocks[1:]:
        final_iso = final_iso.hstack(block)
    return VanishingCertificate(obj, tuple(chain), final_iso)


def _quotient_projection(iota: Matrix, ambient: int, q_rank: int) -> Matrix:
    """Surjection R^ambient -> R^q_rank with kernel exactly im(iota).

    Smith form u*iota*v has units in the first (ambient - q_rank) rows,
    so the trailing rows of u kill the image and map onto the quotient.
    """
    u, _, _ = smith_normal_form(iota)
    return u.take_rows(range(ambient - q_rank, ambient))


def verify_vanishing_certificate(cert: VanishingCertificate) -> CheckReport:
    """Re-check every witness equation from scratch.

    Uses only matrix arithmetic: nilpotency indices, injectivity and
    surjectivity through normal forms, image/kernel agreement through
    canonical bases, commutation squares, sections, telescoping of the
    chain, and invertibility of the final isomorphism.
    """
    R = cert.target.ring
    n = cert.target.rank
    v: list[str] = []

    def check(cond: bool, message: str):
        if not cond:
            v.append(message)

    try:
        check(
            nilpotency_index(cert.target.nu) == cert.target.index,
            "target index does not match its endomorphism",
        )
    except NotNilpotent:
        v.append("target endomorphism is not nilpotent")
    for step, w in enumerate(cert.ses_chain):
        tag = f"ses[{step}]"
        for name, o in (("left", w.left), ("middle", w.middle), ("right", w.right)):
            if o.nu.rows != o.rank or o.nu.cols != o.rank:
                v.append(f"{tag}: {name} endomorphism shape mismatch")
                return CheckReport.failed(v)
            try:
                check(
                    nilpotency_index(o.nu) == o.index,
                    f"{tag}: {name} index mismatch",
                )
            except NotNilpotent:
                v.append(f"{tag}: {name} endomorphism is not nilpotent")
        check(w.right.nu.is_zero(), f"{tag}: right endomorphism is not zero")
        if w.iota.rows != w.middle.rank or w.iota.cols != w.left.rank:
            v.append(f"{tag}: iota shape mismatch")
            return CheckReport.failed(v)
        if w.pi.rows != w.right.rank or w.pi.cols != w.middle.rank:
            v.append(f"{tag}: pi shape mismatch")
            return CheckReport.failed(v)
        if w.section.rows != w.middle.rank or w.section.cols != w.right.rank:
            v.append(f"{tag}: section shape mismatch")
            return CheckReport.failed(v)
        check(kernel_basis(w.iota).cols == 0, f"{tag}: iota not injective")
        check((w.pi @ w.iota).is_zero(), f"{tag}: pi*iota != 0")
        check(
            hermite_column_basis(w.iota) == kernel_basis(w.pi),
            f"{tag}: im(iota) != ker(pi)",
        )
        check(
            w.iota @ w.left.nu == w.middle.nu @ w.iota,
            f"{tag}: iota does not commute with the endomorphisms",
        )
        check(
            w.pi @ w.middle.nu == w.right.nu @ w.pi,
            f"{tag}: pi does not commute with the endomorphisms",
        )
        check(
            w.pi @ w.section == Matrix.identity(R, w.right.rank),
            f"{tag}: pi*section != identity",
        )
    if cert.ses_chain:
        for step in range(len(cert.ses_chain) - 1):
            check(
                cert.ses_chain[step].middle == cert.ses_chain[step + 1].left,
                f"chain: middle of ses[{step}] != left of ses[{step + 1}]",
            )
        check(
            cert.ses_chain[0].left.nu.is_zero(),
            "chain: innermost kernel endomorphism is not zero",
        )
        last = cert.ses_chain[-1].middle
        check(
            last.rank == n and last.nu == cert.target.nu,
            "chain: final middle object is not the target",
        )
        total = cert.ses_chain[0].left.rank + sum(
            w.right.rank for w in cert.ses_chain
        )
        check(total == n, f"chain: component ranks sum to {total}, expected {n}")
    else:
        check(cert.target.nu.is_zero(), "empty chain but target endomorphism nonzero")
    check(
        cert.final_iso.rows == n and cert.final_iso.cols == n,
        "final_iso has the wrong shape",
    )
    if cert.final_iso.rows == n and cert.final_iso.cols == n:
        check(is_invertible(cert.final_iso), "final_iso not invertible")
    return CheckReport.from_violations(v)


def nil_direct_sum(a: NilObject, b: NilObject) -> NilObject:
    """Block-diagonal sum; the index is the larger of the two indices."""
    if a.ring != b.ring:
        raise ShapeMismatch("direct sum over different rings")
    return NilObject(
        a.rank + b.rank, block_diag(a.nu, b.nu), max(a.index, b.index)
    )
