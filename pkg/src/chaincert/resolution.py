"""Presented modules and truncated resolutions of them.

A module M is always a cokernel presentation: an ambient free module and a
relations matrix. A truncated resolution is a chain complex of free modules
plus an augmentation matrix onto the ambient module; the augmentation onto
M itself is the composite with the quotient by the relations, so equality
of maps into M means equality modulo the column span of the relations.

Exactness is demanded at the interior degrees and at degree 0 (kernel of
the augmentation equals the image of the first boundary); nothing is
demanded at the top degree, which is what makes the complexes truncated.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass

from .chain import (
    ChainComplex,
    Report,
    homology_invariants,
    validate_complex,
)
from .matrix import (
    Invariants,
    Matrix,
    ShapeError,
    cokernel_invariants,
    hstack,
    kernel_basis,
    restrict_scalars,
    solve,
)
from .rings import GroupRing, GroupTable, IntegerRing, PrimeField, Ring, RingError, ZZ


@dataclass(frozen=True)
class ModulePresentation:
    """M = coker(relations), with relations an ambient_rank x k matrix."""

    ring: Ring
    ambient_rank: int
    relations: Matrix

    def __post_init__(self):
        if self.relations.ring != self.ring:
            raise RingError("relations matrix over the wrong ring")
        if self.relations.rows != self.ambient_rank:
            raise ShapeError("relations must have ambient_rank rows")


def presentation_invariants(pres: ModulePresentation) -> Invariants:
    """Base-ring invariants of the presented module (restriction of scalars
    for group rings)."""
    rel = pres.relations
    if isinstance(pres.ring, GroupRing):
        rel = restrict_scalars(rel)
    return cokernel_invariants(rel)


class TruncatedResolution:
    """A length-n truncated resolution of the presented module.

    ``cochain=True`` marks the transposed orientation produced by
    :func:`dualize`; such a value stores the same presentation and
    augmentation data verbatim so that dualizing is an exact involution.
    """

    __slots__ = ("presentation", "complex", "augmentation", "cochain")

    def __init__(
        self,
        presentation: ModulePresentation,
        complex: ChainComplex,
        augmentation: Matrix,
        cochain: bool = False,
    ):
        if complex.ring != presentation.ring:
            raise RingError("complex over the wrong ring")
        if augmentation.ring != presentation.ring:
            raise RingError("augmentation over the wrong ring")
        aug_cols = complex.ranks[-1] if cochain else complex.ranks[0]
        if augmentation.shape != (presentation.ambient_rank, aug_cols):
            raise ShapeError(
                f"augmentation must be {presentation.ambient_rank}x{aug_cols}"
            )
        self.presentation = presentation
        self.complex = complex
        self.augmentation = augmentation
        self.cochain = cochain

    @property
    def ring(self) -> Ring:
        return self.presentation.ring

    @property
    def length(self) -> int:
        return self.complex.length

    def __eq__(self, other):
        return (
            isinstance(other, TruncatedResolution)
            and self.presentation == other.presentation
            and self.complex == other.complex
            and self.augmentation == other.augmentation
            and self.cochain == other.cochain
        )


def _base_view(res: TruncatedResolution) -> tuple[Matrix, Matrix, Matrix]:
    """(augmentation, relations, first boundary) over the base ring."""
    aug, rel, d1 = res.augmentation, res.presentation.relations, res.complex.d(1)
    if isinstance(res.ring, GroupRing):
        return restrict_scalars(aug), restrict_scalars(rel), restrict_scalars(d1)
    return aug, rel, d1


def validate_resolution(res: TruncatedResolution) -> Report:
    """Machine-check every resolution condition; each identity is a named
    pass/fail entry in the report."""
    if res.cochain:
        report = Report()
        report.add("orientation", True, "cochain input validated through its dual")
        report.extend(validate_resolution(dualize(res)), "dual: ")
        return report

    report = Report()
    n = res.length
    complex_report = validate_complex(res.complex)
    report.extend(complex_report)

    factored = solve(res.presentation.relations, res.augmentation * res.complex.d(1))
    report.add(
        "augmentation kills the first boundary",
        factored is not None,
        "" if factored is not None else "aug.d1 does not factor through the relations",
    )

    aug_b, rel_b, d1_b = _base_view(res)
    surj = cokernel_invariants(hstack(aug_b, rel_b))
    report.add(
        "augmentation surjective onto the module",
        surj.trivial,
        "" if surj.trivial else f"cokernel {surj}",
    )

    if complex_report.ok:
        for i in range(1, n):
            inv = homology_invariants(res.complex, i)
            report.add(
                f"exact at degree {i}",
                inv.trivial,
                "" if inv.trivial else f"homology {inv}",
            )
        kern = kernel_basis(hstack(aug_b, rel_b))
        proj = Matrix(
            aug_b.ring,
            aug_b.cols,
            kern.cols,
            [kern.entry(i, j) for i in range(aug_b.cols) for j in range(kern.cols)],
        )
        covered = solve(d1_b, proj)
        report.add(
            "exact at degree 0",
            covered is not None,
            "" if covered is not None else "augmentation kernel exceeds the first image",
        )
    else:
        report.add("exactness", False, "skipped: boundaries do not compose to zero")
    return report


# ---------------------------------------------------------------------------
# generation


def _random_entry(ring: Ring, rng: random.Random):
    if isinstance(ring, PrimeField):
        return rng.randrange(ring.p)
    return rng.randint(-2, 2)


def _random_matrix(ring: Ring, rows: int, cols: int, rng: random.Random) -> Matrix:
    return Matrix(ring, rows, cols, [_random_entry(ring, rng) for _ in range(rows * cols)])


def _permute_columns(m: Matrix, perm: list[int]) -> Matrix:
    entries = []
    for i in range(m.rows):
        row = m.row_list(i)
        entries.extend(row[j] for j in perm)
    return Matrix(m.ring, m.rows, m.cols, entries)


def _pad_with_redundant_columns(
    m: Matrix, max_rank: int, rng: random.Random
) -> Matrix:
    """Adjoin random combinations of the existing columns (image unchanged)
    and shuffle the column order."""
    extra = rng.randint(0, max(0, max_rank - m.cols))
    if extra:
        coeffs = _random_matrix(m.ring, m.cols, extra, rng)
        m = hstack(m, m * coeffs)
    perm = list(range(m.cols))
    rng.shuffle(perm)
    return _permute_columns(m, perm)


def generate_resolution(
    presentation: ModulePresentation,
    n: int,
    max_rank: int,
    seed: int = 0,
) -> TruncatedResolution:
    """Random valid truncated resolution of the presented module over Z or
    a prime field. Deterministic for a fixed seed. Padding with redundant
    generators is what makes independently generated resolutions of the
    same module genuinely different."""
    ring = presentation.ring
    if not isinstance(ring, (IntegerRing, PrimeField)):
        raise RingError("random generation needs Z or a prime field")
    if n < 1:
        raise ShapeError("resolution length must be at least 1")
    rng = random.Random(seed)
    m = presentation.ambient_rank
    rel = presentation.relations

    pad0 = rng.randint(0, max(0, max_rank - m))
    if pad0:
        if rel.cols:
            pad_cols = rel * _random_matrix(ring, rel.cols, pad0, rng)
        else:
            pad_cols = Matrix.zeros(ring, m, pad0)
        augmentation = hstack(Matrix.identity(ring, m), pad_cols)
    else:
        augmentation = Matrix.identity(ring, m)
    p0 = augmentation.cols

    kern = kernel_basis(hstack(augmentation, rel))
    d1 = Matrix(
        ring, p0, kern.cols,
        [kern.entry(i, j) for i in range(p0) for j in range(kern.cols)],
    )
    diffs = [_pad_with_redundant_columns(d1, max_rank, rng)]
    for _ in range(2, n + 1):
        kern = kernel_basis(diffs[-1])
        diffs.append(_pad_with_redundant_columns(kern, max_rank, rng))

    ranks = [p0] + [d.cols for d in diffs]
    complex_ = ChainComplex(ring, ranks, diffs)
    return TruncatedResolution(presentation, complex_, augmentation)


def pad_top(res: TruncatedResolution, extra: int) -> TruncatedResolution:
    """Adjoin ``extra`` zero columns to the top boundary: a redundant top
    summand mapped by zero. Exactness is untouched since nothing is
    demanded at the top degree."""
    if res.cochain:
        raise ShapeError("pad_top applies to chain-oriented resolutions")
    n = res.length
    if n < 1:
        raise ShapeError("nothing to pad in a length-0 resolution")
    ring = res.ring
    top = res.complex.d(n)
    new_top = hstack(top, Matrix.zeros(ring, top.rows, extra))
    ranks = list(res.complex.ranks)
    ranks[n] += extra
    diffs = list(res.complex.diffs)
    diffs[n - 1] = new_top
    return TruncatedResolution(
        res.presentation, ChainComplex(ring, ranks, diffs), res.augmentation
    )


# ---------------------------------------------------------------------------
# canonical examples


_CYCLIC_NAME = re.compile(r"Z_over_Z\[C_(\d+)\]$")


def canonical_resolution(
    name: str, n: int
) -> tuple[ModulePresentation, TruncatedResolution]:
    """Built-in examples: "Z_over_Z" (Z resolving itself) and
    "Z_over_Z[C_m]" (m <= 12), the periodic resolution of Z over the
    integral group ring of the cyclic group of order m, alternating
    t-1 and the norm element 1+t+...+t^(m-1)."""
    if n < 1:
        raise ShapeError("canonical resolutions need length >= 1")
    if name == "Z_over_Z":
        pres = ModulePresentation(ZZ, 1, Matrix(ZZ, 1, 0, ()))
        ranks = [1] + [0] * n
        diffs = [Matrix.zeros(ZZ, ranks[i - 1], ranks[i]) for i in range(1, n + 1)]
        res = TruncatedResolution(
            pres, ChainComplex(ZZ, ranks, diffs), Matrix.identity(ZZ, 1)
        )
        return pres, res
    match = _CYCLIC_NAME.match(name)
    if not match:
        raise ValueError(f"unknown canonical resolution {name!r}")
    m = int(match.group(1))
    if not 2 <= m <= 12:
        raise ValueError("cyclic order must be between 2 and 12")
    ring = GroupRing(ZZ, GroupTable.cyclic(m))
    t = ring.basis_element(1)
    t_minus_1 = ring.sub(t, ring.one)
    norm = tuple(1 for _ in range(m))
    pres = ModulePresentation(ring, 1, Matrix(ring, 1, 1, [t_minus_1]))
    diffs = [
        Matrix(ring, 1, 1, [t_minus_1 if i % 2 == 1 else norm])
        for i in range(1, n + 1)
    ]
    res = TruncatedResolution(
        pres,
        ChainComplex(ring, [1] * (n + 1), diffs),
        Matrix(ring, 1, 1, [ring.one]),
    )
    return pres, res


# ---------------------------------------------------------------------------
# duality (field coefficients only)


def dualize(res: TruncatedResolution) -> TruncatedResolution:
    """Transpose all boundaries and reverse the grading, exchanging the
    chain and cochain orientations. Over a field this carries a truncated
    resolution to a truncated resolution of the dual module (the module is
    the kernel of the map out of the reversed top). An exact involution:
    presentation and augmentation data are carried verbatim."""
    if not isinstance(res.ring, PrimeField):
        raise RingError("dualize is available over prime fields only")
    n = res.length
    old = res.complex
    ranks = [old.ranks[n - j] for j in range(n + 1)]
    diffs = [old.d(n - j + 1).transpose() for j in range(1, n + 1)]
    return TruncatedResolution(
        res.presentation,
        ChainComplex(res.ring, ranks, diffs),
        res.augmentation,
        cochain=not res.cochain,
    )
