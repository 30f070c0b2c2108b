"""Stochastic functions (Markov kernels) between finite spaces.

A kernel T: X ~> Y keeps one probability measure on Y per atom of X. Storing
rows per atom is what makes T(·, F) measurable in its first argument.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ArityMismatch, NotProbability, RowNotNormalized, SpaceMismatch
from .finspace import FinSpace, MeasurableMap, identity_map
from .measure import RationalMeasure, dirac, measure_of


@dataclass(frozen=True)
class StochKernel:
    dom: FinSpace
    cod: FinSpace
    rows: tuple[RationalMeasure, ...]

    def __post_init__(self):
        rows = tuple(self.rows)
        if len(rows) != len(self.dom.atoms):
            raise ArityMismatch(f"{len(rows)} rows for {len(self.dom.atoms)} atoms of {self.dom.name}")
        for atom, row in zip(self.dom.atoms, rows):
            if row.space != self.cod:
                raise SpaceMismatch(f"row for {{{','.join(atom)}}} is not a measure on {self.cod.name}")
            if row.total != 1:
                raise RowNotNormalized(f"row for {{{','.join(atom)}}} sums to {row.total}")
        object.__setattr__(self, "rows", rows)

    def row(self, x: str) -> RationalMeasure:
        """T_x, the row of the atom containing ``x``."""
        return self.rows[self.dom.atom_of(x)]

    def __call__(self, x: str, event: Iterable[str]) -> Fraction:
        return measure_of(self.row(x), event)

    @property
    def matrix(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(r.weights for r in self.rows)


def make_kernel(dom: FinSpace, cod: FinSpace, row_weights: Sequence[Sequence]) -> StochKernel:
    if len(row_weights) != len(dom.atoms):
        raise ArityMismatch(f"{len(row_weights)} rows for {len(dom.atoms)} atoms of {dom.name}")
    return StochKernel(dom, cod, tuple(RationalMeasure(cod, tuple(r)) for r in row_weights))


def det_kernel(f: MeasurableMap) -> StochKernel:
    """δ_f: the 0/1 kernel sending x to the point mass at f(x)."""
    return StochKernel(f.dom, f.cod, tuple(dirac(f.cod, f(a[0])) for a in f.dom.atoms))


def identity_kernel(space: FinSpace) -> StochKernel:
    return det_kernel(identity_map(space))


def compose_kernels(u: StochKernel, t: StochKernel) -> StochKernel:
    """U∘T, with (U∘T)(x, C) = Σ_B T(x, B)·U(B, C) over atoms B of the middle space."""
    if t.cod != u.dom:
        raise SpaceMismatch(f"cannot compose: {t.cod.name} != {u.dom.name}")
    n = len(u.cod.atoms)
    rows = []
    for trow in t.rows:
        acc = [Fraction(0)] * n
        for p, urow in zip(trow.weights, u.rows):
            if p:
                for k, q in enumerate(urow.weights):
                    acc[k] += p * q
        rows.append(RationalMeasure(u.cod, tuple(acc)))
    return StochKernel(t.dom, u.cod, tuple(rows))


def kleisli_apply(t: StochKernel, m: RationalMeasure) -> RationalMeasure:
    """t♯m, with (t♯m)(B) = Σ_A m(A)·t(A, B)."""
    if m.space != t.dom:
        raise SpaceMismatch(f"measure on {m.space.name}, kernel from {t.dom.name}")
    if not m.is_probability:
        raise NotProbability(f"measure has total mass {m.total}")
    acc = [Fraction(0)] * len(t.cod.atoms)
    for w, row in zip(m.weights, t.rows):
        if w:
            for k, q in enumerate(row.weights):
                acc[k] += w * q
    return RationalMeasure(t.cod, tuple(acc))
