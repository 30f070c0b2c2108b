"""Brute-force reference implementations used to cross-check the library.

These work on explicit families of sets and point-level sums, never on the
atom representation the library uses.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


def powerset(items):
    items = list(items)
    for r in range(len(items) + 1):
        for combo in itertools.combinations(items, r):
            yield frozenset(combo)


def generated_sigma(points, generators) -> set[frozenset]:
    """Close generators under complement and union until nothing new appears."""
    universe = frozenset(points)
    family = {frozenset(), universe} | {frozenset(g) for g in generators}
    while True:
        new = {universe - s for s in family} | {a | b for a in family for b in family}
        if new <= family:
            return family
        family |= new


def sigma_of_space(space) -> set[frozenset]:
    return generated_sigma(space.points, space.atoms)


def atoms_of_family(points, family) -> set[frozenset]:
    """Minimal nonempty members of a σ-algebra."""
    nonempty = [s for s in family if s]
    return {s for s in nonempty if not any(t < s for t in nonempty)}


def point_mass(measure) -> dict:
    """Spread atom weights onto their first point; enough for set evaluation on measurable sets."""
    out = {x: Fraction(0) for x in measure.space.points}
    for atom, w in zip(measure.space.atoms, measure.weights):
        out[atom[0]] += w
    return out


def mass(measure, s) -> Fraction:
    pm = point_mass(measure)
    return sum((pm[x] for x in s), Fraction(0))


def preimage(f, s) -> frozenset:
    return frozenset(x for x in f.dom.points if f(x) in s)


def pushforward_oracle(measure, f) -> dict[frozenset, Fraction]:
    return {s: mass(measure, preimage(f, s)) for s in sigma_of_space(f.cod)}


def kernel_prob(k, x, s) -> Fraction:
    """T(x, S) read off the row of the atom holding x."""
    row = k.rows[k.dom.atom_of(x)]
    return sum((w for atom, w in zip(k.cod.atoms, row.weights) if set(atom) <= set(s)), Fraction(0))


def compose_oracle(u, t, x, s) -> Fraction:
    """(U∘T)(x, S) = Σ_y U(y, S)·T(x, {y}) summed over codomain atoms via their representatives."""
    total = Fraction(0)
    for atom in t.cod.atoms:
        total += kernel_prob(u, atom[0], s) * kernel_prob(t, x, atom)
    return total


def integrate_oracle(theta, measure) -> Fraction:
    """Σ over points, with each atom's weight on its first point and θ constant on atoms."""
    pm = point_mass(measure)
    value = {x: v for atom, v in zip(theta.space.atoms, theta.values) for x in atom}
    return sum((value[x] * pm[x] for x in measure.space.points), Fraction(0))


def min_bound_oracle(f, p_dom, p_cod):
    """Minimal M with p_dom(f⁻¹A) <= M·p_cod(A) over every measurable A, or None."""
    best = Fraction(0)
    for s in sigma_of_space(f.cod):
        lhs, rhs = mass(p_dom, preimage(f, s)), mass(p_cod, s)
        if rhs == 0:
            if lhs > 0:
                return None
            continue
        best = max(best, lhs / rhs)
    return best


def all_functions(dom_points, cod_points):
    for values in itertools.product(cod_points, repeat=len(dom_points)):
        yield dict(zip(dom_points, values))


def measurable_by_sets(mapping, dom, cod) -> bool:
    dom_sigma = sigma_of_space(dom)
    return all(frozenset(x for x in dom.points if mapping[x] in s) in dom_sigma for s in sigma_of_space(cod))
