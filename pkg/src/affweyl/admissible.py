"""Admissible sets, their minimal element, and parahoric images.

Adm(mu) consists of the elements Bruhat-below some translation by a
finite Weyl conjugate of mu.  Enumeration goes by closing each maximal
translation downward through subwords of one fixed reduced word, then
re-verifying every candidate against the definition through the
independent Bruhat routine; any disagreement between the two paths is a
hard internal error.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .affine_weyl import (
    AffineWeylElement,
    AffineWeylError,
    ParahoricLevel,
    bruhat_leq,
    double_coset_rep,
    element_sort_key,
    identity_element,
    iwahori_generators,
    kottwitz,
    length,
    mul,
    omega_part,
    reduced_word,
    translation_element,
)
from .root_datum import RootDatum, dominant_rep, weyl_orbit


@dataclass(frozen=True)
class AdmissibleSet:
    mu: tuple[int, ...]
    elements: tuple[AffineWeylElement, ...]
    level: ParahoricLevel
    cover_edges: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.elements)


@lru_cache(maxsize=None)
def _maximal_translations(mu: tuple[int, ...], rd: RootDatum) -> tuple[AffineWeylElement, ...]:
    mu_dom, _ = dominant_rep(mu, rd)
    return tuple(translation_element(lam, rd) for lam in weyl_orbit(mu_dom, rd))


def is_admissible(w: AffineWeylElement, mu: Sequence[int], rd: RootDatum) -> bool:
    """Membership test straight from the definition."""
    targets = _maximal_translations(tuple(mu), rd)
    if kottwitz(rd, w) != kottwitz(rd, targets[0]):
        return False
    return any(bruhat_leq(rd, w, t) for t in targets)


def _subword_closure(rd: RootDatum, w: AffineWeylElement) -> set[AffineWeylElement]:
    """All products of subwords of one reduced word of w, times its omega."""
    letters, omega = reduced_word(rd, w)
    gens = iwahori_generators(rd)
    out: set[AffineWeylElement] = set()
    partial = {identity_element(rd)}
    # grow subword products letter by letter to share work across masks
    for letter in letters:
        partial |= {mul(p, gens[letter]) for p in partial}
    for p in partial:
        out.add(mul(p, omega))
    return out


@lru_cache(maxsize=None)
def adm(mu: tuple[int, ...], rd: RootDatum) -> AdmissibleSet:
    """The admissible set of mu at Iwahori level, with its cover relations."""
    maximal = _maximal_translations(tuple(mu), rd)
    candidates: set[AffineWeylElement] = set()
    for t in maximal:
        candidates |= _subword_closure(rd, t)
    verified = {w for w in candidates if is_admissible(w, mu, rd)}
    if verified != candidates:
        raise AffineWeylError(
            "admissible enumeration mismatch: subword closure produced a non-member"
        )
    elements = tuple(sorted(verified, key=lambda w: element_sort_key(rd, w)))
    index = {w: i for i, w in enumerate(elements)}
    edges = []
    for w in elements:
        lw = length(rd, w)
        for v in elements:
            if length(rd, v) == lw - 1 and bruhat_leq(rd, v, w):
                edges.append((index[v], index[w]))
    mu_dom, _ = dominant_rep(tuple(mu), rd)
    return AdmissibleSet(mu_dom, elements, ParahoricLevel.iwahori(), tuple(sorted(edges)))


def tau(mu: Sequence[int], rd: RootDatum) -> AffineWeylElement:
    """The unique length-zero admissible element: the Omega part of t_mu."""
    mu_dom, _ = dominant_rep(tuple(mu), rd)
    return omega_part(rd, translation_element(mu_dom, rd))


def adm_K(
    mu: Sequence[int], rd: RootDatum, level: ParahoricLevel
) -> tuple[AffineWeylElement, ...]:
    """Image of Adm(mu) in the double coset space, as minimal-length reps."""
    reps = {double_coset_rep(rd, w, level) for w in adm(tuple(mu), rd).elements}
    return tuple(sorted(reps, key=lambda w: element_sort_key(rd, w)))


@dataclass(frozen=True)
class KRPoset:
    """Closure poset of the stratification indexed by Adm_K(mu).

    Nodes are minimal-length double coset representatives, ranked by
    length; edges are the covering relations of the order induced by
    Bruhat comparison of representatives.
    """

    nodes: tuple[AffineWeylElement, ...]
    ranks: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    bottom: int


def kr_poset(mu: Sequence[int], rd: RootDatum, level: ParahoricLevel) -> KRPoset:
    nodes = adm_K(mu, rd, level)
    n = len(nodes)
    leq = [[False] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            leq[i][j] = bruhat_leq(rd, nodes[i], nodes[j])
    # covering relations: remove transitive edges
    edges = []
    for i in range(n):
        for j in range(n):
            if i != j and leq[i][j]:
                if not any(k != i and k != j and leq[i][k] and leq[k][j] for k in range(n)):
                    edges.append((i, j))
    bottoms = [i for i in range(n) if all(leq[i][j] for j in range(n))]
    if len(bottoms) != 1:
        raise AffineWeylError("stratification poset does not have a unique bottom")
    tau_rep = double_coset_rep(rd, tau(mu, rd), level)
    if nodes[bottoms[0]] != tau_rep:
        raise AffineWeylError("poset bottom is not the coset of the minimal element")
    ranks = tuple(length(rd, w) for w in nodes)
    return KRPoset(nodes, ranks, tuple(sorted(edges)), bottoms[0])


def enumerate_ball(rd: RootDatum, radius: int) -> set[AffineWeylElement]:
    """All elements of the affine Coxeter group W_a of length <= radius.

    Brute-force generator closure; an independent oracle for enumeration
    tests, exponential in the radius.
    """
    gens = iwahori_generators(rd)
    seen = {identity_element(rd)}
    frontier = set(seen)
    for _ in range(radius):
        nxt = set()
        for w in frontier:
            for g in gens:
                cand = mul(w, g)
                if cand not in seen:
                    seen.add(cand)
                    nxt.add(cand)
        frontier = nxt
    return seen


def adm_by_exhaustion(mu: Sequence[int], rd: RootDatum) -> set[AffineWeylElement]:
    """Oracle: filter the full length ball in the right Omega coset."""
    mu_dom, _ = dominant_rep(tuple(mu), rd)
    t_mu = translation_element(mu_dom, rd)
    omega = omega_part(rd, t_mu)
    bound = length(rd, t_mu)
    ball = enumerate_ball(rd, bound)
    out = set()
    for w_a in ball:
        w = mul(w_a, omega)
        if is_admissible(w, mu, rd):
            out.add(w)
    return out
