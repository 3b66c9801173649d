"""Based root data for split reductive groups, with exact arithmetic.

A RootDatum fixes a cocharacter lattice Z^rank together with simple roots
(covectors) and simple coroots (vectors).  Positive roots and coroots are
generated at build time by reflection closure and stored as matched lists:
positive_roots[k] is the root whose coroot is positive_coroots[k].

Presets cover GL(n), SL(n), PGL(n) and GSp(2g); arbitrary finite-type data
can be supplied explicitly.  The pairing between X_*(T) and X^*(T) is the
standard dot product in the chosen coordinates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Optional, Sequence, Union

from .linalg import (
    Vec,
    hermite_row_form,
    mat_inverse,
    smith_normal_form,
    solve_rational,
)

Coords = Union[Sequence[int], Sequence[Fraction]]

# number of positive roots for the preset families, keyed by label prefix
_PRESET_ROOT_COUNTS = {
    "GL": lambda n: n * (n - 1) // 2,
    "SL": lambda n: n * (n - 1) // 2,
    "PGL": lambda n: n * (n - 1) // 2,
    "GSp": lambda n: (n // 2) ** 2,
}


class RootDatumError(ValueError):
    """Invalid root datum input."""


def pairing(cochar: Coords, root: Coords):
    """The canonical pairing <cocharacter, character>."""
    if len(cochar) != len(root):
        raise RootDatumError("rank mismatch in pairing")
    return sum(a * b for a, b in zip(cochar, root))


@dataclass(frozen=True)
class RootDatum:
    rank: int
    type_label: str
    simple_roots: tuple[Vec, ...]
    simple_coroots: tuple[Vec, ...]
    positive_roots: tuple[Vec, ...]
    positive_coroots: tuple[Vec, ...]
    cartan_matrix: tuple[Vec, ...]

    @property
    def semisimple_rank(self) -> int:
        return len(self.simple_roots)

    def coroot_height(self, coroot: Coords) -> Fraction:
        """Sum of the coefficients of a coroot over the simple coroots."""
        coeffs = solve_rational(self.simple_coroots, coroot)
        if coeffs is None:
            raise RootDatumError("vector is not in the span of the simple coroots")
        return sum(coeffs, Fraction(0))

    def components(self) -> tuple[tuple[int, ...], ...]:
        """Connected components of the Dynkin diagram, as index tuples."""
        n = self.semisimple_rank
        seen: set[int] = set()
        comps = []
        for start in range(n):
            if start in seen:
                continue
            stack, comp = [start], []
            while stack:
                i = stack.pop()
                if i in seen:
                    continue
                seen.add(i)
                comp.append(i)
                for j in range(n):
                    if j not in seen and self.cartan_matrix[i][j] != 0:
                        stack.append(j)
            comps.append(tuple(sorted(comp)))
        return tuple(comps)


def _cartan_from_data(simple_roots, simple_coroots) -> tuple[Vec, ...]:
    return tuple(
        tuple(pairing(cv, rt) for cv in simple_coroots) for rt in simple_roots
    )


def _check_cartan(cartan: Sequence[Sequence[int]]) -> None:
    n = len(cartan)
    for i in range(n):
        if cartan[i][i] != 2:
            raise RootDatumError(f"Cartan diagonal entry A[{i}][{i}] = {cartan[i][i]} != 2")
        for j in range(n):
            if i != j:
                if cartan[i][j] > 0:
                    raise RootDatumError(
                        f"Cartan off-diagonal entry A[{i}][{j}] = {cartan[i][j]} > 0"
                    )
                if (cartan[i][j] == 0) != (cartan[j][i] == 0):
                    raise RootDatumError(f"Cartan zero pattern is not symmetric at ({i},{j})")
    # finite type: every principal minor must be positive
    for size in range(1, n + 1):
        for subset in itertools.combinations(range(n), size):
            minor = _det([[cartan[i][j] for j in subset] for i in subset])
            if minor <= 0:
                raise RootDatumError(
                    f"Cartan matrix is not of finite type: principal minor {subset} = {minor}"
                )


def _det(m: list[list[int]]) -> Fraction:
    n = len(m)
    work = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if work[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            work[col], work[piv] = work[piv], work[col]
            det = -det
        det *= work[col][col]
        inv = 1 / work[col][col]
        for r in range(col + 1, n):
            f = work[r][col] * inv
            if f:
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
    return det


def _reflection_closure(simple_roots, simple_coroots):
    """All (root, coroot) pairs of the system, by closing under reflections."""
    pairs = set(zip(simple_roots, simple_coroots))
    frontier = set(pairs)
    while frontier:
        new = set()
        for root, coroot in frontier:
            for a, av in zip(simple_roots, simple_coroots):
                n_root = tuple(r - pairing(av, root) * s for r, s in zip(root, a))
                n_coroot = tuple(c - pairing(coroot, a) * s for c, s in zip(coroot, av))
                cand = (n_root, n_coroot)
                if cand not in pairs:
                    new.add(cand)
        pairs |= new
        frontier = new
        if len(pairs) > 10000:
            raise RootDatumError("reflection closure did not terminate; datum is not finite type")
    return pairs


def build_root_datum(spec: Mapping) -> RootDatum:
    """Build a datum from a preset record or explicit simple roots/coroots.

    Presets: {"preset": "GL"|"SL"|"PGL"|"GSp", "n": int}.  Explicit:
    {"rank": int, "simple_roots": [[...]], "simple_coroots": [[...]]}.
    """
    if "preset" in spec:
        preset = spec["preset"]
        n = int(spec["n"])
        if preset == "GL":
            return _build(_gl_data(n), f"GL{n}")
        if preset == "SL":
            return _build(_sl_data(n), f"SL{n}")
        if preset == "PGL":
            return _build(_pgl_data(n), f"PGL{n}")
        if preset == "GSp":
            if n % 2 != 0 or n < 2:
                raise RootDatumError("GSp preset needs an even n >= 2")
            return _build(_gsp_data(n // 2), f"GSp{n}")
        raise RootDatumError(f"unknown preset {preset!r}")
    try:
        rank = int(spec["rank"])
        roots = [tuple(int(x) for x in r) for r in spec["simple_roots"]]
        coroots = [tuple(int(x) for x in r) for r in spec["simple_coroots"]]
    except KeyError as exc:
        raise RootDatumError(f"missing field {exc} in group spec") from exc
    label = str(spec.get("label", f"custom(rank={rank})"))
    return _build((rank, roots, coroots), label)


def _build(data, label: str) -> RootDatum:
    rank, roots, coroots = data
    if len(roots) != len(coroots):
        raise RootDatumError("simple root and coroot lists differ in length")
    for v in list(roots) + list(coroots):
        if len(v) != rank:
            raise RootDatumError("coroots not in the lattice: wrong coordinate length")
    cartan = _cartan_from_data(roots, coroots)
    _check_cartan(cartan)
    pairs = _reflection_closure(tuple(roots), tuple(coroots))
    datum = RootDatum(
        rank=rank,
        type_label=label,
        simple_roots=tuple(roots),
        simple_coroots=tuple(coroots),
        positive_roots=(),
        positive_coroots=(),
        cartan_matrix=cartan,
    )
    positives = []
    for root, coroot in pairs:
        coeffs = solve_rational(tuple(coroots), coroot) if coroots else None
        if coeffs is None:
            raise RootDatumError("closure produced a coroot outside the simple-coroot span")
        if all(c >= 0 for c in coeffs):
            positives.append((sum(coeffs, Fraction(0)), coroot, root))
    positives.sort(key=lambda t: (t[0], t[1]))
    pos_coroots = tuple(p[1] for p in positives)
    pos_roots = tuple(p[2] for p in positives)
    if 2 * len(positives) != len(pairs):
        raise RootDatumError("root system closure is not symmetric")
    for cv in coroots:
        if cv not in pos_coroots:
            raise RootDatumError("a simple coroot is missing from the positive coroots")
    prefix = "".join(ch for ch in label if ch.isalpha())
    if prefix in _PRESET_ROOT_COUNTS:
        n = int("".join(ch for ch in label if ch.isdigit()))
        expected = _PRESET_ROOT_COUNTS[prefix](n)
        if len(pos_coroots) != expected:
            raise RootDatumError(
                f"positive coroot count {len(pos_coroots)} != expected {expected} for {label}"
            )
    return RootDatum(
        rank=rank,
        type_label=label,
        simple_roots=tuple(roots),
        simple_coroots=tuple(coroots),
        positive_roots=pos_roots,
        positive_coroots=pos_coroots,
        cartan_matrix=cartan,
    )


def _gl_data(n: int):
    if n < 1:
        raise RootDatumError("GL preset needs n >= 1")
    roots, coroots = [], []
    for i in range(n - 1):
        v = [0] * n
        v[i], v[i + 1] = 1, -1
        roots.append(tuple(v))
        coroots.append(tuple(v))
    return n, roots, coroots


def _sl_data(n: int):
    # X_*(T) in the basis of the simple coroots themselves
    if n < 2:
        raise RootDatumError("SL preset needs n >= 2")
    r = n - 1
    cartan = _type_a_cartan(r)
    coroots = [tuple(1 if j == i else 0 for j in range(r)) for i in range(r)]
    roots = [tuple(cartan[i]) for i in range(r)]
    return r, roots, coroots


def _pgl_data(n: int):
    # X_*(T) in the basis of the fundamental coweights
    if n < 2:
        raise RootDatumError("PGL preset needs n >= 2")
    r = n - 1
    cartan = _type_a_cartan(r)
    roots = [tuple(1 if j == i else 0 for j in range(r)) for i in range(r)]
    coroots = [tuple(cartan[i][j] for i in range(r)) for j in range(r)]
    return r, roots, coroots


def _type_a_cartan(r: int):
    return [
        [2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(r)]
        for i in range(r)
    ]


def _gsp_data(g: int):
    # coordinates (a_1, .., a_g, c) on the similitude-extended lattice
    if g < 1:
        raise RootDatumError("GSp preset needs 2n >= 2")
    rank = g + 1
    roots, coroots = [], []
    for i in range(g - 1):
        rt = [0] * rank
        rt[i], rt[i + 1] = 1, -1
        roots.append(tuple(rt))
        coroots.append(tuple(rt))
    long_rt = [0] * rank
    long_rt[g - 1], long_rt[g] = 2, -1
    long_cv = [0] * rank
    long_cv[g - 1] = 1
    roots.append(tuple(long_rt))
    coroots.append(tuple(long_cv))
    return rank, roots, coroots


def is_dominant(lam: Coords, rd: RootDatum) -> bool:
    return all(pairing(lam, a) >= 0 for a in rd.simple_roots)


def simple_reflection(lam: Coords, i: int, rd: RootDatum):
    c = pairing(lam, rd.simple_roots[i])
    return tuple(x - c * y for x, y in zip(lam, rd.simple_coroots[i]))


def dominant_rep(lam: Coords, rd: RootDatum) -> tuple[tuple, tuple[int, ...]]:
    """Dominant representative of the finite Weyl orbit, plus the word used.

    The word lists simple reflection indices in application order: folding
    them over the input, left to right, yields the dominant vector.
    """
    cur = tuple(lam)
    word: list[int] = []
    while True:
        neg = next((i for i, a in enumerate(rd.simple_roots) if pairing(cur, a) < 0), None)
        if neg is None:
            return cur, tuple(word)
        cur = simple_reflection(cur, neg, rd)
        word.append(neg)


def dominance_leq(lam: Coords, mu: Coords, rd: RootDatum, *, integral: bool = True) -> bool:
    """Whether mu - lam is a non-negative combination of simple coroots.

    With integral=True the coefficients must be non-negative integers; with
    integral=False non-negative rationals suffice.  Inputs are compared in
    place (callers wanting the dominance order pre-apply dominant_rep).
    """
    if len(lam) != len(mu) or len(lam) != rd.rank:
        raise RootDatumError("rank mismatch in dominance comparison")
    diff = tuple(Fraction(b) - Fraction(a) for a, b in zip(lam, mu))
    if not rd.simple_coroots:
        return all(x == 0 for x in diff)
    coeffs = solve_rational(rd.simple_coroots, diff)
    if coeffs is None:
        return False
    if any(c < 0 for c in coeffs):
        return False
    if integral and any(c.denominator != 1 for c in coeffs):
        return False
    return True


def weyl_orbit(lam: Coords, rd: RootDatum) -> tuple[tuple, ...]:
    """Orbit of a cocharacter under the finite Weyl group, sorted."""
    seen = {tuple(lam)}
    frontier = [tuple(lam)]
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(rd.semisimple_rank):
                w = simple_reflection(v, i, rd)
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return tuple(sorted(seen))


@dataclass(frozen=True)
class FinAbGroup:
    """Finitely generated abelian group Z^n / L in normal form.

    invariant_factors lists the cyclic orders in divisibility order with 0
    meaning an infinite cyclic factor; trivial factors are dropped.  The
    projection maps lattice vectors to normal-form tuples and its kernel is
    exactly the sublattice L used to build the group.
    """

    ambient_rank: int
    invariant_factors: tuple[int, ...]
    _rows: tuple[Vec, ...]
    _moduli: tuple[int, ...]
    _sections: tuple[Vec, ...]

    def project(self, v: Coords) -> Vec:
        if len(v) != self.ambient_rank:
            raise RootDatumError("rank mismatch in fundamental group projection")
        out = []
        for row, d in zip(self._rows, self._moduli):
            x = sum(int(a) * int(b) for a, b in zip(row, v))
            out.append(x % d if d else x)
        return tuple(out)

    def zero(self) -> Vec:
        return tuple(0 for _ in self.invariant_factors)

    def add(self, x: Vec, y: Vec) -> Vec:
        return tuple(
            (a + b) % d if d else a + b
            for a, b, d in zip(x, y, self.invariant_factors)
        )

    def neg(self, x: Vec) -> Vec:
        return tuple((-a) % d if d else -a for a, d in zip(x, self.invariant_factors))

    def generator_sections(self) -> tuple[Vec, ...]:
        """One lattice preimage per normal-form generator."""
        return self._sections

    @property
    def order(self) -> Optional[int]:
        if any(d == 0 for d in self.invariant_factors):
            return None
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def describe(self) -> str:
        if not self.invariant_factors:
            return "1"
        return " x ".join("Z" if d == 0 else f"Z/{d}" for d in self.invariant_factors)


def quotient_group(ambient_rank: int, sublattice_columns: Sequence[Sequence[int]]) -> FinAbGroup:
    """Present Z^ambient_rank modulo the span of the given columns."""
    cols = [tuple(int(x) for x in c) for c in sublattice_columns]
    for c in cols:
        if len(c) != ambient_rank:
            raise RootDatumError("sublattice columns have the wrong length")
    if not cols:
        eye = tuple(tuple(1 if i == j else 0 for j in range(ambient_rank)) for i in range(ambient_rank))
        return FinAbGroup(ambient_rank, (0,) * ambient_rank, eye, (0,) * ambient_rank, eye)
    mat = tuple(tuple(c[i] for c in cols) for i in range(ambient_rank))
    sf = smith_normal_form(mat)
    diag = list(sf.diagonal) + [0] * (ambient_rank - len(sf.diagonal))
    torsion_rows, torsion_mods, torsion_secs = [], [], []
    free_rows, free_secs = [], []
    for i in range(ambient_rank):
        d = diag[i]
        section = tuple(sf.u_inv[r][i] for r in range(ambient_rank))
        if d == 1:
            continue
        if d == 0:
            free_rows.append(sf.u[i])
            free_secs.append(section)
        else:
            torsion_rows.append(tuple(x % d for x in sf.u[i]))
            torsion_mods.append(d)
            torsion_secs.append(section)
    # canonicalize the free quotient map so equal lattices present identically
    if free_rows:
        canon = list(hermite_row_form(free_rows))
        free_secs = _transform_sections(canon, free_rows, free_secs)
        free_rows = canon
    rows = tuple(torsion_rows) + tuple(tuple(r) for r in free_rows)
    mods = tuple(torsion_mods) + (0,) * len(free_rows)
    sections = tuple(torsion_secs) + tuple(free_secs)
    return FinAbGroup(ambient_rank, mods, rows, mods, sections)


def _transform_sections(new_rows, old_rows, old_secs):
    """Sections matching a unimodular change of the free projection rows."""
    coeffs = []
    for row in new_rows:
        sol = solve_rational(tuple(old_rows), row)
        if sol is None or any(c.denominator != 1 for c in sol):
            raise RootDatumError("internal error canonicalizing the free quotient")
        coeffs.append(tuple(int(c) for c in sol))
    t_inv = mat_inverse(tuple(coeffs))
    n = len(old_secs[0])
    return [
        tuple(sum(t_inv[i][j] * old_secs[i][k] for i in range(len(old_secs))) for k in range(n))
        for j in range(len(new_rows))
    ]


@lru_cache(maxsize=None)
def fundamental_group(rd: RootDatum, sublattice: Optional[tuple[Vec, ...]] = None) -> FinAbGroup:
    """X_*(T) modulo the coroot lattice (or a supplied sublattice)."""
    cols = sublattice if sublattice is not None else rd.simple_coroots
    return quotient_group(rd.rank, cols)


def sub_datum(rd: RootDatum, positive_root_indices: Sequence[int], label: str) -> RootDatum:
    """Root datum of a subsystem spanned by some of the positive roots.

    The simple system consists of the indecomposable elements: positive
    roots of the subsystem that are not sums of two of them.
    """
    idx = sorted(set(positive_root_indices))
    roots = [rd.positive_roots[k] for k in idx]
    coroots = [rd.positive_coroots[k] for k in idx]
    root_set = set(roots)
    simple_r, simple_c = [], []
    for root, coroot in zip(roots, coroots):
        decomposable = any(
            tuple(x - y for x, y in zip(root, other)) in root_set
            for other in roots
            if other != root
        )
        if not decomposable:
            simple_r.append(root)
            simple_c.append(coroot)
    return _build((rd.rank, simple_r, simple_c), label)
