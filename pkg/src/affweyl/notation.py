"""Textual notation for affine Weyl elements.

Canonical form: `t[1,0]*s1*s2` is the translation part followed by the
greedy reduced word of the finite part in the finite generators.  The
parser also accepts `e`, bare generators `s0`, `s1`, .., and `tau[1,0]`
(the length-zero representative of the class of a cocharacter);
format_element and parse_element are mutually inverse on canonical forms.
"""

from __future__ import annotations

import re

from .affine_weyl import (
    AffineWeylElement,
    AffineWeylError,
    finite_reflection,
    identity_element,
    iwahori_generators,
    mul,
    omega_rep,
    translation_element,
)
from .linalg import mat_mul, vec_mat
from .root_datum import RootDatum

_TERM_RE = re.compile(r"^(e|t\[(?P<tv>-?\d+(,-?\d+)*)\]|s(?P<si>\d+)|tau\[(?P<ov>-?\d+(,-?\d+)*)\])$")


def _finite_word(rd: RootDatum, w: AffineWeylElement) -> list[int]:
    """Greedy reduced word of the finite part, in finite generator indices."""
    neg_roots = {tuple(-x for x in a) for a in rd.positive_roots}
    cur = w.finite
    word: list[int] = []
    while True:
        for i, alpha in enumerate(rd.simple_roots):
            if vec_mat(alpha, cur) in neg_roots:
                word.append(i)
                cur = mat_mul(finite_reflection(rd, i).finite, cur)
                break
        else:
            if any(cur[i][j] != (1 if i == j else 0) for i in range(len(cur)) for j in range(len(cur))):
                raise AffineWeylError("finite part is not in the finite Weyl group")
            return word


def format_element(rd: RootDatum, w: AffineWeylElement) -> str:
    parts = ["t[" + ",".join(str(x) for x in w.translation) + "]"]
    n_affine = len(rd.components())
    for i in _finite_word(rd, w):
        parts.append(f"s{n_affine + i}")
    return "*".join(parts)


def parse_element(rd: RootDatum, text: str) -> AffineWeylElement:
    gens = iwahori_generators(rd)
    out = identity_element(rd)
    for term in text.strip().split("*"):
        m = _TERM_RE.match(term.strip())
        if not m:
            raise AffineWeylError(f"cannot parse element term {term!r}")
        if term.strip() == "e":
            continue
        if m.group("tv") is not None:
            lam = tuple(int(x) for x in m.group("tv").split(","))
            out = mul(out, translation_element(lam, rd))
        elif m.group("si") is not None:
            idx = int(m.group("si"))
            if idx >= len(gens):
                raise AffineWeylError(f"generator s{idx} out of range")
            out = mul(out, gens[idx])
        else:
            lam = tuple(int(x) for x in m.group("ov").split(","))
            out = mul(out, omega_rep(rd, lam))
    return out
