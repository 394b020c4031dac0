r"""The Ford polyhedron, its combinatorics, and words in Z3 * Z3.

The polyhedron D is the intersection of the exteriors of all the isometric
spheres I_k^+/-:

    q in D  iff  d_Cyg(q, A^k S^{+-1}(q_inf)) > 1 for all k.

Membership is decided by a window of translates recentred at the query point
(the closed-form centre distances grow like k^4, so faraway spheres cannot
contain a point that the window clears).  The sides are paired by
``sigma(s_k^+) = A^k S A^-k`` and ``sigma(s_k^-) = A^k S^-1 A^-k``, the ridge
cycles are ``rho(r_k^+) = A^k S A^-k`` and ``rho(r_k^-) = A^(k-1) S A^-k``,
both of order three, giving the presentation < S, A | S^3 = (A^-1 S)^3 = 1 >,
equivalently < S, T | S^3 = T^3 = 1 >.

Words of the abstract group Z3 * Z3 are sequences of syllables (letter,
exponent) with letters 's', 't' and exponents mod 3; ``reduce_word`` computes
the normal form and ``evaluate_word`` the matrix image.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Sequence

import numpy as np

from .core import (
    GroupElement,
    HeisPoint,
    cygan_distance,
    default_eps,
    heis_of_lift,
    is_infinity,
)
from .moduli import (
    GroupData,
    Params,
    RegionTag,
    build_group,
    region_classify,
)
from .spheres import SphereFamily

__all__ = [
    "Syllable",
    "reduce_word",
    "word_inverse",
    "word_mul",
    "word_power",
    "commutator_word",
    "rel_word",
    "word_str",
    "enumerate_reduced_words",
    "evaluate_word",
    "projective_identity_distance",
    "RidgeTag",
    "FordDomain",
    "DomainLocation",
    "DomainMembership",
    "side_pairing",
    "ridge_cycle",
    "presentation",
    "freeness_probe",
]

#: A syllable of a Z3 * Z3 word: ("s" or "t", exponent).
Syllable = tuple[str, int]


def reduce_word(word: Sequence[Syllable]) -> tuple[Syllable, ...]:
    """Normal form in Z3 * Z3: exponents mod 3, adjacent like letters merged.

    The running prefix is kept reduced, so a merge can never cascade: when a
    merged syllable cancels, the two neighbours it separated carry different
    letters already.
    """
    out: list[Syllable] = []
    for letter, exp in word:
        if letter not in ("s", "t"):
            raise ValueError(f"unknown letter {letter!r}")
        exp %= 3
        if not exp:
            continue
        if out and out[-1][0] == letter:
            exp = (out.pop()[1] + exp) % 3
            if exp:
                out.append((letter, exp))
        else:
            out.append((letter, exp))
    return tuple(out)


def word_inverse(word: Sequence[Syllable]) -> tuple[Syllable, ...]:
    return reduce_word([(l, -e) for l, e in reversed(list(word))])


def word_mul(*words: Sequence[Syllable]) -> tuple[Syllable, ...]:
    flat: list[Syllable] = []
    for w in words:
        flat.extend(w)
    return reduce_word(flat)


def word_power(word: Sequence[Syllable], n: int) -> tuple[Syllable, ...]:
    if n < 0:
        return word_power(word_inverse(word), -n)
    return word_mul(*([list(word)] * n)) if n else ()


def commutator_word(u: Sequence[Syllable], v: Sequence[Syllable]) -> tuple[Syllable, ...]:
    return word_mul(u, v, word_inverse(u), word_inverse(v))


def rel_word(u: Sequence[Syllable], v: Sequence[Syllable]) -> tuple[Syllable, ...]:
    """rel(u,v) = [u,v].[u,v^-1].[u^-1,v^-1].[u^-1,v] (Whitehead-link relator)."""
    ui, vi = word_inverse(u), word_inverse(v)
    return word_mul(
        commutator_word(u, v),
        commutator_word(u, vi),
        commutator_word(ui, vi),
        commutator_word(ui, v),
    )


def word_str(word: Sequence[Syllable]) -> str:
    if not word:
        return "1"
    return ".".join(f"{l}" if e == 1 else f"{l}{e}" for l, e in word)


def enumerate_reduced_words(max_syllables: int) -> Iterator[tuple[Syllable, ...]]:
    """All non-empty reduced words with at most ``max_syllables`` syllables."""
    frontier: list[tuple[Syllable, ...]] = [
        (("s", 1),), (("s", 2),), (("t", 1),), (("t", 2),)
    ]
    for w in frontier:
        yield w
    for _ in range(max_syllables - 1):
        nxt = []
        for w in frontier:
            other = "t" if w[-1][0] == "s" else "s"
            for e in (1, 2):
                w2 = w + ((other, e),)
                nxt.append(w2)
                yield w2
        frontier = nxt


def evaluate_word(word: Sequence[Syllable], S: GroupElement, T: GroupElement) -> GroupElement:
    gens = {"s": S.m, "t": T.m}
    m = np.eye(3, dtype=complex)
    for letter, exp in word:
        m = m @ np.linalg.matrix_power(gens[letter], exp % 3)
    return GroupElement(m)


_CUBE_ROOTS = np.exp(2j * np.pi * np.arange(3) / 3)


def projective_identity_distance(m: np.ndarray | GroupElement) -> float:
    """Frobenius distance to the nearest SU(2,1) lift of the identity."""
    m = m.m if isinstance(m, GroupElement) else np.asarray(m, dtype=complex)
    return min(
        float(np.linalg.norm(m / w - np.eye(3))) for w in _CUBE_ROOTS
    )


# ---------------------------------------------------------------------------
# The polyhedron
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RidgeTag:
    """r_k^+ = s_k^+ n s_k^-; r_k^- = s_k^+ n s_{k-1}^-."""

    kind: str  # "+" or "-"
    k: int

    def __post_init__(self):
        if self.kind not in ("+", "-"):
            raise ValueError("ridge kind must be '+' or '-'")


class DomainLocation(Enum):
    INSIDE = "inside"
    ON_SIDE = "on_side"
    OUTSIDE = "outside"


@dataclass(frozen=True)
class DomainMembership:
    location: DomainLocation
    #: spheres within eps of contact (ON_SIDE) or the violated sphere (OUTSIDE)
    witnesses: tuple[tuple[str, int], ...] = ()


@dataclass(frozen=True)
class FordDomain:
    """Membership tests for the polyhedron D at a parameter point."""

    params: Params
    window: int = 5

    def __post_init__(self):
        if self.window < 2:
            raise ValueError("window must be at least 2")

    def membership(self, q, eps: float | None = None) -> DomainMembership:
        """Locate q relative to D by a recentred window of sphere checks.

        The window is centred on the translate index nearest to q, so the
        test is A-equivariant; spheres beyond the window are farther than
        the window-edge ones by the closed-form distance growth.
        """
        eps = default_eps() if eps is None else eps
        if not isinstance(q, HeisPoint):
            if is_infinity(q):
                return DomainMembership(DomainLocation.INSIDE)
            q = heis_of_lift(q)
        p = self.params
        fam = SphereFamily(p)
        k0 = int(round(q.z.real / p.ell_a)) if p.ell_a > 1e-12 else 0
        contacts = []
        for k in range(k0 - self.window, k0 + self.window + 1):
            for kind in ("+", "-"):
                d = cygan_distance(q, fam.sphere(kind, k).center)
                if d < 1.0 - eps:
                    return DomainMembership(
                        DomainLocation.OUTSIDE, ((kind, k),)
                    )
                if abs(d - 1.0) <= eps:
                    contacts.append((kind, k))
        if contacts:
            return DomainMembership(DomainLocation.ON_SIDE, tuple(contacts))
        return DomainMembership(DomainLocation.INSIDE)


def side_pairing(group: GroupData, kind: str, k: int) -> GroupElement:
    """sigma(s_k^+) = A^k S A^-k, sigma(s_k^-) = A^k S^-1 A^-k."""
    Ak = group.A.power(k)
    core = group.S if kind == "+" else group.S.inverse()
    return Ak @ core @ Ak.inverse()


def ridge_cycle(group: GroupData, tag: RidgeTag, eps: float = 1e-9) -> tuple[GroupElement, int]:
    """Cycle transformation of a ridge and its order (always three).

    rho(r_k^+) = A^k S A^-k and rho(r_k^-) = A^(k-1) S A^-k; the order is
    certified by cubing to a scalar matrix with unit-cube scalar, anything
    else signals numerical degradation.
    """
    A, S = group.A, group.S
    if tag.kind == "+":
        rho = A.power(tag.k) @ S @ A.power(-tag.k)
    else:
        rho = A.power(tag.k - 1) @ S @ A.power(-tag.k)
    cube = rho.power(3)
    lam = cube.m[0, 0]
    if not cube.is_scalar(1e-8) or abs(lam**3 - 1.0) > 1e-8:
        raise ArithmeticError(f"cycle transformation of {tag} is not of order 3")
    return rho, 3


def presentation(p: Params, eps: float | None = None) -> dict:
    """Group presentations delivered by the Poincare polyhedron theorem.

    Only available on the closure of Z (interior or boundary); outside,
    the polyhedron is not known to be fundamental and the call refuses.
    """
    region = region_classify(p, eps)
    if region.tag not in (RegionTag.Z_INTERIOR, RegionTag.Z_BOUNDARY):
        raise ValueError(f"no certified presentation outside Z (region {region.tag.value})")
    return {
        "generators_SA": ["S", "A"],
        "relations_SA": ["S^3", "(A^-1 S)^3"],
        "generators_ST": ["S", "T"],
        "relations_ST": ["S^3", "T^3"],
    }


def freeness_probe(p: Params, max_len: int, delta: float = 1e-6) -> dict:
    """Sanity probe: no short word evaluates to the projective identity.

    Enumerates all non-empty reduced Z3 * Z3 words up to ``max_len``
    syllables and all reduced free words in A, B and inverses up to length
    ``max_len``, and records the minimum projective distance from the
    identity.  Violations are returned as counterexample words (they would
    point at a bug in the matrices, not at the group theory).
    """
    gd = build_group(p)
    counterexamples = []
    min_dist = math.inf
    worst = None
    for w in enumerate_reduced_words(max_len):
        d = projective_identity_distance(evaluate_word(w, gd.S, gd.T))
        if d < min_dist:
            min_dist, worst = d, word_str(w)
        if d < delta:
            counterexamples.append(word_str(w))
    # reduced words in the free generators A, B
    mats = {
        "A": gd.A.m,
        "a": gd.A.inverse().m,
        "B": gd.B.m,
        "b": gd.B.inverse().m,
    }
    inverse_letter = {"A": "a", "a": "A", "B": "b", "b": "B"}
    min_ab = math.inf
    worst_ab = None
    stack: list[tuple[str, np.ndarray]] = [(l, mats[l]) for l in "AaBb"]
    while stack:
        word, m = stack.pop()
        d = projective_identity_distance(m)
        if d < min_ab:
            min_ab, worst_ab = d, word
        if d < delta:
            counterexamples.append(word)
        if len(word) < max_len:
            for l in "AaBb":
                if l != inverse_letter[word[-1]]:
                    stack.append((word + l, m @ mats[l]))
    return {
        "max_len": max_len,
        "delta": delta,
        "min_distance_st_words": min_dist,
        "closest_st_word": worst,
        "min_distance_ab_words": min_ab,
        "closest_ab_word": worst_ab,
        "counterexamples": counterexamples,
    }
