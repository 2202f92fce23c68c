"""Root datum, Weyl group and affine linkage combinatorics for GSp4/Sp4.

Weights are pairs (a, b) with an optional central character c satisfying
a + b = c (mod 2).  All alcove and linkage arithmetic uses (a, b) only; c is
carried as metadata.  rho is fixed as (2, 1), the central part of the usual
(2, 1, 3) being dropped consistently.

The four p-restricted alcoves are read off the coordinates of lambda + rho:
the inequalities below are stated for (a, b) = lambda + rho.  The automorphic
reparametrization (k, l) = lambda + (3, 3) gives the same regions under
(a, b) = (k - 1, l - 2), which fixes the reading of the alcove inequalities.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional


class WallWeight(Exception):
    """Raised when a weight sits on the reflecting wall (pairing = 0 mod p)."""


class UnknownDecomposition(Exception):
    """Raised for the boundary weights whose Weyl module has no tabulated
    decomposition (a - b = p - 1 with p/2 < b + 1 < p, or p = 2, (1,1))."""


@dataclass(frozen=True)
class Weight:
    """Element of X*(T), labelled (a, b) with optional central character c."""

    a: int
    b: int
    c: Optional[int] = None

    def __post_init__(self) -> None:
        if self.c is not None and (self.a + self.b - self.c) % 2 != 0:
            raise ValueError(
                f"central character parity violated: a+b={self.a + self.b}, c={self.c}"
            )

    def ab(self) -> tuple[int, int]:
        return (self.a, self.b)

    def add(self, other: "Weight") -> "Weight":
        c = None
        if self.c is not None and other.c is not None:
            c = self.c + other.c
        return Weight(self.a + other.a, self.b + other.b, c)

    def sub(self, other: "Weight") -> "Weight":
        c = None
        if self.c is not None and other.c is not None:
            c = self.c - other.c
        return Weight(self.a - other.a, self.b - other.b, c)

    def scale(self, n: int) -> "Weight":
        return Weight(n * self.a, n * self.b, None if self.c is None else n * self.c)

    def drop_c(self) -> "Weight":
        return Weight(self.a, self.b)

    def same_ab(self, other: "Weight") -> bool:
        return self.a == other.a and self.b == other.b

    def to_json(self) -> list[int] | dict[str, int]:
        if self.c is None:
            return [self.a, self.b]
        return {"a": self.a, "b": self.b, "c": self.c}

    @staticmethod
    def from_json(data) -> "Weight":
        if isinstance(data, dict):
            return Weight(data["a"], data["b"], data.get("c"))
        return Weight(data[0], data[1])


RHO = Weight(2, 1)


@dataclass(frozen=True)
class Root:
    """A root of Sp4 together with its coroot, both as (a, b) vectors."""

    name: str
    vector: Weight
    coroot_vector: Weight


ALPHA = Root("alpha", Weight(1, -1), Weight(1, -1))
BETA = Root("beta", Weight(0, 2), Weight(0, 1))
ALPHA_BETA = Root("alpha+beta", Weight(1, 1), Weight(1, 1))
TWO_ALPHA_BETA = Root("2alpha+beta", Weight(2, 0), Weight(1, 0))

POSITIVE_ROOTS = (ALPHA, BETA, ALPHA_BETA, TWO_ALPHA_BETA)

ROOT_BY_NAME = {r.name: r for r in POSITIVE_ROOTS}


def root(name: str) -> Root:
    """Look up a positive root by name (alpha, beta, alpha+beta, 2alpha+beta)."""
    try:
        return ROOT_BY_NAME[name]
    except KeyError:
        raise KeyError(f"unknown root {name!r}; expected one of {sorted(ROOT_BY_NAME)}")


def pair(lam: Weight, gamma: Root) -> int:
    """Pairing <lambda, gamma-coroot> = a*x + b*y for coroot (x, y)."""
    cr = gamma.coroot_vector
    return lam.a * cr.a + lam.b * cr.b


# ---------------------------------------------------------------------------
# Weyl group: the dihedral group of order 8 generated by
#   s0 (a,b) -> (b,a)     and     s1 (a,b) -> (a,-b),
# realized as signed permutation matrices acting on (a, b).


class WeylElement:
    """One of the 8 elements of W = <s0, s1>, stored as a 2x2 signed matrix.

    The canonical word is the unique reduced expression (with w0 written as
    s0s1s0s1); words are compared through the matrix action, so any product
    of generators normalizes to one of the 8 canonical forms.
    """

    __slots__ = ("m",)

    def __init__(self, m: tuple[int, int, int, int]):
        self.m = m

    def act(self, lam: Weight) -> Weight:
        m = self.m
        return Weight(m[0] * lam.a + m[1] * lam.b, m[2] * lam.a + m[3] * lam.b, lam.c)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        a, b, c, d = self.m
        e, f, g, h = other.m
        return WeylElement((a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h))

    def inverse(self) -> "WeylElement":
        a, b, c, d = self.m
        det = a * d - b * c
        return WeylElement((d * det, -b * det, -c * det, a * det))

    def __eq__(self, other) -> bool:
        return isinstance(other, WeylElement) and self.m == other.m

    def __hash__(self) -> int:
        return hash(self.m)

    @property
    def word(self) -> str:
        return _WORD_OF_MATRIX[self.m]

    def length(self) -> int:
        w = self.word
        return 0 if w == "1" else w.count("s")

    def order(self) -> int:
        n, x = 1, self
        while x != W_ID:
            x = x * self
            n += 1
        return n

    def __repr__(self) -> str:
        return f"WeylElement({self.word})"


W_ID = WeylElement((1, 0, 0, 1))
S0 = WeylElement((0, 1, 1, 0))
S1 = WeylElement((1, 0, 0, -1))


def weyl_from_word(word: str) -> WeylElement:
    """Build a Weyl element from a word like 's0s1s0' ('1' or '' = identity)."""
    w = W_ID
    token = word.replace(" ", "")
    if token in ("1", "e", ""):
        return w
    i = 0
    while i < len(token):
        if token[i : i + 2] == "s0":
            w = w * S0
        elif token[i : i + 2] == "s1":
            w = w * S1
        else:
            raise ValueError(f"cannot parse Weyl word {word!r}")
        i += 2
    return w


_CANONICAL_WORDS = ("1", "s0", "s1", "s0s1", "s1s0", "s0s1s0", "s1s0s1", "s0s1s0s1")

_WORD_OF_MATRIX = {weyl_from_word(w).m: w for w in _CANONICAL_WORDS}

WEYL_GROUP = tuple(weyl_from_word(w) for w in _CANONICAL_WORDS)

W0 = weyl_from_word("s0s1s0s1")

# Minimal-length representatives of W_M \ W for the Siegel Levi, by length.
W_M_COSET_REPS = tuple(weyl_from_word(w) for w in ("1", "s1", "s1s0", "s1s0s1"))


def dot_act(w: WeylElement, lam: Weight) -> Weight:
    """rho-shifted action w.lam = w(lam + rho) - rho."""
    shifted = w.act(Weight(lam.a + RHO.a, lam.b + RHO.b, lam.c))
    return Weight(shifted.a - RHO.a, shifted.b - RHO.b, lam.c)


# ---------------------------------------------------------------------------
# Alcoves and standard predicates.

C0, C1, C2, C3, NON_ALCOVE = "C0", "C1", "C2", "C3", "non-alcove"

ALCOVE_LABELS = (C0, C1, C2, C3)


def alcove_of(lam: Weight, p: int) -> str:
    """Label of the p-restricted alcove containing lam, or 'non-alcove'.

    The defining strict inequalities are evaluated on (a, b) = lam + rho:
      C0: a > b > 0, a + b < p
      C1: a + b > p, b < a < p
      C2: a - b < p < a, a + b < 2p
      C3: b < p, a + b > 2p, a - b < p
    """
    if p < 3:
        raise ValueError("alcove classification needs p >= 3")
    a, b = lam.a + RHO.a, lam.b + RHO.b
    if a > b > 0 and a + b < p:
        return C0
    if a + b > p and b < a < p:
        return C1
    if a - b < p < a and a + b < 2 * p:
        return C2
    if b < p and a + b > 2 * p and a - b < p:
        return C3
    return NON_ALCOVE


def is_p_restricted(lam: Weight, p: int) -> bool:
    """0 <= a - b < p and 0 <= b < p."""
    return 0 <= lam.a - lam.b < p and 0 <= lam.b < p


def is_p_small(lam: Weight, p: int) -> bool:
    """|<lam + rho, gamma-coroot>| < p for all four positive roots."""
    shifted = lam.add(RHO)
    return all(abs(pair(shifted, g)) < p for g in POSITIVE_ROOTS)


def is_delta_generic(lam: Weight, p: int, delta: int) -> bool:
    """For each root the distance of <lam, coroot> to p*Z is at least delta."""
    for g in POSITIVE_ROOTS:
        v = pair(lam, g) % p
        if min(v, p - v) < delta:
            return False
    return True


def is_regular(lam: Weight, p: int) -> bool:
    """Regular (X_reg) weights: p-restricted with a - b, b < p - 1."""
    return 0 <= lam.a - lam.b < p - 1 and 0 <= lam.b < p - 1


@dataclass(frozen=True)
class AffineReflection:
    """The affine reflection s_{gamma,n} across <lam + rho, coroot> = n*p."""

    gamma: Root
    n: int


def affine_reflect(lam: Weight, r: AffineReflection, p: int) -> Weight:
    """s_{gamma,n}.lam = lam + (n*p - <lam + rho, coroot>) * gamma."""
    m = r.n * p - pair(lam.add(RHO), r.gamma)
    v = r.gamma.vector
    return Weight(lam.a + m * v.a, lam.b + m * v.b, lam.c)


def up_arrow_min(lam: Weight, gamma: Root, p: int) -> tuple[Weight, AffineReflection]:
    """Reflect lam in the positive direction across the closest gamma-wall.

    Returns (mu, s_{gamma,n}) where mu = s_{gamma,n}.lam, mu - lam is a
    positive multiple of gamma, and n is minimal.  Raises WallWeight when
    lam lies on a gamma-wall (pairing divisible by p).
    """
    h = pair(lam.add(RHO), gamma)
    if h % p == 0:
        raise WallWeight(f"{lam} lies on a wall for {gamma.name} (pairing {h})")
    # smallest n with n*p - h > 0
    n = h // p + 1
    r = AffineReflection(gamma, n)
    return affine_reflect(lam, r, p), r


# Wall sequence taking C0 to C1 to C2 to C3; derived from the closed forms
# (p-b-3, p-a-3) and (p+b-1, p-a-3) for the first two reflections and
# verified against up_arrow_min by the test suite.
_CHAIN_WALLS = (ALPHA_BETA, TWO_ALPHA_BETA, ALPHA_BETA)


def linked_chain_C0(lam0: Weight, p: int) -> list[Weight]:
    """The chain of minimal positive reflections C0 -> C1 -> C2 -> C3."""
    if alcove_of(lam0, p) != C0:
        raise ValueError(f"{lam0} is not in C0 for p={p}")
    chain = []
    lam = lam0
    for wall, target in zip(_CHAIN_WALLS, (C1, C2, C3)):
        lam, _ = up_arrow_min(lam, wall, p)
        got = alcove_of(lam, p)
        if got != target:
            raise AssertionError(
                f"chain step from {lam0} landed in {got}, expected {target}"
            )
        chain.append(lam)
    return chain


def jh_factors(lam: Weight, p: int) -> list[Weight]:
    """Highest weights of the simple factors of the mod-p Weyl module V(lam).

    Socle first.  For the four alcoves the second factor is the tabulated
    one; a p-restricted weight outside the alcoves gives [lam] except on the
    excluded boundary (a - b = p - 1 with p/2 < b + 1 < p, or p = 2 and
    lam = (1, 1)) where UnknownDecomposition is raised.
    """
    a, b, c = lam.a, lam.b, lam.c
    if not (lam.a >= lam.b and is_p_restricted(lam, p)):
        raise ValueError(f"{lam} is not dominant p-restricted for p={p}")
    label = alcove_of(lam, p)
    if label == C0:
        return [lam]
    if label == C1:
        return [lam, Weight(p - b - 3, p - a - 3, c)]
    if label == C2:
        return [lam, Weight(2 * p - a - 4, b, c)]
    if label == C3:
        return [lam, Weight(2 * p - b - 3, 2 * p - a - 3, c)]
    if a - b == p - 1 and p / 2 < b + 1 < p:
        raise UnknownDecomposition(f"no tabulated decomposition for {lam}, p={p}")
    if p == 2 and (a, b) == (1, 1):
        raise UnknownDecomposition(f"no tabulated decomposition for {lam}, p=2")
    return [lam]


TO_AUTOMORPHIC = "to_automorphic"
TO_INTRINSIC = "to_intrinsic"

_AUT_SHIFT = Weight(3, 3)


def autweight_convert(lam: Weight, direction: str) -> Weight:
    """Convert between intrinsic lam and automorphic (k, l) = lam + (3, 3).

    The two directions are mutually inverse.  Note the separate line-bundle
    convention: the bundle of weight (k, l) is the automorphic sheaf of the
    *swapped* B-representation weight (l, k); use fb_swap when crossing that
    convention boundary.
    """
    if direction == TO_AUTOMORPHIC:
        return Weight(lam.a + 3, lam.b + 3, lam.c)
    if direction == TO_INTRINSIC:
        return Weight(lam.a - 3, lam.b - 3, lam.c)
    raise ValueError(f"unknown direction {direction!r}")


def fb_swap(lam: Weight) -> Weight:
    """Swap (k, l) -> (l, k): line-bundle weight vs B-representation weight."""
    return Weight(lam.b, lam.a, lam.c)


def bgg_weights(k: int, l: int) -> dict:
    """Line-bundle weights and Hodge jumps of the BGG complex for (k, l).

    shimura: the 4 pushed-forward bundle weights, cohomological order;
    flag: the 8 flag-space line-bundle weights, by complex degree;
    hodge_jumps: the filtration jumps [0, l-2, k-1, k+l-3].
    A warning is emitted when (k-3, l-3) is outside C0, where the
    quasi-isomorphism backing this list is not available.
    """
    shimura = [
        Weight(3 - l, 3 - k),
        Weight(l - 1, 3 - k),
        Weight(k, 4 - l),
        Weight(k, l),
    ]
    flag = [
        Weight(3 - l, 3 - k),
        Weight(2 - k, 4 - l),
        Weight(l - 1, 3 - k),
        Weight(2 - k, l),
        Weight(k, 4 - l),
        Weight(3 - l, k + 1),
        Weight(k, l),
        Weight(l - 1, k + 1),
    ]
    return {
        "shimura": shimura,
        "flag": flag,
        "hodge_jumps": [0, l - 2, k - 1, k + l - 3],
    }


def bgg_weights_alcove_warning(k: int, l: int, p: int) -> Optional[str]:
    """Warning string when (k-3, l-3) is not in C0, else None."""
    lam = Weight(k - 3, l - 3)
    if alcove_of(lam, p) != C0:
        return f"(k-3, l-3) = ({k - 3}, {l - 3}) is not in C0 for p={p}"
    return None


def weights_in_box(lo: int, hi: int) -> Iterator[Weight]:
    """All (a, b) with lo <= a, b <= hi (central character unset)."""
    for a in range(lo, hi + 1):
        for b in range(lo, hi + 1):
            yield Weight(a, b)
