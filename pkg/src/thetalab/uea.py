"""Exact universal-enveloping-algebra kernel for sp4.

Structure constants come from a concrete 4x4 symplectic matrix realization
(J = [[0,S],[-S,0]], S antidiagonal) rather than a transcribed table, so all
signs are realization-consistent; everything downstream (proportionality,
vanishing, dimensions) is independent of that sign choice.

PBW basis order: f_beta < f_alpha+beta < f_2alpha+beta < f_alpha < h_alpha <
h_beta < e_alpha < e_beta < e_alpha+beta < e_2alpha+beta.  Coefficients live
in one of three exact rings: the rationals, the rationals with nonnegative
p-valuation (a guard model of the p-adic integers, adequate because only
finitely many exact coefficients ever appear), or the prime field.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import _linalg
from .weights import (
    ALPHA,
    ALPHA_BETA,
    BETA,
    TWO_ALPHA_BETA,
    AffineReflection,
    Root,
    Weight,
    affine_reflect,
    alcove_of,
    pair,
)


class RealizationInconsistent(Exception):
    """A matrix bracket left the integer span of the chosen basis."""


class RingMismatch(Exception):
    """Operands live over different coefficient rings."""


class NotDivisible(Exception):
    """Right division in U(u-) has no solution."""


class WrongRing(Exception):
    """Operation requires a specific coefficient ring."""


class NormalizationFailed(Exception):
    """The characteristic-0 singular space was not 1-dimensional."""


class NotPositiveReflection(Exception):
    """The requested reflection does not move the weight up."""


class AlcoveViolation(Exception):
    """Weight outside the alcove required by the operation."""


class PreconditionViolation(Exception):
    """Numeric precondition of a verification routine fails."""


# ---------------------------------------------------------------------------
# Coefficient rings.


def _val_p(x: Fraction, p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    if x == 0:
        raise ValueError("valuation of 0")
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


class Rationals:
    """Exact rational coefficients."""

    name = "q"

    def normalize(self, x) -> Fraction:
        return Fraction(x)

    def add(self, x, y):
        return x + y

    def mul(self, x, y):
        return x * y

    def neg(self, x):
        return -x

    def scale_int(self, n: int, x):
        return n * x

    def divide(self, x, y):
        if y == 0:
            raise ZeroDivisionError("division by zero")
        return Fraction(x) / Fraction(y)

    def is_zero(self, x) -> bool:
        return x == 0

    def one(self):
        return Fraction(1)

    def is_field(self) -> bool:
        return True

    def coeff_to_json(self, x) -> str:
        return str(Fraction(x))

    def coeff_from_json(self, s: str):
        return Fraction(s)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("q")

    def __repr__(self):
        return "Rationals()"


class PLocalIntegers:
    """Rationals of nonnegative p-valuation, with the valuation guarded.

    Division producing negative p-valuation raises; this is the exact
    fragment of Z_p that finitely many coefficients ever need.
    """

    name = "zp"

    def __init__(self, p: int):
        self.p = p

    def normalize(self, x) -> Fraction:
        x = Fraction(x)
        if x != 0 and _val_p(x, self.p) < 0:
            raise WrongRing(f"{x} has negative {self.p}-valuation")
        return x

    def add(self, x, y):
        return x + y

    def mul(self, x, y):
        return x * y

    def neg(self, x):
        return -x

    def scale_int(self, n: int, x):
        return n * x

    def divide(self, x, y):
        if y == 0:
            raise ZeroDivisionError("division by zero")
        out = Fraction(x) / Fraction(y)
        if out != 0 and _val_p(out, self.p) < 0:
            raise WrongRing(
                f"division {x}/{y} leaves the {self.p}-local integers"
            )
        return out

    def is_zero(self, x) -> bool:
        return x == 0

    def one(self):
        return Fraction(1)

    def is_field(self) -> bool:
        return False

    def valuation(self, x) -> int:
        return _val_p(Fraction(x), self.p)

    def coeff_to_json(self, x) -> str:
        return str(Fraction(x))

    def coeff_from_json(self, s: str):
        return self.normalize(Fraction(s))

    def __eq__(self, other):
        return isinstance(other, PLocalIntegers) and other.p == self.p

    def __hash__(self):
        return hash(("zp", self.p))

    def __repr__(self):
        return f"PLocalIntegers({self.p})"


class PrimeField:
    """The field with p elements, values stored in [0, p)."""

    name = "fp"

    def __init__(self, p: int):
        self.p = p

    def normalize(self, x) -> int:
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise WrongRing(f"{x} is not {self.p}-integral")
            return x.numerator * pow(x.denominator, self.p - 2, self.p) % self.p
        return int(x) % self.p

    def add(self, x, y):
        return (x + y) % self.p

    def mul(self, x, y):
        return (x * y) % self.p

    def neg(self, x):
        return (-x) % self.p

    def scale_int(self, n: int, x):
        return (n * x) % self.p

    def divide(self, x, y):
        if y % self.p == 0:
            raise ZeroDivisionError("division by zero mod p")
        return x * pow(y, self.p - 2, self.p) % self.p

    def is_zero(self, x) -> bool:
        return x % self.p == 0

    def one(self):
        return 1

    def is_field(self) -> bool:
        return True

    def coeff_to_json(self, x) -> str:
        return str(x % self.p)

    def coeff_from_json(self, s: str):
        return int(s) % self.p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("fp", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


def ring_to_json(ring) -> dict:
    out = {"ring": ring.name}
    if ring.name in ("zp", "fp"):
        out["p"] = ring.p
    return out


def ring_from_json(data: dict):
    name = data["ring"]
    if name == "q":
        return Rationals()
    if name == "zp":
        return PLocalIntegers(data["p"])
    if name == "fp":
        return PrimeField(data["p"])
    raise ValueError(f"unknown ring {name!r}")


# ---------------------------------------------------------------------------
# The matrix realization and its structure constants.

BASIS_NAMES = (
    "f_beta",
    "f_alpha+beta",
    "f_2alpha+beta",
    "f_alpha",
    "h_alpha",
    "h_beta",
    "e_alpha",
    "e_beta",
    "e_alpha+beta",
    "e_2alpha+beta",
)

GEN_INDEX = {name: i for i, name in enumerate(BASIS_NAMES)}

F_BETA, F_ALPHA_BETA, F_2ALPHA_BETA, F_ALPHA = 0, 1, 2, 3
H_ALPHA, H_BETA = 4, 5
E_ALPHA, E_BETA, E_ALPHA_BETA, E_2ALPHA_BETA = 6, 7, 8, 9

BASIS_WEIGHTS = (
    Weight(0, -2),
    Weight(-1, -1),
    Weight(-2, 0),
    Weight(-1, 1),
    Weight(0, 0),
    Weight(0, 0),
    Weight(1, -1),
    Weight(0, 2),
    Weight(1, 1),
    Weight(2, 0),
)

F_INDEX_OF_ROOT = {
    "beta": F_BETA,
    "alpha+beta": F_ALPHA_BETA,
    "2alpha+beta": F_2ALPHA_BETA,
    "alpha": F_ALPHA,
}

E_INDEX_OF_ROOT = {
    "alpha": E_ALPHA,
    "beta": E_BETA,
    "alpha+beta": E_ALPHA_BETA,
    "2alpha+beta": E_2ALPHA_BETA,
}


def _mat_zero():
    return [[0] * 4 for _ in range(4)]


def _mat_unit(i, j):
    m = _mat_zero()
    m[i][j] = 1
    return m


def _mat_add(a, b, sign=1):
    return [[a[i][j] + sign * b[i][j] for j in range(4)] for i in range(4)]


def _mat_mul(a, b):
    return [
        [sum(a[i][k] * b[k][j] for k in range(4)) for j in range(4)]
        for i in range(4)
    ]


def _mat_comm(a, b):
    return _mat_add(_mat_mul(a, b), _mat_mul(b, a), sign=-1)


@dataclass(frozen=True)
class LieAlgebraC2:
    """The 10-dimensional symplectic Lie algebra with tabulated brackets."""

    matrices: tuple
    bracket_table: tuple  # bracket_table[i][j] = ((k, coeff), ...)

    def bracket(self, i: int, j: int):
        return self.bracket_table[i][j]


def _symplectic_form():
    # J = [[0, S], [-S, 0]] with S antidiagonal
    j = _mat_zero()
    j[0][3] = 1
    j[1][2] = 1
    j[2][1] = -1
    j[3][0] = -1
    return j


def build_sp4() -> LieAlgebraC2:
    """Realize the basis as 4x4 matrices and tabulate integer brackets.

    Root vectors are weight vectors for the torus diag(t1, t2, t2^-1, t1^-1);
    every matrix X satisfies X^T J + J X = 0 for the antidiagonal symplectic
    form, and every commutator must decompose integrally over the basis.
    """
    e_alpha = _mat_add(_mat_unit(0, 1), _mat_unit(2, 3), sign=-1)
    f_alpha = _mat_add(_mat_unit(1, 0), _mat_unit(3, 2), sign=-1)
    e_beta = _mat_unit(1, 2)
    f_beta = _mat_unit(2, 1)
    e_ab = _mat_add(_mat_unit(0, 2), _mat_unit(1, 3))
    f_ab = _mat_add(_mat_unit(2, 0), _mat_unit(3, 1))
    e_2ab = _mat_unit(0, 3)
    f_2ab = _mat_unit(3, 0)
    h_alpha = _mat_comm(e_alpha, f_alpha)
    h_beta = _mat_comm(e_beta, f_beta)

    mats = (
        f_beta,
        f_ab,
        f_2ab,
        f_alpha,
        h_alpha,
        h_beta,
        e_alpha,
        e_beta,
        e_ab,
        e_2ab,
    )

    j = _symplectic_form()
    for name, x in zip(BASIS_NAMES, mats):
        xt = [[x[jj][ii] for jj in range(4)] for ii in range(4)]
        cond = _mat_add(_mat_mul(xt, j), _mat_mul(j, x))
        if any(any(row) for row in cond):
            raise RealizationInconsistent(f"{name} is not symplectic")

    def decompose(m):
        """Write a matrix as an integer combination of the 10 basis matrices."""
        coeffs = []
        rest = [row[:] for row in m]
        # root-vector entries are determined by a single matrix slot
        slots = {
            F_BETA: (2, 1),
            F_ALPHA_BETA: (2, 0),
            F_2ALPHA_BETA: (3, 0),
            F_ALPHA: (1, 0),
            E_ALPHA: (0, 1),
            E_BETA: (1, 2),
            E_ALPHA_BETA: (0, 2),
            E_2ALPHA_BETA: (0, 3),
        }
        out = {}
        for idx, (r, c) in slots.items():
            v = rest[r][c]
            if v:
                out[idx] = v
                rest = _mat_add(rest, [[v * x for x in row] for row in mats[idx]], -1)
        # Cartan part: diag(x, -x + y, x - y, -x) for h-coordinates (x, y)
        x, y = rest[0][0], rest[1][1] + rest[0][0]
        if x:
            out[H_ALPHA] = x
            rest = _mat_add(rest, [[x * v for v in row] for row in mats[H_ALPHA]], -1)
        if y:
            out[H_BETA] = y
            rest = _mat_add(rest, [[y * v for v in row] for row in mats[H_BETA]], -1)
        if any(any(row) for row in rest):
            raise RealizationInconsistent(f"bracket left the integer span: {m}")
        return tuple(sorted(out.items()))

    table = []
    for i in range(10):
        row = []
        for k in range(10):
            row.append(decompose(_mat_comm(mats[i], mats[k])))
        table.append(tuple(row))

    algebra = LieAlgebraC2(
        matrices=tuple(tuple(tuple(r) for r in m) for m in mats),
        bracket_table=tuple(table),
    )
    _check_weights(algebra)
    return algebra


def _check_weights(algebra: LieAlgebraC2) -> None:
    """Adjoint h-action must reproduce the declared weights."""
    for i in range(10):
        w = BASIS_WEIGHTS[i]
        expect_a = pair(w, ALPHA)  # h_alpha eigenvalue
        expect_b = pair(w, BETA)  # h_beta eigenvalue
        for h, expect in ((H_ALPHA, expect_a), (H_BETA, expect_b)):
            br = dict(algebra.bracket(h, i))
            val = br.get(i, 0)
            rest = {k: v for k, v in br.items() if k != i and v}
            if val != expect or rest:
                raise RealizationInconsistent(
                    f"adjoint torus action wrong on {BASIS_NAMES[i]}"
                )


_SP4: Optional[LieAlgebraC2] = None


def sp4() -> LieAlgebraC2:
    global _SP4
    if _SP4 is None:
        _SP4 = build_sp4()
    return _SP4


def jacobi_defect(algebra: LieAlgebraC2, i: int, j: int, k: int) -> dict:
    """[[i,j],k] + [[j,k],i] + [[k,i],j] as a coefficient map (empty = holds)."""
    total: dict[int, int] = {}

    def acc(pairs_outer, other, sign=1):
        for idx, c in pairs_outer:
            for idx2, c2 in algebra.bracket(idx, other):
                total[idx2] = total.get(idx2, 0) + sign * c * c2

    acc(algebra.bracket(i, j), k)
    acc(algebra.bracket(j, k), i)
    acc(algebra.bracket(k, i), j)
    return {k2: v for k2, v in total.items() if v}


# ---------------------------------------------------------------------------
# PBW normal forms.  Monomials are 10-tuples of exponents in the basis order;
# a monomial is normal by construction.  Products of normal monomials have
# integer coefficients (structure constants are integers), so the rewriting
# engine works over Z and rings enter only at the bilinear extension.

ZERO_MONO = (0,) * 10

_MONO_GEN_CACHE: dict = {}


def _mono_weight(mono: tuple) -> Weight:
    a = b = 0
    for i, n in enumerate(mono):
        if n:
            w = BASIS_WEIGHTS[i]
            a += n * w.a
            b += n * w.b
    return Weight(a, b)


def _mono_times_gen(mono: tuple, g: int) -> dict:
    """Right-multiply a normal monomial by a generator; integer coefficients."""
    key = (mono, g)
    cached = _MONO_GEN_CACHE.get(key)
    if cached is not None:
        return cached
    top = max((i for i in range(10) if mono[i]), default=-1)
    if top <= g:
        out_mono = list(mono)
        out_mono[g] += 1
        result = {tuple(out_mono): 1}
        _MONO_GEN_CACHE[key] = result
        return result
    # mono = rest * b_top ; push g through the last factor
    rest = list(mono)
    rest[top] -= 1
    rest = tuple(rest)
    result: dict[tuple, int] = {}
    # (rest * g) * b_top
    for m1, c1 in _mono_times_gen(rest, g).items():
        for m2, c2 in _mono_times_gen(m1, top).items():
            result[m2] = result.get(m2, 0) + c1 * c2
    # rest * [b_top, g]
    for idx, c in sp4().bracket(top, g):
        for m2, c2 in _mono_times_gen(rest, idx).items():
            result[m2] = result.get(m2, 0) + c * c2
    result = {m: c for m, c in result.items() if c}
    _MONO_GEN_CACHE[key] = result
    return result


def _mono_expand(mono: tuple) -> Iterable[int]:
    for i in range(10):
        for _ in range(mono[i]):
            yield i


def _mono_times_mono(m1: tuple, m2: tuple) -> dict:
    """Product of two normal monomials as an integer coefficient map."""
    acc = {m1: 1}
    for g in _mono_expand(m2):
        nxt: dict[tuple, int] = {}
        for m, c in acc.items():
            for m2_, c2 in _mono_times_gen(m, g).items():
                nxt[m2_] = nxt.get(m2_, 0) + c * c2
        acc = {m: c for m, c in nxt.items() if c}
    return acc


class UEAElement:
    """Element of U(g) in PBW normal form over an exact coefficient ring."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms: Optional[dict] = None):
        self.ring = ring
        cleaned = {}
        for mono, coeff in (terms or {}).items():
            c = ring.normalize(coeff)
            if not ring.is_zero(c):
                cleaned[tuple(mono)] = c
        self.terms = cleaned

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(ring) -> "UEAElement":
        return UEAElement(ring, {})

    @staticmethod
    def one(ring) -> "UEAElement":
        return UEAElement(ring, {ZERO_MONO: ring.one()})

    @staticmethod
    def generator(ring, name_or_index) -> "UEAElement":
        idx = (
            name_or_index
            if isinstance(name_or_index, int)
            else GEN_INDEX[name_or_index]
        )
        mono = [0] * 10
        mono[idx] = 1
        return UEAElement(ring, {tuple(mono): ring.one()})

    @staticmethod
    def monomial(ring, exponents: Sequence[int], coeff=1) -> "UEAElement":
        return UEAElement(ring, {tuple(exponents): coeff})

    # -- basic algebra -------------------------------------------------------

    def _require_same_ring(self, other: "UEAElement") -> None:
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring!r} vs {other.ring!r}")

    def add(self, other: "UEAElement") -> "UEAElement":
        self._require_same_ring(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = self.ring.add(out.get(m, self.ring.normalize(0)), c)
        return UEAElement(self.ring, out)

    def sub(self, other: "UEAElement") -> "UEAElement":
        return self.add(other.scale(-1))

    def scale(self, n) -> "UEAElement":
        c0 = self.ring.normalize(n)
        return UEAElement(
            self.ring, {m: self.ring.mul(c0, c) for m, c in self.terms.items()}
        )

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, UEAElement)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ring, tuple(sorted(self.terms.items()))))

    def weight(self) -> Optional[Weight]:
        """Common weight of all monomials, or None if mixed or zero."""
        w = None
        for m in self.terms:
            mw = _mono_weight(m)
            if w is None:
                w = mw
            elif w != mw:
                return None
        return w

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    def supported_on_lowering_part(self) -> bool:
        return all(all(x == 0 for x in m[4:]) for m in self.terms)

    def convert(self, ring) -> "UEAElement":
        """Map coefficients into another ring (e.g. reduction mod p)."""
        return UEAElement(ring, dict(self.terms))

    def to_json(self) -> dict:
        out = ring_to_json(self.ring)
        out["terms"] = [
            {"mono": list(m), "coeff": self.ring.coeff_to_json(c)}
            for m, c in sorted(self.terms.items())
        ]
        return out

    @staticmethod
    def from_json(data: dict) -> "UEAElement":
        ring = ring_from_json(data)
        return UEAElement(
            ring,
            {
                tuple(t["mono"]): ring.coeff_from_json(t["coeff"])
                for t in data["terms"]
            },
        )

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for m, c in sorted(self.terms.items()):
            factors = [
                f"{BASIS_NAMES[i]}^{n}" if n > 1 else BASIS_NAMES[i]
                for i, n in enumerate(m)
                if n
            ]
            mono = "*".join(factors) if factors else "1"
            bits.append(f"({c})*{mono}")
        return " + ".join(bits)


def pbw_normalize(word: Sequence, ring) -> UEAElement:
    """Normal form of a product of generators (names or indices)."""
    acc = {ZERO_MONO: 1}
    for g in word:
        idx = g if isinstance(g, int) else GEN_INDEX[g]
        nxt: dict[tuple, int] = {}
        for m, c in acc.items():
            for m2, c2 in _mono_times_gen(m, idx).items():
                nxt[m2] = nxt.get(m2, 0) + c * c2
        acc = {m: c for m, c in nxt.items() if c}
    return UEAElement(ring, acc)


def multiply(x: UEAElement, y: UEAElement) -> UEAElement:
    """Associative product, bilinear over the common ring."""
    if x.ring != y.ring:
        raise RingMismatch(f"{x.ring!r} vs {y.ring!r}")
    ring = x.ring
    out: dict[tuple, object] = {}
    for m1, c1 in x.terms.items():
        for m2, c2 in y.terms.items():
            c12 = ring.mul(c1, c2)
            for m, n in _mono_times_mono(m1, m2).items():
                prev = out.get(m)
                contrib = ring.scale_int(n, c12)
                out[m] = contrib if prev is None else ring.add(prev, contrib)
    return UEAElement(ring, out)


def gen_power(ring, name_or_index, n: int) -> UEAElement:
    """f^n (or any generator power) as a single PBW monomial."""
    idx = (
        name_or_index if isinstance(name_or_index, int) else GEN_INDEX[name_or_index]
    )
    mono = [0] * 10
    mono[idx] = n
    return UEAElement(ring, {tuple(mono): ring.one()})


# ---------------------------------------------------------------------------
# Verma modules.


@dataclass(frozen=True)
class VermaVector:
    """u tensor v_lambda with u supported on lowering monomials only."""

    lam: Weight
    u: UEAElement

    def __post_init__(self):
        if not self.u.supported_on_lowering_part():
            raise ValueError("Verma vectors carry no h or e factors")

    def weight(self) -> Optional[Weight]:
        w = self.u.weight()
        return None if w is None else self.lam.add(w).drop_c()

    def is_zero(self) -> bool:
        return self.u.is_zero()


def verma_act(x: UEAElement, v: VermaVector) -> VermaVector:
    """Left action of U(g) on u tensor v_lambda.

    The normal form of x*u is evaluated on the highest-weight line: any
    monomial with a raising factor dies, h factors turn into the integers
    <lambda, coroot>, and the lowering part survives.
    """
    prod = multiply(x, v.u)
    ring = prod.ring
    lam = v.lam
    ha = pair(lam, ALPHA)
    hb = pair(lam, BETA)
    out: dict[tuple, object] = {}
    for m, c in prod.terms.items():
        if any(m[i] for i in (E_ALPHA, E_BETA, E_ALPHA_BETA, E_2ALPHA_BETA)):
            continue
        scalar = ha ** m[H_ALPHA] * hb ** m[H_BETA]
        key = m[:4] + (0, 0, 0, 0, 0, 0)
        contrib = ring.scale_int(scalar, c)
        prev = out.get(key)
        out[key] = contrib if prev is None else ring.add(prev, contrib)
    return VermaVector(lam, UEAElement(ring, out))


def lowering_monomials_of_drop(drop: Weight) -> list[tuple]:
    """All PBW monomials in the f's of weight -drop, as 10-tuples.

    drop must be a nonnegative integer combination of the positive roots;
    solutions are enumerated through the two-equation system in the root
    coordinates.  Empty when no combination exists.
    """
    # drop = x*alpha + y*beta with alpha=(1,-1), beta=(0,2)
    x = drop.a
    two_y = drop.b + drop.a
    if two_y % 2 != 0:
        return []
    y = two_y // 2
    if x < 0 or y < 0:
        return []
    out = []
    for n_2ab in range(0, min(x // 2, y) + 1):
        for n_ab in range(0, min(x - 2 * n_2ab, y - n_2ab) + 1):
            n_alpha = x - 2 * n_2ab - n_ab
            n_beta = y - n_2ab - n_ab
            if n_alpha < 0 or n_beta < 0:
                continue
            mono = [0] * 10
            mono[F_BETA] = n_beta
            mono[F_ALPHA_BETA] = n_ab
            mono[F_2ALPHA_BETA] = n_2ab
            mono[F_ALPHA] = n_alpha
            out.append(tuple(mono))
    return sorted(out)


def _field_ops(ring):
    if isinstance(ring, PrimeField):
        return _linalg.FpOps(ring.p)
    return _linalg.QOps()


def singular_vectors(mu: Weight, lam: Weight, ring) -> list[VermaVector]:
    """Basis of the weight-lam vectors of the mu-Verma killed by e_alpha, e_beta.

    lam must sit below mu (mu - lam a nonnegative combination of positive
    roots), matching the direction of Verma homs: a vector here is the image
    of the highest-weight line under some hom from the lam-Verma.  Returns []
    when the weight space is empty or nothing is singular.
    """
    drop = mu.sub(lam).drop_c()
    monos = lowering_monomials_of_drop(drop)
    if not monos:
        return []
    solver_ring = Rationals() if isinstance(ring, PLocalIntegers) else ring
    ops = _field_ops(solver_ring)

    rows = []  # one row per (target monomial, generator); columns = monos
    for gen in (E_ALPHA, E_BETA):
        images = []
        target_index: dict[tuple, int] = {}
        x = UEAElement.generator(solver_ring, gen)
        for m in monos:
            vec = verma_act(
                x, VermaVector(mu, UEAElement.monomial(solver_ring, m))
            )
            img = {}
            for m2, c in vec.u.terms.items():
                if m2 not in target_index:
                    target_index[m2] = len(target_index)
                img[target_index[m2]] = c
            images.append(img)
        nrows = len(target_index)
        for r in range(nrows):
            rows.append(
                [
                    images[j].get(r, ops.zero())
                    for j in range(len(monos))
                ]
            )
    if not rows:
        coeff_vectors = [
            [ops.one() if i == j else ops.zero() for i in range(len(monos))]
            for j in range(len(monos))
        ]
    else:
        coeff_vectors = _linalg.nullspace(rows, ops)

    out = []
    for vec in coeff_vectors:
        terms = {m: c for m, c in zip(monos, vec) if not ops.is_zero(c)}
        if isinstance(ring, PLocalIntegers):
            vmin = min(_val_p(Fraction(c), ring.p) for c in terms.values())
            scale = Fraction(1, ring.p) ** vmin
            terms = {m: Fraction(c) * scale for m, c in terms.items()}
        out.append(VermaVector(mu, UEAElement(ring, terms)))
    return out


# Fixed weight nu with <nu, coroot> = 1 for each positive root; the choice
# does not change the output ray, which the test suite double-checks.
NU_TABLE = {
    "beta": Weight(0, 1),
    "alpha": Weight(1, 0),
    "alpha+beta": Weight(1, 0),
    "2alpha+beta": Weight(1, 1),
}


@dataclass(frozen=True)
class VermaHom:
    """A hom of Verma modules recorded by the singular vector it hits."""

    source: Weight
    target: Weight
    vector: VermaVector
    note: str = ""


def verma_hom_modp(lam: Weight, r: AffineReflection, p: int) -> VermaHom:
    """Mod-p Verma hom for a positive-direction affine reflection.

    Shifts lam by -p*n*nu to land the reflection on the 0-wall, takes the
    (unique up to scalar) characteristic-0 singular vector there, scales it
    to p-valuation 0 and reduces mod p.  The result is checked to be a
    nonzero singular vector in the mod-p target Verma module.
    """
    gamma = r.gamma
    mu = affine_reflect(lam, r, p).drop_c()
    lam = lam.drop_c()
    diff = mu.sub(lam)
    v = gamma.vector
    mult = diff.a // v.a if v.a else diff.b // v.b
    if diff.ab() != (mult * v.a, mult * v.b) or mult <= 0:
        raise NotPositiveReflection(
            f"{r} moves {lam} to {mu}, not a positive multiple of {gamma.name}"
        )
    nu = NU_TABLE[gamma.name]
    return _verma_hom_modp_with_nu(lam, r, p, nu)


def _verma_hom_modp_with_nu(
    lam: Weight, r: AffineReflection, p: int, nu: Weight
) -> VermaHom:
    gamma, n = r.gamma, r.n
    mu = affine_reflect(lam, r, p).drop_c()
    lam_shift = lam.sub(nu.scale(p * n))
    mu_shift = affine_reflect(lam_shift, AffineReflection(gamma, 0), p)
    if mu_shift.sub(lam_shift).ab() != mu.sub(lam).ab():
        raise NotPositiveReflection(
            f"nu={nu.ab()} does not move the reflection to the 0-wall"
        )
    basis = singular_vectors(mu_shift, lam_shift, Rationals())
    if len(basis) != 1:
        raise NormalizationFailed(
            f"characteristic-0 singular space at {mu_shift.ab()}/{lam_shift.ab()} "
            f"has dimension {len(basis)}, expected 1"
        )
    char0 = basis[0].u
    vmin = min(_val_p(c, p) for c in char0.terms.values())
    scale = Fraction(1, p) ** vmin
    fp = PrimeField(p)
    reduced = UEAElement(
        fp, {m: Fraction(c) * scale for m, c in char0.terms.items()}
    )
    if reduced.is_zero():
        raise NormalizationFailed("reduction mod p vanished after normalization")
    vector = VermaVector(mu, reduced)
    for gen in (E_ALPHA, E_BETA):
        if not verma_act(UEAElement.generator(fp, gen), vector).is_zero():
            raise NormalizationFailed(
                f"mod-{p} reduction is not singular (fails {BASIS_NAMES[gen]})"
            )
    note = "pairing-2 companion case" if gamma.name == "2alpha+beta" else ""
    return VermaHom(source=lam, target=mu, vector=vector, note=note)


# ---------------------------------------------------------------------------
# Division and the explicit linkage elements.

_GRLEX_KEY = lambda m: (sum(m), m)  # noqa: E731  (graded-lex on exponents)


def divide_right(u: UEAElement, v: UEAElement) -> UEAElement:
    """The unique q with q*v = u inside U(u-), if it exists.

    Uses leading-monomial elimination in graded-lex order: the associated
    graded algebra is a polynomial ring, so leading monomials multiply
    additively and the quotient is found degree by degree.  Exactness of
    the final remainder is what certifies divisibility (U(u-) has no
    nontrivial zero-divisors, so q is unique).
    """
    if u.ring != v.ring:
        raise RingMismatch(f"{u.ring!r} vs {v.ring!r}")
    if not u.ring.is_field():
        raise WrongRing("right division needs field coefficients")
    if not (u.supported_on_lowering_part() and v.supported_on_lowering_part()):
        raise ValueError("division is defined on the lowering subalgebra only")
    if v.is_zero():
        raise ZeroDivisionError("division by the zero element")
    ring = u.ring
    lead_v = max(v.terms, key=_GRLEX_KEY)
    cv = v.terms[lead_v]
    quotient = UEAElement.zero(ring)
    rem = u
    while not rem.is_zero():
        lead_u = max(rem.terms, key=_GRLEX_KEY)
        q_mono = tuple(a - b for a, b in zip(lead_u, lead_v))
        if any(x < 0 for x in q_mono):
            raise NotDivisible(f"leading monomial {lead_u} not divisible")
        c = ring.divide(rem.terms[lead_u], cv)
        step = UEAElement.monomial(ring, q_mono, c)
        quotient = quotient.add(step)
        rem = rem.sub(multiply(step, v))
        if not rem.is_zero() and _GRLEX_KEY(max(rem.terms, key=_GRLEX_KEY)) >= _GRLEX_KEY(lead_u):
            raise NotDivisible("no quotient: remainder failed to decrease")
    return quotient


def divide_left(u: UEAElement, v: UEAElement) -> UEAElement:
    """The unique q with v*q = u inside U(u-), if it exists."""
    return transpose_lowering(divide_right(transpose_lowering(u), transpose_lowering(v)))


def transpose_lowering(u: UEAElement) -> UEAElement:
    """Antipode on U(u-): negate generators and reverse products.

    This is the involution exchanging the two composition conventions for
    Verma homs; a degree-d monomial picks up the sign (-1)^d.  Plain word
    reversal without the sign is not well-defined on the enveloping algebra.
    """
    if not u.supported_on_lowering_part():
        raise ValueError("transpose is implemented on the lowering subalgebra only")
    ring = u.ring
    out = UEAElement.zero(ring)
    for m, c in u.terms.items():
        word = [i for i in reversed(range(4)) for _ in range(m[i])]
        sign = -1 if len(word) % 2 else 1
        out = out.add(pbw_normalize(word, ring).scale(ring.scale_int(sign, c)))
    return out


def theta_linkage_alpha_beta(k: int, l: int, p: int) -> UEAElement:
    """The mixed lowering element whose Verma hom realizes the C0 -> C1 step.

    Determined by the commuting square through the beta and alpha walls:
    with homs composed as left-module maps (first element on the left) the
    element q satisfies

        f_beta^(l-2) * q = f_alpha^(p-k-l+3) * f_beta^(p-k+1),

    and equivalently its transpose solves the reversed-order equation
    q' * f_beta^(l-2) = f_beta^(p-k+1) * f_alpha^(p-k-l+3).  The result is
    checked to be singular on the (-l,-k) highest-weight line.  A division
    failure here would be a genuine counterexample, so it is raised as-is
    rather than swallowed.
    """
    if alcove_of(Weight(k - 3, l - 3), p) != "C0":
        raise AlcoveViolation(f"(k-3, l-3) = ({k - 3}, {l - 3}) is not in C0 mod {p}")
    if l < 3:
        raise AlcoveViolation("need l >= 3")
    fp = PrimeField(p)
    numerator = multiply(
        gen_power(fp, F_ALPHA, p - k - l + 3), gen_power(fp, F_BETA, p - k + 1)
    )
    q = divide_left(numerator, gen_power(fp, F_BETA, l - 2))
    vec = VermaVector(Weight(-l, -k), q)
    for gen in (E_ALPHA, E_BETA):
        if not verma_act(UEAElement.generator(fp, gen), vec).is_zero():
            raise AssertionError("linkage element is not singular")
    return q


def ver0_project(v: VermaVector, p: int) -> VermaVector:
    """Image in the baby Verma: monomials with any f-exponent >= p die."""
    if not isinstance(v.u.ring, PrimeField) or v.u.ring.p != p:
        raise WrongRing(f"expected PrimeField({p}) coefficients")
    terms = {m: c for m, c in v.u.terms.items() if all(x < p for x in m[:4])}
    return VermaVector(v.lam, UEAElement(v.u.ring, terms))


# ---------------------------------------------------------------------------
# The commuting square of linkage maps behind the first BGG differential.


def proportional(x: UEAElement, y: UEAElement):
    """Scalar c with x = c*y, or None; both must be nonzero."""
    if x.is_zero() or y.is_zero():
        return None
    if set(x.terms) != set(y.terms):
        return None
    ring = x.ring
    ratio = None
    for m, c in x.terms.items():
        r = ring.divide(c, y.terms[m])
        if ratio is None:
            ratio = r
        elif ratio != r:
            return None
    return ratio


def bgg_verify_commutativity(k: int, l: int, p: int) -> dict:
    """Check the linkage-map square under the first BGG differential.

    The four maps, written by the singular vectors they hit:
      A: f_beta^(p-l+2)        from (k-3, l-3-2p)  into Ver(k-3, 1-l)
      B: mixed element         from (l-4, -k)      into Ver(k-3, 1-l)
      C: f_beta^(p-k+1)        from (l-4, k-2-2p)  into Ver(l-4, -k)
      D: f_alpha^(k-l+1)       from (l-4, k-2-2p)  into Ver(k-3, l-3-2p)
    The square commutes iff C then B is proportional (nonzero scalar) to
    D then A in U(u-) over F_p.
    """
    if not (k >= l >= 3 and k + l < p + 3 and k < p - 1):
        raise PreconditionViolation(
            f"need k >= l >= 3, k+l < p+3, k < p-1; got k={k}, l={l}, p={p}"
        )
    fp = PrimeField(p)
    hom_b = verma_hom_modp(Weight(l - 4, -k), AffineReflection(ALPHA_BETA, 0), p)
    elt_a = gen_power(fp, F_BETA, p - l + 2)
    elt_c = gen_power(fp, F_BETA, p - k + 1)
    elt_d = gen_power(fp, F_ALPHA, k - l + 1)

    path_right_down = multiply(elt_c, hom_b.vector.u)
    path_down_right = multiply(elt_d, elt_a)
    scalar = proportional(path_right_down, path_down_right)

    singular_flags = {}
    for name, u, target in (
        ("beta_power_long", elt_a, Weight(k - 3, 1 - l)),
        ("mixed_differential", hom_b.vector.u, Weight(k - 3, 1 - l)),
        ("beta_power_short", elt_c, Weight(l - 4, -k)),
        ("alpha_power", elt_d, Weight(k - 3, l - 3 - 2 * p)),
    ):
        vec = VermaVector(target, u)
        ok = not u.is_zero() and all(
            verma_act(UEAElement.generator(fp, g), vec).is_zero()
            for g in (E_ALPHA, E_BETA)
        )
        singular_flags[name] = ok

    return {
        "k": k,
        "l": l,
        "p": p,
        "commutes_up_to_scalar": scalar is not None and scalar % p != 0,
        "scalar": None if scalar is None else scalar % p,
        "maps_singular": singular_flags,
        "composite_weight_drop": path_down_right.weight().ab()
        if path_down_right.weight()
        else None,
    }
