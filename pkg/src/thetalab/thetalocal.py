"""Exact polynomial model of the theta operators on two local charts.

Ordinary chart: sections are polynomials over F_p in T and the three
deformation coordinates T11, T12, T22, tagged with a line-bundle weight
(k, l).  The trivialization fixes the first Hasse function to 1 and the
second to T - T^p, and the three horizontal operators act through
D_ij = (T_ij + 1) d/dT_ij.  Coefficient formulas here use the unit-Hasse
normalization, whose weight shifts are (2,0), (p+1,0), (2p,0); the
geometric operators differ by a Hasse twist and shift weights by
(p+1,p-1), (2p,p-1), (2p,0), (p-1,0), recorded in GEOMETRIC_SHIFTS.

p-rank-1 chart: same variables, but every statement only holds modulo a
total-degree cutoff in the T_ij (the chart's precision); here the first
Hasse function is T22 and the second is T12 + T22*T - T^p.

Coefficient arrays are dense numpy int64 blocks indexed by
(T, T11, T12, T22) exponents, reduced mod p; all arithmetic is exact.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np


class WrongChart(Exception):
    """Operation applied on the wrong local chart."""


class NotDivisible(Exception):
    """Requested Hasse division leaves a remainder."""


class TheoremViolation(Exception):
    """A division that is guaranteed to succeed failed; never swallow this."""


class InsufficientPrecision(Exception):
    """The truncated chart cannot support the requested computation."""


ORDINARY = "ordinary"
PRANK1 = "prank1"

# weight shifts of the geometric operators (Hasse twists included)
GEOMETRIC_SHIFTS = {
    "theta1": lambda p: (p + 1, p - 1),
    "theta2": lambda p: (2 * p, p - 1),
    "theta3": lambda p: (2 * p, 0),
    "theta4": lambda p: (p - 1, 0),
    "H1": lambda p: (p - 1, p - 1),
    "H2": lambda p: (p, -1),
}

_AXIS_T, _AXIS_11, _AXIS_12, _AXIS_22 = 0, 1, 2, 3


def _trim(a: np.ndarray) -> np.ndarray:
    """Drop trailing all-zero slices on every axis (canonical shape)."""
    if a.size == 0 or not a.any():
        return np.zeros((1, 1, 1, 1), dtype=np.int64)
    for axis in range(4):
        while a.shape[axis] > 1:
            sl = [slice(None)] * 4
            sl[axis] = a.shape[axis] - 1
            if a[tuple(sl)].any():
                break
            keep = [slice(None)] * 4
            keep[axis] = slice(0, a.shape[axis] - 1)
            a = a[tuple(keep)]
    return a


def _grow(a: np.ndarray, shape) -> np.ndarray:
    out = np.zeros(shape, dtype=np.int64)
    out[tuple(slice(0, s) for s in a.shape)] = a
    return out


def _add(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    shape = tuple(max(x, y) for x, y in zip(a.shape, b.shape))
    return _trim((_grow(a, shape) + _grow(b, shape)) % p)


def _shift(a: np.ndarray, axis: int, m: int) -> np.ndarray:
    """Multiply by the axis variable to the m-th power."""
    if m == 0 or not a.any():
        return a
    shape = list(a.shape)
    shape[axis] += m
    out = np.zeros(shape, dtype=np.int64)
    sl = [slice(None)] * 4
    sl[axis] = slice(m, shape[axis])
    out[tuple(sl)] = a
    return out


def _deriv(a: np.ndarray, axis: int, p: int) -> np.ndarray:
    """Partial derivative along an axis, mod p."""
    n = a.shape[axis]
    if n <= 1:
        return np.zeros((1, 1, 1, 1), dtype=np.int64)
    idx = np.arange(1, n, dtype=np.int64)
    shape_idx = [1, 1, 1, 1]
    shape_idx[axis] = n - 1
    sl = [slice(None)] * 4
    sl[axis] = slice(1, n)
    return _trim((a[tuple(sl)] * idx.reshape(shape_idx)) % p)


def _dop(a: np.ndarray, axis: int, p: int) -> np.ndarray:
    """(T_ij + 1) d/dT_ij along the given T_ij axis."""
    d = _deriv(a, axis, p)
    return _add(_shift(d, axis, 1), d, p)


def _poly_from_terms(terms, p: int) -> np.ndarray:
    if not terms:
        return np.zeros((1, 1, 1, 1), dtype=np.int64)
    shape = [1 + max(t[i] for t in terms) for i in range(4)]
    out = np.zeros(shape, dtype=np.int64)
    for (t, a11, a12, a22), c in terms.items():
        out[t, a11, a12, a22] = (out[t, a11, a12, a22] + c) % p
    return _trim(out % p)


@dataclass(frozen=True)
class ChartSection:
    """A weight-tagged polynomial section on one of the two charts."""

    p: int
    weight: tuple[int, int]
    poly: np.ndarray
    chart: str = ORDINARY
    prec: Optional[int] = None  # T_ij total-degree validity on the p-rank-1 chart

    def __post_init__(self):
        object.__setattr__(self, "poly", _trim(np.asarray(self.poly, dtype=np.int64) % self.p))
        if self.chart == PRANK1:
            if self.prec is None or self.prec < 1:
                raise InsufficientPrecision("p-rank-1 sections need precision >= 1")
            object.__setattr__(self, "poly", _truncate_total(self.poly, self.prec))
        elif self.prec is not None:
            raise ValueError("precision only applies to the p-rank-1 chart")

    # -- constructors --------------------------------------------------------

    @staticmethod
    def from_terms(p, weight, terms, chart=ORDINARY, prec=None) -> "ChartSection":
        """terms: map (T, T11, T12, T22) exponents -> integer coefficient."""
        return ChartSection(p, tuple(weight), _poly_from_terms(terms, p), chart, prec)

    @staticmethod
    def monomial(p, weight, t=0, t11=0, t12=0, t22=0, coeff=1, chart=ORDINARY, prec=None):
        return ChartSection.from_terms(
            p, weight, {(t, t11, t12, t22): coeff}, chart, prec
        )

    @staticmethod
    def zero(p, weight, chart=ORDINARY, prec=None) -> "ChartSection":
        return ChartSection.from_terms(p, weight, {}, chart, prec)

    # -- structure -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.poly.any()

    def terms(self) -> dict:
        out = {}
        for idx in zip(*np.nonzero(self.poly)):
            out[tuple(int(i) for i in idx)] = int(self.poly[idx])
        return out

    def with_weight(self, weight) -> "ChartSection":
        return replace(self, weight=tuple(weight))

    def shift_weight(self, dk: int, dl: int) -> "ChartSection":
        return replace(self, weight=(self.weight[0] + dk, self.weight[1] + dl))

    def add(self, other: "ChartSection") -> "ChartSection":
        self._compat(other)
        prec = None
        if self.chart == PRANK1:
            prec = min(self.prec, other.prec)
        return ChartSection(
            self.p, self.weight, _add(self.poly, other.poly, self.p), self.chart, prec
        )

    def sub(self, other: "ChartSection") -> "ChartSection":
        return self.add(other.scale(-1))

    def scale(self, c: int) -> "ChartSection":
        return replace(self, poly=(self.poly * (c % self.p)) % self.p)

    def mul(self, other: "ChartSection") -> "ChartSection":
        """Product section; weights add, precisions meet."""
        self._compat(other, same_weight=False)
        conv = _convolve(self.poly, other.poly, self.p)
        w = (self.weight[0] + other.weight[0], self.weight[1] + other.weight[1])
        prec = min(self.prec, other.prec) if self.chart == PRANK1 else None
        return ChartSection(self.p, w, conv, self.chart, prec)

    def _compat(self, other: "ChartSection", same_weight: bool = True) -> None:
        if self.p != other.p or self.chart != other.chart:
            raise ValueError("sections live on different charts")
        if same_weight and self.weight != other.weight:
            raise ValueError(f"weight mismatch: {self.weight} vs {other.weight}")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ChartSection)
            and self.p == other.p
            and self.chart == other.chart
            and self.weight == other.weight
            and self.poly.shape == other.poly.shape
            and bool((self.poly == other.poly).all())
        )

    def to_json(self) -> dict:
        out = {
            "p": self.p,
            "chart": self.chart,
            "weight": list(self.weight),
            "poly": [
                {"T": t, "T11": a, "T12": b, "T22": c, "coeff": v}
                for (t, a, b, c), v in sorted(self.terms().items())
            ],
        }
        if self.prec is not None:
            out["prec"] = self.prec
        return out

    @staticmethod
    def from_json(data: dict) -> "ChartSection":
        terms = {
            (m["T"], m["T11"], m["T12"], m["T22"]): m["coeff"] for m in data["poly"]
        }
        return ChartSection.from_terms(
            data["p"],
            tuple(data["weight"]),
            terms,
            data.get("chart", ORDINARY),
            data.get("prec"),
        )

    def __repr__(self) -> str:
        return (
            f"ChartSection(p={self.p}, weight={self.weight}, chart={self.chart}, "
            f"terms={self.terms()})"
        )


def _convolve(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    out = np.zeros(
        tuple(x + y - 1 for x, y in zip(a.shape, b.shape)), dtype=np.int64
    )
    for idx in zip(*np.nonzero(a)):
        sl = tuple(slice(i, i + s) for i, s in zip(idx, b.shape))
        out[sl] += int(a[idx]) * b
        out %= p
    return _trim(out % p)


def _truncate_total(a: np.ndarray, prec: int) -> np.ndarray:
    """Zero every monomial of total T_ij-degree >= prec."""
    i = np.arange(a.shape[1]).reshape(1, -1, 1, 1)
    j = np.arange(a.shape[2]).reshape(1, 1, -1, 1)
    k = np.arange(a.shape[3]).reshape(1, 1, 1, -1)
    mask = (i + j + k) < prec
    return _trim(a * mask)


def _require_ordinary(s: ChartSection) -> None:
    if s.chart != ORDINARY:
        raise WrongChart(f"operator defined on the ordinary chart, got {s.chart}")


# ---------------------------------------------------------------------------
# Ordinary-chart operators.


def theta1(s: ChartSection) -> ChartSection:
    """T^2 D11 - T D12 + D22, weight shift (2, 0)."""
    _require_ordinary(s)
    p = s.p
    out = _shift(_dop(s.poly, _AXIS_11, p), _AXIS_T, 2)
    out = _add(out, (p - 1) * _shift(_dop(s.poly, _AXIS_12, p), _AXIS_T, 1) % p, p)
    out = _add(out, _dop(s.poly, _AXIS_22, p), p)
    return ChartSection(p, (s.weight[0] + 2, s.weight[1]), out)


def theta2(s: ChartSection) -> ChartSection:
    """2 T^(p+1) D11 - (T + T^p) D12 + 2 D22, weight shift (p+1, 0)."""
    _require_ordinary(s)
    p = s.p
    d11 = _dop(s.poly, _AXIS_11, p)
    d12 = _dop(s.poly, _AXIS_12, p)
    d22 = _dop(s.poly, _AXIS_22, p)
    out = 2 * _shift(d11, _AXIS_T, p + 1) % p
    out = _add(out, (p - 1) * _shift(d12, _AXIS_T, 1) % p, p)
    out = _add(out, (p - 1) * _shift(d12, _AXIS_T, p) % p, p)
    out = _add(out, 2 * d22 % p, p)
    return ChartSection(p, (s.weight[0] + p + 1, s.weight[1]), out)


def theta3(s: ChartSection) -> ChartSection:
    """T^(2p) D11 - T^p D12 + D22, weight shift (2p, 0)."""
    _require_ordinary(s)
    p = s.p
    out = _shift(_dop(s.poly, _AXIS_11, p), _AXIS_T, 2 * p)
    out = _add(out, (p - 1) * _shift(_dop(s.poly, _AXIS_12, p), _AXIS_T, p) % p, p)
    out = _add(out, _dop(s.poly, _AXIS_22, p), p)
    return ChartSection(p, (s.weight[0] + 2 * p, s.weight[1]), out)


def theta4(s: ChartSection) -> ChartSection:
    """(T - T^p) df/dT + (l - k) f, weight shift (p-1, 0).

    The coefficient depends on the input weight through l - k mod p; the
    second Hasse function has unit T-derivative on this chart.
    """
    _require_ordinary(s)
    p = s.p
    k, l = s.weight
    df = _deriv(s.poly, _AXIS_T, p)
    out = _add(_shift(df, _AXIS_T, 1), (p - 1) * _shift(df, _AXIS_T, p) % p, p)
    out = _add(out, ((l - k) % p) * s.poly % p, p)
    return ChartSection(p, (k + p - 1, l), out)


OPERATORS = {"theta1": theta1, "theta2": theta2, "theta3": theta3, "theta4": theta4}


def hasse_coefficient(p: int, which: str, chart: str = ORDINARY) -> np.ndarray:
    """Local coefficient of a Hasse function on the given chart."""
    if chart == ORDINARY:
        if which == "H1":
            return _poly_from_terms({(0, 0, 0, 0): 1}, p)
        if which == "H2":
            return _poly_from_terms({(1, 0, 0, 0): 1, (p, 0, 0, 0): p - 1}, p)
    else:
        if which == "H1":
            return _poly_from_terms({(0, 0, 0, 1): 1}, p)
        if which == "H2":
            return _poly_from_terms(
                {(0, 0, 1, 0): 1, (1, 0, 0, 1): 1, (p, 0, 0, 0): p - 1}, p
            )
    raise ValueError(f"unknown Hasse function {which!r}")


def hasse_section(p: int, which: str) -> ChartSection:
    """The Hasse invariant itself as a weight-tagged ordinary-chart section."""
    w = (p - 1, p - 1) if which == "H1" else (p, -1)
    return ChartSection(p, w, hasse_coefficient(p, which))


def hasse_mult(s: ChartSection, which: str, m: int = 1) -> ChartSection:
    """Multiply by the m-th power of a Hasse function, twisting the weight."""
    _require_ordinary(s)
    p = s.p
    dk, dl = GEOMETRIC_SHIFTS[which](p)
    out = s.poly
    if which == "H2":
        h2 = hasse_coefficient(p, "H2")
        for _ in range(m):
            out = _convolve(out, h2, p)
    return ChartSection(p, (s.weight[0] + m * dk, s.weight[1] + m * dl), out)


def _divide_T_poly(num: np.ndarray, den_t: np.ndarray, p: int):
    """Exact division by a polynomial in T alone; None if a remainder is left."""
    num = _trim(num.copy())
    deg_den = den_t.shape[0] - 1
    lead = int(den_t[deg_den])
    lead_inv = pow(lead, p - 2, p)
    if not num.any():
        return num
    deg_num = num.shape[0] - 1
    if deg_num < deg_den:
        return None
    q = np.zeros((deg_num - deg_den + 1,) + num.shape[1:], dtype=np.int64)
    for d in range(deg_num, deg_den - 1, -1):
        if d >= num.shape[0]:
            continue
        c = num[d] % p
        if not c.any():
            continue
        qc = (c * lead_inv) % p
        q[d - deg_den] = qc
        for i in range(deg_den + 1):
            if den_t[i]:
                num[d - deg_den + i] = (num[d - deg_den + i] - int(den_t[i]) * qc) % p
    if _trim(num[:deg_den] if deg_den > 0 else num).any():
        return None
    return _trim(q)


def hasse_divide(s: ChartSection, which: str, m: int = 1) -> ChartSection:
    """Divide by the m-th power of a Hasse function; exactness is required."""
    _require_ordinary(s)
    p = s.p
    dk, dl = GEOMETRIC_SHIFTS[which](p)
    out = s.poly
    if which == "H2":
        den = np.zeros(p + 1, dtype=np.int64)
        den[1] = 1
        den[p] = p - 1
        for _ in range(m):
            nxt = _divide_T_poly(out, den, p)
            if nxt is None:
                raise NotDivisible(f"H2^{m} does not divide the section")
            out = nxt
    return ChartSection(p, (s.weight[0] - m * dk, s.weight[1] - m * dl), out)


def theta_cycle(s: ChartSection) -> ChartSection:
    """Iterated first operator divided by the matched Hasse power.

    For weight (k, l) with k = p*b + a, 1 <= a <= p, the geometric map is
    the (p - a + 1)-fold first operator divided by the same power of the
    first Hasse invariant.  In the unit-Hasse normalization used for chart
    coefficients those divisions are pure weight twists already absorbed in
    the (2, 0) shift, so the iteration below is the whole computation.  The
    final weight (2p - 2a + k + 2, l) is asserted.
    """
    _require_ordinary(s)
    p = s.p
    k, l = s.weight
    a = k % p if k % p != 0 else p
    n = p - a + 1
    out = s
    for _ in range(n):
        out = theta1(out)
    expected = (2 * p - 2 * a + k + 2, l)
    if out.weight != expected:
        raise AssertionError(f"cycle weight {out.weight}, expected {expected}")
    return out


def theta4_reflection(s: ChartSection) -> ChartSection:
    """theta4^(b+1) divided by the (b+1)-st power of the second Hasse function.

    k - l = a*p + b with 0 <= b <= p-1; the division must succeed, and a
    failure is raised as TheoremViolation.  Final weight (k-b-1, l+b+1).
    """
    _require_ordinary(s)
    p = s.p
    k, l = s.weight
    b = (k - l) % p
    out = s
    for _ in range(b + 1):
        out = theta4(out)
    try:
        out = hasse_divide(out, "H2", b + 1)
    except NotDivisible as exc:
        raise TheoremViolation(
            f"theta4^{b + 1} of a weight-{s.weight} section is not divisible "
            f"by the {b + 1}-st Hasse power"
        ) from exc
    assert out.weight == (k - b - 1, l + b + 1)
    return out


def big_theta(s: ChartSection) -> ChartSection:
    """(4*Theta1 Theta3 - Theta2^2) / H2^2, weight shift (2, 2).

    Both composites land at shift (2p+2, 0); the divisibility by the square
    of the second Hasse coefficient is the well-definedness statement, so a
    remainder is a TheoremViolation.
    """
    _require_ordinary(s)
    num = theta1(theta3(s)).scale(4).sub(theta2(theta2(s)))
    try:
        return hasse_divide(num, "H2", 2)
    except NotDivisible as exc:
        raise TheoremViolation("the composite operator is not H2^2-divisible") from exc


def kernel_basis_theta4(k: int, l: int, p: int) -> list[ChartSection]:
    """Closed-form kernel of theta4 on degree <= k-l 1-variable sections.

    With k - l = a*p + b: the span of (T - T^p)^b * T^(p*j) for
    0 <= j <= a - b (empty when a < b).
    """
    if k - l < 0:
        raise ValueError("need k >= l")
    a, b = divmod(k - l, p)
    if a < b:
        return []
    h2 = hasse_coefficient(p, "H2")
    h2b = _poly_from_terms({(0, 0, 0, 0): 1}, p)
    for _ in range(b):
        h2b = _convolve(h2b, h2, p)
    out = []
    for j in range(a - b + 1):
        out.append(ChartSection(p, (k, l), _shift(h2b, _AXIS_T, p * j)))
    return out


def kernel_basis_theta4_reflection(k: int, l: int, p: int) -> list[ChartSection]:
    """Closed-form kernel of the reflected operator: T^i T^(p*j) for
    0 <= i <= b, 0 <= j <= a; dimension (a+1)(b+1)."""
    if k - l < 0:
        raise ValueError("need k >= l")
    a, b = divmod(k - l, p)
    out = []
    for i in range(b + 1):
        for j in range(a + 1):
            out.append(ChartSection.monomial(p, (k, l), t=i + p * j))
    return out


def theta4_matrix_on_fiber_sections(k: int, l: int, p: int, reflected: bool = False):
    """Matrix of theta4 (or its (b+1)-fold iterate) on the degree <= k-l span.

    The brute-force nullspace oracle for the closed-form kernels: the
    reflected map differs from the plain (b+1)-fold iterate by an injective
    Hasse division, so both have the same kernel and the oracle never
    depends on that division.  Returns (rows, ncols) over F_p with columns
    indexed by T^c.
    """
    n = k - l + 1
    b = (k - l) % p
    iterations = b + 1 if reflected else 1
    cols = []
    target_deg = 1
    for c in range(n):
        img = _iterate(theta4, ChartSection.monomial(p, (k, l), t=c), iterations)
        vec = img.poly[:, 0, 0, 0]
        cols.append(vec)
        target_deg = max(target_deg, len(vec))
    rows = [
        [int(cols[c][r]) if r < len(cols[c]) else 0 for c in range(n)]
        for r in range(target_deg)
    ]
    return rows, n


# ---------------------------------------------------------------------------
# Truncated p-rank-1 chart.


def prank1_theta1(s: ChartSection) -> ChartSection:
    """k f + T^2 T22 f_T11 - T T22 f_T12 + T22 f_T22, precision drops by 1."""
    if s.chart != PRANK1:
        raise WrongChart("p-rank-1 operator needs the truncated chart")
    if s.prec is None or s.prec - 1 < 1:
        raise InsufficientPrecision("need precision >= 2")
    p = s.p
    k, l = s.weight
    out = (k % p) * s.poly % p
    t11 = _shift(_shift(_deriv(s.poly, _AXIS_11, p), _AXIS_22, 1), _AXIS_T, 2)
    t12 = _shift(_shift(_deriv(s.poly, _AXIS_12, p), _AXIS_22, 1), _AXIS_T, 1)
    t22 = _shift(_deriv(s.poly, _AXIS_22, p), _AXIS_22, 1)
    out = _add(out, t11, p)
    out = _add(out, (p - 1) * t12 % p, p)
    out = _add(out, t22, p)
    return ChartSection(p, (k + p + 1, l + p - 1), out, PRANK1, s.prec - 1)


def prank1_divisibility(s: ChartSection) -> bool:
    """Whether T22 divides the image of prank1_theta1 within precision.

    Requires T22 not dividing the input (the interesting case); sweeping k
    shows the answer tracks p | k exactly.
    """
    if s.chart != PRANK1:
        raise WrongChart("p-rank-1 predicate needs the truncated chart")
    if _t22_divides(s.poly):
        raise ValueError("input already divisible by T22")
    img = prank1_theta1(s)
    return _t22_divides(img.poly)


def _t22_divides(a: np.ndarray) -> bool:
    return not a[:, :, :, 0].any()


def prank1_theta4(s: ChartSection) -> ChartSection:
    """Fourth operator with the chart's second Hasse function.

    Coefficient (T12 + T22*T - T^p) f_T + (l - k) T22 f; the T-derivative of
    the Hasse coefficient is T22 mod p.  Precision is unchanged (no T_ij
    derivatives are taken).
    """
    if s.chart != PRANK1:
        raise WrongChart("p-rank-1 operator needs the truncated chart")
    p = s.p
    k, l = s.weight
    df = _deriv(s.poly, _AXIS_T, p)
    h2 = hasse_coefficient(p, "H2", PRANK1)
    out = _convolve(h2, df, p)
    out = _add(out, ((l - k) % p) * _shift(s.poly, _AXIS_22, 1) % p, p)
    return ChartSection(p, (k + p - 1, l), out, PRANK1, s.prec)


# ---------------------------------------------------------------------------
# Randomized relation suite.


def random_section(p: int, max_deg: int, rng: random.Random, weight=None) -> ChartSection:
    """Uniform independent coefficients on the full degree-box of monomials."""
    if weight is None:
        weight = (rng.randrange(2 * p), rng.randrange(2 * p))
    shape = (max_deg + 1,) * 4
    poly = np.array(
        [rng.randrange(p) for _ in range((max_deg + 1) ** 4)], dtype=np.int64
    ).reshape(shape)
    return ChartSection(p, tuple(weight), poly)


RELATION_NAMES = (
    "commutator_theta1_theta4_is_theta2",
    "commutator_theta2_theta4_is_2theta3",
    "commutator_theta3_theta4_is_zero",
    "horizontal_operators_commute",
    "theta1_pth_power_is_theta3",
    "theta4_pth_power_is_zero",
    "commutator_theta2_pth_theta4_is_zero",
    "commutator_bigtheta_theta4_is_zero",
    "bigtheta_pth_power_is_bigtheta",
)


def _iterate(op, s: ChartSection, n: int) -> ChartSection:
    for _ in range(n):
        s = op(s)
    return s


def _same_coeffs(x: ChartSection, y: ChartSection) -> bool:
    return x.poly.shape == y.poly.shape and bool((x.poly == y.poly).all())


def verify_relations(p: int, trials: int, max_deg: int, seed: int) -> dict:
    """Exact check of the operator relations on random weighted sections.

    Commutators are weight-aware: each factor acts at the weight its input
    section carries at that point of the composition.  Returns a report with
    per-relation pass flags and the first counterexample section on failure.
    """
    if p < 3:
        raise ValueError("need p >= 3")
    rng = random.Random(seed)
    results = {name: {"passed": True, "counterexample": None} for name in RELATION_NAMES}

    def record(name, ok, section):
        if not ok and results[name]["passed"]:
            results[name]["passed"] = False
            results[name]["counterexample"] = section.to_json()

    for _ in range(trials):
        f = random_section(p, max_deg, rng)

        lhs = theta1(theta4(f)).sub(theta4(theta1(f)))
        record("commutator_theta1_theta4_is_theta2", lhs == theta2(f), f)

        lhs = theta2(theta4(f)).sub(theta4(theta2(f)))
        record("commutator_theta2_theta4_is_2theta3", lhs == theta3(f).scale(2), f)

        lhs = theta3(theta4(f)).sub(theta4(theta3(f)))
        record("commutator_theta3_theta4_is_zero", lhs.is_zero(), f)

        ok = True
        for op1, op2 in ((theta1, theta2), (theta1, theta3), (theta2, theta3)):
            a = op1(op2(f))
            bsec = op2(op1(f))
            ok = ok and _same_coeffs(a, bsec)
        record("horizontal_operators_commute", ok, f)

        record(
            "theta1_pth_power_is_theta3",
            _same_coeffs(_iterate(theta1, f, p), theta3(f)),
            f,
        )

        record("theta4_pth_power_is_zero", _iterate(theta4, f, p).is_zero(), f)

        t2p_then_t4 = theta4(_iterate(theta2, f, p))
        t4_then_t2p = _iterate(theta2, theta4(f), p)
        record(
            "commutator_theta2_pth_theta4_is_zero",
            _same_coeffs(t2p_then_t4, t4_then_t2p),
            f,
        )

        bt_then_t4 = theta4(big_theta(f))
        t4_then_bt = big_theta(theta4(f))
        record(
            "commutator_bigtheta_theta4_is_zero",
            _same_coeffs(bt_then_t4, t4_then_bt),
            f,
        )

        record(
            "bigtheta_pth_power_is_bigtheta",
            _same_coeffs(_iterate(big_theta, f, p), big_theta(f)),
            f,
        )

    results["all_passed"] = all(
        results[name]["passed"] for name in RELATION_NAMES
    )
    results["p"], results["trials"], results["max_deg"], results["seed"] = (
        p,
        trials,
        max_deg,
        seed,
    )
    return results
