"""Exact perturbation series in b for the first Dirichlet eigenvalue of
w'' + (lam - b s^2) w = 0 on [-pi/2, pi/2].

The eigenpair is expanded as

    u(s)   = sum_k b^k u_k(s),
    u_k(s) = sum_{j <= 3k} (alpha_{k,j} s^j cos s + beta_{k,j} s^j sin s),
    lam(b) = sum_k lam_k b^k,

with u_0 = cos s and the uniqueness normalization u_k(0) = 0 for k >= 1.
Order k requires u_k'' + u_k = F_k where

    F_k = s^2 u_{k-1} - sum_{m=1}^{k} lam_m u_{k-m}.

Matching coefficients of s^m cos s and s^m sin s and sweeping m downward
from the top degree determines every coefficient except beta_{k,1}, which
the Dirichlet condition u_k(pi/2) = 0 fixes, after which the degree-zero
cosine equation yields lam_k.  All pivots are rational; the boundary step
introduces powers of pi^2, so coefficients live in the ring Q[pi^2]
implemented exactly by PiPoly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType
from typing import Dict, Tuple

import numpy as np


class NormalizationInconsistent(ArithmeticError):
    """The order-k linear system violated the parity/degree normalization."""


class OrderExceeded(ValueError):
    """Requested series order beyond the supported maximum."""


MAX_ORDER = 8


@dataclass(frozen=True)
class PiPoly:
    """Exact polynomial in pi^2 with Fraction coefficients.

    `terms` maps exponent m to the coefficient of pi^(2m), stored as a
    sorted tuple of (m, Fraction) pairs with zeros dropped, so equality and
    hashing are structural.
    """

    terms: Tuple[Tuple[int, Fraction], ...] = ()

    def __add__(self, other):
        if not isinstance(other, PiPoly):
            return NotImplemented
        acc = dict(self.terms)
        for m, c in other.terms:
            acc[m] = acc.get(m, Fraction(0)) + c
        return pipoly(acc)

    def __sub__(self, other):
        if not isinstance(other, PiPoly):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return PiPoly(tuple((m, -c) for m, c in self.terms))

    def __mul__(self, other):
        if isinstance(other, PiPoly):
            acc: Dict[int, Fraction] = {}
            for m1, c1 in self.terms:
                for m2, c2 in other.terms:
                    m = m1 + m2
                    acc[m] = acc.get(m, Fraction(0)) + c1 * c2
            return pipoly(acc)
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return PiPoly()
            return PiPoly(tuple((m, c * other) for m, c in self.terms))
        return NotImplemented

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.terms)

    def evalf(self) -> float:
        """Floating-point value with pi^2 evaluated in double precision."""
        pi2 = math.pi * math.pi
        return float(sum(float(c) * pi2 ** m for m, c in self.terms))

    def pretty(self) -> str:
        """Human-readable form, e.g. 'pi^4/720 - 5*pi^2/48 + 7/8'."""
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms, reverse=True):
            num, den = abs(c).numerator, abs(c).denominator
            if m == 0:
                core = str(num) + ("" if den == 1 else f"/{den}")
            else:
                power = "pi^2" if m == 1 else f"pi^{2 * m}"
                core = ("" if num == 1 else f"{num}*") + power + ("" if den == 1 else f"/{den}")
            parts.append(("-" if c < 0 else "+", core))
        sign0, core0 = parts[0]
        out = ("-" if sign0 == "-" else "") + core0
        for sign, core in parts[1:]:
            out += f" {sign} {core}"
        return out


def pipoly(coeffs) -> PiPoly:
    """Build a PiPoly from a mapping {m: rational}."""
    items = []
    for m, c in coeffs.items():
        frac = c if isinstance(c, Fraction) else Fraction(c)
        if frac != 0:
            items.append((int(m), frac))
    return PiPoly(tuple(sorted(items)))


PP_ZERO = PiPoly()
PP_ONE = pipoly({0: 1})


@dataclass(frozen=True)
class AnsatzState:
    """Full expansion data through a given order.

    alpha[(k, j)] and beta[(k, j)] are the PiPoly coefficients of
    s^j cos s and s^j sin s in u_k; lambdas holds lam_0 .. lam_order.
    """

    order: int
    alpha: "MappingProxyType"
    beta: "MappingProxyType"
    lambdas: Tuple[PiPoly, ...]


def _accumulate(table: Dict[int, PiPoly], j: int, value: PiPoly) -> None:
    if value:
        table[j] = table.get(j, PP_ZERO) + value


@lru_cache(maxsize=None)
def compute_expansion(max_order: int) -> AnsatzState:
    """Solve the expansion order by order through `max_order` exactly."""
    if max_order < 0:
        raise ValueError("max_order must be nonnegative")
    if max_order > MAX_ORDER:
        raise OrderExceeded(f"order {max_order} outside [0, {MAX_ORDER}]")
    u_cos = [{0: PP_ONE}]
    u_sin = [{}]
    lambdas = [PP_ONE]

    for k in range(1, max_order + 1):
        c: Dict[int, PiPoly] = {}
        d: Dict[int, PiPoly] = {}
        for j, v in u_cos[k - 1].items():
            _accumulate(c, j + 2, v)
        for j, v in u_sin[k - 1].items():
            _accumulate(d, j + 2, v)
        for m in range(1, k):
            lam_m = lambdas[m]
            for j, v in u_cos[k - m].items():
                _accumulate(c, j, -(lam_m * v))
            for j, v in u_sin[k - m].items():
                _accumulate(d, j, -(lam_m * v))

        top = 3 * k
        for j in c:
            if j % 2 == 1 or j > top - 1:
                raise NormalizationInconsistent(
                    f"order {k}: cosine forcing at degree {j} breaks parity/degree")
        for j in d:
            if j % 2 == 0 or j > top - 1:
                raise NormalizationInconsistent(
                    f"order {k}: sine forcing at degree {j} breaks parity/degree")

        # u'' + u sends s^j cos -> j(j-1) s^(j-2) cos - 2j s^(j-1) sin and
        # s^j sin -> j(j-1) s^(j-2) sin + 2j s^(j-1) cos; matching degree m
        # downward makes every step an explicit rational division.
        alpha_k: Dict[int, PiPoly] = {}
        beta_k: Dict[int, PiPoly] = {}
        for m in range(top - 1, 0, -1):
            if m % 2 == 0:
                rhs = c.get(m, PP_ZERO) - Fraction((m + 2) * (m + 1)) * alpha_k.get(m + 2, PP_ZERO)
                _accumulate(beta_k, m + 1, Fraction(1, 2 * (m + 1)) * rhs)
            else:
                rhs = Fraction((m + 2) * (m + 1)) * beta_k.get(m + 2, PP_ZERO) - d.get(m, PP_ZERO)
                _accumulate(alpha_k, m + 1, Fraction(1, 2 * (m + 1)) * rhs)

        for j in alpha_k:
            if j % 2 == 1 or j > top:
                raise NormalizationInconsistent(
                    f"order {k}: alpha coefficient at degree {j} breaks parity/degree")
        for j in beta_k:
            if j % 2 == 0 or j > top:
                raise NormalizationInconsistent(
                    f"order {k}: beta coefficient at degree {j} breaks parity/degree")

        # Dirichlet closure: sum_j beta_{k,j} (pi/2)^j = 0 determines beta_{k,1}.
        b1 = PP_ZERO
        for j, v in beta_k.items():
            p = (j - 1) // 2
            b1 = b1 - v * pipoly({p: Fraction(1, 4 ** p)})
        _accumulate(beta_k, 1, b1)

        lam_k = c.get(0, PP_ZERO) - Fraction(2) * alpha_k.get(2, PP_ZERO) - Fraction(2) * b1
        lambdas.append(lam_k)
        u_cos.append(alpha_k)
        u_sin.append(beta_k)

    alpha = {}
    beta = {}
    for k in range(max_order + 1):
        for j, v in u_cos[k].items():
            alpha[(k, j)] = v
        for j, v in u_sin[k].items():
            beta[(k, j)] = v
    return AnsatzState(order=max_order, alpha=MappingProxyType(alpha),
                       beta=MappingProxyType(beta), lambdas=tuple(lambdas))


def perturbation_coefficients(max_order: int):
    """lam_0 .. lam_max_order as exact PiPoly values."""
    return list(compute_expansion(max_order).lambdas)


def evaluate_series(target: str, order: int, a: float = None, b: float = None,
                    D: float = None) -> float:
    """Truncated eigenvalue series, evaluated in floating point.

    target 'weber_pi':      sum_{k<=order} lam_k b^k.
    target 'drift_pi':      a/2 + sum lam_k (a^2/4)^k.
    target 'drift_general': a/2 + sum lam_k a^(2k) D^(4k-2) / (4^k pi^(4k-2)),
    which is a/2 plus pi^2/D^2 times the weber series at b = a^2 D^4 / (4 pi^4).
    """
    if order < 0 or order > MAX_ORDER:
        raise OrderExceeded(f"order {order} outside [0, {MAX_ORDER}]")
    lams = [p.evalf() for p in perturbation_coefficients(order)]
    if target == "weber_pi":
        if b is None:
            raise ValueError("weber_pi needs b")
        return float(sum(lams[k] * b ** k for k in range(order + 1)))
    if target == "drift_pi":
        if a is None:
            raise ValueError("drift_pi needs a")
        x = 0.25 * a * a
        return float(0.5 * a + sum(lams[k] * x ** k for k in range(order + 1)))
    if target == "drift_general":
        if a is None or D is None:
            raise ValueError("drift_general needs a and D")
        total = 0.5 * a
        for k in range(order + 1):
            total += lams[k] * a ** (2 * k) * D ** (4 * k - 2) / (4.0 ** k * math.pi ** (4 * k - 2))
        return float(total)
    raise ValueError(f"unknown target {target!r}")


def ansatz_term(state: AnsatzState, k: int, s) -> np.ndarray:
    """u_k(s) evaluated numerically (s may be an array)."""
    if k > state.order:
        raise OrderExceeded(f"state holds orders 0..{state.order}")
    s = np.asarray(s, dtype=float)
    out = np.zeros_like(s)
    cos_s, sin_s = np.cos(s), np.sin(s)
    for (kk, j), v in state.alpha.items():
        if kk == k:
            out = out + v.evalf() * s ** j * cos_s
    for (kk, j), v in state.beta.items():
        if kk == k:
            out = out + v.evalf() * s ** j * sin_s
    return out


def ansatz_term_second_derivative(state: AnsatzState, k: int, s) -> np.ndarray:
    """u_k''(s) evaluated exactly from the coefficient tables.

    Uses (s^j cos s)'' = j(j-1) s^(j-2) cos s - 2j s^(j-1) sin s - s^j cos s
    and its sine counterpart, so the only floating-point step is the final
    evaluation (no finite differences).
    """
    if k > state.order:
        raise OrderExceeded(f"state holds orders 0..{state.order}")
    s = np.asarray(s, dtype=float)
    out = np.zeros_like(s)
    cos_s, sin_s = np.cos(s), np.sin(s)
    for (kk, j), v in state.alpha.items():
        if kk != k:
            continue
        c = v.evalf()
        if j >= 2:
            out = out + c * j * (j - 1) * s ** (j - 2) * cos_s
        if j >= 1:
            out = out - 2.0 * c * j * s ** (j - 1) * sin_s
        out = out - c * s ** j * cos_s
    for (kk, j), v in state.beta.items():
        if kk != k:
            continue
        c = v.evalf()
        if j >= 2:
            out = out + c * j * (j - 1) * s ** (j - 2) * sin_s
        if j >= 1:
            out = out + 2.0 * c * j * s ** (j - 1) * cos_s
        out = out - c * s ** j * sin_s
    return out


def ansatz_value(state: AnsatzState, b: float, s, order: int = None) -> np.ndarray:
    """Truncated eigenfunction sum_{k<=order} b^k u_k(s)."""
    order = state.order if order is None else order
    if order > state.order:
        raise OrderExceeded(f"state holds orders 0..{state.order}")
    s = np.asarray(s, dtype=float)
    out = np.zeros_like(s)
    for k in range(order + 1):
        out = out + b ** k * ansatz_term(state, k, s)
    return out
