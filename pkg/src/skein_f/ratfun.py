"""Exact arithmetic in Z[x^±1, w^±1, t^±1] localized at (1 - t).

Every value of the colored-link invariant lives in this ring. A value is a
Laurent polynomial numerator over a denominator (1 - t)^k, kept in a canonical
form (numerator not divisible by 1 - t) so that equality is structural.
"""

from __future__ import annotations

import json
import re
from collections import defaultdict
from typing import Iterable, Mapping, NamedTuple

Monomial = tuple[int, int, int]  # (ex, ew, et)

_VARS = ("x", "w", "t")


def _order_key(m: Monomial) -> tuple[int, int, int]:
    # canonical monomial order: lexicographic on (et, ew, ex)
    return (m[2], m[1], m[0])


def _clean(terms: Mapping[Monomial, int]) -> dict[Monomial, int]:
    return {m: c for m, c in terms.items() if c}


def _poly_add(a: Mapping[Monomial, int], b: Mapping[Monomial, int]) -> dict[Monomial, int]:
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, 0) + c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _poly_mul(a: Mapping[Monomial, int], b: Mapping[Monomial, int]) -> dict[Monomial, int]:
    if len(a) < len(b):
        a, b = b, a
    out: dict[Monomial, int] = defaultdict(int)
    for (ax, aw, at), ac in a.items():
        for (bx, bw, bt), bc in b.items():
            out[(ax + bx, aw + bw, at + bt)] += ac * bc
    return _clean(out)


def _mul_one_minus_t(p: Mapping[Monomial, int], times: int = 1) -> dict[Monomial, int]:
    out = dict(p)
    for _ in range(times):
        nxt: dict[Monomial, int] = defaultdict(int)
        for (ex, ew, et), c in out.items():
            nxt[(ex, ew, et)] += c
            nxt[(ex, ew, et + 1)] -= c
        out = _clean(nxt)
    return out


def _groups(p: Mapping[Monomial, int]) -> dict[tuple[int, int], dict[int, int]]:
    g: dict[tuple[int, int], dict[int, int]] = defaultdict(dict)
    for (ex, ew, et), c in p.items():
        g[(ex, ew)][et] = c
    return g


def divisible_by_one_minus_t(p: Mapping[Monomial, int]) -> bool:
    """True iff p vanishes at t = 1, i.e. (1 - t) divides p."""
    sums: dict[tuple[int, int], int] = defaultdict(int)
    for (ex, ew, _), c in p.items():
        sums[(ex, ew)] += c
    return not any(sums.values())


def _div_one_minus_t(p: Mapping[Monomial, int]) -> dict[Monomial, int]:
    # p = (1 - t) q  =>  q_e = sum_{j <= e} p_j
    out: dict[Monomial, int] = {}
    for (ex, ew), row in _groups(p).items():
        lo, hi = min(row), max(row)
        acc = 0
        for e in range(lo, hi):
            acc += row.get(e, 0)
            if acc:
                out[(ex, ew, e)] = acc
        acc += row.get(hi, 0)
        if acc:
            raise ArithmeticError("polynomial is not divisible by (1 - t)")
    return out


class RatFun:
    """num / (1 - t)^k with num a Laurent polynomial in x, w, t.

    Instances are immutable and always canonical.
    """

    __slots__ = ("_num", "_k", "_hash")

    def __init__(self, num: Mapping[Monomial, int] | None = None, k: int = 0):
        if k < 0:
            raise ValueError("denominator power must be nonnegative")
        p = _clean(num or {})
        while k and p and divisible_by_one_minus_t(p):
            p = _div_one_minus_t(p)
            k -= 1
        if not p:
            k = 0
        self._num = p
        self._k = k
        self._hash: int | None = None

    # -- constructors -------------------------------------------------
    @classmethod
    def const(cls, c: int) -> RatFun:
        return cls({(0, 0, 0): c})

    @classmethod
    def monomial(cls, ex: int = 0, ew: int = 0, et: int = 0, coeff: int = 1) -> RatFun:
        return cls({(ex, ew, et): coeff})

    @classmethod
    def _raw(cls, num: dict[Monomial, int], k: int) -> RatFun:
        obj = cls.__new__(cls)
        obj._num = num
        obj._k = k
        obj._hash = None
        return obj

    # -- accessors ----------------------------------------------------
    @property
    def k(self) -> int:
        return self._k

    @property
    def num(self) -> dict[Monomial, int]:
        return dict(self._num)

    def terms(self) -> list[tuple[Monomial, int]]:
        """Numerator terms in canonical monomial order."""
        return sorted(self._num.items(), key=lambda mc: _order_key(mc[0]))

    def is_zero(self) -> bool:
        return not self._num

    def x_free(self) -> bool:
        return all(m[0] == 0 for m in self._num)

    # -- arithmetic ---------------------------------------------------
    def _coerce(self, other) -> RatFun:
        if isinstance(other, RatFun):
            return other
        if isinstance(other, int):
            return RatFun.const(other)
        return NotImplemented

    def __add__(self, other) -> RatFun:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other._num:
            return self
        if not self._num:
            return other
        k = max(self._k, other._k)
        a = _mul_one_minus_t(self._num, k - self._k)
        b = _mul_one_minus_t(other._num, k - other._k)
        return RatFun(_poly_add(a, b), k)

    __radd__ = __add__

    def __neg__(self) -> RatFun:
        return RatFun._raw({m: -c for m, c in self._num.items()}, self._k)

    def __sub__(self, other) -> RatFun:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> RatFun:
        return (-self) + other

    def __mul__(self, other) -> RatFun:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self._num or not other._num:
            return ZERO
        num, k = _poly_mul(self._num, other._num), self._k + other._k
        if not k:
            return RatFun._raw(num, 0)
        # a factor with k == 0 may still carry (1 - t) in its numerator
        if self._k and other._k:
            return RatFun._raw(num, k)
        return RatFun(num, k)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> RatFun:
        if n < 0:
            return ONE / (self ** (-n))
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __truediv__(self, other) -> RatFun:
        """Divide by a unit of the ring: ±monomial * (1 - t)^j / (1 - t)^i.

        Anything else would leave the ring and raises ArithmeticError.
        """
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other._num:
            raise ZeroDivisionError("division by zero RatFun")
        p = other._num
        j = 0
        while divisible_by_one_minus_t(p):
            p = _div_one_minus_t(p)
            j += 1
        if len(p) != 1:
            raise ArithmeticError(f"{other} is not a unit of Z[x,w,t]_(1-t)")
        ((ex, ew, et), c), = p.items()
        if c not in (1, -1):
            raise ArithmeticError(f"{other} is not a unit of Z[x,w,t]_(1-t)")
        inv_mono = {(-ex, -ew, -et): c}
        num = _mul_one_minus_t(_poly_mul(self._num, inv_mono), other._k)
        return RatFun(num, self._k + j)

    def __rtruediv__(self, other) -> RatFun:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = RatFun.const(other)
        if not isinstance(other, RatFun):
            return NotImplemented
        return self._k == other._k and self._num == other._num

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._k, frozenset(self._num.items())))
        return self._hash

    def normalize(self) -> RatFun:
        return RatFun(self._num, self._k)

    # -- text / json --------------------------------------------------
    def __str__(self) -> str:
        return to_text(self)

    def __repr__(self) -> str:
        return f"RatFun({to_text(self)!r})"

    def to_json(self) -> dict:
        return {"num": [[ex, ew, et, c] for (ex, ew, et), c in self.terms()], "k": self._k}

    @classmethod
    def from_json(cls, obj: Mapping | str) -> RatFun:
        if isinstance(obj, str):
            obj = json.loads(obj)
        num = {}
        for ex, ew, et, c in obj["num"]:
            if (ex, ew, et) in num:
                raise ValueError(f"duplicate monomial {(ex, ew, et)}")
            num[(int(ex), int(ew), int(et))] = int(c)
        return cls(num, int(obj["k"]))

    def sort_key(self) -> str:
        return to_text(self)


ZERO = RatFun()
ONE = RatFun.const(1)
X = RatFun.monomial(ex=1)
W = RatFun.monomial(ew=1)
T = RatFun.monomial(et=1)
ONE_MINUS_T = RatFun({(0, 0, 0): 1, (0, 0, 1): -1})


def equals(a: RatFun, b: RatFun) -> bool:
    return a == b


# -- skein constants ------------------------------------------------------

class SkeinCoefficients(NamedTuple):
    c_plus: RatFun  # 1/w
    c_minus: RatFun  # w
    c_merge: RatFun  # 1 - t^-1
    c_merge_plus: RatFun  # (1/w)(1 - t^-1)


def scale_coeffs() -> SkeinCoefficients:
    one_minus_tinv = RatFun({(0, 0, 0): 1, (0, 0, -1): -1})
    return SkeinCoefficients(
        c_plus=RatFun.monomial(ew=-1),
        c_minus=W,
        c_merge=one_minus_tinv,
        c_merge_plus=RatFun.monomial(ew=-1) * one_minus_tinv,
    )


def va_coeffs() -> tuple[RatFun, RatFun, RatFun]:
    """Coefficients of F(L-), F(L-,~), F(L~) giving F(L+) for distinct colors."""
    tm1 = T - 1
    return (W * W, W * W * tm1, W * tm1)


def vb_coeffs() -> tuple[RatFun, RatFun, RatFun]:
    """Coefficients of F(L+), F(L+,~), F(L~) giving F(L-) for distinct colors."""
    winv = RatFun.monomial(ew=-1)
    tinv_m1 = RatFun.monomial(et=-1) - 1
    return (winv * winv, winv * winv * tinv_m1, winv * tinv_m1)


def iv_coeffs(sign: int) -> tuple[RatFun, RatFun]:
    """Coefficients of (F(switched), F(smoothed)) for a same-color crossing of given sign."""
    if sign > 0:
        return (RatFun.monomial(ew=2, et=1), W * (T - 1))
    return (RatFun.monomial(ew=-2, et=-1), RatFun.monomial(ew=-1) * (RatFun.monomial(et=-1) - 1))


def y_constant() -> RatFun:
    """y = x(tw^2 - 1)/(1 - t)."""
    return RatFun({(1, 2, 1): 1, (1, 0, 0): -1}, 1)


def inv_wx() -> RatFun:
    return RatFun.monomial(ex=-1, ew=-1)


# -- Jones specialization -------------------------------------------------

class SFraction(NamedTuple):
    """Laurent polynomial in s over (1 - s^2)^k, canceled."""

    terms: tuple[tuple[int, int], ...]  # (exponent, coeff), ascending exponent
    k: int

    def __str__(self) -> str:
        body = _join_terms(
            [(c, _factor_str("s", e)) for e, c in self.terms]
        )
        if self.k == 0:
            return body
        den = "(1-s^2)" if self.k == 1 else f"(1-s^2)^{self.k}"
        return f"({body}) / {den}"

    def is_polynomial(self) -> bool:
        return self.k == 0


def _s_div_one_minus_s2(p: dict[int, int]) -> dict[int, int] | None:
    # p = (1 - s^2) q  =>  q_e = p_e + q_{e-2}
    if not p:
        return {}
    lo, hi = min(p), max(p)
    q: dict[int, int] = {}
    for e in range(lo, hi - 1):
        v = p.get(e, 0) + q.get(e - 2, 0)
        if v:
            q[e] = v
    # remainder check for the top two exponents
    for e in (hi - 1, hi):
        if p.get(e, 0) + q.get(e - 2, 0):
            return None
    return q


def substitute_jones(r: RatFun) -> SFraction:
    """Map w -> s, t -> s^2 (so w = t^(1/2)) and cancel (1 - s^2) factors."""
    p: dict[int, int] = defaultdict(int)
    for (ex, ew, et), c in r._num.items():
        if ex:
            raise ValueError("value depends on x; not a single-color invariant")
        p[ew + 2 * et] += c
    p = {e: c for e, c in p.items() if c}
    k = r.k
    while k and p:
        q = _s_div_one_minus_s2(p)
        if q is None:
            break
        p, k = q, k - 1
    if not p:
        k = 0
    return SFraction(tuple(sorted(p.items())), k)


# -- text format ----------------------------------------------------------

def _factor_str(var: str, e: int) -> str:
    if e == 0:
        return ""
    if e == 1:
        return var
    return f"{var}^{e}"


def _mono_str(m: Monomial) -> str:
    return "*".join(f for f in (_factor_str(v, e) for v, e in zip(_VARS, m)) if f)


def _join_terms(items: Iterable[tuple[int, str]]) -> str:
    out = []
    for i, (c, mono) in enumerate(items):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if mono:
            body = mono if a == 1 else f"{a}*{mono}"
        else:
            body = str(a)
        if i == 0:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out) if out else "0"


def to_text(r: RatFun) -> str:
    """Canonical plain-text rendering.

    The numerator's negative-exponent content is factored out into the
    denominator: ``(num) / ((1-t)^k * x^a * w^b * t^c)``.
    """
    if r.is_zero():
        return "0"
    shift = [0, 0, 0]
    for m in r._num:
        for i in range(3):
            shift[i] = min(shift[i], m[i])
    num = {
        (m[0] - shift[0], m[1] - shift[1], m[2] - shift[2]): c for m, c in r._num.items()
    }
    body = _join_terms(
        (c, _mono_str(m)) for m, c in sorted(num.items(), key=lambda mc: _order_key(mc[0]))
    )
    den = []
    if r.k == 1:
        den.append("(1-t)")
    elif r.k > 1:
        den.append(f"(1-t)^{r.k}")
    for v, e in zip(_VARS, shift):
        if e:
            den.append(_factor_str(v, -e))
    if not den:
        return body
    if len(num) > 1:
        body = f"({body})"
    return f"{body} / ({' * '.join(den)})" if len(den) > 1 else f"{body} / {den[0]}"


_TERM_RE = re.compile(r"^(\d+)?\*?((?:[xwt](?:\^-?\d+)?\*?)*)$")
_FACTOR_RE = re.compile(r"([xwt])(?:\^(-?\d+))?")


def _parse_poly(text: str) -> dict[Monomial, int]:
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    text = text.replace(" ", "")
    if text == "0":
        return {}
    out: dict[Monomial, int] = defaultdict(int)
    for sign, body in re.findall(r"([+-]?)([^+-]+)", text):
        m = _TERM_RE.match(body)
        if not m:
            raise ValueError(f"cannot parse term {body!r}")
        coeff = int(m.group(1)) if m.group(1) else 1
        exps = [0, 0, 0]
        for var, e in _FACTOR_RE.findall(m.group(2)):
            exps[_VARS.index(var)] += int(e) if e else 1
        if not m.group(1) and not m.group(2):
            raise ValueError(f"empty term in {text!r}")
        out[tuple(exps)] += -coeff if sign == "-" else coeff
    return _clean(out)


def from_text(text: str) -> RatFun:
    """Inverse of :func:`to_text`."""
    text = text.strip()
    if " / " not in text:
        return RatFun(_parse_poly(text))
    num_s, den_s = text.split(" / ", 1)
    num = _parse_poly(num_s)
    den_s = den_s.strip()
    if " * " in den_s:
        den_s = den_s[1:-1]
    k = 0
    shift = [0, 0, 0]
    for factor in den_s.split(" * "):
        factor = factor.strip()
        if factor.startswith("(1-t)"):
            rest = factor[len("(1-t)"):]
            k += int(rest[1:]) if rest.startswith("^") else 1
        else:
            fm = _FACTOR_RE.fullmatch(factor)
            if not fm:
                raise ValueError(f"cannot parse denominator factor {factor!r}")
            shift[_VARS.index(fm.group(1))] += int(fm.group(2)) if fm.group(2) else 1
    num = {(m[0] - shift[0], m[1] - shift[1], m[2] - shift[2]): c for m, c in num.items()}
    return RatFun(num, k)


# -- sympy bridge ---------------------------------------------------------

def from_sympy(expr) -> RatFun:
    """Convert a sympy expression in x, w, t whose denominator is a unit of the ring."""
    import sympy as sp

    x, w, t = sp.symbols("x w t")
    num_e, den_e = sp.fraction(sp.together(sp.sympify(expr)))
    return _sympy_poly(num_e, x, w, t) / _sympy_poly(den_e, x, w, t)


def _sympy_poly(e, x, w, t) -> RatFun:
    import sympy as sp

    poly = sp.Poly(sp.expand(e), x, w, t)
    return RatFun({tuple(int(v) for v in mono): int(c) for mono, c in poly.terms()})


def parse_expression(text: str) -> RatFun:
    """Parse a human-written formula such as ``(t w^2-1)/((1-t) w)``."""
    import sympy as sp
    from sympy.parsing.sympy_parser import (
        convert_xor,
        implicit_multiplication_application,
        parse_expr,
        standard_transformations,
    )

    x, w, t = sp.symbols("x w t")
    cleaned = text.replace("−", "-").replace("\n", " ")
    expr = parse_expr(
        cleaned,
        local_dict={"x": x, "w": w, "t": t},
        transformations=standard_transformations + (implicit_multiplication_application, convert_xor),
    )
    return from_sympy(expr)


def to_sympy(r: RatFun):
    import sympy as sp

    x, w, t = sp.symbols("x w t")
    num = sum(c * x**a * w**b * t**e for (a, b, e), c in r._num.items())
    return num / (1 - t) ** r.k
