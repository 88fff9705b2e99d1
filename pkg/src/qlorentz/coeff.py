"""Exact coefficients: rational functions in s = q^(1/2) over the Gaussian rationals.

Every structure constant of the two quantum groups lives in Q(i)(s).  ``q`` is
``s**2`` and is treated as real, so complex conjugation acts on the Gaussian
coefficients only.  Values are reduced eagerly, which makes evaluation and
limits at ``q = 1`` well defined.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from gmpy2 import mpq

_RATIONAL = (int, Fraction, type(mpq()))


class CoefficientError(ArithmeticError):
    """Base class for failures of exact coefficient arithmetic."""


class PoleError(CoefficientError):
    """The reduced fraction has a pole at s = 1."""


class DivergentLimitError(CoefficientError):
    """``x / ln q`` has no finite limit because ``x(1) != 0``."""


class GaussianRational:
    """Element ``real + imag*i`` of Q(i), both parts kept as reduced fractions (gmpy2 ``mpq``)."""

    __slots__ = ("real", "imag", "_hash")

    def __init__(self, real: int | Fraction = 0, imag: int | Fraction = 0):
        self.real = mpq(real)
        self.imag = mpq(imag)
        self._hash = None

    @classmethod
    def _raw(cls, real, imag) -> GaussianRational:
        # arithmetic results are already mpq; skip re-validation
        g = object.__new__(cls)
        g.real = real
        g.imag = imag
        g._hash = None
        return g

    @classmethod
    def coerce(cls, value) -> GaussianRational:
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, _RATIONAL):
            return cls(value)
        if isinstance(value, complex):
            raise TypeError("floating point complex values are not exact")
        raise TypeError(f"cannot convert {type(value).__name__} to GaussianRational")

    def __add__(self, other):
        if not isinstance(other, GaussianRational):
            if isinstance(other, _RATIONAL):
                return GaussianRational(self.real + other, self.imag)
            return NotImplemented
        return _G(self.real + other.real, self.imag + other.imag)

    __radd__ = __add__

    def __neg__(self):
        return _G(-self.real, -self.imag)

    def __sub__(self, other):
        if not isinstance(other, GaussianRational):
            if isinstance(other, _RATIONAL):
                return GaussianRational(self.real - other, self.imag)
            return NotImplemented
        return _G(self.real - other.real, self.imag - other.imag)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, GaussianRational):
            if isinstance(other, _RATIONAL):
                return GaussianRational(self.real * other, self.imag * other)
            return NotImplemented
        a, b, c, d = self.real, self.imag, other.real, other.imag
        if not b and not d:
            return _G(a * c, _FZERO)
        return _G(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self) -> GaussianRational:
        a, b = self.real, self.imag
        if not b:
            if not a:
                raise ZeroDivisionError("GaussianRational division by zero")
            return GaussianRational(1 / a)
        norm = a * a + b * b
        return GaussianRational(a / norm, -b / norm)

    def __truediv__(self, other):
        if not isinstance(other, GaussianRational):
            if isinstance(other, _RATIONAL):
                if not other:
                    raise ZeroDivisionError("GaussianRational division by zero")
                return GaussianRational(self.real / other, self.imag / other)
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def conjugate(self) -> GaussianRational:
        if not self.imag:
            return self
        return _G(self.real, -self.imag)

    def __bool__(self):
        return bool(self.real) or bool(self.imag)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.real == other.real and self.imag == other.imag
        if isinstance(other, _RATIONAL):
            return not self.imag and self.real == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.real) if not self.imag else hash((self.real, self.imag))
        return self._hash

    def __complex__(self):
        return complex(float(self.real), float(self.imag))

    def is_real(self) -> bool:
        return not self.imag

    def __repr__(self):
        return f"GaussianRational({self.real}, {self.imag})"

    def __str__(self):
        return _gauss_str(self)


_G = GaussianRational._raw
_FZERO = mpq(0)
ZERO_G = GaussianRational(0)
ONE_G = GaussianRational(1)

Poly = tuple  # coefficients low -> high, no trailing zeros; () is zero


def _trim(coeffs: list) -> Poly:
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    return tuple(coeffs[:n])


def _padd(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = out[i] + c
    return _trim(out)


def _pneg(a: Poly) -> Poly:
    return tuple(-c for c in a)


def _pscale(a: Poly, c: GaussianRational) -> Poly:
    if not c:
        return ()
    return tuple(x * c for x in a)


def _pmul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    if len(a) == 1:
        return _pscale(b, a[0])
    if len(b) == 1:
        return _pscale(a, b[0])
    out = [ZERO_G] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = out[i + j] + x * y
    return _trim(out)


def _pdivmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    lead_inv = b[-1].inverse()
    quot = [ZERO_G] * max(len(a) - len(b) + 1, 0)
    for shift in range(len(a) - len(b), -1, -1):
        c = rem[shift + len(b) - 1]
        if not c:
            continue
        factor = c * lead_inv
        quot[shift] = factor
        for j, y in enumerate(b):
            rem[shift + j] = rem[shift + j] - factor * y
    return _trim(quot), _trim(rem[: len(b) - 1])


def _pmonic(a: Poly) -> Poly:
    if not a or a[-1] == ONE_G:
        return a
    inv = a[-1].inverse()
    return tuple(c * inv for c in a)


def _pgcd(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, _pdivmod(a, b)[1]
    return _pmonic(a)


def _valuation(a: Poly) -> int:
    for i, c in enumerate(a):
        if c:
            return i
    return 0


def _pderiv(a: Poly) -> Poly:
    return _trim([c * i for i, c in enumerate(a)][1:])


def _peval_one(a: Poly) -> GaussianRational:
    total = ZERO_G
    for c in a:
        total = total + c
    return total


def _is_monomial(a: Poly) -> bool:
    return all(not c for c in a[:-1])


def _monomial(n: int, c: GaussianRational = ONE_G) -> Poly:
    return (ZERO_G,) * n + (c,)


def _reduce(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    """Return ``num/den`` in lowest terms with a monic denominator."""
    if not den:
        raise ZeroDivisionError("Scalar with zero denominator")
    if not num:
        return (), (ONE_G,)
    if _is_monomial(den):
        # s^k denominators: the only common factor can be a power of s
        shift = min(len(den) - 1, _valuation(num))
        if shift:
            num = num[shift:]
            den = den[shift:]
        lead = den[-1]
        if lead != ONE_G:
            inv = lead.inverse()
            num = _pscale(num, inv)
            den = den[:-1] + (ONE_G,)
        return num, den
    g = _pgcd(num, den)
    if len(g) > 1:
        num = _pdivmod(num, g)[0]
        den = _pdivmod(den, g)[0]
    lead = den[-1]
    if lead != ONE_G:
        inv = lead.inverse()
        num = _pscale(num, inv)
        den = _pscale(den, inv)
    return num, den


class Scalar:
    """An element of Q(i)(s), stored as a reduced fraction with monic denominator.

    Negative powers of ``s`` are admitted by folding them into the denominator.
    Instances are immutable and hashable; equality is equality of the canonical
    (numerator, denominator) pair.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Poly = (), den: Poly = (ONE_G,), *, reduced: bool = False):
        if not reduced:
            num, den = _reduce(_trim(list(num)), _trim(list(den)))
        self.num = num
        self.den = den
        self._hash = None

    # construction -----------------------------------------------------

    @classmethod
    def coerce(cls, value) -> Scalar:
        if isinstance(value, Scalar):
            return value
        if isinstance(value, _RATIONAL + (GaussianRational,)):
            g = GaussianRational.coerce(value)
            if not g:
                return ZERO
            return cls((g,), (ONE_G,), reduced=True)
        raise TypeError(f"cannot convert {type(value).__name__} to Scalar")

    @classmethod
    def from_laurent(cls, terms: Mapping[int, object]) -> Scalar:
        """Build ``sum c * s**n`` from a mapping ``{n: c}``; ``n`` may be negative."""
        terms = {n: GaussianRational.coerce(c) for n, c in terms.items() if c}
        if not terms:
            return ZERO
        low = min(min(terms), 0)
        coeffs = [ZERO_G] * (max(terms) - low + 1)
        for n, c in terms.items():
            coeffs[n - low] = c
        return cls(tuple(coeffs), _monomial(-low))

    @classmethod
    def s_power(cls, n: int, coeff=1) -> Scalar:
        """``coeff * s**n``, i.e. ``coeff * q**(n/2)``."""
        return cls.from_laurent({n: coeff})

    @classmethod
    def parse(cls, text: str) -> Scalar:
        from .expr import parse_scalar

        return parse_scalar(text)

    # arithmetic -------------------------------------------------------

    def __add__(self, other):
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            return Scalar(_padd(self.num, other.num), self.den)
        num = _padd(_pmul(self.num, other.den), _pmul(other.num, self.den))
        return Scalar(num, _pmul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return Scalar(_pneg(self.num), self.den, reduced=True)

    def __sub__(self, other):
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return Scalar.coerce(other) - self

    def __mul__(self, other):
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        if not self.num or not other.num:
            return ZERO
        if len(other.num) == 1 and other.den == (ONE_G,):
            return Scalar(_pscale(self.num, other.num[0]), self.den, reduced=True)
        if len(self.num) == 1 and self.den == (ONE_G,):
            return Scalar(_pscale(other.num, self.num[0]), other.den, reduced=True)
        return Scalar(_pmul(self.num, other.num), _pmul(self.den, other.den))

    __rmul__ = __mul__

    def inverse(self) -> Scalar:
        if not self.num:
            raise ZeroDivisionError("Scalar division by zero")
        return Scalar(self.den, self.num)

    def __truediv__(self, other):
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Scalar.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> Scalar:
        """Complex conjugation ``i -> -i``; ``s`` is real and fixed."""
        if all(c.is_real() for c in self.num) and all(c.is_real() for c in self.den):
            return self
        return Scalar(
            tuple(c.conjugate() for c in self.num),
            tuple(c.conjugate() for c in self.den),
            reduced=True,
        )

    # comparison -------------------------------------------------------

    def __bool__(self):
        return bool(self.num)

    def is_zero(self) -> bool:
        return not self.num

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    # calculus at q = 1 ------------------------------------------------

    def derivative(self) -> Scalar:
        """Derivative with respect to ``s``."""
        num = _padd(_pmul(_pderiv(self.num), self.den), _pneg(_pmul(self.num, _pderiv(self.den))))
        return Scalar(num, _pmul(self.den, self.den))

    def eval_at_one(self) -> GaussianRational:
        """Value at ``s = 1`` (equivalently ``q = 1``)."""
        d = _peval_one(self.den)
        if not d:
            raise PoleError(f"{self} has a pole at q = 1")
        return _peval_one(self.num) / d

    def limit_div_lnq(self) -> GaussianRational:
        """``lim_{q -> 1} x(q) / ln q``.

        With ``ln q = 2 ln s`` and ``x(1) = 0`` this is ``x'(1) / 2`` where the
        derivative is taken in ``s``.
        """
        if self.eval_at_one():
            raise DivergentLimitError(f"{self} does not vanish at q = 1; x/ln q diverges")
        d = _peval_one(self.den)
        return _peval_one(_pderiv(self.num)) / d / 2

    def evaluate(self, q: float | complex) -> complex:
        """Numeric value at a given ``q`` (principal square root for ``s``)."""
        s = cmath.sqrt(q)
        return _peval_float(self.num, s) / _peval_float(self.den, s)

    def laurent_terms(self) -> dict[int, GaussianRational] | None:
        """``{n: c}`` with ``x = sum c s^n`` when ``x`` is a Laurent polynomial, else None."""
        if not _is_monomial(self.den):
            return None
        shift = len(self.den) - 1
        return {i - shift: c for i, c in enumerate(self.num) if c}

    def is_real(self) -> bool:
        return self.conjugate() == self

    # display ----------------------------------------------------------

    def __repr__(self):
        return f"Scalar({str(self)!r})"

    def __str__(self):
        if not self.num:
            return "0"
        if _is_monomial(self.den):
            return _laurent_str(self.num, -(len(self.den) - 1))
        v = _valuation(self.den)
        numerator = _laurent_str(self.num, -v)
        if sum(1 for c in self.num if c) > 1:
            numerator = f"({numerator})"
        denominator = _laurent_str(self.den[v:], 0)
        return f"{numerator}/({denominator})"

    def is_single_term(self) -> bool:
        """True for ``c * s**n``; used by printers to decide on parentheses."""
        return _is_monomial(self.den) and sum(1 for c in self.num if c) == 1


def _peval_float(a: Poly, s: complex) -> complex:
    total = 0j
    for c in reversed(a):
        total = total * s + complex(c)
    return total


def _gauss_str(g: GaussianRational) -> str:
    re, im = g.real, g.imag
    if not im:
        return str(re)
    if not re:
        if im == 1:
            return "i"
        if im == -1:
            return "-i"
        return f"{im}*i"
    sign = "+" if im > 0 else "-"
    mag = abs(im)
    imag_part = "i" if mag == 1 else f"{mag}*i"
    return f"({re}{sign}{imag_part})"


def _power_str(n: int) -> str:
    if n == 0:
        return ""
    if n == 2:
        return "q"
    if n % 2 == 0:
        return f"q^{n // 2}"
    return f"q^({n}/2)"


def _laurent_str(coeffs: Poly, shift: int) -> str:
    """Render ``sum coeffs[i] s^(i+shift)`` in descending powers of s."""
    parts: list[str] = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        power = _power_str(i + shift)
        negative = False
        if c.is_real() and c.real < 0:
            negative, c = True, -c
        elif not c.real and c.imag < 0:
            negative, c = True, -c
        if c == ONE_G and power:
            body = power
        else:
            body = _gauss_str(c) + (f"*{power}" if power else "")
        if not parts:
            parts.append(("-" if negative else "") + body)
        else:
            parts.append((" - " if negative else " + ") + body)
    return "".join(parts) if parts else "0"


ZERO = Scalar((), (ONE_G,), reduced=True)
ONE = Scalar((ONE_G,), (ONE_G,), reduced=True)
I = Scalar((GaussianRational(0, 1),), (ONE_G,), reduced=True)
S = Scalar.s_power(1)
Q = Scalar.s_power(2)
Q_INV = Scalar.s_power(-2)

ScalarLike = Union[Scalar, GaussianRational, int, Fraction]


def qnum(n: int) -> Scalar:
    """``q**n`` for integer ``n``."""
    return Scalar.s_power(2 * n)


def solve_linear(columns: Sequence[Mapping], target: Mapping) -> list[Scalar]:
    """Solve ``sum_j x_j * columns[j] == target`` for Scalars ``x_j``.

    Columns and target are sparse vectors (mappings key -> Scalar).  Raises
    ``ValueError`` when the system is inconsistent or the solution not unique.
    """
    ncols = len(columns)
    rows: dict = {}
    for j, col in enumerate(columns):
        for key, value in col.items():
            if value:
                rows.setdefault(key, {})[j] = Scalar.coerce(value)
    rhs = {key: Scalar.coerce(v) for key, v in target.items() if v}
    for key in rhs:
        rows.setdefault(key, {})
    equations = [(dict(rows[key]), rhs.get(key, ZERO)) for key in sorted(rows, key=repr)]

    pivots: list[tuple[int, dict, Scalar]] = []
    for row, value in equations:
        for pcol, prow, pval in pivots:
            factor = row.get(pcol)
            if factor:
                for j, c in prow.items():
                    updated = row.get(j, ZERO) - factor * c
                    if updated:
                        row[j] = updated
                    else:
                        row.pop(j, None)
                value = value - factor * pval
        if not row:
            if value:
                raise ValueError("inconsistent linear system")
            continue
        pcol = min(row)
        inv = row[pcol].inverse()
        prow = {j: c * inv for j, c in row.items()}
        pval = value * inv
        # keep earlier pivot rows reduced in the new pivot column
        reduced = []
        for ocol, orow, oval in pivots:
            factor = orow.get(pcol)
            if factor:
                orow = dict(orow)
                for j, c in prow.items():
                    updated = orow.get(j, ZERO) - factor * c
                    if updated:
                        orow[j] = updated
                    else:
                        orow.pop(j, None)
                oval = oval - factor * pval
            reduced.append((ocol, orow, oval))
        pivots = reduced + [(pcol, prow, pval)]
    if len(pivots) != ncols:
        raise ValueError("linear system does not have a unique solution")
    solution = [ZERO] * ncols
    for pcol, prow, pval in pivots:
        solution[pcol] = pval
    return solution


def as_scalars(values: Iterable) -> list[Scalar]:
    return [Scalar.coerce(v) for v in values]
