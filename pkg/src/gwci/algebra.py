"""
Exact arithmetic used throughout the package.

Three kinds of objects live here:

* rationals, which are plain :class:`fractions.Fraction` values;
* :class:`CohomClass`, an element of the truncated ring ``Q[H]/(H^{r+1})``;
* :class:`Laurent`, a finitely supported Laurent polynomial in a fixed number
  of variables whose coefficients are rationals or cohomology classes.

Nothing in this module ever touches a float.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Dict, Iterable, Iterator, Mapping, Tuple

Exponent = Tuple[int, ...]


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


class CohomClass:
    """
    A class ``sum_j c_j H^j`` in ``Q[H]/(H^{r+1})``.

    EXAMPLES::

        >>> H = CohomClass.hyperplane(5)
        >>> (H**2) * (H**3) == CohomClass.monomial(5, 5)
        True
        >>> (H**3 * H**4).is_zero()
        True
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable):
        c = tuple(as_fraction(x) for x in coeffs)
        if not c:
            raise ValueError("a cohomology class needs at least one coefficient")
        self._coeffs = c

    @classmethod
    def zero(cls, r: int) -> "CohomClass":
        return cls([0] * (r + 1))

    @classmethod
    def one(cls, r: int) -> "CohomClass":
        return cls.monomial(0, r)

    @classmethod
    def monomial(cls, j: int, r: int, coeff=1) -> "CohomClass":
        c = [0] * (r + 1)
        if 0 <= j <= r:
            c[j] = coeff
        elif j < 0:
            raise ValueError(f"negative H-power {j}")
        return cls(c)

    @classmethod
    def hyperplane(cls, r: int) -> "CohomClass":
        return cls.monomial(1, r)

    @property
    def r(self) -> int:
        return len(self._coeffs) - 1

    @property
    def coeffs(self) -> Tuple[Fraction, ...]:
        return self._coeffs

    def __getitem__(self, j: int) -> Fraction:
        if 0 <= j <= self.r:
            return self._coeffs[j]
        return Fraction(0)

    def _check(self, other: "CohomClass"):
        if other.r != self.r:
            raise ValueError(
                f"ring dimension mismatch: H^{self.r + 1}=0 vs H^{other.r + 1}=0")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CohomClass.monomial(0, self.r, other)
        if not isinstance(other, CohomClass):
            return NotImplemented
        self._check(other)
        return CohomClass(x + y for x, y in zip(self._coeffs, other._coeffs))

    __radd__ = __add__

    def __neg__(self):
        return CohomClass(-x for x in self._coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CohomClass(x * other for x in self._coeffs)
        if not isinstance(other, CohomClass):
            return NotImplemented
        return cup(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a cohomology class")
        out = CohomClass.one(self.r)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CohomClass.monomial(0, self.r, other)
        if not isinstance(other, CohomClass):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(self._coeffs)

    def is_zero(self) -> bool:
        return not any(self._coeffs)

    __bool__ = lambda self: not self.is_zero()

    def top(self) -> Fraction:
        return self._coeffs[-1]

    def __repr__(self):
        terms = []
        for j, c in enumerate(self._coeffs):
            if c:
                mono = "1" if j == 0 else ("H" if j == 1 else f"H^{j}")
                terms.append(f"{c}*{mono}")
        return "CohomClass(" + (" + ".join(terms) or "0") + f"; r={self.r})"


def cup(x: CohomClass, y: CohomClass) -> CohomClass:
    """Cup product, truncated above the top degree ``r``."""
    x._check(y)
    r = x.r
    out = [Fraction(0)] * (r + 1)
    for p, xp in enumerate(x.coeffs):
        if not xp:
            continue
        for q in range(r + 1 - p):
            yq = y.coeffs[q]
            if yq:
                out[p + q] += xp * yq
    return CohomClass(out)


def integrate(x: CohomClass, target) -> Fraction:
    """Integral over the target; ``H^r`` integrates to the degree ``L``."""
    if x.r != target.r:
        raise ValueError(f"class lives in a ring with r={x.r}, target has r={target.r}")
    return target.L * x.top()


class Laurent:
    """
    Finitely supported Laurent polynomial in ``nvars`` variables.

    Coefficients may be :class:`~fractions.Fraction` or :class:`CohomClass`;
    zero coefficients are never stored. Extraction with :meth:`coeff` is total.
    """

    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars: int, terms: Mapping[Exponent, object] | None = None):
        self.nvars = nvars
        clean: Dict[Exponent, object] = {}
        if terms:
            for e, c in terms.items():
                if len(e) != nvars:
                    raise ValueError(f"exponent {e} does not have {nvars} entries")
                if isinstance(c, int):
                    c = Fraction(c)
                if c:
                    clean[tuple(e)] = c
        self._terms = clean

    @classmethod
    def _raw(cls, nvars: int, terms: Dict[Exponent, object]) -> "Laurent":
        out = cls.__new__(cls)
        out.nvars = nvars
        out._terms = terms
        return out

    @classmethod
    def monomial(cls, exponent: Exponent, coeff=1) -> "Laurent":
        return cls(len(exponent), {tuple(exponent): coeff})

    @classmethod
    def constant(cls, nvars: int, coeff=1) -> "Laurent":
        return cls(nvars, {(0,) * nvars: coeff})

    def items(self) -> Iterator[Tuple[Exponent, object]]:
        return iter(self._terms.items())

    def support(self):
        return self._terms.keys()

    def __len__(self):
        return len(self._terms)

    def coeff(self, exponent: Exponent, default=Fraction(0)):
        return self._terms.get(tuple(exponent), default)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if not isinstance(other, Laurent):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self._terms.items())))

    def __add__(self, other: "Laurent") -> "Laurent":
        if not isinstance(other, Laurent):
            return NotImplemented
        if other.nvars != self.nvars:
            raise ValueError("variable count mismatch")
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e)
            s = c if s is None else s + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Laurent._raw(self.nvars, out)

    def __neg__(self):
        return Laurent._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "Laurent":
        if not s:
            return Laurent(self.nvars)
        return Laurent._raw(self.nvars, {e: c * s for e, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CohomClass)):
            return Laurent(self.nvars, {e: c * other for e, c in self._terms.items()})
        if not isinstance(other, Laurent):
            return NotImplemented
        if other.nvars != self.nvars:
            raise ValueError("variable count mismatch")
        out: Dict[Exponent, object] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                p = c1 * c2
                s = out.get(e)
                out[e] = p if s is None else s + p
        return Laurent(self.nvars, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, CohomClass)):
            return self.__mul__(other)
        return NotImplemented

    def shift(self, exponent: Exponent) -> "Laurent":
        """Multiply by the monomial with the given exponent vector."""
        return Laurent._raw(
            self.nvars,
            {tuple(a + b for a, b in zip(e, exponent)): c for e, c in self._terms.items()})

    def select(self, predicate) -> "Laurent":
        return Laurent._raw(self.nvars, {e: c for e, c in self._terms.items() if predicate(e)})

    def __repr__(self):
        if not self._terms:
            return f"Laurent({self.nvars}, 0)"
        body = " + ".join(f"{c}*x^{e}" for e, c in sorted(self._terms.items()))
        return f"Laurent({self.nvars}, {body})"


def convolve(p: Laurent, q: Laurent) -> Laurent:
    """Reference product by explicit pairwise convolution (used as a test oracle)."""
    total = Laurent(p.nvars)
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            total = total + Laurent.monomial(tuple(a + b for a, b in zip(e1, e2)), c1 * c2)
    return total


def divisor_power(e: int, b: int, target) -> Laurent:
    """
    The class-valued polynomial ``(H - e t)^b`` in one variable ``t``.

    >>> class T: r = 5
    >>> p = divisor_power(2, 2, T)
    >>> [(k, p.coeff(k)[2 - k[0]]) for k in sorted(p.support())]
    [((0,), Fraction(1, 1)), ((1,), Fraction(-4, 1)), ((2,), Fraction(4, 1))]
    """
    if b < 0:
        raise ValueError(f"negative exponent b={b}")
    r = target.r
    terms = {}
    for j in range(min(b, r) + 1):
        c = comb(b, j) * (-e) ** (b - j)
        if c:
            terms[(b - j,)] = CohomClass.monomial(j, r, c)
    return Laurent(1, terms)


def binomial_expansion(e: int, b: int):
    """``(H - e t)^b`` as a list of ``(H-power, t-power, coefficient)``."""
    return [(j, b - j, comb(b, j) * (-e) ** (b - j)) for j in range(b + 1)
            if comb(b, j) * (-e) ** (b - j)]


def parse_fraction(text: str) -> Fraction:
    """Parse the ``numerator/denominator`` wire form of a rational."""
    if not isinstance(text, str):
        raise ValueError(f"rational must be a string, got {text!r}")
    num, sep, den = text.partition("/")
    if not sep:
        raise ValueError(f"malformed rational {text!r}: expected 'p/q'")
    try:
        p, q = int(num, 10), int(den, 10)
    except ValueError:
        raise ValueError(f"malformed rational {text!r}") from None
    if q <= 0:
        raise ValueError(f"malformed rational {text!r}: denominator must be positive")
    return Fraction(p, q)


def format_fraction(x: Fraction) -> str:
    x = as_fraction(x)
    return f"{x.numerator}/{x.denominator}"
