"""
Small quantum cohomology of the subring generated by ``H``.

Only two-point invariants are needed: the divisor equation turns
``<H, H^c, H^b>_d`` into ``d <H^c, H^b>_d``, which gives the operator of
quantum multiplication by ``H``.  Every other product follows because classical
``H^a`` is a (unitriangular) quantum polynomial in ``H``.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import as_fraction, format_fraction
from .ifunction import Target
from .report import Check, Report
from .twopoint import TwoPointTable, table_for


class QSeries:
    """
    A polynomial in the quantum parameter ``q`` with rational coefficients.

    >>> (QSeries([1, 2]) * QSeries([0, 1])).coeffs
    (Fraction(0, 1), Fraction(1, 1), Fraction(2, 1))
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        c = [as_fraction(x) for x in coeffs]
        while c and not c[-1]:
            c.pop()
        self.coeffs: Tuple[Fraction, ...] = tuple(c)

    @classmethod
    def const(cls, x) -> "QSeries":
        return cls([x])

    @classmethod
    def monomial(cls, d: int, x=1) -> "QSeries":
        return cls([0] * d + [x])

    def __getitem__(self, d: int) -> Fraction:
        return self.coeffs[d] if 0 <= d < len(self.coeffs) else Fraction(0)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def __add__(self, other):
        if not isinstance(other, QSeries):
            other = QSeries.const(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return QSeries([self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return QSeries([-x for x in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            return QSeries([x * other for x in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return QSeries()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return QSeries(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            other = QSeries.const(other)
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"QSeries({[str(x) for x in self.coeffs]})"

    def items(self):
        return [(d, c) for d, c in enumerate(self.coeffs) if c]


Vector = List[QSeries]


def _zero_vec(n: int) -> Vector:
    return [QSeries() for _ in range(n)]


def _apply(M: List[List[QSeries]], v: Vector) -> Vector:
    n = len(v)
    out = _zero_vec(n)
    for j in range(n):
        if not v[j]:
            continue
        for i in range(n):
            if M[i][j]:
                out[i] = out[i] + M[i][j] * v[j]
    return out


def mult_by_H(target: Target, table: Optional[TwoPointTable] = None) -> List[List[QSeries]]:
    """
    Matrix of quantum multiplication by ``H``; column ``c`` holds ``H * H^c``.

    The ``q^d`` entry in row ``c'`` is ``d <H^c, H^{r-c'}>_d / L``.
    """
    table = table or table_for(target)
    r, L = target.r, target.L
    table.fill(target.d_max)
    M = [[QSeries() for _ in range(r + 1)] for _ in range(r + 1)]
    for c in range(r + 1):
        if c < r:
            M[c + 1][c] = QSeries.const(1)
        for d in range(1, target.d_max + 1):
            for cp in range(r + 1):
                v = table.value(c, r - cp, 0, d)
                if v:
                    M[cp][c] = M[cp][c] + QSeries.monomial(d, Fraction(d) * v / L)
    return M


def classical_in_quantum_basis(target: Target, M: List[List[QSeries]]) -> List[List[QSeries]]:
    """
    ``beta[a][k]`` with ``H^a = sum_k beta[a][k] * H^{*k}`` (quantum powers of ``H``).
    """
    r = target.r
    n = r + 1
    powers: List[Vector] = []
    w = _zero_vec(n)
    w[0] = QSeries.const(1)
    for k in range(n):
        powers.append(w)
        w = _apply(M, w)
    beta: List[List[QSeries]] = []
    for a in range(n):
        wa = powers[a]
        if wa[a] != QSeries.const(1) or any(wa[j] for j in range(a + 1, n)):
            raise AssertionError(f"H^(*{a}) is not unitriangular over the classical basis")
        ba = _zero_vec(n)
        ba[a] = QSeries.const(1)
        for j in range(a):
            if wa[j]:
                for k in range(j + 1):
                    ba[k] = ba[k] - wa[j] * beta[j][k]
        beta.append(ba)
    return beta


class QuantumRing:
    """Small quantum product on ``span(1, H, ..., H^r)`` of one target."""

    def __init__(self, target: Target, table: Optional[TwoPointTable] = None):
        self.target = target
        self.table = table or table_for(target)
        self.M = mult_by_H(target, self.table)
        self.beta = classical_in_quantum_basis(target, self.M)
        self._products: Dict[Tuple[int, int], Vector] = {}

    @property
    def rank(self) -> int:
        return self.target.r + 1

    def basis(self, b: int) -> Vector:
        v = _zero_vec(self.rank)
        v[b] = QSeries.const(1)
        return v

    def apply_power(self, v: Vector, a: int) -> Vector:
        """Quantum multiplication of ``v`` by classical ``H^a``."""
        out = _zero_vec(self.rank)
        w = list(v)
        for k in range(a + 1):
            if self.beta[a][k]:
                out = [x + self.beta[a][k] * y for x, y in zip(out, w)]
            w = _apply(self.M, w)
        return out

    def product(self, a: int, b: int) -> Vector:
        r = self.target.r
        if not (0 <= a <= r and 0 <= b <= r):
            raise ValueError(f"product indices must lie in [0, {r}]")
        if (a, b) not in self._products:
            self._products[(a, b)] = self.apply_power(self.basis(b), a)
        return self._products[(a, b)]

    def multiply(self, x: Vector, y: Vector) -> Vector:
        out = _zero_vec(self.rank)
        for a, xa in enumerate(x):
            if xa:
                out = [s + xa * t for s, t in zip(out, self.apply_power(y, a))]
        return out

    def product_table(self) -> Dict[Tuple[int, int], Vector]:
        return {(a, b): self.product(a, b) for a in range(self.rank) for b in range(self.rank)}

    def pairing(self, v: Vector, c: int) -> QSeries:
        """``integral((v) . H^c)`` coefficientwise in ``q``."""
        r = self.target.r
        return v[r - c] * self.target.L if 0 <= r - c <= r else QSeries()


def product(target: Target, a: int, b: int) -> Vector:
    return QuantumRing(target).product(a, b)


class DimensionConditionError(ValueError):
    pass


def two_point_count(target: Target, d: int, table: Optional[TwoPointTable] = None) -> Fraction:
    """Expected number of degree-``d`` rational curves through two general points."""
    if d < 1:
        raise ValueError("curve degree must be positive")
    if target.r != d * target.f - 1:
        raise DimensionConditionError(
            f"curves of degree {d} through two points on {target} need r = d*f - 1 "
            f"({target.r} != {d}*{target.f} - 1)")
    table = table or table_for(target)
    return table.value(target.r, target.r, 0, d) / target.L ** 2


# --- rendering ---------------------------------------------------------------


def _hpow(c: int) -> str:
    return "" if c == 0 else ("H" if c == 1 else f"H^{c}")


def _qpow(d: int) -> str:
    return "" if d == 0 else ("q" if d == 1 else f"q^{d}")


def render_vector(v: Vector) -> str:
    """Terms ordered by descending ``H``-power, e.g. ``H^4 + 1345qH^2 + 211200q^2``."""
    terms = []
    for c in range(len(v) - 1, -1, -1):
        for d, x in v[c].items():
            mono = _qpow(d) + _hpow(c)
            mag = abs(x)
            if mag == 1 and mono:
                coeff = ""
            elif mag.denominator == 1:
                coeff = str(mag.numerator)
            else:
                coeff = f"({mag})" if mono else str(mag)
            terms.append((x < 0, coeff + (mono or ("" if coeff else "1"))))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] else "") + terms[0][1]
    for neg, body in terms[1:]:
        out += (" - " if neg else " + ") + body
    return out


def render_table(ring: QuantumRing) -> str:
    lines = []
    for a in range(ring.rank):
        lhs = "H*1" if a == 0 else f"H*{_hpow(a)}"
        lines.append(f"{lhs} = {render_vector(ring.product(1, a))}")
    return "\n".join(lines)


def table_document(ring: QuantumRing) -> dict:
    """Machine form: every product ``H^a * H^b`` as exact ``p/q`` strings."""
    prods = []
    for (a, b), v in sorted(ring.product_table().items()):
        prods.append({
            "a": a, "b": b,
            "terms": [{"H": c, "q": d, "coeff": format_fraction(x)}
                      for c in range(len(v)) for d, x in v[c].items()],
        })
    return {"target": ring.target.fingerprint(), "products": prods}


def parse_table_document(doc: dict, rank: int) -> Dict[Tuple[int, int], Vector]:
    from .algebra import parse_fraction
    out = {}
    for p in doc["products"]:
        v = _zero_vec(rank)
        for t in p["terms"]:
            v[t["H"]] = v[t["H"]] + QSeries.monomial(t["q"], parse_fraction(t["coeff"]))
        out[(p["a"], p["b"])] = v
    return out


# --- properties --------------------------------------------------------------


def algebra_suite(ring: QuantumRing) -> Report:
    """Commutativity, associativity, grading and Frobenius symmetry, exactly."""
    X = ring.target
    n, f = ring.rank, X.f
    rep = Report()
    name = str(X)
    for a in range(n):
        for b in range(n):
            p = ring.product(a, b)
            rep.add(Check("commutativity", {"target": name, "a": a, "b": b}, p, ring.product(b, a)))
            bad = [(c, d) for c in range(n) for d, _ in p[c].items() if c + d * f != a + b]
            rep.add(Check("grading", {"target": name, "a": a, "b": b}, bad, []))
            for c in range(n):
                lhs = ring.apply_power(p, c)
                rhs = ring.multiply(ring.basis(a), ring.product(b, c))
                rep.add(Check("associativity", {"target": name, "a": a, "b": b, "c": c}, lhs, rhs))
                rep.add(Check("frobenius", {"target": name, "a": a, "b": b, "c": c},
                              ring.pairing(p, c), ring.pairing(ring.product(b, c), a)))
    if X.m == 0:
        for a in range(n):
            for b in range(n):
                expect = _zero_vec(n)
                s = a + b
                if s <= X.r:
                    expect[s] = QSeries.const(1)
                else:
                    expect[s - X.r - 1] = QSeries.monomial(1)
                rep.add(Check("projective space", {"target": name, "a": a, "b": b},
                              ring.product(a, b), expect))
    return rep
