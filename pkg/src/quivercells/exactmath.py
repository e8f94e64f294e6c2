"""Exact polynomial and prime-field arithmetic.

Everything here is integer-exact: polynomials over Z, Lagrange interpolation
over Q with a hard error if the answer is not an integer polynomial, and
dense linear algebra over F_p.  No floats anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class InterpolationError(ValueError):
    """Interpolation data is inconsistent with an integer polynomial of the stated degree."""


class IntPolynomial:
    """Dense univariate polynomial over Z, immutable, trailing zeros stripped."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[int, ...] = tuple(cs)

    @staticmethod
    def monomial(exponent: int, coeff: int = 1) -> "IntPolynomial":
        if exponent < 0:
            raise ValueError("exponent must be nonnegative")
        return IntPolynomial([0] * exponent + [coeff])

    @property
    def degree(self) -> int:
        # degree of the zero polynomial is -1 by convention
        return len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial(out)

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self + IntPolynomial([-c for c in other.coeffs])

    def __mul__(self, other: "IntPolynomial | int") -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial([c * other for c in self.coeffs])
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def pretty(self, var: str = "q") -> str:
        """Render as 'c0 + c1*q + c2*q^2', zero terms dropped, zero poly as '0'."""
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*{var}" if c != 1 else var)
            else:
                terms.append(f"{c}*{var}^{i}" if c != 1 else f"{var}^{i}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self) -> str:
        return f"IntPolynomial({self.pretty()})"


class BivarPolynomial:
    """Sparse integer polynomial in two variables, keyed by (xdeg, ydeg)."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[tuple[int, int], int] | None = None):
        self.terms: dict[tuple[int, int], int] = {
            k: v for k, v in (terms or {}).items() if v != 0
        }

    @staticmethod
    def monomial(xdeg: int, ydeg: int, coeff: int = 1) -> "BivarPolynomial":
        return BivarPolynomial({(xdeg, ydeg): coeff})

    def __add__(self, other: "BivarPolynomial") -> "BivarPolynomial":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return BivarPolynomial(out)

    def __mul__(self, other: "BivarPolynomial | int") -> "BivarPolynomial":
        if isinstance(other, int):
            return BivarPolynomial({k: v * other for k, v in self.terms.items()})
        out: dict[tuple[int, int], int] = {}
        for (ax, ay), av in self.terms.items():
            for (bx, by), bv in other.terms.items():
                k = (ax + bx, ay + by)
                out[k] = out.get(k, 0) + av * bv
        return BivarPolynomial(out)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BivarPolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __call__(self, x: int, y: int) -> int:
        return sum(v * x**kx * y**ky for (kx, ky), v in self.terms.items())

    def specialize_x(self, x0: int) -> IntPolynomial:
        """Substitute x = x0, returning a univariate polynomial in y."""
        if not self.terms:
            return IntPolynomial()
        out = [0] * (max(ky for _, ky in self.terms) + 1)
        for (kx, ky), v in self.terms.items():
            out[ky] += v * x0**kx
        return IntPolynomial(out)

    def pretty(self, xvar: str = "x", yvar: str = "y") -> str:
        if not self.terms:
            return "0"
        bits = []
        for (kx, ky), v in sorted(self.terms.items()):
            factors = []
            if kx:
                factors.append(xvar if kx == 1 else f"{xvar}^{kx}")
            if ky:
                factors.append(yvar if ky == 1 else f"{yvar}^{ky}")
            if not factors or v != 1:
                factors.insert(0, str(v))
            bits.append("*".join(factors))
        return " + ".join(bits)

    def __repr__(self) -> str:
        return f"BivarPolynomial({self.pretty()})"


@dataclass(frozen=True)
class PrimeFieldElem:
    """Element of F_p for prime p; arithmetic stays within one modulus."""

    p: int
    value: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other: "PrimeFieldElem | int") -> "PrimeFieldElem":
        if isinstance(other, int):
            return PrimeFieldElem(self.p, other)
        if other.p != self.p:
            raise ValueError(f"mixed moduli {self.p} and {other.p}")
        return other

    def __add__(self, other):
        o = self._coerce(other)
        return PrimeFieldElem(self.p, self.value + o.value)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return PrimeFieldElem(self.p, self.value - o.value)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return PrimeFieldElem(self.p, self.value * o.value)

    __rmul__ = __mul__

    def __neg__(self):
        return PrimeFieldElem(self.p, -self.value)

    def inv(self) -> "PrimeFieldElem":
        if self.value == 0:
            raise ZeroDivisionError("inverse of 0 in a prime field")
        return PrimeFieldElem(self.p, pow(self.value, self.p - 2, self.p))

    def __truediv__(self, other):
        return self * self._coerce(other).inv()

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.value} (mod {self.p})"


def interpolate(points: Sequence[tuple[int, int]], degree_bound: int) -> IntPolynomial:
    """Exact Lagrange interpolation through ALL given points.

    Requires at least degree_bound + 1 points.  Errors if abscissae repeat, if
    the fitted polynomial exceeds the bound or has non-integer coefficients,
    or if extra points fail to lie on the fit.  Rational arithmetic throughout.
    """
    if degree_bound < 0:
        raise ValueError("degree bound must be nonnegative")
    if len(points) < degree_bound + 1:
        raise InterpolationError(
            f"need at least {degree_bound + 1} points for degree bound {degree_bound}, got {len(points)}"
        )
    xs = [x for x, _ in points]
    if len(set(xs)) != len(xs):
        raise InterpolationError("duplicate abscissae")

    base = points[: degree_bound + 1]
    # coefficient vector of the Lagrange fit through the first bound+1 points
    coeffs = [Fraction(0)] * (degree_bound + 1)
    for xi, yi in base:
        # numerator polynomial prod_{j != i} (X - xj), then scale
        num = [Fraction(1)]
        denom = Fraction(1)
        for xj, _ in base:
            if xj == xi:
                continue
            new = [Fraction(0)] * (len(num) + 1)
            for k, c in enumerate(num):
                new[k] -= c * xj
                new[k + 1] += c
            num = new
            denom *= xi - xj
        scale = Fraction(yi) / denom
        for k, c in enumerate(num):
            coeffs[k] += c * scale

    out = []
    for c in coeffs:
        if c.denominator != 1:
            raise InterpolationError(f"non-integer coefficient {c}")
        out.append(int(c))
    poly = IntPolynomial(out)
    for x, y in points:
        if poly(x) != y:
            raise InterpolationError(
                f"point ({x}, {y}) is off the degree-{degree_bound} fit; got {poly(x)}"
            )
    return poly


@dataclass(frozen=True)
class LinearSolution:
    """Affine solution set over F_p: particular + span(kernel_basis)."""

    particular: tuple[int, ...]
    kernel_basis: tuple[tuple[int, ...], ...]
    p: int

    @property
    def dimension(self) -> int:
        return len(self.kernel_basis)

    def solutions(self):
        """Yield every solution vector, p^dimension of them, lexicographic in combo."""
        n = len(self.particular)
        d = self.dimension
        combo = [0] * d
        while True:
            vec = list(self.particular)
            for i, c in enumerate(combo):
                if c:
                    bi = self.kernel_basis[i]
                    for j in range(n):
                        vec[j] = (vec[j] + c * bi[j]) % self.p
            yield tuple(vec)
            for i in range(d - 1, -1, -1):
                combo[i] += 1
                if combo[i] < self.p:
                    break
                combo[i] = 0
            else:
                return


def field_solve_linear(
    rows: Sequence[Sequence[int]], rhs: Sequence[int], p: int
) -> LinearSolution | None:
    """Solve A v = b over F_p by row reduction.

    Returns None when inconsistent; otherwise a particular solution (free
    variables set to 0) plus a kernel basis, one vector per free column.
    """
    n_rows = len(rows)
    if n_rows != len(rhs):
        raise ValueError("matrix and right-hand side sizes differ")
    n_cols = len(rows[0]) if n_rows else 0
    aug = [[v % p for v in row] + [rhs[i] % p] for i, row in enumerate(rows)]
    for row in aug:
        if len(row) != n_cols + 1:
            raise ValueError("ragged matrix")

    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        pivot_row = next((i for i in range(r, n_rows) if aug[i][c]), None)
        if pivot_row is None:
            continue
        aug[r], aug[pivot_row] = aug[pivot_row], aug[r]
        inv = pow(aug[r][c], p - 2, p)
        aug[r] = [(v * inv) % p for v in aug[r]]
        for i in range(n_rows):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [(a - f * b) % p for a, b in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    for i in range(r, n_rows):
        if aug[i][n_cols]:
            return None

    particular = [0] * n_cols
    for i, c in enumerate(pivots):
        particular[c] = aug[i][n_cols]
    free_cols = [c for c in range(n_cols) if c not in set(pivots)]
    basis = []
    for f in free_cols:
        vec = [0] * n_cols
        vec[f] = 1
        for i, c in enumerate(pivots):
            vec[c] = (-aug[i][f]) % p
        basis.append(tuple(vec))
    return LinearSolution(tuple(particular), tuple(basis), p)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def first_primes(k: int) -> list[int]:
    out = []
    n = 2
    while len(out) < k:
        if is_prime(n):
            out.append(n)
        n += 1
    return out
