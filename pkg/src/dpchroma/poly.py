"""Integer polynomials in one variable with exact (Python int) coefficients."""

from __future__ import annotations

from typing import Iterable, Sequence


class IntPolynomial:
    """``coeffs[i]`` is the coefficient of ``m**i``; trailing zeros are stripped."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = []
        for c in coeffs:
            if not isinstance(c, int) or isinstance(c, bool):
                raise TypeError(f"coefficients must be int, got {type(c).__name__}")
            cs.append(c)
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[int, ...] = tuple(cs)

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "IntPolynomial":
        return cls([0] * degree + [coeff])

    @classmethod
    def falling_factorial(cls, n: int) -> "IntPolynomial":
        """m (m-1) ... (m-n+1)."""
        p = cls([1])
        for i in range(n):
            p = p * cls([-i, 1])
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __call__(self, m: int) -> int:
        return evaluate(self, m)

    def __eq__(self, other):
        if isinstance(other, IntPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == IntPolynomial([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        other = _coerce(other)
        k = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(self.coeff(i) + other.coeff(i) for i in range(k))

    __radd__ = __add__

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        other = _coerce(other)
        if not self.coeffs or not other.coeffs:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "IntPolynomial":
        out = IntPolynomial([1])
        for _ in range(k):
            out = out * self
        return out

    def shift(self, delta: int) -> "IntPolynomial":
        """The polynomial ``m -> p(m + delta)``."""
        out = IntPolynomial()
        lin = IntPolynomial([delta, 1])
        for c in reversed(self.coeffs):
            out = out * lin + IntPolynomial([c])
        return out

    def to_json(self) -> dict:
        return {"coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "IntPolynomial":
        return cls(int(c) for c in data["coeffs"])

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            body = {0: f"{a}", 1: "m" if a == 1 else f"{a}m"}.get(
                i, f"m^{i}" if a == 1 else f"{a}m^{i}")
            terms.append((sign, body))
        head = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        return " ".join([head] + [f"{s} {b}" for s, b in terms[1:]])


def _coerce(x) -> IntPolynomial:
    if isinstance(x, IntPolynomial):
        return x
    if isinstance(x, int):
        return IntPolynomial([x])
    raise TypeError(f"cannot use {type(x).__name__} as IntPolynomial")


def evaluate(p: IntPolynomial | Sequence[int], m: int) -> int:
    """Horner evaluation; exact for every integer ``m``."""
    coeffs = p.coeffs if isinstance(p, IntPolynomial) else p
    acc = 0
    for c in reversed(coeffs):
        acc = acc * m + c
    return acc
