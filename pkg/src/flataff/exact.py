"""Exact arithmetic substrate: Gaussian rationals, dense exact matrices,
and small multivariate polynomials.

Everything here is immutable after construction and every operation is
exact; no floating point enters at any stage.
"""

from __future__ import annotations

import re as _re
from fractions import Fraction

__all__ = [
    "GaussRat",
    "ExactMatrix",
    "MultiPoly",
    "poly_det",
    "ZERO",
    "ONE",
    "I",
    "HALF",
]

_RATIONAL_RE = _re.compile(r"^[+-]?\d+(/\d+)?$")


def _coerce_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.replace("−", "-").strip()
        if not _RATIONAL_RE.match(s):
            raise ValueError(f"not a rational literal: {x!r}")
        return Fraction(s)
    raise TypeError(f"cannot interpret {type(x).__name__} as a rational")


class GaussRat:
    """A Gaussian rational re + im*i with Fraction components.

    Fraction keeps each part canonical (positive denominator, reduced),
    so equality and hashing are structural.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _coerce_rational(re))
        object.__setattr__(self, "im", _coerce_rational(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussRat is immutable")

    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussRat):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussRat(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussRat(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussRat(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussRat(
            (self.re * o.re + self.im * o.im) / n,
            (self.im * o.re - self.re * o.im) / n,
        )

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __pos__(self):
        return self

    def conjugate(self) -> "GaussRat":
        return GaussRat(self.re, -self.im)

    def norm(self) -> Fraction:
        """Squared modulus re^2 + im^2 (a rational)."""
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def to_pair(self) -> list:
        """Serialized form: ["re", "im"] rational strings."""
        return [str(self.re), str(self.im)]

    @classmethod
    def from_pair(cls, pair) -> "GaussRat":
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise ValueError(f"expected a [re, im] pair, got {pair!r}")
        return cls(pair[0], pair[1])

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.im == 1:
            ims = "i"
        elif self.im == -1:
            ims = "-i"
        else:
            ims = f"{self.im}i"
        if self.re == 0:
            return ims
        sign = "+" if self.im > 0 else ""
        return f"{self.re}{sign}{ims}"

    def __repr__(self):
        return f"GaussRat({self.re!r}, {self.im!r})"


ZERO = GaussRat(0)
ONE = GaussRat(1)
I = GaussRat(0, 1)
HALF = GaussRat(Fraction(1, 2))


class ExactMatrix:
    """Dense matrix over GaussRat, row-major storage."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries):
        entries = tuple(
            e if isinstance(e, GaussRat) else GaussRat(e) for e in entries
        )
        if len(entries) != rows * cols:
            raise ValueError(
                f"expected {rows * cols} entries, got {len(entries)}"
            )
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    @classmethod
    def from_rows(cls, rows) -> "ExactMatrix":
        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        flat = []
        for r in rows:
            if len(r) != nc:
                raise ValueError("ragged rows")
            flat.extend(r)
        return cls(nr, nc, flat)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls(rows, cols, [ZERO] * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(n, n, [ONE if i == j else ZERO for i in range(n) for j in range(n)])

    def __getitem__(self, key) -> GaussRat:
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"({i}, {j}) out of range")
        return self.entries[i * self.cols + j]

    def row(self, i) -> tuple:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def col(self, j) -> tuple:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_lists(self):
        return [list(self.row(i)) for i in range(self.rows)]

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __add__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return ExactMatrix(
            self.rows,
            self.cols,
            [a + b for a, b in zip(self.entries, other.entries)],
        )

    def __sub__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return ExactMatrix(
            self.rows,
            self.cols,
            [a - b for a, b in zip(self.entries, other.entries)],
        )

    def __neg__(self):
        return ExactMatrix(self.rows, self.cols, [-e for e in self.entries])

    def scale(self, c) -> "ExactMatrix":
        c = c if isinstance(c, GaussRat) else GaussRat(c)
        return ExactMatrix(self.rows, self.cols, [c * e for e in self.entries])

    def __matmul__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError("shape mismatch in product")
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                acc = ZERO
                for k in range(self.cols):
                    acc = acc + ri[k] * other.entries[k * other.cols + j]
                out.append(acc)
        return ExactMatrix(self.rows, other.cols, out)

    def mul_vec(self, v) -> list:
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        v = [x if isinstance(x, GaussRat) else GaussRat(x) for x in v]
        out = []
        for i in range(self.rows):
            acc = ZERO
            ri = self.row(i)
            for k in range(self.cols):
                acc = acc + ri[k] * v[k]
            out.append(acc)
        return out

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(
            self.cols,
            self.rows,
            [self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)],
        )

    def trace(self) -> GaussRat:
        if self.rows != self.cols:
            raise ValueError("trace of a non-square matrix")
        acc = ZERO
        for i in range(self.rows):
            acc = acc + self.entries[i * self.cols + i]
        return acc

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries)

    def rref(self):
        """Reduced row echelon form; returns (rref matrix, pivot column list)."""
        m = [list(self.row(i)) for i in range(self.rows)]
        pivots = []
        r = 0
        for c in range(self.cols):
            pivot_row = None
            for i in range(r, self.rows):
                if not m[i][c].is_zero():
                    pivot_row = i
                    break
            if pivot_row is None:
                continue
            m[r], m[pivot_row] = m[pivot_row], m[r]
            inv = ONE / m[r][c]
            m[r] = [e * inv for e in m[r]]
            for i in range(self.rows):
                if i != r and not m[i][c].is_zero():
                    f = m[i][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        flat = [e for row in m for e in row]
        return ExactMatrix(self.rows, self.cols, flat), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self) -> list:
        """Basis of the right nullspace, one list of GaussRat per vector."""
        red, pivots = self.rref()
        free = [c for c in range(self.cols) if c not in pivots]
        basis = []
        for fc in free:
            v = [ZERO] * self.cols
            v[fc] = ONE
            for r, pc in enumerate(pivots):
                v[pc] = -red[r, fc]
            basis.append(v)
        return basis

    def rank_nullspace(self):
        red, pivots = self.rref()
        free = [c for c in range(self.cols) if c not in pivots]
        basis = []
        for fc in free:
            v = [ZERO] * self.cols
            v[fc] = ONE
            for r, pc in enumerate(pivots):
                v[pc] = -red[r, fc]
            basis.append(v)
        return len(pivots), basis

    def det(self) -> GaussRat:
        """Determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return ONE
        m = [list(self.row(i)) for i in range(n)]
        sign = 1
        prev = ONE
        for k in range(n - 1):
            if m[k][k].is_zero():
                swap = None
                for i in range(k + 1, n):
                    if not m[i][k].is_zero():
                        swap = i
                        break
                if swap is None:
                    return ZERO
                m[k], m[swap] = m[swap], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev
            prev = m[k][k]
        d = m[n - 1][n - 1]
        return d if sign == 1 else -d

    def det_cofactor(self) -> GaussRat:
        """Determinant by cofactor expansion (independent cross-check)."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")

        def go(rows, cols):
            if len(cols) == 1:
                return self.entries[rows[0] * self.cols + cols[0]]
            acc = ZERO
            sub_rows = rows[1:]
            for t, c in enumerate(cols):
                a = self.entries[rows[0] * self.cols + c]
                if a.is_zero():
                    continue
                sub_cols = cols[:t] + cols[t + 1 :]
                term = a * go(sub_rows, sub_cols)
                acc = acc + term if t % 2 == 0 else acc - term
            return acc

        if self.rows == 0:
            return ONE
        return go(tuple(range(self.rows)), tuple(range(self.cols)))

    def solve(self, rhs: "ExactMatrix") -> "ExactMatrix":
        """Solve self @ X = rhs for square nonsingular self."""
        if self.rows != self.cols:
            raise ValueError("solve needs a square matrix")
        if rhs.rows != self.rows:
            raise ValueError("right-hand side row count mismatch")
        n = self.rows
        aug = ExactMatrix(
            n,
            n + rhs.cols,
            [e for i in range(n) for e in (self.row(i) + rhs.row(i))],
        )
        red, pivots = aug.rref()
        if pivots[: n if len(pivots) >= n else len(pivots)] != list(range(n)):
            raise ValueError("singular matrix")
        return ExactMatrix(
            n,
            rhs.cols,
            [red[i, n + j] for i in range(n) for j in range(rhs.cols)],
        )

    def inverse(self) -> "ExactMatrix":
        return self.solve(ExactMatrix.identity(self.rows))

    def __repr__(self):
        body = "; ".join(
            ", ".join(str(e) for e in self.row(i)) for i in range(self.rows)
        )
        return f"ExactMatrix({self.rows}x{self.cols}: [{body}])"


# Envelope for MultiPoly, wide enough for degree-n determinant expansion
# with n <= 4 plus headroom.
MAX_POLY_VARS = 6
MAX_POLY_DEGREE = 8


class MultiPoly:
    """Multivariate polynomial over GaussRat, stored as a canonical
    exponent-vector -> coefficient map (no zero coefficients kept).
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        if nvars < 0 or nvars > MAX_POLY_VARS:
            raise ValueError(f"nvars must be in [0, {MAX_POLY_VARS}]")
        clean = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps}")
            if sum(exps) > MAX_POLY_DEGREE:
                raise ValueError(
                    f"total degree {sum(exps)} exceeds cap {MAX_POLY_DEGREE}"
                )
            coeff = coeff if isinstance(coeff, GaussRat) else GaussRat(coeff)
            if not coeff.is_zero():
                clean[exps] = clean.get(exps, ZERO) + coeff
                if clean[exps].is_zero():
                    del clean[exps]
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", dict(clean))

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, c) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "MultiPoly":
        if not 0 <= i < nvars:
            raise ValueError(f"variable index {i} out of range")
        exps = tuple(1 if j == i else 0 for j in range(nvars))
        return cls(nvars, {exps: ONE})

    def _check_same(self, other):
        if self.nvars != other.nvars:
            raise ValueError("mixed variable counts")

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check_same(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, ZERO) + c
        return MultiPoly(self.nvars, terms)

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (GaussRat, int, Fraction)):
            c = other if isinstance(other, GaussRat) else GaussRat(other)
            return MultiPoly(
                self.nvars, {e: c * v for e, v in self.terms.items()}
            )
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check_same(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, ZERO) + c1 * c2
        return MultiPoly(self.nvars, terms)

    __rmul__ = __mul__

    def evaluate(self, point) -> GaussRat:
        if len(point) != self.nvars:
            raise ValueError("point length mismatch")
        point = [x if isinstance(x, GaussRat) else GaussRat(x) for x in point]
        acc = ZERO
        for exps, coeff in self.terms.items():
            term = coeff
            for x, e in zip(point, exps):
                for _ in range(e):
                    term = term * x
            acc = acc + term
        return acc

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        """Degree of the zero polynomial is -1 by convention."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "MultiPoly(0)"
        bits = []
        for exps in sorted(self.terms, reverse=True):
            c = self.terms[exps]
            mono = "*".join(
                f"p{i}" if e == 1 else f"p{i}^{e}"
                for i, e in enumerate(exps)
                if e
            )
            bits.append(f"({c})*{mono}" if mono else f"({c})")
        return "MultiPoly(" + " + ".join(bits) + ")"


def poly_det(rows) -> MultiPoly:
    """Symbolic determinant of a square matrix of MultiPoly, by cofactor
    expansion along the first row."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        raise ValueError("empty matrix")
    nvars = rows[0][0].nvars

    def go(row_idx, col_idx):
        if len(col_idx) == 1:
            return rows[row_idx[0]][col_idx[0]]
        acc = MultiPoly.zero(nvars)
        sub_rows = row_idx[1:]
        for t, c in enumerate(col_idx):
            a = rows[row_idx[0]][c]
            if a.is_zero():
                continue
            sub_cols = col_idx[:t] + col_idx[t + 1 :]
            term = a * go(sub_rows, sub_cols)
            acc = acc + term if t % 2 == 0 else acc - term
        return acc

    return go(tuple(range(n)), tuple(range(n)))
