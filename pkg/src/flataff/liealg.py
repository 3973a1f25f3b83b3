"""Complex Lie algebras given by structure constants.

A LieAlgebra stores the full array c[i][j][k] with
[e_i, e_j] = sum_k c[i][j][k] e_k, validated for antisymmetry and the
Jacobi identity at construction time. All coefficients are GaussRat.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exact import GaussRat, ExactMatrix, ZERO, ONE

__all__ = [
    "LieAlgebra",
    "StructuralProfile",
    "JacobiViolation",
    "InconsistentEntry",
    "from_structure_constants",
    "builtin",
    "BUILTIN_NAMES",
]


class JacobiViolation(ValueError):
    """Structure constants fail the Jacobi identity."""

    def __init__(self, indices):
        self.indices = tuple(indices)
        i, j, k, l = self.indices
        super().__init__(
            f"Jacobi identity fails at (i, j, k, l) = ({i}, {j}, {k}, {l})"
        )


class InconsistentEntry(ValueError):
    """Bracket table contradicts antisymmetry."""


def _as_gauss(x) -> GaussRat:
    return x if isinstance(x, GaussRat) else GaussRat(x)


def _coerce_vector(v, n) -> list:
    v = [_as_gauss(x) for x in v]
    if len(v) != n:
        raise ValueError(f"expected a vector of length {n}, got {len(v)}")
    return v


class LieAlgebra:
    """Finite-dimensional complex Lie algebra over the Gaussian rationals.

    Immutable; construct via from_structure_constants or builtin, or pass
    the full constant array directly.
    """

    def __init__(self, n: int, c, names=None, validate: bool = True):
        if n < 0:
            raise ValueError("dimension must be nonnegative")
        self.n = n
        self.c = tuple(
            tuple(
                tuple(_as_gauss(c[i][j][k]) for k in range(n))
                for j in range(n)
            )
            for i in range(n)
        )
        if names is None:
            names = [f"e{i + 1}" for i in range(n)]
        if len(names) != n:
            raise ValueError("need one name per basis element")
        self.names = tuple(str(s) for s in names)
        if validate:
            self._check_antisymmetry()
            self._check_jacobi()
        self._frozen = True

    def __setattr__(self, name, value):
        if getattr(self, "_frozen", False):
            raise AttributeError("LieAlgebra is immutable")
        super().__setattr__(name, value)

    def _check_antisymmetry(self):
        for i in range(self.n):
            for j in range(i, self.n):
                for k in range(self.n):
                    if self.c[i][j][k] != -self.c[j][i][k]:
                        raise InconsistentEntry(
                            f"c[{i}][{j}][{k}] != -c[{j}][{i}][{k}]"
                        )

    def _check_jacobi(self):
        n = self.n
        c = self.c
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    for l in range(n):
                        acc = ZERO
                        for m in range(n):
                            acc = acc + (
                                c[i][j][m] * c[m][k][l]
                                + c[j][k][m] * c[m][i][l]
                                + c[k][i][m] * c[m][j][l]
                            )
                        if not acc.is_zero():
                            raise JacobiViolation((i, j, k, l))

    def bracket(self, x, y) -> list:
        """Bracket of two coordinate vectors."""
        x = _coerce_vector(x, self.n)
        y = _coerce_vector(y, self.n)
        out = [ZERO] * self.n
        for i in range(self.n):
            if x[i].is_zero():
                continue
            for j in range(self.n):
                if y[j].is_zero():
                    continue
                f = x[i] * y[j]
                for k in range(self.n):
                    out[k] = out[k] + f * self.c[i][j][k]
        return out

    def ad_matrix(self, i: int) -> ExactMatrix:
        """Matrix of ad(e_i); column j holds the coordinates of [e_i, e_j]."""
        if not 0 <= i < self.n:
            raise IndexError(f"basis index {i} out of range")
        return ExactMatrix(
            self.n,
            self.n,
            [self.c[i][j][k] for k in range(self.n) for j in range(self.n)],
        )

    def ad(self, x) -> ExactMatrix:
        """Matrix of ad(x) for an arbitrary coordinate vector x."""
        x = _coerce_vector(x, self.n)
        m = ExactMatrix.zeros(self.n, self.n)
        for i in range(self.n):
            if not x[i].is_zero():
                m = m + self.ad_matrix(i).scale(x[i])
        return m

    def adjoint_rep(self) -> list:
        return [self.ad_matrix(i) for i in range(self.n)]

    def killing_form(self) -> ExactMatrix:
        """K[i][j] = trace(ad e_i ∘ ad e_j), a symmetric matrix."""
        ads = self.adjoint_rep()
        ents = []
        for i in range(self.n):
            for j in range(self.n):
                ents.append((ads[i] @ ads[j]).trace())
        return ExactMatrix(self.n, self.n, ents)

    def is_abelian(self) -> bool:
        return all(
            self.c[i][j][k].is_zero()
            for i in range(self.n)
            for j in range(self.n)
            for k in range(self.n)
        )

    def _span_dim(self, vectors) -> int:
        if not vectors:
            return 0
        return ExactMatrix.from_rows(vectors).rank()

    def _bracket_space(self, basis_a, basis_b) -> list:
        """Row-space basis of [span(basis_a), span(basis_b)]."""
        products = []
        for a in basis_a:
            for b in basis_b:
                v = self.bracket(a, b)
                if any(not x.is_zero() for x in v):
                    products.append(v)
        if not products:
            return []
        red, pivots = ExactMatrix.from_rows(products).rref()
        return [list(red.row(r)) for r in range(len(pivots))]

    def _full_basis(self) -> list:
        return [
            [ONE if j == i else ZERO for j in range(self.n)]
            for i in range(self.n)
        ]

    def derived_series_dims(self) -> list:
        """Dimensions of g ⊇ [g,g] ⊇ [[g,g],[g,g]] ⊇ ... until stable."""
        dims = [self.n]
        cur = self._full_basis()
        while True:
            nxt = self._bracket_space(cur, cur)
            if len(nxt) == dims[-1]:
                break
            dims.append(len(nxt))
            cur = nxt
            if dims[-1] == 0:
                break
        return dims

    def lower_central_dims(self) -> list:
        """Dimensions of g ⊇ [g,g] ⊇ [g,[g,g]] ⊇ ... until stable."""
        dims = [self.n]
        full = self._full_basis()
        cur = full
        while True:
            nxt = self._bracket_space(full, cur)
            if len(nxt) == dims[-1]:
                break
            dims.append(len(nxt))
            cur = nxt
            if dims[-1] == 0:
                break
        return dims

    def is_solvable(self) -> bool:
        return self.derived_series_dims()[-1] == 0

    def is_nilpotent(self) -> bool:
        return self.lower_central_dims()[-1] == 0

    def is_unimodular(self) -> bool:
        return all(self.ad_matrix(i).trace().is_zero() for i in range(self.n))

    def killing_rank(self) -> int:
        return self.killing_form().rank()

    def is_semisimple(self) -> bool:
        """Cartan's criterion: the Killing form is nondegenerate."""
        return self.n > 0 and self.killing_rank() == self.n

    def structural_profile(self) -> "StructuralProfile":
        return StructuralProfile(
            abelian=self.is_abelian(),
            solvable=self.is_solvable(),
            nilpotent=self.is_nilpotent(),
            unimodular=self.is_unimodular(),
            semisimple=self.is_semisimple(),
            killing_rank=self.killing_rank(),
            derived_series_dims=self.derived_series_dims(),
            lower_central_dims=self.lower_central_dims(),
        )

    def same_constants(self, other: "LieAlgebra") -> bool:
        """Equality of structure constant arrays (basis-dependent)."""
        return self.n == other.n and self.c == other.c

    def __repr__(self):
        nz = sum(
            1
            for i in range(self.n)
            for j in range(i + 1, self.n)
            for k in range(self.n)
            if not self.c[i][j][k].is_zero()
        )
        return f"LieAlgebra(n={self.n}, nonzero brackets={nz})"


@dataclass(frozen=True)
class StructuralProfile:
    abelian: bool
    solvable: bool
    nilpotent: bool
    unimodular: bool
    semisimple: bool
    killing_rank: int
    derived_series_dims: list
    lower_central_dims: list


def from_structure_constants(n: int, names=None, brackets=None) -> LieAlgebra:
    """Build a LieAlgebra from a sparse bracket table.

    brackets maps (i, j) to the coordinate vector of [e_i, e_j]. Pairs
    not listed are zero; (j, i) entries are filled in by antisymmetry.
    Giving both (i, j) and (j, i) is allowed only if they are consistent.
    """
    brackets = brackets or {}
    c = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    seen = {}
    for (i, j), v in brackets.items():
        if not (0 <= i < n and 0 <= j < n):
            raise IndexError(f"bracket pair ({i}, {j}) out of range")
        v = _coerce_vector(v, n)
        if i == j:
            if any(not x.is_zero() for x in v):
                raise InconsistentEntry(f"[e{i + 1}, e{i + 1}] must vanish")
            continue
        if (i, j) in seen:
            raise InconsistentEntry(f"bracket ({i}, {j}) given twice")
        seen[(i, j)] = v
    for (i, j), v in seen.items():
        if (j, i) in seen:
            w = seen[(j, i)]
            if any((a + b) != ZERO for a, b in zip(v, w)):
                raise InconsistentEntry(
                    f"brackets ({i}, {j}) and ({j}, {i}) are not antisymmetric"
                )
        for k in range(n):
            c[i][j][k] = v[k]
            c[j][i][k] = -v[k]
    return LieAlgebra(n, c, names=names)


def _abelian(n: int) -> LieAlgebra:
    return from_structure_constants(n)


def _heis3() -> LieAlgebra:
    # [e1, e2] = e3, [e1, e3] = [e2, e3] = 0
    return from_structure_constants(3, brackets={(0, 1): [0, 0, 1]})


def _sol3() -> LieAlgebra:
    # [e1, e2] = e2, [e1, e3] = -e3, [e2, e3] = 0
    return from_structure_constants(
        3, brackets={(0, 1): [0, 1, 0], (0, 2): [0, 0, -1]}
    )


def _sl2() -> LieAlgebra:
    # basis (h, e, f): [h, e] = 2e, [h, f] = -2f, [e, f] = h
    return from_structure_constants(
        3,
        names=["h", "e", "f"],
        brackets={
            (0, 1): [0, 2, 0],
            (0, 2): [0, 0, -2],
            (1, 2): [1, 0, 0],
        },
    )


_BUILTINS = {
    "abelian3": lambda: _abelian(3),
    "heis3": _heis3,
    "sol3": _sol3,
    "sl2": _sl2,
}

BUILTIN_NAMES = tuple(sorted(_BUILTINS))


def builtin(name: str) -> LieAlgebra:
    """Catalog algebras: abelian3, heis3, sol3, sl2."""
    try:
        make = _BUILTINS[name]
    except KeyError:
        raise ValueError(
            f"unknown builtin {name!r}; choose from {', '.join(BUILTIN_NAMES)}"
        ) from None
    return make()
