"""The affine Lie algebra gl(n,C) ⋉ C^n, embeddings of Lie algebras into
it, and the correspondence between étale affine representations and
flat torsion-free invariant connections.

An AffElement is a pair (A, v): A acts as the linear (isotropy) part and
v as the translation part. The bracket is

    [(A, v), (B, w)] = (AB - BA, Aw - Bv).

A map g -> aff(n) sending the basis to images (A_i, v_i) is étale when
the translation parts are a basis of C^n; in that case the orbit of the
origin is open with trivial isotropy intersection and the pull-back of
the flat affine structure gives a flat torsion-free invariant
connection on g, with Christoffels read off via V^{-1} (A_i v_j).
"""

from __future__ import annotations

from dataclasses import dataclass

from .exact import GaussRat, ExactMatrix, ZERO, ONE
from .liealg import LieAlgebra, builtin
from .connections import InvariantConnection, is_flat, is_torsion_free

__all__ = [
    "AffElement",
    "AffMap",
    "HomVerdict",
    "DimensionMismatch",
    "NotHomomorphism",
    "NotEtale",
    "NotFlatTorsionFree",
    "aff_bracket",
    "check_homomorphism",
    "is_etale",
    "canonical_embedding",
    "lsa_from_etale",
    "etale_from_lsa",
]


class DimensionMismatch(ValueError):
    """Affine elements live in different ambient dimensions."""


class NotHomomorphism(ValueError):
    """Candidate map does not respect brackets."""


class NotEtale(ValueError):
    """Translation parts do not form a basis."""


class NotFlatTorsionFree(ValueError):
    """Connection is not flat or not torsion-free."""


def _as_gauss(x) -> GaussRat:
    return x if isinstance(x, GaussRat) else GaussRat(x)


class AffElement:
    """Element (A, v) of gl(n,C) ⋉ C^n."""

    __slots__ = ("A", "v")

    def __init__(self, A: ExactMatrix, v):
        if A.rows != A.cols:
            raise ValueError("linear part must be square")
        v = [_as_gauss(x) for x in v]
        if len(v) != A.rows:
            raise ValueError("translation length does not match linear part")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "v", tuple(v))

    def __setattr__(self, name, value):
        raise AttributeError("AffElement is immutable")

    @property
    def ambient(self) -> int:
        return self.A.rows

    @classmethod
    def translation(cls, v) -> "AffElement":
        return cls(ExactMatrix.zeros(len(v), len(v)), v)

    @classmethod
    def linear(cls, A: ExactMatrix) -> "AffElement":
        return cls(A, [ZERO] * A.rows)

    def scale(self, c) -> "AffElement":
        c = _as_gauss(c)
        return AffElement(self.A.scale(c), [c * x for x in self.v])

    def __add__(self, other):
        if not isinstance(other, AffElement):
            return NotImplemented
        if self.ambient != other.ambient:
            raise DimensionMismatch("ambient dimensions differ")
        return AffElement(
            self.A + other.A, [a + b for a, b in zip(self.v, other.v)]
        )

    def __eq__(self, other):
        if not isinstance(other, AffElement):
            return NotImplemented
        return self.A == other.A and self.v == other.v

    def __hash__(self):
        return hash((self.A, self.v))

    def is_zero(self) -> bool:
        return self.A.is_zero() and all(x.is_zero() for x in self.v)

    def __repr__(self):
        return f"AffElement(n={self.ambient})"


def aff_bracket(x: AffElement, y: AffElement) -> AffElement:
    """[(A, v), (B, w)] = (AB - BA, Aw - Bv)."""
    if x.ambient != y.ambient:
        raise DimensionMismatch(
            f"ambient dimensions differ: {x.ambient} vs {y.ambient}"
        )
    A, B = x.A, y.A
    lin = (A @ B) - (B @ A)
    trans = [
        p - q for p, q in zip(A.mul_vec(list(y.v)), B.mul_vec(list(x.v)))
    ]
    return AffElement(lin, trans)


class AffMap:
    """Linear map g -> gl(m,C) ⋉ C^m given on the basis of g."""

    __slots__ = ("g", "images", "ambient")

    def __init__(self, g: LieAlgebra, images):
        images = tuple(images)
        if len(images) != g.n:
            raise ValueError("need one image per basis element")
        if images:
            m = images[0].ambient
            for im in images:
                if im.ambient != m:
                    raise DimensionMismatch("images have mixed ambient dims")
        else:
            m = 0
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "images", images)
        object.__setattr__(self, "ambient", m)

    def __setattr__(self, name, value):
        raise AttributeError("AffMap is immutable")

    def apply(self, x) -> AffElement:
        """Image of the coordinate vector x."""
        x = [_as_gauss(t) for t in x]
        if len(x) != self.g.n:
            raise ValueError("coordinate length mismatch")
        acc = AffElement(
            ExactMatrix.zeros(self.ambient, self.ambient),
            [ZERO] * self.ambient,
        )
        for xi, im in zip(x, self.images):
            if not xi.is_zero():
                acc = acc + im.scale(xi)
        return acc

    def translation_matrix(self) -> ExactMatrix:
        """Columns are the translation parts of the basis images."""
        m, n = self.ambient, self.g.n
        return ExactMatrix(
            m, n, [self.images[j].v[i] for i in range(m) for j in range(n)]
        )

    def __repr__(self):
        return f"AffMap(g dim {self.g.n} -> aff({self.ambient}))"


@dataclass(frozen=True)
class HomVerdict:
    ok: bool
    counterexample: tuple | None
    injective: bool


def check_homomorphism(m: AffMap) -> HomVerdict:
    """Check [m(e_i), m(e_j)] = m([e_i, e_j]) for all i < j, and whether
    the flattened images are linearly independent."""
    g = m.g
    counter = None
    for i in range(g.n):
        if counter:
            break
        for j in range(i + 1, g.n):
            lhs = aff_bracket(m.images[i], m.images[j])
            rhs = m.apply([g.c[i][j][k] for k in range(g.n)])
            if lhs != rhs:
                counter = (i, j)
                break
    amb = m.ambient
    flat_rows = [
        list(im.A.entries) + list(im.v) for im in m.images
    ]
    if flat_rows and amb > 0:
        injective = ExactMatrix.from_rows(flat_rows).rank() == g.n
    else:
        injective = g.n == 0
    return HomVerdict(ok=counter is None, counterexample=counter, injective=injective)


def is_etale(m: AffMap) -> bool:
    """True when the translation parts of the basis images form a basis
    of the ambient space. Requires a homomorphism."""
    verdict = check_homomorphism(m)
    if not verdict.ok:
        raise NotHomomorphism(
            f"bracket mismatch at basis pair {verdict.counterexample}"
        )
    if m.ambient != m.g.n:
        return False
    return m.translation_matrix().rank() == m.g.n


def canonical_embedding(kind: str) -> AffMap:
    """The reference embeddings of heis3 and sol3 into aff(3).

    Both send e_1 to (A, f_1), e_2 to (0, f_2), e_3 to (0, f_3) with
    f_i the standard basis; heis uses A f_2 = f_3, sol uses
    A = diag(0, 1, -1). A f_1 = 0 in both cases (the brackets never
    constrain it, so we take the minimal choice).
    """
    if kind == "heis":
        g = builtin("heis3")
        A = ExactMatrix.from_rows(
            [[0, 0, 0], [0, 0, 0], [0, 1, 0]]
        )
    elif kind == "sol":
        g = builtin("sol3")
        A = ExactMatrix.from_rows(
            [[0, 0, 0], [0, 1, 0], [0, 0, -1]]
        )
    else:
        raise ValueError(f"unknown embedding kind {kind!r}; use heis or sol")
    f = [
        [ONE, ZERO, ZERO],
        [ZERO, ONE, ZERO],
        [ZERO, ZERO, ONE],
    ]
    images = [
        AffElement(A, f[0]),
        AffElement.translation(f[1]),
        AffElement.translation(f[2]),
    ]
    return AffMap(g, images)


def lsa_from_etale(m: AffMap) -> InvariantConnection:
    """Connection induced by an étale affine representation:
    Γ[i][j][·] = V^{-1} (A_i v_j) with V the translation matrix."""
    if not is_etale(m):
        raise NotEtale("translation parts are not a basis")
    n = m.g.n
    V = m.translation_matrix()
    Vinv = V.inverse()
    gamma = []
    for i in range(n):
        Ai = m.images[i].A
        rows_i = []
        for j in range(n):
            w = Ai.mul_vec(list(m.images[j].v))
            rows_i.append(Vinv.mul_vec(w))
        gamma.append(rows_i)
    return InvariantConnection(m.g, gamma)


def etale_from_lsa(conn: InvariantConnection) -> AffMap:
    """Étale affine representation of a flat torsion-free connection:
    e_i maps to (L_i, e_i) with (L_i)[k][j] = Γ[i][j][k]."""
    if not (is_flat(conn) and is_torsion_free(conn)):
        raise NotFlatTorsionFree(
            "connection must be flat and torsion-free"
        )
    g = conn.g
    n = g.n
    images = []
    for i in range(n):
        L = ExactMatrix(
            n,
            n,
            [conn.gamma[i][j][k] for k in range(n) for j in range(n)],
        )
        e_i = [ONE if t == i else ZERO for t in range(n)]
        images.append(AffElement(L, e_i))
    return AffMap(g, images)
