"""
The quantum matrix bialgebra Mat_q(n).

Normal forms use the PBW rewriting system on generators ordered by
(row, col): every rule replaces a descending adjacent pair by sorted
words, so reduction terminates and (by the diamond lemma for Mat_q(n))
does not depend on the order in which rules are applied.
"""

import logging
import random
from typing import Optional, Sequence

from errors import DomainError
from algebra.ncalg import GenId, NCPoly, PolyBuilder, RelationSet, Word, permutations_with_length
from algebra.qseries import ONE, RationalFn, neg_q_pow, q_minus_q_inv, q_pow

logger = logging.getLogger(__name__)

Matrix = list[list[NCPoly]]


class QMatrixContext:
    """Generators a_{ij} of Mat_q(n) living in one tensor component."""

    def __init__(self, n: int, component: int = 0, name: str = "a"):
        if n < 1:
            raise DomainError(f"Mat_q(n) needs n >= 1 (got {n})")
        self.n = n
        self.component = component
        self.name = name
        self._memo: dict[Word, dict[Word, RationalFn]] = {}

    def gen(self, i: int, j: int) -> GenId:
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise DomainError(f"a[{i},{j}] outside Mat_q({self.n})")
        return GenId(self.component, self.name, (i, j))

    def generators(self) -> list[GenId]:
        return [self.gen(i, j) for i in range(1, self.n + 1) for j in range(1, self.n + 1)]

    def matrix(self) -> Matrix:
        return [[NCPoly.of(self.gen(i, j)) for j in range(1, self.n + 1)] for i in range(1, self.n + 1)]

    def owns(self, g: GenId) -> bool:
        return g.component == self.component and g.name == self.name and len(g.index) == 2

    def __repr__(self) -> str:
        return f"QMatrixContext(n={self.n}, component={self.component}, name={self.name!r})"


def matq_relations(n: int, component: int = 0, name: str = "a") -> RelationSet:
    """The four quadratic families, for every i < j and k < l (rows and columns in full)."""
    ctx = QMatrixContext(n, component, name)
    a = lambda i, j: NCPoly.of(ctx.gen(i, j))
    q = q_pow(1)
    polys = []
    pairs = [(x, y) for x in range(1, n + 1) for y in range(x + 1, n + 1)]
    for i in range(1, n + 1):
        for k, l in pairs:
            polys.append(a(i, k) * a(i, l) - (a(i, l) * a(i, k)).scale(q))
    for k in range(1, n + 1):
        for i, j in pairs:
            polys.append(a(i, k) * a(j, k) - (a(j, k) * a(i, k)).scale(q))
    for i, j in pairs:
        for k, l in pairs:
            polys.append(a(j, k) * a(i, l) - a(i, l) * a(j, k))
            polys.append(a(i, k) * a(j, l) - a(j, l) * a(i, k) - (a(i, l) * a(j, k)).scale(q_minus_q_inv()))
    return RelationSet.from_polys(polys, f"Mat_q({n})")


def _rewrite(x: GenId, y: GenId) -> Optional[list[tuple[tuple[GenId, ...], RationalFn]]]:
    """Replacement for the pair x.y when x > y, else None."""
    (r1, c1), (r2, c2) = x.index, y.index
    if (r1, c1) <= (r2, c2):
        return None
    if r1 == r2 or c1 == c2:
        return [((y, x), q_pow(-1))]
    if c1 < c2:
        return [((y, x), ONE)]
    # x = a_{jl}, y = a_{ik} with i < j, k < l
    il = GenId(x.component, x.name, (r2, c1))
    jk = GenId(x.component, x.name, (r1, c2))
    return [((y, x), ONE), ((il, jk), -q_minus_q_inv())]


def _descents(seg: Word) -> list[int]:
    return [i for i in range(len(seg) - 1) if seg[i].index > seg[i + 1].index]


def _nf_segment(seg: Word, memo: Optional[dict], rng: Optional[random.Random]) -> dict[Word, RationalFn]:
    if memo is not None and seg in memo:
        return memo[seg]
    descents = _descents(seg)
    if not descents:
        result = {seg: ONE}
    else:
        pos = rng.choice(descents) if rng is not None else descents[0]
        result: dict[Word, RationalFn] = {}
        for pair, c in _rewrite(seg[pos], seg[pos + 1]):
            new = seg[:pos] + pair + seg[pos + 2:]
            for w, x in _nf_segment(new, memo, rng).items():
                s = result[w] + c * x if w in result else c * x
                if s:
                    result[w] = s
                else:
                    result.pop(w, None)
    if memo is not None:
        memo[seg] = result
    return result


def _split_segments(word: Word, contexts: Sequence[QMatrixContext]) -> list[tuple[Optional[QMatrixContext], Word]]:
    """Maximal runs of letters owned by one context (or by none)."""
    segments: list[tuple[Optional[QMatrixContext], list[GenId]]] = []
    for g in word:
        owner = next((ctx for ctx in contexts if ctx.owns(g)), None)
        if segments and segments[-1][0] is owner:
            segments[-1][1].append(g)
        else:
            segments.append((owner, [g]))
    return [(ctx, tuple(letters)) for ctx, letters in segments]


def normal_form(p: NCPoly, ctx: QMatrixContext | Sequence[QMatrixContext],
                rng: Optional[random.Random] = None) -> NCPoly:
    """
    PBW normal form, componentwise on tensor words.

    Letters outside the given contexts are left in place. With ``rng``
    the descending pair to rewrite is picked at random (no memo), which
    is how confluence is probed.
    """
    contexts = [ctx] if isinstance(ctx, QMatrixContext) else list(ctx)
    builder = PolyBuilder()
    for word, coeff in p.items():
        partial: dict[Word, RationalFn] = {(): coeff}
        for owner, seg in _split_segments(word, contexts):
            if owner is None:
                options = {seg: ONE}
            else:
                options = _nf_segment(seg, None if rng is not None else owner._memo, rng)
            partial = {w + s: c * x for w, c in partial.items() for s, x in options.items()}
        for w, c in partial.items():
            builder.add_term(w, c, canonical=True)
    return builder.build()


# -- determinants ------------------------------------------------------------------

def det_of_matrix(M: Matrix, row: bool = True) -> NCPoly:
    """Row (or column) quantum determinant of a square matrix of NCPoly entries."""
    n = len(M)
    builder = PolyBuilder()
    for sigma, length in permutations_with_length(n):
        term = NCPoly.scalar(neg_q_pow(length))
        for i in range(1, n + 1):
            entry = M[i - 1][sigma[i - 1] - 1] if row else M[sigma[i - 1] - 1][i - 1]
            term = term * entry
            if term.is_zero():
                break
        builder.add_poly(term)
    return builder.build()


def det_q_row(n: int, component: int = 0, name: str = "a") -> NCPoly:
    """sum over sigma of (-q)^{l(sigma)} a_{1 sigma(1)} ... a_{n sigma(n)}."""
    return det_of_matrix(QMatrixContext(n, component, name).matrix(), row=True)


def det_q_col(n: int, component: int = 0, name: str = "a") -> NCPoly:
    """sum over sigma of (-q)^{l(sigma)} a_{sigma(1) 1} ... a_{sigma(n) n}."""
    return det_of_matrix(QMatrixContext(n, component, name).matrix(), row=False)


def matrix_product(A: Matrix, B: Matrix) -> Matrix:
    n = len(A)
    if any(len(row) != len(B) for row in A):
        raise DomainError("matrix dimensions do not match")
    return [
        [sum((A[i][k] * B[k][j] for k in range(n)), NCPoly.zero()) for j in range(len(B[0]))]
        for i in range(n)
    ]


def transposition_matrix(n: int, i: int) -> Matrix:
    """Permutation matrix (numeric 0/1 entries) swapping i and i+1."""
    if not 1 <= i < n:
        raise DomainError(f"adjacent transposition ({i} {i + 1}) outside [1, {n}]")
    image = {i: i + 1, i + 1: i}
    return [
        [NCPoly.scalar(1 if image.get(r, r) == c else 0) for c in range(1, n + 1)]
        for r in range(1, n + 1)
    ]


def coproduct_matq(p: NCPoly, n: int, source: int = 0, targets: tuple[int, int] = (0, 1),
                   name: str = "a") -> NCPoly:
    """Algebra map a_{ij} -> sum_k a_{ik} (x) a_{kj} into components ``targets``."""
    ctx = QMatrixContext(n, source, name)
    left, right = QMatrixContext(n, targets[0], name), QMatrixContext(n, targets[1], name)
    images = {
        ctx.gen(i, j): sum(
            (NCPoly.of(left.gen(i, k), right.gen(k, j)) for k in range(1, n + 1)), NCPoly.zero()
        )
        for i in range(1, n + 1)
        for j in range(1, n + 1)
    }
    return p.substitute(images)
