"""The specialization functor into exact integer matrices.

For rank n, a formal arrow [s] -> [k] becomes an exact matrix acting on
tensor powers of the free complex vector space on F_q^n.  Basis tuples
are indexed by integers: a vector v in F_q^n has code sum_j v_j q^j
(little-endian over coordinates) and a tuple (v_1|...|v_s) has index
sum_i code(v_i) q^{n(i-1)}, so strand 1 is the least significant block,
matching QMat.kron.

These matrices are the ground-truth oracle for every formal identity:
composition becomes exact matrix product scaled by q^{n·defect}, tensor
becomes the Kronecker product, and t evaluates to q^n.
"""

from __future__ import annotations

from fractions import Fraction

from .category import Morphism
from .errors import ArityMismatch, FieldMismatch, NotRelInfty, TooLarge
from .field import Fq
from .matrix import MatFq, enumerate_subspaces, subspace_count
from .qmat import QMat
from .relations import Relation, is_rel_infty

SIZE_GUARD = 2**22


class ConcreteMap:
    """An exact matrix plus its (field, n, s, k) bookkeeping."""

    __slots__ = ("field", "n", "s", "k", "mat")

    def __init__(self, field: Fq, n: int, s: int, k: int, mat: QMat):
        if mat.rows != field.q ** (n * k) or mat.cols != field.q ** (n * s):
            raise ArityMismatch(
                f"matrix {mat.rows}x{mat.cols} does not match q^(nk) x q^(ns)"
            )
        self.field = field
        self.n = n
        self.s = s
        self.k = k
        self.mat = mat

    def __eq__(self, other):
        return (
            isinstance(other, ConcreteMap)
            and (self.field, self.n, self.s, self.k) == (other.field, other.n, other.s, other.k)
            and self.mat == other.mat
        )

    def __repr__(self):
        return f"ConcreteMap(q={self.field}, n={self.n}, [{self.s}]->[{self.k}], nnz={self.mat.nnz()})"

    def entry(self, row: int, col: int):
        return self.mat.data.get((row, col), 0)


def _guard(field: Fq, n: int, s: int, k: int):
    if field.q ** (n * max(s, k, 1)) > SIZE_GUARD:
        raise TooLarge(f"q^(n*max(s,k)) exceeds {SIZE_GUARD}")


def tuple_code(field: Fq, n: int, vectors) -> int:
    """Index of a tuple of F_q^n vectors (coordinate lists of codes)."""
    code = 0
    shift = 1
    for vec in vectors:
        for coord in vec:
            code += coord * shift
            shift *= field.q
    return code


def code_tuple(field: Fq, n: int, code: int, count: int):
    """Inverse of tuple_code: unpack into `count` coordinate tuples."""
    out = []
    for _ in range(count):
        vec = []
        for _ in range(n):
            vec.append(code % field.q)
            code //= field.q
        out.append(tuple(vec))
    return out


def f_r_matrix(rel: Relation, n: int) -> ConcreteMap:
    """The 0/1 matrix of a basis arrow at rank n.

    Per input column the constraint system on the output tuple is solved
    once over F_q and its solution coset is enumerated, so the cost is
    q^{ns} * q^{n(k - rank)} rather than a full double enumeration.
    """
    F, s, k = rel.field, rel.s, rel.k
    _guard(F, n, s, k)
    q = F.q
    dom = rel.basis.take_cols(range(s))
    cod = rel.basis.take_cols(range(s, s + k))
    # RREF the codomain block once; record how the domain block transforms.
    aug, _ = cod.hstack(dom).rref()
    cod_red = aug.take_cols(range(k))
    dom_red = aug.take_cols(range(k, k + s))
    pivots = []
    seen = set()
    for i in range(cod_red.rows):
        row = cod_red.row(i)
        piv = next((j for j in range(k) if row[j]), None)
        pivots.append(piv)
        if piv is not None:
            seen.add(piv)
    free_cols = [j for j in range(k) if j not in seen]
    data = {}
    for col in range(q ** (n * s)):
        vin = code_tuple(F, n, col, s)
        # solve slot-by-slot: slot j of the outputs satisfies the same
        # reduced system with rhs = -dom_red @ (slot j of the inputs)
        particular = [[0] * k for _ in range(n)]
        consistent = True
        for slot in range(n):
            rhs = [
                F.neg(
                    _dot(F, dom_red.row(i), [vin[x][slot] for x in range(s)])
                )
                for i in range(dom_red.rows)
            ]
            for i in range(cod_red.rows):
                if pivots[i] is None:
                    if rhs[i] != 0:
                        consistent = False
                        break
                else:
                    particular[slot][pivots[i]] = rhs[i]
            if not consistent:
                break
        if not consistent:
            continue
        for combo in range(q ** (n * len(free_cols))):
            free_vals = code_tuple(F, n, combo, len(free_cols))
            wout = [list(particular[slot]) for slot in range(n)]
            for fi, j in enumerate(free_cols):
                for slot in range(n):
                    x = free_vals[fi][slot]
                    wout[slot][j] = x
                    for i in range(cod_red.rows):
                        if pivots[i] is not None and cod_red[i, j]:
                            wout[slot][pivots[i]] = F.sub(
                                wout[slot][pivots[i]], F.mul(cod_red[i, j], x)
                            )
            vectors = [tuple(wout[slot][j] for slot in range(n)) for j in range(k)]
            row = tuple_code(F, n, vectors)
            data[(row, col)] = 1
    return ConcreteMap(F, n, s, k, QMat(q ** (n * k), q ** (n * s), data))


def _dot(F: Fq, coeffs, values) -> int:
    acc = 0
    for c, v in zip(coeffs, values):
        if c and v:
            acc = F.add(acc, F.mul(c, v))
    return acc


def specialize(f: Morphism, n: int) -> ConcreteMap:
    """Evaluate every coefficient at t = q^n and sum the basis matrices."""
    F = f.field
    _guard(F, n, f.s, f.k)
    t_value = Fraction(F.q) ** n
    acc = QMat.zero(F.q ** (n * f.k), F.q ** (n * f.s))
    for rel, coeff in f.terms.items():
        value = coeff.evaluate(t_value)
        if value:
            acc = acc.add(f_r_matrix(rel, n).mat.scale(value))
    return ConcreteMap(F, n, f.s, f.k, acc)


def concrete_compose(f: ConcreteMap, g: ConcreteMap) -> ConcreteMap:
    """Matrix product f ∘ g."""
    if (f.field, f.n) != (g.field, g.n):
        raise FieldMismatch("compose of maps over different specializations")
    if f.s != g.k:
        raise ArityMismatch(f"compose [{g.s}]->[{g.k}] then [{f.s}]->[{f.k}]")
    return ConcreteMap(f.field, f.n, g.s, f.k, f.mat @ g.mat)


def concrete_tensor(f: ConcreteMap, g: ConcreteMap) -> ConcreteMap:
    """Kronecker product under the fixed index encoding (f least significant)."""
    if (f.field, f.n) != (g.field, g.n):
        raise FieldMismatch("tensor of maps over different specializations")
    return ConcreteMap(f.field, f.n, f.s + g.s, f.k + g.k, f.mat.kron(g.mat))


def independence_check(field: Fq, s: int, k: int, n: int) -> tuple[int, bool]:
    """Rank of the stacked, vectorized basis matrices at rank n."""
    rels = [Relation(field, s, k, b) for b in enumerate_subspaces(field, s + k)]
    width = field.q ** (n * (s + k))
    if width > SIZE_GUARD:
        raise TooLarge("vectorized matrices too large")
    stack = {}
    for i, rel in enumerate(rels):
        mat = f_r_matrix(rel, n).mat
        for (r, c), v in mat.data.items():
            stack[(i, r * mat.cols + c)] = v
    rank = QMat(len(rels), width, stack).rank()
    return rank, rank == len(rels)


def embed_code(field: Fq, n: int, code: int, count: int) -> int:
    """Re-index a tuple over F_q^n as the same tuple over F_q^{n+1}."""
    vectors = code_tuple(field, n, code, count)
    padded = [tuple(v) + (0,) for v in vectors]
    return tuple_code(field, n + 1, padded)


def rel_infty_stability(rel: Relation, n: int) -> bool:
    """Restriction of the rank-(n+1) matrix to embedded tuples equals rank n.

    Only meaningful for relations surjecting onto the codomain block; the
    image of an embedded tuple must itself be supported on embedded tuples.
    """
    if not is_rel_infty(rel):
        raise NotRelInfty(f"{rel!r} does not surject onto the codomain block")
    F, s, k = rel.field, rel.s, rel.k
    small = f_r_matrix(rel, n)
    big = f_r_matrix(rel, n + 1)
    cols_by_big: dict[int, dict[int, object]] = {}
    for (r, c), v in big.mat.data.items():
        cols_by_big.setdefault(c, {})[r] = v
    cols_by_small: dict[int, dict[int, object]] = {}
    for (r, c), v in small.mat.data.items():
        cols_by_small.setdefault(c, {})[r] = v
    row_embed = {embed_code(F, n, r, k): r for r in range(F.q ** (n * k))}
    for col in range(F.q ** (n * s)):
        bigcol = cols_by_big.get(embed_code(F, n, col, s), {})
        expected = cols_by_small.get(col, {})
        got = {}
        for r, v in bigcol.items():
            if r not in row_embed:
                return False
            got[row_embed[r]] = v
        if got != expected:
            return False
    return True


def action_matrix(g: MatFq, s: int, n: int) -> QMat:
    """Permutation matrix of an invertible g acting on s-tuples over F_q^n."""
    F = g.field
    if g.rows != n or g.cols != n:
        raise ArityMismatch("group element must be n x n")
    q = F.q
    size = q ** (n * s)
    data = {}
    for col in range(size):
        vectors = code_tuple(F, n, col, s)
        moved = []
        for vec in vectors:
            moved.append(tuple(_dot(F, g.row(i), vec) for i in range(n)))
        data[(tuple_code(F, n, moved), col)] = 1
    return QMat(size, size, data)


def hom_dimension(field: Fq, s: int, k: int) -> int:
    """Number of relations, i.e. dim Hom([s],[k]) in the formal category."""
    return subspace_count(field, s + k)
