"""The relation calculus on typed subspaces.

A ``Relation`` is a linear subspace R of F_q^{s+k} read as a formal arrow
[s] -> [k]; it is stored as its unique RREF basis so equality is
structural.  This module implements the star composition with its defect,
tensor products, the orthogonal-complement indexing with its fiber-product
composition, membership and normal forms for the stable subfamily whose
members surject onto the codomain block, and the generator table.
"""

from __future__ import annotations

from .errors import (
    ArityMismatch,
    FieldMismatch,
    InvalidPermutation,
    NotRelInfty,
    UnknownGenerator,
)
from .field import Fq
from .matrix import MatFq, intersect_rowspaces


class Relation:
    """A subspace R ⊂ F_q^{s+k} typed as an arrow [s] -> [k]."""

    __slots__ = ("field", "s", "k", "basis")

    def __init__(self, field: Fq, s: int, k: int, basis: MatFq):
        if basis.field != field:
            raise FieldMismatch("basis field differs from the relation field")
        if basis.cols != s + k:
            raise ArityMismatch(f"basis has {basis.cols} columns, arities give {s + k}")
        self.field = field
        self.s = s
        self.k = k
        self.basis = basis.rref()[0]

    @classmethod
    def from_rows(cls, field: Fq, s: int, k: int, rows) -> "Relation":
        return cls(field, s, k, MatFq.from_rows(field, rows, s + k))

    @classmethod
    def zero_space(cls, field: Fq, s: int, k: int) -> "Relation":
        return cls(field, s, k, MatFq.from_rows(field, [], s + k))

    @classmethod
    def full_space(cls, field: Fq, s: int, k: int) -> "Relation":
        return cls(field, s, k, MatFq.identity(field, s + k))

    @property
    def dim(self) -> int:
        return self.basis.rows

    def __eq__(self, other):
        return (
            isinstance(other, Relation)
            and self.field == other.field
            and (self.s, self.k) == (other.s, other.k)
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.field, self.s, self.k, self.basis))

    def sort_key(self):
        return (self.dim, self.basis.entries)

    def to_text(self) -> str:
        rows = ",".join("[" + ",".join(map(str, self.basis.row(i))) + "]"
                        for i in range(self.dim))
        return f"rel({self.field};{self.s},{self.k};[{rows}])"

    __repr__ = to_text

    def to_json(self) -> dict:
        return {"s": self.s, "k": self.k, "basis": self.basis.to_json()}

    def retype(self, s: int, k: int) -> "Relation":
        """The same subspace read with a different (s, k) split."""
        if s + k != self.s + self.k:
            raise ArityMismatch("retype must preserve the ambient dimension")
        return Relation(self.field, s, k, self.basis)

    def perp(self) -> "Relation":
        """Orthogonal complement in the same ambient space, same typing."""
        return Relation(self.field, self.s, self.k, self.basis.perp())


def star(r: Relation, s: Relation) -> tuple[Relation, int]:
    """Compose r: [s]->[k] with s: [k]->[l]; returns (s ⋆ r, defect d).

    The sum (r,0)+(0,s) is formed inside F_q^{s+k+l}; the composite is its
    intersection with the middle-zero subspace, the middle block deleted;
    the defect is the middle-block codimension of the projection.
    """
    if r.field != s.field:
        raise FieldMismatch("star over different fields")
    if r.k != s.s:
        raise ArityMismatch(f"middle arity mismatch: {r.k} vs {s.s}")
    F = r.field
    ns, nk, nl = r.s, r.k, s.k
    left = r.basis.hstack(MatFq.zeros(F, r.dim, nl))
    right = MatFq.zeros(F, s.dim, ns).hstack(s.basis)
    u = left.vstack(right).rref()[0]
    mid = u.take_cols(range(ns, ns + nk))
    d = nk - mid.rank()
    # rows y with y @ mid = 0 give the middle-zero part of Row(u)
    y = mid.transpose().kernel()
    w = y.matmul(u)
    outer = w.take_cols(list(range(ns)) + list(range(ns + nk, ns + nk + nl)))
    return Relation(F, ns, nl, outer), d


def product(r1: Relation, r2: Relation) -> Relation:
    """Tensor product; ambient coordinates ordered [dom1|dom2|cod1|cod2]."""
    if r1.field != r2.field:
        raise FieldMismatch("product over different fields")
    F = r1.field
    s1, k1, s2, k2 = r1.s, r1.k, r2.s, r2.k
    total = s1 + s2 + k1 + k2
    rows = []
    for i in range(r1.dim):
        v = r1.basis.row(i)
        row = [0] * total
        row[:s1] = v[:s1]
        row[s1 + s2 : s1 + s2 + k1] = v[s1:]
        rows.append(row)
    for i in range(r2.dim):
        v = r2.basis.row(i)
        row = [0] * total
        row[s1 : s1 + s2] = v[:s2]
        row[s1 + s2 + k1 :] = v[s2:]
        rows.append(row)
    return Relation.from_rows(F, s1 + s2, k1 + k2, rows) if rows else Relation.zero_space(
        F, s1 + s2, k1 + k2
    )


def knop_diamond(rp: Relation, sp: Relation) -> tuple[Relation, int]:
    """Fiber-product composition of the orthogonal indexing.

    ``rp``: [s]->[k] and ``sp``: [k]->[l] are composed by forming
    T = {(v,w,u) : (v,w) ∈ rp, (w,u) ∈ sp}, projecting to the outer
    coordinates, and reporting the kernel dimension e of that projection.
    """
    if rp.field != sp.field:
        raise FieldMismatch("diamond over different fields")
    if rp.k != sp.s:
        raise ArityMismatch(f"middle arity mismatch: {rp.k} vs {sp.s}")
    F = rp.field
    ns, nk, nl = rp.s, rp.k, sp.k
    u1 = rp.basis.hstack(MatFq.zeros(F, rp.dim, nl)).vstack(
        MatFq.zeros(F, nl, ns + nk).hstack(MatFq.identity(F, nl))
    )
    u2 = MatFq.identity(F, ns).hstack(MatFq.zeros(F, ns, nk + nl)).vstack(
        MatFq.zeros(F, sp.dim, ns).hstack(sp.basis)
    )
    t = intersect_rowspaces(u1, u2)
    outer = t.take_cols(list(range(ns)) + list(range(ns + nk, ns + nk + nl)))
    image, rank = outer.rref()
    e = t.rows - rank
    return Relation(F, ns, nl, image), e


# -- the stable subfamily (surjective onto the codomain block) ----------


def is_rel_infty(r: Relation) -> bool:
    """True iff the projection of R onto the last k coordinates is onto."""
    return r.basis.take_cols(range(r.s, r.s + r.k)).rank() == r.k


def rel_infty_normal_form(r: Relation) -> tuple[MatFq, MatFq]:
    """Write R = Row[-A I_k; A' 0] with A' of full row rank, in RREF.

    Returns (A, A') with A of shape k x s and A' of shape (dim R - k) x s.
    Deterministic: comes from the RREF of the basis with the codomain
    block moved in front.
    """
    if not is_rel_infty(r):
        raise NotRelInfty(f"{r!r} does not surject onto the codomain block")
    F, s, k = r.field, r.s, r.k
    permuted = r.basis.take_cols(list(range(s, s + k)) + list(range(s)))
    red, rank = permuted.rref()
    # rank-k head: rows (e_i | a_i) ; tail rows (0 | a')
    a_rows = [red.row(i)[k:] for i in range(k)]
    a = MatFq.from_rows(F, a_rows, s).neg()
    ap_rows = [red.row(i)[k:] for i in range(k, red.rows)]
    ap = MatFq.from_rows(F, ap_rows, s) if ap_rows else MatFq.from_rows(F, [], s)
    return a, ap


def rel_infty_from_parts(a: MatFq, ap: MatFq) -> Relation:
    """Assemble Row[-A I_k; A' 0] as a relation [s] -> [k]."""
    F = a.field
    k, s = a.rows, a.cols
    top = a.neg().hstack(MatFq.identity(F, k))
    bottom = ap.hstack(MatFq.zeros(F, ap.rows, k))
    return Relation(F, s, k, top.vstack(bottom))


# -- generator table ----------------------------------------------------


def identity_relation(field: Fq, k: int) -> Relation:
    rows = []
    for i in range(k):
        row = [0] * (2 * k)
        row[i] = 1
        row[k + i] = -1
        rows.append(row)
    return Relation.from_rows(field, k, k, rows) if rows else Relation.zero_space(field, 0, 0)


def sigma_relation(field: Fq, l: int, k: int) -> Relation:
    """The symmetry [l+k] -> [k+l] swapping the two blocks."""
    n = l + k
    rows = []
    for i in range(l):
        row = [0] * (2 * n)
        row[i] = 1
        row[n + k + i] = -1
        rows.append(row)
    for j in range(k):
        row = [0] * (2 * n)
        row[l + j] = 1
        row[n + j] = -1
        rows.append(row)
    if not rows:
        return Relation.zero_space(field, 0, 0)
    return Relation.from_rows(field, n, n, rows)


def permutation_relation(field: Fq, p) -> Relation:
    """Relation of the strand permutation sending input i to output p[i].

    Concretely the induced map takes v_1 ⊗ ... ⊗ v_k to the tuple whose
    p(i)-th slot is v_i.
    """
    p = tuple(p)
    k = len(p)
    if sorted(p) != list(range(k)):
        raise InvalidPermutation(f"{p} is not a permutation of 0..{k - 1}")
    rows = []
    for i in range(k):
        row = [0] * (2 * k)
        row[i] = 1
        row[k + p[i]] = -1
        rows.append(row)
    if not rows:
        return Relation.zero_space(field, 0, 0)
    return Relation.from_rows(field, k, k, rows)


def mu_relation(a: MatFq) -> Relation:
    """Row[-A | I_r] typed [d] -> [r]: the 'multiply the tuple by A' arrow."""
    F = a.field
    r, d = a.rows, a.cols
    m = a.neg().hstack(MatFq.identity(F, r))
    return Relation(F, d, r, m)


def ev_bar_relation(field: Fq, k: int) -> Relation:
    """Strandwise pairing [2k] -> [0]: Row[I_k | -I_k]."""
    m = MatFq.identity(field, k).hstack(MatFq.identity(field, k).neg())
    return Relation(field, 2 * k, 0, m)


def coev_bar_relation(field: Fq, k: int) -> Relation:
    m = MatFq.identity(field, k).hstack(MatFq.identity(field, k).neg())
    return Relation(field, 0, 2 * k, m)


GENERATOR_ARITIES = {
    "eps": (0, 1),
    "eps*": (1, 0),
    "m": (2, 1),
    "m*": (1, 2),
    "sigma": (2, 2),
    "z": (0, 1),
    "z*": (1, 0),
    "plus": (2, 1),
    "mu": (1, 1),
    "ev": (2, 0),
    "coev": (0, 2),
}


def generator_relation(field: Fq, name: str, a: int | None = None) -> Relation:
    """The defining subspace of a named generator, canonicalized.

    Names: eps, eps*, m, m*, sigma, z, z*, plus, mu (needs the scalar a),
    ev, coev.  Aliases eps_star/m_star/z_star are accepted.
    """
    name = {"eps_star": "eps*", "m_star": "m*", "z_star": "z*"}.get(name, name)
    if name == "eps":
        return Relation.zero_space(field, 0, 1)
    if name == "eps*":
        return Relation.zero_space(field, 1, 0)
    if name == "m":
        return Relation.from_rows(field, 2, 1, [[1, -1, 0], [1, 0, -1]])
    if name == "m*":
        return Relation.from_rows(field, 1, 2, [[1, -1, 0], [1, 0, -1]])
    if name == "sigma":
        return sigma_relation(field, 1, 1)
    if name == "z":
        return Relation(field, 0, 1, MatFq.identity(field, 1))
    if name == "z*":
        return Relation(field, 1, 0, MatFq.identity(field, 1))
    if name == "plus":
        return Relation.from_rows(field, 2, 1, [[1, 1, -1]])
    if name == "mu":
        if a is None:
            raise UnknownGenerator("mu needs a scalar argument")
        return Relation.from_rows(field, 1, 1, [[field.neg(field.check(a)), 1]])
    if name == "ev":
        return Relation.from_rows(field, 2, 0, [[1, -1]])
    if name == "coev":
        return Relation.from_rows(field, 0, 2, [[1, -1]])
    raise UnknownGenerator(f"unknown generator {name!r}")


# -- random sampling (deterministic given the rng) -----------------------


def random_relation(rng, field: Fq, s: int, k: int) -> Relation:
    n = s + k
    nrows = rng.randrange(n + 1)
    rows = [[rng.randrange(field.q) for _ in range(n)] for _ in range(nrows)]
    if not rows:
        return Relation.zero_space(field, s, k)
    return Relation.from_rows(field, s, k, rows)


def random_rel_infty(rng, field: Fq, s: int, k: int) -> Relation:
    a = MatFq(field, k, s, [rng.randrange(field.q) for _ in range(k * s)])
    nrows = rng.randrange(s + 1)
    ap = MatFq(field, nrows, s, [rng.randrange(field.q) for _ in range(nrows * s)])
    return rel_infty_from_parts(a, ap)


def random_invertible(rng, field: Fq, n: int) -> MatFq:
    while True:
        m = MatFq(field, n, n, [rng.randrange(field.q) for _ in range(n * n)])
        if m.is_invertible():
            return m
