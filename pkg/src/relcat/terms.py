"""Typed AST for morphism expressions over the generator alphabet.

Nodes carry their inferred (dom, cod) arities; building an ill-typed
composite raises ArityMismatch immediately.  Besides the node classes this
module holds the structural term builders used by the generator
decomposition: iterated comultiplication and addition, strand
permutations assembled from adjacent swaps, the matrix-action expansion,
and the strandwise pairing caps/cups.
"""

from __future__ import annotations

from .errors import ArityMismatch, UnknownGenerator
from .field import Fq
from .matrix import MatFq
from .poly import PolyQ
from .relations import GENERATOR_ARITIES, Relation

_CANONICAL = {"eps_star": "eps*", "m_star": "m*", "z_star": "z*"}


class Term:
    """Base class; every node has .dom and .cod strand counts."""

    __slots__ = ("dom", "cod")

    def __eq__(self, other):
        raise NotImplementedError

    def __repr__(self):
        return to_text(self)


class Gen(Term):
    __slots__ = ("name", "a")

    def __init__(self, name: str, a: int | None = None):
        name = _CANONICAL.get(name, name)
        if name not in GENERATOR_ARITIES:
            raise UnknownGenerator(f"unknown generator {name!r}")
        if (name == "mu") != (a is not None):
            raise UnknownGenerator("exactly the mu generator takes a scalar")
        self.name = name
        self.a = a
        self.dom, self.cod = GENERATOR_ARITIES[name]

    def __eq__(self, other):
        return isinstance(other, Gen) and (self.name, self.a) == (other.name, other.a)

    def __hash__(self):
        return hash((Gen, self.name, self.a))


class RelLit(Term):
    __slots__ = ("rel",)

    def __init__(self, rel: Relation):
        self.rel = rel
        self.dom, self.cod = rel.s, rel.k

    def __eq__(self, other):
        return isinstance(other, RelLit) and self.rel == other.rel

    def __hash__(self):
        return hash((RelLit, self.rel))


class MuLit(Term):
    __slots__ = ("mat",)

    def __init__(self, mat: MatFq):
        self.mat = mat
        self.dom, self.cod = mat.cols, mat.rows

    def __eq__(self, other):
        return isinstance(other, MuLit) and self.mat == other.mat

    def __hash__(self):
        return hash((MuLit, self.mat))


class IdK(Term):
    __slots__ = ("k",)

    def __init__(self, k: int):
        if k < 0:
            raise ArityMismatch("id needs k >= 0")
        self.k = k
        self.dom = self.cod = k

    def __eq__(self, other):
        return isinstance(other, IdK) and self.k == other.k

    def __hash__(self):
        return hash((IdK, self.k))


class Compose(Term):
    """left ∘ right: the right factor is applied first."""

    __slots__ = ("left", "right")

    def __init__(self, left: Term, right: Term):
        if right.cod != left.dom:
            raise ArityMismatch(
                f"compose: {to_text(left)} expects {left.dom} strands, "
                f"{to_text(right)} delivers {right.cod}"
            )
        self.left = left
        self.right = right
        self.dom, self.cod = right.dom, left.cod

    def __eq__(self, other):
        return isinstance(other, Compose) and (self.left, self.right) == (
            other.left,
            other.right,
        )

    def __hash__(self):
        return hash((Compose, self.left, self.right))


class Tensor(Term):
    """left ⊗ right: the left factor is the left tensor strand."""

    __slots__ = ("left", "right")

    def __init__(self, left: Term, right: Term):
        self.left = left
        self.right = right
        self.dom = left.dom + right.dom
        self.cod = left.cod + right.cod

    def __eq__(self, other):
        return isinstance(other, Tensor) and (self.left, self.right) == (
            other.left,
            other.right,
        )

    def __hash__(self):
        return hash((Tensor, self.left, self.right))


class LinComb(Term):
    __slots__ = ("parts",)

    def __init__(self, parts):
        parts = tuple((c if isinstance(c, PolyQ) else PolyQ.const(c), t) for c, t in parts)
        if not parts:
            raise ArityMismatch("empty linear combination has no arity")
        arities = {(t.dom, t.cod) for _, t in parts}
        if len(arities) > 1:
            raise ArityMismatch(f"linear combination mixes arities {sorted(arities)}")
        self.parts = parts
        self.dom, self.cod = parts[0][1].dom, parts[0][1].cod

    def __eq__(self, other):
        return isinstance(other, LinComb) and self.parts == other.parts

    def __hash__(self):
        return hash((LinComb, self.parts))


# -- printing ---------------------------------------------------------------

_PREC_LINCOMB, _PREC_TENSOR, _PREC_COMPOSE, _PREC_ATOM = 0, 1, 2, 3


def _prec(term: Term) -> int:
    if isinstance(term, LinComb):
        return _PREC_LINCOMB
    if isinstance(term, Tensor):
        return _PREC_TENSOR
    if isinstance(term, Compose):
        return _PREC_COMPOSE
    return _PREC_ATOM


def _wrap(term: Term, minimum: int) -> str:
    text = to_text(term)
    return f"({text})" if _prec(term) < minimum else text


def to_text(term: Term) -> str:
    """Grammar-compatible rendering; parse(to_text(t)) == t."""
    if isinstance(term, Gen):
        return f"mu({term.a})" if term.name == "mu" else term.name
    if isinstance(term, IdK):
        return f"id({term.k})"
    if isinstance(term, RelLit):
        return term.rel.to_text()
    if isinstance(term, MuLit):
        rows = ",".join(
            "[" + ",".join(map(str, term.mat.row(i))) + "]" for i in range(term.mat.rows)
        )
        return f"muM({term.mat.cols};[{rows}])"
    if isinstance(term, Compose):
        return f"{_wrap(term.left, _PREC_COMPOSE)} . {_wrap(term.right, _PREC_COMPOSE + 1)}"
    if isinstance(term, Tensor):
        return f"{_wrap(term.left, _PREC_TENSOR)} @ {_wrap(term.right, _PREC_TENSOR + 1)}"
    if isinstance(term, LinComb):
        parts = []
        for coeff, sub in term.parts:
            c = str(coeff)
            if ("+" in c[1:]) or ("-" in c[1:]) or c.startswith("-"):
                c = f"({c})"
            parts.append(f"{c} * {_wrap(sub, _PREC_TENSOR)}")
        return " + ".join(parts)
    raise TypeError(f"not a Term: {term!r}")


# -- structural builders ------------------------------------------------------


def t_id(k: int) -> Term:
    return IdK(k)


def t_compose(*factors: Term) -> Term:
    """Left-associated composition chain; identity factors are elided."""
    for f, g in zip(factors, factors[1:]):
        if f.dom != g.cod:
            raise ArityMismatch(
                f"compose chain: {to_text(f)} expects {f.dom}, {to_text(g)} delivers {g.cod}"
            )
    real = [f for f in factors if not isinstance(f, IdK)]
    if not real:
        return factors[0]
    out = real[0]
    for f in real[1:]:
        out = Compose(out, f)
    return out


def t_tensor(*factors: Term) -> Term:
    """Tensor chain; id(0) factors are elided and pure-id chains merged."""
    real = [f for f in factors if not (isinstance(f, IdK) and f.k == 0)]
    if not real:
        return IdK(0)
    if all(isinstance(f, IdK) for f in real):
        return IdK(sum(f.k for f in real))
    out = real[0]
    for f in real[1:]:
        out = Tensor(out, f)
    return out


def t_power(term: Term, n: int) -> Term:
    return t_tensor(*([term] * n)) if n else IdK(0)


def adjacent_swap_term(i: int, k: int) -> Term:
    """The swap of strands i, i+1 among k strands."""
    return t_tensor(t_id(i), Gen("sigma"), t_id(k - i - 2))


def perm_term(p) -> Term:
    """A sigma-composite sending input strand j to output strand p[j]."""
    p = list(p)
    k = len(p)
    dest = list(p)
    swaps = []
    changed = True
    while changed:
        changed = False
        for i in range(k - 1):
            if dest[i] > dest[i + 1]:
                dest[i], dest[i + 1] = dest[i + 1], dest[i]
                swaps.append(i)
                changed = True
    term = t_id(k)
    for i in swaps:
        term = t_compose(adjacent_swap_term(i, k), term)
    return term


def grid_transpose_perm(groups: int, copies: int) -> list[int]:
    """Regroup `groups` blocks of `copies` strands into `copies` blocks of `groups`."""
    p = [0] * (groups * copies)
    for j in range(groups):
        for i in range(copies):
            p[j * copies + i] = i * groups + j
    return p


def mstar_it_term(r: int) -> Term:
    """Iterated comultiplication [1] -> [r]; r = 0 is the counit.

    Splits the leftmost strand each time: (m* ⊗ Id^{r-2}) ∘ ... ∘ m*.
    """
    if r == 0:
        return Gen("eps*")
    if r == 1:
        return t_id(1)
    factors = [t_tensor(Gen("m*"), t_id(r - 2 - i)) for i in range(r - 1)]
    return t_compose(*factors)


def plus_it_term(d: int) -> Term:
    """Iterated addition [d] -> [1]; d = 0 is the zero vector.

    Sums the leftmost pair each time: plus ∘ (plus ⊗ Id) ∘ ... .
    """
    if d == 0:
        return Gen("z")
    if d == 1:
        return t_id(1)
    factors = [t_tensor(Gen("plus"), t_id(i)) for i in range(d - 1)]
    return t_compose(*factors)


def mu_matrix_term(a: MatFq) -> Term:
    """Expand the matrix action [cols] -> [rows] into generators.

    Each input strand is comultiplied into one copy per output, the grid
    is transposed so copies group by output, each copy is scaled by its
    matrix entry, and each output group is summed.
    """
    out_n, in_n = a.rows, a.cols
    if in_n == 0:
        return t_tensor(*[Gen("z")] * out_n) if out_n else t_id(0)
    step1 = t_tensor(*[mstar_it_term(out_n) for _ in range(in_n)])
    if out_n == 0:
        return step1
    step2 = perm_term(grid_transpose_perm(in_n, out_n))
    step3 = t_tensor(*[Gen("mu", a[i, j]) for i in range(out_n) for j in range(in_n)])
    step4 = t_tensor(*[plus_it_term(in_n) for _ in range(out_n)])
    return t_compose(step4, step3, step2, step1)


def phi_term(field: Fq, basis: MatFq) -> Term:
    """The pairing form [cols] -> [0] of a subspace basis matrix."""
    d = basis.rows
    mu = mu_matrix_term(basis)
    if d == 0:
        return mu if basis.cols else t_id(0)
    return t_compose(t_tensor(*[Gen("z*")] * d), mu)


def reversal_term(k: int) -> Term:
    return perm_term([k - 1 - j for j in range(k)])


def ev_bar_term(field: Fq, k: int) -> Term:
    """Strandwise pairing [2k] -> [0] from nested ev caps."""
    if k == 0:
        return t_id(0)
    nested = Gen("ev")
    for j in range(1, k):
        nested = t_compose(nested, t_tensor(t_id(j), Gen("ev"), t_id(j)))
    return t_compose(nested, t_tensor(t_id(k), reversal_term(k)))


def coev_bar_term(field: Fq, k: int) -> Term:
    if k == 0:
        return t_id(0)
    nested = Gen("coev")
    for j in range(1, k):
        nested = t_compose(t_tensor(t_id(j), Gen("coev"), t_id(j)), nested)
    return t_compose(t_tensor(t_id(k), reversal_term(k)), nested)
