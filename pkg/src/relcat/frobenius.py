"""Structure checker for concrete field-linear (semi-)Frobenius spaces.

A candidate structure is a tuple of exact rational matrices: merge m,
split m*, counit eps*, vector addition plus, zero vector z, one scaling
map per field element, and optionally the unit eps.  When the unit is
absent the candidate is checked as a semi-Frobenius space: the checker's
dependency list guarantees no unit-dependent map is ever formed.

Tensor powers are interpreted by the library's Kronecker indexing (first
factor least significant).  Terms are evaluated against a structure
column-by-column, so wide intermediate tensor powers never materialize as
full matrices.
"""

from __future__ import annotations

from fractions import Fraction

from . import terms as tm
from .errors import (
    MissingUnit,
    NotRelInfty,
    RequiresEvaluation,
    ShapeMismatch,
    TooLarge,
)
from .field import Fq
from .matrix import MatFq
from .qmat import QMat
from .relations import Relation, is_rel_infty, rel_infty_normal_form
from .terms import Term

STANDARD_GUARD = 2**12


class FrobeniusData:
    """Concrete structure maps on a D-dimensional space."""

    __slots__ = ("field", "dim", "m", "m_star", "eps_star", "plus", "z", "mu", "eps")

    def __init__(self, field: Fq, dim: int, m, m_star, eps_star, plus, z, mu, eps=None):
        self.field = field
        self.dim = dim
        self.m = m
        self.m_star = m_star
        self.eps_star = eps_star
        self.plus = plus
        self.z = z
        self.mu = dict(mu)
        self.eps = eps
        shapes = {
            "m": (self.m, dim, dim * dim),
            "m_star": (self.m_star, dim * dim, dim),
            "eps_star": (self.eps_star, 1, dim),
            "plus": (self.plus, dim, dim * dim),
            "z": (self.z, dim, 1),
        }
        if eps is not None:
            shapes["eps"] = (self.eps, dim, 1)
        for name, (mat, rows, cols) in shapes.items():
            if (mat.rows, mat.cols) != (rows, cols):
                raise ShapeMismatch(f"{name} must be {rows}x{cols}, got {mat.rows}x{mat.cols}")
        for a in field.elements():
            if a not in self.mu:
                raise ShapeMismatch(f"mu is missing the scaling map for {a}")
            if (self.mu[a].rows, self.mu[a].cols) != (dim, dim):
                raise ShapeMismatch(f"mu[{a}] must be {dim}x{dim}")

    @property
    def has_unit(self) -> bool:
        return self.eps is not None

    def swap(self) -> QMat:
        d = self.dim
        return QMat(d * d, d * d, {(j + d * i, i + d * j): 1 for i in range(d) for j in range(d)})

    def ev(self) -> QMat:
        return self.eps_star @ self.m

    def coev(self) -> QMat:
        if self.eps is None:
            raise MissingUnit("coev needs the unit eps")
        return self.m_star @ self.eps

    def z_star(self) -> QMat:
        return self.ev() @ QMat.identity(self.dim).kron(self.z)


def standard_target(field: Fq, n: int) -> FrobeniusData:
    """The structure on the free vector space over F_q^n basis tuples."""
    q = field.q
    dim = q**n
    if dim > STANDARD_GUARD:
        raise TooLarge(f"q^n = {dim} exceeds {STANDARD_GUARD}")

    def vec_add(a: int, b: int) -> int:
        da = [(a // q**i) % q for i in range(n)]
        db = [(b // q**i) % q for i in range(n)]
        return sum(field.add(x, y) * q**i for i, (x, y) in enumerate(zip(da, db)))

    def vec_scale(c: int, a: int) -> int:
        da = [(a // q**i) % q for i in range(n)]
        return sum(field.mul(c, x) * q**i for i, x in enumerate(da))

    m = QMat(dim, dim * dim, {(v, v + dim * v): 1 for v in range(dim)})
    m_star = QMat(dim * dim, dim, {(v + dim * v, v): 1 for v in range(dim)})
    eps_star = QMat(1, dim, {(0, v): 1 for v in range(dim)})
    eps = QMat(dim, 1, {(v, 0): 1 for v in range(dim)})
    plus = QMat(
        dim, dim * dim, {(vec_add(v, w), v + dim * w): 1 for v in range(dim) for w in range(dim)}
    )
    z = QMat(dim, 1, {(0, 0): 1})
    mu = {
        a: QMat(dim, dim, {(vec_scale(a, v), v): 1 for v in range(dim)})
        for a in field.elements()
    }
    return FrobeniusData(field, dim, m, m_star, eps_star, plus, z, mu, eps)


# -- column-wise term evaluation -----------------------------------------


def _apply_mat(mat: QMat, vec: dict) -> dict:
    by_col: dict[int, list] = {}
    for (r, c), v in mat.data.items():
        by_col.setdefault(c, []).append((r, v))
    out: dict[int, object] = {}
    for c, coeff in vec.items():
        for r, v in by_col.get(c, ()):
            w = out.get(r, 0) + coeff * v
            if w:
                out[r] = w
            else:
                out.pop(r, None)
    return out


def _atom_matrix(data: FrobeniusData, node: tm.Gen) -> QMat:
    name = node.name
    if name == "m":
        return data.m
    if name == "m*":
        return data.m_star
    if name == "eps*":
        return data.eps_star
    if name == "plus":
        return data.plus
    if name == "z":
        return data.z
    if name == "z*":
        return data.z_star()
    if name == "sigma":
        return data.swap()
    if name == "mu":
        return data.mu[node.a]
    if name == "ev":
        return data.ev()
    if name == "eps":
        if data.eps is None:
            raise MissingUnit("term uses eps but the structure has no unit")
        return data.eps
    if name == "coev":
        return data.coev()
    raise AssertionError(name)


def term_apply(data: FrobeniusData, term: Term, vec: dict, t_value=None) -> dict:
    """Apply a term to a sparse vector on the basis of D^dom indices."""
    if isinstance(term, tm.Gen):
        return _apply_mat(_atom_matrix(data, term), vec)
    if isinstance(term, tm.IdK):
        return dict(vec)
    if isinstance(term, tm.MuLit):
        return term_apply(data, tm.mu_matrix_term(term.mat), vec, t_value)
    if isinstance(term, tm.RelLit):
        return _apply_mat(rel_matrix(data, term.rel), vec)
    if isinstance(term, tm.Compose):
        return term_apply(data, term.left, term_apply(data, term.right, vec, t_value), t_value)
    if isinstance(term, tm.Tensor):
        dl = data.dim**term.left.dom
        cl = data.dim**term.left.cod
        split: dict[tuple[int, int], object] = {}
        for idx, coeff in vec.items():
            split[(idx % dl, idx // dl)] = coeff
        left_cache: dict[int, dict] = {}
        right_cache: dict[int, dict] = {}
        out: dict[int, object] = {}
        for (i1, i2), coeff in split.items():
            if i1 not in left_cache:
                left_cache[i1] = term_apply(data, term.left, {i1: 1}, t_value)
            if i2 not in right_cache:
                right_cache[i2] = term_apply(data, term.right, {i2: 1}, t_value)
            for r1, v1 in left_cache[i1].items():
                for r2, v2 in right_cache[i2].items():
                    key = r1 + cl * r2
                    w = out.get(key, 0) + coeff * v1 * v2
                    if w:
                        out[key] = w
                    else:
                        out.pop(key, None)
        return out
    if isinstance(term, tm.LinComb):
        out: dict[int, object] = {}
        for coeff, sub in term.parts:
            if coeff.degree() > 0 and t_value is None:
                raise RequiresEvaluation("term has symbolic t coefficients")
            scalar = coeff.evaluate(t_value) if t_value is not None else coeff.constant_value()
            if not scalar:
                continue
            for r, v in term_apply(data, sub, vec, t_value).items():
                w = out.get(r, 0) + scalar * v
                if w:
                    out[r] = w
                else:
                    out.pop(r, None)
        return out
    raise TypeError(f"not a Term: {term!r}")


def term_eval(data: FrobeniusData, term: Term, t_value=None) -> QMat:
    """Evaluate a term to its D^cod x D^dom matrix, column by column."""
    rows = data.dim**term.cod
    cols = data.dim**term.dom
    out = {}
    for c in range(cols):
        col = term_apply(data, term, {c: 1}, t_value)
        for r, v in col.items():
            out[(r, c)] = v
    return QMat(rows, cols, out)


def mu_A_eval(data: FrobeniusData, a: MatFq) -> QMat:
    """The matrix-action composite assembled from the structure maps."""
    return term_eval(data, tm.mu_matrix_term(a))


def hat_f(data: FrobeniusData, rel: Relation) -> QMat:
    """Generator-level realization of a codomain-surjective relation.

    Uses the Row[-A I; A' 0] normal form: scale by the stacked matrix,
    then zero-test the A' outputs.
    """
    if not is_rel_infty(rel):
        raise NotRelInfty(f"{rel!r} does not surject onto the codomain block")
    a, ap = rel_infty_normal_form(rel)
    stacked = a.vstack(ap)
    body = mu_A_eval(data, stacked)
    cap = QMat.identity(data.dim**rel.k)
    zs = data.z_star()
    for _ in range(ap.rows):
        cap = cap.kron(zs)
    return cap @ body


def rel_matrix(data: FrobeniusData, rel: Relation) -> QMat:
    """Universal image of a basis arrow in this structure.

    Codomain-surjective relations go through the unit-free realization;
    anything else needs the unit and goes through the generator
    decomposition of the pairing form.
    """
    if is_rel_infty(rel):
        return hat_f(data, rel)
    if data.eps is None:
        raise MissingUnit(
            "a relation that does not surject onto its codomain needs the unit"
        )
    from .category import decompose_generators

    return term_eval(data, decompose_generators(rel))


# -- the axiom checklist ----------------------------------------------------


class CheckResult:
    __slots__ = ("name", "passed", "counterexample")

    def __init__(self, name: str, passed: bool, counterexample=None):
        self.name = name
        self.passed = passed
        self.counterexample = counterexample

    def __repr__(self):
        if self.passed:
            return f"pass {self.name}"
        return f"FAIL {self.name} at {self.counterexample}"


class Report:
    __slots__ = ("checks", "dim_value", "semi")

    def __init__(self, checks, dim_value, semi):
        self.checks = checks
        self.dim_value = dim_value
        self.semi = semi

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self):
        out = [
            {"name": c.name, "pass": c.passed}
            | ({"counterexample": list(c.counterexample)} if c.counterexample else {})
            for c in self.checks
        ]
        return {
            "semi": self.semi,
            "dim": None if self.dim_value is None else str(self.dim_value),
            "checks": out,
        }


def _first_difference(a: QMat, b: QMat):
    keys = sorted(set(a.data) | set(b.data))
    for key in keys:
        if a.data.get(key, 0) != b.data.get(key, 0):
            return key
    return None


def _structure_checks(data: FrobeniusData):
    """Yield (name, needs_unit, lhs, rhs) exact matrix identities."""
    F = data.field
    D = data.dim
    I = QMat.identity(D)
    one = QMat.identity(1)
    m, ms, es, pl, z = data.m, data.m_star, data.eps_star, data.plus, data.z
    sw = data.swap()

    yield ("Fr1 m associative", False, m @ m.kron(I), m @ I.kron(m))
    yield ("Fr1 m commutative", False, m @ sw, m)
    yield ("Fr1 m* coassociative", False, ms.kron(I) @ ms, I.kron(ms) @ ms)
    yield ("Fr1 m* cocommutative", False, sw @ ms, ms)
    yield ("Fr1 counit left", False, es.kron(I) @ ms, I)
    yield ("Fr1 counit right", False, I.kron(es) @ ms, I)
    if data.has_unit:
        yield ("Fr1 unit left", True, m @ data.eps.kron(I), I)
        yield ("Fr1 unit right", True, m @ I.kron(data.eps), I)
    yield ("Fr2 frobenius left", False, ms @ m, I.kron(m) @ ms.kron(I))
    yield ("Fr2 frobenius right", False, ms @ m, m.kron(I) @ I.kron(ms))
    yield ("Fr2 speciality m.m*=Id", False, m @ ms, I)
    yield ("Lin1 plus associative", False, pl @ pl.kron(I), pl @ I.kron(pl))
    yield ("Lin1 plus commutative", False, pl @ sw, pl)
    yield ("Lin2 zero left", False, pl @ z.kron(I), I)
    yield ("Lin2 zero right", False, pl @ I.kron(z), I)
    for a in F.elements():
        for b in F.elements():
            yield (
                f"Lin3 mu({a}).mu({b})=mu({F.mul(a, b)})",
                False,
                data.mu[a] @ data.mu[b],
                data.mu[F.mul(a, b)],
            )
    yield ("Lin3 mu(1)=Id", False, data.mu[1], I)
    yield ("Lin3 mu(0)=z.eps*", False, data.mu[0], z @ es)
    for a in F.elements():
        for b in F.elements():
            yield (
                f"Lin4 mu({F.add(a, b)})=plus.(mu({a})@mu({b})).m*",
                False,
                data.mu[F.add(a, b)],
                pl @ data.mu[a].kron(data.mu[b]) @ ms,
            )
    for a in F.elements():
        yield (
            f"Lin4 mu({a}) distributes over plus",
            False,
            data.mu[a] @ pl,
            pl @ data.mu[a].kron(data.mu[a]),
        )
    for a in F.elements():
        if a == 0:
            continue
        yield (f"Rel1 m*.mu({a})=(mu@mu).m*", False, ms @ data.mu[a], data.mu[a].kron(data.mu[a]) @ ms)
        yield (f"Rel1 eps*.mu({a})=eps*", False, es @ data.mu[a], es)
        yield (f"Rel1 mu({a}).m=m.(mu@mu)", False, data.mu[a] @ m, m @ data.mu[a].kron(data.mu[a]))
    yield ("Rel2 m*.z=z@z", False, ms @ z, z.kron(z))
    yield ("Rel2 eps*.z=Id", False, es @ z, one)
    yield ("Rel2 m.(z@z)=z", False, m @ z.kron(z), z)
    yield (
        "Rel3 m*.plus=(plus@plus).(Id@swap@Id).(m*@m*)",
        False,
        ms @ pl,
        pl.kron(pl) @ I.kron(sw).kron(I) @ ms.kron(ms),
    )
    yield ("Rel3 eps*.plus=eps*@eps*", False, es @ pl, es.kron(es))
    yield (
        "Rel4 cancellation",
        False,
        m @ pl.kron(pl) @ I.kron(ms).kron(I),
        pl @ I.kron(m) @ sw.kron(I),
    )
    if data.has_unit:
        ev, coev = data.ev(), data.coev()
        yield ("self-dual snake left", True, ev.kron(I) @ I.kron(coev), I)
        yield ("self-dual snake right", True, I.kron(ev) @ coev.kron(I), I)


def check_axioms(data: FrobeniusData, semi: bool | None = None) -> Report:
    """Run every axiom as an exact matrix identity; semi mode skips the unit.

    semi=None infers the mode from the presence of eps.
    """
    if semi is None:
        semi = not data.has_unit
    if not semi and not data.has_unit:
        raise MissingUnit("cannot run unit axioms without eps")
    checks = []
    for name, needs_unit, lhs, rhs in _structure_checks(data):
        if semi and needs_unit:
            continue
        diff = _first_difference(lhs, rhs)
        checks.append(CheckResult(name, diff is None, diff))
    dim_value = None
    if not semi:
        dim_value = (data.eps_star @ data.eps).data.get((0, 0), Fraction(0))
    return Report(checks, dim_value, semi)
