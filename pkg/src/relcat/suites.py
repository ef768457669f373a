"""Named verification suites shared by the CLI and the acceptance tests.

Each suite returns a list of CheckResult-like (name, passed, detail)
tuples, assembled deterministically from a seed.  The axiom and lemma
suites are built as pairs of generator terms, so the same pair can be
checked both as an exact formal identity (symbolic t) and as an exact
matrix identity on a concrete structure; the functor and stability suites
compare the formal category against its specializations.
"""

from __future__ import annotations

import random

from . import terms as tm
from .concrete import f_r_matrix, rel_infty_stability
from .dsl import eval_formal
from .field import Fq
from .frobenius import check_axioms, hat_f, standard_target, term_eval
from .matrix import MatFq
from .relations import (
    is_rel_infty,
    knop_diamond,
    product,
    random_invertible,
    random_rel_infty,
    random_relation,
    star,
)


class SuiteResult:
    __slots__ = ("name", "passed", "detail")

    def __init__(self, name, passed, detail=""):
        self.name = name
        self.passed = passed
        self.detail = detail

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}" + (f"  [{self.detail}]" if self.detail else "")


def _mat(field: Fq, rng, rows: int, cols: int) -> MatFq:
    return MatFq(field, rows, cols, [rng.randrange(field.q) for _ in range(rows * cols)])


def _block_diag(a: MatFq, b: MatFq) -> MatFq:
    rows = []
    for i in range(a.rows):
        rows.append(list(a.row(i)) + [0] * b.cols)
    for i in range(b.rows):
        rows.append([0] * a.cols + list(b.row(i)))
    return MatFq.from_rows(a.field, rows, a.cols + b.cols)


# -- axiom suite -------------------------------------------------------------


def frobenius_axiom_terms(field: Fq):
    """The defining axioms of a field-linear Frobenius space, as term pairs."""
    g = tm.Gen
    I1 = tm.t_id(1)
    pairs = [
        ("Fr1 m associative", tm.t_compose(g("m"), tm.t_tensor(g("m"), I1)),
         tm.t_compose(g("m"), tm.t_tensor(I1, g("m")))),
        ("Fr1 m commutative", tm.t_compose(g("m"), g("sigma")), g("m")),
        ("Fr1 unit left", tm.t_compose(g("m"), tm.t_tensor(g("eps"), I1)), I1),
        ("Fr1 unit right", tm.t_compose(g("m"), tm.t_tensor(I1, g("eps"))), I1),
        ("Fr1 m* coassociative", tm.t_compose(tm.t_tensor(g("m*"), I1), g("m*")),
         tm.t_compose(tm.t_tensor(I1, g("m*")), g("m*"))),
        ("Fr1 m* cocommutative", tm.t_compose(g("sigma"), g("m*")), g("m*")),
        ("Fr1 counit left", tm.t_compose(tm.t_tensor(g("eps*"), I1), g("m*")), I1),
        ("Fr1 counit right", tm.t_compose(tm.t_tensor(I1, g("eps*")), g("m*")), I1),
        ("Fr2 frobenius left", tm.t_compose(g("m*"), g("m")),
         tm.t_compose(tm.t_tensor(I1, g("m")), tm.t_tensor(g("m*"), I1))),
        ("Fr2 frobenius right", tm.t_compose(g("m*"), g("m")),
         tm.t_compose(tm.t_tensor(g("m"), I1), tm.t_tensor(I1, g("m*")))),
        ("Fr2 speciality", tm.t_compose(g("m"), g("m*")), I1),
        ("Lin1 plus associative", tm.t_compose(g("plus"), tm.t_tensor(g("plus"), I1)),
         tm.t_compose(g("plus"), tm.t_tensor(I1, g("plus")))),
        ("Lin1 plus commutative", tm.t_compose(g("plus"), g("sigma")), g("plus")),
        ("Lin2 zero left", tm.t_compose(g("plus"), tm.t_tensor(g("z"), I1)), I1),
        ("Lin2 zero right", tm.t_compose(g("plus"), tm.t_tensor(I1, g("z"))), I1),
        ("Lin3 mu(1) = Id", g("mu", 1), I1),
        ("Lin3 mu(0) = z . eps*", g("mu", 0), tm.t_compose(g("z"), g("eps*"))),
    ]
    for a in field.elements():
        for b in field.elements():
            pairs.append((
                f"Lin3 mu({a}).mu({b}) = mu(ab)",
                tm.t_compose(g("mu", a), g("mu", b)),
                g("mu", field.mul(a, b)),
            ))
            pairs.append((
                f"Lin4 mu({a}+{b}) = plus.(mu@mu).m*",
                g("mu", field.add(a, b)),
                tm.t_compose(g("plus"), tm.t_tensor(g("mu", a), g("mu", b)), g("m*")),
            ))
    for a in field.elements():
        pairs.append((
            f"Lin4 mu({a}) distributes",
            tm.t_compose(g("mu", a), g("plus")),
            tm.t_compose(g("plus"), tm.t_tensor(g("mu", a), g("mu", a))),
        ))
        if a != 0:
            pairs.append((
                f"Rel1 m*.mu({a})",
                tm.t_compose(g("m*"), g("mu", a)),
                tm.t_compose(tm.t_tensor(g("mu", a), g("mu", a)), g("m*")),
            ))
            pairs.append((f"Rel1 eps*.mu({a})", tm.t_compose(g("eps*"), g("mu", a)), g("eps*")))
            pairs.append((
                f"Rel1 mu({a}).m",
                tm.t_compose(g("mu", a), g("m")),
                tm.t_compose(g("m"), tm.t_tensor(g("mu", a), g("mu", a))),
            ))
    pairs += [
        ("Rel2 m*.z = z @ z", tm.t_compose(g("m*"), g("z")), tm.t_tensor(g("z"), g("z"))),
        ("Rel2 eps*.z = Id", tm.t_compose(g("eps*"), g("z")), tm.t_id(0)),
        ("Rel2 m.(z@z) = z", tm.t_compose(g("m"), tm.t_tensor(g("z"), g("z"))), g("z")),
        ("Rel3 m*.plus", tm.t_compose(g("m*"), g("plus")),
         tm.t_compose(tm.t_tensor(g("plus"), g("plus")),
                      tm.t_tensor(I1, g("sigma"), I1),
                      tm.t_tensor(g("m*"), g("m*")))),
        ("Rel3 eps*.plus", tm.t_compose(g("eps*"), g("plus")),
         tm.t_tensor(g("eps*"), g("eps*"))),
        ("Rel4 cancellation",
         tm.t_compose(g("m"), tm.t_tensor(g("plus"), g("plus")),
                      tm.t_tensor(I1, g("m*"), I1)),
         tm.t_compose(g("plus"), tm.t_tensor(I1, g("m")), tm.t_tensor(g("sigma"), I1))),
        ("snake left",
         tm.t_compose(tm.t_tensor(g("ev"), I1), tm.t_tensor(I1, g("coev"))), I1),
        ("snake right",
         tm.t_compose(tm.t_tensor(I1, g("ev")), tm.t_tensor(g("coev"), I1)), I1),
        ("ev = eps* . m", g("ev"), tm.t_compose(g("eps*"), g("m"))),
        ("coev = m* . eps", g("coev"), tm.t_compose(g("m*"), g("eps"))),
        ("z* = ev . (Id @ z)", g("z*"), tm.t_compose(g("ev"), tm.t_tensor(I1, g("z")))),
        ("eps = (eps* @ Id) . coev", g("eps"),
         tm.t_compose(tm.t_tensor(g("eps*"), I1), g("coev"))),
    ]
    return pairs


# -- lemma suite -------------------------------------------------------------


def mu_lemma_terms(field: Fq, seed: int = 0):
    """Matrix-action calculus lemmas, as generator/matrix-literal term pairs."""
    rng = random.Random(seed)
    g = tm.Gen
    I1 = tm.t_id(1)
    pairs = []

    for trial in range(6):
        l_, k_, r_ = (rng.randrange(1, 4) for _ in range(3))
        a = _mat(field, rng, k_, l_)
        b = _mat(field, rng, r_, k_)
        pairs.append((
            f"compos_mu_A #{trial}",
            tm.t_compose(tm.MuLit(b), tm.MuLit(a)),
            tm.MuLit(b @ a),
        ))
        a2 = _mat(field, rng, rng.randrange(1, 3), rng.randrange(1, 3))
        pairs.append((
            f"tensor_prod_mu_B #{trial}",
            tm.t_tensor(tm.MuLit(a), tm.MuLit(a2)),
            tm.MuLit(_block_diag(a, a2)),
        ))

    for l_ in (1, 2, 3):
        pairs.append((f"mu_identity I_{l_}", tm.MuLit(MatFq.identity(field, l_)), tm.t_id(l_)))
    for k_, l_ in ((2, 2), (3, 2), (2, 3)):
        stack = MatFq.identity(field, l_)
        for _ in range(k_ - 1):
            stack = stack.vstack(MatFq.identity(field, l_))
        rhs = tm.t_compose(
            tm.perm_term(tm.grid_transpose_perm(l_, k_)),
            tm.t_power(tm.mstar_it_term(k_), l_),
        )
        pairs.append((f"mu_identity stack k={k_},l={l_}", tm.MuLit(stack), rhs))
        pairs.append((
            f"interchanging_plus_and_comult k={k_},l={l_}",
            tm.t_compose(tm.mstar_it_term(k_), tm.plus_it_term(l_)),
            tm.t_compose(
                tm.t_power(tm.plus_it_term(l_), k_),
                tm.perm_term(tm.grid_transpose_perm(l_, k_)),
                tm.t_power(tm.mstar_it_term(k_), l_),
            ),
        ))
        row = _mat(field, rng, 1, l_)
        pairs.append((
            f"interchanging_mu_A_and_comult k={k_},l={l_}",
            tm.t_compose(tm.mstar_it_term(k_), tm.MuLit(row)),
            tm.t_compose(
                tm.t_power(tm.MuLit(row), k_),
                tm.perm_term(tm.grid_transpose_perm(l_, k_)),
                tm.t_power(tm.mstar_it_term(k_), l_),
            ),
        ))

    for trial in range(4):
        k_, l_, r_ = rng.randrange(1, 4), rng.randrange(1, 4), rng.randrange(2, 4)
        a = _mat(field, rng, k_, l_)
        stack_k = MatFq.identity(field, k_)
        stack_a = a
        for _ in range(r_ - 1):
            stack_k = stack_k.vstack(MatFq.identity(field, k_))
            stack_a = stack_a.vstack(a)
        pairs.append((
            f"mu_compos_aux #{trial}",
            tm.t_compose(tm.MuLit(stack_k), tm.MuLit(a)),
            tm.MuLit(stack_a),
        ))
        a1 = _mat(field, rng, rng.randrange(1, 3), l_)
        a2 = _mat(field, rng, rng.randrange(1, 3), l_)
        two = MatFq.identity(field, l_).vstack(MatFq.identity(field, l_))
        pairs.append((
            f"vert_stacking #{trial}",
            tm.MuLit(a1.vstack(a2)),
            tm.t_compose(tm.t_tensor(tm.MuLit(a1), tm.MuLit(a2)), tm.MuLit(two)),
        ))
        d_, r1_, r2_ = rng.randrange(1, 3), rng.randrange(1, 3), rng.randrange(1, 3)
        a = _mat(field, rng, d_, r1_)
        zero = MatFq.zeros(field, d_, r2_)
        pairs.append((
            f"horizontal_stacking_with_zero right #{trial}",
            tm.MuLit(a.hstack(zero)),
            tm.t_tensor(tm.MuLit(a), tm.t_power(g("eps*"), r2_)),
        ))
        pairs.append((
            f"horizontal_stacking_with_zero left #{trial}",
            tm.MuLit(zero.hstack(a)),
            tm.t_tensor(tm.t_power(g("eps*"), r2_), tm.MuLit(a)),
        ))
        b = _mat(field, rng, d_, r2_)
        glue = MatFq.identity(field, d_).hstack(MatFq.identity(field, d_))
        pairs.append((
            f"horizontal_stacking #{trial}",
            tm.MuLit(a.hstack(b)),
            tm.t_compose(tm.MuLit(glue), tm.t_tensor(tm.MuLit(a), tm.MuLit(b))),
        ))

    pairs.append((
        "eq_axiom_corollary",
        tm.t_compose(g("ev"), tm.t_tensor(g("plus"), g("plus")), tm.t_tensor(I1, g("m*"), I1)),
        tm.t_compose(g("ev"), tm.t_tensor(I1, g("eps*"), I1)),
    ))
    pairs.append((
        "transferring_plus",
        tm.t_compose(g("ev"), tm.t_tensor(g("plus"), I1)),
        tm.t_compose(g("ev"), tm.t_tensor(I1, g("plus")),
                     tm.t_tensor(I1, g("mu", field.neg(1)), I1)),
    ))
    for a in field.elements():
        if a:
            pairs.append((
                f"dual_scalar_mult a={a}",
                tm.t_compose(g("ev"), tm.t_tensor(g("mu", a), g("mu", a))),
                g("ev"),
            ))
            pairs.append((
                f"eps_and_mu a={a}",
                tm.t_compose(g("mu", a), g("eps")),
                g("eps"),
            ))
    for k_ in (1, 2, 3):
        a = random_invertible(rng, field, k_)
        pairs.append((
            f"transp_mu_A GL_{k_}",
            tm.t_compose(tm.ev_bar_term(field, k_), tm.t_tensor(tm.MuLit(a), tm.MuLit(a))),
            tm.ev_bar_term(field, k_),
        ))
        pairs.append((
            f"regular_system_of_eq GL_{k_}",
            tm.t_compose(tm.t_power(g("z*"), k_), tm.MuLit(a)),
            tm.t_power(g("z*"), k_),
        ))
    pairs.append((
        "comparing_with_zero 1",
        tm.t_compose(tm.t_tensor(I1, g("z*")), g("m*")),
        tm.t_compose(g("m"), tm.t_tensor(I1, g("z"))),
    ))
    pairs.append((
        "comparing_with_zero 2",
        tm.t_compose(g("m"), tm.t_tensor(I1, g("z"))),
        tm.t_compose(g("z"), g("z*")),
    ))
    for k_ in (2, 3):
        row = [rng.randrange(field.q) for _ in range(k_)]
        i = rng.randrange(k_)
        row[i] = rng.randrange(1, field.q)
        mat = MatFq(field, 1, k_, row)
        lhs = tm.t_compose(
            g("z*"),
            tm.MuLit(mat),
            tm.t_tensor(tm.t_id(i), g("eps"), tm.t_id(k_ - i - 1)),
        )
        pairs.append((f"eps_star_mu_A k={k_}", lhs, tm.t_power(g("eps*"), k_ - 1)))
    return pairs


# -- suite runners ------------------------------------------------------------


def run_term_pairs(field: Fq, pairs, n: int | None = 1):
    """Check term pairs formally and, when n is given, on the standard target."""
    out = []
    data = standard_target(field, n) if n is not None else None
    for name, lhs, rhs in pairs:
        formal_ok = eval_formal(lhs, field) == eval_formal(rhs, field)
        detail = "" if formal_ok else "formal mismatch"
        concrete_ok = True
        if data is not None:
            concrete_ok = term_eval(data, lhs) == term_eval(data, rhs)
            if not concrete_ok:
                detail = (detail + "; " if detail else "") + f"matrix mismatch at n={n}"
        out.append(SuiteResult(name, formal_ok and concrete_ok, detail))
    return out


def suite_axioms(field: Fq, n: int = 1):
    """Formal + concrete axiom suite, plus the concrete structure checker."""
    out = run_term_pairs(field, frobenius_axiom_terms(field), n)
    report = check_axioms(standard_target(field, n))
    for check in report.checks:
        out.append(SuiteResult(f"standard target {check.name}", check.passed,
                               "" if check.passed else str(check.counterexample)))
    expected_dim = field.q**n
    out.append(SuiteResult(
        f"dim = eps*.eps = q^n = {expected_dim}",
        report.dim_value == expected_dim,
    ))
    return out


def suite_lemmas(field: Fq, n: int = 1, seed: int = 0):
    return run_term_pairs(field, mu_lemma_terms(field, seed), n)


def _arity_guard(field: Fq, n: int, *pairs) -> bool:
    # bound the hom-space cell count so worst-case dense products stay fast
    return all(field.q ** (n * (a + b)) <= 2**12 for a, b in pairs)


def suite_functor(field: Fq, n: int, trials: int, seed: int, max_arity: int = 3):
    """Composition and monoidality of the specialization, randomized."""
    rng = random.Random(seed)
    comp_bad = ten_bad = 0
    comp_n = ten_n = 0
    attempts = 0
    while comp_n < trials and attempts < trials * 20:
        attempts += 1
        s_, k_, l_ = (rng.randrange(max_arity + 1) for _ in range(3))
        if not _arity_guard(field, n, (s_, k_), (k_, l_), (s_, l_)):
            continue
        r = random_relation(rng, field, s_, k_)
        s = random_relation(rng, field, k_, l_)
        sr, d = star(r, s)
        lhs = f_r_matrix(s, n).mat @ f_r_matrix(r, n).mat
        rhs = f_r_matrix(sr, n).mat.scale(field.q ** (n * d))
        comp_n += 1
        if lhs != rhs:
            comp_bad += 1
    while ten_n < trials and attempts < trials * 40:
        attempts += 1
        s1, k1, s2, k2 = (rng.randrange(max_arity + 1) for _ in range(4))
        if not _arity_guard(field, n, (s1, k1), (s2, k2), (s1 + s2, k1 + k2)):
            continue
        r1 = random_relation(rng, field, s1, k1)
        r2 = random_relation(rng, field, s2, k2)
        lhs = f_r_matrix(product(r1, r2), n).mat
        rhs = f_r_matrix(r1, n).mat.kron(f_r_matrix(r2, n).mat)
        ten_n += 1
        if lhs != rhs:
            ten_bad += 1
    return [
        SuiteResult(
            f"composition oracle q={field.q} n={n} ({comp_n} trials)",
            comp_bad == 0 and comp_n == trials,
            f"{comp_bad} failures",
        ),
        SuiteResult(
            f"monoidality oracle q={field.q} n={n} ({ten_n} trials)",
            ten_bad == 0 and ten_n == trials,
            f"{ten_bad} failures",
        ),
    ]


def suite_knop(field: Fq, trials: int, seed: int, max_arity: int = 3):
    """Orthogonal-indexing compatibility: diamond vs star, e vs d."""
    rng = random.Random(seed)
    bad = 0
    for _ in range(trials):
        s_, k_, l_ = (rng.randrange(max_arity + 1) for _ in range(3))
        r = random_relation(rng, field, s_, k_)
        s = random_relation(rng, field, k_, l_)
        sr, d = star(r, s)
        image, e = knop_diamond(r.perp(), s.perp())
        if image != sr.perp() or e != d:
            bad += 1
    return [
        SuiteResult(
            f"orthogonal indexing q={field.q} ({trials} trials)", bad == 0, f"{bad} failures"
        )
    ]


def suite_relinfty(field: Fq, n: int, trials: int, seed: int, max_arity: int = 3):
    """Closure, zero defect, concrete realization, and rank stability."""
    rng = random.Random(seed)
    closure_bad = hat_bad = stab_bad = 0
    data = standard_target(field, 1)
    for _ in range(trials):
        s_, k_, l_ = (rng.randrange(max_arity + 1) for _ in range(3))
        r1 = random_rel_infty(rng, field, s_, k_)
        r2 = random_rel_infty(rng, field, k_, l_)
        sr, d = star(r1, r2)
        if d != 0 or not is_rel_infty(sr) or not is_rel_infty(product(r1, r2)):
            closure_bad += 1
            continue
        if hat_f(data, r2) @ hat_f(data, r1) != hat_f(data, sr):
            hat_bad += 1
        t2 = random_rel_infty(rng, field, rng.randrange(max_arity + 1), rng.randrange(max_arity + 1))
        if hat_f(data, r1).kron(hat_f(data, t2)) != hat_f(data, product(r1, t2)):
            hat_bad += 1
    stab_trials = min(trials, 50)
    for _ in range(stab_trials):
        s_, k_ = rng.randrange(3), rng.randrange(3)
        if not _arity_guard(field, n + 1, (s_, k_)):
            continue
        r = random_rel_infty(rng, field, s_, k_)
        if not rel_infty_stability(r, n):
            stab_bad += 1
    return [
        SuiteResult(f"closure and zero defect q={field.q} ({trials} trials)", closure_bad == 0,
                    f"{closure_bad} failures"),
        SuiteResult(f"generator-level realization q={field.q}", hat_bad == 0, f"{hat_bad} failures"),
        SuiteResult(f"rank stability n={n}", stab_bad == 0, f"{stab_bad} failures"),
    ]
