"""Deciding interleavings by reduction to quadratic-system solvability.

Two finitely presented modules are eps-interleaved iff a certain system of
affine-quadratic equations over the coefficient field has a solution.  The
unknowns are the entries of six matrices: A, B carry the two interleaving
morphisms on free covers, C, D map relations to relations, and E, F express
the defect of the composites from the 2-eps transitions.  The equations are
the entries of

    A T_M = T_N C,   B T_N = T_M D,   B A - I = T_M E,   A B - I = T_N F,

where T_M, T_N hold the relation coefficient vectors.  Which entries of the
variable matrices may be nonzero is dictated by the grades: an entry mapping
basis element b to basis element b' is free iff grade(b') <= J(grade(b)) for
the relevant shift J.  Translations by eps give the interleaving distance;
general diagonal affine maps (J1, J2) give the asymmetric decision used for
the Rips/Cech comparison.
"""

from fractions import Fraction

from .exactnum import INF, ExtendedRational, ext
from .presentation import MonotoneAffineMap, PresentationError, grade_leq
from .quadsys import (BudgetExceeded, DEFAULT_BUDGET, QuadEquation,
                      QuadraticSystem, export_system, solve_finite_field)


class InterleavingSystem:
    """The assembled decision object: matrix shapes, free-entry masks, the
    relation-constant matrices and the resulting quadratic system."""

    MATS = ("A", "B", "C", "D", "E", "F")

    def __init__(self, shapes, masks, t_m, t_n, system, var_of_entry):
        self.shapes = shapes            # name -> (rows, cols)
        self.masks = masks              # name -> [[bool]] True = free variable
        self.t_m = t_m
        self.t_n = t_n
        self.system = system
        self.var_of_entry = var_of_entry  # (name, i, j) -> 1-based var index

    @property
    def free_variable_count(self):
        return self.system.nvars

    @property
    def equation_count(self):
        return len(self.system.equations)

    def export_text(self):
        """Quadsys text plus a trailing comment block mapping variables back
        to matrix entries."""
        body = export_system(self.system)
        notes = "".join(f"# var {v} = {name}[{i + 1}][{j + 1}]\n"
                        for (name, i, j), v in sorted(self.var_of_entry.items(),
                                                      key=lambda kv: kv[1]))
        return body + notes


def zero_pattern_mask(target_grades, source_grades, jmap=None):
    """Mat_k zero pattern against a shifted target basis: entry (i, j) may be
    nonzero iff grade(target i) <= J(grade(source j))."""
    if jmap is None:
        return [[grade_leq(ti, sj) for sj in source_grades] for ti in target_grades]
    return [[grade_leq(ti, jmap.apply(sj)) for sj in source_grades]
            for ti in target_grades]


def _relation_constant_matrix(p):
    """|G| x |R| matrix whose columns are the relation coefficient vectors."""
    f = p.field
    rows, cols = len(p.generators), len(p.relations)
    t = [[f.zero] * cols for _ in range(rows)]
    for j, (_, _, coeffs) in enumerate(p.relations):
        for i, c in enumerate(coeffs):
            t[i][j] = c
    return t


def assemble_system(m, n, j1, j2):
    """Build the quadratic system deciding whether (M, N) is (J1, J2)-interleaved.

    The zero pattern of each variable matrix comes from representing the lift
    in the shifted target basis: entry (i, j) is free iff the target basis
    grade is <= the shifted source basis grade.
    """
    if m.n != n.n:
        raise PresentationError("parameter counts differ")
    if m.field != n.field:
        raise PresentationError("coefficient fields differ")
    if j1.n != m.n or j2.n != m.n:
        raise PresentationError("shift map dimension mismatch")
    f = m.field

    gm = [g for _, g in m.generators]
    gn = [g for _, g in n.generators]
    rm = [g for _, g, _ in m.relations]
    rn = [g for _, g, _ in n.relations]

    j21 = j2.compose(j1)   # J2 . J1, acts on M-side grades
    j12 = j1.compose(j2)   # J1 . J2, acts on N-side grades
    mask = zero_pattern_mask

    shapes = {
        "A": (len(gn), len(gm)), "B": (len(gm), len(gn)),
        "C": (len(rn), len(rm)), "D": (len(rm), len(rn)),
        "E": (len(rm), len(gm)), "F": (len(rn), len(gn)),
    }
    masks = {
        "A": mask(gn, gm, j1), "B": mask(gm, gn, j2),
        "C": mask(rn, rm, j1), "D": mask(rm, rn, j2),
        "E": mask(rm, gm, j21), "F": mask(rn, gn, j12),
    }

    var_of_entry = {}
    counter = 0
    for name in InterleavingSystem.MATS:
        rows, cols = shapes[name]
        msk = masks[name]
        for i in range(rows):
            for j in range(cols):
                if msk[i][j]:
                    counter += 1
                    var_of_entry[(name, i, j)] = counter

    t_m = _relation_constant_matrix(m)
    t_n = _relation_constant_matrix(n)

    def var(name, i, j):
        return var_of_entry.get((name, i, j))

    equations = []

    def prod_entry_linear(left_name, const_right, i, j, sign, eq):
        """Accumulate sign * (Var_left . Const_right)[i][j] into eq."""
        rows, cols = shapes[left_name]
        for k in range(cols):
            v = var(left_name, i, k)
            c = const_right[k][j]
            if v is not None and c != f.zero:
                cc = c if sign > 0 else f.neg(c)
                eq.lin[v] = f.add(eq.lin.get(v, f.zero), cc)

    def const_prod_entry_linear(const_left, right_name, i, j, sign, eq):
        rows, cols = shapes[right_name]
        for k in range(rows):
            c = const_left[i][k]
            v = var(right_name, k, j)
            if v is not None and c != f.zero:
                cc = c if sign > 0 else f.neg(c)
                eq.lin[v] = f.add(eq.lin.get(v, f.zero), cc)

    def var_prod_entry(left_name, right_name, i, j, eq):
        inner = shapes[left_name][1]
        for k in range(inner):
            vl = var(left_name, i, k)
            vr = var(right_name, k, j)
            if vl is not None and vr is not None:
                key = (vl, vr) if vl <= vr else (vr, vl)
                eq.quad[key] = f.add(eq.quad.get(key, f.zero), f.one)

    # A T_M = T_N C  (|G_N| x |R_M| linear equations)
    for i in range(len(gn)):
        for j in range(len(rm)):
            eq = QuadEquation(const=f.zero)
            prod_entry_linear("A", t_m, i, j, +1, eq)
            const_prod_entry_linear(t_n, "C", i, j, -1, eq)
            equations.append(eq)
    # B T_N = T_M D  (|G_M| x |R_N|)
    for i in range(len(gm)):
        for j in range(len(rn)):
            eq = QuadEquation(const=f.zero)
            prod_entry_linear("B", t_n, i, j, +1, eq)
            const_prod_entry_linear(t_m, "D", i, j, -1, eq)
            equations.append(eq)
    # B A - I = T_M E  (|G_M| x |G_M|)
    for i in range(len(gm)):
        for j in range(len(gm)):
            eq = QuadEquation(const=f.neg(f.one) if i == j else f.zero)
            var_prod_entry("B", "A", i, j, eq)
            const_prod_entry_linear(t_m, "E", i, j, -1, eq)
            equations.append(eq)
    # A B - I = T_N F  (|G_N| x |G_N|)
    for i in range(len(gn)):
        for j in range(len(gn)):
            eq = QuadEquation(const=f.neg(f.one) if i == j else f.zero)
            var_prod_entry("A", "B", i, j, eq)
            const_prod_entry_linear(t_n, "F", i, j, -1, eq)
            equations.append(eq)

    system = QuadraticSystem(f, counter, equations)
    return InterleavingSystem(shapes, masks, t_m, t_n, system, var_of_entry)


def _check_increasing(maps, presentations):
    grades = [g for p in presentations for _, g in p.generators]
    grades += [g for p in presentations for _, g, _ in p.relations]
    if not grades:
        return
    lo = tuple(min(g[i] for g in grades) for i in range(presentations[0].n))
    for jm in maps:
        if not jm.increasing_at(lo):
            raise PresentationError(
                f"map {jm!r} is not increasing on the grade domain (min grade {lo})")


def decide_generalized(m, n, j1, j2, budget=DEFAULT_BUDGET):
    """'yes'/'no': is (M, N) (J1, J2)-interleaved?  Decision only; the
    candidate-set search is proven only for translations."""
    _check_increasing([j1, j2], [m, n])
    sys_ = assemble_system(m, n, j1, j2)
    res = solve_finite_field(sys_.system, budget=budget)
    return "yes" if res.status == "solvable" else "no"


def decide_interleaving(m, n, eps, budget=DEFAULT_BUDGET):
    """'yes'/'no': are M and N eps-interleaved?  eps >= 0 rational."""
    eps = Fraction(eps)
    if eps < 0:
        raise PresentationError("eps must be >= 0")
    j = MonotoneAffineMap.translation(m.n, eps)
    sys_ = assemble_system(m, n, j, j)
    res = solve_finite_field(sys_.system, budget=budget)
    return "yes" if res.status == "solvable" else "no"


def candidate_set(m, n):
    """U_{M,N}: all values the interleaving distance can take, as a sorted
    list of ExtendedRationals containing 0 and +inf.  Computed from minimized
    presentations."""
    _, axes_m = m.critical_grades()
    _, axes_n = n.critical_grades()
    values = {Fraction(0)}
    for i in range(m.n):
        um, un = axes_m[i] if i < len(axes_m) else [], axes_n[i] if i < len(axes_n) else []
        for x in um:
            for y in un:
                values.add(abs(x - y))
        for x in um:
            for y in um:
                values.add(abs(x - y) / 2)
        for x in un:
            for y in un:
                values.add(abs(x - y) / 2)
    out = [ext(v) for v in sorted(values)]
    out.append(INF)
    return out


class DistanceBudgetExceeded(Exception):
    """Search ran out of solver budget; carries the bracketing interval
    [largest eps decided no, smallest eps still undecided]."""

    def __init__(self, last_no, first_unknown, nodes):
        super().__init__(f"budget exceeded; bracket [{last_no}, {first_unknown}]")
        self.bracket = (last_no, first_unknown)
        self.nodes = nodes


class SearchStats:
    def __init__(self):
        self.decisions = 0
        self.nodes = 0


def interleaving_distance(m, n, budget=DEFAULT_BUDGET, stats=None):
    """d_I(M, N) as an ExtendedRational: binary search over the candidate set,
    valid because interleavability is monotone in eps and the distance is
    attained.  Presentations are minimized once up front."""
    mm, nn = m.minimize(), n.minimize()
    cands = candidate_set(mm, nn)
    finite = [c for c in cands if c.is_finite]
    lo, hi = 0, len(finite) - 1
    first_yes = None
    last_no = ExtendedRational.of(0)
    try:
        while lo <= hi:
            mid = (lo + hi) // 2
            j = MonotoneAffineMap.translation(mm.n, finite[mid].value)
            res = solve_finite_field(assemble_system(mm, nn, j, j).system,
                                     budget=budget)
            if stats is not None:
                stats.decisions += 1
                stats.nodes += res.nodes
            if res.status == "solvable":
                first_yes = finite[mid]
                hi = mid - 1
            else:
                last_no = finite[mid]
                lo = mid + 1
    except BudgetExceeded as exc:
        unknown = finite[(lo + hi) // 2] if lo <= hi else INF
        raise DistanceBudgetExceeded(last_no, unknown, exc.nodes) from exc
    return first_yes if first_yes is not None else INF
