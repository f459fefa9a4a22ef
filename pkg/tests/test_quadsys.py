import itertools
import random
from fractions import Fraction as F

import pytest

from permod.exactnum import QQ
from permod.quadsys import (BudgetExceeded, QuadEquation, QuadraticSystem,
                            QuadSysError, _eliminate_linear, evaluate,
                            export_system, parse_system, solve_finite_field,
                            systems_equal)


def eq(field, quad=None, lin=None, const=0):
    return QuadEquation(quad or {}, lin or {}, field.of(const))


def exhaustive_solvable(system):
    f = system.field
    dom = list(f.elements())
    for assign in itertools.product(dom, repeat=system.nvars):
        if evaluate(system, list(assign)) is None:
            return True
    return False


def random_system(rng, field, nvars, neqs):
    p = field.p
    eqs = []
    for _ in range(neqs):
        quad = {}
        for _ in range(rng.randint(0, 3)):
            i, j = rng.randint(1, nvars), rng.randint(1, nvars)
            key = (min(i, j), max(i, j))
            quad[key] = rng.randrange(p)
        lin = {rng.randint(1, nvars): rng.randrange(p)
               for _ in range(rng.randint(0, 3))}
        eqs.append(QuadEquation(quad, lin, rng.randrange(p)))
    return QuadraticSystem(field, nvars, eqs)


class TestEvaluate:
    def test_empty_system(self, f2):
        s = QuadraticSystem(f2, 3, [])
        assert evaluate(s, [0, 1, 0]) is None

    def test_z2_example(self, f2):
        s = QuadraticSystem(f2, 1, [eq(f2, lin={1: 1}, const=1)])
        assert evaluate(s, [1]) is None        # 1 + 1 = 0 in Z/2

    def test_first_violation_index(self, f2):
        s = QuadraticSystem(f2, 1, [eq(f2, lin={1: 1}),
                                    eq(f2, lin={1: 1}, const=1)])
        assert evaluate(s, [0]) == 2

    def test_length_mismatch(self, f2):
        s = QuadraticSystem(f2, 2, [])
        with pytest.raises(QuadSysError):
            evaluate(s, [0])


class TestSolver:
    def test_trivial_square(self, f2):
        s = QuadraticSystem(f2, 1, [eq(f2, quad={(1, 1): 1}, lin={1: 1})])
        res = solve_finite_field(s)
        assert res.status == "solvable"
        assert evaluate(s, res.witness) is None

    def test_xy_plus_one(self, f2):
        s = QuadraticSystem(f2, 2, [eq(f2, quad={(1, 2): 1}, const=1),
                                    eq(f2, lin={1: 1, 2: 1})])
        res = solve_finite_field(s)
        assert res.status == "solvable"
        assert res.witness == [1, 1]

    def test_irreducible_quadratic(self, f2):
        s = QuadraticSystem(f2, 1, [eq(f2, quad={(1, 1): 1}, lin={1: 1}, const=1)])
        assert solve_finite_field(s).status == "unsolvable"

    def test_agrees_with_enumeration_z2(self, f2):
        rng = random.Random(3)
        for _ in range(60):
            s = random_system(rng, f2, rng.randint(1, 8), rng.randint(1, 6))
            res = solve_finite_field(s)
            assert (res.status == "solvable") == exhaustive_solvable(s)
            if res.status == "solvable":
                assert evaluate(s, res.witness) is None

    def test_agrees_with_enumeration_z3(self, f3):
        rng = random.Random(4)
        for _ in range(40):
            s = random_system(rng, f3, rng.randint(1, 6), rng.randint(1, 5))
            res = solve_finite_field(s)
            assert (res.status == "solvable") == exhaustive_solvable(s)

    def test_linear_elimination_preserves_solvability(self, f3):
        rng = random.Random(5)
        for _ in range(30):
            s = random_system(rng, f3, rng.randint(1, 5), rng.randint(1, 4))
            out = _eliminate_linear(f3, s.equations)
            if out is None:
                assert not exhaustive_solvable(s)
                continue
            eqs, _ = out
            vars_left = sorted({v for e in eqs for v in e.variables()})
            remap = {v: i + 1 for i, v in enumerate(vars_left)}
            remapped = [QuadEquation({(remap[i], remap[j]): c
                                      for (i, j), c in e.quad.items()},
                                     {remap[i]: c for i, c in e.lin.items()},
                                     e.const) for e in eqs]
            reduced = QuadraticSystem(f3, len(vars_left), remapped)
            assert exhaustive_solvable(s) == exhaustive_solvable(reduced)

    def test_budget(self, f3):
        rng = random.Random(6)
        s = random_system(rng, f3, 6, 4)
        with pytest.raises(BudgetExceeded):
            solve_finite_field(s, budget=0)

    def test_rationals_refused(self):
        s = QuadraticSystem(QQ, 1, [])
        with pytest.raises(QuadSysError, match="export-only"):
            solve_finite_field(s)


class TestTextFormat:
    def test_empty_system(self, f2):
        s = QuadraticSystem(f2, 0, [])
        assert export_system(s) == "QUADSYS\nfield zp 2\nvars 0\nEND\n"

    def test_single_product(self, f2):
        s = QuadraticSystem(f2, 2, [eq(f2, quad={(1, 2): 1}, const=1)])
        assert "eq: 1 1 2  1 0 0" in export_system(s)

    def test_roundtrip_random(self, f3):
        rng = random.Random(7)
        for _ in range(25):
            s = random_system(rng, f3, rng.randint(1, 6), rng.randint(0, 5))
            assert systems_equal(parse_system(export_system(s)), s)

    def test_roundtrip_rational(self):
        s = QuadraticSystem(QQ, 2, [QuadEquation({(1, 2): F(3, 4)},
                                                 {1: F(-1, 2)}, F(5))])
        assert systems_equal(parse_system(export_system(s)), s)

    def test_variable_index_guard(self, f2):
        with pytest.raises(QuadSysError):
            QuadraticSystem(f2, 1, [eq(f2, lin={2: 1})])
