import random
from fractions import Fraction

import pytest

from permod import PrimeField, Presentation


@pytest.fixture
def f2():
    return PrimeField(2)


@pytest.fixture
def f3():
    return PrimeField(3)


def random_presentation(rng, field, n=1, max_gens=3, max_rels=3,
                        grade_pool=None):
    """Random valid presentation: generator grades from the pool, each
    relation supported on generators of smaller-or-equal grade."""
    if grade_pool is None:
        grade_pool = [Fraction(k, 2) for k in range(0, 9)]
    ngens = rng.randint(1, max_gens)
    gens = []
    for i in range(ngens):
        grade = tuple(rng.choice(grade_pool) for _ in range(n))
        gens.append((f"g{i}", grade))
    nrels = rng.randint(0, max_rels)
    rels = []
    for j in range(nrels):
        grade = tuple(rng.choice(grade_pool) for _ in range(n))
        coeffs = []
        support = False
        for _, ggrade in gens:
            if all(x <= y for x, y in zip(ggrade, grade)) and rng.random() < 0.7:
                c = field.of(rng.randrange(1, getattr(field, "p", 5)))
                support = True
            else:
                c = field.zero
            coeffs.append(c)
        if not support:
            continue
        rels.append((f"r{j}", grade, coeffs))
    return Presentation(n, field, gens, rels).validate()


def rerepresent(rng, p, n_row_ops=5, add_redundant=True):
    """A different presentation of the same module: random unit graded row
    operations on relations plus one redundant generator/relation pair."""
    field = p.field
    q = p.copy()
    for _ in range(n_row_ops):
        if len(q.relations) < 2:
            break
        i, j = rng.sample(range(len(q.relations)), 2)
        nm_i, gr_i, cs_i = q.relations[i]
        _, gr_j, cs_j = q.relations[j]
        # r_i += c * (shifted r_j), requires gr(r_j) <= gr(r_i)
        if not all(x <= y for x, y in zip(gr_j, gr_i)):
            continue
        c = field.of(rng.randrange(1, getattr(field, "p", 5)))
        cs = [field.add(a, field.mul(c, b)) for a, b in zip(cs_i, cs_j)]
        q.relations[i] = (nm_i, gr_i, cs)
    if add_redundant and q.generators:
        idx = rng.randrange(len(q.generators))
        _, base_grade = q.generators[idx]
        bump = tuple(g + Fraction(rng.randint(0, 2), 2) for g in base_grade)
        newg = f"gextra{len(q.generators)}"
        q.generators.append((newg, bump))
        coeffs = []
        for _, ggrade in q.generators[:-1]:
            if all(x <= y for x, y in zip(ggrade, bump)) and rng.random() < 0.5:
                coeffs.append(field.of(rng.randrange(1, getattr(field, "p", 5))))
            else:
                coeffs.append(field.zero)
        coeffs.append(field.one)
        # older relations need a zero coefficient slot for the new generator
        q.relations = [(nm, gr, cs + [field.zero]) for nm, gr, cs in q.relations]
        q.relations.append((f"rextra{len(q.relations)}", bump, coeffs))
    return q.validate()


def seeded(seed):
    return random.Random(seed)
