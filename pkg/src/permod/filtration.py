"""Point clouds, L^p metrics, Rips/Cech bifiltrations, function-aware
distances, density sampling and kernel density estimation.

All coordinates are rational.  L2 scale values (half-diameters, smallest
enclosing ball radii) are square roots of rationals; they are carried exactly
as their squares, so every grade comparison is decided, and each value also
exposes the certified rational bracket of width <= 2**-20 that downstream
consumers record.
"""

import itertools
import math
from fractions import Fraction

import numpy as np

from .exactnum import QQ, bracket_sqrt, format_rational, parse_rational
from .linalg import rank as _mat_rank
from .linalg import solve as _mat_solve


class FiltrationError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Exact scale values
# ---------------------------------------------------------------------------

def _sqrt_if_square(q):
    """sqrt(q) as a Fraction if q is a perfect rational square, else None."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("negative square")
    rn = math.isqrt(q.numerator)
    rd = math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


class Scale:
    """An irrational scale sqrt(sq); comparisons go through sq exactly."""

    __slots__ = ("sq",)

    def __init__(self, sq):
        self.sq = Fraction(sq)
        if self.sq < 0:
            raise ValueError("negative radicand")

    def bracket(self, tol_log2=20):
        return bracket_sqrt(self.sq, tol_log2)

    def __repr__(self):
        return f"sqrt({format_rational(self.sq)})"


def scale_of_square(q):
    """Exact scale value with square q: a Fraction when possible else Scale."""
    r = _sqrt_if_square(q)
    return r if r is not None else Scale(q)


def scale_square(v):
    if isinstance(v, Scale):
        return v.sq
    v = Fraction(v)
    if v < 0:
        raise ValueError("scales are nonnegative")
    return v * v


def scale_leq(a, b):
    return scale_square(a) <= scale_square(b)


def scale_eq(a, b):
    return scale_square(a) == scale_square(b)


def scale_key(v):
    return scale_square(v)


def scale_mul(v, c):
    c = Fraction(c)
    if isinstance(v, Scale):
        return scale_of_square(v.sq * c * c)
    return Fraction(v) * c


def grade_key(grade):
    return tuple(scale_key(x) if isinstance(x, Scale) else x for x in grade)


def grade_leq_mixed(a, b):
    return all(scale_square(x) <= scale_square(y) if isinstance(x, Scale) or isinstance(y, Scale)
               else x <= y for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# Point clouds and metrics
# ---------------------------------------------------------------------------

class PointCloud:
    """Finite list of points with rational coordinates; a multiset (sampling
    keeps duplicates; filtration builders deduplicate)."""

    def __init__(self, points):
        self.points = [tuple(Fraction(x) for x in pt) for pt in points]
        dims = {len(pt) for pt in self.points}
        if len(dims) > 1:
            raise FiltrationError("points of mixed dimension")
        self.dim = dims.pop() if dims else 0

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def to_csv(self):
        return "".join(",".join(format_rational(x) for x in pt) + "\n"
                       for pt in self.points)


def parse_points_csv(text):
    pts = []
    for ln in text.splitlines():
        ln = ln.strip()
        if not ln or ln.startswith("#"):
            continue
        pts.append([parse_rational(tok) for tok in ln.split(",")])
    return PointCloud(pts)


def parse_values_csv(text, n=None):
    rows = []
    for ln in text.splitlines():
        ln = ln.strip()
        if not ln or ln.startswith("#"):
            continue
        row = tuple(parse_rational(tok) for tok in ln.split(","))
        if n is not None and len(row) != n:
            raise FiltrationError(f"expected {n} columns, got {len(row)}")
        if rows and len(row) != len(rows[0]):
            raise FiltrationError("ragged function value rows")
        rows.append(row)
    return rows


METRICS = (1, 2, "inf")


def dist_squared_l2(x, y):
    return sum((a - b) ** 2 for a, b in zip(x, y))


def distance(x, y, p):
    """Exact distance: Fraction for p in {1, inf}; Fraction-or-Scale for p=2."""
    if p == 1:
        return sum(abs(a - b) for a, b in zip(x, y))
    if p == "inf":
        return max((abs(a - b) for a, b in zip(x, y)), default=Fraction(0))
    if p == 2:
        return scale_of_square(dist_squared_l2(x, y))
    raise FiltrationError(f"unsupported metric p={p}")


# ---------------------------------------------------------------------------
# Smallest enclosing balls
# ---------------------------------------------------------------------------

def _circumsphere_sq(points):
    """Center and squared radius of the smallest sphere through all of
    `points` with center in their affine hull; rational throughout, None if
    the points are affinely dependent."""
    base = points[0]
    u = [[x - b for x, b in zip(pt, base)] for pt in points[1:]]
    if not u:
        return base, Fraction(0)
    k = len(u)
    gram = [[sum(ui * vi for ui, vi in zip(u[i], u[j])) for j in range(k)]
            for i in range(k)]
    rhs = [Fraction(sum(x * x for x in u[i]), 2) for i in range(k)]
    if _mat_rank(QQ, gram) < k:
        return None
    lam = _mat_solve(QQ, gram, rhs)
    if lam is None:
        return None
    center = [b + sum(lam[i] * u[i][d] for i in range(k))
              for d, b in enumerate(base)]
    rsq = dist_squared_l2(center, points[0])
    return center, rsq


def min_enclosing_ball_sq_l2(points):
    """Squared radius of the L2 smallest enclosing ball, exactly.

    Welzl-style search over support sets in exact rational arithmetic; at
    desk scale the support sets are enumerated directly.
    """
    pts = [tuple(Fraction(x) for x in p) for p in points]
    pts = list(dict.fromkeys(pts))
    if not pts:
        raise FiltrationError("enclosing ball of nothing")
    if len(pts) == 1:
        return Fraction(0)
    m = len(pts[0])
    best = None
    for size in range(2, min(len(pts), m + 1) + 1):
        for support in itertools.combinations(pts, size):
            got = _circumsphere_sq(list(support))
            if got is None:
                continue
            center, rsq = got
            if all(dist_squared_l2(center, q) <= rsq for q in pts):
                if best is None or rsq < best:
                    best = rsq
    if best is None:
        raise AssertionError("no enclosing ball found; degenerate input")
    return best


def min_enclosing_radius(points, p):
    """Smallest enclosing ball radius for p in {2, 'inf'} (exact)."""
    pts = list(points)
    if p == "inf":
        m = len(pts[0])
        return max((max(q[d] for q in pts) - min(q[d] for q in pts)) / 2
                   for d in range(m)) if pts else Fraction(0)
    if p == 2:
        return scale_of_square(min_enclosing_ball_sq_l2(pts))
    raise FiltrationError(f"Cech is unsupported for p={p}")


# ---------------------------------------------------------------------------
# Bifiltered complexes
# ---------------------------------------------------------------------------

class BifilteredComplex:
    """One-critical multifiltered simplicial complex: each simplex appears at
    a single minimal grade, faces no later than cofaces."""

    def __init__(self, nparams, simplices):
        self.nparams = int(nparams)
        self.simplices = []
        index = {}
        for verts, grade in simplices:
            verts = tuple(sorted(verts))
            if verts in index:
                raise FiltrationError(f"duplicate simplex {verts}")
            if len(grade) != self.nparams:
                raise FiltrationError("grade length mismatch")
            index[verts] = grade
            self.simplices.append((verts, tuple(grade)))
        for verts, grade in self.simplices:
            if len(verts) > 1:
                for face in itertools.combinations(verts, len(verts) - 1):
                    if face not in index:
                        raise FiltrationError(f"missing face {face} of {verts}")
                    if not grade_leq_mixed(index[face], grade):
                        raise FiltrationError(f"face {face} appears after {verts}")
        self.simplices.sort(key=lambda s: (len(s[0]), grade_key(s[1]), s[0]))

    def grades_rational(self):
        """All grades as Fractions; raises if any coordinate is irrational."""
        out = []
        for verts, grade in self.simplices:
            conv = []
            for x in grade:
                if isinstance(x, Scale):
                    raise FiltrationError(
                        f"irrational grade coordinate {x!r} on {verts}; "
                        "downstream algebra requires rational grades")
                conv.append(Fraction(x))
            out.append((verts, tuple(conv)))
        return out

    def to_text(self):
        lines = []
        for verts, grade in self.simplices:
            gtxt = " ".join(repr(x) if isinstance(x, Scale) else format_rational(x)
                            for x in grade)
            lines.append(",".join(str(v) for v in verts) + " : " + gtxt)
        return "\n".join(lines) + ("\n" if lines else "")


def parse_complex(text):
    simplices = []
    nparams = None
    for ln in text.splitlines():
        ln = ln.split("#", 1)[0].strip()
        if not ln:
            continue
        head, _, tail = ln.partition(":")
        verts = tuple(int(v) for v in head.strip().split(","))
        toks = tail.split()
        grade = []
        for tok in toks:
            if tok.startswith("sqrt(") and tok.endswith(")"):
                grade.append(scale_of_square(parse_rational(tok[5:-1])))
            else:
                grade.append(parse_rational(tok))
        if nparams is None:
            nparams = len(grade)
        simplices.append((verts, tuple(grade)))
    return BifilteredComplex(nparams if nparams is not None else 1, simplices)


def _dedupe(cloud, values):
    seen = {}
    for pt, val in zip(cloud.points, values):
        if pt in seen:
            if seen[pt] != val:
                raise FiltrationError(f"duplicate point {pt} with conflicting values")
        else:
            seen[pt] = val
    pts = list(seen)
    return pts, [seen[pt] for pt in pts]


def _function_grade(values, idx):
    n = len(values[0])
    return tuple(max(values[v][k] for v in idx) for k in range(n))


def rips_bifiltration(cloud, p, values, max_dim, scale_cap):
    """Sublevelset-Rips: a simplex appears at (componentwise max of the
    function over its vertices, half its diameter); clique completion up to
    max_dim, scale coordinate capped."""
    if len(values) != len(cloud):
        raise FiltrationError("function rows do not match points")
    if p not in METRICS:
        raise FiltrationError(f"unsupported metric p={p}")
    pts, vals = _dedupe(cloud, [tuple(Fraction(x) for x in v) for v in values])
    scale_cap = Fraction(scale_cap)
    if scale_cap < 0:
        raise FiltrationError("scale cap must be >= 0")
    cap_sq = scale_cap ** 2
    nv = len(pts)
    half = {}
    for i in range(nv):
        for j in range(i + 1, nv):
            d = distance(pts[i], pts[j], p)
            s = scale_mul(d, Fraction(1, 2))
            if scale_square(s) <= cap_sq:
                half[(i, j)] = s
    simplices = []
    nfun = len(vals[0]) if vals else 0
    for i in range(nv):
        simplices.append(((i,), vals[i] + (Fraction(0),)))
    frontier = [(i,) for i in range(nv)]
    for _ in range(max_dim):
        nxt = []
        for verts in frontier:
            for w in range(verts[-1] + 1, nv):
                if all((v, w) in half for v in verts):
                    new = verts + (w,)
                    pairs = [half[(a, b)] for a, b in itertools.combinations(new, 2)]
                    scale = max(pairs, key=scale_key)
                    simplices.append((new, _function_grade(vals, new) + (scale,)))
                    nxt.append(new)
        frontier = nxt
    return BifilteredComplex((nfun or 0) + 1, simplices)


def cech_bifiltration(cloud, p, values, max_dim, scale_cap):
    """Sublevelset-Cech: scale coordinate is the smallest enclosing ball
    radius of the vertex set (ambient R^m).  p=2 exact via rational squared
    radii; p=inf exact via half extents; p=1 unsupported."""
    if p == 1:
        raise FiltrationError("Cech with the L1 metric is not supported")
    if p not in METRICS:
        raise FiltrationError(f"unsupported metric p={p}")
    if len(values) != len(cloud):
        raise FiltrationError("function rows do not match points")
    pts, vals = _dedupe(cloud, [tuple(Fraction(x) for x in v) for v in values])
    scale_cap = Fraction(scale_cap)
    if scale_cap < 0:
        raise FiltrationError("scale cap must be >= 0")
    cap_sq = scale_cap ** 2
    nv = len(pts)
    nfun = len(vals[0]) if vals else 0
    simplices = []
    alive = []
    for i in range(nv):
        simplices.append(((i,), vals[i] + (Fraction(0),)))
        alive.append((i,))
    for _ in range(max_dim):
        nxt = []
        seen = set()
        for verts in alive:
            for w in range(nv):
                if w in verts:
                    continue
                new = tuple(sorted(verts + (w,)))
                if new in seen:
                    continue
                seen.add(new)
                radius = min_enclosing_radius([pts[v] for v in new], p)
                if scale_square(radius) <= cap_sq:
                    simplices.append((new, _function_grade(vals, new) + (radius,)))
                    nxt.append(new)
        alive = nxt
    return BifilteredComplex(nfun + 1, simplices)


def fixed_scale_slice(complex_, delta):
    """Keep simplices with scale <= delta and drop the scale axis."""
    delta = Fraction(delta)
    if delta < 0:
        raise FiltrationError("delta must be >= 0")
    kept = []
    for verts, grade in complex_.simplices:
        if scale_leq(grade[-1], delta):
            kept.append((verts, grade[:-1]))
    return BifilteredComplex(complex_.nparams - 1, kept)


# ---------------------------------------------------------------------------
# Function-aware metrics
# ---------------------------------------------------------------------------

def sup_function_distance(f1, f2):
    if len(f1) != len(f2):
        raise FiltrationError("misaligned function values")
    worst = Fraction(0)
    for a, b in zip(f1, f2):
        for x, y in zip(a, b):
            worst = max(worst, abs(Fraction(x) - Fraction(y)))
    return worst


def function_aware_hausdorff(x1, f1, x2, f2, p):
    """Hausdorff distance where a candidate pairing additionally pays the
    sup-norm gap of the function values.  Exact; the optimum is a Fraction
    for p in {1, inf} and may be a Scale for p=2."""
    if not len(x1) or not len(x2):
        raise FiltrationError("empty point set")

    def fgap(a, b):
        return max((abs(u - v) for u, v in zip(a, b)), default=Fraction(0))

    def directed(xa, fa, xb, fb):
        worst = Fraction(0)
        for pt, val in zip(xa.points, fa):
            best = None
            for qt, wal in zip(xb.points, fb):
                c = fgap(val, wal)
                d = distance(pt, qt, p)
                cand = d if scale_square(d) >= scale_square(c) else c
                if best is None or scale_square(cand) < scale_square(best):
                    best = cand
            if scale_square(best) > scale_square(worst):
                worst = best
        return worst

    a = directed(x1, f1, x2, f2)
    b = directed(x2, f2, x1, f1)
    return a if scale_square(a) >= scale_square(b) else b


def gromov_function_distance(x1, d1, f1, x2, d2, f2, max_points=5):
    """Exact min over correspondences of max(half metric distortion, function
    gap).  The optimum is attained at a candidate threshold (a half
    distortion or a function gap); feasibility at a threshold is decided by
    backtracking over compatible pair sets, which agrees with full
    enumeration on oracle-scale inputs."""
    n1, n2 = len(x1), len(x2)
    if n1 > max_points or n2 > max_points:
        raise FiltrationError(f"size guard: > {max_points} points")
    if not n1 or not n2:
        raise FiltrationError("empty point set")
    try:
        d1 = [[Fraction(x) for x in row] for row in d1]
        d2 = [[Fraction(x) for x in row] for row in d2]
    except TypeError as exc:
        raise FiltrationError("distance matrices must be rational") from exc

    def fgap(i, j):
        return max((abs(u - v) for u, v in zip(f1[i], f2[j])), default=Fraction(0))

    def half_dist(i, j, i2, j2):
        return abs(d1[i][i2] - d2[j][j2]) / 2

    cands = {Fraction(0)}
    for i in range(n1):
        for j in range(n2):
            cands.add(fgap(i, j))
    for i in range(n1):
        for i2 in range(n1):
            for j in range(n2):
                for j2 in range(n2):
                    cands.add(half_dist(i, j, i2, j2))

    def feasible(eps):
        ok_pair = [[fgap(i, j) <= eps for j in range(n2)] for i in range(n1)]
        compat = {}

        def compatible(a, b):
            if (a, b) not in compat:
                compat[(a, b)] = half_dist(a[0], a[1], b[0], b[1]) <= eps
            return compat[(a, b)]

        def extend(chosen, todo_left, todo_right):
            if not todo_left and not todo_right:
                return True
            if todo_left:
                i = todo_left[0]
                opts = [(i, j) for j in range(n2) if ok_pair[i][j]]
            else:
                j = todo_right[0]
                opts = [(i, j) for i in range(n1) if ok_pair[i][j]]
            for pair in opts:
                if all(compatible(pair, c) and compatible(c, pair) for c in chosen):
                    nl = [v for v in todo_left if v != pair[0]]
                    nr = [v for v in todo_right if v != pair[1]]
                    if extend(chosen + [pair], nl, nr):
                        return True
            return False

        return extend([], list(range(n1)), list(range(n2)))

    finite = sorted(cands)
    lo, hi = 0, len(finite) - 1
    best = None
    while lo <= hi:
        mid = (lo + hi) // 2
        if feasible(finite[mid]):
            best = finite[mid]
            hi = mid - 1
        else:
            lo = mid + 1
    if best is None:
        raise AssertionError("full correspondence is always feasible at max threshold")
    return best


def pairwise_distance_matrix(cloud, p):
    pts = cloud.points
    return [[distance(a, b, p) for b in pts] for a in pts]


# ---------------------------------------------------------------------------
# Sampling and density estimation
# ---------------------------------------------------------------------------

COORD_DENOM = 1 << 20
KERNEL_DENOM = 1 << 30


class DensitySpec:
    """Mixture of isotropic Gaussians: components (weight, center, sigma)."""

    def __init__(self, components):
        self.components = []
        total = Fraction(0)
        dim = None
        for weight, center, sigma in components:
            weight = Fraction(weight)
            sigma = Fraction(sigma)
            center = tuple(Fraction(c) for c in center)
            if weight <= 0 or sigma <= 0:
                raise FiltrationError("weights and sigmas must be positive")
            if dim is None:
                dim = len(center)
            elif len(center) != dim:
                raise FiltrationError("mixed center dimensions")
            total += weight
            self.components.append((weight, center, sigma))
        if total != 1:
            raise FiltrationError(f"weights sum to {total}, not 1")
        self.dim = dim

    @classmethod
    def parse(cls, text):
        """'w,c1,...,cm,sigma;w,c1,...,cm,sigma' with rational entries."""
        comps = []
        for chunk in text.split(";"):
            toks = [parse_rational(t) for t in chunk.split(",")]
            if len(toks) < 3:
                raise FiltrationError(f"bad density component: {chunk!r}")
            comps.append((toks[0], toks[1:-1], toks[-1]))
        return cls(comps)

    def to_spec(self):
        return ";".join(",".join(format_rational(x)
                                 for x in (w, *c, s)) for w, c, s in self.components)

    def pdf(self, point):
        """Mixture density at a rational point, rounded to 2**-30."""
        acc = 0.0
        for w, center, sigma in self.components:
            q = sum((Fraction(x) - c) ** 2 for x, c in zip(point, center))
            s = float(sigma)
            norm = (2 * math.pi) ** (-self.dim / 2) * s ** (-self.dim)
            acc += float(w) * norm * math.exp(-float(q) / (2 * s * s))
        return Fraction(round(acc * KERNEL_DENOM), KERNEL_DENOM)


def sample_density(spec, count, seed):
    """Deterministic i.i.d.-style sample via the Philox counter-based
    generator; coordinates rounded to denominator 2**20."""
    if count < 0:
        raise FiltrationError("count must be >= 0")
    rng = np.random.Generator(np.random.Philox(key=int(seed)))
    cum = []
    acc = Fraction(0)
    for w, _, _ in spec.components:
        acc += w
        cum.append(float(acc))
    pts = []
    for _ in range(count):
        u = rng.random()
        idx = next(i for i, c in enumerate(cum) if u < c or i == len(cum) - 1)
        _, center, sigma = spec.components[idx]
        raw = rng.normal(size=spec.dim)
        pt = [Fraction(round((float(c) + float(sigma) * z) * COORD_DENOM), COORD_DENOM)
              for c, z in zip(center, raw)]
        pts.append(pt)
    return PointCloud(pts)


class KdeSpec:
    def __init__(self, kernel, bandwidth):
        if kernel not in ("gaussian", "epanechnikov"):
            raise FiltrationError(f"unknown kernel {kernel!r}")
        self.kernel = kernel
        self.bandwidth = Fraction(bandwidth)
        if self.bandwidth <= 0:
            raise FiltrationError("bandwidth must be > 0")


def _unit_ball_volume(m):
    return math.pi ** (m / 2) / math.gamma(m / 2 + 1)


def kde_evaluate(sample, spec, at):
    """Kernel density estimate of the sample evaluated at each point of
    `at`.  The squared argument is computed exactly; the kernel value is a
    libm double rounded to 2**-30 and recorded as approximate."""
    if not len(sample):
        raise FiltrationError("empty sample")
    z = len(sample)
    m = sample.dim
    h = spec.bandwidth
    hf = float(h)
    if spec.kernel == "gaussian":
        norm = (2 * math.pi) ** (-m / 2)

        def kern(q):
            return norm * math.exp(-float(q) / 2)
    else:
        c = (m + 2) / (2 * _unit_ball_volume(m))

        def kern(q):
            qf = float(q)
            return c * (1 - qf) if qf <= 1 else 0.0

    out = []
    denom = z * hf ** m
    for x in at:
        acc = 0.0
        for s in sample:
            q = sum(((a - b) / h) ** 2 for a, b in zip(x, s))
            acc += kern(q)
        out.append(Fraction(round(acc / denom * KERNEL_DENOM), KERNEL_DENOM))
    return out
