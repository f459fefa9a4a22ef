"""Persistent homology of bifiltered complexes.

Three computation styles share the exact linear algebra kernel:

* 1-parameter barcodes by standard column reduction, cross-checked elsewhere
  against the rank multiplicity formula;
* grid modules (pointwise homology dimensions plus explicit transition
  matrices between adjacent grid points) for any parameter count;
* presentations of homology for 1 and 2 parameters, by sweeping the grid in
  a linear extension and collecting a kernel basis of the boundary map, then
  expressing the next boundary's columns in that basis and minimizing.  The
  freeness of two-parameter kernels is an implementation hypothesis; every
  extraction is followed by a Hilbert check against independent per-point
  homology dimensions.
"""

import itertools
from fractions import Fraction

from .exactnum import INF, ext, format_rational, parse_field, parse_rational
from .linalg import ColumnSpan, mat_mul, nullspace, rank as mat_rank
from .onedim import PersistenceDiagram
from .presentation import Presentation, grade_leq


class HomologyError(ValueError):
    pass


class GradedChainComplex:
    """Per-degree simplex bases with rational grades and boundary matrices."""

    def __init__(self, field, complex_):
        self.field = field
        rational = complex_.grades_rational()
        self.nparams = complex_.nparams
        by_deg = {}
        for verts, grade in rational:
            by_deg.setdefault(len(verts) - 1, []).append((verts, grade))
        self.max_deg = max(by_deg, default=-1)
        self.bases = [sorted(by_deg.get(d, []), key=lambda s: (s[1], s[0]))
                      for d in range(self.max_deg + 1)]
        self.boundaries = []
        for d in range(self.max_deg + 1):
            if d == 0:
                self.boundaries.append(None)
                continue
            rows = {verts: i for i, (verts, _) in enumerate(self.bases[d - 1])}
            mat = [[field.zero] * len(self.bases[d]) for _ in rows] or []
            for j, (verts, _) in enumerate(self.bases[d]):
                sign = field.one
                for k in range(len(verts)):
                    face = verts[:k] + verts[k + 1:]
                    mat[rows[face]][j] = sign
                    sign = field.neg(sign)
            self.boundaries.append(mat)
        self._check_dd()

    def _check_dd(self):
        f = self.field
        for d in range(2, self.max_deg + 1):
            prod = mat_mul(f, self.boundaries[d - 1], self.boundaries[d])
            if any(x != f.zero for row in prod for x in row):
                raise HomologyError("boundary of boundary is nonzero")

    def simplices(self, d):
        return self.bases[d] if 0 <= d <= self.max_deg else []

    def boundary(self, d):
        """Boundary matrix from degree d to d-1 (rows: (d-1)-simplices)."""
        if d <= 0 or d > self.max_deg:
            rows = len(self.simplices(d - 1))
            return [[self.field.zero] * 0 for _ in range(rows)]
        return self.boundaries[d]

    def _active(self, d, z):
        return [j for j, (_, g) in enumerate(self.simplices(d)) if grade_leq(g, z)]

    def homology_dim_at(self, d, z):
        """dim H_d at grade z by independent per-point elimination."""
        f = self.field
        act_d = self._active(d, z)
        if not act_d:
            return 0
        bd = self.boundary(d)
        sub = [[bd[i][j] for j in act_d] for i in range(len(bd))] if bd else []
        rank_d = mat_rank(f, sub) if sub else 0
        act_up = self._active(d + 1, z)
        bu = self.boundary(d + 1)
        rank_up = 0
        if act_up and bu:
            subu = [[bu[i][j] for j in act_up] for i in range(len(bu))]
            rank_up = mat_rank(f, subu)
        return len(act_d) - rank_d - rank_up

    def critical_axes(self):
        grades = [g for d in range(self.max_deg + 1) for _, g in self.bases[d]]
        return [sorted({g[i] for g in grades}) for i in range(self.nparams)]


def chain_complex_of(complex_, field):
    return GradedChainComplex(field, complex_)


# ---------------------------------------------------------------------------
# 1-parameter barcodes
# ---------------------------------------------------------------------------

def barcode_1d(complex_, degree, field):
    """Standard persistence column reduction; unpaired creators die at +inf."""
    rational = complex_.grades_rational()
    if complex_.nparams != 1:
        raise HomologyError("barcode requires a 1-parameter complex")
    order = sorted(range(len(rational)),
                   key=lambda i: (rational[i][1], len(rational[i][0]), rational[i][0]))
    pos = {rational[i][0]: k for k, i in enumerate(order)}
    f = field
    columns = []
    for k, i in enumerate(order):
        verts, _ = rational[i]
        col = {}
        if len(verts) > 1:
            sign = f.one
            for t in range(len(verts)):
                face = verts[:t] + verts[t + 1:]
                col[pos[face]] = sign
                sign = f.neg(sign)
        columns.append(col)

    low_of = {}
    pairs = {}
    for k in range(len(columns)):
        col = columns[k]
        while col:
            low = max(col)
            if low not in low_of:
                break
            other = columns[low_of[low]]
            factor = f.div(col[low], other[low])
            for r, c in other.items():
                v = f.sub(col.get(r, f.zero), f.mul(factor, c))
                if v == f.zero:
                    col.pop(r, None)
                else:
                    col[r] = v
        if col:
            low = max(col)
            low_of[low] = k
            pairs[low] = k

    pts = []
    for k, i in enumerate(order):
        verts, grade = rational[i]
        if len(verts) - 1 != degree:
            continue
        if columns[k]:
            continue            # not a cycle: it kills something lower
        if k in pairs:
            killer = order[pairs[k]]
            death = rational[killer][1][0]
            if death > grade[0]:
                pts.append((ext(grade[0]), ext(death), 1))
        else:
            pts.append((ext(grade[0]), INF, 1))
    return PersistenceDiagram(pts)


# ---------------------------------------------------------------------------
# Grid modules
# ---------------------------------------------------------------------------

class GridModule:
    """A persistence module restricted to a finite grid: per-point dimensions
    and transition matrices between adjacent grid points.  Squares commute."""

    def __init__(self, field, axes, dims, trans, check=True):
        self.field = field
        self.axes = [list(a) for a in axes]
        self.dims = dict(dims)
        self.trans = dict(trans)
        for (idx, axis), m in self.trans.items():
            nxt = tuple(k + 1 if a == axis else k for a, k in enumerate(idx))
            if len(m) != self.dims[nxt] or \
                    any(len(row) != self.dims[idx] for row in m):
                raise HomologyError(f"transition at {idx} axis {axis} has the "
                                    f"wrong shape")
        if check:
            self.check_squares()

    @property
    def nparams(self):
        return len(self.axes)

    def shape(self):
        return tuple(len(a) for a in self.axes)

    def indices(self):
        return itertools.product(*(range(len(a)) for a in self.axes))

    def value(self, idx):
        return tuple(self.axes[i][k] for i, k in enumerate(idx))

    def step(self, idx, axis):
        return self.trans[(idx, axis)]

    def check_squares(self):
        f = self.field
        shape = self.shape()
        for idx in self.indices():
            for a1 in range(len(shape)):
                for a2 in range(a1 + 1, len(shape)):
                    if idx[a1] + 1 >= shape[a1] or idx[a2] + 1 >= shape[a2]:
                        continue
                    idx_a = tuple(k + 1 if i == a1 else k for i, k in enumerate(idx))
                    idx_b = tuple(k + 1 if i == a2 else k for i, k in enumerate(idx))
                    p1 = mat_mul(f, self.step(idx_a, a2), self.step(idx, a1))
                    p2 = mat_mul(f, self.step(idx_b, a1), self.step(idx, a2))
                    if p1 != p2:
                        raise HomologyError(f"grid square at {idx} does not commute")

    def matrix_between(self, i1, i2, _memo=None):
        """Composite transition matrix from grid index i1 to i2 (i1 <= i2)."""
        f = self.field
        if _memo is None:
            _memo = self._memo = getattr(self, "_memo", {})
        key = (i1, i2)
        if key in _memo:
            return _memo[key]
        if i1 == i2:
            from .linalg import identity
            out = identity(f, self.dims[i1])
        else:
            axis = next(a for a in range(self.nparams) if i1[a] < i2[a])
            mid = tuple(k + 1 if a == axis else k for a, k in enumerate(i1))
            out = mat_mul(f, self.matrix_between(mid, i2, _memo), self.step(i1, axis))
        _memo[key] = out
        return out

    def rank_between(self, i1, i2):
        if any(a > b for a, b in zip(i1, i2)):
            raise HomologyError("rank requires i1 <= i2")
        memo = self._rank_memo = getattr(self, "_rank_memo", {})
        key = (i1, i2)
        if key not in memo:
            memo[key] = mat_rank(self.field, self.matrix_between(i1, i2))
        return memo[key]

    def to_text(self):
        lines = ["GRIDMODULE", f"field {self.field.spec}", f"axes {self.nparams}"]
        for i, ax in enumerate(self.axes):
            lines.append(f"axis {i} : " + " ".join(format_rational(v) for v in ax))
        for idx in self.indices():
            lines.append("dim " + " ".join(str(k) for k in idx) +
                         f" = {self.dims[idx]}")
        for idx in self.indices():
            for a in range(self.nparams):
                if idx[a] + 1 >= len(self.axes[a]):
                    continue
                m = self.step(idx, a)
                body = " ; ".join(" ".join(self._fmt(x) for x in row) for row in m)
                lines.append("trans " + " ".join(str(k) for k in idx) +
                             f" axis {a} : {body}")
        lines.append("END")
        return "\n".join(lines) + "\n"

    def _fmt(self, x):
        return format_rational(x) if not isinstance(x, int) else str(x)


def parse_grid_module(text):
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or lines[0] != "GRIDMODULE" or lines[-1] != "END":
        raise HomologyError("bad grid module text")
    field = None
    axes = {}
    dims = {}
    trans_rows = []
    nparams = None
    for ln in lines[1:-1]:
        parts = ln.split()
        if parts[0] == "field":
            field = parse_field(parts[1:])
        elif parts[0] == "axes":
            nparams = int(parts[1])
        elif parts[0] == "axis":
            axes[int(parts[1])] = [parse_rational(t) for t in parts[3:]]
        elif parts[0] == "dim":
            k = ln.index("=")
            idx = tuple(int(t) for t in ln[3:k].split())
            dims[idx] = int(ln[k + 1:])
        elif parts[0] == "trans":
            trans_rows.append(ln)
        else:
            raise HomologyError(f"unknown line {ln!r}")
    if field is None or nparams is None:
        raise HomologyError("missing field or axes")
    axes_list = [axes[i] for i in range(nparams)]
    trans = {}
    for ln in trans_rows:
        head, _, body = ln.partition(":")
        toks = head.split()
        idx = tuple(int(t) for t in toks[1:1 + nparams])
        axis = int(toks[2 + nparams])
        rows = []
        body = body.strip()
        if body:
            for chunk in body.split(";"):
                rows.append([field.of(parse_rational(t)) for t in chunk.split()])
        nxt = tuple(k + 1 if a == axis else k for a, k in enumerate(idx))
        want_rows, want_cols = dims[nxt], dims[idx]
        if not rows:
            rows = [[field.zero] * want_cols for _ in range(want_rows)]
        trans[(idx, axis)] = rows
    return GridModule(field, axes_list, dims, trans)


def grid_module_of_presentation(p, axes):
    if len(axes) != p.n:
        raise HomologyError("axes count must equal the parameter count")
    dims = {}
    trans = {}
    shape = tuple(len(a) for a in axes)
    for idx in itertools.product(*(range(s) for s in shape)):
        z = tuple(axes[i][k] for i, k in enumerate(idx))
        dims[idx] = p.point_dim(z)
    for idx in itertools.product(*(range(s) for s in shape)):
        z = tuple(axes[i][k] for i, k in enumerate(idx))
        for a in range(p.n):
            if idx[a] + 1 >= shape[a]:
                continue
            nxt = tuple(k + 1 if i == a else k for i, k in enumerate(idx))
            z2 = tuple(axes[i][k] for i, k in enumerate(nxt))
            trans[(idx, a)] = p.transition_matrix(z, z2)
    return GridModule(p.field, axes, dims, trans)


class _HomologyBasisTracker:
    """Per-grid-point homology bases of a chain complex with expression
    machinery for transitions.  Representative cycles live in global chain
    coordinates of their degree."""

    def __init__(self, chain, degree):
        self.chain = chain
        self.degree = degree
        self.f = chain.field
        self.nd = len(chain.simplices(degree))

    def _cycles_at(self, z):
        f = self.f
        act = self.chain._active(self.degree, z)
        if not act:
            return []
        bd = self.chain.boundary(self.degree)
        if bd and len(bd) > 0:
            sub = [[bd[i][j] for j in act] for i in range(len(bd))]
            core = nullspace(f, sub)
        else:
            core = [[f.one if t == s else f.zero for t in range(len(act))]
                    for s in range(len(act))]
        out = []
        for v in core:
            vec = [f.zero] * self.nd
            for t, j in enumerate(act):
                vec[j] = v[t]
            out.append(vec)
        return out

    def _boundaries_at(self, z):
        f = self.f
        act_up = self.chain._active(self.degree + 1, z)
        bu = self.chain.boundary(self.degree + 1)
        cols = []
        for j in act_up:
            cols.append([bu[i][j] for i in range(self.nd)] if bu else
                        [f.zero] * self.nd)
        return cols

    def basis_at(self, z):
        """(representative cycle vectors, ColumnSpan loaded with boundaries
        then representatives).  Only independent vectors become span members,
        so member positions line up with [boundaries..., reps...]."""
        span = ColumnSpan(self.f, self.nd)
        n_bound = 0
        for b in self._boundaries_at(z):
            if not span.contains(b):
                span.insert(b)
                n_bound += 1
        reps = []
        for v in self._cycles_at(z):
            if not span.contains(v):
                span.insert(v)
                reps.append(v)
        return reps, span, n_bound

    def express(self, vec, span, n_bound, n_reps):
        coords = span.coords(vec)
        if coords is None:
            raise HomologyError("cycle escapes the target homology space")
        return coords[n_bound:n_bound + n_reps]


def grid_module_of_chain(complex_, degree, axes, field):
    chain = complex_ if isinstance(complex_, GradedChainComplex) \
        else chain_complex_of(complex_, field)
    if len(axes) != chain.nparams:
        raise HomologyError("axes count must equal the parameter count")
    tracker = _HomologyBasisTracker(chain, degree)
    shape = tuple(len(a) for a in axes)
    cache = {}
    for idx in itertools.product(*(range(s) for s in shape)):
        z = tuple(axes[i][k] for i, k in enumerate(idx))
        cache[idx] = tracker.basis_at(z)
    dims = {idx: len(cache[idx][0]) for idx in cache}
    trans = {}
    f = chain.field
    for idx in cache:
        reps, _, _ = cache[idx]
        for a in range(chain.nparams):
            if idx[a] + 1 >= shape[a]:
                continue
            nxt = tuple(k + 1 if i == a else k for i, k in enumerate(idx))
            reps2, span2, nb2 = cache[nxt]
            cols = [tracker.express(v, span2, nb2, len(reps2)) for v in reps]
            trans[(idx, a)] = [[cols[c][r] for c in range(len(reps))]
                               for r in range(len(reps2))]
    return GridModule(f, axes, dims, trans)


def grid_module_of(source, axes, degree=None, field=None):
    """Grid module of a presentation or of a (bifiltered complex, degree)."""
    if isinstance(source, Presentation):
        return grid_module_of_presentation(source, axes)
    if degree is None:
        raise HomologyError("degree required for a chain source")
    return grid_module_of_chain(source, degree, axes, field)


def refinement_check(source, axes, degree=None, field=None):
    """Diagnostic: doubling the grid density must not change dimensions."""
    fine = []
    for ax in axes:
        vals = list(ax)
        mids = [(a + b) / 2 for a, b in zip(vals, vals[1:])]
        fine.append(sorted(set(vals) | set(mids)))
    coarse = grid_module_of(source, axes, degree=degree, field=field)
    refined = grid_module_of(source, fine, degree=degree, field=field)
    for idx in coarse.indices():
        v = coarse.value(idx)
        jdx = tuple(fine[i].index(x) for i, x in enumerate(v))
        if coarse.dims[idx] != refined.dims[jdx]:
            return False
    return True


# ---------------------------------------------------------------------------
# Presentations of homology (n = 1, 2)
# ---------------------------------------------------------------------------

def present_homology(complex_, degree, field, check_hilbert=True):
    """Presentation of H_degree of a one-critical bifiltered complex with one
    or two parameters: kernel basis collected by a lexicographic grid sweep,
    then boundary columns expressed in that basis, then minimization."""
    chain = chain_complex_of(complex_, field)
    if chain.nparams not in (1, 2):
        raise HomologyError("presentation extraction supports 1 or 2 parameters")
    axes = chain.critical_axes()
    if any(not ax for ax in axes):
        return Presentation(chain.nparams, field, [], [])
    tracker = _HomologyBasisTracker(chain, degree)
    f = field

    gens = []           # (vector, grade)
    span_dim = tracker.nd
    gen_span_cache = {}

    for z in itertools.product(*axes):
        active = [i for i, (_, g) in enumerate(gens) if grade_leq(g, z)]
        span = ColumnSpan(f, span_dim)
        for i in active:
            span.insert(gens[i][0])
        for v in tracker._cycles_at(z):
            if span.insert(v):
                gens.append((v, z))
                active.append(len(gens) - 1)

    def gen_span_at(z):
        key = z
        if key not in gen_span_cache:
            span = ColumnSpan(f, span_dim)
            idxs = []
            for i, (v, g) in enumerate(gens):
                if grade_leq(g, z):
                    span.insert(v)
                    idxs.append(i)
            gen_span_cache[key] = (span, idxs)
        return gen_span_cache[key]

    rels = []
    bu = chain.boundary(degree + 1)
    for j, (verts, g) in enumerate(chain.simplices(degree + 1)):
        vec = [bu[i][j] for i in range(tracker.nd)] if bu else [f.zero] * tracker.nd
        span, idxs = gen_span_at(g)
        coords = span.coords(vec)
        if coords is None:
            raise HomologyError("boundary escapes the kernel span; sweep incomplete")
        coeffs = [f.zero] * len(gens)
        for t, i in enumerate(idxs):
            coeffs[i] = coords[t]
        rels.append((f"b{j}", g, coeffs))

    pres = Presentation(chain.nparams, f,
                        [(f"k{i}", g) for i, (_, g) in enumerate(gens)],
                        rels).validate().minimize()

    if check_hilbert:
        for z in itertools.product(*axes):
            want = chain.homology_dim_at(degree, z)
            got = pres.point_dim(z)
            if want != got:
                raise HomologyError(
                    f"Hilbert check failed at {z}: presentation gives {got}, "
                    f"pointwise homology gives {want}")
    return pres


def image_grid_module(complex_, degree, delta1, delta2, axes, field):
    """Image of H_degree(slice delta1) -> H_degree(slice delta2) as a grid
    module over the function axes."""
    from .filtration import fixed_scale_slice
    delta1, delta2 = Fraction(delta1), Fraction(delta2)
    if delta1 > delta2:
        raise HomologyError("delta1 must be <= delta2")
    s1 = fixed_scale_slice(complex_, delta1)
    s2 = fixed_scale_slice(complex_, delta2)
    c1 = chain_complex_of(s1, field)
    c2 = chain_complex_of(s2, field)
    t1 = _HomologyBasisTracker(c1, degree)
    t2 = _HomologyBasisTracker(c2, degree)
    pos2 = {verts: i for i, (verts, _) in enumerate(c2.simplices(degree))}
    f = field

    def embed(vec1):
        out = [f.zero] * t2.nd
        for i, (verts, _) in enumerate(c1.simplices(degree)):
            if vec1[i] != f.zero:
                out[pos2[verts]] = vec1[i]
        return out

    shape = tuple(len(a) for a in axes)
    cache = {}
    for idx in itertools.product(*(range(s) for s in shape)):
        z = tuple(axes[i][k] for i, k in enumerate(idx))
        span = ColumnSpan(f, t2.nd)
        nb = 0
        for b in t2._boundaries_at(z):
            if not span.contains(b):
                span.insert(b)
                nb += 1
        reps = []
        for v in t1._cycles_at(z):
            emb = embed(v)
            if not span.contains(emb):
                span.insert(emb)
                reps.append(emb)
        cache[idx] = (reps, span, nb)
    dims = {idx: len(cache[idx][0]) for idx in cache}
    trans = {}
    for idx in cache:
        reps, _, _ = cache[idx]
        for a in range(len(axes)):
            if idx[a] + 1 >= shape[a]:
                continue
            nxt = tuple(k + 1 if i == a else k for i, k in enumerate(idx))
            reps2, span2, nb2 = cache[nxt]
            cols = [t2.express(v, span2, nb2, len(reps2)) for v in reps]
            trans[(idx, a)] = [[cols[c][r] for c in range(len(reps))]
                               for r in range(len(reps2))]
    return GridModule(f, axes, dims, trans)


# ---------------------------------------------------------------------------
# Rank-shift comparison
# ---------------------------------------------------------------------------

def resample(gm, new_axes):
    """Restrict/refine a grid module to new axes by flooring each value to
    the largest original axis value <= it; values below the axis minimum get
    the zero space.  Valid when the original axes contain all critical
    values and the module vanishes below them."""
    if len(new_axes) != gm.nparams:
        raise HomologyError("axis count mismatch")

    def floor_idx(axis_vals, v):
        lo = None
        for i, x in enumerate(axis_vals):
            if x <= v:
                lo = i
        return lo

    maps = [[floor_idx(gm.axes[a], v) for v in new_axes[a]]
            for a in range(gm.nparams)]
    f = gm.field
    dims = {}
    trans = {}
    shape = tuple(len(a) for a in new_axes)
    for idx in itertools.product(*(range(s) for s in shape)):
        src = tuple(maps[a][k] for a, k in enumerate(idx))
        dims[idx] = 0 if any(s is None for s in src) else gm.dims[src]
    for idx in itertools.product(*(range(s) for s in shape)):
        src = tuple(maps[a][k] for a, k in enumerate(idx))
        for a in range(gm.nparams):
            if idx[a] + 1 >= shape[a]:
                continue
            nxt = tuple(k + 1 if i == a else k for i, k in enumerate(idx))
            dst = tuple(maps[i][k] for i, k in enumerate(nxt))
            if any(s is None for s in src):
                trans[(idx, a)] = [[f.zero] * 0 for _ in range(dims[nxt])]
            else:
                trans[(idx, a)] = gm.matrix_between(src, dst)
    return GridModule(f, new_axes, dims, trans)


def rank_shift_distance(gm, gn):
    """Least grid-representable eps such that each module's (a-eps -> b+eps)
    ranks are dominated by the other's (a -> b) ranks, both ways round.

    A computable lower-bound proxy for the interleaving distance, never
    reported as it.  Shifted endpoints are snapped outward to grid values;
    pairs whose shifted endpoints leave the grid are clipped away entirely
    (an interleaving says nothing checkable about them on this grid, and
    keeping them clamped would break the lower-bound property)."""
    if gm.nparams != gn.nparams:
        raise HomologyError("incompatible axis dimensions")
    union_axes = [sorted(set(gm.axes[a]) | set(gn.axes[a]))
                  for a in range(gm.nparams)]
    rm = resample(gm, union_axes)
    rn = resample(gn, union_axes)
    npar = len(union_axes)
    shape = tuple(len(a) for a in union_axes)

    cands = {Fraction(0)}
    for ax in union_axes:
        for x in ax:
            for y in ax:
                if y > x:
                    cands.add(y - x)
    cands = sorted(cands)

    idx_pairs = []
    for i1 in itertools.product(*(range(s) for s in shape)):
        for i2 in itertools.product(*(range(i1[a], s) for a, s in enumerate(shape))):
            idx_pairs.append((i1, i2))

    def snap_down(a, v):
        ax = union_axes[a]
        lo = None
        for i, x in enumerate(ax):
            if x <= v:
                lo = i
        return lo

    def snap_up(a, v):
        ax = union_axes[a]
        for i in range(len(ax)):
            if ax[i] >= v:
                return i
        return None

    def feasible(eps):
        for i1, i2 in idx_pairs:
            lo = tuple(snap_down(a, union_axes[a][i1[a]] - eps) for a in range(npar))
            hi = tuple(snap_up(a, union_axes[a][i2[a]] + eps) for a in range(npar))
            if any(v is None for v in lo) or any(v is None for v in hi):
                continue
            if rm.rank_between(lo, hi) > rn.rank_between(i1, i2):
                return False
            if rn.rank_between(lo, hi) > rm.rank_between(i1, i2):
                return False
        return True

    lo_i, hi_i = 0, len(cands) - 1
    best = None
    while lo_i <= hi_i:
        mid = (lo_i + hi_i) // 2
        if feasible(cands[mid]):
            best = cands[mid]
            hi_i = mid - 1
        else:
            lo_i = mid + 1
    return ext(best) if best is not None else INF
