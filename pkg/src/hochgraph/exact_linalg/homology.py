"""Homology of complexes of finitely generated free Z-modules.

The homology at a module Q sitting in  P --d_in--> Q --d_out--> R  is
ker(d_out)/im(d_in).  Torsion is read off by rewriting d_in in a kernel
basis of d_out (obtained from the Smith form of d_out) and taking the
Smith form of the rewritten matrix; that rewrite simultaneously certifies
d_out @ d_in = 0.

complex_homology splits a chain complex into q-degree blocks and further
into connected components of the differentials' support before reducing;
the cube-style complexes built elsewhere in this package decompose into
many small blocks, which is what keeps exact arithmetic affordable.
"""

from .intmat import IntegerMatrix
from .snf import _smith_raw


class CompositionError(ValueError):
    """Two consecutive differentials do not compose to zero."""


class HomologySummary:
    """Free rank plus invariant-factor torsion of a f.g. abelian group."""

    __slots__ = ("free_rank", "torsion")

    def __init__(self, free_rank=0, torsion=()):
        self.free_rank = int(free_rank)
        self.torsion = tuple(int(t) for t in torsion)
        for t in self.torsion:
            if t <= 1:
                raise ValueError("torsion entries must exceed 1")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise ValueError("torsion list must be a divisibility chain")

    def is_trivial(self):
        return self.free_rank == 0 and not self.torsion

    def __eq__(self, other):
        if not isinstance(other, HomologySummary):
            return NotImplemented
        return self.free_rank == other.free_rank and self.torsion == other.torsion

    def __hash__(self):
        return hash((self.free_rank, self.torsion))

    def __repr__(self):
        return f"HomologySummary(free_rank={self.free_rank}, torsion={list(self.torsion)})"

    def __str__(self):
        parts = ["Z"] * self.free_rank + [f"Z_{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"

    def direct_sum(self, other):
        return HomologySummary(
            self.free_rank + other.free_rank,
            merge_invariant_factors([self.torsion, other.torsion]),
        )

    def to_json(self):
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


def _factorize(n):
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def merge_invariant_factors(factor_lists):
    """Invariant factors of the direct sum of the listed torsion groups."""
    by_prime = {}
    for factors in factor_lists:
        for f in factors:
            for p, e in _factorize(f).items():
                by_prime.setdefault(p, []).append(e)
    length = max((len(v) for v in by_prime.values()), default=0)
    chain = []
    for k in range(length):
        val = 1
        for p, exps in by_prime.items():
            exps = sorted(exps, reverse=True)
            if k < len(exps):
                val *= p ** exps[k]
        chain.append(val)
    chain.reverse()
    return tuple(chain)


def homology_at(d_in: IntegerMatrix, d_out: IntegerMatrix) -> HomologySummary:
    """Homology ker(d_out)/im(d_in); raises CompositionError unless d_out∘d_in = 0.

    >>> z = IntegerMatrix.zero
    >>> homology_at(z(3, 0), z(0, 3)).free_rank
    3
    >>> str(homology_at(IntegerMatrix.from_rows([[2]]), z(0, 1)))
    'Z_2'
    """
    if d_out.cols != d_in.rows:
        raise ValueError(
            f"middle module mismatch: d_in has {d_in.rows} rows, d_out has {d_out.cols} cols"
        )
    dim_q = d_out.cols
    diag, _, _, w = _smith_raw(d_out, track_u=False, track_v=False, track_w=True)
    r_out = sum(1 for d in diag if d != 0)
    # coordinates of the image of d_in with respect to the column basis V
    coords = w @ d_in
    for (i, _), val in coords.entries.items():
        if i < r_out and val != 0:
            raise CompositionError("d_out @ d_in != 0")
    kernel_rows = list(range(r_out, dim_q))
    x = coords.submatrix(kernel_rows, list(range(d_in.cols)))
    xdiag, _, _, _ = _smith_raw(x, False, False, False)
    r_in = sum(1 for d in xdiag if d != 0)
    torsion = [d for d in xdiag if d > 1]
    return HomologySummary(len(kernel_rows) - r_in, torsion)


class ChainComplex:
    """A bounded complex of free Z-modules, homological or cohomological.

    ``diffs[k]`` maps degree k to k-1 ("homological") or k to k+1
    ("cohomological").  ``qdegrees`` optionally assigns an internal degree to
    every basis vector; differentials must then preserve it.  Homology is
    reported only inside ``certified`` (inclusive degree interval) and, when
    ``q_certified_max`` is set, only for q-degrees up to that bound.
    """

    __slots__ = ("direction", "ranks", "diffs", "qdegrees", "certified", "q_certified_max")

    def __init__(self, direction, ranks, diffs, qdegrees=None, certified=None, q_certified_max=None):
        if direction not in ("homological", "cohomological"):
            raise ValueError("direction must be 'homological' or 'cohomological'")
        self.direction = direction
        self.ranks = dict(ranks)
        self.diffs = dict(diffs)
        self.qdegrees = None if qdegrees is None else {k: tuple(v) for k, v in qdegrees.items()}
        degrees = sorted(self.ranks)
        self.certified = (degrees[0], degrees[-1]) if certified is None else tuple(certified)
        self.q_certified_max = q_certified_max
        self._validate()

    def _validate(self):
        for k, mat in self.diffs.items():
            src = self.ranks.get(k, 0)
            tgt_deg = k - 1 if self.direction == "homological" else k + 1
            tgt = self.ranks.get(tgt_deg, 0)
            if mat.shape() != (tgt, src):
                raise ValueError(f"differential at degree {k} has shape {mat.shape()}, expected {(tgt, src)}")
            if self.qdegrees is not None and not mat.is_zero():
                qs = self.qdegrees[k]
                qt = self.qdegrees[tgt_deg]
                for (i, j) in mat.entries:
                    if qt[i] != qs[j]:
                        raise ValueError(f"differential at degree {k} does not preserve q-degree")

    def degrees(self):
        return sorted(self.ranks)

    def incoming(self, k):
        """Differential mapping into degree k (zero matrix when absent)."""
        if self.direction == "homological":
            mat = self.diffs.get(k + 1)
            src = self.ranks.get(k + 1, 0)
        else:
            mat = self.diffs.get(k - 1)
            src = self.ranks.get(k - 1, 0)
        return mat if mat is not None else IntegerMatrix.zero(self.ranks.get(k, 0), src)

    def outgoing(self, k):
        mat = self.diffs.get(k)
        if mat is not None:
            return mat
        tgt_deg = k - 1 if self.direction == "homological" else k + 1
        return IntegerMatrix.zero(self.ranks.get(tgt_deg, 0), self.ranks.get(k, 0))

    def check_d_squared(self):
        """Exact check that consecutive differentials compose to zero."""
        for k in self.degrees():
            inc = self.incoming(k)
            out = self.outgoing(k)
            if inc.is_zero() or out.is_zero():
                continue
            if not (out @ inc).is_zero():
                raise CompositionError(f"d∘d != 0 through degree {k}")


class _DSU:
    __slots__ = ("parent",)

    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def complex_homology(complex_: ChainComplex):
    """Homology of every certified (degree, q-degree) slot.

    Returns a dict mapping (degree, q) to HomologySummary; q is None for
    ungraded complexes.  Slots outside the certified ranges are omitted
    rather than reported as zero.

    The complex is first split into connected components of the union of
    all differential supports; the homology is the direct sum over the
    component subcomplexes, each of which is reduced independently.
    """
    complex_.check_d_squared()
    degrees = complex_.degrees()
    offsets = {}
    total = 0
    for k in degrees:
        offsets[k] = total
        total += complex_.ranks[k]
    dsu = _DSU(total)
    for k, mat in complex_.diffs.items():
        tgt_deg = k - 1 if complex_.direction == "homological" else k + 1
        if tgt_deg not in offsets or k not in offsets:
            continue
        src_off = offsets[k]
        tgt_off = offsets[tgt_deg]
        for (i, j) in mat.entries:
            dsu.union(src_off + j, tgt_off + i)

    # local index of every basis vector inside its component, per degree
    comp_members = {}  # root -> {degree: count}
    comp_q = {}        # root -> q-degree of the component (graded case)
    local_index = [0] * total
    root_of = [0] * total
    for k in degrees:
        off = offsets[k]
        qrow = complex_.qdegrees[k] if complex_.qdegrees is not None else None
        for idx in range(complex_.ranks[k]):
            root = dsu.find(off + idx)
            root_of[off + idx] = root
            per_degree = comp_members.setdefault(root, {})
            if qrow is not None and root not in comp_q:
                comp_q[root] = qrow[idx]
            local_index[off + idx] = per_degree.get(k, 0)
            per_degree[k] = per_degree.get(k, 0) + 1

    # bucket differential entries by component in one pass
    comp_entries = {}  # (root, degree) -> {(local_i, local_j): val}
    for k, mat in complex_.diffs.items():
        tgt_deg = k - 1 if complex_.direction == "homological" else k + 1
        src_off = offsets[k]
        tgt_off = offsets[tgt_deg]
        for (i, j), val in mat.entries.items():
            root = root_of[src_off + j]
            comp_entries.setdefault((root, k), {})[
                (local_index[tgt_off + i], local_index[src_off + j])
            ] = val

    lo, hi = complex_.certified
    qmax = complex_.q_certified_max
    step = -1 if complex_.direction == "homological" else 1
    result = {}
    for root in sorted(comp_members):
        members = comp_members[root]
        if complex_.qdegrees is not None:
            q = comp_q[root]
            if qmax is not None and q > qmax:
                continue
        else:
            q = None
        mats = {}
        for k in members:
            tgt_dim = members.get(k + step, 0)
            mats[k] = IntegerMatrix(tgt_dim, members[k], comp_entries.get((root, k), None))
        for k in members:
            if not (lo <= k <= hi):
                continue
            d_in = mats.get(k - step)
            if d_in is None:
                d_in = IntegerMatrix.zero(members[k], 0)
            d_out = mats.get(k)
            if d_out is None:
                d_out = IntegerMatrix.zero(0, members[k])
            summary = homology_at(d_in, d_out)
            if summary.is_trivial():
                continue
            key = (k, q)
            prev = result.get(key)
            result[key] = summary if prev is None else prev.direct_sum(summary)
    return dict(sorted(result.items(), key=_slot_key))


def _slot_key(item):
    (deg, q), _ = item
    return (deg, q if q is not None else 0)


def poincare_terms(homology):
    """Free ranks of a (degree, q) homology dict as {(degree, q): rank}."""
    return {
        key: summary.free_rank
        for key, summary in sorted(homology.items(), key=_slot_key)
        if summary.free_rank
    }


def torsion_slots(homology):
    """The slots carrying torsion: {(degree, q): invariant factor list}."""
    return {
        key: list(summary.torsion)
        for key, summary in sorted(homology.items(), key=_slot_key)
        if summary.torsion
    }
