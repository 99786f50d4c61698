"""Hochschild chain complexes and homology.

The chain group in degree n is M ⊗ A^{⊗n} on the tensor basis ordered
lexicographically with the M factor slowest.  The boundary is the
alternating sum of the face maps

    d_0 (m, a_1, ..., a_n) = (m a_1, a_2, ..., a_n)
    d_i (m, a_1, ..., a_n) = (m, a_1, ..., a_i a_{i+1}, ..., a_n)
    d_n (m, a_1, ..., a_n) = (a_n m, a_1, ..., a_{n-1})

For A = Z[x]/(p) a two-periodic small complex computes the same homology,
alternating the zero map with multiplication by p'(x); for p = x^m this
carries the bigrading with generator shifts i*m in degree 2i and i*m + 1
in degree 2i+1.  For tensor algebras the groups in degrees 0 and 1 come
from 1 - tau on each word length, and everything above vanishes.
"""

import itertools

from .algebra import Algebra, AlgebraError, Bimodule, regular_bimodule, tensor_basis
from .exact_linalg import ChainComplex, IntegerMatrix, complex_homology
from .exact_linalg.snf import _smith_raw
from .polynomials import Poly2


def _chain_basis(algebra, module, n):
    """Basis tuples (m, a_1, ..., a_n) of the degree-n chain group.

    For a truncated algebra only tuples with total q-degree within the
    bound are kept; those blocks agree exactly with the untruncated
    algebra since the boundary preserves q-degree.
    """
    bound = algebra.truncation_bound
    if bound is None:
        return tensor_basis([(0,) * module.rank] + [(0,) * algebra.rank] * n, None)
    if algebra.grading is None or module.grading is None:
        raise AlgebraError("truncated algebra requires graded algebra and module")
    return tensor_basis([module.grading] + [algebra.grading] * n, bound)


def face_map(algebra: Algebra, module: Bimodule, n: int, i: int) -> IntegerMatrix:
    """The single face map d_i: M ⊗ A^{⊗n} -> M ⊗ A^{⊗(n-1)}."""
    if not 0 <= i <= n:
        raise ValueError(f"face index {i} out of range for degree {n}")
    src, _ = _chain_basis(algebra, module, n)
    tgt, tgt_index = _chain_basis(algebra, module, n - 1)
    entries = {}
    for col, tup in enumerate(src):
        m_idx, word = tup[0], tup[1:]
        if i == 0:
            for m2, c in module.act_right(m_idx, word[0]):
                row = tgt_index[(m2,) + word[1:]]
                entries[(row, col)] = entries.get((row, col), 0) + c
        elif i == n:
            for m2, c in module.act_left(word[n - 1], m_idx):
                row = tgt_index[(m2,) + word[: n - 1]]
                entries[(row, col)] = entries.get((row, col), 0) + c
        else:
            for k, c in algebra.product(word[i - 1], word[i]):
                row = tgt_index[(m_idx,) + word[: i - 1] + (k,) + word[i + 1:]]
                entries[(row, col)] = entries.get((row, col), 0) + c
    return IntegerMatrix(len(tgt), len(src), entries)


def _boundary(algebra, module, src, tgt_index):
    """b = sum (-1)^i d_i on an enumerated chain basis."""
    entries = {}

    def add(row, col, c):
        key = (row, col)
        val = entries.get(key, 0) + c
        if val:
            entries[key] = val
        else:
            entries.pop(key, None)

    for col, tup in enumerate(src):
        m_idx, word = tup[0], tup[1:]
        n = len(word)
        for m2, c in module.act_right(m_idx, word[0]):
            add(tgt_index[(m2,) + word[1:]], col, c)
        sign = -1
        for i in range(1, n):
            for k, c in algebra.product(word[i - 1], word[i]):
                add(tgt_index[(m_idx,) + word[: i - 1] + (k,) + word[i + 1:]], col, sign * c)
            sign = -sign
        for m2, c in module.act_left(word[n - 1], m_idx):
            add(tgt_index[(m2,) + word[: n - 1]], col, sign * c)
    return entries


def hochschild_complex(algebra: Algebra, module: Bimodule, n_max: int) -> ChainComplex:
    """The Hochschild complex through degree n_max (homology exact below it)."""
    if module.algebra is not algebra and module.algebra != algebra:
        raise AlgebraError("module is not a bimodule over the given algebra")
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    bases = [_chain_basis(algebra, module, n) for n in range(n_max + 1)]
    ranks = {n: len(bases[n][0]) for n in range(n_max + 1)}
    diffs = {}
    for n in range(1, n_max + 1):
        entries = _boundary(algebra, module, bases[n][0], bases[n - 1][1])
        diffs[n] = IntegerMatrix(ranks[n - 1], ranks[n], entries)
    qdegrees = None
    if algebra.grading is not None and module.grading is not None:
        qdegrees = {}
        for n in range(n_max + 1):
            qs = []
            for tup in bases[n][0]:
                qs.append(module.grading[tup[0]] + sum(algebra.grading[a] for a in tup[1:]))
            qdegrees[n] = tuple(qs)
    return ChainComplex(
        "homological", ranks, diffs, qdegrees=qdegrees,
        certified=(0, max(n_max - 1, 0)),
        q_certified_max=algebra.truncation_bound,
    )


def hochschild_homology(algebra: Algebra, module: Bimodule = None, n_max: int = 4):
    """Bigraded Hochschild homology {(n, q): HomologySummary}; q is None
    when either the algebra or the module is ungraded."""
    if module is None:
        module = regular_bimodule(algebra)
    return complex_homology(hochschild_complex(algebra, module, n_max))


def _poly_derivative_matrix(coeffs):
    """Multiplication by p'(x) on Z[x]/(p), as a matrix on the power basis."""
    from .algebra import make_poly_quotient

    alg = make_poly_quotient(coeffs)
    d = alg.rank
    pvec = [0] * d
    for k in range(1, len(coeffs)):
        pvec[k - 1] += k * coeffs[k]  # deg p' < deg p, so this always fits
    entries = {}
    for j in range(d):
        col = alg.mul_vec(tuple(pvec), alg.basis_vector(j))
        for i, c in enumerate(col):
            if c:
                entries[(i, j)] = c
    return alg, IntegerMatrix(d, d, entries)


def small_complex_poly_quotient(coeffs, n_max: int) -> ChainComplex:
    """Two-periodic complex computing HH(Z[x]/(p)) for monic p.

    Degree-n group is Z[x]/(p); the differential into odd degrees is zero
    and into odd-from-even degrees is multiplication by p'(x).  Bigraded
    when p = x^m.
    """
    coeffs = [int(c) for c in coeffs]
    alg, pprime = _poly_derivative_matrix(coeffs)
    d = alg.rank
    top = n_max + 1  # one extra degree so homology at n_max is certified
    ranks = {n: d for n in range(top + 1)}
    diffs = {}
    for n in range(1, top + 1):
        if n % 2 == 0:
            diffs[n] = pprime
        else:
            diffs[n] = IntegerMatrix.zero(d, d)
    qdegrees = None
    if alg.grading is not None:
        m = d
        qdegrees = {}
        for n in range(top + 1):
            shift = (n // 2) * m + (n % 2)
            qdegrees[n] = tuple(shift + k for k in range(d))
    return ChainComplex("homological", ranks, diffs, qdegrees=qdegrees, certified=(0, n_max))


def small_complex_homology(coeffs, n_max: int):
    return complex_homology(small_complex_poly_quotient(coeffs, n_max))


def tensor_algebra_hh(dim_v: int, degree_max: int):
    """HH of the tensor algebra T(V) from the 1 - tau small complexes.

    Returns {(n, j): HomologySummary} for n in {0, 1}; all higher groups
    vanish identically (in every tensor degree j).
    """
    if dim_v < 1:
        raise ValueError("dim V must be at least 1")
    from .exact_linalg import HomologySummary

    result = {(0, 0): HomologySummary(1)}
    for j in range(1, degree_max + 1):
        words = list(itertools.product(range(dim_v), repeat=j))
        index = {w: i for i, w in enumerate(words)}
        entries = {}
        for i, w in enumerate(words):
            entries[(i, i)] = entries.get((i, i), 0) + 1
            rot = (w[-1],) + w[:-1]
            key = (index[rot], i)
            entries[key] = entries.get(key, 0) - 1
        b = IntegerMatrix(len(words), len(words), {k: v for k, v in entries.items() if v})
        diag, _, _, _ = _smith_raw(b, False, False, False)
        r = sum(1 for x in diag if x != 0)
        coker = HomologySummary(len(words) - r, [x for x in diag if x > 1])
        ker = HomologySummary(len(words) - r)
        if not coker.is_trivial():
            result[(0, j)] = coker
        if not ker.is_trivial():
            result[(1, j)] = ker
    return result


def poincare_polynomial(homology) -> Poly2:
    """Free ranks of a {(n, q): summary} map as a polynomial in t, q.

    Torsion is deliberately not represented; report it separately.
    """
    terms = {}
    for (n, q), summary in homology.items():
        if summary.free_rank:
            terms[(n, 0 if q is None else q)] = summary.free_rank
    return Poly2(terms)
