"""Structure-constant algebras over the integers, bimodules, Frobenius data.

Every algebra is a free Z-module with a fixed ordered basis; multiplication
is stored as structure constants ``mult[(i, j)] -> ((k, c), ...)`` meaning
e_i * e_j = sum c * e_k.  Elements are plain tuples of Python ints in basis
coordinates.  Infinite-rank graded algebras (polynomial and tensor algebras)
are represented by their quotient modulo everything above a q-degree bound;
complexes built degree by degree below that bound agree exactly with the
untruncated algebra because multiplication never raises q-degree within a
fixed-degree block.
"""

import itertools
import json

import numpy as np


class AlgebraError(ValueError):
    pass


def _normalize_terms(terms):
    acc = {}
    for k, c in terms:
        acc[k] = acc.get(k, 0) + c
    return tuple(sorted((k, c) for k, c in acc.items() if c != 0))


class Algebra:
    """Finite-rank unital algebra given by structure constants."""

    __slots__ = (
        "rank", "mult", "unit", "grading", "commutative", "truncation_bound",
        "labels", "frobenius", "_midx", "_mcoeff",
    )

    def __init__(self, rank, mult, unit, grading=None, commutative=False,
                 truncation_bound=None, labels=None, frobenius=None, check=True):
        self.rank = rank
        self.mult = {key: _normalize_terms(terms) for key, terms in mult.items()}
        self.mult = {key: terms for key, terms in self.mult.items() if terms}
        self.unit = tuple(int(c) for c in unit)
        self.grading = None if grading is None else tuple(int(g) for g in grading)
        self.commutative = bool(commutative)
        self.truncation_bound = truncation_bound
        self.labels = tuple(labels) if labels is not None else tuple(f"e{i}" for i in range(rank))
        self.frobenius = None
        self._midx, self._mcoeff = self._single_term_tables()
        if check:
            self._check_axioms()
        if frobenius is not None:
            self.attach_frobenius(frobenius)

    # -- representation helpers -------------------------------------------

    def _single_term_tables(self):
        """Dense (index, coeff) tables when every basis product has <= 1 term."""
        if any(len(t) > 1 for t in self.mult.values()):
            return None, None
        idx = np.full((self.rank, self.rank), -1, dtype=np.int64)
        coeff = np.zeros((self.rank, self.rank), dtype=np.int64)
        for (i, j), terms in self.mult.items():
            k, c = terms[0]
            if abs(c) > 2**31:
                return None, None
            idx[i, j] = k
            coeff[i, j] = c
        return idx, coeff

    def product(self, i, j):
        """Structure constants of e_i * e_j as ((k, c), ...)."""
        return self.mult.get((i, j), ())

    def mul_vec(self, x, y):
        """Product of two elements in basis coordinates."""
        acc = [0] * self.rank
        for i, a in enumerate(x):
            if a == 0:
                continue
            for j, b in enumerate(y):
                if b == 0:
                    continue
                for k, c in self.product(i, j):
                    acc[k] += a * b * c
        return tuple(acc)

    def basis_vector(self, i):
        v = [0] * self.rank
        v[i] = 1
        return tuple(v)

    def is_graded(self):
        return self.grading is not None

    def graded_ranks(self):
        """Number of basis elements in each q-degree, as {q: count}."""
        if self.grading is None:
            raise AlgebraError("algebra is not graded")
        out = {}
        for g in self.grading:
            out[g] = out.get(g, 0) + 1
        return dict(sorted(out.items()))

    # -- axiom checks -------------------------------------------------------

    def _check_axioms(self):
        r = self.rank
        if len(self.unit) != r:
            raise AlgebraError("unit vector has wrong length")
        for i in range(r):
            e = self.basis_vector(i)
            if self.mul_vec(self.unit, e) != e or self.mul_vec(e, self.unit) != e:
                raise AlgebraError(f"unit law fails on basis element {i}")
        if self.commutative:
            for (i, j), terms in self.mult.items():
                if self.mult.get((j, i), ()) != terms:
                    raise AlgebraError("commutative flag set but multiplication is not symmetric")
        if self.grading is not None:
            for (i, j), terms in self.mult.items():
                want = self.grading[i] + self.grading[j]
                for k, _ in terms:
                    if self.grading[k] != want:
                        raise AlgebraError("multiplication does not preserve the grading")
        self._check_associativity()

    def _check_associativity(self):
        r = self.rank
        if self._midx is not None:
            # single-term tables: -1 marks a zero product, and the padding
            # row/slot at index r keeps gathers on -1 harmless.
            idx, coeff = self._midx, self._mcoeff
            pad_idx = np.vstack([idx, np.full((1, r), -1, dtype=np.int64)])
            pad_coeff = np.vstack([coeff, np.zeros((1, r), dtype=np.int64)])
            m2 = np.where(idx >= 0, idx, r)
            for i in range(r):
                m = idx[i]
                left_idx = pad_idx[m]                         # (e_i e_j) e_k
                left_c = coeff[i][:, None] * pad_coeff[m]
                row_i_idx = np.append(idx[i], -1)
                row_i_c = np.append(coeff[i], 0)
                right_idx = row_i_idx[m2]                     # e_i (e_j e_k)
                right_c = coeff * row_i_c[m2]
                left_idx = np.where(left_c != 0, left_idx, -1)
                right_idx = np.where(right_c != 0, right_idx, -1)
                if not (np.array_equal(left_idx, right_idx) and
                        np.array_equal(np.where(left_idx >= 0, left_c, 0),
                                       np.where(right_idx >= 0, right_c, 0))):
                    raise AlgebraError(f"associativity fails with left factor {self.labels[i]}")
            return
        if r <= 48:
            triples = itertools.product(range(r), repeat=3)
        else:
            rng = np.random.default_rng(0)
            triples = (tuple(t) for t in rng.integers(0, r, size=(2000, 3)))
        for i, j, k in triples:
            if self._assoc_left(i, j, k) != self._assoc_right(i, j, k):
                raise AlgebraError(f"associativity fails on ({i},{j},{k})")

    def _assoc_left(self, i, j, k):
        acc = {}
        for m, c in self.product(i, j):
            for t, c2 in self.product(m, k):
                acc[t] = acc.get(t, 0) + c * c2
        return {t: c for t, c in acc.items() if c}

    def _assoc_right(self, i, j, k):
        acc = {}
        for m, c in self.product(j, k):
            for t, c2 in self.product(i, m):
                acc[t] = acc.get(t, 0) + c * c2
        return {t: c for t, c in acc.items() if c}

    def attach_frobenius(self, frob):
        frob.validate(self)
        self.frobenius = frob

    def __eq__(self, other):
        if not isinstance(other, Algebra):
            return NotImplemented
        return (
            self.rank == other.rank
            and self.mult == other.mult
            and self.unit == other.unit
            and self.grading == other.grading
            and self.commutative == other.commutative
        )

    def __repr__(self):
        g = " graded" if self.grading is not None else ""
        return f"Algebra(rank={self.rank},{g} commutative={self.commutative})"


class FrobeniusData:
    """Coproduct and counit making an algebra Frobenius."""

    __slots__ = ("coproduct", "counit", "cocommutative")

    def __init__(self, coproduct, counit):
        self.coproduct = {
            i: tuple(sorted((j, k, int(c)) for j, k, c in terms if c))
            for i, terms in coproduct.items()
        }
        self.counit = tuple(int(c) for c in counit)
        self.cocommutative = all(
            sorted((k, j, c) for j, k, c in terms) == sorted(terms)
            for terms in self.coproduct.values()
        )

    def coproduct_of(self, i):
        return self.coproduct.get(i, ())

    def validate(self, algebra):
        r = algebra.rank
        # counit axiom: (eps ⊗ id) Δ = id
        for i in range(r):
            acc = [0] * r
            for j, k, c in self.coproduct_of(i):
                acc[k] += c * self.counit[j]
            if tuple(acc) != algebra.basis_vector(i):
                raise AlgebraError(f"counit axiom fails on basis element {i}")
        # Frobenius compatibility: (mu ⊗ id)(id ⊗ Δ) = Δ mu on basis pairs
        for a in range(r):
            for b in range(r):
                lhs = {}
                for j, k, c in self.coproduct_of(b):
                    for m, c2 in algebra.product(a, j):
                        key = (m, k)
                        lhs[key] = lhs.get(key, 0) + c * c2
                rhs = {}
                for t, c3 in algebra.product(a, b):
                    for j, k, c4 in self.coproduct_of(t):
                        key = (j, k)
                        rhs[key] = rhs.get(key, 0) + c3 * c4
                lhs = {k: v for k, v in lhs.items() if v}
                rhs = {k: v for k, v in rhs.items() if v}
                if lhs != rhs:
                    raise AlgebraError(f"Frobenius compatibility fails on pair ({a},{b})")

    def mu_delta_unit(self, algebra):
        """The distinguished element mu(Δ(1)) in basis coordinates."""
        acc = [0] * algebra.rank
        for i, ci in enumerate(algebra.unit):
            if ci == 0:
                continue
            for j, k, c in self.coproduct_of(i):
                for t, c2 in algebra.product(j, k):
                    acc[t] += ci * c * c2
        return tuple(acc)


class Bimodule:
    """Two-sided module over an Algebra, given by action constants."""

    __slots__ = ("algebra", "rank", "left", "right", "grading", "labels")

    def __init__(self, algebra, rank, left, right, grading=None, labels=None, check=True):
        self.algebra = algebra
        self.rank = rank
        self.left = {key: _normalize_terms(t) for key, t in left.items()}
        self.left = {k: t for k, t in self.left.items() if t}
        self.right = {key: _normalize_terms(t) for key, t in right.items()}
        self.right = {k: t for k, t in self.right.items() if t}
        self.grading = None if grading is None else tuple(int(g) for g in grading)
        self.labels = tuple(labels) if labels is not None else tuple(f"m{i}" for i in range(rank))
        if check:
            self._check_axioms()

    def act_left(self, a_idx, m_idx):
        """Structure constants of e_a * m as ((m_k, c), ...)."""
        return self.left.get((a_idx, m_idx), ())

    def act_right(self, m_idx, a_idx):
        return self.right.get((m_idx, a_idx), ())

    def left_vec(self, a_vec, m_vec):
        acc = [0] * self.rank
        for i, a in enumerate(a_vec):
            if a == 0:
                continue
            for j, m in enumerate(m_vec):
                if m == 0:
                    continue
                for k, c in self.act_left(i, j):
                    acc[k] += a * m * c
        return tuple(acc)

    def right_vec(self, m_vec, a_vec):
        acc = [0] * self.rank
        for j, m in enumerate(m_vec):
            if m == 0:
                continue
            for i, a in enumerate(a_vec):
                if a == 0:
                    continue
                for k, c in self.act_right(j, i):
                    acc[k] += a * m * c
        return tuple(acc)

    def basis_vector(self, i):
        v = [0] * self.rank
        v[i] = 1
        return tuple(v)

    def is_symmetric(self):
        """True when a*m = m*a for all basis pairs."""
        keys = {(a, m) for (a, m) in self.left} | {(a, m) for (m, a) in self.right}
        return all(self.act_left(a, m) == self.act_right(m, a) for a, m in keys)

    def _check_axioms(self):
        A = self.algebra
        for m in range(self.rank):
            mv = self.basis_vector(m)
            if self.left_vec(A.unit, mv) != mv or self.right_vec(mv, A.unit) != mv:
                raise AlgebraError(f"bimodule is not unital on basis element {m}")
        # (a m) a' = a (m a') and associativity of each action with mult
        for a in range(A.rank):
            av = A.basis_vector(a)
            for b in range(A.rank):
                bv = A.basis_vector(b)
                ab = A.mul_vec(av, bv)
                for m in range(self.rank):
                    mv = self.basis_vector(m)
                    if self.right_vec(self.left_vec(av, mv), bv) != self.left_vec(av, self.right_vec(mv, bv)):
                        raise AlgebraError("left and right actions do not commute")
                    if self.left_vec(ab, mv) != self.left_vec(av, self.left_vec(bv, mv)):
                        raise AlgebraError("left action is not associative")
                    if self.right_vec(mv, ab) != self.right_vec(self.right_vec(mv, av), bv):
                        raise AlgebraError("right action is not associative")
        if self.grading is not None:
            if A.grading is None:
                raise AlgebraError("graded bimodule over ungraded algebra")
            for (a, m), terms in self.left.items():
                want = A.grading[a] + self.grading[m]
                if any(self.grading[k] != want for k, _ in terms):
                    raise AlgebraError("left action does not preserve the grading")
            for (m, a), terms in self.right.items():
                want = A.grading[a] + self.grading[m]
                if any(self.grading[k] != want for k, _ in terms):
                    raise AlgebraError("right action does not preserve the grading")

    def __repr__(self):
        return f"Bimodule(rank={self.rank} over {self.algebra!r})"


def regular_bimodule(algebra: Algebra) -> Bimodule:
    """The algebra acting on itself on both sides."""
    # mult[(a, m)] is a*m and mult[(m, a)] is m*a, so both action tables
    # coincide with the multiplication table.
    return Bimodule(
        algebra, algebra.rank,
        left=dict(algebra.mult),
        right=dict(algebra.mult),
        grading=algebra.grading,
        labels=algebra.labels,
        check=False,
    )


def enveloping_action(module: Bimodule, m_vec, ae_index):
    """Right action of the enveloping-algebra basis element a'⊗a: m -> a m a'.

    ``ae_index`` indexes the basis of tensor(A, opposite(A)) in row-major
    order (a' slowest).
    """
    r = module.algebra.rank
    a_prime, a = divmod(ae_index, r)
    av = module.algebra.basis_vector(a)
    apv = module.algebra.basis_vector(a_prime)
    return module.right_vec(module.left_vec(av, m_vec), apv)


# -- specific families -----------------------------------------------------


def make_truncated_poly(m: int) -> Algebra:
    """Z[x]/(x^m), graded with deg x^i = i, with its Frobenius coproduct."""
    if m < 1:
        raise AlgebraError("truncation order must be at least 1")
    mult = {(i, j): ((i + j, 1),) for i in range(m) for j in range(m) if i + j < m}
    labels = ["1"] + [f"x^{i}" if i > 1 else "x" for i in range(1, m)]
    alg = Algebra(
        rank=m, mult=mult, unit=(1,) + (0,) * (m - 1),
        grading=range(m), commutative=True, labels=labels,
    )
    coproduct = {
        k: tuple((i, m - 1 + k - i, 1) for i in range(max(0, k), m) if 0 <= m - 1 + k - i < m)
        for k in range(m)
    }
    counit = tuple(1 if i == m - 1 else 0 for i in range(m))
    alg.attach_frobenius(FrobeniusData(coproduct, counit))
    return alg


def make_poly_quotient(coeffs) -> Algebra:
    """Z[x]/(p(x)) for monic p given by coefficients [c0, c1, ..., 1]."""
    coeffs = [int(c) for c in coeffs]
    if len(coeffs) < 2:
        raise AlgebraError("polynomial must have degree at least 1")
    if coeffs[-1] != 1:
        raise AlgebraError("p(x) must be monic for Z[x]/(p) to be a free Z-module")
    d = len(coeffs) - 1
    if all(c == 0 for c in coeffs[:-1]):
        return make_truncated_poly(d)
    # rep[k] = coordinates of x^k modulo p, for k up to 2d-2
    rep = [[0] * d for _ in range(2 * d - 1)]
    for k in range(d):
        rep[k][k] = 1
    for k in range(d, 2 * d - 1):
        prev = rep[k - 1]
        shifted = [0] + prev[:-1]
        lead = prev[d - 1]
        if lead:
            for i in range(d):
                shifted[i] -= lead * coeffs[i]
        rep[k] = shifted
    mult = {}
    for i in range(d):
        for j in range(d):
            terms = tuple((k, c) for k, c in enumerate(rep[i + j]) if c)
            if terms:
                mult[(i, j)] = terms
    labels = ["1"] + [f"x^{i}" if i > 1 else "x" for i in range(1, d)]
    return Algebra(rank=d, mult=mult, unit=(1,) + (0,) * (d - 1),
                   commutative=True, labels=labels)


def make_polynomial_ring(n_vars: int, q_max: int) -> Algebra:
    """Z[x_1..x_n] truncated above total degree q_max (exact below the bound)."""
    if n_vars < 1:
        raise AlgebraError("need at least one variable")
    if q_max < 0:
        raise AlgebraError("q_max must be nonnegative")
    monomials = []
    for deg in range(q_max + 1):
        monomials.extend(_compositions(deg, n_vars))
    index = {mon: i for i, mon in enumerate(monomials)}
    mult = {}
    for i, m1 in enumerate(monomials):
        for j, m2 in enumerate(monomials):
            s = tuple(a + b for a, b in zip(m1, m2))
            if sum(s) <= q_max:
                mult[(i, j)] = ((index[s], 1),)
    labels = [_monomial_label(m) for m in monomials]
    return Algebra(
        rank=len(monomials), mult=mult,
        unit=(1,) + (0,) * (len(monomials) - 1),
        grading=[sum(m) for m in monomials],
        commutative=True, truncation_bound=q_max, labels=labels,
    )


def make_tensor_algebra(dim: int, q_max: int) -> Algebra:
    """Free (tensor) algebra on dim generators, truncated above degree q_max."""
    if dim < 1:
        raise AlgebraError("need at least one generator")
    words = []
    for length in range(q_max + 1):
        words.extend(itertools.product(range(dim), repeat=length))
    index = {w: i for i, w in enumerate(words)}
    mult = {}
    for i, w1 in enumerate(words):
        for j, w2 in enumerate(words):
            w = w1 + w2
            if len(w) <= q_max:
                mult[(i, j)] = ((index[w], 1),)
    labels = ["1"] + ["v" + "".join(str(c) for c in w) for w in words[1:]]
    return Algebra(
        rank=len(words), mult=mult,
        unit=(1,) + (0,) * (len(words) - 1),
        grading=[len(w) for w in words],
        commutative=(dim == 1), truncation_bound=q_max, labels=labels,
    )


def make_upper_triangular(n: int) -> Algebra:
    """Upper-triangular n x n integer matrices on the matrix-unit basis."""
    if n < 2:
        raise AlgebraError("size must be at least 2")
    basis = [(i, j) for i in range(n) for j in range(i, n)]
    index = {b: t for t, b in enumerate(basis)}
    mult = {}
    for t1, (i, j) in enumerate(basis):
        for t2, (k, l) in enumerate(basis):
            if j == k:
                mult[(t1, t2)] = ((index[(i, l)], 1),)
    unit = [0] * len(basis)
    for i in range(n):
        unit[index[(i, i)]] = 1
    labels = [f"e{i + 1}{j + 1}" for i, j in basis]
    return Algebra(
        rank=len(basis), mult=mult, unit=unit,
        grading=[j - i for i, j in basis],
        commutative=False, labels=labels,
    )


def opposite(algebra: Algebra) -> Algebra:
    """Same module, reversed multiplication."""
    mult = {(j, i): terms for (i, j), terms in algebra.mult.items()}
    return Algebra(
        rank=algebra.rank, mult=mult, unit=algebra.unit,
        grading=algebra.grading, commutative=algebra.commutative,
        truncation_bound=algebra.truncation_bound, labels=algebra.labels,
        check=False,
    )


def tensor(a: Algebra, b: Algebra) -> Algebra:
    """Tensor product algebra with componentwise products (no signs)."""
    rb = b.rank
    mult = {}
    for (i1, j1), terms1 in a.mult.items():
        for (i2, j2), terms2 in b.mult.items():
            key = (i1 * rb + i2, j1 * rb + j2)
            mult[key] = tuple((k1 * rb + k2, c1 * c2) for k1, c1 in terms1 for k2, c2 in terms2)
    unit = [0] * (a.rank * rb)
    for i, c1 in enumerate(a.unit):
        for j, c2 in enumerate(b.unit):
            if c1 * c2:
                unit[i * rb + j] = c1 * c2
    grading = None
    if a.grading is not None and b.grading is not None:
        grading = [a.grading[i] + b.grading[j] for i in range(a.rank) for j in range(rb)]
    labels = [f"{la}⊗{lb}" for la in a.labels for lb in b.labels]
    return Algebra(
        rank=a.rank * rb, mult=mult, unit=unit, grading=grading,
        commutative=a.commutative and b.commutative, labels=labels,
        check=False,
    )


def enveloping(algebra: Algebra) -> Algebra:
    """A ⊗ A^op; bimodules over A are right modules over it."""
    return tensor(algebra, opposite(algebra))


def _hermite_row_basis(vectors, width):
    """Echelon basis (list of rows) of the lattice spanned by the rows."""
    rows = [list(v) for v in vectors if any(v)]
    basis = []
    for col in range(width):
        pool = [r for r in rows if r[col] != 0]
        if not pool:
            continue
        while True:
            pool.sort(key=lambda r: abs(r[col]))
            pivot = pool[0]
            done = True
            for r in pool[1:]:
                q = r[col] // pivot[col]
                for t in range(width):
                    r[t] -= q * pivot[t]
                if r[col] != 0:
                    done = False
            pool = [pivot] + [r for r in pool[1:] if r[col] != 0]
            if done and len(pool) == 1:
                break
        if pivot[col] < 0:
            pivot[:] = [-x for x in pivot]
        basis.append(pivot)
        rows = [r for r in rows if r is not pivot and any(r)]
    # reduce entries above each pivot for a canonical echelon form
    for bi in range(len(basis) - 1, -1, -1):
        col = next(t for t in range(width) if basis[bi][t] != 0)
        for bj in range(bi):
            q = basis[bj][col] // basis[bi][col]
            if q:
                for t in range(width):
                    basis[bj][t] -= q * basis[bi][t]
    return basis


def _express_in_basis(basis, vector, width):
    """Coordinates of vector in an echelon lattice basis; error if outside."""
    v = list(vector)
    coords = [0] * len(basis)
    for bi, row in enumerate(basis):
        col = next(t for t in range(width) if row[t] != 0)
        if v[col] % row[col] != 0:
            raise AlgebraError("vector lies outside the lattice")
        q = v[col] // row[col]
        coords[bi] = q
        if q:
            for t in range(width):
                v[t] -= q * row[t]
    if any(v):
        raise AlgebraError("vector lies outside the lattice")
    return coords


def ideal_bimodule(algebra: Algebra, generators) -> Bimodule:
    """Sub-bimodule of the algebra spanned by generators * basis elements.

    Generators may be coordinate vectors or basis indices.  They must be
    central (automatic for commutative algebras).
    """
    gens = []
    for g in generators:
        if isinstance(g, int):
            gens.append(algebra.basis_vector(g))
        else:
            gens.append(tuple(int(c) for c in g))
    for g in gens:
        if not algebra.commutative:
            for i in range(algebra.rank):
                e = algebra.basis_vector(i)
                if algebra.mul_vec(g, e) != algebra.mul_vec(e, g):
                    raise AlgebraError("ideal generators must be central")
    span = []
    for g in gens:
        for i in range(algebra.rank):
            span.append(algebra.mul_vec(g, algebra.basis_vector(i)))
    basis = _hermite_row_basis(span, algebra.rank)
    rank = len(basis)
    left = {}
    right = {}
    for a in range(algebra.rank):
        av = algebra.basis_vector(a)
        for m, row in enumerate(basis):
            lv = algebra.mul_vec(av, tuple(row))
            rv = algebra.mul_vec(tuple(row), av)
            lterms = tuple((k, c) for k, c in enumerate(_express_in_basis(basis, lv, algebra.rank)) if c)
            rterms = tuple((k, c) for k, c in enumerate(_express_in_basis(basis, rv, algebra.rank)) if c)
            if lterms:
                left[(a, m)] = lterms
            if rterms:
                right[(m, a)] = rterms
    grading = None
    if algebra.grading is not None:
        degs = []
        for row in basis:
            present = {algebra.grading[i] for i, c in enumerate(row) if c}
            if len(present) != 1:
                degs = None
                break
            degs.append(present.pop())
        grading = degs
    labels = ["+".join(f"{c}*{algebra.labels[i]}" if c != 1 else algebra.labels[i]
                       for i, c in enumerate(row) if c) for row in basis]
    return Bimodule(algebra, rank, left, right, grading=grading, labels=labels)


# -- JSON / shorthand specs --------------------------------------------------


def algebra_from_spec(spec, q_max=None) -> Algebra:
    """Build an algebra from its JSON spec or the CLI shorthand ``type:arg``.

    Accepted types: truncated, poly_quotient, polynomial_ring,
    tensor_algebra, upper_triangular, structure_constants.
    """
    if isinstance(spec, str):
        spec = spec.strip()
        if spec.startswith("{"):
            spec = json.loads(spec)
        else:
            name, _, arg = spec.partition(":")
            spec = {"type": name}
            if name == "poly_quotient":
                spec["coeffs"] = json.loads(arg)
            elif name in ("truncated",):
                spec["m"] = int(arg)
            elif name == "polynomial_ring":
                spec["vars"] = int(arg)
            elif name == "tensor_algebra":
                spec["dim"] = int(arg)
            elif name == "upper_triangular":
                spec["n"] = int(arg)
            elif arg:
                raise AlgebraError(f"unknown algebra shorthand {spec!r}")
    kind = spec.get("type")
    if kind == "truncated":
        return make_truncated_poly(int(spec["m"]))
    if kind == "poly_quotient":
        return make_poly_quotient(spec["coeffs"])
    if kind == "polynomial_ring":
        bound = spec.get("q_max", q_max)
        if bound is None:
            raise AlgebraError("polynomial_ring requires q_max (refusing to guess)")
        return make_polynomial_ring(int(spec["vars"]), int(bound))
    if kind == "tensor_algebra":
        bound = spec.get("q_max", q_max)
        if bound is None:
            raise AlgebraError("tensor_algebra requires q_max (refusing to guess)")
        return make_tensor_algebra(int(spec["dim"]), int(bound))
    if kind == "upper_triangular":
        return make_upper_triangular(int(spec["n"]))
    if kind == "structure_constants":
        mult = {}
        for entry in spec["mult"]:
            i, j, k, c = entry
            mult.setdefault((int(i), int(j)), []).append((int(k), int(c)))
        return Algebra(
            rank=int(spec["rank"]),
            mult={k: tuple(v) for k, v in mult.items()},
            unit=spec["unit"],
            grading=spec.get("grading"),
            commutative=bool(spec.get("commutative", False)),
            labels=spec.get("labels"),
        )
    raise AlgebraError(f"unknown algebra spec type {kind!r}")


def module_from_spec(algebra: Algebra, spec) -> Bimodule:
    """Build the coefficient bimodule from JSON / ``regular`` / ``ideal:k``."""
    if spec is None:
        return regular_bimodule(algebra)
    if isinstance(spec, str):
        spec = spec.strip()
        if not spec or spec == "regular":
            return regular_bimodule(algebra)
        if spec.startswith("{"):
            spec = json.loads(spec)
        elif spec.startswith("ideal:"):
            spec = {"type": "ideal", "generators": [int(spec.split(":", 1)[1])]}
        else:
            raise AlgebraError(f"unknown module shorthand {spec!r}")
    kind = spec.get("type")
    if kind == "regular":
        return regular_bimodule(algebra)
    if kind == "ideal":
        return ideal_bimodule(algebra, spec["generators"])
    raise AlgebraError(f"unknown module spec type {kind!r}")


# -- small utilities ---------------------------------------------------------


def tensor_basis(factor_gradings, bound):
    """Index tuples of a tensor product of graded factors, in lexicographic
    order, restricted to total degree <= bound.

    ``factor_gradings`` is one grading tuple per factor.  With bound None
    the full product is enumerated.  Returns (tuples, index_of) where
    index_of maps each tuple to its position.
    """
    ranks = [len(g) for g in factor_gradings]
    if bound is None:
        tuples = list(itertools.product(*(range(r) for r in ranks)))
        return tuples, {t: i for i, t in enumerate(tuples)}
    min_rest = [0] * (len(ranks) + 1)
    for pos in range(len(ranks) - 1, -1, -1):
        min_rest[pos] = min_rest[pos + 1] + (min(factor_gradings[pos]) if ranks[pos] else 0)
    tuples = []

    def rec(pos, prefix, budget):
        if pos == len(ranks):
            tuples.append(prefix)
            return
        grading = factor_gradings[pos]
        for idx in range(ranks[pos]):
            g = grading[idx]
            if g + min_rest[pos + 1] <= budget:
                rec(pos + 1, prefix + (idx,), budget - g)

    rec(0, (), bound)
    return tuples, {t: i for i, t in enumerate(tuples)}


def _compositions(total, parts):
    """Weak compositions of ``total`` into ``parts`` slots, lexicographic."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


def _monomial_label(exponents):
    if not any(exponents):
        return "1"
    parts = []
    for i, e in enumerate(exponents):
        if e == 1:
            parts.append(f"x{i + 1}")
        elif e > 1:
            parts.append(f"x{i + 1}^{e}")
    return "*".join(parts)
