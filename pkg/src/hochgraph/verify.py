"""Named verification suites reproducing the published tables.

Each suite runs a family of claims and returns one VerificationReport per
claim, carrying both the expected and the computed data.  Suites are
addressed by name or alias (``thm4.2``, ``cor4.4``, ...); ``all`` runs
everything.  A report with status ``fail`` is genuine output, not an
error: the polygon-over-Z[x] suite, in particular, checks the printed
closed form whose constant exponent disagrees with its own proof for
n > 3, and the suite records that mismatch explicitly.
"""

import time
from math import comb, inf

from . import algebra as alg
from .exact_linalg import HomologySummary
from .graph_homology import (
    Graph,
    euler_characteristic_check,
    graph_cohomology,
    line_graph,
    polygon,
    verify_polygon_isomorphism,
)
from .hochschild import (
    hochschild_homology,
    small_complex_homology,
    tensor_algebra_hh,
)
from .khovanov import (
    SignedPlaneGraph,
    bracket_state_sum,
    circle_count,
    homology_euler_characteristic,
    khovanov_complex,
    khovanov_homology,
    mirror_dual,
    regrade_tait,
    theta_graph,
    torus_link_tait_graph,
    verify_theorem_2_7,
)


class VerificationReport:
    """One verified claim: identifier, pass/fail, both sides, wall time."""

    __slots__ = ("claim", "status", "expected", "computed", "seconds", "note")

    def __init__(self, claim, ok, expected, computed, seconds, note=""):
        self.claim = claim
        self.status = "pass" if ok else "fail"
        self.expected = expected
        self.computed = computed
        self.seconds = seconds
        self.note = note

    @property
    def ok(self):
        return self.status == "pass"

    def to_json(self):
        out = {
            "claim": self.claim,
            "status": self.status,
            "expected": _jsonable(self.expected),
            "computed": _jsonable(self.computed),
            "seconds": round(self.seconds, 3),
        }
        if self.note:
            out["note"] = self.note
        return out

    def __repr__(self):
        return f"VerificationReport({self.claim!r}: {self.status})"


def _jsonable(value):
    if isinstance(value, HomologySummary):
        return value.to_json()
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in sorted(value.items(), key=lambda kv: str(kv[0]))}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _report(claim, expected, computed, t0, note=""):
    return VerificationReport(claim, expected == computed, expected, computed, time.time() - t0, note)


def _truncated_expected(m, n_top):
    """Free ranks and torsion of HH(Z[x]/(x^m)) per the closed form."""
    free = {(0, q): 1 for q in range(m)}
    torsion = {}
    for n in range(1, n_top + 1):
        i = n // 2
        for q in range(i * m + 1, i * m + m):
            free[(n, q)] = 1
        if n % 2 == 1:
            torsion[(n, (i + 1) * m)] = [m]
    return free, torsion


def suite_truncated_hh():
    """HH(Z[x]/(x^m)) for m = 2..5 through degree 7, against the closed form."""
    reports = []
    for m in range(2, 6):
        t0 = time.time()
        h = small_complex_homology([0] * m + [1], 7)
        free = {k: s.free_rank for k, s in h.items() if s.free_rank}
        torsion = {k: list(s.torsion) for k, s in h.items() if s.torsion}
        exp_free, exp_torsion = _truncated_expected(m, 7)
        reports.append(_report(f"Thm4.2/m={m}/free", exp_free, free, t0))
        reports.append(_report(f"Thm4.2/m={m}/torsion", exp_torsion, torsion, t0))
    for m in (2, 3):
        t0 = time.time()
        direct = hochschild_homology(alg.make_truncated_poly(m), n_max=5)
        small = {k: v for k, v in small_complex_homology([0] * m + [1], 4).items()}
        reports.append(_report(f"Thm4.2/m={m}/direct-vs-small(n<=4)", small, dict(direct), t0))
    return reports


def suite_polygon_iso():
    """Hat cohomology of P_{n+1} vs Hochschild homology, five coefficient pairs."""
    a2 = alg.make_truncated_poly(2)
    a3 = alg.make_truncated_poly(3)
    ut2 = alg.make_upper_triangular(2)
    pairs = [
        ("A2/M=A2", a2, alg.regular_bimodule(a2)),
        ("A2/M=(x)", a2, alg.ideal_bimodule(a2, [1])),
        ("A3/M=A3", a3, alg.regular_bimodule(a3)),
        ("A3/M=(x^2)", a3, alg.ideal_bimodule(a3, [2])),
        ("UT2/M=UT2", ut2, alg.regular_bimodule(ut2)),
    ]
    reports = []
    for label, algebra, module in pairs:
        for n in range(2, 6):
            t0 = time.time()
            rep = verify_polygon_isomorphism(algebra, module, n)
            reports.append(VerificationReport(
                f"Thm3.1/{label}/n={n}", rep.ok, "isomorphic in degrees 0<i<=n",
                "isomorphic" if rep.ok else rep.failures(), time.time() - t0))
    return reports


def _torus_torsion_table(n):
    """Cor 4.4: Z_2 at (a, b) = (-n+4k, -n+8k), k = 1..floor((n-1)/2)."""
    return {(-n + 4 * k, -n + 8 * k): [2] for k in range(1, (n - 1) // 2 + 1)}


def suite_torus_torsion():
    """Khovanov homology torsion of T(2,-n) from the cube, n = 3..7."""
    a2 = alg.make_truncated_poly(2)
    reports = []
    for n in range(3, 8):
        t0 = time.time()
        kh = khovanov_homology(torus_link_tait_graph(2, -n), a2)
        reports.append(_report(f"Cor4.4/T(2,-{n})/torsion", _torus_torsion_table(n),
                               kh.torsion_slots(), t0))
        if n <= 6:
            t0 = time.time()
            again = mirror_dual(mirror_dual(kh))
            reports.append(VerificationReport(
                f"Cor4.4/T(2,-{n})/mirror-involution", again.groups == kh.groups,
                "mirror_dual is an involution", "involution holds" if again.groups == kh.groups else "broken",
                time.time() - t0))
    return reports


def suite_polygon_torsion():
    """Cor 4.3 torsion of H(P_n; Z[x]/(x^m)) plus the Thm 2.7 regrading."""
    reports = []
    for m, ns in ((2, range(3, 8)), (3, range(3, 6))):
        a = alg.make_truncated_poly(m)
        for n in ns:
            t0 = time.time()
            h = graph_cohomology(polygon(n), a)
            torsion = {k: list(s.torsion) for k, s in h.items() if s.torsion}
            expected = {(n - 2 * k, k * m): [m] for k in range(1, (n - 1) // 2 + 1)}
            reports.append(_report(f"Cor4.3/m={m}/P_{n}/torsion", expected, torsion, t0))
            if m == 2:
                t0 = time.time()
                regraded = {regrade_tait(i, j, n, n): fac for (i, j), fac in torsion.items()}
                reports.append(_report(f"Cor4.3+Thm2.7/P_{n}/regrade-vs-Cor4.4",
                                       _torus_torsion_table(n), regraded, t0))
    return reports


def suite_line_acyclic():
    """Hat cohomology of line graphs is the rank formula in degree 0 only."""
    algebras = [
        ("A2", alg.make_truncated_poly(2)),
        ("A3", alg.make_truncated_poly(3)),
        ("UT2", alg.make_upper_triangular(2)),
    ]
    reports = []
    for label, a in algebras:
        for n in range(1, 7):
            t0 = time.time()
            h = graph_cohomology(line_graph(n), a, variant="hat")
            rank0 = sum(s.free_rank for (i, _), s in h.items() if i == 0)
            higher = {k: str(s) for k, s in h.items() if k[0] > 0}
            torsion0 = [list(s.torsion) for (i, _), s in h.items() if i == 0 and s.torsion]
            expected = a.rank * (a.rank - 1) ** n
            computed = {"rank_H0": rank0, "H_above_0": higher, "torsion_H0": torsion0}
            wanted = {"rank_H0": expected, "H_above_0": {}, "torsion_H0": []}
            reports.append(_report(f"Lemma3.3/{label}/L_{n}", wanted, computed, t0))
    return reports


def suite_tensor_hh():
    """Tensor algebras: 1 - tau small complexes against the full complex."""
    reports = []
    for dim in (1, 2, 3):
        t0 = time.time()
        t_alg = alg.make_tensor_algebra(dim, 5)
        direct = hochschild_homology(t_alg, n_max=5)
        small = tensor_algebra_hh(dim, 5)
        low = {k: v for k, v in direct.items() if k[0] in (0, 1)}
        reports.append(_report(f"Thm1.2/dimV={dim}/HH0-HH1", small, low, t0))
        t0 = time.time()
        vanishing = {k: str(v) for k, v in direct.items() if 2 <= k[0] <= 4}
        reports.append(_report(f"Thm1.2/dimV={dim}/HH2-4=0", {}, vanishing, t0))
    return reports


def _symmetric_expected(n_vars, q_max, k_max):
    """dim (S(V) ⊗ Λ^k V)_j with the exterior generator in degree 1."""
    out = {}
    for k in range(k_max + 1):
        wedge = comb(n_vars, k)
        if wedge == 0:
            continue
        for j in range(k, q_max + 1):
            d = j - k
            out[(k, j)] = wedge * comb(d + n_vars - 1, n_vars - 1)
    return {k: v for k, v in out.items() if v}


def suite_symmetric_hh():
    """Polynomial rings: free ranks match S(V) ⊗ Λ^k V, no torsion."""
    reports = []
    for n_vars in (1, 2):
        t0 = time.time()
        ring = alg.make_polynomial_ring(n_vars, 4)
        h = hochschild_homology(ring, n_max=4)
        free = {k: s.free_rank for k, s in h.items() if s.free_rank and k[0] <= 3}
        torsion = {k: list(s.torsion) for k, s in h.items() if s.torsion}
        expected = _symmetric_expected(n_vars, 4, 3)
        reports.append(_report(f"Thm1.3/vars={n_vars}/free", expected, free, t0))
        reports.append(_report(f"Thm1.3/vars={n_vars}/torsion-free", {}, torsion, t0))
    return reports


def _poly_gcd_degree(coeffs):
    """deg gcd(p, p') over Q by the Euclidean algorithm on Fractions."""
    from fractions import Fraction

    def norm(p):
        while p and p[-1] == 0:
            p.pop()
        return p

    a = norm([Fraction(c) for c in coeffs])
    b = norm([Fraction(k * coeffs[k]) for k in range(1, len(coeffs))])
    while b:
        while len(a) >= len(b):
            f = a[-1] / b[-1]
            shift = len(a) - len(b)
            for i, c in enumerate(b):
                a[i + shift] -= f * c
            a = norm(a)
            if not a:
                break
        a, b = b, a
    return len(a) - 1


def suite_poly_quotient_hh():
    """Z[x]/(p): small complex vs full complex; ranks equal deg gcd(p, p')."""
    cases = [
        ("x^2", [0, 0, 1]),
        ("x^3", [0, 0, 0, 1]),
        ("x^4", [0, 0, 0, 0, 1]),
        ("x^2-1", [-1, 0, 1]),
        ("x^3-x", [0, -1, 0, 1]),
    ]
    reports = []
    for label, coeffs in cases:
        t0 = time.time()
        small = small_complex_homology(coeffs, 4)
        direct = hochschild_homology(alg.make_poly_quotient(coeffs), n_max=5)
        reports.append(_report(f"Thm4.6/p={label}/small-vs-direct(n<=4)", dict(small), dict(direct), t0))
        t0 = time.time()
        g = _poly_gcd_degree(coeffs)
        ranks = sorted({sum(s.free_rank for (n, _), s in small.items() if n == i) for i in (1, 2, 3, 4)})
        reports.append(_report(f"Thm4.6/p={label}/rank=deg gcd(p,p')", [g], ranks, t0))
    for m_plus_1 in (2, 3, 4):
        t0 = time.time()
        m = m_plus_1 - 1
        h = small_complex_homology([0] * m_plus_1 + [1], 4)
        computed = {}
        for i in (1, 2, 3, 4):
            total = HomologySummary(0)
            for (n, _), s in h.items():
                if n == i:
                    total = total.direct_sum(s)
            computed[i] = str(total)
        odd = str(HomologySummary(m, [m_plus_1] if m_plus_1 > 1 else []))
        even = str(HomologySummary(m))
        expected = {1: odd, 2: even, 3: odd, 4: even}
        reports.append(_report(f"Thm4.6(ii)/m+1={m_plus_1}", expected, computed, t0))
    return reports


def _cor41_formula(n, q_max, h0_exponent):
    """(q/(1-q))^e + t^(n-2) q/(1-q), as {(i, j): rank} up to q_max."""
    out = {}
    for j in range(1, q_max + 1):
        out[(n - 2, j)] = out.get((n - 2, j), 0) + 1
    for j in range(h0_exponent, q_max + 1):
        out[(0, j)] = out.get((0, j), 0) + comb(j - 1, h0_exponent - 1)
    return {k: v for k, v in out.items() if v}


def suite_cor41():
    """Polygons over Z[x]: printed closed form vs the proof's closed form.

    The printed Poincaré polynomial keeps the exponent 3 from the triangle
    case; the corollary's own proof (Euler characteristic against the
    chromatic polynomial, plus the polygon/Hochschild comparison) forces
    exponent n on the degree-0 part.  Both readings are reported; the
    printed one fails for n > 3.
    """
    q_max = 8
    ring = alg.make_polynomial_ring(1, q_max)
    reports = []
    for n in range(3, 7):
        t0 = time.time()
        h = graph_cohomology(polygon(n), ring)
        free = {k: s.free_rank for k, s in h.items() if s.free_rank}
        torsion = {k: list(s.torsion) for k, s in h.items() if s.torsion}
        elapsed = t0
        reports.append(_report(f"Cor4.1/P_{n}/free-of-torsion", {}, torsion, elapsed))
        reports.append(_report(
            f"Cor4.1/P_{n}/proof-formula(exponent n)",
            _cor41_formula(n, q_max, n), free, elapsed))
        note = "printed formula keeps the triangle exponent; its own proof gives exponent n"
        reports.append(_report(
            f"Cor4.1/P_{n}/printed-formula(exponent 3)",
            _cor41_formula(n, q_max, 3), free, elapsed,
            note=note if n > 3 else ""))
        t0 = time.time()
        euler = euler_characteristic_check(polygon(n), ring)
        reports.append(VerificationReport(
            f"Cor4.1/P_{n}/euler-vs-chromatic", euler.ok, euler.chromatic_side,
            euler.homology_side, time.time() - t0))
    return reports


def suite_euler():
    """Graded Euler characteristic equals the chromatic polynomial, 10 graphs."""
    a2 = alg.make_truncated_poly(2)
    a3 = alg.make_truncated_poly(3)
    graphs = [
        ("1-vertex", Graph(1, []), a2),
        ("edgeless-3", Graph(3, []), a3),
        ("1-edge", Graph(2, [(0, 1)]), a2),
        ("P_3", polygon(3), a2),
        ("P_3/A3", polygon(3), a3),
        ("P_4", polygon(4), a2),
        ("L_3", line_graph(3), a3),
        ("theta", theta_graph(), a2),
        ("2-gon", Graph(2, [(0, 1), (1, 0)]), a3),
        ("loop+edge", Graph(2, [(0, 0), (0, 1)]), a2),
    ]
    reports = []
    for label, graph, a in graphs:
        t0 = time.time()
        rep = euler_characteristic_check(graph, a)
        reports.append(VerificationReport(
            f"euler/{label}", rep.ok, rep.chromatic_side, rep.homology_side, time.time() - t0))
    return reports


def suite_tait():
    """Thm 2.7: graph cohomology vs the Khovanov cube on Tait graphs."""
    graphs = [(f"P_{n}", polygon(n)) for n in range(3, 7)]
    graphs += [("L_2", line_graph(2)), ("theta", theta_graph())]
    reports = []
    for label, graph in graphs:
        t0 = time.time()
        rep = verify_theorem_2_7(graph)
        reports.append(VerificationReport(
            f"Thm2.7/{label}", rep.ok, f"iso below girth-1={rep.girth - 1 if rep.girth != inf else 'inf'}, torsion at it",
            "verified" if rep.ok else rep.failures(), time.time() - t0))
        t0 = time.time()
        spg = SignedPlaneGraph.all_negative(graph)
        kh = khovanov_homology(spg, alg.make_truncated_poly(2))
        lhs = bracket_state_sum(spg)
        rhs = homology_euler_characteristic(kh, spg.writhe_offset())
        reports.append(_report(f"Thm2.7/{label}/bracket-euler", lhs, rhs, t0))
    return reports


def suite_cube_invariants():
    """d² = 0 and the one-step circle-count dichotomy on the tested cubes."""
    a2 = alg.make_truncated_poly(2)
    a3 = alg.make_truncated_poly(3)
    cubes = [
        ("T(2,-3)/A2", torus_link_tait_graph(2, -3), a2),
        ("T(2,-5)/A3", torus_link_tait_graph(2, -5), a3),
        ("theta/A2", SignedPlaneGraph.all_negative(theta_graph()), a2),
        ("mixed-P3", SignedPlaneGraph(polygon(3), [-1, 1, -1]), a2),
        ("L_2/A2", SignedPlaneGraph.all_negative(line_graph(2)), a2),
    ]
    reports = []
    for label, spg, a in cubes:
        if isinstance(spg, Graph):
            spg = SignedPlaneGraph.all_negative(spg)
        t0 = time.time()
        cx = khovanov_complex(spg, a)
        cx.check_d_squared()
        ne = spg.graph.edge_count
        neg = spg.neg_mask
        steps_ok = True
        for mask in range(1 << ne):
            for e in range(ne):
                is_neg = bool(neg >> e & 1)
                in_s = bool(mask >> e & 1)
                if is_neg == in_s:
                    continue
                tmask = mask | (1 << e) if is_neg else mask & ~(1 << e)
                if abs(circle_count(spg, tmask) - circle_count(spg, mask)) != 1:
                    steps_ok = False
        reports.append(VerificationReport(
            f"cube/{label}", steps_ok, "d²=0 and ±1 circle steps",
            "verified" if steps_ok else "circle step violated", time.time() - t0))
    return reports


SUITES = {
    "truncated-hh": (suite_truncated_hh, ("thm4.2",)),
    "polygon-iso": (suite_polygon_iso, ("thm3.1",)),
    "torus-torsion": (suite_torus_torsion, ("cor4.4",)),
    "polygon-torsion": (suite_polygon_torsion, ("cor4.3",)),
    "line-acyclic": (suite_line_acyclic, ("lemma3.3",)),
    "tensor-hh": (suite_tensor_hh, ("thm1.2",)),
    "symmetric-hh": (suite_symmetric_hh, ("thm1.3",)),
    "poly-quotient-hh": (suite_poly_quotient_hh, ("thm4.6",)),
    "polygon-polyring": (suite_cor41, ("cor4.1",)),
    "euler": (suite_euler, ()),
    "tait": (suite_tait, ("thm2.7",)),
    "cube-invariants": (suite_cube_invariants, ()),
}


def suite_names():
    return sorted(SUITES)


def resolve_suite(name):
    key = name.strip().lower()
    if key in SUITES:
        return key
    for canonical, (_, aliases) in SUITES.items():
        if key in aliases:
            return canonical
    return None


def run_suite(name):
    """Run one suite (or ``all``); returns the list of reports."""
    if name == "all":
        reports = []
        for key in suite_names():
            reports.extend(SUITES[key][0]())
        return reports
    key = resolve_suite(name)
    if key is None:
        raise KeyError(name)
    return SUITES[key][0]()
