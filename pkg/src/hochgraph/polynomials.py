"""Tiny exact polynomial helpers: bivariate (t, q) tallies and truncated
q-series, used for Poincaré polynomials and Euler-characteristic checks."""


class Poly2:
    """Integer polynomial in t and q, stored as {(t_exp, q_exp): coeff}."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for (i, j), c in terms.items():
                if c:
                    self.terms[(int(i), int(j))] = int(c)

    def __eq__(self, other):
        if not isinstance(other, Poly2):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other):
        acc = dict(self.terms)
        for key, c in other.terms.items():
            acc[key] = acc.get(key, 0) + c
        return Poly2(acc)

    def coefficient(self, i, j):
        return self.terms.get((i, j), 0)

    def substitute_t(self, value):
        """Evaluate t at an integer, leaving a q-series dict {q_exp: coeff}."""
        out = {}
        for (i, j), c in self.terms.items():
            out[j] = out.get(j, 0) + c * value**i
        return {j: c for j, c in sorted(out.items()) if c}

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for (i, j), c in sorted(self.terms.items()):
            factors = []
            if c != 1 or (i == 0 and j == 0):
                factors.append(str(c))
            if i == 1:
                factors.append("t")
            elif i > 1:
                factors.append(f"t^{i}")
            if j == 1:
                factors.append("q")
            elif j > 1:
                factors.append(f"q^{j}")
            pieces.append(" ".join(factors))
        return " + ".join(pieces)

    def __repr__(self):
        return f"Poly2({self})"


def series_mul(a, b, q_max):
    """Product of truncated q-series given as {exp: coeff} dicts."""
    out = {}
    for i, c in a.items():
        if i > q_max:
            continue
        for j, d in b.items():
            k = i + j
            if k <= q_max:
                out[k] = out.get(k, 0) + c * d
    return {k: v for k, v in sorted(out.items()) if v}

def series_pow(a, n, q_max):
    out = {0: 1}
    for _ in range(n):
        out = series_mul(out, a, q_max)
    return out

def series_add(a, b):
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + v
    return {k: v for k, v in sorted(out.items()) if v}

def series_scale(a, c):
    return {k: v * c for k, v in a.items() if v * c}

def geometric(q_max):
    """q + q^2 + ... + q^q_max, the graded rank series of (x) in Z[x]."""
    return {j: 1 for j in range(1, q_max + 1)}


def poly_eval_series(coeffs, lam, q_max):
    """Evaluate an integer polynomial (coefficient list, degree ascending)
    at a truncated q-series."""
    out = {}
    power = {0: 1}
    for c in coeffs:
        if c:
            out = series_add(out, series_scale(power, c))
        power = series_mul(power, lam, q_max)
    return out
