"""Type A_n Cartan data and the Laurent ring of loop weights.

Variables Y[i,k] carry a node index i in 1..n and an integer shift k.
Monomials are finitely supported exponent maps, combinations are integer
linear combinations of monomials.  This ring is the codomain of the
q-character map; everything downstream (snake characters, the dominant
monomial census, composition series) is computed inside it.
"""

from fractions import Fraction


class CartanData:
    """Cartan matrix and adjacency for type A_n."""

    def __init__(self, n):
        if n < 1:
            raise ValueError("rank must be positive")
        self.n = n

    def a(self, i, j):
        self._check(i)
        self._check(j)
        if i == j:
            return 2
        return -1 if abs(i - j) == 1 else 0

    def neighbours(self, i):
        self._check(i)
        return [j for j in (i - 1, i + 1) if 1 <= j <= self.n]

    def _check(self, i):
        if not 1 <= i <= self.n:
            raise ValueError(f"node {i} out of range 1..{self.n}")


class ClassicalWeight:
    """Integer vector over the fundamental weights omega_1..omega_n."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = tuple(int(c) for c in coeffs)

    def __add__(self, other):
        return ClassicalWeight(a + b for a, b in zip(self.coeffs, other.coeffs))

    def __neg__(self):
        return ClassicalWeight(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return isinstance(other, ClassicalWeight) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"ClassicalWeight({list(self.coeffs)})"

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)


def simple_root(cartan, i):
    # alpha_i = sum_j a_ji omega_j; symmetric Cartan matrix in type A
    return ClassicalWeight(cartan.a(j, i) for j in range(1, cartan.n + 1))


class LoopMonomial:
    """Product of Y[i,k]^e factors, stored as a map (i,k) -> e, no zeros."""

    __slots__ = ("exps",)

    def __init__(self, exps=None):
        clean = {}
        if exps:
            for key, e in dict(exps).items():
                i, k = key
                if e:
                    clean[(int(i), int(k))] = int(e)
        self.exps = clean

    def key(self):
        """Canonical sort key: the sorted (i, k, exponent) triples."""
        return tuple((i, k, e) for (i, k), e in sorted(self.exps.items()))

    def __mul__(self, other):
        exps = dict(self.exps)
        for key, e in other.exps.items():
            exps[key] = exps.get(key, 0) + e
        return LoopMonomial(exps)

    def inverse(self):
        return LoopMonomial({key: -e for key, e in self.exps.items()})

    def __pow__(self, p):
        return LoopMonomial({key: p * e for key, e in self.exps.items()})

    def __eq__(self, other):
        return isinstance(other, LoopMonomial) and self.exps == other.exps

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        if not self.exps:
            return "1"
        return " ".join(f"Y[{i},{k}]^{e}" for (i, k), e in sorted(self.exps.items()))


def y_var(i, k, e=1):
    return LoopMonomial({(i, k): e})


ONE = LoopMonomial()


def a_var(cartan, i, k):
    """The affine simple-root monomial A[i,k] as a LoopMonomial.

    A[i,k] = Y[i,k+1] Y[i,k-1] prod_{j adjacent to i} Y[j,k]^(-1).
    """
    cartan._check(i)
    exps = {(i, k + 1): 1, (i, k - 1): 1}
    for j in cartan.neighbours(i):
        exps[(j, k)] = exps.get((j, k), 0) - 1
    return LoopMonomial(exps)


def wt_of(m, n):
    """Classical weight of a monomial: each Y[i,k]^e contributes e*omega_i."""
    coeffs = [0] * n
    for (i, _k), e in m.exps.items():
        coeffs[i - 1] += e
    return ClassicalWeight(coeffs)


def is_dominant(m):
    return all(e > 0 for e in m.exps.values())


def is_antidominant(m):
    return all(e < 0 for e in m.exps.values())


class LaurentCombination:
    """Integer combination of loop monomials, stored monomial -> coefficient."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for m, c in dict(terms).items():
                if c:
                    clean[m] = int(c)
        self.terms = clean

    @staticmethod
    def from_monomial(m, c=1):
        return LaurentCombination({m: c})

    @staticmethod
    def unit():
        return LaurentCombination({ONE: 1})

    @staticmethod
    def zero():
        return LaurentCombination()

    def __add__(self, other):
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return LaurentCombination(terms)

    def __sub__(self, other):
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) - c
        return LaurentCombination(terms)

    def __neg__(self):
        return LaurentCombination({m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentCombination({m: other * c for m, c in self.terms.items()})
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 * m2
                out[m] = out.get(m, 0) + c1 * c2
        return LaurentCombination(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, LaurentCombination) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __len__(self):
        return len(self.terms)

    def is_zero(self):
        return not self.terms

    def coeff(self, m):
        return self.terms.get(m, 0)

    def shifted(self, s):
        """Shift every second index k by s."""
        out = {}
        for m, c in self.terms.items():
            ms = LoopMonomial({(i, k + s): e for (i, k), e in m.exps.items()})
            out[ms] = out.get(ms, 0) + c
        return LaurentCombination(out)

    def total(self):
        """Sum of coefficients, i.e. the evaluation at all Y[i,k] = 1.

        For the q-character of a module this is the dimension.
        """
        return sum(self.terms.values())

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = [f"{c}*({m!r})" for m, c in sorted(self.terms.items(), key=lambda t: t[0].key())]
        return " + ".join(parts)


def multiply(p, q):
    return p * q


def dominant_monomials(p):
    """Dominant monomials of a combination with their coefficients.

    Deterministic order: lexicographic on the canonical monomial key.
    """
    out = [(m, c) for m, c in p.terms.items() if is_dominant(m)]
    out.sort(key=lambda t: t[0].key())
    return out


def antidominant_monomials(p):
    out = [(m, c) for m, c in p.terms.items() if is_antidominant(m)]
    out.sort(key=lambda t: t[0].key())
    return out


def a_decompose(cartan, m):
    """Write m as prod A[i,k]^(-c_ik) with all c_ik >= 0, or return None.

    The candidate support window is read off from m: a factor A[i,k] can
    contribute only if one of its five variables meets the support of m,
    so k ranges over [kmin-1, kmax+1].  The resulting integer linear
    system has at most one solution (A-monomials are multiplicatively
    independent over any finite window); it is solved exactly by Gaussian
    elimination over Q and accepted only if integral and nonnegative.
    """
    if not m.exps:
        return {}
    n = cartan.n
    ks = [k for (_i, k) in m.exps]
    kmin, kmax = min(ks) - 1, max(ks) + 1
    unknowns = [(i, k) for i in range(1, n + 1) for k in range(kmin, kmax + 1)]
    avars = {u: a_var(cartan, *u) for u in unknowns}
    rows = sorted(set(key for a in avars.values() for key in a.exps) | set(m.exps))
    # columns: -exponent vectors of the A-monomials; rhs: exponents of m
    mat = [[Fraction(-avars[u].exps.get(r, 0)) for u in unknowns] for r in rows]
    rhs = [Fraction(m.exps.get(r, 0)) for r in rows]
    sol = _solve_exact(mat, rhs)
    if sol is None:
        return None
    out = {}
    for u, c in zip(unknowns, sol):
        if c.denominator != 1 or c < 0:
            return None
        if c:
            out[u] = int(c)
    return out


def _solve_exact(mat, rhs):
    """Solve an overdetermined rational system; None if inconsistent.

    Assumes full column rank on the consistent part (true for A-monomial
    systems); free columns are set to zero.
    """
    nrows = len(mat)
    ncols = len(mat[0]) if nrows else 0
    aug = [row[:] + [rhs[r]] for r, row in enumerate(mat)]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for rr in range(r, nrows):
            if aug[rr][c]:
                piv = rr
                break
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for rr in range(nrows):
            if rr != r and aug[rr][c]:
                f = aug[rr][c]
                aug[rr] = [x - f * y for x, y in zip(aug[rr], aug[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    for rr in range(r, nrows):
        if aug[rr][ncols]:
            return None
    sol = [Fraction(0)] * ncols
    for row_i, c in enumerate(pivots):
        sol[c] = aug[row_i][ncols]
    return sol


def to_text(p):
    """Serialize a combination, one monomial per line: 'coeff Y[i,k]^e ...'.

    Lines are sorted by the canonical monomial key, so equal combinations
    serialize byte-identically.
    """
    lines = []
    for m, c in sorted(p.terms.items(), key=lambda t: t[0].key()):
        parts = [str(c)]
        parts += [f"Y[{i},{k}]^{e}" for (i, k), e in sorted(m.exps.items())]
        lines.append(" ".join(parts))
    return "\n".join(lines) + ("\n" if lines else "")


def from_text(text):
    terms = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        c = int(fields[0])
        exps = {}
        for f in fields[1:]:
            head, e = f.split("^")
            assert head.startswith("Y[") and head.endswith("]"), f"bad variable {f}"
            i, k = head[2:-1].split(",")
            key = (int(i), int(k))
            exps[key] = exps.get(key, 0) + int(e)
        m = LoopMonomial(exps)
        terms[m] = terms.get(m, 0) + c
    return LaurentCombination(terms)
