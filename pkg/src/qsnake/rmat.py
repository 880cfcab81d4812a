"""Rational R-matrices of type A_n and the symbolic prefactor calculus.

Everything acts on concrete coordinate spaces: the fundamental V has
basis e_0..e_n, the antifundamental is carried on the same coordinates
through the dual basis, with the charge conjugation C (index reversal)
mediating between them.  Same-kind vertices are x*1 + P, mixed-kind
vertices are (x + (n+1)/2)*1 - K where K is the rank-1 singlet operator.
The transcendental scalar prefactor rho is never evaluated; it is carried
formally and removed through its two functional relations.
"""

from fractions import Fraction

import numpy as np

from .exactlin import LabeledTensor, Leg, RatFun, tensor_from_matrix

RKIND_VALUES = ("ff", "f-fbar", "fbar-f", "fbar-fbar")


class RKind:
    """Which pair of spaces an R-matrix acts on."""

    def __init__(self, value):
        if value not in RKIND_VALUES:
            raise ValueError(f"kind must be one of {RKIND_VALUES}")
        self.value = value
        if value == "ff":
            self.first, self.second = "f", "f"
        else:
            a, _, b = value.partition("-")
            # partition splits 'fbar-fbar' correctly; 'f-fbar' too
            self.first, self.second = a, b

    def mixed(self):
        return self.first != self.second

    def __eq__(self, other):
        return isinstance(other, RKind) and self.value == other.value

    def __repr__(self):
        return f"RKind({self.value!r})"


def h_shift(n):
    return Fraction(n + 1, 2)


def identity_matrix(dim):
    m = np.full((dim, dim), Fraction(0), dtype=object)
    for i in range(dim):
        m[i, i] = Fraction(1)
    return m


def permutation_matrix(n):
    d = n + 1
    m = np.full((d * d, d * d), Fraction(0), dtype=object)
    for i in range(d):
        for j in range(d):
            m[i * d + j, j * d + i] = Fraction(1)
    return m


def k_matrix(n):
    """The rank-1 operator |s><s| with s the invariant pair vector."""
    d = n + 1
    m = np.full((d * d, d * d), Fraction(0), dtype=object)
    for i in range(d):
        for k in range(d):
            m[i * d + (n - i), k * d + (n - k)] = Fraction(1)
    return m


def charge_conj_matrix(n):
    d = n + 1
    m = np.full((d, d), Fraction(0), dtype=object)
    for i in range(d):
        m[i, n - i] = Fraction(1)
    return m


def vertex_matrix(n, kind1, kind2, x):
    """Numerical vertex for the requested pair of kinds.

    Same kinds: x*1 + P.  Mixed kinds: (x + h)*1 - K, h = (n+1)/2.  The
    argument may be a Fraction or a RatFun; entries inherit the type.
    """
    for k in (kind1, kind2):
        if k not in ("f", "fbar"):
            raise ValueError(f"kind must be 'f' or 'fbar', got {k!r}")
    d = n + 1
    if kind1 == kind2:
        base = permutation_matrix(n)
        shift = x
    else:
        base = -k_matrix(n)
        shift = x + h_shift(n)
    out = base.copy()
    for i in range(d * d):
        out[i, i] = out[i, i] + shift
    return out


def _wrap(mat, n, labels=("a", "b")):
    d = n + 1
    a, b = labels
    return tensor_from_matrix(
        mat, [f"{a}_out", f"{b}_out"], [f"{a}_in", f"{b}_in"], [d, d]
    )


def r_num(n, lam, labels=("a", "b")):
    """The numerical same-kind R-matrix lam*1 + P as a labeled tensor."""
    return _wrap(vertex_matrix(n, "f", "f", lam), n, labels)


def charge_conj(n):
    return tensor_from_matrix(charge_conj_matrix(n), ["out"], ["in"], [n + 1])


def singlet_vector(n, side="fbar-f"):
    """The invariant pair vector, normalized so <s|s> = n+1.

    Component on e_0 paired with its conjugate partner is +1; this is the
    residual sign choice, everything downstream is insensitive to it.
    """
    if side not in ("fbar-f", "f-fbar"):
        raise ValueError("side must be 'fbar-f' or 'f-fbar'")
    d = n + 1
    vec = np.full((d, d), Fraction(0), dtype=object)
    for i in range(d):
        vec[i, n - i] = Fraction(1)
    k1, k2 = side.split("-")
    return LabeledTensor([Leg(f"{k1}_out", "out", d), Leg(f"{k2}_out", "out", d)], vec)


def singlet_projector(n, side="fbar-f"):
    """(singlet x dual)/(n+1): the rank-1 idempotent onto the pair singlet."""
    if side not in ("fbar-f", "f-fbar"):
        raise ValueError("side must be 'fbar-f' or 'f-fbar'")
    mat = k_matrix(n) * Fraction(1, n + 1)
    return _wrap(mat, n)


def rbar_num(n, lam, kind="f-fbar"):
    """Mixed-kind vertex (lam + (n+1)/2)*1 - K as a labeled tensor."""
    rk = RKind(kind)
    if not rk.mixed():
        raise ValueError("rbar acts on a mixed fundamental/antifundamental pair")
    return _wrap(vertex_matrix(n, rk.first, rk.second, lam), n)


def r_dual_dual(n, lam):
    """R on two antifundamental spaces: conjugate both legs of r.

    (C x C) r(lam) (C x C); numerically this lands back on lam*1 + P.
    """
    cc = np.kron(charge_conj_matrix(n), charge_conj_matrix(n))
    mat = cc @ vertex_matrix(n, "f", "f", lam) @ cc
    return _wrap(mat, n)


def antisym_fusion(n):
    """Split r(-1) = P - 1 through the antisymmetric square.

    Returns (F_de, F_fu) with F_fu . F_de = r(-1) on V x V and
    F_de . F_fu = -2 on the wedge space.
    """
    d = n + 1
    pairs = [(a, b) for a in range(d) for b in range(a + 1, d)]
    nw = len(pairs)
    de = np.full((nw, d, d), Fraction(0), dtype=object)
    for p, (a, b) in enumerate(pairs):
        de[p, a, b] = Fraction(1)
        de[p, b, a] = Fraction(-1)
    f_de = LabeledTensor(
        [Leg("wedge_out", "out", nw), Leg("a_in", "in", d), Leg("b_in", "in", d)], de
    )
    fu = np.full((d, d, nw), Fraction(0), dtype=object)
    for p, (a, b) in enumerate(pairs):
        fu[a, b, p] = Fraction(-1)
        fu[b, a, p] = Fraction(1)
    f_fu = LabeledTensor(
        [Leg("a_out", "out", d), Leg("b_out", "out", d), Leg("wedge_in", "in", nw)], fu
    )
    return f_de, f_fu


def chevalley_generators(n):
    """Triples (e_i, f_i, h_i) of the standard action on V, i = 1..n."""
    d = n + 1

    def unit(r, c):
        m = np.full((d, d), Fraction(0), dtype=object)
        m[r, c] = Fraction(1)
        return m

    out = []
    for i in range(1, n + 1):
        out.append((unit(i - 1, i), unit(i, i - 1), unit(i - 1, i - 1) - unit(i, i)))
    return out


class PrefactorExpr:
    """Formal product of rho(sign*lam + shift)^exp factors times a RatFun.

    The first functional relation rho(x)rho(-x) = 1 is wired in as the
    canonical form rho(-lam + s) = rho(lam - s)^(-1), so factors are
    stored with positive lam coefficient only.  The second relation
    rho(x)rho(n+1-x) = x(x-(n+1))/((x-1)(x-n)) then acts on factor pairs
    whose shifts differ by exactly n+1 with opposite exponents.
    """

    def __init__(self, n, rational=None, factors=None):
        self.n = int(n)
        self.rational = RatFun.coerce(rational if rational is not None else 1)
        clean = {}
        if factors:
            for shift, e in dict(factors).items():
                if e:
                    clean[Fraction(shift)] = int(e)
        self.factors = clean

    @staticmethod
    def rho(n, shift=0, power=1, lam_sign=1):
        """A single rho(lam_sign*lam + shift)^power factor."""
        shift = Fraction(shift)
        if lam_sign == 1:
            return PrefactorExpr(n, 1, {shift: power})
        if lam_sign == -1:
            return PrefactorExpr(n, 1, {-shift: -power})
        raise ValueError("lam_sign must be +1 or -1")

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, RatFun)):
            return PrefactorExpr(self.n, self.rational * other, self.factors)
        if other.n != self.n:
            raise ValueError("rank mismatch in prefactor product")
        factors = dict(self.factors)
        for s, e in other.factors.items():
            factors[s] = factors.get(s, 0) + e
        return PrefactorExpr(self.n, self.rational * other.rational, factors)

    __rmul__ = __mul__

    def is_rational(self):
        return not self.factors

    def surviving(self):
        return sorted(self.factors.items())

    def reduce(self):
        """Apply the second relation greedily to a fixed point.

        Combining both relations gives the ladder identity
        rho(y)/rho(y-(n+1)) = y(y-(n+1))/((y-1)(y-n)), so any two factors
        with opposite exponents whose shifts differ by a positive integer
        multiple of n+1 contract, one rung at a time.
        """
        step = self.n + 1
        x = RatFun.x()
        factors = {s: e for s, e in self.factors.items() if e}
        rational = self.rational

        def has_partner_below(s, e):
            for t, et in factors.items():
                if t >= s or et * e >= 0:
                    continue
                q = (s - t) / step
                if q.denominator == 1:
                    return True
            return False

        changed = True
        while changed:
            changed = False
            for s in sorted(factors):
                e = factors.get(s, 0)
                if not e or not has_partner_below(s, e):
                    continue
                y = x + RatFun.const(s)
                rung = (y * (y - step)) / ((y - 1) * (y - self.n))
                if e > 0:
                    rational = rational * rung
                    factors[s] = e - 1
                    factors[s - step] = factors.get(s - step, 0) + 1
                else:
                    rational = rational / rung
                    factors[s] = e + 1
                    factors[s - step] = factors.get(s - step, 0) - 1
                changed = True
                break
        factors = {s: e for s, e in factors.items() if e}
        return PrefactorExpr(self.n, rational, factors)

    def __repr__(self):
        parts = [f"({self.rational!r})"]
        for s, e in sorted(self.factors.items()):
            parts.append(f"rho(lam{'+' if s >= 0 else '-'}{abs(s)})^{e}")
        return " * ".join(parts)


def prefactor_reduce(e):
    """Reduce; returns the exact RatFun if every rho cancels, else the
    reduced expression, whose surviving() lists the leftover factors."""
    red = e.reduce()
    if red.is_rational():
        return red.rational
    return red
