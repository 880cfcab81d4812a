"""Exact scalars and labeled tensors.

Two scalar carriers: Fraction for plain rationals and RatFun for univariate
rational functions with integer-coefficient numerator and denominator in
canonical form.  LabeledTensor wraps a dense object array with named,
oriented legs; contraction pairs an in-leg with an out-leg and is
independent of pairing order.  No floating point anywhere.
"""

import random
from fractions import Fraction
from math import gcd, lcm

import numpy as np

# polynomials are tuples of coefficients, ascending, no trailing zeros


def _trim(cs):
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def _padd(p, q):
    m = max(len(p), len(q))
    return _trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(m)])


def _pneg(p):
    return tuple(-c for c in p)


def _pmul(p, q):
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return _trim(out)


def _pdivmod(p, q):
    # over Q; q nonzero
    p = [Fraction(c) for c in p]
    quot = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
    lead = Fraction(q[-1])
    while len(p) >= len(q) and _trim(p):
        d = len(p) - len(q)
        c = p[-1] / lead
        quot[d] = c
        for i, b in enumerate(q):
            p[i + d] -= c * b
        p = list(_trim(p))
    return _trim(quot), _trim(p)


def _pgcd(p, q):
    p, q = _trim(p), _trim(q)
    while q:
        _, r = _pdivmod(p, q)
        p, q = q, r
    if not p:
        return ()
    inv = 1 / Fraction(p[-1])
    return tuple(c * inv for c in p)  # monic


def _peval(p, a):
    out = Fraction(0)
    for c in reversed(p):
        out = out * a + c
    return out


def _pderiv(p):
    return _trim([i * c for i, c in enumerate(p)][1:])


def _clear_denoms(p):
    # integer coefficients; content is reduced jointly with the other side
    if not p:
        return ()
    den = lcm(*[Fraction(c).denominator for c in p])
    return tuple(int(Fraction(c) * den) for c in p)


class RatFun:
    """Univariate rational function, canonical integer-coefficient form.

    Canonical: numerator and denominator coprime over Q, integer contents
    with gcd 1 across the pair, denominator leading coefficient positive.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=(1,)):
        num = _trim(num if isinstance(num, (tuple, list)) else (num,))
        den = _trim(den if isinstance(den, (tuple, list)) else (den,))
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            self.num, self.den = (), (1,)
            return
        g = _pgcd(num, den)
        if len(g) > 1:
            num, _ = _pdivmod(num, g)
            den, _ = _pdivmod(den, g)
        num = _clear_denoms(num)
        den = _clear_denoms(den)
        cg = gcd(*(abs(c) for c in num), *(abs(c) for c in den))
        num = tuple(c // cg for c in num)
        den = tuple(c // cg for c in den)
        if den[-1] < 0:
            num, den = _pneg(num), _pneg(den)
        self.num, self.den = num, den

    @staticmethod
    def const(c):
        c = Fraction(c)
        return RatFun((c.numerator,), (c.denominator,))

    @staticmethod
    def x():
        return RatFun((0, 1))

    @staticmethod
    def coerce(v):
        if isinstance(v, RatFun):
            return v
        return RatFun.const(v)

    def is_zero(self):
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def __add__(self, other):
        other = RatFun.coerce(other)
        return RatFun(
            _padd(_pmul(self.num, other.den), _pmul(other.num, self.den)),
            _pmul(self.den, other.den),
        )

    __radd__ = __add__

    def __neg__(self):
        return RatFun(_pneg(self.num), self.den)

    def __sub__(self, other):
        return self + (-RatFun.coerce(other))

    def __rsub__(self, other):
        return RatFun.coerce(other) + (-self)

    def __mul__(self, other):
        other = RatFun.coerce(other)
        return RatFun(_pmul(self.num, other.num), _pmul(self.den, other.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = RatFun.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFun(_pmul(self.num, other.den), _pmul(self.den, other.num))

    def __rtruediv__(self, other):
        return RatFun.coerce(other) / self

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFun.const(other)
        return isinstance(other, RatFun) and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __call__(self, a):
        a = Fraction(a)
        d = _peval(self.den, a)
        if d == 0:
            raise ZeroDivisionError(f"pole at {a}")
        return _peval(self.num, a) / d

    def __repr__(self):
        def side(p):
            if not p:
                return "0"
            parts = []
            for i, c in enumerate(p):
                if c == 0:
                    continue
                if i == 0:
                    parts.append(str(c))
                elif i == 1:
                    parts.append(f"{c}*x")
                else:
                    parts.append(f"{c}*x^{i}")
            return " + ".join(parts)

        if self.den == (1,):
            return side(self.num)
        return f"({side(self.num)})/({side(self.den)})"


def ratfun_arith(op, f, g=None):
    """Dispatch arithmetic by name; the operators are also available directly."""
    f = RatFun.coerce(f)
    if op == "neg":
        return -f
    g = RatFun.coerce(g)
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    if op == "div":
        return f / g
    raise ValueError(f"unknown op {op!r}")


def _root_multiplicity(p, a):
    a = Fraction(a)
    mult = 0
    p = tuple(Fraction(c) for c in p)
    while p and _peval(p, a) == 0:
        # synthetic division by (x - a); Horner values b_i = p_i + a*b_{i+1}
        horner = []
        carry = Fraction(0)
        for c in reversed(p):
            carry = c + carry * a
            horner.append(carry)
        p = _trim(reversed(horner[:-1]))
        mult += 1
    return mult


def pole_order_at(f, a):
    """Order of the pole of f at a; 0 if regular nonzero, negative for zeros."""
    if f.is_zero():
        raise ValueError("pole order of the zero function is undefined")
    a = Fraction(a)
    dz = _root_multiplicity(f.den, a)
    if dz:
        return dz  # canonical form: numerator cannot share the root
    return -_root_multiplicity(f.num, a)


def residue_at(f, a):
    """Coefficient of 1/(x-a); requires at most a simple pole."""
    a = Fraction(a)
    order = pole_order_at(f, a)
    if order >= 2:
        raise ValueError(f"pole of order {order} at {a}")
    if order <= 0:
        return Fraction(0)
    return _peval(f.num, a) / _peval(_pderiv(f.den), a)


class Leg:
    __slots__ = ("label", "orient", "dim")

    def __init__(self, label, orient, dim):
        if orient not in ("in", "out"):
            raise ValueError("orientation must be 'in' or 'out'")
        self.label = label
        self.orient = orient
        self.dim = int(dim)

    def __repr__(self):
        return f"Leg({self.label!r}, {self.orient!r}, {self.dim})"


class LabeledTensor:
    """Dense tensor with labeled, oriented legs over an exact scalar field."""

    def __init__(self, legs, data):
        self.legs = tuple(legs)
        arr = np.asarray(data, dtype=object)
        if arr.shape != tuple(l.dim for l in self.legs):
            raise ValueError("entry array shape does not match the legs")
        self.data = arr

    def leg_index(self, label):
        for i, l in enumerate(self.legs):
            if l.label == label:
                return i
        raise KeyError(f"no leg labeled {label!r}")

    def scalar(self):
        if self.legs:
            raise ValueError("tensor has open legs")
        return self.data[()]

    def __repr__(self):
        return f"LabeledTensor(legs={[l.label for l in self.legs]})"


def tensor_from_matrix(mat, out_labels, in_labels, dims):
    """Wrap a (prod dims) x (prod dims) matrix as a tensor.

    Row index factors over out_labels, column index over in_labels.
    """
    mat = np.asarray(mat, dtype=object)
    legs = [Leg(l, "out", d) for l, d in zip(out_labels, dims)]
    legs += [Leg(l, "in", d) for l, d in zip(in_labels, dims)]
    return LabeledTensor(legs, mat.reshape(tuple(d for d in dims) * 2))


def contract(ts, pairings):
    """Contract a list of tensors along (out-label, in-label) pairings.

    Labels must be unique across the diagram.  Unpaired legs survive in
    the order the tensors were given.  A closed diagram returns a 0-leg
    tensor; use .scalar() to read it.
    """
    tensors = [(t.legs, t.data) for t in ts]
    seen = {}
    for ti, (legs, _) in enumerate(tensors):
        for l in legs:
            if l.label in seen:
                raise ValueError(f"duplicate leg label {l.label!r}")
            seen[l.label] = ti

    def locate(label):
        for ti, (legs, _) in enumerate(tensors):
            for li, l in enumerate(legs):
                if l.label == label:
                    return ti, li, l
        raise KeyError(f"dangling pairing reference {label!r}")

    pending = list(pairings)
    while pending:
        la, lb = pending.pop(0)
        ta, ia, lega = locate(la)
        tb, ib, legb = locate(lb)
        if {lega.orient, legb.orient} != {"in", "out"}:
            raise ValueError(f"pairing {la!r}-{lb!r} needs one in-leg and one out-leg")
        if lega.dim != legb.dim:
            raise ValueError(f"dimension mismatch on {la!r}-{lb!r}")
        if ta == tb:
            legs, data = tensors[ta]
            data = np.trace(data, axis1=ia, axis2=ib)
            legs = [l for i, l in enumerate(legs) if i not in (ia, ib)]
            tensors[ta] = (legs, data)
        else:
            if ta > tb:
                ta, ia, tb, ib = tb, ib, ta, ia
            legsa, da = tensors[ta]
            legsb, db = tensors[tb]
            data = np.tensordot(da, db, axes=(ia, ib))
            legs = [l for i, l in enumerate(legsa) if i != ia]
            legs += [l for i, l in enumerate(legsb) if i != ib]
            tensors[ta] = (legs, data)
            del tensors[tb]
    # outer product of whatever is left (disconnected diagrams)
    legs, data = tensors[0]
    for morelegs, more in tensors[1:]:
        data = np.tensordot(data, more, axes=0)
        legs = list(legs) + list(morelegs)
    return LabeledTensor(legs, data)


def _frac_rank(mat):
    """Exact rank of a 2d object array of Fractions by Gaussian elimination."""
    rows = [list(map(Fraction, row)) for row in mat]
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    rank = 0
    r = 0
    for c in range(ncols):
        piv = None
        for rr in range(r, nrows):
            if rows[rr][c]:
                piv = rr
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for rr in range(nrows):
            if rr != r and rows[rr][c]:
                f = rows[rr][c]
                rows[rr] = [x - f * y for x, y in zip(rows[rr], rows[r])]
        rank += 1
        r += 1
        if r == nrows:
            break
    return rank


def matrix_rank(t, row_legs, col_legs, samples=3, seed=7):
    """Exact rank of the tensor flattened to a row_legs x col_legs matrix.

    Rational entries are eliminated directly.  RatFun entries are ranked
    by evaluation at generic rational points: the generic rank is the
    maximum over sample points (specialization can only lose rank), and
    several independent points are tried.
    """
    row_legs = list(row_legs)
    col_legs = list(col_legs)
    labels = [l.label for l in t.legs]
    if sorted(row_legs + col_legs) != sorted(labels):
        raise ValueError("row and col legs must partition the tensor legs")
    perm = [t.leg_index(l) for l in row_legs] + [t.leg_index(l) for l in col_legs]
    data = np.transpose(t.data, perm)
    nrow = 1
    for l in row_legs:
        nrow *= t.legs[t.leg_index(l)].dim
    mat = data.reshape(nrow, -1)
    has_fun = any(isinstance(v, RatFun) for v in mat.flat)
    if not has_fun:
        return _frac_rank(mat)
    rng = random.Random(seed)
    best = 0
    tried = 0
    while tried < samples:
        a = Fraction(rng.randint(10**6, 10**7), rng.randint(1, 97))
        try:
            inst = [[RatFun.coerce(v)(a) for v in row] for row in mat]
        except ZeroDivisionError:
            continue  # hit a pole, resample
        best = max(best, _frac_rank(inst))
        tried += 1
    return best
