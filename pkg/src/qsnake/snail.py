"""Residue tower over the window-shift chain and its fused loop spaces.

The lowering map of the window chain has a simple pole when its line
parameter reaches the second window site.  Taking the residue there and
then alternately raising and lowering, 2k-1 levels in all with the line
parameter stepped down by (n+1)/2 at each level, leaves one operator on
the window.  The consumed lines (the loops) alternate antifundamental,
fundamental, ...; their positions sit in minimal snake position in the
parity lattice, which ties the construction to the alternating snake
characters: the ordered product of vertex matrices over the loop pairs
has rank equal to the snake dimension.

Scalars are handled symbolically: the product of per-level prefactors
reduces through the rho ladder to an explicit rational function whose
residue multiplies the polynomial tensor part evaluated at the pole.
"""

from fractions import Fraction

import numpy as np

from .exactlin import (RatFun, contract, matrix_rank, pole_order_at,
                       residue_at, tensor_from_matrix)
from .lattice import (_sp_embed, _sp_extend, _sp_identity, _sp_mul,
                      _sp_ptrace, _sp_scale, _sp_to_dense, a_prefactor_expr,
                      density_matrix, max_abs_diff)
from .qchar import SnakeSpec, module_dim, snake_qchar
from .report import VerificationReport
from .rmat import (PrefactorExpr, antisym_fusion, h_shift, k_matrix,
                   permutation_matrix, prefactor_reduce, vertex_matrix)


def loop_kinds(n, l):
    """Alternating loop kinds, antifundamental first.

    Rank 1 is self-dual, so there every loop stays fundamental."""
    if n == 1:
        return ["f"] * l
    return ["fbar" if t % 2 == 1 else "f" for t in range(1, l + 1)]


def loop_points(n, l):
    """Loop t sits at node n (odd t) or node 1 (even t), column t(n+1)."""
    return [(n if t % 2 == 1 else 1, t * (n + 1)) for t in range(1, l + 1)]


class SnailSpec:
    """Data of the residue tower.

    Rank n, loop parameter k (the tower has 2k-1 levels), window size m,
    and the passive window parameters mus = (mu_2, ..., mu_m); mu_2
    anchors the residue.  Loop t carries the additive shift
    mu_2 - t(n+1)/2."""

    def __init__(self, n, k, m, mus):
        self.n = int(n)
        self.k = int(k)
        self.m = int(m)
        if self.n < 1:
            raise ValueError("rank must be at least 1")
        if self.k < 1:
            raise ValueError("loop parameter must be at least 1")
        if self.m < 2:
            raise ValueError("window needs at least two sites")
        self.mus = [Fraction(x) for x in mus]
        if len(self.mus) != self.m - 1:
            raise ValueError("need the parameters mu_2..mu_m")
        self.loops = 2 * self.k - 1
        pts = SnakeSpec(self.n, loop_points(self.n, self.loops))
        if not (pts.is_snake() and pts.is_minimal()):
            raise AssertionError("loop points left minimal snake position")

    def loop_kinds(self):
        return loop_kinds(self.n, self.loops)

    def loop_shifts(self):
        h = h_shift(self.n)
        return [self.mus[0] - t * h for t in range(1, self.loops + 1)]

    def __repr__(self):
        return (f"SnailSpec(n={self.n}, k={self.k}, m={self.m}, "
                f"mus={self.mus})")


# ---------------------------------------------------------------------------
# scalar pole bookkeeping

def pole_profile(n, k, l):
    """Product of the four scalar families around one pole candidate.

    The variable is centred on the candidate labelled by l in 0..n, so
    the reported order is read off at 0: two denominator families each
    contribute a j=1 zero (at l=0 and l=1 respectively), the numerator
    family never vanishes there.  Returns (f, pole order of f at 0)."""
    if k < 1:
        raise ValueError("need k >= 1")
    if not 0 <= l <= n:
        raise ValueError(f"candidate label {l} outside 0..{n}")
    x = RatFun.x()
    f = RatFun.const(1)
    for j in range(1, k + 1):
        f = f * (x - j * (n + 1) - l + 1)
        f = f / (x - j * (n + 1) - l)
        f = f / (x - (j - 1) * (n + 1) - l)
        f = f / (x - (j - 1) * (n + 1) - l + 1)
    return f, pole_order_at(f, Fraction(0))


def _tower_scalar(spec):
    """Reduced prefactor of the full tower and its residue at mu_2.

    Per-level scalars multiply with the level shift -t(n+1)/2; raising
    levels cancel their rho content outright, lowering levels telescope
    down the ladder.  The reduced function must have a simple pole at
    mu_2 for the residue to exist."""
    n = spec.n
    h = h_shift(n)
    expr = PrefactorExpr(n, 1)
    for t in range(1, spec.loops + 1):
        which = 2 if t % 2 == 1 else 1
        expr = expr * a_prefactor_expr(which, n, spec.mus, shift=-t * h)
    red = prefactor_reduce(expr)
    if isinstance(red, PrefactorExpr):
        raise ArithmeticError(f"tower scalar does not reduce: {red!r}")
    pole = spec.mus[0]
    order = pole_order_at(red, pole)
    if order != 1:
        raise ArithmeticError(
            f"pole order {order} != 1 at mu_2 = {pole}; residue undefined. "
            f"parameters: {spec!r}")
    return red, residue_at(red, pole)


# ---------------------------------------------------------------------------
# the tower itself

def _tower_chain(spec):
    """Sparse product of all level chains at the pole point.

    Slot layout on m + 2k - 1 coordinates: passive site j = 2..m on slot
    m-j, the level-t line on slot m-2+t, the final output line on the
    last slot.  Left factors collect descending over levels, right
    factors (singlet insertion then returning chain) ascending; this is
    the order in which the levels compose."""
    n, m = spec.n, spec.m
    d = n + 1
    loops = spec.loops
    nsl = m + loops
    h = h_shift(n)
    pole = spec.mus[0]
    left = _sp_identity(d ** nsl)
    right = _sp_identity(d ** nsl)
    js = list(range(2, m + 1))
    for t in range(1, loops + 1):
        nu = pole - t * h
        ins = m - 2 + t
        outs = ins + 1
        cl = _sp_identity(d ** nsl)
        cr = _sp_identity(d ** nsl)
        if t % 2 == 1:
            # lowering level: the consumed line is antifundamental
            for j in reversed(js):
                v = vertex_matrix(n, "f", "fbar", spec.mus[j - 2] - nu)
                cl = _sp_mul(cl, _sp_embed(v, (m - j, ins), nsl, d))
            for j in js:
                v = vertex_matrix(n, "f", "fbar", nu - spec.mus[j - 2])
                cr = _sp_mul(cr, _sp_embed(v, (m - j, ins), nsl, d))
            ks = _sp_embed(k_matrix(n), (outs, ins), nsl, d)
        else:
            # raising level: the consumed line is fundamental
            for j in js:
                v = vertex_matrix(n, "f", "f", nu - spec.mus[j - 2])
                cl = _sp_mul(cl, _sp_embed(v, (ins, m - j), nsl, d))
            for j in reversed(js):
                v = vertex_matrix(n, "f", "f", spec.mus[j - 2] - nu)
                cr = _sp_mul(cr, _sp_embed(v, (m - j, ins), nsl, d))
            ks = _sp_embed(k_matrix(n), (ins, outs), nsl, d)
        left = _sp_mul(cl, left)
        right = _sp_mul(right, _sp_mul(ks, cr))
    return _sp_mul(left, right)


def _snail_matrix(spec, inserted=False):
    """Dense closed tower on the m window coordinates.

    All loop lines are traced out; the fresh line of the last level
    becomes site 1.  With inserted=True the output line is instead kept
    as a loop, a permutation against one extra coordinate is appended,
    and both are closed by the trace: A on the new coordinate equals
    tr(A P), so the result must be identical."""
    n, m = spec.n, spec.m
    d = n + 1
    loops = spec.loops
    _, res = _tower_scalar(spec)
    big = _tower_chain(spec)
    nsl = m + loops
    if inserted:
        big = _sp_extend(big, d)
        nsl += 1
        out_slot = m + loops - 1
        big = _sp_mul(big, _sp_embed(permutation_matrix(n),
                                     (out_slot, nsl - 1), nsl, d))
        lo = m - 1
        hi = out_slot
    else:
        lo = m - 1
        hi = m + loops - 2
    for slot in range(hi, lo - 1, -1):
        big = _sp_ptrace(big, slot, nsl, d)
        nsl -= 1
    return _sp_to_dense(_sp_scale(big, res), d ** m)


def snail_operator(spec):
    """Closed residue tower as a labeled operator on the window sites.

    Site 1 carries the fresh fundamental line created by the last level;
    sites 2..m are the passive window sites, site m on the first slot."""
    mat = _snail_matrix(spec)
    d = spec.n + 1
    labels = [f"s{spec.m - j}" for j in range(spec.m)]
    return tensor_from_matrix(mat, [s + "_out" for s in labels],
                              [s + "_in" for s in labels], [d] * spec.m)


def contraction_order_check(spec):
    """Contract the one-level tower as a labeled diagram in two pairing
    orders and compare both against the assembled operator.

    Restricted to k=1, m=2: the smallest closed tower already exercises
    every wiring rule (site leg, loop line, fresh output, trace closure)
    while staying readable as an explicit diagram."""
    if spec.loops != 1 or spec.m != 2:
        raise ValueError("contraction order check runs on the k=1, m=2 tower")
    n = spec.n
    d = n + 1
    mu2 = spec.mus[0]
    nu = mu2 - h_shift(n)
    _, res = _tower_scalar(spec)
    cr = tensor_from_matrix(vertex_matrix(n, "f", "fbar", nu - mu2),
                            ["cr_s2", "cr_al"], ["s2_in", "al_in"], [d, d])
    ks = tensor_from_matrix(k_matrix(n), ["k_o", "k_al"],
                            ["o_in", "k_al_in"], [d, d])
    cl = tensor_from_matrix(vertex_matrix(n, "f", "fbar", mu2 - nu),
                            ["s2_out", "cl_al"], ["cl_s2_in", "cl_al_in"],
                            [d, d])
    pairings = [
        ("cr_al", "k_al_in"),
        ("k_al", "cl_al_in"),
        ("cr_s2", "cl_s2_in"),
        ("cl_al", "al_in"),
    ]
    want = snail_operator(spec)
    order_want = ["s2_out", "s1_out", "s2_in", "s1_in"]
    ref = np.transpose(want.data,
                       [[l.label for l in want.legs].index(x)
                        for x in order_want])
    resid = []
    for order in (pairings, pairings[::-1]):
        got = contract([cr, ks, cl], order)
        labels = [l.label for l in got.legs]
        arr = np.transpose(
            got.data,
            [labels.index(x) for x in ("s2_out", "k_o", "s2_in", "o_in")])
        resid.append(max_abs_diff(arr * res, ref))
    status = "pass" if all(r == 0 for r in resid) else "fail"
    return VerificationReport(
        check="tower contraction order",
        params={"n": n, "k": spec.k, "m": spec.m, "mu2": mu2},
        status=status,
        anchor="closed-diagram value is independent of the contraction order",
        witness={"residual_forward": resid[0], "residual_reversed": resid[1]})


# ---------------------------------------------------------------------------
# fused loop operators

def fusion_matrix(n, loop_count):
    """Dense form of fusion_operator: lexicographic product over loop
    pairs of the kind-dispatched vertex at the shift difference."""
    l = int(loop_count)
    if l < 1:
        raise ValueError("need at least one loop")
    d = n + 1
    h = h_shift(n)
    kinds = loop_kinds(n, l)
    mat = _sp_identity(d ** l)
    for i in range(1, l + 1):
        for j in range(i + 1, l + 1):
            v = vertex_matrix(n, kinds[i - 1], kinds[j - 1], (j - i) * h)
            mat = _sp_mul(mat, _sp_embed(v, (i - 1, j - 1), l, d))
    return _sp_to_dense(mat, d ** l)


def fusion_operator(n, loop_count):
    """Ordered product of vertex matrices over all loop pairs.

    Pair (i, j) with i < j contributes the vertex for the loop kinds at
    argument (j - i)(n+1)/2, the difference of the loop shifts; pairs
    multiply in lexicographic order.  Entries are polynomial, so no
    argument is singular."""
    l = int(loop_count)
    d = n + 1
    labels = [f"a{t}" for t in range(1, l + 1)]
    return tensor_from_matrix(fusion_matrix(n, l),
                              [s + "_out" for s in labels],
                              [s + "_in" for s in labels], [d] * l)


def snake_rank_check(n, k):
    """Rank of the fused (2k-1)-loop product against the snake dimension.

    Equality is the fusion signature: the image of the fused product
    carries the alternating snake module with 2k-1 points.  A mismatch
    is reported, not raised."""
    l = 2 * k - 1
    fus = fusion_operator(n, l)
    labels = [f"a{t}" for t in range(1, l + 1)]
    rank = matrix_rank(fus, [s + "_out" for s in labels],
                       [s + "_in" for s in labels])
    dim = module_dim(snake_qchar(n, "odd", l))
    status = "pass" if rank == dim else "fail"
    return VerificationReport(
        check="fused loop rank against snake dimension",
        params={"n": n, "k": k, "loops": l},
        status=status,
        anchor="the fused loop image carries the alternating snake module",
        witness={"rank": rank, "snake_dim": dim})


def singlet_insertion_check(n, loop_count):
    """Exploratory: singlet insertions on adjacent loop pairs.

    Records the largest entry of K.F and F.K for each adjacent pair; a
    zero means the singlet annihilates the fused product from that side.
    The stepwise sandwich identities are not asserted anywhere."""
    l = int(loop_count)
    d = n + 1
    f = fusion_matrix(n, l)
    km = k_matrix(n)
    witness = {}
    for t in range(1, l):
        emb = _sp_to_dense(_sp_embed(km, (t - 1, t), l, d), d ** l)
        after = max(abs(x) for x in (emb @ f).flat)
        before = max(abs(x) for x in (f @ emb).flat)
        witness[f"pair_{t}_{t + 1}"] = {"K.F": after, "F.K": before}
    return VerificationReport(
        check="singlet insertions on the fused product",
        params={"n": n, "loops": l},
        status="exploratory",
        anchor="adjacent-pair singlets conjectured to annihilate the fused image stepwise",
        witness=witness)


# ---------------------------------------------------------------------------
# the rank-2 fused window relation at one loop

def l1_fusion_check(n, spec, m):
    """Exploratory finite-strip test of the fused window relation.

    At rank 2 the antisymmetric square of the fundamental is the dual
    space, so the antisymmetrizing vertex at -1 on the first two window
    sites can be compared against the size-(m-1) window whose first line
    is antifundamental at the midpoint label, transported through the
    antisymmetric fusion maps and the epsilon identification of wedge
    coordinates with dual coordinates.  Records the residual for both
    orientations of the identification, the entry ratio when it is
    constant, and the exact rank of the left side; the status is always
    informational."""
    if n != 2:
        raise ValueError("the fused window relation needs rank 2")
    if not 2 <= m <= spec.L:
        raise ValueError(f"window m={m} needs 2 <= m <= L={spec.L}")
    from .exactlin import _frac_rank

    d = 3
    h = h_shift(2)
    lam = spec.mus[1]
    rest = [spec.mus[j] for j in range(2, m)]
    win = density_matrix(spec, m, [lam - 1, lam] + rest, 0)
    rm1 = vertex_matrix(2, "f", "f", Fraction(-1))
    emb = _sp_to_dense(_sp_embed(rm1, (m - 1, m - 2), m, d), d ** m)
    lhs = emb @ win.matrix

    p = permutation_matrix(2)
    sym = (np.asarray([[Fraction(int(i == j)) for j in range(9)]
                       for i in range(9)], dtype=object) + p) / 2
    sym_emb = _sp_to_dense(_sp_embed(sym, (m - 1, m - 2), m, d), d ** m)
    sym_resid = max(abs(x) for x in (sym_emb @ lhs).flat)
    rank = _frac_rank(lhs)

    small = density_matrix(spec, m - 1, [lam - h + 1] + rest, 1)
    f_de, f_fu = antisym_fusion(2)
    de_mat = f_de.data.reshape(3, 9)
    fu_mat = f_fu.data.reshape(9, 3)
    # wedge pair (a, b) maps to the missing index with the alternating sign
    w = np.full((3, 3), Fraction(0), dtype=object)
    w[2, 0] = Fraction(1)   # (0,1)
    w[1, 1] = Fraction(-1)  # (0,2)
    w[0, 2] = Fraction(1)   # (1,2)
    w_inv = np.full((3, 3), Fraction(0), dtype=object)
    for a in range(3):
        for b in range(3):
            if w[a, b] != 0:
                w_inv[b, a] = 1 / w[a, b]
    eye_rest = np.asarray(
        [[Fraction(int(i == j)) for j in range(d ** (m - 2))]
         for i in range(d ** (m - 2))], dtype=object)

    def transported(wmat, wmat_inv):
        e_full = np.kron(eye_rest, fu_mat @ wmat_inv)
        r_full = np.kron(eye_rest, wmat @ de_mat)
        return e_full @ small.matrix @ r_full

    rhs = transported(w, w_inv)
    residual = max_abs_diff(lhs, rhs)
    cw = np.full((3, 3), Fraction(0), dtype=object)
    for a in range(3):
        for b in range(3):
            cw[2 - a, b] = w[a, b]
    cw_inv = np.full((3, 3), Fraction(0), dtype=object)
    for a in range(3):
        for b in range(3):
            if cw[a, b] != 0:
                cw_inv[b, a] = 1 / cw[a, b]
    residual_flipped = max_abs_diff(lhs, transported(cw, cw_inv))

    ratios = set()
    mismatch = False
    for x, y in zip(lhs.flat, rhs.flat):
        if x != 0 and y != 0:
            ratios.add(x / y)
        elif (x == 0) != (y == 0):
            mismatch = True
    constant = ratios.pop() if (len(ratios) == 1 and not mismatch) else None

    return VerificationReport(
        check="fused window relation at one loop",
        params={"n": n, "L": spec.L, "N": spec.N, "m": m, "lam": lam},
        status="exploratory",
        anchor="antisymmetrized window pair conjectured to transport to the "
               "antifundamental-first window at the midpoint label",
        witness={"residual": residual,
                 "residual_flipped": residual_flipped,
                 "constant_ratio": constant,
                 "lhs_rank": rank,
                 "rank_bound": d ** (m - 1),
                 "symmetric_part": sym_resid})
