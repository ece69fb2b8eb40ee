"""Polynomial quadratic forms over A[s] (conj s = 1-s), the cup-product with
a normalized quadratic datum, degree linearization, and the constructive
nilpotent-machinery lemmas (congruence recursion, polynomial square root,
projector conjugation).

Conventions.  After identifying a module with its dual by the hermitian form
Delta of the datum, endomorphisms of the tensor factor carry the twisted
adjoint X -> Delta^{-1} X^bar-t Delta, while coefficients of s-polynomials
are honest form matrices whose adjoint is the plain conjugate transpose with
s -> 1-s expanded binomially.  All identities below are verified exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .additive import MatSubgroup, solve_affine
from .caps import CapExceeded, check_cap
from .forms import DegenerateFormError, QuadFormEl, min_equal, psi_normalize
from .linalg import Mat, diag_block, invert, kron, nilpotency_index
from .rings import PolySRing, Ring


# ---------------------------------------------------------------------------
# polynomials with matrix coefficients


class MatPoly:
    """sum_k C_k x^k with C_k square-free Mat coefficients, trailing zeros trimmed."""

    __slots__ = ("ring", "rows", "cols", "coeffs")

    def __init__(self, ring: Ring, rows: int, cols: int, coeffs):
        self.ring = ring
        self.rows = rows
        self.cols = cols
        cs = list(coeffs)
        while cs and cs[-1].is_zero():
            cs.pop()
        for c in cs:
            if c.rows != rows or c.cols != cols:
                raise ValueError("coefficient shape mismatch")
        self.coeffs = tuple(cs)

    @staticmethod
    def constant(m: Mat) -> "MatPoly":
        return MatPoly(m.ring, m.rows, m.cols, [m])

    @staticmethod
    def zero(ring: Ring, rows: int, cols: int) -> "MatPoly":
        return MatPoly(ring, rows, cols, [])

    @staticmethod
    def identity(ring: Ring, n: int) -> "MatPoly":
        return MatPoly(ring, n, n, [Mat.identity(ring, n)])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> Mat:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Mat.zero(self.ring, self.rows, self.cols)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return (
            isinstance(other, MatPoly)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "MatPoly") -> "MatPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return MatPoly(
            self.ring,
            self.rows,
            self.cols,
            [self.coeff(k) + other.coeff(k) for k in range(n)],
        )

    def __sub__(self, other: "MatPoly") -> "MatPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return MatPoly(
            self.ring,
            self.rows,
            self.cols,
            [self.coeff(k) - other.coeff(k) for k in range(n)],
        )

    def __neg__(self) -> "MatPoly":
        return MatPoly(self.ring, self.rows, self.cols, [-c for c in self.coeffs])

    def __mul__(self, other: "MatPoly") -> "MatPoly":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        if self.is_zero() or other.is_zero():
            return MatPoly.zero(self.ring, self.rows, other.cols)
        out = [
            Mat.zero(self.ring, self.rows, other.cols)
            for _ in range(len(self.coeffs) + len(other.coeffs) - 1)
        ]
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return MatPoly(self.ring, self.rows, other.cols, out)

    def scale_sign(self, eps: int) -> "MatPoly":
        return self if eps == 1 else -self

    def shift(self, k: int) -> "MatPoly":
        """Multiply by x^k."""
        pad = [Mat.zero(self.ring, self.rows, self.cols)] * k
        return MatPoly(self.ring, self.rows, self.cols, pad + list(self.coeffs))

    def star_s(self) -> "MatPoly":
        """Adjoint for the involution s -> 1 - s: coefficients get the plain
        conjugate transpose and s^k expands to (1-s)^k."""
        R = self.ring
        out = [Mat.zero(R, self.cols, self.rows) for _ in range(len(self.coeffs) or 1)]
        for k, c in enumerate(self.coeffs):
            cs = c.star()
            if cs.is_zero():
                continue
            for j in range(k + 1):
                scalar = R.int_embed(math.comb(k, j) * (-1) ** j)
                if scalar == R.zero:
                    continue
                out[j] = out[j] + cs.scale_right(scalar)
        return MatPoly(R, self.cols, self.rows, out)

    def star_t(self, gram: Mat | None = None) -> "MatPoly":
        """Adjoint for a fixed variable (conj t = t), optionally twisted by a
        gram matrix: coefficientwise gram^{-1} C^bar-t gram."""
        if gram is None:
            return MatPoly(self.ring, self.cols, self.rows, [c.star() for c in self.coeffs])
        ginv = invert(gram)
        return MatPoly(
            self.ring,
            self.cols,
            self.rows,
            [ginv * c.star() * gram for c in self.coeffs],
        )

    def subst_kron(self, d: Mat) -> Mat:
        """Ring homomorphism x -> d into the Kronecker algebra:
        sum_k coeffs[k] (x) d^k."""
        out = Mat.zero(self.ring, self.rows * d.rows, self.cols * d.cols)
        power = Mat.identity(self.ring, d.rows)
        for k, c in enumerate(self.coeffs):
            if not c.is_zero():
                out = out + kron(c, power)
            if k + 1 < len(self.coeffs):
                power = power * d
        return out

    def eval_at_int(self, value: int) -> Mat:
        """Evaluate at an integer point (a ring homomorphism A[s] -> A)."""
        c = self.ring.int_embed(value)
        out = Mat.zero(self.ring, self.rows, self.cols)
        scalar = self.ring.one
        for k, m in enumerate(self.coeffs):
            out = out + m.scale_right(scalar)
            scalar = self.ring.mul(scalar, c)
        return out

    def to_strs(self):
        return [c.to_strs() for c in self.coeffs]

    def key(self):
        return repr(self.to_strs())

    def __repr__(self):
        return f"MatPoly(degree={self.degree}, shape={self.rows}x{self.cols})"


def _poly_entry(theta: MatPoly, i: int, j: int):
    coeffs = [c.entries[i][j] for c in theta.coeffs]
    while coeffs and coeffs[-1] == theta.ring.zero:
        coeffs.pop()
    return tuple(coeffs)


def _poly_det(theta: MatPoly) -> tuple:
    """Determinant of a polynomial matrix by minor expansion (commutative)."""
    R = theta.ring
    if not R.is_commutative:
        raise CapExceeded("polynomial determinant needs a commutative ring")
    psr = PolySRing(R)
    n = theta.rows
    entries = [[_poly_entry(theta, i, j) for j in range(n)] for i in range(n)]
    memo = {}

    def minor(rows_mask: int, col: int) -> tuple:
        if (rows_mask, col) in memo:
            return memo[(rows_mask, col)]
        rows = [i for i in range(n) if rows_mask & (1 << i)]
        if not rows:
            return (R.one,)
        acc = ()
        sign = 1
        for idx, i in enumerate(rows):
            term = psr.mul(entries[i][col], minor(rows_mask & ~(1 << i), col + 1))
            acc = psr.add(acc, term if sign > 0 else psr.neg(term))
            sign = -sign
        memo[(rows_mask, col)] = acc
        return acc

    return minor((1 << n) - 1, 0)


def _elem_nilpotent(ring: Ring, a) -> bool:
    seen = set()
    cur = a
    while cur not in seen:
        if cur == ring.zero:
            return True
        seen.add(cur)
        cur = ring.mul(cur, a)
    return cur == ring.zero


def _poly_unit(ring: Ring, coeffs: tuple) -> bool:
    """u(s) is a unit of A[s] iff u(0) is a unit and every higher coefficient
    is nilpotent (A commutative)."""
    if not coeffs:
        return False
    if ring.inv(coeffs[0]) is None:
        return False
    return all(_elem_nilpotent(ring, c) for c in coeffs[1:])


# ---------------------------------------------------------------------------
# polynomial quadratic forms and delta data


class PolyQuadForm:
    """theta = sum theta_k s^k on A^n over A[s], with invertible hermitian
    part H(s) = theta + eps * theta^* (s-bar = 1-s)."""

    def __init__(self, ring: Ring, eps: int, theta: MatPoly, check: bool = True):
        if eps not in (1, -1):
            raise ValueError("epsilon must be +1 or -1")
        if theta.rows != theta.cols:
            raise ValueError("theta must be square")
        self.ring = ring
        self.eps = eps
        self.n = theta.rows
        self.theta = theta
        if check and self.n > 0 and not self.nondegenerate():
            raise DegenerateFormError("hermitian part is not invertible over A[s]")

    @staticmethod
    def from_coeff_mats(ring, eps, mats, check=True):
        mats = list(mats)
        n = mats[0].rows
        return PolyQuadForm(ring, eps, MatPoly(ring, n, n, mats), check=check)

    def hermitian(self) -> MatPoly:
        return self.theta + self.theta.star_s().scale_sign(self.eps)

    def nondegenerate(self) -> bool:
        if self.n == 0:
            return True
        return _poly_unit(self.ring, _poly_det(self.hermitian()) or (self.ring.zero,))

    def degree(self) -> int:
        return self.theta.degree

    def to_json(self):
        return {
            "ring": self.ring.to_json(),
            "epsilon": self.eps,
            "rank": self.n,
            "coefficients": self.theta.to_strs(),
        }


@dataclass
class DeltaDatum:
    """Quadratic datum after dual identification: gram Delta (invertible,
    Delta^* = eta*Delta) and phi with phi + phi^dagger = 1 for the twisted
    adjoint x -> Delta^{-1} x^bar-t Delta."""

    ring: Ring
    eta: int
    m: int
    gram: Mat
    phi: Mat
    gram_inv: Mat = field(default=None, repr=False)

    def __post_init__(self):
        if self.gram.star() != self.gram.scale_sign(self.eta):
            raise ValueError("gram fails Delta^* = eta*Delta")
        inv = invert(self.gram)
        if inv is None:
            raise DegenerateFormError("gram must be invertible")
        object.__setattr__(self, "gram_inv", inv)
        if self.phi + self.adjoint(self.phi) != Mat.identity(self.ring, self.m):
            raise ValueError("phi fails phi + phi^* = 1")

    def adjoint(self, x: Mat) -> Mat:
        return self.gram_inv * x.star() * self.gram

    @staticmethod
    def from_quadform(q: QuadFormEl) -> "DeltaDatum":
        psi = psi_normalize(q)
        return DeltaDatum(q.ring, q.eps, q.n, q.associated().phi, psi)

    def to_json(self):
        return {
            "ring": self.ring.to_json(),
            "eta": self.eta,
            "rank": self.m,
            "gram": self.gram.to_strs(),
            "phi": self.phi.to_strs(),
        }


@dataclass
class AlmostHermitian:
    """g with conj-transpose(g) = eps*g*(1+N), N nilpotent."""

    ring: Ring
    eps: int
    g: Mat
    nilpotent: Mat
    index: int

    @staticmethod
    def from_matrix(ring: Ring, eps: int, g: Mat) -> "AlmostHermitian":
        if g.rows == 0:
            return AlmostHermitian(ring, eps, g, g, 0)
        ginv = invert(g)
        if ginv is None:
            raise DegenerateFormError("almost hermitian g must be invertible")
        n_mat = (ginv * g.star()).scale_sign(eps) - Mat.identity(ring, g.rows)
        idx = nilpotency_index(n_mat)
        if idx is None:
            raise ValueError("g^{-1} g^* - 1 is not nilpotent")
        out = AlmostHermitian(ring, eps, g, n_mat, idx)
        out.validate()
        return out

    def validate(self):
        if self.g.rows == 0:
            return
        ident = Mat.identity(self.ring, self.g.rows)
        lhs = self.g.star()
        rhs = (self.g * (ident + self.nilpotent)).scale_sign(self.eps)
        if lhs != rhs:
            raise AssertionError("almost hermitian identity failed")

    def linear_form(self) -> PolyQuadForm:
        zero = Mat.zero(self.ring, self.g.rows, self.g.cols)
        return PolyQuadForm(
            self.ring, self.eps, MatPoly(self.ring, self.g.rows, self.g.cols, [zero, self.g])
        )


# ---------------------------------------------------------------------------
# the cup-product


def cup_product(theta: PolyQuadForm, d: DeltaDatum) -> QuadFormEl:
    """kappa = sum theta_k (x) (Delta phi^k) on the tensor module.

    Both factors must live over the same commutative ring (the coefficient
    pairing is ring multiplication); the result is an eps*eta-quadratic form
    whose hermitian part equals the substituted hermitian polynomial.
    """
    if theta.ring != d.ring:
        raise ValueError("cup product factors must share a ring")
    if not theta.nondegenerate():
        raise DegenerateFormError("theta is degenerate")
    R = theta.ring
    out = Mat.zero(R, theta.n * d.m, theta.n * d.m)
    power = Mat.identity(R, d.m)
    for k in range(theta.degree() + 1):
        c = theta.theta.coeff(k)
        if not c.is_zero():
            out = out + kron(c, d.gram * power)
        power = power * d.phi
    return QuadFormEl(R, theta.eps * d.eta, out)


def kappa_hermitian_two_ways(theta: PolyQuadForm, d: DeltaDatum):
    """The hermitian part of kappa computed directly and by substituting phi
    into the hermitian s-polynomial H; they must agree entrywise."""
    kappa = cup_product(theta, d).phi0
    eps_out = theta.eps * d.eta
    direct = kappa + kappa.star().scale_sign(eps_out)
    herm = theta.hermitian()  # H(s) = theta + eps theta^*
    substituted = herm.subst_kron(d.phi)
    ident = Mat.identity(theta.ring, theta.n)
    lifted = kron(ident, d.gram) * substituted
    return direct, lifted


def kappa_nondegenerate(theta: PolyQuadForm, d: DeltaDatum) -> bool:
    """Invertibility of kappa + kappa^*; equals the substitution H(phi)."""
    direct, lifted = kappa_hermitian_two_ways(theta, d)
    if direct != lifted:
        raise AssertionError("substitution H(phi) disagrees with kappa + kappa^*")
    return invert(direct) is not None


def lemma2_shift(theta: PolyQuadForm, z: MatPoly, d: DeltaDatum | None = None):
    """Shift theta by Z - eps*Z^*; cup products change by an explicit shift.

    Returns (theta', witness) where witness (present when a datum is given)
    carries gamma = sum Z_k (x) Delta phi^k with
    kappa' = kappa + gamma - (eps*eta) gamma^*, so the two cup products are
    equal in the min category.
    """
    shifted = theta.theta + z - z.star_s().scale_sign(theta.eps)
    theta2 = PolyQuadForm(theta.ring, theta.eps, shifted)
    if theta2.hermitian() != theta.hermitian():
        raise AssertionError("shift changed the hermitian part")
    witness = None
    if d is not None:
        kappa = cup_product(theta, d).phi0
        kappa2 = cup_product(theta2, d).phi0
        R = theta.ring
        gamma = Mat.zero(R, theta.n * d.m, theta.n * d.m)
        power = Mat.identity(R, d.m)
        for k in range(z.degree + 1):
            c = z.coeff(k)
            if not c.is_zero():
                gamma = gamma + kron(c, d.gram * power)
            power = power * d.phi
        eps_out = theta.eps * d.eta
        if kappa2 != kappa + gamma - gamma.star().scale_sign(eps_out):
            raise AssertionError("explicit cup-product shift failed")
        q1 = QuadFormEl(R, eps_out, kappa)
        q2 = QuadFormEl(R, eps_out, kappa2)
        if not min_equal(q1, q2):
            raise AssertionError("shifted cup products are not min-equal")
        witness = {"gamma": gamma, "kappa": kappa, "kappa_shifted": kappa2}
    return theta2, witness


# ---------------------------------------------------------------------------
# linearization


def _degree_reduction_factor(theta: PolyQuadForm) -> MatPoly:
    """The unimodular Q of one reduction step: block columns (E, A^n, A^n*),
    lower triangular with identity diagonal, carrying (s-1) and
    theta_N s^{N-1} in the first column."""
    R = theta.ring
    n = theta.n
    big = theta.degree()
    ident = Mat.identity(R, n)
    zero = Mat.zero(R, n)
    one_minus = MatPoly(R, n, n, [-ident, ident])  # (s - 1) actually: -1 + s
    theta_top = MatPoly.constant(theta.theta.coeff(big)).shift(big - 1)

    def cpoly(m):
        return MatPoly.constant(m)

    rows = [
        [cpoly(ident), cpoly(zero), cpoly(zero)],
        [one_minus, cpoly(ident), cpoly(zero)],
        [theta_top, cpoly(zero), cpoly(ident)],
    ]
    return _block_matpoly(R, rows)


def _block_matpoly(ring: Ring, grid) -> MatPoly:
    """Assemble a block MatPoly from a grid of MatPoly blocks."""
    deg = max(p.degree for row in grid for p in row)
    coeffs = []
    from .linalg import block as mat_block

    for k in range(deg + 1):
        coeffs.append(mat_block(ring, [[p.coeff(k) for p in row] for row in grid]))
    return MatPoly(ring, coeffs[0].rows, coeffs[0].cols, coeffs)


def _stabilize_theta(theta: PolyQuadForm) -> MatPoly:
    """theta (+) the rank-2n hyperbolic generator as a constant block."""
    R = theta.ring
    n = theta.n
    ident = Mat.identity(R, n)
    zero = Mat.zero(R, n)
    blocks = []
    deg = theta.degree()
    from .linalg import block as mat_block

    for k in range(deg + 1):
        c = theta.theta.coeff(k)
        top = ident if k == 0 else zero
        blocks.append(
            mat_block(
                R,
                [
                    [c, Mat.zero(R, n, 2 * n)],
                    [Mat.zero(R, 2 * n, n), _hyp_block(R, n, top)],
                ],
            )
        )
    return MatPoly(R, 3 * n, 3 * n, blocks)


def _hyp_block(ring, n, top) -> Mat:
    zero = Mat.zero(ring, n)
    from .linalg import block as mat_block

    return mat_block(ring, [[zero, top], [zero, zero]])


def linearize(theta: PolyQuadForm):
    """Reduce theta to an equivalent linear form g*s, stabilizing by
    hyperbolics: each degree-reduction step conjugates theta (+) H by the
    displayed unimodular factor, dropping the top degree by one and growing
    the rank by 2n; a final constant-elimination shift leaves g with
    conj-transpose(g) = eps*g*(1+N), N nilpotent.

    Returns (AlmostHermitian, transcript); every transcript step records an
    exactly verified identity.
    """
    if not theta.nondegenerate():
        raise DegenerateFormError("cannot linearize a degenerate form")
    R = theta.ring
    eps = theta.eps
    work = theta
    transcript = []
    while work.degree() >= 2:
        big = work.degree()
        q_factor = _degree_reduction_factor(work)
        p_factor = q_factor.star_s()
        middle = _stabilize_theta(work)
        new_theta = p_factor * middle * q_factor
        if new_theta.degree > max(big - 1, 1):
            raise AssertionError("degree reduction failed to drop the degree")
        # the step is p * middle * q with p the s-adjoint of q: verify both
        recheck = q_factor.star_s() * middle * q_factor
        if recheck != new_theta:
            raise AssertionError("transcript step failed its exact recheck")
        work = PolyQuadForm(R, eps, new_theta)
        transcript.append(
            {
                "step": len(transcript),
                "kind": "degree_reduction",
                "degree_before": big,
                "degree_after": work.degree(),
                "rank_after": work.n,
                "check": "pass",
                "_q": q_factor,
            }
        )
    # eliminate the constant: theta0 + theta1 s  ~  (theta1 + theta0 + eps theta0^*) s
    theta0 = work.theta.coeff(0)
    if not theta0.is_zero():
        z = MatPoly(R, work.n, work.n, [-theta0, theta0])  # -theta0 (1 - s)
        shifted, _ = lemma2_shift(work, z)
        expected = theta0 + work.theta.coeff(1) + theta0.star().scale_sign(eps)
        if shifted.theta != MatPoly(R, work.n, work.n, [Mat.zero(R, work.n), expected]):
            raise AssertionError("constant elimination did not produce g*s")
        work = shifted
        transcript.append(
            {
                "step": len(transcript),
                "kind": "constant_elimination",
                "check": "pass",
                "_z": z,
            }
        )
    g = work.theta.coeff(1)
    almost = AlmostHermitian.from_matrix(R, eps, g)
    return almost, transcript


def linearize_cup_soundness(
    theta: PolyQuadForm, almost: AlmostHermitian, transcript, d: DeltaDatum
) -> bool:
    """Replay the transcript under cup product with the datum: the linear
    output's cup product must match the input's after the recorded
    hyperbolic stabilizations, exactly at each step."""
    R = theta.ring
    eps_out = theta.eps * d.eta
    kappa = cup_product(theta, d).phi0
    rank = theta.n
    for step in transcript:
        if step["kind"] == "degree_reduction":
            hyp_kappa = kron(_hyp_block(R, rank, Mat.identity(R, rank)), d.gram)
            stabilized = _tensor_block_sum(R, kappa, hyp_kappa)
            q_sub = step["_q"].subst_kron(d.phi)
            kappa = q_sub.star() * stabilized * q_sub
            rank *= 3
        else:
            z = step["_z"]
            gamma = Mat.zero(R, rank * d.m, rank * d.m)
            power = Mat.identity(R, d.m)
            for k in range(z.degree + 1):
                c = z.coeff(k)
                if not c.is_zero():
                    gamma = gamma + kron(c, d.gram * power)
                power = power * d.phi
            kappa = kappa + gamma - gamma.star().scale_sign(eps_out)
    final = cup_product(almost.linear_form(), d).phi0
    if final != kappa:
        return False
    return min_equal(
        QuadFormEl(R, eps_out, final), QuadFormEl(R, eps_out, kappa)
    )


def _tensor_block_sum(ring, a: Mat, b: Mat) -> Mat:
    return diag_block(ring, [a, b])


# ---------------------------------------------------------------------------
# the congruence recursion (appendix lemma 4)


def lemma4_recursion(
    sigma: Mat, d: DeltaDatum, zeta: Mat, depth: int, eps: int = 1
) -> dict:
    """Iterate f_{p+1} = f_p + N^{p+1} (x) kappa_{p+1} against the congruence

        f_p^* (sigma (x) phi) f_p
            = sigma (x) (phi + zeta - zeta^*) + Z_p - Z_p^*
              modulo span{sigma N^k (x) anything : k >= p+1}

    with N = eps*sigma^{-1} conj-transpose(sigma) - 1 nilpotent, f_0 = 1 and
    Z_0 = -sigma (x) zeta.  Once p reaches the nilpotency index the span is
    zero and the residual must vanish identically.
    """
    R = sigma.ring
    if not R.is_commutative:
        raise CapExceeded("the recursion uses Kronecker products")
    n = sigma.rows
    m = d.m
    sig_inv = invert(sigma)
    if sig_inv is None:
        raise ValueError("sigma must be invertible")
    n_mat = (sig_inv * sigma.star()).scale_sign(eps) - Mat.identity(R, n)
    idx = nilpotency_index(n_mat)
    if idx is None:
        raise ValueError("sigma is not almost hermitian: N not nilpotent")

    gram_big = kron(Mat.identity(R, n), d.gram)
    gram_big_inv = kron(Mat.identity(R, n), d.gram_inv)

    def tw(x: Mat) -> Mat:
        return gram_big_inv * x.star() * gram_big

    s_form = kron(sigma, d.phi)
    zeta_star = d.adjoint(zeta)
    rhs_const = kron(sigma, d.phi + zeta - zeta_star)

    sigma_n_powers = []
    power = sigma * n_mat
    for _ in range(1, idx):
        sigma_n_powers.append(power)
        power = power * n_mat

    def span_solve(defect: Mat, start: int):
        """Write defect = sum_{k>=start} sigma N^k (x) X_k, or return None."""
        mats = sigma_n_powers[start - 1:]
        if not mats:
            return [] if defect.is_zero() else None
        rows = len(mats) * m

        def fun(stack: Mat) -> Mat:
            acc = Mat.zero(R, n * m, n * m)
            for i, sn in enumerate(mats):
                blockpart = stack.submatrix(i * m, (i + 1) * m, 0, m)
                acc = acc + kron(sn, blockpart)
            return acc

        sols = solve_affine(R, (rows, m), fun, defect, all_solutions=False)
        if not sols:
            return None
        stack = sols[0]
        return [stack.submatrix(i * m, (i + 1) * m, 0, m) for i in range(len(mats))]

    f_p = Mat.identity(R, n * m)
    z_p = -kron(sigma, zeta)
    steps = []
    residual = None
    for p in range(depth + 1):
        lhs = tw(f_p) * s_form * f_p
        rhs = rhs_const + z_p - tw(z_p)
        defect = lhs - rhs
        decomposition = span_solve(defect, p + 1)
        steps.append(
            {
                "p": p,
                "defect_zero": defect.is_zero(),
                "defect_in_span": decomposition is not None,
            }
        )
        residual = defect
        if p == depth:
            break
        if decomposition is None:
            break
        kappa_next = -decomposition[0] if decomposition else Mat.zero(R, m, m)
        u = kron(_mat_power(n_mat, p + 1), kappa_next)
        f_p = f_p + u
        z_p = z_p + tw(u) * s_form
    exact_zero = residual is not None and residual.is_zero()
    return {
        "nilpotency_index": idx,
        "depth": depth,
        "steps": steps,
        "residual_zero": exact_zero,
        "residual_in_span": steps[-1]["defect_in_span"] if steps else False,
        "f": f_p,
        "z": z_p,
        "residual": residual,
        "passed": all(s["defect_in_span"] for s in steps)
        and (exact_zero if depth >= idx else True),
    }


def _mat_power(m: Mat, k: int) -> Mat:
    out = Mat.identity(m.ring, m.rows)
    for _ in range(k):
        out = out * m
    return out


# ---------------------------------------------------------------------------
# gamma(t)^* gamma(t) = 1 + nu t  (polynomial square root of a unipotent)


def sqrt_one_plus_nu_t(nu: Mat, lam, gram: Mat | None = None):
    """Polynomial gamma(t) with gamma^* gamma = 1 + nu*t exactly, for nu
    nilpotent and self-adjoint and lambda a central split unit.

    Follows the recursion gamma_1 = 1 + lambda nu t, then repeatedly strips
    the lowest offending t-coefficient b (checked self-adjoint) with the
    factor (1 - lambda b t^k); nilpotency of nu terminates the loop.  All
    coefficients stay in the subring generated by lambda and nu.
    """
    R = nu.ring
    n = nu.rows
    ident = Mat.identity(R, n)
    if gram is not None:
        gram_inv = invert(gram)

        def adj(x):
            return gram_inv * x.star() * gram

    else:

        def adj(x):
            return x.star()

    if adj(nu) != nu:
        raise ValueError("nu must be self-adjoint")
    idx = nilpotency_index(nu)
    if idx is None:
        raise ValueError("nu must be nilpotent")
    if R.add(lam, R.conj(lam)) != R.one or not R.is_central(lam):
        raise ValueError("lambda must be a central split unit")

    def star_poly(p: MatPoly) -> MatPoly:
        return MatPoly(R, n, n, [adj(c) for c in p.coeffs])

    target = MatPoly(R, n, n, [ident, nu])
    gamma = MatPoly(R, n, n, [ident, nu.scale_left(lam)])
    for _ in range(2 * idx + 4):
        err = star_poly(gamma) * gamma - target
        if err.is_zero():
            break
        k = next(i for i, c in enumerate(err.coeffs) if not c.is_zero())
        b = err.coeff(k)
        if adj(b) != b:
            raise AssertionError("offending coefficient is not self-adjoint")
        correction = MatPoly(R, n, n, [ident] + [Mat.zero(R, n)] * (k - 1) + [-b.scale_left(lam)])
        gamma = correction * gamma
    else:
        raise AssertionError("square-root recursion failed to terminate")

    subring = _generated_subring(R, n, [ident, ident.scale_left(lam), nu])
    coeff_ok = all(c in subring for c in gamma.coeffs)
    commute_ok = all(c * nu == nu * c for c in gamma.coeffs)
    report = {
        "nilpotency_index": idx,
        "gamma_degree": gamma.degree,
        "identity_exact": (star_poly(gamma) * gamma) == target,
        "coefficients_in_generated_subring": coeff_ok,
        "coefficients_commute_with_nu": commute_ok,
    }
    report["passed"] = all(v for v in report.values() if isinstance(v, bool))
    return gamma, report


def _generated_subring(ring: Ring, n: int, gens: list[Mat], cap: int = 65536):
    """Closure of the generators under addition and multiplication."""
    span = set(gens)
    span.add(Mat.zero(ring, n))
    frontier = list(span)
    while frontier:
        cur = frontier.pop()
        new = []
        for g in list(span):
            new.append(cur + g)
            new.append(cur * g)
            new.append(g * cur)
        for x in new:
            if x not in span:
                if len(span) >= cap:
                    raise CapExceeded("generated subring exceeds cap")
                span.add(x)
                frontier.append(x)
    return span


# ---------------------------------------------------------------------------
# projector conjugation (square-zero ideal)


def projector_conjugator(
    p0: Mat, p1: Mat, ideal_gens: list[Mat], gram: Mat | None = None
) -> tuple[Mat, dict]:
    """alpha = 1 - p0 - p1 + 2 p0 p1 conjugates p1 to p0 and is unitary.

    Preconditions (each reported individually): p0, p1 self-adjoint
    idempotents whose difference sigma lies in the given square-zero
    additive ideal.  Verifies the three sigma relations, alpha = 1 mod the
    ideal, alpha*alpha^* = 1 and alpha p1 = p0 alpha, all exactly.
    """
    R = p0.ring
    n = p0.rows
    ident = Mat.identity(R, n)
    if gram is not None:
        gram_inv = invert(gram)

        def adj(x):
            return gram_inv * x.star() * gram

    else:

        def adj(x):
            return x.star()

    ideal = MatSubgroup(R, n, n, ideal_gens)
    sigma = p1 - p0
    report = {
        "p0_idempotent": p0 * p0 == p0,
        "p0_selfadjoint": adj(p0) == p0,
        "p1_idempotent": p1 * p1 == p1,
        "p1_selfadjoint": adj(p1) == p1,
        "sigma_in_ideal": ideal.contains(sigma),
        "ideal_square_zero": all(
            (a * b).is_zero() for a in ideal_gens for b in ideal_gens
        ),
    }
    two = R.int_embed(2)
    alpha = ident - p0 - p1 + (p0 * p1).scale_left(two)
    report["alpha_equals_1_minus_sigma_plus_2p0sigma"] = alpha == (
        ident - sigma + (p0 * sigma).scale_left(two)
    )
    report["sigma_relation_split"] = sigma == p0 * sigma + sigma * p0
    report["sigma_relation_sandwich"] = (sigma * p0 * sigma).is_zero()
    sq = sigma * sigma
    report["sigma_relation_square"] = (
        sq.is_zero() and sq == sq * p0 and sq == p0 * sq
    )
    report["alpha_unit_mod_ideal"] = ideal.contains(alpha - ident)
    report["alpha_times_adjoint_is_1"] = alpha * adj(alpha) == ident
    report["alpha_conjugates_p1_to_p0"] = alpha * p1 == p0 * alpha
    report["passed"] = all(v for v in report.values() if isinstance(v, bool))
    return alpha, report
