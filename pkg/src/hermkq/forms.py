"""Epsilon-hermitian and epsilon-quadratic forms on free modules A^n.

Three variants are carried: the hermitian form phi itself (max), an explicit
generator phi0 (el), and the class of phi0 modulo gamma - eps*gamma^* (min).
Column conventions throughout: forms evaluate as x^* phi y.
"""

from __future__ import annotations

import json

from .additive import MatSubgroup, solve_affine
from .linalg import Mat, diag_block, invert
from .rings import Ring, ring_from_json


class DegenerateFormError(ValueError):
    pass


_SHIFT_CACHE: dict = {}
_SELFADJ_CACHE: dict = {}


def _basis_mats(ring: Ring, n: int):
    from .additive import _basis_mats as bm, additive_basis

    return bm(additive_basis(ring), n, n)


def shift_subgroup(ring: Ring, eps: int, n: int) -> MatSubgroup:
    """Additive subgroup {gamma - eps*gamma^*} of n x n matrices."""
    key = (ring.key(), eps, n)
    if key not in _SHIFT_CACHE:
        gens = [b - b.star().scale_sign(eps) for b in _basis_mats(ring, n)]
        _SHIFT_CACHE[key] = MatSubgroup(ring, n, n, gens)
    return _SHIFT_CACHE[key]


def selfadjoint_subgroup(ring: Ring, eps: int, n: int) -> MatSubgroup:
    """S(E): the gamma with gamma^* = eps*gamma (kernel of the shift map)."""
    key = (ring.key(), eps, n)
    if key not in _SELFADJ_CACHE:
        sols = solve_affine(
            ring, (n, n), lambda g: g.star() - g.scale_sign(eps), Mat.zero(ring, n)
        )
        _SELFADJ_CACHE[key] = MatSubgroup(ring, n, n, sols)
    return _SELFADJ_CACHE[key]


class HermForm:
    """Nonsingular or singular eps-hermitian form: phi with phi^* = eps*phi."""

    def __init__(self, ring: Ring, eps: int, phi: Mat):
        if eps not in (1, -1):
            raise ValueError("epsilon must be +1 or -1")
        if not phi.is_square():
            raise ValueError("phi must be square")
        if phi.star() != phi.scale_sign(eps):
            raise ValueError("phi fails phi^* = eps*phi")
        self.ring = ring
        self.eps = eps
        self.n = phi.rows
        self.phi = phi
        self._inverse = None
        self._inverse_known = False

    def inverse(self) -> Mat | None:
        if not self._inverse_known:
            self._inverse = invert(self.phi) if self.n else Mat(self.ring, [])
            self._inverse_known = True
        return self._inverse

    @property
    def nondegenerate(self) -> bool:
        return self.n == 0 or self.inverse() is not None

    def adjoint(self, f: Mat) -> Mat:
        """f^* = phi^{-1} . conj_transpose(f) . phi, taken against this form."""
        inv = self.inverse()
        if inv is None:
            raise DegenerateFormError("adjoint needs a nondegenerate form")
        return inv * f.star() * self.phi

    def to_json(self):
        return {
            "ring": self.ring.to_json(),
            "epsilon": self.eps,
            "variant": "max",
            "matrix": self.phi.to_strs(),
        }

    def __eq__(self, other):
        return (
            isinstance(other, HermForm)
            and self.ring == other.ring
            and self.eps == other.eps
            and self.phi == other.phi
        )

    def __hash__(self):
        return hash((self.eps, self.phi))


class QuadFormEl:
    """Object of the enlarged quadratic category: phi0 is part of the data."""

    def __init__(self, ring: Ring, eps: int, phi0: Mat):
        if eps not in (1, -1):
            raise ValueError("epsilon must be +1 or -1")
        if not phi0.is_square():
            raise ValueError("phi0 must be square")
        self.ring = ring
        self.eps = eps
        self.n = phi0.rows
        self.phi0 = phi0
        self._herm = None

    def associated(self) -> HermForm:
        if self._herm is None:
            phi = self.phi0 + self.phi0.star().scale_sign(self.eps)
            self._herm = HermForm(self.ring, self.eps, phi)
        return self._herm

    @property
    def nondegenerate(self) -> bool:
        return self.associated().nondegenerate

    def min_canonical(self) -> Mat:
        """Canonical representative of the class of phi0 modulo shifts."""
        return shift_subgroup(self.ring, self.eps, self.n).coset_canonical(self.phi0)

    def to_json(self, variant: str = "el"):
        return {
            "ring": self.ring.to_json(),
            "epsilon": self.eps,
            "variant": variant,
            "matrix": self.phi0.to_strs(),
        }

    def __eq__(self, other):
        return (
            isinstance(other, QuadFormEl)
            and self.ring == other.ring
            and self.eps == other.eps
            and self.phi0 == other.phi0
        )

    def __hash__(self):
        return hash((self.eps, self.phi0))

    def __repr__(self):
        return f"QuadFormEl(eps={self.eps}, phi0={self.phi0.key()})"


class QuadFormMin:
    """The class of a QuadFormEl modulo gamma - eps*gamma^*."""

    def __init__(self, rep: QuadFormEl):
        self.rep = rep

    def canonical(self) -> Mat:
        return self.rep.min_canonical()

    def __eq__(self, other):
        return (
            isinstance(other, QuadFormMin)
            and self.rep.ring == other.rep.ring
            and self.rep.eps == other.rep.eps
            and min_equal(self.rep, other.rep)
        )

    def __hash__(self):
        return hash((self.rep.eps, self.canonical()))


def pairing_chi(h: HermForm, x, y):
    """chi(x, y) = x^* phi y for column vectors x, y."""
    ring = h.ring
    if not isinstance(x, Mat):
        x = Mat(ring, [[v] for v in x])
    if not isinstance(y, Mat):
        y = Mat(ring, [[v] for v in y])
    if x.rows != h.n or y.rows != h.n:
        raise ValueError("vector length mismatch")
    return (x.star() * h.phi * y).entries[0][0]


def associated_hermitian(q: QuadFormEl) -> HermForm:
    return q.associated()


def is_even(h: HermForm, cap=None) -> Mat | None:
    """Some phi0 with phi0 + eps*phi0^* = phi, or None."""
    sols = solve_affine(
        h.ring,
        (h.n, h.n),
        lambda g: g + g.star().scale_sign(h.eps),
        h.phi,
        all_solutions=False,
        cap=cap,
    )
    return sols[0] if sols else None


def min_witness(a: QuadFormEl, b: QuadFormEl) -> Mat | None:
    """gamma with b.phi0 - a.phi0 = gamma - eps*gamma^*, or None."""
    if a.ring != b.ring or a.eps != b.eps or a.n != b.n:
        raise ValueError("forms are not comparable")
    diff = b.phi0 - a.phi0
    sols = solve_affine(
        a.ring,
        (a.n, a.n),
        lambda g: g - g.star().scale_sign(a.eps),
        diff,
        all_solutions=False,
    )
    return sols[0] if sols else None


def min_equal(a: QuadFormEl, b: QuadFormEl) -> bool:
    if a.ring != b.ring or a.eps != b.eps or a.n != b.n:
        raise ValueError("forms are not comparable")
    return shift_subgroup(a.ring, a.eps, a.n).contains(b.phi0 - a.phi0)


def hyperbolic(ring: Ring, eps: int, m: int) -> QuadFormEl:
    """H(A^m): phi0 = [[0, 1], [0, 0]] in m x m blocks."""
    if m < 0:
        raise ValueError("rank must be >= 0")
    z = Mat.zero(ring, m)
    i = Mat.identity(ring, m)
    phi0 = Mat(
        ring,
        [list(z.entries[r]) + list(i.entries[r]) for r in range(m)]
        + [list(z.entries[r]) + list(z.entries[r]) for r in range(m)],
    )
    return QuadFormEl(ring, eps, phi0)


def hyperbolic_map(u: Mat) -> Mat:
    """H(u) = u + (u^*)^{-1} acting on H(A^m); satisfies g^* phi0 g = phi0."""
    inv_star = invert(u.star())
    if inv_star is None:
        raise ValueError("u must be invertible")
    g = diag_block(u.ring, [u, inv_star])
    m = u.rows
    ring = u.ring
    phi0 = hyperbolic(ring, 1, m).phi0
    if g.star() * phi0 * g != phi0:
        raise AssertionError("hyperbolic map failed its defining identity")
    return g


def psi_normalize(q: QuadFormEl) -> Mat:
    """psi = phi^{-1} phi0 with psi + psi^* = 1, adjoints taken against phi."""
    h = q.associated()
    inv = h.inverse()
    if inv is None:
        raise DegenerateFormError("psi normalization needs a nondegenerate form")
    psi = inv * q.phi0
    if psi + h.adjoint(psi) != Mat.identity(q.ring, q.n):
        raise AssertionError("psi + psi^* = 1 failed")
    return psi


def direct_sum(a: QuadFormEl, b: QuadFormEl) -> QuadFormEl:
    if a.ring != b.ring or a.eps != b.eps:
        raise ValueError("ring or epsilon mismatch")
    return QuadFormEl(a.ring, a.eps, diag_block(a.ring, [a.phi0, b.phi0]))


def form_from_json(doc):
    """Parse {"ring":..., "epsilon":..., "variant":..., "matrix":[[...]]}."""
    if isinstance(doc, str):
        doc = json.loads(doc)
    ring = ring_from_json(doc["ring"])
    eps = int(doc["epsilon"])
    variant = doc.get("variant", "el")
    mat = Mat.from_strs(ring, doc["matrix"])
    if variant == "max":
        return HermForm(ring, eps, mat)
    if variant in ("el", "min"):
        q = QuadFormEl(ring, eps, mat)
        return QuadFormMin(q) if variant == "min" else q
    raise ValueError(f"unknown variant {variant!r}")
