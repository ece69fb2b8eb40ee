"""Finite rings with (anti)involution and their canonical element encodings.

Every ring exposes exact arithmetic (add/neg/mul/conj), a deterministic
enumeration when finite, canonical string encodings, and involution
verification.  Elements are plain hashable Python values (ints, tuples),
so they can be shared freely and used as dict keys.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from itertools import product

from .caps import CapExceeded, check_cap

_TABLE_LIMIT = 256  # build full add/mul lookup tables for rings up to this size


@dataclass
class InvolutionReport:
    """Result of checking the four involution axioms on a pair sample."""

    ring: dict
    checked_elements: int
    checked_pairs: int
    violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "ring": self.ring,
            "checked_elements": self.checked_elements,
            "checked_pairs": self.checked_pairs,
            "violations": self.violations,
            "passed": self.passed,
        }


class Ring:
    """Base class: a ring with involution and canonical encodings."""

    kind = "abstract"
    is_commutative = True
    is_field = False
    size: int | None = None
    char: int = 0

    def __init__(self):
        self.zero = self._zero()
        self.one = self._one()
        self.split_unit = None
        self._elements_cache = None

    # subclass arithmetic hooks
    def _zero(self):
        raise NotImplementedError

    def _one(self):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def conj(self, a):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def int_embed(self, n: int):
        """Image of the integer n under Z -> ring."""
        result = self.zero
        one = self.one
        m = abs(n)
        base = one
        while m:
            if m & 1:
                result = self.add(result, base)
            base = self.add(base, base)
            m >>= 1
        return result if n >= 0 else self.neg(result)

    def pow(self, a, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self.one
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def inv(self, a):
        """Multiplicative inverse, or None.  Generic scan for small rings."""
        if self.size is None:
            raise CapExceeded("inverse scan needs a finite ring")
        check_cap(self.size, "unit scan")
        one = self.one
        for b in self.elements():
            if self.mul(a, b) == one and self.mul(b, a) == one:
                return b
        return None

    def contains(self, a) -> bool:
        raise NotImplementedError

    def _enumerate(self):
        raise CapExceeded(f"{self.kind} ring is not enumerable")

    def elements(self) -> list:
        """All elements, each exactly once, in a fixed deterministic order."""
        if self._elements_cache is None:
            self._elements_cache = list(self._enumerate())
        return self._elements_cache

    def is_central(self, a) -> bool:
        if self.is_commutative:
            return True
        return all(self.mul(a, b) == self.mul(b, a) for b in self.elements())

    def find_split_unit(self):
        """Some central lambda with lambda + conj(lambda) = 1, or None."""
        if self.split_unit is not None:
            return self.split_unit
        one = self.one
        for lam in self.elements():
            if self.add(lam, self.conj(lam)) == one and self.is_central(lam):
                self.split_unit = lam
                return lam
        return None

    def set_split_unit(self, lam) -> None:
        if self.add(lam, self.conj(lam)) != self.one:
            raise ValueError("split unit must satisfy lambda + conj(lambda) = 1")
        if not self.is_central(lam):
            raise ValueError("split unit must be central")
        self.split_unit = lam

    def verify_involution(self, sample: list | None = None) -> InvolutionReport:
        """Check the involution axioms on all pairs (or on the given sample)."""
        if sample is None:
            if self.size is not None:
                check_cap(self.size * self.size, "involution pair check")
                sample = self.elements()
            else:
                sample = self.sample_elements()
        violations = []
        one = self.one
        if self.conj(one) != one:
            violations.append({"axiom": "conj(1)=1", "element": self.to_str(one)})
        for a in sample:
            if self.conj(self.conj(a)) != a:
                violations.append({"axiom": "conj(conj(a))=a", "element": self.to_str(a)})
        for a in sample:
            for b in sample:
                if self.conj(self.add(a, b)) != self.add(self.conj(a), self.conj(b)):
                    violations.append(
                        {"axiom": "conj(a+b)=conj(a)+conj(b)",
                         "elements": [self.to_str(a), self.to_str(b)]}
                    )
                if self.conj(self.mul(a, b)) != self.mul(self.conj(b), self.conj(a)):
                    violations.append(
                        {"axiom": "conj(a*b)=conj(b)*conj(a)",
                         "elements": [self.to_str(a), self.to_str(b)]}
                    )
        lam = self.split_unit
        if lam is not None:
            if self.add(lam, self.conj(lam)) != one:
                violations.append({"axiom": "lambda+conj(lambda)=1",
                                   "element": self.to_str(lam)})
            if not self.is_central(lam):
                violations.append({"axiom": "lambda central",
                                   "element": self.to_str(lam)})
        return InvolutionReport(
            ring=self.to_json(),
            checked_elements=len(sample),
            checked_pairs=len(sample) ** 2,
            violations=violations,
        )

    def sample_elements(self) -> list:
        raise CapExceeded(f"{self.kind} ring has no default sample")

    # encodings
    def to_str(self, a) -> str:
        raise NotImplementedError

    def from_str(self, s: str):
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError

    def key(self):
        return json.dumps(self.to_json(), sort_keys=True)

    def __eq__(self, other):
        return isinstance(other, Ring) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"<{self.key()}>"


class Fp(Ring):
    """Prime field Z/p with the trivial involution."""

    kind = "Fp"
    is_field = True

    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(math.isqrt(p)) + 1)):
            raise ValueError(f"p = {p} is not prime")
        self.p = p
        self.size = p
        self.char = p
        super().__init__()

    def _zero(self):
        return 0

    def _one(self):
        return 1

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def conj(self, a):
        return a

    def inv(self, a):
        if a % self.p == 0:
            return None
        return pow(a, -1, self.p)

    def contains(self, a):
        return isinstance(a, int) and 0 <= a < self.p

    def _enumerate(self):
        return range(self.p)

    def to_str(self, a):
        return str(a)

    def from_str(self, s):
        return int(s) % self.p

    def to_json(self):
        return {"kind": "Fp", "p": self.p}


class Zn(Ring):
    """Z/n with the trivial involution (the only one shipped for Z/n)."""

    kind = "Zn"

    def __init__(self, n: int):
        if n < 2:
            raise ValueError("n must be >= 2")
        self.n = n
        self.size = n
        self.char = n
        self.is_field = all(n % d for d in range(2, int(math.isqrt(n)) + 1))
        super().__init__()

    def _zero(self):
        return 0

    def _one(self):
        return 1

    def add(self, a, b):
        return (a + b) % self.n

    def neg(self, a):
        return (-a) % self.n

    def mul(self, a, b):
        return (a * b) % self.n

    def conj(self, a):
        return a

    def inv(self, a):
        if math.gcd(a, self.n) != 1:
            return None
        return pow(a, -1, self.n)

    def contains(self, a):
        return isinstance(a, int) and 0 <= a < self.n

    def _enumerate(self):
        return range(self.n)

    def to_str(self, a):
        return str(a)

    def from_str(self, s):
        return int(s) % self.n

    def to_json(self):
        return {"kind": "Zn", "n": self.n}


def _poly_trim(t):
    t = list(t)
    while t and t[-1] == 0:
        t.pop()
    return tuple(t)


def _poly_mod(num, den, p):
    """num mod den over Fp, both little-endian tuples, den monic."""
    num = list(num)
    d = len(den) - 1
    while len(num) - 1 >= d and len(num) > 0:
        lead = num[-1] % p
        if lead:
            shift = len(num) - 1 - d
            for i, c in enumerate(den):
                num[shift + i] = (num[shift + i] - lead * c) % p
        num.pop()
    return _poly_trim(num)


def _poly_mul_mod(a, b, den, p):
    out = [0] * (len(a) + len(b) - 1 or 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _poly_mod(out, den, p)


def _is_irreducible(modulus, p):
    """Trial division by all monic polynomials of degree <= deg/2."""
    deg = len(modulus) - 1
    if deg < 1 or modulus[-1] % p != 1:
        return False
    for d in range(1, deg // 2 + 1):
        for tail in product(range(p), repeat=d):
            div = tuple(tail) + (1,)
            if _poly_mod(modulus, div, p) == ():
                return False
    return True


class Fq(Ring):
    """Fp[w]/(modulus); elements are indices sum(c_i * p^i) of coefficient digits."""

    kind = "Fq"
    is_field = True

    def __init__(self, p: int, deg: int, modulus, involution: str = "trivial"):
        if any(p % d == 0 for d in range(2, int(math.isqrt(p)) + 1)) or p < 2:
            raise ValueError(f"p = {p} is not prime")
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != deg + 1:
            raise ValueError("modulus degree must equal deg")
        if not _is_irreducible(modulus, p):
            raise ValueError("modulus is reducible over Fp")
        if involution not in ("trivial", "frobenius"):
            raise ValueError("involution must be trivial or frobenius")
        if involution == "frobenius" and deg % 2 != 0:
            raise ValueError("frobenius involution needs even degree")
        self.p = p
        self.deg = deg
        self.modulus = modulus
        self.involution = involution
        self.size = p**deg
        self.char = p
        super().__init__()
        self._mul_table = None
        self._conj_table = None
        if self.size <= _TABLE_LIMIT:
            self._build_tables()

    def _digits(self, a):
        out = []
        for _ in range(self.deg):
            out.append(a % self.p)
            a //= self.p
        return out

    def _index(self, digits):
        a = 0
        for c in reversed(digits):
            a = a * self.p + c
        return a

    def _zero(self):
        return 0

    def _one(self):
        return 1

    def add(self, a, b):
        if self.p == 2:
            return a ^ b
        da, db = self._digits(a), self._digits(b)
        return self._index([(x + y) % self.p for x, y in zip(da, db)])

    def neg(self, a):
        if self.p == 2:
            return a
        return self._index([(-x) % self.p for x in self._digits(a)])

    def _mul_raw(self, a, b):
        da = _poly_trim(self._digits(a))
        db = _poly_trim(self._digits(b))
        if not da or not db:
            return 0
        prod_ = _poly_mul_mod(da, db, self.modulus, self.p)
        return self._index(list(prod_) + [0] * (self.deg - len(prod_)))

    def mul(self, a, b):
        if self._mul_table is not None:
            return self._mul_table[a * self.size + b]
        return self._mul_raw(a, b)

    def _conj_raw(self, a):
        if self.involution == "trivial":
            return a
        return self.pow(a, self.p ** (self.deg // 2))

    def conj(self, a):
        if self._conj_table is not None:
            return self._conj_table[a]
        return self._conj_raw(a)

    def _build_tables(self):
        q = self.size
        self._mul_table = [self._mul_raw(a, b) for a in range(q) for b in range(q)]
        if self.involution == "frobenius":
            self._conj_table = [self._conj_raw_power(a) for a in range(q)]
        else:
            self._conj_table = list(range(q))

    def _conj_raw_power(self, a):
        e = self.p ** (self.deg // 2)
        result = 1
        base = a
        while e:
            if e & 1:
                result = self._mul_raw(result, base)
            base = self._mul_raw(base, base)
            e >>= 1
        return result

    def inv(self, a):
        if a == 0:
            return None
        return self.pow(a, self.size - 2)

    def contains(self, a):
        return isinstance(a, int) and 0 <= a < self.size

    def _enumerate(self):
        return range(self.size)

    def to_str(self, a):
        digits = self._digits(a)
        terms = []
        for i in range(self.deg - 1, -1, -1):
            c = digits[i]
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append("w" if c == 1 else f"{c}*w")
            else:
                terms.append(f"w^{i}" if c == 1 else f"{c}*w^{i}")
        return "+".join(terms) if terms else "0"

    _TERM_RE = re.compile(r"^(?:(\d+)\*)?w(?:\^(\d+))?$|^(\d+)$")

    def from_str(self, s):
        s = s.strip()
        digits = [0] * self.deg
        if s == "0":
            return 0
        for term in s.split("+"):
            m = self._TERM_RE.match(term.strip())
            if not m:
                raise ValueError(f"bad Fq element: {s!r}")
            if m.group(3) is not None:
                digits[0] = (digits[0] + int(m.group(3))) % self.p
            else:
                c = int(m.group(1)) if m.group(1) else 1
                k = int(m.group(2)) if m.group(2) else 1
                if k >= self.deg:
                    raise ValueError(f"exponent too large in {s!r}")
                digits[k] = (digits[k] + c) % self.p
        return self._index(digits)

    def to_json(self):
        return {
            "kind": "Fq",
            "p": self.p,
            "deg": self.deg,
            "modulus": list(self.modulus),
            "involution": self.involution,
        }


def _needs_parens(s: str) -> bool:
    return any(ch in s for ch in "+-*|,[(")


def _wrap(s: str) -> str:
    return f"({s})" if _needs_parens(s) else s


def _unwrap(s: str) -> str:
    s = s.strip()
    if s.startswith("(") and s.endswith(")"):
        return s[1:-1]
    return s


class DualRing(Ring):
    """Dual numbers base[e]/(e^2) with conj(e) = +e or -e; elements are pairs."""

    kind = "Dual"

    def __init__(self, base: Ring, conj_e: str = "-e"):
        if conj_e not in ("+e", "-e"):
            raise ValueError("conj_e must be '+e' or '-e'")
        self.base = base
        self.conj_e = conj_e
        self.size = None if base.size is None else base.size**2
        self.char = base.char
        self.is_commutative = base.is_commutative
        super().__init__()

    def _zero(self):
        return (self.base.zero, self.base.zero)

    def _one(self):
        return (self.base.one, self.base.zero)

    def add(self, a, b):
        return (self.base.add(a[0], b[0]), self.base.add(a[1], b[1]))

    def neg(self, a):
        return (self.base.neg(a[0]), self.base.neg(a[1]))

    def mul(self, a, b):
        B = self.base
        return (B.mul(a[0], b[0]), B.add(B.mul(a[0], b[1]), B.mul(a[1], b[0])))

    def conj(self, a):
        B = self.base
        cb = B.conj(a[1])
        if self.conj_e == "-e":
            cb = B.neg(cb)
        return (B.conj(a[0]), cb)

    def contains(self, a):
        return (
            isinstance(a, tuple)
            and len(a) == 2
            and self.base.contains(a[0])
            and self.base.contains(a[1])
        )

    def _enumerate(self):
        return [(x, y) for y in self.base.elements() for x in self.base.elements()]

    def to_str(self, a):
        B = self.base
        sa, sb = B.to_str(a[0]), B.to_str(a[1])
        if a[1] == B.zero:
            return sa
        if a[0] == B.zero:
            return "e" if a[1] == B.one else f"{_wrap(sb)}*e"
        if a[1] == B.one:
            return f"{_wrap(sa)}+e"
        return f"{_wrap(sa)}+{_wrap(sb)}*e"

    def from_str(self, s):
        s = s.strip()
        B = self.base
        if s.endswith("*e"):
            body = s[:-2]
            depth = 0
            for i in range(len(body) - 1, -1, -1):
                ch = body[i]
                if ch == ")":
                    depth += 1
                elif ch == "(":
                    depth -= 1
                elif ch == "+" and depth == 0 and i > 0:
                    return (B.from_str(_unwrap(body[:i])), B.from_str(_unwrap(body[i + 1:])))
            return (B.zero, B.from_str(_unwrap(body)))
        if s.endswith("+e"):
            return (B.from_str(_unwrap(s[:-2])), B.one)
        if s == "e":
            return (B.zero, B.one)
        return (B.from_str(_unwrap(s)), B.zero)

    def to_json(self):
        return {"kind": "Dual", "base": self.base.to_json(), "conj_e": self.conj_e}


class Mat2Ring(Ring):
    """2x2 matrices over the base with the swap involution [[a,b],[c,d]] -> [[db],[ca]] bar."""

    kind = "Mat2"
    is_commutative = False

    def __init__(self, base: Ring):
        self.base = base
        self.size = None if base.size is None else base.size**4
        self.char = base.char
        super().__init__()

    def _zero(self):
        z = self.base.zero
        return (z, z, z, z)

    def _one(self):
        z, o = self.base.zero, self.base.one
        return (o, z, z, o)

    def add(self, x, y):
        B = self.base
        return tuple(B.add(x[i], y[i]) for i in range(4))

    def neg(self, x):
        return tuple(self.base.neg(c) for c in x)

    def mul(self, x, y):
        B = self.base
        a, b, c, d = x
        e, f, g, h = y
        return (
            B.add(B.mul(a, e), B.mul(b, g)),
            B.add(B.mul(a, f), B.mul(b, h)),
            B.add(B.mul(c, e), B.mul(d, g)),
            B.add(B.mul(c, f), B.mul(d, h)),
        )

    def conj(self, x):
        a, b, c, d = x
        B = self.base
        return (B.conj(d), B.conj(b), B.conj(c), B.conj(a))

    def contains(self, x):
        return (
            isinstance(x, tuple)
            and len(x) == 4
            and all(self.base.contains(c) for c in x)
        )

    def _enumerate(self):
        elems = self.base.elements()
        return [
            (a, b, c, d)
            for a in elems
            for b in elems
            for c in elems
            for d in elems
        ]

    def to_str(self, x):
        B = self.base
        return json.dumps(
            [[B.to_str(x[0]), B.to_str(x[1])], [B.to_str(x[2]), B.to_str(x[3])]],
            separators=(",", ":"),
        )

    def from_str(self, s):
        rows = json.loads(s)
        B = self.base
        return (
            B.from_str(rows[0][0]),
            B.from_str(rows[0][1]),
            B.from_str(rows[1][0]),
            B.from_str(rows[1][1]),
        )

    def to_json(self):
        return {"kind": "Mat2", "base": self.base.to_json()}


class ProductOpRing(Ring):
    """B x B^op with the swap involution (a|b) -> (b|a)."""

    kind = "ProductOp"

    def __init__(self, base: Ring):
        self.base = base
        self.size = None if base.size is None else base.size**2
        self.char = base.char
        self.is_commutative = base.is_commutative
        super().__init__()
        lam = (base.one, base.zero)
        self.split_unit = lam

    def _zero(self):
        return (self.base.zero, self.base.zero)

    def _one(self):
        return (self.base.one, self.base.one)

    def add(self, a, b):
        return (self.base.add(a[0], b[0]), self.base.add(a[1], b[1]))

    def neg(self, a):
        return (self.base.neg(a[0]), self.base.neg(a[1]))

    def mul(self, a, b):
        # second slot carries the opposite multiplication
        return (self.base.mul(a[0], b[0]), self.base.mul(b[1], a[1]))

    def conj(self, a):
        return (a[1], a[0])

    def contains(self, a):
        return (
            isinstance(a, tuple)
            and len(a) == 2
            and self.base.contains(a[0])
            and self.base.contains(a[1])
        )

    def _enumerate(self):
        return [(x, y) for y in self.base.elements() for x in self.base.elements()]

    def to_str(self, a):
        return f"({self.base.to_str(a[0])}|{self.base.to_str(a[1])})"

    def from_str(self, s):
        s = s.strip()
        if not (s.startswith("(") and s.endswith(")")):
            raise ValueError(f"bad ProductOp element: {s!r}")
        body = s[1:-1]
        depth = 0
        for i, ch in enumerate(body):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch == "|" and depth == 0:
                return (self.base.from_str(body[:i]), self.base.from_str(body[i + 1:]))
        raise ValueError(f"bad ProductOp element: {s!r}")

    def to_json(self):
        return {"kind": "ProductOp", "base": self.base.to_json()}


class PolySRing(Ring):
    """A[s] with conj(s) = 1 - s.  Exact arithmetic on variable-length tuples.

    The ring is infinite; enumerate() walks the polynomials of degree at most
    degree_bound when one is configured (a sample of the ring, used by the
    involution checker and split-unit search).
    """

    kind = "PolyS"

    def __init__(self, base: Ring, degree_bound: int | None = None):
        self.base = base
        self.degree_bound = degree_bound
        self.size = None
        self.char = base.char
        self.is_commutative = base.is_commutative
        super().__init__()

    def _zero(self):
        return ()

    def _one(self):
        return (self.base.one,)

    def add(self, a, b):
        B = self.base
        n = max(len(a), len(b))
        out = []
        for i in range(n):
            x = a[i] if i < len(a) else B.zero
            y = b[i] if i < len(b) else B.zero
            out.append(B.add(x, y))
        return _poly_trim_ring(out, B)

    def neg(self, a):
        return tuple(self.base.neg(c) for c in a)

    def mul(self, a, b):
        B = self.base
        if not a or not b:
            return ()
        out = [B.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] = B.add(out[i + j], B.mul(x, y))
        return _poly_trim_ring(out, B)

    def conj(self, a):
        """conj(sum c_i s^i) = sum conj(c_i) (1-s)^i, expanded binomially."""
        B = self.base
        out = [B.zero] * (len(a) or 1)
        for i, c in enumerate(a):
            cc = B.conj(c)
            if cc == B.zero:
                continue
            for k in range(i + 1):
                coeff = B.int_embed(math.comb(i, k) * (-1) ** k)
                out[k] = B.add(out[k], B.mul(cc, coeff))
        return _poly_trim_ring(out, B)

    def contains(self, a):
        return isinstance(a, tuple) and all(self.base.contains(c) for c in a) and (
            not a or a[-1] != self.base.zero
        )

    def _enumerate(self):
        if self.degree_bound is None:
            raise CapExceeded("PolyS is infinite; set a degree bound to sample it")
        if self.base.size is None:
            raise CapExceeded("PolyS base not enumerable")
        check_cap(self.base.size ** (self.degree_bound + 1), "PolyS sample")
        out = []
        for coeffs in product(self.base.elements(), repeat=self.degree_bound + 1):
            out.append(_poly_trim_ring(list(coeffs), self.base))
        return sorted(set(out), key=lambda t: (len(t), t))

    def sample_elements(self):
        bound = self.degree_bound if self.degree_bound is not None else 2
        if self.base.size is not None and self.base.size ** (bound + 1) <= 4096:
            saved = self.degree_bound
            self.degree_bound = bound
            try:
                return list(self._enumerate())
            finally:
                self.degree_bound = saved
                self._elements_cache = None
        raise CapExceeded("PolyS sample too large")

    def to_str(self, a):
        return json.dumps([self.base.to_str(c) for c in a], separators=(",", ":"))

    def from_str(self, s):
        coeffs = [self.base.from_str(c) for c in json.loads(s)]
        return _poly_trim_ring(coeffs, self.base)

    def to_json(self):
        out = {"kind": "PolyS", "base": self.base.to_json()}
        if self.degree_bound is not None:
            out["degree_bound"] = self.degree_bound
        return out


def _poly_trim_ring(coeffs, base):
    while coeffs and coeffs[-1] == base.zero:
        coeffs.pop()
    return tuple(coeffs)


class TruncPolyRing(Ring):
    """A[t]/(t^k) with conj(t) = +t or -t; elements are length-k tuples."""

    kind = "TruncPoly"

    def __init__(self, base: Ring, k: int, conj_t: str = "+t"):
        if k < 1:
            raise ValueError("truncation order must be >= 1")
        if conj_t not in ("+t", "-t"):
            raise ValueError("conj_t must be '+t' or '-t'")
        self.base = base
        self.k = k
        self.conj_t = conj_t
        self.size = None if base.size is None else base.size**k
        self.char = base.char
        self.is_commutative = base.is_commutative
        super().__init__()

    def _zero(self):
        return (self.base.zero,) * self.k

    def _one(self):
        return (self.base.one,) + (self.base.zero,) * (self.k - 1)

    def add(self, a, b):
        B = self.base
        return tuple(B.add(x, y) for x, y in zip(a, b))

    def neg(self, a):
        return tuple(self.base.neg(c) for c in a)

    def mul(self, a, b):
        B = self.base
        out = [B.zero] * self.k
        for i, x in enumerate(a):
            if x == B.zero:
                continue
            for j, y in enumerate(b):
                if i + j >= self.k:
                    break
                out[i + j] = B.add(out[i + j], B.mul(x, y))
        return tuple(out)

    def conj(self, a):
        B = self.base
        out = []
        for i, c in enumerate(a):
            cc = B.conj(c)
            if self.conj_t == "-t" and i % 2 == 1:
                cc = B.neg(cc)
            out.append(cc)
        return tuple(out)

    def contains(self, a):
        return (
            isinstance(a, tuple)
            and len(a) == self.k
            and all(self.base.contains(c) for c in a)
        )

    def _enumerate(self):
        check_cap(self.size, "TruncPoly enumeration")
        return [tuple(c) for c in product(self.base.elements(), repeat=self.k)]

    def to_str(self, a):
        return json.dumps([self.base.to_str(c) for c in a], separators=(",", ":"))

    def from_str(self, s):
        coeffs = [self.base.from_str(c) for c in json.loads(s)]
        if len(coeffs) > self.k:
            raise ValueError("too many coefficients")
        coeffs += [self.base.zero] * (self.k - len(coeffs))
        return tuple(coeffs)

    def to_json(self):
        return {
            "kind": "TruncPoly",
            "base": self.base.to_json(),
            "k": self.k,
            "conj_t": self.conj_t,
        }


def ring_from_json(doc) -> Ring:
    """Build a ring from its JSON spec (dict or JSON string)."""
    if isinstance(doc, str):
        doc = json.loads(doc)
    kind = doc.get("kind")
    if kind == "Fp":
        ring = Fp(doc["p"])
    elif kind == "Zn":
        ring = Zn(doc["n"])
    elif kind == "Fq":
        ring = Fq(doc["p"], doc["deg"], doc["modulus"], doc.get("involution", "trivial"))
    elif kind == "Dual":
        ring = DualRing(ring_from_json(doc["base"]), doc.get("conj_e", "-e"))
    elif kind == "Mat2":
        ring = Mat2Ring(ring_from_json(doc["base"]))
    elif kind == "ProductOp":
        ring = ProductOpRing(ring_from_json(doc["base"]))
    elif kind == "PolyS":
        ring = PolySRing(ring_from_json(doc["base"]), doc.get("degree_bound"))
    elif kind == "TruncPoly":
        ring = TruncPolyRing(ring_from_json(doc["base"]), doc["k"], doc.get("conj_t", "+t"))
    else:
        raise ValueError(f"unknown ring kind: {kind!r}")
    if "split_unit" in doc:
        ring.set_split_unit(ring.from_str(doc["split_unit"]))
    return ring


# convenient shared constructors
def F2() -> Fp:
    return Fp(2)


def F4(involution: str = "frobenius") -> Fq:
    return Fq(2, 2, (1, 1, 1), involution)
