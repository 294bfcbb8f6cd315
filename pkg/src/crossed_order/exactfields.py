"""Exact arithmetic in prime fields, finite extension fields and F_q(t).

Three field families are supported:

* ``prime_field(p)``: residues ``0 .. p-1``.
* ``extension_field(p, modulus)``: ``F_p[u]/(m)`` with ``m`` monic irreducible,
  given by ascending coefficients.  An element is stored as the integer code
  ``sum(c_i * p**i)`` of its reduced coefficient vector.
* ``rational_function_field(base, var)``: ``F_q(t)`` over a finite field, with
  elements stored as ``(num, den)`` coefficient tuples (base-field codes,
  ascending), coprime, ``den`` monic.

Representations are canonical, so equality is equality of representations.
Fields are interned by descriptor: two calls with the same arguments return
the same object.

Deterministic choices (roots, roots of unity) pick the least element under
:meth:`Field.sort_key`.  For finite fields this is the integer code, which
orders coefficient vectors lexicographically from the top coefficient down.
For ``F_q(t)`` the key is ``(deg den, den, deg num, num)`` with each
polynomial read from its leading coefficient down.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from itertools import product
from typing import Iterator

import numpy as np

from .errors import FieldError, NoRootOfUnityError

__all__ = [
    "Field",
    "FiniteField",
    "RationalFunctionField",
    "FieldElement",
    "AutomorphismSpec",
    "prime_field",
    "extension_field",
    "rational_function_field",
    "field_from_descriptor",
    "nth_root",
    "primitive_root_of_unity",
    "is_pth_power",
    "apply_automorphism",
    "is_prime",
]

_ADD_TABLE_LIMIT = 1024
_LOG_TABLE_LIMIT = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


# ---------------------------------------------------------------------------
# plain polynomials over F_p (ascending int lists); only used for moduli
# ---------------------------------------------------------------------------

def _zp_strip(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _zp_mod(a, m, p):
    a = _zp_strip([c % p for c in a])
    m = _zp_strip(m)
    inv = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        c = (a[-1] * inv) % p
        shift = len(a) - len(m)
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        a = _zp_strip(a)
    return a


def _zp_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _zp_irreducible(m, p) -> bool:
    """Trial division by every monic polynomial of degree <= deg(m)/2."""
    deg = len(m) - 1
    for d in range(1, deg // 2 + 1):
        for low in product(range(p), repeat=d):
            if not _zp_mod(m, list(low) + [1], p):
                return False
    return True


# ---------------------------------------------------------------------------
# fields
# ---------------------------------------------------------------------------

class Field:
    """Common interface.  Concrete fields: FiniteField, RationalFunctionField."""

    p: int
    kind: str

    # -- construction -----------------------------------------------------
    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field is self:
                return value
            return self.embed(value)
        if isinstance(value, (int, np.integer)):
            return self._from_int(int(value))
        return self.decode(value)

    def zero(self) -> "FieldElement":
        return self(0)

    def one(self) -> "FieldElement":
        return self(1)

    @property
    def characteristic(self) -> int:
        return self.p

    def __repr__(self) -> str:
        return f"<{self}>"

    # hooks
    def _from_int(self, n: int) -> "FieldElement":
        raise NotImplementedError

    def embed(self, x: "FieldElement") -> "FieldElement":
        raise FieldError(f"cannot embed an element of {x.field} into {self}")


class FiniteField(Field):
    """``F_p`` (``modulus`` None) or ``F_p[u]/(modulus)``."""

    is_finite = True

    def __init__(self, p: int, modulus: tuple[int, ...] | None = None):
        if not is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        self.p = p
        if modulus is None:
            self.kind = "prime"
            self.modulus = None
            self.degree = 1
        else:
            m = _zp_strip([c % p for c in modulus])
            if len(m) < 2:
                raise FieldError("modulus must have degree >= 1")
            if m[-1] != 1:
                raise FieldError("modulus must be monic")
            if not _zp_irreducible(m, p):
                raise FieldError(f"modulus {list(modulus)} is reducible over F_{p}")
            self.kind = "extension"
            self.modulus = tuple(m)
            self.degree = len(m) - 1
        self.q = p ** self.degree
        if self.q > _LOG_TABLE_LIMIT:
            raise FieldError(f"fields above {_LOG_TABLE_LIMIT} elements are not supported")
        self._pw = np.array([p ** i for i in range(self.degree)], dtype=np.int64)
        codes = np.arange(self.q, dtype=np.int64)
        self._digits = (codes[:, None] // self._pw[None, :]) % p
        self._build_log_tables()
        if self.q <= _ADD_TABLE_LIMIT:
            s = (self._digits[:, None, :] + self._digits[None, :, :]) % p
            self._add_table = s @ self._pw
        else:
            self._add_table = None
        self._neg_table = ((-self._digits) % p) @ self._pw

    def _build_log_tables(self):
        p, q = self.p, self.q
        if q == 2:
            self.generator_code = 1
            self._exp = np.array([1], dtype=np.int64)
            self._log = np.array([-1, 0], dtype=np.int64)
            return
        order = q - 1
        factors = prime_factors(order)

        def mul_code(a, b):
            if self.kind == "prime":
                return (a * b) % p
            da = [int(v) for v in self._digits[a]]
            db = [int(v) for v in self._digits[b]]
            r = _zp_mod(_zp_mul(da, db, p), list(self.modulus), p)
            return sum(c * p ** i for i, c in enumerate(r))

        def pow_code(a, e):
            r, b = 1, a
            while e:
                if e & 1:
                    r = mul_code(r, b)
                b = mul_code(b, b)
                e >>= 1
            return r

        for cand in range(2, q):
            if all(pow_code(cand, order // r) != 1 for r in factors):
                break
        else:  # pragma: no cover - a primitive element always exists
            raise FieldError("no primitive element found")
        self.generator_code = cand
        exp = np.empty(order, dtype=np.int64)
        x = 1
        for i in range(order):
            exp[i] = x
            x = mul_code(x, cand)
        log = np.full(q, -1, dtype=np.int64)
        log[exp] = np.arange(order, dtype=np.int64)
        self._exp, self._log = exp, log

    # -- descriptors --------------------------------------------------------
    def descriptor(self) -> dict:
        if self.kind == "prime":
            return {"kind": "prime", "p": self.p}
        return {"kind": "extension", "p": self.p, "modulus": list(self.modulus)}

    def __str__(self) -> str:
        return f"F_{self.q}"

    # -- code arithmetic ----------------------------------------------------
    def _add(self, a: int, b: int) -> int:
        if self.kind == "prime":
            return (a + b) % self.p
        if self._add_table is not None:
            return int(self._add_table[a, b])
        return int((((self._digits[a] + self._digits[b]) % self.p) @ self._pw))

    def _neg(self, a: int) -> int:
        if self.kind == "prime":
            return (-a) % self.p
        return int(self._neg_table[a])

    def _sub(self, a: int, b: int) -> int:
        return self._add(a, self._neg(b))

    def _mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.kind == "prime":
            return (a * b) % self.p
        return int(self._exp[(self._log[a] + self._log[b]) % (self.q - 1)])

    def _inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("division by zero in " + str(self))
        return int(self._exp[(-self._log[a]) % (self.q - 1)])

    def _pow(self, a: int, n: int) -> int:
        if a == 0:
            if n < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 1 if n == 0 else 0
        return int(self._exp[(int(self._log[a]) * n) % (self.q - 1)])

    def _frob(self, a: int, k: int) -> int:
        if a == 0 or k % self.degree == 0:
            return a
        return int(self._exp[(int(self._log[a]) * self.p ** (k % self.degree)) % (self.q - 1)])

    def _from_int(self, n: int) -> "FieldElement":
        return FieldElement(self, n % self.p)

    def _key(self, rep):
        return rep

    def _is_zero(self, rep) -> bool:
        return rep == 0

    # -- elements -------------------------------------------------------------
    def element(self, coeffs) -> "FieldElement":
        """Element from ascending coefficients in ``u`` (reduced mod the modulus)."""
        c = [int(v) % self.p for v in coeffs]
        if self.kind == "extension":
            c = _zp_mod(c, list(self.modulus), self.p) if len(c) > self.degree else c
        elif len(c) > 1:
            raise FieldError("prime-field elements take a single coefficient")
        return FieldElement(self, sum(v * self.p ** i for i, v in enumerate(c)))

    def gen(self) -> "FieldElement":
        """The class of ``u`` (``F_p`` itself: 1)."""
        if self.kind == "prime":
            return self.one()
        return FieldElement(self, self.p if self.degree > 1 else int(self._neg_table[self.modulus[0]]))

    def from_code(self, code: int) -> "FieldElement":
        if not 0 <= code < self.q:
            raise FieldError(f"code {code} out of range for {self}")
        return FieldElement(self, int(code))

    def elements(self) -> Iterator["FieldElement"]:
        for c in range(self.q):
            yield FieldElement(self, c)

    def units(self) -> Iterator["FieldElement"]:
        for c in range(1, self.q):
            yield FieldElement(self, c)

    def coefficients(self, x: "FieldElement") -> list[int]:
        return [int(v) for v in self._digits[x.rep]]

    def log(self, x: "FieldElement") -> int:
        if x.rep == 0:
            raise FieldError("zero has no discrete logarithm")
        return int(self._log[x.rep])

    def exp(self, k: int) -> "FieldElement":
        return FieldElement(self, int(self._exp[k % (self.q - 1)]))

    # -- serialization --------------------------------------------------------
    def encode(self, x: "FieldElement"):
        if self.kind == "prime":
            return x.rep
        return self.coefficients(x)

    def decode(self, obj) -> "FieldElement":
        if isinstance(obj, bool):
            raise FieldError("booleans are not field elements")
        if isinstance(obj, int):
            return self._from_int(obj)
        if isinstance(obj, (list, tuple)) and all(isinstance(v, int) and not isinstance(v, bool) for v in obj):
            return self.element(obj)
        raise FieldError(f"cannot decode {obj!r} as an element of {self}")

    def format(self, x: "FieldElement") -> str:
        if self.kind == "prime":
            return str(x.rep)
        return _poly_str([str(c) for c in self.coefficients(x)], "u", lambda s: s)

    def embed(self, x: "FieldElement") -> "FieldElement":
        src = x.field
        if isinstance(src, FiniteField) and src.kind == "prime" and src.p == self.p:
            return FieldElement(self, x.rep)
        return super().embed(x)

    # -- structure ------------------------------------------------------------
    @property
    def automorphism_degree(self) -> int:
        return self.degree

    def prime_subfield(self) -> "FiniteField":
        return prime_field(self.p)

    def coordinates(self, x: "FieldElement") -> list["FieldElement"]:
        """Coordinates over the prime field in the basis ``1, u, ..., u^(D-1)``."""
        P0 = self.prime_subfield()
        return [FieldElement(P0, int(v)) for v in self._digits[x.rep]]

    def from_coordinates(self, coords) -> "FieldElement":
        return self.element([c.rep for c in coords])

    def algebra_generators(self) -> list["FieldElement"]:
        """Generators of the field as an algebra over its prime subfield."""
        return [self.gen()] if self.degree > 1 else []

    def roots_of_unity(self, n: int) -> list["FieldElement"]:
        """All ``x`` with ``x**n == 1``, in canonical order."""
        return [FieldElement(self, c) for c in self._roots(1, n)]

    def _roots(self, a: int, n: int) -> list[int]:
        """Sorted codes of all ``y`` with ``y**n == a`` (``a`` nonzero)."""
        qm1 = self.q - 1
        k = int(self._log[a])
        g = math.gcd(n, qm1)
        if k % g:
            return []
        m = qm1 // g
        j0 = ((k // g) * pow(n // g, -1, m)) % m if m > 1 else 0
        return sorted(int(self._exp[(j0 + i * m) % qm1]) for i in range(g))


class RationalFunctionField(Field):
    """``F_q(t)`` over a finite base field."""

    is_finite = False
    kind = "ratfunc"

    def __init__(self, base: FiniteField, var: str = "t"):
        if not isinstance(base, FiniteField):
            raise FieldError("rational function fields need a finite base field")
        if not var.isidentifier():
            raise FieldError(f"bad indeterminate name {var!r}")
        self.base = base
        self.var = var
        self.p = base.p

    def descriptor(self) -> dict:
        return {"kind": "ratfunc", "base": self.base.descriptor(), "var": self.var}

    def __str__(self) -> str:
        return f"{self.base}({self.var})"

    # -- polynomial arithmetic over the base (tuples of codes) -------------
    def _pstrip(self, a) -> tuple:
        a = list(a)
        while a and a[-1] == 0:
            a.pop()
        return tuple(a)

    def _padd(self, a, b) -> tuple:
        B = self.base
        n = max(len(a), len(b))
        out = [B._add(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)]
        return self._pstrip(out)

    def _pneg(self, a) -> tuple:
        return tuple(self.base._neg(c) for c in a)

    def _psub(self, a, b) -> tuple:
        return self._padd(a, self._pneg(b))

    def _pscale(self, a, c) -> tuple:
        if c == 0:
            return ()
        return self._pstrip([self.base._mul(x, c) for x in a])

    def _pmul(self, a, b) -> tuple:
        if not a or not b:
            return ()
        B = self.base
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = B._add(out[i + j], B._mul(x, y))
        return self._pstrip(out)

    def _ppow(self, a, n: int) -> tuple:
        r, b = (1,), a
        while n:
            if n & 1:
                r = self._pmul(r, b)
            b = self._pmul(b, b)
            n >>= 1
        return r

    def _pdivmod(self, a, b) -> tuple[tuple, tuple]:
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        B = self.base
        a = list(a)
        inv = B._inv(b[-1])
        quo = [0] * max(len(a) - len(b) + 1, 0)
        while len(a) >= len(b) and a:
            c = B._mul(a[-1], inv)
            shift = len(a) - len(b)
            quo[shift] = c
            for i, bc in enumerate(b):
                a[shift + i] = B._sub(a[shift + i], B._mul(c, bc))
            a = list(self._pstrip(a))
        return self._pstrip(quo), self._pstrip(a)

    def _pmonic(self, a) -> tuple:
        if not a:
            return a
        return self._pscale(a, self.base._inv(a[-1]))

    def _pgcd(self, a, b) -> tuple:
        while b:
            a, b = b, self._pdivmod(a, b)[1]
        return self._pmonic(a)

    def _pfrob(self, a, k: int) -> tuple:
        return tuple(self.base._frob(c, k) for c in a)

    def _normalize(self, num, den) -> tuple[tuple, tuple]:
        num, den = self._pstrip(num), self._pstrip(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            return (), (1,)
        g = self._pgcd(num, den)
        if g != (1,):
            num = self._pdivmod(num, g)[0]
            den = self._pdivmod(den, g)[0]
        lc = den[-1]
        if lc != 1:
            inv = self.base._inv(lc)
            num, den = self._pscale(num, inv), self._pscale(den, inv)
        return num, den

    # -- code arithmetic ----------------------------------------------------
    def _add(self, a, b):
        (n1, d1), (n2, d2) = a, b
        if d1 == d2:
            return self._normalize(self._padd(n1, n2), d1)
        return self._normalize(self._padd(self._pmul(n1, d2), self._pmul(n2, d1)), self._pmul(d1, d2))

    def _neg(self, a):
        return (self._pneg(a[0]), a[1])

    def _sub(self, a, b):
        return self._add(a, self._neg(b))

    def _mul(self, a, b):
        if not a[0] or not b[0]:
            return ((), (1,))
        return self._normalize(self._pmul(a[0], b[0]), self._pmul(a[1], b[1]))

    def _inv(self, a):
        if not a[0]:
            raise ZeroDivisionError("division by zero in " + str(self))
        return self._normalize(a[1], a[0])

    def _pow(self, a, n: int):
        if n < 0:
            a, n = self._inv(a), -n
        return self._normalize(self._ppow(a[0], n), self._ppow(a[1], n))

    def _frob(self, a, k: int):
        if k % self.base.degree == 0:
            return a
        return (self._pfrob(a[0], k), self._pfrob(a[1], k))

    def _from_int(self, n: int) -> "FieldElement":
        c = n % self.p
        return FieldElement(self, ((c,) if c else (), (1,)))

    def _key(self, rep):
        num, den = rep
        return (len(den), tuple(reversed(den)), len(num), tuple(reversed(num)))

    def _is_zero(self, rep) -> bool:
        return not rep[0]

    # -- elements -------------------------------------------------------------
    def poly(self, coeffs) -> "FieldElement":
        """Polynomial in the indeterminate with base-field coefficients (ascending)."""
        codes = [self.base(c).rep for c in coeffs]
        return FieldElement(self, self._normalize(codes, (1,)))

    def fraction(self, num, den) -> "FieldElement":
        n = [self.base(c).rep for c in num]
        d = [self.base(c).rep for c in den]
        return FieldElement(self, self._normalize(n, d))

    def gen(self) -> "FieldElement":
        """The indeterminate ``t``."""
        return FieldElement(self, ((0, 1), (1,)))

    def constant(self, c) -> "FieldElement":
        c = self.base(c)
        return FieldElement(self, ((c.rep,) if c.rep else (), (1,)))

    def embed(self, x: "FieldElement") -> "FieldElement":
        src = x.field
        if src is self.base:
            return self.constant(x)
        if isinstance(src, FiniteField) and src.kind == "prime" and src.p == self.p:
            return self.constant(self.base.embed(x))
        if isinstance(src, RationalFunctionField) and src.p == self.p and src.var == self.var:
            if src.base.kind == "prime":
                return FieldElement(self, x.rep)
        return super().embed(x)

    def numerator(self, x: "FieldElement") -> list["FieldElement"]:
        return [FieldElement(self.base, c) for c in x.rep[0]]

    def denominator(self, x: "FieldElement") -> list["FieldElement"]:
        return [FieldElement(self.base, c) for c in x.rep[1]]

    # -- serialization --------------------------------------------------------
    def encode(self, x: "FieldElement"):
        num, den = x.rep
        B = self.base
        return {
            "num": [B.encode(FieldElement(B, c)) for c in num],
            "den": [B.encode(FieldElement(B, c)) for c in den],
        }

    def decode(self, obj) -> "FieldElement":
        if isinstance(obj, bool):
            raise FieldError("booleans are not field elements")
        if isinstance(obj, int):
            return self._from_int(obj)
        if isinstance(obj, dict):
            extra = set(obj) - {"num", "den"}
            if extra or "num" not in obj:
                raise FieldError(f"rational function needs 'num' (and optional 'den'), got {sorted(obj)}")
            num = [self.base.decode(c).rep for c in obj["num"]]
            den = [self.base.decode(c).rep for c in obj.get("den", [1])]
            if not self._pstrip(den):
                raise FieldError("zero denominator")
            return FieldElement(self, self._normalize(num, den))
        raise FieldError(f"cannot decode {obj!r} as an element of {self}")

    def format(self, x: "FieldElement") -> str:
        B = self.base
        wrap = (lambda s: s if s.isdigit() else f"({s})")

        def pstr(codes):
            return _poly_str([B.format(FieldElement(B, c)) for c in codes], self.var, wrap)

        num, den = x.rep
        if den == (1,):
            return pstr(num)
        return f"({pstr(num)})/({pstr(den)})"

    # -- structure ------------------------------------------------------------
    @property
    def automorphism_degree(self) -> int:
        return self.base.degree

    def prime_subfield(self) -> "RationalFunctionField":
        """``F_p(t)``: the subfield every supported automorphism fixes."""
        return rational_function_field(prime_field(self.p), self.var)

    def coordinates(self, x: "FieldElement") -> list["FieldElement"]:
        """Coordinates over ``F_p(t)`` in the basis ``1, u, ..., u^(D-1)``."""
        P0 = self.prime_subfield()
        D = self.base.degree
        num, den = x.rep
        if D == 1:
            return [FieldElement(P0, x.rep)]
        # multiply through by the Frobenius conjugates of den; their product
        # is Frobenius-invariant, hence has coefficients in F_p
        norm = den
        for k in range(1, D):
            conj = self._pfrob(den, k)
            num = self._pmul(num, conj)
            norm = self._pmul(norm, conj)
        if any(c >= self.p for c in norm):  # pragma: no cover - invariant
            raise FieldError("norm left the prime field")
        B = self.base
        out = []
        for i in range(D):
            comp = [int(B._digits[c][i]) for c in num]
            out.append(FieldElement(P0, P0._normalize(comp, norm)))
        return out

    def from_coordinates(self, coords) -> "FieldElement":
        u = self.constant(self.base.gen())
        acc = self.zero()
        power = self.one()
        for c in coords:
            acc = acc + self.embed(c) * power
            power = power * u
        return acc

    def algebra_generators(self) -> list["FieldElement"]:
        return [self.constant(self.base.gen())] if self.base.degree > 1 else []

    def roots_of_unity(self, n: int) -> list["FieldElement"]:
        return [self.constant(r) for r in self.base.roots_of_unity(n)]

    def p_basis_components(self, x: "FieldElement") -> list["FieldElement"]:
        """``[c_0, ..., c_{p-1}]`` with ``x = sum(c_j**p * t**j)``."""
        p = self.p
        num, den = x.rep
        P = self._pmul(num, self._ppow(den, p - 1))
        out = []
        for j in range(p):
            coeffs = [self.base._frob(P[e], self.base.degree - 1) if e < len(P) else 0
                      for e in range(j, len(P), p)]
            out.append(FieldElement(self, self._normalize(coeffs, den)))
        return out

    # -- roots ----------------------------------------------------------------
    def _poly_root(self, a: tuple, n: int) -> tuple | None:
        """Some polynomial ``r`` with ``r**n == a`` (``a`` nonzero), or None."""
        B, p = self.base, self.p
        while n % p == 0:
            if any(a[e] for e in range(len(a)) if e % p):
                return None
            a = tuple(B._frob(a[e], B.degree - 1) for e in range(0, len(a), p))
            n //= p
        if n == 1:
            return a
        deg = len(a) - 1
        if deg % n:
            return None
        lc_roots = B._roots(a[-1], n)
        if not lc_roots:
            return None
        d = deg // n
        lead = lc_roots[0]
        r = [0] * (d + 1)
        r[d] = lead
        denom = B._inv(B._mul(n % p, B._pow(lead, n - 1)))
        for k in range(1, d + 1):
            cur = self._ppow(self._pstrip(r), n)
            pos = n * d - k
            have = cur[pos] if pos < len(cur) else 0
            want = a[pos] if pos < len(a) else 0
            r[d - k] = B._mul(B._sub(want, have), denom)
        r = self._pstrip(r)
        return r if self._ppow(r, n) == tuple(a) else None


def _poly_str(coeffs: list[str], var: str, wrap) -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == "0":
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mono:
            terms.append(c)
        elif c == "1":
            terms.append(mono)
        else:
            terms.append(f"{wrap(c)}{mono}")
    return "+".join(terms) if terms else "0"


@functools.lru_cache(maxsize=None)
def prime_field(p: int) -> FiniteField:
    return FiniteField(p)


@functools.lru_cache(maxsize=None)
def _extension_field(p: int, modulus: tuple[int, ...]) -> FiniteField:
    return FiniteField(p, modulus)


def extension_field(p: int, modulus) -> FiniteField:
    m = tuple(int(c) % p for c in modulus) if is_prime(p) else tuple(modulus)
    return _extension_field(p, m)


@functools.lru_cache(maxsize=None)
def rational_function_field(base: FiniteField, var: str = "t") -> RationalFunctionField:
    return RationalFunctionField(base, var)


def field_from_descriptor(desc: dict) -> Field:
    if not isinstance(desc, dict):
        raise FieldError(f"field descriptor must be an object, got {desc!r}")
    kind = desc.get("kind")
    allowed = {"prime": {"kind", "p"}, "extension": {"kind", "p", "modulus"}, "ratfunc": {"kind", "base", "var"}}
    if kind not in allowed:
        raise FieldError(f"unknown field kind {kind!r}")
    extra = set(desc) - allowed[kind]
    if extra:
        raise FieldError(f"unknown keys in field descriptor: {sorted(extra)}")
    if kind == "prime":
        p = desc.get("p")
        if not isinstance(p, int) or isinstance(p, bool):
            raise FieldError("prime field needs an integer 'p'")
        return prime_field(p)
    if kind == "extension":
        p, mod = desc.get("p"), desc.get("modulus")
        if not isinstance(p, int) or not isinstance(mod, list) or not all(isinstance(c, int) for c in mod):
            raise FieldError("extension field needs integer 'p' and integer list 'modulus'")
        return extension_field(p, mod)
    base = field_from_descriptor(desc.get("base"))
    if not isinstance(base, FiniteField):
        raise FieldError("ratfunc base must be a finite field")
    return rational_function_field(base, desc.get("var", "t"))


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------

class FieldElement:
    """Immutable element; ``rep`` is canonical for its field."""

    __slots__ = ("field", "rep")

    def __init__(self, field: Field, rep):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rep", rep)

    def __setattr__(self, name, value):
        raise AttributeError("field elements are immutable")

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                return self.field(other)
            return other
        if isinstance(other, (int, np.integer)):
            return self.field._from_int(int(other))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field._add(self.rep, o.rep))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field._sub(self.rep, o.rep))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field._sub(o.rep, self.rep))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field._mul(self.rep, o.rep))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field._mul(self.rep, self.field._inv(o.rep)))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field._mul(o.rep, self.field._inv(self.rep)))

    def __neg__(self):
        return FieldElement(self.field, self.field._neg(self.rep))

    def __pow__(self, n: int):
        return FieldElement(self.field, self.field._pow(self.rep, int(n)))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field._inv(self.rep))

    def is_zero(self) -> bool:
        return self.field._is_zero(self.rep)

    def is_one(self) -> bool:
        return self == self.field.one()

    def sort_key(self):
        return self.field._key(self.rep)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field is other.field and self.rep == other.rep
        if isinstance(other, (int, np.integer)):
            return self.rep == self.field._from_int(int(other)).rep
        return NotImplemented

    def __hash__(self):
        return hash((id(self.field), self.rep))

    def __str__(self):
        return self.field.format(self)

    def __repr__(self):
        return f"{self.field.format(self)} in {self.field}"

    def encode(self):
        return self.field.encode(self)

    def multiplicative_order(self) -> int:
        if self.is_zero():
            raise FieldError("zero has no multiplicative order")
        F = self.field
        if isinstance(F, RationalFunctionField):
            if len(self.rep[0]) != 1 or self.rep[1] != (1,):
                raise FieldError("non-constant rational functions have infinite order")
            return FieldElement(F.base, self.rep[0][0]).multiplicative_order()
        k = F.log(self)
        return (F.q - 1) // math.gcd(k, F.q - 1)


# ---------------------------------------------------------------------------
# automorphisms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AutomorphismSpec:
    """Frobenius power ``x -> x**(p**power)``.

    On ``F_q(t)`` it acts on coefficients and fixes ``t``.  ``power`` is kept
    reduced modulo the degree of the (base) finite field.
    """

    field: Field
    power: int

    def __post_init__(self):
        if not isinstance(self.power, (int, np.integer)) or isinstance(self.power, bool):
            raise FieldError(f"automorphism power must be an integer, got {self.power!r}")
        if not isinstance(self.field, (FiniteField, RationalFunctionField)):
            raise FieldError("unsupported field for automorphisms")
        object.__setattr__(self, "power", int(self.power) % self.field.automorphism_degree)

    @property
    def is_identity(self) -> bool:
        return self.power == 0

    @property
    def order(self) -> int:
        D = self.field.automorphism_degree
        return D // math.gcd(self.power, D)

    def compose(self, other: "AutomorphismSpec") -> "AutomorphismSpec":
        return AutomorphismSpec(self.field, self.power + other.power)

    def inverse(self) -> "AutomorphismSpec":
        return AutomorphismSpec(self.field, -self.power)

    def __call__(self, x: FieldElement) -> FieldElement:
        return apply_automorphism(self, x)


def apply_automorphism(aut: AutomorphismSpec, x: FieldElement) -> FieldElement:
    if x.field is not aut.field:
        raise FieldError("automorphism applied to an element of another field")
    if aut.power == 0:
        return x
    return FieldElement(x.field, x.field._frob(x.rep, aut.power))


# ---------------------------------------------------------------------------
# roots
# ---------------------------------------------------------------------------

def nth_roots(x: FieldElement, n: int) -> list[FieldElement]:
    """Every ``y`` with ``y**n == x``, in canonical order."""
    if n < 1:
        raise FieldError("root order must be positive")
    if x.is_zero():
        raise FieldError("zero has no unit root")
    F = x.field
    if isinstance(F, FiniteField):
        return [FieldElement(F, c) for c in F._roots(x.rep, n)]
    num, den = x.rep
    rn = F._poly_root(num, n)
    if rn is None:
        return []
    rd = F._poly_root(den, n)
    if rd is None:
        return []
    y = FieldElement(F, F._normalize(rn, rd))
    roots = {y * z for z in F.roots_of_unity(n)}
    return sorted(roots, key=FieldElement.sort_key)


def nth_root(x: FieldElement, n: int) -> FieldElement | None:
    """Least ``y`` with ``y**n == x``, or None when ``x`` is not an n-th power."""
    roots = nth_roots(x, n)
    return roots[0] if roots else None


def primitive_root_of_unity(field: Field, n: int) -> FieldElement:
    """Least element of exact multiplicative order ``n``."""
    if n < 1:
        raise FieldError("root order must be positive")
    if n % field.p == 0:
        raise NoRootOfUnityError(f"n={n} is not prime to the characteristic {field.p}")
    base = field.base if isinstance(field, RationalFunctionField) else field
    if (base.q - 1) % n:
        raise NoRootOfUnityError(
            f"{field} has no primitive {n}-th root of unity ({n} does not divide {base.q - 1})"
        )
    step = (base.q - 1) // n
    cands = sorted(int(base._exp[(k * step) % (base.q - 1)]) for k in range(n) if math.gcd(k, n) == 1)
    z = FieldElement(base, cands[0])
    return field(z) if field is not base else z


def is_pth_power(x: FieldElement) -> tuple[bool, FieldElement | None]:
    """``(True, y)`` with ``y**p == x`` if x is a p-th power, else ``(False, None)``."""
    F = x.field
    if x.is_zero():
        return True, x
    if isinstance(F, FiniteField):
        return True, x ** (F.q // F.p)
    num, den = x.rep
    p = F.p
    if any(num[e] for e in range(len(num)) if e % p) or any(den[e] for e in range(len(den)) if e % p):
        return False, None
    B = F.base
    rn = tuple(B._frob(num[e], B.degree - 1) for e in range(0, len(num), p))
    rd = tuple(B._frob(den[e], B.degree - 1) for e in range(0, len(den), p))
    return True, FieldElement(F, F._normalize(rn, rd))
