"""Exact integer Laurent polynomials in one variable t, plus a gcd.

Values are dicts exponent -> coefficient with no zero entries; exponents
may be negative.  Results that are only defined up to units (+- t^k) are
normalized by ``unit_normalize``: zero valuation, positive leading
coefficient.
"""

from __future__ import annotations

from math import gcd as _int_gcd


class Laurent:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        cleaned = {}
        if coeffs:
            for e, c in coeffs.items():
                if c:
                    cleaned[int(e)] = int(c)
        self.coeffs = cleaned

    @staticmethod
    def zero() -> "Laurent":
        return Laurent()

    @staticmethod
    def one() -> "Laurent":
        return Laurent({0: 1})

    @staticmethod
    def const(n: int) -> "Laurent":
        return Laurent({0: n})

    @staticmethod
    def t(exp: int = 1, coeff: int = 1) -> "Laurent":
        return Laurent({exp: coeff})

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, Laurent) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other):
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return Laurent(out)

    def __neg__(self):
        return Laurent({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return Laurent({e: c * other for e, c in self.coeffs.items()})
        out: dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return Laurent(out)

    __rmul__ = __mul__

    def degree(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no degree")
        return max(self.coeffs)

    def valuation(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no valuation")
        return min(self.coeffs)

    def leading(self) -> int:
        return self.coeffs[self.degree()]

    def shift(self, k: int) -> "Laurent":
        return Laurent({e + k: c for e, c in self.coeffs.items()})

    def evaluate_at_1(self) -> int:
        return sum(self.coeffs.values())

    def content(self) -> int:
        g = 0
        for c in self.coeffs.values():
            g = _int_gcd(g, abs(c))
        return g

    def unit_normalize(self) -> "Laurent":
        """Canonical representative of the orbit under multiplication by
        +- t^k: valuation zero, positive leading coefficient; 0 maps to 0."""
        if not self.coeffs:
            return Laurent()
        p = self.shift(-self.valuation())
        if p.leading() < 0:
            p = -p
        return p

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs, reverse=True):
            c = self.coeffs[e]
            if e == 0:
                body = str(abs(c))
            else:
                power = "t" if e == 1 else f"t^{e}"
                body = power if abs(c) == 1 else f"{abs(c)}*{power}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    __repr__ = __str__


def _to_poly(p: Laurent) -> list[int]:
    """Coefficient list (ascending, index 0 = t^0) of p / t^val."""
    v = p.valuation()
    out = [0] * (p.degree() - v + 1)
    for e, c in p.coeffs.items():
        out[e - v] = c
    return out


def _from_poly(coeffs) -> Laurent:
    return Laurent({e: c for e, c in enumerate(coeffs)})


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Long division in Z[t]; only meaningful when each step divides."""
    num = list(num)
    dn = len(den) - 1
    lc = den[-1]
    if len(num) - 1 < dn:
        return [0], num
    quot = [0] * (len(num) - dn)
    for k in range(len(num) - 1 - dn, -1, -1):
        head = num[k + dn]
        if head % lc != 0:
            raise ArithmeticError("division is not exact")
        q = head // lc
        quot[k] = q
        if q:
            for i, d in enumerate(den):
                num[k + i] -= q * d
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return quot, num


def divexact(p: Laurent, d: Laurent) -> Laurent:
    """Exact quotient p / d; raises ArithmeticError when d does not divide p."""
    if not d:
        raise ZeroDivisionError("division by zero polynomial")
    if not p:
        return Laurent()
    quot, rem = _poly_divmod(_to_poly(p), _to_poly(d))
    if any(rem):
        raise ArithmeticError("division is not exact")
    return _from_poly(quot).shift(p.valuation() - d.valuation())


def divides(d: Laurent, p: Laurent) -> bool:
    if not d:
        return not p
    if not p:
        return True
    try:
        divexact(p, d)
        return True
    except ArithmeticError:
        return False


def _prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a reduced mod b.

    Computed division-free: R <- lc(b)*R - coeff(R, e + deg b) * t^e * b for
    e = deg a - deg b down to 0.
    """
    db = len(b) - 1
    lc = b[-1]
    r = list(a)
    for e in range(len(a) - 1 - db, -1, -1):
        head = r[e + db]
        r = [lc * c for c in r]
        if head:
            for i, d in enumerate(b):
                r[e + i] -= head * d
    while len(r) > 1 and r[-1] == 0:
        r.pop()
    return r


def _primitive(p: list[int]) -> list[int]:
    g = 0
    for c in p:
        g = _int_gcd(g, abs(c))
    if g == 0:
        return [0]
    out = [c // g for c in p]
    if out[-1] < 0:
        out = [-c for c in out]
    return out


def _subresultant_prim_gcd(a: list[int], b: list[int]) -> list[int]:
    """Gcd of two primitive nonzero polynomials via the subresultant
    remainder sequence (keeps intermediate coefficients small without
    rational arithmetic)."""
    if len(a) - 1 < len(b) - 1:
        a, b = b, a
    g = h = 1
    while True:
        if len(b) - 1 == 0:
            return [1]
        delta = (len(a) - 1) - (len(b) - 1)
        r = _prem(a, b)
        if r == [0]:
            return _primitive(b)
        denom = g * h ** delta
        a = b
        b = []
        for c in r:
            q, rem = divmod(c, denom)
            if rem:
                raise ArithmeticError("subresultant division is not exact")
            b.append(q)
        g = a[-1]
        if delta > 0:
            h = g ** delta // h ** (delta - 1)


def laurent_gcd(p: Laurent, q: Laurent) -> Laurent:
    """A greatest common divisor in Z[t, t^-1], unit-normalized.

    Split each argument into integer content and primitive part (after
    dividing out the t-valuation), take the integer gcd of contents and the
    subresultant gcd of primitive parts, and recombine.
    """
    if not p:
        return q.unit_normalize()
    if not q:
        return p.unit_normalize()
    pa, pb = _to_poly(p), _to_poly(q)
    content = _int_gcd(p.content(), q.content())
    prim = _subresultant_prim_gcd(_primitive(pa), _primitive(pb))
    return (Laurent.const(content) * _from_poly(prim)).unit_normalize()


# ---------------------------------------------------------------------------
# Multivariable polynomials over Z[t1^+-, ..., tn^+-] (construction and
# specialization only; no gcd machinery is provided for these).


class MultiLaurent:
    __slots__ = ("nvars", "coeffs")

    def __init__(self, nvars: int, coeffs=None):
        self.nvars = nvars
        cleaned = {}
        if coeffs:
            for exps, c in coeffs.items():
                if c:
                    cleaned[tuple(exps)] = int(c)
        self.coeffs = cleaned

    @staticmethod
    def zero(nvars: int) -> "MultiLaurent":
        return MultiLaurent(nvars)

    @staticmethod
    def const(nvars: int, n: int) -> "MultiLaurent":
        return MultiLaurent(nvars, {(0,) * nvars: n})

    @staticmethod
    def var(nvars: int, i: int, coeff: int = 1) -> "MultiLaurent":
        exps = [0] * nvars
        exps[i] = 1
        return MultiLaurent(nvars, {tuple(exps): coeff})

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, MultiLaurent)
            and self.nvars == other.nvars
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.nvars, frozenset(self.coeffs.items())))

    def __add__(self, other):
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return MultiLaurent(self.nvars, out)

    def __neg__(self):
        return MultiLaurent(self.nvars, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def specialize(self) -> Laurent:
        """Substitute every variable by the single variable t."""
        out: dict[int, int] = {}
        for exps, c in self.coeffs.items():
            e = sum(exps)
            out[e] = out.get(e, 0) + c
        return Laurent(out)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for exps in sorted(self.coeffs):
            c = self.coeffs[exps]
            factors = []
            for i, e in enumerate(exps):
                if e == 1:
                    factors.append(f"t{i + 1}")
                elif e:
                    factors.append(f"t{i + 1}^{e}")
            if not factors:
                body = str(abs(c))
            else:
                body = "*".join(factors)
                if abs(c) != 1:
                    body = f"{abs(c)}*{body}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    __repr__ = __str__
