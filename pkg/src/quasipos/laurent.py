"""Sparse Laurent polynomials in one or two variables over Z or Z/2.

Values are immutable.  Coefficients are Python integers, so products never
overflow.  The zero polynomial is the empty term set; asking for its order or
degree raises :class:`UndefinedOrderError`.
"""

from __future__ import annotations

import json
from collections import defaultdict
from typing import Iterable, Mapping, Union

__all__ = [
    "Laurent",
    "LaurentError",
    "UndefinedOrderError",
    "PoleError",
    "poly_add",
    "poly_mul",
    "ord_in",
    "deg_in",
    "substitute",
]

INT = "int"
MOD2 = "mod2"


class LaurentError(ValueError):
    """Ring or arity mismatch, or an unsupported operation."""


class UndefinedOrderError(LaurentError):
    pass


class PoleError(LaurentError):
    """Evaluation at 0 of a variable that occurs with a negative exponent."""


Exps = tuple


class Laurent:
    __slots__ = ("ring", "vars", "_terms", "_hash")

    def __init__(self, terms: Mapping[Exps, int] | Iterable = (), vars=("v",), ring: str = INT):
        if ring not in (INT, MOD2):
            raise LaurentError(f"unknown ring {ring!r}")
        vars = tuple(vars)
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Exps, int] = {}
        for e, c in items:
            e = (e,) if isinstance(e, int) else tuple(e)
            if len(e) != len(vars):
                raise LaurentError(f"exponent {e} does not match variables {vars}")
            c = int(c)
            if ring == MOD2:
                c &= 1
            if c:
                clean[e] = clean.get(e, 0) + c
        if ring == MOD2:
            clean = {e: 1 for e, c in clean.items() if c & 1}
        else:
            clean = {e: c for e, c in clean.items() if c}
        self.ring = ring
        self.vars = vars
        self._terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def _raw(cls, terms: dict, vars, ring) -> "Laurent":
        p = object.__new__(cls)
        p.ring = ring
        p.vars = vars
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, vars=("v",), ring=INT) -> "Laurent":
        return cls._raw({}, tuple(vars), ring)

    @classmethod
    def one(cls, vars=("v",), ring=INT) -> "Laurent":
        vars = tuple(vars)
        return cls._raw({(0,) * len(vars): 1}, vars, ring)

    @classmethod
    def monomial(cls, exps, coeff: int = 1, vars=("v",), ring=INT) -> "Laurent":
        return cls({exps: coeff}, vars, ring)

    # -- basic protocol -----------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    @property
    def arity(self) -> int:
        return len(self.vars)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def coeff(self, exps) -> int:
        exps = (exps,) if isinstance(exps, int) else tuple(exps)
        return self._terms.get(exps, 0)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self._const(other)
        if not isinstance(other, Laurent):
            return NotImplemented
        return self.ring == other.ring and self.vars == other.vars and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, self.vars, frozenset(self._terms.items())))
        return self._hash

    def _const(self, c: int) -> "Laurent":
        return Laurent({(0,) * self.arity: c}, self.vars, self.ring)

    def _check(self, other: "Laurent") -> None:
        if self.ring != other.ring:
            raise LaurentError(f"ring mismatch: {self.ring} vs {other.ring}")
        if self.vars != other.vars:
            raise LaurentError(f"variable mismatch: {self.vars} vs {other.vars}")

    def _coerce(self, other) -> "Laurent":
        if isinstance(other, int):
            return self._const(other)
        if not isinstance(other, Laurent):
            raise LaurentError(f"cannot combine Laurent with {type(other).__name__}")
        self._check(other)
        return other

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other) -> "Laurent":
        other = self._coerce(other)
        out = dict(self._terms)
        if self.ring == MOD2:
            for e in other._terms:
                if e in out:
                    del out[e]
                else:
                    out[e] = 1
        else:
            for e, c in other._terms.items():
                s = out.get(e, 0) + c
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Laurent._raw(out, self.vars, self.ring)

    __radd__ = __add__

    def __neg__(self) -> "Laurent":
        if self.ring == MOD2:
            return self
        return Laurent._raw({e: -c for e, c in self._terms.items()}, self.vars, self.ring)

    def __sub__(self, other) -> "Laurent":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Laurent":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Laurent":
        other = self._coerce(other)
        acc: dict = defaultdict(int)
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                acc[tuple(a + b for a, b in zip(e1, e2))] += c1 * c2
        if self.ring == MOD2:
            out = {e: 1 for e, c in acc.items() if c & 1}
        else:
            out = {e: c for e, c in acc.items() if c}
        return Laurent._raw(out, self.vars, self.ring)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Laurent":
        if n < 0:
            if len(self._terms) != 1:
                raise LaurentError("only monomials have Laurent inverses")
            (e, c), = self._terms.items()
            if c not in (1, -1):
                raise LaurentError("monomial with non-unit coefficient is not invertible")
            return Laurent._raw({tuple(-k * (-n) for k in e): c ** (-n)}, self.vars, self.ring)
        result = Laurent.one(self.vars, self.ring)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, *exps: int) -> "Laurent":
        """Multiply by the monomial with the given exponents."""
        if len(exps) != self.arity:
            raise LaurentError("shift needs one exponent per variable")
        return Laurent._raw(
            {tuple(a + b for a, b in zip(e, exps)): c for e, c in self._terms.items()},
            self.vars,
            self.ring,
        )

    def mod2(self) -> "Laurent":
        return Laurent(self._terms, self.vars, MOD2)

    # -- order and degree ---------------------------------------------------

    def _index(self, var) -> int:
        if isinstance(var, int):
            return var
        try:
            return self.vars.index(var)
        except ValueError:
            raise LaurentError(f"no variable {var!r} in {self.vars}") from None

    def ord(self, var=0) -> int:
        if not self._terms:
            raise UndefinedOrderError("order of the zero polynomial is undefined")
        i = self._index(var)
        return min(e[i] for e in self._terms)

    def deg(self, var=0) -> int:
        if not self._terms:
            raise UndefinedOrderError("degree of the zero polynomial is undefined")
        i = self._index(var)
        return max(e[i] for e in self._terms)

    def invert_var(self, var=0) -> "Laurent":
        """Replace ``var`` by its inverse."""
        i = self._index(var)
        out = {}
        for e, c in self._terms.items():
            e = list(e)
            e[i] = -e[i]
            out[tuple(e)] = c
        return Laurent._raw(out, self.vars, self.ring)

    def part(self, var, exponent: int) -> "Laurent":
        """Coefficient of ``var**exponent`` as a polynomial in the remaining variables."""
        i = self._index(var)
        rest = self.vars[:i] + self.vars[i + 1:]
        out = {e[:i] + e[i + 1:]: c for e, c in self._terms.items() if e[i] == exponent}
        return Laurent._raw(out, rest, self.ring)

    # -- substitution -------------------------------------------------------

    def substitute(self, mapping: Mapping[str, Union[int, tuple]], vars=None) -> "Laurent":
        """Substitute variables.

        ``mapping`` sends a variable name to either an integer constant
        (evaluation) or a pair ``(target_var, exponent)`` (monomial rescaling).
        Unmapped variables are kept under their own name.  Evaluating a variable
        at 0 where it occurs with a negative exponent raises :class:`PoleError`.
        """
        for name in mapping:
            self._index(name)
        targets = []
        for name in self.vars:
            m = mapping.get(name, (name, 1))
            if isinstance(m, tuple):
                if m[0] not in targets:
                    targets.append(m[0])
        if vars is not None:
            vars = tuple(vars)
            missing = [t for t in targets if t not in vars]
            if missing:
                raise LaurentError(f"target variables {missing} missing from {vars}")
            targets = list(vars)
        targets = tuple(targets)
        acc: dict = defaultdict(int)
        for e, c in self._terms.items():
            new = [0] * len(targets)
            for name, k in zip(self.vars, e):
                m = mapping.get(name, (name, 1))
                if isinstance(m, tuple):
                    new[targets.index(m[0])] += m[1] * k
                else:
                    if m == 0:
                        if k < 0:
                            raise PoleError(f"{name}={m} is a pole of a term with exponent {k}")
                        if k > 0:
                            c = 0
                    elif k < 0:
                        if m not in (1, -1):
                            raise LaurentError(f"cannot evaluate {name}^{k} at {m} over the integers")
                        c *= m ** (-k)
                    else:
                        c *= m ** k
                if not c:
                    break
            if c:
                acc[tuple(new)] += c
        return Laurent(acc, targets or ("_",), self.ring) if targets else _scalar(acc, self.ring)

    # -- printing and serialization -----------------------------------------

    def __repr__(self) -> str:
        return f"Laurent({self}, ring={self.ring!r})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items()):
            mono = "*".join(
                name if k == 1 else f"{name}^{k}" for name, k in zip(self.vars, e) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out

    def to_json(self) -> dict:
        return {
            "ring": self.ring,
            "vars": list(self.vars),
            "terms": [[list(e), c] for e, c in sorted(self._terms.items())],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, data) -> "Laurent":
        if isinstance(data, str):
            data = json.loads(data)
        vars = tuple(data["vars"])
        p = cls(((tuple(e), c) for e, c in data["terms"]), vars, data["ring"])
        if len(p) != len(data["terms"]):
            raise LaurentError("serialized terms contain zero or repeated exponents")
        return p


def _scalar(acc, ring) -> int:
    total = sum(acc.values())
    return total & 1 if ring == MOD2 else total


def poly_add(a: Laurent, b: Laurent) -> Laurent:
    a._check(b)
    return a + b


def poly_mul(a: Laurent, b: Laurent) -> Laurent:
    a._check(b)
    return a * b


def ord_in(p: Laurent, var=0) -> int:
    return p.ord(var)


def deg_in(p: Laurent, var=0) -> int:
    return p.deg(var)


def substitute(p: Laurent, mapping, vars=None):
    return p.substitute(mapping, vars)


# Shorthands used throughout the package.

def v_poly(terms: Mapping[int, int], ring=INT) -> Laurent:
    return Laurent({(k,): c for k, c in terms.items()}, ("v",), ring)


def a_poly(terms: Mapping[int, int] | Iterable[int], ring=MOD2) -> Laurent:
    if not isinstance(terms, Mapping):
        acc: dict = defaultdict(int)
        for k in terms:
            acc[k] += 1
        terms = acc
    return Laurent({(k,): c for k, c in terms.items()}, ("a",), ring)
