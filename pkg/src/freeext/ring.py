"""Weighted polynomial rings, their divided-power duals, and contraction.

A :class:`RingSpec` fixes variable names, positive integer weights and the base
field.  :class:`Poly` lives in the ordinary ring R (or S = R[t]) and
:class:`DualPoly` in the divided-power ring Q, whose monomial with exponent
vector ``a`` stands for ``X_1^[a_1] ... X_r^[a_r]``.  Dual variable names are
the upper-cased ring names (``x`` acts on ``X``).

When the spec carries the distinguished t-variable it is always the last one.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Sequence

from .exactfield import QQ, FieldSpec

Exps = tuple[int, ...]


class RingMismatchError(ValueError):
    """Operands live over different ring specs."""


class ParseError(ValueError):
    """Malformed polynomial expression; carries a 1-based column."""

    def __init__(self, message: str, column: int, text: str = ""):
        super().__init__(f"column {column}: {message}")
        self.column = column
        self.text = text


@dataclass(frozen=True)
class RingSpec:
    names: tuple[str, ...]
    weights: tuple[int, ...] = ()
    field: FieldSpec = QQ
    has_t: bool = False

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        weights = tuple(self.weights) if self.weights else (1,) * len(names)
        object.__setattr__(self, "weights", weights)
        if len(weights) != len(names):
            raise ValueError("one weight per variable required")
        if any(w < 1 for w in weights):
            raise ValueError("weights must be positive integers")
        if len({n.lower() for n in names}) != len(names):
            raise ValueError(f"variable names must be distinct (case-insensitively): {names}")
        for n in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", n):
                raise ValueError(f"bad variable name {n!r}")
        if self.has_t and not names:
            raise ValueError("t-variable flagged on an empty ring")

    @classmethod
    def standard(cls, names: str | Sequence[str], field: FieldSpec = QQ, weights=(), t: bool = False):
        if isinstance(names, str):
            names = [n.strip() for n in names.split(",") if n.strip()]
        return cls(tuple(names), tuple(weights), field, t)

    @property
    def nvars(self) -> int:
        return len(self.names)

    @property
    def dual_names(self) -> tuple[str, ...]:
        return tuple(n.upper() for n in self.names)

    @property
    def t_index(self) -> int:
        if not self.has_t:
            raise ValueError("ring has no t-variable")
        return self.nvars - 1

    @property
    def t_weight(self) -> int:
        return self.weights[self.t_index]

    def degree(self, exps: Exps) -> int:
        return sum(w * e for w, e in zip(self.weights, exps))

    def monomials(self, d: int) -> list[Exps]:
        """Exponent vectors of weighted degree ``d`` in canonical order."""
        return list(_monomials(self.weights, d))

    def index(self, d: int) -> dict[Exps, int]:
        return _index(self.weights, d)

    def dim(self, d: int) -> int:
        return len(_monomials(self.weights, d)) if d >= 0 else 0

    def with_t(self, weight: int = 1, name: str = "t") -> "RingSpec":
        if self.has_t:
            raise ValueError("ring already has a t-variable")
        return RingSpec(self.names + (name,), self.weights + (weight,), self.field, True)

    def base(self) -> "RingSpec":
        """R for S = R[t]: drop the t-variable."""
        k = self.t_index
        return RingSpec(self.names[:k], self.weights[:k], self.field, False)

    def over(self, field: FieldSpec) -> "RingSpec":
        return RingSpec(self.names, self.weights, field, self.has_t)

    def var(self, name_or_index) -> "Poly":
        i = name_or_index if isinstance(name_or_index, int) else self.lookup(name_or_index)
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): 1})

    def dual_var(self, name_or_index, power: int = 1) -> "DualPoly":
        i = name_or_index if isinstance(name_or_index, int) else self.lookup(name_or_index)
        e = [0] * self.nvars
        e[i] = power
        return DualPoly(self, {tuple(e): 1})

    def lookup(self, name: str) -> int:
        for i, n in enumerate(self.names):
            if n == name or n.upper() == name:
                return i
        raise KeyError(name)

    def one(self) -> "Poly":
        return Poly(self, {(0,) * self.nvars: 1})

    def zero(self) -> "Poly":
        return Poly(self, {})

    def poly(self, text: str) -> "Poly":
        return parse_poly(self, text)

    def dual(self, text: str) -> "DualPoly":
        return parse_dual(self, text)

    def __str__(self):
        ws = ",".join(map(str, self.weights))
        return f"{self.field}[{', '.join(self.names)}; weights {ws}]"


@lru_cache(maxsize=None)
def _monomials(weights: tuple[int, ...], d: int) -> tuple[Exps, ...]:
    if d < 0:
        return ()
    out: list[Exps] = []

    def rec(i: int, rest: int, acc: list[int]):
        if i == len(weights) - 1:
            if rest % weights[i] == 0:
                out.append(tuple(acc + [rest // weights[i]]))
            return
        for e in range(rest // weights[i], -1, -1):
            rec(i + 1, rest - e * weights[i], acc + [e])

    if not weights:
        return ((),) if d == 0 else ()
    rec(0, d, [])
    return tuple(out)


@lru_cache(maxsize=None)
def _index(weights: tuple[int, ...], d: int) -> dict[Exps, int]:
    return {m: i for i, m in enumerate(_monomials(weights, d))}


def _sort_key(spec: RingSpec, exps: Exps):
    return (-spec.degree(exps), tuple(-e for e in exps))


class _Sparse:
    """Shared sparse storage: exponent tuple -> nonzero field element."""

    __slots__ = ("spec", "terms", "_hash")

    def __init__(self, spec: RingSpec, terms=None):
        self.spec = spec
        k = spec.field
        clean: dict[Exps, object] = {}
        if terms:
            n = spec.nvars
            for e, c in dict(terms).items():
                e = tuple(e)
                if len(e) != n or any(x < 0 for x in e):
                    raise ValueError(f"bad exponent vector {e} for {spec}")
                c = k(c)
                if c:
                    clean[e] = clean.get(e, 0) + c
                    if not clean[e]:
                        del clean[e]
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, spec, terms):
        obj = cls.__new__(cls)
        obj.spec = spec
        obj.terms = terms
        obj._hash = None
        return obj

    def _check(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.spec != self.spec:
            raise RingMismatchError(f"{self.spec} vs {other.spec}")

    def __add__(self, other):
        if not isinstance(other, _Sparse):
            other = self._constant(other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return self._raw(self.spec, out)

    __radd__ = __add__

    def __neg__(self):
        return self._raw(self.spec, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, _Sparse):
            other = self._constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = self.spec.field(c)
        if not c:
            return self._raw(self.spec, {})
        return self._raw(self.spec, {e: c * v for e, v in self.terms.items()})

    def _constant(self, c):
        return type(self)(self.spec, {(0,) * self.spec.nvars: c})

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return self == self._constant(other)
        if type(other) is not type(self):
            return NotImplemented
        return self.spec == other.spec and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, self.spec, frozenset(self.terms.items())))
        return self._hash

    def __len__(self):
        return len(self.terms)

    def sorted_terms(self) -> list[tuple[Exps, object]]:
        return sorted(self.terms.items(), key=lambda kv: _sort_key(self.spec, kv[0]))

    def degrees(self) -> set[int]:
        return {self.spec.degree(e) for e in self.terms}

    def weighted_degree(self) -> int | None:
        """Common weighted degree of all terms; ``None`` if not homogeneous (or zero)."""
        ds = self.degrees()
        return ds.pop() if len(ds) == 1 else None

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def homogeneous_components(self) -> dict[int, "_Sparse"]:
        parts: dict[int, dict] = {}
        for e, c in self.terms.items():
            parts.setdefault(self.spec.degree(e), {})[e] = c
        return {d: self._raw(self.spec, t) for d, t in sorted(parts.items())}

    def coefficient(self, exps: Exps):
        return self.terms.get(tuple(exps), self.spec.field.zero)

    def to_vector(self, d: int) -> list:
        """Coordinates of the degree-``d`` part in the canonical monomial basis."""
        idx = self.spec.index(d)
        v = [self.spec.field.zero] * len(idx)
        for e, c in self.terms.items():
            j = idx.get(e)
            if j is not None:
                v[j] = c
        return v

    @classmethod
    def from_vector(cls, spec: RingSpec, d: int, vec: Sequence):
        mons = spec.monomials(d)
        return cls._raw(spec, {m: c for m, c in zip(mons, vec) if c})

    def map_spec(self, spec: RingSpec, pad: int = 0):
        """Re-home into ``spec`` (same field); ``pad`` zero exponents are appended."""
        return self._raw(spec, {e + (0,) * pad: c for e, c in self.terms.items()})

    def reduce_mod(self, p: int):
        """Image over F_p of a rational polynomial."""
        return type(self)(self.spec.over(FieldSpec(p)), self.terms)

    # printing

    def _var_str(self, i: int, e: int) -> str:
        raise NotImplementedError

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for n, (e, c) in enumerate(self.sorted_terms()):
            neg = _is_negative(c)
            mag = -c if neg else c
            factors = [self._var_str(i, k) for i, k in enumerate(e) if k]
            if mag == 1 and factors:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if n == 0:
                pieces.append(("-" if neg else "") + body)
            else:
                pieces.append((" - " if neg else " + ") + body)
        return "".join(pieces)

    def __repr__(self):
        return f"{type(self).__name__}({str(self)!r})"


def _is_negative(c) -> bool:
    return isinstance(c, (Fraction, int)) and c < 0


class Poly(_Sparse):
    """Element of the ordinary polynomial ring (R or S)."""

    __slots__ = ()

    def __mul__(self, other):
        if not isinstance(other, _Sparse):
            return self.scale(other)
        self._check(other)
        out: dict[Exps, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Poly._raw(self.spec, out)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = self.spec.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def constant_term(self):
        return self.coefficient((0,) * self.spec.nvars)

    def substitute_t_zero(self) -> "Poly":
        """Projection S -> R, t -> 0."""
        k = self.spec.t_index
        base = self.spec.base()
        return Poly._raw(base, {e[:k]: c for e, c in self.terms.items() if e[k] == 0})

    def t_coefficients(self) -> dict[int, "Poly"]:
        """Write as sum t^a * f_a with f_a in R."""
        k = self.spec.t_index
        base = self.spec.base()
        parts: dict[int, dict] = {}
        for e, c in self.terms.items():
            parts.setdefault(e[k], {})[e[:k]] = c
        return {a: Poly._raw(base, t) for a, t in parts.items()}

    def _var_str(self, i, e):
        n = self.spec.names[i]
        return n if e == 1 else f"{n}^{e}"


class DualPoly(_Sparse):
    """Element of the divided-power ring Q; exponents are divided powers."""

    __slots__ = ()

    def __mul__(self, other):
        if not isinstance(other, _Sparse):
            return self.scale(other)
        return dual_mul(self, other)

    def __rmul__(self, other):
        return self.scale(other)

    def _var_str(self, i, e):
        n = self.spec.dual_names[i]
        return n if e == 1 else f"{n}^[{e}]"

    def t_coefficients(self) -> dict[int, "DualPoly"]:
        """Write as sum T^[a] * G_a with G_a in Q_R."""
        k = self.spec.t_index
        base = self.spec.base()
        parts: dict[int, dict] = {}
        for e, c in self.terms.items():
            parts.setdefault(e[k], {})[e[:k]] = c
        return {a: DualPoly._raw(base, t) for a, t in parts.items()}


def mul(p: Poly, q: Poly) -> Poly:
    return p * q


def dual_mul(P: DualPoly, Q: DualPoly) -> DualPoly:
    """Divided-power product: X^[i] X^[j] = binom(i+j, j) X^[i+j] per variable."""
    if not isinstance(P, DualPoly) or not isinstance(Q, DualPoly):
        raise TypeError("dual_mul expects DualPoly operands")
    P._check(Q)
    out: dict[Exps, object] = {}
    for e1, c1 in P.terms.items():
        for e2, c2 in Q.terms.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            mult = 1
            for a, b in zip(e1, e2):
                if a and b:
                    mult *= comb(a + b, b)
            v = out.get(e, 0) + c1 * c2 * mult
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return DualPoly._raw(P.spec, out)


def contract(g: Poly, F: DualPoly) -> DualPoly:
    """Contraction g o F, from x_i^s o X_i^[k] = X_i^[k-s] (zero when s > k)."""
    if not isinstance(g, Poly) or not isinstance(F, DualPoly):
        raise TypeError("contract expects (Poly, DualPoly)")
    if g.spec != F.spec:
        raise RingMismatchError(f"{g.spec} vs {F.spec}")
    out: dict[Exps, object] = {}
    for eg, cg in g.terms.items():
        for eF, cF in F.terms.items():
            e = tuple(b - a for a, b in zip(eg, eF))
            if min(e, default=0) < 0:
                continue
            v = out.get(e, 0) + cg * cF
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return DualPoly._raw(F.spec, out)


def weighted_degree(p: _Sparse) -> int | None:
    return p.weighted_degree()


def monomial_basis(spec: RingSpec, d: int, dual: bool = False) -> list:
    cls = DualPoly if dual else Poly
    return [cls._raw(spec, {m: spec.field.one}) for m in spec.monomials(d)]


def _factorial_weight(spec: RingSpec, exps: Exps) -> int:
    p = spec.field.p
    w = 1
    for a in exps:
        if p and a >= p:
            raise ValueError(f"{a}! vanishes in characteristic {p}; derivative basis unavailable")
        w *= factorial(a)
    return w


def to_derivative_basis(F: DualPoly) -> DualPoly:
    """Ordinary-power coefficients of F, reading X^[a] as X^a / a!.

    Under this identification contraction becomes partial differentiation.
    """
    k = F.spec.field
    return DualPoly._raw(F.spec, {e: c / k(_factorial_weight(F.spec, e)) for e, c in F.terms.items()})


def from_derivative_basis(P: DualPoly) -> DualPoly:
    """Inverse of :func:`to_derivative_basis`: X^a = a! X^[a]."""
    return DualPoly._raw(P.spec, {e: c * _factorial_weight(P.spec, e) for e, c in P.terms.items()})


def differentiate(g: Poly, P: DualPoly) -> DualPoly:
    """Action of g by partial derivatives on P read in the ordinary-power basis."""
    if g.spec != P.spec:
        raise RingMismatchError(f"{g.spec} vs {P.spec}")
    out: dict[Exps, object] = {}
    for eg, cg in g.terms.items():
        for eP, cP in P.terms.items():
            e = tuple(b - a for a, b in zip(eg, eP))
            if min(e, default=0) < 0:
                continue
            falling = 1
            for a, b in zip(eg, eP):
                for k in range(a):
                    falling *= b - k
            v = out.get(e, 0) + cg * cP * falling
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return DualPoly._raw(P.spec, out)


def embed(p: _Sparse, spec: RingSpec):
    """Image of an element of R (or Q_R) in S = R[t] (or Q_S)."""
    if spec.base() != p.spec:
        raise RingMismatchError(f"{p.spec} does not embed in {spec}")
    return p.map_spec(spec, pad=1)


def t_power(spec: RingSpec, k: int, dual: bool = True):
    e = [0] * spec.nvars
    e[spec.t_index] = k
    cls = DualPoly if dual else Poly
    return cls._raw(spec, {tuple(e): spec.field.one})


# parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokenize(text: str):
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.end() == pos:
            break
        if m.group(1):
            toks.append(("num", int(m.group(1)), m.start(1)))
        elif m.group(2):
            toks.append(("id", m.group(2), m.start(2)))
        elif m.group(3):
            ch = m.group(3)
            if ch not in "+-*/^[]()":
                raise ParseError(f"unexpected character {ch!r}", m.start(3) + 1, text)
            toks.append((ch, ch, m.start(3)))
        pos = m.end()
    toks.append(("end", None, len(text)))
    return toks


class _Parser:
    def __init__(self, spec: RingSpec, text: str, dual: bool):
        self.spec = spec
        self.text = text
        self.dual = dual
        self.cls = DualPoly if dual else Poly
        self.toks = _tokenize(text)
        self.i = 0
        self.names = {}
        for k, n in enumerate(spec.names):
            self.names[n] = k
            self.names.setdefault(n.upper(), k)

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {kind!r}, found {what}", tok[2] + 1, self.text)
        self.i += 1
        return tok

    def error(self, msg):
        raise ParseError(msg, self.peek()[2] + 1, self.text)

    def parse(self):
        if self.peek()[0] == "end":
            self.error("empty expression")
        out = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return out

    def expr(self):
        sign = 1
        if self.peek()[0] in "+-":
            sign = -1 if self.take()[0] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self):
        acc = self.factor()
        while self.peek()[0] in ("*", "/"):
            op = self.take()[0]
            if op == "/":
                tok = self.take("num")
                if tok[1] == 0:
                    raise ParseError("division by zero", tok[2] + 1, self.text)
                acc = acc.scale(self.spec.field(Fraction(1, tok[1])))
            else:
                acc = acc * self.factor()
        return acc

    def factor(self):
        kind, val, pos = self.peek()
        if kind == "num":
            self.take()
            return self.cls(self.spec, {(0,) * self.spec.nvars: val})
        if kind == "id":
            self.take()
            if val not in self.names:
                raise ParseError(f"undeclared variable {val!r}", pos + 1, self.text)
            k = self.names[val]
            power = 1
            if self.peek()[0] == "^":
                self.take()
                if self.peek()[0] == "[":
                    self.take()
                    power = self.take("num")[1]
                    self.take("]")
                else:
                    power = self.take("num")[1]
            e = [0] * self.spec.nvars
            e[k] = power
            return self.cls(self.spec, {tuple(e): 1})
        if kind == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            if self.peek()[0] == "^":
                self.take()
                bracket = self.peek()[0] == "["
                if bracket:
                    self.take()
                k = self.take("num")[1]
                if bracket:
                    self.take("]")
                if self.dual:
                    self.error("powers of parenthesised dual expressions are ambiguous; expand them")
                inner = inner ** k
            return inner
        self.error("expected a number, variable or '('")


def parse_poly(spec: RingSpec, text: str) -> Poly:
    """Parse an element of the ordinary ring; ``x^[k]`` is read as ``x^k``."""
    return _Parser(spec, text, dual=False).parse()


def parse_dual(spec: RingSpec, text: str) -> DualPoly:
    """Parse a dual element; ``X^k`` and ``X^[k]`` both mean the divided power X^[k].

    ``*`` between factors is the divided-power product, so ``X*X`` is ``2*X^[2]``.
    """
    return _Parser(spec, text, dual=True).parse()
