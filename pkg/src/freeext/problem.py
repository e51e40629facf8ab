"""Line-oriented problem files: a ring, named forms, one task and expectations.

Example::

    # F = XYT + X^[3] over k[x, y, t]
    ring x, y, t weights 1,1,1 char 0
    dual F = X*Y*T + X^[3]
    task freeext form=F
    expect ann = t^2, t*y - x^2, y^2
    expect hilbert C = 1,3,3,1
    expect free = true

A variable called ``t`` is the distinguished t-variable and must come last.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from .algebra import ArtinianAlgebra, NotArtinianError, from_dual_generator, quotient
from .duality import GradedIdeal, annihilator, ideal_from_generators, in_derivates
from .exactfield import FieldSpec
from .extension import (
    ExtensionInput,
    admissible_G_dimension,
    expand_in_T,
    full_report,
    lift_element,
    pbi_dual_generator,
    square_kills,
    square_within,
)
from .lefschetz import conjugate, has_sljt, is_strong_lefschetz, jordan_type
from .ring import DualPoly, ParseError, Poly, RingSpec, contract

TASKS = ("ann", "hilbert", "freeext", "jordan", "sl", "pbi", "admissible-g")


class ProblemError(ValueError):
    """Malformed problem file; carries 1-based line and column."""

    def __init__(self, message: str, line: int = 0, column: int = 0, source: str = ""):
        where = f"{source}:" if source else ""
        super().__init__(f"{where}{line}:{column}: {message}")
        self.line = line
        self.column = column


@dataclass
class Expectation:
    key: str
    sub: str | None
    value: str
    line: int
    column: int


@dataclass
class Problem:
    spec: RingSpec
    duals: dict[str, DualPoly] = field(default_factory=dict)
    polys: dict[str, Poly] = field(default_factory=dict)
    ideals: dict[str, list[Poly]] = field(default_factory=dict)
    task: str = ""
    options: dict[str, str] = field(default_factory=dict)
    expects: list[Expectation] = field(default_factory=list)
    name: str = ""
    notes: list[str] = field(default_factory=list)


_RING_RE = re.compile(
    r"ring\s+(?P<vars>[^#]*?)(?:\s+weights\s+(?P<w>[\d,\s]+?))?(?:\s+char\s+(?P<p>\d+))?\s*$"
)
_DECL_RE = re.compile(r"(dual|poly|ideal)\s+([A-Za-z_][A-Za-z_0-9]*)\s*=\s*")
_EXPECT_RE = re.compile(r"expect\s+([A-Za-z_][A-Za-z_0-9-]*)(?:\s+([A-Za-z_0-9]+))?\s*=\s*")


def make_ring(names: list[str], weights: list[int] | None = None, p: int = 0) -> RingSpec:
    has_t = any(n.lower() == "t" for n in names)
    if has_t and names[-1].lower() != "t":
        raise ValueError("the t-variable must be the last variable")
    return RingSpec(tuple(names), tuple(weights or ()), FieldSpec(p), has_t)


def parse_problem(text: str, source: str = "") -> Problem:
    spec = None
    prob = None
    name, notes = "", []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].rstrip()
        stripped = body.lstrip()
        if not stripped:
            continue
        indent = len(body) - len(stripped)
        word = stripped.split(None, 1)[0]

        def fail(msg, col=1):
            raise ProblemError(msg, lineno, col, source)

        if word == "ring":
            if spec is not None:
                fail("only one ring line allowed")
            m = _RING_RE.match(stripped)
            if not m:
                fail("expected: ring VARS [weights W,...] [char P]", indent + 1)
            names = [v.strip() for v in m.group("vars").split(",") if v.strip()]
            weights = [int(w) for w in m.group("w").split(",")] if m.group("w") else None
            try:
                spec = make_ring(names, weights, int(m.group("p") or 0))
            except ValueError as exc:
                fail(str(exc), indent + 1)
            prob = Problem(spec, name=name, notes=notes)
            continue
        if word == "name":
            name = stripped[4:].strip()
            if prob is not None:
                prob.name = name
            continue
        if word == "note":
            notes.append(stripped[4:].strip())
            continue
        if prob is None:
            fail("ring must come first", indent + 1)
        if word in ("dual", "poly", "ideal"):
            m = _DECL_RE.match(stripped)
            if not m:
                fail(f"expected: {word} NAME = EXPRESSION", indent + 1)
            kind, name = m.group(1), m.group(2)
            if name in prob.duals or name in prob.polys or name in prob.ideals:
                fail(f"{name} declared twice", indent + m.start(2) + 1)
            start = indent + m.end()
            expr = stripped[m.end():]
            try:
                if kind == "dual":
                    prob.duals[name] = spec.dual(expr)
                elif kind == "poly":
                    prob.polys[name] = spec.poly(expr)
                else:
                    prob.ideals[name] = _poly_list(spec, expr, start)
            except ParseError as exc:
                fail(str(exc).split(": ", 1)[1], start + exc.column)
            except ValueError as exc:
                fail(str(exc), start + 1)
            continue
        if word == "task":
            if prob.task:
                fail("only one task line allowed")
            parts = stripped.split()
            if len(parts) < 2 or parts[1] not in TASKS:
                fail(f"unknown task; expected one of {', '.join(TASKS)}", indent + 6)
            prob.task = parts[1]
            col = indent + len(parts[0]) + len(parts[1]) + 3
            for opt in parts[2:]:
                k, eq, v = opt.partition("=")
                if not eq or not k or not v:
                    fail(f"options are key=value, got {opt!r}", col)
                if k not in TASK_OPTIONS[prob.task]:
                    fail(f"unknown option {k!r} for task {prob.task}", col)
                prob.options[k] = v
                col += len(opt) + 1
            continue
        if word == "expect":
            m = _EXPECT_RE.match(stripped)
            if not m:
                fail("expected: expect KEY [SUB] = VALUE", indent + 1)
            prob.expects.append(Expectation(m.group(1), m.group(2), stripped[m.end():].strip(), lineno, indent + m.end() + 1))
            continue
        fail(f"unknown directive {word!r}", indent + 1)
    if prob is None:
        raise ProblemError("no ring line", 1, 1, source)
    if not prob.task:
        raise ProblemError("no task line", 1, 1, source)
    for e in prob.expects:
        if e.key not in EXPECT_KEYS[prob.task]:
            raise ProblemError(f"unknown expect key {e.key!r} for task {prob.task}", e.line, 8, source)
    return prob


def load_problem(path: str | Path) -> Problem:
    path = Path(path)
    return parse_problem(path.read_text(), str(path))


def _poly_list(spec: RingSpec, text: str, start: int = 0) -> list[Poly]:
    out = []
    offset = 0
    for chunk in text.split(","):
        if chunk.strip():
            try:
                out.append(spec.poly(chunk))
            except ParseError as exc:
                raise ParseError(str(exc).split(": ", 1)[1], offset + exc.column, text) from None
        offset += len(chunk) + 1
    return out


def _ints(text: str) -> list[int]:
    text = text.strip().strip("()[]")
    return [int(x) for x in text.split(",") if x.strip()]


def _bool(text: str) -> bool:
    t = text.strip().lower()
    if t in ("true", "yes", "pass"):
        return True
    if t in ("false", "no", "fail"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def ideal_equal(I: GradedIdeal, gens: list[Poly]) -> bool:
    """Degree-wise comparison of I with the ideal generated by ``gens``."""
    bound = max([I.top()] + [g.weighted_degree() or 0 for g in gens])
    J = ideal_from_generators(I.spec, gens, bound)
    return all(I.piece(d) == J.piece(d) for d in range(bound + 1))


def ideal_contains(I: GradedIdeal, gens: list[Poly]) -> bool:
    return all(I.contains(g) for g in gens)


def auto_quotient(spec: RingSpec, gens: list[Poly], limit: int = 96) -> ArtinianAlgebra:
    """R/(gens), growing the degree bound until the ideal saturates."""
    bound = max([g.weighted_degree() or 0 for g in gens] + [1]) + max(spec.weights)
    while bound <= limit:
        I = ideal_from_generators(spec, gens, bound)
        if I.full_from is not None:
            return quotient(I)
        bound *= 2
    raise NotArtinianError(f"ideal does not saturate below degree {limit}")


# tasks


@dataclass
class Outcome:
    """Values computed by a task, and how to compare each expectation."""

    data: dict
    checks: dict[str, Callable[[str | None, str], tuple[bool, str]]]


def _form(prob: Problem, key: str = "form") -> DualPoly:
    name = prob.options.get(key)
    if name is None:
        if len(prob.duals) == 1:
            return next(iter(prob.duals.values()))
        raise ValueError(f"task needs {key}=NAME (several dual forms declared)")
    if name not in prob.duals:
        raise ValueError(f"no dual form named {name!r}")
    return prob.duals[name]


def _poly(prob: Problem, name: str) -> Poly:
    if name in prob.polys:
        return prob.polys[name]
    return prob.spec.poly(name)


def _restrict(F: DualPoly, R: RingSpec) -> DualPoly:
    if any(e[-1] for e in F.terms):
        raise ValueError(f"{F} involves T; fiber data must not")
    return DualPoly._raw(R, {e[:-1]: c for e, c in F.terms.items()})


def _algebra_checks(A: ArtinianAlgebra, I: GradedIdeal, prob: Problem) -> dict:
    def poly_list(v):
        return _poly_list(prob.spec, v)

    return {
        "hilbert": lambda s, v: (A.hilbert == _ints(v), str(A.hilbert)),
        "length": lambda s, v: (A.length == int(v), str(A.length)),
        "socle_degree": lambda s, v: (A.socle_degree == int(v), str(A.socle_degree)),
        "type": lambda s, v: (A.type == int(v), str(A.type)),
        "gorenstein": lambda s, v: (A.is_gorenstein() == _bool(v), str(A.is_gorenstein()).lower()),
        "compressed": lambda s, v: (A.is_compressed() == _bool(v), str(A.is_compressed()).lower()),
        "ann": lambda s, v: (ideal_equal(I, poly_list(v)), str(I)),
        "ann_contains": lambda s, v: (ideal_contains(I, poly_list(v)), str(I)),
        "socle": lambda s, v: (
            [str(p) for d in sorted(A.socle()) for p in A.socle()[d]] == [str(p) for p in poly_list(v)],
            ", ".join(str(p) for d in sorted(A.socle()) for p in A.socle()[d]),
        ),
    }


def run_ann(prob: Problem) -> Outcome:
    F = _form(prob)
    bound = int(prob.options["bound"]) if "bound" in prob.options else None
    I = annihilator(F, bound)
    A = quotient(I)
    data = {"form": str(F), "ann": [str(g) for g in I.generator_polys()], **A.report()}
    return Outcome(data, _algebra_checks(A, I, prob))


def run_hilbert(prob: Problem) -> Outcome:
    if "ideal" in prob.options:
        name = prob.options["ideal"]
        if name not in prob.ideals:
            raise ValueError(f"no ideal named {name!r}")
        A = auto_quotient(prob.spec, prob.ideals[name])
        I = A.ideal
        data = {"ideal": [str(g) for g in prob.ideals[name]], **A.report()}
        return Outcome(data, _algebra_checks(A, I, prob))
    return run_ann(prob)


def _extension_input(prob: Problem) -> ExtensionInput:
    spec = prob.spec
    if "form" in prob.options or ("n" not in prob.options and len(prob.duals) == 1):
        F = _form(prob)
        if not spec.has_t:
            raise ValueError("splitting a form by powers of T needs a ring whose last variable is t")
        return expand_in_T(F)
    n = int(prob.options.get("n", 0))
    if n < 1:
        raise ValueError("freeext needs form=NAME or n=N fb=NAME [g1=NAME ...]")
    if spec.has_t:
        R, w = spec.base(), spec.t_weight
    else:
        R, w = spec, int(prob.options.get("t_weight", 1))
    conv = (lambda G: _restrict(G, R)) if spec.has_t else (lambda G: G)
    fb = conv(prob.duals[prob.options["fb"]])
    gs = []
    for i in range(1, n):
        name = prob.options.get(f"g{i}")
        gs.append(conv(prob.duals[name]) if name else DualPoly(R, {}))
    return ExtensionInput(n, fb, gs, w)


def run_freeext(prob: Problem) -> Outcome:
    inp = _extension_input(prob)
    rep = full_report(inp)
    S, F = inp.S, rep.F
    data = rep.to_dict()
    C_ideal = rep.ann_f
    hil = {"A": rep.hilbert_a, "B": rep.hilbert_b, "C": rep.hilbert_c, "tensor": rep.tensor}
    R = inp.R

    def s_polys(v):
        return _poly_list(S, v)

    def r_polys(v):
        return _poly_list(R, v)

    def verdicts(checks):
        return [c.holds for c in checks]

    def lifts(sub, v):
        if not sub:
            raise ValueError("expect liftable needs the element, e.g. expect liftable y = false")
        g = R.poly(sub)
        ok = lift_element(inp, g).lifts
        return ok == _bool(v), str(ok).lower()

    def chain(sub, v):
        I = rep.chain[int(sub)]
        return ideal_equal(I, r_polys(v)), str(I)

    def bool_list_or_all(got: list[bool]):
        def check(sub, v):
            if "," in v:
                want = [_bool(x) for x in v.split(",")]
                return want == got, ",".join(str(x).lower() for x in got)
            return all(got) == _bool(v), str(all(got)).lower()

        return check

    def sq(sub, v):
        i = int(sub)
        got = square_kills(annihilator(inp.fb), inp.G(i))
        return got == _bool(v), str(got).lower()

    def sq_within(sub, v):
        i = int(sub)
        got = square_within(annihilator(inp.fb), inp.G(i), inp.fb)
        return got == _bool(v), str(got).lower()

    def derivate_chain(sub, v):
        got = all(in_derivates(inp.G(i - 1), inp.G(i)) for i in range(1, inp.n) if inp.G(i))
        return got == _bool(v), str(got).lower()

    checks = {
        "free": lambda s, v: (rep.free == _bool(v), str(rep.free).lower()),
        "hilbert": lambda s, v: (hil[s or "C"] == _ints(v), str(hil[s or "C"])),
        "length": lambda s, v: (
            {"A": rep.dimension.a, "B": rep.dimension.b, "C": rep.dimension.c, "AB": rep.dimension.a * rep.dimension.b}[s or "C"] == int(v),
            str(rep.dimension.to_json()),
        ),
        "ann": lambda s, v: (ideal_equal(C_ideal, s_polys(v)), str(C_ideal)),
        "ann_contains": lambda s, v: (ideal_contains(C_ideal, s_polys(v)), str(C_ideal)),
        "annihilates": lambda s, v: (
            all(not contract(f, F) for f in s_polys(v)),
            "; ".join(f"{f} o F = {contract(f, F)}" for f in s_polys(v)),
        ),
        "ann_b": lambda s, v: (ideal_equal(annihilator(inp.fb), r_polys(v)), str(annihilator(inp.fb))),
        "chain": chain,
        "sufficient": bool_list_or_all(verdicts(rep.sufficient)),
        "necessary": bool_list_or_all(verdicts(rep.necessary)),
        "corollary": lambda s, v: (rep.corollary == _bool(v), str(rep.corollary).lower()),
        "liftable": lifts,
        "square_kills": sq,
        "square_within": sq_within,
        "derivate_chain": derivate_chain,
        "compressed": lambda s, v: (from_dual_generator(F).is_compressed() == _bool(v), str(from_dual_generator(F).is_compressed()).lower()),
        "dimension_equal": lambda s, v: (rep.dimension.equal == _bool(v), str(rep.dimension.equal).lower()),
    }
    return Outcome(data, checks)


def run_jordan(prob: Problem) -> Outcome:
    F = _form(prob)
    A = from_dual_generator(F)
    ell = _poly(prob, prob.options.get("ell", ""))
    P = jordan_type(A, ell)
    target = conjugate(A.hilbert)
    data = {"form": str(F), "ell": str(ell), "hilbert": A.hilbert, "jordan_type": P, "hilbert_conjugate": target, "sljt": P == target}
    checks = {
        "jordan": lambda s, v: (P == _ints(v), str(P)),
        "sljt": lambda s, v: ((P == target) == _bool(v), str(P == target).lower()),
        "hilbert": lambda s, v: (A.hilbert == _ints(v), str(A.hilbert)),
        "conjugate": lambda s, v: (target == _ints(v), str(target)),
    }
    return Outcome(data, checks)


def run_sl(prob: Problem) -> Outcome:
    F = _form(prob)
    A = from_dual_generator(F)
    res = is_strong_lefschetz(A, seed=int(prob.options.get("seed", 0)))
    data = {"form": str(F), "hilbert": A.hilbert, **res.to_json()}

    def sljt(sub, v):
        got = has_sljt(A, _poly(prob, sub))
        return got == _bool(v), str(got).lower()

    checks = {
        "sl": lambda s, v: (res.holds == _bool(v), str(res.holds).lower()),
        "certificate": lambda s, v: (res.certificate == v.strip(), res.certificate),
        "hilbert": lambda s, v: (A.hilbert == _ints(v), str(A.hilbert)),
        "sljt": sljt,
    }
    return Outcome(data, checks)


def run_pbi(prob: Problem) -> Outcome:
    spec = prob.spec
    if not spec.has_t:
        raise ValueError("pbi needs a ring whose last variable is t")
    R = spec.base()
    theta = _restrict(prob.duals[prob.options["theta"]], R)
    k = int(prob.options.get("k", 1))
    hs = []
    i = 1
    while f"h{i}" in prob.options:
        h = _poly(prob, prob.options[f"h{i}"])
        if any(e[-1] for e in h.terms):
            raise ValueError(f"h{i} must not involve t")
        hs.append(Poly._raw(R, {e[:-1]: c for e, c in h.terms.items()}))
        i += 1
    F = pbi_dual_generator(theta, hs, k, spec.t_weight, spec.names[-1])
    F = DualPoly._raw(spec, F.terms)
    C = from_dual_generator(F)
    I = C.ideal
    data = {"F": str(F), "ann": [str(g) for g in I.generator_polys()], **C.report()}
    checks = _algebra_checks(C, I, prob)
    checks["form"] = lambda s, v: (F == spec.dual(v), str(F))
    checks["generator_degrees"] = lambda s, v: (
        sorted(d for d, _ in I.generators()) == sorted(_ints(v)),
        str([d for d, _ in I.generators()]),
    )
    return Outcome(data, checks)


def run_admissible(prob: Problem) -> Outcome:
    fb = _form(prob)
    deg = int(prob.options["degree"]) if "degree" in prob.options else None
    dim = admissible_G_dimension(fb, deg)
    data = {"form": str(fb), "dimension": dim}

    def contains(sub, v):
        G = prob.duals[v.strip()] if v.strip() in prob.duals else prob.spec.dual(v)
        got = square_kills(annihilator(fb), G)
        return got, str(got).lower()

    checks = {
        "dimension": lambda s, v: (dim == int(v), str(dim)),
        "dimension_at_least": lambda s, v: (dim >= int(v), str(dim)),
        "contains": contains,
    }
    return Outcome(data, checks)


RUNNERS = {
    "ann": run_ann,
    "hilbert": run_hilbert,
    "freeext": run_freeext,
    "jordan": run_jordan,
    "sl": run_sl,
    "pbi": run_pbi,
    "admissible-g": run_admissible,
}

TASK_OPTIONS = {
    "ann": {"form", "bound"},
    "hilbert": {"form", "ideal", "bound"},
    "freeext": {"form", "n", "fb", "t_weight"} | {f"g{i}" for i in range(1, 10)},
    "jordan": {"form", "ell"},
    "sl": {"form", "seed"},
    "pbi": {"theta", "k"} | {f"h{i}" for i in range(1, 10)},
    "admissible-g": {"form", "degree"},
}

_ALG_KEYS = {"hilbert", "length", "socle_degree", "type", "gorenstein", "compressed", "ann", "ann_contains", "socle"}
EXPECT_KEYS = {
    "ann": _ALG_KEYS,
    "hilbert": _ALG_KEYS,
    "freeext": {
        "free", "hilbert", "length", "ann", "ann_contains", "annihilates", "ann_b", "chain", "sufficient",
        "necessary", "corollary", "liftable", "square_kills", "square_within", "derivate_chain", "compressed", "dimension_equal",
    },
    "jordan": {"jordan", "sljt", "hilbert", "conjugate"},
    "sl": {"sl", "certificate", "hilbert", "sljt"},
    "pbi": _ALG_KEYS | {"form", "generator_degrees"},
    "admissible-g": {"dimension", "dimension_at_least", "contains"},
}


@dataclass
class CheckResult:
    expectation: Expectation
    ok: bool
    got: str


def run_problem(prob: Problem) -> tuple[Outcome, list[CheckResult]]:
    outcome = RUNNERS[prob.task](prob)
    results = []
    for e in prob.expects:
        try:
            ok, got = outcome.checks[e.key](e.sub, e.value)
        except (KeyError, ValueError, IndexError, ParseError) as exc:
            raise ProblemError(f"bad expectation {e.key}: {exc}", e.line, e.column) from exc
        results.append(CheckResult(e, ok, got))
    return outcome, results
