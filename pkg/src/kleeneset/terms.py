"""Combinatory terms and their numeric coding.

Every natural number is a program.  A code c is read through the pairing
function as a tag/payload pair (tag = unpair0(c), payload = unpair1(c)):

  tag 0   application: payload = pair(f, a), the codes of operator/operand
  tag 1   primitive combinator: payload indexes PRIM_ORDER (k s sN pN d p
          p0 p1 fix); payloads past the table are stuck
  tag 2   library entry: payload indexes the intern table built at import
          time (plus any lambdas compiled later in the run); entries are
          either plain application nodes or derived combinators with a
          declared arity
  tag 3+  stuck: decodes to a designated diverging term

Literals need no tag: the number n used as data *is* n; used as a program
it is whatever its tag says.  That dual reading is the whole point of a
pca over the naturals.

Derived combinators ("supercombinators") exist because raw structural
application codes double in bit-length per nesting level -- a bracket-
abstracted display would be astronomically large as a tag-0 tree.  A
derived combinator behaves like a primitive: under-applied occurrences
are inert values, and at full arity it fires by evaluating its bracket-
compiled body.  Nested lambdas are lambda-lifted so that every closure
is a plain application spine over small codes.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

from .pairing import Code, pair, unpair

__all__ = [
    "Term", "Prim", "Lit", "Var", "App", "Lam", "RomRef", "Junk",
    "PRIM_ORDER", "PRIM_ARITY", "prim_code", "PRIM_BY_CODE",
    "TAG_APP", "TAG_PRIM", "TAG_ROM",
    "mkapp", "mkapps", "app_view", "head_kind", "sc_arity", "sc_body",
    "encode", "decode", "free_vars", "UnboundVariableError",
    "bracket_abstract", "lambda_lift", "compile_lambda", "register_combinator",
    "rom_size", "A", "L", "V", "N",
]


# ---------------------------------------------------------------------------
# Term syntax


class Term:
    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Prim(Term):
    name: str


@dataclass(frozen=True, slots=True)
class Lit(Term):
    value: object  # a Code: int or a symbolic pair


@dataclass(frozen=True, slots=True)
class Var(Term):
    name: str


@dataclass(frozen=True, slots=True)
class App(Term):
    fn: Term
    arg: Term


@dataclass(frozen=True, slots=True)
class Lam(Term):
    var: str
    body: Term


@dataclass(frozen=True, slots=True)
class RomRef(Term):
    """A leaf naming an intern-table entry by index."""
    index: int


@dataclass(frozen=True, slots=True)
class Junk(Term):
    """The designated diverging term behind a non-canonical code."""
    code: object


def A(fn: Term, *args: Term) -> Term:
    """Left-fold application: A(f, a, b) = App(App(f, a), b)."""
    t = fn
    for a in args:
        t = App(t, a)
    return t


def L(*spec) -> Term:
    """L('x', 'y', body) = Lam('x', Lam('y', body))."""
    *names, body = spec
    for name in reversed(names):
        body = Lam(name, body)
    return body


V = Var
N = Lit


# ---------------------------------------------------------------------------
# Primitive table

PRIM_ORDER = ("k", "s", "sN", "pN", "d", "p", "p0", "p1", "fix")
PRIM_ARITY = {"k": 2, "s": 3, "sN": 1, "pN": 1, "d": 4, "p": 2, "p0": 1, "p1": 1, "fix": 2}

TAG_APP = 0
TAG_PRIM = 1
TAG_ROM = 2

_PRIM_CODE = {name: pair(TAG_PRIM, i) for i, name in enumerate(PRIM_ORDER)}
PRIM_BY_CODE = {c: name for name, c in _PRIM_CODE.items()}


def prim_code(name: str) -> int:
    return _PRIM_CODE[name]


# ---------------------------------------------------------------------------
# Intern table ("rom"): application nodes and derived combinators
#
# Entries:  ("node", f_code, a_code)        plain application node
#           ("sc",  body_code, arity, name) derived combinator
#
# Allocation order is deterministic: the library's own entries are created
# in a fixed sequence at import time (see romlib), user compilations append
# after that.  Codes already handed out never change meaning.

_rom: list[tuple] = []
_node_index: dict[tuple, int] = {}
_sc_index: dict[tuple, int] = {}
_rom_lock = threading.Lock()


def rom_size() -> int:
    return len(_rom)


def _rom_code(i: int) -> int:
    return pair(TAG_ROM, i)


def _intern_node(f: Code, a: Code) -> int:
    key = (f, a)
    got = _node_index.get(key)
    if got is not None:
        return got
    with _rom_lock:
        got = _node_index.get(key)
        if got is not None:
            return got
        code = _rom_code(len(_rom))
        _rom.append(("node", f, a))
        _node_index[key] = code
        return code


def _intern_term(t: Term) -> int:
    """Encode a closed Lam-free term, interning every application node."""
    if isinstance(t, App):
        return _intern_node(_intern_term(t.fn), _intern_term(t.arg))
    return encode(t)


def register_combinator(term: Term, name: str = "") -> int:
    """Make a closed lambda term available as a derived combinator.

    Returns its code.  The body is bracket-abstracted; the combinator
    fires only when it has collected one argument per lambda binder.
    """
    params: list[str] = []
    body = term
    while isinstance(body, Lam):
        params.append(body.var)
        body = body.body
    if not params:
        raise ValueError("register_combinator expects at least one lambda")
    body = lambda_lift(body)
    fv = free_vars(body)
    if not fv.issubset(params):
        raise UnboundVariableError(sorted(fv - set(params)))
    for v in reversed(params):
        body = _bracket(v, body)
    body_code = _intern_term(body)
    key = (body_code, len(params))
    got = _sc_index.get(key)
    if got is not None:
        return got
    with _rom_lock:
        got = _sc_index.get(key)
        if got is not None:
            return got
        code = _rom_code(len(_rom))
        _rom.append(("sc", body_code, len(params), name))
        _sc_index[key] = code
        return code


def _rom_entry(code: Code) -> tuple | None:
    a, b = unpair(code)
    if a == TAG_ROM and isinstance(b, int) and b < len(_rom):
        return _rom[b]
    return None


# ---------------------------------------------------------------------------
# Code views used by the machine


def mkapp(f: Code, a: Code) -> Code:
    """The arithmetic application code pair(0, pair(f, a)).

    This is what a machine program computes when it builds a closure with
    the pairing primitive, so it is also what the native constructions use.
    """
    return pair(TAG_APP, pair(f, a))


def mkapps(f: Code, *args: Code) -> Code:
    for a in args:
        f = mkapp(f, a)
    return f


def app_view(code: Code) -> tuple[Code, Code] | None:
    """(operator, operand) when the code is an application node."""
    tag, payload = unpair(code)
    if tag == TAG_APP:
        return unpair(payload)
    if tag == TAG_ROM and isinstance(payload, int) and payload < len(_rom):
        e = _rom[payload]
        if e[0] == "node":
            return (e[1], e[2])
    return None


def head_kind(code: Code) -> str:
    """'prim' | 'sc' | 'app' | 'junk' for a non-application head."""
    tag, payload = unpair(code)
    if tag == TAG_PRIM and isinstance(payload, int) and payload < len(PRIM_ORDER):
        return "prim"
    if tag == TAG_APP:
        return "app"
    if tag == TAG_ROM and isinstance(payload, int) and payload < len(_rom):
        return "app" if _rom[payload][0] == "node" else "sc"
    return "junk"


def sc_arity(code: Code) -> int:
    e = _rom_entry(code)
    assert e is not None and e[0] == "sc"
    return e[2]


def sc_body(code: Code) -> Code:
    e = _rom_entry(code)
    assert e is not None and e[0] == "sc"
    return e[1]


def sc_name(code: Code) -> str:
    e = _rom_entry(code)
    if e is not None and e[0] == "sc":
        return e[3]
    return ""


# ---------------------------------------------------------------------------
# encode / decode


class UnboundVariableError(ValueError):
    pass


def encode(t: Term) -> Code:
    """Canonical code of a Lam-free, variable-free term."""
    if isinstance(t, Lit):
        if isinstance(t.value, int) and t.value < 0:
            raise ValueError("literals are naturals")
        return t.value
    if isinstance(t, Prim):
        return _PRIM_CODE[t.name]
    if isinstance(t, App):
        return mkapp(encode(t.fn), encode(t.arg))
    if isinstance(t, RomRef):
        return _rom_code(t.index)
    if isinstance(t, Junk):
        return t.code
    if isinstance(t, Var):
        raise UnboundVariableError([t.name])
    if isinstance(t, Lam):
        raise ValueError("encode a lambda via compile_lambda / bracket_abstract")
    raise TypeError(t)


def decode(code: Code) -> Term:
    """Total decoding.  Canonical codes round-trip through encode."""
    if isinstance(code, int) and code < 0:
        raise ValueError("codes are naturals")
    tag, payload = unpair(code)
    if tag == TAG_APP:
        f, a = unpair(payload)
        if f == code or a == code:  # the self-referential spines of 0 and 1
            return Junk(code)
        return App(decode(f), decode(a))
    if tag == TAG_PRIM and isinstance(payload, int) and payload < len(PRIM_ORDER):
        return Prim(PRIM_ORDER[payload])
    if tag == TAG_ROM and isinstance(payload, int) and payload < len(_rom):
        return RomRef(payload)
    return Junk(code)


def free_vars(t: Term) -> set[str]:
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, App):
        return free_vars(t.fn) | free_vars(t.arg)
    if isinstance(t, Lam):
        return free_vars(t.body) - {t.var}
    return set()


# ---------------------------------------------------------------------------
# Bracket abstraction and lambda lifting

_I = A(Prim("s"), Prim("k"), Prim("k"))


def _occurs(v: str, t: Term) -> bool:
    if isinstance(t, Var):
        return t.name == v
    if isinstance(t, App):
        return _occurs(v, t.fn) or _occurs(v, t.arg)
    if isinstance(t, Lam):
        return t.var != v and _occurs(v, t.body)
    return False


def _bracket(v: str, t: Term) -> Term:
    """T_v[t]: remove v from a Lam-free term with the s/k basis."""
    if isinstance(t, Var) and t.name == v:
        return _I
    if not _occurs(v, t):
        return App(Prim("k"), t)
    assert isinstance(t, App)
    if isinstance(t.arg, Var) and t.arg.name == v and not _occurs(v, t.fn):
        return t.fn  # eta
    return A(Prim("s"), _bracket(v, t.fn), _bracket(v, t.arg))


def _first_occurrence_order(t: Term, out: list[str], bound: set[str]) -> None:
    if isinstance(t, Var):
        if t.name not in bound and t.name not in out:
            out.append(t.name)
    elif isinstance(t, App):
        _first_occurrence_order(t.fn, out, bound)
        _first_occurrence_order(t.arg, out, bound)
    elif isinstance(t, Lam):
        _first_occurrence_order(t.body, out, bound | {t.var})


def lambda_lift(t: Term) -> Term:
    """Replace every lambda by a derived-combinator closure spine.

    A lambda with free variables f1..fk becomes the partial application
    of a fresh combinator (arity k + binders) to Var(f1)..Var(fk); under
    evaluation those applications stay un-fired, so the closure is the
    literal spine code -- small and canonical.
    """
    if isinstance(t, App):
        return App(lambda_lift(t.fn), lambda_lift(t.arg))
    if not isinstance(t, Lam):
        return t
    fvs: list[str] = []
    _first_occurrence_order(t, fvs, set())
    inner = t
    names: list[str] = []
    while isinstance(inner, Lam):
        names.append(inner.var)
        inner = inner.body
    closed = L(*fvs, *names, lambda_lift(inner)) if fvs or names else lambda_lift(inner)
    code = register_combinator(closed)
    return A(Lit(code), *[Var(f) for f in fvs])


def bracket_abstract(body: Term, var: str) -> Term:
    """Abstract one variable out of a term.

    Inner lambdas are lifted first, so the result is a plain s/k-basis
    term in which var no longer occurs.
    """
    lifted = lambda_lift(body)
    extra = free_vars(lifted) - {var}
    if extra:
        raise UnboundVariableError(sorted(extra))
    return _bracket(var, lifted)


def compile_lambda(t: Term, name: str = "") -> Code:
    """Code of a closed surface term (lambdas allowed anywhere)."""
    if isinstance(t, Lam):
        fv = free_vars(t)
        if fv:
            raise UnboundVariableError(sorted(fv))
        return register_combinator(t, name)
    lifted = lambda_lift(t)
    fv = free_vars(lifted)
    if fv:
        raise UnboundVariableError(sorted(fv))
    return encode(lifted)
