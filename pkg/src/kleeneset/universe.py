"""Type codes and the three-valued membership relations.

A type code is read through the pairing function:

  pair(0, n)          the finite type with n elements
  pair(1, 0)          the type of naturals
  pair(1, 1)          the distinguished type (membership delegated to a
                      configured set of sequence codes, see diagonal)
  pair(2, pair(n, e)) dependent sum over index type n with family e
  pair(3, pair(n, e)) dependent product over index type n with family e

din decides "k is a member of t" as far as the truncation allows and
answers Realized / Refuted / Unknown.  Realized and Refuted are stable:
growing the truncation can only turn Unknown into one of them, never
flip them.  Membership in a product over an infinite index type is never
Realized (only refutable), which keeps every Realized verdict sound.

Verdict caches are plain dicts keyed by (code, type, truncation) and
mutated by single atomic operations; concurrent queries are fine.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .machine import (
    DEFAULT_FUEL, DivergedError, OutOfFuelError, apply_raw,
)
from .pairing import Code, pair, unpair

__all__ = [
    "Verdict", "REALIZED", "REFUTED", "Truncation", "MalformedTypeError",
    "TypeView", "type_view", "din", "check_in_U", "check_in_V",
    "enumerate_index", "provably_empty",
    "FIN0", "NAT", "DIST", "fin", "sigma_code", "pi_code",
]


NAT = pair(1, 0)
DIST = pair(1, 1)
FIN0 = pair(0, 0)


def fin(n: int) -> Code:
    return pair(0, n)


def sigma_code(n: Code, e: Code) -> Code:
    return pair(2, pair(n, e))


def pi_code(n: Code, e: Code) -> Code:
    return pair(3, pair(n, e))


@dataclass(frozen=True, slots=True)
class Verdict:
    status: str  # "realized" | "refuted" | "unknown"
    note: str | None = None

    @property
    def realized(self) -> bool:
        return self.status == "realized"

    @property
    def refuted(self) -> bool:
        return self.status == "refuted"

    @property
    def unknown(self) -> bool:
        return self.status == "unknown"

    def qualified(self, note: str) -> "Verdict":
        if self.status == "realized" and self.note is None:
            return Verdict("realized", note)
        return self


REALIZED = Verdict("realized")
REFUTED = Verdict("refuted")


def unknown(reason: str) -> Verdict:
    return Verdict("unknown", reason)


class MalformedTypeError(ValueError):
    """A family diverged on an index it must cover, or a non-type was used."""


@dataclass(frozen=True)
class Truncation:
    """Finite bounds under which infinite base types are approximated.

    segment_bound caps the length of distinguished-set members that get
    enumerated; nat_bound caps enumeration of the naturals; fuel bounds
    every program run.  distinguished, when set, answers membership in
    the distinguished type (the diagonal module provides one backed by a
    built path prefix).
    """

    segment_bound: int = 16
    nat_bound: int = 12
    fuel: int = DEFAULT_FUEL
    distinguished: object = None

    def key(self) -> tuple:
        token = getattr(self.distinguished, "cache_token", None)
        if token is None and self.distinguished is not None:
            token = id(self.distinguished)  # caller keeps the object alive
        return (self.segment_bound, self.nat_bound, self.fuel, token)


DEFAULT_TRUNCATION = Truncation()


@dataclass(frozen=True, slots=True)
class TypeView:
    kind: str  # "fin" | "nat" | "dist" | "sigma" | "pi" | "invalid"
    size: int = 0
    index: Code = 0
    family: Code = 0


def type_view(t: Code) -> TypeView:
    tag, payload = unpair(t)
    if tag == 0:
        if isinstance(payload, int):
            return TypeView("fin", size=payload)
        return TypeView("invalid")
    if tag == 1:
        if payload == 0:
            return TypeView("nat")
        if payload == 1:
            return TypeView("dist")
        return TypeView("invalid")
    if tag == 2 or tag == 3:
        n, e = unpair(payload)
        return TypeView("sigma" if tag == 2 else "pi", index=n, family=e)
    return TypeView("invalid")


def _family_at(e: Code, k: Code, tr: Truncation, on_realized_index: bool) -> tuple[str, Code]:
    """Apply a family program; ('value', code) | ('unknown', 0).

    A provably diverging family on an index that is certainly inhabited
    is a malformed type, not an unknown.
    """
    try:
        return "value", apply_raw(e, k, tr.fuel)
    except OutOfFuelError:
        return "unknown", 0
    except DivergedError:
        if on_realized_index:
            raise MalformedTypeError(
                f"family {e!r} diverges on index {k!r}") from None
        return "unknown", 0


_din_memo: dict = {}


def din(k: Code, t: Code, tr: Truncation = DEFAULT_TRUNCATION) -> Verdict:
    """Membership of k in the type t, relative to the truncation."""
    return _din(k, t, tr, 0)


_MAX_DEPTH = 200
_DEPTH_NOTE = "recursion depth bound hit"


def _din(k: Code, t: Code, tr: Truncation, depth: int) -> Verdict:
    memo_key = (k, t, tr.key())
    got = _din_memo.get(memo_key)
    if got is not None:
        return got
    v = _din_raw(k, t, tr, depth)
    if v.note != _DEPTH_NOTE:  # depth-guard answers depend on the call site
        _din_memo[memo_key] = v
    return v


def _din_raw(k: Code, t: Code, tr: Truncation, depth: int) -> Verdict:
    if depth > _MAX_DEPTH:
        return unknown(_DEPTH_NOTE)
    view = type_view(t)
    if view.kind == "invalid":
        raise MalformedTypeError(f"{t!r} is not a type code")
    if view.kind == "fin":
        return REALIZED if isinstance(k, int) and k < view.size else REFUTED
    if view.kind == "nat":
        return REALIZED
    if view.kind == "dist":
        xs = tr.distinguished
        if xs is None:
            return unknown("no distinguished set configured")
        status = xs.membership(k)
        if status == "member":
            return REALIZED
        if status == "nonmember":
            return REFUTED
        return unknown("beyond the distinguished-set truncation")
    if view.kind == "sigma":
        k0, u = unpair(k)
        v0 = _din(k0, view.index, tr, depth + 1)
        if v0.refuted:
            return REFUTED  # first disjunct of the non-membership rule
        st, ek = _family_at(view.family, k0, tr, on_realized_index=v0.realized)
        if st != "value":
            return unknown("family application exhausted fuel")
        v1 = _din(u, ek, tr, depth + 1)
        if v1.refuted:
            return REFUTED  # second disjunct, sound whatever v0 is
        if v0.realized and v1.realized:
            return v1.qualified("component verdict relative to truncation") \
                if v1.note or v0.note else REALIZED
        return unknown("component membership undecided")
    # pi
    members, complete = enumerate_index(view.index, tr)
    saw_unknown = not complete
    note = None if complete else "index type enumerated up to the truncation"
    for k0 in members:
        st, ek = _family_at(view.family, k0, tr, on_realized_index=True)
        if st != "value":
            saw_unknown = True
            continue
        if provably_empty(ek, tr, depth + 1):
            return REFUTED  # no dk can land in an empty target
        try:
            dk = apply_raw(k, k0, tr.fuel)
        except OutOfFuelError:
            saw_unknown = True
            continue
        except DivergedError:
            return REFUTED  # dk provably never converges: vacuous failure
        v = _din(dk, ek, tr, depth + 1)
        if v.refuted:
            return REFUTED
        if not v.realized:
            saw_unknown = True
    if saw_unknown or not complete:
        return unknown(note or "some component checks undecided")
    return REALIZED


def enumerate_index(t: Code, tr: Truncation) -> tuple[list[Code], bool]:
    """Members of an index type up to the truncation, plus completeness."""
    view = type_view(t)
    if view.kind == "fin":
        return list(range(view.size)), True
    if view.kind == "nat":
        return list(range(tr.nat_bound + 1)), False
    if view.kind == "dist":
        xs = tr.distinguished
        if xs is None:
            return [], False
        return list(xs.member_codes(tr.segment_bound)), False
    if view.kind == "sigma":
        base, base_complete = enumerate_index(view.index, tr)
        out: list[Code] = []
        complete = base_complete
        for k0 in base:
            st, ek = _family_at(view.family, k0, tr, on_realized_index=False)
            if st != "value":
                complete = False
                continue
            sub, sub_complete = enumerate_index(ek, tr)
            complete = complete and sub_complete
            out.extend(pair(k0, u) for u in sub)
        return out, complete
    return [], False


_empty_memo: dict = {}


def provably_empty(t: Code, tr: Truncation, depth: int = 0) -> bool:
    """True only when no natural can be a member of t."""
    return _provably_empty(t, tr, depth)[0]


def _provably_empty(t: Code, tr: Truncation, depth: int) -> tuple[bool, bool]:
    """(emptiness, clean); a result is cached only when no depth guard
    fired anywhere below it, since guarded answers depend on the call site."""
    key = (t, tr.key())
    got = _empty_memo.get(key)
    if got is not None:
        return got, True
    if depth > 40:
        return False, False
    result, clean = _provably_empty_raw(t, tr, depth)
    if clean:
        _empty_memo[key] = result
    return result, clean


def _provably_empty_raw(t: Code, tr: Truncation, depth: int) -> tuple[bool, bool]:
    view = type_view(t)
    if view.kind == "fin":
        return view.size == 0, True
    if view.kind in ("nat", "dist"):
        return False, True  # the empty sequence always codes a path member
    if view.kind == "invalid":
        return False, True
    members, complete = enumerate_index(view.index, tr)
    if view.kind == "sigma":
        idx_empty, idx_clean = _provably_empty(view.index, tr, depth + 1)
        if idx_empty:
            return True, idx_clean
        if not complete:
            return False, True
        clean = idx_clean
        for k0 in members:
            st, ek = _family_at(view.family, k0, tr, on_realized_index=False)
            if st != "value":
                return False, clean
            sub_empty, sub_clean = _provably_empty(ek, tr, depth + 1)
            clean = clean and sub_clean
            if not sub_empty:
                return False, clean
        return bool(members), clean
    # pi: empty when some certainly-inhabited index maps to an empty target
    clean = True
    for k0 in members:
        st, ek = _family_at(view.family, k0, tr, on_realized_index=False)
        if st != "value":
            continue
        sub_empty, sub_clean = _provably_empty(ek, tr, depth + 1)
        clean = clean and sub_clean
        if sub_empty:
            return True, sub_clean
    return False, clean


def _family_clause(t: Code, tr: Truncation, member_check: Callable[[Code, Truncation], Verdict],
                   depth: int) -> Verdict:
    """The shared "every index member maps to a good value" clause."""
    view = type_view(t)
    members, complete = enumerate_index(view.index, tr)
    worst = REALIZED
    for k0 in members:
        try:
            ek = apply_raw(view.family, k0, tr.fuel)
        except OutOfFuelError:
            worst = unknown("family application exhausted fuel")
            continue
        except DivergedError:
            return REFUTED  # the rule needs the family to converge here
        v = member_check(ek, tr)
        if v.refuted:
            return REFUTED
        if not v.realized:
            worst = unknown(v.note or "component undecided")
    if not complete and worst.realized:
        return Verdict("realized", "family checked up to the truncation")
    return worst


def check_in_U(t: Code, tr: Truncation = DEFAULT_TRUNCATION, _depth: int = 0) -> Verdict:
    """Is t a well-formed type code (member of the type universe)?"""
    if _depth > _MAX_DEPTH:
        return unknown("recursion depth bound hit")
    view = type_view(t)
    if view.kind == "invalid":
        return REFUTED  # no formation rule concludes an unknown tag
    if view.kind in ("fin", "nat", "dist"):
        return REALIZED
    v_index = check_in_U(view.index, tr, _depth + 1)
    if v_index.refuted:
        return REFUTED
    v_fam = _family_clause(t, tr, lambda e, trr: check_in_U(e, trr, _depth + 1), _depth)
    if v_fam.refuted:
        return REFUTED
    if v_index.realized and v_fam.realized:
        return v_fam if v_fam.note else v_index
    return unknown("index or family membership undecided")


def check_in_V(a: Code, tr: Truncation = DEFAULT_TRUNCATION, _depth: int = 0) -> Verdict:
    """Is a a well-formed set code (index type plus element map)?"""
    if _depth > _MAX_DEPTH:
        return unknown("recursion depth bound hit")
    n, e = unpair(a)
    v_index = check_in_U(n, tr)
    if v_index.refuted:
        return REFUTED
    view = type_view(n)
    if view.kind == "invalid":
        return REFUTED
    members, complete = enumerate_index(n, tr)
    worst = REALIZED
    for k0 in members:
        try:
            ek = apply_raw(e, k0, tr.fuel)
        except OutOfFuelError:
            worst = unknown("element map exhausted fuel")
            continue
        except DivergedError:
            return REFUTED
        v = check_in_V(ek, tr, _depth + 1)
        if v.refuted:
            return REFUTED
        if not v.realized:
            worst = unknown(v.note or "element membership undecided")
    if not complete and worst.realized:
        worst = Verdict("realized", "element map checked up to the truncation")
    if v_index.realized and worst.realized:
        return worst
    if worst.refuted or v_index.refuted:
        return REFUTED
    return unknown("index or element map undecided")
