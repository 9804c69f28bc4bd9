"""Conjugate diamond pairs on finite frames, and their box adjoints.

The two diamonds of a supported quantale with a chosen point act on the
support locale; this module works with that shape abstractly: a frame, two
join-preserving endomaps, and the conjugacy inequalities tying them.
Endomaps are stored as full value tables but are determined by their
action on join-irreducibles, which is how the sweep helpers enumerate them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import (
    InternalValidationFailed,
    NotAFrame,
    NotConjugate,
    NotJoinPreserving,
)
from .lattice import FiniteSupLattice
from .quantale import SupportLocale, supports_locale


def join_preservation_witness(L: FiniteSupLattice, table: Sequence[int]):
    'None, or the pair of elements where f(a v b) != f(a) v f(b).'
    t = tuple(table)
    if t[L.bottom] != L.bottom:
        return (L.bottom, L.bottom)
    for a in range(L.n):
        for b in range(L.n):
            if t[L.join(a, b)] != L.join(t[a], t[b]):
                return (a, b)
    return None


@dataclass(frozen=True)
class ConjugacyCheck:
    ok: bool
    side: str | None = None
    witness: tuple | None = None

    def __bool__(self):
        return self.ok


def check_conjugacy(L: FiniteSupLattice, dia: Sequence[int],
                    bdia: Sequence[int]) -> ConjugacyCheck:
    """Both conjugacy inequalities, exhaustively.

    Join preservation is a precondition and is checked first; a bad table
    raises NotJoinPreserving rather than reporting a conjugacy failure.
    """
    for name, t in (("first", dia), ("second", bdia)):
        w = join_preservation_witness(L, t)
        if w is not None:
            raise NotJoinPreserving(f"{name} map is not join-preserving at {w}")
    for x in range(L.n):
        for y in range(L.n):
            if not L.leq(L.meet(dia[x], y), dia[L.meet(x, bdia[y])]):
                return ConjugacyCheck(False, "forward", (x, y))
            if not L.leq(L.meet(bdia[x], y), bdia[L.meet(x, dia[y])]):
                return ConjugacyCheck(False, "backward", (x, y))
    return ConjugacyCheck(True)


class BimodalFrame:
    'A frame with a validated conjugate pair of join-preserving diamonds.'

    def __init__(self, frame: FiniteSupLattice, dia: Sequence[int],
                 bdia: Sequence[int]):
        if not frame.is_frame():
            raise NotAFrame("bimodal structure needs a frame")
        check = check_conjugacy(frame, dia, bdia)
        if not check:
            raise NotConjugate(
                f"{check.side} conjugacy fails at {check.witness}")
        self.frame = frame
        self.dia = tuple(dia)
        self.bdia = tuple(bdia)

    def __repr__(self):
        return f"BimodalFrame(n={self.frame.n})"


def diamonds_from_point(q, alpha: int,
                        locale: SupportLocale | None = None) -> BimodalFrame:
    """The two diamonds induced on the support locale by a point element.

    dia(x) = s(alpha x) and bdia(x) = s(alpha- x).  Conjugacy here is a
    theorem, so a failure raises InternalValidationFailed.
    """
    loc = supports_locale(q) if locale is None else locale
    ainv = q.inv(alpha)
    dia = [loc.from_q(q.support(q.mul(alpha, x))) for x in loc.q_elements]
    bdia = [loc.from_q(q.support(q.mul(ainv, x))) for x in loc.q_elements]
    try:
        return BimodalFrame(loc.lattice, dia, bdia)
    except NotConjugate as exc:
        raise InternalValidationFailed(f"point diamonds not conjugate: {exc}") from exc


def box_adjoints(L: FiniteSupLattice, dia: Sequence[int],
                 bdia: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Right adjoints: box to the second diamond, black box to the first.

    box(y) joins everything the second diamond keeps below y, so that
    bdia(x) <= y iff x <= box(y); the black box does the same for dia.
    The two adjunctions are verified exhaustively before returning.
    """
    for name, t in (("first", dia), ("second", bdia)):
        w = join_preservation_witness(L, t)
        if w is not None:
            raise NotJoinPreserving(f"{name} map is not join-preserving at {w}")
    box = tuple(L.join_all(x for x in range(L.n) if L.leq(bdia[x], y))
                for y in range(L.n))
    bbox = tuple(L.join_all(x for x in range(L.n) if L.leq(dia[x], y))
                 for y in range(L.n))
    for x in range(L.n):
        for y in range(L.n):
            if L.leq(bdia[x], y) != L.leq(x, box[y]):
                raise InternalValidationFailed(f"box adjunction fails at {(x, y)}")
            if L.leq(dia[x], y) != L.leq(x, bbox[y]):
                raise InternalValidationFailed(f"black box adjunction fails at {(x, y)}")
    return box, bbox


@dataclass(frozen=True)
class ModalClassCheck:
    ok: bool
    law: str | None = None
    witness: tuple | None = None

    def __bool__(self):
        return self.ok


_CLASSES = ("T", "K4", "S4", "S5")


def check_modal_class(L: FiniteSupLattice, dia: Sequence[int],
                      bdia: Sequence[int], cls: str) -> ModalClassCheck:
    """Inclusion in one of the modal classes T, K4, S4, S5.

    T: x <= dia x and x <= bdia x.  K4: dia dia x <= dia x and likewise
    for bdia.  S4 is both; S5 is S4 with the two diamonds equal.
    """
    if cls not in _CLASSES:
        raise ValueError(f"unknown modal class {cls!r}")
    if cls in ("T", "S4", "S5"):
        for x in range(L.n):
            if not L.leq(x, dia[x]):
                return ModalClassCheck(False, "T-dia", (x,))
            if not L.leq(x, bdia[x]):
                return ModalClassCheck(False, "T-bdia", (x,))
    if cls in ("K4", "S4", "S5"):
        for x in range(L.n):
            if not L.leq(dia[dia[x]], dia[x]):
                return ModalClassCheck(False, "K4-dia", (x,))
            if not L.leq(bdia[bdia[x]], bdia[x]):
                return ModalClassCheck(False, "K4-bdia", (x,))
    if cls == "S5":
        for x in range(L.n):
            if dia[x] != bdia[x]:
                return ModalClassCheck(False, "S5-selfconjugate", (x,))
    return ModalClassCheck(True)


def join_preserving_endomaps(L: FiniteSupLattice) -> Iterator[tuple[int, ...]]:
    """Every join-preserving endomap of a frame, by monotone choices on the
    join-irreducibles extended through joins."""
    if not L.is_frame():
        raise NotAFrame("endomap enumeration relies on irreducible decomposition")
    irr = L.join_irreducibles()
    for values in itertools.product(range(L.n), repeat=len(irr)):
        ok = True
        for i, ji in enumerate(irr):
            for k, jk in enumerate(irr):
                if L.leq(ji, jk) and not L.leq(values[i], values[k]):
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        table = tuple(
            L.join_all(values[i] for i, ji in enumerate(irr) if L.leq(ji, x))
            for x in range(L.n))
        yield table


def conjugate_pairs(L: FiniteSupLattice) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    'All conjugate pairs of join-preserving endomaps on a frame.'
    maps = list(join_preserving_endomaps(L))
    for dia in maps:
        for bdia in maps:
            if check_conjugacy(L, dia, bdia):
                yield dia, bdia
