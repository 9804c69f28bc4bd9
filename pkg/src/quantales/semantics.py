"""Four evaluators over a supported quantale with a chosen point.

Formula values live below the unit; program values roam the whole
quantale.  The classical evaluator interprets negation by complements in
the support locale and fails with NotComplemented (naming the offending
subformula) when one is missing; the intuitionistic one uses the Heyting
residual instead and needs no complements.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .errors import NotComplemented, TimeEnds
from .formulas import (
    And,
    Atom,
    Box,
    Diamond,
    Formula,
    Implies,
    Mode,
    Not,
    Or,
    PAtom,
    PChoice,
    Program,
    ProgDiamond,
    PSeq,
    PStar,
    PTest,
    Temporal,
    to_text,
)


@dataclass
class PointedModel:
    """A supported quantale, a point element, and atom valuations.

    world_atoms, when present, names the support atoms (one per world of a
    relation or groupoid model) so front ends can print value sets; the
    evaluators never use it.
    """

    quantale: object
    alpha: int
    valuation: Mapping[str, int]
    mode: Mode
    programs: Mapping[str, int] = field(default_factory=dict)
    world_atoms: tuple = ()

    def __post_init__(self):
        q = self.quantale
        for name, v in self.valuation.items():
            if not q.leq(v, q.unit):
                raise ValueError(f"atom {name!r} is valued outside the support locale")
        if self.mode == Mode.CTL and q.support(self.alpha) != q.unit:
            raise TimeEnds("the point must have total support in temporal models")
        if self.mode in (Mode.CLASSICAL, Mode.CTL, Mode.PDL):
            for name, v in self.valuation.items():
                if complement_in_locale(q, v) is None:
                    raise NotComplemented(
                        f"atom {name!r} has no complement below the unit",
                        Atom(name))

    def atom_value(self, name: str) -> int:
        return self.valuation.get(name, self.quantale.bottom)

    def program_value(self, name: str) -> int:
        return self.programs.get(name, self.quantale.bottom)


def complement_in_locale(q, b: int):
    'The complement of b below the unit, or None: join of everything disjoint.'
    c = q.join_all(x for x in q.support_elements()
                   if q.meet(x, b) == q.bottom)
    if q.join(b, c) != q.unit or q.meet(b, c) != q.bottom:
        return None
    return c


def _complement(q, b: int, node: Formula) -> int:
    c = complement_in_locale(q, b)
    if c is None:
        raise NotComplemented(
            f"value of {to_text(node)!r} has no complement below the unit", node)
    return c


def op_star(q, a: int) -> int:
    'Join of all finite powers of a, including the unit.'
    out = q.unit
    while True:
        nxt = q.join(out, q.mul(out, a))
        if nxt == out:
            return out
        out = nxt


def _check_mode(model: PointedModel, expected: Mode):
    if model.mode != expected:
        raise ValueError(f"model is in {model.mode.value} mode, not {expected.value}")


def eval_classical(model: PointedModel, f: Formula) -> int:
    _check_mode(model, Mode.CLASSICAL)
    return _eval_cl(model, f)


def _eval_cl(model, f):
    q = model.quantale
    if isinstance(f, Atom):
        return model.atom_value(f.name)
    if isinstance(f, Not):
        return _complement(q, _eval_cl(model, f.sub), f.sub)
    if isinstance(f, Or):
        return q.join(_eval_cl(model, f.left), _eval_cl(model, f.right))
    if isinstance(f, And):
        return _eval_cl(model, Not(Or(Not(f.left), Not(f.right))))
    if isinstance(f, Implies):
        return _eval_cl(model, Or(Not(f.left), f.right))
    if isinstance(f, Diamond):
        return q.support(q.mul(model.alpha, _eval_cl(model, f.sub)))
    if isinstance(f, Box):
        return _eval_cl(model, Not(Diamond(Not(f.sub))))
    raise TypeError(f"connective not available classically: {f!r}")


def eval_intuitionistic(model: PointedModel, f: Formula) -> int:
    _check_mode(model, Mode.INTUITIONISTIC)
    return _eval_int(model, f)


def _eval_int(model, f):
    q = model.quantale
    if isinstance(f, Atom):
        return model.atom_value(f.name)
    if isinstance(f, And):
        # conjunction is multiplication, which is meet below the unit
        return q.mul(_eval_int(model, f.left), _eval_int(model, f.right))
    if isinstance(f, Or):
        return q.join(_eval_int(model, f.left), _eval_int(model, f.right))
    if isinstance(f, Implies):
        return _residual(q, _eval_int(model, f.left), _eval_int(model, f.right))
    if isinstance(f, Not):
        return _residual(q, _eval_int(model, f.sub), q.bottom)
    if isinstance(f, Diamond):
        return q.support(q.mul(model.alpha, _eval_int(model, f.sub)))
    if isinstance(f, Box):
        y = _eval_int(model, f.sub)
        ainv = q.inv(model.alpha)
        return q.join_all(x for x in q.support_elements()
                          if q.leq(q.support(q.mul(ainv, x)), y))
    raise TypeError(f"connective not available intuitionistically: {f!r}")


def _residual(q, a: int, b: int) -> int:
    'Heyting residual inside the support locale.'
    return q.join_all(c for c in q.support_elements()
                      if q.leq(q.meet(a, c), b))


def eval_ctl(model: PointedModel, f: Formula) -> int:
    _check_mode(model, Mode.CTL)
    return _eval_ctl(model, f)


def _eval_ctl(model, f):
    q = model.quantale
    if isinstance(f, Atom):
        return model.atom_value(f.name)
    if isinstance(f, Not):
        return _complement(q, _eval_ctl(model, f.sub), f.sub)
    if isinstance(f, Or):
        return q.join(_eval_ctl(model, f.left), _eval_ctl(model, f.right))
    if isinstance(f, And):
        return _eval_ctl(model, Not(Or(Not(f.left), Not(f.right))))
    if isinstance(f, Implies):
        return _eval_ctl(model, Or(Not(f.left), f.right))
    if isinstance(f, Temporal):
        op, sub = f.op, f.sub
        if op == "AX":
            return _eval_ctl(model, Not(Temporal("EX", Not(sub))))
        if op == "AG":
            return _eval_ctl(model, Not(Temporal("EF", Not(sub))))
        if op == "AF":
            return _eval_ctl(model, Not(Temporal("EG", Not(sub))))
        v = _eval_ctl(model, sub)
        if op == "EX":
            return q.support(q.mul(model.alpha, v))
        if op == "EF":
            return q.support(q.mul(op_star(q, model.alpha), v))
        # EG: greatest fixed point of a |-> v ^ s(alpha a), from v downward
        cur = v
        while True:
            nxt = q.meet(v, q.support(q.mul(model.alpha, cur)))
            if nxt == cur:
                return cur
            cur = nxt
    raise TypeError(f"connective not available temporally: {f!r}")


def eval_pdl(model: PointedModel, f: Formula) -> int:
    _check_mode(model, Mode.PDL)
    return _eval_pdl(model, f)


def eval_program(model: PointedModel, p: Program) -> int:
    _check_mode(model, Mode.PDL)
    return _eval_prog(model, p)


def _eval_pdl(model, f):
    q = model.quantale
    if isinstance(f, Atom):
        return model.atom_value(f.name)
    if isinstance(f, Not):
        return _complement(q, _eval_pdl(model, f.sub), f.sub)
    if isinstance(f, Or):
        return q.join(_eval_pdl(model, f.left), _eval_pdl(model, f.right))
    if isinstance(f, And):
        return _eval_pdl(model, Not(Or(Not(f.left), Not(f.right))))
    if isinstance(f, Implies):
        return _eval_pdl(model, Or(Not(f.left), f.right))
    if isinstance(f, ProgDiamond):
        return q.support(q.mul(_eval_prog(model, f.prog), _eval_pdl(model, f.sub)))
    raise TypeError(f"connective not available dynamically: {f!r}")


def _eval_prog(model, p):
    q = model.quantale
    if isinstance(p, PAtom):
        return model.program_value(p.name)
    if isinstance(p, PSeq):
        return q.mul(_eval_prog(model, p.left), _eval_prog(model, p.right))
    if isinstance(p, PChoice):
        return q.join(_eval_prog(model, p.left), _eval_prog(model, p.right))
    if isinstance(p, PStar):
        return op_star(q, _eval_prog(model, p.sub))
    if isinstance(p, PTest):
        return _eval_pdl(model, p.formula)
    raise TypeError(f"not a program: {p!r}")


_EVALUATORS = {
    Mode.CLASSICAL: eval_classical,
    Mode.INTUITIONISTIC: eval_intuitionistic,
    Mode.CTL: eval_ctl,
    Mode.PDL: eval_pdl,
}


def evaluate(model: PointedModel, f: Formula) -> int:
    return _EVALUATORS[model.mode](model, f)


def valid_in_model(model: PointedModel, f: Formula, mode: Mode | None = None) -> bool:
    'A formula is valid when its value is the whole unit.'
    if mode is not None and mode != model.mode:
        raise ValueError(f"model is in {model.mode.value} mode, not {mode.value}")
    return evaluate(model, f) == model.quantale.unit
