"""Proof steps.  A step acts on the first open goal ``lhs = rhs``.

``side`` is ``"l"`` or ``"r"``; ``path`` addresses a subterm of that side
(0 = function or binder body, 1 = argument); ``direction`` is ``"fwd"`` or
``"bwd"``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .terms import Term, Type


@dataclass(frozen=True)
class Rewrite:
    rule: str
    side: str
    path: tuple
    direction: str = "fwd"


@dataclass(frozen=True)
class Beta:
    side: str
    path: tuple


@dataclass(frozen=True)
class Eta:
    side: str
    path: tuple
    direction: str = "fwd"


@dataclass(frozen=True)
class UseLemma:
    lemma: str
    side: str
    path: tuple
    direction: str = "fwd"
    subst: tuple = ()          # ((name, Term), ...) for variables the match leaves open


@dataclass(frozen=True)
class ExtInjective:
    const: str = "circ"


@dataclass(frozen=True)
class EmExtend:
    lemma: str
    variant: str = "em"        # "em" uses Ext, "emc" uses the convex Ext^c


@dataclass(frozen=True)
class ApplyBothSides:
    arg: Term


@dataclass(frozen=True)
class AbstractBothSides:
    var: str
    type: Type


@dataclass(frozen=True)
class Refl:
    pass


@dataclass(frozen=True)
class Symm:
    pass


@dataclass(frozen=True)
class Trans:
    mid: Term


STEP_TYPES = (Rewrite, Beta, Eta, UseLemma, ExtInjective, EmExtend,
              ApplyBothSides, AbstractBothSides, Refl, Symm, Trans)


def on_side(step, side: str):
    """Copy of a side-targeted step moved to ``side``."""
    from dataclasses import replace
    return replace(step, side=side)


@dataclass
class Proof:
    """A step list closing the goal ``lhs = rhs``."""
    lhs: Term
    rhs: Term
    steps: list = field(default_factory=list)

    def __len__(self):
        return len(self.steps)
