"""The message alphabet exchanged between evaluators and the operator rules.

Every child reports to its supervisor with a ``(value, resolved)`` pair,
whatever operator the child implements.  ``resolved=False`` is the waiting
message; its ``value`` carries no information.
"""

from __future__ import annotations

import enum
from typing import NamedTuple


class ResultMessage(NamedTuple):
    value: bool
    resolved: bool

    @property
    def waiting(self) -> bool:
        return not self.resolved

    def __str__(self) -> str:
        return f"{str(self.value).lower()}, {str(self.resolved).lower()}"


WAITING = ResultMessage(False, False)
TRUE = ResultMessage(True, True)
FALSE = ResultMessage(False, True)

# Integer coding used inside the engines; matches the 0/1/2 coding of the
# randomized child in the original actor models.
CODE_FALSE = 0
CODE_TRUE = 1
CODE_WAIT = 2

_BY_CODE = (FALSE, TRUE, WAITING)


def from_code(code: int) -> ResultMessage:
    return _BY_CODE[code]


def to_code(msg: ResultMessage) -> int:
    if not msg.resolved:
        return CODE_WAIT
    return CODE_TRUE if msg.value else CODE_FALSE


class WorkerKind(enum.Enum):
    UNTIL = "UntilWorker"
    AND = "AndWorker"
    NOT = "NotWorker"
    NEXT = "NextWorker"
    CONDITION_CHECKER = "ConditionChecker"
    TRUE_LEAF = "TrueLeaf"

    @property
    def arity(self) -> int:
        return {"UntilWorker": 2, "AndWorker": 2, "NotWorker": 1, "NextWorker": 1}.get(self.value, 0)


def not_transition(child: ResultMessage) -> ResultMessage:
    if not child.resolved:
        return WAITING
    return FALSE if child.value else TRUE


def and_transition(left: ResultMessage, right: ResultMessage) -> ResultMessage:
    """Kleene conjunction; a resolved ``false`` on either side decides at once."""
    if (left.resolved and not left.value) or (right.resolved and not right.value):
        return FALSE
    if left.resolved and right.resolved:
        return TRUE
    return WAITING


def or_transition(left: ResultMessage, right: ResultMessage) -> ResultMessage:
    return not_transition(and_transition(not_transition(left), not_transition(right)))


def until_transition(
    left: ResultMessage, right: ResultMessage, rest: ResultMessage = WAITING
) -> ResultMessage:
    """One unrolling step of ``left U right`` at some state.

    ``rest`` is the verdict of the same until started one state later; it is
    waiting until that evaluator has resolved (or forever, on a truncated
    trace).  With the default this is exactly the per-state until worker:

    * right true                  -> true
    * right false and left false  -> false
    * right false and left true   -> waiting, continue at the next state
    """
    return or_transition(right, and_transition(left, rest))
