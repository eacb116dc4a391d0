"""Playable comply-game sessions against an optimal engine.

A move is two-phased: the proposer offers a set of target positions, the
other player picks one.  The proposer role alternates after each completed
move; a player who cannot propose loses.  The engine proposes all-P sets
from N-positions and always picks N-targets when offered one.
"""

from __future__ import annotations

import itertools
import json
import uuid
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from .conditions import AvoidanceMode, ConditionExpr, builtin, parse_mode
from .dsl import parse_condition
from .heapgames import DiscrepancyPairs, comply_number_outcomes
from .multiheap import (
    GridOutcomeTable,
    best_choice_2d,
    best_proposal_2d,
    comply_outcomes_2d,
    legal_tuple_proposal,
    proposals_2d,
)

PROPOSAL_CAP = 200


class SessionError(ValueError):
    def __init__(self, message: str, status: int = 400):
        super().__init__(message)
        self.status = status


class HeapEngine:
    """One heap; proposals are the target pairs {x-d, x-2d}."""

    dims = 1

    def __init__(self, bound: int):
        self.bound = bound
        self.table = comply_number_outcomes(DiscrepancyPairs(lambda d: True), bound)

    def outcome(self, pos: int) -> str:
        return self.table.outcome(pos)

    def proposals(self, pos: int, limit: int = PROPOSAL_CAP):
        out = []
        truncated = False
        for d in range(1, pos // 2 + 1):
            if len(out) >= limit:
                truncated = True
                break
            out.append([pos - d, pos - 2 * d])
        return out, truncated

    def validate(self, pos: int, targets: Sequence[int]):
        if len(targets) != 2:
            raise SessionError("a proposal names exactly two target heaps")
        a, b = sorted(targets, reverse=True)
        if b < 0 or a >= pos:
            raise SessionError("off-board: targets must lie in [0, heap)")
        d1, d2 = pos - a, pos - b
        if d2 != 2 * d1 or d1 < 1:
            raise SessionError(
                "condition fails: targets must remove d and 2d tokens"
            )
        return [a, b]

    def best_proposal(self, pos: int):
        if self.table.is_p[pos]:
            # losing anyway; offer the smallest applicable set
            props, _ = self.proposals(pos, limit=1)
            return props[0] if props else None
        for d in range(1, pos // 2 + 1):
            a, b = pos - d, pos - 2 * d
            if self.table.is_p[a] and self.table.is_p[b]:
                return [a, b]
        return None

    def choose(self, targets: Sequence[int]) -> int:
        for i, t in enumerate(targets):
            if not self.table.is_p[t]:
                return i
        return 0

    def annotate(self, pos: int) -> dict:
        return {"outcome": self.outcome(pos)}


class GridEngine:
    """Two heaps under a condition and avoidance mode."""

    dims = 2

    def __init__(self, cond: ConditionExpr, mode: AvoidanceMode, bounds: tuple[int, int]):
        self.cond = cond
        self.mode = mode
        self.X, self.Y = bounds
        self.table = comply_outcomes_2d(cond, mode, self.X, self.Y)

    def outcome(self, pos) -> str:
        return self.table.outcome(pos[0], pos[1])

    def proposals(self, pos, limit: int = PROPOSAL_CAP):
        props, truncated = proposals_2d(
            self.cond, self.mode, tuple(pos), bounds=(self.X, self.Y), limit=limit
        )
        return [[list(m) for m in p] for p in props], truncated

    def validate(self, pos, targets):
        pts = [tuple(t) for t in targets]
        pos = tuple(pos)
        if any(len(p) != 2 for p in pts):
            raise SessionError("each target must be a lattice point [x, y]")
        if any(p[0] < 0 or p[1] < 0 or p[0] > self.X or p[1] > self.Y for p in pts):
            raise SessionError("off-board: targets must stay on the board")
        if len(pts) == 1:
            p = pts[0]
            nim = (p[0] == pos[0] and p[1] < pos[1]) or (p[1] == pos[1] and p[0] < pos[0])
            if nim:
                return [list(p) for p in pts]
            if self.cond.arity == 2 and legal_tuple_proposal(self.cond, self.mode, pos, pts):
                return [list(p) for p in pts]
            raise SessionError("condition fails: not a Nim move or a legal option")
        k = self.cond.arity
        if k < 2 or len(pts) != k - 1:
            raise SessionError(f"a condition proposal names {max(k - 1, 1)} targets")
        from .multiheap import _mode_members_ok, _arrangement_ok

        if not _mode_members_ok(self.mode, pos, pts):
            raise SessionError("mode violation: targets break the mode's ordering rules")
        if not _arrangement_ok(self.cond, self.mode, list(pts) + [pos]):
            raise SessionError("condition fails: targets do not complete an instance")
        return [list(p) for p in pts]

    def best_proposal(self, pos):
        pos = tuple(pos)
        prop = best_proposal_2d(self.cond, self.mode, pos, self.table)
        if prop is not None:
            return [list(m) for m in prop]
        props, _ = self.proposals(pos, limit=1)
        return props[0] if props else None

    def choose(self, targets) -> int:
        pts = [tuple(t) for t in targets]
        pick = best_choice_2d(pts, self.table)
        return pts.index(pick)

    def annotate(self, pos) -> dict:
        return {"outcome": self.outcome(pos)}


GAME_KINDS = {
    "ap3-board": {
        "dims": 1,
        "default_bounds": [40],
        "description": "one heap; propose removing d and 2d tokens",
    },
    "line-nim": {
        "dims": 2,
        "default_bounds": [12, 12],
        "description": "two heaps; Nim moves plus collinear pairs below-left",
    },
    "wythoff": {
        "dims": 2,
        "default_bounds": [12, 12],
        "description": "two heaps; Nim moves plus equal-gap moves",
    },
    "custom": {
        "dims": 2,
        "default_bounds": [12, 12],
        "description": "two heaps; condition and mode supplied at creation",
    },
}


def make_engine(kind: str, bounds, cond_text: Optional[str] = None, mode: str = "max"):
    if kind == "ap3-board":
        return HeapEngine(int(bounds[0]))
    if kind == "line-nim":
        return GridEngine(builtin("line"), parse_mode(mode), (int(bounds[0]), int(bounds[1])))
    if kind == "wythoff":
        return GridEngine(builtin("diagonal"), parse_mode(mode), (int(bounds[0]), int(bounds[1])))
    if kind == "custom":
        if not cond_text:
            raise SessionError("custom games need a condition")
        return GridEngine(parse_condition(cond_text), parse_mode(mode), (int(bounds[0]), int(bounds[1])))
    raise SessionError(f"unknown game kind: {kind}", status=400)


@dataclass
class GameSession:
    id: str
    kind: str
    engine: Union[HeapEngine, GridEngine]
    position: object
    phase: str = "propose"  # propose | choose | done
    proposer: str = "human"  # who proposes next
    pending: Optional[list] = None  # engine's proposal awaiting human choice
    winner: Optional[str] = None
    history: list = field(default_factory=list)
    cond_text: Optional[str] = None
    mode: str = "max"

    @classmethod
    def create(cls, kind: str, bounds=None, start=None, cond_text=None,
               mode: str = "max", human_role: str = "proposer") -> "GameSession":
        info = GAME_KINDS.get(kind)
        if info is None:
            raise SessionError(f"unknown game kind: {kind}")
        bounds = bounds or info["default_bounds"]
        engine = make_engine(kind, bounds, cond_text, mode)
        if start is None:
            start = bounds[0] if info["dims"] == 1 else list(bounds)
        if info["dims"] == 1:
            position = int(start)
            if not (0 <= position <= engine.bound):
                raise SessionError("start heap outside the configured bound")
        else:
            position = [int(start[0]), int(start[1])]
            if not (0 <= position[0] <= engine.X and 0 <= position[1] <= engine.Y):
                raise SessionError("start position outside the configured bounds")
        sess = cls(
            id=uuid.uuid4().hex[:12],
            kind=kind,
            engine=engine,
            position=position,
            proposer="human" if human_role == "proposer" else "engine",
            cond_text=cond_text,
            mode=mode,
        )
        sess._advance_engine()
        return sess

    # -- engine turns ------------------------------------------------------

    def _advance_engine(self):
        """Run engine turns until the session waits on the human (or ends)."""
        while self.winner is None:
            if self.proposer == "human":
                props, _ = self.engine.proposals(self.position, limit=1)
                if not props:
                    self.winner = "engine"
                    self.phase = "done"
                    return
                self.phase = "propose"
                return
            props = self.engine.best_proposal(self.position)
            if props is None:
                self.winner = "human"
                self.phase = "done"
                return
            self.pending = props
            self.phase = "choose"
            return

    def propose(self, targets) -> None:
        if self.winner is not None:
            raise SessionError("game over", status=409)
        if self.phase != "propose" or self.proposer != "human":
            raise SessionError("not the proposing phase", status=409)
        clean = self.engine.validate(self.position, targets)
        idx = self.engine.choose(clean)
        self.history.append({"proposer": "human", "proposal": clean, "choice": idx})
        self.position = clean[idx]
        self.proposer = "engine"
        self.pending = None
        self._advance_engine()

    def choose(self, index: int) -> None:
        if self.winner is not None:
            raise SessionError("game over", status=409)
        if self.phase != "choose" or self.pending is None:
            raise SessionError("no engine proposal to choose from", status=409)
        if not (0 <= index < len(self.pending)):
            raise SessionError("choice index out of range")
        self.history.append(
            {"proposer": "engine", "proposal": self.pending, "choice": index}
        )
        self.position = self.pending[index]
        self.pending = None
        self.proposer = "human"
        self._advance_engine()

    # -- views ---------------------------------------------------------------

    def state(self, proposal_cap: int = PROPOSAL_CAP) -> dict:
        props, truncated = ([], False)
        if self.phase == "propose":
            props, truncated = self.engine.proposals(self.position, limit=proposal_cap)
        doc = {
            "id": self.id,
            "kind": self.kind,
            "position": self.position,
            "phase": self.phase,
            "proposer": self.proposer,
            "legalProposals": props,
            "truncated": truncated,
            "pendingProposal": self.pending,
            "winner": self.winner,
            "moves": len(self.history),
            "outcomeAnnotation": self.engine.annotate(self.position),
        }
        if self.engine.dims == 1:
            doc["bounds"] = [self.engine.bound]
        else:
            doc["bounds"] = [self.engine.X, self.engine.Y]
        return doc

    def save_json(self) -> str:
        doc = {
            "id": self.id,
            "kind": self.kind,
            "bounds": self.state()["bounds"],
            "position": self.position,
            "phase": self.phase,
            "proposer": self.proposer,
            "pending": self.pending,
            "winner": self.winner,
            "history": self.history,
            "cond": self.cond_text,
            "mode": self.mode,
        }
        return json.dumps(doc)

    @classmethod
    def load_json(cls, text: str) -> "GameSession":
        doc = json.loads(text)
        engine = make_engine(doc["kind"], doc["bounds"], doc.get("cond"), doc.get("mode", "max"))
        return cls(
            id=doc["id"],
            kind=doc["kind"],
            engine=engine,
            position=doc["position"],
            phase=doc["phase"],
            proposer=doc["proposer"],
            pending=doc.get("pending"),
            winner=doc.get("winner"),
            history=doc.get("history", []),
            cond_text=doc.get("cond"),
            mode=doc.get("mode", "max"),
        )
