"""Gate-list circuit representation and basic circuit-level passes."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .phase import Phase

__all__ = ["Gate", "Circuit", "cancel_gates", "to_ncz_baseline"]

#: Gate kinds without a parameter.
FIXED_KINDS = {"H", "X", "Y", "Z", "S", "Sdg", "T", "Tdg", "CX", "CZ", "Swap", "NCZ"}
#: Gate kinds carrying a Phase angle.
ANGLE_KINDS = {"Rx", "Ry", "Rz", "NCP"}

SINGLE_QUBIT_KINDS = {"H", "X", "Y", "Z", "S", "Sdg", "T", "Tdg", "Rx", "Ry", "Rz"}

SELF_INVERSE_KINDS = {"H", "X", "Y", "Z", "CX", "CZ", "Swap", "NCZ"}

#: Diagonal-in-Z gates that merge by angle addition (kind -> implied Rz angle).
PHASE_GATE_ANGLES = {
    "Z": Phase(1),
    "S": Phase(1, 2),
    "Sdg": Phase(-1, 2),
    "T": Phase(1, 4),
    "Tdg": Phase(-1, 4),
}


@dataclass(frozen=True)
class Gate:
    """A single gate: a kind, an ordered qubit tuple and an optional angle.

    ``NCP(qubits, phi)`` is the fully symmetric multi-controlled phase gate
    ``diag(1, ..., 1, e^{i*phi})`` on its qubit set; ``NCZ`` is ``NCP`` at
    ``phi = pi``.
    """

    kind: str
    qubits: tuple[int, ...]
    angle: Optional[Phase] = None

    def __post_init__(self):
        if self.kind in ANGLE_KINDS:
            if self.angle is None:
                raise ValueError(f"{self.kind} requires an angle")
        elif self.kind in FIXED_KINDS:
            if self.angle is not None:
                raise ValueError(f"{self.kind} takes no angle")
        else:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"duplicate qubits in {self.kind}{self.qubits}")
        n = len(self.qubits)
        if self.kind in SINGLE_QUBIT_KINDS and n != 1:
            raise ValueError(f"{self.kind} acts on one qubit")
        if self.kind in ("CX", "CZ", "Swap") and n != 2:
            raise ValueError(f"{self.kind} acts on two qubits")
        if self.kind in ("NCP", "NCZ") and n < 2:
            raise ValueError(f"{self.kind} needs at least two qubits")

    def is_diagonal(self) -> bool:
        return self.kind in ("Z", "S", "Sdg", "T", "Tdg", "Rz", "CZ", "NCP", "NCZ")

    def __repr__(self) -> str:
        if self.angle is not None:
            return f"{self.kind}({self.angle}){list(self.qubits)}"
        return f"{self.kind}{list(self.qubits)}"


@dataclass(frozen=True)
class Circuit:
    """An ordered gate list over ``num_qubits`` qubits.

    Immutable; passes return new circuits.  ``measurements`` records final
    measurements stripped at parse time as ``(qubit, classical bit)`` pairs.
    """

    num_qubits: int
    gates: tuple[Gate, ...] = ()
    measurements: tuple[tuple[int, int], ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.num_qubits < 1:
            raise ValueError("circuit needs at least one qubit")
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            if any(q < 0 or q >= self.num_qubits for q in g.qubits):
                raise ValueError(f"gate {g} out of range for {self.num_qubits} qubits")

    def with_gates(self, gates: Iterable[Gate]) -> "Circuit":
        return Circuit(self.num_qubits, tuple(gates), self.measurements)

    def __len__(self) -> int:
        return len(self.gates)


def _qubit_key(g: Gate):
    """Qubit identity used for cancellation matching.

    NCP/NCZ are symmetric so their qubit order is irrelevant; CX is not.
    """
    if g.kind in ("NCP", "NCZ", "CZ", "Swap"):
        return (g.kind, frozenset(g.qubits))
    return (g.kind, g.qubits)


def _as_phase_gate(g: Gate) -> Optional[Phase]:
    """Rz-equivalent angle of a single-qubit diagonal gate, else None."""
    if g.kind == "Rz":
        return g.angle
    return PHASE_GATE_ANGLES.get(g.kind)


def _merge(a: Gate, b: Gate) -> Optional[list[Gate]]:
    """Try to merge adjacent gates a, b on the same qubits.

    Returns the replacement list (possibly empty) or None if not mergeable.
    """
    if _qubit_key(a) == _qubit_key(b) and a.kind in SELF_INVERSE_KINDS:
        return []
    pa, pb = _as_phase_gate(a), _as_phase_gate(b)
    if pa is not None and pb is not None and a.qubits == b.qubits:
        s = pa + pb
        return [] if s.is_zero() else [Gate("Rz", a.qubits, s)]
    kinds = {"NCP", "NCZ"}
    if a.kind in kinds and b.kind in kinds and frozenset(a.qubits) == frozenset(b.qubits):
        s = (a.angle or Phase(1)) + (b.angle or Phase(1))
        return [] if s.is_zero() else [Gate("NCP", a.qubits, s)]
    if a.kind == b.kind and a.kind in ("Rx", "Ry") and a.qubits == b.qubits:
        s = a.angle + b.angle
        return [] if s.is_zero() else [Gate(a.kind, a.qubits, s)]
    return None


def cancel_gates(c: Circuit, max_passes: int = 10) -> Circuit:
    """Basic peephole cancellation.

    Removes adjacent self-inverse pairs, merges adjacent phase gates (and
    NCP gates on identical qubit sets), commuting candidates past gates on
    disjoint qubits.  Iterates to a fixpoint, capped at ``max_passes``.
    """
    gates = list(c.gates)
    for _ in range(max_passes):
        out: list[Gate] = []
        changed = False
        for g in gates:
            merged = False
            qs = set(g.qubits)
            # scan backwards past gates on disjoint qubits
            for i in range(len(out) - 1, -1, -1):
                prev = out[i]
                if not qs & set(prev.qubits):
                    continue
                repl = _merge(prev, g)
                if repl is not None:
                    out[i : i + 1] = repl
                    merged = True
                    changed = True
                break
            if not merged:
                if g.kind == "Rz" and g.angle.is_zero():
                    changed = True
                    continue
                if g.kind in ("Rx", "Ry", "NCP") and g.angle.is_zero():
                    changed = True
                    continue
                out.append(g)
        gates = out
        if not changed:
            break
    return c.with_gates(gates)


def to_ncz_baseline(c: Circuit) -> Circuit:
    """Rewrite all controlled gates into their C_nZ / C_nP equivalents.

    CX becomes CZ conjugated by H on the target, Swap three CX; CZ is kept
    as NCZ on two qubits.  The result contains only single-qubit gates and
    NCZ/NCP gates.
    """
    out: list[Gate] = []

    def emit(g: Gate):
        if g.kind == "CX":
            ctl, tgt = g.qubits
            out.append(Gate("H", (tgt,)))
            out.append(Gate("NCZ", (ctl, tgt)))
            out.append(Gate("H", (tgt,)))
        elif g.kind == "CZ":
            out.append(Gate("NCZ", g.qubits))
        elif g.kind == "Swap":
            a, b = g.qubits
            emit(Gate("CX", (a, b)))
            emit(Gate("CX", (b, a)))
            emit(Gate("CX", (a, b)))
        else:
            out.append(g)

    for g in c.gates:
        emit(g)
    return c.with_gates(out)
