import pytest

from helpers import rand_corpus_circuit, rand_rich_circuit
from zxna import Circuit, Gate, Phase, ZxDiagram, circuit_unitary, diagram_tensor, equal_up_to_scalar, full_simplify
from zxna.ingest import circuit_to_diagram, to_graph_like
from zxna.simplify import gadget_fusion, gadget_pivot, id_simp, lc_simp, pivot_simp


def _line_diagram(phases):
    """chain in - v1 - ... - vk - out of Hadamard wires."""
    d = ZxDiagram(1, 1)
    vs = [d.add_spider(Phase(0))]
    d.inputs = [vs[0]]
    for p in phases:
        v = d.add_spider(p)
        d.toggle_edge(vs[-1], v)
        vs.append(v)
    out = d.add_spider(Phase(0))
    d.toggle_edge(vs[-1], out)
    d.outputs = [out]
    return d, vs


def test_lc_simp_guard():
    d, vs = _line_diagram([Phase(1, 4)])
    assert lc_simp(d, vs[1]) is False
    with pytest.raises(ValueError):
        lc_simp(d, d.inputs[0])


def test_lc_simp_example():
    d, vs = _line_diagram([Phase(1, 2)])
    before = diagram_tensor(d)
    assert lc_simp(d, vs[1])
    assert equal_up_to_scalar(diagram_tensor(d), before, 1e-9)
    # neighbors got -pi/2 and an edge toggle
    assert d.has_edge(d.inputs[0], d.outputs[0])
    assert d.phase(d.inputs[0]) == Phase(-1, 2)


def test_pivot_simp_example():
    d, vs = _line_diagram([Phase(0), Phase(1)])
    before = diagram_tensor(d)
    assert pivot_simp(d, vs[1], vs[2])
    assert equal_up_to_scalar(diagram_tensor(d), before, 1e-9)
    assert d.num_spiders() == 2


def test_pivot_simp_guard():
    d, vs = _line_diagram([Phase(1, 4), Phase(1), Phase(0)])
    assert pivot_simp(d, vs[1], vs[2]) is False
    with pytest.raises(ValueError):
        pivot_simp(d, vs[1], vs[3])  # not adjacent


def test_gadget_pivot_creates_gadget():
    d, vs = _line_diagram([Phase(1), Phase(1, 4), Phase(0)])
    # vs[2] non-Clifford with Pauli neighbor vs[1]
    before = diagram_tensor(d)
    assert gadget_pivot(d, vs[1], vs[2])
    assert equal_up_to_scalar(diagram_tensor(d), before, 1e-9)
    gs = d.find_gadgets()
    assert len(gs) == 1
    assert gs[0].phase in (Phase(1, 4), Phase(-1, 4))


def test_gadget_pivot_guard():
    d, vs = _line_diagram([Phase(1), Phase(1, 2)])
    assert gadget_pivot(d, vs[1], vs[2]) is False  # Clifford target


def test_id_simp():
    d, vs = _line_diagram([Phase(0)])
    before = diagram_tensor(d)
    assert id_simp(d, vs[1])
    assert equal_up_to_scalar(diagram_tensor(d), before, 1e-9)
    # the two phase-free neighbors fused into a single boundary spider
    assert d.num_spiders() == 1


def test_gadget_fusion_merges_and_cancels():
    d = ZxDiagram(0, 2)
    a, b = d.add_spider(), d.add_spider()
    d.outputs = [a, b]
    for p in (Phase(1, 4), Phase(1, 8)):
        root = d.add_spider(Phase(0))
        top = d.add_spider(p)
        d.toggle_edge(root, top)
        d.toggle_edge(root, a)
        d.toggle_edge(root, b)
    assert gadget_fusion(d) == 1
    gs = d.find_gadgets()
    assert len(gs) == 1 and gs[0].phase == Phase(3, 8)
    # opposite phase: pair drops entirely
    root = d.add_spider(Phase(0))
    top = d.add_spider(Phase(-3, 8))
    d.toggle_edge(root, top)
    d.toggle_edge(root, a)
    d.toggle_edge(root, b)
    gadget_fusion(d)
    assert d.find_gadgets() == []


def test_full_simplify_terminates_and_preserves_tensor():
    checked = 0
    for seed in range(40):
        c = rand_rich_circuit(seed, max_qubits=4, max_gates=14)
        d = circuit_to_diagram(c)
        to_graph_like(d)
        if d.num_spiders() > 22:
            continue
        full_simplify(d)
        d.check_simple()
        if d.num_spiders() <= 22:
            assert equal_up_to_scalar(diagram_tensor(d), circuit_unitary(c), 1e-8)
            checked += 1
    assert checked >= 20


def test_full_simplify_per_rewrite_tensor():
    for seed in range(12):
        c = rand_rich_circuit(seed + 70, max_qubits=3, max_gates=10)
        d = circuit_to_diagram(c)
        to_graph_like(d)
        if d.num_spiders() > 20:
            continue
        ref = diagram_tensor(d)

        def hook(rule, dd):
            if dd.num_spiders() <= 20:
                assert equal_up_to_scalar(diagram_tensor(dd), ref, 1e-8), rule

        full_simplify(d, on_rewrite=hook)


def test_full_simplify_postcondition():
    # every interior spider is non-Clifford, part of a gadget, or a Pauli
    # spider whose neighbors all lie on the boundary (no pivot partner left)
    for seed in range(25):
        c = rand_corpus_circuit(seed, max_qubits=6, max_gates=30)
        d = circuit_to_diagram(c)
        to_graph_like(d)
        full_simplify(d)
        boundary = set(d.inputs) | set(d.outputs)
        gs = d.find_gadgets()
        parts = {g.top for g in gs} | {g.root for g in gs}
        for v in d.spiders():
            if v in boundary or v in parts:
                continue
            if d.phase(v).is_pauli() and d.neighbors(v) <= boundary:
                continue
            assert not d.phase(v).is_clifford(), (seed, v, d.phase(v))


def test_full_simplify_records_trace():
    c = Circuit(2, (Gate("S", (0,)), Gate("CZ", (0, 1)), Gate("S", (0,)), Gate("H", (0,))))
    d = circuit_to_diagram(c)
    trace = full_simplify(d)
    assert isinstance(trace.to_json(), str)


def test_clifford_circuit_collapses():
    gates = (
        Gate("H", (0,)), Gate("S", (1,)), Gate("CX", (0, 1)),
        Gate("CZ", (0, 1)), Gate("S", (0,)), Gate("H", (1,)),
        Gate("CX", (1, 0)), Gate("Z", (0,)),
    )
    c = Circuit(2, gates)
    d = circuit_to_diagram(c)
    to_graph_like(d)
    full_simplify(d)
    boundary = set(d.inputs) | set(d.outputs)
    # no non-Clifford phases anywhere, so no interior spiders survive
    assert all(v in boundary for v in d.spiders())
    assert equal_up_to_scalar(diagram_tensor(d), circuit_unitary(c), 1e-9)
