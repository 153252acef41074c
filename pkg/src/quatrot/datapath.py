"""Arithmetic datapath graphs: construction, CSE, scheduling, costing, I/O.

Both kernels compile into an explicit DAG of {input, add, sub, square,
double, mul} nodes by running the ordinary kernel code over a graph-building
profile, so the graph structure is the kernel structure by construction. A
value-numbering CSE pass merges structurally identical nodes (commutative
operands normalized), an ASAP schedule assigns pipeline levels, and a
configurable area model prices the result. Graphs round-trip through a JSON
netlist and render to DOT.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Mapping

from .logan import rotmat_logan
from .profiles import ScalarProfile
from .quaternion import ENTRY_NAMES, Quaternion, RotationMatrix3, rotmat_direct

NODE_KINDS = ("input", "add", "sub", "square", "double", "mul")
COMMUTATIVE = ("add", "mul")
INPUT_NAMES = ("q0", "q1", "q2", "q3")
_ARITY = {"input": 0, "add": 2, "sub": 2, "square": 1, "double": 1, "mul": 2}


class GraphError(ValueError):
    """Malformed datapath graph or netlist document."""


@dataclass(frozen=True)
class DatapathNode:
    id: int
    kind: str
    args: tuple = ()
    label: str | None = None

    def __post_init__(self):
        if self.kind not in NODE_KINDS:
            raise GraphError(f"unknown node kind {self.kind!r}")
        if len(self.args) != _ARITY[self.kind]:
            raise GraphError(
                f"node {self.id}: kind {self.kind!r} takes {_ARITY[self.kind]} args, "
                f"got {len(self.args)}"
            )
        if any(a >= self.id for a in self.args):
            raise GraphError(f"node {self.id}: args must reference earlier nodes")


@dataclass(frozen=True)
class DatapathGraph:
    nodes: tuple
    outputs: Mapping[str, int]

    def __post_init__(self):
        ids = [n.id for n in self.nodes]
        if ids != list(range(len(ids))):
            raise GraphError("node ids must be consecutive from 0")
        for name, nid in self.outputs.items():
            if not 0 <= nid < len(self.nodes):
                raise GraphError(f"output {name!r} references missing node {nid}")

    def node(self, nid: int) -> DatapathNode:
        return self.nodes[nid]

    def inputs(self) -> tuple:
        return tuple(n for n in self.nodes if n.kind == "input")

    def census(self) -> dict[str, int]:
        """Node tally by operation class (add and sub fold into addsub)."""
        counts = {"mul": 0, "square": 0, "addsub": 0, "double": 0}
        for n in self.nodes:
            if n.kind == "mul":
                counts["mul"] += 1
            elif n.kind == "square":
                counts["square"] += 1
            elif n.kind in ("add", "sub"):
                counts["addsub"] += 1
            elif n.kind == "double":
                counts["double"] += 1
        return counts


class GraphBuilder:
    """Accumulates nodes; the graph is a DAG by construction."""

    def __init__(self):
        self._nodes: list[DatapathNode] = []

    def _emit(self, kind, args=(), label=None) -> int:
        node = DatapathNode(len(self._nodes), kind, tuple(args), label)
        self._nodes.append(node)
        return node.id

    def input(self, label: str) -> int:
        return self._emit("input", (), label)

    def add(self, a: int, b: int) -> int:
        return self._emit("add", (a, b))

    def sub(self, a: int, b: int) -> int:
        return self._emit("sub", (a, b))

    def square(self, a: int) -> int:
        return self._emit("square", (a,))

    def double(self, a: int) -> int:
        return self._emit("double", (a,))

    def mul(self, a: int, b: int) -> int:
        return self._emit("mul", (a, b))

    def finish(self, outputs: Mapping[str, int]) -> DatapathGraph:
        return DatapathGraph(tuple(self._nodes), dict(outputs))


class GraphProfile(ScalarProfile):
    """Scalar profile whose values are node ids; evaluating a kernel under it
    records the kernel's dataflow instead of computing numbers."""

    name = "graph"

    def __init__(self, builder: GraphBuilder):
        self.builder = builder

    def add(self, a, b):
        return self.builder.add(a, b)

    def sub(self, a, b):
        return self.builder.sub(a, b)

    def mul(self, a, b):
        return self.builder.mul(a, b)

    def square(self, a):
        return self.builder.square(a)

    def double(self, a):
        return self.builder.double(a)

    def halve(self, a):
        raise GraphError("halve has no datapath node kind; kernels never emit it")


def _build_from_kernel(kernel) -> DatapathGraph:
    builder = GraphBuilder()
    q = Quaternion(*(builder.input(name) for name in INPUT_NAMES))
    matrix = kernel(q, GraphProfile(builder))
    return builder.finish(matrix.entries())


def build_direct_graph(apply_cse: bool = True) -> DatapathGraph:
    """Direct kernel as a DAG; census {mul:6, square:4, addsub:15, double:6}."""
    g = _build_from_kernel(rotmat_direct)
    return cse(g) if apply_cse else g


def build_logan_graph(apply_cse: bool = True) -> DatapathGraph:
    """Squaring-only kernel as a DAG; census {mul:0, square:10, addsub:26}.

    Stages fall out of the structure: pairwise input adders, the squarer
    bank, theta/lambda combination adders, then output-assembly adders.
    """
    g = _build_from_kernel(rotmat_logan)
    return cse(g) if apply_cse else g


def build_direct_graph_expanded() -> DatapathGraph:
    """Per-entry expansion of the direct kernel: every output builds its own
    private expression tree (12 squares, 12 muls). cse() recovers the shared
    form with 4 squares and 6 muls."""
    b = GraphBuilder()
    q0, q1, q2, q3 = (b.input(name) for name in INPUT_NAMES)

    def diag(i, j, k, m):
        # (qi^2 + qj^2) - (qk^2 + qm^2) with fresh square nodes
        return b.sub(
            b.add(b.square(i), b.square(j)), b.add(b.square(k), b.square(m))
        )

    def off(a, c, x, y, sign):
        combine = b.add if sign > 0 else b.sub
        return b.double(combine(b.mul(a, c), b.mul(x, y)))

    outputs = {
        "c00": diag(q0, q1, q2, q3),
        "c11": diag(q0, q2, q1, q3),
        "c22": diag(q0, q3, q1, q2),
        "c01": off(q1, q2, q0, q3, -1),
        "c02": off(q0, q2, q1, q3, +1),
        "c10": off(q1, q2, q0, q3, +1),
        "c12": off(q2, q3, q0, q1, -1),
        "c20": off(q1, q3, q0, q2, -1),
        "c21": off(q0, q1, q2, q3, +1),
    }
    return b.finish(outputs)


def build_logan_graph_expanded() -> DatapathGraph:
    """Per-entry expansion of the squaring kernel with all intermediates
    inlined per output; cse() recovers 10 squares and 26 adders from the
    duplicate sums."""
    b = GraphBuilder()
    q0, q1, q2, q3 = (b.input(name) for name in INPUT_NAMES)

    def phi(a, c):
        return b.square(b.add(a, c))

    def theta0():
        return b.add(b.square(q1), b.square(q2))

    def theta1():
        return b.add(b.square(q0), b.square(q3))

    def lam():
        return b.add(theta0(), theta1())

    def c00():
        return b.add(b.sub(b.square(q1), b.square(q2)), b.sub(b.square(q0), b.square(q3)))

    def c11():
        return b.sub(b.sub(b.square(q0), b.square(q3)), b.sub(b.square(q1), b.square(q2)))

    def c22():
        return b.sub(theta1(), theta0())

    outputs = {
        "c00": c00(),
        "c11": c11(),
        "c22": c22(),
        "c01": b.add(b.sub(phi(q1, q2), phi(q0, q3)), c22()),
        "c12": b.add(b.sub(phi(q2, q3), phi(q0, q1)), c00()),
        "c20": b.add(b.sub(phi(q1, q3), phi(q0, q2)), c11()),
        "c10": b.sub(b.add(phi(q1, q2), phi(q0, q3)), lam()),
        "c21": b.sub(b.add(phi(q2, q3), phi(q0, q1)), lam()),
        "c02": b.sub(b.add(phi(q1, q3), phi(q0, q2)), lam()),
    }
    return b.finish(outputs)


def cse(g: DatapathGraph) -> DatapathGraph:
    """Value-numbering CSE with commutative operand normalization.

    Idempotent; output semantics unchanged. Nodes not reachable backward
    from an output (or an input) are dropped.
    """
    remap: dict[int, int] = {}
    keys: dict[tuple, int] = {}
    kept: list[DatapathNode] = []
    for node in g.nodes:
        args = tuple(remap[a] for a in node.args)
        if node.kind in COMMUTATIVE:
            args = tuple(sorted(args))
        key = (node.kind, args, node.label if node.kind == "input" else None)
        if key in keys:
            remap[node.id] = keys[key]
            continue
        new_id = len(kept)
        kept.append(DatapathNode(new_id, node.kind, tuple(remap[a] for a in node.args), node.label))
        keys[key] = new_id
        remap[node.id] = new_id

    outputs = {name: remap[nid] for name, nid in g.outputs.items()}

    # Dead-node sweep: keep inputs and everything an output depends on.
    live = set(outputs.values()) | {n.id for n in kept if n.kind == "input"}
    for node in reversed(kept):
        if node.id in live:
            live.update(node.args)
    final_map = {}
    final_nodes = []
    for node in kept:
        if node.id not in live:
            continue
        final_map[node.id] = len(final_nodes)
        final_nodes.append(
            DatapathNode(
                len(final_nodes),
                node.kind,
                tuple(final_map[a] for a in node.args),
                node.label,
            )
        )
    return DatapathGraph(
        tuple(final_nodes), {name: final_map[nid] for name, nid in outputs.items()}
    )


@dataclass(frozen=True)
class CostModel:
    """Area/latency weights per operator class at a given operand width.

    The default prices a dedicated squarer at half a general multiplier's
    area, an adder linearly in width, and shifts as free wiring.
    """

    bit_width: int
    mul_area: float
    square_area: float
    add_area: float
    shift_area: float
    latency: Mapping[str, float] = field(
        default_factory=lambda: {
            "input": 0.0,
            "add": 1.0,
            "sub": 1.0,
            "square": 1.0,
            "double": 0.0,
            "mul": 1.0,
        }
    )

    def __post_init__(self):
        if self.bit_width < 1:
            raise ValueError("bit_width must be positive")
        if min(self.mul_area, self.square_area, self.add_area, self.shift_area) < 0:
            raise ValueError("area weights must be non-negative")

    @classmethod
    def default(cls, bit_width: int, square_ratio: float = 0.5) -> "CostModel":
        n = bit_width
        return cls(
            bit_width=n,
            mul_area=float(n * n),
            square_area=square_ratio * n * n,
            add_area=float(n),
            shift_area=0.0,
        )

    def area_of(self, kind: str) -> float:
        if kind == "mul":
            return self.mul_area
        if kind == "square":
            return self.square_area
        if kind in ("add", "sub"):
            return self.add_area
        if kind == "double":
            return self.shift_area
        return 0.0


@dataclass(frozen=True)
class Schedule:
    levels: Mapping[int, int]
    critical_path_levels: int
    critical_path_latency: float


def schedule_asap(g: DatapathGraph, model: CostModel | None = None) -> Schedule:
    """As-soon-as-possible levels: inputs at 0, each node one past its latest
    argument. The weighted path length uses the model's latencies."""
    levels: dict[int, int] = {}
    finish: dict[int, float] = {}
    latency = model.latency if model is not None else None
    for node in g.nodes:
        if node.kind == "input":
            levels[node.id] = 0
            finish[node.id] = 0.0
            continue
        levels[node.id] = 1 + max(levels[a] for a in node.args)
        lat = latency.get(node.kind, 1.0) if latency is not None else 1.0
        finish[node.id] = lat + max(finish[a] for a in node.args)
    out_ids = list(g.outputs.values())
    return Schedule(
        levels=levels,
        critical_path_levels=max((levels[i] for i in out_ids), default=0),
        critical_path_latency=max((finish[i] for i in out_ids), default=0.0),
    )


@dataclass(frozen=True)
class CostSummary:
    total_area: float
    by_kind: Mapping[str, tuple]  # kind -> (node count, summed area)
    critical_path_levels: int
    critical_path_latency: float

    def as_dict(self) -> dict:
        return {
            "total_area": self.total_area,
            "by_kind": {k: {"count": c, "area": a} for k, (c, a) in self.by_kind.items()},
            "critical_path_levels": self.critical_path_levels,
            "critical_path_latency": self.critical_path_latency,
        }


def cost_report(g: DatapathGraph, model: CostModel) -> CostSummary:
    by_kind: dict[str, list] = {}
    total = 0.0
    for node in g.nodes:
        if node.kind == "input":
            continue
        area = model.area_of(node.kind)
        entry = by_kind.setdefault(node.kind, [0, 0.0])
        entry[0] += 1
        entry[1] += area
        total += area
    sched = schedule_asap(g, model)
    return CostSummary(
        total_area=total,
        by_kind={k: (c, a) for k, (c, a) in by_kind.items()},
        critical_path_levels=sched.critical_path_levels,
        critical_path_latency=sched.critical_path_latency,
    )


def evaluate(g: DatapathGraph, q: Quaternion, profile: ScalarProfile) -> RotationMatrix3:
    """Interpret the graph in topological (id) order under a scalar profile.

    Bit-exactly reproduces the kernel the graph was compiled from, because
    the node structure is the kernel's own expression structure.
    """
    by_name = dict(zip(INPUT_NAMES, q.components()))
    values: list = [None] * len(g.nodes)
    for node in g.nodes:
        if node.kind == "input":
            if node.label not in by_name:
                raise GraphError(f"input node with unknown label {node.label!r}")
            values[node.id] = by_name[node.label]
        elif node.kind == "add":
            values[node.id] = profile.add(values[node.args[0]], values[node.args[1]])
        elif node.kind == "sub":
            values[node.id] = profile.sub(values[node.args[0]], values[node.args[1]])
        elif node.kind == "square":
            values[node.id] = profile.square(values[node.args[0]])
        elif node.kind == "double":
            values[node.id] = profile.double(values[node.args[0]])
        elif node.kind == "mul":
            values[node.id] = profile.mul(values[node.args[0]], values[node.args[1]])
    rows = tuple(
        tuple(values[g.outputs[f"c{i}{j}"]] for j in range(3)) for i in range(3)
    )
    return RotationMatrix3(rows)


_DOT_SHAPES = {
    "input": "ellipse",
    "add": "box",
    "sub": "box",
    "square": "hexagon",
    "double": "diamond",
    "mul": "octagon",
}


def emit_dot(g: DatapathGraph) -> str:
    """Render the graph as a DOT digraph, one node line per graph node."""
    out_names = {}
    for name, nid in g.outputs.items():
        out_names.setdefault(nid, []).append(name)
    lines = ["digraph datapath {", "  rankdir=LR;"]
    for node in g.nodes:
        label = node.label if node.kind == "input" else node.kind
        tags = out_names.get(node.id)
        if tags:
            label = f"{label}\\n{','.join(sorted(tags))}"
        lines.append(
            f'  n{node.id} [label="{label}", shape={_DOT_SHAPES[node.kind]}];'
        )
    for node in g.nodes:
        for a in node.args:
            lines.append(f"  n{a} -> n{node.id};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def emit_netlist_json(g: DatapathGraph) -> str:
    """Serialize to the netlist schema: inputs by name (implicit ids 0..3),
    then non-input nodes with strictly increasing ids, then the output map."""
    inputs = [n.label for n in g.inputs()]
    doc = {
        "inputs": inputs,
        "nodes": [
            {"id": n.id, "kind": n.kind, "args": list(n.args)}
            for n in g.nodes
            if n.kind != "input"
        ],
        "outputs": dict(g.outputs),
    }
    return json.dumps(doc, indent=2) + "\n"


def load_netlist_json(text: str) -> DatapathGraph:
    """Parse and validate a netlist document; raises GraphError naming the
    first offense (bad schema, dangling id, arity, missing outputs)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"netlist is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise GraphError("netlist document must be a JSON object")
    for key in ("inputs", "nodes", "outputs"):
        if key not in doc:
            raise GraphError(f"netlist missing required key {key!r}")
    if list(doc["inputs"]) != list(INPUT_NAMES):
        raise GraphError(f"inputs must be {list(INPUT_NAMES)}, got {doc['inputs']}")

    nodes = [
        DatapathNode(i, "input", (), name) for i, name in enumerate(INPUT_NAMES)
    ]
    last_id = len(nodes) - 1
    for item in doc["nodes"]:
        try:
            nid, kind, args = int(item["id"]), item["kind"], tuple(item["args"])
        except (KeyError, TypeError) as exc:
            raise GraphError(f"malformed node entry {item!r}") from exc
        if nid <= last_id:
            raise GraphError(f"node ids must be strictly increasing at id {nid}")
        if nid != last_id + 1:
            raise GraphError(f"node ids must be consecutive; gap before id {nid}")
        if kind == "input":
            raise GraphError(f"node {nid}: explicit input nodes are not allowed")
        for a in args:
            if not 0 <= a < nid:
                raise GraphError(f"node {nid}: dangling arg {a}")
        try:
            nodes.append(DatapathNode(nid, kind, tuple(int(a) for a in args)))
        except GraphError as exc:
            raise GraphError(str(exc)) from exc
        last_id = nid

    outputs = doc["outputs"]
    if set(outputs) != set(ENTRY_NAMES):
        raise GraphError(
            f"outputs must name exactly {sorted(ENTRY_NAMES)}, got {sorted(outputs)}"
        )
    for name, nid in outputs.items():
        if not isinstance(nid, int) or not 0 <= nid <= last_id:
            raise GraphError(f"output {name!r} references missing node {nid!r}")
    return DatapathGraph(tuple(nodes), {k: int(v) for k, v in outputs.items()})
