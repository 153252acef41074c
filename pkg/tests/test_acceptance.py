"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines and timings.
"""

import time

import numpy as np
import pytest

from quatrot.batch import FIXED_KERNELS, FixedBatch, direct_batch, logan_batch
from quatrot.datapath import (
    CostModel,
    build_direct_graph,
    build_logan_graph,
    cost_report,
    emit_netlist_json,
    evaluate,
    load_netlist_json,
    schedule_asap,
)
from quatrot.logan import op_census_logan, rotmat_logan
from quatrot.polynomial import (
    grid_equivalence,
    printed_errata_report,
    verify_entrywise_identity,
)
from quatrot.precision import max_error, sample_unit_quaternions
from quatrot.profiles import FLOAT64, RATIONAL, FixedPointProfile, parse_q_format
from quatrot.quaternion import Quaternion, op_census_direct, rotmat_direct

from test_datapath import longest_path_by_enumeration


class _Timer:
    def __init__(self, limit: float):
        self.limit = limit

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        return False


def _report(n: int, name: str, ok: bool, timer: _Timer, detail: str = ""):
    status = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"ACCEPTANCE {n} [{status}] {name}: {timer.elapsed:.3f}s"
          f" < {timer.limit}s{suffix}")
    assert ok, f"criterion {n} ({name}) failed"
    assert timer.elapsed < timer.limit, (
        f"criterion {n} exceeded its {timer.limit}s runtime budget"
    )


def test_criterion_1_direct_census():
    with _Timer(1.0) as t:
        ledger = op_census_direct().as_dict()
        ok = ledger == {"mul": 6, "square": 4, "addsub": 15, "double": 6, "halve": 0}
    _report(1, "direct-kernel op census", ok, t, str(ledger))


def test_criterion_2_logan_census():
    with _Timer(1.0) as t:
        ledger = op_census_logan().as_dict()
        ok = (
            ledger["mul"] == 0
            and ledger["double"] == 0
            and ledger["halve"] == 0
            and ledger["square"] == 10
            and ledger["addsub"] <= 29
            and ledger["addsub"] == 26  # achieved count of this assembly
        )
    _report(2, "logan-kernel op census", ok, t, str(ledger))


def test_criterion_3_symbolic_proof_and_errata():
    with _Timer(1.0) as t:
        identity = verify_entrywise_identity()
        errata = printed_errata_report()
        ok = (
            identity.all_passed
            and len(identity.checks) == 9
            and {c.entry for c in errata.checks} == {"c00", "c02", "c12", "c20", "c21"}
            and all(not c.difference.is_zero() for c in errata.checks)
        )
    _report(3, "symbolic identity proof + printed-typo non-identities", ok, t,
            "9/9 identical, 5 typos demonstrated")


def test_criterion_4_grid_equivalence():
    with _Timer(5.0) as t:
        grid = grid_equivalence(3)
        m_direct = rotmat_direct(Quaternion(1, 2, 3, 4), RATIONAL)
        m_logan = rotmat_logan(Quaternion(1, 2, 3, 4), RATIONAL)
        expected = ((-20, 4, 22), (20, -10, 20), (10, 28, 4))
        ok = (
            grid.passed
            and grid.cases == 2401
            and m_direct.rows == expected
            and m_logan.rows == expected
        )
    _report(4, "exhaustive grid equivalence on {-3..3}^4", ok, t,
            f"{grid.cases} cases")


def test_criterion_5_float_agreement_and_rotation_properties():
    with _Timer(30.0) as t:
        q = sample_unit_quaternions(1_000_000, seed=2024)
        logan = logan_batch(q)
        direct = direct_batch(q)
        agreement = float(np.max(np.abs(logan - direct)))
        gram = np.einsum("nki,nkj->nij", direct, direct)
        ortho = float(np.max(np.abs(gram - np.eye(3))))
        det_err = float(np.max(np.abs(np.linalg.det(direct) - 1.0)))
        ok = agreement <= 1e-14 and ortho <= 1e-12 and det_err <= 1e-12
    _report(5, "binary64 agreement over 1e6 unit quaternions", ok, t,
            f"|logan-direct|max={agreement:.2e}, |R^TR-I|max={ortho:.2e}, "
            f"|det-1|max={det_err:.2e}")


def test_criterion_6_datapath_fidelity():
    with _Timer(5.0) as t:
        fmt = parse_q_format("Q3.12")
        graphs = {"direct": build_direct_graph(), "logan": build_logan_graph()}
        kernels = {"direct": rotmat_direct, "logan": rotmat_logan}
        samples = sample_unit_quaternions(1000, seed=99)

        ok = True
        for name, g in graphs.items():
            kernel = kernels[name]
            loaded = load_netlist_json(emit_netlist_json(g))
            for row in samples[:1000]:
                qf = Quaternion(*row)
                ok &= (
                    evaluate(g, qf, FLOAT64).flat() == kernel(qf, FLOAT64).flat()
                )
                p_graph, p_kernel = FixedPointProfile(fmt), FixedPointProfile(fmt)
                quantized = [p_kernel.from_real(v) for v in row]
                qx = Quaternion(*quantized)
                ok &= (
                    evaluate(g, qx, p_graph).flat() == kernel(qx, p_kernel).flat()
                )
            # netlist round trip preserves evaluation
            qi = Quaternion(1, 2, 3, 4)
            ok &= evaluate(loaded, qi, RATIONAL).flat() == evaluate(g, qi, RATIONAL).flat()

        sched_l = schedule_asap(graphs["logan"]).critical_path_levels
        sched_d = schedule_asap(graphs["direct"]).critical_path_levels
        brute_l = longest_path_by_enumeration(graphs["logan"])
        brute_d = longest_path_by_enumeration(graphs["direct"])
        ok &= (sched_l, sched_d) == (4, 3) and (brute_l, brute_d) == (4, 3)
    _report(6, "graph/kernel bit fidelity + critical paths 4/3", bool(ok), t)


def test_criterion_7_cost_model():
    with _Timer(1.0) as t:
        direct_g, logan_g = build_direct_graph(), build_logan_graph()
        wins = all(
            cost_report(logan_g, CostModel.default(n)).total_area
            < cost_report(direct_g, CostModel.default(n)).total_area
            for n in (8, 12, 16, 24, 32)
        )
        m8 = CostModel.default(8)
        d8 = cost_report(direct_g, m8).total_area
        l8 = cost_report(logan_g, m8).total_area
        ok = wins and (l8, d8) == (528, 632)
    _report(7, "default cost model favors the squaring datapath", ok, t,
            f"n=8: {l8:.0f} vs {d8:.0f}")


def test_criterion_8_fixed_point_error():
    with _Timer(60.0) as t:
        ok = True
        details = []
        for kernel in ("direct", "logan"):
            previous = float("inf")
            for f in (8, 12, 16, 20):
                row = max_error(kernel, parse_q_format(f"Q3.{f}"),
                                samples=100_000, seed=1234)
                bound = 16 * 2.0**-f
                ok &= row.max_abs_error <= bound
                ok &= row.saturation_events == 0
                ok &= row.max_abs_error <= previous
                previous = row.max_abs_error
                details.append(f"{kernel}/Q3.{f}:{row.max_abs_error:.2e}")
        ok = bool(ok)
    _report(8, "fixed-point error bounds over Q3.{8,12,16,20}", ok, t,
            "; ".join(details))
