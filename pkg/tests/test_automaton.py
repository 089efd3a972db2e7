import re
from fractions import Fraction

import numpy as np
import pytest

from sternpoly import Residue, eval_mod
from sternpoly import automaton, tables

HALF = Fraction(-1, 2)
THIRD = Fraction(-1, 3)

ALL_MACHINES = [(p, a) for a in (HALF, THIRD) for p in (5, 7, 11, 13)]


def test_build_validation():
    with pytest.raises(ValueError):
        automaton.build_dfao(3, HALF)
    with pytest.raises(ValueError):
        automaton.build_dfao(9, HALF)
    with pytest.raises(ValueError):
        automaton.build_dfao(7, Fraction(-1, 4))


def test_target_images():
    assert automaton.build_dfao(7, HALF).t == 3  # 2*3 = -1 mod 7
    assert automaton.build_dfao(5, HALF).t == 2
    assert automaton.build_dfao(7, THIRD).t == 2


def test_transition_chain():
    dfao = automaton.build_dfao(7, HALF)
    s = int(dfao.edge1[dfao.initial])
    assert dfao.label(s) == (1, 1)
    s = int(dfao.edge0[s])
    assert dfao.label(s) == ((dfao.t + 1) % 7, 1)


def test_zero_edge_chain_reaches_swapped_initial():
    # from (1,1), p-2 zero-edges reach (0,1)
    for p, a in ALL_MACHINES:
        dfao = automaton.build_dfao(p, a)
        s = int(dfao.edge1[dfao.initial])
        for _ in range(p - 2):
            s = int(dfao.edge0[s])
        assert dfao.label(s) == (0, 1)


def test_zero_edges_preserve_output():
    for p, a in ALL_MACHINES:
        dfao = automaton.build_dfao(p, a)
        states = np.arange(dfao.n_states)
        assert (dfao.edge0[states] % p == states % p).all()


def test_edges_are_permutations():
    for p, a in ALL_MACHINES:
        dfao = automaton.build_dfao(p, a)
        for edges in (dfao.edge0, dfao.edge1):
            assert (np.sort(edges) == np.arange(dfao.n_states)).all()


def test_run_examples():
    dfao = automaton.build_dfao(7, HALF)
    assert automaton.dfao_run(dfao, 0) == Residue(0, 7)
    assert automaton.dfao_run(dfao, 6) == Residue(5, 7)
    for p, a in ALL_MACHINES:
        machine = automaton.build_dfao(p, a)
        assert automaton.dfao_run(machine, 1) == Residue(1, p)


def test_run_matches_eval_mod():
    for p, a in ALL_MACHINES:
        dfao = automaton.build_dfao(p, a)
        t = Residue(dfao.t, p)
        for n in range(512):
            assert automaton.dfao_run(dfao, n) == eval_mod(n, t)


def test_output_range_matches_per_index_runs():
    dfao = automaton.build_dfao(11, THIRD)
    outputs = automaton.output_range(dfao, 600)
    for n in range(600):
        assert outputs[n] == automaton.dfao_run(dfao, n).value


def test_analysis_structure():
    for p, a in ALL_MACHINES:
        dfao = automaton.build_dfao(p, a)
        analysis = automaton.analyze(dfao)
        assert analysis.strongly_connected
        assert analysis.regular_2in_2out
        assert analysis.zero_bound_ok
        assert analysis.ord_bound_ok
        reach = set(analysis.reachable)
        # swapped-coordinate symmetry of reachability
        for s in reach:
            alpha, beta = dfao.label(s)
            assert beta * p + alpha in reach
        # (0,1) reachable, (0,0) not
        assert 1 in reach and 0 not in reach


def test_known_component_sizes():
    a7 = automaton.analyze(automaton.build_dfao(7, HALF))
    assert (a7.reachable_count, a7.zero_output_count) == (48, 6)
    a5 = automaton.analyze(automaton.build_dfao(5, HALF))
    assert (a5.reachable_count, a5.zero_output_count) == (20, 4)


def test_cesaro_flat_limit():
    dfao = automaton.build_dfao(7, HALF)
    report = automaton.cesaro_check(dfao, 2000, 1e-3)
    assert report.passed
    assert report.stats["max_dev"] <= 1e-3
    assert automaton.cesaro_check(dfao, 50, 1e-12).outcome == "fail"


def test_geometric_sum_matches_iteration():
    rng = np.random.default_rng(5)
    A = rng.random((6, 6))
    A /= A.sum(axis=1, keepdims=True)
    S, P = automaton._geometric_sum(A, 17)
    expected = np.eye(6)
    power = np.eye(6)
    for _ in range(17):
        power = power @ A
        expected += power
    assert np.allclose(S, expected)
    assert np.allclose(P, power @ A)


def test_density_counts_match_brute_force():
    for p, a in ((5, HALF), (7, HALF), (11, THIRD)):
        dfao = automaton.build_dfao(p, a)
        densities = automaton.density_counts_dfao(dfao, 14)
        values = tables.mod_eval_table(p, dfao.t, (1 << 14) - 1)
        for i in range(15):
            brute = int(np.count_nonzero(values[: 1 << i] == 0))
            assert densities[i] == Fraction(brute, 1 << i)


def test_density_closed_form_mod5():
    dfao = automaton.build_dfao(5, HALF)
    densities = automaton.density_counts_dfao(dfao, 12)
    for i, d in enumerate(densities):
        n = 1 << i
        assert d == Fraction((n - 1) // 5 + 1, n)


def test_density_average_conventions():
    densities = [Fraction(1), Fraction(1, 2)]
    averages = automaton.density_cesaro_averages(densities)
    assert averages["mean"] == Fraction(3, 4)
    assert averages["mean_with_zero_term"] == Fraction(1, 2)


def test_periodicity_search_passes_on_admissible_machines():
    for p, a in ((7, HALF), (11, THIRD)):
        dfao = automaton.build_dfao(p, a)
        report = automaton.periodicity_search(dfao, 64, 64, 512)
        assert report.passed


def test_periodicity_search_detects_constant_machine():
    constant = automaton.Dfao(
        p=5,
        t=0,
        target=HALF,
        edge0=np.zeros(1, dtype=np.int64),
        edge1=np.zeros(1, dtype=np.int64),
        initial=0,
    )
    report = automaton.periodicity_search(constant, 16, 16, 128)
    assert report.outcome == "fail"
    assert report.witness["period"] == 1


def test_periodicity_search_detects_periodic_shadow():
    # -1/3 maps to 2 mod 7, so outputs are n mod 7: period 7 must be found
    dfao = automaton.build_dfao(7, THIRD)
    outputs = automaton.output_range(dfao, 1 << 12)
    assert (outputs == np.arange(1 << 12) % 7).all()
    report = automaton.periodicity_search(dfao, 256, 256, 1 << 12)
    assert report.outcome == "fail"
    assert report.witness["period"] == 7


def test_periodicity_prefix_precondition():
    dfao = automaton.build_dfao(7, HALF)
    with pytest.raises(ValueError):
        automaton.periodicity_search(dfao, 100, 100, 250)


_NODE = re.compile(r'^  s\d+ \[label="\(\d+,\d+\)", shape=(doublecircle|circle)(, style=bold)?\];$')
_EDGE = re.compile(r"^  s\d+ -> s\d+ \[label=\"[01]\"\];$")


def test_export_dot_structure():
    dfao = automaton.build_dfao(5, HALF)
    analysis = automaton.analyze(dfao)
    dot = automaton.export_dot(dfao, analysis=analysis)
    lines = dot.strip().splitlines()
    assert lines[0] == "digraph dfao {"
    assert lines[-1] == "}"
    nodes = [l for l in lines if _NODE.match(l)]
    edges = [l for l in lines if _EDGE.match(l)]
    assert len(nodes) == analysis.reachable_count
    assert len(edges) == 2 * analysis.reachable_count
    assert dot.count("doublecircle") == analysis.zero_output_count
    assert automaton.export_dot(dfao) == dot  # deterministic


def test_export_dot_one_state_machine():
    constant = automaton.Dfao(
        p=5,
        t=0,
        target=HALF,
        edge0=np.zeros(1, dtype=np.int64),
        edge1=np.zeros(1, dtype=np.int64),
        initial=0,
    )
    dot = automaton.export_dot(constant)
    assert dot.count("->") == 2
    assert dot.count("[label=\"(0,0)\"") == 1


def test_aperiodicity_witness():
    report = automaton.verify_aperiodicity_witness(4, 12)
    assert report.passed
    assert report.stats["family_size"] == 9
