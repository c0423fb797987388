from __future__ import annotations

import math
import random

import pytest
from conftest import MUTEX_PROPERTY, GOLDEN_SCHEDULE
from hypothesis import given, settings
from hypothesis import strategies as st
from strategies import random_program

from ltlsmc.errors import LtlsmcError, ParseError
from ltlsmc.oracle import Verdict
from ltlsmc.smc import (
    END,
    ExecutionError,
    InfeasibleScheduleError,
    ProgramError,
    ProgramVerdict,
    Termination,
    aggregate,
    check_schedule,
    enabled_threads,
    enumerate_schedules,
    execute_location,
    explore,
    load_program,
    parse_assignment,
    parse_expr,
    parse_schedule,
    replay,
    snapshot_aps,
)
from ltlsmc.smc.expr import infer_type

# golden rows for states s0..s10
T1_PC = [1, 1, 1, 2, 3, 4, 5, 6, 6, 6, 6]
T2_PC = [1, 2, 3, 3, 3, 3, 3, 3, 4, 5, 6]
X1 = [1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2]
B1 = [False] * 4 + [True] * 7
B2 = [False] * 8 + [True] * 3
CRIT1 = [False] * 7 + [True] * 4
CRIT2 = [False] * 10 + [True]


def unguarded(*shape, props=None):
    return {
        "vars": {"n": 0, "p": False},
        "aps": props or {"p": "p"},
        "threads": [[{"body": ["n := n + 1"]} for _ in range(k)] for k in shape],
    }


# -- expressions ------------------------------------------------------------


@pytest.mark.parametrize(
    "text, env, value",
    [
        ("1 + 2 - 4", {}, -1),
        ("-x + 3", {"x": 5}, -2),
        ("x == 2 && !b", {"x": 2, "b": False}, True),
        ("b || x < 0", {"x": 1, "b": False}, False),
        ("b == false", {"b": False}, True),
        ("(x + 1) >= y", {"x": 1, "y": 2}, True),
        ("x != y", {"x": 1, "y": 1}, False),
    ],
)
def test_expression_evaluation(text, env, value):
    assert parse_expr(text).eval(env) == value


def test_expression_types():
    types = {"x": "int", "b": "bool"}
    assert infer_type(parse_expr("x + 1 > 2"), types) == "bool"
    for bad in ("x + b", "!x", "x == b", "b < 1", "z"):
        with pytest.raises(LtlsmcError):
            infer_type(parse_expr(bad), types)


def test_dynamic_type_errors():
    with pytest.raises(ExecutionError, match="needs int"):
        parse_expr("b + 1").eval({"b": True})
    with pytest.raises(ExecutionError, match="undeclared"):
        parse_expr("z").eval({})


def test_assignment_and_syntax_errors():
    assert parse_assignment("x1 := x1 + 2")[0] == "x1"
    with pytest.raises(ParseError):
        parse_assignment("x1 = 2")
    with pytest.raises(ParseError):
        parse_expr("x * 2")
    with pytest.raises(ParseError):
        parse_expr("x +")


# -- loading ----------------------------------------------------------------


def test_mutex_program_loads(mutex_program):
    assert mutex_program.thread_names == ("T1", "T2")
    assert [len(t.locations) for t in mutex_program.threads] == [6, 6]
    assert set(mutex_program.variables) == {"x1", "b1", "b2", "crit1", "crit2"}


@pytest.mark.parametrize(
    "doc, message",
    [
        ({"vars": {}, "threads": []}, "at least one thread"),
        ({"vars": {"x": 0}, "aps": {"a": "z == 1"}, "threads": [[{}]]}, "undeclared variable 'z'"),
        ({"vars": {"x": 0}, "threads": [[]]}, "no locations"),
        ({"vars": {"x": 0}, "threads": [[{"body": ["x := true"]}]]}, "expected an int"),
        ({"vars": {"x": 0}, "threads": [[{"guard": "x"}]]}, "expected a bool"),
        ({"vars": {"x": 0}, "threads": [[{"guard": "x =="}]]}, "malformed guard"),
        ({"vars": {"x": 0}, "threads": [[{"next": 3}]]}, "does not exist"),
        ({"vars": {"x": 0}, "threads": [[{"body": ["y := 1"]}]]}, "undeclared variable 'y'"),
        ({"vars": {"x": 1.5}, "threads": [[{}]]}, "integer or boolean"),
        ({"vars": {}, "aps": [{"name": "a", "expr": "true"}, {"name": "a", "expr": "false"}], "threads": [[{}]]}, "duplicate AP"),
        ({"threads": [[{}]], "extra": 1}, "unknown program keys"),
    ],
)
def test_load_errors(doc, message):
    with pytest.raises(ProgramError, match=message):
        load_program(doc)


def test_successor_forms():
    prog = load_program(
        {"vars": {"x": 0}, "threads": [[{"next": "goto 2"}, {"next": "end"}, {}], [{"next": 1}]]}
    )
    assert [loc.next for loc in prog.threads[0].locations] == [2, END, END]
    assert prog.threads[1].locations[0].next == 1


# -- execution --------------------------------------------------------------


def test_enabled_threads(mutex_program):
    s = mutex_program.initial_state()
    assert enabled_threads(mutex_program, s) == [0, 1]
    # T1 waits at location 3 while b2 is true
    s = s.__class__({**s.valuation, "b2": True}, (3, 1), ())
    assert enabled_threads(mutex_program, s) == [1]
    done = s.__class__(s.valuation, (END, END), ())
    assert enabled_threads(mutex_program, done) == []


def test_execute_first_steps(mutex_program):
    s0 = mutex_program.initial_state()
    s1 = execute_location(mutex_program, s0, 1)
    assert s1.valuation == s0.valuation
    assert s1.pcs == (1, 2) and s1.index == 1
    s = execute_location(mutex_program, s0, 0)
    assert s.valuation["x1"] == 2 and s.pcs == (2, 1)


def test_execute_disabled_thread_rejected(mutex_program):
    s = mutex_program.initial_state()
    blocked = s.__class__({**s.valuation, "b2": True}, (3, 1), ())
    with pytest.raises(ExecutionError, match="not enabled"):
        execute_location(mutex_program, blocked, 0)


def test_snapshot_examples(mutex_program):
    r = replay(mutex_program, GOLDEN_SCHEDULE, [MUTEX_PROPERTY])
    assert r.states[0].aps == {"crit1": False, "crit2": False}
    assert r.states[7].aps == {"crit1": True, "crit2": False}
    assert r.states[10].aps == {"crit1": True, "crit2": True}
    s = mutex_program.initial_state()
    assert snapshot_aps(mutex_program, s).values == {"crit1": False, "crit2": False}


# -- replay -----------------------------------------------------------------


def test_golden_rows(mutex_program):
    r = replay(mutex_program, GOLDEN_SCHEDULE, [MUTEX_PROPERTY])
    rows = r.states
    assert [row.thread for row in rows] == [None] + GOLDEN_SCHEDULE.split(",")
    assert [row.pcs["T1"] for row in rows] == T1_PC
    assert [row.pcs["T2"] for row in rows] == T2_PC
    assert [row.variables["x1"] for row in rows] == X1
    assert [row.variables["b1"] for row in rows] == B1
    assert [row.variables["b2"] for row in rows] == B2
    assert [row.aps["crit1"] for row in rows] == CRIT1
    assert [row.aps["crit2"] for row in rows] == CRIT2
    assert [str(row.messages[0]) for row in rows[1:]] == ["false, false"] * 9 + ["false, true"]
    assert r.iteration.verdicts == (Verdict.FALSE,)
    assert r.iteration.resolved_at == (10,)


def test_empty_schedule_is_presumably_true(mutex_program):
    r = replay(mutex_program, "", [MUTEX_PROPERTY, "G !crit1"])
    assert r.iteration.verdicts == (Verdict.PRESUMABLY_TRUE, Verdict.PRESUMABLY_TRUE)


def test_infeasible_schedule(mutex_program):
    # T2's third location waits for x1 == 2, which only T1 establishes
    with pytest.raises(InfeasibleScheduleError) as info:
        replay(mutex_program, "T2,T2,T2,T2,T2", [MUTEX_PROPERTY])
    assert info.value.step == 3
    with pytest.raises(LtlsmcError, match="unknown thread"):
        parse_schedule("T3", mutex_program)


def test_comparison_atoms_read_program_variables(mutex_program):
    r = replay(mutex_program, "T1", ["G (x1 == 1)"])
    assert r.iteration.verdicts == (Verdict.FALSE,)
    with pytest.raises(LtlsmcError, match="not a declared proposition"):
        replay(mutex_program, "T1", ["G !p"])


# -- exploration ------------------------------------------------------------


@pytest.mark.parametrize("shape", [(1,), (2, 2), (3, 2), (2, 2, 2), (1, 1, 1, 1), (4, 3, 1), (2, 3, 3)])
def test_interleaving_count_is_multinomial(shape):
    expected = math.factorial(sum(shape))
    for k in shape:
        expected //= math.factorial(k)
    report = explore(load_program(unguarded(*shape)), ["G !p"], depth_bound=sum(shape))
    schedules = [r.schedule for r in report.iterations]
    assert len(schedules) == expected
    assert len(set(schedules)) == expected
    assert all(r.termination is Termination.ALL_DONE for r in report.iterations)


def test_schedules_in_ascending_thread_order():
    scheds = [s for s, _ in enumerate_schedules(load_program(unguarded(1, 1)), 5)]
    assert scheds == [(0, 1), (1, 0)]


def test_depth_bound_truncates():
    report = explore(load_program(unguarded(3, 3)), ["G !p"], depth_bound=2)
    assert len(report.iterations) == 4
    assert {r.termination for r in report.iterations} == {Termination.DEPTH_BOUND}
    with pytest.raises(LtlsmcError):
        explore(load_program(unguarded(1)), ["G !p"], depth_bound=0)


def test_deadlock_truncates_word():
    prog = load_program(
        {
            "vars": {"a": False, "b": False},
            "aps": {"a": "a", "b": "b"},
            "threads": [[{"guard": "b"}, {"body": ["a := true"]}], [{"guard": "a"}]],
        }
    )
    report = explore(prog, ["G !a", "F a", "X !a"], depth_bound=10)
    assert len(report.iterations) == 1
    it = report.iterations[0]
    assert it.schedule == () and it.termination is Termination.DEADLOCK
    # empty word: nothing observed, no phantom states
    assert it.verdicts == (Verdict.PRESUMABLY_TRUE, Verdict.PRESUMABLY_FALSE, Verdict.PRESUMABLY_TRUE)


def test_mutex_exploration_finds_violation(mutex_program):
    report = explore(mutex_program, [MUTEX_PROPERTY], depth_bound=10)
    assert report.verdict is ProgramVerdict.FAIL
    fv = report.outcomes[0].first_violation
    again = replay(mutex_program, fv["schedule"], [MUTEX_PROPERTY])
    assert again.iteration.verdicts == (Verdict.FALSE,)
    assert ",".join(GOLDEN_SCHEDULE.split(",")) in {",".join(r.schedule) for r in report.iterations}


def test_never_set_proposition_presumably_passes():
    prog = load_program({"vars": {"p": False}, "aps": {"p": "p"}, "threads": [[{}, {}]]})
    report = explore(prog, ["G !p"], depth_bound=5)
    assert report.verdict is ProgramVerdict.PRESUMABLY_PASS
    assert report.outcomes[0].counts["presumably_true"] == 1


def test_aggregate_rules():
    assert aggregate([Verdict.FALSE, Verdict.PRESUMABLY_TRUE]) is ProgramVerdict.FAIL
    assert aggregate([Verdict.PRESUMABLY_FALSE]) is ProgramVerdict.FAIL
    assert aggregate([Verdict.TRUE] * 3) is ProgramVerdict.PASS
    assert aggregate([Verdict.PRESUMABLY_TRUE] * 4) is ProgramVerdict.PRESUMABLY_PASS
    assert aggregate([Verdict.TRUE, Verdict.PRESUMABLY_TRUE]) is ProgramVerdict.PRESUMABLY_PASS
    with pytest.raises(LtlsmcError):
        aggregate([])


def test_report_counts_verdicts(mutex_program):
    report = explore(mutex_program, [MUTEX_PROPERTY], depth_bound=10)
    counts = report.outcomes[0].counts
    assert sum(counts.values()) == len(report.iterations)
    assert counts["false"] >= 1 and counts["presumably_false"] == 0


# -- determinism and consistency -------------------------------------------


RANDOM_PROPS = ["G !(pa && pb)", "F pc", "pa W pb", "G (pc || X pa)"]


@pytest.mark.parametrize("seed", range(6))
def test_parallel_exploration_is_identical(seed):
    prog = load_program(random_program(random.Random(seed)))
    one = explore(prog, RANDOM_PROPS, depth_bound=8, jobs=1)
    many = explore(prog, RANDOM_PROPS, depth_bound=8, jobs=3)
    assert one.to_json() == many.to_json()
    assert one.to_json() == explore(prog, RANDOM_PROPS, depth_bound=8).to_json()


@pytest.mark.parametrize("seed", range(6))
def test_replay_reproduces_explored_verdicts(seed):
    prog = load_program(random_program(random.Random(100 + seed)))
    report = explore(prog, RANDOM_PROPS, depth_bound=7)
    for it in report.iterations[:: max(1, len(report.iterations) // 25)]:
        again = replay(prog, list(it.schedule), RANDOM_PROPS)
        assert again.iteration == it


@pytest.mark.parametrize("seed", range(4))
def test_properties_are_monitored_independently(seed):
    prog = load_program(random_program(random.Random(200 + seed)))
    together = explore(prog, RANDOM_PROPS, depth_bound=6)
    for k, prop in enumerate(RANDOM_PROPS):
        alone = explore(prog, [prop], depth_bound=6)
        assert [r.verdicts[0] for r in alone.iterations] == [r.verdicts[k] for r in together.iterations]


def test_check_schedule_matches_replay(mutex_program):
    report, replayed = check_schedule(mutex_program, [MUTEX_PROPERTY], GOLDEN_SCHEDULE)
    assert report.iterations == [replayed.iteration]
    assert report.verdict is ProgramVerdict.FAIL


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(1, 3), min_size=1, max_size=3))
def test_multinomial_property(shape):
    expected = math.factorial(sum(shape))
    for k in shape:
        expected //= math.factorial(k)
    assert sum(1 for _ in enumerate_schedules(load_program(unguarded(*shape)), sum(shape))) == expected
