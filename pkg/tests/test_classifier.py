import json

import pytest

from flagnest.classifier import (
    EXISTS,
    NOT_EXISTS,
    NestingDecision,
    NestingQuery,
    TraceStep,
    classify,
    enumerate_nestings,
    obstruct_first_node,
    obstruct_last_node,
    reducibility_corollary,
    subbundle_corollary,
)
from flagnest.dynkin import (
    DynkinDiagram,
    apply_automorphism,
    diagram,
    diagram_automorphisms,
    marked,
)
from flagnest.errors import InternalInconsistencyError, UnsupportedInputError


def query(fam, n, kept, forgotten):
    return NestingQuery(diagram(fam, n), frozenset(kept), frozenset(forgotten))


def rules(decision):
    return [step.rule for step in decision.trace]


# ---------------------------------------------------------------------------
# query validation


def test_query_rejects_bad_mark_sets():
    with pytest.raises(UnsupportedInputError):
        query("A", 4, [1], [1])
    with pytest.raises(UnsupportedInputError):
        query("A", 4, [], [2])
    with pytest.raises(UnsupportedInputError):
        query("A", 4, [1], [5])
    with pytest.raises(UnsupportedInputError):
        query("A", 4, [0], [2])


def test_query_rejects_aliased_diagram_labels():
    # C2 collapses to B2 with the node meanings swapped, so marks posed on a
    # raw C2 object would be ambiguous
    with pytest.raises(UnsupportedInputError):
        NestingQuery(DynkinDiagram("C", 2), frozenset([1]), frozenset([2]))


# ---------------------------------------------------------------------------
# the positive list


def test_point_hyperplane_chain_exists():
    for n in (3, 5, 7, 9):
        dec = classify(query("A", n, [1], [n]))
        assert dec.result == EXISTS
        assert dec.trace[-1].rule == "explicit-section"
        assert "nesting_A" in dec.trace[-1].data["construction"]


def test_octonion_case_exists_with_doubled_cubic():
    dec = classify(query("B", 3, [1], [3]))
    assert dec.exists
    pairs = dec.trace[-1].data["surviving_pairs"]
    assert pairs == [["1 + 2t + 2t^2 + t^3", "1 + 2t + 2t^2 + t^3"]]
    assert "nesting_B3" in dec.trace[-1].data["construction"]


def test_spinor_flag_exists_in_both_directions():
    for n in (4, 5, 6, 8):
        assert classify(query("D", n, [n - 1], [n])).exists
        assert classify(query("D", n, [n], [n - 1])).exists
    # the triality images on rank four
    assert classify(query("D", 4, [1], [4])).exists
    assert classify(query("D", 4, [4], [1])).exists
    assert "nesting_D" in classify(query("D", 5, [4], [5])).trace[-1].data["construction"]


# ---------------------------------------------------------------------------
# negative singletons and the traces that close them


def test_even_projective_space_fails_by_parity():
    dec = classify(query("A", 4, [1], [4]))
    assert dec.result == NOT_EXISTS
    assert "coxeter-parity" in rules(dec)
    assert dec.trace[-1].rule == "splitting-degree-scan"
    assert dec.trace[-1].data["admissible_degrees"] == []


def test_rank_three_parity_is_cited():
    # both minimal-mark varieties are projective spaces, so the integrality
    # constraint on rank-three Chern classes removes the last candidate
    for fam, n in (("A", 5), ("C", 3)):
        dec = classify(query(fam, n, [1], [3]))
        assert dec.result == NOT_EXISTS
        cited = [s for s in dec.trace if s.rule == "rank-three-chern-parity"]
        assert cited and cited[0].data["rejected_quotients"] == ["1 + 2t + 2t^2 + t^3"]
        assert dec.trace[-1].rule == "chern-factorization"
        assert dec.trace[-1].data["survivors"] == []


def test_quadric_point_cases_fail_through_factorization():
    for fam, n, r in (("B", 4, 2), ("B", 5, 5), ("C", 4, 4), ("D", 5, 2), ("D", 6, 3)):
        dec = classify(query(fam, n, [1], [r]))
        assert dec.result == NOT_EXISTS, (fam, n, r)


def test_near_spinor_marks_on_even_quadric_delegate():
    dec = classify(query("D", 8, [1], [7]))
    assert dec.result == NOT_EXISTS
    assert "spinor-restriction" in rules(dec)


def test_isotropic_side_obstruction_shapes():
    assert classify(query("D", 5, [5], [1])).trace[-1].rule == "dimension-drop"
    assert classify(query("C", 6, [6], [2])).trace[-1].rule == "generator-degree-gap"
    assert classify(query("B", 4, [4], [3])).trace[-1].rule == "missing-relation-degree"
    dec = classify(query("D", 5, [5], [2]))
    assert dec.result == NOT_EXISTS
    assert "degree-two-collapse" in rules(dec)


def test_interior_mark_needs_posed_tag():
    # the kept subdiagram is a D4 entered through the unswapped extremal node,
    # so the tag must be moved into the standard pose before the fiber test
    dec = classify(query("D", 5, [2], [5]))
    assert dec.result == NOT_EXISTS
    last = dec.trace[-1]
    assert last.rule == "rational-curve-tag"
    assert last.data["constant_on_fibers"] is False
    assert last.data["tag"] != last.data["posed_tag"]


def test_g2_is_a_recorded_fact():
    dec = classify(query("G2", 2, [1], [2]))
    assert dec.result == NOT_EXISTS
    assert rules(dec) == ["exceptional-rank-two"]


# ---------------------------------------------------------------------------
# several marks on either side


def test_triality_pair_blocked():
    dec = classify(query("D", 4, [3], [1, 4]))
    assert dec.result == NOT_EXISTS
    assert dec.trace[-1].rule == "triality-exclusion"
    dec = classify(query("D", 4, [3, 4], [1]))
    assert dec.trace[-1].rule == "triality-exclusion"


def test_many_marked_queries_fail():
    for fam, n, kept, forgotten in (
        ("D", 6, [3, 6], [5]),
        ("D", 6, [1, 6], [5]),
        ("B", 4, [1, 4], [2]),
        ("A", 6, [2, 4], [3]),
        ("D", 5, [1, 2], [5]),
    ):
        dec = classify(query(fam, n, kept, forgotten))
        assert dec.result == NOT_EXISTS, (fam, n, kept, forgotten)


def test_many_unmarked_fails_when_one_leg_fails():
    dec = classify(query("A", 5, [1], [3, 5]))
    assert dec.result == NOT_EXISTS
    assert "unmark-projection" in rules(dec)


# ---------------------------------------------------------------------------
# trace structure invariants


def closing_rules(dec):
    if dec.result == EXISTS:
        return {"explicit-section"}
    return {
        "chern-factorization",
        "coxeter-parity",
        "splitting-degree-scan",
        "generator-degree-gap",
        "dimension-drop",
        "missing-relation-degree",
        "rational-curve-tag",
        "exceptional-rank-two",
        "triality-exclusion",
    }


def test_every_trace_closes_properly():
    for fam, lo in (("A", 2), ("B", 2), ("C", 3), ("D", 4)):
        for n in range(lo, 7):
            d = diagram(fam, n)
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    if i == j:
                        continue
                    dec = classify(NestingQuery(d, frozenset([i]), frozenset([j])))
                    assert dec.trace[-1].rule in closing_rules(dec)
                    for step in dec.trace:
                        assert step.anchor.strip()


def test_decisions_are_equivariant_and_deterministic():
    d = diagram("D", 4)
    base = classify(NestingQuery(d, frozenset([1]), frozenset([3])))
    for sigma in diagram_automorphisms(d):
        moved = NestingQuery(
            d, apply_automorphism(sigma, [1]), apply_automorphism(sigma, [3])
        )
        assert classify(moved).result == base.result
    q = query("D", 6, [3, 6], [5])
    a = json.dumps(classify(q).to_json(), sort_keys=True)
    b = json.dumps(classify(q).to_json(), sort_keys=True)
    assert a == b


def test_decision_json_shape():
    dec = classify(query("B", 3, [1], [3]))
    blob = dec.to_json()
    assert set(blob) == {"query", "result", "trace"}
    assert blob["query"] == {"diagram": "B3", "I": [1], "J": [3]}
    for step in blob["trace"]:
        assert set(step) == {"rule", "anchor", "data"}
    json.dumps(blob)  # everything must be serializable


def test_decision_constructor_enforces_closers():
    q = query("A", 3, [1], [3])
    step = TraceStep("fiber-restriction", "reduction only", {})
    with pytest.raises(InternalInconsistencyError):
        NestingDecision(q, EXISTS, (step,))
    with pytest.raises(InternalInconsistencyError):
        NestingDecision(q, NOT_EXISTS, (step,))


# ---------------------------------------------------------------------------
# the obstruction pipelines called directly


def test_first_node_pipeline():
    assert obstruct_first_node("B", 4, 2).obstructed
    assert obstruct_first_node("A", 6, 6).obstructed
    assert obstruct_first_node("D", 8, 7).obstructed
    out = obstruct_first_node("B", 3, 3)
    assert not out.obstructed
    assert [[str(a), str(b)] for a, b in out.survivors] == [
        ["1 + 2t + 2t^2 + t^3", "1 + 2t + 2t^2 + t^3"]
    ]
    out = obstruct_first_node("A", 5, 5)
    assert not out.obstructed
    assert [str(a) for a, _ in out.survivors] == ["1 + t + t^2 + t^3 + t^4 + t^5"]
    with pytest.raises(UnsupportedInputError):
        obstruct_first_node("A", 5, 1)
    with pytest.raises(UnsupportedInputError):
        obstruct_first_node("G2", 2, 2)


def test_last_node_pipeline():
    assert not obstruct_last_node("D", 6, 5).obstructed
    assert not obstruct_last_node("D", 4, 1).obstructed
    assert obstruct_last_node("B", 2, 1).obstructed
    out = obstruct_last_node("B", 4, 3)
    assert out.obstructed
    assert out.steps[-1].data["pairing_coefficient"] == -2
    mirrored = obstruct_last_node("D", 7, 2)
    assert mirrored.obstructed
    assert mirrored.steps[0].rule == "mirror-presentation"
    with pytest.raises(UnsupportedInputError):
        obstruct_last_node("B", 4, 4)
    with pytest.raises(UnsupportedInputError):
        obstruct_last_node("A", 5, 2)


# ---------------------------------------------------------------------------
# corollaries


def test_reducibility_corollary():
    assert reducibility_corollary(marked(diagram("A", 5), [1]))
    assert not reducibility_corollary(marked(diagram("C", 4), [1]))
    assert reducibility_corollary(marked(diagram("D", 5), [5]))
    assert not reducibility_corollary(marked(diagram("A", 5), [3]))
    assert not reducibility_corollary(marked(diagram("A", 5), [3]), component=1)
    with pytest.raises(UnsupportedInputError):
        reducibility_corollary(marked(diagram("A", 5), [3]), component=2)
    with pytest.raises(UnsupportedInputError):
        reducibility_corollary(marked(diagram("A", 2), [1, 2]))


def test_subbundle_corollary():
    assert subbundle_corollary(marked(diagram("A", 4), [4])) == {
        "has_subbundle": True,
        "rank_of_subbundle": 3,
    }
    assert subbundle_corollary(marked(diagram("B", 5), [2])) == {"has_subbundle": False}
    assert subbundle_corollary(marked(diagram("D", 6), [5])) == {
        "has_subbundle": True,
        "rank_of_subbundle": 1,
    }
    assert subbundle_corollary(marked(diagram("A", 1), [1])) == {"has_subbundle": False}
    with pytest.raises(UnsupportedInputError):
        subbundle_corollary(marked(diagram("A", 4), [1, 4]))


# ---------------------------------------------------------------------------
# enumeration


RANK8_POSITIVES = [
    {"diagram": "A3", "I": [1], "J": [3]},
    {"diagram": "A5", "I": [1], "J": [5]},
    {"diagram": "A7", "I": [1], "J": [7]},
    {"diagram": "B3", "I": [1], "J": [3]},
    {"diagram": "D4", "I": [1], "J": [3]},
    {"diagram": "D5", "I": [4], "J": [5]},
    {"diagram": "D6", "I": [5], "J": [6]},
    {"diagram": "D7", "I": [6], "J": [7]},
    {"diagram": "D8", "I": [7], "J": [8]},
]


def test_enumerate_rank_eight_singletons():
    rep = enumerate_nestings(8, "singletons")
    assert rep["exists"] == RANK8_POSITIVES
    assert rep["counts"]["exists"] == 9
    assert rep["counts"]["exists"] + rep["counts"]["not_exists"] == rep["classified"]
    assert rep == enumerate_nestings(8, "singletons")


def test_enumerate_all_subsets_adds_no_positives():
    rep = enumerate_nestings(5, "all-subsets")
    single = enumerate_nestings(5, "singletons")
    assert rep["exists"] == single["exists"]
    assert rep["classified"] > single["classified"]


def test_enumerate_validates_arguments():
    with pytest.raises(UnsupportedInputError):
        enumerate_nestings(2)
    with pytest.raises(UnsupportedInputError):
        enumerate_nestings(6, "everything")
