import pytest

from seqprop.axioms import AXIOM_SETS, AXIOMS
from seqprop.errors import OpenTermError, SizeGuardError, UnresolvedIndependence
from seqprop.independence import (OPEN, all_reports, build_interpretation, check_axiom_instances,
                                  check_on_valuation, check_variety_instances, cr1_witness,
                                  cr2_witness, independence_report, interpret, interpretation_witness,
                                  phi1, phi3, phi4, phi_contr, rp1_witness, rp2_witness,
                                  stable_antecedents, statcounter_witness)
from seqprop.syntax import parse_term
from seqprop.terms import Alphabet, Atom, F, T
from seqprop.valuations import SemVariety, check_constraints, find_separation, run

P = parse_term
A1 = Alphabet(["a1"])


def test_interpretation_examples():
    m = phi1(A1)
    assert interpret(m, P("F <| T |> F")) is True
    assert interpret(m, F) is False
    m3 = phi3(A1)
    assert interpret(m3, P("T <| a1 |> F")) == 0 == interpret(m3, T)
    assert interpret(m3, Atom("a1")) == 1
    mc = phi_contr(A1)
    assert interpret(mc, P("(T <| a1 |> F) <| a1 |> F")) == 4
    assert interpret(mc, P("T <| a1 |> F")) == 2


def test_phi2_and_phi4_witnesses():
    m2 = build_interpretation("Phi2", A1)
    assert interpret(m2, P("T <| F |> T")) is False and interpret(m2, T) is True
    m4 = phi4(A1)
    assert interpret(m4, P("T <| (F <| a1 |> T) |> T")) == 1
    assert interpret(m4, P("(T <| F |> T) <| a1 |> (T <| T |> T)")) == 2


def test_interpret_rejects_open_terms():
    with pytest.raises(OpenTermError):
        interpret(phi1(A1), P("X"))


def test_carriers_stay_in_range():
    n = 3
    m = phi3(Alphabet(["a", "b", "c"]))
    assert (m.true, m.false, sorted(m.atoms.values())) == (0, n + 1, [1, 2, 3])


def test_instance_check_examples():
    ab = Alphabet(["a", "b"])
    assert check_axiom_instances(phi1(ab), "CP2", 3).holds
    result = check_axiom_instances(phi1(ab), "CP1", 3)
    assert not result.holds
    assert result.counterexample.mapping == {"X": F, "Y": F}
    assert result.values == (True, False)


def test_phi4_breaks_distribution_with_one_and_two():
    result = check_axiom_instances(phi4(Alphabet(["a"])), "CP4", 2)
    assert not result.holds
    assert result.values == (1, 2)
    inner = result.counterexample.lhs.ante
    assert inner.ante == Atom("a") and inner.left == F


def test_instance_check_covers_low_antecedent_values():
    # Schema atoms are always at least 2 under Phi4, so the 0/1 branches
    # only arise through the general metavariables; check them directly.
    for axiom in ("CPrp1", "CPrp2"):
        assert check_axiom_instances(phi4(Alphabet(["a", "b"])), axiom, 3).holds
    assert not check_axiom_instances(phi4(Alphabet(["a"])), "CPcr1", 3).holds


@pytest.mark.parametrize("model", ["Phi1", "Phi2", "Phi3", "Phi4"])
@pytest.mark.parametrize("axiom", ["CPrp1", "CPrp2"])
def test_first_four_models_are_repetition_proof(model, axiom):
    assert check_axiom_instances(build_interpretation(model, ["a", "b"]), axiom, 3).holds


@pytest.mark.parametrize("model", ["Phi1", "Phi2", "Phi3"])
@pytest.mark.parametrize("axiom", ["CPcr1", "CPcr2"])
def test_first_three_models_are_contractive(model, axiom):
    assert check_axiom_instances(build_interpretation(model, ["a", "b"]), axiom, 3).holds


def test_contraction_model_satisfies_the_rest():
    m = phi_contr(Alphabet(["a"]))
    for axiom in ("CP1", "CP2", "CP3", "CP4", "CPstat"):
        assert check_axiom_instances(m, axiom, 3).holds
    assert not check_axiom_instances(m, "CPcontr", 3).holds


def test_size_guard():
    with pytest.raises(SizeGuardError):
        check_axiom_instances(phi_contr(Alphabet(["a", "b", "c"])), "CP4", 5)


def test_report_examples():
    report = independence_report("CP", "CP3", 3, ["a"])
    assert report.valid and report.model == "Phi3"
    assert report.verdict("CP3").counterexample.lhs == P("T <| a |> F")
    report = independence_report("CPst", "CPcontr", 2, ["a1"])
    assert report.valid
    assert (report.witness.lhs_value, report.witness.rhs_value) == ("4", "2")
    with pytest.raises(UnresolvedIndependence):
        independence_report("CPcr", "CP4", 2, ["a"])


@pytest.mark.parametrize("axiom_set, target", sorted(OPEN))
def test_open_targets_are_refused(axiom_set, target):
    with pytest.raises(UnresolvedIndependence):
        independence_report(axiom_set, target)


def test_target_must_belong_to_set():
    with pytest.raises(KeyError):
        independence_report("CP", "CPstat")


def test_every_resolved_report_is_valid():
    reports = all_reports(3)
    assert len(reports) == sum(len(m) for m in AXIOM_SETS.values()) - len(OPEN)
    for report in reports:
        assert report.valid, "\n".join(report.format())
    claims = {(r.target, r.model) for r in reports}
    assert len(claims) == 10


def test_statcounter_witness():
    v, lhs, rhs = statcounter_witness()
    assert run(lhs, v)[0] is False
    assert run(rhs, v)[0] is True
    assert check_constraints(v)
    assert stable_antecedents(v, [lhs, rhs])
    assert (v.table[()]["a"], v.table[()]["b"]) == (False, True)
    assert v.table[("b",)]["a"] is True and v.table[("a",)]["b"] is True


@pytest.mark.parametrize("make, variety, broken, kept", [
    (rp1_witness, SemVariety.RP1, "CPrp1", "CPrp2"),
    (rp2_witness, SemVariety.RP2, "CPrp2", "CPrp1"),
    (cr1_witness, SemVariety.CR1, "CPcr1", "CPcr2"),
    (cr2_witness, SemVariety.CR2, "CPcr2", "CPcr1"),
])
def test_weakened_variety_witnesses(make, variety, broken, kept):
    w = make()
    assert w.valuation.variety is variety and check_constraints(w.valuation)
    left, right = w.results()
    assert left[0] != right[0]
    assert not check_on_valuation(w.valuation, broken, 3).holds
    assert check_on_valuation(w.valuation, kept, 3).holds
    assert find_separation(variety, w.lhs, w.rhs) is not None


def test_first_evaluation_values_of_witnesses():
    rp1 = rp1_witness().valuation
    assert (rp1.table[()]["a"], rp1.table[("a",)]["a"]) == (True, False)
    cr1 = cr1_witness().valuation
    assert (cr1.table[()]["a"], cr1.table[("a",)]["a"]) == (True, False)
    assert rp1_witness().lhs == P("(T <| a |> F) <| a |> F")
    assert cr1_witness().rhs == P("T <| a |> T")


def test_variety_instance_sampling_is_exact_per_instance():
    assert check_variety_instances(SemVariety.RP1, "CPrp2", 3, ["a"], 100).holds
    assert not check_variety_instances(SemVariety.RP1, "CPrp1", 3, ["a"], 300).holds


def test_report_format_lines():
    lines = independence_report("CP", "CP1", 3, ["a"]).format()
    assert lines[:5] == ["set CP", "target CP1", "model Phi1", "bound 3", "alphabet a"]
    assert "verdict CP1 fails (1 instance)" in lines
    assert lines[-1] == "result VALID"
    lhs, rhs = interpretation_witness(phi1(Alphabet(["a"])))
    assert f"witness {lhs} = {rhs}" in lines
