import random
from fractions import Fraction

import pytest

from fln.deduction import (
    EvaluatedFormula,
    LaxLeaf,
    Proof,
    ProofCheckError,
    ProofStep,
    RULE_G,
    RULE_LC,
    RULE_MP,
    RuleApp,
    RuleApplicationError,
    SaxLeaf,
    apply_rule,
    check_proof,
    detect_contradiction,
    extract_proof,
    instantiate_match,
    lax_grade,
    provability_lower_bound,
    saturate,
)
from fln.mv import MVChain, ONE, ZERO, chain_values, luk_and, luk_imp
from fln.parser import parse_formula, parse_theory
from fln.syntax import (
    Forall,
    HedgeMode,
    HedgeSignature,
    Imp,
    Pred,
    TruthConst,
    Var,
    expand,
    expanded_not,
    subformula_universe,
)
from fln.theory import Theory

F = Fraction
EMPTY = HedgeSignature.empty()
SIG_H = HedgeSignature(HedgeMode.H, ("s1", "s2"), ("d1",))
SIG_DH = HedgeSignature(HedgeMode.DH, ("s1", "s2"), ("d1", "d2"))


def lax(text, sig=EMPTY):
    return lax_grade(parse_formula(text, sig), sig)


# ---------------------------------------------------------------------------
# Logical axiom grades


def test_lax_truth_constant():
    grade, match = lax("#(3/10)")
    assert grade == F(3, 10)
    assert match.schema == "CONST"


def test_lax_r1():
    grade, match = lax("P -> (Q -> P)")
    assert grade == ONE and match.schema == "R1"


def test_lax_r2_r3_r4():
    assert lax("(P -> Q) -> ((Q -> R) -> (P -> R))")[1].schema == "R2"
    assert lax("(~Q -> ~P) -> (P -> Q)")[1].schema == "R3"
    assert lax("((P -> Q) -> Q) -> ((Q -> P) -> P)")[1].schema == "R4"


def test_lax_b1_bookkeeping():
    grade, match = lax("(#(1/2) -> #(3/4)) <-> #1")
    assert grade == ONE and match.schema == "B1"
    # wrong constant on the right is not an axiom
    assert lax("(#(1/2) -> #(3/4)) <-> #(1/2)")[0] == ZERO


def test_lax_t1_substitution():
    grade, match = lax("(forall x. R(x)) -> R('u1)")
    assert grade == ONE and match.schema == "T1"
    assert lax("(forall x. R(x)) -> R(y)")[1].schema == "T1"
    # vacuous quantification
    assert lax("(forall x. P) -> P")[1].schema == "T1"


def test_lax_t1_rejects_capture():
    grade, match = lax("(forall x. (forall y. S(x, y))) -> (forall y. S(f(y), y))")
    assert grade == ZERO and match is None


def test_lax_t1_needs_consistent_instance():
    assert lax("(forall x. S(x, x)) -> S('u1, 'u2)")[0] == ZERO


def test_lax_t2_freeness_enforced():
    assert lax("(forall x. (P -> R(x))) -> (P -> forall x. R(x))")[1].schema == "T2"
    assert lax("(forall x. (R(x) -> Q)) -> (R(x) -> forall x. Q)")[0] == ZERO


def test_lax_hedge_axioms_mode_h():
    assert lax("(P -> Q) -> (s1 P -> s1 Q)", SIG_H)[1].schema == "H6"
    assert lax("(P -> Q) -> (d1 P -> d1 Q)", SIG_H)[1].schema == "H6"
    assert lax("s2 P -> s1 P", SIG_H)[1].schema == "H7"
    assert lax("s1 P -> P", SIG_H)[1].schema == "H7"
    assert lax("s2 #1", SIG_H)[1].schema == "H8"
    assert lax("P -> d1 P", SIG_H)[1].schema == "H9"
    assert lax("~(d1 #0)", SIG_H)[1].schema == "H10"
    # not axioms: wrong direction, wrong strength order
    assert lax("s1 P -> s2 P", SIG_H)[0] == ZERO
    assert lax("d1 P -> P", SIG_H)[0] == ZERO
    assert lax("s1 #1", SIG_H)[0] == ZERO


def test_lax_hedge_axioms_mode_dh():
    assert lax("(P -> Q) -> (d2 P -> d2 Q)", SIG_DH)[1].schema == "DH11"
    assert lax("s2 P -> s1 P", SIG_DH)[1].schema == "DH12"
    assert lax("s2 #1", SIG_DH)[1].schema == "DH13"
    assert lax("d1 P -> d2 P", SIG_DH)[1].schema == "DH14"
    assert lax("d1 P -> ~(s1 ~P)", SIG_DH)[1].schema == "DH15"
    assert lax("d2 P -> ~(s1 ~P)", SIG_DH)[0] == ZERO  # indices must pair up
    assert lax("~(d2 #0)", SIG_DH)[0] == ZERO  # H10 shape is not part of DH


def test_instantiate_match_reproduces_formula():
    cases = [
        ("P -> (Q -> P)", EMPTY),
        ("(P -> Q) -> ((Q -> R) -> (P -> R))", EMPTY),
        ("(~Q -> ~P) -> (P -> Q)", EMPTY),
        ("((P -> Q) -> Q) -> ((Q -> P) -> P)", EMPTY),
        ("(#(1/2) -> #(3/4)) <-> #1", EMPTY),
        ("(forall x. R(x)) -> R('u1)", EMPTY),
        ("(forall x. (P -> R(x))) -> (P -> forall x. R(x))", EMPTY),
        ("(P -> Q) -> (s1 P -> s1 Q)", SIG_H),
        ("s2 P -> s1 P", SIG_H),
        ("s1 P -> P", SIG_H),
        ("s2 #1", SIG_H),
        ("P -> d1 P", SIG_H),
        ("d1 P -> d2 P", SIG_DH),
        ("~(d1 #0)", SIG_H),
        ("d2 P -> ~(s2 ~P)", SIG_DH),
        ("#(2/5)", EMPTY),
    ]
    for text, sig in cases:
        f = expand(parse_formula(text, sig))
        grade, match = lax_grade(f, sig)
        assert match is not None, text
        assert instantiate_match(match, sig) == f, text


# ---------------------------------------------------------------------------
# Rules


def test_apply_mp():
    p, q = Pred("P"), Pred("Q")
    out = apply_rule(RULE_MP, [EvaluatedFormula(F(4, 5), p), EvaluatedFormula(F(9, 10), Imp(p, q))])
    assert out == EvaluatedFormula(F(7, 10), q)


def test_apply_mp_shape_mismatch():
    p, q = Pred("P"), Pred("Q")
    with pytest.raises(RuleApplicationError):
        apply_rule(RULE_MP, [EvaluatedFormula(ONE, q), EvaluatedFormula(ONE, Imp(p, q))])


def test_apply_gen():
    px = Pred("P", (Var("x"),))
    out = apply_rule(RULE_G, [EvaluatedFormula(F(4, 5), px)], "x")
    assert out == EvaluatedFormula(F(4, 5), Forall("x", px))


def test_apply_lc():
    a = Pred("A")
    out = apply_rule(RULE_LC, [EvaluatedFormula(F(2, 5), a)], F(3, 5))
    assert out.grade == F(4, 5)
    assert out.formula == Imp(TruthConst(F(3, 5)), a)


def test_apply_lc_rejects_bad_parameter():
    with pytest.raises(RuleApplicationError):
        apply_rule(RULE_LC, [EvaluatedFormula(ONE, Pred("A"))], F(7, 5))


def test_rule_soundness_mp_exhaustive():
    vals = chain_values(10)
    for va in vals:
        for vb in vals:
            vimp = luk_imp(va, vb)
            for ga in vals:
                if ga > va:
                    continue
                for gb in vals:
                    if gb > vimp:
                        continue
                    assert luk_and(ga, gb) <= vb


def test_rule_soundness_lc_exhaustive():
    vals = chain_values(10)
    for a in vals:
        for gb in vals:
            for vb in vals:
                if gb <= vb:
                    assert luk_imp(a, gb) <= luk_imp(a, vb)


def test_lc_evaluation_operation_monotone():
    vals = chain_values(50)
    for a in vals:
        for x1, x2 in zip(vals, vals[1:]):
            assert luk_imp(a, x1) <= luk_imp(a, x2)


# ---------------------------------------------------------------------------
# Proof checking


def mp_proof():
    p, q = Pred("P"), Pred("Q")
    return Proof((
        ProofStep(EvaluatedFormula(F(4, 5), p), SaxLeaf()),
        ProofStep(EvaluatedFormula(F(9, 10), Imp(p, q)), SaxLeaf()),
        ProofStep(EvaluatedFormula(F(7, 10), q), RuleApp(RULE_MP, (0, 1))),
    ))


def mp_theory():
    return parse_theory("4/5 : P\n9/10 : P -> Q\n")


def test_check_proof_mp():
    assert check_proof(mp_proof(), mp_theory()) == F(7, 10)


def test_check_proof_rejects_overclaimed_special_leaf():
    proof = Proof((ProofStep(EvaluatedFormula(ONE, Pred("P")), SaxLeaf()),))
    with pytest.raises(ProofCheckError) as err:
        check_proof(proof, mp_theory())
    assert err.value.step == 1 and "grade mismatch" in err.value.reason


def test_check_proof_allows_weakened_special_leaf():
    proof = Proof((ProofStep(EvaluatedFormula(F(1, 5), Pred("P")), SaxLeaf()),))
    assert check_proof(proof, mp_theory()) == F(1, 5)


def test_check_proof_tampered_rule_grade():
    steps = list(mp_proof().steps)
    steps[2] = ProofStep(EvaluatedFormula(F(3, 4), Pred("Q")), RuleApp(RULE_MP, (0, 1)))
    with pytest.raises(ProofCheckError) as err:
        check_proof(Proof(tuple(steps)), mp_theory())
    assert err.value.step == 3 and err.value.reason == "grade mismatch"


def test_check_proof_forward_reference():
    p = Pred("P")
    proof = Proof((
        ProofStep(EvaluatedFormula(F(4, 5), p), SaxLeaf()),
        ProofStep(EvaluatedFormula(F(4, 5), Forall("x", p)), RuleApp(RULE_G, (4,), "x")),
    ))
    with pytest.raises(ProofCheckError) as err:
        check_proof(proof, mp_theory())
    assert err.value.step == 2 and err.value.reason == "forward reference"


def test_check_proof_constant_leaf():
    half = TruthConst(F(1, 2))
    proof = Proof((ProofStep(EvaluatedFormula(F(1, 2), half), LaxLeaf("CONST")),))
    assert check_proof(proof, Theory()) == F(1, 2)


def test_check_proof_logical_leaf_needs_exact_grade():
    f = parse_formula("P -> (Q -> P)")
    good = Proof((ProofStep(EvaluatedFormula(ONE, f), LaxLeaf("R1")),))
    assert check_proof(good, Theory()) == ONE
    bad = Proof((ProofStep(EvaluatedFormula(F(9, 10), f), LaxLeaf("R1")),))
    with pytest.raises(ProofCheckError, match="grade mismatch"):
        check_proof(bad, Theory())


def test_check_proof_schema_match_failure():
    proof = Proof((ProofStep(EvaluatedFormula(ONE, Pred("P")), LaxLeaf("R1")),))
    with pytest.raises(ProofCheckError, match="schema match failure"):
        check_proof(proof, Theory())


def test_check_proof_conclusion_mismatch():
    p, q = Pred("P"), Pred("Q")
    proof = Proof((
        ProofStep(EvaluatedFormula(F(4, 5), p), SaxLeaf()),
        ProofStep(EvaluatedFormula(F(9, 10), Imp(p, q)), SaxLeaf()),
        ProofStep(EvaluatedFormula(F(7, 10), p), RuleApp(RULE_MP, (0, 1))),
    ))
    with pytest.raises(ProofCheckError, match="conclusion mismatch"):
        check_proof(proof, mp_theory())


# ---------------------------------------------------------------------------
# Saturation


def test_saturate_mp_fixpoint():
    theory = mp_theory()
    universe = subformula_universe(list(theory.special_axioms) + [Pred("Q")])
    res = saturate(theory, universe)
    assert res.fixpoint
    assert res.grades[Pred("Q")] == F(7, 10)


def test_saturate_empty_theory_keeps_lax_grades():
    theory = Theory()
    seed = [parse_formula("P -> (Q -> P)")]
    universe = subformula_universe(seed)
    res = saturate(theory, universe)
    assert res.fixpoint
    for f in universe:
        assert res.grades[f] == lax_grade(f, EMPTY)[0]


def test_saturate_generalization():
    theory = parse_theory("1 : R(x)\n")
    px = parse_formula("R(x)")
    goal = Forall("x", px)
    res = saturate(theory, [px, goal])
    assert res.grades[goal] == ONE


def test_saturate_monotone_wrt_initial_grades():
    theory = mp_theory()
    universe = subformula_universe(list(theory.special_axioms) + [Pred("Q")])
    res = saturate(theory, universe)
    for f in universe:
        start = max(theory.special_axioms.get(f, ZERO), lax_grade(f, EMPTY)[0])
        assert res.grades[f] >= start


def test_saturate_order_independent_fixpoint():
    theory = parse_theory("1 : P\n1 : P -> Q\n1 : Q -> R\n")
    universe = subformula_universe(list(theory.special_axioms) + [Pred("R")])
    forward = saturate(theory, universe)
    backward = saturate(theory, list(reversed(universe)))
    shuffled = list(universe)
    random.Random(4).shuffle(shuffled)
    third = saturate(theory, shuffled)
    assert forward.grades == backward.grades == third.grades
    assert forward.grades[Pred("R")] == ONE


def test_saturate_budget_exhaustion_flagged():
    theory = parse_theory("1 : P\n1 : P -> Q\n1 : Q -> R\n")
    p, q, r = Pred("P"), Pred("Q"), Pred("R")
    # R is processed before Q can feed it, so one sweep is not enough
    universe = [r, Imp(q, r), q, Imp(p, q), p]
    res = saturate(theory, universe, budget=1)
    assert not res.fixpoint
    assert res.grades[r] == ZERO
    done = saturate(theory, universe, budget=10)
    assert done.fixpoint and done.grades[r] == ONE


# ---------------------------------------------------------------------------
# Provability bounds


def test_provability_mp():
    res = provability_lower_bound(mp_theory(), Pred("Q"))
    assert res.bound == F(7, 10)
    assert res.fixpoint
    assert check_proof(res.proof, mp_theory()) == F(7, 10)
    assert len(res.proof.steps) == 3


def test_provability_logical_axiom():
    res = provability_lower_bound(Theory(), parse_formula("P -> (Q -> P)"))
    assert res.bound == ONE
    assert len(res.proof.steps) == 1
    assert isinstance(res.proof.steps[0].justification, LaxLeaf)


def test_provability_constant():
    res = provability_lower_bound(Theory(), parse_formula("#(1/2)"))
    assert res.bound == F(1, 2)
    assert len(res.proof.steps) == 1


def test_provability_witness_checks_out_on_random_theories():
    rng = random.Random(77)
    atoms = [Pred("P"), Pred("Q"), Pred("R")]
    tenths = chain_values(10)
    for _ in range(30):
        pairs = []
        for _ in range(rng.randint(1, 4)):
            left, right = rng.choice(atoms), rng.choice(atoms)
            formula = rng.choice([left, Imp(left, right), expanded_not(left)])
            pairs.append((rng.choice(tenths), formula))
        theory = Theory.build(pairs)
        goal = rng.choice(atoms)
        res = provability_lower_bound(theory, goal, depth=1, budget=50)
        assert check_proof(res.proof, theory) == res.bound


# ---------------------------------------------------------------------------
# Contradiction detection


def test_contradiction_direct():
    theory = parse_theory("4/5 : P\n4/5 : ~P\n")
    res = detect_contradiction(theory)
    assert res.witness is not None
    assert res.witness.formula == Pred("P")
    assert res.witness.degree == F(3, 5)
    assert check_proof(res.witness.proof_pos, theory) == F(4, 5)
    assert check_proof(res.witness.proof_neg, theory) == F(4, 5)


def test_contradiction_below_threshold_is_consistent():
    theory = parse_theory("1/2 : P\n1/2 : ~P\n")
    res = detect_contradiction(theory)
    assert res.witness is None
    assert res.fixpoint


def test_contradiction_via_modus_ponens():
    theory = parse_theory("1 : P\n1 : P -> Q\n9/10 : ~Q\n")
    res = detect_contradiction(theory)
    assert res.witness is not None
    assert res.witness.formula == Pred("Q")
    assert res.witness.degree == F(9, 10)
    assert check_proof(res.witness.proof_pos, theory) == ONE
    assert check_proof(res.witness.proof_neg, theory) == F(9, 10)
