"""Graded proof calculus: logical-axiom matching, the three inference rules,
proof objects and checking, and forward-chaining saturation.

Provability degrees are suprema over infinitely many proofs and are not
computable in general.  Saturation therefore works inside a finite formula
universe and yields certified lower bounds; when it reaches a fixpoint the
bound is exact for the universe-restricted calculus.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .mv import ONE, ZERO, as_truth, luk_and, luk_imp
from .syntax import (
    FALSUM,
    Forall,
    Formula,
    HedgeApp,
    HedgeMode,
    HedgeSignature,
    Imp,
    Pred,
    Term,
    TruthConst,
    Var,
    Apply,
    NotSubstitutableError,
    expand,
    expanded_not,
    formula_sort_key,
    free_vars,
    subformula_universe,
    substitute,
    truth_constants_in,
)
from .theory import Theory

DEFAULT_DEPTH = 1
DEFAULT_BUDGET = 100


@dataclass(frozen=True)
class EvaluatedFormula:
    """A graded formula a/A: the syntactic evaluation a paired with A."""

    grade: Fraction
    formula: Formula


@dataclass(frozen=True)
class LogicalAxiomMatch:
    schema: str
    bindings: dict[str, object]


# ---------------------------------------------------------------------------
# Logical axiom schemas.  Matching happens on expanded formulas, where
# ~X is Imp(X, #0).


def _match_r1(f: Formula, sig: HedgeSignature):
    match f:
        case Imp(a, Imp(b, a2)) if a == a2:
            return {"A": a, "B": b}
    return None


def _match_r2(f: Formula, sig: HedgeSignature):
    match f:
        case Imp(Imp(a, b), Imp(Imp(b2, c), Imp(a2, c2))) if a == a2 and b == b2 and c == c2:
            return {"A": a, "B": b, "C": c}
    return None


def _match_r3(f: Formula, sig: HedgeSignature):
    match f:
        case Imp(Imp(Imp(b, TruthConst(z1)), Imp(a, TruthConst(z2))), Imp(a2, b2)) \
                if z1 == ZERO and z2 == ZERO and a == a2 and b == b2:
            return {"A": a, "B": b}
    return None


def _match_r4(f: Formula, sig: HedgeSignature):
    match f:
        case Imp(Imp(Imp(a, b), b2), Imp(Imp(b3, a2), a3)) \
                if b == b2 == b3 and a == a2 == a3:
            return {"A": a, "B": b}
    return None


def split_expanded_iff(f: Formula) -> tuple[Formula, Formula] | None:
    """Recover (L, R) when ``f`` is the expansion of ``L <-> R``."""
    match f:
        case Imp(
            Imp(Imp(Imp(r1, l1), Imp(l2, r2)), Imp(Imp(r3, l3), TruthConst(z1))),
            TruthConst(z2),
        ) if z1 == ZERO and z2 == ZERO and l1 == l2 == l3 and r1 == r2 == r3:
            return l1, r1
    return None


def _match_b1(f: Formula, sig: HedgeSignature):
    lr = split_expanded_iff(f)
    if lr is None:
        return None
    left, right = lr
    match left, right:
        case (Imp(TruthConst(a), TruthConst(b)), TruthConst(c)) if c == luk_imp(a, b):
            return {"a": a, "b": b}
    return None


def _infer_substituted_term(body: Formula, x: str, rhs: Formula) -> Term | None:
    """Find the term t with ``substitute(body, x, t) == rhs`` by parallel walk."""
    found: list[Term] = []

    def walk_t(bt: Term, rt: Term) -> bool:
        if isinstance(bt, Var) and bt.name == x:
            found.append(rt)
            return True
        if isinstance(bt, Apply) and isinstance(rt, Apply):
            return (
                bt.func == rt.func
                and len(bt.args) == len(rt.args)
                and all(walk_t(p, q) for p, q in zip(bt.args, rt.args))
            )
        return bt == rt

    def walk_f(bf: Formula, rf: Formula, shadowed: bool) -> bool:
        if shadowed:
            return bf == rf
        match bf, rf:
            case (TruthConst(), TruthConst()):
                return bf == rf
            case (Pred(n1, a1), Pred(n2, a2)):
                return n1 == n2 and len(a1) == len(a2) and all(walk_t(p, q) for p, q in zip(a1, a2))
            case (Imp(l1, r1), Imp(l2, r2)):
                return walk_f(l1, l2, False) and walk_f(r1, r2, False)
            case (Forall(y1, b1), Forall(y2, b2)):
                return y1 == y2 and walk_f(b1, b2, y1 == x)
            case (HedgeApp(h1, b1), HedgeApp(h2, b2)):
                return h1 == h2 and walk_f(b1, b2, False)
        return False

    if not walk_f(body, rhs, False):
        return None
    if not found:
        return Var(x)
    first = found[0]
    if any(t != first for t in found[1:]):
        return None
    return first


def _match_t1(f: Formula, sig: HedgeSignature):
    match f:
        case Imp(Forall(x, body), rhs):
            t = _infer_substituted_term(body, x, rhs)
            if t is None:
                return None
            try:
                if substitute(body, x, t) == rhs:
                    return {"x": x, "A": body, "t": t}
            except NotSubstitutableError:
                return None
    return None


def _match_t2(f: Formula, sig: HedgeSignature):
    match f:
        case Imp(Forall(x, Imp(a, b)), Imp(a2, Forall(x2, b2))) \
                if x == x2 and a == a2 and b == b2 and x not in free_vars(a):
            return {"x": x, "A": a, "B": b}
    return None


def _match_hedge_mono(f: Formula, sig: HedgeSignature):
    match f:
        case Imp(Imp(a, b), Imp(HedgeApp(h1, a2), HedgeApp(h2, b2))) \
                if h1 == h2 and a == a2 and b == b2 and sig.is_hedge(h1):
            return {"h": h1, "A": a, "B": b}
    return None


def _match_stresser_chain(f: Formula, sig: HedgeSignature):
    match f:
        case Imp(HedgeApp(h, a), rhs) if h in sig.stressers:
            i = sig.stresser_index(h)
            if i == 1:
                if rhs == a:
                    return {"i": 1, "A": a}
            else:
                match rhs:
                    case HedgeApp(h2, a2) if h2 == sig.stressers[i - 2] and a2 == a:
                        return {"i": i, "A": a}
    return None


def _match_stresser_top(f: Formula, sig: HedgeSignature):
    match f:
        case HedgeApp(h, TruthConst(v)) if v == ONE and sig.stressers and h == sig.stressers[-1]:
            return {}
    return None


def _match_depresser_chain(f: Formula, sig: HedgeSignature):
    match f:
        case Imp(lhs, HedgeApp(h, a)) if h in sig.depressers:
            j = sig.depresser_index(h)
            if j == 1:
                if lhs == a:
                    return {"j": 1, "A": a}
            else:
                match lhs:
                    case HedgeApp(h2, a2) if h2 == sig.depressers[j - 2] and a2 == a:
                        return {"j": j, "A": a}
    return None


def _match_depresser_bottom(f: Formula, sig: HedgeSignature):
    match f:
        case Imp(HedgeApp(h, TruthConst(z1)), TruthConst(z2)) \
                if z1 == ZERO and z2 == ZERO and sig.depressers and h == sig.depressers[-1]:
            return {}
    return None


def _match_duality(f: Formula, sig: HedgeSignature):
    match f:
        case Imp(HedgeApp(d, a), Imp(HedgeApp(s, Imp(a2, TruthConst(z1))), TruthConst(z2))) \
                if z1 == ZERO and z2 == ZERO and a == a2 and d in sig.depressers:
            i = sig.depresser_index(d)
            if i <= len(sig.stressers) and s == sig.stressers[i - 1]:
                return {"i": i, "A": a}
    return None


_BASE_SCHEMAS = (
    ("R1", _match_r1),
    ("R2", _match_r2),
    ("R3", _match_r3),
    ("R4", _match_r4),
    ("B1", _match_b1),
    ("T1", _match_t1),
    ("T2", _match_t2),
)
_H_SCHEMAS = (
    ("H6", _match_hedge_mono),
    ("H7", _match_stresser_chain),
    ("H8", _match_stresser_top),
    ("H9", _match_depresser_chain),
    ("H10", _match_depresser_bottom),
)
_DH_SCHEMAS = (
    ("DH11", _match_hedge_mono),
    ("DH12", _match_stresser_chain),
    ("DH13", _match_stresser_top),
    ("DH14", _match_depresser_chain),
    ("DH15", _match_duality),
)


def schema_table(sig: HedgeSignature) -> tuple[tuple[str, object], ...]:
    extra = _H_SCHEMAS if sig.mode is HedgeMode.H else _DH_SCHEMAS
    return _BASE_SCHEMAS + extra


def match_schema(schema: str, f: Formula, sig: HedgeSignature) -> LogicalAxiomMatch | None:
    f = expand(f)
    if schema == "CONST":
        match f:
            case TruthConst(a):
                return LogicalAxiomMatch("CONST", {"a": a})
        return None
    for name, matcher in schema_table(sig):
        if name == schema:
            bindings = matcher(f, sig)
            return LogicalAxiomMatch(name, bindings) if bindings is not None else None
    raise ValueError(f"unknown axiom schema '{schema}'")


def lax_grade(f: Formula, sig: HedgeSignature) -> tuple[Fraction, LogicalAxiomMatch | None]:
    """Membership grade of ``f`` in the fuzzy set of logical axioms.

    Grade 1 with a match for instances of the enabled schemas, grade a for
    the truth constant #a, grade 0 otherwise.
    """
    f = expand(f)
    for name, matcher in schema_table(sig):
        bindings = matcher(f, sig)
        if bindings is not None:
            return ONE, LogicalAxiomMatch(name, bindings)
    match f:
        case TruthConst(a):
            return a, LogicalAxiomMatch("CONST", {"a": a})
    return ZERO, None


def instantiate_match(m: LogicalAxiomMatch, sig: HedgeSignature) -> Formula:
    """Rebuild the formula matched by ``m``; inverse of schema matching."""
    b = m.bindings
    s = m.schema
    if s == "R1":
        return Imp(b["A"], Imp(b["B"], b["A"]))
    if s == "R2":
        A, B, C = b["A"], b["B"], b["C"]
        return Imp(Imp(A, B), Imp(Imp(B, C), Imp(A, C)))
    if s == "R3":
        A, B = b["A"], b["B"]
        return Imp(Imp(expanded_not(B), expanded_not(A)), Imp(A, B))
    if s == "R4":
        A, B = b["A"], b["B"]
        return Imp(Imp(Imp(A, B), B), Imp(Imp(B, A), A))
    if s == "B1":
        from .syntax import Iff  # sugar used only to rebuild the template

        a, bb = b["a"], b["b"]
        return expand(Iff(Imp(TruthConst(a), TruthConst(bb)), TruthConst(luk_imp(a, bb))))
    if s == "T1":
        return Imp(Forall(b["x"], b["A"]), substitute(b["A"], b["x"], b["t"]))
    if s == "T2":
        x, A, B = b["x"], b["A"], b["B"]
        return Imp(Forall(x, Imp(A, B)), Imp(A, Forall(x, B)))
    if s in ("H6", "DH11"):
        h, A, B = b["h"], b["A"], b["B"]
        return Imp(Imp(A, B), Imp(HedgeApp(h, A), HedgeApp(h, B)))
    if s in ("H7", "DH12"):
        i, A = b["i"], b["A"]
        upper = HedgeApp(sig.stressers[i - 1], A)
        lower = A if i == 1 else HedgeApp(sig.stressers[i - 2], A)
        return Imp(upper, lower)
    if s in ("H8", "DH13"):
        return HedgeApp(sig.stressers[-1], TruthConst(ONE))
    if s in ("H9", "DH14"):
        j, A = b["j"], b["A"]
        weaker = A if j == 1 else HedgeApp(sig.depressers[j - 2], A)
        return Imp(weaker, HedgeApp(sig.depressers[j - 1], A))
    if s == "H10":
        return expanded_not(HedgeApp(sig.depressers[-1], FALSUM))
    if s == "DH15":
        i, A = b["i"], b["A"]
        return Imp(
            HedgeApp(sig.depressers[i - 1], A),
            expanded_not(HedgeApp(sig.stressers[i - 1], expanded_not(A))),
        )
    if s == "CONST":
        return TruthConst(b["a"])
    raise ValueError(f"unknown axiom schema '{s}'")


# ---------------------------------------------------------------------------
# Inference rules

RULE_MP = "MP"
RULE_G = "G"
RULE_LC = "LC"


class RuleApplicationError(ValueError):
    """Premises or parameters do not fit the rule."""


def apply_rule(rule: str, premises: list[EvaluatedFormula], param: object = None) -> EvaluatedFormula:
    """Apply one inference rule to evaluated premises.

    MP: a/A, b/(A -> B)  gives  a⊗b / B
    G:  a/A              gives  a / forall x. A   (param: variable x)
    LC: b/A              gives  a⇒b / #a -> A     (param: rational a)
    """
    if rule == RULE_MP:
        if len(premises) != 2:
            raise RuleApplicationError("modus ponens takes two premises")
        minor, major = premises
        mf = expand(major.formula)
        if not isinstance(mf, Imp) or mf.left != expand(minor.formula):
            raise RuleApplicationError("modus ponens premises do not match")
        return EvaluatedFormula(luk_and(minor.grade, major.grade), mf.right)
    if rule == RULE_G:
        if len(premises) != 1:
            raise RuleApplicationError("generalization takes one premise")
        if not isinstance(param, str) or not param:
            raise RuleApplicationError("generalization needs a variable parameter")
        p = premises[0]
        return EvaluatedFormula(p.grade, Forall(param, expand(p.formula)))
    if rule == RULE_LC:
        if len(premises) != 1:
            raise RuleApplicationError("constant introduction takes one premise")
        try:
            a = as_truth(param)
        except (TypeError, ValueError) as exc:
            raise RuleApplicationError(f"constant-introduction parameter: {exc}") from None
        p = premises[0]
        return EvaluatedFormula(luk_imp(a, p.grade), Imp(TruthConst(a), expand(p.formula)))
    raise RuleApplicationError(f"unknown rule '{rule}'")


# ---------------------------------------------------------------------------
# Proof objects


@dataclass(frozen=True)
class LaxLeaf:
    schema: str


@dataclass(frozen=True)
class SaxLeaf:
    pass


@dataclass(frozen=True)
class RuleApp:
    rule: str
    premises: tuple[int, ...]
    param: object = None


Justification = LaxLeaf | SaxLeaf | RuleApp


@dataclass(frozen=True)
class ProofStep:
    conclusion: EvaluatedFormula
    justification: Justification


@dataclass(frozen=True)
class Proof:
    steps: tuple[ProofStep, ...]

    def __post_init__(self) -> None:
        if not self.steps:
            raise ValueError("a proof needs at least one step")

    def value(self) -> Fraction:
        return self.steps[-1].conclusion.grade


class ProofCheckError(ValueError):
    def __init__(self, step: int, reason: str):
        super().__init__(f"step {step}: {reason}")
        self.step = step
        self.reason = reason


def check_proof(proof: Proof, theory: Theory) -> Fraction:
    """Re-verify every step and return the proof's value.

    Logical-axiom leaves must claim exactly their axiom grade; special
    leaves may claim anything up to max(SAx, LAx); rule steps are
    recomputed and must reproduce the claimed formula and grade.
    """
    sig = theory.signature
    checked: list[EvaluatedFormula] = []
    for idx, step in enumerate(proof.steps):
        n = idx + 1
        f = expand(step.conclusion.formula)
        claimed = step.conclusion.grade
        just = step.justification
        if isinstance(just, LaxLeaf):
            m = match_schema(just.schema, f, sig)
            if m is None:
                raise ProofCheckError(n, f"schema match failure ({just.schema})")
            expected = f.value if just.schema == "CONST" else ONE  # type: ignore[union-attr]
            if claimed != expected:
                raise ProofCheckError(n, "grade mismatch")
        elif isinstance(just, SaxLeaf):
            cap = max(theory.special_axioms.get(f, ZERO), lax_grade(f, sig)[0])
            if claimed > cap:
                raise ProofCheckError(n, "grade mismatch")
        else:
            for i in just.premises:
                if i < 0:
                    raise ProofCheckError(n, "invalid step index")
                if i >= idx:
                    raise ProofCheckError(n, "forward reference")
            prems = [checked[i] for i in just.premises]
            try:
                out = apply_rule(just.rule, prems, just.param)
            except RuleApplicationError as exc:
                raise ProofCheckError(n, str(exc)) from None
            if out.formula != f:
                raise ProofCheckError(n, "conclusion mismatch")
            if out.grade != claimed:
                raise ProofCheckError(n, "grade mismatch")
        checked.append(EvaluatedFormula(claimed, f))
    return checked[-1].grade


# ---------------------------------------------------------------------------
# Saturation


@dataclass(frozen=True)
class ProvLeaf:
    formula: Formula
    grade: Fraction
    kind: str  # "lax" | "sax"
    schema: str | None = None


@dataclass(frozen=True)
class ProvRule:
    formula: Formula
    grade: Fraction
    rule: str
    param: object
    premises: tuple["ProvNode", ...]


ProvNode = ProvLeaf | ProvRule


@dataclass
class SaturationResult:
    grades: dict[Formula, Fraction]
    provenance: dict[Formula, ProvNode]
    fixpoint: bool
    rounds: int


def saturate(theory: Theory, universe, budget: int = DEFAULT_BUDGET) -> SaturationResult:
    """Raise grades over a finite universe to a least fixpoint of the rules.

    Grades start from max(SAx, LAx) and only ever increase; the merge is a
    per-formula maximum, so the fixpoint does not depend on the processing
    order.  ``budget`` caps the number of full sweeps; if it runs out
    before a sweep makes no change, the result is flagged non-fixpoint.
    Every reported grade is a certified lower provability bound.
    """
    if budget < 1:
        raise ValueError("saturation budget must be >= 1")
    univ: list[Formula] = []
    seen: set[Formula] = set()
    for f in universe:
        ef = expand(f)
        if ef not in seen:
            seen.add(ef)
            univ.append(ef)

    sig = theory.signature
    grades: dict[Formula, Fraction] = {}
    prov: dict[Formula, ProvNode] = {}
    for f in univ:
        sax = theory.special_axioms.get(f, ZERO)
        lg, m = lax_grade(f, sig)
        if m is not None and lg >= sax:
            grades[f] = lg
            prov[f] = ProvLeaf(f, lg, "lax", m.schema)
        else:
            grades[f] = sax
            prov[f] = ProvLeaf(f, sax, "sax")

    mp_edges: dict[Formula, list[tuple[Formula, Formula]]] = {}
    lc_edges: dict[Formula, Fraction] = {}
    gen_edges: dict[Formula, tuple[str, Formula]] = {}
    for g in univ:
        if isinstance(g, Imp):
            if g.left in seen and g.right in seen:
                mp_edges.setdefault(g.right, []).append((g.left, g))
            if isinstance(g.left, TruthConst) and g.right in seen:
                lc_edges[g] = g.left.value
        elif isinstance(g, Forall) and g.body in seen:
            gen_edges[g] = (g.var, g.body)

    fixpoint = False
    rounds = 0
    while rounds < budget:
        rounds += 1
        changed = False
        for f in univ:
            best = grades[f]
            action = None
            for a, ab in mp_edges.get(f, ()):
                cand = luk_and(grades[a], grades[ab])
                if cand > best:
                    best, action = cand, (RULE_MP, None, (a, ab))
            if f in lc_edges:
                cand = luk_imp(lc_edges[f], grades[f.right])  # type: ignore[union-attr]
                if cand > best:
                    best, action = cand, (RULE_LC, lc_edges[f], (f.right,))  # type: ignore[union-attr]
            if f in gen_edges:
                x, body = gen_edges[f]
                cand = grades[body]
                if cand > best:
                    best, action = cand, (RULE_G, x, (body,))
            if action is not None:
                rule, param, prem_fs = action
                grades[f] = best
                prov[f] = ProvRule(f, best, rule, param, tuple(prov[p] for p in prem_fs))
                changed = True
        if not changed:
            fixpoint = True
            break
    return SaturationResult(grades, prov, fixpoint, rounds)


def extract_proof(node: ProvNode) -> Proof:
    """Linearize a provenance DAG into a checkable proof, sharing repeats."""
    steps: list[ProofStep] = []
    index: dict[ProvNode, int] = {}

    def emit(n: ProvNode) -> int:
        if n in index:
            return index[n]
        if isinstance(n, ProvRule):
            prem_idx = tuple(emit(c) for c in n.premises)
            just: Justification = RuleApp(n.rule, prem_idx, n.param)
        elif n.kind == "lax":
            just = LaxLeaf(n.schema or "CONST")
        else:
            just = SaxLeaf()
        steps.append(ProofStep(EvaluatedFormula(n.grade, n.formula), just))
        index[n] = len(steps) - 1
        return index[n]

    emit(node)
    return Proof(tuple(steps))


# ---------------------------------------------------------------------------
# Provability bounds and contradiction search


@dataclass
class BoundResult:
    bound: Fraction
    proof: Proof
    fixpoint: bool
    universe_size: int


def goal_universe(theory: Theory, goal: Formula, depth: int = DEFAULT_DEPTH) -> tuple[list[Formula], Formula]:
    goal_e = expand(goal)
    seed = list(theory.special_axioms) + [goal_e]
    consts = set(theory.grade_constants()) | set(truth_constants_in(goal_e))
    return subformula_universe(seed, consts, depth), goal_e


def provability_lower_bound(
    theory: Theory, goal: Formula, depth: int = DEFAULT_DEPTH, budget: int = DEFAULT_BUDGET
) -> BoundResult:
    """Certified lower bound on the provability degree of ``goal``, with a
    witness proof whose checked value equals the bound."""
    univ, goal_e = goal_universe(theory, goal, depth)
    res = saturate(theory, univ, budget)
    bound = res.grades[goal_e]
    proof = extract_proof(res.provenance[goal_e])
    return BoundResult(bound, proof, res.fixpoint, len(univ))


@dataclass
class ContradictionWitness:
    formula: Formula
    degree: Fraction
    proof_pos: Proof
    proof_neg: Proof


@dataclass
class ConsistencyResult:
    witness: ContradictionWitness | None
    fixpoint: bool


def detect_contradiction(
    theory: Theory, depth: int = DEFAULT_DEPTH, budget: int = DEFAULT_BUDGET
) -> ConsistencyResult:
    """Search the universe for A with bound(A) ⊗ bound(~A) > 0.

    The universe is the axiom universe closed under one application of
    negation.  A miss certifies only universe-relative consistency.
    Special-axiom formulas are scanned first (in declaration order), then
    the rest in canonical text order with bare truth constants last, so the
    reported witness is deterministic.
    """
    seed = list(theory.special_axioms)
    base = subformula_universe(seed, set(theory.grade_constants()), depth)
    univ = list(base)
    seen = set(univ)
    for f in base:
        nf = expanded_not(f)
        if nf not in seen:
            seen.add(nf)
            univ.append(nf)
    if FALSUM not in seen:
        univ.append(FALSUM)
    res = saturate(theory, univ, budget)

    rest = [f for f in univ if f not in theory.special_axioms]
    rest.sort(key=lambda f: (isinstance(f, TruthConst), formula_sort_key(f)))
    for f in list(theory.special_axioms) + rest:
        nf = expanded_not(f)
        neg_grade = res.grades.get(nf)
        if neg_grade is None:
            continue
        degree = luk_and(res.grades[f], neg_grade)
        if degree > ZERO:
            witness = ContradictionWitness(
                f, degree, extract_proof(res.provenance[f]), extract_proof(res.provenance[nf])
            )
            return ConsistencyResult(witness, res.fixpoint)
    return ConsistencyResult(None, res.fixpoint)
