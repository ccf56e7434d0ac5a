"""Executes translated documents without an external solver.

The per-tuple statements of a document are grounded for one assumption
tuple at a time and solved independently (the partial ground programs share
no atoms), which keeps the search spaces tiny. The cross-tuple layer
(preference / dominance / candidate / preferred) is then evaluated as a
stratified bottom-up fixpoint over the collected facts. A monolithic
grounder for the whole document is kept for consistency checks and debug
dumps.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional

from .engine import (
    DEFAULT_ATOM_CAP,
    CapExceeded,
    ChoiceHead,
    CountAggregate,
    GroundProgram,
    GroundRule,
    WeakConstraint,
    optimal_answer_sets,
    parallel_map,
)
from .model import AnswerSet, Atom, Dialect, Term
from .translate import (
    AspDocument,
    BinOp,
    ChoiceExpr,
    Cmp,
    ConstRef,
    CountExpr,
    FactPoolStmt,
    Fn,
    Lit,
    RangeBind,
    RuleStmt,
    Var,
    WeakStmt,
)


class _Unbound(Exception):
    pass


def _eval(e, env, consts):
    if isinstance(e, Var):
        try:
            return env[e.name]
        except KeyError:
            raise _Unbound(e.name)
    if isinstance(e, (int, str, Term)):
        return e
    if isinstance(e, ConstRef):
        return consts[e.name]
    if isinstance(e, BinOp):
        lhs = _eval(e.lhs, env, consts)
        rhs = _eval(e.rhs, env, consts)
        return lhs + rhs if e.op == "+" else lhs - rhs
    if isinstance(e, Fn):
        return Term(e.name, tuple(_eval(a, env, consts) for a in e.args))
    raise TypeError(e)


def _cmp(op: str, lhs, rhs) -> bool:
    if op == "=":
        return lhs == rhs
    if op == "!=":
        return lhs != rhs
    if op == "<":
        return lhs < rhs
    if op == ">":
        return lhs > rhs
    if op == "<=":
        return lhs <= rhs
    return lhs >= rhs


def _expr_vars(e, out: set) -> None:
    if isinstance(e, Var):
        out.add(e.name)
    elif isinstance(e, BinOp):
        _expr_vars(e.lhs, out)
        _expr_vars(e.rhs, out)
    elif isinstance(e, Fn):
        for a in e.args:
            _expr_vars(a, out)


def _item_vars(it, out: set) -> None:
    if isinstance(it, Lit):
        for a in it.args:
            _expr_vars(a, out)
    elif isinstance(it, Cmp):
        _expr_vars(it.lhs, out)
        _expr_vars(it.rhs, out)
    elif isinstance(it, RangeBind):
        out.add(it.var.name)
        _expr_vars(it.lo, out)
        _expr_vars(it.hi, out)
    elif isinstance(it, CountExpr):
        if it.bind is not None:
            out.add(it.bind.name)
        for b in (it.lower, it.upper):
            if b is not None:
                _expr_vars(b, out)


def _outer_vars(stmt) -> set:
    """Variables visible outside aggregate/choice elements; the rest are
    local to their element and expand element-wise."""
    out: set = set()
    if isinstance(stmt, WeakStmt):
        for t in stmt.terms:
            _expr_vars(t, out)
    elif isinstance(stmt, RuleStmt):
        if isinstance(stmt.head, Lit):
            _item_vars(stmt.head, out)
        elif isinstance(stmt.head, ChoiceExpr):
            for b in (stmt.head.lower, stmt.head.upper):
                if b is not None:
                    _expr_vars(b, out)
    for it in getattr(stmt, "body", ()):
        _item_vars(it, out)
    return out


def _expand_elements(elements, env, consts, domains):
    """Ground element instances: (atom set, count of true constant items)."""
    atoms = set()
    const_true = 0
    for el in elements:
        lvars: set = set()
        if isinstance(el.item, Lit):
            for a in el.item.args:
                _expr_vars(a, lvars)
        else:
            _expr_vars(el.item.lhs, lvars)
            _expr_vars(el.item.rhs, lvars)
        cond_vars = [c.var.name for c in el.conds]
        free = [
            v
            for v in sorted(lvars)
            if v not in env and v not in cond_vars
        ]
        free_domains = [domains[v] for v in free]

        def emit_with(env2):
            if isinstance(el.item, Lit):
                atoms.add(Atom(el.item.pred, tuple(_eval(a, env2, consts) for a in el.item.args)))
                return 0
            return 1 if _cmp(el.item.op, _eval(el.item.lhs, env2, consts), _eval(el.item.rhs, env2, consts)) else 0

        def walk_conds(idx, env2):
            nonlocal const_true
            if idx == len(el.conds):
                const_true += emit_with(env2)
                return
            c = el.conds[idx]
            lo = _eval(c.lo, env2, consts)
            hi = _eval(c.hi, env2, consts)
            if c.var.name in env2:
                if lo <= env2[c.var.name] <= hi:
                    walk_conds(idx + 1, env2)
                return
            for v in range(lo, hi + 1):
                env3 = dict(env2)
                env3[c.var.name] = v
                walk_conds(idx + 1, env3)

        for combo in product(*free_domains):
            env2 = dict(env)
            env2.update(zip(free, combo))
            walk_conds(0, env2)
    return atoms, const_true


def _ground_statement(stmt, doc: AspDocument, fixed: dict):
    """Yield engine rules / weak constraints for one statement."""
    consts = dict(doc.constants)
    domains = dict(stmt.var_domains)
    if isinstance(stmt, FactPoolStmt):
        for v in stmt.values:
            yield GroundRule(head=Atom(stmt.pred, (v,)))
        return
    outer = _outer_vars(stmt)
    # variables bound inline while walking the body; only those without a
    # declared domain, everything else is enumerated up front and filtered
    binder_vars = {
        it.var.name
        for it in stmt.body
        if isinstance(it, RangeBind) and it.var.name not in domains
    }
    for it in stmt.body:
        if (
            isinstance(it, Cmp)
            and it.op == "="
            and isinstance(it.lhs, Var)
            and it.lhs.name not in domains
        ):
            binder_vars.add(it.lhs.name)
        if isinstance(it, CountExpr) and it.bind is not None:
            binder_vars.add(it.bind.name)
    names = [
        v
        for v in sorted(outer)
        if v not in fixed and v not in binder_vars
    ]
    for v in names:
        if v not in domains:
            raise KeyError("no domain for variable %s in %r" % (v, stmt.tag))
    body = list(stmt.body)

    def finish(env):
        pos, neg, aggs = [], [], []

        def walk(idx, env):
            if idx == len(body):
                yield from build(env)
                return
            it = body[idx]
            if isinstance(it, Lit):
                atom = Atom(it.pred, tuple(_eval(a, env, consts) for a in it.args))
                (neg if it.neg else pos).append(atom)
                yield from walk(idx + 1, env)
                (neg if it.neg else pos).pop()
            elif isinstance(it, Cmp):
                if it.op == "=" and isinstance(it.lhs, Var) and it.lhs.name not in env:
                    env2 = dict(env)
                    env2[it.lhs.name] = _eval(it.rhs, env, consts)
                    yield from walk(idx + 1, env2)
                elif _cmp(it.op, _eval(it.lhs, env, consts), _eval(it.rhs, env, consts)):
                    yield from walk(idx + 1, env)
            elif isinstance(it, RangeBind):
                lo = _eval(it.lo, env, consts)
                hi = _eval(it.hi, env, consts)
                if it.var.name in env:
                    if lo <= env[it.var.name] <= hi:
                        yield from walk(idx + 1, env)
                    return
                for v in range(lo, hi + 1):
                    env2 = dict(env)
                    env2[it.var.name] = v
                    yield from walk(idx + 1, env2)
            elif isinstance(it, CountExpr):
                atoms, const_true = _expand_elements(it.elements, env, consts, domains)
                if it.bind is not None:
                    if atoms:
                        raise ValueError("count assignment over non-constant elements")
                    name = it.bind.name
                    if name in env:
                        if env[name] == const_true:
                            yield from walk(idx + 1, env)
                        return
                    env2 = dict(env)
                    env2[name] = const_true
                    yield from walk(idx + 1, env2)
                    return
                lower = _eval(it.lower, env, consts) if it.lower is not None else None
                upper = _eval(it.upper, env, consts) if it.upper is not None else None
                if not atoms:
                    ok = (lower is None or const_true >= lower) and (
                        upper is None or const_true <= upper
                    )
                    if ok:
                        yield from walk(idx + 1, env)
                    return
                aggs.append(
                    CountAggregate(
                        atoms=frozenset(atoms), fixed=const_true, lower=lower, upper=upper
                    )
                )
                yield from walk(idx + 1, env)
                aggs.pop()
            else:
                raise TypeError(it)

        def build(env):
            if isinstance(stmt, WeakStmt):
                yield WeakConstraint(
                    pos=frozenset(pos),
                    neg=frozenset(neg),
                    aggregates=tuple(aggs),
                    weight=stmt.weight,
                    terms=tuple(_eval(t, env, consts) for t in stmt.terms),
                )
                return
            head = stmt.head
            if head is None:
                yield GroundRule(head=None, pos=frozenset(pos), neg=frozenset(neg), aggregates=tuple(aggs))
            elif isinstance(head, Lit):
                atom = Atom(head.pred, tuple(_eval(a, env, consts) for a in head.args))
                yield GroundRule(head=atom, pos=frozenset(pos), neg=frozenset(neg), aggregates=tuple(aggs))
            else:
                atoms, const_true = _expand_elements(head.elements, env, consts, domains)
                if const_true:
                    raise ValueError("constant elements in a choice head")
                lower = _eval(head.lower, env, consts) if head.lower is not None else None
                upper = _eval(head.upper, env, consts) if head.upper is not None else None
                yield GroundRule(
                    head=ChoiceHead(
                        atoms=tuple(sorted(atoms, key=Atom.sort_key)), lower=lower, upper=upper
                    ),
                    pos=frozenset(pos),
                    neg=frozenset(neg),
                    aggregates=tuple(aggs),
                )

        yield from walk(0, env)

    for combo in product(*(domains[v] for v in names)):
        env = dict(fixed)
        env.update(zip(names, combo))
        yield from finish(env)


def tuple_ground_program(doc: AspDocument, xs: tuple) -> GroundProgram:
    """Partial ground program for one assumption tuple."""
    fixed = {"X%d" % i: x for i, x in enumerate(xs, start=1)}
    rules, weak = [], []
    for stmt in doc.statements:
        if stmt.phase != "tuple":
            continue
        for obj in _ground_statement(stmt, doc, fixed):
            if isinstance(obj, WeakConstraint):
                weak.append(obj)
            else:
                rules.append(obj)
    return GroundProgram(rules=tuple(rules), weak=tuple(weak))


def ground_document(doc: AspDocument) -> GroundProgram:
    """Monolithic grounding of every statement over the full tuple space."""
    rules, weak = [], []
    for stmt in doc.statements:
        for obj in _ground_statement(stmt, doc, {}):
            if isinstance(obj, WeakConstraint):
                weak.append(obj)
            else:
                rules.append(obj)
    return GroundProgram(rules=tuple(rules), weak=tuple(weak))


def shrink(atoms: frozenset, xs: tuple, sigma: frozenset) -> AnswerSet:
    """Strip the assumption-degree arguments and keep original atoms only."""
    m = len(xs)
    if m == 0:
        return AnswerSet(atoms=frozenset(a for a in atoms if a in sigma))
    kept = set()
    for a in atoms:
        if len(a.args) >= m and tuple(a.args[-m:]) == xs:
            base = Atom(a.predicate, tuple(a.args[:-m]))
            if base in sigma:
                kept.add(base)
    return AnswerSet(atoms=frozenset(kept))


# --- stratified relational layer ------------------------------------------------


def _stratify(statements) -> list:
    """Statements grouped into evaluation strata (negation/aggregates must
    point strictly downward)."""
    heads = {}
    for s in statements:
        if isinstance(s, FactPoolStmt):
            heads.setdefault(s.pred, []).append(s)
        elif isinstance(s, RuleStmt) and isinstance(s.head, Lit):
            heads.setdefault(s.head.pred, []).append(s)
    level = {pred: 0 for pred in heads}
    for _ in range(len(heads) + 2):
        changed = False
        for s in statements:
            if not isinstance(s, RuleStmt) or not isinstance(s.head, Lit):
                continue
            h = s.head.pred
            for it in s.body:
                if isinstance(it, Lit) and it.pred in level:
                    need = level[it.pred] + (1 if it.neg else 0)
                    if level[h] < need:
                        level[h] = need
                        changed = True
                elif isinstance(it, CountExpr):
                    for el in it.elements:
                        if isinstance(el.item, Lit) and el.item.pred in level:
                            need = level[el.item.pred] + 1
                            if level[h] < need:
                                level[h] = need
                                changed = True
        if not changed:
            break
    else:
        raise ValueError("preference layer is not stratified")
    strata: dict = {}
    for s in statements:
        if isinstance(s, FactPoolStmt):
            strata.setdefault(0, []).append(s)
        elif isinstance(s, RuleStmt) and isinstance(s.head, Lit):
            strata.setdefault(level[s.head.pred], []).append(s)
        else:
            strata.setdefault(max(level.values(), default=0) + 1, []).append(s)
    return [strata[k] for k in sorted(strata)]


def _match(lit: Lit, row: tuple, env: dict, consts) -> Optional[dict]:
    """Unify literal args against one relation row; plain unbound variables
    bind, everything else must evaluate equal."""
    if len(lit.args) != len(row):
        return None
    new = env
    copied = False
    for a, v in zip(lit.args, row):
        if isinstance(a, Var) and a.name not in new:
            if not copied:
                new = dict(new)
                copied = True
            new[a.name] = v
        else:
            try:
                if _eval(a, new, consts) != v:
                    return None
            except _Unbound:
                return None
    return new if copied else dict(env)


def _count_join(count: CountExpr, env, consts, domains, relations) -> int:
    total = 0
    for el in count.elements:
        lvars: set = set()
        if isinstance(el.item, Lit):
            for a in el.item.args:
                _expr_vars(a, lvars)
        else:
            _expr_vars(el.item.lhs, lvars)
            _expr_vars(el.item.rhs, lvars)
        cond_vars = [c.var.name for c in el.conds]
        free = [v for v in sorted(lvars) if v not in env and v not in cond_vars]
        seen = set()

        def visit(env2):
            nonlocal total
            if isinstance(el.item, Lit):
                args = tuple(_eval(a, env2, consts) for a in el.item.args)
                if args not in seen and args in relations.get(el.item.pred, ()):
                    seen.add(args)
                    total += 1
            else:
                if _cmp(el.item.op, _eval(el.item.lhs, env2, consts), _eval(el.item.rhs, env2, consts)):
                    total += 1

        def walk_conds(idx, env2):
            if idx == len(el.conds):
                visit(env2)
                return
            c = el.conds[idx]
            lo = _eval(c.lo, env2, consts)
            hi = _eval(c.hi, env2, consts)
            if c.var.name in env2:
                if lo <= env2[c.var.name] <= hi:
                    walk_conds(idx + 1, env2)
                return
            for v in range(lo, hi + 1):
                env3 = dict(env2)
                env3[c.var.name] = v
                walk_conds(idx + 1, env3)

        for combo in product(*(domains[v] for v in free)):
            env2 = dict(env)
            env2.update(zip(free, combo))
            walk_conds(0, env2)
    return total


def _eval_rule_join(stmt: RuleStmt, relations: dict, consts: dict) -> set:
    """Derive new head rows by joining the body against current relations."""
    domains = dict(stmt.var_domains)
    outer = _outer_vars(stmt)
    derived = set()
    body = list(stmt.body)

    def emit(env):
        args = tuple(_eval(a, env, consts) for a in stmt.head.args)
        derived.add(args)

    def _has_unbound(lit: Lit, env) -> bool:
        vs: set = set()
        for a in lit.args:
            _expr_vars(a, vs)
        return any(v not in env for v in vs)

    def ready(it, env) -> bool:
        vs: set = set()
        if isinstance(it, Lit):
            if it.neg:
                return not _has_unbound(it, env)
            # composite arguments cannot bind; they must be evaluable
            for a in it.args:
                if not isinstance(a, Var):
                    inner: set = set()
                    _expr_vars(a, inner)
                    if any(v not in env for v in inner):
                        return False
            return True
        if isinstance(it, Cmp):
            if it.op == "=" and isinstance(it.lhs, Var) and it.lhs.name not in env:
                vs = set()
                _expr_vars(it.rhs, vs)
                return all(v in env for v in vs)
            _item_vars(it, vs)
            return all(v in env for v in vs)
        if isinstance(it, RangeBind):
            vs = set()
            _expr_vars(it.lo, vs)
            _expr_vars(it.hi, vs)
            return all(v in env for v in vs)
        if isinstance(it, CountExpr):
            for b in (it.lower, it.upper):
                if b is not None:
                    _expr_vars(b, vs)
            # element variables shared with the rest of the statement must
            # already be bound; the remainder are aggregate-local
            for el in it.elements:
                evars: set = set()
                if isinstance(el.item, Lit):
                    for a in el.item.args:
                        _expr_vars(a, evars)
                else:
                    _expr_vars(el.item.lhs, evars)
                    _expr_vars(el.item.rhs, evars)
                cond_vars = {c.var.name for c in el.conds}
                vs.update(v for v in evars if v in outer and v not in cond_vars)
            return all(v in env for v in vs)
        return False

    def walk(pending, env):
        if not pending:
            emit(env)
            return
        for k, it in enumerate(pending):
            if not ready(it, env):
                continue
            rest = pending[:k] + pending[k + 1 :]
            if isinstance(it, Lit) and not it.neg:
                for row in relations.get(it.pred, ()):
                    env2 = _match(it, row, env, consts)
                    if env2 is not None:
                        walk(rest, env2)
                return
            if isinstance(it, Lit):
                args = tuple(_eval(a, env, consts) for a in it.args)
                if args not in relations.get(it.pred, ()):
                    walk(rest, env)
                return
            if isinstance(it, Cmp):
                if it.op == "=" and isinstance(it.lhs, Var) and it.lhs.name not in env:
                    env2 = dict(env)
                    env2[it.lhs.name] = _eval(it.rhs, env, consts)
                    walk(rest, env2)
                elif _cmp(it.op, _eval(it.lhs, env, consts), _eval(it.rhs, env, consts)):
                    walk(rest, env)
                return
            if isinstance(it, RangeBind):
                lo = _eval(it.lo, env, consts)
                hi = _eval(it.hi, env, consts)
                if it.var.name in env:
                    if lo <= env[it.var.name] <= hi:
                        walk(rest, env)
                    return
                for v in range(lo, hi + 1):
                    env2 = dict(env)
                    env2[it.var.name] = v
                    walk(rest, env2)
                return
            if isinstance(it, CountExpr):
                n = _count_join(it, env, consts, domains, relations)
                if it.bind is not None:
                    if it.bind.name in env:
                        if env[it.bind.name] == n:
                            walk(rest, env)
                        return
                    env2 = dict(env)
                    env2[it.bind.name] = n
                    walk(rest, env2)
                    return
                lower = _eval(it.lower, env, consts) if it.lower is not None else None
                upper = _eval(it.upper, env, consts) if it.upper is not None else None
                if (lower is None or n >= lower) and (upper is None or n <= upper):
                    walk(rest, env)
                return
        raise RuntimeError("no evaluable body item in %r" % stmt.tag)

    walk(body, {})
    return derived


def evaluate_global_layer(doc: AspDocument, seed_relations: dict) -> dict:
    """Bottom-up fixpoint over the cross-tuple statements."""
    consts = dict(doc.constants)
    relations = {pred: set(rows) for pred, rows in seed_relations.items()}
    global_stmts = [s for s in doc.statements if s.phase == "global"]
    for stratum in _stratify(global_stmts):
        changed = True
        while changed:
            changed = False
            for s in stratum:
                if isinstance(s, FactPoolStmt):
                    rows = relations.setdefault(s.pred, set())
                    for v in s.values:
                        if (v,) not in rows:
                            rows.add((v,))
                            changed = True
                    continue
                if not isinstance(s.head, Lit):
                    raise ValueError("cross-tuple statements must define a predicate")
                rows = relations.setdefault(s.head.pred, set())
                for args in _eval_rule_join(s, relations, consts):
                    if args not in rows:
                        rows.add(args)
                        changed = True
    return relations


# --- splitting evaluation -------------------------------------------------------


@dataclass
class EvaluatedTranslation:
    dialect: Dialect
    sigma: frozenset
    ap_tuples: tuple
    projections: dict  # tuple -> tuple of frozensets over sigma
    degrees: dict  # tuple -> degree tuple (lpod only)
    relations: dict
    criterion: Optional[str] = None

    def pas_tuples(self) -> tuple:
        return tuple(sorted(self.relations.get("pAS", ())))

    def candidate_tuples(self) -> tuple:
        if self.dialect is Dialect.CRP2:
            return tuple(sorted(self.relations.get("candidate", ())))
        return self.ap_tuples

    def _project(self, tuples) -> frozenset:
        out = set()
        for xs in tuples:
            out.update(self.projections[xs])
        return frozenset(out)

    def generalized_projections(self) -> frozenset:
        return self._project(self.ap_tuples)

    def candidate_projections(self) -> frozenset:
        return self._project(self.candidate_tuples())

    def preferred_projections(self) -> frozenset:
        return self._project(self.pas_tuples())


def _solve_tuple(doc: AspDocument, xs: tuple):
    prog = tuple_ground_program(doc, xs)
    cap = len(prog.atoms)
    best = optimal_answer_sets(prog, cap=cap)
    ap_atom = Atom("ap", xs)
    consistent = [s for s in best if ap_atom in s.atoms]
    return xs, consistent


def _solve_all(doc: AspDocument, parallel: Optional[int] = None):
    return parallel_map(lambda xs: _solve_tuple(doc, xs), doc.tuple_space(), parallel)


def eval_lpod(
    doc: AspDocument,
    p,
    criterion,
    cap: int = DEFAULT_ATOM_CAP,
    parallel: Optional[int] = None,
) -> EvaluatedTranslation:
    """Per-tuple solving plus the criterion layer as a stratified fixpoint."""
    if len(doc.sigma) > cap:
        raise CapExceeded(len(doc.sigma), cap)
    sigma = doc.sigma
    ap_tuples = []
    projections = {}
    degrees = {}
    degree_rows = set()
    for xs, models in _solve_all(doc, parallel=parallel):
        if not models:
            continue
        ap_tuples.append(xs)
        projections[xs] = tuple(
            sorted({shrink(s.atoms, xs, sigma).atoms for s in models}, key=sorted_key)
        )
        degs = None
        for s in models:
            for a in s.atoms:
                if a.predicate == "degree":
                    degs = tuple(a.args[1:])
                    degree_rows.add(tuple(a.args))
        degrees[xs] = degs
    seed = {"ap": {xs for xs in ap_tuples}, "degree": degree_rows}
    relations = evaluate_global_layer(doc, seed)
    return EvaluatedTranslation(
        dialect=Dialect.LPOD,
        sigma=sigma,
        ap_tuples=tuple(sorted(ap_tuples)),
        projections=projections,
        degrees=degrees,
        relations=relations,
        criterion=doc.criterion,
    )


def eval_crp(
    doc: AspDocument, p, cap: int = DEFAULT_ATOM_CAP, parallel: Optional[int] = None
) -> EvaluatedTranslation:
    """Per-tuple solving plus dominance/candidate/preferred layers."""
    if len(doc.sigma) > cap:
        raise CapExceeded(len(doc.sigma), cap)
    sigma = doc.sigma
    ap_tuples = []
    projections = {}
    ispref_rows = set()
    for xs, models in _solve_all(doc, parallel=parallel):
        if not models:
            continue
        ap_tuples.append(xs)
        projections[xs] = tuple(
            sorted({shrink(s.atoms, xs, sigma).atoms for s in models}, key=sorted_key)
        )
        for s in models:
            for a in s.atoms:
                if a.predicate == "isPreferred":
                    ispref_rows.add(tuple(a.args))
    seed = {"ap": {xs for xs in ap_tuples}, "isPreferred": ispref_rows}
    relations = evaluate_global_layer(doc, seed)
    return EvaluatedTranslation(
        dialect=Dialect.CRP2,
        sigma=sigma,
        ap_tuples=tuple(sorted(ap_tuples)),
        projections=projections,
        degrees={},
        relations=relations,
        criterion=None,
    )


def sorted_key(atoms: frozenset):
    return tuple(sorted(a.sort_key() for a in atoms))


def render_ground_rule(r) -> str:
    """Debug-dump text for one engine rule."""

    def atom(a):
        return str(a)

    parts = [atom(a) for a in sorted(r.pos, key=Atom.sort_key)]
    parts += ["not " + atom(a) for a in sorted(r.neg, key=Atom.sort_key)]
    for agg in r.aggregates:
        inner = "; ".join(atom(a) for a in sorted(agg.atoms, key=Atom.sort_key))
        lo = str(agg.lower) if agg.lower is not None else ""
        hi = str(agg.upper) if agg.upper is not None else ""
        fixed = "+%d" % agg.fixed if agg.fixed else ""
        parts.append("%s{%s}%s%s" % (lo, inner, hi, fixed))
    body = ", ".join(parts)
    if isinstance(r, WeakConstraint):
        terms = ", ".join(str(t) for t in r.terms)
        return ":~ %s. [%d, %s]" % (body, r.weight, terms)
    if r.head is None:
        return ":- %s." % body
    if isinstance(r.head, ChoiceHead):
        inner = "; ".join(atom(a) for a in r.head.atoms)
        lo = str(r.head.lower) if r.head.lower is not None else ""
        hi = str(r.head.upper) if r.head.upper is not None else ""
        head = "%s{%s}%s" % (lo, inner, hi)
    else:
        head = atom(r.head)
    return "%s :- %s." % (head, body) if body else "%s." % head


def dump_ground(doc: AspDocument, per_tuple: bool = True) -> str:
    """Ground text, per tuple or monolithic; for debugging translations."""
    lines = []
    if per_tuple:
        for xs in doc.tuple_space():
            lines.append("%% tuple %s" % (xs,))
            prog = tuple_ground_program(doc, xs)
            lines.extend(render_ground_rule(r) for r in prog.rules)
            lines.extend(render_ground_rule(w) for w in prog.weak)
    else:
        prog = ground_document(doc)
        lines.extend(render_ground_rule(r) for r in prog.rules)
        lines.extend(render_ground_rule(w) for w in prog.weak)
    return "\n".join(lines) + "\n"
