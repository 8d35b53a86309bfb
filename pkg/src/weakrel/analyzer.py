"""Control-flow graphs and the abstract fixpoint engine."""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from . import scalar as sc
from .bases import ConstantBasis, CongruenceBasis, IntervalBasis, IntervalCongruenceReduction
from .expr import Expr, GuardAtom, NonDet, show_atom, show_expr
from .lang import Assign, Block, If, Labeled, Program, Skip, While, negate
from .nonrel import NonRelational
from .weakrel import ProductDomain, WeaklyRelational


@dataclass(frozen=True)
class GuardAction:
    atom: GuardAtom


@dataclass(frozen=True)
class AssignAction:
    var: int
    expr: Expr


@dataclass(frozen=True)
class SkipAction:
    pass


Action = GuardAction | AssignAction | SkipAction


@dataclass
class ControlFlowGraph:
    nodes: int = 0
    edges: list[tuple[int, Action, int]] = field(default_factory=list)
    entry: int = 0
    exit: int = 0
    loop_heads: set[int] = field(default_factory=set)
    labels: dict[str, int] = field(default_factory=dict)
    names: list[str] = field(default_factory=list)
    mode: str = sc.INT

    def new_node(self) -> int:
        self.nodes += 1
        return self.nodes - 1

    def add(self, src: int, action: Action, dst: int) -> None:
        self.edges.append((src, action, dst))

    def preds(self) -> dict[int, list[tuple[int, Action]]]:
        out = {n: [] for n in range(self.nodes)}
        for s, a, d in self.edges:
            out[d].append((s, a))
        return out

    def succs(self) -> dict[int, list[int]]:
        out = {n: [] for n in range(self.nodes)}
        for s, _, d in self.edges:
            out[s].append(d)
        return out

    def reverse_postorder(self) -> list[int]:
        succ = self.succs()
        seen, post = set(), []
        stack = [(self.entry, iter(succ[self.entry]))]
        seen.add(self.entry)
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                post.append(node)
                stack.pop()
            elif nxt not in seen:
                seen.add(nxt)
                stack.append((nxt, iter(succ[nxt])))
        order = post[::-1]
        order += [n for n in range(self.nodes) if n not in seen]
        return order

    def dump(self) -> str:
        lines = [f"entry {self.entry}  exit {self.exit}  heads {sorted(self.loop_heads)}"]
        for name, n in self.labels.items():
            lines.append(f"@{name} = {n}")
        for s, a, d in self.edges:
            lines.append(f"{s} -> {d}: {describe_action(a, self.names)}")
        return "\n".join(lines)


def describe_action(a: Action, names) -> str:
    if isinstance(a, SkipAction):
        return "skip"
    if isinstance(a, AssignAction):
        return f"{names[a.var]} = {show_expr(a.expr, names)}"
    return f"guard {show_atom(a.atom, names)}"


def build_cfg(p: Program) -> ControlFlowGraph:
    """Structured translation of ``p``; every cycle passes through a
    ``while`` head."""
    g = ControlFlowGraph(names=list(p.names), mode=p.mode)
    g.entry = g.new_node()

    def stmts(body, cur):
        for s in body:
            cur = stmt(s, cur)
        return cur

    def stmt(s, cur):
        if isinstance(s, Labeled):
            g.labels[s.label] = cur
            return stmt(s.stmt, cur)
        if isinstance(s, Block):
            return stmts(s.stmts, cur)
        if isinstance(s, Assign):
            n = g.new_node()
            g.add(cur, AssignAction(s.var, s.expr), n)
            return n
        if isinstance(s, Skip):
            n = g.new_node()
            g.add(cur, SkipAction(), n)
            return n
        if isinstance(s, If):
            t, e, done = g.new_node(), g.new_node(), g.new_node()
            g.add(cur, GuardAction(s.cond), t)
            g.add(cur, GuardAction(negate(s.cond, p.mode)), e)
            g.add(stmts(s.then, t), SkipAction(), done)
            g.add(stmts(s.orelse, e), SkipAction(), done)
            return done
        if isinstance(s, While):
            head, body, out = g.new_node(), g.new_node(), g.new_node()
            g.loop_heads.add(head)
            g.add(cur, SkipAction(), head)
            g.add(head, GuardAction(s.cond), body)
            g.add(stmts(s.body, body), SkipAction(), head)
            g.add(head, GuardAction(negate(s.cond, p.mode)), out)
            return out
        raise TypeError(f"unknown statement {s!r}")

    g.exit = stmts(p.body, g.entry)
    return g


# -- domains ------------------------------------------------------------------------

DOMAINS = ("const", "interval", "congruence", "zone", "zone-congruence",
           "zone-product", "translated-eq")


def make_domain(name: str, mode: str, n: int):
    """Domain instance for ``n`` indices (zero variable included)."""
    if name == "const":
        return NonRelational(ConstantBasis(mode), n)
    if name == "interval":
        return NonRelational(IntervalBasis(mode), n)
    if name == "congruence":
        return NonRelational(CongruenceBasis(mode), n)
    if name == "zone":
        return WeaklyRelational(IntervalBasis(mode), n)
    if name == "zone-congruence":
        return WeaklyRelational(CongruenceBasis(mode), n)
    if name == "zone-product":
        cg = CongruenceBasis(mode)
        return ProductDomain(WeaklyRelational(IntervalBasis(mode), n), WeaklyRelational(cg, n),
                             IntervalCongruenceReduction(cg))
    if name == "translated-eq":
        return WeaklyRelational(ConstantBasis(mode), n)
    raise ValueError(f"unknown domain {name!r}; expected one of {', '.join(DOMAINS)}")


# -- fixpoint -----------------------------------------------------------------------


def transfer(domain, action: Action, state):
    if isinstance(action, SkipAction):
        return state
    if isinstance(action, GuardAction):
        if isinstance(action.atom, NonDet):
            return state
        return domain.guard(state, action.atom)
    return domain.assign(state, action.var, action.expr)


@dataclass
class AnalysisResult:
    cfg: ControlFlowGraph
    domain: object
    states: dict[int, object]
    iterations: int

    def at(self, label: str):
        return self.states[self.cfg.labels[label]]

    def constraints(self, label: str) -> list[str]:
        return self.domain.constraints(self.at(label), self.cfg.names)


def analyze(cfg: ControlFlowGraph, domain, widen_delay: int = 0, initial=None,
            max_iterations: int = 100_000) -> AnalysisResult:
    """Post-fixpoint of the abstract equations.

    Widening is applied only at loop heads: ``X <- X widen F(X)`` where the
    incoming value is a join (already closed for relational domains) and the
    stored head value is never closed.  The first ``widen_delay`` widenings
    at each head (not counting its first non-empty value) are replaced by
    joins.
    """
    order = cfg.reverse_postorder()
    rank = {n: r for r, n in enumerate(order)}
    preds = cfg.preds()
    succs = cfg.succs()
    init = domain.top() if initial is None else initial
    states = {n: domain.bottom() for n in range(cfg.nodes)}
    states[cfg.entry] = init
    updates = {h: 0 for h in cfg.loop_heads}
    work = [(rank[s], s) for s in set(succs[cfg.entry])]
    heapq.heapify(work)
    queued = {s for _, s in work}
    steps = 0
    while work:
        _, node = heapq.heappop(work)
        queued.discard(node)
        steps += 1
        if steps > max_iterations:
            raise RuntimeError("fixpoint iteration budget exhausted")
        incoming = domain.bottom()
        for src, action in preds[node]:
            incoming = domain.join(incoming, transfer(domain, action, states[src]))
        if node == cfg.entry:
            incoming = domain.join(incoming, init)
        old = states[node]
        if node in cfg.loop_heads:
            if domain.leq(incoming, old):
                continue
            if domain.is_bottom(old):
                new = incoming
            elif updates[node] < widen_delay:
                new = domain.join(old, incoming)
            else:
                new = domain.widen(old, incoming)
            if not domain.is_bottom(old):
                updates[node] += 1
        else:
            if domain.eq(incoming, old):
                continue
            new = incoming
        states[node] = new
        for s in succs[node]:
            if s not in queued:
                queued.add(s)
                heapq.heappush(work, (rank[s], s))
    return AnalysisResult(cfg, domain, states, steps)


def check_postfixpoint(result: AnalysisResult) -> list[tuple[int, int]]:
    """Edges whose transfer is not included in the target state."""
    d, bad = result.domain, []
    for s, a, t in result.cfg.edges:
        if not d.leq(transfer(d, a, result.states[s]), result.states[t]):
            bad.append((s, t))
    return bad


def run(text: str, domain_name: str, mode: str = sc.INT, widen_delay: int = 0) -> AnalysisResult:
    from .lang import parse
    p = parse(text, mode)
    cfg = build_cfg(p)
    return analyze(cfg, make_domain(domain_name, mode, p.nvars), widen_delay)
