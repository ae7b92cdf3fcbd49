"""Hardness-instance generators with independently computed ground truth.

Each generator returns a GadgetInstance: the transducer plus the expected
analysis answer, computed from the source object by direct means (graph
search, 2^n satisfiability enumeration, closed forms), never by the
deviation engine itself.  The instances realize the classic reductions:
graph reachability into (threshold-)boundedness, 3-SAT into a threshold
query, SAT-UNSAT into an exact-deviation query, plus the quadratic
deviation family.
"""

from __future__ import annotations

from collections import deque
from dataclasses import asdict, dataclass

from .core import Nft, Transition
from .oracle import sat_brute_force
from .transform import concat, union


@dataclass(frozen=True)
class Digraph:
    """A directed graph with two distinguished vertices s and t."""

    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    s: int
    t: int

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple((int(u), int(v)) for u, v in self.edges))
        if self.vertex_count < 1:
            raise ValueError("need at least one vertex")
        for u, v in self.edges:
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise ValueError(f"edge ({u}, {v}) out of range")
        if not (0 <= self.s < self.vertex_count and 0 <= self.t < self.vertex_count):
            raise ValueError("s or t out of range")


def reachable(g: Digraph) -> bool:
    """True iff t is reachable from s (the empty path counts)."""
    if g.s == g.t:
        return True
    adj: list[list[int]] = [[] for _ in range(g.vertex_count)]
    for u, v in g.edges:
        adj[u].append(v)
    seen = {g.s}
    queue = deque([g.s])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v == g.t:
                return True
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return False


@dataclass(frozen=True)
class CnfFormula:
    """A 3-CNF formula: clauses are triples of signed 1-based variables."""

    num_vars: int
    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
        if self.num_vars < 1:
            raise ValueError("need at least one variable")
        for clause in self.clauses:
            if len(clause) != 3:
                raise ValueError(f"clause {clause} must have exactly 3 literals")
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"literal {lit} out of range")

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)


@dataclass(frozen=True)
class GroundTruth:
    """Expected analysis answers, recomputable from generator parameters."""

    bounded: bool | None = None
    deviation: int | None = None
    threshold_k: int | None = None
    threshold_answer: bool | None = None
    exact_k: int | None = None
    exact_answer: bool | None = None

    def to_dict(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}


@dataclass(frozen=True)
class GadgetInstance:
    nft: Nft
    expected: GroundTruth
    provenance: str


def gen_family(n: int) -> GadgetInstance:
    """The quadratic-deviation family T_n: 2n states, 3n-1 transitions,
    smax = 1 and deviation exactly n(n+1)/2.

    State p_i copies the letter c_i = i mod 2 any number of times, then
    consumes one more c_i silently when advancing; the bridge flips the
    last letter and the q-chain pads the output with n copies of the
    flipped letter.  Reading c1^(k1+1)...cn^(kn+1) therefore outputs
    c1^k1...cn^kn followed by the n-letter pad, and choosing k_i = i - 1
    makes every position mismatch.
    """
    if n < 2:
        raise ValueError("family size must be at least 2")

    def c(i: int) -> str:
        return str(i % 2)

    flipped = str((n + 1) % 2)
    states = tuple(f"p{i}" for i in range(1, n + 1)) + tuple(f"q{i}" for i in range(1, n + 1))
    p = {i: i - 1 for i in range(1, n + 1)}
    q = {i: n + i - 1 for i in range(1, n + 1)}
    transitions = [Transition(p[i], c(i), c(i), p[i]) for i in range(1, n + 1)]
    transitions += [Transition(p[i], c(i), "", p[i + 1]) for i in range(1, n)]
    transitions.append(Transition(p[n], c(n), flipped, q[1]))
    transitions += [Transition(q[j], "", flipped, q[j + 1]) for j in range(1, n)]
    nft = Nft(
        states=states,
        alphabet=frozenset("01"),
        initials=frozenset({p[1]}),
        finals=frozenset({q[n]}),
        transitions=tuple(transitions),
        name=f"family{n}",
    )
    dev = n * (n + 1) // 2
    expected = GroundTruth(bounded=True, deviation=dev, exact_k=dev, exact_answer=True)
    return GadgetInstance(nft=nft, expected=expected, provenance=f"family(n={n})")


def _reach_base(g: Digraph) -> tuple[tuple[str, ...], dict[int, int], int, int, list[Transition]]:
    states = ("qi",) + tuple(f"v{i}" for i in range(g.vertex_count)) + ("qf",)
    vid = {i: i + 1 for i in range(g.vertex_count)}
    qi = 0
    qf = g.vertex_count + 1
    transitions = [Transition(qi, "a", "a", vid[v]) for v in range(g.vertex_count)]
    transitions += [Transition(vid[v], "a", "a", qf) for v in range(g.vertex_count)]
    transitions += [Transition(vid[u], "a", "a", vid[v]) for u, v in g.edges]
    return states, vid, qi, qf, transitions


def gen_reach_bounded(g: Digraph) -> GadgetInstance:
    """Reachability into boundedness: the graph is embedded with (a, a)
    transitions, and a single mismatching transition from t back to s
    closes a pumpable cycle exactly when an s->t path exists."""
    states, vid, qi, qf, transitions = _reach_base(g)
    transitions.append(Transition(vid[g.t], "a", "b", vid[g.s]))
    nft = Nft(
        states=states,
        alphabet=frozenset("ab"),
        initials=frozenset({qi}),
        finals=frozenset({qf}),
        transitions=tuple(transitions),
        name=f"reach{g.vertex_count}",
    )
    path = reachable(g)
    expected = GroundTruth(bounded=not path, deviation=None if path else 1)
    prov = f"reach_bounded(|V|={g.vertex_count}, |E|={len(g.edges)}, s={g.s}, t={g.t})"
    return GadgetInstance(nft=nft, expected=expected, provenance=prov)


def gen_reach_threshold(g: Digraph, k: int) -> GadgetInstance:
    """Reachability into a fixed threshold: an a^k/b^k entry transition
    always yields k mismatches, and one extra mismatch before the final
    state is collectable exactly when an s->t path exists (deviation k+1
    versus k)."""
    if k < 1:
        raise ValueError("threshold parameter must be at least 1")
    states, vid, qi, qf, transitions = _reach_base(g)
    transitions.append(Transition(qi, "a" * k, "b" * k, vid[g.s]))
    transitions.append(Transition(vid[g.t], "a", "b", qf))
    nft = Nft(
        states=states,
        alphabet=frozenset("ab"),
        initials=frozenset({qi}),
        finals=frozenset({qf}),
        transitions=tuple(transitions),
        name=f"reachk{g.vertex_count}",
    )
    path = reachable(g)
    expected = GroundTruth(
        bounded=True,
        deviation=k + 1 if path else k,
        threshold_k=k,
        threshold_answer=not path,
        exact_k=k + 1,
        exact_answer=path,
    )
    prov = f"reach_threshold(|V|={g.vertex_count}, |E|={len(g.edges)}, s={g.s}, t={g.t}, k={k})"
    return GadgetInstance(nft=nft, expected=expected, provenance=prov)


def _flip(b: str) -> str:
    return "1" if b == "0" else "0"


def _init_gadget(n: int) -> Nft:
    states = tuple(f"i{j}" for j in range(n + 1))
    transitions = [
        Transition(j, "", b, j + 1) for j in range(n) for b in "01"
    ]
    return Nft(states, frozenset("01"), {0}, {n}, tuple(transitions), name="init")


def _final_gadget(n: int) -> Nft:
    states = tuple(f"f{j}" for j in range(n + 1))
    transitions = [
        Transition(j, b, "", j + 1) for j in range(n) for b in "01"
    ]
    return Nft(states, frozenset("01"), {0}, {n}, tuple(transitions), name="final")


def _clause_gadget(i: int, n: int, clause: tuple[int, int, int]) -> Nft:
    """Reads an n-bit valuation, writes its bitwise negation, and accepts
    exactly when the valuation satisfies the clause: the only way from the
    bottom row of states to the top row is a transition triggered by a
    literal of the clause."""
    bot = {j: j for j in range(n + 1)}
    top = {j: n + 1 + j for j in range(n + 1)}
    states = tuple(f"c{i}b{j}" for j in range(n + 1)) + tuple(f"c{i}t{j}" for j in range(n + 1))
    transitions = [
        Transition(top[j], b, _flip(b), top[j + 1]) for j in range(n) for b in "01"
    ]
    transitions += [
        Transition(bot[j], b, _flip(b), bot[j + 1]) for j in range(n) for b in "01"
    ]
    seen = set()
    for lit in clause:
        var = abs(lit)
        key = (var, lit > 0)
        if key in seen:
            continue
        seen.add(key)
        if lit > 0:
            transitions.append(Transition(bot[var - 1], "1", "0", top[var]))
        else:
            transitions.append(Transition(bot[var - 1], "0", "1", top[var]))
    return Nft(
        states,
        frozenset("01"),
        {bot[0]},
        {top[n]},
        tuple(transitions),
        name=f"clause{i}",
    )


def gen_3sat(f: CnfFormula) -> GadgetInstance:
    """3-SAT into the threshold problem with k = n(m+1) - 1.

    The chain init . clause_1 ... clause_m . final forces every accepted
    pair to interleave m+1 valuation blocks against the negations of
    their predecessors; all n(m+1) positions can mismatch exactly when a
    single valuation satisfies every clause.  The construction is emitted
    unmodified (untrimmed), with (2n+1)(m+1) states.
    """
    n = f.num_vars
    m = f.num_clauses
    nft = _init_gadget(n)
    for i, clause in enumerate(f.clauses, start=1):
        nft = concat(nft, _clause_gadget(i, n, clause))
    nft = concat(nft, _final_gadget(n))
    nft = Nft(
        states=nft.states,
        alphabet=nft.alphabet,
        initials=nft.initials,
        finals=nft.finals,
        transitions=nft.transitions,
        name=f"sat3_n{n}m{m}",
    )
    assert nft.num_states == (2 * n + 1) * (m + 1)
    sat = sat_brute_force(f) is not None
    k = n * (m + 1) - 1
    expected = GroundTruth(
        bounded=True,
        deviation=n * (m + 1) if sat else None,
        threshold_k=k,
        threshold_answer=not sat,
    )
    return GadgetInstance(nft=nft, expected=expected, provenance=f"gen_3sat({f})")


def gen_sat_unsat(f1: CnfFormula, f2: CnfFormula) -> GadgetInstance:
    """SAT-UNSAT into the exact problem.

    With k_i = n_i(m_i + 1) (the deviation of the 3-SAT gadget when the
    formula is satisfiable), the transducer k2-copies of T(f1), followed
    by the choice between T(f2) and a fixed pair at distance k2 - 1, has
    deviation exactly k1 k2 + k2 - 1 iff f1 is satisfiable and f2 is not:
    the padding branch pins the second summand to k2 - 1 from below, and
    a satisfiable f2 overshoots it to k2.
    """
    g1 = gen_3sat(f1)
    g2 = gen_3sat(f2)
    k1 = f1.num_vars * (f1.num_clauses + 1)
    k2 = f2.num_vars * (f2.num_clauses + 1)
    repeated = g1.nft
    for _ in range(k2 - 1):
        repeated = concat(repeated, g1.nft)
    pad = Nft(
        states=("z0", "z1"),
        alphabet=frozenset("01"),
        initials=frozenset({0}),
        finals=frozenset({1}),
        transitions=(Transition(0, "0" * (k2 - 1), "1" * (k2 - 1), 1),),
        name="pad",
    )
    nft = concat(repeated, union(g2.nft, pad))
    nft = Nft(
        states=nft.states,
        alphabet=nft.alphabet,
        initials=nft.initials,
        finals=nft.finals,
        transitions=nft.transitions,
        name=f"satunsat_{f1.num_vars}v{f1.num_clauses}c_{f2.num_vars}v{f2.num_clauses}c",
    )
    sat1 = sat_brute_force(f1) is not None
    sat2 = sat_brute_force(f2) is not None
    target = k1 * k2 + k2 - 1
    if sat1:
        deviation = target if not sat2 else k1 * k2 + k2
    else:
        deviation = None
    expected = GroundTruth(
        bounded=True,
        deviation=deviation,
        exact_k=target,
        exact_answer=sat1 and not sat2,
    )
    prov = f"gen_sat_unsat({f1}, {f2})"
    return GadgetInstance(nft=nft, expected=expected, provenance=prov)
