"""Deterministic deviation analysis.

The engine decides, for an NFT, whether the Hamming distance between
input and output is unbounded over the accepted pairs, and computes the
exact supremum when it is finite:

1. trim; an empty result means the relation is empty (deviation 0);
2. propagate state shifts from the initial states; an inconsistency is a
   witness that the transducer is not length-preserving (deviation INF);
3. otherwise explore the alignment-configuration graph whose nodes pair a
   state with the buffer of unmatched letters (the lag).  Edges carry the
   number of freshly compared mismatching positions.  A positive-weight
   edge on a cycle of useful configurations can be pumped, so the
   deviation is INF; otherwise every cycle weighs 0 and the deviation is
   the maximum edge-weight sum over paths from an initial to an accepting
   configuration, computed over the condensation order.

For a length-preserving trimmed transducer every lag stays within the
state-shift bound b = min(smax * |Q|, repr_size), so the graph is finite;
its size is still exponential in b in the worst case, hence the
max_configs budget.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum

from .core import INF, ExtendedNat, Nft, Run, hamming_distance, run_words, stats
from .transform import is_trim, trim_with_maps

DEFAULT_MAX_CONFIGS = 2**20


class StateBudgetExceeded(RuntimeError):
    """Raised when the configuration graph outgrows max_configs."""


@dataclass(frozen=True)
class Bounds:
    """The four size bounds attached to an analysis.

    b bounds every state shift, B = (b + lmax + 2) * |Q| bounds the
    deviation of any bounded transducer, Lconj and Lwit are the witness
    length bounds of the nonconjugate-cycle and threshold searches.
    """

    b: int
    B: int
    Lconj: int
    Lwit: int

    @classmethod
    def from_nft(cls, t: Nft) -> "Bounds":
        st = stats(t)
        n = st.num_states
        b = min(st.smax * n, st.repr_size)
        return cls(
            b=b,
            B=(b + st.lmax + 2) * n,
            Lconj=2 * n + 2 * st.smax * n * n,
            Lwit=8 * st.smax * n * n * n,
        )


@dataclass(frozen=True)
class ShiftConflict:
    """Evidence that no consistent shift assignment exists.

    Either two initial runs reach `state` with different shifts
    (run_b is the second run), or run_a is an initial run reaching the
    final state `state` with nonzero shift (run_b is None).
    """

    state: int
    run_a: Run
    run_b: Run | None = None


@dataclass(frozen=True)
class ShiftAssignment:
    """The state-shift potential map s_p of a trimmed transducer.

    When consistent, every initial run to p has shift per_state[p], all
    initial and final states have shift 0, and s_q = s_p + shift(d) holds
    for every transition d from p to q; this is equivalent to the
    transducer being length-preserving.
    """

    per_state: dict[int, int]
    consistent: bool
    conflict_witness: ShiftConflict | None = None


@dataclass(frozen=True)
class AlignmentConfig:
    """A node of the analysis graph: a state plus the unmatched lag.

    side is 0 when input and output are even (lag empty), +1 when the
    input is ahead by the letters of `lag`, -1 when the output is ahead.
    """

    state: int
    side: int
    lag: str = ""

    def __post_init__(self):
        if self.side not in (-1, 0, 1):
            raise ValueError("side must be -1, 0 or +1")
        if (self.side == 0) != (self.lag == ""):
            raise ValueError("lag must be nonempty exactly on the ahead sides")

    @classmethod
    def even(cls, state: int) -> "AlignmentConfig":
        return cls(state, 0, "")

    @classmethod
    def input_ahead(cls, state: int, lag: str) -> "AlignmentConfig":
        return cls(state, 1, lag)

    @classmethod
    def output_ahead(cls, state: int, lag: str) -> "AlignmentConfig":
        return cls(state, -1, lag)


class Verdict(str, Enum):
    BOUNDED = "bounded"
    UNBOUNDED = "unbounded"
    NOT_LENGTH_PRESERVING = "not-length-preserving"
    EMPTY = "empty"


@dataclass(frozen=True)
class DeviationResult:
    """Outcome of analyze_deviation.

    value is the exact deviation for BOUNDED, 0 for EMPTY, None otherwise.
    witness is a maximum-mismatch accepting run (BOUNDED) or an accepting
    run with unequal word lengths (NOT_LENGTH_PRESERVING).  For UNBOUNDED,
    cycle_witness is a mismatching run from anchor_state to itself, and
    cycle_prefix/cycle_suffix complete it to a pumpable accepting run.
    All runs, states and the embedded shift assignment use the identifiers
    of the analyzed (original) Nft, even though the analysis trims first.
    """

    verdict: Verdict
    bounds: Bounds
    value: int | None = None
    witness: Run | None = None
    cycle_witness: Run | None = None
    anchor_state: int | None = None
    cycle_prefix: Run | None = None
    cycle_suffix: Run | None = None
    shift: ShiftAssignment | None = None

    @property
    def deviation(self) -> ExtendedNat:
        if self.verdict in (Verdict.BOUNDED, Verdict.EMPTY):
            return self.value if self.value is not None else 0
        return INF

    @property
    def length_preserving(self) -> bool:
        return self.verdict is not Verdict.NOT_LENGTH_PRESERVING

    @property
    def bounded(self) -> bool:
        return self.verdict in (Verdict.BOUNDED, Verdict.EMPTY)


def _by_src(t: Nft) -> list[list[tuple[int, object]]]:
    adj: list[list[tuple[int, object]]] = [[] for _ in range(t.num_states)]
    for i, tr in enumerate(t.transitions):
        adj[tr.src].append((i, tr))
    return adj


def _parent_chain(parent: dict[int, tuple[int, int] | None], q: int) -> tuple[int, ...]:
    steps: list[int] = []
    while parent[q] is not None:
        q, idx = parent[q]
        steps.append(idx)
    steps.reverse()
    return tuple(steps)


def shift_assignment(t: Nft) -> ShiftAssignment:
    """Propagate the shift potential s_p from the initial states.

    Requires a trimmed transducer.  Returns an inconsistency witness when
    two initial runs disagree on some state's shift or a final state ends
    with nonzero shift; consistency is equivalent to length preservation.
    """
    if not is_trim(t):
        raise ValueError("engine requires trimmed Nft")
    adj = _by_src(t)
    s: dict[int, int] = {}
    parent: dict[int, tuple[int, int] | None] = {}
    queue: deque[int] = deque()
    for q in sorted(t.initials):
        s[q] = 0
        parent[q] = None
        queue.append(q)
    conflict = None
    while queue and conflict is None:
        p = queue.popleft()
        for idx, tr in adj[p]:
            val = s[p] + tr.shift
            q = tr.dst
            if q not in s:
                s[q] = val
                parent[q] = (p, idx)
                queue.append(q)
            elif s[q] != val:
                conflict = ShiftConflict(
                    state=q,
                    run_a=Run(_parent_chain(parent, p) + (idx,)),
                    run_b=Run(_parent_chain(parent, q)),
                )
                break
    if conflict is None:
        for f in sorted(t.finals):
            if s[f] != 0:
                conflict = ShiftConflict(state=f, run_a=Run(_parent_chain(parent, f)))
                break
    return ShiftAssignment(per_state=s, consistent=conflict is None, conflict_witness=conflict)


def _path_to_final(t: Nft, start: int) -> tuple[int, ...]:
    """Transitions of a shortest run from `start` to some final state."""
    if start in t.finals:
        return ()
    adj = _by_src(t)
    parent: dict[int, tuple[int, int]] = {}
    seen = {start}
    queue = deque([start])
    while queue:
        p = queue.popleft()
        for idx, tr in adj[p]:
            if tr.dst in seen:
                continue
            seen.add(tr.dst)
            parent[tr.dst] = (p, idx)
            if tr.dst in t.finals:
                steps = []
                q = tr.dst
                while q != start:
                    q, i = parent[q]
                    steps.append(i)
                steps.reverse()
                return tuple(steps)
            queue.append(tr.dst)
    raise AssertionError("trimmed state cannot reach a final state")


def _unbalanced_accepting_run(t: Nft, conflict: ShiftConflict) -> Run:
    """Turn a shift conflict into an accepting run with |u| != |v|."""
    if conflict.run_b is None:
        return conflict.run_a
    ext = _path_to_final(t, conflict.state)
    for base in (conflict.run_a, conflict.run_b):
        steps = base.transitions + ext
        if sum(t.transitions[i].shift for i in steps) != 0:
            return Run(steps)
    raise AssertionError("conflicting runs cannot both extend to balanced accepting runs")


def _advance(side: int, lag: str, x: str, y: str) -> tuple[int, str, int]:
    """Align one transition against the pending lag.

    Returns (new_side, new_lag, mismatches) after appending x to the input
    stream and y to the output stream and comparing the overlap.
    """
    pin = lag + x if side > 0 else x
    pout = lag + y if side < 0 else y
    k = min(len(pin), len(pout))
    w = 0
    for i in range(k):
        if pin[i] != pout[i]:
            w += 1
    if len(pin) > k:
        return 1, pin[k:], w
    if len(pout) > k:
        return -1, pout[k:], w
    return 0, "", w


@dataclass
class _Pending:
    """Config graph of a trimmed, length-preserving transducer, ready for
    the longest-path computation."""

    trimmed: Nft
    state_map: list[int]
    trans_map: list[int]
    bounds: Bounds
    shift: ShiftAssignment
    nodes: list[tuple[int, int, str]]
    succ: list[list[tuple[int, int, int]]]
    parent: list[tuple[int, int] | None]
    starts: list[int]
    accepts: list[int]
    useful: set[int]
    comp: list[int]
    comps: list[list[int]]
    result: DeviationResult | None = field(default=None)


def _map_run(steps, trans_map) -> Run:
    return Run(tuple(trans_map[i] for i in steps))


def _map_shift(sa: ShiftAssignment, state_map, trans_map) -> ShiftAssignment:
    """Re-express a trimmed-id shift assignment in original identifiers."""
    conflict = sa.conflict_witness
    if conflict is not None:
        conflict = ShiftConflict(
            state=state_map[conflict.state],
            run_a=_map_run(conflict.run_a.transitions, trans_map),
            run_b=None
            if conflict.run_b is None
            else _map_run(conflict.run_b.transitions, trans_map),
        )
    return ShiftAssignment(
        per_state={state_map[q]: v for q, v in sa.per_state.items()},
        consistent=sa.consistent,
        conflict_witness=conflict,
    )


def _build_graph(trimmed: Nft, sa: ShiftAssignment, bounds: Bounds, max_configs: int):
    adj = _by_src(trimmed)
    nodes: list[tuple[int, int, str]] = []
    node_id: dict[tuple[int, int, str], int] = {}
    succ: list[list[tuple[int, int, int]]] = []
    parent: list[tuple[int, int] | None] = []

    def intern(key, origin):
        nid = node_id.get(key)
        if nid is None:
            if len(nodes) >= max_configs:
                raise StateBudgetExceeded("state budget exceeded")
            nid = len(nodes)
            node_id[key] = nid
            nodes.append(key)
            succ.append([])
            parent.append(origin)
        return nid

    starts = [intern((q, 0, ""), None) for q in sorted(trimmed.initials)]
    queue = deque(starts)
    explored = set(starts)
    while queue:
        nid = queue.popleft()
        q, side, lag = nodes[nid]
        for ti, tr in adj[q]:
            nside, nlag, w = _advance(side, lag, tr.input, tr.output)
            if len(nlag) > bounds.b:
                raise AssertionError(
                    "lag exceeded the state-shift bound on a length-preserving transducer"
                )
            kid = intern((tr.dst, nside, nlag), (nid, ti))
            succ[nid].append((kid, w, ti))
            if kid not in explored:
                explored.add(kid)
                queue.append(kid)
    accepts = [
        i for i, (q, side, _) in enumerate(nodes) if side == 0 and q in trimmed.finals
    ]
    return nodes, succ, parent, starts, accepts


def _co_reachable(succ, accepts) -> set[int]:
    pred: list[list[int]] = [[] for _ in succ]
    for u, edges in enumerate(succ):
        for v, _, _ in edges:
            pred[v].append(u)
    seen = set(accepts)
    queue = deque(accepts)
    while queue:
        v = queue.popleft()
        for u in pred[v]:
            if u not in seen:
                seen.add(u)
                queue.append(u)
    return seen


def _tarjan(n: int, succ, active: set[int]) -> tuple[list[int], list[list[int]]]:
    """Strongly connected components of the useful subgraph.

    Returns (comp, comps) where comps is in Tarjan pop order, i.e. the
    reverse topological order of the condensation.
    """
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comp = [-1] * n
    comps: list[list[int]] = []
    counter = 0
    for root in range(n):
        if root not in active or index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            descended = False
            edges = succ[v]
            while pi < len(edges):
                w = edges[pi][0]
                pi += 1
                if w not in active:
                    continue
                if index[w] == -1:
                    work[-1] = (v, pi)
                    work.append((w, 0))
                    descended = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if descended:
                continue
            work.pop()
            if low[v] == index[v]:
                members = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = len(comps)
                    members.append(w)
                    if w == v:
                        break
                members.sort()
                comps.append(members)
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
    return comp, comps


def _bfs_edge_path(succ, allowed, src: int, targets: set[int]) -> list[int]:
    """Transition indices of a shortest edge path from src to a target,
    following only edges between `allowed` nodes."""
    if src in targets:
        return []
    parent: dict[int, tuple[int, int]] = {}
    seen = {src}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        for v, _, ti in succ[u]:
            if v not in allowed or v in seen:
                continue
            seen.add(v)
            parent[v] = (u, ti)
            if v in targets:
                steps = []
                w = v
                while w != src:
                    w, i = parent[w]
                    steps.append(i)
                steps.reverse()
                return steps
            queue.append(v)
    raise AssertionError("no path inside the strongly connected component")


def _prepare(t: Nft, max_configs: int) -> _Pending:
    trimmed, state_map, trans_map = trim_with_maps(t)
    bounds = Bounds.from_nft(trimmed)
    pending = _Pending(
        trimmed=trimmed,
        state_map=state_map,
        trans_map=trans_map,
        bounds=bounds,
        shift=None,  # type: ignore[arg-type]
        nodes=[],
        succ=[],
        parent=[],
        starts=[],
        accepts=[],
        useful=set(),
        comp=[],
        comps=[],
    )
    if trimmed.num_states == 0:
        pending.result = DeviationResult(verdict=Verdict.EMPTY, bounds=bounds, value=0)
        return pending

    sa = shift_assignment(trimmed)
    pending.shift = _map_shift(sa, state_map, trans_map)
    if not sa.consistent:
        witness = _unbalanced_accepting_run(trimmed, sa.conflict_witness)
        pending.result = DeviationResult(
            verdict=Verdict.NOT_LENGTH_PRESERVING,
            bounds=bounds,
            witness=_map_run(witness.transitions, trans_map),
            shift=pending.shift,
        )
        return pending

    nodes, succ, parent, starts, accepts = _build_graph(trimmed, sa, bounds, max_configs)
    useful = _co_reachable(succ, accepts)
    # every discovered node is reachable; useful = reachable and co-reachable
    fsucc = [
        [(v, w, ti) for v, w, ti in edges if v in useful] if u in useful else []
        for u, edges in enumerate(succ)
    ]
    comp, comps = _tarjan(len(nodes), fsucc, useful)

    pending.nodes = nodes
    pending.succ = fsucc
    pending.parent = parent
    pending.starts = starts
    pending.accepts = [a for a in accepts if a in useful]
    pending.useful = useful
    pending.comp = comp
    pending.comps = comps

    for u in sorted(useful):
        for v, w, ti in fsucc[u]:
            if w > 0 and comp[u] == comp[v]:
                pending.result = _unbounded_result(pending, u, v, ti)
                return pending
    return pending


def _unbounded_result(p: _Pending, u: int, v: int, ti: int) -> DeviationResult:
    members = set(p.comps[p.comp[u]])
    cycle = [ti] + _bfs_edge_path(p.succ, members, v, {u})
    prefix = list(_parent_chain_nodes(p.parent, u))
    suffix = _bfs_edge_path(p.succ, p.useful, u, set(p.accepts))
    anchor = p.state_map[p.nodes[u][0]]
    return DeviationResult(
        verdict=Verdict.UNBOUNDED,
        bounds=p.bounds,
        cycle_witness=_map_run(cycle, p.trans_map),
        anchor_state=anchor,
        cycle_prefix=_map_run(prefix, p.trans_map),
        cycle_suffix=_map_run(suffix, p.trans_map),
        shift=p.shift,
    )


def _parent_chain_nodes(parent, nid: int) -> tuple[int, ...]:
    steps = []
    while parent[nid] is not None:
        nid, ti = parent[nid]
        steps.append(ti)
    steps.reverse()
    return tuple(steps)


def _longest_path(p: _Pending) -> DeviationResult:
    """Maximum-weight start-to-accept path over the condensation.

    All cycles weigh 0 at this point, so the value is a plain DP in the
    reverse topological order Tarjan produced; ties are broken by the
    smallest node id, which makes the reconstructed witness deterministic.
    """
    accept_set = set(p.accepts)
    n_comps = len(p.comps)
    best = [-1] * n_comps
    choice: list[tuple | None] = [None] * n_comps
    for ci, members in enumerate(p.comps):
        b = -1
        ch = None
        for m in members:
            if m in accept_set:
                b = 0
                ch = ("accept", m)
                break
        for u in members:
            for v, w, ti in p.succ[u]:
                cj = p.comp[v]
                if cj == ci or best[cj] < 0:
                    continue
                cand = w + best[cj]
                if cand > b:
                    b = cand
                    ch = ("edge", u, v, ti)
        best[ci] = b
        choice[ci] = ch

    start = max(p.starts, key=lambda s: (best[p.comp[s]], -s))
    value = best[p.comp[start]]
    assert value >= 0, "useful start configuration must reach acceptance"

    steps: list[int] = []
    cur = start
    while True:
        ch = choice[p.comp[cur]]
        members = set(p.comps[p.comp[cur]])
        if ch[0] == "accept":
            steps.extend(_bfs_edge_path(p.succ, members, cur, {ch[1]}))
            break
        _, u, v, ti = ch
        steps.extend(_bfs_edge_path(p.succ, members, cur, {u}))
        steps.append(ti)
        cur = v

    u, vv = run_words(p.trimmed, Run(tuple(steps)))
    assert hamming_distance(u, vv) == value, "witness must realize the computed deviation"
    assert value <= p.bounds.B, "bounded deviation exceeds the quadratic bound"
    return DeviationResult(
        verdict=Verdict.BOUNDED,
        bounds=p.bounds,
        value=value,
        witness=_map_run(steps, p.trans_map),
        shift=p.shift,
    )


def analyze_deviation(t: Nft, max_configs: int = DEFAULT_MAX_CONFIGS) -> DeviationResult:
    """Full deviation analysis of an arbitrary Nft (trims internally).

    Raises StateBudgetExceeded when the configuration graph would exceed
    max_configs nodes.
    """
    pending = _prepare(t, max_configs)
    if pending.result is not None:
        return pending.result
    return _longest_path(pending)


def is_bounded(t: Nft, max_configs: int = DEFAULT_MAX_CONFIGS) -> bool:
    """True iff the deviation is finite (the empty relation counts as 0)."""
    pending = _prepare(t, max_configs)
    if pending.result is not None:
        return pending.result.verdict is Verdict.EMPTY
    return True


def threshold(t: Nft, k: int, max_configs: int = DEFAULT_MAX_CONFIGS) -> bool:
    """True iff the deviation is at most k.

    k may be arbitrarily large (it arrives in binary from the CLI); when
    k is at least the quadratic bound B the answer for a bounded
    transducer is True without computing the exact value.
    """
    if k < 0:
        raise ValueError("threshold expects a natural number")
    pending = _prepare(t, max_configs)
    if pending.result is not None:
        if pending.result.verdict is Verdict.EMPTY:
            return True
        return False
    if k >= pending.bounds.B:
        return True
    return _longest_path(pending).value <= k


def exact(t: Nft, k: int, max_configs: int = DEFAULT_MAX_CONFIGS) -> bool:
    """True iff the deviation is finite and equal to k."""
    if k < 0:
        raise ValueError("exact expects a natural number")
    res = analyze_deviation(t, max_configs)
    if res.verdict is Verdict.EMPTY:
        return k == 0
    if res.verdict is Verdict.BOUNDED:
        return res.value == k
    return False
