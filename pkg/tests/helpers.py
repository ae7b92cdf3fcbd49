"""Shared test utilities: random instance generators and independent
reference implementations used to cross-check the library."""

from __future__ import annotations

import random

from nftdev import INF, Nft, Transition, hamming_distance, trim

ALPHABET = ("a", "b")

# word pairs with |u| + |v| <= 2, weighted toward the length-preserving
# shapes so that bounded and unbounded instances stay well represented
_WORD_PAIRS = (
    [("a", "a")] * 10
    + [("b", "b")] * 10
    + [("a", "b")] * 3
    + [("b", "a")] * 3
    + [("a", ""), ("b", ""), ("", "a"), ("", "b")]
    + [("aa", ""), ("", "bb"), ("ab", ""), ("", "ba")]
    + [("", "")]
)


def random_trimmed_nft(rng: random.Random, max_states: int = 5, max_transitions: int = 8):
    """One random trimmed NFT with |Q| <= 5, |Sigma| = 2, lmax <= 2 and at
    most 8 transitions, or None when trimming empties the draw."""
    nq = rng.randint(1, max_states)
    ntr = rng.randint(1, max_transitions)
    transitions = []
    for _ in range(ntr):
        u, v = rng.choice(_WORD_PAIRS)
        transitions.append(Transition(rng.randrange(nq), u, v, rng.randrange(nq)))
    initials = {rng.randrange(nq)}
    finals = {rng.randrange(nq)}
    if rng.random() < 0.3:
        finals.add(rng.randrange(nq))
    t = Nft(
        states=tuple(f"s{i}" for i in range(nq)),
        alphabet=frozenset(ALPHABET),
        initials=frozenset(initials),
        finals=frozenset(finals),
        transitions=tuple(transitions),
        name="rand",
    )
    trimmed = trim(t)
    return trimmed if trimmed.num_states > 0 else None


def make_corpus(count: int, seed: int) -> list[Nft]:
    rng = random.Random(seed)
    corpus = []
    while len(corpus) < count:
        t = random_trimmed_nft(rng)
        if t is not None:
            corpus.append(t)
    return corpus


def random_digraph(rng: random.Random, max_vertices: int = 12, density=(0.05, 0.4)):
    from nftdev import Digraph

    n = rng.randint(2, max_vertices)
    p = rng.uniform(*density)
    edges = tuple(
        (u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p
    )
    return Digraph(vertex_count=n, edges=edges, s=rng.randrange(n), t=rng.randrange(n))


def random_cnf(rng: random.Random, max_vars: int = 5, max_clauses: int = 6):
    from nftdev import CnfFormula

    n = rng.randint(1, max_vars)
    m = rng.randint(1, max_clauses)
    clauses = []
    for _ in range(m):
        clause = tuple(rng.randrange(1, n + 1) * rng.choice((1, -1)) for _ in range(3))
        clauses.append(clause)
    return CnfFormula(num_vars=n, clauses=tuple(clauses))


def random_unsat_cnf(rng: random.Random, max_vars: int = 5, max_clauses: int = 6):
    """Random formula with an embedded contradiction (so unsatisfiable);
    small random 3-CNFs are almost always satisfiable otherwise."""
    from nftdev import CnfFormula

    n = rng.randint(1, max_vars)
    m = rng.randint(2, max_clauses)
    v = rng.randint(1, n)
    clauses = [(v, v, v), (-v, -v, -v)]
    while len(clauses) < m:
        clauses.append(tuple(rng.randrange(1, n + 1) * rng.choice((1, -1)) for _ in range(3)))
    rng.shuffle(clauses)
    return CnfFormula(num_vars=n, clauses=tuple(clauses))


def random_cnf_mixed(rng: random.Random, max_vars: int, max_clauses: int, unsat_bias: float):
    if rng.random() < unsat_bias:
        return random_unsat_cnf(rng, max_vars, max_clauses)
    return random_cnf(rng, max_vars, max_clauses)


def literal_max_distance(t: Nft, max_run_len: int):
    """Reference semantics for the oracle: literal DFS over every accepting
    run of at most max_run_len transitions, no memoization.  Returns the
    maximum distance seen (INF included), -1 when no accepting run exists.
    Only usable on small instances."""
    adj = [[] for _ in range(t.num_states)]
    for tr in t.transitions:
        adj[tr.src].append(tr)
    best = -1

    def visit(state, u, v, depth):
        nonlocal best
        if state in t.finals:
            d = hamming_distance(u, v)
            if d == INF:
                best = INF
            elif best != INF and d > best:
                best = d
        if depth == max_run_len or best == INF:
            return
        for tr in adj[state]:
            visit(tr.dst, u + tr.input, v + tr.output, depth + 1)

    for q in sorted(t.initials):
        visit(q, "", "", 0)
        if best == INF:
            break
    return best


def enumerate_pairs_total(t: Nft, max_total: int) -> set[tuple[str, str]]:
    """All accepted pairs with |u| + |v| <= max_total (exact)."""
    from collections import deque

    adj = [[] for _ in range(t.num_states)]
    for tr in t.transitions:
        adj[tr.src].append(tr)
    seen = {(q, "", "") for q in t.initials}
    queue = deque(seen)
    pairs = set()
    while queue:
        state, u, v = queue.popleft()
        if state in t.finals:
            pairs.add((u, v))
        for tr in adj[state]:
            nu, nv = u + tr.input, v + tr.output
            if len(nu) + len(nv) > max_total:
                continue
            key = (tr.dst, nu, nv)
            if key not in seen:
                seen.add(key)
                queue.append(key)
    return pairs


def io_map(t: Nft, max_in: int, max_out: int):
    """Map input word -> set of output words, over |x| <= max_in and
    |v| <= max_out.  Exact for acyclic instances sized within the caps."""
    from collections import deque

    adj = [[] for _ in range(t.num_states)]
    for tr in t.transitions:
        adj[tr.src].append(tr)
    seen = {(q, "", "") for q in t.initials}
    queue = deque(seen)
    out: dict[str, set[str]] = {}
    while queue:
        state, u, v = queue.popleft()
        if state in t.finals:
            out.setdefault(u, set()).add(v)
        for tr in adj[state]:
            nu, nv = u + tr.input, v + tr.output
            if len(nu) > max_in or len(nv) > max_out:
                continue
            key = (tr.dst, nu, nv)
            if key not in seen:
                seen.add(key)
                queue.append(key)
    return out


def simple_cycles_shifts(t: Nft) -> list[int]:
    """Shifts of every simple cycle (no repeated intermediate state)."""
    adj = [[] for _ in range(t.num_states)]
    for tr in t.transitions:
        adj[tr.src].append(tr)
    shifts = []

    def visit(anchor, state, shift, visited):
        # each simple cycle is rooted at its smallest state, so it is
        # enumerated exactly once
        for tr in adj[state]:
            if tr.dst == anchor:
                shifts.append(shift + tr.shift)
            elif tr.dst > anchor and tr.dst not in visited:
                visited.add(tr.dst)
                visit(anchor, tr.dst, shift + tr.shift, visited)
                visited.remove(tr.dst)

    for anchor in range(t.num_states):
        visit(anchor, anchor, 0, set())
    return shifts


def random_acyclic_nft(rng: random.Random, max_states: int = 4):
    """A random acyclic trimmed NFT (finite relation), for tests that need
    fully enumerable domains."""
    nq = rng.randint(2, max_states)
    pairs = [p for p in _WORD_PAIRS if p != ("", "")]
    transitions = []
    for _ in range(rng.randint(1, 6)):
        src = rng.randrange(nq - 1)
        dst = rng.randrange(src + 1, nq)
        u, v = rng.choice(pairs)
        transitions.append(Transition(src, u, v, dst))
    t = Nft(
        states=tuple(f"s{i}" for i in range(nq)),
        alphabet=frozenset(ALPHABET),
        initials=frozenset({0}),
        finals=frozenset({nq - 1}),
        transitions=tuple(transitions),
        name="dag",
    )
    trimmed = trim(t)
    return trimmed if trimmed.num_states > 0 else None
