"""Relation-preserving transducer transformations.

trim, atomize and add_eps_self_loops keep the recognized relation
unchanged; concat and union realize concatenation and union of the
relations.  All functions return new Nft values and never mutate their
inputs.  Fresh states get deterministic names so that serialization is
reproducible.
"""

from __future__ import annotations

from collections import deque

from .core import Nft, Transition


def _unique_name(candidate: str, used: set[str]) -> str:
    name = candidate
    k = 1
    while name in used:
        k += 1
        name = f"{candidate}~{k}"
    used.add(name)
    return name


def _adjacency(t: Nft, reverse: bool = False) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(t.num_states)]
    for tr in t.transitions:
        if reverse:
            adj[tr.dst].append(tr.src)
        else:
            adj[tr.src].append(tr.dst)
    return adj


def _closure(seeds, adj) -> set[int]:
    seen = set(seeds)
    queue = deque(seen)
    while queue:
        q = queue.popleft()
        for r in adj[q]:
            if r not in seen:
                seen.add(r)
                queue.append(r)
    return seen


def trim_with_maps(t: Nft) -> tuple[Nft, list[int], list[int]]:
    """Trim t and report which original states/transitions survive.

    Returns (trimmed, state_map, transition_map) where state_map[new_id]
    and transition_map[new_index] give the original identifiers.
    """
    reachable = _closure(t.initials, _adjacency(t))
    coreachable = _closure(t.finals, _adjacency(t, reverse=True))
    kept = sorted(reachable & coreachable)
    new_id = {old: new for new, old in enumerate(kept)}
    transitions = []
    trans_map = []
    for i, tr in enumerate(t.transitions):
        if tr.src in new_id and tr.dst in new_id:
            transitions.append(Transition(new_id[tr.src], tr.input, tr.output, new_id[tr.dst]))
            trans_map.append(i)
    trimmed = Nft(
        states=tuple(t.states[q] for q in kept),
        alphabet=t.alphabet,
        initials=frozenset(new_id[q] for q in t.initials if q in new_id),
        finals=frozenset(new_id[q] for q in t.finals if q in new_id),
        transitions=tuple(transitions),
        name=t.name,
    )
    return trimmed, kept, trans_map


def trim(t: Nft) -> Nft:
    """Keep exactly the states reachable from an initial state and
    co-reachable to a final one.  May return a 0-state Nft."""
    return trim_with_maps(t)[0]


def is_trim(t: Nft) -> bool:
    reachable = _closure(t.initials, _adjacency(t))
    coreachable = _closure(t.finals, _adjacency(t, reverse=True))
    return len(reachable & coreachable) == t.num_states


def atomize(t: Nft) -> Nft:
    """Equivalent input-atomic transducer: every transition reads at most
    one letter.

    A transition (p, u, v, q) with |u| > 1 becomes the chain
    (p, u1, v, m1)(m1, u2, eps, m2)...(m_{|u|-1}, u_last, eps, q) through
    fresh states named after the transition index and the letter offset.
    """
    states = list(t.states)
    used = set(states)
    transitions: list[Transition] = []
    for ti, tr in enumerate(t.transitions):
        if len(tr.input) <= 1:
            transitions.append(tr)
            continue
        prev = tr.src
        for k, letter in enumerate(tr.input):
            last = k == len(tr.input) - 1
            if last:
                nxt = tr.dst
            else:
                states.append(_unique_name(f"@{ti}.{k + 1}", used))
                nxt = len(states) - 1
            transitions.append(Transition(prev, letter, tr.output if k == 0 else "", nxt))
            prev = nxt
    return Nft(
        states=tuple(states),
        alphabet=t.alphabet,
        initials=t.initials,
        finals=t.finals,
        transitions=tuple(transitions),
        name=t.name,
    )


def add_eps_self_loops(t: Nft) -> Nft:
    """Add an (eps, eps) self-loop on every state, skipping duplicates."""
    present = {(tr.src, tr.dst) for tr in t.transitions if tr.input == "" and tr.output == ""}
    extra = [Transition(q, "", "", q) for q in range(t.num_states) if (q, q) not in present]
    return Nft(
        states=t.states,
        alphabet=t.alphabet,
        initials=t.initials,
        finals=t.finals,
        transitions=t.transitions + tuple(extra),
        name=t.name,
    )


def _merge_name(a: Nft, b: Nft) -> str:
    return a.name if a.name == b.name else f"{a.name}+{b.name}"


def concat(a: Nft, b: Nft) -> Nft:
    """Concatenation of the relations: R = R_a . R_b.

    Preferred mode, when a has a unique final state without outgoing
    transitions and b a unique initial state without incoming ones, merges
    those two states.  Otherwise a fallback adds (eps, eps) bridges from
    every final of a to every initial of b.
    """
    out_degree = [0] * a.num_states
    for tr in a.transitions:
        out_degree[tr.src] += 1
    in_degree = [0] * b.num_states
    for tr in b.transitions:
        in_degree[tr.dst] += 1
    mergeable = (
        len(a.finals) == 1
        and len(b.initials) == 1
        and out_degree[next(iter(a.finals))] == 0
        and in_degree[next(iter(b.initials))] == 0
    )

    states = list(a.states)
    used = set(states)
    b_map: dict[int, int] = {}
    if mergeable:
        b_map[next(iter(b.initials))] = next(iter(a.finals))
    for q in range(b.num_states):
        if q not in b_map:
            states.append(_unique_name(b.states[q], used))
            b_map[q] = len(states) - 1

    transitions = list(a.transitions)
    transitions.extend(
        Transition(b_map[tr.src], tr.input, tr.output, b_map[tr.dst]) for tr in b.transitions
    )
    if not mergeable:
        transitions.extend(
            Transition(f, "", "", b_map[i]) for f in sorted(a.finals) for i in sorted(b.initials)
        )
    return Nft(
        states=tuple(states),
        alphabet=a.alphabet | b.alphabet,
        initials=a.initials,
        finals=frozenset(b_map[q] for q in b.finals),
        transitions=tuple(transitions),
        name=_merge_name(a, b),
    )


def union(a: Nft, b: Nft) -> Nft:
    """Disjoint union of the transducers: R = R_a | R_b."""
    states = list(a.states)
    used = set(states)
    offset_map = []
    for q in range(b.num_states):
        states.append(_unique_name(b.states[q], used))
        offset_map.append(len(states) - 1)
    transitions = list(a.transitions)
    transitions.extend(
        Transition(offset_map[tr.src], tr.input, tr.output, offset_map[tr.dst])
        for tr in b.transitions
    )
    return Nft(
        states=tuple(states),
        alphabet=a.alphabet | b.alphabet,
        initials=a.initials | frozenset(offset_map[q] for q in b.initials),
        finals=a.finals | frozenset(offset_map[q] for q in b.finals),
        transitions=tuple(transitions),
        name=_merge_name(a, b),
    )
