"""Distance-preserving reductions between the comparison problems (two
transducers over a shared domain) and the deviation problems (one
transducer).

comparison_to_deviation builds the synchronized product whose accepted
pairs are exactly the output pairs of the two transducers on a common
input, so its deviation equals the comparison distance whenever the
domains coincide (domain equality is the caller's responsibility: the
bounded surrogate check lives in the oracle module).
deviation_to_comparison goes the other way by pairing a transducer with
the identity on its own domain.
"""

from __future__ import annotations

from .core import Nft, Transition
from .engine import DEFAULT_MAX_CONFIGS, exact, is_bounded, threshold
from .transform import add_eps_self_loops, atomize, trim


def comparison_to_deviation(t1: Nft, t2: Nft) -> Nft:
    """The product Z with R_Z = {(u, v) | exists x: (x,u) in R_t1 and
    (x,v) in R_t2}; dev(R_Z) = d(R_t1, R_t2) when the domains coincide.

    Both operands are made input-atomic and given (eps, eps) self-loops,
    then transitions are paired on equal input x in the alphabet or eps.
    Unreachable product states are trimmed away.
    """
    a = add_eps_self_loops(atomize(t1))
    b = add_eps_self_loops(atomize(t2))
    nb = b.num_states

    def pid(qa: int, qb: int) -> int:
        return qa * nb + qb

    by_input: dict[str, list[Transition]] = {}
    for tb in b.transitions:
        by_input.setdefault(tb.input, []).append(tb)

    states = tuple(
        f"{sa}|{sb}" for sa in a.states for sb in b.states
    )
    transitions = []
    for ta in a.transitions:
        for tb in by_input.get(ta.input, ()):
            transitions.append(
                Transition(pid(ta.src, tb.src), ta.output, tb.output, pid(ta.dst, tb.dst))
            )
    z = Nft(
        states=states,
        alphabet=a.alphabet | b.alphabet,
        initials=frozenset(pid(i, j) for i in a.initials for j in b.initials),
        finals=frozenset(pid(i, j) for i in a.finals for j in b.finals),
        transitions=tuple(transitions),
        name=f"{t1.name}x{t2.name}",
    )
    return trim(z)


def deviation_to_comparison(t: Nft) -> tuple[Nft, Nft]:
    """A pair (t1, t2) with equal domains whose comparison distance is
    dev(R_t): t2 is t itself and t1 copies every input to the output."""
    t1 = Nft(
        states=t.states,
        alphabet=t.alphabet,
        initials=t.initials,
        finals=t.finals,
        transitions=tuple(Transition(tr.src, tr.input, tr.input, tr.dst) for tr in t.transitions),
        name=f"{t.name}_id",
    )
    return t1, t


def compare(
    t1: Nft,
    t2: Nft,
    mode: str,
    k: int | None = None,
    max_configs: int = DEFAULT_MAX_CONFIGS,
) -> bool:
    """Decide a comparison problem through the deviation of the product.

    mode is one of "bounded", "threshold", "exact"; the latter two take
    the threshold k.  The caller asserts dom(R_t1) = dom(R_t2).
    """
    z = comparison_to_deviation(t1, t2)
    if mode == "bounded":
        return is_bounded(z, max_configs)
    if mode == "threshold":
        if k is None:
            raise ValueError("threshold mode needs k")
        return threshold(z, k, max_configs)
    if mode == "exact":
        if k is None:
            raise ValueError("exact mode needs k")
        return exact(z, k, max_configs)
    raise ValueError(f"unknown comparison mode {mode!r}")
