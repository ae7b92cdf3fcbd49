"""Core data model: transducers, runs, words, and their numeric measures.

A nondeterministic finite-state transducer (NFT) is a tuple
(states, alphabet, initials, finals, transitions) where each transition
reads a word and writes a word over the same alphabet.  The NFT accepts
the pair (u, v) when some run from an initial to a final state reads u
and writes v.  Everything in this module is immutable and safe to share
across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union


class Infinity:
    """The infinite value of the extended naturals.

    Used for the distance of pairs of words with different lengths and
    for the deviation of unbounded transducers.  A dedicated singleton
    rather than a float sentinel, so that arithmetic mistakes fail loudly.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __eq__(self, other):
        return isinstance(other, Infinity)

    def __hash__(self):
        return hash("nftdev.INF")

    def __lt__(self, other):
        if isinstance(other, (Infinity, int)):
            return False
        return NotImplemented

    def __le__(self, other):
        if isinstance(other, Infinity):
            return True
        if isinstance(other, int):
            return False
        return NotImplemented

    def __gt__(self, other):
        if isinstance(other, Infinity):
            return False
        if isinstance(other, int):
            return True
        return NotImplemented

    def __ge__(self, other):
        if isinstance(other, (Infinity, int)):
            return True
        return NotImplemented


INF = Infinity()

ExtendedNat = Union[int, Infinity]


def hamming_distance(u: str, v: str) -> ExtendedNat:
    """Number of mismatching positions, or INF when the lengths differ."""
    if len(u) != len(v):
        return INF
    return sum(1 for a, b in zip(u, v) if a != b)


def conjugate_by(u: str, v: str, n: int) -> bool:
    """True when u and v are conjugate by the offset n.

    That is, |u| = |v| and every pair of positions i in u and j in v with
    j - i congruent to n modulo |u| carries the same letter.  The letterwise
    condition forces v to be the cyclic rotation of u by n, so the words are
    in particular conjugate (u = wz and v = zw for some split).  Empty words
    are conjugate by every offset.
    """
    if len(u) != len(v):
        return False
    size = len(u)
    if size == 0:
        return True
    return all(u[i] == v[(i + n) % size] for i in range(size))


@dataclass(frozen=True)
class Transition:
    """One transition: read `input` and write `output` going src -> dst.

    Both words may be empty.  States are dense integer ids into the
    owning Nft's state tuple.
    """

    src: int
    input: str
    output: str
    dst: int

    @property
    def shift(self) -> int:
        return len(self.input) - len(self.output)

    @property
    def length(self) -> int:
        return len(self.input) + len(self.output)


def _check_letter(letter: str) -> str | None:
    if len(letter) != 1:
        return "letters must be single characters"
    if letter == "-":
        return "'-' is reserved for the empty word"
    if letter == "#" or letter.isspace():
        return "letters may not be '#' or whitespace"
    return None


@dataclass(frozen=True)
class Nft:
    """A nondeterministic finite-state transducer.

    `states` holds the state names; the state identifier used everywhere
    else is the dense index into that tuple.  `initials` and `finals` are
    sets of state ids, `transitions` an ordered tuple (runs refer to
    transitions by index).
    """

    states: tuple[str, ...]
    alphabet: frozenset[str]
    initials: frozenset[int]
    finals: frozenset[int]
    transitions: tuple[Transition, ...]
    name: str = "t"

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "alphabet", frozenset(self.alphabet))
        object.__setattr__(self, "initials", frozenset(self.initials))
        object.__setattr__(self, "finals", frozenset(self.finals))
        object.__setattr__(
            self,
            "transitions",
            tuple(t if isinstance(t, Transition) else Transition(*t) for t in self.transitions),
        )
        self._validate()

    def _validate(self):
        seen = set()
        for s in self.states:
            if not s or "#" in s or any(c.isspace() for c in s):
                raise ValueError(f"invalid state name {s!r}")
            if s in seen:
                raise ValueError(f"duplicate state name {s!r}")
            seen.add(s)
        for a in self.alphabet:
            problem = _check_letter(a)
            if problem:
                raise ValueError(f"invalid alphabet letter {a!r}: {problem}")
        n = len(self.states)
        for q in self.initials | self.finals:
            if not 0 <= q < n:
                raise ValueError(f"state id {q} out of range")
        for i, t in enumerate(self.transitions):
            if not (0 <= t.src < n and 0 <= t.dst < n):
                raise ValueError(f"transition {i} has an endpoint outside the state set")
            for letter in t.input + t.output:
                if letter not in self.alphabet:
                    raise ValueError(f"transition {i} uses letter {letter!r} outside the alphabet")

    @property
    def num_states(self) -> int:
        return len(self.states)

    def state_id(self, name: str) -> int:
        return self.states.index(name)


@dataclass(frozen=True)
class Run:
    """A run is an ordered sequence of indices into an Nft's transitions.

    Consecutive transitions must chain (dst of one is src of the next);
    that is checked by `run_words`, not stored here.  The empty run is
    allowed and reads/writes the empty pair.
    """

    transitions: tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "transitions", tuple(self.transitions))

    def __len__(self):
        return len(self.transitions)


def run_words(t: Nft, r: Run) -> tuple[str, str]:
    """The pair (u, v) read and written along the run `r` of `t`.

    Raises ValueError("not a run ...") when the indices are out of range
    or consecutive transitions do not chain.
    """
    u: list[str] = []
    v: list[str] = []
    prev_dst = None
    for pos, idx in enumerate(r.transitions):
        if not 0 <= idx < len(t.transitions):
            raise ValueError(f"not a run: transition index {idx} out of range")
        tr = t.transitions[idx]
        if prev_dst is not None and tr.src != prev_dst:
            raise ValueError(f"not a run: broken chain at step {pos}")
        prev_dst = tr.dst
        u.append(tr.input)
        v.append(tr.output)
    return "".join(u), "".join(v)


def run_shift(t: Nft, r: Run) -> int:
    """shift(r) = |u| - |v|, equal to the sum of the transition shifts."""
    u, v = run_words(t, r)
    return len(u) - len(v)


def run_position_maps(t: Nft, r: Run) -> tuple[dict[int, int], dict[int, int]]:
    """The position maps inn and out of a run.

    Returns two dicts keyed by 1-based letter positions: inn[i] is the
    1-based position within the run of the transition reading the i-th
    input letter, out[j] the one writing the j-th output letter.
    """
    u, v = run_words(t, r)  # validates the chain
    del u, v
    inn: dict[int, int] = {}
    out: dict[int, int] = {}
    ui = 0
    vj = 0
    for pos, idx in enumerate(r.transitions, start=1):
        tr = t.transitions[idx]
        for _ in tr.input:
            ui += 1
            inn[ui] = pos
        for _ in tr.output:
            vj += 1
            out[vj] = pos
    return inn, out


@dataclass(frozen=True)
class NftStats:
    """Size measures of an Nft.

    smax is the maximum absolute transition shift, lmax the maximum
    transition length |input| + |output|, repr_size the byte length of the
    canonical text serialization (the machine-size measure used by the
    deviation bounds).
    """

    num_states: int
    smax: int
    lmax: int
    repr_size: int


def stats(t: Nft) -> NftStats:
    """Compute NftStats; a transition-free Nft has smax = lmax = 0."""
    from .textio import serialize_nft  # canonical serialization defines repr_size

    smax = max((abs(tr.shift) for tr in t.transitions), default=0)
    lmax = max((tr.length for tr in t.transitions), default=0)
    repr_size = len(serialize_nft(t).encode("utf-8"))
    return NftStats(num_states=t.num_states, smax=smax, lmax=lmax, repr_size=repr_size)
