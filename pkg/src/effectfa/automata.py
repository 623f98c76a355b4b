"""Effectful finite automata and their per-effect language semantics.

An :class:`EffAutomaton` bundles a finite state carrier, an initial effect
value, a total transition table on state-letter pairs, and an output map into
an output algebra.  The word semantics is always "initial value, fed through
one channel per letter, then collapsed by the output map":

* ``dist``     -- acceptance probability in [0, 1] (probabilistic automata);
* ``weighted`` -- a value of the semiring (weighted automata / power series);
* ``convex``   -- optimal acceptance probability under per-step generator
  choices, maximised, minimised, or reported as the [min, max] interval.

Deterministic automata are the ``dist`` case with Dirac channels and 0/1
outputs; no separate type exists for them (:func:`is_pure_automaton`).

Convex outputs are stored as exact (low, high) pairs.  User-declared machines
have ``low == high``; the two components only diverge on the auxiliary state
introduced by :func:`purify_initial`, whose output must reproduce the
empty-word interval.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as _iterproduct

from .effects import (
    Channel,
    ConvexSet,
    Dist,
    Monad,
    WeightedVec,
    bind,
    identity_channel,
    is_pure,
    kleisli_compose,
    unit,
)
from .errors import CapabilityError, InputError, InterfaceError

_F0 = Fraction(0)
_F1 = Fraction(1)

_KIND_FOR_MONAD = {
    "dist": ("unit-interval",),
    "weighted": ("semiring-self",),
    "convex": ("interval-maxmin", "interval-pair"),
}


@dataclass(frozen=True)
class OutputAlgebra:
    """Evaluation contract for collapsing final effect values.

    ``unit-interval`` pairs with ``dist``, ``semiring-self`` with
    ``weighted``; convex machines use ``interval-maxmin`` (with ``mode`` set
    to ``max`` or ``min``) or ``interval-pair`` for the two-sided semantics.
    """

    kind: str
    mode: str | None = None

    def __post_init__(self):
        if self.kind not in (
            "unit-interval",
            "semiring-self",
            "interval-maxmin",
            "interval-pair",
        ):
            raise InterfaceError(f"unknown output algebra {self.kind!r}")
        if self.kind == "interval-maxmin":
            if self.mode not in ("max", "min"):
                raise InterfaceError("interval-maxmin needs mode 'max' or 'min'")
        elif self.mode is not None:
            raise InterfaceError(f"{self.kind} takes no mode")


UNIT_INTERVAL = OutputAlgebra("unit-interval")
SEMIRING_SELF = OutputAlgebra("semiring-self")
INTERVAL_MAX = OutputAlgebra("interval-maxmin", "max")
INTERVAL_MIN = OutputAlgebra("interval-maxmin", "min")
INTERVAL_PAIR = OutputAlgebra("interval-pair")


def convex_output(value) -> tuple:
    """Normalise a convex output entry to an exact (low, high) pair."""
    if isinstance(value, tuple):
        lo, hi = Fraction(value[0]), Fraction(value[1])
    else:
        lo = hi = Fraction(value)
    if not (0 <= lo <= hi <= 1):
        raise InterfaceError(f"convex output {value!r} outside the unit interval")
    return (lo, hi)


@dataclass(frozen=True)
class EffAutomaton:
    """States, initial effect value, transition table, output map."""

    monad: Monad
    states: tuple
    alphabet: tuple
    init: object
    trans: dict
    output: dict
    output_algebra: OutputAlgebra

    def __post_init__(self):
        missing = {
            (q, a) for q in self.states for a in self.alphabet
        } - set(self.trans)
        if missing:
            raise InterfaceError(f"transition table not total; missing {missing}")
        if set(self.output) != set(self.states):
            raise InterfaceError("output map must be total on the states")
        if self.output_algebra.kind not in _KIND_FOR_MONAD[self.monad.kind]:
            raise InterfaceError(
                f"output algebra {self.output_algebra.kind} does not fit "
                f"a {self.monad.kind} automaton"
            )
        if self.monad.kind == "convex":
            for q, v in self.output.items():
                if not (isinstance(v, tuple) and len(v) == 2):
                    raise InterfaceError(
                        f"convex outputs are (low, high) pairs; got {v!r} at {q!r}"
                    )

    def letter_channel(self, a) -> Channel:
        if a not in self.alphabet:
            raise InputError(f"letter {a!r} is not in the alphabet")
        table = {q: self.trans[(q, a)] for q in self.states}
        return Channel(self.monad, self.states, self.states, table)

    def init_pure_state(self):
        """The single initial state if the initial value is pure, else None."""
        if not is_pure(self.init):
            return None
        if self.monad.kind == "convex":
            return self.init.generators[0].support()[0]
        return self.init.support()[0]


def is_pure_automaton(a: EffAutomaton) -> bool:
    """True for the deterministic fragment: Dirac dist channels, 0/1 outputs."""
    if a.monad.kind != "dist":
        return False
    if not is_pure(a.init):
        return False
    if any(not t.is_dirac() for t in a.trans.values()):
        return False
    return all(v in (_F0, _F1) for v in a.output.values())


def words_upto(alphabet: tuple, maxlen: int):
    """All words over the alphabet of length at most ``maxlen``, short first."""
    for n in range(maxlen + 1):
        yield from _iterproduct(alphabet, repeat=n)


def iterated_transition(a: EffAutomaton, w) -> Channel:
    """The state-to-state channel of a whole word (identity on the empty word)."""
    ch = identity_channel(a.monad, a.states)
    for letter in w:
        ch = kleisli_compose(ch, a.letter_channel(letter))
    return ch


def _collapse_dist(d: Dist, output) -> Fraction:
    return sum((w * output[q] for q, w in d.items()), _F0)


def _collapse_weighted(v: WeightedVec, output):
    s = v.semiring
    return s.sum(s.mul(w, output[q]) for q, w in v.items())


def _convex_bounds(s: ConvexSet, output) -> tuple:
    los = []
    his = []
    for d in s.generators:
        los.append(sum((w * output[q][0] for q, w in d.items()), _F0))
        his.append(sum((w * output[q][1] for q, w in d.items()), _F0))
    return (min(los), max(his))


def eval_word(a: EffAutomaton, w):
    """The language value of ``w``: value fed letter by letter, then output."""
    v = a.init
    for letter in w:
        v = bind(v, a.letter_channel(letter))
    if a.monad.kind == "dist":
        return _collapse_dist(v, a.output)
    if a.monad.kind == "weighted":
        return _collapse_weighted(v, a.output)
    lo, hi = _convex_bounds(v, a.output)
    if a.output_algebra.kind == "interval-pair":
        return (lo, hi)
    return hi if a.output_algebra.mode == "max" else lo


def eval_pfa_pathsum(a: EffAutomaton, w) -> Fraction:
    """Explicit sum over all state paths; the oracle for dist evaluation.

    Exponential in the word length by construction; used to cross-check the
    channel-composition semantics.
    """
    if a.monad.kind != "dist":
        raise CapabilityError("path-sum evaluation is defined for dist automata")
    for letter in w:
        if letter not in a.alphabet:
            raise InputError(f"letter {letter!r} is not in the alphabet")
    total = _F0
    for path in _iterproduct(a.states, repeat=len(w) + 1):
        weight = a.init.weight(path[0])
        for k, letter in enumerate(w):
            if weight == 0:
                break
            weight *= a.trans[(path[k], letter)].weight(path[k + 1])
        total += weight * a.output[path[-1]]
    return total


def eval_npfa(a: EffAutomaton, w, mode: str = "interval"):
    """Backward optimisation over per-step generator choices.

    Processes the word right to left, keeping one optimal value per state;
    the optimum over a convex transition set is attained at a generator, so
    only generators are inspected.  ``mode`` is ``max``, ``min`` or
    ``interval`` (returning the (min, max) pair).
    """
    if a.monad.kind != "convex":
        raise CapabilityError("generator optimisation is defined for convex automata")
    if mode not in ("max", "min", "interval"):
        raise InputError(f"unknown mode {mode!r}")
    for letter in w:
        if letter not in a.alphabet:
            raise InputError(f"letter {letter!r} is not in the alphabet")

    def run(opt, comp):
        values = {q: a.output[q][comp] for q in a.states}
        for letter in reversed(w):
            values = {
                q: opt(
                    sum((d.weight(p) * values[p] for p in d.support()), _F0)
                    for d in a.trans[(q, letter)].generators
                )
                for q in a.states
            }
        return opt(
            sum((d.weight(q) * values[q] for q in d.support()), _F0)
            for d in a.init.generators
        )

    if mode == "max":
        return run(max, 1)
    if mode == "min":
        return run(min, 0)
    return (run(min, 0), run(max, 1))


def _fresh_state(states: tuple) -> str:
    name = "_init"
    while name in states:
        name += "_"
    return name


def purify_initial(a: EffAutomaton) -> EffAutomaton:
    """Replace an effectful initial value by a pure one on a fresh state.

    The fresh state simulates the old initial value for every first letter,
    and outputs the old empty-word value, so the language is unchanged.  The
    fresh state is unreachable afterwards; on machines already carrying a
    pure initial value it is simply inert.
    """
    bot = _fresh_state(a.states)
    states = a.states + (bot,)
    trans = dict(a.trans)
    for x in a.alphabet:
        trans[(bot, x)] = bind(a.init, a.letter_channel(x))
    output = dict(a.output)
    if a.monad.kind == "dist":
        output[bot] = _collapse_dist(a.init, a.output)
    elif a.monad.kind == "weighted":
        output[bot] = _collapse_weighted(a.init, a.output)
    else:
        output[bot] = _convex_bounds(a.init, a.output)
    return EffAutomaton(
        monad=a.monad,
        states=states,
        alphabet=a.alphabet,
        init=unit(a.monad, bot),
        trans=trans,
        output=output,
        output_algebra=a.output_algebra,
    )


def outputs_equal(a: EffAutomaton, v1, v2) -> bool:
    """Compare two language values under the automaton's output algebra."""
    if a.monad.kind == "weighted":
        return a.monad.semiring.eq(v1, v2)
    return v1 == v2
