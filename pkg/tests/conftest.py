"""Shared machines and seeded random families for the test suite."""

from fractions import Fraction as F

import pytest

from effectfa import (
    CONVEX,
    ConvexSet,
    DIST,
    Dist,
    EffAutomaton,
    INTERVAL_PAIR,
    SEMIRING_SELF,
    UNIT_INTERVAL,
    WeightedVec,
    convex_output,
    unit,
    weighted,
)
from effectfa.effects import Channel


def coin_pfa() -> EffAutomaton:
    """Two states on one letter: flip to advance, absorb accepting.

    The acceptance probability of n letters is 1 - 2^-n.
    """
    return EffAutomaton(
        monad=DIST,
        states=("q0", "q1"),
        alphabet=("a",),
        init=unit(DIST, "q0"),
        trans={
            ("q0", "a"): Dist({"q0": F(1, 2), "q1": F(1, 2)}),
            ("q1", "a"): Dist({"q1": F(1)}),
        },
        output={"q0": F(0), "q1": F(1)},
        output_algebra=UNIT_INTERVAL,
    )


def even_dfa() -> EffAutomaton:
    """Accepts words with an even number of a's (as a Dirac dist machine)."""
    return EffAutomaton(
        monad=DIST,
        states=("e", "o"),
        alphabet=("a",),
        init=unit(DIST, "e"),
        trans={("e", "a"): Dist({"o": 1}), ("o", "a"): Dist({"e": 1})},
        output={"e": F(1), "o": F(0)},
        output_algebra=UNIT_INTERVAL,
    )


def contains_ab_dfa() -> EffAutomaton:
    """Accepts words containing 'ab' as a factor."""
    d = lambda q: Dist({q: 1})
    return EffAutomaton(
        monad=DIST,
        states=("n", "sa", "yes"),
        alphabet=("a", "b"),
        init=unit(DIST, "n"),
        trans={
            ("n", "a"): d("sa"),
            ("n", "b"): d("n"),
            ("sa", "a"): d("sa"),
            ("sa", "b"): d("yes"),
            ("yes", "a"): d("yes"),
            ("yes", "b"): d("yes"),
        },
        output={"n": F(0), "sa": F(0), "yes": F(1)},
        output_algebra=UNIT_INTERVAL,
    )


def choice_npfa() -> EffAutomaton:
    """One convex choice: stay rejected or jump accepted on each letter."""
    return EffAutomaton(
        monad=CONVEX,
        states=("q0", "q1"),
        alphabet=("a",),
        init=unit(CONVEX, "q0"),
        trans={
            ("q0", "a"): ConvexSet([Dist({"q0": 1}), Dist({"q1": 1})]),
            ("q1", "a"): ConvexSet([Dist({"q1": 1})]),
        },
        output={"q0": convex_output(0), "q1": convex_output(1)},
        output_algebra=INTERVAL_PAIR,
    )


def minplus_walk() -> EffAutomaton:
    """One state, one letter of cost 1: the length function."""
    mp = weighted("minplus")
    return EffAutomaton(
        monad=mp,
        states=("q",),
        alphabet=("a",),
        init=WeightedVec(mp.semiring, {"q": 0}),
        trans={("q", "a"): WeightedVec(mp.semiring, {"q": 1})},
        output={"q": 0},
        output_algebra=SEMIRING_SELF,
    )


@pytest.fixture
def coin():
    return coin_pfa()


@pytest.fixture
def npfa():
    return choice_npfa()


# ---------------------------------------------------------------------------
# Seeded random families


def rand_dist(rng, carrier, max_den=4) -> Dist:
    den = rng.randint(1, max_den)
    counts = [0] * len(carrier)
    for _ in range(den):
        counts[rng.randrange(len(carrier))] += 1
    return Dist({x: F(k, den) for x, k in zip(carrier, counts) if k})


def rand_channel(rng, carrier, max_den=4) -> Channel:
    table = {q: rand_dist(rng, carrier, max_den) for q in carrier}
    return Channel(DIST, tuple(carrier), tuple(carrier), table)


def rand_pfa(rng, n_states, n_letters, max_den=4, pure_init=True) -> EffAutomaton:
    states = tuple(f"q{i}" for i in range(n_states))
    alphabet = ("a", "b")[:n_letters]
    init = unit(DIST, states[0]) if pure_init else rand_dist(rng, states, max_den)
    trans = {
        (q, x): rand_dist(rng, states, max_den) for q in states for x in alphabet
    }
    output = {q: F(rng.randint(0, max_den), max_den) for q in states}
    return EffAutomaton(
        monad=DIST,
        states=states,
        alphabet=alphabet,
        init=init,
        trans=trans,
        output=output,
        output_algebra=UNIT_INTERVAL,
    )


def _rand_weight(rng, semiring_name):
    if semiring_name == "boolean":
        return rng.random() < 0.5
    if semiring_name == "rational":
        return F(rng.randint(-2, 3), rng.randint(1, 3))
    return rng.randint(0, 3)  # minplus / maxplus naturals


def rand_wfa(rng, semiring_name, n_states, n_letters) -> EffAutomaton:
    monad = weighted(semiring_name)
    s = monad.semiring
    states = tuple(f"q{i}" for i in range(n_states))
    alphabet = ("a", "b")[:n_letters]

    def vec(allow_empty=True):
        w = {}
        for q in states:
            if rng.random() < 0.7:
                w[q] = _rand_weight(rng, semiring_name)
        if not w and not allow_empty:
            w[states[0]] = s.one
        return WeightedVec(s, w)

    return EffAutomaton(
        monad=monad,
        states=states,
        alphabet=alphabet,
        init=vec(allow_empty=False),
        trans={(q, x): vec() for q in states for x in alphabet},
        output={q: _rand_weight(rng, semiring_name) for q in states},
        output_algebra=SEMIRING_SELF,
    )


def rand_convex_set(rng, carrier, max_gens, max_den=4) -> ConvexSet:
    k = rng.randint(1, max_gens)
    return ConvexSet([rand_dist(rng, carrier, max_den) for _ in range(k)])


def rand_convex_channel(rng, carrier, max_gens, max_den=4) -> Channel:
    table = {q: rand_convex_set(rng, carrier, max_gens, max_den) for q in carrier}
    return Channel(CONVEX, tuple(carrier), tuple(carrier), table)


def rand_npfa(rng, n_states, n_letters, max_gens, pure_init=True) -> EffAutomaton:
    states = tuple(f"q{i}" for i in range(n_states))
    alphabet = ("a", "b")[:n_letters]
    init = (
        unit(CONVEX, states[0])
        if pure_init
        else rand_convex_set(rng, states, max_gens)
    )
    trans = {
        (q, x): rand_convex_set(rng, states, max_gens)
        for q in states
        for x in alphabet
    }
    output = {q: convex_output(F(rng.randint(0, 4), 4)) for q in states}
    return EffAutomaton(
        monad=CONVEX,
        states=states,
        alphabet=alphabet,
        init=init,
        trans=trans,
        output=output,
        output_algebra=INTERVAL_PAIR,
    )


def language_table(a: EffAutomaton, maxlen: int) -> dict:
    """Word-to-value table computed with shared prefixes (dist/weighted)."""
    from effectfa import bind, words_upto

    chans = {x: a.letter_channel(x) for x in a.alphabet}
    front = {(): a.init}
    vals = {}
    for w in words_upto(a.alphabet, maxlen):
        if w:
            front[w] = bind(front[w[:-1]], chans[w[-1]])
        v = front[w]
        if a.monad.kind == "dist":
            vals[w] = sum((wt * a.output[q] for q, wt in v.items()), F(0))
        else:
            s = a.monad.semiring
            vals[w] = s.sum(s.mul(wt, a.output[q]) for q, wt in v.items())
    return vals


def npfa_value_table(a: EffAutomaton, maxlen: int, mode: str) -> dict:
    """Optimal values of all words at once, sharing suffix value vectors."""
    from effectfa import words_upto

    comp = 1 if mode == "max" else 0
    opt = max if mode == "max" else min
    vectors = {(): {q: a.output[q][comp] for q in a.states}}
    vals = {}
    for w in words_upto(a.alphabet, maxlen):
        if w:
            tail = vectors[w[1:]]
            vectors[w] = {
                q: opt(
                    sum((d.weight(p) * tail[p] for p in d.support()), F(0))
                    for d in a.trans[(q, w[0])].generators
                )
                for q in a.states
            }
        vec = vectors[w]
        vals[w] = opt(
            sum((d.weight(q) * vec[q] for q in d.support()), F(0))
            for d in a.init.generators
        )
    return vals


def npfa_brute_force(a: EffAutomaton, w, mode: str):
    """Optimal acceptance by enumerating achievable state distributions.

    Walks the word forward, fanning out over every per-state generator
    selection and keeping the deduplicated set of reachable distribution
    vectors; the optimum is then read off directly.  Independent of the
    backward optimisation it cross-checks.
    """
    from itertools import product as iterproduct

    states = a.states
    vectors = {tuple(g.weight(q) for q in states) for g in a.init.generators}
    for letter in w:
        nxt = set()
        for v in vectors:
            active = [i for i, x in enumerate(v) if x != 0]
            options = [a.trans[(states[i], letter)].generators for i in active]
            for pick in iterproduct(*options):
                out = [F(0)] * len(states)
                for i, g in zip(active, pick):
                    for q, wq in g.items():
                        out[states.index(q)] += v[i] * wq
                nxt.add(tuple(out))
        vectors = nxt
    comp = 1 if mode == "max" else 0
    opt = max if mode == "max" else min
    return opt(
        sum((x * a.output[q][comp] for x, q in zip(v, states)), F(0)) for v in vectors
    )
