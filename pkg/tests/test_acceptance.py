"""Acceptance suite: one test per criterion, every check exact.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one pass line per
criterion.  All random families are seeded, so the suite is reproducible.
"""

import random
from fractions import Fraction as F
from itertools import product

from conftest import (
    coin_pfa,
    contains_ab_dfa,
    even_dfa,
    language_table,
    npfa_brute_force,
    npfa_value_table,
    rand_channel,
    rand_convex_channel,
    rand_npfa,
    rand_pfa,
    rand_wfa,
)
from effectfa import (
    CONVEX,
    Channel,
    DIST,
    Dist,
    EffMorphism,
    EffRecognizer,
    FinMonoid,
    FormalCombo,
    Position,
    UNIT_INTERVAL,
    WeightedVec,
    apply_rule,
    automaton_to_recognizer,
    bounded_context_oracle,
    canonical_rep,
    check_central,
    classical_syntactic_monoid,
    eval_word,
    expected_value,
    is_commutative,
    is_winning,
    lambda_channel,
    minimize,
    recognizer_to_automaton,
    solve,
    syn_congruent,
    to_linear,
    verify_recognition,
    weighted,
    witness_xi0,
    words_upto,
    xi,
    xi_preimage,
)

RAT = weighted("rational")
MINPLUS = weighted("minplus")


def report(n, text):
    print(f"PASS criterion {n}: {text}")


def test_criterion_1_coin_language_closed_form():
    coin = coin_pfa()
    for n in range(21):
        assert eval_word(coin, ("a",) * n) == 1 - F(1, 2**n)
    report(1, "coin machine accepts a^n with probability 1 - 2^-n for n = 0..20")


def test_criterion_2_monoid_recognizers_for_seeded_pfas():
    rng = random.Random(1002)
    checked = 0
    for _ in range(50):
        n_states = rng.randint(1, 3)
        a = rand_pfa(
            rng,
            n_states,
            rng.randint(1, 2),
            max_den=4,
            pure_init=(n_states == 3 or rng.random() < 0.5),
        )
        rec = automaton_to_recognizer(a)
        assert verify_recognition(a, rec, 6) == []
        checked += 1
    assert checked == 50
    report(2, "50 seeded machines agree with their finite-monoid recognizers to length 6")


def test_criterion_3_recognizer_rebuild_matches_coin():
    m = FinMonoid.from_table(
        ["0", "1"],
        {("0", "0"): "0", ("0", "1"): "1", ("1", "0"): "1", ("1", "1"): "1"},
        "0",
    )
    rec = EffRecognizer(
        morphism=EffMorphism(
            target=m,
            monad=DIST,
            alphabet=("a",),
            letters={"a": Dist({"0": F(1, 2), "1": F(1, 2)})},
        ),
        predicate={"0": F(0), "1": F(1)},
        output_algebra=UNIT_INTERVAL,
    )
    rebuilt = recognizer_to_automaton(rec)
    coin = coin_pfa()
    for n in range(11):
        assert eval_word(rebuilt, ("a",) * n) == eval_word(coin, ("a",) * n)
    rename = {"0": "q0", "1": "q1"}
    assert {rename[q] for q in rebuilt.states} == set(coin.states)
    assert rebuilt.init.map(lambda q: rename[q]) == coin.init
    for (q, x), t in rebuilt.trans.items():
        assert t.map(lambda s: rename[s]) == coin.trans[(rename[q], x)]
    for q, v in rebuilt.output.items():
        assert v == coin.output[rename[q]]
    report(3, "rebuilt two-element recognizer equals the coin machine up to renaming")


def test_criterion_4_npfa_round_trips_and_brute_force():
    rng = random.Random(1004)
    for i in range(30):
        n_states = rng.randint(1, 3)
        max_gens = 2 if n_states == 3 else 3
        a = rand_npfa(rng, n_states, rng.randint(1, 2), max_gens)
        rec = automaton_to_recognizer(a)
        back = recognizer_to_automaton(rec)
        for mode in ("max", "min"):
            mine = npfa_value_table(a, 4, mode)
            theirs = npfa_value_table(back, 4, mode)
            assert mine == theirs
            if i % 6 == 0:
                for w in words_upto(a.alphabet, 4):
                    assert mine[w] == npfa_brute_force(a, w, mode)
    report(4, "30 seeded choice machines keep max/min languages through the round trip")


def _minplus_brute(a, w):
    s = a.monad.semiring
    best = s.zero
    for path in product(a.states, repeat=len(w) + 1):
        cost = a.init.weight(path[0])
        for k, letter in enumerate(w):
            cost = s.mul(cost, a.trans[(path[k], letter)].weight(path[k + 1]))
        cost = s.mul(cost, a.output[path[-1]])
        best = s.add(best, cost)
    return best


def test_criterion_5_weighted_round_trips_per_semiring():
    rng = random.Random(1005)
    for name in ("boolean", "rational", "minplus"):
        for i in range(30):
            a = rand_wfa(rng, name, rng.randint(1, 3), rng.randint(1, 2))
            rec = automaton_to_recognizer(a)
            back = recognizer_to_automaton(rec)
            mine = language_table(a, 5)
            theirs = language_table(back, 5)
            s = a.monad.semiring
            for w, v in mine.items():
                assert s.eq(v, theirs[w])
            if name == "minplus" and i % 5 == 0:
                for w in words_upto(a.alphabet, 4):
                    assert s.eq(mine[w], _minplus_brute(a, w))
    report(5, "90 seeded weighted machines keep their power series through the round trip")


def test_criterion_6_section_identity():
    small = [
        Dist({"0": 1}),
        Dist({"1": 1}),
        Dist({"0": F(1, 2), "1": F(1, 2)}),
        Dist({"0": F(1, 3), "1": F(2, 3)}),
        Dist({"0": F(2, 3), "1": F(1, 3)}),
    ]
    one = [Dist({"0": 1})]
    for nx in (1, 2):
        for ny in (1, 2):
            xs = ("0", "1")[:nx]
            ys = ("0", "1")[:ny]
            choices = small if ny == 2 else one
            for rows in product(choices, repeat=nx):
                g = Channel(DIST, xs, ys, dict(zip(xs, rows)))
                assert xi(lambda_channel(g), xs, ys) == g
    rng = random.Random(1006)
    carrier = ("0", "1", "2")
    for _ in range(200):
        g = rand_channel(rng, carrier, max_den=5)
        assert xi(lambda_channel(g), carrier, carrier) == g
    report(6, "collapse after compatibility-expansion is the identity, exhaustively and randomly")


def test_criterion_7_syntactic_congruence_and_oracle_agreement():
    coin = coin_pfa()
    rep = minimize(to_linear(coin))
    lhs = FormalCombo({(): F(1, 3), ("a", "a"): F(2, 3)})
    rhs = FormalCombo.dirac(("a",))
    assert syn_congruent(rep, lhs, rhs) is True

    rng = random.Random(1007)

    def combo_of(position):
        return FormalCombo({("a",) * n: w for n, w in position.items()})

    def rand_position():
        ks = rng.sample(range(0, 7), rng.randint(1, 3))
        ws = [rng.randint(1, 8) for _ in ks]
        total = sum(ws)
        return Position({k: F(w, total) for k, w in zip(ks, ws)})

    agreements = 0
    for _ in range(100):
        p = rand_position()
        pairs = [
            (combo_of(p), combo_of(solve(p)[0])),  # congruent by construction
            (combo_of(p), combo_of(rand_position())),
        ]
        for c1, c2 in pairs:
            assert syn_congruent(rep, c1, c2) == bounded_context_oracle(
                coin, c1, c2, 4
            )
            agreements += 1
    assert agreements == 200
    report(7, "congruence decision matches the bounded-context oracle on 200 pairs")


def _rep_table(rep, maxlen):
    from effectfa.linalg import dot, vec_mat

    rows = {(): rep.initial}
    vals = {}
    for w in words_upto(rep.alphabet, maxlen):
        if w:
            rows[w] = vec_mat(rows[w[:-1]], rep.letters[w[-1]])
        vals[w] = dot(rows[w], rep.final)
    return vals


def test_criterion_8_minimisation():
    assert minimize(to_linear(coin_pfa())).dim == 2
    rng = random.Random(1008)
    for i in range(50):
        n_letters = 2 if i < 20 else 1
        a = rand_wfa(rng, "rational", rng.randint(1, 3), n_letters)
        rep = to_linear(a)
        mini = minimize(rep)
        assert mini.dim <= rep.dim
        assert _rep_table(mini, 10) == language_table(a, 10)
    report(8, "coin representation minimises to dimension 2; 50 seeded machines preserved to length 10")


def test_criterion_9_game_solver():
    rng = random.Random(1009)
    for _ in range(500):
        ks = rng.sample(range(0, 9), rng.randint(1, 6))
        ws = [rng.randint(1, 64) for _ in ks]
        total = sum(ws)
        p = Position({k: F(w, total) for k, w in zip(ks, ws)})
        value = expected_value(p)
        final, trace = solve(p)
        assert is_winning(final)
        assert final == canonical_rep(value)
        replay = p
        for move in trace:
            replay = apply_rule(replay, move)  # raises if any move is illegal
            assert expected_value(replay) == value
        assert replay == final
    final, trace = solve(Position({0: F(1, 3), 2: F(2, 3)}))
    assert final == Position({1: F(1)})
    assert len(trace) == 1 and trace[0].direction == "merge"
    report(9, "500 seeded positions solve to their canonical representatives; the two-point gap needs one merge")


def test_criterion_10_pure_fragment():
    even = even_dfa()
    syn = classical_syntactic_monoid(even, 100)
    assert len(syn.monoid) == 2
    for w in words_upto(("a",), 10):
        assert syn.accepts(w) == (eval_word(even, w) == 1)
    assert is_commutative(minimize(to_linear(contains_ab_dfa()))) is False
    unary_set = [coin_pfa(), even, recognizer_rebuild_of_coin()]
    for machine in unary_set:
        assert is_commutative(minimize(to_linear(machine))) is True
    report(10, "parity has a two-element transition monoid; commutativity decided correctly")


def recognizer_rebuild_of_coin():
    return recognizer_to_automaton(automaton_to_recognizer(coin_pfa()))


def test_criterion_11_witness_soundness():
    rng = random.Random(1011)
    carrier3 = ("q0", "q1", "q2")
    for _ in range(100):
        ch = rand_channel(rng, carrier3)
        assert xi(xi_preimage(ch), carrier3, carrier3) == ch
    for _ in range(100):
        table = {}
        for q in carrier3:
            table[q] = WeightedVec(
                RAT.semiring,
                {p: F(rng.randint(-2, 3), rng.randint(1, 2)) for p in carrier3},
            )
        ch = Channel(RAT, carrier3, carrier3, table)
        assert xi(xi_preimage(ch), carrier3, carrier3) == ch
    for _ in range(100):
        ch = rand_convex_channel(rng, carrier3, 2)
        assert xi(xi_preimage(ch), carrier3, carrier3) == ch

    for monad in (CONVEX, MINPLUS):
        m, images = witness_xi0(monad, ("q0", "q1"))
        domain = tuple((q, f) for q in ("q0", "q1") for f in m.elements)
        uncurried = Channel(
            monad, domain, ("q0", "q1"), {(q, f): images[f](q) for q, f in domain}
        )
        probes = []
        for _ in range(20):
            if monad.kind == "convex":
                probes.append(rand_convex_channel(rng, ("u", "v"), 2, max_den=2))
            else:
                s = monad.semiring
                probes.append(
                    Channel(
                        monad,
                        ("u", "v"),
                        ("u", "v"),
                        {
                            x: WeightedVec(
                                s,
                                {
                                    y: rng.randint(0, 3)
                                    for y in ("u", "v")
                                    if rng.random() < 0.8
                                },
                            )
                            for x in ("u", "v")
                        },
                    )
                )
        assert check_central(uncurried, probes) == []
    report(11, "function-monoid witnesses collapse back exactly and are central")
