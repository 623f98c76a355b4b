"""Exact linear representations and decidable syntactic congruence.

A rational-valued language (probabilistic, or weighted over the rationals)
is packaged as a :class:`LinearRep`: an initial row, one square matrix per
letter, and a final column, so that the value of a word is
``initial @ product-of-letter-matrices @ final``.

Minimisation runs a forward pass (basis of the space reached from the
initial row under the letter matrices) and then a backward pass (the same
on the transposed representation), both with exact Gaussian elimination and
first-non-zero pivoting.  The resulting dimension is the rank of the
language's word-pair value table, never larger than the input dimension.

On a minimised representation, matrix equality of formal convex
combinations of words decides the syntactic congruence: the reached rows
and observed columns each span the full space, so two combinations act the
same in every two-sided context exactly when their matrices coincide.  The
congruence class structure itself is usually infinite and is never
materialised; :func:`combo_matrix` is its decidable face.  A necessary-
condition oracle that literally sums values over bounded contexts is kept
alongside for cross-checking (:func:`bounded_context_oracle`).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .automata import EffAutomaton, eval_word, words_upto
from .effects import Dist
from .errors import CapabilityError, InputError, PreconditionError
from .linalg import (
    RowSpace,
    dot,
    identity,
    mat_add,
    mat_mul,
    mat_scale,
    solve_linear,
    transpose,
    vec_mat,
)

_F0 = Fraction(0)
_F1 = Fraction(1)


@dataclass(frozen=True)
class LinearRep:
    """Matrix presentation of a rational-valued language."""

    alphabet: tuple
    initial: tuple
    letters: dict
    final: tuple
    minimal: bool = False

    @property
    def dim(self) -> int:
        return len(self.initial)

    def word_matrix(self, w):
        m = identity(self.dim)
        for a in w:
            if a not in self.letters:
                raise InputError(f"letter {a!r} is not in the alphabet")
            m = mat_mul(m, self.letters[a])
        return m

    def value(self, w) -> Fraction:
        v = self.initial
        for a in w:
            if a not in self.letters:
                raise InputError(f"letter {a!r} is not in the alphabet")
            v = vec_mat(v, self.letters[a])
        return dot(v, self.final)


@dataclass(frozen=True)
class FormalCombo:
    """A formal convex combination of words (weights positive, summing to 1)."""

    terms: dict

    def __post_init__(self):
        total = _F0
        for w, r in self.terms.items():
            if r <= 0:
                raise InputError(f"combination weight {r} at {w!r} must be positive")
            total += r
        if total != 1:
            raise InputError(f"combination weights sum to {total}, not 1")

    @classmethod
    def dirac(cls, w) -> "FormalCombo":
        return cls({tuple(w): _F1})


def to_linear(a: EffAutomaton) -> LinearRep:
    """Read off the matrices of a dist or rational-weighted automaton."""
    if a.monad.kind == "dist":
        def weight(t, q):
            return t.weight(q)
        final = tuple(a.output[q] for q in a.states)
    elif a.monad.kind == "weighted" and a.monad.semiring.name == "rational":
        def weight(t, q):
            return t.weight(q)
        final = tuple(a.output[q] for q in a.states)
    else:
        raise CapabilityError(
            "linear representations need rational matrices (dist or weighted rational)"
        )
    initial = tuple(weight(a.init, q) for q in a.states)
    letters = {
        x: tuple(
            tuple(weight(a.trans[(q, x)], p) for p in a.states) for q in a.states
        )
        for x in a.alphabet
    }
    return LinearRep(alphabet=a.alphabet, initial=initial, letters=letters, final=final)


def _forward_reduce(rep: LinearRep) -> LinearRep:
    """Restrict to the span of rows reachable from the initial row."""
    space = RowSpace(rep.dim)
    basis = []
    queue = []
    if space.add(rep.initial):
        basis.append(rep.initial)
        queue.append(rep.initial)
    while queue:
        v = queue.pop(0)
        for a in rep.alphabet:
            w = vec_mat(v, rep.letters[a])
            if space.add(w):
                basis.append(w)
                queue.append(w)
    if not basis:
        return LinearRep(
            alphabet=rep.alphabet,
            initial=(),
            letters={a: () for a in rep.alphabet},
            final=(),
        )
    bt = transpose(tuple(basis))

    def coords(v):
        c = solve_linear(bt, v)
        if c is None:
            raise PreconditionError("vector unexpectedly outside the reachable span")
        return c

    letters = {
        a: tuple(coords(vec_mat(b, rep.letters[a])) for b in basis)
        for a in rep.alphabet
    }
    return LinearRep(
        alphabet=rep.alphabet,
        initial=coords(rep.initial),
        letters=letters,
        final=tuple(dot(b, rep.final) for b in basis),
    )


def _transposed(rep: LinearRep) -> LinearRep:
    return LinearRep(
        alphabet=rep.alphabet,
        initial=rep.final,
        letters={a: transpose(m) for a, m in rep.letters.items()},
        final=rep.initial,
    )


def minimize(rep: LinearRep) -> LinearRep:
    """Language-equivalent representation of minimal dimension.

    Forward-reduces, then backward-reduces via the transposed
    representation; the two passes together reach the minimal dimension.
    """
    reduced = _transposed(_forward_reduce(_transposed(_forward_reduce(rep))))
    return replace(reduced, minimal=True)


def combo_matrix(rep: LinearRep, c: FormalCombo):
    """The matrix acting like a formal combination of words."""
    acc = None
    for w, r in c.terms.items():
        term = mat_scale(r, rep.word_matrix(w))
        acc = term if acc is None else mat_add(acc, term)
    return acc


def syn_eval(rep: LinearRep, c: FormalCombo) -> Fraction:
    """The language value extended affinely to a formal combination."""
    return sum((r * rep.value(w) for w, r in c.terms.items()), _F0)


def _require_minimal(rep: LinearRep):
    if not rep.minimal:
        raise PreconditionError("minimise the representation first")


def syn_congruent(rep: LinearRep, c1: FormalCombo, c2: FormalCombo) -> bool:
    """Decide whether two formal combinations agree in every two-sided context.

    On a minimised representation this is exactly matrix equality of the two
    combinations (on a non-minimised one it would be sufficient but not
    necessary, hence the precondition).
    """
    _require_minimal(rep)
    return combo_matrix(rep, c1) == combo_matrix(rep, c2)


def bounded_context_oracle(
    a: EffAutomaton, c1: FormalCombo, c2: FormalCombo, maxctx: int
) -> bool:
    """Check the context equation literally for all contexts up to maxctx.

    A necessary condition for congruence; sound spot-check for
    :func:`syn_congruent` at bounded depth.  Values are summed exactly, so
    the automaton must produce rational numbers.
    """

    def combo_value(x, c, y):
        return sum(
            (r * eval_word(a, tuple(x) + w + tuple(y)) for w, r in c.terms.items()),
            _F0,
        )

    for x in words_upto(a.alphabet, maxctx):
        for y in words_upto(a.alphabet, maxctx):
            if combo_value(x, c1, y) != combo_value(x, c2, y):
                return False
    return True


def is_commutative(rep: LinearRep) -> bool:
    """Whether the represented language is closed under letter permutation.

    All congruence classes are generated from the letter matrices by
    products and affine combinations, and pairwise commutation survives
    both, so checking the letter matrices pairwise suffices.
    """
    _require_minimal(rep)
    letters = [rep.letters[a] for a in rep.alphabet]
    for i, m1 in enumerate(letters):
        for m2 in letters[i + 1 :]:
            if mat_mul(m1, m2) != mat_mul(m2, m1):
                return False
    return True


@dataclass(frozen=True)
class CancellativityCertificate:
    """Witness that congruence classes embed into rational matrices.

    Records the dimension and letter matrices of the minimal
    representation.  In matrix form, mixing with a common first argument is
    injective in the second: equal mixes cancel exactly.
    """

    dimension: int
    letters: dict

    def cancellation_holds(self, x, y, z, r: Fraction) -> bool:
        """Check ``r*x + (1-r)*y == r*x + (1-r)*z  implies  y == z``."""
        if not 0 < r < 1:
            raise InputError("the mixing weight must lie strictly between 0 and 1")
        left = mat_add(mat_scale(r, x), mat_scale(1 - r, y))
        right = mat_add(mat_scale(r, x), mat_scale(1 - r, z))
        if left != right:
            return True
        return y == z


def cancellativity_embedding(rep: LinearRep) -> CancellativityCertificate:
    """Emit the matrix-embedding certificate of a minimised representation."""
    _require_minimal(rep)
    return CancellativityCertificate(dimension=rep.dim, letters=dict(rep.letters))


def combo_from_dist(d: Dist) -> FormalCombo:
    """View a distribution over words as a formal combination."""
    return FormalCombo(dict(d.items()))
