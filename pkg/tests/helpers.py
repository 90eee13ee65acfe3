"""Shared generators and oracles for the test suite."""

from __future__ import annotations

import random
from pathlib import Path

from tlfrontier.scltl import (
    TOP,
    Eventually,
    NegObs,
    Obs,
    ObservationSet,
    TotalDfa,
    Until,
    conj,
    disj,
)

MAPS_DIR = Path(__file__).resolve().parent.parent / "maps"


def random_formula(rng: random.Random, names, depth: int):
    """Random fragment formula built through the canonical constructors,
    mirroring what the parser can produce."""
    if depth <= 0:
        kind = rng.choice(["obs", "obs", "negobs", "top"])
    else:
        kind = rng.choice(["obs", "negobs", "and", "or", "until", "until", "eventually"])
    if kind == "top":
        return TOP
    if kind == "obs":
        return Obs(rng.choice(names))
    if kind == "negobs":
        return NegObs(rng.choice(names))
    lhs = random_formula(rng, names, depth - 1)
    rhs = random_formula(rng, names, depth - 1)
    if kind == "and":
        return conj(lhs, rhs)
    if kind == "or":
        return disj(lhs, rhs)
    if kind == "until":
        return Until(lhs, rhs)
    return Eventually(lhs)


def random_word(rng: random.Random, names, max_len: int):
    length = rng.randrange(max_len + 1)
    return [frozenset(n for n in names if rng.random() < 0.4) for _ in range(length)]


def random_total_dfa(rng: random.Random, max_states: int = 5, obs=("a", "b")) -> TotalDfa:
    """Arbitrary total DFA with a designated absorbing trash state."""
    n = rng.randint(2, max_states)
    alphabet = ObservationSet(obs)
    letters = alphabet.letters()
    trash = n - 1
    non_trash = list(range(n - 1))
    accepting = frozenset(s for s in non_trash if rng.random() < 0.4)
    transitions = {}
    for s in non_trash:
        for l in letters:
            transitions[(s, l)] = rng.randrange(n)
    for l in letters:
        transitions[(trash, l)] = trash
    return TotalDfa(
        states=tuple(range(n)),
        initial=rng.randrange(n),
        alphabet=alphabet,
        transitions=transitions,
        accepting=accepting,
        trash=trash,
    )


def witness_lengths(dfa: TotalDfa, max_len: int = 12) -> dict:
    """Word-enumeration oracle for commit detection.

    Breadth-first over words, pruning repeated (run-from-initial,
    run-from-s) state pairs; maps each commit state found to its shortest
    witness length. Witnesses longer than `max_len` may be missed.
    """
    letters = dfa.alphabet.letters()
    found = {}
    for s in dfa.states:
        if s == dfa.trash or s in dfa.accepting:
            continue
        seen = {(dfa.initial, s)}
        frontier = [(dfa.initial, s)]
        # the empty word counts when the initial state is itself accepting
        if dfa.initial in dfa.accepting:
            found[s] = 0
            continue
        for depth in range(1, max_len + 1):
            nxt = []
            hit = False
            for a, b in frontier:
                for l in letters:
                    pair = (dfa.transitions[(a, l)], dfa.transitions[(b, l)])
                    if pair in seen:
                        continue
                    seen.add(pair)
                    if pair[0] in dfa.accepting and pair[1] not in dfa.accepting:
                        hit = True
                    nxt.append(pair)
            if hit:
                found[s] = depth
                break
            frontier = nxt
    return found


def enumerated_commit_states(dfa: TotalDfa, max_len: int = 12) -> set:
    return set(witness_lengths(dfa, max_len))


def distinguishable(dfa: TotalDfa, s1: int, s2: int) -> bool:
    """True iff some word is accepted from exactly one of the two states."""
    letters = dfa.alphabet.letters()
    seen = {(s1, s2)}
    queue = [(s1, s2)]
    while queue:
        a, b = queue.pop()
        if (a in dfa.accepting) != (b in dfa.accepting):
            return True
        for l in letters:
            pair = (dfa.transitions[(a, l)], dfa.transitions[(b, l)])
            if pair not in seen:
                seen.add(pair)
                queue.append(pair)
    return False
