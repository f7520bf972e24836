"""Named diagrams and Reidemeister-related pairs used by tests and scripts."""

from __future__ import annotations

import random
from typing import Dict, List, Optional, Tuple

from .diagram import LinkDiagram, parse_braid, parse_pd

__all__ = ["DIAGRAMS", "RMOVE_PAIRS", "get", "random_braid_moves"]

# name -> ("pd", text) or ("braid", word, strands)
DIAGRAMS: Dict[str, tuple] = {
    "unknot": ("pd", "U1"),
    "unlink2": ("pd", "U2"),
    "hopf": ("braid", "s1 s1", 2),
    "hopf_pd": ("pd", "X+(2,4,3,1) X+(4,2,1,3)"),
    "trefoil": ("braid", "s1 s1 s1", 2),
    "trefoil_pd": ("pd", "X+(1,5,2,4) X+(3,1,4,6) X+(5,3,6,2)"),
    "figure8": ("braid", "s1 s2^-1 s1 s2^-1", 3),
    "unknot_kink_pos": ("braid", "s1", 2),
    "unknot_kink_neg": ("braid", "s1^-1", 2),
    "unlink2_r2": ("braid", "s1 s1^-1", 2),
    "trefoil_stab": ("braid", "s1 s1 s1 s2", 3),
    "trefoil_r2": ("braid", "s1 s2 s2^-1 s1 s1 s2", 3),
    "hopf_r2": ("braid", "s1 s1 s1 s1^-1", 2),
    "r3_left": ("braid", "s1 s2 s1", 3),
    "r3_right": ("braid", "s2 s1 s2", 3),
    "r3_mixed_left": ("braid", "s1 s2 s1^-1", 3),
    "r3_mixed_right": ("braid", "s2^-1 s1 s2", 3),
    "torus_2_5": ("braid", "s1 s1 s1 s1 s1", 2),
    "whitehead_like": ("braid", "s1 s1 s2^-1 s1 s2^-1", 3),
    "knot_8_18": ("braid", "s1 s2^-1 s1 s2^-1 s1 s2^-1 s1 s2^-1", 3),
    "torus_2_8": ("braid", "s1 s1 s1 s1 s1 s1 s1 s1", 2),
    "torus_3_4": ("braid", "s1 s2 s1 s2 s1 s2 s1 s2", 3),
}

# pairs of diagrams of the same link, each related by R1, R2 or R3 moves
RMOVE_PAIRS: List[Tuple[str, str, str]] = [
    ("unknot_kink_pos", "unknot", "R1"),
    ("unknot_kink_neg", "unknot", "R1"),
    ("unlink2_r2", "unlink2", "R2"),
    ("r3_left", "r3_right", "R3"),
    ("trefoil", "trefoil_stab", "R1"),
    ("trefoil_stab", "trefoil_r2", "R2"),
    ("r3_mixed_left", "r3_mixed_right", "R2+R3"),
    ("hopf", "hopf_r2", "R2"),
    ("hopf", "hopf_pd", "PD relabel"),
    ("trefoil", "trefoil_pd", "PD relabel"),
]


def get(name: str) -> LinkDiagram:
    entry = DIAGRAMS[name]
    if entry[0] == "pd":
        return parse_pd(entry[1])
    return parse_braid(entry[1], entry[2])


def _tokens(word: str) -> List[Tuple[int, int]]:
    out = []
    for tok in word.split():
        k, _, e = tok[1:].partition("^")
        out.append((int(k), -1 if e == "-1" else 1))
    return out


def _render(gens: List[Tuple[int, int]]) -> str:
    return " ".join(f"s{k}" + ("^-1" if e < 0 else "") for k, e in gens)


def random_braid_moves(
    word: str, strands: int, moves: int, seed: Optional[int] = None, max_len: int = 10
) -> Tuple[str, int]:
    """Apply random closure-preserving moves to a braid word.

    Moves: conjugation by rotation, insertion of a cancelling pair (R2),
    positive/negative stabilization (R1 after closure) and the braid
    relation s_k s_k+1 s_k -> s_k+1 s_k s_k+1 (R3).  Words are kept at most
    ``max_len`` generators long so the cube stays small.
    """
    rng = random.Random(seed)
    gens = _tokens(word)
    for _ in range(moves):
        options = ["rotate"]
        if strands >= 2 and len(gens) + 2 <= max_len:
            options.append("r2")
        if len(gens) + 1 <= max_len:
            options.append("stab")
        triples = [
            p for p in range(len(gens) - 2)
            if gens[p] == gens[p + 2] and gens[p][1] == gens[p + 1][1] == 1
            and abs(gens[p][0] - gens[p + 1][0]) == 1
        ]
        if triples:
            options.append("r3")
        move = rng.choice(options)
        if move == "rotate" and gens:
            gens = gens[1:] + gens[:1]
        elif move == "r2":
            k = rng.randrange(1, strands)
            e = rng.choice((1, -1))
            p = rng.randrange(len(gens) + 1)
            gens = gens[:p] + [(k, e), (k, -e)] + gens[p:]
        elif move == "stab":
            gens = gens + [(strands, rng.choice((1, -1)))]
            strands += 1
        elif move == "r3":
            p = rng.choice(triples)
            a, b = gens[p][0], gens[p + 1][0]
            gens = gens[:p] + [(b, 1), (a, 1), (b, 1)] + gens[p + 3:]
    return _render(gens), strands
