from itertools import combinations_with_replacement
from typing import Dict, Hashable, List, Tuple, TypeVar

from qball._lib.scalar import Scalar

Key = TypeVar("Key", bound=Hashable)

Pair = Tuple[int, int]


def add_term(terms: Dict[Key, Scalar], key: Key, coeff: Scalar) -> None:
    """Adds ``coeff`` to ``terms[key]`` in place, dropping the key when the sum vanishes."""
    if not coeff:
        return
    total = terms.get(key)
    total = coeff if total is None else total + coeff
    if total:
        terms[key] = total
    else:
        del terms[key]


def sorted_words(pairs: List[Pair], length: int) -> List[Tuple[Pair, ...]]:
    """Every non-decreasing word of the given length over ``pairs`` (which must be sorted)."""
    return list(combinations_with_replacement(pairs, length))
