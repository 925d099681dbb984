"""Shared brute-force helpers kept independent of the package internals.

Everything here works on raw image tuples so that tests can cross-check the
library against a second, self-contained computation path.
"""

import itertools

import pytest

from partsem import IndexSemigroup, Instance, Partition


def comp(f, g):
    """Left-to-right composite of raw image tuples."""
    return tuple(g[f[x]] for x in range(len(f)))


def block_lookup(blocks):
    lookup = {}
    for i, b in enumerate(blocks):
        for x in b:
            lookup[x] = i
    return lookup


def raw_preserves(f, blocks):
    lookup = block_lookup(blocks)
    return all(len({lookup[f[x]] for x in b}) == 1 for b in blocks)


def raw_character(f, blocks):
    lookup = block_lookup(blocks)
    return tuple(lookup[f[b[0]]] for b in blocks)


def brute_members(blocks, si_tuples):
    """All preserving endomaps with admissible character, lexicographically."""
    n = sum(len(b) for b in blocks)
    si = set(si_tuples)
    return [
        f
        for f in itertools.product(range(n), repeat=n)
        if raw_preserves(f, blocks) and raw_character(f, blocks) in si
    ]


def full_ti(degree):
    return list(itertools.product(range(degree), repeat=degree))


def sym_ti(degree):
    return list(itertools.permutations(range(degree)))


@pytest.fixture(scope="session")
def p22():
    return Partition.of([[0, 1], [2, 3]])


@pytest.fixture(scope="session")
def inst_full(p22):
    """The 64-member instance over two blocks of two with all characters."""
    return Instance(p22, IndexSemigroup.full(2))


@pytest.fixture(scope="session")
def inst_trivial_si(p22):
    """The 16-member instance with only the identity character."""
    return Instance(p22, IndexSemigroup.trivial(2))


@pytest.fixture(scope="session")
def inst_sym(p22):
    return Instance(p22, IndexSemigroup.symmetric(2))
