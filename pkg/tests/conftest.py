import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from quantales.lattice import (
    FiniteSupLattice,
    chain_lattice,
    diamond_lattice,
    make_lattice,
    powerset_lattice,
)


def m3_lattice():
    'Three incomparable middles; a lattice that is not distributive.'
    names = ["0", "a", "b", "c", "1"]
    order = [("0", x) for x in names] + [(x, "1") for x in names]
    order += [(x, x) for x in names]
    return make_lattice(names, set(order))


def n5_lattice():
    'Pentagon: 0 < a < b < 1 and 0 < c < 1 with c incomparable to a, b.'
    names = ["0", "a", "b", "c", "1"]
    order = [(x, x) for x in names]
    order += [("0", x) for x in names] + [(x, "1") for x in names]
    order += [("a", "b")]
    return make_lattice(names, set(order))


def grid_lattice():
    'Product of a 2-chain and a 3-chain; a 6-element frame.'
    elems = [(i, j) for i in range(2) for j in range(3)]
    order = [(p, q) for p in elems for q in elems if p[0] <= q[0] and p[1] <= q[1]]
    return make_lattice(elems, order)


@pytest.fixture(scope="session")
def small_lattices():
    return [
        chain_lattice(1),
        chain_lattice(2),
        chain_lattice(3),
        chain_lattice(4),
        powerset_lattice("x"),
        powerset_lattice("xy"),
        diamond_lattice(),
        m3_lattice(),
        n5_lattice(),
        grid_lattice(),
        chain_lattice(6),
    ]


@pytest.fixture(scope="session")
def small_frames(small_lattices):
    return [L for L in small_lattices if L.is_frame()]
