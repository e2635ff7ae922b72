import random

import pytest

from georamsey.coloring import Color, ColoredKP, validate
from georamsey.embedders.outerplanar import embed_outerplanar
from georamsey.errors import ContractViolation
from georamsey.geometry import PointSet, convex_hull, generate_points
from georamsey.graphs import Tag, fan_graph, named_graph, recognize
from helpers import random_outerplanar


@pytest.mark.parametrize("position_class", ["general", "convex"])
def test_random_anchored_embeddings_validate(position_class):
    rng = random.Random(11)
    for trial in range(150):
        n = rng.randint(1, 12)
        G = random_outerplanar(n, rng)
        assert Tag.OUTERPLANAR in recognize(G)
        P = generate_points(n, position_class, seed=trial)
        v, p = rng.randrange(n), rng.choice(convex_hull(P) if n >= 3 else list(range(n)))
        e = embed_outerplanar(G, P, anchor=(v, p))
        assert e.mapping[v] == p
        assert validate(ColoredKP.monochromatic(P, Color.RED), e).ok


def test_fan_on_points_with_deep_interior():
    # one hull triangle around a tight cluster
    coords = [(0, 0), (1000, 3), (499, 997)] + [(480 + i, 300 + i * i + 7 * i) for i in range(1, 8)]
    P = PointSet.from_coords(coords)
    e = embed_outerplanar(fan_graph(10), P)
    assert validate(ColoredKP.monochromatic(P, Color.BLUE), e.recolored(Color.BLUE)).ok


def test_embedding_on_a_subset_of_ids():
    P = generate_points(9, seed=4)
    sub = [P[i] for i in (1, 3, 4, 6, 8)]
    e = embed_outerplanar(named_graph("cycle5"), sub)
    assert sorted(e.mapping) == [1, 3, 4, 6, 8]
    assert validate(ColoredKP.monochromatic(P, Color.RED), e).ok


def test_contract_errors():
    P = generate_points(6, seed=1)
    with pytest.raises(ContractViolation):
        embed_outerplanar(named_graph("cycle5"), P)
    interior = next(i for i in range(6) if i not in convex_hull(P))
    with pytest.raises(ContractViolation):
        embed_outerplanar(named_graph("cycle6"), P, anchor=(0, interior))
